#ifndef LIGHTSHIFT_HYPERFINE_HPP_
#define LIGHTSHIFT_HYPERFINE_HPP_

#include <array>
#include <cmath>
#include <stdexcept>

#include "lightshift/species.hpp"
#include "lightshift/units.hpp"

// Ground-manifold hyperfine + Zeeman problem for an I=1/2, J=1/2 manifold.
// Product basis order throughout: {|+1/2,+1/2>, |+1/2,-1/2>, |-1/2,+1/2>,
// |-1/2,-1/2>} in |m_I, m_J>. The 2x2 inner block is diagonalized in closed
// form; a generic eigensolver serves as the test oracle only.

namespace lightshift {

enum class GroundState { F0m0 = 0, F1m0 = 1, F1mPlus = 2, F1mMinus = 3 };

inline int f_of(GroundState s) { return s == GroundState::F0m0 ? 0 : 1; }
inline int mf_of(GroundState s) {
    switch (s) {
        case GroundState::F1mPlus: return +1;
        case GroundState::F1mMinus: return -1;
        default: return 0;
    }
}

using Matrix4 = std::array<std::array<double, 4>, 4>;
using Vector4 = std::array<double, 4>;

// Dimensionless hyperfine mixing ratio R = mu_B B / omega_hf.
inline double mixing_ratio(const IonSpecies& species, const MagneticField& field) {
    return units::zeeman_rad_per_s(field.magnitude) / species.omega_hf;
}

// H = omega_hf I.J + 2 mu_B J_z B_z expanded in the product basis:
// diagonal {M/4+N, -M/4-N, -M/4+N, M/4-N}, off-diagonal M/2 coupling the
// middle pair, with M = omega_hf and N = mu_B B.
inline Matrix4 build_hamiltonian(const IonSpecies& species, const MagneticField& field) {
    const double m = species.omega_hf;
    const double n = units::zeeman_rad_per_s(field.magnitude);
    Matrix4 h{};
    h[0][0] = 0.25 * m + n;
    h[1][1] = -0.25 * m - n;
    h[2][2] = -0.25 * m + n;
    h[3][3] = 0.25 * m - n;
    h[1][2] = h[2][1] = 0.5 * m;
    return h;
}

// Eigen-decomposition of the ground manifold. Rows of `eigenvectors` are
// indexed by GroundState and expressed in the product basis; each row is
// scaled so its |-1/2,+1/2> component (index 2) is non-negative, matching the
// adiabatic continuation from the B=0 eigenstates.
struct DressedBasis {
    Vector4 eigenvalues;                    // rad/s, indexed by GroundState
    std::array<Vector4, 4> eigenvectors;
    double mixing_ratio;                    // R = mu_B B / omega_hf
};

inline DressedBasis dress(const IonSpecies& species, const MagneticField& field) {
    const double m = species.omega_hf;
    const double n = units::zeeman_rad_per_s(field.magnitude);
    const double r = n / m;
    const double root = std::sqrt(0.25 * m * m + n * n);  // (M/2) sqrt(1+4R^2)

    DressedBasis d{};
    d.mixing_ratio = r;

    auto& ev = d.eigenvalues;
    ev[int(GroundState::F0m0)] = -0.25 * m - root;
    ev[int(GroundState::F1m0)] = -0.25 * m + root;
    ev[int(GroundState::F1mPlus)] = 0.25 * m + n;
    ev[int(GroundState::F1mMinus)] = 0.25 * m - n;

    // |0,0>_d ~ |-1/2,+1/2> - (2R + sqrt(1+4R^2)) |+1/2,-1/2>
    // |1,0>_d ~ |-1/2,+1/2> - (2R - sqrt(1+4R^2)) |+1/2,-1/2>
    const double s = std::sqrt(1.0 + 4.0 * r * r);
    const double c0 = -(2.0 * r + s);
    const double c1 = s - 2.0 * r;
    const double n0 = std::sqrt(1.0 + c0 * c0);
    const double n1 = std::sqrt(1.0 + c1 * c1);

    d.eigenvectors[int(GroundState::F0m0)] = {0.0, c0 / n0, 1.0 / n0, 0.0};
    d.eigenvectors[int(GroundState::F1m0)] = {0.0, c1 / n1, 1.0 / n1, 0.0};
    d.eigenvectors[int(GroundState::F1mPlus)] = {1.0, 0.0, 0.0, 0.0};
    d.eigenvectors[int(GroundState::F1mMinus)] = {0.0, 0.0, 0.0, 1.0};
    return d;
}

// Excited-state labels reachable from the clock states via sigma+/- light
// (the m_F' = -1 mirror partners carry the same coefficients with the
// opposite-helicity column).
enum class ExcitedState { PHalfF1 = 0, PThreeHalfF1 = 1, PThreeHalfF2 = 2 };
enum class Helicity { SigmaPlus = 0, SigmaMinus = 1 };

// Dipole matrix element of a dressed clock state to an excited level, as a
// dimensionless multiple of d1, exact and linear in R:
//   |0,0>_d:  sqrt(2/6)(1+-R),  sqrt(4/6)(1-+R/2),  -+sqrt(3/6) R
//   |1,0>_d: -sqrt(2/6)(1-+R),  sqrt(1/6)(1+-2R),    sqrt(3/6)
// Upper signs: sigma+; lower: sigma-. Only the clock rows exist; stretched
// states are unmixed and carry no R dependence worth tabulating here.
inline double perturbed_dipole(GroundState ground, ExcitedState excited,
                               Helicity pol, double r) {
    if (r < 0) throw std::domain_error("perturbed_dipole: R must be >= 0");
    const double sign = (pol == Helicity::SigmaPlus) ? +1.0 : -1.0;
    if (ground == GroundState::F0m0) {
        switch (excited) {
            case ExcitedState::PHalfF1: return std::sqrt(2.0 / 6.0) * (1.0 + sign * r);
            case ExcitedState::PThreeHalfF1: return std::sqrt(4.0 / 6.0) * (1.0 - sign * r / 2.0);
            case ExcitedState::PThreeHalfF2: return -sign * std::sqrt(3.0 / 6.0) * r;
        }
    }
    if (ground == GroundState::F1m0) {
        switch (excited) {
            case ExcitedState::PHalfF1: return -std::sqrt(2.0 / 6.0) * (1.0 - sign * r);
            case ExcitedState::PThreeHalfF1: return std::sqrt(1.0 / 6.0) * (1.0 + sign * 2.0 * r);
            case ExcitedState::PThreeHalfF2: return std::sqrt(3.0 / 6.0);
        }
    }
    throw std::domain_error("perturbed_dipole: no table entry for this state pair");
}

}  // namespace lightshift

#endif  // LIGHTSHIFT_HYPERFINE_HPP_
