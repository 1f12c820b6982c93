#ifndef LIGHTSHIFT_SHIFTS_HPP_
#define LIGHTSHIFT_SHIFTS_HPP_

#include <cmath>
#include <cstdlib>
#include <string>

#include "lightshift/errors.hpp"
#include "lightshift/hyperfine.hpp"
#include "lightshift/polarization.hpp"
#include "lightshift/species.hpp"
#include "lightshift/units.hpp"

// Second- and fourth-order AC Stark shifts of the 2S1/2 sublevels and the
// differential shifts of the clock and Zeeman qubits. All public results are
// linear frequencies in Hz; internal algebra is angular. Excited-state
// hyperfine structure is neglected throughout.

namespace lightshift {

enum class QubitKind { Clock = 0, ZeemanPlus = 1, ZeemanMinus = 2 };

struct ShiftBreakdown {
    double second_scalar = 0;  // Hz, even in helicity
    double second_vector = 0;  // Hz, odd in helicity (B-linear for the clock)
    double fourth = 0;         // Hz, comb-driven, quadratic in intensity
    double total = 0;          // Hz
};

// Comb geometry relative to the hyperfine splitting.
struct CombSpec {
    long n = 0;                  // nearest comb-pair index
    double delta_omega_min = 0;  // rad/s, signed: omega_hf - 2 pi n nu_rep
    double comb_factor = 0;      // dimensionless sech^2-weighted sum
};

namespace detail {

inline void require_no_pi(const PolarizationState& pol) {
    if (pol.p_pi() > 1e-12)
        throw geometry_error(
            "pi-polarized component present; only beam-parallel-to-B geometry is supported");
}

// Second-order level-shift coefficient (rad/s per W/m^2) of one sublevel for
// one circular component. Clock rows come from the B-perturbed dipole table;
// stretched states are unmixed and use the bare couplings.
inline double level_coeff(GroundState state, Helicity pol, const IonSpecies& sp,
                          double r) {
    const double dh = sp.delta_half;
    const double dt = sp.delta_three_half;
    const double w = sp.omega_hf;
    switch (state) {
        case GroundState::F0m0: {
            const double d1 = perturbed_dipole(state, ExcitedState::PHalfF1, pol, r);
            const double d2 = perturbed_dipole(state, ExcitedState::PThreeHalfF1, pol, r);
            const double d3 = perturbed_dipole(state, ExcitedState::PThreeHalfF2, pol, r);
            return d1 * d1 * sp.g2_half / (4.0 * dh) +
                   (d2 * d2 + d3 * d3) * sp.g2_three_half / (4.0 * dt);
        }
        case GroundState::F1m0: {
            const double d1 = perturbed_dipole(state, ExcitedState::PHalfF1, pol, r);
            const double d2 = perturbed_dipole(state, ExcitedState::PThreeHalfF1, pol, r);
            const double d3 = perturbed_dipole(state, ExcitedState::PThreeHalfF2, pol, r);
            return d1 * d1 * sp.g2_half / (4.0 * (dh - w)) +
                   (d2 * d2 + d3 * d3) * sp.g2_three_half / (4.0 * (dt - w));
        }
        case GroundState::F1mPlus:
            if (pol == Helicity::SigmaPlus)
                return 3.0 * sp.g2_three_half / (12.0 * (dt - w));
            return 2.0 * sp.g2_half / (12.0 * (dh - w)) +
                   sp.g2_three_half / (12.0 * (dt - w));
        case GroundState::F1mMinus:
            if (pol == Helicity::SigmaMinus)
                return 3.0 * sp.g2_three_half / (12.0 * (dt - w));
            return 2.0 * sp.g2_half / (12.0 * (dh - w)) +
                   sp.g2_three_half / (12.0 * (dt - w));
    }
    std::abort();  // unreachable
}

// g2_half/delta_half - g2_three_half/delta_three_half, the helicity coupling
// difference entering every vector and fourth-order term.
inline double coupling_difference(const IonSpecies& sp) {
    return sp.g2_half / sp.delta_half - sp.g2_three_half / sp.delta_three_half;
}

}  // namespace detail

// Second-order AC Stark shift of one sublevel in Hz, dressed-state corrections
// included for the clock states.
inline double second_order_level_shift(GroundState state, const PolarizationState& pol,
                                       const IonSpecies& species, const LaserField& laser,
                                       const MagneticField& field) {
    detail::require_no_pi(pol);
    const double r = mixing_ratio(species, field);
    const double coeff = pol.p_plus() * detail::level_coeff(state, Helicity::SigmaPlus, species, r) +
                         pol.p_minus() * detail::level_coeff(state, Helicity::SigmaMinus, species, r);
    return units::hz_from_rad(coeff * laser.intensity());
}

// Clock second-order differential shift split into the helicity-even (scalar)
// and helicity-odd (vector, B-linear) parts, both in Hz.
struct ClockSecondOrder {
    double scalar;
    double vector;
};

inline ClockSecondOrder clock_second_order_differential(const PolarizationState& pol,
                                                        const IonSpecies& species,
                                                        const LaserField& laser,
                                                        const MagneticField& field) {
    detail::require_no_pi(pol);
    const double r = mixing_ratio(species, field);
    const double p10 = detail::level_coeff(GroundState::F1m0, Helicity::SigmaPlus, species, r);
    const double m10 = detail::level_coeff(GroundState::F1m0, Helicity::SigmaMinus, species, r);
    const double p00 = detail::level_coeff(GroundState::F0m0, Helicity::SigmaPlus, species, r);
    const double m00 = detail::level_coeff(GroundState::F0m0, Helicity::SigmaMinus, species, r);
    const double sum = pol.p_plus() + pol.p_minus();
    const double dif = pol.helicity();
    const double i = laser.intensity();
    ClockSecondOrder out;
    out.scalar = units::hz_from_rad(sum * 0.5 * ((p10 + m10) - (p00 + m00)) * i);
    out.vector = units::hz_from_rad(dif * 0.5 * ((p10 - m10) - (p00 - m00)) * i);
    return out;
}

// Nearest comb pair and the sech^2-weighted comb factor. The sum is truncated
// where sech^2((n+k) pi nu_rep tau_p) < 1e-14; the tail it drops is bounded
// geometrically while the denominators grow only linearly.
inline CombSpec comb_spec(const IonSpecies& species, const LaserField& laser) {
    const double spacing = constants::two_pi * laser.rep_rate;
    CombSpec c;
    c.n = std::lround(species.omega_hf / spacing);
    c.delta_omega_min = species.omega_hf - double(c.n) * spacing;
    if (c.delta_omega_min == 0.0)
        throw singularity_error("comb_spec: comb pair exactly on resonance (k = 0)", 0);

    const double a = M_PI * laser.rep_rate * laser.pulse_duration;  // sech^2 argument step
    // sech^2(x) >= 1e-14  <=>  x <= acosh(1e7)
    const long m_max = long(std::ceil(std::acosh(1e7) / a));
    double sum = 0.0;
    for (long m = -m_max; m <= m_max; ++m) {
        const long k = m - c.n;
        const double den = 1.0 - double(k) * spacing / c.delta_omega_min;
        if (std::abs(den) < 1e-12)
            throw singularity_error("comb_spec: comb line on two-photon resonance at k = " +
                                        std::to_string(k),
                                    k);
        const double sech = 1.0 / std::cosh(double(m) * a);
        sum += sech * sech / den;
    }
    c.comb_factor = sum;
    return c;
}

// Fourth-order (Raman-comb) differential shift of the clock qubit in Hz.
inline double fourth_order_shift(const PolarizationState& pol, const IonSpecies& species,
                                 const LaserField& laser) {
    detail::require_no_pi(pol);
    const CombSpec comb = comb_spec(species, laser);
    const double x = pol.helicity();
    const double g = detail::coupling_difference(species);
    const double i = laser.intensity();
    return units::hz_from_rad(x * x * comb.comb_factor / (72.0 * comb.delta_omega_min) * g * g * i * i);
}

// Differential shift of one qubit as a polynomial in helicity x and intensity:
//   shift(x, I) = (scalar_per_i + vector_per_i * x) I + quartic_per_i2 x^2 I^2
// valid for a normalized, pi-free polarization. This is the closed form the
// scan, search, and Ramsey machinery iterate over.
struct ShiftModel {
    QubitKind qubit;
    double scalar_per_i = 0;   // Hz per (W/m^2)
    double vector_per_i = 0;   // Hz per (W/m^2)
    double quartic_per_i2 = 0; // Hz per (W/m^2)^2

    double shift_hz(double helicity, double intensity) const {
        return (scalar_per_i + vector_per_i * helicity) * intensity +
               quartic_per_i2 * helicity * helicity * intensity * intensity;
    }
    // d(shift)/dI * I, the fractional-intensity sensitivity in Hz
    double intensity_sensitivity_hz(double helicity, double intensity) const {
        return (scalar_per_i + vector_per_i * helicity) * intensity +
               2.0 * quartic_per_i2 * helicity * helicity * intensity * intensity;
    }
};

inline ShiftModel shift_model(QubitKind qubit, const IonSpecies& species,
                              const LaserField& laser, const MagneticField& field) {
    ShiftModel m;
    m.qubit = qubit;
    if (qubit == QubitKind::Clock) {
        const double r = mixing_ratio(species, field);
        const double p10 = detail::level_coeff(GroundState::F1m0, Helicity::SigmaPlus, species, r);
        const double m10 = detail::level_coeff(GroundState::F1m0, Helicity::SigmaMinus, species, r);
        const double p00 = detail::level_coeff(GroundState::F0m0, Helicity::SigmaPlus, species, r);
        const double m00 = detail::level_coeff(GroundState::F0m0, Helicity::SigmaMinus, species, r);
        m.scalar_per_i = units::hz_from_rad(0.5 * ((p10 + m10) - (p00 + m00)));
        m.vector_per_i = units::hz_from_rad(0.5 * ((p10 - m10) - (p00 - m00)));
        const CombSpec comb = comb_spec(species, laser);
        const double g = detail::coupling_difference(species);
        m.quartic_per_i2 =
            units::hz_from_rad(comb.comb_factor / (72.0 * comb.delta_omega_min) * g * g);
    } else {
        // Truncated vector shift: +-(eps_-^2 - eps_+^2)(1/12)(coupling difference)
        const double sign = (qubit == QubitKind::ZeemanPlus) ? +1.0 : -1.0;
        m.vector_per_i = units::hz_from_rad(-sign * detail::coupling_difference(species) / 12.0);
    }
    return m;
}

// Full breakdown for one qubit at one operating point.
inline ShiftBreakdown differential_shift(QubitKind qubit, const PolarizationState& pol,
                                         const IonSpecies& species, const LaserField& laser,
                                         const MagneticField& field) {
    detail::require_no_pi(pol);
    const double i = laser.intensity();
    const double x = pol.helicity();
    ShiftBreakdown b;
    if (qubit == QubitKind::Clock) {
        const ClockSecondOrder second = clock_second_order_differential(pol, species, laser, field);
        b.second_scalar = second.scalar;
        b.second_vector = second.vector;
        b.fourth = fourth_order_shift(pol, species, laser);
    } else {
        const ShiftModel m = shift_model(qubit, species, laser, field);
        b.second_vector = m.vector_per_i * x * i;
    }
    b.total = b.second_scalar + b.second_vector + b.fourth;
    return b;
}

// Vector polarizability of the F=1 manifold, in units such that
// shift_hz = (1/4)|E|^2 (eps_-^2 - eps_+^2) alpha_v m_F / F with
// |E|^2 = 2 I / (c eps0).
inline double vector_polarizability(const IonSpecies& species) {
    return 2.0 * constants::speed_of_light * constants::vacuum_permittivity *
           units::hz_from_rad(detail::coupling_difference(species) / 12.0);
}

// Independent spherical-tensor route to the Zeeman differential shift. The
// scalar part cancels in the differential and the tensor polarizability is
// zero for this manifold, leaving the vector term alone.
inline double vector_polarizability_shift(QubitKind qubit, const PolarizationState& pol,
                                          const IonSpecies& species, const LaserField& laser) {
    if (qubit == QubitKind::Clock)
        throw std::domain_error("vector_polarizability_shift: defined for Zeeman qubits only");
    detail::require_no_pi(pol);
    const int mf = (qubit == QubitKind::ZeemanPlus) ? +1 : -1;
    const double e_sq = 2.0 * laser.intensity() /
                        (constants::speed_of_light * constants::vacuum_permittivity);
    return 0.25 * e_sq * (pol.p_minus() - pol.p_plus()) * vector_polarizability(species) *
           double(mf) / 1.0;
}

}  // namespace lightshift

#endif  // LIGHTSHIFT_SHIFTS_HPP_
