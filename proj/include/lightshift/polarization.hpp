#ifndef LIGHTSHIFT_POLARIZATION_HPP_
#define LIGHTSHIFT_POLARIZATION_HPP_

#include <cmath>
#include <complex>

#include "lightshift/units.hpp"

// Jones-calculus model of the HWP+QWP chain and the projection onto the
// spherical (sigma+/sigma-/pi) basis. Sign convention for the circular basis:
// E_{sigma+} = (1, -i)/sqrt(2), E_{sigma-} = (1, +i)/sqrt(2). With this
// convention the chain output at theta = 22.5 deg is pure sigma- and at
// 67.5 deg pure sigma+. Other texts flip the assignment.

namespace lightshift {

using complexd = std::complex<double>;

struct JonesVector {
    complexd ex, ey;

    double norm2() const { return std::norm(ex) + std::norm(ey); }
    static JonesVector horizontal() { return {1.0, 0.0}; }
};

// Polarization amplitudes in the spherical basis.
struct PolarizationState {
    complexd eps_plus, eps_minus, eps_pi;

    double p_plus() const { return std::norm(eps_plus); }
    double p_minus() const { return std::norm(eps_minus); }
    double p_pi() const { return std::norm(eps_pi); }
    // eps_+^2 - eps_-^2, the quantity the vector and fourth-order shifts see
    double helicity() const { return p_plus() - p_minus(); }
};

// Retarder with phase delay `retardance` between fast and slow axes and fast
// axis at `fast_axis_angle` from horizontal (both radians).
struct WavePlate {
    double retardance;
    double fast_axis_angle;

    static WavePlate quarter(double theta) { return {M_PI / 2.0, theta}; }
    static WavePlate half(double theta) { return {M_PI, theta}; }
};

struct JonesMatrix {
    complexd a, b, c, d;  // [[a, b], [c, d]]

    JonesVector operator*(const JonesVector& v) const {
        return {a * v.ex + b * v.ey, c * v.ex + d * v.ey};
    }
};

inline JonesMatrix jones_matrix(const WavePlate& p) {
    const complexd e = std::exp(complexd(0.0, p.retardance));
    const double s = std::sin(p.fast_axis_angle);
    const double c = std::cos(p.fast_axis_angle);
    return {c * c + s * s * e, s * c * (1.0 - e),
            s * c * (1.0 - e), s * s + c * c * e};
}

// QWP(theta_qwp) * HWP(theta_hwp) * input
inline JonesVector chain_hwp_qwp(double theta_hwp, double theta_qwp,
                                 const JonesVector& input) {
    const JonesVector after_hwp = jones_matrix(WavePlate::half(theta_hwp)) * input;
    return jones_matrix(WavePlate::quarter(theta_qwp)) * after_hwp;
}

// Projection onto the spherical basis for a beam propagating along B; the pi
// component is geometrically absent.
inline PolarizationState to_spherical(const JonesVector& v) {
    const complexd i(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    PolarizationState s;
    s.eps_plus = inv_sqrt2 * (v.ex + i * v.ey);
    s.eps_minus = inv_sqrt2 * (v.ex - i * v.ey);
    s.eps_pi = 0.0;
    return s;
}

// Full chain for the experiment geometry: horizontal input, HWP at theta,
// QWP at theta_qwp (default 0). Closed form: eps+ = cos(2*theta + pi/4),
// eps- = sin(2*theta + pi/4), so helicity = -sin(4*theta).
inline PolarizationState polarization_from_theta(double theta_hwp,
                                                 double theta_qwp = 0.0) {
    return to_spherical(chain_hwp_qwp(theta_hwp, theta_qwp, JonesVector::horizontal()));
}

inline PolarizationState polarization_from_theta_deg(double theta_deg,
                                                     double qwp_deg = 0.0) {
    return polarization_from_theta(units::rad_from_deg(theta_deg),
                                   units::rad_from_deg(qwp_deg));
}

}  // namespace lightshift

#endif  // LIGHTSHIFT_POLARIZATION_HPP_
