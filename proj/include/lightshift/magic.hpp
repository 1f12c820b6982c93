#ifndef LIGHTSHIFT_MAGIC_HPP_
#define LIGHTSHIFT_MAGIC_HPP_

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lightshift/errors.hpp"
#include "lightshift/polarization.hpp"
#include "lightshift/shifts.hpp"
#include "lightshift/species.hpp"

// Locates minimum-|shift| wave-plate angles and the threshold magnetic field
// above which the clock shift admits exact zero crossings. The search works in
// x = eps_+^2 - eps_-^2, where every qubit's shift is an exact quadratic
// S + L x + Q x^2; x maps back to the HWP angle via x = -sin(4 theta). The
// canonical branch theta in [22.5 deg, 67.5 deg] covers x in [-1, 1] once;
// the mirror preimage under theta -> 90 deg - theta is reported alongside.

namespace lightshift {

struct ThetaSample {
    double theta_deg;
    PolarizationState pol;
    ShiftBreakdown shift;
};

struct ZeroCrossing {
    double theta_deg;
    bool bracketed;  // certified by a sign change in a bracketing interval
};

struct MagicSearchResult {
    double theta_min_deg = 0;
    double theta_min_mirror_deg = 0;  // the theta -> 90 - theta preimage
    double shift_at_min_hz = 0;       // signed total at theta_min
    std::vector<ZeroCrossing> zero_crossings;
};

namespace detail {

inline double helicity_of_theta_deg(double theta_deg) {
    return -std::sin(4.0 * units::rad_from_deg(theta_deg));
}

// Golden-section minimization of f on [lo, hi] to the given x-tolerance.
template <typename F>
double golden_section(F&& f, double lo, double hi, double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Bisection root refinement on a bracketing interval [lo, hi].
template <typename F>
double bisect(F&& f, double lo, double hi, double tol) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0) == (fm <= 0)) {
            lo = mid; flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Dense table of the differential shift over theta in [0, 90) degrees.
inline std::vector<ThetaSample> scan_theta(QubitKind qubit, const IonSpecies& species,
                                           const LaserField& laser, const MagneticField& field,
                                           double resolution_deg) {
    if (!(resolution_deg > 0))
        throw std::invalid_argument("scan_theta: resolution must be > 0");
    const ShiftModel model = shift_model(qubit, species, laser, field);
    const double i = laser.intensity();
    std::vector<ThetaSample> table;
    const long npts = std::lround(std::ceil(90.0 / resolution_deg - 1e-9));
    table.reserve(size_t(npts));
    for (long idx = 0; idx < npts; ++idx) {
        ThetaSample s;
        s.theta_deg = double(idx) * resolution_deg;
        s.pol = polarization_from_theta_deg(s.theta_deg);
        const double x = s.pol.helicity();
        s.shift.second_scalar = model.scalar_per_i * (s.pol.p_plus() + s.pol.p_minus()) * i;
        s.shift.second_vector = model.vector_per_i * x * i;
        s.shift.fourth = model.quartic_per_i2 * x * x * i * i;
        s.shift.total = s.shift.second_scalar + s.shift.second_vector + s.shift.fourth;
        table.push_back(s);
    }
    return table;
}

// Minimum of |total shift| over the wave-plate angle, with certified zero
// crossings over the full [0, 90) range. theta_min is refined to 1e-4 deg on
// the canonical branch.
inline MagicSearchResult find_min_shift(QubitKind qubit, const IonSpecies& species,
                                        const LaserField& laser, const MagneticField& field) {
    const ShiftModel model = shift_model(qubit, species, laser, field);
    const double i = laser.intensity();
    auto total = [&](double theta_deg) {
        return model.shift_hz(detail::helicity_of_theta_deg(theta_deg), i);
    };
    auto abs_total = [&](double theta_deg) { return std::abs(total(theta_deg)); };

    // Coarse grid on the canonical branch, then golden-section refinement.
    const double step = 0.01;
    double best_theta = 45.0, best_val = abs_total(45.0);
    for (long idx = 0; idx <= 4500; ++idx) {
        const double th = 22.5 + double(idx) * step;
        const double v = abs_total(th);
        if (v < best_val) {
            best_val = v;
            best_theta = th;
        }
    }
    MagicSearchResult res;
    res.theta_min_deg = detail::golden_section(abs_total, std::max(22.5, best_theta - 2 * step),
                                               std::min(67.5, best_theta + 2 * step), 1e-4);
    // Snap to the exact branch midpoint when the refinement lands on it; the
    // |x| kink at x = 0 otherwise leaves a sub-tolerance offset.
    if (std::abs(res.theta_min_deg - 45.0) < 2e-4 && abs_total(45.0) <= abs_total(res.theta_min_deg))
        res.theta_min_deg = 45.0;
    res.theta_min_mirror_deg = 90.0 - res.theta_min_deg;
    res.shift_at_min_hz = total(res.theta_min_deg);

    // Sign-change scan for zero crossings over the full range.
    double prev_theta = 0.0, prev_val = total(0.0);
    for (long idx = 1; idx <= 9000; ++idx) {
        const double th = double(idx) * step;
        const double v = total(th);
        if (prev_val == 0.0) {
            res.zero_crossings.push_back({prev_theta, true});
        } else if ((prev_val < 0) != (v < 0)) {
            const double root = detail::bisect(total, prev_theta, th, 1e-7);
            res.zero_crossings.push_back({root, true});
        }
        prev_theta = th;
        prev_val = v;
    }
    return res;
}

// Smallest field (gauss) inside [b_lo, b_hi] at which the clock shift can be
// cancelled by polarization alone: |L(B)|^2 >= 4 S Q with S, Q independent of
// B and L linear in B. Solved from the discriminant, then certified by a sign
// change in the theta scan just above threshold.
inline double threshold_field(const IonSpecies& species, const LaserField& laser,
                              double b_lo_gauss, double b_hi_gauss) {
    if (!(b_hi_gauss > b_lo_gauss))
        throw std::invalid_argument("threshold_field: empty search range");
    if (laser.power == 0.0) return 0.0;

    const double i = laser.intensity();
    const MagneticField ref = MagneticField::from_gauss(1.0);
    const ShiftModel at_ref = shift_model(QubitKind::Clock, species, laser, ref);
    const double l_per_gauss = std::abs(at_ref.vector_per_i) * i;  // Hz/G, exact in B
    const double q = at_ref.quartic_per_i2 * i * i;

    // S carries a tiny R^2 dependence; iterate the closed form to convergence.
    double b_star = 0.0;
    for (int it = 0; it < 4; ++it) {
        const ShiftModel m =
            shift_model(QubitKind::Clock, species, laser, MagneticField::from_gauss(b_star));
        const double s = m.scalar_per_i * i;
        if (!(s > 0))
            throw std::domain_error("threshold_field: scalar shift is not positive");
        b_star = 2.0 * std::sqrt(s * q) / l_per_gauss;
    }

    // Certification: a zero crossing must exist just above threshold and not
    // just below it.
    const auto above = find_min_shift(QubitKind::Clock, species, laser,
                                      MagneticField::from_gauss(b_star * (1.0 + 1e-3)));
    const auto below = find_min_shift(QubitKind::Clock, species, laser,
                                      MagneticField::from_gauss(b_star * (1.0 - 1e-3)));
    if (above.zero_crossings.empty() || !below.zero_crossings.empty())
        throw std::runtime_error("threshold_field: discriminant root failed certification");

    if (b_star < b_lo_gauss || b_star > b_hi_gauss)
        throw std::domain_error("threshold_field: threshold lies outside the search range");
    return b_star;
}

}  // namespace lightshift

#endif  // LIGHTSHIFT_MAGIC_HPP_
