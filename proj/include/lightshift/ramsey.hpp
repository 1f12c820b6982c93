#ifndef LIGHTSHIFT_RAMSEY_HPP_
#define LIGHTSHIFT_RAMSEY_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "lightshift/errors.hpp"
#include "lightshift/shifts.hpp"

// Ramsey fringe and coherence-time simulation under quasi-static laser
// intensity noise: the intensity is constant within one shot and Gaussian
// distributed shot to shot. Microwave pulses are instantaneous and perfect;
// the differential AC Stark shift is the only laser effect during free
// evolution.

namespace lightshift {

struct NoiseModel {
    double relative_intensity_sigma = 0;  // fractional RMS of I per shot
    std::uint64_t seed = 0;
};

struct ContrastPoint {
    double tau;       // s
    double contrast;  // fitted fringe contrast in [0, 1]
    double err;       // shot-statistics estimate
};

struct CoherenceFit {
    double t2 = 0;            // s, the contrast = 1/e point
    int stretch_exponent = 1; // p in exp(-(tau/T2)^p)
    double residual_rms = 0;
    double t2_stderr = 0;
};

// P(tau) for ideal instantaneous pi/2 pulses and a noiseless shift.
inline double fringe_probability(QubitKind qubit, const PolarizationState& pol,
                                 const IonSpecies& species, const LaserField& laser,
                                 const MagneticField& field, double tau, double phase) {
    const double shift = differential_shift(qubit, pol, species, laser, field).total;
    return 0.5 * (1.0 + std::cos(constants::two_pi * shift * tau + phase));
}

namespace detail {

// splitmix64; decorrelates the per-(tau, shot) streams from a single seed so
// results are independent of the execution schedule.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double standard_normal(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    return dist(rng);
}

}  // namespace detail

// Contrast-vs-tau table: per tau, the fringe is averaged over `shots`
// intensity draws and the contrast extracted as the magnitude of the mean
// phasor (equivalent to a phase-scan fit). Deterministic for a fixed seed,
// independent of `threads`.
inline std::vector<ContrastPoint> simulate_decay(
    QubitKind qubit, const PolarizationState& pol, const IonSpecies& species,
    const LaserField& laser, const MagneticField& field, const NoiseModel& noise,
    long shots, const std::vector<double>& tau_grid,
    double baseline_t2 = std::numeric_limits<double>::infinity(), unsigned threads = 1) {
    if (shots < 1) throw std::domain_error("simulate_decay: shots must be >= 1");
    if (!(noise.relative_intensity_sigma >= 0))
        throw validation_error("simulate_decay: noise sigma must be >= 0");
    for (size_t i = 0; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] > 0) || (i > 0 && tau_grid[i] <= tau_grid[i - 1]))
            throw validation_error("simulate_decay: tau grid must be positive and increasing");
    }
    detail::require_no_pi(pol);

    const ShiftModel model = shift_model(qubit, species, laser, field);
    const double x = pol.helicity();
    const double i0 = laser.intensity();
    const double sigma = noise.relative_intensity_sigma;

    std::vector<ContrastPoint> out(tau_grid.size());
    auto worker = [&](size_t begin, size_t end) {
        for (size_t ti = begin; ti < end; ++ti) {
            const double tau = tau_grid[ti];
            double re = 0.0, im = 0.0;
            for (long si = 0; si < shots; ++si) {
                const std::uint64_t stream =
                    detail::mix64(noise.seed ^ detail::mix64(std::uint64_t(ti) * 0x51ed2701ULL + std::uint64_t(si)));
                const double xi = detail::standard_normal(stream);
                const double intensity = std::max(0.0, i0 * (1.0 + sigma * xi));
                const double phi = constants::two_pi * model.shift_hz(x, intensity) * tau;
                re += std::cos(phi);
                im += std::sin(phi);
            }
            re /= double(shots);
            im /= double(shots);
            const double c = std::hypot(re, im);
            ContrastPoint p;
            p.tau = tau;
            p.contrast = c * std::exp(-tau / baseline_t2);
            p.err = std::sqrt(std::max(0.0, 1.0 - c * c) / (2.0 * double(shots)));
            out[ti] = p;
        }
    };

    if (threads <= 1 || tau_grid.size() < 2) {
        worker(0, tau_grid.size());
    } else {
        const unsigned nt = std::min<unsigned>(threads, unsigned(tau_grid.size()));
        std::vector<std::thread> pool;
        const size_t chunk = (tau_grid.size() + nt - 1) / nt;
        for (unsigned t = 0; t < nt; ++t) {
            const size_t b = t * chunk;
            const size_t e = std::min(tau_grid.size(), b + chunk);
            if (b < e) pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

// Least-squares fit of C(tau) = exp(-(tau/T2)^p), p in {1, 2}, selected by
// residual. T2 is exactly the 1/e-contrast point of the chosen model.
inline CoherenceFit fit_coherence(const std::vector<ContrastPoint>& table) {
    if (table.size() < 5)
        throw unconverged_fit_error("fit_coherence: need at least 5 tau points");
    double cmin = 1.0;
    for (const auto& p : table) cmin = std::min(cmin, p.contrast);
    if (cmin > std::exp(-1.0))
        throw unconverged_fit_error(
            "fit_coherence: contrast does not decay below 1/e; extend the tau grid");

    CoherenceFit best;
    bool have = false;
    for (int p = 1; p <= 2; ++p) {
        // (-ln C)^(1/p) = tau/T2, averaged in the log domain over usable points
        double acc = 0.0, acc2 = 0.0;
        long n = 0;
        for (const auto& pt : table) {
            if (pt.contrast <= 1e-6 || pt.contrast >= 0.999) continue;
            const double lt2 = std::log(pt.tau) - std::log(-std::log(pt.contrast)) / double(p);
            acc += lt2;
            acc2 += lt2 * lt2;
            ++n;
        }
        if (n < 2) continue;
        const double mean = acc / double(n);
        const double t2 = std::exp(mean);
        double rss = 0.0;
        for (const auto& pt : table) {
            const double m = std::exp(-std::pow(pt.tau / t2, double(p)));
            rss += (pt.contrast - m) * (pt.contrast - m);
        }
        const double rms = std::sqrt(rss / double(table.size()));
        if (!have || rms < best.residual_rms) {
            best.t2 = t2;
            best.stretch_exponent = p;
            best.residual_rms = rms;
            const double var = std::max(0.0, acc2 / double(n) - mean * mean);
            best.t2_stderr = t2 * std::sqrt(var / double(n));
            have = true;
        }
    }
    if (!have)
        throw unconverged_fit_error("fit_coherence: no usable contrast points between 0 and 1");
    return best;
}

// Gaussian quasi-static dephasing: sigma_I that yields the target T2 at an
// operating point where the shift responds linearly to intensity jitter,
// C(tau) = exp(-(2 pi sigma_f tau)^2 / 2) with sigma_f = |dE/dI| I sigma_I.
inline double calibrate_intensity_sigma(QubitKind qubit, const PolarizationState& pol,
                                        const IonSpecies& species, const LaserField& laser,
                                        const MagneticField& field, double target_t2) {
    if (!(target_t2 > 0))
        throw std::domain_error("calibrate_intensity_sigma: target T2 must be > 0");
    const ShiftModel model = shift_model(qubit, species, laser, field);
    const double sens =
        std::abs(model.intensity_sensitivity_hz(pol.helicity(), laser.intensity()));
    if (sens == 0.0)
        throw std::domain_error(
            "calibrate_intensity_sigma: operating point is intensity-insensitive");
    const double sigma_f = 1.0 / (std::sqrt(2.0) * M_PI * target_t2);
    return sigma_f / sens;
}

}  // namespace lightshift

#endif  // LIGHTSHIFT_RAMSEY_HPP_
