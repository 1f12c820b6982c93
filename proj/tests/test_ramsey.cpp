#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "lightshift/ramsey.hpp"

using namespace lightshift;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const IonSpecies kYb = builtin_yb171();
const LaserField kLaser(52.1e-3, 7e-6, 12.883e-12, 118.993e6);
const MagneticField kField = MagneticField::from_gauss(11.343);

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return v;
}

// Gauss-Hermite-free oracle: trapezoid average of the shot phasor over the
// normal density on xi in [-8, 8].
double quadrature_contrast(const ShiftModel& model, double x, double i0, double sigma,
                           double tau) {
    const int n = 20001;
    std::complex<double> acc = 0.0;
    double wsum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double xi = -8.0 + 16.0 * double(k) / double(n - 1);
        const double w = std::exp(-0.5 * xi * xi) * ((k == 0 || k == n - 1) ? 0.5 : 1.0);
        const double intensity = std::max(0.0, i0 * (1.0 + sigma * xi));
        const double phi = constants::two_pi * model.shift_hz(x, intensity) * tau;
        acc += w * std::exp(std::complex<double>(0.0, phi));
        wsum += w;
    }
    return std::abs(acc / wsum);
}
}  // namespace

TEST_CASE("fringe oscillates at the differential shift frequency") {
    const auto pol = polarization_from_theta_deg(22.5);
    const double shift = differential_shift(QubitKind::Clock, pol, kYb, kLaser, kField).total;
    // DFT of a sampled noiseless fringe peaks at the shift frequency
    const int n = 4096;
    const double dt = 1.0 / (8.0 * std::abs(shift));
    std::vector<double> samples(n);
    for (int k = 0; k < n; ++k)
        samples[k] =
            fringe_probability(QubitKind::Clock, pol, kYb, kLaser, kField, double(k) * dt, 0.0) -
            0.5;
    double best_f = 0, best_a = 0;
    for (int bin = 1; bin < n / 2; ++bin) {
        std::complex<double> acc = 0.0;
        const double f = double(bin) / (double(n) * dt);
        for (int k = 0; k < n; ++k)
            acc += samples[k] * std::exp(std::complex<double>(0.0, -constants::two_pi * f * k * dt));
        if (std::abs(acc) > best_a) {
            best_a = std::abs(acc);
            best_f = f;
        }
    }
    CHECK_THAT(best_f, WithinRel(std::abs(shift), 1e-3));
    CHECK_THAT(fringe_probability(QubitKind::Clock, pol, kYb, kLaser, kField, 1.0 / std::abs(shift), 0.0),
               WithinAbs(1.0, 1e-6));
}

TEST_CASE("simulate_decay is deterministic and thread-count independent") {
    const auto pol = polarization_from_theta_deg(30.0);
    const NoiseModel noise{0.01, 1234};
    const auto grid = linspace(1e-5, 5e-4, 12);
    const auto a = simulate_decay(QubitKind::ZeemanPlus, pol, kYb, kLaser, kField, noise, 500, grid);
    const auto b = simulate_decay(QubitKind::ZeemanPlus, pol, kYb, kLaser, kField, noise, 500, grid);
    const auto c =
        simulate_decay(QubitKind::ZeemanPlus, pol, kYb, kLaser, kField, noise, 500, grid,
                       std::numeric_limits<double>::infinity(), 4);
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(a[i].contrast == b[i].contrast);
        CHECK(a[i].contrast == c[i].contrast);
    }
    const NoiseModel other{0.01, 99};
    const auto d = simulate_decay(QubitKind::ZeemanPlus, pol, kYb, kLaser, kField, other, 500, grid);
    bool any_diff = false;
    for (size_t i = 0; i < grid.size(); ++i) any_diff |= (a[i].contrast != d[i].contrast);
    CHECK(any_diff);
}

TEST_CASE("zero noise gives unit contrast, baseline decay multiplies in") {
    const auto pol = polarization_from_theta_deg(22.5);
    const auto grid = linspace(1e-4, 1e-2, 6);
    const auto flat = simulate_decay(QubitKind::Clock, pol, kYb, kLaser, kField, {0.0, 1}, 100, grid);
    for (const auto& p : flat) CHECK_THAT(p.contrast, WithinAbs(1.0, 1e-12));
    const double t2b = 3e-3;
    const auto damped =
        simulate_decay(QubitKind::Clock, pol, kYb, kLaser, kField, {0.0, 1}, 100, grid, t2b);
    for (const auto& p : damped) CHECK_THAT(p.contrast, WithinRel(std::exp(-p.tau / t2b), 1e-12));
}

TEST_CASE("contrast decay matches the Gaussian quasi-static envelope") {
    // Zeeman qubit: shift exactly linear in intensity, envelope is analytic.
    const auto pol = polarization_from_theta_deg(30.0);
    const ShiftModel model = shift_model(QubitKind::ZeemanPlus, kYb, kLaser, kField);
    const double sigma_i = 0.02;
    const double sigma_f =
        std::abs(model.vector_per_i * pol.helicity()) * kLaser.intensity() * sigma_i;
    const double t2 = 1.0 / (std::sqrt(2.0) * M_PI * sigma_f);
    const auto grid = linspace(0.2 * t2, 1.6 * t2, 8);
    const auto table = simulate_decay(QubitKind::ZeemanPlus, pol, kYb, kLaser, kField,
                                      {sigma_i, 7}, 20000, grid);
    for (const auto& p : table) {
        const double env = std::exp(-0.5 * std::pow(constants::two_pi * sigma_f * p.tau, 2));
        CHECK_THAT(p.contrast, WithinAbs(env, 0.02));
    }
    const auto fit = fit_coherence(table);
    CHECK(fit.stretch_exponent == 2);
    CHECK_THAT(fit.t2, WithinRel(t2, 0.05));
}

TEST_CASE("clock decay with the quartic term matches direct quadrature") {
    const auto pol = polarization_from_theta_deg(25.0);
    const ShiftModel model = shift_model(QubitKind::Clock, kYb, kLaser, kField);
    const double x = pol.helicity();
    const double i0 = kLaser.intensity();
    const double sigma_i = 0.01;
    const double sens = std::abs(model.intensity_sensitivity_hz(x, i0)) * sigma_i;
    const double t2 = 1.0 / (std::sqrt(2.0) * M_PI * sens);
    const auto grid = linspace(0.3 * t2, 1.5 * t2, 5);
    const auto table =
        simulate_decay(QubitKind::Clock, pol, kYb, kLaser, kField, {sigma_i, 21}, 20000, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        const double oracle = quadrature_contrast(model, x, i0, sigma_i, grid[i]);
        CHECK_THAT(table[i].contrast, WithinAbs(oracle, 0.02));
    }
}

TEST_CASE("coherence time scales inversely with noise amplitude") {
    const auto pol = polarization_from_theta_deg(30.0);
    auto t2_at = [&](double sigma) {
        const ShiftModel model = shift_model(QubitKind::ZeemanPlus, kYb, kLaser, kField);
        const double sf = std::abs(model.vector_per_i * pol.helicity()) * kLaser.intensity() * sigma;
        const double scale = 1.0 / (std::sqrt(2.0) * M_PI * sf);
        const auto grid = linspace(0.2 * scale, 2.0 * scale, 10);
        return fit_coherence(simulate_decay(QubitKind::ZeemanPlus, pol, kYb, kLaser, kField,
                                            {sigma, 5}, 8000, grid))
            .t2;
    };
    CHECK_THAT(t2_at(0.01) / t2_at(0.02), WithinRel(2.0, 0.05));
}

TEST_CASE("fit recovers synthetic envelopes to within a percent") {
    for (int p = 1; p <= 2; ++p) {
        std::vector<ContrastPoint> table;
        const double t2 = 10e-3;
        for (double tau = 1e-3; tau <= 30e-3; tau += 1e-3)
            table.push_back({tau, std::exp(-std::pow(tau / t2, double(p))), 0.0});
        const auto fit = fit_coherence(table);
        CHECK(fit.stretch_exponent == p);
        CHECK_THAT(fit.t2, WithinRel(t2, 0.01));
    }
}

TEST_CASE("calibration round-trips through the simulator") {
    const auto pol = polarization_from_theta_deg(22.4);
    const double target = 0.5e-3;
    const double sigma =
        calibrate_intensity_sigma(QubitKind::Clock, pol, kYb, kLaser, kField, target);
    CHECK(sigma > 0);
    const auto grid = linspace(0.1 * target, 2.0 * target, 12);
    const auto table =
        simulate_decay(QubitKind::Clock, pol, kYb, kLaser, kField, {sigma, 11}, 8000, grid);
    const auto fit = fit_coherence(table);
    CHECK_THAT(fit.t2, WithinRel(target, 0.1));
}

TEST_CASE("input validation and fit failure modes") {
    const auto pol = polarization_from_theta_deg(30.0);
    const auto grid = linspace(1e-4, 1e-3, 6);
    CHECK_THROWS_AS(
        simulate_decay(QubitKind::Clock, pol, kYb, kLaser, kField, {0.01, 1}, 0, grid),
        std::domain_error);
    CHECK_THROWS_AS(simulate_decay(QubitKind::Clock, pol, kYb, kLaser, kField, {-0.01, 1}, 10, grid),
                    validation_error);
    CHECK_THROWS_AS(simulate_decay(QubitKind::Clock, pol, kYb, kLaser, kField, {0.01, 1}, 10,
                                   {1e-3, 1e-3}),
                    validation_error);
    CHECK_THROWS_AS(simulate_decay(QubitKind::Clock, pol, kYb, kLaser, kField, {0.01, 1}, 10,
                                   {-1e-3, 1e-3}),
                    validation_error);

    std::vector<ContrastPoint> short_table = {{1e-3, 0.5, 0}, {2e-3, 0.3, 0}};
    CHECK_THROWS_AS(fit_coherence(short_table), unconverged_fit_error);
    std::vector<ContrastPoint> flat;
    for (double tau = 1e-3; tau < 7e-3; tau += 1e-3) flat.push_back({tau, 0.95, 0});
    CHECK_THROWS_AS(fit_coherence(flat), unconverged_fit_error);

    PolarizationState lin;  // exactly linear: helicity identically zero
    lin.eps_plus = lin.eps_minus = 1.0 / std::sqrt(2.0);
    lin.eps_pi = 0.0;
    CHECK_THROWS_AS(calibrate_intensity_sigma(QubitKind::ZeemanPlus, lin, kYb, kLaser, kField, 1e-3),
                    std::domain_error);
    CHECK_THROWS_AS(
        calibrate_intensity_sigma(QubitKind::Clock, pol, kYb, kLaser, kField, 0.0),
        std::domain_error);
}
