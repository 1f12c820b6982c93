#ifndef LIGHTSHIFT_SPECIES_HPP_
#define LIGHTSHIFT_SPECIES_HPP_

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "lightshift/errors.hpp"
#include "lightshift/units.hpp"

namespace lightshift {

// Atomic constants and derived coupling quantities for one ion species.
// All frequency-like fields are angular (rad/s); intensities are W/m^2.
// Immutable after construction; safe to share across threads.
struct IonSpecies {
    std::string name;
    double omega_hf = 0;          // ground hyperfine splitting
    double gamma_half = 0;        // 2P1/2 spontaneous emission rate
    double gamma_three_half = 0;  // 2P3/2 spontaneous emission rate
    double isat_half = 0;         // 2P1/2 saturation intensity
    double isat_three_half = 0;   // 2P3/2 saturation intensity
    double delta_half = 0;        // laser detuning from 2P1/2, signed
    double delta_three_half = 0;  // laser detuning from 2P3/2, signed
    double g2_half = 0;           // gamma^2/(2*Isat) for 2P1/2
    double g2_three_half = 0;     // gamma^2/(2*Isat) for 2P3/2
};

// g_J^2 = gamma_J^2 / (2 * Ibar_J)
inline double coupling_g2(double gamma, double isat) {
    return gamma * gamma / (2.0 * isat);
}

inline void validate(const IonSpecies& s) {
    auto positive = [](double v, const char* what) {
        if (!(v > 0) || !std::isfinite(v))
            throw validation_error(std::string("species: ") + what + " must be positive and finite");
    };
    positive(s.omega_hf, "omega_hf");
    positive(s.gamma_half, "gamma_half");
    positive(s.gamma_three_half, "gamma_three_half");
    positive(s.isat_half, "isat_half");
    positive(s.isat_three_half, "isat_three_half");
    if (!std::isfinite(s.delta_half) || s.delta_half == 0)
        throw validation_error("species: delta_half must be finite and nonzero");
    if (!std::isfinite(s.delta_three_half) || s.delta_three_half == 0)
        throw validation_error("species: delta_three_half must be finite and nonzero");
    positive(s.g2_half, "g2_half");
    positive(s.g2_three_half, "g2_three_half");
}

// 171Yb+ constants. Published linewidths and saturation intensities are linear
// frequencies and are converted to angular on entry. The hyperfine splitting is
// the 12.642812 GHz clock value (a variant 12.624812 GHz appears in some
// tabulations; the 12.642812 GHz figure is the established clock splitting and
// is what the derived comb detunings require).
inline IonSpecies builtin_yb171() {
    IonSpecies s;
    s.name = "171Yb+";
    s.omega_hf = units::rad_from_hz(12.642812e9);
    s.gamma_half = units::rad_from_hz(19.703e6);
    s.gamma_three_half = units::rad_from_hz(25.895e6);
    s.isat_half = 510.3;
    s.isat_three_half = 950.6;
    s.delta_half = units::rad_from_hz(+33e12);
    s.delta_three_half = units::rad_from_hz(-67e12);
    s.g2_half = coupling_g2(s.gamma_half, s.isat_half);
    s.g2_three_half = coupling_g2(s.gamma_three_half, s.isat_three_half);
    validate(s);
    return s;
}

// Parses the flat key-value species config (JSON). Linear-frequency keys are
// converted to angular; g2 values, when omitted, are recomputed from gamma and
// Isat. Explicit g2 keys use the tabulated s/kg convention (linear gamma).
inline IonSpecies load_species(const std::string& config_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(config_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("species config: ") + e.what());
    }
    auto require = [&](const char* key) -> double {
        if (!j.contains(key))
            throw config_error(std::string("species config: missing key '") + key + "'");
        if (!j.at(key).is_number())
            throw config_error(std::string("species config: key '") + key + "' must be a number");
        return j.at(key).get<double>();
    };

    IonSpecies s;
    s.name = j.value("name", std::string("unnamed"));
    s.omega_hf = units::rad_from_hz(require("omega_hf_GHz") * 1e9);
    s.gamma_half = units::rad_from_hz(require("gamma_half_MHz") * 1e6);
    s.gamma_three_half = units::rad_from_hz(require("gamma_three_half_MHz") * 1e6);
    s.isat_half = require("isat_half_W_m2");
    s.isat_three_half = require("isat_three_half_W_m2");
    s.delta_half = units::rad_from_hz(require("delta_half_THz") * 1e12);
    s.delta_three_half = units::rad_from_hz(require("delta_three_half_THz") * 1e12);

    const double k = constants::two_pi * constants::two_pi;  // s/kg table units -> angular
    s.g2_half = j.contains("g2_half_s_kg") ? require("g2_half_s_kg") * k
                                           : coupling_g2(s.gamma_half, s.isat_half);
    s.g2_three_half = j.contains("g2_three_half_s_kg")
                          ? require("g2_three_half_s_kg") * k
                          : coupling_g2(s.gamma_three_half, s.isat_three_half);
    validate(s);
    return s;
}

// Pulsed-laser beam parameters. Immutable after construction.
struct LaserField {
    double power = 0;           // W
    double waist = 0;           // 1/e^2 radius, m
    double pulse_duration = 0;  // s
    double rep_rate = 0;        // Hz

    LaserField(double power_w, double waist_m, double pulse_s, double rep_hz)
        : power(power_w), waist(waist_m), pulse_duration(pulse_s), rep_rate(rep_hz) {
        if (!(power >= 0)) throw validation_error("laser: power must be >= 0");
        if (!(waist > 0)) throw validation_error("laser: waist must be > 0");
        if (!(pulse_duration > 0)) throw validation_error("laser: pulse_duration must be > 0");
        if (!(rep_rate > 0)) throw validation_error("laser: rep_rate must be > 0");
    }

    // I = P/(pi w0^2)
    double intensity() const { return power / (M_PI * waist * waist); }
};

// Static field along the laser propagation direction.
struct MagneticField {
    double magnitude = 0;  // tesla

    static MagneticField from_gauss(double g) {
        if (!(g >= 0)) throw validation_error("field: magnitude must be >= 0");
        return MagneticField{units::tesla_from_gauss(g)};
    }
    double gauss() const { return units::gauss_from_tesla(magnitude); }
};

}  // namespace lightshift

#endif  // LIGHTSHIFT_SPECIES_HPP_
