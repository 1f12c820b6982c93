#ifndef LIGHTSHIFT_UNITS_HPP_
#define LIGHTSHIFT_UNITS_HPP_

#include <cmath>

// Internal unit convention: SI with angular frequencies (rad/s) everywhere.
// Linear frequencies (Hz, MHz, GHz, THz), gauss, and mW are accepted only at
// interface boundaries and converted on the spot.

namespace lightshift {
namespace constants {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Bohr magneton as a linear frequency per gauss: mu_B/h = 1.399624604 MHz/G.
inline constexpr double mu_b_hz_per_gauss = 1.399624604e6;

inline constexpr double speed_of_light = 299792458.0;          // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

}  // namespace constants

namespace units {

inline double rad_from_hz(double f) { return constants::two_pi * f; }
inline double hz_from_rad(double w) { return w / constants::two_pi; }
inline double tesla_from_gauss(double g) { return g * 1e-4; }
inline double gauss_from_tesla(double t) { return t * 1e4; }
inline double rad_from_deg(double d) { return d * M_PI / 180.0; }
inline double deg_from_rad(double r) { return r * 180.0 / M_PI; }

// Zeeman coupling mu_B * B as an angular frequency.
inline double zeeman_rad_per_s(double b_tesla) {
    return rad_from_hz(constants::mu_b_hz_per_gauss * gauss_from_tesla(b_tesla));
}

}  // namespace units
}  // namespace lightshift

#endif  // LIGHTSHIFT_UNITS_HPP_
