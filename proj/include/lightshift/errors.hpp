#ifndef LIGHTSHIFT_ERRORS_HPP_
#define LIGHTSHIFT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lightshift {

// Malformed or incomplete configuration input.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Physically inadmissible parameter value.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Field geometry outside the supported configuration (e.g. pi-polarized light).
struct geometry_error : std::runtime_error {
    explicit geometry_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A comb line sits exactly on the two-photon resonance.
struct singularity_error : std::runtime_error {
    singularity_error(const std::string& msg, long comb_index)
        : std::runtime_error(msg), k(comb_index) {}
    long k;
};

// Coherence fit cannot be performed on the supplied data.
struct unconverged_fit_error : std::runtime_error {
    explicit unconverged_fit_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lightshift

#endif  // LIGHTSHIFT_ERRORS_HPP_
