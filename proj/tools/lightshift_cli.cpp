// Command-line front end: parameter scans, magic-polarization searches,
// dressed-state summaries, and Ramsey coherence simulations, emitted as CSV
// or JSON for plotting.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lightshift/lightshift.hpp"

namespace ls = lightshift;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string species = "builtin:yb171";
    double power_mw = 52.1;
    double waist_um = 7.0;
    double rep_rate_mhz = 118.993;
    double pulse_ps = 12.883;
    double b_gauss = 11.343;
    double hwp_deg = 22.5;
    double qwp_deg = 0.0;
    std::string out;  // empty = stdout
    std::string format = "csv";
    std::uint64_t seed = 0;
    unsigned threads = std::thread::hardware_concurrency();
};

// Fixed-format numeric emitters; '.' decimal separator, locale-independent.
std::string fmt_e(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.5e", v);
    return buf;
}
std::string fmt_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

ls::IonSpecies resolve_species(const std::string& spec) {
    if (spec == "builtin:yb171") return ls::builtin_yb171();
    std::ifstream in(spec);
    if (!in) throw std::ios_base::failure("cannot open species file: " + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    return ls::load_species(ss.str());
}

ls::LaserField resolve_laser(const RunConfig& c) {
    return ls::LaserField(c.power_mw * 1e-3, c.waist_um * 1e-6, c.pulse_ps * 1e-12,
                          c.rep_rate_mhz * 1e6);
}

ls::QubitKind parse_qubit(const std::string& q) {
    if (q == "clock") return ls::QubitKind::Clock;
    if (q == "zeeman+") return ls::QubitKind::ZeemanPlus;
    if (q == "zeeman-") return ls::QubitKind::ZeemanMinus;
    throw ls::config_error("unknown qubit '" + q + "' (expected clock|zeeman+|zeeman-)");
}

json config_json(const RunConfig& c) {
    return json{{"species", c.species},     {"power_mW", c.power_mw},
                {"waist_um", c.waist_um},   {"rep_rate_MHz", c.rep_rate_mhz},
                {"pulse_ps", c.pulse_ps},   {"B_gauss", c.b_gauss},
                {"hwp_deg", c.hwp_deg},     {"qwp_deg", c.qwp_deg},
                {"format", c.format},       {"seed", c.seed},
                {"threads", c.threads}};
}

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file = std::make_unique<std::ofstream>(path);
            if (!*file) throw std::ios_base::failure("cannot open output file: " + path);
            os = file.get();
        }
    }
    std::ostream& stream() { return *os; }
    void finish() {
        os->flush();
        if (file && !*file) throw std::ios_base::failure("write to output file failed");
    }
};

void apply_config_file(const std::string& path, RunConfig& c) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ls::config_error(std::string("run config: ") + e.what());
    }
    auto num = [&](const char* key, double& dst) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_number())
            throw ls::config_error(std::string("run config: key '") + key + "' must be a number");
        dst = j.at(key).get<double>();
    };
    if (j.contains("species")) c.species = j.at("species").get<std::string>();
    num("power_mW", c.power_mw);
    num("waist_um", c.waist_um);
    num("rep_rate_MHz", c.rep_rate_mhz);
    num("pulse_ps", c.pulse_ps);
    num("B_gauss", c.b_gauss);
    num("hwp_deg", c.hwp_deg);
    num("qwp_deg", c.qwp_deg);
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
}

void cmd_scan_theta(const RunConfig& cfg, const std::string& qubit_name, double resolution_deg) {
    if (!(resolution_deg > 0)) throw ls::config_error("scan-theta: resolution must be > 0");
    const auto species = resolve_species(cfg.species);
    const auto laser = resolve_laser(cfg);
    const auto field = ls::MagneticField::from_gauss(cfg.b_gauss);
    const auto qubit = parse_qubit(qubit_name);
    const auto table = ls::scan_theta(qubit, species, laser, field, resolution_deg);

    Output out(cfg.out);
    json meta = config_json(cfg);
    meta["qubit"] = qubit_name;
    meta["resolution_deg"] = resolution_deg;
    if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& s : table) {
            rows.push_back({{"theta_deg", s.theta_deg},
                            {"eps_plus_sq", s.pol.p_plus()},
                            {"eps_minus_sq", s.pol.p_minus()},
                            {"second_scalar_hz", s.shift.second_scalar},
                            {"second_vector_hz", s.shift.second_vector},
                            {"fourth_hz", s.shift.fourth},
                            {"total_hz", s.shift.total}});
        }
        out.stream() << json{{"config", meta}, {"rows", rows}}.dump(2) << "\n";
    } else {
        out.stream() << "# " << meta.dump() << "\n";
        out.stream()
            << "theta_deg,eps_plus_sq,eps_minus_sq,second_scalar_hz,second_vector_hz,fourth_hz,total_hz\n";
        for (const auto& s : table) {
            out.stream() << fmt_angle(s.theta_deg) << ',' << fmt_e(s.pol.p_plus()) << ','
                         << fmt_e(s.pol.p_minus()) << ',' << fmt_e(s.shift.second_scalar) << ','
                         << fmt_e(s.shift.second_vector) << ',' << fmt_e(s.shift.fourth) << ','
                         << fmt_e(s.shift.total) << "\n";
        }
    }
    out.finish();
}

void cmd_scan_intensity(const RunConfig& cfg, const std::string& qubit_name, double theta_deg,
                        const std::vector<double>& powers_mw) {
    const auto species = resolve_species(cfg.species);
    const auto field = ls::MagneticField::from_gauss(cfg.b_gauss);
    const auto qubit = parse_qubit(qubit_name);
    const auto pol = ls::polarization_from_theta_deg(theta_deg, cfg.qwp_deg);
    const double x = pol.helicity();

    struct Row {
        double power_mw, intensity, total, d_sigma;
    };
    std::vector<Row> rows;
    for (double p : powers_mw) {
        if (!(p >= 0)) throw ls::config_error("scan-intensity: powers must be >= 0");
        RunConfig c = cfg;
        c.power_mw = p;
        const auto laser = resolve_laser(c);
        const auto model = ls::shift_model(qubit, species, laser, field);
        const double i = laser.intensity();
        Row r;
        r.power_mw = p;
        r.intensity = i;
        r.total = model.shift_hz(x, i);
        // D = shift(sigma-) - shift(sigma+) at equal power
        r.d_sigma = model.shift_hz(-1.0, i) - model.shift_hz(+1.0, i);
        rows.push_back(r);
    }

    Output out(cfg.out);
    json meta = config_json(cfg);
    meta["qubit"] = qubit_name;
    meta["theta_deg"] = theta_deg;
    const bool clock = qubit == ls::QubitKind::Clock;
    if (cfg.format == "json") {
        json jrows = json::array();
        for (const auto& r : rows) {
            json jr = {{"power_mW", r.power_mw},
                       {"intensity_W_m2", r.intensity},
                       {"total_hz", r.total}};
            if (clock) jr["d_sigma_hz"] = r.d_sigma;
            jrows.push_back(jr);
        }
        out.stream() << json{{"config", meta}, {"rows", jrows}}.dump(2) << "\n";
    } else {
        out.stream() << "# " << meta.dump() << "\n";
        out.stream() << "power_mW,intensity_W_m2,total_hz" << (clock ? ",d_sigma_hz" : "") << "\n";
        for (const auto& r : rows) {
            out.stream() << fmt_e(r.power_mw) << ',' << fmt_e(r.intensity) << ','
                         << fmt_e(r.total);
            if (clock) out.stream() << ',' << fmt_e(r.d_sigma);
            out.stream() << "\n";
        }
    }
    out.finish();
}

void cmd_find_magic(const RunConfig& cfg, const std::string& qubit_name) {
    const auto species = resolve_species(cfg.species);
    const auto laser = resolve_laser(cfg);
    const auto field = ls::MagneticField::from_gauss(cfg.b_gauss);
    const auto res = ls::find_min_shift(parse_qubit(qubit_name), species, laser, field);

    json meta = config_json(cfg);
    meta["qubit"] = qubit_name;
    json crossings = json::array();
    for (const auto& z : res.zero_crossings)
        crossings.push_back({{"theta_deg", z.theta_deg}, {"bracketed", z.bracketed}});
    json doc = {{"config", meta},
                {"theta_min_deg", res.theta_min_deg},
                {"theta_min_mirror_deg", res.theta_min_mirror_deg},
                {"shift_at_min_hz", res.shift_at_min_hz},
                {"zero_crossings", crossings}};
    Output out(cfg.out);
    out.stream() << doc.dump(2) << "\n";
    out.finish();
}

void cmd_threshold_field(const RunConfig& cfg, double b_min, double b_max) {
    const auto species = resolve_species(cfg.species);
    const auto laser = resolve_laser(cfg);
    const double b_star = ls::threshold_field(species, laser, b_min, b_max);

    json doc = {{"config", config_json(cfg)}, {"threshold_gauss", b_star}};
    Output out(cfg.out);
    out.stream() << doc.dump(2) << "\n";
    out.finish();
}

void cmd_dressed_states(const RunConfig& cfg) {
    const auto species = resolve_species(cfg.species);
    const auto field = ls::MagneticField::from_gauss(cfg.b_gauss);
    const auto basis = ls::dress(species, field);
    static const char* labels[4] = {"F0m0", "F1m0", "F1m+1", "F1m-1"};

    Output out(cfg.out);
    if (cfg.format == "json") {
        json states = json::array();
        for (int i = 0; i < 4; ++i) {
            states.push_back({{"label", labels[i]},
                              {"energy_MHz", ls::units::hz_from_rad(basis.eigenvalues[i]) / 1e6},
                              {"components", basis.eigenvectors[i]}});
        }
        out.stream() << json{{"config", config_json(cfg)},
                             {"mixing_ratio", basis.mixing_ratio},
                             {"states", states}}
                            .dump(2)
                     << "\n";
    } else {
        out.stream() << "# " << config_json(cfg).dump() << "\n";
        out.stream() << "# mixing_ratio R = " << fmt_e(basis.mixing_ratio) << "\n";
        out.stream() << "label,energy_MHz\n";
        for (int i = 0; i < 4; ++i)
            out.stream() << labels[i] << ','
                         << fmt_e(ls::units::hz_from_rad(basis.eigenvalues[i]) / 1e6) << "\n";
    }
    out.finish();
}

void cmd_ramsey(const RunConfig& cfg, const std::string& qubit_name, double theta_deg,
                double sigma_i, std::optional<double> calibrate_t2_ms, long shots,
                double tau_min_s, double tau_max_s, long tau_points,
                std::optional<double> baseline_t2_ms) {
    if (shots < 1) throw ls::config_error("ramsey: shots must be >= 1");
    if (!(tau_points >= 5)) throw ls::config_error("ramsey: need at least 5 tau points");
    if (!(tau_max_s > tau_min_s) || !(tau_min_s > 0))
        throw ls::config_error("ramsey: require 0 < tau-min < tau-max");

    const auto species = resolve_species(cfg.species);
    const auto laser = resolve_laser(cfg);
    const auto field = ls::MagneticField::from_gauss(cfg.b_gauss);
    const auto qubit = parse_qubit(qubit_name);
    const auto pol = ls::polarization_from_theta_deg(theta_deg, cfg.qwp_deg);

    if (calibrate_t2_ms)
        sigma_i = ls::calibrate_intensity_sigma(qubit, pol, species, laser, field,
                                                *calibrate_t2_ms * 1e-3);

    std::vector<double> taus(tau_points);
    for (long i = 0; i < tau_points; ++i)
        taus[i] = tau_min_s + (tau_max_s - tau_min_s) * double(i) / double(tau_points - 1);

    ls::NoiseModel noise{sigma_i, cfg.seed};
    const double baseline =
        baseline_t2_ms ? *baseline_t2_ms * 1e-3 : std::numeric_limits<double>::infinity();
    const auto table = ls::simulate_decay(qubit, pol, species, laser, field, noise, shots, taus,
                                          baseline, cfg.threads);

    json summary = {{"seed", cfg.seed}, {"sigma_i", sigma_i}, {"shots", shots}};
    try {
        const auto fit = ls::fit_coherence(table);
        summary["T2_s"] = fit.t2;
        summary["model"] = "exp(-(tau/T2)^" + std::to_string(fit.stretch_exponent) + ")";
        summary["residual_rms"] = fit.residual_rms;
    } catch (const ls::unconverged_fit_error& e) {
        summary["T2_s"] = nullptr;
        summary["model"] = "unconverged";
        summary["note"] = e.what();
    }

    json meta = config_json(cfg);
    meta["qubit"] = qubit_name;
    meta["theta_deg"] = theta_deg;
    Output out(cfg.out);
    if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& p : table)
            rows.push_back({{"tau_s", p.tau}, {"contrast", p.contrast}, {"contrast_err", p.err}});
        out.stream() << json{{"config", meta}, {"summary", summary}, {"rows", rows}}.dump(2)
                     << "\n";
    } else {
        out.stream() << "# " << meta.dump() << "\n";
        out.stream() << "# " << summary.dump() << "\n";
        out.stream() << "tau_s,contrast,contrast_err\n";
        for (const auto& p : table)
            out.stream() << fmt_e(p.tau) << ',' << fmt_e(p.contrast) << ',' << fmt_e(p.err)
                         << "\n";
    }
    out.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AC Stark shift calculator for trapped-ion hyperfine qubits"};
    app.require_subcommand(1);
    // let shared options (--seed, --format, ...) appear after the subcommand
    app.fallthrough();

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "run config JSON file");
    app.add_option("--species", cfg.species, "builtin:yb171 or species JSON path");
    app.add_option("--power-mw", cfg.power_mw, "optical power (mW)");
    app.add_option("--waist-um", cfg.waist_um, "beam waist (um)");
    app.add_option("--rep-rate-mhz", cfg.rep_rate_mhz, "comb repetition rate (MHz)");
    app.add_option("--pulse-ps", cfg.pulse_ps, "pulse duration (ps)");
    app.add_option("--b-gauss", cfg.b_gauss, "magnetic field (gauss)");
    app.add_option("--qwp-deg", cfg.qwp_deg, "QWP angle (deg)");
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--format", cfg.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--threads", cfg.threads, "worker thread bound");

    std::string qubit = "clock";
    double resolution_deg = 0.1;
    auto* scan_theta_cmd = app.add_subcommand("scan-theta", "shift vs wave-plate angle");
    scan_theta_cmd->add_option("--qubit", qubit, "clock|zeeman+|zeeman-");
    scan_theta_cmd->add_option("--resolution-deg", resolution_deg, "grid resolution (deg)");

    std::vector<double> powers_mw;
    auto* scan_int_cmd = app.add_subcommand("scan-intensity", "shift vs laser power");
    scan_int_cmd->add_option("--qubit", qubit, "clock|zeeman+|zeeman-");
    scan_int_cmd->add_option("--theta-deg", cfg.hwp_deg, "HWP angle (deg)");
    scan_int_cmd->add_option("--powers-mw", powers_mw, "power list (mW)")->expected(-1);

    auto* magic_cmd = app.add_subcommand("find-magic", "minimum-|shift| polarization");
    magic_cmd->add_option("--qubit", qubit, "clock|zeeman+|zeeman-");

    double b_min = 1e-3, b_max = 100.0;
    auto* thresh_cmd = app.add_subcommand("threshold-field", "magic-polarization threshold field");
    thresh_cmd->add_option("--b-min", b_min, "search range lower bound (gauss)");
    thresh_cmd->add_option("--b-max", b_max, "search range upper bound (gauss)");

    auto* dressed_cmd = app.add_subcommand("dressed-states", "ground-manifold eigensystem");

    double sigma_i = 0.0, tau_min_s = 1e-5, tau_max_s = 2e-3;
    long shots = 1000, tau_points = 40;
    std::optional<double> calibrate_t2_ms, baseline_t2_ms;
    auto* ramsey_cmd = app.add_subcommand("ramsey", "Ramsey contrast decay simulation");
    ramsey_cmd->add_option("--qubit", qubit, "clock|zeeman+|zeeman-");
    ramsey_cmd->add_option("--theta-deg", cfg.hwp_deg, "HWP angle (deg)");
    ramsey_cmd->add_option("--sigma-i", sigma_i, "fractional RMS intensity noise");
    ramsey_cmd->add_option("--calibrate-t2-ms", calibrate_t2_ms,
                           "choose sigma-i to reproduce this T2 at the operating point");
    ramsey_cmd->add_option("--shots", shots, "shots per tau point");
    ramsey_cmd->add_option("--tau-min-s", tau_min_s, "first free-evolution time (s)");
    ramsey_cmd->add_option("--tau-max-s", tau_max_s, "last free-evolution time (s)");
    ramsey_cmd->add_option("--tau-points", tau_points, "tau grid size");
    ramsey_cmd->add_option("--baseline-t2-ms", baseline_t2_ms, "laser-free T2 floor (ms)");

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            // CLI flags win over the config file: re-parse on top of file values.
            apply_config_file(config_path, cfg);
            app.clear();
            app.parse(argc, argv);
        }

        if (scan_theta_cmd->parsed()) {
            cmd_scan_theta(cfg, qubit, resolution_deg);
        } else if (scan_int_cmd->parsed()) {
            if (powers_mw.empty())
                for (int p = 0; p <= 60; p += 5) powers_mw.push_back(double(p));
            cmd_scan_intensity(cfg, qubit, cfg.hwp_deg, powers_mw);
        } else if (magic_cmd->parsed()) {
            cmd_find_magic(cfg, qubit);
        } else if (thresh_cmd->parsed()) {
            cmd_threshold_field(cfg, b_min, b_max);
        } else if (dressed_cmd->parsed()) {
            cmd_dressed_states(cfg);
        } else if (ramsey_cmd->parsed()) {
            cmd_ramsey(cfg, qubit, cfg.hwp_deg, sigma_i, calibrate_t2_ms, shots, tau_min_s,
                       tau_max_s, tau_points, baseline_t2_ms);
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ls::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ls::validation_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    }
}
