// Run configuration for the command-line front end: quadrature settings,
// output directory, grid steps, and the zero-table path, read from a simple
// "key = value" text file.  '#' starts a comment; blank lines are skipped;
// unknown keys are errors (silent typos in a tolerance would quietly change
// what the certificates mean).  The environment variable
// POSITIVITY_KIT_CONFIG, when set, overrides whatever path the caller
// supplies, so a CI harness can swap tolerances without touching command
// lines.  Absent both, the built-in defaults apply.

#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>

#include "positivity/quadrature.hpp"

namespace poskit {

struct RunConfig {
    QuadratureSettings quadrature;
    std::string output_dir = "out";
    std::string zero_file = "data/zeta_zeros_100.txt";
    // Grid steps per subcommand family (the certified defaults).
    double step_realarch = 0.01;    // real-shift kernel-comparison grid
    double step_spectral = 2e-3;    // three-value extremal scans
    double step_maass = 1e-3;       // parity-exclusion window
    double step_plot = 0.05;        // sign-grid sampling
    double eta_max = 100.0;         // real-shift grid proof upper end

    void validate() const {
        if (!(quadrature.rel_tol > 0.0) || !(quadrature.abs_tol > 0.0))
            throw std::invalid_argument("config: quadrature tolerances must be positive");
        if (quadrature.max_subdivisions <= 0)
            throw std::invalid_argument("config: max_subdivisions must be positive");
        if (!(quadrature.tail_cut > 0.0) || !(quadrature.initial_range > 0.0))
            throw std::invalid_argument("config: tail settings must be positive");
        for (const double s : {step_realarch, step_spectral, step_maass, step_plot, eta_max})
            if (!(s > 0.0)) throw std::invalid_argument("config: grid steps must be positive");
        if (output_dir.empty()) throw std::invalid_argument("config: output_dir must be nonempty");
    }
};

namespace detail {

inline std::string config_trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double config_double(const std::string& value, const std::string& where) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: " + where + ": not a number: " + value);
    }
    if (pos != value.size())
        throw std::invalid_argument("config: " + where + ": trailing garbage: " + value);
    return v;
}

}  // namespace detail

// Parses a config file.  Every key is optional; unmentioned fields keep
// their defaults.  Throws with the file name and line number on bad input.
inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);

    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = detail::config_trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;

        const std::string where = path + ": line " + std::to_string(line_no);
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: " + where + ": expected key = value");
        const std::string key = detail::config_trim(stripped.substr(0, eq));
        const std::string value = detail::config_trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: " + where + ": empty key or value");

        if (key == "quadrature.rel_tol") cfg.quadrature.rel_tol = detail::config_double(value, where);
        else if (key == "quadrature.abs_tol") cfg.quadrature.abs_tol = detail::config_double(value, where);
        else if (key == "quadrature.max_subdivisions")
            cfg.quadrature.max_subdivisions = static_cast<int>(detail::config_double(value, where));
        else if (key == "quadrature.tail_cut") cfg.quadrature.tail_cut = detail::config_double(value, where);
        else if (key == "quadrature.initial_range")
            cfg.quadrature.initial_range = detail::config_double(value, where);
        else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "zero_file") cfg.zero_file = value;
        else if (key == "step_realarch") cfg.step_realarch = detail::config_double(value, where);
        else if (key == "step_spectral") cfg.step_spectral = detail::config_double(value, where);
        else if (key == "step_maass") cfg.step_maass = detail::config_double(value, where);
        else if (key == "step_plot") cfg.step_plot = detail::config_double(value, where);
        else if (key == "eta_max") cfg.eta_max = detail::config_double(value, where);
        else throw std::invalid_argument("config: " + where + ": unknown key: " + key);
    }
    cfg.validate();
    return cfg;
}

// Resolves the effective configuration: the POSITIVITY_KIT_CONFIG
// environment variable wins over the supplied path; an empty resolution
// means built-in defaults.
inline RunConfig resolve_config(const std::string& path_hint = "") {
    const char* env = std::getenv("POSITIVITY_KIT_CONFIG");
    const std::string path = env != nullptr ? std::string(env) : path_hint;
    if (path.empty()) {
        RunConfig cfg;
        cfg.validate();
        return cfg;
    }
    return load_config(path);
}

}  // namespace poskit
