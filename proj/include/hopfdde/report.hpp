#ifndef HOPFDDE_REPORT_HPP
#define HOPFDDE_REPORT_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "hopfdde/equilibrium.hpp"
#include "hopfdde/normalform.hpp"
#include "hopfdde/params.hpp"
#include "hopfdde/simulate.hpp"
#include "hopfdde/stability.hpp"

namespace hopfdde {

using json = nlohmann::json;

/**
 * Parsed run configuration: the flat `params` object plus per-command
 * sections.  All fields default to the shipped reference parameter
 * set; bounds are enforced at parse time with field-precise messages
 * (ConfigError).
 */
struct RunConfig {
    ModelParams params;

    // equilibrium
    double tol = 1e-12;

    // stability
    int grid_size = 2000;

    // normalform variant switches
    NormalFormOptions nf_opts;

    // simulate
    double dt = 1e-3;
    double t_end = 500.0;
    int decimation = 100;
    double perturbation = 0.01;
    std::optional<double> tau_override;
    bool overlay_waveform = false;
    int quad_substeps = 1;

    // scan (integration settings default to the simulate section's)
    std::optional<double> scan_tau_lo;
    std::optional<double> scan_tau_hi;
    int scan_steps = 40;
    std::optional<double> scan_dt;
    std::optional<double> scan_t_end;
    std::optional<double> scan_perturbation;
};

RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);  // empty path -> defaults

json to_json(const ModelParams& p);
json to_json(const Equilibrium& eq);
json to_json(const CharCoeffs& k);
json to_json(const HopfPoint& hp);
json to_json(const NormalForm& nf);

/// Formats a complex number as a two-element [re, im] array.
json to_json(cx z);

}  // namespace hopfdde

#endif  // HOPFDDE_REPORT_HPP
