#include "hopfdde/report.hpp"

#include <fstream>

namespace hopfdde {

namespace {

double get_num(const json& j, const std::string& section, const std::string& key,
               double fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number())
        throw ConfigError(section + "." + key + " must be a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& section, const std::string& key,
            int fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer())
        throw ConfigError(section + "." + key + " must be an integer");
    return v.get<int>();
}

bool get_bool(const json& j, const std::string& section, const std::string& key,
              bool fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_boolean()) throw ConfigError(section + "." + key + " must be a boolean");
    return v.get<bool>();
}

}  // namespace

RunConfig parse_config(const json& j) {
    RunConfig cfg;
    if (j.contains("params")) {
        const json& p = j.at("params");
        if (!p.is_object()) throw ConfigError("params must be an object");
        cfg.params.a1 = get_num(p, "params", "a1", cfg.params.a1);
        cfg.params.a2 = get_num(p, "params", "a2", cfg.params.a2);
        cfg.params.a12 = get_num(p, "params", "a12", cfg.params.a12);
        cfg.params.b1 = get_num(p, "params", "b1", cfg.params.b1);
        cfg.params.b2 = get_num(p, "params", "b2", cfg.params.b2);
        cfg.params.a = get_num(p, "params", "a", cfg.params.a);
        if (p.contains("n")) {
            if (!p.at("n").is_number_integer())
                throw ConfigError("params.n must be an integer (real exponents are not supported)");
            cfg.params.n = p.at("n").get<int>();
        }
        cfg.params.alpha = get_num(p, "params", "alpha", cfg.params.alpha);
        cfg.params.tau = get_num(p, "params", "tau", cfg.params.tau);
    }
    cfg.params.validate();

    if (j.contains("equilibrium")) {
        const json& e = j.at("equilibrium");
        cfg.tol = get_num(e, "equilibrium", "tol", cfg.tol);
        if (!(cfg.tol >= 1e-14) || !(cfg.tol <= 1e-6))
            throw ConfigError("equilibrium.tol must lie in [1e-14, 1e-6]");
    }
    if (j.contains("stability")) {
        const json& s = j.at("stability");
        cfg.grid_size = get_int(s, "stability", "grid_size", cfg.grid_size);
        if (cfg.grid_size < 100)
            throw ConfigError("stability.grid_size must be >= 100");
    }
    if (j.contains("normalform")) {
        const json& n = j.at("normalform");
        auto pick = [&](const char* key, const char* va, const char* vb) {
            if (!n.contains(key)) return std::string(va);
            const auto s = n.at(key).get<std::string>();
            if (s != va && s != vb)
                throw ConfigError(std::string("normalform.") + key +
                                  " must be \"" + va + "\" or \"" + vb + "\"");
            return s;
        };
        cfg.nf_opts.adjoint =
            pick("adjoint", "conjugated", "hale") == "conjugated"
                ? AdjointVariant::conjugated
                : AdjointVariant::hale;
        cfg.nf_opts.w204 = pick("w20_4", "g20bar", "g02bar") == "g20bar"
                               ? W204Variant::g20bar
                               : W204Variant::g02bar;
        cfg.nf_opts.cubic = pick("g21_cubic", "quartic", "cubic") == "quartic"
                                ? CubicVariant::quartic
                                : CubicVariant::cubic;
    }
    if (j.contains("simulate")) {
        const json& s = j.at("simulate");
        cfg.dt = get_num(s, "simulate", "dt", cfg.dt);
        cfg.t_end = get_num(s, "simulate", "t_end", cfg.t_end);
        cfg.decimation = get_int(s, "simulate", "decimation", cfg.decimation);
        cfg.perturbation = get_num(s, "simulate", "perturbation", cfg.perturbation);
        cfg.overlay_waveform = get_bool(s, "simulate", "overlay_waveform",
                                        cfg.overlay_waveform);
        cfg.quad_substeps = get_int(s, "simulate", "quad_substeps", cfg.quad_substeps);
        if (s.contains("tau")) cfg.tau_override = get_num(s, "simulate", "tau", 0.0);
        if (!(cfg.dt > 0.0)) throw ConfigError("simulate.dt must be positive");
        if (!(cfg.t_end > 0.0)) throw ConfigError("simulate.t_end must be positive");
        if (cfg.decimation < 1) throw ConfigError("simulate.decimation must be >= 1");
        if (cfg.quad_substeps < 1)
            throw ConfigError("simulate.quad_substeps must be >= 1");
        if (cfg.tau_override && !(*cfg.tau_override >= 0.0))
            throw ConfigError("simulate.tau must be >= 0");
    }
    if (j.contains("scan")) {
        const json& s = j.at("scan");
        if (s.contains("tau_lo")) cfg.scan_tau_lo = get_num(s, "scan", "tau_lo", 0.0);
        if (s.contains("tau_hi")) cfg.scan_tau_hi = get_num(s, "scan", "tau_hi", 0.0);
        cfg.scan_steps = get_int(s, "scan", "steps", cfg.scan_steps);
        if (cfg.scan_steps < 1) throw ConfigError("scan.steps must be >= 1");
        if (cfg.scan_tau_lo && !(*cfg.scan_tau_lo >= 0.0))
            throw ConfigError("scan.tau_lo must be >= 0");
        if (cfg.scan_tau_lo && cfg.scan_tau_hi &&
            !(*cfg.scan_tau_hi >= *cfg.scan_tau_lo))
            throw ConfigError("scan.tau_hi must be >= scan.tau_lo");
        if (s.contains("dt")) cfg.scan_dt = get_num(s, "scan", "dt", 0.0);
        if (s.contains("t_end"))
            cfg.scan_t_end = get_num(s, "scan", "t_end", 0.0);
        if (s.contains("perturbation"))
            cfg.scan_perturbation = get_num(s, "scan", "perturbation", 0.0);
        if (cfg.scan_dt && !(*cfg.scan_dt > 0.0))
            throw ConfigError("scan.dt must be positive");
        if (cfg.scan_t_end && !(*cfg.scan_t_end > 0.0))
            throw ConfigError("scan.t_end must be positive");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    if (path.empty()) return parse_config(json::object());
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

json to_json(cx z) { return json::array({z.real(), z.imag()}); }

namespace {
json vec_json(const ComplexVec4& v) {
    json a = json::array();
    for (const cx& z : v) a.push_back(to_json(z));
    return a;
}
}  // namespace

json to_json(const ModelParams& p) {
    return {{"a1", p.a1}, {"a2", p.a2}, {"a12", p.a12}, {"b1", p.b1},
            {"b2", p.b2}, {"a", p.a},   {"n", p.n},     {"alpha", p.alpha},
            {"tau", p.tau}};
}

json to_json(const Equilibrium& eq) {
    return {{"x10", eq.x10},   {"y10", eq.y10},   {"x20", eq.x20},
            {"y20", eq.y20},   {"rho1", eq.rho1}, {"rho2", eq.rho2},
            {"rho3", eq.rho3}, {"residual", eq.residual}};
}

json to_json(const CharCoeffs& k) {
    return {{"b", k.b}, {"c", k.c}, {"d", k.d}, {"h", k.h}};
}

json to_json(const HopfPoint& hp) {
    return {{"omega0", hp.omega0},
            {"tau0", hp.tau0},
            {"residual_sin", hp.residual_sin},
            {"residual_cos", hp.residual_cos},
            {"delta_abs", hp.delta_abs},
            {"M1", hp.M1},
            {"M2", hp.M2},
            {"M", hp.M},
            {"N", hp.N},
            {"simple", hp.simple},
            {"transversal", hp.transversal}};
}

json to_json(const NormalForm& nf) {
    return {{"hopf", to_json(nf.hopf)},
            {"eigen",
             {{"v", vec_json(nf.pair.v)},
              {"w", vec_json(nf.pair.w)},
              {"eta", to_json(nf.pair.eta)},
              {"lambda1", to_json(nf.pair.lambda1)}}},
            {"g",
             {{"g20", to_json(nf.gq.g20)},
              {"g11", to_json(nf.gq.g11)},
              {"g02", to_json(nf.gq.g02)},
              {"g21", to_json(nf.g21)}}},
            {"E1", vec_json(nf.ct.E1)},
            {"E2", vec_json(nf.ct.E2)},
            {"k",
             {{"k1", to_json(nf.ct.k1)},
              {"k2", to_json(nf.ct.k2)},
              {"k3", to_json(nf.ct.k3)},
              {"k4", to_json(nf.ct.k4)}}},
            {"C1", to_json(nf.C1)},
            {"mu2", nf.mu2},
            {"beta2", nf.beta2},
            {"T2", nf.T2},
            {"direction", to_string(nf.direction)},
            {"orbit_stability", to_string(nf.orbit_stability)},
            {"period_trend", to_string(nf.period_trend)},
            {"variants",
             {{"adjoint", to_string(nf.opts.adjoint)},
              {"w20_4", to_string(nf.opts.w204)},
              {"g21_cubic", to_string(nf.opts.cubic)}}}};
}

}  // namespace hopfdde
