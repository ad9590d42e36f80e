// Command line front end: equilibrium, stability, normal-form,
// simulation and delay-scan analyses of the distributed-delay
// p53/mdm2 feedback model, with JSON reports, CSV data and SVG plots.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hopfdde/report.hpp"
#include "hopfdde/svg.hpp"

namespace {

using namespace hopfdde;

void emit(const json& j, bool pretty) {
    if (pretty)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump() << "\n";
}

json run_stability(const RunConfig& cfg, Equilibrium& eq,
                   std::vector<HopfPoint>& points) {
    eq = find_equilibrium(cfg.params, cfg.tol);
    const CharCoeffs k = char_coeffs(cfg.params, eq);
    points = hopf_points(k, cfg.grid_size);

    json jpoints = json::array();
    for (const HopfPoint& hp : points) jpoints.push_back(to_json(hp));
    json rep = {{"params", to_json(cfg.params)},
                {"equilibrium", to_json(eq)},
                {"coeffs", to_json(k)},
                {"zero_delay",
                 {{"stable", zero_delay_stable(k)},
                  {"cb", k.c * k.b},
                  {"d_plus_h", k.d + k.h}}},
                {"candidates", jpoints}};
    if (k.h <= 0.0)
        rep["message"] = "no delay-induced Hopf (h = 0)";
    else if (points.empty())
        rep["message"] =
            "no certified imaginary-axis crossing for these parameters";
    else
        rep["selected_tau0"] = points.front().tau0;
    return rep;
}

int cmd_equilibrium(const RunConfig& cfg, bool pretty) {
    const Equilibrium eq = find_equilibrium(cfg.params, cfg.tol);
    emit({{"params", to_json(cfg.params)}, {"equilibrium", to_json(eq)}}, pretty);
    return 0;
}

int cmd_stability(const RunConfig& cfg, bool pretty) {
    Equilibrium eq;
    std::vector<HopfPoint> points;
    emit(run_stability(cfg, eq, points), pretty);
    return 0;
}

int cmd_normalform(const RunConfig& cfg, bool pretty) {
    Equilibrium eq;
    std::vector<HopfPoint> points;
    json rep = run_stability(cfg, eq, points);
    if (points.empty())
        throw NumericalError(
            "normalform: no certified Hopf point for these parameters");

    const NormalForm nf = normal_form(cfg.params, eq, points.front(), cfg.nf_opts);
    rep["normalform"] = to_json(nf);

    // alternate values under each flipped formula switch
    json variants = json::object();
    auto add_variant = [&](const std::string& name, NormalFormOptions o) {
        const NormalForm alt = normal_form(cfg.params, eq, points.front(), o);
        variants[name] = {{"mu2", alt.mu2},
                          {"beta2", alt.beta2},
                          {"T2", alt.T2},
                          {"C1", to_json(alt.C1)},
                          {"direction", to_string(alt.direction)},
                          {"orbit_stability", to_string(alt.orbit_stability)},
                          {"period_trend", to_string(alt.period_trend)}};
    };
    {
        NormalFormOptions o = cfg.nf_opts;
        o.adjoint = o.adjoint == AdjointVariant::conjugated ? AdjointVariant::hale
                                                       : AdjointVariant::conjugated;
        add_variant(std::string("adjoint=") + to_string(o.adjoint), o);
    }
    {
        NormalFormOptions o = cfg.nf_opts;
        o.w204 = o.w204 == W204Variant::g20bar ? W204Variant::g02bar
                                              : W204Variant::g20bar;
        add_variant(std::string("w20_4=") + to_string(o.w204), o);
    }
    {
        NormalFormOptions o = cfg.nf_opts;
        o.cubic = o.cubic == CubicVariant::quartic ? CubicVariant::cubic
                                                 : CubicVariant::quartic;
        add_variant(std::string("g21_cubic=") + to_string(o.cubic), o);
    }
    rep["normalform"]["variant_comparison"] = variants;

    if (pretty) {
        std::ostringstream s;
        s << "The Hopf bifurcation is " << to_string(nf.direction)
          << " (mu2 = " << nf.mu2 << "); the bifurcating periodic solutions are orbitally "
          << to_string(nf.orbit_stability) << " (beta2 = " << nf.beta2
          << "); the period is " << to_string(nf.period_trend)
          << " (T2 = " << nf.T2 << ").";
        rep["normalform"]["summary"] = s.str();
    }
    emit(rep, pretty);
    return 0;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_prefix, bool pretty) {
    ModelParams p = cfg.params;
    if (cfg.tau_override) p.tau = *cfg.tau_override;
    const Equilibrium eq = find_equilibrium(p, cfg.tol);

    HistorySpec hist = HistorySpec::constant(
        State{eq.x10 * (1.0 + cfg.perturbation), eq.y10 * (1.0 + cfg.perturbation),
              eq.x20 * (1.0 + cfg.perturbation), eq.y20 * (1.0 + cfg.perturbation)});
    const Trajectory traj = integrate(p, hist, cfg.t_end, cfg.dt, cfg.quad_substeps);
    const LongTermClass cls = classify_longterm(traj, eq);

    const std::string prefix = out_prefix.empty() ? "hopfdde" : out_prefix;
    const std::string csv_path = prefix + "_trajectory.csv";
    write_trajectory_csv(traj, csv_path, cfg.decimation);

    // decimated series for the plots
    std::vector<double> ts;
    std::vector<double> y1s, y2s;
    for (std::size_t i = 0; i < traj.states.size();
         i += static_cast<std::size_t>(cfg.decimation)) {
        ts.push_back(traj.times[i]);
        y1s.push_back(traj.states[i].y1);
        y2s.push_back(traj.states[i].y2);
    }

    std::vector<std::vector<double>> s1{y1s}, s2{y2s};
    std::vector<std::string> l1{"y1"}, l2{"y2"};
    if (cfg.overlay_waveform) {
        Equilibrium eq2 = eq;
        const CharCoeffs k = char_coeffs(p, eq2);
        const auto points = hopf_points(k, cfg.grid_size);
        if (points.empty())
            throw NumericalError("simulate: waveform overlay requires a Hopf point");
        const NormalForm nf = normal_form(p, eq2, points.front(), cfg.nf_opts);
        const Trajectory wf =
            analytic_waveform(nf, eq2, cx(0.01, 0.0), cfg.t_end, cfg.dt);
        std::vector<double> w1, w2;
        for (std::size_t i = 0; i < wf.states.size();
             i += static_cast<std::size_t>(cfg.decimation)) {
            w1.push_back(wf.states[i].y1);
            w2.push_back(wf.states[i].y2);
        }
        s1.push_back(w1);
        s2.push_back(w2);
        l1.push_back("y1 (waveform)");
        l2.push_back("y2 (waveform)");
    }

    const std::string svg1_path = prefix + "_y1.svg";
    const std::string svg2_path = prefix + "_y2.svg";
    {
        std::ofstream f1(svg1_path);
        f1 << line_plot_svg(ts, s1, l1, "protein y1 vs time", "t", "y1");
        std::ofstream f2(svg2_path);
        f2 << line_plot_svg(ts, s2, l2, "protein y2 vs time", "t", "y2");
    }

    emit({{"params", to_json(p)},
          {"equilibrium", to_json(eq)},
          {"classification", to_string(cls)},
          {"final_amplitude", final_amplitude(traj, eq)},
          {"rows",
           (traj.states.size() + cfg.decimation - 1) /
               static_cast<std::size_t>(cfg.decimation)},
          {"csv", csv_path},
          {"svg", json::array({svg1_path, svg2_path})}},
         pretty);
    return 0;
}

int cmd_scan(const RunConfig& cfg, const std::string& out_prefix, bool pretty) {
    const Equilibrium eq = find_equilibrium(cfg.params, cfg.tol);

    double lo, hi;
    if (cfg.scan_tau_lo && cfg.scan_tau_hi) {
        lo = *cfg.scan_tau_lo;
        hi = *cfg.scan_tau_hi;
    } else {
        const CharCoeffs k = char_coeffs(cfg.params, eq);
        const auto points = hopf_points(k, cfg.grid_size);
        if (points.empty())
            throw NumericalError(
                "scan: no tau range given and no Hopf point to center one on");
        lo = 0.2 * points.front().tau0;
        hi = 2.0 * points.front().tau0;
    }
    const int steps = cfg.scan_steps;
    const double dt = cfg.scan_dt.value_or(cfg.dt);
    const double t_end = cfg.scan_t_end.value_or(cfg.t_end);
    const double perturbation = cfg.scan_perturbation.value_or(cfg.perturbation);

    struct Row {
        double tau = 0.0;
        LongTermClass cls = LongTermClass::inconclusive;
        double amplitude = 0.0;
        bool failed = false;
        std::string error;
    };
    std::vector<Row> rows(steps);

    unsigned n_threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("HOPFDDE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n_threads = static_cast<unsigned>(v);
    }
    n_threads = std::max(1u, std::min<unsigned>(n_threads, steps));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= steps) return;
            Row& r = rows[i];
            r.tau = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1.0);
            try {
                ModelParams p = cfg.params;
                p.tau = r.tau;
                HistorySpec hist = HistorySpec::constant(
                    State{eq.x10 * (1.0 + perturbation),
                          eq.y10 * (1.0 + perturbation),
                          eq.x20 * (1.0 + perturbation),
                          eq.y20 * (1.0 + perturbation)});
                const Trajectory traj = integrate(p, hist, t_end, dt);
                r.cls = classify_longterm(traj, eq);
                r.amplitude = final_amplitude(traj, eq);
            } catch (const std::exception& e) {
                r.failed = true;
                r.error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    const std::string prefix = out_prefix.empty() ? "hopfdde" : out_prefix;
    const std::string csv_path = prefix + "_scan.csv";
    {
        std::ofstream out(csv_path);
        out << "tau,classification,final_amplitude\n";
        char line[128];
        for (const Row& r : rows) {
            if (r.failed) {
                out << r.tau << ",error,nan\n";
            } else {
                std::snprintf(line, sizeof line, "%.10g,%s,%.10g\n", r.tau,
                              to_string(r.cls).c_str(), r.amplitude);
                out << line;
            }
        }
    }

    int n_failed = 0;
    json jrows = json::array();
    for (const Row& r : rows) {
        json jr = {{"tau", r.tau}};
        if (r.failed) {
            jr["error"] = r.error;
            ++n_failed;
        } else {
            jr["classification"] = to_string(r.cls);
            jr["final_amplitude"] = r.amplitude;
        }
        jrows.push_back(jr);
    }
    emit({{"params", to_json(cfg.params)},
          {"tau_lo", lo},
          {"tau_hi", hi},
          {"steps", steps},
          {"csv", csv_path},
          {"rows", jrows}},
         pretty);
    return n_failed == steps ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability and Hopf-bifurcation analysis of the "
                 "distributed-delay p53/mdm2 model"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_prefix;
    bool pretty = false;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out-prefix", out_prefix, "prefix for CSV/SVG outputs");
    app.add_flag("--pretty", pretty, "human-readable JSON output");

    auto* c_eq = app.add_subcommand("equilibrium", "locate the positive equilibrium");
    auto* c_st = app.add_subcommand("stability",
                                    "characteristic coefficients, zero-delay "
                                    "verdict and Hopf candidates");
    auto* c_nf = app.add_subcommand("normalform",
                                    "center-manifold normal form at the "
                                    "smallest critical delay");
    auto* c_sim = app.add_subcommand("simulate", "integrate and plot the model");
    auto* c_scan = app.add_subcommand("scan", "classify long-term behavior over a tau range");

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = hopfdde::load_config(config_path);
        if (app.got_subcommand(c_eq)) return cmd_equilibrium(cfg, pretty);
        if (app.got_subcommand(c_st)) return cmd_stability(cfg, pretty);
        if (app.got_subcommand(c_nf)) return cmd_normalform(cfg, pretty);
        if (app.got_subcommand(c_sim)) return cmd_simulate(cfg, out_prefix, pretty);
        if (app.got_subcommand(c_scan)) return cmd_scan(cfg, out_prefix, pretty);
    } catch (const hopfdde::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const hopfdde::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
