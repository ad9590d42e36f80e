#include "hopfdde/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "hopfdde/hill.hpp"

namespace hopfdde {

HistorySpec HistorySpec::sampled(double x1_0, double x2_0, double y2_0,
                                 const std::vector<double>& times,
                                 const std::vector<double>& values) {
    if (times.size() != values.size() || times.size() < 2)
        throw ConfigError("HistorySpec::sampled: need >= 2 matching samples");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw ConfigError("HistorySpec::sampled: times must be increasing");
    HistorySpec h;
    h.x1_0 = x1_0;
    h.x2_0 = x2_0;
    h.y2_0 = y2_0;
    h.y1_0 = values.back();
    h.phi1 = [times, values](double t) {
        if (t <= times.front()) return values.front();
        if (t >= times.back()) return values.back();
        auto it = std::upper_bound(times.begin(), times.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - times.begin());
        const double s = (t - times[i - 1]) / (times[i] - times[i - 1]);
        return values[i - 1] + s * (values[i] - values[i - 1]);
    };
    return h;
}

double History::y1_at(double t) const {
    const double margin = 1e-9 * dt_;
    if (t < t_begin_ - margin || t > t_end() + dt_ + margin)
        throw HistoryUnderflow("History::y1_at: query outside the record");
    double pos = (t - t_begin_) / dt_;
    std::size_t i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= y_.size()) i = y_.size() - 2;  // extrapolate from last segment
    const double s = pos - static_cast<double>(i);
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * y_[i] + h10 * dt_ * d_[i] + h01 * y_[i + 1] + h11 * dt_ * d_[i + 1];
}

double averaged_history_integral(const History& h, double t, double tau, int m,
                                 const std::function<double(double)>& g) {
    if (m < 1) throw ConfigError("averaged_history_integral: m must be >= 1");
    const double ds = tau / m;
    double sum = 0.5 * (g(h.y1_at(t)) + g(h.y1_at(t - tau)));
    for (int j = 1; j < m; ++j) sum += g(h.y1_at(t - j * ds));
    return sum * ds / tau;
}

double distributed_term(const History& h, double t, const ModelParams& p,
                        int quad_nodes) {
    const double f_now = hill(h.y1_at(t), p.a, p.n);
    if (p.tau == 0.0 || p.alpha == 1.0) return f_now;
    if (t - p.tau < h.t_begin() - 1e-9 * h.dt())
        throw HistoryUnderflow("distributed_term: record does not cover [t-tau, t]");
    const int m = quad_nodes > 0
                      ? quad_nodes
                      : static_cast<int>(std::ceil(p.tau / h.dt() - 1e-9));
    const double avg = averaged_history_integral(
        h, t, p.tau, std::max(1, m),
        [&p](double y) { return hill(y, p.a, p.n); });
    return p.alpha * f_now + (1.0 - p.alpha) * avg;
}

namespace {

/// Integrator working set: the dense y1 record plus the cached Hill
/// values and their running trapezoid prefix on the grid.
struct DelayKernel {
    const ModelParams& p;
    History& hist;
    std::vector<double> F;  // hill(y1) at grid points
    std::vector<double> P;  // trapezoid prefix of F
    double dt;
    long base;  // grid index of t = 0

    // grid-aligned trapezoid over [t_q - tau, t_q] with Hermite ends;
    // n_done = index of the last completed grid point, y1_q = stage value
    double eval(double t_q, double y1_q, long n_done) const {
        const double f_now = detail::hill_raw(y1_q, p.a, p.n);
        if (p.alpha == 1.0 || p.tau == 0.0) return f_now;
        const double a = t_q - p.tau;
        long k_lo = static_cast<long>(std::ceil(a / dt - 1e-9));
        if (k_lo + base < 0)
            throw HistoryUnderflow("integrate: delayed window before the record");
        if (k_lo > n_done) k_lo = n_done;
        const std::size_t ilo = static_cast<std::size_t>(k_lo + base);
        const std::size_t idone = static_cast<std::size_t>(n_done + base);
        double integral = P[idone] - P[ilo];
        const double w_top = t_q - static_cast<double>(n_done) * dt;
        if (w_top > 0.0) integral += 0.5 * w_top * (F[idone] + f_now);
        const double w_bot = static_cast<double>(k_lo) * dt - a;
        if (w_bot > 0.0) {
            const double f_a = detail::hill_raw(hist.y1_at(a), p.a, p.n);
            integral += 0.5 * w_bot * (f_a + F[ilo]);
        }
        return p.alpha * f_now + (1.0 - p.alpha) * integral / p.tau;
    }

    // literal per-call quadrature with refined nodes (test/probe path)
    double eval_literal(double t_q, double y1_q, int substeps) const {
        const double f_now = detail::hill_raw(y1_q, p.a, p.n);
        if (p.alpha == 1.0 || p.tau == 0.0) return f_now;
        const int m = static_cast<int>(std::ceil(p.tau / dt - 1e-9)) * substeps;
        const double ds = p.tau / m;
        double sum = 0.5 * (f_now + detail::hill_raw(hist.y1_at(t_q - p.tau), p.a, p.n));
        for (int j = 1; j < m; ++j)
            sum += detail::hill_raw(hist.y1_at(t_q - j * ds), p.a, p.n);
        return p.alpha * f_now + (1.0 - p.alpha) * sum * ds / p.tau;
    }
};

}  // namespace

Trajectory integrate(const ModelParams& p, const HistorySpec& history,
                     double t_end, double dt, int quad_substeps) {
    p.validate();
    if (!(dt > 0.0) || !(t_end > 0.0))
        throw ConfigError("integrate: dt and t_end must be positive");
    if (p.tau > 0.0 && dt > p.tau / 4.0)
        throw StepTooLarge("integrate: dt must satisfy dt <= tau/4 when tau > 0");

    const long n_steps = static_cast<long>(std::floor(t_end / dt + 1e-9));
    const long m0 = p.tau > 0.0
                        ? static_cast<long>(std::ceil(p.tau / dt - 1e-9)) + 2
                        : 1;

    History hist(dt, -static_cast<double>(m0) * dt);
    DelayKernel kern{p, hist, {}, {}, dt, m0};
    kern.F.reserve(m0 + n_steps + 1);
    kern.P.reserve(m0 + n_steps + 1);

    // seed the record on [-m0 dt, 0] from the history profile
    std::function<double(double)> phi = history.phi1;
    if (!phi) phi = [y = history.y1_0](double) { return y; };
    const double fd_h = 0.5 * dt;
    for (long k = -m0; k <= 0; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double y = phi(t);
        if (!(y >= 0.0) || !std::isfinite(y))
            throw ConfigError("integrate: history profile must be finite and >= 0");
        const double d = (phi(t + fd_h) - phi(t - fd_h)) / (2.0 * fd_h);
        hist.append(y, d);
        kern.F.push_back(hill(y, p.a, p.n));
        if (kern.P.empty())
            kern.P.push_back(0.0);
        else
            kern.P.push_back(kern.P.back() +
                             0.5 * dt * (kern.F[kern.F.size() - 2] + kern.F.back()));
    }

    State s{history.x1_0, phi(0.0), history.x2_0, history.y2_0};
    if (!s.finite()) throw NonFiniteState("integrate: non-finite initial state");

    Trajectory traj;
    traj.dt = dt;
    traj.tau = p.tau;
    traj.times.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(s);

    auto delayed = [&](double t_q, double y1_q, long n_done) {
        return quad_substeps == 1 ? kern.eval(t_q, y1_q, n_done)
                                  : kern.eval_literal(t_q, y1_q, quad_substeps);
    };

    for (long n = 0; n < n_steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        const State k1 = rhs(s, delayed(t, s.y1, n), p);
        const State s2 = s + (0.5 * dt) * k1;
        const State k2 = rhs(s2, delayed(t + 0.5 * dt, s2.y1, n), p);
        const State s3 = s + (0.5 * dt) * k2;
        const State k3 = rhs(s3, delayed(t + 0.5 * dt, s3.y1, n), p);
        const State s4 = s + dt * k3;
        const State k4 = rhs(s4, delayed(t + dt, s4.y1, n), p);
        s = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!s.finite())
            throw NonFiniteState("integrate: non-finite state at t = " +
                                 std::to_string(t + dt));
        const double dy1 = s.x1 - (p.a1 + p.a12 * s.y2) * s.y1;
        hist.append(s.y1, dy1);
        kern.F.push_back(detail::hill_raw(s.y1, p.a, p.n));
        kern.P.push_back(kern.P.back() +
                         0.5 * dt * (kern.F[kern.F.size() - 2] + kern.F.back()));
        traj.times.push_back(t + dt);
        traj.states.push_back(s);
    }
    return traj;
}

std::string to_string(LongTermClass c) {
    switch (c) {
        case LongTermClass::decay: return "decay";
        case LongTermClass::sustained_oscillation: return "sustained_oscillation";
        case LongTermClass::growth: return "growth";
        default: return "inconclusive";
    }
}

namespace {

std::pair<double, double> window_envelopes(const Trajectory& traj,
                                           const Equilibrium& eq) {
    const State eqs{eq.x10, eq.y10, eq.x20, eq.y20};
    const std::size_t n = traj.states.size();
    const std::size_t third = n / 3;
    double env_mid = 0.0, env_last = 0.0;
    for (std::size_t i = third; i < 2 * third; ++i)
        env_mid = std::max(env_mid, max_abs(traj.states[i] - eqs));
    for (std::size_t i = 2 * third; i < n; ++i)
        env_last = std::max(env_last, max_abs(traj.states[i] - eqs));
    return {env_mid, env_last};
}

}  // namespace

LongTermClass classify_longterm(const Trajectory& traj, const Equilibrium& eq) {
    const auto [env_mid, env_last] = window_envelopes(traj, eq);
    const double floor_ = 1e-12 * std::max(1.0, std::fabs(eq.y10));
    if (env_mid < floor_) return LongTermClass::decay;  // zero envelope
    const double ratio = env_last / env_mid;
    if (ratio < 0.5) return LongTermClass::decay;
    if (ratio >= 0.8 && ratio <= 1.25) return LongTermClass::sustained_oscillation;
    if (ratio > 2.0) return LongTermClass::growth;
    return LongTermClass::inconclusive;
}

double final_amplitude(const Trajectory& traj, const Equilibrium& eq) {
    return window_envelopes(traj, eq).second;
}

Trajectory analytic_waveform(const NormalForm& nf, const Equilibrium& eq,
                             cx z0, double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end > 0.0))
        throw ConfigError("analytic_waveform: dt and t_end must be positive");
    const cx l1 = nf.pair.lambda1;
    auto zdot = [&](cx z) {
        const cx zb = std::conj(z);
        return l1 * z + nf.gq.g20 * z * z / 2.0 + nf.gq.g11 * z * zb +
               nf.gq.g02 * zb * zb / 2.0 + nf.g21 * z * z * zb / 2.0;
    };
    const long n = static_cast<long>(std::floor(t_end / dt + 1e-9));
    Trajectory traj;
    traj.dt = dt;
    traj.tau = nf.pair.tau0;
    traj.times.reserve(n + 1);
    traj.states.reserve(n + 1);

    auto assemble = [&](cx z) {
        const cx zb = std::conj(z);
        State s;
        double* out[4] = {&s.x1, &s.y1, &s.x2, &s.y2};
        const double base[4] = {eq.x10, eq.y10, eq.x20, eq.y20};
        for (int i = 0; i < 4; ++i) {
            const cx val = z * nf.pair.v[i] + zb * std::conj(nf.pair.v[i]) +
                           0.5 * nf.ct.w20_0[i] * z * z +
                           nf.ct.w11_0[i] * z * zb +
                           0.5 * std::conj(nf.ct.w20_0[i]) * zb * zb;
            *out[i] = base[i] + val.real();
        }
        return s;
    };

    cx z = z0;
    traj.times.push_back(0.0);
    traj.states.push_back(assemble(z));
    for (long i = 0; i < n; ++i) {
        const cx k1 = zdot(z);
        const cx k2 = zdot(z + 0.5 * dt * k1);
        const cx k3 = zdot(z + 0.5 * dt * k2);
        const cx k4 = zdot(z + dt * k3);
        z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        traj.times.push_back((i + 1) * dt);
        traj.states.push_back(assemble(z));
    }
    return traj;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          int decimation) {
    if (decimation < 1) throw ConfigError("write_trajectory_csv: decimation >= 1");
    std::ofstream out(path);
    if (!out) throw ConfigError("write_trajectory_csv: cannot open " + path);
    out << "t,x1,y1,x2,y2\n";
    char line[256];
    for (std::size_t i = 0; i < traj.states.size();
         i += static_cast<std::size_t>(decimation)) {
        const State& s = traj.states[i];
        std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      traj.times[i], s.x1, s.y1, s.x2, s.y2);
        out << line;
    }
}

}  // namespace hopfdde
