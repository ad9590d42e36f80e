#ifndef HOPFDDE_TESTS_SUPPORT_HPP
#define HOPFDDE_TESTS_SUPPORT_HPP

// Test-only oracles: finite differences, composite Simpson quadrature,
// cubic root finding and a delay-free RK4 path.  Everything here is
// deliberately independent of the implementation code it checks.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "hopfdde/model.hpp"
#include "hopfdde/params.hpp"

namespace testsupport {

using cx = std::complex<double>;

inline std::mt19937& rng() {
    static std::mt19937 gen(20240817u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

// central difference with one Richardson step
inline double fd1(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

inline double fd2(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double s) { return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s); };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

inline double fd3(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double s) {
        return (f(x + 2.0 * s) - 2.0 * f(x + s) + 2.0 * f(x - s) - f(x - 2.0 * s)) /
               (2.0 * s * s * s);
    };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

// composite Simpson; works with signed intervals (hi < lo) and
// complex-valued integrands
template <typename F>
auto simpson(F f, double lo, double hi, int n) -> decltype(f(lo)) {
    if (n % 2) ++n;
    const double h = (hi - lo) / n;
    auto sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) {
        const double x = lo + h * i;
        sum += (i % 2 ? 4.0 : 2.0) * f(x);
    }
    return h / 3.0 * sum;
}

// roots of z^3 + b z^2 + c z + d by Durand-Kerner
inline std::array<cx, 3> cubic_roots(double b, double c, double d) {
    auto p = [&](cx z) { return ((z + b) * z + c) * z + d; };
    std::array<cx, 3> r{cx(0.4, 0.9), cx(0.4, 0.9) * cx(0.4, 0.9),
                        cx(0.4, 0.9) * cx(0.4, 0.9) * cx(0.4, 0.9)};
    for (int it = 0; it < 500; ++it) {
        double moved = 0.0;
        for (int i = 0; i < 3; ++i) {
            cx den(1.0, 0.0);
            for (int j = 0; j < 3; ++j)
                if (j != i) den *= r[i] - r[j];
            const cx step = p(r[i]) / den;
            r[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    return r;
}

// Numerical evaluation of the duality pairing
//   <Psi, Phi> = conj(Psi(0)) Phi(0)
//              - int_{-tau0}^{0} int_{0}^{theta}
//                    conj(Psi)(xi - theta) B K[Phi](xi) dxi dtheta
// for exponential arguments Psi(s) = w e^{lp s}, Phi(t) = v e^{lf t}.
// K[Phi] is (1/tau0) int_0^xi Phi for the averaged-argument form
// and (1/tau0) Phi(xi) for the plain (adjoint) form; the inner
// running integral is itself computed by quadrature, so the oracle
// shares nothing with the closed forms it checks.
inline cx pairing_quadrature(const std::array<cx, 4>& w, cx lp,
                             const std::array<cx, 4>& v, cx lf, double beta,
                             double tau0, bool averaged_argument, int n = 320) {
    cx direct = 0.0;
    for (int i = 0; i < 4; ++i) direct += std::conj(w[i]) * v[i];
    const cx wb3 = std::conj(w[2]);
    const cx lpc = std::conj(lp);

    auto inner_phi2 = [&](double xi) {
        if (!averaged_argument) return v[1] * std::exp(lf * xi) / tau0;
        const cx run =
            simpson([&](double u) { return v[1] * std::exp(lf * u); }, 0.0, xi, 64);
        return run / tau0;
    };
    const cx dbl = simpson(
        [&](double theta) {
            return simpson(
                [&](double xi) {
                    return wb3 * std::exp(lpc * (xi - theta)) * beta *
                           inner_phi2(xi);
                },
                0.0, theta, 96);
        },
        -tau0, 0.0, n);
    return direct - dbl;
}

// delay-free RK4 with the production term evaluated at the current
// state (the alpha = 1 reference path)
inline std::vector<hopfdde::State> ode_rk4_instantaneous(
    const hopfdde::ModelParams& p, hopfdde::State s, double t_end, double dt) {
    using hopfdde::State;
    const long n = static_cast<long>(std::floor(t_end / dt + 1e-9));
    std::vector<State> out;
    out.reserve(n + 1);
    out.push_back(s);
    auto f = [&](const State& q) {
        return hopfdde::rhs(q, hopfdde::hill(q.y1, p.a, p.n), p);
    };
    for (long i = 0; i < n; ++i) {
        const State k1 = f(s);
        const State s2 = s + (0.5 * dt) * k1;
        const State k2 = f(s2);
        const State s3 = s + (0.5 * dt) * k2;
        const State k3 = f(s3);
        const State s4 = s + dt * k3;
        const State k4 = f(s4);
        s = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push_back(s);
    }
    return out;
}

// reference parameter set reproduced throughout the suite
inline hopfdde::ModelParams reference_params() {
    return hopfdde::ModelParams{0.13, 0.13, 0.06, 0.2, 0.4, 4.0, 3, 0.2,
                                0.1001651263};
}

// a parameter set with a certified delay-induced instability window;
// its equilibrium is exactly (1, 1, 1, 1) with rho1 = 1, rho2 = -1,
// rho3 = -6 and characteristic coefficients b = 2.5, c = 1.19,
// d = 0.275, h = 0.72
inline hopfdde::ModelParams oscillating_params() {
    return hopfdde::ModelParams{0.1, 0.1, 0.9, 1.0, 0.5, 1.0, 4, 0.2, 3.2646};
}

// valid parameters whose equilibrium is unstable already at tau = 0
// (steep Hill feedback: c*b < d + h)
inline hopfdde::ModelParams unstable_at_zero_params() {
    return hopfdde::ModelParams{0.05, 0.05, 1.0, 1.0, 0.50125313283208,
                                1.0,  20,   0.2, 1.0};
}

}  // namespace testsupport

#endif  // HOPFDDE_TESTS_SUPPORT_HPP
