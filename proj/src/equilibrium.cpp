#include "hopfdde/equilibrium.hpp"

#include <cmath>

#include "hopfdde/hill.hpp"

namespace hopfdde {

double g_of(double x, const ModelParams& p) {
    if (!(x > 0.0)) throw std::domain_error("g_of: x must be > 0");
    return (p.a2 + p.a12 * x) * (1.0 - p.a1 * p.b1 * x) / (p.b1 * p.a12 * x);
}

double g_prime(double x, const ModelParams& p) {
    if (!(x > 0.0)) throw std::domain_error("g_prime: x must be > 0");
    return -p.a2 / (p.b1 * p.a12 * x * x) - p.a1;
}

double equilibrium_residual(double x, const ModelParams& p) {
    const double hi = 1.0 / (p.a1 * p.b1);
    if (!(x > 0.0) || !(x < hi))
        throw std::domain_error("equilibrium_residual: x outside (0, 1/(a1 b1))");
    return hill(x, p.a, p.n) - p.b2 * g_of(x, p);
}

Equilibrium find_equilibrium(const ModelParams& p, double tol) {
    p.validate();
    if (!(tol >= 1e-14) || !(tol <= 1e-6))
        throw ConfigError("find_equilibrium: tol must lie in [1e-14, 1e-6]");

    const double hi = 1.0 / (p.a1 * p.b1);
    const double eps = 1e-12 * hi;
    double lo = eps, up = hi - eps;

    auto res = [&](double x) { return hill(x, p.a, p.n) - p.b2 * g_of(x, p); };

    double flo = res(lo), fup = res(up);
    if (!(flo < 0.0) || !(fup > 0.0))
        throw BracketFailure("find_equilibrium: no sign change on (0, 1/(a1 b1))");

    // bisection down to a coarse interval, then Newton polish
    int iter = 0;
    while (up - lo > 1e-3 && iter++ < 200) {
        const double mid = 0.5 * (lo + up);
        if (res(mid) < 0.0) lo = mid; else up = mid;
    }

    double x = 0.5 * (lo + up);
    double r = res(x);
    iter = 0;
    while (std::fabs(r) > tol) {
        if (iter++ >= 200)
            throw NoConvergence("find_equilibrium: Newton cap reached");
        const double slope =
            hill_derivs(x, p.a, p.n).rho1 - p.b2 * g_prime(x, p);
        double step = r / slope;
        double xn = x - step;
        // keep the iterate inside the bracket; fall back to bisection
        if (!(xn > lo) || !(xn < up)) xn = 0.5 * (lo + up);
        if (res(xn) < 0.0) lo = xn; else up = xn;
        x = xn;
        r = res(x);
    }

    Equilibrium eq;
    eq.y10 = x;
    eq.x10 = 1.0 / p.b1;
    eq.y20 = (1.0 - p.a1 * p.b1 * x) / (p.b1 * p.a12 * x);
    eq.x20 = (p.a2 + p.a12 * x) * (1.0 - p.a1 * p.b1 * x) / (p.b1 * p.a12 * x);
    const HillDerivs hd = hill_derivs(x, p.a, p.n);
    eq.rho1 = hd.rho1;
    eq.rho2 = hd.rho2;
    eq.rho3 = hd.rho3;

    // residual certificate: all four stationarity conditions with the
    // delayed term at its stationary value f(y10)
    const double f0 = hill(eq.y10, p.a, p.n);
    const double r1 = 1.0 - p.b1 * eq.x10;
    const double r2 = eq.x10 - (p.a1 + p.a12 * eq.y20) * eq.y10;
    const double r3 = f0 - p.b2 * eq.x20;
    const double r4 = eq.x20 - (p.a2 + p.a12 * eq.y10) * eq.y20;
    eq.residual = std::max(std::max(std::fabs(r1), std::fabs(r2)),
                           std::max(std::fabs(r3), std::fabs(r4)));
    return eq;
}

}  // namespace hopfdde
