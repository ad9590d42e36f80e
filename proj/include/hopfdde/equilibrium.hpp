#ifndef HOPFDDE_EQUILIBRIUM_HPP
#define HOPFDDE_EQUILIBRIUM_HPP

#include "hopfdde/params.hpp"

namespace hopfdde {

/**
 * The positive equilibrium of the model together with the Hill
 * derivatives evaluated at y10 and a residual certificate (max-norm of
 * the stationarity conditions at the returned point).
 */
struct Equilibrium {
    double x10 = 0.0;
    double y10 = 0.0;
    double x20 = 0.0;
    double y20 = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    double rho3 = 0.0;
    double residual = 0.0;
};

/// Scalar reduction g(x) = (a2 + a12 x)(1 - a1 b1 x) / (b1 a12 x);
/// g(y1) equals the stationary x2 when y1 is the stationary y1.
double g_of(double x, const ModelParams& p);

/// dg/dx = -a2/(b1 a12 x^2) - a1 (strictly negative on x > 0).
double g_prime(double x, const ModelParams& p);

/// f(x) - b2 g(x); its unique root on (0, 1/(a1 b1)) is y10.
double equilibrium_residual(double x, const ModelParams& p);

/**
 * Locates the unique positive equilibrium: y10 by bracketed bisection
 * on (0, 1/(a1 b1)) followed by Newton polish with the analytic
 * derivative, the remaining components by closed form.
 *
 * Throws BracketFailure if the residual does not change sign across
 * the bracket (impossible for valid parameters) and NoConvergence if
 * the iteration cap is reached before |residual| < tol.
 */
Equilibrium find_equilibrium(const ModelParams& p, double tol = 1e-12);

}  // namespace hopfdde

#endif  // HOPFDDE_EQUILIBRIUM_HPP
