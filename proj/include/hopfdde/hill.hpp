#ifndef HOPFDDE_HILL_HPP
#define HOPFDDE_HILL_HPP

#include <cmath>
#include <stdexcept>

namespace hopfdde {

/**
 * Hill function f(x) = x^n / (a + x^n), the saturating production
 * nonlinearity of the model.  Strictly increasing on [0, inf) with
 * range [0, 1).  For arguments so large that x^n overflows, the
 * saturation limit 1 is returned.
 */
inline double hill(double x, double a, int n) {
    if (!(x >= 0.0)) throw std::domain_error("hill: x must be >= 0");
    const double xn = std::pow(x, n);
    if (std::isinf(xn)) return 1.0;
    return xn / (a + xn);
}

namespace detail {

/// Unchecked evaluation used inside integrators: continuous through
/// small negative arguments (integer exponent), and lets non-finite
/// values propagate so that divergence is caught by the state check.
inline double hill_raw(double x, double a, int n) {
    const double xn = std::pow(x, n);
    if (std::isinf(xn)) return 1.0;  // saturation limit from either side
    return xn / (a + xn);
}

}  // namespace detail

struct HillDerivs {
    double rho1;  // f'
    double rho2;  // f''
    double rho3;  // f'''
};

/**
 * First three derivatives of the Hill function, in closed form:
 *
 *   f'   = n a x^(n-1) / (a + x^n)^2
 *   f''  = n a x^(n-2) [ (n-1)a - (n+1)x^n ] / (a + x^n)^3
 *   f''' = n a [ (n-1)(n-2)a^2 x^(n-3) - 4a(n^2-1) x^(2n-3)
 *              + (n+1)(n+2) x^(3n-3) ] / (a + x^n)^4
 *
 * For n < 3 the formulas are singular at x = 0, hence the domain
 * restriction.  Normal-form coefficients amplify derivative error, so
 * these are evaluated analytically; finite differences are used only
 * as a test oracle.
 */
inline HillDerivs hill_derivs(double x, double a, int n) {
    if (!(x >= 0.0) || (x == 0.0 && n < 3))
        throw std::domain_error("hill_derivs: requires x > 0 (or x = 0 with n >= 3)");
    const double xn = std::pow(x, n);
    if (std::isinf(xn)) return {0.0, 0.0, 0.0};
    const double den = a + xn;
    const double na = static_cast<double>(n) * a;
    const double rho1 = na * std::pow(x, n - 1) / (den * den);
    const double rho2 =
        na * std::pow(x, n - 2) * ((n - 1) * a - (n + 1) * xn) / (den * den * den);
    const double rho3 = na *
                        ((n - 1.0) * (n - 2.0) * a * a * std::pow(x, n - 3) -
                         4.0 * a * (n * n - 1.0) * std::pow(x, 2 * n - 3) +
                         (n + 1.0) * (n + 2.0) * std::pow(x, 3 * n - 3)) /
                        (den * den * den * den);
    return {rho1, rho2, rho3};
}

}  // namespace hopfdde

#endif  // HOPFDDE_HILL_HPP
