#ifndef HOPFDDE_STABILITY_HPP
#define HOPFDDE_STABILITY_HPP

#include <complex>
#include <vector>

#include "hopfdde/equilibrium.hpp"
#include "hopfdde/kernels.hpp"
#include "hopfdde/params.hpp"

namespace hopfdde {

/**
 * Coefficients of the reduced characteristic function
 *   Delta(lambda, tau) = lambda^3 + b lambda^2 + c lambda + d
 *                        + (h/tau) int_0^tau e^{-lambda s} ds.
 * The factor (lambda + b1) of the full determinant is always stable
 * and is dropped.
 */
struct CharCoeffs {
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double h = 0.0;
};

CharCoeffs char_coeffs(const ModelParams& p, const Equilibrium& eq);

/// Delta(lambda, tau); the removable singularities at lambda = 0 and
/// tau = 0 evaluate to the kernel-mean limit (the polynomial plus h).
cx char_delta(cx lambda, double tau, const CharCoeffs& k);

/// d Delta / d lambda.
cx char_delta_dlambda(cx lambda, double tau, const CharCoeffs& k);

/// d Delta / d tau.
cx char_delta_dtau(cx lambda, double tau, const CharCoeffs& k);

/// Routh-Hurwitz test for the tau = 0 cubic: stable iff c*b > d + h.
bool zero_delay_stable(const CharCoeffs& k);

/// Delay candidate as a function of frequency,
/// g1(x) = 2h(c - x^2) / ((b x^2 - d)^2 + x^2 (c - x^2)^2),
/// defined on (0, sqrt(c)].
double g1_of(double omega, const CharCoeffs& k);

/**
 * A purely imaginary characteristic root candidate (omega0, tau0)
 * with its residual certificates and transversality data.
 */
struct HopfPoint {
    double omega0 = 0.0;
    double tau0 = 0.0;
    double residual_sin = 0.0;  // sin(w t) - t w (b w^2 - d)/h
    double residual_cos = 0.0;  // cos(w t) - 1 + t w^2 (c - w^2)/h
    double delta_abs = 0.0;     // |Delta(i w0, tau0)| certificate
    double M1 = 0.0;            // Re d Delta/d lambda at the point
    double M2 = 0.0;            // Im d Delta/d lambda at the point
    double M = 0.0;             // Re of the eigenvalue speed in tau
    double N = 0.0;
    bool simple = false;        // M1^2 + M2^2 above threshold
    bool transversal = false;   // |M| above threshold
};

/// The two residuals of the imaginary-axis crossing conditions.
void crossing_residuals(double omega, double tau, const CharCoeffs& k,
                        double& r_sin, double& r_cos);

/**
 * Scans omega over a uniform grid on (0, sqrt(c)], pairs each omega
 * with tau = g1(omega), and keeps pairs with omega*tau in [0, 2pi]
 * whose crossing residuals are below the coarse threshold 1e-2.
 * Returns candidates ordered by tau; empty when h <= 0 or nothing
 * qualifies (which is a reportable outcome, not an error).
 */
std::vector<HopfPoint> hopf_scan(const CharCoeffs& k, int grid_size);

/**
 * Two-variable Newton iteration on the crossing residuals starting
 * from a coarse candidate.  The converged point carries residuals
 * below 1e-10 and the certificate |Delta(i omega0, tau0)| < 1e-8;
 * candidates collapsing onto the degenerate tau = 0 line are rejected.
 * Throws NoConvergence or SingularJacobian.
 */
HopfPoint hopf_refine(const HopfPoint& candidate, const CharCoeffs& k);

/**
 * Fills the transversality data: M1, M2 (real and imaginary part of
 * d Delta/d lambda), the auxiliary pair N1, N2, and
 *   M = -(M1 N1 + M2 N2) / (M1^2 + M2^2),
 *   N =  (M1 N2 - M2 N1) / (M1^2 + M2^2).
 * Throws DegenerateRoot when M1^2 + M2^2 <= 1e-12.
 */
HopfPoint transversality(HopfPoint hp, const CharCoeffs& k);

/// Full pipeline: scan, refine, de-duplicate, attach transversality,
/// order by tau.  Refinement failures of individual candidates are
/// dropped silently; an empty result means no crossing was certified.
std::vector<HopfPoint> hopf_points(const CharCoeffs& k, int grid_size = 2000);

}  // namespace hopfdde

#endif  // HOPFDDE_STABILITY_HPP
