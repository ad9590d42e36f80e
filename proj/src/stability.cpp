#include "hopfdde/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hopfdde {

namespace {
constexpr double kCoarseTol = 1e-2;
constexpr double kRefineTol = 1e-10;
constexpr double kDeltaCert = 1e-8;
constexpr double kSimpleTol = 1e-12;
constexpr double kTransTol = 1e-12;
constexpr double kTauFloor = 1e-8;
}  // namespace

CharCoeffs char_coeffs(const ModelParams& p, const Equilibrium& eq) {
    CharCoeffs k;
    const double ys = eq.y20 + eq.y10;
    k.b = p.a1 + p.a2 + p.b2 + p.a12 * ys;
    k.c = p.b2 * (p.a1 + p.a2) + p.b2 * p.a12 * ys + p.a1 * p.a2 +
          p.a12 * (p.a1 * eq.y10 + p.a2 * eq.y20);
    k.d = p.b2 * p.a1 * p.a2 +
          p.a12 * p.b2 * (eq.y20 * p.a2 + p.a1 * eq.y10) +
          p.alpha * p.a12 * eq.y10 * eq.rho1;
    k.h = (1.0 - p.alpha) * p.a12 * eq.y10 * eq.rho1;
    return k;
}

cx char_delta(cx lambda, double tau, const CharCoeffs& k) {
    const cx poly = ((lambda + k.b) * lambda + k.c) * lambda + k.d;
    return poly + k.h * kernel_mean(lambda * tau);
}

cx char_delta_dlambda(cx lambda, double tau, const CharCoeffs& k) {
    const cx poly = (3.0 * lambda + 2.0 * k.b) * lambda + k.c;
    return poly - k.h * tau * kernel_mean_slope(lambda * tau);
}

cx char_delta_dtau(cx lambda, double tau, const CharCoeffs& k) {
    if (tau <= 0.0) throw std::domain_error("char_delta_dtau: tau must be > 0");
    // d/dtau of h*(1-e^{-z})/z with z = lambda tau
    const cx z = lambda * tau;
    return -(k.h / tau) * z * kernel_mean_slope(z);
}

bool zero_delay_stable(const CharCoeffs& k) {
    return k.c * k.b > k.d + k.h;
}

double g1_of(double omega, const CharCoeffs& k) {
    const double w2 = omega * omega;
    const double n1 = k.b * w2 - k.d;
    const double n2 = k.c - w2;
    return 2.0 * k.h * n2 / (n1 * n1 + w2 * n2 * n2);
}

void crossing_residuals(double omega, double tau, const CharCoeffs& k,
                        double& r_sin, double& r_cos) {
    const double w2 = omega * omega;
    r_sin = std::sin(omega * tau) - tau * omega * (k.b * w2 - k.d) / k.h;
    r_cos = std::cos(omega * tau) - 1.0 + tau * w2 * (k.c - w2) / k.h;
}

std::vector<HopfPoint> hopf_scan(const CharCoeffs& k, int grid_size) {
    if (grid_size < 100)
        throw ConfigError("hopf_scan: grid_size must be >= 100");
    std::vector<HopfPoint> out;
    if (!(k.h > 0.0)) return out;  // delay coupling absent

    const double wmax = std::sqrt(k.c);
    for (int i = 1; i <= grid_size; ++i) {
        const double w = wmax * static_cast<double>(i) / grid_size;
        const double t = g1_of(w, k);
        if (!(t > 0.0)) continue;
        const double wt = w * t;
        if (wt < 0.0 || wt > 2.0 * std::numbers::pi) continue;
        double rs, rc;
        crossing_residuals(w, t, k, rs, rc);
        if (std::fabs(rs) < kCoarseTol && std::fabs(rc) < kCoarseTol) {
            HopfPoint hp;
            hp.omega0 = w;
            hp.tau0 = t;
            hp.residual_sin = rs;
            hp.residual_cos = rc;
            hp.delta_abs = std::abs(char_delta(cx(0.0, w), t, k));
            out.push_back(hp);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const HopfPoint& a, const HopfPoint& b) { return a.tau0 < b.tau0; });
    return out;
}

HopfPoint hopf_refine(const HopfPoint& candidate, const CharCoeffs& k) {
    double w = candidate.omega0;
    double t = candidate.tau0;
    double rs, rc;
    crossing_residuals(w, t, k, rs, rc);

    int iter = 0;
    while (std::fabs(rs) + std::fabs(rc) > kRefineTol) {
        if (iter++ >= 100)
            throw NoConvergence("hopf_refine: Newton cap reached");
        const double w2 = w * w;
        const double cwt = std::cos(w * t), swt = std::sin(w * t);
        const double j11 = t * cwt - t * (3.0 * k.b * w2 - k.d) / k.h;
        const double j12 = w * cwt - w * (k.b * w2 - k.d) / k.h;
        const double j21 = -t * swt + t * (2.0 * k.c * w - 4.0 * w * w2) / k.h;
        const double j22 = -w * swt + w2 * (k.c - w2) / k.h;
        const double det = j11 * j22 - j12 * j21;
        const double scale = std::max({std::fabs(j11), std::fabs(j12),
                                       std::fabs(j21), std::fabs(j22)});
        if (std::fabs(det) < 1e-13 * scale * scale)
            throw SingularJacobian("hopf_refine: singular Newton step");
        w -= (rs * j22 - rc * j12) / det;
        t -= (rc * j11 - rs * j21) / det;
        if (!(w > 0.0) || !std::isfinite(w) || !std::isfinite(t))
            throw NoConvergence("hopf_refine: iterate left the domain");
        crossing_residuals(w, t, k, rs, rc);
    }

    HopfPoint hp;
    hp.omega0 = w;
    hp.tau0 = t;
    hp.residual_sin = rs;
    hp.residual_cos = rc;
    hp.delta_abs = std::abs(char_delta(cx(0.0, w), t, k));
    // the crossing system is degenerate on the tau = 0 line; only
    // points certified against the characteristic function survive
    if (t < kTauFloor || hp.delta_abs >= kDeltaCert)
        throw NoConvergence("hopf_refine: converged to a non-root of Delta");
    return hp;
}

HopfPoint transversality(HopfPoint hp, const CharCoeffs& k) {
    const double w = hp.omega0, t = hp.tau0;
    const double w2 = w * w;
    hp.M1 = -4.0 * w2 + 2.0 * k.c - t * (k.b * w2 - k.d);
    hp.M2 = (3.0 * k.b * w2 - k.d - k.h) / w + t * w * (k.c - w2);
    const double n1 = (k.h - (k.b * w2 - k.d) - t * w2 * (k.c - w2)) / t;
    const double n2 = (w * (k.c - w2) - t * w * (k.b * w2 - k.d)) / t;
    const double m2 = hp.M1 * hp.M1 + hp.M2 * hp.M2;
    if (m2 <= kSimpleTol)
        throw DegenerateRoot("transversality: M1^2 + M2^2 vanishes (root not simple)");
    hp.M = -(hp.M1 * n1 + hp.M2 * n2) / m2;
    hp.N = (hp.M1 * n2 - hp.M2 * n1) / m2;
    hp.simple = true;
    hp.transversal = std::fabs(hp.M) > kTransTol;
    return hp;
}

std::vector<HopfPoint> hopf_points(const CharCoeffs& k, int grid_size) {
    std::vector<HopfPoint> refined;
    for (const HopfPoint& cand : hopf_scan(k, grid_size)) {
        try {
            HopfPoint hp = hopf_refine(cand, k);
            bool dup = false;
            for (const HopfPoint& q : refined) {
                if (std::fabs(q.omega0 - hp.omega0) <
                        1e-7 * std::max(1.0, std::fabs(q.omega0)) &&
                    std::fabs(q.tau0 - hp.tau0) <
                        1e-7 * std::max(1.0, std::fabs(q.tau0))) {
                    dup = true;
                    break;
                }
            }
            if (!dup) refined.push_back(transversality(hp, k));
        } catch (const NumericalError&) {
            // candidate failed certification; drop it
        }
    }
    std::sort(refined.begin(), refined.end(),
              [](const HopfPoint& a, const HopfPoint& b) { return a.tau0 < b.tau0; });
    return refined;
}

}  // namespace hopfdde
