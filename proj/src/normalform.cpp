#include "hopfdde/normalform.hpp"

#include <cmath>

#include "hopfdde/kernels.hpp"

namespace hopfdde {

std::string to_string(AdjointVariant v) {
    return v == AdjointVariant::conjugated ? "conjugated" : "hale";
}
std::string to_string(W204Variant v) {
    return v == W204Variant::g20bar ? "g20bar" : "g02bar";
}
std::string to_string(CubicVariant v) {
    return v == CubicVariant::quartic ? "quartic" : "cubic";
}
std::string to_string(Direction v) {
    switch (v) {
        case Direction::supercritical: return "supercritical";
        case Direction::subcritical: return "subcritical";
        default: return "degenerate";
    }
}
std::string to_string(OrbitStability v) {
    switch (v) {
        case OrbitStability::stable: return "stable";
        case OrbitStability::unstable: return "unstable";
        default: return "degenerate";
    }
}
std::string to_string(PeriodTrend v) {
    switch (v) {
        case PeriodTrend::increasing: return "increasing";
        case PeriodTrend::decreasing: return "decreasing";
        default: return "degenerate";
    }
}

ComplexVec4 eigenvector_v(const ModelParams& p, const Equilibrium& eq, cx l1) {
    const cx q1 = l1 + p.a1 + p.a12 * eq.y20;
    const cx q2 = l1 + p.a2 + p.a12 * eq.y10;
    return {cx(0.0),
            cx(p.a12 * eq.y10),
            p.a12 * p.a12 * eq.y10 * eq.y20 - q1 * q2,
            -q1};
}

ComplexVec4 adjoint_d(const ModelParams& p, const Equilibrium& eq, cx l1) {
    const cx d2 = p.b1 + l1;
    const cx q2 = l1 + p.a2 + p.a12 * eq.y10;
    const cx d3 = -p.a12 * eq.y10 * (p.b1 + l1) / (q2 * (p.b2 + l1));
    const cx d4 = -p.a12 * eq.y10 * (p.b1 + l1) / q2;
    return {cx(1.0), d2, d3, d4};
}

cx normalization_eta(const ComplexVec4& v, const ComplexVec4& d,
                     const ModelParams& p, const Equilibrium& eq,
                     cx l1, double tau0, AdjointVariant variant) {
    const double beta = (1.0 - p.alpha) * eq.rho1;
    const cx z = l1 * tau0;
    cx eta;
    if (variant == AdjointVariant::conjugated) {
        // eta = v2 conj(d2) + v3 conj(d3) + v4 conj(d4)
        //       - conj(d3) v2 beta (z - 2 + 2e^{-z} + z e^{-z}) / (tau0 l1^3)
        const cx corr = beta * tau0 * tau0 * kernel_pairing_factor(z);
        eta = v[1] * std::conj(d[1]) + v[2] * std::conj(d[2]) +
              v[3] * std::conj(d[3]) - std::conj(d[2]) * v[1] * corr;
    } else {
        // normalizer of the true adjoint pairing: contraction along d;
        // the correction ((1+z)e^{-z} - 1)/(tau0 l1^2) equals
        // -tau0 * kernel_mean_slope(z)
        const cx sigma = v[1] * d[1] + v[2] * d[2] + v[3] * d[3];
        const cx corr = -beta * tau0 * kernel_mean_slope(z);
        eta = sigma - d[2] * v[1] * corr;
    }
    if (std::abs(eta) < 1e-12)
        throw DegenerateEigenvector("normalization_eta: |eta| below threshold");
    return eta;
}

EigenPair make_eigenpair(const ComplexVec4& v, const ModelParams& p,
                         const Equilibrium& eq, const HopfPoint& hopf,
                         AdjointVariant variant) {
    EigenPair pair;
    pair.omega0 = hopf.omega0;
    pair.tau0 = hopf.tau0;
    pair.lambda1 = cx(0.0, hopf.omega0);
    pair.v = v;
    pair.d = adjoint_d(p, eq, pair.lambda1);
    pair.eta = normalization_eta(v, pair.d, p, eq, pair.lambda1, hopf.tau0, variant);
    pair.variant = variant;
    for (int i = 0; i < 4; ++i) {
        if (variant == AdjointVariant::conjugated) {
            pair.w[i] = pair.d[i] / std::conj(pair.eta);
            pair.wbar[i] = std::conj(pair.w[i]);
        } else {
            // contraction vector d/eta; w is its conjugate so that the
            // wbar-contraction below is uniform across variants
            pair.wbar[i] = pair.d[i] / pair.eta;
            pair.w[i] = std::conj(pair.wbar[i]);
        }
    }
    return pair;
}

EigenPair eigenpair(const ModelParams& p, const Equilibrium& eq,
                    const HopfPoint& hopf, AdjointVariant variant) {
    return make_eigenpair(eigenvector_v(p, eq, cx(0.0, hopf.omega0)), p, eq,
                          hopf, variant);
}

QuadForcing quad_forcing(const EigenPair& pair, const ModelParams& p,
                         const Equilibrium& eq) {
    const cx v2 = pair.v[1], v4 = pair.v[3];
    const cx v2b = std::conj(v2), v4b = std::conj(v4);
    const cx l1 = pair.lambda1, l2 = std::conj(l1);
    const double t0 = pair.tau0, al = p.alpha;
    const double rho2 = eq.rho2;

    QuadForcing f;
    f.F2_20 = -2.0 * p.a12 * v2 * v4;
    f.F2_11 = -p.a12 * (v2 * v4b + v2b * v4);
    f.F2_02 = -2.0 * p.a12 * v2b * v4b;

    const cx e1 = std::exp(-l1 * t0);
    const cx e2 = std::exp(-l2 * t0);
    f.F3_20 = rho2 * v2 * v2 / (2.0 * t0 * l1) *
              (2.0 * al * al * t0 * l1 -
               4.0 * al * (1.0 - al) * (e1 - 1.0) -
               (1.0 - al) * (1.0 - al) * (std::exp(-2.0 * l1 * t0) - 1.0));
    f.F3_11 = rho2 * v2 * v2b / (t0 * l1 * l2) *
              (l1 * l2 * (al * al + (1.0 - al) * (1.0 - al)) * t0 -
               al * (1.0 - al) * (l2 * e1 + l1 * e2));
    f.F3_02 = rho2 * v2b * v2b / (2.0 * t0 * l2) *
              (2.0 * al * al * t0 * l2 -
               4.0 * al * (1.0 - al) * (e2 - 1.0) -
               (1.0 - al) * (1.0 - al) * (std::exp(-2.0 * l2 * t0) - 1.0));
    return f;
}

GQuad g_quadratic(const EigenPair& pair, const ModelParams& p,
                  const Equilibrium& eq) {
    const QuadForcing f = quad_forcing(pair, p, eq);
    const cx wb2 = pair.wbar[1], wb3 = pair.wbar[2], wb4 = pair.wbar[3];
    GQuad g;
    g.g20 = f.F2_20 * wb2 + f.F3_20 * wb3 + f.F2_20 * wb4;
    g.g11 = f.F2_11 * wb2 + f.F3_11 * wb3 + f.F2_11 * wb4;
    g.g02 = f.F2_02 * wb2 + f.F3_02 * wb3 + f.F2_02 * wb4;
    return g;
}

namespace {

ComplexMat4 complexify(const Mat4& m) {
    ComplexMat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = m[i][j];
    return r;
}

}  // namespace

CenterTerms center_terms(const EigenPair& pair, const GQuad& gq,
                         const ModelParams& p, const Equilibrium& eq,
                         const NormalFormOptions& opts) {
    const cx l1 = pair.lambda1, l2 = std::conj(l1);
    const double t0 = pair.tau0;
    const QuadForcing f = quad_forcing(pair, p, eq);
    const LinearPair lp = linear_matrices(p, eq);
    const ComplexMat4 A = complexify(lp.A);
    const ComplexMat4 B = complexify(lp.B);

    const ComplexVec4 F20 = {cx(0.0), f.F2_20, f.F3_20, f.F2_20};
    const ComplexVec4 F11 = {cx(0.0), f.F2_11, f.F3_11, f.F2_11};

    // E2 solves (2 l1 I - A - kernel_mean(2 l1 tau0) B) E2 = F20;
    // E1 solves -(A + B) E1 = F11 (the kernel mean at lambda = 0 is 1)
    ComplexMat4 m2{};
    const cx km2 = kernel_mean(2.0 * l1 * t0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m2[i][j] = (i == j ? 2.0 * l1 : cx(0.0)) - A[i][j] - km2 * B[i][j];
    ComplexMat4 m1{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m1[i][j] = -(A[i][j] + B[i][j]);

    CenterTerms ct;
    ct.E2 = solve_complex_4x4(m2, F20);
    ct.E1 = solve_complex_4x4(m1, F11);

    const cx v2 = pair.v[1], v2b = std::conj(v2);
    const cx v4 = pair.v[3], v4b = std::conj(v4);

    // profile values at history argument 0
    ct.w20_2_0 = -(gq.g20 / l1) * v2 - (std::conj(gq.g02) / (3.0 * l1)) * v2b + ct.E2[1];
    ct.w11_2_0 = (gq.g11 / l1) * v2 - (std::conj(gq.g11) / l1) * v2b + ct.E1[1];
    const cx gbar_204 = opts.w204 == W204Variant::g20bar ? std::conj(gq.g20)
                                                        : std::conj(gq.g02);
    ct.w20_4_0 = -(gq.g20 / l1) * v4 - gbar_204 / (3.0 * l1) * v4b + ct.E2[3];
    ct.w11_4_0 = (gq.g11 / l1) * v4 - (std::conj(gq.g11) / l1) * v4b + ct.E1[3];

    for (int i = 0; i < 4; ++i) {
        ct.w20_0[i] = -(gq.g20 / l1) * pair.v[i] -
                      (std::conj(gq.g02) / (3.0 * l1)) * std::conj(pair.v[i]) +
                      ct.E2[i];
        ct.w11_0[i] = (gq.g11 / l1) * pair.v[i] -
                      (std::conj(gq.g11) / l1) * std::conj(pair.v[i]) + ct.E1[i];
    }
    ct.w20_0[3] = ct.w20_4_0;  // honors the w204 variant
    ct.w11_0[3] = ct.w11_4_0;

    // k integrals, closed form: the profiles are sums of exponentials,
    // integrate term by term (the lambda1 + lambda2 exponent is exactly 0)
    const cx I_l1 = cexp_integral(l1, t0);
    const cx I_l2 = cexp_integral(l2, t0);
    const cx I_2l1 = cexp_integral(2.0 * l1, t0);
    const cx I_2l2 = cexp_integral(2.0 * l2, t0);
    const cx a20 = -(gq.g20 / l1) * v2;
    const cx b20 = -(std::conj(gq.g02) / (3.0 * l1)) * v2b;
    const cx a11 = (gq.g11 / l1) * v2;
    const cx b11 = -(std::conj(gq.g11) / l1) * v2b;

    ct.k1 = a11 * I_l1 + b11 * I_l2 + ct.E1[1] * t0;
    ct.k2 = a11 * I_2l1 + b11 * t0 + ct.E1[1] * I_l1;
    ct.k3 = a20 * I_l1 + b20 * I_l2 + ct.E2[1] * I_2l1;
    ct.k4 = a20 * t0 + b20 * I_2l2 + ct.E2[1] * I_l1;
    return ct;
}

cx w20_comp2(double s, const EigenPair& pair, const GQuad& gq,
             const CenterTerms& ct) {
    const cx l1 = pair.lambda1, l2 = std::conj(l1);
    return -(gq.g20 / l1) * pair.v[1] * std::exp(-l1 * s) -
           (std::conj(gq.g02) / (3.0 * l1)) * std::conj(pair.v[1]) *
               std::exp(-l2 * s) +
           ct.E2[1] * std::exp(-2.0 * l1 * s);
}

cx w11_comp2(double s, const EigenPair& pair, const GQuad& gq,
             const CenterTerms& ct) {
    const cx l1 = pair.lambda1, l2 = std::conj(l1);
    return (gq.g11 / l1) * pair.v[1] * std::exp(-l1 * s) -
           (std::conj(gq.g11) / l1) * std::conj(pair.v[1]) * std::exp(-l2 * s) +
           ct.E1[1];
}

cx g21_coeff(const EigenPair& pair, const GQuad& /*gq folded into ct*/,
             const CenterTerms& ct, const ModelParams& p, const Equilibrium& eq,
             const NormalFormOptions& opts) {
    const cx l1 = pair.lambda1, l2 = std::conj(l1);
    const double t0 = pair.tau0, al = p.alpha;
    const cx v2 = pair.v[1], v2b = std::conj(v2);
    const cx v4 = pair.v[3], v4b = std::conj(v4);
    const cx e1 = std::exp(-l1 * t0);
    const cx e2 = std::exp(-l2 * t0);

    const cx F2_21 = -p.a12 * v2b * ct.w20_4_0 - 2.0 * p.a12 * v2 * ct.w11_4_0 -
                     p.a12 * v4b * ct.w20_2_0 - 2.0 * p.a12 * v4 * ct.w11_2_0;

    const cx block_v2 = al * al * t0 * ct.w11_2_0 + al * (1.0 - al) * ct.k1 -
                        al * (1.0 - al) * ct.w11_2_0 / l1 * (e1 - 1.0) +
                        (1.0 - al) * (1.0 - al) * ct.k2;
    const cx block_v2b = al * al * t0 * ct.w20_2_0 -
                         al * (1.0 - al) / l2 * ct.w20_2_0 * (e1 - 1.0) +
                         al * (1.0 - al) * ct.k3 +
                         (1.0 - al) * (1.0 - al) * ct.k4;
    const cx F3_21_rho2 =
        eq.rho2 / t0 * (2.0 * v2 * block_v2 + 2.0 * v2b * block_v2b);

    const cx cub_factor =
        al * al * al * t0 -
        (1.0 - al) * (1.0 - al) * al / (2.0 * l1) * (std::exp(-2.0 * l1 * t0) - 1.0) -
        (1.0 - al) * al * al / l2 * (e2 - 1.0) +
        (1.0 - al) * (1.0 - al) * (1.0 - al) * t0;
    const cx cub_v = opts.cubic == CubicVariant::quartic ? v2 * v2 * v2b * v2b
                                                       : v2 * v2 * v2b;
    const cx F3_21 = F3_21_rho2 + eq.rho3 / t0 * cub_v * cub_factor;

    return F2_21 * pair.wbar[1] + F3_21 * pair.wbar[2] + F2_21 * pair.wbar[3];
}

NormalForm bifurcation_quantities(const GQuad& gq, cx g21, const HopfPoint& hopf) {
    if (hopf.M == 0.0)
        throw TransversalityZero("bifurcation_quantities: M = 0");
    NormalForm nf;
    nf.gq = gq;
    nf.g21 = g21;
    nf.hopf = hopf;
    const double w0 = hopf.omega0;
    nf.C1 = cx(0.0, 1.0) / (2.0 * w0) *
                (gq.g20 * gq.g11 - 2.0 * std::norm(gq.g11) -
                 std::norm(gq.g02) / 3.0) +
            g21 / 2.0;
    nf.mu2 = -nf.C1.real() / hopf.M;
    nf.beta2 = 2.0 * nf.C1.real();
    nf.T2 = -(nf.C1.imag() + nf.mu2 * hopf.N) / w0;
    nf.direction = nf.mu2 > 0.0 ? Direction::supercritical
                  : nf.mu2 < 0.0 ? Direction::subcritical
                                 : Direction::degenerate;
    nf.orbit_stability = nf.beta2 < 0.0 ? OrbitStability::stable
                        : nf.beta2 > 0.0 ? OrbitStability::unstable
                                         : OrbitStability::degenerate;
    nf.period_trend = nf.T2 > 0.0 ? PeriodTrend::increasing
                     : nf.T2 < 0.0 ? PeriodTrend::decreasing
                                   : PeriodTrend::degenerate;
    return nf;
}

NormalForm normal_form(const ModelParams& p, const Equilibrium& eq,
                       const HopfPoint& hopf, const NormalFormOptions& opts) {
    EigenPair pair = eigenpair(p, eq, hopf, opts.adjoint);
    const GQuad gq = g_quadratic(pair, p, eq);
    const CenterTerms ct = center_terms(pair, gq, p, eq, opts);
    const cx g21 = g21_coeff(pair, gq, ct, p, eq, opts);
    NormalForm nf = bifurcation_quantities(gq, g21, hopf);
    nf.pair = pair;
    nf.ct = ct;
    nf.opts = opts;
    return nf;
}

}  // namespace hopfdde
