#ifndef HOPFDDE_NORMALFORM_HPP
#define HOPFDDE_NORMALFORM_HPP

#include <string>

#include "hopfdde/linalg.hpp"
#include "hopfdde/model.hpp"
#include "hopfdde/stability.hpp"

namespace hopfdde {

/**
 * Formula variants.  The reduction formulas admit two readings at
 * three spots; each is exposed as a switch, and reports always carry
 * the alternative values alongside the active ones.
 *
 *  - adjoint: the left (adjoint) eigenvector package.  `conjugated`
 *    contracts the nonlinearity against conj(d)/eta with the matching
 *    normalization constant.  `hale` contracts against d/eta_t,
 *    normalized through the standard adjoint pairing of delay
 *    systems; it is the package for which <Psi, conj(Phi)> = 0 holds.
 *  - w204: the fourth component of w20(0) carries conj(g20)
 *    (`g20bar`) or, following the second component's pattern,
 *    conj(g02) (`g02bar`).
 *  - cubic: the rho3 term of the third-order forcing carries
 *    v2^2 conj(v2)^2 (`quartic`) or the standard degree-three
 *    v2^2 conj(v2) (`cubic`).
 */
enum class AdjointVariant { conjugated, hale };
enum class W204Variant { g20bar, g02bar };
enum class CubicVariant { quartic, cubic };

struct NormalFormOptions {
    AdjointVariant adjoint = AdjointVariant::conjugated;
    W204Variant w204 = W204Variant::g20bar;
    CubicVariant cubic = CubicVariant::quartic;
};

std::string to_string(AdjointVariant v);
std::string to_string(W204Variant v);
std::string to_string(CubicVariant v);

/**
 * Right eigenvector v of the kernel-averaged generator at lambda1 =
 * i omega0, the unnormalized left components d = (1, d2, d3, d4), the
 * normalization constant eta and the normalized adjoint row w.  The
 * nonlinearity is contracted against wbar = conj(w).
 */
struct EigenPair {
    ComplexVec4 v{};
    ComplexVec4 d{};
    ComplexVec4 w{};
    ComplexVec4 wbar{};
    cx eta{};
    cx lambda1{};
    double omega0 = 0.0;
    double tau0 = 0.0;
    AdjointVariant variant = AdjointVariant::conjugated;
};

/// Closed-form right eigenvector (v1 = 0, v2 = a12 y10, ...).
ComplexVec4 eigenvector_v(const ModelParams& p, const Equilibrium& eq, cx lambda1);

/// Closed-form unnormalized adjoint components (1, d2, d3, d4).
ComplexVec4 adjoint_d(const ModelParams& p, const Equilibrium& eq, cx lambda1);

/// Normalization constant for a given v (by variant); throws
/// DegenerateEigenvector when |eta| < 1e-12.
cx normalization_eta(const ComplexVec4& v, const ComplexVec4& d,
                     const ModelParams& p, const Equilibrium& eq,
                     cx lambda1, double tau0, AdjointVariant variant);

/// Assembles an EigenPair from an arbitrary eigenvector scale
/// (the closed-form v is the default; tests feed rescaled copies).
EigenPair make_eigenpair(const ComplexVec4& v, const ModelParams& p,
                         const Equilibrium& eq, const HopfPoint& hopf,
                         AdjointVariant variant);

EigenPair eigenpair(const ModelParams& p, const Equilibrium& eq,
                    const HopfPoint& hopf,
                    AdjointVariant variant = AdjointVariant::conjugated);

/// Second-order forcing coefficients (components 2..4 of the Taylor
/// expansion contracted with z^2/2, z zbar, zbar^2/2).
struct QuadForcing {
    cx F2_20, F2_11, F2_02;  // equal to the fourth-component values
    cx F3_20, F3_11, F3_02;
};

QuadForcing quad_forcing(const EigenPair& pair, const ModelParams& p,
                         const Equilibrium& eq);

struct GQuad {
    cx g20{}, g11{}, g02{};
};

GQuad g_quadratic(const EigenPair& pair, const ModelParams& p,
                  const Equilibrium& eq);

/**
 * Center-manifold second-order data: the resolvent vectors E1, E2,
 * the exponential-profile integrals k1..k4 and the w-profile values
 * at history argument 0 that enter the cubic coefficient.
 */
struct CenterTerms {
    ComplexVec4 E1{}, E2{};
    cx k1{}, k2{}, k3{}, k4{};
    cx w20_2_0{}, w11_2_0{}, w20_4_0{}, w11_4_0{};
    ComplexVec4 w20_0{}, w11_0{};  // full profiles at 0 (for waveforms)
};

CenterTerms center_terms(const EigenPair& pair, const GQuad& gq,
                         const ModelParams& p, const Equilibrium& eq,
                         const NormalFormOptions& opts);

/// w20 profile, second component, at history argument -s.
cx w20_comp2(double s, const EigenPair& pair, const GQuad& gq, const CenterTerms& ct);
/// w11 profile, second component, at history argument -s.
cx w11_comp2(double s, const EigenPair& pair, const GQuad& gq, const CenterTerms& ct);

cx g21_coeff(const EigenPair& pair, const GQuad& gq, const CenterTerms& ct,
             const ModelParams& p, const Equilibrium& eq,
             const NormalFormOptions& opts);

enum class Direction { supercritical, subcritical, degenerate };
enum class OrbitStability { stable, unstable, degenerate };
enum class PeriodTrend { increasing, decreasing, degenerate };

std::string to_string(Direction v);
std::string to_string(OrbitStability v);
std::string to_string(PeriodTrend v);

struct NormalForm {
    EigenPair pair;
    GQuad gq;
    cx g21{};
    CenterTerms ct;
    cx C1{};
    double mu2 = 0.0;
    double beta2 = 0.0;
    double T2 = 0.0;
    Direction direction = Direction::degenerate;
    OrbitStability orbit_stability = OrbitStability::degenerate;
    PeriodTrend period_trend = PeriodTrend::degenerate;
    NormalFormOptions opts;
    HopfPoint hopf;
};

/**
 * C1(0) = (i / 2 omega0)(g20 g11 - 2|g11|^2 - |g02|^2/3) + g21/2,
 * mu2 = -Re C1 / M, beta2 = 2 Re C1, T2 = -(Im C1 + mu2 N)/omega0,
 * with the classification: mu2 > 0 supercritical, beta2 < 0 orbitally
 * stable, T2 > 0 period increasing.  Throws TransversalityZero when
 * M = 0.
 */
NormalForm bifurcation_quantities(const GQuad& gq, cx g21, const HopfPoint& hopf);

/// Full pipeline at a refined crossing point.
NormalForm normal_form(const ModelParams& p, const Equilibrium& eq,
                       const HopfPoint& hopf, const NormalFormOptions& opts = {});

}  // namespace hopfdde

#endif  // HOPFDDE_NORMALFORM_HPP
