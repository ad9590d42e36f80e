#ifndef HOPFDDE_MODEL_HPP
#define HOPFDDE_MODEL_HPP

#include <array>

#include "hopfdde/equilibrium.hpp"
#include "hopfdde/hill.hpp"
#include "hopfdde/params.hpp"

namespace hopfdde {

using Mat4 = std::array<std::array<double, 4>, 4>;

/**
 * Right-hand side of the model.  `delayed_term` is the caller-computed
 * value of the mixed production term
 *     alpha f(y1(t)) + (1-alpha) (1/tau) int_0^tau f(y1(t-s)) ds
 * (which collapses to f(y1(t)) for tau = 0 or alpha = 1).  The
 * function itself never divides by tau.
 */
inline State rhs(const State& s, double delayed_term, const ModelParams& p) {
    if (!s.finite() || !std::isfinite(delayed_term))
        throw NonFiniteState("rhs: non-finite input");
    return {1.0 - p.b1 * s.x1,
            s.x1 - (p.a1 + p.a12 * s.y2) * s.y1,
            delayed_term - p.b2 * s.x2,
            s.x2 - (p.a2 + p.a12 * s.y1) * s.y2};
}

/// Drift matrix A and delay-kernel matrix B of the linearization
/// around the equilibrium.  B has the single nonzero entry
/// B(3,2) = (1-alpha) rho1; A + B is independent of alpha.
struct LinearPair {
    Mat4 A{};
    Mat4 B{};
};

inline LinearPair linear_matrices(const ModelParams& p, const Equilibrium& eq) {
    LinearPair lp;
    lp.A = {{{-p.b1, 0.0, 0.0, 0.0},
             {1.0, -(p.a1 + p.a12 * eq.y20), 0.0, -p.a12 * eq.y10},
             {0.0, p.alpha * eq.rho1, -p.b2, 0.0},
             {0.0, -p.a12 * eq.y20, 1.0, -(p.a2 + p.a12 * eq.y10)}}};
    lp.B = {};
    lp.B[2][1] = (1.0 - p.alpha) * eq.rho1;
    return lp;
}

}  // namespace hopfdde

#endif  // HOPFDDE_MODEL_HPP
