#ifndef HOPFDDE_PARAMS_HPP
#define HOPFDDE_PARAMS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace hopfdde {

/// Base class for failures of the numerical pipeline (exit code 2 in the CLI).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BracketFailure : NumericalError { using NumericalError::NumericalError; };
struct NoConvergence : NumericalError { using NumericalError::NumericalError; };
struct SingularJacobian : NumericalError { using NumericalError::NumericalError; };
struct SingularMatrix : NumericalError { using NumericalError::NumericalError; };
struct DegenerateRoot : NumericalError { using NumericalError::NumericalError; };
struct DegenerateEigenvector : NumericalError { using NumericalError::NumericalError; };
struct TransversalityZero : NumericalError { using NumericalError::NumericalError; };
struct NonFiniteState : NumericalError { using NumericalError::NumericalError; };
struct StepTooLarge : NumericalError { using NumericalError::NumericalError; };
struct HistoryUnderflow : NumericalError { using NumericalError::NumericalError; };

/// Configuration / input errors (exit code 1 in the CLI).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Rate constants and structural parameters of the four-component
 * mRNA/protein feedback model with a uniformly distributed delay.
 *
 * The degradation rates a1, a2, a12, b1, b2 live in (0, 1]; `a` is the
 * Hill half-saturation constant, `n` the (integer) Hill exponent,
 * `alpha` the weight of the instantaneous term in the delayed coupling
 * and `tau` the delay horizon.
 */
struct ModelParams {
    double a1 = 0.13;
    double a2 = 0.13;
    double a12 = 0.06;
    double b1 = 0.2;
    double b2 = 0.4;
    double a = 4.0;
    int n = 3;
    double alpha = 0.2;
    double tau = 0.1001651263;

    void validate() const {
        auto rate = [](double v, const char* name) {
            if (!(v > 0.0) || v > 1.0)
                throw ConfigError(std::string("params.") + name +
                                  " must lie in (0, 1], got " + std::to_string(v));
        };
        rate(a1, "a1");
        rate(a2, "a2");
        rate(a12, "a12");
        rate(b1, "b1");
        rate(b2, "b2");
        if (!(a > 0.0))
            throw ConfigError("params.a must be positive, got " + std::to_string(a));
        if (n < 1)
            throw ConfigError("params.n must be an integer >= 1, got " + std::to_string(n));
        if (!(alpha >= 0.0) || alpha > 1.0)
            throw ConfigError("params.alpha must lie in [0, 1], got " + std::to_string(alpha));
        if (!(tau >= 0.0))
            throw ConfigError("params.tau must be >= 0, got " + std::to_string(tau));
    }
};

/// One point of the state space: mRNA concentrations x1, x2 and
/// protein concentrations y1, y2.
struct State {
    double x1 = 0.0;
    double y1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;

    bool finite() const {
        return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) &&
               std::isfinite(y2);
    }
};

inline State operator+(const State& a, const State& b) {
    return {a.x1 + b.x1, a.y1 + b.y1, a.x2 + b.x2, a.y2 + b.y2};
}
inline State operator-(const State& a, const State& b) {
    return {a.x1 - b.x1, a.y1 - b.y1, a.x2 - b.x2, a.y2 - b.y2};
}
inline State operator*(double s, const State& a) {
    return {s * a.x1, s * a.y1, s * a.x2, s * a.y2};
}

inline double max_abs(const State& s) {
    return std::max(std::max(std::fabs(s.x1), std::fabs(s.y1)),
                    std::max(std::fabs(s.x2), std::fabs(s.y2)));
}

}  // namespace hopfdde

#endif  // HOPFDDE_PARAMS_HPP
