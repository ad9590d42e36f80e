#ifndef HOPFDDE_SIMULATE_HPP
#define HOPFDDE_SIMULATE_HPP

#include <functional>
#include <string>
#include <vector>

#include "hopfdde/equilibrium.hpp"
#include "hopfdde/model.hpp"
#include "hopfdde/normalform.hpp"
#include "hopfdde/params.hpp"

namespace hopfdde {

/**
 * Initial data: point values for x1, x2, y2 and a history profile
 * phi1 for y1 on [-tau, 0].  The constant-history shorthand uses
 * phi1 = y1_0; sampled profiles are resampled linearly onto the
 * solver grid.
 */
struct HistorySpec {
    double x1_0 = 0.0;
    double x2_0 = 0.0;
    double y2_0 = 0.0;
    double y1_0 = 0.0;
    std::function<double(double)> phi1;  // optional; default = constant y1_0

    static HistorySpec constant(const State& s) {
        HistorySpec h;
        h.x1_0 = s.x1;
        h.y1_0 = s.y1;
        h.x2_0 = s.x2;
        h.y2_0 = s.y2;
        return h;
    }
    static HistorySpec sampled(double x1_0, double x2_0, double y2_0,
                               const std::vector<double>& times,
                               const std::vector<double>& values);
};

/// Dense uniform-step record of y1 with its derivative, supporting
/// cubic-Hermite evaluation between grid points.
class History {
  public:
    History(double dt, double t_begin) : dt_(dt), t_begin_(t_begin) {}

    void append(double y1, double dy1) {
        y_.push_back(y1);
        d_.push_back(dy1);
    }
    double t_begin() const { return t_begin_; }
    double t_end() const { return t_begin_ + dt_ * (static_cast<double>(y_.size()) - 1.0); }
    double dt() const { return dt_; }
    std::size_t size() const { return y_.size(); }
    double value(std::size_t i) const { return y_[i]; }
    double deriv(std::size_t i) const { return d_[i]; }

    /// Cubic-Hermite evaluation; accepts a small extrapolation margin
    /// (one step) past the last record, used by integrator stages.
    double y1_at(double t) const;

  private:
    double dt_;
    double t_begin_;
    std::vector<double> y_;
    std::vector<double> d_;
};

/**
 * Mixed delayed production term at time t against a dense history:
 *   alpha f(y1(t)) + (1-alpha) (1/tau) int_0^tau f(y1(t-s)) ds
 * with the integral by composite trapezoid on nodes aligned to the
 * record step (m = ceil(tau/dt) intervals unless overridden).
 * Throws HistoryUnderflow when the record does not cover [t-tau, t].
 */
double distributed_term(const History& h, double t, const ModelParams& p,
                        int quad_nodes = 0);

/// Trapezoid average (1/tau) int_0^tau g(y1(t-s)) ds for an arbitrary
/// integrand g; the hook that lets tests replace the Hill function.
double averaged_history_integral(const History& h, double t, double tau, int m,
                                 const std::function<double(double)>& g);

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    double dt = 0.0;
    double tau = 0.0;
};

/**
 * Classical fixed-step RK4 over [0, t_end].  Every stage evaluates the
 * delayed term against the dense y1 record (grid-aligned trapezoid
 * plus Hermite-interpolated fractional end segments, accumulated
 * incrementally).  Requires dt <= tau/4 when tau > 0; quad_substeps
 * switches to the literal per-call quadrature with m = ceil(tau/dt) *
 * quad_substeps nodes (slower, used to probe quadrature refinement).
 *
 * Throws StepTooLarge on the dt precondition and NonFiniteState (with
 * the offending time in the message) if the state leaves the finite
 * range.
 */
Trajectory integrate(const ModelParams& p, const HistorySpec& history,
                     double t_end, double dt, int quad_substeps = 1);

enum class LongTermClass { decay, sustained_oscillation, growth, inconclusive };

std::string to_string(LongTermClass c);

/**
 * Compares the max-norm deviation envelope over the last third of the
 * run against the middle third: ratio < 0.5 decays, [0.8, 1.25] is
 * sustained oscillation, > 2 grows, anything else is inconclusive.
 * A zero middle envelope counts as decay.
 */
LongTermClass classify_longterm(const Trajectory& traj, const Equilibrium& eq);

/// Max-norm deviation from the equilibrium over the last third.
double final_amplitude(const Trajectory& traj, const Equilibrium& eq);

/**
 * Reconstructs the state trajectory predicted by the center-manifold
 * reduction: z(t) from zdot = lambda1 z + g(z, zbar) (RK4), assembled
 * as X = 2 Re(z v) + Re-combination of the second-order profiles plus
 * the equilibrium offset.
 */
Trajectory analytic_waveform(const NormalForm& nf, const Equilibrium& eq,
                             cx z0, double t_end, double dt);

/// Writes a trajectory as CSV with header t,x1,y1,x2,y2, keeping every
/// `decimation`-th row.
void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          int decimation);

}  // namespace hopfdde

#endif  // HOPFDDE_SIMULATE_HPP
