#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hchain/chain.hpp"

namespace hchain {

/// Terminal cost to minimize over coupling schedules. All three are
/// functions of the phase-averaged mode excitations s_l = cosh(2 r_l) at
/// the end of the horizon, measured against reference frequencies taken at
/// coupling c_ref.
enum class CostKind {
    /// Logarithm argument of the strong squeezing bound (leading term):
    /// smaller means more attainable entanglement.
    strong_bound_arg,
    /// Logarithm argument of the weak-coupling bound.
    weak_bound_arg,
    /// Negative of the total squeezing energy; minimizing it maximizes the
    /// energy pumped into the modes without caring about its distribution.
    negative_squeeze_energy,
};

/// Fixed-horizon control problem: the coupling is parametrized by `samples`
/// values on a uniform grid over [0, horizon] and interpolated linearly in
/// between. The state integrator uses `fine_substeps` RK4 steps per control
/// interval.
struct ControlProblem {
    ChainParams params;
    double horizon = 20.0;
    std::size_t samples = 201;
    CostKind cost = CostKind::strong_bound_arg;
    /// Coupling that defines the reference frequencies of the cost. When
    /// pin_final is set the last control sample is held at this value, so
    /// the cost measures squeezing with respect to the actual final
    /// Hamiltonian.
    double c_ref = 0.5;
    std::optional<std::pair<double, double>> bounds;
    bool pin_final = true;
    int fine_substeps = 6;

    void validate() const;
};

/// Control sample times t_k = k * horizon / (samples - 1).
std::vector<double> control_times(const ControlProblem& problem);

/// Forward fundamental solutions for the schedule given by the control
/// samples, on the fine grid aligned with the control grid.
std::vector<ModeTrajectory> forward_states(const ControlProblem& problem,
                                           const std::vector<double>& c_samples);

/// Terminal cost for already-computed forward states.
double cost_value(const ControlProblem& problem, const std::vector<ModeTrajectory>& states);

/// Adjoint of one mode on the same grid as the forward pass.
struct CostateTrajectory {
    std::size_t mode = 0;
    std::vector<double> times;
    std::vector<double> xY, xYd;
    std::vector<double> xX, xXd;
};

/// Backward sweep of the adjoint equations, terminal condition from the
/// gradient of the cost at the final state.
std::vector<CostateTrajectory> backward_costates(const ControlProblem& problem,
                                                 const std::vector<double>& c_samples,
                                                 const std::vector<ModeTrajectory>& states);

/// Gradient of the cost with respect to the control samples. `density` is
/// the continuous-time sensitivity dJ/dc(t) on the fine grid; `samples` are
/// its projections onto the piecewise-linear basis functions of the control
/// grid (so they are directly comparable with finite differences of the
/// sampled problem).
struct ControlGradient {
    std::vector<double> sample_times;
    std::vector<double> samples;
    std::vector<double> density_times;
    std::vector<double> density;
};

ControlGradient control_gradient(const ControlProblem& problem,
                                 const std::vector<ModeTrajectory>& states,
                                 const std::vector<CostateTrajectory>& costates);

/// Convenience wrapper running forward, backward, and projection.
ControlGradient control_gradient(const ControlProblem& problem,
                                 const std::vector<double>& c_samples);

/// One accepted optimizer iteration.
struct TraceRow {
    std::size_t iter = 0;
    double cost = 0.0;
    double step = 0.0;        ///< step length actually used (0 for the initial row)
    double grad_norm = 0.0;   ///< l2 norm of the sample gradient at this iterate
    std::uint64_t schedule_hash = 0;
    int halvings = 0;         ///< backtracking halvings needed this iteration
};

enum class OptimizeStatus { converged, max_iter, diverged };

struct OptimizeResult {
    CouplingSchedule schedule;
    std::vector<TraceRow> trace;
    OptimizeStatus status = OptimizeStatus::max_iter;
    double final_cost = 0.0;
};

/// Projected gradient descent with backtracking. Each iteration starts from
/// the full step `alpha_step` and halves it until the cost stops
/// increasing; ten rejected halvings in a row abort with status
/// `diverged`. Iterates are clipped to the bounds (couplings are clipped
/// below at zero even without explicit bounds) and the last sample is
/// re-pinned after every step. Converged means the cost decrease fell
/// below `tol`. A zero iteration budget returns the projected initial
/// schedule evaluated but untouched, with status max_iter.
OptimizeResult optimize(const ControlProblem& problem, std::vector<double> initial,
                        double alpha_step, std::size_t max_iter, double tol);

/// FNV-1a hash over the raw bytes of the sample times and values; used to
/// identify schedules across trace files.
std::uint64_t schedule_hash(const std::vector<double>& times,
                            const std::vector<double>& values);

} // namespace hchain
