#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hchain {

/// Thrown when a numerical guarantee is violated at run time (integrator
/// accuracy loss, non-convergent quadrature, inconsistent covariance data).
/// Precondition violations throw std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Closed chain of identical harmonic oscillators with nearest-neighbour
/// coupling. Units: m = hbar = 1.
struct ChainParams {
    std::size_t n_osc = 8;   ///< number of sites N; even, at least 4
    double omega0 = 1.0;     ///< on-site frequency

    /// Throws std::invalid_argument unless n_osc is even and >= 4 and
    /// omega0 > 0.
    void validate() const;
};

/// Mode frequency omega_l = sqrt(omega0^2 + 4 c sin^2(pi l / N)) for the
/// normal mode with index l in 1..N. Mode N is the uniform translation
/// mode and keeps frequency omega0 for any coupling.
/// Throws std::invalid_argument for c < 0 or l outside 1..N.
double eigenfrequency(const ChainParams& params, std::size_t l, double coupling);

/// Piecewise-linear coupling profile c(t). Outside the sampled interval the
/// profile continues with its boundary value, so a single sample acts as a
/// constant coupling for all times.
class CouplingSchedule {
public:
    /// Samples must be non-empty, strictly increasing in time, and
    /// non-negative in value; otherwise std::invalid_argument.
    CouplingSchedule(std::vector<double> times, std::vector<double> values);

    /// Constant coupling c(t) = value.
    static CouplingSchedule constant(double value);

    double value(double t) const;
    double max_value() const;

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }

    /// Two-column text format: time and coupling per line, '#' starts a
    /// comment. Values are written with enough digits to round-trip.
    static CouplingSchedule load(const std::string& path);
    void save(const std::string& path) const;

private:
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Fundamental pair of solutions of x'' = -omega_l^2(t) x for one mode,
/// sampled on a uniform grid. Y starts as (1, 0), X as (0, 1), so their
/// Wronskian Y X' - Y' X equals 1 for all times.
struct ModeTrajectory {
    std::size_t mode = 0;
    std::vector<double> times;
    std::vector<double> Y, Yd;
    std::vector<double> X, Xd;
};

/// Step size for which the classic fourth-order Runge-Kutta scheme keeps the
/// accumulated Wronskian drift of every mode below wronskian_tol up to
/// t_final, and resolves the fastest mode with at least fifty steps per
/// period. The per-step determinant error of RK4 on a harmonic oscillator is
/// (omega h)^6 / 72, which accumulates linearly in time.
double suggested_dt(const ChainParams& params, const CouplingSchedule& schedule,
                    double t_final, double wronskian_tol = 5e-9);

/// Integrate the fundamental solutions of all N modes from t = 0 to t_final
/// with fixed-step RK4; the grid is uniform with ceil(t_final / dt) steps,
/// so the actual step never exceeds dt and the last sample lands on t_final
/// exactly. Initial conditions are the ground-state ones above, i.e. the
/// chain starts in the ground state of the t = 0 Hamiltonian.
///
/// Throws NumericalError if any Wronskian drifts from 1 by more than
/// 1e-8 * max(1, t) at any sample.
std::vector<ModeTrajectory> evolve_modes(const ChainParams& params,
                                         const CouplingSchedule& schedule,
                                         double t_final, double dt);

/// Same integration with the step count given directly instead of derived
/// from a step size. Useful when samples must align with an outer grid.
std::vector<ModeTrajectory> evolve_modes_fixed(const ChainParams& params,
                                               const CouplingSchedule& schedule,
                                               double t_final, std::size_t n_steps);

/// Symmetrized second moments of one mode: qq = <q^2>, pp = <p^2>,
/// qp = <qp + pq>/2.
struct ModeQuadratures {
    std::size_t mode = 0;
    double qq = 0.0;
    double pp = 0.0;
    double qp = 0.0;
};

/// Quadratures at sample index `step` of a trajectory, propagated from the
/// omega0 ground state. Purity is conserved: qq*pp - qp^2 = 1/4.
ModeQuadratures quadratures_at(const ModeTrajectory& traj,
                               const ChainParams& params, std::size_t step);

/// Final-time quadratures for every mode, in mode order 1..N.
std::vector<ModeQuadratures> mode_quadratures(const std::vector<ModeTrajectory>& trajs,
                                              const ChainParams& params);

/// Assemble the 2N x 2N site-basis covariance matrix (ordering q_1..q_N,
/// p_1..p_N) from per-mode quadratures, in the convention
/// Gamma_ij = 2 Re<x_i x_j> so the vacuum gives the identity. The chain is
/// translation invariant, so each block is a circulant built from cosine
/// sums over the modes.
///
/// Expects quads for modes 1..N in order. The sine sums (the imaginary part
/// of the circulant generator) must vanish; a residue above 1e-12 means the
/// quadratures do not respect the l <-> N-l mode pairing and raises
/// NumericalError.
Eigen::MatrixXd reconstruct_covariance(const std::vector<ModeQuadratures>& quads,
                                       const ChainParams& params);

/// Symplectic spectrum of a covariance matrix in (q..., p...) ordering:
/// the positive imaginary parts of the eigenvalues of i Omega Gamma, sorted
/// ascending. In the convention of reconstruct_covariance a pure state
/// gives all values 1.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& gamma);

/// Energy of one mode, (pp + omega^2 qq) / 2.
double mode_energy(const ModeQuadratures& quads, double omega);

} // namespace hchain
