#pragma once

#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "hchain/chain.hpp"
#include "hchain/squeezing.hpp"

namespace hchain {

/// Two-site restriction of a chain covariance matrix, rows and columns
/// ordered (q_n, q_m, p_n, p_m). Sites are 1-based.
struct PairReduction {
    std::size_t n = 0;
    std::size_t m = 0;
    Eigen::Matrix4d gamma4 = Eigen::Matrix4d::Identity();
};

/// Pick sites n < m out of a 2N x 2N covariance matrix in
/// (q_1..q_N, p_1..p_N) ordering.
PairReduction reduce_pair(const Eigen::MatrixXd& gamma, std::size_t n, std::size_t m);

struct NegativityResult {
    double nu_minus = 1.0;  ///< smallest symplectic eigenvalue after partial transpose
    double log_neg = 0.0;   ///< max(0, -log2 nu_minus)
};

/// Entanglement between two sites from the symplectic invariants of the
/// partially transposed covariance matrix. The input state must be
/// physical (all symplectic eigenvalues >= 1 up to rounding), otherwise
/// std::invalid_argument.
NegativityResult log_negativity(const PairReduction& pair);

/// Same quantity computed by explicit diagonalization of Omega Gamma-tilde.
/// Slower; kept as an independent cross-check of the invariant formula.
NegativityResult log_negativity_eigenpath(const PairReduction& pair);

/// Bilinear mode-pair weight 4 (<q^2>_a <p^2>_b - <qp>_a <qp>_b) that the
/// closed-form negativity of opposite sites is built from.
double pair_coupling(const ModeQuadratures& a, const ModeQuadratures& b);

/// Smallest partially transposed symplectic eigenvalue for two sites half a
/// chain apart (n and n + N/2; translation invariance makes n irrelevant),
/// evaluated directly from the mode squeezing instead of the full
/// covariance matrix:
///   nu = (sqrt(2)/N) sqrt(x - sqrt(x^2 - 4y))
/// with x and y parity-resolved sums of pair_coupling over the modes.
double opposite_pair_nu_minus(const SqueezingProfile& profile, const ChainParams& params);

inline double log_negativity_from_nu(double nu_minus) {
    return std::max(0.0, -std::log2(std::max(nu_minus, 1e-300)));
}

} // namespace hchain
