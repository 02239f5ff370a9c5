#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hchain/chain.hpp"
#include "hchain/squeezing.hpp"

namespace hchain {

/// Entanglement between opposite sites as a function of two shared squeeze
/// angles: every odd mode uses theta[i] and every even mode theta[j].
struct AngleScanResult {
    std::vector<double> theta;   ///< grid on [0, pi], same axis for both parities
    Eigen::MatrixXd en;          ///< en(i, j) for (theta_odd, theta_even) = (theta[i], theta[j])
    double max_en = 0.0;
    std::size_t argmax_odd = 0;
    std::size_t argmax_even = 0;
    double threshold = 0.0;      ///< (1 - top_frac) * max_en
    /// Grid points within top_frac of the maximum; the shape of this set
    /// shows how soft the optimum is.
    std::vector<std::pair<std::size_t, std::size_t>> maximal_set;
};

/// Scan the two-angle landscape for squeeze amplitudes r_modes (one entry
/// per mode 1..N; entries for modes l and N - l must agree). Frequencies
/// are taken at the given coupling. The closed form for opposite sites
/// makes each grid point O(1) after per-angle parity sums are tabulated.
AngleScanResult angle_scan(const std::vector<double>& r_modes, const ChainParams& params,
                           double coupling, std::size_t resolution = 201,
                           double top_frac = 0.02);

/// Exhaustive scan with an independent angle per mode pair (modes l and
/// N - l share their angle; the angle of mode N only participates when its
/// amplitude is nonzero). Exponential in N/2, so restricted to N <= 8.
struct FullAngleScanResult {
    double max_en = 0.0;
    std::vector<double> theta;   ///< optimizing angle per mode 1..N
};

FullAngleScanResult angle_scan_full(const std::vector<double>& r_modes,
                                    const ChainParams& params, double coupling,
                                    std::size_t resolution = 13);

/// The two angle assignments that maximize opposite-site entanglement in
/// the limiting regimes: diagonal angles (odd 3 pi/4, even pi/4) for weak
/// coupling and axis-aligned angles (odd 0, even pi/2) for strong
/// squeezing.
inline constexpr double quarter_family_odd = 2.356194490192344837; // 3 pi / 4
inline constexpr double quarter_family_even = 0.785398163397448279; // pi / 4
inline constexpr double axis_family_odd = 0.0;
inline constexpr double axis_family_even = 1.570796326794896558; // pi / 2

/// Both families evaluated exactly (via the opposite-pair closed form) and
/// with the leading-order expressions that motivate them.
struct AngleFamilyComparison {
    double exact_quarter = 0.0;
    double exact_axis = 0.0;
    double approx_quarter = 0.0;
    double approx_axis = 0.0;
    bool exact_prefers_axis = false;
    bool approx_prefers_axis = false;
};

AngleFamilyComparison compare_angle_families(const std::vector<double>& r_modes,
                                             const ChainParams& params, double coupling);

} // namespace hchain
