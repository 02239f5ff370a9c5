#pragma once

#include <cstddef>
#include <vector>

#include "hchain/chain.hpp"

namespace hchain {

/// One normal mode of the chain described as a squeezed ground state of its
/// instantaneous frequency: squeeze amplitude r >= 0 and squeeze angle
/// theta in [0, pi).
struct SqueezedMode {
    std::size_t mode = 0;
    double omega = 1.0;
    double r = 0.0;
    double theta = 0.0;
    /// True when r is numerically zero, in which case theta carries no
    /// information and is reported as 0.
    bool theta_degenerate = false;
};

using SqueezingProfile = std::vector<SqueezedMode>;

/// Quadratures of a pure squeezed state of frequency omega:
///   <q^2> = (e^{-2r} cos^2 t + e^{2r} sin^2 t) / (2 omega)
///   <p^2> = (e^{2r} cos^2 t + e^{-2r} sin^2 t) * omega / 2
///   <qp>  = sinh(2r) sin(2t) / 2
ModeQuadratures squeezed_quadratures(double omega, double r, double theta);
ModeQuadratures squeezed_quadratures(const SqueezedMode& mode);

/// Invert the map above: given pure-state quadratures and the mode
/// frequency, recover (r, theta). Uses omega <q^2> + <p^2>/omega =
/// cosh(2r). Values below 1 - 1e-8 are not realizable by any squeezed
/// state and throw std::invalid_argument; the slack absorbs rounding in
/// states that are squeezed very little.
SqueezedMode extract_squeezing(const ModeQuadratures& quads, double omega);

/// Per-mode squeezing of a full chain state, with mode frequencies taken at
/// coupling c. Expects quadratures for modes 1..N in order.
SqueezingProfile extract_profile(const std::vector<ModeQuadratures>& quads,
                                 const ChainParams& params, double coupling);

/// Upper bound on the logarithmic negativity attainable between the two
/// interleaved sublattices by optimizing all squeeze angles, keeping only
/// the leading behaviour in the coupling:
///   -1/2 log2 [ (2/N sum_{l odd} e^{-2 r_l}) (2/N sum_{m even} e^{-2 r_m}) ]
double max_entanglement_weak(const SqueezingProfile& profile, const ChainParams& params);

/// Angle-optimized bound for strong squeezing. The correction series in
/// gamma alternates; it only converges for gamma < 1.
struct StrongBound {
    double value = 0.0;
    double gamma = 0.0;
    int order = 0;
    /// False when gamma >= 1; the bound is then evaluated with the leading
    /// term alone no matter which order was requested.
    bool series_valid = true;
};

/// Bound of the form -1/2 log2 [ alpha (2/N sum_odd e^{-2r}/omega)
/// (2/N sum_even omega e^{-2r}) ] with alpha the alternating series
/// 1 - gamma + gamma^2 - ... truncated after `order` corrections
/// (order in 0..2).
StrongBound max_entanglement_strong(const SqueezingProfile& profile,
                                    const ChainParams& params, int order = 1);

enum class Regime { weak, crossover, strong };

inline const char* regime_name(Regime r) {
    switch (r) {
    case Regime::weak: return "weak";
    case Regime::crossover: return "crossover";
    case Regime::strong: return "strong";
    }
    return "unknown";
}

/// Which of the two bound families applies. Compares the coupling-weighted
/// anti-squeezing sum (c / 4 omega0^2) sum_l e^{2 r_l} against the
/// squeezing sum sum_l e^{-2 r_l} over all N modes; a factor of two in
/// either direction decides, anything in between is labelled crossover.
struct RegimeIndicator {
    double lhs = 0.0;
    double rhs = 0.0;
    Regime regime = Regime::weak;
};

RegimeIndicator regime_indicator(const SqueezingProfile& profile,
                                 const ChainParams& params, double coupling);

/// Energy stored in the squeezing relative to the instantaneous ground
/// state, omega_l sinh^2(r_l) per mode. This is the part of the invested
/// work that is not recovered when the coupling returns to its initial
/// value.
struct DissipatedWork {
    std::vector<double> per_mode;
    double total = 0.0;
};

DissipatedWork dissipated_work(const SqueezingProfile& profile);

} // namespace hchain
