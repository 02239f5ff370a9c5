#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hchain/chain.hpp"
#include "hchain/squeezing.hpp"

namespace hchain {

/// State of the chain a time t after the coupling jumps instantaneously
/// from 0 to c, starting from the uncoupled ground state. Every mode is a
/// squeezed state of its new frequency with r_l = ln(omega_l/omega0)/2 and
/// an angle that precesses as theta_l(t) = (pi/2 + omega_l t) mod pi.
SqueezingProfile sudden_switch_profile(const ChainParams& params, double coupling,
                                       double t = 0.0);

/// Mode quadratures at time t after the jump, from the constant-frequency
/// closed forms (no integration involved).
ModeQuadratures sudden_switch_quadratures(const ChainParams& params, std::size_t l,
                                          double coupling, double t);

/// Angle-optimized opposite-site entanglement bound for the sudden switch,
/// -1/2 log2 [ (2 omega0^2 / N) sum_{l odd} omega_l^{-2} ].
double sudden_switch_max_en(const ChainParams& params, double coupling);

/// Group velocity of mode waves at wavenumber phi in (0, 2 pi):
/// d omega / d phi = c sin(phi) / omega(phi).
double group_velocity(double coupling, double phi, double omega0 = 1.0);

/// Band-center group velocity c / sqrt(omega0^2 + 2 c), i.e. the value at
/// phi = pi/2. This is the speed the arrival-time reference slopes use. The
/// exact dispersion maximum sits slightly inside the band center and beats
/// it by up to a few percent at strong coupling.
double v_max(double coupling, double omega0 = 1.0);

/// Site-pair entanglement E_N(t, d) after a sudden switch, for separations
/// d = 1..N/2, sampled every dt_sample up to t_final. Row i of `en` belongs
/// to times[i], column j to distances[j].
struct PropagationMap {
    std::vector<double> times;
    std::vector<std::size_t> distances;
    Eigen::MatrixXd en;
};

PropagationMap propagation_map(const ChainParams& params, double coupling,
                               double t_final, double dt_sample);

/// First time the series exceeds the threshold, or nullopt.
std::optional<double> first_crossing(const std::vector<double>& times,
                                     const std::vector<double>& series,
                                     double threshold = 1e-3);

/// First peak of the slowly varying envelope of an oscillating series: take
/// the sequence of local maxima, then the first local maximum of that
/// sequence whose value exceeds the floor. Robust against the fast
/// oscillation that plain thresholding trips over.
struct EnvelopePeak {
    double time = 0.0;
    double value = 0.0;
};

std::optional<EnvelopePeak> first_envelope_peak(const std::vector<double>& times,
                                                const std::vector<double>& series,
                                                double floor = 1e-3);

/// Straight-line fit of entanglement arrival times against separation.
/// Arrival is the first threshold crossing of E_N(t, d); distances d_min
/// to d_max (inclusive) enter the fit.
struct ArrivalFit {
    double coupling = 0.0;
    double vmax = 0.0;
    std::vector<std::size_t> distances;
    std::vector<double> arrival_times;
    double slope = 0.0;
    double intercept = 0.0;
};

ArrivalFit fit_arrival_times(const ChainParams& params, double coupling, double t_final,
                             double dt_sample, double threshold = 1e-3,
                             std::size_t d_min = 3, std::size_t d_max = 12);

/// Oscillating part of the position correlation <q_n q_{n+x}> at time t
/// after the switch, in the infinite-chain limit:
///   -(1 / 8 pi omega0) Int_0^{2pi} A(phi) cos(phi x) cos(2 omega(phi) t) dphi
/// with A = (omega0^2 - omega^2(phi)) / omega^2(phi). Evaluated with a
/// panel-doubling trapezoid rule; throws NumericalError if the requested
/// tolerance is not reached (the integrand oscillates faster the larger t).
double continuum_qq(double x, double t, double coupling, double omega0 = 1.0,
                    double tol = 1e-6);

} // namespace hchain
