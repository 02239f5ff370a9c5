#include "hchain/squeezing.hpp"

#include <cmath>
#include <numbers>

namespace hchain {

namespace {

constexpr double pi = std::numbers::pi;

void check_profile(const SqueezingProfile& profile, const ChainParams& params) {
    params.validate();
    if (profile.size() != params.n_osc)
        throw std::invalid_argument("squeezing: profile must cover modes 1..N");
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile[i].mode != i + 1)
            throw std::invalid_argument("squeezing: profile modes must be 1..N in order");
        if (!(profile[i].omega > 0.0))
            throw std::invalid_argument("squeezing: mode frequencies must be positive");
    }
}

} // namespace

ModeQuadratures squeezed_quadratures(double omega, double r, double theta) {
    if (!(omega > 0.0))
        throw std::invalid_argument("squeezed_quadratures: omega must be positive");
    const double em = std::exp(-2.0 * r);
    const double ep = std::exp(2.0 * r);
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    ModeQuadratures q;
    q.qq = (em * c2 + ep * s2) / (2.0 * omega);
    q.pp = (ep * c2 + em * s2) * omega / 2.0;
    q.qp = std::sinh(2.0 * r) * std::sin(2.0 * theta) / 2.0;
    return q;
}

ModeQuadratures squeezed_quadratures(const SqueezedMode& mode) {
    ModeQuadratures q = squeezed_quadratures(mode.omega, mode.r, mode.theta);
    q.mode = mode.mode;
    return q;
}

SqueezedMode extract_squeezing(const ModeQuadratures& quads, double omega) {
    if (!(omega > 0.0))
        throw std::invalid_argument("extract_squeezing: omega must be positive");
    const double s = omega * quads.qq + quads.pp / omega;
    if (s < 1.0 - 1e-8)
        throw std::invalid_argument("extract_squeezing: quadratures below the vacuum floor");

    SqueezedMode m;
    m.mode = quads.mode;
    m.omega = omega;
    m.r = 0.5 * std::acosh(std::max(s, 1.0));
    if (m.r < 1e-8) {
        m.r = 0.0;
        m.theta = 0.0;
        m.theta_degenerate = true;
        return m;
    }
    double theta = 0.5 * std::atan2(2.0 * quads.qp, quads.pp / omega - omega * quads.qq);
    if (theta < 0.0)
        theta += pi;
    if (theta >= pi)
        theta -= pi;
    m.theta = theta;
    return m;
}

SqueezingProfile extract_profile(const std::vector<ModeQuadratures>& quads,
                                 const ChainParams& params, double coupling) {
    params.validate();
    if (quads.size() != params.n_osc)
        throw std::invalid_argument("extract_profile: need quadratures for modes 1..N");
    SqueezingProfile profile;
    profile.reserve(quads.size());
    for (std::size_t i = 0; i < quads.size(); ++i) {
        if (quads[i].mode != i + 1)
            throw std::invalid_argument("extract_profile: modes must be 1..N in order");
        profile.push_back(extract_squeezing(quads[i], eigenfrequency(params, i + 1, coupling)));
    }
    return profile;
}

double max_entanglement_weak(const SqueezingProfile& profile, const ChainParams& params) {
    check_profile(profile, params);
    const double norm = 2.0 / static_cast<double>(params.n_osc);
    double odd = 0.0, even = 0.0;
    for (const auto& m : profile)
        (m.mode % 2 == 1 ? odd : even) += std::exp(-2.0 * m.r);
    return -0.5 * std::log2(norm * odd * norm * even);
}

StrongBound max_entanglement_strong(const SqueezingProfile& profile,
                                    const ChainParams& params, int order) {
    check_profile(profile, params);
    if (order < 0 || order > 2)
        throw std::invalid_argument("max_entanglement_strong: order must be 0, 1 or 2");

    const double norm = 2.0 / static_cast<double>(params.n_osc);
    double f = 0.0, g = 0.0;
    for (const auto& m : profile) {
        if (m.mode % 2 == 1)
            f += std::exp(-2.0 * m.r) / m.omega;
        else
            g += m.omega * std::exp(-2.0 * m.r);
    }

    double num = 0.0, den = 0.0;
    for (const auto& l : profile) {
        for (const auto& m : profile) {
            if (l.mode % 2 == 1 && m.mode % 2 == 0)
                num += (m.omega / l.omega) * std::exp(-2.0 * (l.r + m.r));
            else if (l.mode % 2 == 0 && m.mode % 2 == 1)
                den += (m.omega / l.omega) * std::exp(2.0 * (l.r + m.r));
        }
    }

    StrongBound bound;
    bound.gamma = num / den;
    bound.order = order;
    bound.series_valid = bound.gamma < 1.0;

    double alpha = 1.0;
    if (bound.series_valid) {
        if (order >= 1)
            alpha -= bound.gamma;
        if (order >= 2)
            alpha += bound.gamma * bound.gamma;
    }
    bound.value = -0.5 * std::log2(alpha * norm * f * norm * g);
    return bound;
}

RegimeIndicator regime_indicator(const SqueezingProfile& profile,
                                 const ChainParams& params, double coupling) {
    check_profile(profile, params);
    if (coupling < 0.0)
        throw std::invalid_argument("regime_indicator: coupling must be non-negative");
    RegimeIndicator ind;
    for (const auto& m : profile) {
        ind.lhs += std::exp(2.0 * m.r);
        ind.rhs += std::exp(-2.0 * m.r);
    }
    ind.lhs *= coupling / (4.0 * params.omega0 * params.omega0);
    const double ratio = ind.lhs / ind.rhs;
    if (ratio < 0.5)
        ind.regime = Regime::weak;
    else if (ratio > 2.0)
        ind.regime = Regime::strong;
    else
        ind.regime = Regime::crossover;
    return ind;
}

DissipatedWork dissipated_work(const SqueezingProfile& profile) {
    DissipatedWork w;
    w.per_mode.reserve(profile.size());
    for (const auto& m : profile) {
        if (!(m.omega > 0.0))
            throw std::invalid_argument("dissipated_work: mode frequencies must be positive");
        const double sh = std::sinh(m.r);
        w.per_mode.push_back(m.omega * sh * sh);
        w.total += w.per_mode.back();
    }
    return w;
}

} // namespace hchain
