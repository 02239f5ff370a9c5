#include "hchain/propagation.hpp"

#include <cmath>
#include <numbers>

#include "hchain/negativity.hpp"

namespace hchain {

namespace {

constexpr double pi = std::numbers::pi;

void check_switch_args(const ChainParams& params, double coupling) {
    params.validate();
    if (coupling < 0.0)
        throw std::invalid_argument("sudden switch: coupling must be non-negative");
}

} // namespace

SqueezingProfile sudden_switch_profile(const ChainParams& params, double coupling, double t) {
    check_switch_args(params, coupling);
    SqueezingProfile profile;
    profile.reserve(params.n_osc);
    for (std::size_t l = 1; l <= params.n_osc; ++l) {
        SqueezedMode m;
        m.mode = l;
        m.omega = eigenfrequency(params, l, coupling);
        m.r = 0.5 * std::log(m.omega / params.omega0);
        if (m.r < 1e-12) {
            m.r = 0.0;
            m.theta = 0.0;
            m.theta_degenerate = true;
        } else {
            m.theta = std::fmod(pi / 2.0 + m.omega * t, pi);
            if (m.theta < 0.0)
                m.theta += pi;
        }
        profile.push_back(m);
    }
    return profile;
}

ModeQuadratures sudden_switch_quadratures(const ChainParams& params, std::size_t l,
                                          double coupling, double t) {
    check_switch_args(params, coupling);
    const double w0 = params.omega0;
    const double w = eigenfrequency(params, l, coupling);
    const double c = std::cos(w * t), s = std::sin(w * t);
    ModeQuadratures q;
    q.mode = l;
    q.qq = c * c / (2.0 * w0) + w0 * s * s / (2.0 * w * w);
    q.pp = w * w * s * s / (2.0 * w0) + c * c * w0 / 2.0;
    q.qp = (std::sin(2.0 * w * t) / 4.0) * (w0 / w - w / w0);
    return q;
}

double sudden_switch_max_en(const ChainParams& params, double coupling) {
    check_switch_args(params, coupling);
    double sum = 0.0;
    for (std::size_t l = 1; l <= params.n_osc; l += 2) {
        const double w = eigenfrequency(params, l, coupling);
        sum += 1.0 / (w * w);
    }
    const double arg = 2.0 * params.omega0 * params.omega0 * sum /
                       static_cast<double>(params.n_osc);
    return -0.5 * std::log2(arg);
}

double group_velocity(double coupling, double phi, double omega0) {
    if (coupling < 0.0 || !(omega0 > 0.0))
        throw std::invalid_argument("group_velocity: need coupling >= 0 and omega0 > 0");
    const double s = std::sin(phi / 2.0);
    const double w = std::sqrt(omega0 * omega0 + 4.0 * coupling * s * s);
    return coupling * std::sin(phi) / w;
}

double v_max(double coupling, double omega0) {
    if (coupling < 0.0 || !(omega0 > 0.0))
        throw std::invalid_argument("v_max: need coupling >= 0 and omega0 > 0");
    return coupling / std::sqrt(omega0 * omega0 + 2.0 * coupling);
}

PropagationMap propagation_map(const ChainParams& params, double coupling,
                               double t_final, double dt_sample) {
    check_switch_args(params, coupling);
    if (!(t_final > 0.0) || !(dt_sample > 0.0))
        throw std::invalid_argument("propagation_map: need positive t_final and dt_sample");

    const std::size_t n = params.n_osc;
    const std::size_t nd = n / 2;
    const auto n_samples = static_cast<std::size_t>(std::floor(t_final / dt_sample + 1e-9)) + 1;

    PropagationMap map;
    map.times.resize(n_samples);
    map.distances.resize(nd);
    for (std::size_t d = 1; d <= nd; ++d)
        map.distances[d - 1] = d;
    map.en.resize(static_cast<Eigen::Index>(n_samples), static_cast<Eigen::Index>(nd));

    // cos(2 pi l k / N) table; generator index k only runs to N/2 because
    // the circulant is symmetric.
    std::vector<double> costab((nd + 1) * n);
    for (std::size_t k = 0; k <= nd; ++k)
        for (std::size_t l = 1; l <= n; ++l)
            costab[k * n + l - 1] =
                std::cos(2.0 * pi * static_cast<double>(l) * static_cast<double>(k) /
                         static_cast<double>(n));

    std::vector<double> qq(n), pp(n), qp(n);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) * dt_sample;
        map.times[i] = t;
        for (std::size_t l = 1; l <= n; ++l) {
            const ModeQuadratures q = sudden_switch_quadratures(params, l, coupling, t);
            qq[l - 1] = q.qq;
            pp[l - 1] = q.pp;
            qp[l - 1] = q.qp;
        }

        // Circulant generators in the doubled covariance convention.
        const double norm = 2.0 / static_cast<double>(n);
        std::vector<double> gqq(nd + 1, 0.0), gpp(nd + 1, 0.0), gqp(nd + 1, 0.0);
        for (std::size_t k = 0; k <= nd; ++k) {
            const double* row = &costab[k * n];
            double a = 0.0, b = 0.0, c = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
                a += qq[l] * row[l];
                b += pp[l] * row[l];
                c += qp[l] * row[l];
            }
            gqq[k] = norm * a;
            gpp[k] = norm * b;
            gqp[k] = norm * c;
        }

        for (std::size_t d = 1; d <= nd; ++d) {
            Eigen::Matrix4d g4;
            g4 << gqq[0], gqq[d], gqp[0], gqp[d],
                  gqq[d], gqq[0], gqp[d], gqp[0],
                  gqp[0], gqp[d], gpp[0], gpp[d],
                  gqp[d], gqp[0], gpp[d], gpp[0];
            PairReduction pair;
            pair.n = 1;
            pair.m = 1 + d;
            pair.gamma4 = g4;
            map.en(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) =
                log_negativity(pair).log_neg;
        }
    }
    return map;
}

std::optional<double> first_crossing(const std::vector<double>& times,
                                     const std::vector<double>& series, double threshold) {
    if (times.size() != series.size())
        throw std::invalid_argument("first_crossing: times and series sizes differ");
    for (std::size_t i = 0; i < series.size(); ++i)
        if (series[i] > threshold)
            return times[i];
    return std::nullopt;
}

std::optional<EnvelopePeak> first_envelope_peak(const std::vector<double>& times,
                                                const std::vector<double>& series,
                                                double floor) {
    if (times.size() != series.size())
        throw std::invalid_argument("first_envelope_peak: times and series sizes differ");
    std::vector<std::size_t> peak_idx;
    std::vector<double> peak_val;
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        if (series[i] > series[i - 1] && series[i] >= series[i + 1]) {
            peak_idx.push_back(i);
            peak_val.push_back(series[i]);
        }
    }
    for (std::size_t j = 1; j + 1 < peak_val.size(); ++j) {
        if (peak_val[j] > peak_val[j - 1] && peak_val[j] >= peak_val[j + 1] &&
            peak_val[j] > floor)
            return EnvelopePeak{times[peak_idx[j]], peak_val[j]};
    }
    return std::nullopt;
}

ArrivalFit fit_arrival_times(const ChainParams& params, double coupling, double t_final,
                             double dt_sample, double threshold, std::size_t d_min,
                             std::size_t d_max) {
    if (d_min < 1 || d_max < d_min + 2 || d_max > params.n_osc / 2)
        throw std::invalid_argument("fit_arrival_times: need 1 <= d_min and at least three "
                                    "distances up to N/2");
    const PropagationMap map = propagation_map(params, coupling, t_final, dt_sample);

    ArrivalFit fit;
    fit.coupling = coupling;
    fit.vmax = v_max(coupling, params.omega0);
    for (std::size_t d = d_min; d <= d_max; ++d) {
        std::vector<double> col(map.times.size());
        for (std::size_t i = 0; i < map.times.size(); ++i)
            col[i] = map.en(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1));
        const auto arrival = first_crossing(map.times, col, threshold);
        if (!arrival)
            throw NumericalError("fit_arrival_times: entanglement never reaches the "
                                 "threshold at distance " + std::to_string(d) +
                                 "; extend t_final");
        fit.distances.push_back(d);
        fit.arrival_times.push_back(*arrival);
    }

    // Ordinary least squares t(d) = slope * d + intercept.
    const auto m = static_cast<double>(fit.distances.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < fit.distances.size(); ++i) {
        const auto x = static_cast<double>(fit.distances[i]);
        sx += x;
        sy += fit.arrival_times[i];
        sxx += x * x;
        sxy += x * fit.arrival_times[i];
    }
    fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / m;
    return fit;
}

double continuum_qq(double x, double t, double coupling, double omega0, double tol) {
    if (coupling < 0.0 || !(omega0 > 0.0) || !(tol > 0.0))
        throw std::invalid_argument("continuum_qq: need coupling >= 0, omega0 > 0, tol > 0");

    const auto integrand = [&](double phi) {
        const double s = std::sin(phi / 2.0);
        const double w2 = omega0 * omega0 + 4.0 * coupling * s * s;
        const double a = (omega0 * omega0 - w2) / w2;
        return a * std::cos(phi * x) * std::cos(2.0 * std::sqrt(w2) * t);
    };

    // Panel-doubling trapezoid on [0, 2 pi]; each refinement reuses the
    // previous sum and adds the midpoints.
    std::size_t panels = 8;
    double sum = 0.5 * (integrand(0.0) + integrand(2.0 * pi));
    for (std::size_t i = 1; i < panels; ++i)
        sum += integrand(2.0 * pi * static_cast<double>(i) / static_cast<double>(panels));
    double h = 2.0 * pi / static_cast<double>(panels);
    double value = sum * h;

    constexpr std::size_t max_panels = 1u << 18;
    while (panels < max_panels) {
        double mid = 0.0;
        for (std::size_t i = 0; i < panels; ++i)
            mid += integrand(h * (static_cast<double>(i) + 0.5));
        panels *= 2;
        h *= 0.5;
        sum = sum + mid;
        const double next = sum * h;
        if (std::abs(next - value) <= tol * std::max(1.0, std::abs(next))) {
            value = next;
            return -value / (8.0 * pi * omega0);
        }
        value = next;
    }
    throw NumericalError("continuum_qq: quadrature did not converge; the integrand "
                         "oscillates too fast for the panel cap");
}

} // namespace hchain
