#include "hchain/anglescan.hpp"

#include <cmath>
#include <numbers>

#include "hchain/negativity.hpp"

namespace hchain {

namespace {

constexpr double pi = std::numbers::pi;

void check_amplitudes(const std::vector<double>& r_modes, const ChainParams& params) {
    params.validate();
    const std::size_t n = params.n_osc;
    if (r_modes.size() != n)
        throw std::invalid_argument("angle scan: need one amplitude per mode 1..N");
    for (std::size_t l = 1; l <= n; ++l) {
        if (!(r_modes[l - 1] >= 0.0))
            throw std::invalid_argument("angle scan: amplitudes must be non-negative");
        const std::size_t partner = (l == n) ? n : n - l; // mode N pairs with itself
        const double rp = r_modes[partner - 1];
        if (std::abs(r_modes[l - 1] - rp) > 1e-12 * std::max({1.0, r_modes[l - 1], rp}))
            throw std::invalid_argument("angle scan: modes l and N-l must share an amplitude");
    }
}

std::vector<double> angle_grid(std::size_t resolution) {
    if (resolution < 2)
        throw std::invalid_argument("angle scan: resolution must be at least 2");
    std::vector<double> grid(resolution);
    for (std::size_t i = 0; i < resolution; ++i)
        grid[i] = pi * static_cast<double>(i) / static_cast<double>(resolution - 1);
    return grid;
}

struct ParitySums {
    double qq = 0.0, pp = 0.0, qp = 0.0;
};

double en_from_sums(const ParitySums& odd, const ParitySums& even, std::size_t n) {
    const double a_oe = 4.0 * (odd.qq * even.pp - odd.qp * even.qp);
    const double a_eo = 4.0 * (even.qq * odd.pp - even.qp * odd.qp);
    const double a_oo = 4.0 * (odd.qq * odd.pp - odd.qp * odd.qp);
    const double a_ee = 4.0 * (even.qq * even.pp - even.qp * even.qp);
    const double x = a_oe + a_eo;
    const double disc = std::max(0.0, x * x - 4.0 * a_oo * a_ee);
    const double inner = std::max(0.0, x - std::sqrt(disc));
    const double nu = std::sqrt(2.0 * inner) / static_cast<double>(n);
    return log_negativity_from_nu(nu);
}

double en_for_angles(const std::vector<double>& r_modes, const std::vector<double>& omegas,
                     const std::vector<double>& theta, std::size_t n) {
    ParitySums odd, even;
    for (std::size_t l = 1; l <= n; ++l) {
        const ModeQuadratures q =
            squeezed_quadratures(omegas[l - 1], r_modes[l - 1], theta[l - 1]);
        ParitySums& dst = (l % 2 == 1) ? odd : even;
        dst.qq += q.qq;
        dst.pp += q.pp;
        dst.qp += q.qp;
    }
    return en_from_sums(odd, even, n);
}

std::vector<double> mode_frequencies(const ChainParams& params, double coupling) {
    std::vector<double> omegas(params.n_osc);
    for (std::size_t l = 1; l <= params.n_osc; ++l)
        omegas[l - 1] = eigenfrequency(params, l, coupling);
    return omegas;
}

} // namespace

AngleScanResult angle_scan(const std::vector<double>& r_modes, const ChainParams& params,
                           double coupling, std::size_t resolution, double top_frac) {
    check_amplitudes(r_modes, params);
    if (!(top_frac >= 0.0 && top_frac < 1.0))
        throw std::invalid_argument("angle_scan: top_frac must lie in [0, 1)");
    const std::size_t n = params.n_osc;
    const std::vector<double> omegas = mode_frequencies(params, coupling);

    AngleScanResult result;
    result.theta = angle_grid(resolution);

    // Parity sums depend on one angle each, so tabulate them once per grid
    // value and combine in the double loop.
    std::vector<ParitySums> odd(resolution), even(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        for (std::size_t l = 1; l <= n; ++l) {
            const ModeQuadratures q =
                squeezed_quadratures(omegas[l - 1], r_modes[l - 1], result.theta[i]);
            ParitySums& dst = (l % 2 == 1) ? odd[i] : even[i];
            dst.qq += q.qq;
            dst.pp += q.pp;
            dst.qp += q.qp;
        }
    }

    result.en.resize(static_cast<Eigen::Index>(resolution), static_cast<Eigen::Index>(resolution));
    for (std::size_t i = 0; i < resolution; ++i) {
        for (std::size_t j = 0; j < resolution; ++j) {
            const double en = en_from_sums(odd[i], even[j], n);
            result.en(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = en;
            if (en > result.max_en) {
                result.max_en = en;
                result.argmax_odd = i;
                result.argmax_even = j;
            }
        }
    }

    result.threshold = (1.0 - top_frac) * result.max_en;
    for (std::size_t i = 0; i < resolution; ++i)
        for (std::size_t j = 0; j < resolution; ++j)
            if (result.en(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) >=
                result.threshold)
                result.maximal_set.emplace_back(i, j);
    return result;
}

FullAngleScanResult angle_scan_full(const std::vector<double>& r_modes,
                                    const ChainParams& params, double coupling,
                                    std::size_t resolution) {
    check_amplitudes(r_modes, params);
    const std::size_t n = params.n_osc;
    if (n > 8)
        throw std::invalid_argument("angle_scan_full: exhaustive scan is limited to N <= 8");
    const std::vector<double> omegas = mode_frequencies(params, coupling);
    const std::vector<double> grid = angle_grid(resolution);

    // Independent angles: one per pair (l, N-l) for l = 1..N/2, plus the
    // translation mode N when it is actually squeezed.
    const bool scan_last = r_modes[n - 1] > 1e-12;
    const std::size_t dims = n / 2 + (scan_last ? 1 : 0);

    std::vector<std::size_t> idx(dims, 0);
    std::vector<double> theta(n, 0.0);
    FullAngleScanResult best;
    best.theta.assign(n, 0.0);
    bool first = true;

    for (;;) {
        for (std::size_t k = 1; k <= n / 2; ++k) {
            theta[k - 1] = grid[idx[k - 1]];
            theta[n - k - 1] = theta[k - 1]; // partner mode N-k
        }
        theta[n - 1] = scan_last ? grid[idx[dims - 1]] : 0.0;

        const double en = en_for_angles(r_modes, omegas, theta, n);
        if (first || en > best.max_en) {
            best.max_en = en;
            best.theta = theta;
            first = false;
        }

        std::size_t d = 0;
        while (d < dims && ++idx[d] == resolution) {
            idx[d] = 0;
            ++d;
        }
        if (d == dims)
            break;
    }
    return best;
}

AngleFamilyComparison compare_angle_families(const std::vector<double>& r_modes,
                                             const ChainParams& params, double coupling) {
    check_amplitudes(r_modes, params);
    const std::size_t n = params.n_osc;
    const std::vector<double> omegas = mode_frequencies(params, coupling);

    const auto family_en = [&](double theta_odd, double theta_even) {
        SqueezingProfile profile;
        profile.reserve(n);
        for (std::size_t l = 1; l <= n; ++l) {
            SqueezedMode m;
            m.mode = l;
            m.omega = omegas[l - 1];
            m.r = r_modes[l - 1];
            m.theta = (l % 2 == 1) ? theta_odd : theta_even;
            profile.push_back(m);
        }
        return log_negativity_from_nu(opposite_pair_nu_minus(profile, params));
    };

    AngleFamilyComparison cmp;
    cmp.exact_quarter = family_en(quarter_family_odd, quarter_family_even);
    cmp.exact_axis = family_en(axis_family_odd, axis_family_even);

    // Leading-order landscape around each family, expressed through the
    // anti-squeezing and squeezing sums of the two parity classes.
    double bo_p = 0.0, bo_m = 0.0, be_p = 0.0, be_m = 0.0;
    for (std::size_t l = 1; l <= n; ++l) {
        const double ep = std::exp(2.0 * r_modes[l - 1]);
        if (l % 2 == 1) {
            bo_p += ep;
            bo_m += 1.0 / ep;
        } else {
            be_p += ep;
            be_m += 1.0 / ep;
        }
    }
    const double w0sq = params.omega0 * params.omega0;
    const double half = coupling / (2.0 * w0sq);

    const double x_quarter = (1.0 + half) * bo_p * be_p;
    const double y_quarter = 0.25 * std::pow((1.0 + half) * bo_p, 2) *
                             std::pow(bo_m + half * bo_p, 2);
    const double x_axis = (1.0 + 2.0 * half) * be_p * bo_p;
    const double y_axis = (1.0 + 4.0 * half) * bo_m * bo_p * be_p * be_m;

    const auto approx_en = [&](double x, double y) {
        const double disc = std::max(0.0, x * x - 4.0 * y);
        const double inner = std::max(0.0, x - std::sqrt(disc));
        return log_negativity_from_nu(std::sqrt(2.0 * inner) / static_cast<double>(n));
    };
    cmp.approx_quarter = approx_en(x_quarter, y_quarter);
    cmp.approx_axis = approx_en(x_axis, y_axis);
    cmp.exact_prefers_axis = cmp.exact_axis >= cmp.exact_quarter;
    cmp.approx_prefers_axis = cmp.approx_axis >= cmp.approx_quarter;
    return cmp;
}

} // namespace hchain
