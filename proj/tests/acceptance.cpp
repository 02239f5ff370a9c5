// Acceptance gate: eight end-to-end checks against independently computed
// references, one PASS/FAIL line each. The exit status is the number of
// failed criteria, so ctest needs no output parsing.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hchain/anglescan.hpp"
#include "hchain/chain.hpp"
#include "hchain/negativity.hpp"
#include "hchain/oct.hpp"
#include "hchain/propagation.hpp"
#include "hchain/squeezing.hpp"
#include "test_util.hpp"

using namespace hchain;

namespace {

constexpr double pi = 3.14159265358979323846;

int failures = 0;

void report(int idx, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  (%s)\n", idx, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SqueezingProfile make_profile(const ChainParams& params, double coupling,
                              const std::vector<double>& r, const std::vector<double>& theta) {
    SqueezingProfile profile;
    for (std::size_t l = 1; l <= params.n_osc; ++l) {
        SqueezedMode m;
        m.mode = l;
        m.omega = eigenfrequency(params, l, coupling);
        m.r = r[l - 1];
        m.theta_degenerate = m.r < 1e-12;
        m.theta = m.theta_degenerate ? 0.0 : theta[l - 1];
        profile.push_back(m);
    }
    return profile;
}

std::vector<double> fig2_upper() {
    return {0.98, 1.07, 0.89, 0.72, 0.89, 1.07, 0.98, 0.0};
}
std::vector<double> fig2_lower() {
    return {1.92, 2.26, 1.90, 2.37, 1.90, 2.26, 1.92, 0.0};
}

// Smooth non-negative coupling profile starting and ending at zero, so both
// covariance pipelines begin in the same (uncoupled) ground state.
CouplingSchedule smooth_schedule(double t_final, std::size_t samples, std::mt19937& rng) {
    std::uniform_real_distribution<double> base(0.3, 0.5);
    std::uniform_real_distribution<double> amp(0.0, 0.25);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
    const double b0 = base(rng), b1 = amp(rng), ph = phase(rng);
    std::vector<double> times(samples), values(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(samples - 1);
        times[k] = x * t_final;
        const double env = std::sin(pi * x) * std::sin(pi * x);
        values[k] = env * (b0 + b1 * std::cos(2.0 * pi * x + ph));
    }
    return CouplingSchedule(times, values);
}

// Direct site-basis oracle for criterion 2: RK4 on the full covariance
// dGamma/dt = A Gamma + Gamma A^T, A = [[0, I], [-K(t), 0]],
// K = omega0^2 I + c(t) (2I - S - S^T), starting from the identity (the
// uncoupled vacuum in the doubled convention at omega0 = 1).
Eigen::MatrixXd direct_covariance(const ChainParams& params, const CouplingSchedule& schedule,
                                  double t_final, std::size_t n_steps) {
    const auto n = static_cast<Eigen::Index>(params.n_osc);
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        lap(i, i) = 2.0;
        lap(i, (i + 1) % n) -= 1.0;
        lap(i, (i + n - 1) % n) -= 1.0;
    }
    const double w02 = params.omega0 * params.omega0;
    auto drift = [&](double t) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        a.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
        a.bottomLeftCorner(n, n) =
            -(w02 * Eigen::MatrixXd::Identity(n, n) + schedule.value(t) * lap);
        return a;
    };
    auto rhs = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& g) {
        return (a * g + g * a.transpose()).eval();
    };
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    const double h = t_final / static_cast<double>(n_steps);
    for (std::size_t s = 0; s < n_steps; ++s) {
        const double t = h * static_cast<double>(s);
        const Eigen::MatrixXd a1 = drift(t);
        const Eigen::MatrixXd a2 = drift(t + 0.5 * h);
        const Eigen::MatrixXd a4 = drift(t + h);
        const Eigen::MatrixXd k1 = rhs(a1, gamma);
        const Eigen::MatrixXd k2 = rhs(a2, gamma + 0.5 * h * k1);
        const Eigen::MatrixXd k3 = rhs(a2, gamma + 0.5 * h * k2);
        const Eigen::MatrixXd k4 = rhs(a4, gamma + h * k3);
        gamma += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return gamma;
}

double angle_dist(double a, double b) {
    double d = std::fmod(std::fabs(a - b), pi);
    return std::min(d, pi - d);
}

Eigen::Matrix2d rotation2(double a) {
    Eigen::Matrix2d r;
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return r;
}

Eigen::Matrix2d random_sp2(std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> squeeze(-0.6, 0.6);
    const double s = squeeze(rng);
    Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
    d(0, 0) = std::exp(s);
    d(1, 1) = std::exp(-s);
    return rotation2(angle(rng)) * d * rotation2(angle(rng));
}

// Embed per-site 2x2 symplectic maps into the (q_n, q_m, p_n, p_m) ordering.
Eigen::Matrix4d local_map(const Eigen::Matrix2d& sn, const Eigen::Matrix2d& sm) {
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s(0, 0) = sn(0, 0);
    s(0, 2) = sn(0, 1);
    s(2, 0) = sn(1, 0);
    s(2, 2) = sn(1, 1);
    s(1, 1) = sm(0, 0);
    s(1, 3) = sm(0, 1);
    s(3, 1) = sm(1, 0);
    s(3, 3) = sm(1, 1);
    return s;
}

// Random control samples bounded away from zero, for the gradient trials.
std::vector<double> random_controls(std::size_t count, std::mt19937& rng) {
    std::uniform_real_distribution<double> f1(0.5, 2.0), f2(3.0, 6.0), ph(0.0, 6.0);
    const double a = f1(rng), b = f2(rng), p1 = ph(rng), p2 = ph(rng);
    std::vector<double> c(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(count - 1);
        c[k] = 0.3 + 0.15 * std::sin(2.0 * pi * a * x + p1) +
               0.05 * std::sin(2.0 * pi * b * x + p2);
        c[k] = std::max(c[k], 0.05);
    }
    return c;
}

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coupling(0.0, 2.0);
    double worst = 0.0;
    for (const std::size_t n : {std::size_t{4}, std::size_t{6}, std::size_t{8}}) {
        const ChainParams params{n, 1.0};
        for (int trial = 0; trial < 200; ++trial) {
            const double c = coupling(rng);
            const auto profile = testutil::random_profile(params, c, rng);
            const double nu_cf = opposite_pair_nu_minus(profile, params);
            const auto gamma =
                reconstruct_covariance(testutil::profile_quadratures(profile), params);
            const auto res = log_negativity(reduce_pair(gamma, 1, 1 + n / 2));
            worst = std::max(worst, std::fabs(nu_cf - res.nu_minus));
        }
    }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "closed form vs 4x4 path, worst |dnu| = %.2e <= 1e-10, %.1f s",
                  worst, dt);
    report(1, worst <= 1e-10 && dt < 10.0, buf);
}

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(22);
    const double t_final = 6.0;
    double worst = 0.0;
    for (const std::size_t n : {std::size_t{4}, std::size_t{8}}) {
        const ChainParams params{n, 1.0};
        for (int trial = 0; trial < 5; ++trial) {
            const auto schedule = smooth_schedule(t_final, 121, rng);
            // Step chosen to divide the schedule's linear segments exactly;
            // RK4 loses an order when a step straddles a slope kink.
            const double dt = t_final / 24000.0;
            const auto trajs = evolve_modes(params, schedule, t_final, dt);
            const auto gamma =
                reconstruct_covariance(mode_quadratures(trajs, params), params);
            const auto oracle = direct_covariance(params, schedule, t_final, 12000);
            worst = std::max(worst, (gamma - oracle).cwiseAbs().maxCoeff());
        }
    }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "mode pipeline vs direct 2Nx2N oracle, worst entry = %.2e <= 1e-6, %.1f s",
                  worst, dt);
    report(2, worst <= 1e-6 && dt < 30.0, buf);
}

void criterion_3() {
    const ChainParams params{8, 1.0};
    double worst = 0.0;
    for (const double c : {0.1, 0.5, 1.0, 5.0}) {
        const double printed = -0.5 * std::log2((1.0 + 2.0 * c) / (1.0 + 2.0 * c * (2.0 + c)));
        worst = std::max(worst, std::fabs(sudden_switch_max_en(params, c) - printed));
    }
    const double small_ratio = sudden_switch_max_en(params, 0.01) / (0.01 / std::log(2.0));
    const double large_ratio = sudden_switch_max_en(params, 100.0) / (0.5 * std::log2(100.0));
    const bool pass = worst <= 1e-12 && std::fabs(small_ratio - 1.0) <= 0.05 &&
                      std::fabs(large_ratio - 1.0) <= 0.10;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "N=8 closed form |d| = %.1e, small-c ratio %.3f, large-c ratio %.3f", worst,
                  small_ratio, large_ratio);
    report(3, pass, buf);
}

void criterion_4() {
    const ChainParams params{8, 1.0};
    bool pass = true;
    char buf[240];
    std::string detail;

    // Equal squeezing ladder: the caption quotes the per-mode-average
    // indicator pair for four squeezing strengths at c = 0.3.
    const double c1 = 0.3;
    const std::vector<double> lhs_cap = {0.09, 0.2, 0.55, 1.5};
    const std::vector<double> rhs_cap = {0.82, 0.37, 0.14, 0.05};
    for (std::size_t i = 0; i < 4; ++i) {
        const double r = 0.5 * std::log(4.0 * lhs_cap[i] / c1);
        const auto profile = make_profile(params, c1, std::vector<double>(8, r),
                                          std::vector<double>(8, 0.0));
        const auto ind = regime_indicator(profile, params, c1);
        if (std::fabs(ind.lhs / 8.0 - lhs_cap[i]) > 0.1 * lhs_cap[i] ||
            std::fabs(ind.rhs / 8.0 - rhs_cap[i]) > 0.1 * rhs_cap[i])
            pass = false;
    }

    // Mixed-profile rows at c = 0.05: raw indicator sums.
    const double c2 = 0.05;
    const std::vector<double> zeros(8, 0.0);
    const auto up = regime_indicator(make_profile(params, c2, fig2_upper(), zeros), params, c2);
    const auto lo = regime_indicator(make_profile(params, c2, fig2_lower(), zeros), params, c2);
    if (std::fabs(up.lhs - 0.6) > 0.06 || std::fabs(up.rhs - 2.1) > 0.21 ||
        std::fabs(lo.lhs - 6.0) > 0.6 || std::fabs(lo.rhs - 1.1) > 0.11)
        pass = false;

    std::snprintf(buf, sizeof(buf),
                  "ladder quadruples within 10%%; rows (%.2f, %.2f) and (%.2f, %.2f)", up.lhs,
                  up.rhs, lo.lhs, lo.rhs);
    report(4, pass, buf);
}

void criterion_5() {
    const ChainParams params{8, 1.0};
    const std::size_t res = 101;
    const double cell = pi / static_cast<double>(res - 1);

    // Weak regime: the scan maximum must land on an optimal-relation line
    // |theta_odd - theta_even| = (2k+1) pi/2 within one grid cell.
    struct WeakCase {
        std::vector<double> r;
        double c;
    };
    const std::vector<WeakCase> weak = {
        {std::vector<double>(8, 0.5 * std::log(1.2)), 0.3},
        {std::vector<double>(8, 0.05), 0.1},
        {{0.12, 0.08, 0.10, 0.06, 0.10, 0.08, 0.12, 0.04}, 0.05},
    };
    double worst_line = 0.0;
    for (const auto& wc : weak) {
        const auto scan = angle_scan(wc.r, params, wc.c, res);
        const double d =
            std::fabs(scan.theta[scan.argmax_odd] - scan.theta[scan.argmax_even]);
        const double dist = std::min(std::fabs(d - pi / 2.0), std::fabs(d - 1.5 * pi));
        worst_line = std::max(worst_line, dist);
    }
    const bool weak_ok = worst_line <= cell + 1e-12;

    // Strong regime: at least 90% of the top-2% set sits within pi/8 of an
    // optimal corner (0, pi/2) or (pi/2, 0), angles taken mod pi.
    const auto scan = angle_scan(std::vector<double>(8, 0.5 * std::log(20.0)), params, 0.3, res);
    std::size_t near = 0;
    for (const auto& [i, j] : scan.maximal_set) {
        const double to = scan.theta[i], te = scan.theta[j];
        const bool hit =
            std::max(angle_dist(to, 0.0), angle_dist(te, pi / 2.0)) <= pi / 8.0 ||
            std::max(angle_dist(to, pi / 2.0), angle_dist(te, 0.0)) <= pi / 8.0;
        if (hit)
            ++near;
    }
    const double frac =
        scan.maximal_set.empty() ? 0.0
                                 : static_cast<double>(near) /
                                       static_cast<double>(scan.maximal_set.size());
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "weak argmax line distance %.2f cells <= 1; strong set %.0f%% within pi/8",
                  worst_line / cell, 100.0 * frac);
    report(5, weak_ok && frac >= 0.9, buf);
}

void criterion_6() {
    const auto t0 = std::chrono::steady_clock::now();
    const ChainParams params{8, 1.0};
    auto arrival = [&](double c, double t_final) -> std::optional<double> {
        const auto map = propagation_map(params, c, t_final, 0.05);
        std::vector<double> column(map.times.size());
        for (std::size_t i = 0; i < map.times.size(); ++i)
            column[i] = map.en(static_cast<Eigen::Index>(i), 3);
        const auto peak = first_envelope_peak(map.times, column);
        if (!peak)
            return std::nullopt;
        return peak->time;
    };
    const auto slow = arrival(0.05, 300.0);
    const auto fast = arrival(0.2, 100.0);
    const double dt = seconds_since(t0);
    if (!slow || !fast) {
        report(6, false, "no envelope peak found");
        return;
    }
    const double ratio = *slow / *fast;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "first-peak arrivals %.2f / %.2f, ratio %.3f in [3.2, 3.8], %.1f s", *slow,
                  *fast, ratio, dt);
    report(6, ratio >= 3.2 && ratio <= 3.8 && dt < 60.0, buf);
}

void criterion_7() {
    std::mt19937 rng(77);

    // Adjoint gradient against central differences, randomized over
    // schedule, cost kind, and sample index. Substeps chosen so the
    // discretization of the check itself stays well under the tolerance.
    ControlProblem fd_problem;
    fd_problem.params = ChainParams{8, 1.0};
    fd_problem.horizon = 3.0;
    fd_problem.samples = 31;
    fd_problem.c_ref = 0.5;
    fd_problem.fine_substeps = 24;
    const CostKind kinds[3] = {CostKind::strong_bound_arg, CostKind::weak_bound_arg,
                               CostKind::negative_squeeze_energy};
    auto cost_of = [&](const std::vector<double>& c) {
        return cost_value(fd_problem, forward_states(fd_problem, c));
    };
    std::uniform_int_distribution<std::size_t> pick(0, fd_problem.samples - 1);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        fd_problem.cost = kinds[trial % 3];
        const auto c = random_controls(fd_problem.samples, rng);
        const std::size_t k = pick(rng);
        const double adj = control_gradient(fd_problem, c).samples[k];
        const double eps = 1e-6;
        auto cp = c, cm = c;
        cp[k] += eps;
        cm[k] -= eps;
        const double fd = (cost_of(cp) - cost_of(cm)) / (2.0 * eps);
        worst_rel = std::max(worst_rel, std::fabs(adj - fd) / std::max(std::fabs(fd), 1e-12));
    }
    const bool grad_ok = worst_rel <= 1e-3;

    // Frozen delivery protocol: pump for twenty time units against the
    // strong-bound cost, then compare the delivered pair entanglement with
    // the best any plain sudden switch reaches over a long window.
    ControlProblem protocol;
    protocol.params = ChainParams{8, 1.0};
    protocol.horizon = 20.0;
    protocol.samples = 201;
    protocol.cost = CostKind::strong_bound_arg;
    protocol.c_ref = 0.5;
    protocol.bounds = {0.0, 0.5};
    protocol.fine_substeps = 6;
    const auto result = optimize(protocol, std::vector<double>(201, 0.5), 0.05, 40, 1e-12);
    bool monotone = true;
    for (std::size_t i = 1; i < result.trace.size(); ++i)
        if (result.trace[i].cost > result.trace[i - 1].cost)
            monotone = false;

    const auto states = forward_states(protocol, result.schedule.values());
    const auto gamma =
        reconstruct_covariance(mode_quadratures(states, protocol.params), protocol.params);
    double en[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t d = 1; d <= 4; ++d)
        en[d] = log_negativity(reduce_pair(gamma, 1, 1 + d)).log_neg;

    // Best sudden switch to the same coupling: dense scan plus ternary
    // refinement of the opposite-pair closed form.
    auto sudden_en = [&](double t) {
        return log_negativity_from_nu(
            opposite_pair_nu_minus(sudden_switch_profile(protocol.params, 0.5, t),
                                   protocol.params));
    };
    double best_t = 0.0, best_en = 0.0;
    for (double t = 0.0; t <= 60.0; t += 0.002) {
        const double v = sudden_en(t);
        if (v > best_en) {
            best_en = v;
            best_t = t;
        }
    }
    double lo = std::max(0.0, best_t - 0.002), hi = best_t + 0.002;
    for (int i = 0; i < 60; ++i) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (sudden_en(m1) < sudden_en(m2))
            lo = m1;
        else
            hi = m2;
    }
    best_en = std::max(best_en, sudden_en(0.5 * (lo + hi)));

    const double mid = std::max(en[2], en[3]);
    const bool dominated = mid == 0.0 || en[4] >= 5.0 * mid;
    const bool beats = en[4] > best_en;
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "FD worst rel %.1e <= 1e-3; costs monotone %s; E_N(4) = %.3f vs sudden best "
                  "%.3f, mid pairs %.1e",
                  worst_rel, monotone ? "yes" : "no", en[4], best_en, mid);
    report(7, grad_ok && monotone && dominated && beats, buf);
}

void criterion_8() {
    std::mt19937 rng(88);
    const ChainParams params{8, 1.0};
    const double t_final = 20.0;
    const auto schedule = smooth_schedule(t_final, 201, rng);
    const double dt = suggested_dt(params, schedule, t_final);
    const auto trajs = evolve_modes(params, schedule, t_final, dt);

    // Wronskian conservation on every sample of every mode.
    double wronskian_drift = 0.0;
    for (const auto& traj : trajs)
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            wronskian_drift =
                std::max(wronskian_drift,
                         std::fabs(traj.Y[i] * traj.Xd[i] - traj.Yd[i] * traj.X[i] - 1.0));

    // Purity of the propagated mode quadratures.
    const auto quads = mode_quadratures(trajs, params);
    double purity_err = 0.0;
    for (const auto& q : quads)
        purity_err = std::max(purity_err, std::fabs(q.qq * q.pp - q.qp * q.qp - 0.25));

    // Reconstructed covariance: symmetric, block circulant, pure.
    const auto gamma = reconstruct_covariance(quads, params);
    const auto n = static_cast<Eigen::Index>(params.n_osc);
    double structure_err = (gamma - gamma.transpose()).cwiseAbs().maxCoeff();
    for (Eigen::Index bi : {Eigen::Index{0}, n}) {
        for (Eigen::Index bj : {Eigen::Index{0}, n}) {
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    structure_err = std::max(
                        structure_err, std::fabs(gamma(bi + i, bj + j) -
                                                 gamma(bi + (i + 1) % n, bj + (j + 1) % n)));
        }
    }
    double symplectic_err = 0.0;
    for (const double nu : symplectic_eigenvalues(gamma))
        symplectic_err = std::max(symplectic_err, std::fabs(nu - 1.0));

    // Local symplectic maps leave the pair entanglement unchanged, both on
    // a two-mode squeezed pair with known E_N and on a chain reduction.
    double invariance_err = 0.0;
    const PairReduction tms = [] {
        PairReduction p;
        p.n = 1;
        p.m = 2;
        const double ch = std::cosh(1.2), sh = std::sinh(1.2);
        p.gamma4 << ch, sh, 0.0, 0.0, sh, ch, 0.0, 0.0, 0.0, 0.0, ch, -sh, 0.0, 0.0, -sh, ch;
        return p;
    }();
    const PairReduction chain_pair = reduce_pair(gamma, 2, 6);
    for (const auto* base : {&tms, &chain_pair}) {
        const double ref = log_negativity(*base).log_neg;
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::Matrix4d s = local_map(random_sp2(rng), random_sp2(rng));
            PairReduction mapped = *base;
            mapped.gamma4 = s * base->gamma4 * s.transpose();
            invariance_err =
                std::max(invariance_err, std::fabs(log_negativity(mapped).log_neg - ref));
        }
    }

    // Weak-regime bound validity: no random angle assignment on the mixed
    // profile at c = 0.01 may beat the angle-optimized bound.
    const double c_weak = 0.01;
    const auto r_row = fig2_upper();
    const std::vector<double> zeros(8, 0.0);
    const double bound =
        max_entanglement_weak(make_profile(params, c_weak, r_row, zeros), params);
    std::uniform_real_distribution<double> angle(0.0, pi);
    double worst_excess = -1.0;
    for (int draw = 0; draw < 200; ++draw) {
        const double t1 = angle(rng), t2 = angle(rng), t3 = angle(rng);
        const double t4 = angle(rng), t8 = angle(rng);
        const std::vector<double> theta = {t1, t2, t3, t4, t3, t2, t1, t8};
        const double en = log_negativity_from_nu(
            opposite_pair_nu_minus(make_profile(params, c_weak, r_row, theta), params));
        worst_excess = std::max(worst_excess, en - bound);
    }

    // Purity of the mode quadratures equals (W^2)/4 with W the Wronskian,
    // so both share the integrator's 1e-8 conservation tolerance.
    const bool pass = wronskian_drift <= 1e-8 && purity_err <= 1e-8 &&
                      structure_err <= 1e-12 && symplectic_err <= 1e-8 &&
                      invariance_err <= 1e-8 && worst_excess <= 1e-9;
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "wronskian %.1e, purity %.1e, structure %.1e, spectrum %.1e, local maps "
                  "%.1e, bound margin %.1e",
                  wronskian_drift, purity_err, structure_err, symplectic_err, invariance_err,
                  -worst_excess);
    report(8, pass, buf);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    std::printf("acceptance: %d/8 passed\n", 8 - failures);
    return failures;
}
