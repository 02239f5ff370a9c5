#include "hchain/chain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace hchain {

namespace {

constexpr double pi = std::numbers::pi;

// Shortest representation that parses back to the same double, so saved
// schedules reload bit-exactly and stay stable across save/load cycles.
std::string format_g(double v) {
    char buf[32];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v)
            break;
    }
    return buf;
}

} // namespace

void ChainParams::validate() const {
    if (n_osc < 4 || n_osc % 2 != 0)
        throw std::invalid_argument("ChainParams: n_osc must be even and at least 4");
    if (!(omega0 > 0.0))
        throw std::invalid_argument("ChainParams: omega0 must be positive");
}

double eigenfrequency(const ChainParams& params, std::size_t l, double coupling) {
    params.validate();
    if (l < 1 || l > params.n_osc)
        throw std::invalid_argument("eigenfrequency: mode index out of range");
    if (coupling < 0.0)
        throw std::invalid_argument("eigenfrequency: coupling must be non-negative");
    const double s = std::sin(pi * static_cast<double>(l) / static_cast<double>(params.n_osc));
    return std::sqrt(params.omega0 * params.omega0 + 4.0 * coupling * s * s);
}

CouplingSchedule::CouplingSchedule(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
    if (times_.empty() || times_.size() != values_.size())
        throw std::invalid_argument("CouplingSchedule: need equally many times and values, at least one");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw std::invalid_argument("CouplingSchedule: times must be strictly increasing");
    for (double v : values_)
        if (!(v >= 0.0))
            throw std::invalid_argument("CouplingSchedule: coupling values must be non-negative");
}

CouplingSchedule CouplingSchedule::constant(double value) {
    return CouplingSchedule({0.0}, {value});
}

double CouplingSchedule::value(double t) const {
    if (t <= times_.front())
        return values_.front();
    if (t >= times_.back())
        return values_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times_.begin());
    const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
    return values_[i - 1] + w * (values_[i] - values_[i - 1]);
}

double CouplingSchedule::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

CouplingSchedule CouplingSchedule::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("CouplingSchedule::load: cannot open " + path);
    std::vector<double> times, values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        double t, c;
        if (!(ls >> t)) // blank or comment-only line
            continue;
        if (!(ls >> c))
            throw std::invalid_argument("CouplingSchedule::load: " + path + " line " +
                                        std::to_string(lineno) + ": expected two columns");
        std::string rest;
        if (ls >> rest)
            throw std::invalid_argument("CouplingSchedule::load: " + path + " line " +
                                        std::to_string(lineno) + ": trailing data");
        times.push_back(t);
        values.push_back(c);
    }
    return CouplingSchedule(std::move(times), std::move(values));
}

void CouplingSchedule::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("CouplingSchedule::save: cannot open " + path);
    out << "# coupling schedule: time  value\n";
    for (std::size_t i = 0; i < times_.size(); ++i)
        out << format_g(times_[i]) << ' ' << format_g(values_[i]) << '\n';
}

double suggested_dt(const ChainParams& params, const CouplingSchedule& schedule,
                    double t_final, double wronskian_tol) {
    params.validate();
    if (!(t_final > 0.0))
        throw std::invalid_argument("suggested_dt: t_final must be positive");
    if (!(wronskian_tol > 0.0))
        throw std::invalid_argument("suggested_dt: tolerance must be positive");
    const double wmax = std::sqrt(params.omega0 * params.omega0 + 4.0 * schedule.max_value());
    // RK4 shrinks the Wronskian by (omega h)^6/72 per step, so the drift
    // after t/h steps is t omega^6 h^5 / 72. Budget the whole tolerance for
    // the fastest mode and additionally keep 50 steps per period.
    const double dt_resolve = 2.0 * pi / (50.0 * wmax);
    const double dt_drift = std::pow(72.0 * wronskian_tol / (std::pow(wmax, 6) * t_final), 0.2);
    return std::min(dt_resolve, dt_drift);
}

std::vector<ModeTrajectory> evolve_modes(const ChainParams& params,
                                         const CouplingSchedule& schedule,
                                         double t_final, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("evolve_modes: dt must be positive");
    if (!(t_final > 0.0))
        throw std::invalid_argument("evolve_modes: t_final must be positive");
    const auto n_steps = static_cast<std::size_t>(
        std::max(1.0, std::ceil(t_final / dt - 1e-12)));
    return evolve_modes_fixed(params, schedule, t_final, n_steps);
}

std::vector<ModeTrajectory> evolve_modes_fixed(const ChainParams& params,
                                               const CouplingSchedule& schedule,
                                               double t_final, std::size_t n_steps) {
    params.validate();
    if (!(t_final > 0.0))
        throw std::invalid_argument("evolve_modes: t_final must be positive");
    if (n_steps < 1)
        throw std::invalid_argument("evolve_modes: need at least one step");

    const std::size_t n = params.n_osc;
    const double h = t_final / static_cast<double>(n_steps);
    const double w0sq = params.omega0 * params.omega0;

    std::vector<ModeTrajectory> trajs(n);
    for (std::size_t l = 1; l <= n; ++l) {
        ModeTrajectory& traj = trajs[l - 1];
        traj.mode = l;
        traj.times.reserve(n_steps + 1);
        traj.Y.reserve(n_steps + 1);
        traj.Yd.reserve(n_steps + 1);
        traj.X.reserve(n_steps + 1);
        traj.Xd.reserve(n_steps + 1);

        const double s = std::sin(pi * static_cast<double>(l) / static_cast<double>(n));
        const double four_s2 = 4.0 * s * s;
        const auto wsq = [&](double t) { return w0sq + four_s2 * schedule.value(t); };

        // State z = (Y, Y', X, X'), z' = (z1, -w^2 z0, z3, -w^2 z2).
        std::array<double, 4> z{1.0, 0.0, 0.0, 1.0};
        const auto deriv = [](const std::array<double, 4>& v, double w2) {
            return std::array<double, 4>{v[1], -w2 * v[0], v[3], -w2 * v[2]};
        };
        const auto push = [&](double t) {
            traj.times.push_back(t);
            traj.Y.push_back(z[0]);
            traj.Yd.push_back(z[1]);
            traj.X.push_back(z[2]);
            traj.Xd.push_back(z[3]);
            const double wr = z[0] * z[3] - z[1] * z[2];
            if (std::abs(wr - 1.0) > 1e-8 * std::max(1.0, t))
                throw NumericalError("evolve_modes: Wronskian drift " +
                                     format_g(wr - 1.0) + " for mode " +
                                     std::to_string(l) + " at t = " + format_g(t) +
                                     "; reduce dt");
        };

        push(0.0);
        for (std::size_t k = 0; k < n_steps; ++k) {
            const double t = static_cast<double>(k) * h;
            const double w2a = wsq(t);
            const double w2b = wsq(t + 0.5 * h);
            const double w2c = wsq(t + h);

            const auto k1 = deriv(z, w2a);
            std::array<double, 4> tmp;
            for (int i = 0; i < 4; ++i) tmp[i] = z[i] + 0.5 * h * k1[i];
            const auto k2 = deriv(tmp, w2b);
            for (int i = 0; i < 4; ++i) tmp[i] = z[i] + 0.5 * h * k2[i];
            const auto k3 = deriv(tmp, w2b);
            for (int i = 0; i < 4; ++i) tmp[i] = z[i] + h * k3[i];
            const auto k4 = deriv(tmp, w2c);
            for (int i = 0; i < 4; ++i)
                z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

            push(k + 1 == n_steps ? t_final : static_cast<double>(k + 1) * h);
        }
    }
    return trajs;
}

ModeQuadratures quadratures_at(const ModeTrajectory& traj,
                               const ChainParams& params, std::size_t step) {
    params.validate();
    if (step >= traj.times.size())
        throw std::invalid_argument("quadratures_at: step out of range");
    const double w0 = params.omega0;
    const double y = traj.Y[step], yd = traj.Yd[step];
    const double x = traj.X[step], xd = traj.Xd[step];
    ModeQuadratures q;
    q.mode = traj.mode;
    q.qq = y * y / (2.0 * w0) + x * x * w0 / 2.0;
    q.pp = yd * yd / (2.0 * w0) + xd * xd * w0 / 2.0;
    q.qp = y * yd / (2.0 * w0) + x * xd * w0 / 2.0;
    return q;
}

std::vector<ModeQuadratures> mode_quadratures(const std::vector<ModeTrajectory>& trajs,
                                              const ChainParams& params) {
    std::vector<ModeQuadratures> quads;
    quads.reserve(trajs.size());
    for (const auto& traj : trajs) {
        if (traj.times.empty())
            throw std::invalid_argument("mode_quadratures: empty trajectory");
        quads.push_back(quadratures_at(traj, params, traj.times.size() - 1));
    }
    return quads;
}

Eigen::MatrixXd reconstruct_covariance(const std::vector<ModeQuadratures>& quads,
                                       const ChainParams& params) {
    params.validate();
    const std::size_t n = params.n_osc;
    if (quads.size() != n)
        throw std::invalid_argument("reconstruct_covariance: need one entry per mode");
    for (std::size_t i = 0; i < n; ++i)
        if (quads[i].mode != i + 1)
            throw std::invalid_argument("reconstruct_covariance: modes must be 1..N in order");

    // Site correlations are discrete Fourier sums over the modes. The real
    // parts give circulant generators; the imaginary parts must cancel
    // between modes l and N - l.
    std::vector<double> gqq(n), gpp(n), gqp(n);
    for (std::size_t k = 0; k < n; ++k) {
        double cqq = 0.0, cpp = 0.0, cqp = 0.0;
        double sqq = 0.0, spp = 0.0, sqp = 0.0;
        for (std::size_t l = 1; l <= n; ++l) {
            const double phase = 2.0 * pi * static_cast<double>(l) * static_cast<double>(k) /
                                 static_cast<double>(n);
            const double c = std::cos(phase), si = std::sin(phase);
            cqq += quads[l - 1].qq * c;
            cpp += quads[l - 1].pp * c;
            cqp += quads[l - 1].qp * c;
            sqq += quads[l - 1].qq * si;
            spp += quads[l - 1].pp * si;
            sqp += quads[l - 1].qp * si;
        }
        const double res = std::max({std::abs(sqq), std::abs(spp), std::abs(sqp)}) /
                           static_cast<double>(n);
        if (res > 1e-12)
            throw NumericalError("reconstruct_covariance: imaginary residue " + format_g(res) +
                                 " at separation " + std::to_string(k) +
                                 "; quadratures break the l <-> N-l pairing");
        gqq[k] = 2.0 * cqq / static_cast<double>(n);
        gpp[k] = 2.0 * cpp / static_cast<double>(n);
        gqp[k] = 2.0 * cqp / static_cast<double>(n);
    }

    Eigen::MatrixXd gamma(2 * n, 2 * n);
    const auto ni = static_cast<Eigen::Index>(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t k = (a + n - b) % n;
            const auto ai = static_cast<Eigen::Index>(a);
            const auto bi = static_cast<Eigen::Index>(b);
            gamma(ai, bi) = gqq[k];
            gamma(ni + ai, ni + bi) = gpp[k];
            gamma(ai, ni + bi) = gqp[k];
            gamma(ni + ai, bi) = gqp[k];
        }
    }
    return gamma;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& gamma) {
    const Eigen::Index dim = gamma.rows();
    if (dim != gamma.cols() || dim < 2 || dim % 2 != 0)
        throw std::invalid_argument("symplectic_eigenvalues: need a square matrix of even size");
    const Eigen::Index n = dim / 2;

    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
    omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);

    const Eigen::EigenSolver<Eigen::MatrixXd> es(omega * gamma);
    std::vector<double> im(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i)
        im[static_cast<std::size_t>(i)] = es.eigenvalues()[i].imag();
    // Eigenvalues come in +/- i nu pairs; keep the positive branch.
    std::sort(im.begin(), im.end(), std::greater<>());
    im.resize(static_cast<std::size_t>(n));
    std::sort(im.begin(), im.end());
    return im;
}

double mode_energy(const ModeQuadratures& quads, double omega) {
    if (!(omega > 0.0))
        throw std::invalid_argument("mode_energy: omega must be positive");
    return (quads.pp + omega * omega * quads.qq) / 2.0;
}

} // namespace hchain
