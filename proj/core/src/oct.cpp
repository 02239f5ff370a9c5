#include "hchain/oct.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>

namespace hchain {

namespace {

constexpr double pi = std::numbers::pi;

// e^{-2r} as a function of s = cosh(2r), and its derivative. Rounding can
// push s a hair below 1; both branches treat that as the unsqueezed point.
double squeeze_factor(double s) {
    return s - std::sqrt(std::max(s * s - 1.0, 0.0));
}

double squeeze_factor_ds(double s) {
    if (s <= 1.0 + 1e-12)
        return 0.0;
    return 1.0 - s / std::sqrt(s * s - 1.0);
}

std::vector<double> reference_frequencies(const ControlProblem& problem) {
    std::vector<double> what(problem.params.n_osc);
    for (std::size_t l = 1; l <= problem.params.n_osc; ++l)
        what[l - 1] = eigenfrequency(problem.params, l, problem.c_ref);
    return what;
}

std::vector<double> excitations(const ControlProblem& problem,
                                const std::vector<ModeTrajectory>& states,
                                const std::vector<double>& what) {
    if (states.size() != problem.params.n_osc)
        throw std::invalid_argument("oct: need one trajectory per mode");
    std::vector<double> s(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const ModeQuadratures q =
            quadratures_at(states[i], problem.params, states[i].times.size() - 1);
        s[i] = what[i] * q.qq + q.pp / what[i];
    }
    return s;
}

double cost_from_excitations(const ControlProblem& problem, const std::vector<double>& s,
                             const std::vector<double>& what) {
    const double norm = 2.0 / static_cast<double>(problem.params.n_osc);
    switch (problem.cost) {
    case CostKind::strong_bound_arg: {
        double f = 0.0, g = 0.0;
        for (std::size_t l = 1; l <= s.size(); ++l) {
            const double em = squeeze_factor(s[l - 1]);
            if (l % 2 == 1)
                f += em / what[l - 1];
            else
                g += what[l - 1] * em;
        }
        return norm * f * norm * g;
    }
    case CostKind::weak_bound_arg: {
        double f = 0.0, g = 0.0;
        for (std::size_t l = 1; l <= s.size(); ++l)
            (l % 2 == 1 ? f : g) += squeeze_factor(s[l - 1]);
        return norm * f * norm * g;
    }
    case CostKind::negative_squeeze_energy: {
        double e = 0.0;
        for (std::size_t l = 1; l <= s.size(); ++l)
            e += what[l - 1] * (s[l - 1] - 1.0) / 2.0;
        return -e;
    }
    }
    throw std::invalid_argument("oct: unknown cost kind");
}

std::vector<double> cost_gradient_s(const ControlProblem& problem,
                                    const std::vector<double>& s,
                                    const std::vector<double>& what) {
    const double norm = 2.0 / static_cast<double>(problem.params.n_osc);
    std::vector<double> dh(s.size(), 0.0);
    switch (problem.cost) {
    case CostKind::strong_bound_arg: {
        double f = 0.0, g = 0.0;
        for (std::size_t l = 1; l <= s.size(); ++l) {
            const double em = squeeze_factor(s[l - 1]);
            if (l % 2 == 1)
                f += em / what[l - 1];
            else
                g += what[l - 1] * em;
        }
        for (std::size_t l = 1; l <= s.size(); ++l) {
            const double dem = squeeze_factor_ds(s[l - 1]);
            dh[l - 1] = (l % 2 == 1) ? norm * norm * g * dem / what[l - 1]
                                     : norm * norm * f * what[l - 1] * dem;
        }
        return dh;
    }
    case CostKind::weak_bound_arg: {
        double f = 0.0, g = 0.0;
        for (std::size_t l = 1; l <= s.size(); ++l)
            (l % 2 == 1 ? f : g) += squeeze_factor(s[l - 1]);
        for (std::size_t l = 1; l <= s.size(); ++l) {
            const double dem = squeeze_factor_ds(s[l - 1]);
            dh[l - 1] = (l % 2 == 1) ? norm * norm * g * dem : norm * norm * f * dem;
        }
        return dh;
    }
    case CostKind::negative_squeeze_energy:
        for (std::size_t l = 1; l <= s.size(); ++l)
            dh[l - 1] = -what[l - 1] / 2.0;
        return dh;
    }
    throw std::invalid_argument("oct: unknown cost kind");
}

CouplingSchedule schedule_from_samples(const ControlProblem& problem,
                                       const std::vector<double>& c_samples) {
    if (c_samples.size() != problem.samples)
        throw std::invalid_argument("oct: wrong number of control samples");
    return CouplingSchedule(control_times(problem), c_samples);
}

} // namespace

void ControlProblem::validate() const {
    params.validate();
    if (!(horizon > 0.0))
        throw std::invalid_argument("ControlProblem: horizon must be positive");
    if (samples < 2)
        throw std::invalid_argument("ControlProblem: need at least two control samples");
    if (fine_substeps < 1)
        throw std::invalid_argument("ControlProblem: fine_substeps must be at least 1");
    if (c_ref < 0.0)
        throw std::invalid_argument("ControlProblem: c_ref must be non-negative");
    if (bounds) {
        if (!(bounds->first >= 0.0) || !(bounds->second >= bounds->first))
            throw std::invalid_argument("ControlProblem: bounds must satisfy 0 <= lo <= hi");
        if (pin_final && (c_ref < bounds->first || c_ref > bounds->second))
            throw std::invalid_argument("ControlProblem: pinned c_ref lies outside bounds");
    }
}

std::vector<double> control_times(const ControlProblem& problem) {
    problem.validate();
    std::vector<double> t(problem.samples);
    for (std::size_t k = 0; k < problem.samples; ++k)
        t[k] = problem.horizon * static_cast<double>(k) /
               static_cast<double>(problem.samples - 1);
    return t;
}

std::vector<ModeTrajectory> forward_states(const ControlProblem& problem,
                                           const std::vector<double>& c_samples) {
    problem.validate();
    const CouplingSchedule schedule = schedule_from_samples(problem, c_samples);
    const std::size_t n_steps =
        (problem.samples - 1) * static_cast<std::size_t>(problem.fine_substeps);
    return evolve_modes_fixed(problem.params, schedule, problem.horizon, n_steps);
}

double cost_value(const ControlProblem& problem, const std::vector<ModeTrajectory>& states) {
    problem.validate();
    const std::vector<double> what = reference_frequencies(problem);
    return cost_from_excitations(problem, excitations(problem, states, what), what);
}

std::vector<CostateTrajectory> backward_costates(const ControlProblem& problem,
                                                 const std::vector<double>& c_samples,
                                                 const std::vector<ModeTrajectory>& states) {
    problem.validate();
    const CouplingSchedule schedule = schedule_from_samples(problem, c_samples);
    const std::vector<double> what = reference_frequencies(problem);
    const std::vector<double> s = excitations(problem, states, what);
    const std::vector<double> dh = cost_gradient_s(problem, s, what);
    const double w0 = problem.params.omega0;
    const double w0sq = w0 * w0;
    const std::size_t n = problem.params.n_osc;

    std::vector<CostateTrajectory> costates(n);
    for (std::size_t l = 1; l <= n; ++l) {
        const ModeTrajectory& traj = states[l - 1];
        const std::size_t nt = traj.times.size();
        CostateTrajectory& cs = costates[l - 1];
        cs.mode = l;
        cs.times = traj.times;
        cs.xY.resize(nt);
        cs.xYd.resize(nt);
        cs.xX.resize(nt);
        cs.xXd.resize(nt);

        // Terminal condition: chain rule of the cost through the final
        // quadratures, s = what*qq + pp/what.
        const std::size_t e = nt - 1;
        const double tc = dh[l - 1];
        const double wh = what[l - 1];
        std::array<double, 4> xi{tc * wh * traj.Y[e] / w0, tc * traj.Yd[e] / (wh * w0),
                                 tc * wh * w0 * traj.X[e], tc * w0 * traj.Xd[e] / wh};

        const double sm = std::sin(pi * static_cast<double>(l) / static_cast<double>(n));
        const double four_s2 = 4.0 * sm * sm;
        const auto wsq = [&](double t) { return w0sq + four_s2 * schedule.value(t); };
        // Adjoint of z' = (z1, -w^2 z0): xi' = (w^2 xi1, -xi0), same for
        // the X pair.
        const auto deriv = [](const std::array<double, 4>& v, double w2) {
            return std::array<double, 4>{w2 * v[1], -v[0], w2 * v[3], -v[2]};
        };

        const auto store = [&](std::size_t i) {
            cs.xY[i] = xi[0];
            cs.xYd[i] = xi[1];
            cs.xX[i] = xi[2];
            cs.xXd[i] = xi[3];
        };
        store(e);
        for (std::size_t i = e; i > 0; --i) {
            const double t = traj.times[i];
            const double hstep = traj.times[i] - traj.times[i - 1];
            const double w2a = wsq(t);
            const double w2b = wsq(t - 0.5 * hstep);
            const double w2c = wsq(t - hstep);

            const auto k1 = deriv(xi, w2a);
            std::array<double, 4> tmp;
            for (int j = 0; j < 4; ++j) tmp[j] = xi[j] - 0.5 * hstep * k1[j];
            const auto k2 = deriv(tmp, w2b);
            for (int j = 0; j < 4; ++j) tmp[j] = xi[j] - 0.5 * hstep * k2[j];
            const auto k3 = deriv(tmp, w2b);
            for (int j = 0; j < 4; ++j) tmp[j] = xi[j] - hstep * k3[j];
            const auto k4 = deriv(tmp, w2c);
            for (int j = 0; j < 4; ++j)
                xi[j] -= hstep / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            store(i - 1);
        }
    }
    return costates;
}

ControlGradient control_gradient(const ControlProblem& problem,
                                 const std::vector<ModeTrajectory>& states,
                                 const std::vector<CostateTrajectory>& costates) {
    problem.validate();
    const std::size_t n = problem.params.n_osc;
    if (states.size() != n || costates.size() != n)
        throw std::invalid_argument("control_gradient: need one state and costate per mode");

    const std::size_t intervals = problem.samples - 1;
    const auto substeps = static_cast<std::size_t>(problem.fine_substeps);
    const std::size_t fine = intervals * substeps;
    for (std::size_t l = 0; l < n; ++l)
        if (states[l].times.size() != fine + 1 || costates[l].times.size() != fine + 1)
            throw std::invalid_argument("control_gradient: grids do not match the problem");

    ControlGradient grad;
    grad.sample_times = control_times(problem);
    grad.density_times = states[0].times;
    grad.density.assign(fine + 1, 0.0);

    // The coupling enters every mode equation through 4 sin^2(pi l / N), so
    // the sensitivity density is a single weighted sum over modes.
    for (std::size_t l = 1; l <= n; ++l) {
        const double sm = std::sin(pi * static_cast<double>(l) / static_cast<double>(n));
        const double w = -4.0 * sm * sm;
        const ModeTrajectory& st = states[l - 1];
        const CostateTrajectory& cs = costates[l - 1];
        for (std::size_t i = 0; i <= fine; ++i)
            grad.density[i] += w * (st.Y[i] * cs.xYd[i] + st.X[i] * cs.xXd[i]);
    }

    // Project onto the hat functions of the control grid with the trapezoid
    // weights of the fine grid: the result is the derivative of the
    // discretized cost with respect to each control sample.
    const double h = problem.horizon / static_cast<double>(fine);
    grad.samples.assign(problem.samples, 0.0);
    for (std::size_t k = 0; k < problem.samples; ++k) {
        const std::size_t center = k * substeps;
        const std::size_t lo = (k == 0) ? 0 : center - substeps;
        const std::size_t hi = (k == intervals) ? fine : center + substeps;
        double acc = 0.0;
        for (std::size_t i = lo; i <= hi; ++i) {
            const double dist = (i > center) ? static_cast<double>(i - center)
                                             : static_cast<double>(center - i);
            const double hat = 1.0 - dist / static_cast<double>(substeps);
            const double wgt = (i == 0 || i == fine) ? 0.5 * h : h;
            acc += wgt * hat * grad.density[i];
        }
        grad.samples[k] = acc;
    }
    return grad;
}

ControlGradient control_gradient(const ControlProblem& problem,
                                 const std::vector<double>& c_samples) {
    const auto states = forward_states(problem, c_samples);
    const auto costates = backward_costates(problem, c_samples, states);
    return control_gradient(problem, states, costates);
}

std::uint64_t schedule_hash(const std::vector<double>& times,
                            const std::vector<double>& values) {
    std::uint64_t hash = 14695981039346656037ull;
    const auto mix = [&](const std::vector<double>& v) {
        for (double x : v) {
            unsigned char bytes[sizeof(double)];
            std::memcpy(bytes, &x, sizeof(double));
            for (unsigned char b : bytes) {
                hash ^= b;
                hash *= 1099511628211ull;
            }
        }
    };
    mix(times);
    mix(values);
    return hash;
}

OptimizeResult optimize(const ControlProblem& problem, std::vector<double> initial,
                        double alpha_step, std::size_t max_iter, double tol) {
    problem.validate();
    if (initial.size() != problem.samples)
        throw std::invalid_argument("optimize: initial guess has wrong sample count");
    if (!(alpha_step > 0.0))
        throw std::invalid_argument("optimize: alpha_step must be positive");
    if (!(tol >= 0.0))
        throw std::invalid_argument("optimize: tol must be non-negative");

    const double lo = problem.bounds ? problem.bounds->first : 0.0;
    const double hi = problem.bounds ? problem.bounds->second
                                     : std::numeric_limits<double>::infinity();
    const auto project = [&](std::vector<double>& c) {
        for (double& v : c)
            v = std::clamp(v, lo, hi);
        if (problem.pin_final)
            c.back() = problem.c_ref;
    };
    const auto l2 = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v)
            s += x * x;
        return std::sqrt(s);
    };

    const std::vector<double> times = control_times(problem);
    project(initial);

    std::vector<double> current = std::move(initial);
    double cost = cost_value(problem, forward_states(problem, current));
    ControlGradient grad = control_gradient(problem, current);

    OptimizeResult result{CouplingSchedule(times, current), {}, OptimizeStatus::max_iter, cost};
    result.trace.push_back({0, cost, 0.0, l2(grad.samples), schedule_hash(times, current), 0});

    constexpr int max_halvings = 10;
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        double alpha = alpha_step;
        int halvings = 0;
        std::vector<double> trial(current.size());
        double trial_cost = 0.0;
        for (;;) {
            for (std::size_t k = 0; k < current.size(); ++k)
                trial[k] = current[k] - alpha * grad.samples[k];
            project(trial);
            trial_cost = cost_value(problem, forward_states(problem, trial));
            if (trial_cost <= cost)
                break;
            if (++halvings >= max_halvings) {
                result.status = OptimizeStatus::diverged;
                result.schedule = CouplingSchedule(times, current);
                result.final_cost = cost;
                return result;
            }
            alpha /= 2.0;
        }

        const double decrease = cost - trial_cost;
        current = trial;
        cost = trial_cost;
        grad = control_gradient(problem, current);
        result.trace.push_back(
            {iter, cost, alpha, l2(grad.samples), schedule_hash(times, current), halvings});

        if (decrease < tol) {
            result.status = OptimizeStatus::converged;
            break;
        }
    }

    result.schedule = CouplingSchedule(times, current);
    result.final_cost = cost;
    return result;
}

} // namespace hchain
