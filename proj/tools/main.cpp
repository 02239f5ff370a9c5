// Command-line driver: reproducible experiments over the hchain library.
// Every run resolves a flat key-value configuration (defaults, then an
// optional config file, then --set overrides), echoes it as config.json
// into the output directory, and writes CSV/JSON artifacts whose bytes
// depend only on the configuration.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hchain/anglescan.hpp"
#include "hchain/chain.hpp"
#include "hchain/io.hpp"
#include "hchain/negativity.hpp"
#include "hchain/oct.hpp"
#include "hchain/propagation.hpp"
#include "hchain/squeezing.hpp"
#include "hchain/version.hpp"

using namespace hchain;

namespace {

constexpr double pi = 3.14159265358979323846;

// ----------------------------------------------------------------------
// Flat configuration: an ordered key-value list so the echo file keeps a
// stable layout. Unknown keys are rejected to catch typos early.

using Entries = std::vector<std::pair<std::string, std::string>>;

Entries default_entries() {
    return {
        {"experiment", "run"},
        {"n_osc", "8"},
        {"omega0", "1"},
        {"schedule", "sudden:0.5"},
        {"t_final", "20"},
        {"dt", "0"},
        {"dt_sample", "0.05"},
        {"out_dir", "."},
        {"pair_a", "1"},
        {"pair_b", "0"},
        {"r_modes", "switch"},
        {"resolution", "201"},
        {"top_frac", "0.02"},
        {"threshold", "0.001"},
        {"d_min", "1"},
        {"d_max", "0"},
        {"samples", "201"},
        {"cost", "strong-bound"},
        {"c_ref", "0.5"},
        {"c_min", "0"},
        {"c_max", "0.5"},
        {"alpha_step", "0.05"},
        {"max_iter", "40"},
        {"tol", "1e-12"},
        {"pin_final", "1"},
        {"fine_substeps", "6"},
        {"seed", "12345"},
    };
}

class Config {
  public:
    Config() : entries_(default_entries()) {}

    const Entries& entries() const { return entries_; }

    void set(const std::string& key, const std::string& value) {
        for (auto& [k, v] : entries_) {
            if (k == key) {
                v = value;
                return;
            }
        }
        throw std::invalid_argument("unknown config key: " + key);
    }

    const std::string& str(const std::string& key) const {
        for (const auto& [k, v] : entries_)
            if (k == key)
                return v;
        throw std::invalid_argument("unknown config key: " + key);
    }

    double num(const std::string& key) const {
        const std::string& v = str(key);
        char* end = nullptr;
        const double x = std::strtod(v.c_str(), &end);
        if (end != v.c_str() + v.size() || v.empty())
            throw std::invalid_argument("config key '" + key + "': not a number: " + v);
        return x;
    }

    double positive(const std::string& key) const {
        const double x = num(key);
        if (!(x > 0.0))
            throw std::invalid_argument("config key '" + key + "' must be positive");
        return x;
    }

    double non_negative(const std::string& key) const {
        const double x = num(key);
        if (!(x >= 0.0))
            throw std::invalid_argument("config key '" + key + "' must be >= 0");
        return x;
    }

    std::size_t count(const std::string& key) const {
        const double x = num(key);
        const auto n = static_cast<std::size_t>(x);
        if (x < 0.0 || static_cast<double>(n) != x)
            throw std::invalid_argument("config key '" + key + "' must be a whole number");
        return n;
    }

    bool flag(const std::string& key) const {
        const std::string& v = str(key);
        if (v == "1" || v == "true")
            return true;
        if (v == "0" || v == "false")
            return false;
        throw std::invalid_argument("config key '" + key + "' must be 0 or 1");
    }

  private:
    Entries entries_;
};

void apply_config_file(Config& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void apply_override(Config& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("--set expects key=value, got: " + assignment);
    cfg.set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

// ----------------------------------------------------------------------
// Schedule source: "sudden:c", "constant:c", or a two-column file path.

struct ScheduleSource {
    enum class Kind { sudden, constant, file } kind = Kind::sudden;
    double coupling = 0.0;
    std::string path;
};

ScheduleSource parse_schedule_source(const std::string& text) {
    ScheduleSource src;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    if (colon != std::string::npos && (head == "sudden" || head == "constant")) {
        src.kind = head == "sudden" ? ScheduleSource::Kind::sudden
                                    : ScheduleSource::Kind::constant;
        const std::string tail = text.substr(colon + 1);
        char* end = nullptr;
        src.coupling = std::strtod(tail.c_str(), &end);
        if (end != tail.c_str() + tail.size() || tail.empty() || src.coupling < 0.0)
            throw std::invalid_argument("schedule '" + text +
                                        "': coupling must be a number >= 0");
        return src;
    }
    src.kind = ScheduleSource::Kind::file;
    src.path = text;
    if (!std::filesystem::exists(src.path))
        throw std::invalid_argument("schedule file does not exist: " + src.path);
    return src;
}

CouplingSchedule build_schedule(const ScheduleSource& src) {
    if (src.kind == ScheduleSource::Kind::file)
        return CouplingSchedule::load(src.path);
    return CouplingSchedule::constant(src.coupling);
}

// The closed-form commands work on a single post-switch coupling, so a
// tabulated schedule file cannot drive them.
double require_coupling(const ScheduleSource& src, const char* cmd) {
    if (src.kind == ScheduleSource::Kind::file)
        throw std::invalid_argument(std::string(cmd) +
                                    " needs schedule = sudden:c or constant:c");
    return src.coupling;
}

ChainParams chain_params(const Config& cfg) {
    ChainParams params{cfg.count("n_osc"), cfg.positive("omega0")};
    params.validate();
    return params;
}

std::filesystem::path output_dir(const Config& cfg) {
    std::filesystem::path out(cfg.str("out_dir"));
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec)
        throw std::invalid_argument("cannot create out_dir: " + out.string());
    return out;
}

Metadata base_metadata(const Config& cfg) {
    return {
        {"experiment", cfg.str("experiment")},
        {"n_osc", cfg.str("n_osc")},
        {"omega0", cfg.str("omega0")},
        {"schedule", cfg.str("schedule")},
    };
}

void echo_config(const Config& cfg, const std::filesystem::path& out) {
    write_config_json((out / "config.json").string(), cfg.entries());
}

SqueezingProfile profile_from_r(const ChainParams& params, double coupling,
                                const std::vector<double>& r) {
    SqueezingProfile profile;
    for (std::size_t l = 1; l <= params.n_osc; ++l) {
        SqueezedMode m;
        m.mode = l;
        m.omega = eigenfrequency(params, l, coupling);
        m.r = r[l - 1];
        m.theta_degenerate = m.r < 1e-12;
        m.theta = 0.0;
        profile.push_back(m);
    }
    return profile;
}

// r_modes: "switch" (amplitudes of the sudden switch itself), "uniform:R",
// or a comma-separated list of N values.
std::vector<double> parse_r_modes(const Config& cfg, const ChainParams& params,
                                  double coupling) {
    const std::string& text = cfg.str("r_modes");
    if (text == "switch") {
        std::vector<double> r;
        for (const auto& m : sudden_switch_profile(params, coupling))
            r.push_back(m.r);
        return r;
    }
    if (text.rfind("uniform:", 0) == 0) {
        const std::string tail = text.substr(8);
        char* end = nullptr;
        const double value = std::strtod(tail.c_str(), &end);
        if (end != tail.c_str() + tail.size() || tail.empty() || value < 0.0)
            throw std::invalid_argument("r_modes uniform value must be a number >= 0");
        return std::vector<double>(params.n_osc, value);
    }
    std::vector<double> r;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        char* end = nullptr;
        const double value = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size() || item.empty() || value < 0.0)
            throw std::invalid_argument("r_modes: bad entry '" + item + "'");
        r.push_back(value);
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (r.size() != params.n_osc)
        throw std::invalid_argument("r_modes needs exactly n_osc entries");
    return r;
}

// ----------------------------------------------------------------------
// Subcommands.

int cmd_evolve(const Config& cfg) {
    const ChainParams params = chain_params(cfg);
    const auto source = parse_schedule_source(cfg.str("schedule"));
    const auto schedule = build_schedule(source);
    const double t_final = cfg.positive("t_final");
    double dt = cfg.non_negative("dt");
    if (dt == 0.0)
        dt = suggested_dt(params, schedule, t_final);
    const double dt_sample = cfg.positive("dt_sample");

    std::size_t a = cfg.count("pair_a");
    std::size_t b = cfg.count("pair_b");
    if (b == 0)
        b = a + params.n_osc / 2;
    if (a < 1 || b <= a || b > params.n_osc)
        throw std::invalid_argument("pair_a/pair_b must satisfy 1 <= a < b <= n_osc");

    const auto trajs = evolve_modes(params, schedule, t_final, dt);
    const auto& times = trajs.front().times;
    const double h = times.size() > 1 ? times[1] - times[0] : t_final;

    const auto n_samples = static_cast<std::size_t>(t_final / dt_sample + 1e-9) + 1;
    std::vector<NegativityRow> rows;
    Eigen::MatrixXd gamma;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const double ts = dt_sample * static_cast<double>(s);
        auto idx = static_cast<std::size_t>(std::llround(ts / h));
        idx = std::min(idx, times.size() - 1);
        std::vector<ModeQuadratures> quads;
        for (const auto& traj : trajs)
            quads.push_back(quadratures_at(traj, params, idx));
        gamma = reconstruct_covariance(quads, params);
        const auto res = log_negativity(reduce_pair(gamma, a, b));
        rows.push_back({times[idx], a, b, res.nu_minus, res.log_neg});
    }

    Metadata meta = base_metadata(cfg);
    meta.emplace_back("t_final", format_double(t_final));
    meta.emplace_back("dt", format_double(dt));
    meta.emplace_back("dt_sample", format_double(dt_sample));
    meta.emplace_back("pair", std::to_string(a) + "-" + std::to_string(b));

    const auto out = output_dir(cfg);
    write_negativity_csv((out / "negativity.csv").string(), rows, meta);
    write_covariance_csv((out / "covariance.csv").string(), gamma, meta);
    echo_config(cfg, out);
    return 0;
}

int cmd_anglescan(const Config& cfg) {
    const ChainParams params = chain_params(cfg);
    const auto source = parse_schedule_source(cfg.str("schedule"));
    const double coupling = require_coupling(source, "anglescan");
    const auto resolution = cfg.count("resolution");
    if (resolution < 2)
        throw std::invalid_argument("resolution must be at least 2");
    const double top_frac = cfg.positive("top_frac");
    if (top_frac >= 1.0)
        throw std::invalid_argument("top_frac must lie in (0, 1)");

    const auto r = parse_r_modes(cfg, params, coupling);
    const auto scan = angle_scan(r, params, coupling, resolution, top_frac);
    const auto regime = regime_indicator(profile_from_r(params, coupling, r), params, coupling);

    Metadata meta = base_metadata(cfg);
    meta.emplace_back("coupling", format_double(coupling));
    meta.emplace_back("r_modes", cfg.str("r_modes"));
    meta.emplace_back("resolution", std::to_string(resolution));

    const auto out = output_dir(cfg);
    write_anglescan_csv((out / "anglescan.csv").string(), scan, meta);
    write_anglescan_json((out / "anglescan.json").string(), scan, regime);
    echo_config(cfg, out);
    return 0;
}

int cmd_propagate(const Config& cfg) {
    const ChainParams params = chain_params(cfg);
    const auto source = parse_schedule_source(cfg.str("schedule"));
    const double coupling = require_coupling(source, "propagate");
    const double t_final = cfg.positive("t_final");
    const double dt_sample = cfg.positive("dt_sample");
    const double threshold = cfg.positive("threshold");
    std::size_t d_min = cfg.count("d_min");
    std::size_t d_max = cfg.count("d_max");
    if (d_max == 0)
        d_max = params.n_osc / 2;
    d_max = std::min(d_max, params.n_osc / 2);
    d_min = std::max<std::size_t>(d_min, 1);
    if (d_min > d_max)
        throw std::invalid_argument("d_min exceeds d_max");

    const auto map = propagation_map(params, coupling, t_final, dt_sample);

    Metadata meta = base_metadata(cfg);
    meta.emplace_back("coupling", format_double(coupling));
    meta.emplace_back("t_final", format_double(t_final));
    meta.emplace_back("dt_sample", format_double(dt_sample));
    meta.emplace_back("threshold", format_double(threshold));

    const auto out = output_dir(cfg);
    write_map_csv((out / "map.csv").string(), map, meta);
    // The straight-line arrival fit needs at least three separations; short
    // chains still get the map.
    if (d_max - d_min + 1 >= 3) {
        const auto fit =
            fit_arrival_times(params, coupling, t_final, dt_sample, threshold, d_min, d_max);
        write_arrival_json((out / "arrival.json").string(), fit);
    } else {
        std::fprintf(stderr, "propagate: fewer than three separations, skipping arrival fit\n");
    }
    echo_config(cfg, out);
    return 0;
}

int cmd_switch_bound(const Config& cfg) {
    const ChainParams params = chain_params(cfg);
    const auto source = parse_schedule_source(cfg.str("schedule"));
    const double coupling = require_coupling(source, "switch-bound");
    const auto profile = sudden_switch_profile(params, coupling);
    const auto strong = max_entanglement_strong(profile, params);
    const auto regime = regime_indicator(profile, params, coupling);
    const auto work = dissipated_work(profile);

    nlohmann::ordered_json j;
    j["n_osc"] = params.n_osc;
    j["omega0"] = params.omega0;
    j["coupling"] = coupling;
    j["max_log_negativity"] = sudden_switch_max_en(params, coupling);
    j["weak_bound"] = max_entanglement_weak(profile, params);
    j["strong_bound"] = {{"value", strong.value},
                         {"gamma", strong.gamma},
                         {"order", strong.order},
                         {"series_valid", strong.series_valid}};
    j["v_max"] = v_max(coupling, params.omega0);
    j["regime"] = {{"lhs", regime.lhs},
                   {"rhs", regime.rhs},
                   {"label", regime_name(regime.regime)}};
    j["dissipated_work"] = {{"per_mode", work.per_mode}, {"total", work.total}};
    auto& modes = j["modes"] = nlohmann::ordered_json::array();
    for (const auto& m : profile)
        modes.push_back({{"mode", m.mode}, {"omega", m.omega}, {"r", m.r}});

    const auto out = output_dir(cfg);
    std::ofstream file(out / "switch_bound.json");
    if (!file)
        throw std::invalid_argument("cannot write switch_bound.json");
    file << j.dump(2) << '\n';
    echo_config(cfg, out);
    return 0;
}

int cmd_optimize(const Config& cfg) {
    ControlProblem problem;
    problem.params = chain_params(cfg);
    problem.horizon = cfg.positive("t_final");
    problem.samples = cfg.count("samples");
    problem.c_ref = cfg.non_negative("c_ref");
    problem.pin_final = cfg.flag("pin_final");
    problem.fine_substeps = static_cast<int>(cfg.count("fine_substeps"));

    const std::string& cost = cfg.str("cost");
    if (cost == "strong-bound")
        problem.cost = CostKind::strong_bound_arg;
    else if (cost == "weak-bound")
        problem.cost = CostKind::weak_bound_arg;
    else if (cost == "energy")
        problem.cost = CostKind::negative_squeeze_energy;
    else
        throw std::invalid_argument("cost must be strong-bound, weak-bound, or energy");

    const double c_min = cfg.non_negative("c_min");
    const double c_max = cfg.positive("c_max");
    if (c_min > c_max)
        throw std::invalid_argument("c_min exceeds c_max");
    problem.bounds = {c_min, c_max};
    problem.validate();

    const double alpha_step = cfg.positive("alpha_step");
    const auto max_iter = cfg.count("max_iter");
    const double tol = cfg.non_negative("tol");

    const auto source = parse_schedule_source(cfg.str("schedule"));
    std::vector<double> initial;
    if (source.kind == ScheduleSource::Kind::file) {
        const auto loaded = CouplingSchedule::load(source.path);
        for (const double t : control_times(problem))
            initial.push_back(loaded.value(t));
    } else {
        initial.assign(problem.samples, source.coupling);
    }

    const auto result = optimize(problem, initial, alpha_step, max_iter, tol);

    const auto out = output_dir(cfg);
    result.schedule.save((out / "schedule_opt.txt").string());
    write_trace_jsonl((out / "trace.jsonl").string(), result.trace);
    write_optimize_json((out / "optimize.json").string(), result);
    echo_config(cfg, out);

    if (result.status == OptimizeStatus::diverged) {
        std::fprintf(stderr, "optimize: diverged (cost increased through all backtracking)\n");
        return 2;
    }
    return 0;
}

int cmd_defaults() {
    for (const auto& [k, v] : default_entries())
        std::printf("%s = %s\n", k.c_str(), v.c_str());
    return 0;
}

// ----------------------------------------------------------------------
// Self test: a condensed seeded run of the library's property suites.

SqueezingProfile random_profile(const ChainParams& params, double coupling,
                                std::mt19937& rng) {
    std::uniform_real_distribution<double> rdist(0.0, 1.5);
    std::uniform_real_distribution<double> tdist(0.0, pi);
    const std::size_t n = params.n_osc;
    SqueezingProfile profile(n);
    for (std::size_t l = 1; l <= n; ++l) {
        profile[l - 1].mode = l;
        profile[l - 1].omega = eigenfrequency(params, l, coupling);
    }
    for (std::size_t l = 1; l <= n / 2; ++l) {
        const double r = rdist(rng);
        const double theta = tdist(rng);
        profile[l - 1].r = r;
        profile[l - 1].theta = theta;
        if (l < n / 2) {
            profile[n - l - 1].r = r;
            profile[n - l - 1].theta = theta;
        }
    }
    profile[n - 1].r = rdist(rng);
    profile[n - 1].theta = tdist(rng);
    return profile;
}

Eigen::Matrix2d rotation2(double a) {
    Eigen::Matrix2d r;
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return r;
}

Eigen::Matrix4d random_local_map(std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> squeeze(-0.6, 0.6);
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    for (int site = 0; site < 2; ++site) {
        Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
        const double z = squeeze(rng);
        d(0, 0) = std::exp(z);
        d(1, 1) = std::exp(-z);
        const Eigen::Matrix2d m = rotation2(angle(rng)) * d * rotation2(angle(rng));
        s(0 + site, 0 + site) = m(0, 0);
        s(0 + site, 2 + site) = m(0, 1);
        s(2 + site, 0 + site) = m(1, 0);
        s(2 + site, 2 + site) = m(1, 1);
    }
    return s;
}

int cmd_selftest(const Config& cfg) {
    std::mt19937 rng(static_cast<std::uint32_t>(cfg.count("seed")));
    int failed = 0;
    auto check = [&](const char* name, bool ok, double measured, double tol) {
        std::printf("selftest %-18s %s  (%.2e <= %.0e)\n", name, ok ? "ok" : "FAILED",
                    measured, tol);
        if (!ok)
            ++failed;
    };

    const ChainParams params{8, 1.0};

    // Closed-form opposite-pair negativity against the generic 4x4 path.
    {
        std::uniform_real_distribution<double> coupling(0.0, 2.0);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const double c = coupling(rng);
            const auto profile = random_profile(params, c, rng);
            std::vector<ModeQuadratures> quads;
            for (const auto& m : profile)
                quads.push_back(squeezed_quadratures(m));
            const auto gamma = reconstruct_covariance(quads, params);
            const auto res = log_negativity(reduce_pair(gamma, 1, 1 + params.n_osc / 2));
            worst = std::max(worst,
                             std::fabs(opposite_pair_nu_minus(profile, params) - res.nu_minus));
        }
        check("negativity-oracle", worst <= 1e-10, worst, 1e-10);
    }

    // Evolution invariants on a random smooth schedule.
    {
        std::uniform_real_distribution<double> base(0.3, 0.5), amp(0.0, 0.25),
            phase(0.0, 2.0 * pi);
        const double b0 = base(rng), b1 = amp(rng), ph = phase(rng);
        const double t_final = 10.0;
        std::vector<double> times(101), values(101);
        for (std::size_t k = 0; k < 101; ++k) {
            const double x = static_cast<double>(k) / 100.0;
            times[k] = x * t_final;
            values[k] = std::sin(pi * x) * std::sin(pi * x) *
                        (b0 + b1 * std::cos(2.0 * pi * x + ph));
        }
        const CouplingSchedule schedule(times, values);
        const double dt = suggested_dt(params, schedule, t_final);
        const auto trajs = evolve_modes(params, schedule, t_final, dt);

        double drift = 0.0;
        for (const auto& traj : trajs)
            for (std::size_t i = 0; i < traj.times.size(); ++i)
                drift = std::max(drift, std::fabs(traj.Y[i] * traj.Xd[i] -
                                                  traj.Yd[i] * traj.X[i] - 1.0));
        check("wronskian", drift <= 1e-8, drift, 1e-8);

        const auto quads = mode_quadratures(trajs, params);
        double purity = 0.0;
        for (const auto& q : quads)
            purity = std::max(purity, std::fabs(q.qq * q.pp - q.qp * q.qp - 0.25));
        check("purity", purity <= 1e-8, purity, 1e-8);

        const auto gamma = reconstruct_covariance(quads, params);
        const auto n = static_cast<Eigen::Index>(params.n_osc);
        double structure = (gamma - gamma.transpose()).cwiseAbs().maxCoeff();
        for (Eigen::Index bi : {Eigen::Index{0}, n})
            for (Eigen::Index bj : {Eigen::Index{0}, n})
                for (Eigen::Index i = 0; i < n; ++i)
                    for (Eigen::Index jj = 0; jj < n; ++jj)
                        structure = std::max(
                            structure,
                            std::fabs(gamma(bi + i, bj + jj) -
                                      gamma(bi + (i + 1) % n, bj + (jj + 1) % n)));
        check("circulant", structure <= 1e-12, structure, 1e-12);

        double spectrum = 0.0;
        for (const double nu : symplectic_eigenvalues(gamma))
            spectrum = std::max(spectrum, std::fabs(nu - 1.0));
        check("pure-spectrum", spectrum <= 1e-8, spectrum, 1e-8);

        const auto pair = reduce_pair(gamma, 2, 6);
        const double ref = log_negativity(pair).log_neg;
        double inv = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::Matrix4d s = random_local_map(rng);
            PairReduction mapped = pair;
            mapped.gamma4 = s * pair.gamma4 * s.transpose();
            inv = std::max(inv, std::fabs(log_negativity(mapped).log_neg - ref));
        }
        check("local-invariance", inv <= 1e-8, inv, 1e-8);
    }

    // Adjoint gradient against central finite differences.
    {
        ControlProblem problem;
        problem.params = params;
        problem.horizon = 3.0;
        problem.samples = 31;
        problem.c_ref = 0.5;
        problem.fine_substeps = 24;
        const CostKind kinds[3] = {CostKind::strong_bound_arg, CostKind::weak_bound_arg,
                                   CostKind::negative_squeeze_energy};
        std::uniform_real_distribution<double> f1(0.5, 2.0), f2(3.0, 6.0), ph(0.0, 6.0);
        std::uniform_int_distribution<std::size_t> pick(0, problem.samples - 1);
        double worst = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
            problem.cost = kinds[trial];
            const double a = f1(rng), b = f2(rng), p1 = ph(rng), p2 = ph(rng);
            std::vector<double> c(problem.samples);
            for (std::size_t k = 0; k < c.size(); ++k) {
                const double x = static_cast<double>(k) / static_cast<double>(c.size() - 1);
                c[k] = std::max(0.05, 0.3 + 0.15 * std::sin(2.0 * pi * a * x + p1) +
                                          0.05 * std::sin(2.0 * pi * b * x + p2));
            }
            const std::size_t k = pick(rng);
            const double adj = control_gradient(problem, c).samples[k];
            const double eps = 1e-6;
            auto cp = c, cm = c;
            cp[k] += eps;
            cm[k] -= eps;
            const double fd = (cost_value(problem, forward_states(problem, cp)) -
                               cost_value(problem, forward_states(problem, cm))) /
                              (2.0 * eps);
            worst = std::max(worst, std::fabs(adj - fd) / std::max(std::fabs(fd), 1e-12));
        }
        check("adjoint-gradient", worst <= 1e-3, worst, 1e-3);
    }

    std::printf("selftest: %s\n", failed == 0 ? "all properties hold" : "FAILURES");
    return failed == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic chain entanglement toolkit"};
    app.set_version_flag("--version", hchain::version);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir_flag;
    std::vector<std::string> overrides;

    std::function<int(const Config&)> runner;
    auto wire = [&](const char* name, const char* help, std::function<int(const Config&)> fn,
                    bool takes_config = true) {
        CLI::App* sub = app.add_subcommand(name, help);
        if (takes_config) {
            sub->add_option("-c,--config", config_path, "flat key = value config file");
            sub->add_option("-o,--out-dir", out_dir_flag, "output directory");
            sub->add_option("--set", overrides, "override one config key (key=value)");
        }
        sub->callback([&runner, fn] { runner = fn; });
        return sub;
    };

    wire("evolve", "integrate a schedule; negativity series + final covariance", cmd_evolve);
    wire("anglescan", "two-angle entanglement landscape + regime summary", cmd_anglescan);
    wire("propagate", "entanglement arrival map after a sudden switch", cmd_propagate);
    wire("switch-bound", "closed-form sudden-switch bounds and indicators", cmd_switch_bound);
    wire("optimize", "gradient descent over coupling schedules", cmd_optimize);
    wire("defaults", "print every config key with its default value",
         [](const Config&) { return cmd_defaults(); }, false);
    wire("selftest", "seeded run of the library property suites", cmd_selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        Config cfg;
        if (!config_path.empty())
            apply_config_file(cfg, config_path);
        for (const auto& assignment : overrides)
            apply_override(cfg, assignment);
        if (!out_dir_flag.empty())
            cfg.set("out_dir", out_dir_flag);
        return runner(cfg);
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
