#include "hchain/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "hchain/version.hpp"

namespace hchain {

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("io: cannot open " + path + " for writing");
    return out;
}

void write_header(std::ofstream& out, const Metadata& meta) {
    out << "# generator = hchain " << version << '\n';
    for (const auto& [key, value] : meta)
        out << "# " << key << " = " << value << '\n';
}

std::string hash_hex(std::uint64_t h) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v)
            break;
    }
    return buf;
}

void write_covariance_csv(const std::string& path, const Eigen::MatrixXd& gamma,
                          const Metadata& meta) {
    auto out = open_or_throw(path);
    write_header(out, meta);
    for (Eigen::Index i = 0; i < gamma.rows(); ++i) {
        for (Eigen::Index j = 0; j < gamma.cols(); ++j) {
            if (j > 0)
                out << ',';
            out << format_double(gamma(i, j));
        }
        out << '\n';
    }
}

void write_negativity_csv(const std::string& path, const std::vector<NegativityRow>& rows,
                          const Metadata& meta) {
    auto out = open_or_throw(path);
    write_header(out, meta);
    out << "t,site_a,site_b,nu_minus,log_negativity\n";
    for (const auto& row : rows)
        out << format_double(row.t) << ',' << row.site_a << ',' << row.site_b << ','
            << format_double(row.nu_minus) << ',' << format_double(row.log_neg) << '\n';
}

void write_map_csv(const std::string& path, const PropagationMap& map, const Metadata& meta) {
    auto out = open_or_throw(path);
    write_header(out, meta);
    out << "t,distance,log_negativity\n";
    for (std::size_t i = 0; i < map.times.size(); ++i)
        for (std::size_t j = 0; j < map.distances.size(); ++j)
            out << format_double(map.times[i]) << ',' << map.distances[j] << ','
                << format_double(map.en(static_cast<Eigen::Index>(i),
                                        static_cast<Eigen::Index>(j)))
                << '\n';
}

void write_anglescan_csv(const std::string& path, const AngleScanResult& scan,
                         const Metadata& meta) {
    auto out = open_or_throw(path);
    write_header(out, meta);
    out << "theta_odd,theta_even,log_negativity\n";
    for (std::size_t i = 0; i < scan.theta.size(); ++i)
        for (std::size_t j = 0; j < scan.theta.size(); ++j)
            out << format_double(scan.theta[i]) << ',' << format_double(scan.theta[j]) << ','
                << format_double(scan.en(static_cast<Eigen::Index>(i),
                                         static_cast<Eigen::Index>(j)))
                << '\n';
}

void write_anglescan_json(const std::string& path, const AngleScanResult& scan,
                          const std::optional<RegimeIndicator>& regime) {
    nlohmann::ordered_json j;
    j["generator"] = std::string("hchain ") + version;
    j["max_log_negativity"] = scan.max_en;
    j["argmax"] = {{"theta_odd", scan.theta[scan.argmax_odd]},
                   {"theta_even", scan.theta[scan.argmax_even]}};
    j["threshold"] = scan.threshold;
    auto& set = j["maximal_set"];
    set = nlohmann::json::array();
    for (const auto& [i, k] : scan.maximal_set)
        set.push_back({scan.theta[i], scan.theta[k]});
    if (regime) {
        j["regime"] = {{"lhs", regime->lhs},
                       {"rhs", regime->rhs},
                       {"label", regime_name(regime->regime)}};
    }
    auto out = open_or_throw(path);
    out << j.dump(2) << '\n';
}

void write_arrival_json(const std::string& path, const ArrivalFit& fit) {
    nlohmann::ordered_json j;
    j["generator"] = std::string("hchain ") + version;
    j["coupling"] = fit.coupling;
    j["vmax"] = fit.vmax;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["inverse_vmax"] = 1.0 / fit.vmax;
    j["inverse_2vmax"] = 1.0 / (2.0 * fit.vmax);
    j["distances"] = fit.distances;
    j["arrival_times"] = fit.arrival_times;
    auto out = open_or_throw(path);
    out << j.dump(2) << '\n';
}

void write_trace_jsonl(const std::string& path, const std::vector<TraceRow>& trace) {
    auto out = open_or_throw(path);
    for (const auto& row : trace) {
        nlohmann::ordered_json j;
        j["iter"] = row.iter;
        j["cost"] = row.cost;
        j["step"] = row.step;
        j["grad_norm"] = row.grad_norm;
        j["schedule_hash"] = hash_hex(row.schedule_hash);
        j["halvings"] = row.halvings;
        out << j.dump() << '\n';
    }
}

void write_optimize_json(const std::string& path, const OptimizeResult& result) {
    nlohmann::ordered_json j;
    j["generator"] = std::string("hchain ") + version;
    switch (result.status) {
    case OptimizeStatus::converged: j["status"] = "converged"; break;
    case OptimizeStatus::max_iter: j["status"] = "max_iter"; break;
    case OptimizeStatus::diverged: j["status"] = "diverged"; break;
    }
    j["final_cost"] = result.final_cost;
    j["iterations"] = result.trace.empty() ? 0 : result.trace.back().iter;
    j["schedule_hash"] =
        hash_hex(schedule_hash(result.schedule.times(), result.schedule.values()));
    auto out = open_or_throw(path);
    out << j.dump(2) << '\n';
}

void write_config_json(const std::string& path, const Metadata& entries) {
    nlohmann::ordered_json j;
    for (const auto& [key, value] : entries)
        j[key] = value;
    auto out = open_or_throw(path);
    out << j.dump(2) << '\n';
}

} // namespace hchain
