#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hchain/anglescan.hpp"
#include "hchain/oct.hpp"
#include "hchain/propagation.hpp"
#include "hchain/squeezing.hpp"

namespace hchain {

/// Key-value pairs written as "# key = value" lines ahead of CSV data.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Shortest text representation of a double that round-trips exactly. All
/// writers below use it, so identical inputs give byte-identical files.
std::string format_double(double v);

/// Dense matrix, one CSV row per matrix row.
void write_covariance_csv(const std::string& path, const Eigen::MatrixXd& gamma,
                          const Metadata& meta);

struct NegativityRow {
    double t = 0.0;
    std::size_t site_a = 0;
    std::size_t site_b = 0;
    double nu_minus = 1.0;
    double log_neg = 0.0;
};

void write_negativity_csv(const std::string& path, const std::vector<NegativityRow>& rows,
                          const Metadata& meta);

/// Long format: t, distance, log_negativity.
void write_map_csv(const std::string& path, const PropagationMap& map, const Metadata& meta);

/// Long format: theta_odd, theta_even, log_negativity.
void write_anglescan_csv(const std::string& path, const AngleScanResult& scan,
                         const Metadata& meta);

/// JSON summary of a scan: maximum, its location, and the near-maximal set
/// (as angle pairs), plus the regime indicator when one is supplied.
void write_anglescan_json(const std::string& path, const AngleScanResult& scan,
                          const std::optional<RegimeIndicator>& regime);

void write_arrival_json(const std::string& path, const ArrivalFit& fit);

/// One JSON object per line, one line per accepted optimizer iteration.
void write_trace_jsonl(const std::string& path, const std::vector<TraceRow>& trace);

/// Final cost, status, and iteration count of an optimizer run.
void write_optimize_json(const std::string& path, const OptimizeResult& result);

/// Resolved configuration echo as a flat JSON object (all values strings).
void write_config_json(const std::string& path, const Metadata& entries);

} // namespace hchain
