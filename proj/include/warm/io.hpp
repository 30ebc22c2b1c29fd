#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "warm/dynamics.hpp"
#include "warm/graph.hpp"
#include "warm/series.hpp"

namespace warm::io {

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);
double parse_double(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// "t,edge_id,weight,x", one row per (snapshot, edge).
void write_snapshots_csv(std::ostream& os, const SnapshotSeries& series);
SnapshotSeries read_snapshots_csv(std::string_view text);

/// "edge_id,mu".
void write_mu_csv(std::ostream& os, std::span<const double> mu);
std::vector<double> read_mu_csv(std::string_view text);

/// "t,sup_deviation".
void write_deviation_csv(std::ostream& os, std::span<const double> times, std::span<const double> deviation);

/// {vertex_count, edge_count, max_degree, regular}
nlohmann::json graph_summary(const Graph& g);

nlohmann::json checkpoint_to_json(const Checkpoint& cp);
Checkpoint checkpoint_from_json(const nlohmann::json& doc);

}  // namespace warm::io
