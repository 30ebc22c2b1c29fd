#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "warm/warm.h"

namespace warm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitNotConverged = 3,
  kExitIo = 4,
};

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

/// Throws CliError carrying the exit code that matches a failed C API call.
void check(warm_status status, const std::string& context);

struct ExperimentConfig {
  // [graph]
  std::string graph = "torus:2:20";
  // [model]
  double alpha = 0.4;
  bool override_strong_alpha = false;
  // [sim]
  double t_max = 1e4;
  std::vector<std::uint64_t> seeds = {1};
  double t0 = 1.0;
  double ratio = 2.0;
  unsigned threads = 0;  // 0: hardware concurrency
  bool use_cache = false;
  // [solver]
  double tol = 1e-12;
  double damping = 0.5;
  std::size_t max_iter = 100000;
  std::size_t restarts = 0;
  std::uint64_t solver_seed = 0;
  // [analysis]
  double window_fraction = 0.5;
  std::vector<double> delta_thresholds = {0.5};
  std::string run_dir;
  std::string mu_path;
  // [bootstrap]
  std::size_t delta = 2;
  std::optional<double> a1;
  std::optional<double> b1;
  bool auto_bracket = false;
  std::size_t bootstrap_max_iter = 200;
  double bootstrap_tol = 1e-8;
  // [verify]
  std::vector<double> alphas;
  double step = 0.01;
  double lower_step = 0.001;
  // [output]
  std::string out = "out";

  /// Overlays values found in an INI-style file (sections as above).
  void load_file(const std::string& path);
};

/// Owning wrapper around a graph handle built from "cycle:N", "torus:D:N",
/// "regular:N:DELTA:SEED", "star:L", "path:E" or "file:PATH".
class GraphHandle {
 public:
  explicit GraphHandle(const std::string& spec);
  ~GraphHandle() { warm_graph_free(g_); }
  GraphHandle(const GraphHandle&) = delete;
  GraphHandle& operator=(const GraphHandle&) = delete;

  const warm_graph* get() const { return g_; }
  std::size_t edge_count() const { return warm_graph_edge_count(g_); }
  nlohmann::json summary() const;

 private:
  warm_graph* g_ = nullptr;
};

template <class T>
std::vector<T> parse_list(const std::string& text);

/// 16 hex digits of FNV-1a over the compact JSON dump.
std::string content_hash(const nlohmann::json& j);

}  // namespace warm::cli
