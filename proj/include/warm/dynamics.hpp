#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "warm/graph.hpp"
#include "warm/rng.hpp"
#include "warm/series.hpp"

namespace warm {

struct WeightState {
  double t = 0.0;
  std::vector<std::int64_t> weights;
  std::uint64_t event_count = 0;

  friend bool operator==(const WeightState&, const WeightState&) = default;
};

struct SimConfig {
  double alpha = 0.5;
  double t_max = 1.0;
  std::uint64_t seed = 0;
  /// Strictly increasing times in (0, t_max]. Empty means one snapshot at t_max.
  std::vector<double> snapshot_times;
  /// Permits alpha >= 1 (strong reinforcement, outside the homogenization regime).
  bool allow_strong_alpha = false;
  /// Keeps per-edge N^alpha and per-vertex sums incrementally instead of
  /// recomputing them at each firing. Changes roundoff, hence trajectories.
  bool use_cache = false;

  void validate() const;
};

struct FiredEvent {
  double dt = 0.0;
  VertexId vertex = 0;
  std::optional<EdgeId> edge;  // empty when an isolated vertex fires
};

WeightState init_state(const Graph& g);

/// pol_{v,e} for e in incident(v), in incidence order.
std::vector<double> selection_probabilities(const WeightState& state, const Graph& g, VertexId v,
                                            double alpha);

/// Maps a mark u in [0, 1) through the cumulative partition of [0, 1] built
/// from the selection probabilities at v (intervals are (c_{i-1}, c_i]).
EdgeId select_edge(const WeightState& state, const Graph& g, VertexId v, double alpha, double mark);

/// One event of the superposed clock: Exp(|V|) holding time, uniform vertex,
/// uniform mark. RNG draws happen in exactly that order.
FiredEvent step(WeightState& state, const Graph& g, double alpha, Rng& rng);

std::vector<double> normalized_weights(const WeightState& state);

/// t0 * ratio^j for all j >= 0 with value <= t_max, followed by t_max itself
/// if the geometric sequence does not land on it.
std::vector<double> dyadic_schedule(double t0, double ratio, double t_max);

/// Everything needed to continue a run bit-identically.
struct Checkpoint {
  static constexpr int kVersion = 1;
  SimConfig config;
  WeightState state;
  std::string rng_state;
  double next_event_time = 0.0;
  std::size_t next_snapshot = 0;
  SnapshotSeries series;
};

/// Sequential trajectory of the urn network. The next event time is always
/// drawn one event ahead, so stopping at an arbitrary clock time and
/// resuming from a checkpoint reproduces the unbroken trajectory exactly.
class Simulator {
 public:
  Simulator(const Graph& g, SimConfig cfg);
  Simulator(const Graph& g, SimConfig cfg, WeightState initial);
  static Simulator resume(const Graph& g, const Checkpoint& cp);

  FiredEvent step();
  /// Fires every event with time <= t_stop and records snapshots on the way.
  void run_until(double t_stop);
  void run() { run_until(config_.t_max); }

  const WeightState& state() const { return state_; }
  const SnapshotSeries& series() const { return series_; }
  const SimConfig& config() const { return config_; }
  const Graph& graph() const { return *graph_; }
  double next_event_time() const { return next_event_; }
  Checkpoint checkpoint() const;

  /// Incrementally maintained sum of N^alpha at v (cache mode only).
  double cached_vertex_sum(VertexId v) const;

 private:
  void fire(VertexId v, EdgeId e);
  EdgeId select_cached(VertexId v, double mark) const;

  const Graph* graph_;
  SimConfig config_;
  WeightState state_;
  Rng rng_;
  double next_event_ = 0.0;
  std::size_t next_snapshot_ = 0;
  SnapshotSeries series_;
  std::vector<double> edge_power_;
  std::vector<double> vertex_sum_;
};

/// Runs a fresh RNG stream seeded from cfg.seed on the given state.
SnapshotSeries run(WeightState& state, const Graph& g, const SimConfig& cfg);

}  // namespace warm
