#include "warm/dynamics.hpp"

#include <cmath>
#include <string>

#include "warm/error.hpp"

namespace warm {

void SnapshotSeries::check_next(double t, std::size_t edges) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw invalid_argument("snapshot time must be positive and finite");
  if (!records_.empty()) {
    if (!(t > records_.back().t)) throw invalid_argument("snapshot times must be strictly increasing");
    if (edges != records_.front().x.size()) throw invalid_argument("snapshot edge count mismatch");
  }
}

void SnapshotSeries::append(double t, std::span<const std::int64_t> weights) {
  check_next(t, weights.size());
  SnapshotRecord r;
  r.t = t;
  r.weights.assign(weights.begin(), weights.end());
  r.x.reserve(weights.size());
  for (std::int64_t w : weights) r.x.push_back(static_cast<double>(w) / t);
  records_.push_back(std::move(r));
}

void SnapshotSeries::append_x(double t, std::vector<double> x) {
  check_next(t, x.size());
  for (double v : x)
    if (!(v >= 0.0)) throw invalid_argument("normalized weights must be nonnegative");
  records_.push_back({t, std::move(x), {}});
}

void SimConfig::validate() const {
  if (!std::isfinite(alpha) || alpha < 0.0) throw invalid_argument("alpha must be a finite value >= 0");
  if (alpha >= 1.0 && !allow_strong_alpha)
    throw invalid_argument("alpha = " + std::to_string(alpha) +
                           " is outside the weak-reinforcement regime alpha < 1; "
                           "pass the strong-alpha override to simulate it anyway");
  if (!std::isfinite(t_max) || t_max < 0.0) throw invalid_argument("t_max must be finite and >= 0");
  double prev = 0.0;
  for (double s : snapshot_times) {
    if (!(s > prev)) throw invalid_argument("snapshot times must be strictly increasing and positive");
    if (s > t_max) throw invalid_argument("snapshot time beyond t_max");
    prev = s;
  }
}

WeightState init_state(const Graph& g) {
  WeightState s;
  s.weights.assign(g.edge_count(), 1);
  return s;
}

std::vector<double> selection_probabilities(const WeightState& state, const Graph& g, VertexId v,
                                            double alpha) {
  const auto inc = g.incident(v);
  if (inc.empty()) throw invalid_argument("vertex " + std::to_string(v) + " is isolated");
  std::vector<double> p;
  p.reserve(inc.size());
  double total = 0.0;
  for (EdgeId e : inc) {
    p.push_back(std::pow(static_cast<double>(state.weights[e]), alpha));
    total += p.back();
  }
  for (double& x : p) x /= total;
  return p;
}

EdgeId select_edge(const WeightState& state, const Graph& g, VertexId v, double alpha, double mark) {
  const auto inc = g.incident(v);
  if (inc.empty()) throw invalid_argument("vertex " + std::to_string(v) + " is isolated");
  if (inc.size() == 1) return inc.front();
  double total = 0.0;
  for (EdgeId e : inc) total += std::pow(static_cast<double>(state.weights[e]), alpha);
  double cumulative = 0.0;
  for (EdgeId e : inc) {
    cumulative += std::pow(static_cast<double>(state.weights[e]), alpha) / total;
    if (mark <= cumulative) return e;
  }
  return inc.back();  // cumulative sum rounded below 1
}

FiredEvent step(WeightState& state, const Graph& g, double alpha, Rng& rng) {
  FiredEvent ev;
  ev.dt = rng.exponential(static_cast<double>(g.vertex_count()));
  state.t += ev.dt;
  ev.vertex = rng.below(g.vertex_count());
  const double mark = rng.uniform01();
  if (g.degree(ev.vertex) == 0) return ev;
  const EdgeId e = select_edge(state, g, ev.vertex, alpha, mark);
  ++state.weights[e];
  ++state.event_count;
  ev.edge = e;
  return ev;
}

std::vector<double> normalized_weights(const WeightState& state) {
  if (!(state.t > 0.0)) throw invalid_argument("normalized weights need t > 0");
  std::vector<double> x;
  x.reserve(state.weights.size());
  for (std::int64_t w : state.weights) x.push_back(static_cast<double>(w) / state.t);
  return x;
}

std::vector<double> dyadic_schedule(double t0, double ratio, double t_max) {
  if (!(t0 > 0.0) || !(ratio > 1.0) || !std::isfinite(t_max))
    throw invalid_argument("schedule needs t0 > 0, ratio > 1 and finite t_max");
  std::vector<double> out;
  for (int j = 0;; ++j) {
    const double t = t0 * std::pow(ratio, j);
    if (t > t_max) break;
    out.push_back(t);
  }
  if (t_max > 0.0 && (out.empty() || out.back() < t_max)) out.push_back(t_max);
  return out;
}

Simulator::Simulator(const Graph& g, SimConfig cfg) : Simulator(g, std::move(cfg), init_state(g)) {}

Simulator::Simulator(const Graph& g, SimConfig cfg, WeightState initial)
    : graph_(&g), config_(std::move(cfg)), state_(std::move(initial)), rng_(config_.seed) {
  config_.validate();
  if (state_.weights.size() != g.edge_count()) throw invalid_argument("state does not match graph edge count");
  if (config_.snapshot_times.empty() && config_.t_max > 0.0) config_.snapshot_times = {config_.t_max};
  while (next_snapshot_ < config_.snapshot_times.size() && config_.snapshot_times[next_snapshot_] <= state_.t)
    ++next_snapshot_;
  if (config_.use_cache) {
    edge_power_.resize(g.edge_count());
    vertex_sum_.assign(g.vertex_count(), 0.0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      edge_power_[e] = std::pow(static_cast<double>(state_.weights[e]), config_.alpha);
      vertex_sum_[g.edge(e).u] += edge_power_[e];
      vertex_sum_[g.edge(e).v] += edge_power_[e];
    }
  }
  next_event_ = state_.t + rng_.exponential(static_cast<double>(g.vertex_count()));
}

Simulator Simulator::resume(const Graph& g, const Checkpoint& cp) {
  Simulator sim(g, cp.config, cp.state);
  sim.rng_.set_state(cp.rng_state);
  sim.next_event_ = cp.next_event_time;
  sim.next_snapshot_ = cp.next_snapshot;
  sim.series_ = cp.series;
  if (sim.next_event_ < sim.state_.t)
    throw invalid_argument("checkpoint next event precedes its clock");
  return sim;
}

Checkpoint Simulator::checkpoint() const {
  Checkpoint cp;
  cp.config = config_;
  cp.state = state_;
  cp.rng_state = rng_.state();
  cp.next_event_time = next_event_;
  cp.next_snapshot = next_snapshot_;
  cp.series = series_;
  return cp;
}

double Simulator::cached_vertex_sum(VertexId v) const {
  if (!config_.use_cache) throw invalid_argument("simulator was built without the cache");
  return vertex_sum_.at(v);
}

EdgeId Simulator::select_cached(VertexId v, double mark) const {
  const auto inc = graph_->incident(v);
  if (inc.size() == 1) return inc.front();
  const double total = vertex_sum_[v];
  double cumulative = 0.0;
  for (EdgeId e : inc) {
    cumulative += edge_power_[e] / total;
    if (mark <= cumulative) return e;
  }
  return inc.back();
}

void Simulator::fire(VertexId, EdgeId e) {
  ++state_.weights[e];
  ++state_.event_count;
  if (config_.use_cache) {
    const double updated = std::pow(static_cast<double>(state_.weights[e]), config_.alpha);
    const double diff = updated - edge_power_[e];
    edge_power_[e] = updated;
    vertex_sum_[graph_->edge(e).u] += diff;
    vertex_sum_[graph_->edge(e).v] += diff;
  }
}

FiredEvent Simulator::step() {
  FiredEvent ev;
  ev.dt = next_event_ - state_.t;
  state_.t = next_event_;
  ev.vertex = rng_.below(graph_->vertex_count());
  const double mark = rng_.uniform01();
  if (graph_->degree(ev.vertex) > 0) {
    const EdgeId e = config_.use_cache ? select_cached(ev.vertex, mark)
                                       : select_edge(state_, *graph_, ev.vertex, config_.alpha, mark);
    fire(ev.vertex, e);
    ev.edge = e;
  }
  next_event_ += rng_.exponential(static_cast<double>(graph_->vertex_count()));
  return ev;
}

void Simulator::run_until(double t_stop) {
  t_stop = std::min(t_stop, config_.t_max);
  const auto& times = config_.snapshot_times;
  for (;;) {
    const bool snapshot = next_snapshot_ < times.size() && times[next_snapshot_] <= t_stop;
    const double target = snapshot ? times[next_snapshot_] : t_stop;
    while (next_event_ <= target) step();
    if (target > state_.t) state_.t = target;
    if (!snapshot) break;
    series_.append(target, state_.weights);
    ++next_snapshot_;
  }
}

SnapshotSeries run(WeightState& state, const Graph& g, const SimConfig& cfg) {
  cfg.validate();
  if (cfg.t_max == 0.0) return {};
  Simulator sim(g, cfg, state);
  sim.run();
  state = sim.state();
  return sim.series();
}

}  // namespace warm
