#include "warm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "warm/error.hpp"

namespace warm {

namespace {

void check_delta(std::size_t delta) {
  if (delta < 2) throw invalid_argument("bootstrap function needs delta >= 2");
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw invalid_argument("alpha must lie in [0, 1)");
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

double bootstrap_f(double r, double s, double alpha, std::size_t delta) {
  check_delta(delta);
  if (!(r > 0.0) || !(s > 0.0)) throw invalid_argument("bootstrap function needs r, s > 0");
  const double ra = std::pow(r, alpha);
  return 2.0 * ra / (ra + static_cast<double>(delta - 1) * std::pow(s, alpha));
}

std::pair<double, double> auto_bracket(double alpha, std::size_t delta) {
  check_alpha(alpha);
  check_delta(delta);
  return {2.0 * std::pow(static_cast<double>(delta), -1.0 / (1.0 - alpha)), 2.0};
}

BoundSequence bootstrap_sequence(double alpha, std::size_t delta, double a1, double b1, std::size_t max_iter,
                                 double tol) {
  check_delta(delta);
  check_alpha(alpha);
  const double center = 2.0 / static_cast<double>(delta);
  if (!(a1 > 0.0 && a1 <= center && center <= b1))
    throw invalid_argument("bracket must satisfy 0 < a1 <= 2/delta <= b1");
  if (!(tol >= 0.0)) throw invalid_argument("tol must be >= 0");

  BoundSequence seq{alpha, delta, {{a1, b1}}, false};
  double a = a1;
  double b = b1;
  for (std::size_t i = 0;; ++i) {
    if (b - a <= tol) {
      seq.converged = true;
      break;
    }
    if (i == max_iter) break;
    const double a_next = std::max(a, bootstrap_f(a, b, alpha, delta));
    const double b_next = std::min(b, bootstrap_f(b, a, alpha, delta));
    a = a_next;
    b = b_next;
    seq.bounds.emplace_back(a, b);
  }
  return seq;
}

bool improvement_check(double a, double b, double alpha, std::size_t delta) {
  check_delta(delta);
  const double center = 2.0 / static_cast<double>(delta);
  if (!(a > 0.0 && a < center && center < b && b < 2.0))
    throw invalid_argument("improvement check needs 0 < a < 2/delta < b < 2");
  return bootstrap_f(a, b, alpha, delta) > a + kGuardBand || bootstrap_f(b, a, alpha, delta) < b - kGuardBand;
}

bool lower_threshold_check(double a, double alpha, std::size_t delta) {
  if (!(a > 0.0)) throw invalid_argument("lower threshold check needs a > 0");
  return bootstrap_f(a, 2.0, alpha, delta) > a + kGuardBand;
}

double a_kl(unsigned k, unsigned l, double alpha, std::size_t delta) {
  if (k < 1 || l < 1) throw invalid_argument("a_kl needs k, l >= 1");
  check_alpha(alpha);
  if (delta < 1) throw invalid_argument("a_kl needs delta >= 1");
  double alpha_sum = 0.0;
  double power = alpha;
  for (unsigned i = 2; i <= l; ++i) {
    power *= alpha;
    alpha_sum += power;
  }
  const double exponent = static_cast<double>(k) * (static_cast<double>(l) - 1.0) - static_cast<double>(k) * alpha_sum;
  return std::pow(static_cast<double>(delta), -1.0 / (1.0 - alpha)) * std::exp2(exponent);
}

std::optional<GridPoint> GridReport::first_failure() const {
  for (const auto& p : points)
    if (!p.pass) return p;
  return std::nullopt;
}

GridReport improvement_grid(std::size_t delta, double alpha, double step) {
  check_delta(delta);
  if (!(step > 0.0)) throw invalid_argument("grid step must be positive");
  const double center = 2.0 / static_cast<double>(delta);
  GridReport report{delta, alpha, {}, 0};
  for (std::size_t i = 1;; ++i) {
    const double a = static_cast<double>(i) * step;
    if (!(a < center)) break;
    for (std::size_t j = 1;; ++j) {
      const double b = static_cast<double>(j) * step;
      if (!(b < 2.0)) break;
      if (!(b > center)) continue;
      const bool ok = improvement_check(a, b, alpha, delta);
      report.points.push_back({a, b, ok});
      report.passed += ok;
    }
  }
  return report;
}

GridReport lower_threshold_grid(std::size_t delta, double alpha, double step) {
  check_delta(delta);
  check_alpha(alpha);
  if (!(step > 0.0)) throw invalid_argument("grid step must be positive");
  const double threshold = 2.0 * std::pow(static_cast<double>(delta), -1.0 / (1.0 - alpha));
  GridReport report{delta, alpha, {}, 0};
  for (std::size_t i = 1;; ++i) {
    const double a = static_cast<double>(i) * step;
    if (!(a < threshold)) break;
    const bool ok = lower_threshold_check(a, alpha, delta);
    report.points.push_back({a, 2.0, ok});
    report.passed += ok;
  }
  return report;
}

std::optional<double> alpha_max_pass(std::size_t delta, std::span<const double> alphas, double step) {
  std::optional<double> best;
  for (double alpha : alphas)
    if (improvement_grid(delta, alpha, step).all_pass() && (!best || alpha > *best)) best = alpha;
  return best;
}

LimitEstimate estimate_limits(const SnapshotSeries& series, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction < 1.0))
    throw invalid_argument("window fraction must lie in (0, 1)");
  if (series.empty()) throw invalid_argument("empty snapshot series");
  const double t_end = series.back().t;
  const double t_start = window_fraction * t_end;

  LimitEstimate est;
  std::size_t in_window = 0;
  for (const auto& rec : series) {
    if (rec.t < t_start) continue;
    if (in_window++ == 0) {
      est.t_lo = rec.t;
      est.x_minus = rec.x;
      est.x_plus = rec.x;
      continue;
    }
    for (std::size_t e = 0; e < rec.x.size(); ++e) {
      est.x_minus[e] = std::min(est.x_minus[e], rec.x[e]);
      est.x_plus[e] = std::max(est.x_plus[e], rec.x[e]);
    }
  }
  if (in_window < 2)
    throw invalid_argument("estimation window [" + std::to_string(t_start) + ", " + std::to_string(t_end) +
                           "] holds fewer than 2 snapshots");
  est.t_hi = t_end;
  return est;
}

std::vector<EdgeId> classify_stability(const LimitEstimate& est, std::span<const double> mu, const Graph& g,
                                       double delta_threshold) {
  if (!(delta_threshold > 0.0)) throw invalid_argument("stability threshold must be positive");
  if (est.x_minus.size() != g.edge_count() || mu.size() != g.edge_count())
    throw invalid_argument("estimate and equilibrium must cover every edge of the graph");
  std::vector<double> ratio(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!(mu[e] > 0.0)) throw invalid_argument("mu(" + std::to_string(e) + ") must be positive");
    ratio[e] = est.x_minus[e] / mu[e];
  }
  std::vector<EdgeId> unstable;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    double worst = ratio[e];
    for (EdgeId f : edge_neighborhood(g, e)) worst = std::min(worst, ratio[f]);
    if (worst < delta_threshold) unstable.push_back(e);
  }
  return unstable;
}

std::vector<std::size_t> unstable_components(const Graph& g, std::span<const EdgeId> unstable) {
  std::vector<char> marked(g.edge_count(), 0);
  for (EdgeId e : unstable) {
    g.edge(e);  // range check
    marked[e] = 1;
  }

  DisjointSets sets(g.edge_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::optional<EdgeId> first;
    for (EdgeId e : g.incident(v)) {
      if (!marked[e]) continue;
      if (first)
        sets.unite(*first, e);
      else
        first = e;
    }
  }
  std::vector<std::size_t> count(g.edge_count(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (marked[e]) ++count[sets.find(e)];
  std::vector<std::size_t> sizes;
  for (std::size_t c : count)
    if (c > 0) sizes.push_back(c);
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

std::vector<double> convergence_report(const SnapshotSeries& series, std::span<const double> mu) {
  for (std::size_t e = 0; e < mu.size(); ++e)
    if (mu[e] == 0.0) throw invalid_argument("mu(" + std::to_string(e) + ") is zero");
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& rec : series) {
    if (rec.x.size() != mu.size()) throw invalid_argument("snapshot does not cover every edge of mu");
    double d = 0.0;
    for (std::size_t e = 0; e < mu.size(); ++e) d = std::max(d, std::abs(rec.x[e] / mu[e] - 1.0));
    out.push_back(d);
  }
  return out;
}

}  // namespace warm
