#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "warm/graph.hpp"
#include "warm/series.hpp"

namespace warm {

/// Strict inequalities in the grid checks must clear this margin.
inline constexpr double kGuardBand = 1e-12;

/// f(r, s) = 2 r^alpha / (r^alpha + (delta - 1) s^alpha), delta >= 2.
double bootstrap_f(double r, double s, double alpha, std::size_t delta);

struct BoundSequence {
  double alpha = 0.0;
  std::size_t delta = 0;
  std::vector<std::pair<double, double>> bounds;  // (a_i, b_i), i = 1, 2, ...
  bool converged = false;

  /// Number of updates applied, i.e. bounds.size() - 1.
  std::size_t iterations() const { return bounds.empty() ? 0 : bounds.size() - 1; }
};

/// a_{i+1} = max(a_i, f(a_i, b_i)), b_{i+1} = min(b_i, f(b_i, a_i)) until
/// b - a <= tol or max_iter updates. Needs 0 < a1 <= 2/delta <= b1.
BoundSequence bootstrap_sequence(double alpha, std::size_t delta, double a1, double b1, std::size_t max_iter,
                                 double tol);

/// Starting bracket (2 delta^(-1/(1-alpha)), 2). For delta = 2 the lower end
/// equals 2^(-alpha/(1-alpha)).
std::pair<double, double> auto_bracket(double alpha, std::size_t delta);

/// f(a,b) > a or f(b,a) < b, for 0 < a < 2/delta < b < 2.
bool improvement_check(double a, double b, double alpha, std::size_t delta);

/// f(a, 2) > a.
bool lower_threshold_check(double a, double alpha, std::size_t delta);

/// delta^(-1/(1-alpha)) * 2^(k(l-1) - k * sum_{i=2..l} alpha^i).
double a_kl(unsigned k, unsigned l, double alpha, std::size_t delta);

struct GridPoint {
  double a;
  double b;
  bool pass;
};

struct GridReport {
  std::size_t delta = 0;
  double alpha = 0.0;
  std::vector<GridPoint> points;
  std::size_t passed = 0;

  bool all_pass() const { return passed == points.size(); }
  std::optional<GridPoint> first_failure() const;
};

/// improvement_check on a = k*step < 2/delta, 2/delta < b = m*step < 2.
GridReport improvement_grid(std::size_t delta, double alpha, double step);

/// lower_threshold_check on a = k*step < 2 delta^(-1/(1-alpha)); b is fixed at 2.
GridReport lower_threshold_grid(std::size_t delta, double alpha, double step);

/// Largest alpha in the list whose improvement grid passes completely.
std::optional<double> alpha_max_pass(std::size_t delta, std::span<const double> alphas, double step);

struct LimitEstimate {
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::vector<double> x_minus;  // min of X_t over the window, per edge
  std::vector<double> x_plus;   // max of X_t over the window, per edge
};

/// Window is [window_fraction * t_end, t_end]; it must hold >= 2 snapshots.
LimitEstimate estimate_limits(const SnapshotSeries& series, double window_fraction);

/// Edges e with min over the neighborhood of e of x_minus(e') / mu(e') below
/// delta_threshold. Sorted ascending.
std::vector<EdgeId> classify_stability(const LimitEstimate& est, std::span<const double> mu, const Graph& g,
                                       double delta_threshold);

/// Sizes (in edges) of the components of the unstable edges, two edges being
/// adjacent when they share a vertex. Sorted descending.
std::vector<std::size_t> unstable_components(const Graph& g, std::span<const EdgeId> unstable);

/// D(t_j) = max_e |x_j(e) / mu(e) - 1| for each snapshot.
std::vector<double> convergence_report(const SnapshotSeries& series, std::span<const double> mu);

}  // namespace warm
