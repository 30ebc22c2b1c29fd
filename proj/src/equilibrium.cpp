#include "warm/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "warm/io.hpp"
#include "warm/rng.hpp"

namespace warm {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw invalid_argument("equilibrium operator needs 0 <= alpha < 1");
}

double residual_of(std::span<const double> mu, std::span<const double> t_mu) { return sup_distance(mu, t_mu); }

bool inside(std::span<const double> mu, CompactBounds box) {
  constexpr double kSlack = 1e-12;
  return std::all_of(mu.begin(), mu.end(),
                     [&](double m) { return m >= box.lower - kSlack && m <= box.upper + kSlack; });
}

}  // namespace

std::vector<double> apply_T(std::span<const double> mu, const Graph& g, double alpha) {
  check_alpha(alpha);
  if (mu.size() != g.edge_count()) throw invalid_argument("mu length does not match edge count");
  for (std::size_t e = 0; e < mu.size(); ++e)
    if (!(mu[e] > 0.0)) throw invalid_argument("mu(" + std::to_string(e) + ") must be positive");

  std::vector<double> power(mu.size());
  for (std::size_t e = 0; e < mu.size(); ++e) power[e] = std::pow(mu[e], alpha);
  std::vector<double> vertex_sum(g.vertex_count(), 0.0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (EdgeId e : g.incident(v)) vertex_sum[v] += power[e];

  std::vector<double> out(mu.size());
  for (EdgeId e = 0; e < mu.size(); ++e) {
    const Edge& ed = g.edge(e);
    out[e] = power[e] / vertex_sum[ed.u] + power[e] / vertex_sum[ed.v];
  }
  return out;
}

CompactBounds compact_set_bounds(std::size_t max_degree, double alpha) {
  if (max_degree < 1) throw invalid_argument("max degree must be >= 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw invalid_argument("compact set needs 0 <= alpha < 1");
  return {2.0 * std::pow(static_cast<double>(max_degree), -1.0 / (1.0 - alpha)), 2.0};
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw invalid_argument("vector length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Verification verify_equilibrium(std::span<const double> mu, const Graph& g, double alpha, double tol) {
  const auto t_mu = apply_T(mu, g, alpha);
  const double r = residual_of(mu, t_mu);
  return {r <= tol, r};
}

SolveReport solve_fixed_point_from(const Graph& g, double alpha, std::vector<double> mu,
                                   const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw invalid_argument("tol must be positive");
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) throw invalid_argument("damping must lie in (0, 1]");
  const CompactBounds box = compact_set_bounds(std::max<std::size_t>(g.max_degree(), 1), alpha);

  SolveReport report;
  for (std::size_t it = 0;; ++it) {
    const auto t_mu = apply_T(mu, g, alpha);
    const double r = residual_of(mu, t_mu);
    report.residual_history.push_back(r);
    if (r <= opts.tol) {
      report.iterations = it;
      report.equilibrium = {std::move(mu), r};
      break;
    }
    if (it == opts.max_iter || !std::isfinite(r))
      throw SolverFailure("fixed-point iteration did not reach tol " + io::format_double(opts.tol) + " in " +
                              std::to_string(opts.max_iter) + " iterations (residual " + io::format_double(r) + ")",
                          std::move(mu), std::move(report.residual_history));
    for (std::size_t e = 0; e < mu.size(); ++e) mu[e] = (1.0 - opts.damping) * mu[e] + opts.damping * t_mu[e];
  }

  report.in_compact_set = inside(report.equilibrium.mu, box);
  if (!report.in_compact_set) throw Error(Errc::kInternal, "solver left the invariant box");
  return report;
}

SolveReport solve_fixed_point(const Graph& g, double alpha, const SolverOptions& opts) {
  const CompactBounds box = compact_set_bounds(std::max<std::size_t>(g.max_degree(), 1), alpha);
  SolveReport report =
      solve_fixed_point_from(g, alpha, std::vector<double>(g.edge_count(), 0.5 * (box.lower + box.upper)), opts);

  if (opts.restarts > 0) {
    Rng rng(opts.seed);
    std::vector<std::vector<double>> found{report.equilibrium.mu};
    for (std::size_t k = 0; k < opts.restarts; ++k) {
      std::vector<double> start(g.edge_count());
      for (double& m : start) m = box.lower + (box.upper - box.lower) * rng.uniform01();
      found.push_back(solve_fixed_point_from(g, alpha, std::move(start), opts).equilibrium.mu);
    }
    for (std::size_t i = 0; i < found.size(); ++i)
      for (std::size_t j = i + 1; j < found.size(); ++j)
        report.restart_max_distance = std::max(report.restart_max_distance, sup_distance(found[i], found[j]));
    report.restarts_run = opts.restarts;
    report.restarts_agree = report.restart_max_distance <= opts.agreement_tol;
  }
  return report;
}

}  // namespace warm
