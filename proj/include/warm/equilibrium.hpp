#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "warm/error.hpp"
#include "warm/graph.hpp"

namespace warm {

struct EquilibriumVector {
  std::vector<double> mu;
  double residual = 0.0;  // sup_e |mu(e) - T(mu)(e)|
};

/// T(mu)(e) = sum over endpoints v of e of mu(e)^alpha / sum_{e' at v} mu(e')^alpha.
/// Requires mu(e) > 0 everywhere and 0 <= alpha < 1.
std::vector<double> apply_T(std::span<const double> mu, const Graph& g, double alpha);

struct CompactBounds {
  double lower;
  double upper;
};

/// The box [2 * delta^(-1/(1-alpha)), 2] that T maps into itself.
CompactBounds compact_set_bounds(std::size_t max_degree, double alpha);

struct SolverOptions {
  double tol = 1e-12;
  std::size_t max_iter = 100000;
  double damping = 0.5;
  std::size_t restarts = 0;      // extra runs from random points of the box
  std::uint64_t seed = 0;        // seeds the restart points
  double agreement_tol = 1e-8;   // sup-distance under which restarts "agree"
};

struct SolveReport {
  EquilibriumVector equilibrium;
  std::size_t iterations = 0;
  bool in_compact_set = false;
  std::size_t restarts_run = 0;
  double restart_max_distance = 0.0;  // max pairwise sup-distance over all found fixed points
  bool restarts_agree = true;
  std::vector<double> residual_history;
};

/// Thrown when damped iteration does not reach the tolerance.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, std::vector<double> last_iterate, std::vector<double> residual_history)
      : Error(Errc::kNotConverged, what),
        last_iterate_(std::move(last_iterate)),
        residual_history_(std::move(residual_history)) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  const std::vector<double>& residual_history() const { return residual_history_; }

 private:
  std::vector<double> last_iterate_;
  std::vector<double> residual_history_;
};

/// Damped iteration mu <- (1 - damping) mu + damping T(mu) from the midpoint
/// of the compact box, stopped once sup|mu - T(mu)| <= tol.
SolveReport solve_fixed_point(const Graph& g, double alpha, const SolverOptions& opts = {});

/// Same iteration from a caller-supplied start.
SolveReport solve_fixed_point_from(const Graph& g, double alpha, std::vector<double> start,
                                   const SolverOptions& opts);

struct Verification {
  bool ok = false;
  double residual = 0.0;
};

Verification verify_equilibrium(std::span<const double> mu, const Graph& g, double alpha, double tol);

double sup_distance(std::span<const double> a, std::span<const double> b);

}  // namespace warm
