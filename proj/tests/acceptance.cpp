// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "warm/analysis.hpp"
#include "warm/dynamics.hpp"
#include "warm/equilibrium.hpp"
#include "warm/graph.hpp"
#include "warm/io.hpp"
#include "warm/rng.hpp"
#include "warm/warm.h"

using namespace warm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double sup_to_constant(const std::vector<double>& mu, double c) {
  double d = 0;
  for (double m : mu) d = std::max(d, std::abs(m - c));
  return d;
}

// Shared torus runs for the trend, rate, percolation and reproducibility checks.
constexpr double kTorusAlpha = 0.4;
constexpr double kTorusHorizon = 1e4;
const std::vector<std::uint64_t> kSeeds = {1, 2, 3};

std::vector<double> torus_schedule() {
  // Doubling times that hit both 100 and 10^4 (the horizon is appended).
  return dyadic_schedule(100.0 / 128.0, 2.0, kTorusHorizon);
}

struct TorusRuns {
  Graph g = build_torus(2, 20);
  std::vector<SnapshotSeries> series;
  double seconds = 0;
};

const TorusRuns& torus_runs() {
  static const TorusRuns runs = [] {
    TorusRuns r;
    const auto start = Clock::now();
    for (auto seed : kSeeds) {
      Simulator sim(r.g, {kTorusAlpha, kTorusHorizon, seed, torus_schedule(), false, false});
      sim.run();
      r.series.push_back(sim.series());
    }
    r.seconds = seconds_since(start);
    return r;
  }();
  return runs;
}

double deviation_at(const SnapshotSeries& s, const std::vector<double>& dev, double t) {
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[j].t == t) return dev[j];
  return NAN;
}

Outcome regular_equilibrium() {
  Outcome o;
  const struct {
    const char* name;
    Graph g;
    double expect;
  } cases[] = {{"cycle(100)", build_cycle(100), 1.0}, {"torus(20x20)", build_torus(2, 20), 0.5}};
  for (const auto& c : cases) {
    const auto start = Clock::now();
    const auto rep = solve_fixed_point(c.g, 0.4);
    const double secs = seconds_since(start);
    const double err = sup_to_constant(rep.equilibrium.mu, c.expect);
    o.pass = o.pass && err <= 1e-9 && secs < 1.0;
    o.detail += fmt("%s err=%.2e %.3fs; ", c.name, err, secs);
  }
  return o;
}

Outcome compact_set_stability() {
  const auto start = Clock::now();
  const Graph g = build_random_regular(50, 4, 20240601);
  const double alpha = 0.3;
  const auto box = compact_set_bounds(g.max_degree(), alpha);
  Rng rng(99);
  std::size_t violations = 0;
  std::vector<double> mu(g.edge_count());
  for (int trial = 0; trial < 1000; ++trial) {
    for (double& m : mu) m = box.lower + (box.upper - box.lower) * rng.uniform01();
    for (double v : apply_T(mu, g, alpha))
      if (v < box.lower || v > box.upper) ++violations;
  }
  const double secs = seconds_since(start);
  return {violations == 0 && secs < 5.0,
          fmt("box=[%.6f, 2] violations=%zu %.3fs", box.lower, violations, secs)};
}

Outcome homogenization_trend() {
  const auto& runs = torus_runs();
  const std::vector<double> mu(runs.g.edge_count(), 0.5);
  Outcome o;
  std::vector<double> late;
  for (std::size_t i = 0; i < kSeeds.size(); ++i) {
    const auto dev = convergence_report(runs.series[i], mu);
    const double d_early = deviation_at(runs.series[i], dev, 100.0);
    const double d_late = deviation_at(runs.series[i], dev, kTorusHorizon);
    o.pass = o.pass && d_late < d_early;
    late.push_back(d_late);
    o.detail += fmt("seed %llu D(1e2)=%.4f D(1e4)=%.4f; ", static_cast<unsigned long long>(kSeeds[i]), d_early, d_late);
  }
  std::sort(late.begin(), late.end());
  const double median = late[late.size() / 2];
  o.pass = o.pass && median < 0.1;
  o.detail += fmt("median D(1e4)=%.4f (%.1fs for 3 runs)", median, runs.seconds);
  return o;
}

Outcome rate_upper_bound() {
  const auto& runs = torus_runs();
  std::size_t violations = 0, checked = 0;
  double worst_margin = -INFINITY;
  for (const auto& s : runs.series)
    for (const auto& rec : s) {
      if (rec.t < 1e3) continue;
      ++checked;
      const double max_x = *std::max_element(rec.x.begin(), rec.x.end());
      const double bound = 2.0 + 10.0 / std::sqrt(rec.t);
      worst_margin = std::max(worst_margin, max_x - bound);
      if (max_x > bound) ++violations;
    }
  return {violations == 0 && checked > 0,
          fmt("snapshots=%zu violations=%zu max(X - bound)=%.4f", checked, violations, worst_margin)};
}

Outcome selection_law() {
  const auto start = Clock::now();
  const Graph star = build_star(3);
  WeightState state = init_state(star);
  state.weights = {1, 8, 27};
  const double alpha = 1.0 / 3.0;
  const VertexId center = 0;
  const auto p = selection_probabilities(state, star, center, alpha);
  const double expect[] = {1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0};
  Outcome o;
  for (int i = 0; i < 3; ++i) {
    o.pass = o.pass && std::abs(p[i] - expect[i]) <= 1e-15;
  }
  o.detail = fmt("p=(%.17g, %.17g, %.17g); ", p[0], p[1], p[2]);

  const int draws = 100000;
  std::vector<int> counts(3, 0);
  Rng rng(5);
  for (int k = 0; k < draws; ++k) {
    const EdgeId e = select_edge(state, star, center, alpha, rng.uniform01());
    ++counts[star.incident(center)[0] == e ? 0 : star.incident(center)[1] == e ? 1 : 2];
  }
  for (int i = 0; i < 3; ++i) {
    const double sigma = std::sqrt(draws * expect[i] * (1 - expect[i]));
    const double z = (counts[i] - draws * expect[i]) / sigma;
    o.pass = o.pass && std::abs(z) <= 3.0;
    o.detail += fmt("z%d=%+.2f ", i, z);
  }
  const double secs = seconds_since(start);
  o.pass = o.pass && secs < 1.0;
  o.detail += fmt("%.3fs", secs);
  return o;
}

Outcome bootstrap_contraction() {
  const auto start = Clock::now();
  Outcome o;
  for (double alpha : {0.3, 0.6, 0.9}) {
    const auto [a1, b1] = auto_bracket(alpha, 2);
    const auto seq = bootstrap_sequence(alpha, 2, a1, b1, 200, 1e-8);
    bool contraction = true;
    for (std::size_t i = 0; i + 1 < seq.bounds.size(); ++i) {
      const double r0 = seq.bounds[i].second / seq.bounds[i].first;
      const double r1 = seq.bounds[i + 1].second / seq.bounds[i + 1].first;
      if (r1 > std::pow(r0, alpha) * (1 + 1e-12)) contraction = false;
    }
    const auto& last = seq.bounds.back();
    const bool reached = seq.converged && last.second - last.first <= 1e-8 && seq.iterations() <= 200;
    o.pass = o.pass && contraction && reached;
    o.detail += fmt("alpha=%.1f iters=%zu gap=%.1e contraction=%s; ", alpha, seq.iterations(),
                    last.second - last.first, contraction ? "yes" : "no");
  }
  const double secs = seconds_since(start);
  o.pass = o.pass && secs < 0.1;
  o.detail += fmt("%.4fs", secs);
  return o;
}

Outcome grid_checks() {
  const auto start = Clock::now();
  Outcome o;
  const auto imp = improvement_grid(3, 0.51, 0.01);
  o.pass = imp.all_pass() && !imp.points.empty();
  o.detail = fmt("improvement D=3 a=0.51: %zu/%zu; ", imp.passed, imp.points.size());
  for (std::size_t delta : {2, 3, 4})
    for (double alpha : {0.3, 0.5}) {
      const auto low = lower_threshold_grid(delta, alpha, 0.001);
      o.pass = o.pass && low.all_pass() && !low.points.empty();
      o.detail += fmt("lower D=%zu a=%.1f: %zu/%zu; ", delta, alpha, low.passed, low.points.size());
    }
  const double secs = seconds_since(start);
  o.pass = o.pass && secs < 1.0;
  o.detail += fmt("%.3fs", secs);
  return o;
}

Outcome percolation() {
  const auto& runs = torus_runs();
  const std::vector<double> mu(runs.g.edge_count(), 0.5);
  Outcome o;
  for (std::size_t i = 0; i < kSeeds.size(); ++i) {
    const auto est = estimate_limits(runs.series[i], 0.5);
    const auto unstable = classify_stability(est, mu, runs.g, 0.5);
    const auto sizes = unstable_components(runs.g, unstable);
    const std::size_t largest = sizes.empty() ? 0 : sizes.front();
    o.pass = o.pass && largest <= 10;
    o.detail += fmt("seed %llu unstable=%zu largest=%zu; ", static_cast<unsigned long long>(kSeeds[i]),
                    unstable.size(), largest);
  }
  return o;
}

// Runs through the C API so the on-disk path is exercised end to end.
std::string c_api_run_csv(const warm_graph* g, std::uint64_t seed, const std::vector<double>& schedule,
                          const fs::path& csv, double checkpoint_at, const fs::path& checkpoint) {
  const warm_sim_config cfg{kTorusAlpha, kTorusHorizon, seed, schedule.data(), schedule.size(), 0, 0};
  warm_sim* sim = nullptr;
  auto ok = [](warm_status s) {
    if (s != WARM_OK) throw std::runtime_error(warm_last_error());
  };
  ok(warm_sim_create(g, &cfg, &sim));
  if (checkpoint_at > 0) {
    ok(warm_sim_run_until(sim, checkpoint_at));
    ok(warm_sim_save_checkpoint(sim, checkpoint.c_str()));
    warm_sim_free(sim);
    sim = nullptr;
    ok(warm_sim_resume(g, checkpoint.c_str(), &sim));
  }
  ok(warm_sim_run(sim));
  ok(warm_sim_write_snapshots_csv(sim, csv.c_str()));
  warm_sim_free(sim);
  return io::read_file(csv.string());
}

Outcome reproducibility() {
  const fs::path dir = fs::temp_directory_path() / "warm_acceptance_repro";
  fs::create_directories(dir);
  const auto schedule = torus_schedule();
  warm_graph* g = nullptr;
  if (warm_graph_torus(2, 20, &g) != WARM_OK) return {false, "cannot build torus"};
  Outcome o;
  try {
    for (std::size_t i = 0; i < kSeeds.size(); ++i) {
      const auto seed = kSeeds[i];
      const std::string tag = std::to_string(seed);
      const auto first = c_api_run_csv(g, seed, schedule, dir / ("a" + tag + ".csv"), 0, {});
      const auto second = c_api_run_csv(g, seed, schedule, dir / ("b" + tag + ".csv"), 0, {});
      const auto resumed =
          c_api_run_csv(g, seed, schedule, dir / ("c" + tag + ".csv"), 4321.5, dir / ("ck" + tag + ".json"));
      // The in-process runs used for the trend checks must agree with the file output too.
      std::ostringstream in_process;
      io::write_snapshots_csv(in_process, torus_runs().series[i]);
      const bool same = first == second, same_resume = first == resumed, same_core = first == in_process.str();
      o.pass = o.pass && same && same_resume && same_core && !first.empty();
      o.detail += fmt("seed %s rerun=%s resume=%s core=%s (%zu bytes); ", tag.c_str(), same ? "identical" : "DIFFERS",
                      same_resume ? "identical" : "DIFFERS", same_core ? "identical" : "DIFFERS", first.size());
    }
  } catch (const std::exception& e) {
    o = {false, e.what()};
  }
  warm_graph_free(g);
  fs::remove_all(dir);
  return o;
}

Outcome nonregular_equilibrium() {
  Outcome o;
  const struct {
    const char* name;
    Graph g;
    double expect;
  } cases[] = {{"path(2)", build_path(2), 1.5}, {"star(3)", build_star(3), 4.0 / 3.0}};
  for (double alpha : {0.4}) {
    for (const auto& c : cases) {
      const auto rep = solve_fixed_point(c.g, alpha);
      const double err = sup_to_constant(rep.equilibrium.mu, c.expect);
      const double residual = verify_equilibrium(rep.equilibrium.mu, c.g, alpha, 1e-12).residual;
      const std::vector<double> exact(c.g.edge_count(), c.expect);
      const double exact_residual = verify_equilibrium(exact, c.g, alpha, 1e-12).residual;
      o.pass = o.pass && err <= 1e-9 && residual < 1e-12 && exact_residual < 1e-12;
      o.detail += fmt("%s err=%.2e residual=%.2e exact-residual=%.2e; ", c.name, err, residual, exact_residual);
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"regular equilibrium (cycle -> 1, torus -> 1/2)", regular_equilibrium},
      {"T maps the compact box into itself", compact_set_stability},
      {"homogenization trend on the torus", homogenization_trend},
      {"rate upper bound max X <= 2 + 10/sqrt(t)", rate_upper_bound},
      {"selection law on star weights (1,8,27)", selection_law},
      {"bootstrap ratio contraction", bootstrap_contraction},
      {"improvement and lower-threshold grids", grid_checks},
      {"largest unstable component is small", percolation},
      {"reproducibility and checkpoint resume", reproducibility},
      {"non-regular equilibria (path, star)", nonregular_equilibrium},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
