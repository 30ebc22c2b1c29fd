#include "warm/warm.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "warm/analysis.hpp"
#include "warm/dynamics.hpp"
#include "warm/equilibrium.hpp"
#include "warm/error.hpp"
#include "warm/graph.hpp"
#include "warm/io.hpp"

struct warm_graph {
  std::shared_ptr<const warm::Graph> graph;
};

struct warm_sim {
  std::shared_ptr<const warm::Graph> graph;  // declared first: outlives sim
  warm::Simulator sim;
};

struct warm_series {
  warm::SnapshotSeries series;
};

namespace {

thread_local std::string g_last_error;

warm_status to_status(warm::Errc c) {
  switch (c) {
    case warm::Errc::kInvalidArgument: return WARM_ERR_INVALID_ARGUMENT;
    case warm::Errc::kParse: return WARM_ERR_PARSE;
    case warm::Errc::kNotConverged: return WARM_ERR_NOT_CONVERGED;
    case warm::Errc::kIo: return WARM_ERR_IO;
    case warm::Errc::kResampleCap: return WARM_ERR_RESAMPLE_CAP;
    case warm::Errc::kInternal: return WARM_ERR_INTERNAL;
  }
  return WARM_ERR_INTERNAL;
}

warm_status fail(warm_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
warm_status guarded(F&& f) noexcept {
  try {
    return f();
  } catch (const warm::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(WARM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WARM_ERR_INVALID_ARGUMENT, e.what());
  } catch (...) {
    return fail(WARM_ERR_INTERNAL, "unknown failure");
  }
}

#define WARM_REQUIRE(cond)                                                      \
  do {                                                                          \
    if (!(cond)) return fail(WARM_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

warm_status make_graph(warm::Graph g, warm_graph** out) {
  *out = new warm_graph{std::make_shared<const warm::Graph>(std::move(g))};
  return WARM_OK;
}

warm_status too_small(size_t need, size_t* len) {
  if (len) *len = need;
  return fail(WARM_ERR_INVALID_ARGUMENT, "output buffer too small, need " + std::to_string(need));
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* warm_version(void) { return "1.0.0"; }
const char* warm_last_error(void) { return g_last_error.c_str(); }
void warm_string_free(char* s) { std::free(s); }

const char* warm_status_name(warm_status status) {
  switch (status) {
    case WARM_OK: return "ok";
    case WARM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case WARM_ERR_PARSE: return "parse error";
    case WARM_ERR_NOT_CONVERGED: return "not converged";
    case WARM_ERR_IO: return "I/O error";
    case WARM_ERR_RESAMPLE_CAP: return "resampling cap exceeded";
    case WARM_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

// ---- graphs ----

warm_status warm_graph_cycle(size_t n, warm_graph** out) {
  WARM_REQUIRE(out);
  return guarded([&] { return make_graph(warm::build_cycle(n), out); });
}

warm_status warm_graph_torus(size_t dim, size_t side, warm_graph** out) {
  WARM_REQUIRE(out);
  return guarded([&] { return make_graph(warm::build_torus(dim, side), out); });
}

warm_status warm_graph_path(size_t edges, warm_graph** out) {
  WARM_REQUIRE(out);
  return guarded([&] { return make_graph(warm::build_path(edges), out); });
}

warm_status warm_graph_star(size_t leaves, warm_graph** out) {
  WARM_REQUIRE(out);
  return guarded([&] { return make_graph(warm::build_star(leaves), out); });
}

warm_status warm_graph_random_regular(size_t n, size_t degree, uint64_t seed, warm_graph** out) {
  WARM_REQUIRE(out);
  return guarded([&] { return make_graph(warm::build_random_regular(n, degree, seed), out); });
}

warm_status warm_graph_from_edge_list(const char* text, warm_graph** out) {
  WARM_REQUIRE(text && out);
  return guarded([&] { return make_graph(warm::build_from_edge_list(text), out); });
}

warm_status warm_graph_from_file(const char* path, warm_graph** out) {
  WARM_REQUIRE(path && out);
  return guarded([&] { return make_graph(warm::build_from_edge_list(warm::io::read_file(path)), out); });
}

void warm_graph_free(warm_graph* g) { delete g; }

size_t warm_graph_vertex_count(const warm_graph* g) { return g ? g->graph->vertex_count() : 0; }
size_t warm_graph_edge_count(const warm_graph* g) { return g ? g->graph->edge_count() : 0; }
size_t warm_graph_max_degree(const warm_graph* g) { return g ? g->graph->max_degree() : 0; }
int warm_graph_is_regular(const warm_graph* g) { return g && g->graph->is_regular() ? 1 : 0; }

warm_status warm_graph_edge(const warm_graph* g, size_t e, size_t* u, size_t* v) {
  WARM_REQUIRE(g && u && v);
  return guarded([&] {
    const auto& ed = g->graph->edge(e);
    *u = ed.u;
    *v = ed.v;
    return WARM_OK;
  });
}

warm_status warm_graph_edge_neighborhood(const warm_graph* g, size_t e, size_t* out, size_t cap, size_t* len) {
  WARM_REQUIRE(g && len);
  return guarded([&] {
    const auto nb = warm::edge_neighborhood(*g->graph, e);
    if (cap < nb.size() || !out) return too_small(nb.size(), len);
    std::copy(nb.begin(), nb.end(), out);
    *len = nb.size();
    return WARM_OK;
  });
}

warm_status warm_graph_summary_json(const warm_graph* g, char** out) {
  WARM_REQUIRE(g && out);
  return guarded([&] {
    *out = dup_string(warm::io::graph_summary(*g->graph).dump());
    return WARM_OK;
  });
}

// ---- dynamics ----

warm_status warm_schedule_dyadic(double t0, double ratio, double t_max, double* out, size_t cap, size_t* len) {
  WARM_REQUIRE(len);
  return guarded([&] {
    const auto s = warm::dyadic_schedule(t0, ratio, t_max);
    if (cap < s.size() || !out) return too_small(s.size(), len);
    std::copy(s.begin(), s.end(), out);
    *len = s.size();
    return WARM_OK;
  });
}

warm_status warm_selection_probabilities(const warm_graph* g, const int64_t* weights, size_t n, size_t vertex,
                                         double alpha, double* out, size_t cap, size_t* len) {
  WARM_REQUIRE(g && weights && len);
  return guarded([&] {
    if (n != g->graph->edge_count()) return fail(WARM_ERR_INVALID_ARGUMENT, "weights length != edge count");
    warm::WeightState state;
    state.weights.assign(weights, weights + n);
    const auto p = warm::selection_probabilities(state, *g->graph, vertex, alpha);
    if (cap < p.size() || !out) return too_small(p.size(), len);
    std::copy(p.begin(), p.end(), out);
    *len = p.size();
    return WARM_OK;
  });
}

warm_status warm_sim_create(const warm_graph* g, const warm_sim_config* cfg, warm_sim** out) {
  WARM_REQUIRE(g && cfg && out);
  return guarded([&] {
    warm::SimConfig c;
    c.alpha = cfg->alpha;
    c.t_max = cfg->t_max;
    c.seed = cfg->seed;
    if (cfg->snapshot_times) c.snapshot_times.assign(cfg->snapshot_times, cfg->snapshot_times + cfg->snapshot_count);
    c.allow_strong_alpha = cfg->allow_strong_alpha != 0;
    c.use_cache = cfg->use_cache != 0;
    *out = new warm_sim{g->graph, warm::Simulator(*g->graph, std::move(c))};
    return WARM_OK;
  });
}

warm_status warm_sim_resume(const warm_graph* g, const char* checkpoint_path, warm_sim** out) {
  WARM_REQUIRE(g && checkpoint_path && out);
  return guarded([&] {
    const std::string text = warm::io::read_file(checkpoint_path);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      return fail(WARM_ERR_PARSE, std::string("checkpoint is not JSON: ") + e.what());
    }
    const auto cp = warm::io::checkpoint_from_json(doc);
    *out = new warm_sim{g->graph, warm::Simulator::resume(*g->graph, cp)};
    return WARM_OK;
  });
}

void warm_sim_free(warm_sim* sim) { delete sim; }

warm_status warm_sim_step(warm_sim* sim, double* dt, size_t* vertex, int64_t* edge) {
  WARM_REQUIRE(sim);
  return guarded([&] {
    const auto ev = sim->sim.step();
    if (dt) *dt = ev.dt;
    if (vertex) *vertex = ev.vertex;
    if (edge) *edge = ev.edge ? static_cast<int64_t>(*ev.edge) : -1;
    return WARM_OK;
  });
}

warm_status warm_sim_run_until(warm_sim* sim, double t_stop) {
  WARM_REQUIRE(sim);
  return guarded([&] {
    sim->sim.run_until(t_stop);
    return WARM_OK;
  });
}

warm_status warm_sim_run(warm_sim* sim) {
  WARM_REQUIRE(sim);
  return guarded([&] {
    sim->sim.run();
    return WARM_OK;
  });
}

double warm_sim_time(const warm_sim* sim) { return sim ? sim->sim.state().t : 0.0; }
uint64_t warm_sim_event_count(const warm_sim* sim) { return sim ? sim->sim.state().event_count : 0; }

warm_status warm_sim_weights(const warm_sim* sim, int64_t* out, size_t cap) {
  WARM_REQUIRE(sim && out);
  const auto& w = sim->sim.state().weights;
  if (cap < w.size()) return too_small(w.size(), nullptr);
  std::copy(w.begin(), w.end(), out);
  return WARM_OK;
}

warm_status warm_sim_save_checkpoint(const warm_sim* sim, const char* path) {
  WARM_REQUIRE(sim && path);
  return guarded([&] {
    warm::io::write_file(path, warm::io::checkpoint_to_json(sim->sim.checkpoint()).dump() + "\n");
    return WARM_OK;
  });
}

warm_status warm_sim_write_snapshots_csv(const warm_sim* sim, const char* path) {
  WARM_REQUIRE(sim && path);
  return guarded([&] {
    std::ostringstream os;
    warm::io::write_snapshots_csv(os, sim->sim.series());
    warm::io::write_file(path, os.str());
    return WARM_OK;
  });
}

warm_status warm_sim_series(const warm_sim* sim, warm_series** out) {
  WARM_REQUIRE(sim && out);
  return guarded([&] {
    *out = new warm_series{sim->sim.series()};
    return WARM_OK;
  });
}

// ---- series ----

warm_status warm_series_read_csv(const char* path, warm_series** out) {
  WARM_REQUIRE(path && out);
  return guarded([&] {
    *out = new warm_series{warm::io::read_snapshots_csv(warm::io::read_file(path))};
    return WARM_OK;
  });
}

void warm_series_free(warm_series* s) { delete s; }
size_t warm_series_size(const warm_series* s) { return s ? s->series.size() : 0; }
size_t warm_series_edge_count(const warm_series* s) { return s ? s->series.edge_count() : 0; }

warm_status warm_series_snapshot(const warm_series* s, size_t j, double* t, double* x, size_t cap) {
  WARM_REQUIRE(s);
  if (j >= s->series.size()) return fail(WARM_ERR_INVALID_ARGUMENT, "snapshot index out of range");
  const auto& rec = s->series[j];
  if (t) *t = rec.t;
  if (x) {
    if (cap < rec.x.size()) return too_small(rec.x.size(), nullptr);
    std::copy(rec.x.begin(), rec.x.end(), x);
  }
  return WARM_OK;
}

// ---- equilibrium ----

warm_status warm_apply_T(const warm_graph* g, double alpha, const double* mu, double* out, size_t n) {
  WARM_REQUIRE(g && mu && out);
  return guarded([&] {
    const auto t = warm::apply_T({mu, n}, *g->graph, alpha);
    std::copy(t.begin(), t.end(), out);
    return WARM_OK;
  });
}

warm_status warm_compact_set_bounds(size_t max_degree, double alpha, double* lower, double* upper) {
  WARM_REQUIRE(lower && upper);
  return guarded([&] {
    const auto b = warm::compact_set_bounds(max_degree, alpha);
    *lower = b.lower;
    *upper = b.upper;
    return WARM_OK;
  });
}

void warm_solver_options_default(warm_solver_options* opts) {
  if (!opts) return;
  const warm::SolverOptions d;
  *opts = {d.tol, d.max_iter, d.damping, d.restarts, d.seed, d.agreement_tol};
}

warm_status warm_solve_equilibrium(const warm_graph* g, double alpha, const warm_solver_options* opts,
                                   double* mu_out, size_t n, warm_solver_report* report) {
  WARM_REQUIRE(g && mu_out && report);
  if (n != g->graph->edge_count()) return fail(WARM_ERR_INVALID_ARGUMENT, "mu buffer length != edge count");
  warm::SolverOptions o;
  if (opts) o = {opts->tol, opts->max_iter, opts->damping, opts->restarts, opts->seed, opts->agreement_tol};
  try {
    const auto r = warm::solve_fixed_point(*g->graph, alpha, o);
    std::copy(r.equilibrium.mu.begin(), r.equilibrium.mu.end(), mu_out);
    *report = {r.iterations,   r.equilibrium.residual, r.in_compact_set ? 1 : 0, r.restarts_run,
               r.restart_max_distance, r.restarts_agree ? 1 : 0};
    return WARM_OK;
  } catch (const warm::SolverFailure& e) {
    std::copy(e.last_iterate().begin(), e.last_iterate().end(), mu_out);
    *report = {};
    report->iterations = e.residual_history().empty() ? 0 : e.residual_history().size() - 1;
    report->residual = e.residual_history().empty() ? 0.0 : e.residual_history().back();
    return fail(WARM_ERR_NOT_CONVERGED, e.what());
  } catch (...) {
    return guarded([] () -> warm_status { throw; });
  }
}

warm_status warm_verify_equilibrium(const warm_graph* g, double alpha, const double* mu, size_t n, double tol,
                                    int* ok, double* residual) {
  WARM_REQUIRE(g && mu && ok && residual);
  return guarded([&] {
    const auto v = warm::verify_equilibrium({mu, n}, *g->graph, alpha, tol);
    *ok = v.ok ? 1 : 0;
    *residual = v.residual;
    return WARM_OK;
  });
}

warm_status warm_read_mu_csv(const char* path, double* out, size_t cap, size_t* len) {
  WARM_REQUIRE(path && len);
  return guarded([&] {
    const auto mu = warm::io::read_mu_csv(warm::io::read_file(path));
    if (cap < mu.size() || !out) return too_small(mu.size(), len);
    std::copy(mu.begin(), mu.end(), out);
    *len = mu.size();
    return WARM_OK;
  });
}

warm_status warm_write_mu_csv(const char* path, const double* mu, size_t n) {
  WARM_REQUIRE(path && mu);
  return guarded([&] {
    std::ostringstream os;
    warm::io::write_mu_csv(os, {mu, n});
    warm::io::write_file(path, os.str());
    return WARM_OK;
  });
}

// ---- analysis ----

warm_status warm_bootstrap_f(double r, double s, double alpha, size_t delta, double* out) {
  WARM_REQUIRE(out);
  return guarded([&] {
    *out = warm::bootstrap_f(r, s, alpha, delta);
    return WARM_OK;
  });
}

warm_status warm_auto_bracket(double alpha, size_t delta, double* a1, double* b1) {
  WARM_REQUIRE(a1 && b1);
  return guarded([&] {
    std::tie(*a1, *b1) = warm::auto_bracket(alpha, delta);
    return WARM_OK;
  });
}

warm_status warm_bootstrap_sequence(double alpha, size_t delta, double a1, double b1, size_t max_iter, double tol,
                                    double* a_out, double* b_out, size_t cap, size_t* len, int* converged) {
  WARM_REQUIRE(len && converged);
  return guarded([&] {
    const auto seq = warm::bootstrap_sequence(alpha, delta, a1, b1, max_iter, tol);
    if (cap < seq.bounds.size() || !a_out || !b_out) return too_small(seq.bounds.size(), len);
    for (size_t i = 0; i < seq.bounds.size(); ++i) {
      a_out[i] = seq.bounds[i].first;
      b_out[i] = seq.bounds[i].second;
    }
    *len = seq.bounds.size();
    *converged = seq.converged ? 1 : 0;
    return WARM_OK;
  });
}

warm_status warm_improvement_check(double a, double b, double alpha, size_t delta, int* out) {
  WARM_REQUIRE(out);
  return guarded([&] {
    *out = warm::improvement_check(a, b, alpha, delta) ? 1 : 0;
    return WARM_OK;
  });
}

warm_status warm_lower_threshold_check(double a, double alpha, size_t delta, int* out) {
  WARM_REQUIRE(out);
  return guarded([&] {
    *out = warm::lower_threshold_check(a, alpha, delta) ? 1 : 0;
    return WARM_OK;
  });
}

warm_status warm_a_kl(unsigned k, unsigned l, double alpha, size_t delta, double* out) {
  WARM_REQUIRE(out);
  return guarded([&] {
    *out = warm::a_kl(k, l, alpha, delta);
    return WARM_OK;
  });
}

warm_status warm_grid_check(warm_grid_kind kind, size_t delta, double alpha, double step, double* a, double* b,
                            int* pass, size_t cap, size_t* len, warm_grid_result* result) {
  WARM_REQUIRE(len && result);
  return guarded([&] {
    const auto rep = kind == WARM_GRID_IMPROVEMENT ? warm::improvement_grid(delta, alpha, step)
                                                   : warm::lower_threshold_grid(delta, alpha, step);
    *result = {rep.points.size(), rep.passed, 0, 0.0, 0.0};
    if (const auto w = rep.first_failure()) {
      result->has_witness = 1;
      result->witness_a = w->a;
      result->witness_b = w->b;
    }
    *len = rep.points.size();
    if (a || b || pass) {
      if (!a || !b || !pass || cap < rep.points.size()) return too_small(rep.points.size(), len);
      for (size_t i = 0; i < rep.points.size(); ++i) {
        a[i] = rep.points[i].a;
        b[i] = rep.points[i].b;
        pass[i] = rep.points[i].pass ? 1 : 0;
      }
    }
    return WARM_OK;
  });
}

warm_status warm_estimate_limits(const warm_series* s, double window_fraction, double* x_minus, double* x_plus,
                                 size_t n, double* t_lo, double* t_hi) {
  WARM_REQUIRE(s && x_minus && x_plus && t_lo && t_hi);
  return guarded([&] {
    const auto est = warm::estimate_limits(s->series, window_fraction);
    if (n < est.x_minus.size()) return too_small(est.x_minus.size(), nullptr);
    std::copy(est.x_minus.begin(), est.x_minus.end(), x_minus);
    std::copy(est.x_plus.begin(), est.x_plus.end(), x_plus);
    *t_lo = est.t_lo;
    *t_hi = est.t_hi;
    return WARM_OK;
  });
}

warm_status warm_classify_stability(const warm_graph* g, const double* x_minus, const double* mu, size_t n,
                                    double delta_threshold, size_t* unstable_out, size_t* count) {
  WARM_REQUIRE(g && x_minus && mu && unstable_out && count);
  return guarded([&] {
    warm::LimitEstimate est;
    est.x_minus.assign(x_minus, x_minus + n);
    const auto u = warm::classify_stability(est, {mu, n}, *g->graph, delta_threshold);
    std::copy(u.begin(), u.end(), unstable_out);
    *count = u.size();
    return WARM_OK;
  });
}

warm_status warm_unstable_components(const warm_graph* g, const size_t* unstable, size_t count, size_t* sizes_out,
                                     size_t* n_components) {
  WARM_REQUIRE(g && n_components && (count == 0 || (unstable && sizes_out)));
  return guarded([&] {
    std::vector<warm::EdgeId> ids(unstable, unstable + count);
    const auto sizes = warm::unstable_components(*g->graph, ids);
    std::copy(sizes.begin(), sizes.end(), sizes_out);
    *n_components = sizes.size();
    return WARM_OK;
  });
}

warm_status warm_convergence_report(const warm_series* s, const double* mu, size_t n, double* out, size_t cap) {
  WARM_REQUIRE(s && mu && out);
  return guarded([&] {
    const auto d = warm::convergence_report(s->series, {mu, n});
    if (cap < d.size()) return too_small(d.size(), nullptr);
    std::copy(d.begin(), d.end(), out);
    return WARM_OK;
  });
}

}  // extern "C"
