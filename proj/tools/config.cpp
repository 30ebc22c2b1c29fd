#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdio>
#include <sstream>

namespace warm::cli {

void check(warm_status status, const std::string& context) {
  if (status == WARM_OK) return;
  int code = kExitInternal;
  switch (status) {
    case WARM_ERR_INVALID_ARGUMENT:
    case WARM_ERR_PARSE: code = kExitConfig; break;
    case WARM_ERR_NOT_CONVERGED:
    case WARM_ERR_RESAMPLE_CAP: code = kExitNotConverged; break;
    case WARM_ERR_IO: code = kExitIo; break;
    default: break;
  }
  throw CliError(code, context + ": " + warm_last_error());
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) throw CliError(kExitConfig, "bad list element '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CliError(kExitConfig, "empty list");
  return out;
}

template std::vector<double> parse_list<double>(const std::string&);
template std::vector<std::uint64_t> parse_list<std::uint64_t>(const std::string&);

void ExperimentConfig::load_file(const std::string& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    const bool unreadable = std::string(e.message()).find("cannot open") != std::string::npos;
    throw CliError(unreadable ? kExitIo : kExitConfig, "config " + path + ": " + e.message());
  }
  try {
    auto get = [&](const char* key, auto& field) {
      if (tree.get_child_optional(key)) field = tree.get<std::decay_t<decltype(field)>>(key);
    };
    get("graph.spec", graph);
    get("model.alpha", alpha);
    get("model.override_strong_alpha", override_strong_alpha);
    get("sim.t_max", t_max);
    get("sim.t0", t0);
    get("sim.ratio", ratio);
    get("sim.threads", threads);
    get("sim.use_cache", use_cache);
    if (auto s = tree.get_optional<std::string>("sim.seeds")) seeds = parse_list<std::uint64_t>(*s);
    get("solver.tol", tol);
    get("solver.damping", damping);
    get("solver.max_iter", max_iter);
    get("solver.restarts", restarts);
    get("solver.seed", solver_seed);
    get("analysis.window_fraction", window_fraction);
    if (auto s = tree.get_optional<std::string>("analysis.delta_threshold"))
      delta_thresholds = parse_list<double>(*s);
    get("analysis.run", run_dir);
    get("analysis.mu", mu_path);
    get("bootstrap.delta", delta);
    if (tree.get_child_optional("bootstrap.a1")) a1 = tree.get<double>("bootstrap.a1");
    if (tree.get_child_optional("bootstrap.b1")) b1 = tree.get<double>("bootstrap.b1");
    get("bootstrap.auto", auto_bracket);
    get("bootstrap.max_iter", bootstrap_max_iter);
    get("bootstrap.tol", bootstrap_tol);
    get("verify.delta", delta);
    if (auto s = tree.get_optional<std::string>("verify.alphas")) alphas = parse_list<double>(*s);
    get("verify.step", step);
    get("verify.lower_step", lower_step);
    get("output.dir", out);
  } catch (const pt::ptree_bad_data& e) {
    throw CliError(kExitConfig, "config " + path + ": " + e.what());
  }
}

GraphHandle::GraphHandle(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "file") {
    check(warm_graph_from_file(rest.c_str(), &g_), "graph " + spec);
    return;
  }
  std::vector<std::uint64_t> args;
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      args.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CliError(kExitConfig, "graph spec '" + spec + "': bad number '" + item + "'");
    }
  }
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw CliError(kExitConfig, "graph spec '" + spec + "' needs " + std::to_string(n) + " parameters");
  };
  warm_status st;
  if (kind == "cycle") {
    need(1);
    st = warm_graph_cycle(args[0], &g_);
  } else if (kind == "torus") {
    need(2);
    st = warm_graph_torus(args[0], args[1], &g_);
  } else if (kind == "regular") {
    need(3);
    st = warm_graph_random_regular(args[0], args[1], args[2], &g_);
  } else if (kind == "star") {
    need(1);
    st = warm_graph_star(args[0], &g_);
  } else if (kind == "path") {
    need(1);
    st = warm_graph_path(args[0], &g_);
  } else {
    throw CliError(kExitConfig, "unknown graph kind '" + kind + "' (cycle, torus, regular, star, path, file)");
  }
  check(st, "graph " + spec);
}

nlohmann::json GraphHandle::summary() const {
  char* text = nullptr;
  check(warm_graph_summary_json(g_, &text), "graph summary");
  auto j = nlohmann::json::parse(text);
  warm_string_free(text);
  return j;
}

std::string content_hash(const nlohmann::json& j) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace warm::cli
