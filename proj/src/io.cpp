#include "warm/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "warm/error.hpp"

namespace warm::io {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = line.find(sep);
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return out;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    f(line_no, line);
  }
}

template <class Int>
Int parse_int(std::string_view s, std::size_t line_no) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(Errc::kParse, "line " + std::to_string(line_no) + ": bad integer '" + std::string(s) + "'");
  return v;
}

double parse_double_at(std::string_view s, std::size_t line_no) {
  try {
    return parse_double(s);
  } catch (const Error& e) {
    throw Error(Errc::kParse, "line " + std::to_string(line_no) + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw Error(Errc::kInternal, "to_chars failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(Errc::kParse, "bad number '" + std::string(s) + "'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIo, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(Errc::kIo, "write failed for " + path);
}

void write_snapshots_csv(std::ostream& os, const SnapshotSeries& series) {
  os << "t,edge_id,weight,x\n";
  for (const auto& rec : series) {
    const std::string t = format_double(rec.t);
    for (std::size_t e = 0; e < rec.x.size(); ++e) {
      os << t << ',' << e << ',';
      if (!rec.weights.empty()) os << rec.weights[e];
      os << ',' << format_double(rec.x[e]) << '\n';
    }
  }
}

SnapshotSeries read_snapshots_csv(std::string_view text) {
  SnapshotSeries series;
  bool header = true;
  double current_t = 0.0;
  std::vector<double> x;
  std::vector<std::int64_t> w;
  bool have_weights = true;

  auto flush = [&] {
    if (x.empty()) return;
    if (have_weights)
      series.append(current_t, w);
    else
      series.append_x(current_t, x);
    x.clear();
    w.clear();
    have_weights = true;
  };

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (header) {
      if (line != "t,edge_id,weight,x") throw Error(Errc::kParse, "snapshot CSV header must be t,edge_id,weight,x");
      header = false;
      return;
    }
    const auto f = split(line, ',');
    if (f.size() != 4) throw Error(Errc::kParse, "line " + std::to_string(line_no) + ": expected 4 fields");
    const double t = parse_double_at(f[0], line_no);
    const auto edge = parse_int<std::size_t>(f[1], line_no);
    if (x.empty() || t != current_t) {
      flush();
      current_t = t;
    }
    if (edge != x.size())
      throw Error(Errc::kParse, "line " + std::to_string(line_no) + ": edge ids must run 0..E-1 per snapshot");
    x.push_back(parse_double_at(f[3], line_no));
    if (f[2].empty())
      have_weights = false;
    else
      w.push_back(parse_int<std::int64_t>(f[2], line_no));
  });
  if (header) throw Error(Errc::kParse, "snapshot CSV is empty");
  flush();
  return series;
}

void write_mu_csv(std::ostream& os, std::span<const double> mu) {
  os << "edge_id,mu\n";
  for (std::size_t e = 0; e < mu.size(); ++e) os << e << ',' << format_double(mu[e]) << '\n';
}

std::vector<double> read_mu_csv(std::string_view text) {
  std::vector<double> mu;
  bool header = true;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (header) {
      if (line != "edge_id,mu") throw Error(Errc::kParse, "equilibrium CSV header must be edge_id,mu");
      header = false;
      return;
    }
    const auto f = split(line, ',');
    if (f.size() != 2) throw Error(Errc::kParse, "line " + std::to_string(line_no) + ": expected 2 fields");
    if (parse_int<std::size_t>(f[0], line_no) != mu.size())
      throw Error(Errc::kParse, "line " + std::to_string(line_no) + ": edge ids must be consecutive from 0");
    mu.push_back(parse_double_at(f[1], line_no));
  });
  if (header) throw Error(Errc::kParse, "equilibrium CSV is empty");
  return mu;
}

void write_deviation_csv(std::ostream& os, std::span<const double> times, std::span<const double> deviation) {
  if (times.size() != deviation.size()) throw invalid_argument("times and deviations differ in length");
  os << "t,sup_deviation\n";
  for (std::size_t j = 0; j < times.size(); ++j) os << format_double(times[j]) << ',' << format_double(deviation[j]) << '\n';
}

nlohmann::json graph_summary(const Graph& g) {
  return {{"vertex_count", g.vertex_count()},
          {"edge_count", g.edge_count()},
          {"max_degree", g.max_degree()},
          {"regular", g.is_regular()}};
}

nlohmann::json checkpoint_to_json(const Checkpoint& cp) {
  using nlohmann::json;
  json series = json::array();
  for (const auto& rec : cp.series) series.push_back({{"t", rec.t}, {"weights", rec.weights}});
  return {
      {"version", Checkpoint::kVersion},
      {"config",
       {{"alpha", cp.config.alpha},
        {"t_max", cp.config.t_max},
        {"seed", cp.config.seed},
        {"snapshot_times", cp.config.snapshot_times},
        {"allow_strong_alpha", cp.config.allow_strong_alpha},
        {"use_cache", cp.config.use_cache}}},
      {"t", cp.state.t},
      {"event_count", cp.state.event_count},
      {"weights", cp.state.weights},
      {"rng_state", cp.rng_state},
      {"next_event_time", cp.next_event_time},
      {"next_snapshot", cp.next_snapshot},
      {"series", std::move(series)},
  };
}

Checkpoint checkpoint_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("version").get<int>() != Checkpoint::kVersion)
      throw Error(Errc::kParse, "unsupported checkpoint version");
    Checkpoint cp;
    const auto& c = doc.at("config");
    cp.config.alpha = c.at("alpha").get<double>();
    cp.config.t_max = c.at("t_max").get<double>();
    cp.config.seed = c.at("seed").get<std::uint64_t>();
    cp.config.snapshot_times = c.at("snapshot_times").get<std::vector<double>>();
    cp.config.allow_strong_alpha = c.at("allow_strong_alpha").get<bool>();
    cp.config.use_cache = c.at("use_cache").get<bool>();
    cp.state.t = doc.at("t").get<double>();
    cp.state.event_count = doc.at("event_count").get<std::uint64_t>();
    cp.state.weights = doc.at("weights").get<std::vector<std::int64_t>>();
    cp.rng_state = doc.at("rng_state").get<std::string>();
    cp.next_event_time = doc.at("next_event_time").get<double>();
    cp.next_snapshot = doc.at("next_snapshot").get<std::size_t>();
    for (const auto& rec : doc.at("series"))
      cp.series.append(rec.at("t").get<double>(), rec.at("weights").get<std::vector<std::int64_t>>());
    return cp;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kParse, std::string("malformed checkpoint: ") + e.what());
  }
}

}  // namespace warm::io
