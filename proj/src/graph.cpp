#include "warm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "warm/error.hpp"
#include "warm/rng.hpp"

namespace warm {

namespace {

std::pair<VertexId, VertexId> key(const Edge& e) { return std::minmax(e.u, e.v); }

}  // namespace

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : edges_(std::move(edges)), incidence_(vertex_count) {
  if (vertex_count == 0) throw invalid_argument("graph needs at least one vertex");
  std::set<std::pair<VertexId, VertexId>> seen;
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.u >= vertex_count || e.v >= vertex_count)
      throw invalid_argument("edge " + std::to_string(id) + " has an endpoint out of range");
    if (e.u == e.v) throw invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (!seen.insert(key(e)).second)
      throw invalid_argument("duplicate edge {" + std::to_string(e.u) + ", " + std::to_string(e.v) + "}");
    incidence_[e.u].push_back(id);
    incidence_[e.v].push_back(id);
  }
  std::size_t min_degree = incidence_.front().size();
  for (const auto& inc : incidence_) {
    max_degree_ = std::max(max_degree_, inc.size());
    min_degree = std::min(min_degree, inc.size());
  }
  regular_ = max_degree_ > 0 && min_degree == max_degree_;
}

const Edge& Graph::edge(EdgeId e) const {
  if (e >= edges_.size()) throw invalid_argument("edge id " + std::to_string(e) + " out of range");
  return edges_[e];
}

std::span<const EdgeId> Graph::incident(VertexId v) const {
  if (v >= incidence_.size()) throw invalid_argument("vertex id " + std::to_string(v) + " out of range");
  return incidence_[v];
}

void Graph::validate() const {
  auto fail = [](const std::string& m) { throw Error(Errc::kInternal, "graph invariant violated: " + m); };
  std::set<std::pair<VertexId, VertexId>> seen;
  std::vector<std::size_t> hits(edges_.size(), 0);
  for (const Edge& e : edges_) {
    if (e.u == e.v) fail("self-loop");
    if (!seen.insert(key(e)).second) fail("duplicate edge");
  }
  std::size_t true_max = 0;
  std::size_t true_min = incidence_.empty() ? 0 : incidence_.front().size();
  for (VertexId v = 0; v < incidence_.size(); ++v) {
    true_max = std::max(true_max, incidence_[v].size());
    true_min = std::min(true_min, incidence_[v].size());
    for (EdgeId id : incidence_[v]) {
      if (id >= edges_.size() || !edges_[id].touches(v)) fail("incidence list of " + std::to_string(v));
      ++hits[id];
    }
  }
  for (std::size_t h : hits)
    if (h != 2) fail("edge not listed at exactly its two endpoints");
  if (true_max != max_degree_) fail("max_degree");
  if (regular_ && true_min != max_degree_) fail("regular flag");
}

Graph build_cycle(std::size_t n) {
  if (n < 3) throw invalid_argument("cycle needs n >= 3");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph(n, std::move(edges));
}

Graph build_torus(std::size_t dim, std::size_t side) {
  if (dim < 1) throw invalid_argument("torus needs dimension >= 1");
  if (side < 3) throw invalid_argument("torus needs side >= 3");
  std::size_t count = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (count > (std::size_t{1} << 32) / side) throw invalid_argument("torus too large");
    count *= side;
  }
  std::vector<Edge> edges;
  edges.reserve(dim * count);
  for (VertexId v = 0; v < count; ++v) {
    std::size_t stride = 1;
    for (std::size_t k = 0; k < dim; ++k) {
      const std::size_t coord = (v / stride) % side;
      const VertexId w = v - coord * stride + ((coord + 1) % side) * stride;
      edges.push_back({v, w});
      stride *= side;
    }
  }
  return Graph(count, std::move(edges));
}

Graph build_path(std::size_t edge_count) {
  if (edge_count < 1) throw invalid_argument("path needs at least one edge");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edge_count; ++i) edges.push_back({i, i + 1});
  return Graph(edge_count + 1, std::move(edges));
}

Graph build_star(std::size_t leaves) {
  if (leaves < 1) throw invalid_argument("star needs at least one leaf");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Graph(leaves + 1, std::move(edges));
}

Graph build_random_regular(std::size_t n, std::size_t degree, std::uint64_t seed,
                           std::size_t max_attempts) {
  if (degree >= n) throw invalid_argument("random regular graph needs degree < n");
  if ((n * degree) % 2 != 0) throw invalid_argument("n * degree must be even");
  if (degree == 0) throw invalid_argument("degree must be positive");
  Rng rng(seed);
  std::vector<VertexId> points(n * degree);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = i / degree;
    for (std::size_t i = points.size() - 1; i > 0; --i) std::swap(points[i], points[rng.below(i + 1)]);

    std::set<std::pair<VertexId, VertexId>> seen;
    std::vector<Edge> edges;
    edges.reserve(points.size() / 2);
    bool simple = true;
    for (std::size_t i = 0; i < points.size(); i += 2) {
      Edge e{points[i], points[i + 1]};
      if (e.u == e.v || !seen.insert(key(e)).second) {
        simple = false;
        break;
      }
      edges.push_back(e);
    }
    if (simple) return Graph(n, std::move(edges));
  }
  throw Error(Errc::kResampleCap, "no simple pairing found in " + std::to_string(max_attempts) + " attempts");
}

Graph build_from_edge_list(std::string_view text) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    auto skip_ws = [&] {
      while (!line.empty() && (line.front() == ' ' || line.front() == '\t' || line.front() == '\r'))
        line.remove_prefix(1);
    };
    skip_ws();
    if (line.empty() || line.front() == '#') continue;

    std::uint64_t ids[2];
    for (auto& id : ids) {
      skip_ws();
      auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), id);
      if (ec != std::errc{})
        throw Error(Errc::kParse, "line " + std::to_string(line_no) + ": expected two nonnegative integers");
      line.remove_prefix(static_cast<std::size_t>(ptr - line.data()));
    }
    skip_ws();
    if (!line.empty())
      throw Error(Errc::kParse, "line " + std::to_string(line_no) + ": trailing characters");
    if (ids[0] == ids[1])
      throw invalid_argument("line " + std::to_string(line_no) + ": self-loop at vertex " + std::to_string(ids[0]));
    raw.emplace_back(ids[0], ids[1]);
  }
  if (raw.empty()) throw Error(Errc::kParse, "edge list contains no edges");

  std::map<std::uint64_t, VertexId> compact;
  for (auto [u, v] : raw) {
    compact.emplace(u, 0);
    compact.emplace(v, 0);
  }
  VertexId next = 0;
  for (auto& [id, index] : compact) index = next++;

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.push_back({compact[u], compact[v]});
  return Graph(compact.size(), std::move(edges));
}

std::vector<EdgeId> edge_neighborhood(const Graph& g, EdgeId e) {
  const Edge& ed = g.edge(e);
  std::vector<EdgeId> out;
  for (VertexId end : {ed.u, ed.v})
    for (EdgeId f : g.incident(end)) out.push_back(f);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace warm
