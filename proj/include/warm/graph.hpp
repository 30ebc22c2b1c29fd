#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace warm {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  VertexId u;
  VertexId v;

  bool touches(VertexId w) const { return u == w || v == w; }
  bool shares_vertex(const Edge& o) const { return touches(o.u) || touches(o.v); }
};

/// Finite simple graph with indexed edges. The per-vertex incidence order is
/// fixed at construction; the dynamics use it to lay out the mark partition
/// of [0, 1], so it must never change.
class Graph {
 public:
  /// Validates on construction: no loops, no duplicate edges, endpoints in range.
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return incidence_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t max_degree() const { return max_degree_; }
  bool is_regular() const { return regular_; }

  const Edge& edge(EdgeId e) const;
  std::span<const Edge> edges() const { return edges_; }
  std::span<const EdgeId> incident(VertexId v) const;
  std::size_t degree(VertexId v) const { return incident(v).size(); }

  /// Re-checks every structural invariant; throws warm::Error on violation.
  void validate() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
  std::size_t max_degree_ = 0;
  bool regular_ = false;
};

Graph build_cycle(std::size_t n);
Graph build_torus(std::size_t dim, std::size_t side);
Graph build_path(std::size_t edge_count);
Graph build_star(std::size_t leaves);

/// Pairing model with rejection of loops and multi-edges. Throws
/// Errc::kResampleCap when no simple pairing is found within max_attempts.
Graph build_random_regular(std::size_t n, std::size_t degree, std::uint64_t seed,
                           std::size_t max_attempts = 100000);

/// One "u v" pair per line; '#' starts a comment line. Sparse ids are
/// compacted to 0..k-1 in ascending order of the original id.
Graph build_from_edge_list(std::string_view text);

/// Edges sharing at least one endpoint with e, e included. Sorted ascending.
std::vector<EdgeId> edge_neighborhood(const Graph& g, EdgeId e);

}  // namespace warm
