#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mekler {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;  // stored with first < second

// Finite simple graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  // Throws InputError on self-loops or out-of-range endpoints. Duplicate
  // edges (in either orientation) collapse to one.
  Graph(std::size_t vertex_count, const std::vector<Edge>& edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::set<Edge>& edges() const { return edges_; }

  bool adjacent(Vertex u, Vertex v) const { return adj_[u * n_ + v]; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return nbrs_[v]; }
  std::size_t degree(Vertex v) const { return nbrs_[v].size(); }

  // Unordered non-adjacent pairs {i<j}, lexicographic.
  std::vector<Edge> non_edges() const;

  // Subgraph induced on `keep`; vertex k of the result is keep[k].
  Graph induced(const std::vector<Vertex>& keep) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::set<Edge> edges_;
  std::vector<bool> adj_;
  std::vector<std::vector<Vertex>> nbrs_;
};

namespace violation {
struct TooSmall {};
struct NoSeparator {
  Vertex v1, v2;
};
struct Triangle {
  Vertex u, v, w;
};
// 4-cycle u-v-w-x-u.
struct Square {
  Vertex u, v, w, x;
};
}  // namespace violation

using NicenessViolation =
    std::variant<violation::TooSmall, violation::NoSeparator,
                 violation::Triangle, violation::Square>;

struct NicenessReport {
  bool nice = false;
  std::optional<NicenessViolation> violation;

  std::string describe() const;
};

// Clauses are checked in the order: size, triangles, squares, separators.
// Within each clause the first witness in lexicographic order is reported.
NicenessReport is_nice(const Graph& g);

struct CoverReport {
  bool is_cover = false;
  std::optional<Vertex> offending_vertex;
  std::string reason;
};

// Finite-adapted cover test: every vertex outside `c_vertices` is isolated in
// gamma or has exactly one neighbour a, with a in c_vertices and a of degree
// at least `neighbor_threshold` inside the induced subgraph on c_vertices.
CoverReport is_cover(const Graph& gamma, const std::vector<Vertex>& c_vertices,
                     std::size_t neighbor_threshold);

// A bijection phi with {u,v} in E(g1) iff {phi(u),phi(v)} in E(g2).
// Result[u] = phi(u). Deterministic backtracking with degree pruning.
std::optional<std::vector<Vertex>> graph_isomorphic(const Graph& g1,
                                                    const Graph& g2);

Graph make_cycle(std::size_t n);
Graph make_path(std::size_t n);
Graph make_complete(std::size_t n);
Graph make_petersen();

// Random graph of girth at least 5 with maximum degree `degree_bound`.
// Niceness is not guaranteed.
Graph random_girth5(std::size_t n, std::size_t degree_bound,
                    std::uint64_t seed);

}  // namespace mekler
