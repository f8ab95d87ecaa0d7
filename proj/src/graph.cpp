#include "mekler/graph.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

#include "mekler/errors.hpp"

namespace mekler {

Graph::Graph(std::size_t vertex_count, const std::vector<Edge>& edges)
    : n_(vertex_count), adj_(vertex_count * vertex_count, false),
      nbrs_(vertex_count) {
  for (auto [u, v] : edges) {
    if (u >= n_ || v >= n_) {
      throw InputError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                       "} has an endpoint outside 0.." +
                       std::to_string(n_ == 0 ? 0 : n_ - 1));
    }
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!edges_.insert({u, v}).second) continue;
    adj_[u * n_ + v] = adj_[v * n_ + u] = true;
    nbrs_[u].push_back(v);
    nbrs_[v].push_back(u);
  }
  for (auto& ns : nbrs_) std::sort(ns.begin(), ns.end());
}

std::vector<Edge> Graph::non_edges() const {
  std::vector<Edge> out;
  for (Vertex i = 0; i < n_; ++i) {
    for (Vertex j = i + 1; j < n_; ++j) {
      if (!adjacent(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

Graph Graph::induced(const std::vector<Vertex>& keep) const {
  std::vector<Edge> es;
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = a + 1; b < keep.size(); ++b) {
      if (adjacent(keep[a], keep[b])) es.emplace_back(a, b);
    }
  }
  return Graph(keep.size(), es);
}

std::string NicenessReport::describe() const {
  if (!violation) return "nice";
  std::ostringstream os;
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, violation::TooSmall>) {
          os << "TooSmall";
        } else if constexpr (std::is_same_v<T, violation::NoSeparator>) {
          os << "NoSeparator(" << v.v1 << "," << v.v2 << ")";
        } else if constexpr (std::is_same_v<T, violation::Triangle>) {
          os << "Triangle(" << v.u << "," << v.v << "," << v.w << ")";
        } else {
          os << "Square(" << v.u << "," << v.v << "," << v.w << "," << v.x
             << ")";
        }
      },
      *violation);
  return os.str();
}

namespace {

std::optional<violation::Triangle> find_triangle(const Graph& g) {
  const auto n = g.vertex_count();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (v <= u) continue;
      for (Vertex w : g.neighbors(v)) {
        if (w > v && g.adjacent(u, w)) return violation::Triangle{u, v, w};
      }
    }
  }
  return std::nullopt;
}

// First tuple (u,v,w,x) in lexicographic order with u-v-w-x-u a 4-cycle on
// distinct vertices.
std::optional<violation::Square> find_square(const Graph& g) {
  const auto n = g.vertex_count();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u)) {
      for (Vertex w : g.neighbors(v)) {
        if (w == u) continue;
        for (Vertex x : g.neighbors(w)) {
          if (x == u || x == v) continue;
          if (g.adjacent(x, u)) return violation::Square{u, v, w, x};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<violation::NoSeparator> find_unseparated(const Graph& g) {
  const auto n = g.vertex_count();
  for (Vertex v1 = 0; v1 < n; ++v1) {
    for (Vertex v2 = 0; v2 < n; ++v2) {
      if (v1 == v2) continue;
      const auto& ns = g.neighbors(v1);
      const bool separated = std::any_of(ns.begin(), ns.end(), [&](Vertex u) {
        return u != v2 && !g.adjacent(v2, u);
      });
      if (!separated) return violation::NoSeparator{v1, v2};
    }
  }
  return std::nullopt;
}

}  // namespace

NicenessReport is_nice(const Graph& g) {
  NicenessReport r;
  if (g.vertex_count() < 2) {
    r.violation = violation::TooSmall{};
  } else if (auto t = find_triangle(g)) {
    r.violation = *t;
  } else if (auto s = find_square(g)) {
    r.violation = *s;
  } else if (auto ns = find_unseparated(g)) {
    r.violation = *ns;
  }
  r.nice = !r.violation.has_value();
  return r;
}

CoverReport is_cover(const Graph& gamma, const std::vector<Vertex>& c_vertices,
                     std::size_t neighbor_threshold) {
  const auto n = gamma.vertex_count();
  std::vector<bool> in_c(n, false);
  for (Vertex v : c_vertices) {
    if (v >= n) {
      throw InputError("cover subset vertex " + std::to_string(v) +
                       " out of range");
    }
    if (in_c[v]) {
      throw InputError("cover subset repeats vertex " + std::to_string(v));
    }
    in_c[v] = true;
  }
  auto degree_in_c = [&](Vertex a) {
    const auto& ns = gamma.neighbors(a);
    return static_cast<std::size_t>(
        std::count_if(ns.begin(), ns.end(), [&](Vertex b) { return in_c[b]; }));
  };
  CoverReport r;
  for (Vertex b = 0; b < n; ++b) {
    if (in_c[b] || gamma.degree(b) == 0) continue;
    r.offending_vertex = b;
    if (gamma.degree(b) > 1) {
      r.reason = "vertex " + std::to_string(b) + " has " +
                 std::to_string(gamma.degree(b)) + " neighbours";
      return r;
    }
    const Vertex a = gamma.neighbors(b).front();
    if (!in_c[a]) {
      r.reason = "neighbour " + std::to_string(a) + " of vertex " +
                 std::to_string(b) + " lies outside the subgraph";
      return r;
    }
    if (degree_in_c(a) < neighbor_threshold) {
      r.reason = "neighbour " + std::to_string(a) + " of vertex " +
                 std::to_string(b) + " has degree " +
                 std::to_string(degree_in_c(a)) + " < " +
                 std::to_string(neighbor_threshold) + " in the subgraph";
      return r;
    }
  }
  r.offending_vertex.reset();
  r.is_cover = true;
  return r;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const Graph& g1, const Graph& g2)
      : g1_(g1), g2_(g2), map_(g1.vertex_count(), kUnset),
        used_(g2.vertex_count(), false) {
    // Visit g1 in BFS order so each new vertex tends to have mapped
    // neighbours to constrain it.
    const auto n = g1.vertex_count();
    std::vector<bool> seen(n, false);
    for (Vertex s = 0; s < n; ++s) {
      if (seen[s]) continue;
      std::deque<Vertex> q{s};
      seen[s] = true;
      while (!q.empty()) {
        const Vertex v = q.front();
        q.pop_front();
        order_.push_back(v);
        for (Vertex w : g1.neighbors(v)) {
          if (!seen[w]) {
            seen[w] = true;
            q.push_back(w);
          }
        }
      }
    }
  }

  std::optional<std::vector<Vertex>> run() {
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  static constexpr Vertex kUnset = static_cast<Vertex>(-1);

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const Vertex v = order_[depth];
    for (Vertex c = 0; c < g2_.vertex_count(); ++c) {
      if (used_[c] || g2_.degree(c) != g1_.degree(v)) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const Vertex u = order_[d];
        ok = g1_.adjacent(u, v) == g2_.adjacent(map_[u], c);
      }
      if (!ok) continue;
      map_[v] = c;
      used_[c] = true;
      if (extend(depth + 1)) return true;
      used_[c] = false;
      map_[v] = kUnset;
    }
    return false;
  }

  const Graph& g1_;
  const Graph& g2_;
  std::vector<Vertex> order_;
  std::vector<Vertex> map_;
  std::vector<bool> used_;
};

std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> d;
  for (Vertex v = 0; v < g.vertex_count(); ++v) d.push_back(g.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

std::optional<std::vector<Vertex>> graph_isomorphic(const Graph& g1,
                                                    const Graph& g2) {
  if (g1.vertex_count() != g2.vertex_count() ||
      g1.edge_count() != g2.edge_count() ||
      degree_sequence(g1) != degree_sequence(g2)) {
    return std::nullopt;
  }
  return IsoSearch(g1, g2).run();
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw InputError("a cycle needs at least 3 vertices");
  std::vector<Edge> es;
  for (Vertex i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph(n, es);
}

Graph make_path(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph(n, es);
}

Graph make_complete(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) es.emplace_back(i, j);
  }
  return Graph(n, es);
}

Graph make_petersen() {
  // Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
  std::vector<Edge> es;
  for (Vertex i = 0; i < 5; ++i) {
    es.emplace_back(i, (i + 1) % 5);
    es.emplace_back(i, i + 5);
    es.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, es);
}

Graph random_girth5(std::size_t n, std::size_t degree_bound,
                    std::uint64_t seed) {
  if (n == 0) throw InputError("random_girth5 needs at least one vertex");
  std::vector<Edge> candidates;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) candidates.emplace_back(i, j);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);

  std::vector<std::vector<Vertex>> adj(n);
  // Adding {u,v} closes a cycle of length dist(u,v)+1, so require dist >= 4.
  auto within_three = [&](Vertex s, Vertex t) {
    std::vector<int> dist(n, -1);
    std::deque<Vertex> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop_front();
      if (v == t) return true;
      if (dist[v] == 3) continue;
      for (Vertex w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push_back(w);
        }
      }
    }
    return false;
  };
  std::vector<Edge> chosen;
  for (auto [u, v] : candidates) {
    if (adj[u].size() >= degree_bound || adj[v].size() >= degree_bound) {
      continue;
    }
    if (within_three(u, v)) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
    chosen.emplace_back(u, v);
  }
  return Graph(n, chosen);
}

}  // namespace mekler
