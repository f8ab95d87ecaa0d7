#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "mekler/errors.hpp"
#include "mekler/graph.hpp"

namespace mekler {
namespace {

// Niceness straight from the three clauses, over all tuples.
bool nice_by_definition(const Graph& g) {
  const auto n = g.vertex_count();
  if (n < 2) return false;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      if (a == b) continue;
      bool separated = false;
      for (Vertex u = 0; u < n && !separated; ++u) {
        separated = u != a && u != b && g.adjacent(a, u) && !g.adjacent(b, u);
      }
      if (!separated) return false;
    }
  }
  std::vector<Vertex> t(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      for (Vertex c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, a)) return false;
        for (Vertex d = 0; d < n; ++d) {
          if (d == a || d == b || d == c) continue;
          if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, d) &&
              g.adjacent(d, a)) {
            return false;
          }
        }
      }
  return true;
}

template <class T>
const T& violation_as(const NicenessReport& r) {
  EXPECT_TRUE(r.violation.has_value());
  return std::get<T>(*r.violation);
}

TEST(GraphTest, RejectsSelfLoopsAndRange) {
  EXPECT_THROW(Graph(3, {{1, 1}}), InputError);
  EXPECT_THROW(Graph(3, {{0, 3}}), InputError);
}

TEST(GraphTest, DuplicateEdgesCollapse) {
  Graph g(3, {{0, 1}, {1, 0}, {0, 1}});
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.adjacent(1, 0));
}

TEST(GraphTest, NonEdgesAreLexicographic) {
  const auto ne = make_cycle(5).non_edges();
  const std::vector<Edge> expect{{0, 2}, {0, 3}, {1, 3}, {1, 4}, {2, 4}};
  EXPECT_EQ(ne, expect);
}

TEST(Niceness, TriangleWitness) {
  const auto r = is_nice(make_complete(3));
  EXPECT_FALSE(r.nice);
  const auto& t = violation_as<violation::Triangle>(r);
  EXPECT_EQ(std::vector<Vertex>({t.u, t.v, t.w}), std::vector<Vertex>({0, 1, 2}));
}

TEST(Niceness, SingleVertexTooSmall) {
  const auto r = is_nice(Graph(1, {}));
  EXPECT_FALSE(r.nice);
  EXPECT_TRUE(std::holds_alternative<violation::TooSmall>(*r.violation));
}

TEST(Niceness, PathHasUnseparatedEndpoint) {
  const auto r = is_nice(make_path(5));
  EXPECT_FALSE(r.nice);
  const auto& s = violation_as<violation::NoSeparator>(r);
  EXPECT_EQ(s.v1, 0u);
  EXPECT_EQ(s.v2, 1u);
}

TEST(Niceness, FourCycleIsASquare) {
  const auto r = is_nice(make_cycle(4));
  EXPECT_FALSE(r.nice);
  EXPECT_TRUE(std::holds_alternative<violation::Square>(*r.violation));
}

TEST(Niceness, CyclesFiveToTwelve) {
  for (std::size_t n = 5; n <= 12; ++n) {
    EXPECT_TRUE(is_nice(make_cycle(n)).nice) << n;
    EXPECT_TRUE(nice_by_definition(make_cycle(n))) << n;
  }
}

TEST(Niceness, Petersen) {
  const auto g = make_petersen();
  EXPECT_EQ(g.vertex_count(), 10u);
  EXPECT_EQ(g.edge_count(), 15u);
  EXPECT_TRUE(is_nice(g).nice);
  EXPECT_TRUE(nice_by_definition(g));
}

TEST(Niceness, AgreesWithDefinitionOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = random_girth5(7 + seed % 5, 2 + seed % 3, seed);
    EXPECT_EQ(is_nice(g).nice, nice_by_definition(g)) << seed;
  }
  // Small graphs with triangles and squares as well.
  for (std::uint32_t mask = 0; mask < (1u << 10); mask += 7) {
    std::vector<Edge> es;
    std::size_t bit = 0;
    for (Vertex i = 0; i < 5; ++i)
      for (Vertex j = i + 1; j < 5; ++j, ++bit)
        if (mask >> bit & 1u) es.emplace_back(i, j);
    const Graph g(5, es);
    EXPECT_EQ(is_nice(g).nice, nice_by_definition(g)) << mask;
  }
}

TEST(Niceness, NiceGraphsHaveDistinctNeighbourhoods) {
  for (const auto& g : {make_cycle(5), make_cycle(8), make_petersen()}) {
    ASSERT_TRUE(is_nice(g).nice);
    for (Vertex a = 0; a < g.vertex_count(); ++a)
      for (Vertex b = a + 1; b < g.vertex_count(); ++b)
        EXPECT_NE(g.neighbors(a), g.neighbors(b));
  }
}

TEST(RandomGirth5, HasNoShortCycles) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_girth5(12, 3, seed);
    const auto r = is_nice(g);
    if (r.violation) {
      EXPECT_FALSE(std::holds_alternative<violation::Triangle>(*r.violation));
      EXPECT_FALSE(std::holds_alternative<violation::Square>(*r.violation));
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) EXPECT_LE(g.degree(v), 3u);
  }
  EXPECT_EQ(random_girth5(10, 3, 5), random_girth5(10, 3, 5));
}

TEST(Generators, CycleRejectsSmallN) {
  EXPECT_THROW(make_cycle(2), InputError);
  const auto c5 = make_cycle(5);
  EXPECT_EQ(c5.edges(), (std::set<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}));
}

TEST(Cover, IsolatedExtraVertex) {
  const auto c5 = make_cycle(5);
  std::vector<Edge> es(c5.edges().begin(), c5.edges().end());
  const Graph gamma(6, es);
  EXPECT_TRUE(is_cover(gamma, {0, 1, 2, 3, 4}, 2).is_cover);
}

TEST(Cover, VertexWithTwoAnchorsFails) {
  const auto c5 = make_cycle(5);
  std::vector<Edge> es(c5.edges().begin(), c5.edges().end());
  es.emplace_back(5, 0);
  es.emplace_back(5, 2);
  const auto r = is_cover(Graph(6, es), {0, 1, 2, 3, 4}, 2);
  EXPECT_FALSE(r.is_cover);
  EXPECT_EQ(r.offending_vertex, 5u);
}

TEST(Cover, PendantNeedsThreshold) {
  const auto c5 = make_cycle(5);
  std::vector<Edge> es(c5.edges().begin(), c5.edges().end());
  es.emplace_back(5, 0);
  const Graph gamma(6, es);
  EXPECT_TRUE(is_cover(gamma, {0, 1, 2, 3, 4}, 2).is_cover);
  EXPECT_FALSE(is_cover(gamma, {0, 1, 2, 3, 4}, 3).is_cover);
}

TEST(Cover, BadSubsetIsInputError) {
  EXPECT_THROW(is_cover(make_cycle(5), {0, 7}, 1), InputError);
  EXPECT_THROW(is_cover(make_cycle(5), {0, 0}, 1), InputError);
}

Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  std::vector<Edge> es;
  for (auto [u, v] : g.edges()) es.emplace_back(perm[u], perm[v]);
  return Graph(g.vertex_count(), es);
}

bool is_isomorphism(const Graph& a, const Graph& b, const std::vector<Vertex>& m) {
  if (m.size() != a.vertex_count()) return false;
  std::vector<Vertex> sorted = m;
  std::sort(sorted.begin(), sorted.end());
  for (Vertex i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) return false;
  for (Vertex u = 0; u < a.vertex_count(); ++u)
    for (Vertex v = 0; v < a.vertex_count(); ++v)
      if (u != v && a.adjacent(u, v) != b.adjacent(m[u], m[v])) return false;
  return true;
}

TEST(Isomorphism, RotatedCycle) {
  const auto c5 = make_cycle(5);
  const auto rot = relabel(c5, {1, 2, 3, 4, 0});
  auto m = graph_isomorphic(c5, rot);
  ASSERT_TRUE(m);
  EXPECT_TRUE(is_isomorphism(c5, rot, *m));
}

TEST(Isomorphism, CycleVersusPath) {
  EXPECT_FALSE(graph_isomorphic(make_cycle(5), make_path(5)));
  EXPECT_FALSE(graph_isomorphic(make_cycle(6), Graph(6, {{0, 1}, {1, 2}, {2, 0},
                                                         {3, 4}, {4, 5}, {5, 3}})));
}

TEST(Isomorphism, ShuffledC6) {
  const auto c6 = make_cycle(6);
  const std::vector<Vertex> perm{3, 0, 5, 1, 4, 2};
  const auto shuffled = relabel(c6, perm);
  auto m = graph_isomorphic(c6, shuffled);
  ASSERT_TRUE(m);
  EXPECT_TRUE(is_isomorphism(c6, shuffled, *m));
  // Agrees with exhaustive search: exactly 12 automorphisms, m among perm o Aut.
  std::vector<Vertex> cand(6);
  std::iota(cand.begin(), cand.end(), 0);
  std::size_t count = 0;
  do {
    if (is_isomorphism(c6, shuffled, cand)) ++count;
  } while (std::next_permutation(cand.begin(), cand.end()));
  EXPECT_EQ(count, 12u);
}

TEST(Isomorphism, ReflexiveSymmetricComposable) {
  const std::vector<Graph> corpus{make_cycle(5), make_cycle(7), make_petersen(),
                                  relabel(make_petersen(), {9, 3, 1, 7, 0, 2, 8, 4, 6, 5}),
                                  relabel(make_petersen(), {4, 5, 6, 7, 8, 9, 0, 1, 2, 3})};
  for (const auto& g : corpus) EXPECT_TRUE(graph_isomorphic(g, g));
  for (const auto& a : corpus)
    for (const auto& b : corpus)
      EXPECT_EQ(graph_isomorphic(a, b).has_value(), graph_isomorphic(b, a).has_value());
  const auto& g1 = corpus[2];
  const auto& g2 = corpus[3];
  const auto& g3 = corpus[4];
  auto m12 = graph_isomorphic(g1, g2);
  auto m23 = graph_isomorphic(g2, g3);
  ASSERT_TRUE(m12 && m23);
  std::vector<Vertex> m13(10);
  for (Vertex v = 0; v < 10; ++v) m13[v] = (*m23)[(*m12)[v]];
  EXPECT_TRUE(is_isomorphism(g1, g3, m13));
}

}  // namespace
}  // namespace mekler
