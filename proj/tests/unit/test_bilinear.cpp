#include <gtest/gtest.h>

#include <random>

#include "mekler/bilinear.hpp"
#include "mekler/errors.hpp"
#include "oracles/oracles.hpp"

namespace mekler {
namespace {

Coords e(std::size_t dim, std::size_t i) { return unit_vector(dim, i); }

// V = F_3^3, W = F_3^4 with the three basis values on the first three
// coordinates; the last coordinate is outside the image of beta.
BilinearSystem short_system() {
  return BilinearSystem(3, 3, 4, {e(4, 0), e(4, 1), e(4, 2)});
}

std::vector<Coords> random_vectors(std::mt19937_64& rng, std::size_t count,
                                   std::size_t dim, Scalar p) {
  std::vector<Coords> out(count, Coords(dim));
  for (auto& v : out)
    for (auto& x : v) x = static_cast<Scalar>(rng() % p);
  return out;
}

TEST(System, FOfGroupDimensions) {
  const auto s5 = f_of_group(MeklerGroup(make_cycle(5), 3));
  EXPECT_EQ(s5.dim_v(), 5u);
  EXPECT_EQ(s5.dim_w(), 5u);
  const auto s6 = f_of_group(MeklerGroup(make_cycle(6), 3));
  EXPECT_EQ(s6.dim_v(), 6u);
  EXPECT_EQ(s6.dim_w(), 9u);
  const auto k = f_of_group(MeklerGroup(make_complete(4), 3, BuildOptions{true}));
  for (const auto& w : k.pair_values()) EXPECT_TRUE(is_zero(w));
}

TEST(System, RejectsBadShapes) {
  EXPECT_THROW(BilinearSystem(3, 3, 2, {e(2, 0)}), InputError);
  EXPECT_THROW(BilinearSystem(3, 2, 2, {Coords{0, 3}}), InputError);
  EXPECT_THROW(BilinearSystem(4, 2, 1, {Coords{1}}), InputError);
  const auto s = short_system();
  EXPECT_THROW(s.beta(Coords{1, 0}, Coords{0, 1, 0}), InputError);
}

TEST(System, RelationRFollowsEdges) {
  const MeklerGroup g(make_cycle(5), 3);
  const auto sys = f_of_group(g);
  EXPECT_TRUE(relation_R(sys, e(5, 0), e(5, 1)));
  EXPECT_FALSE(relation_R(sys, e(5, 0), e(5, 2)));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    auto vs = random_vectors(rng, 2, 5, 3);
    EXPECT_TRUE(is_zero(beta(sys, vs[0], vs[0])));
    EXPECT_EQ(beta(sys, vs[0], vs[1]), sys.field().negated(beta(sys, vs[1], vs[0])));
    const Element a{vs[0], Coords(5, 0)}, b{vs[1], Coords(5, 0)};
    EXPECT_EQ(relation_R(sys, vs[0], vs[1]),
              commutator(g, a, b) == g.identity());
    EXPECT_EQ(beta(sys, vs[0], vs[1]), commutator(g, a, b).com);
  }
}

TEST(Wedge, FixtureShape) {
  const auto w = wedge_quotient_fixture(3);
  EXPECT_EQ(w.dim_v(), 4u);
  EXPECT_EQ(w.dim_w(), 5u);
  EXPECT_EQ(beta(w, e(4, 0), e(4, 1)), beta(w, e(4, 2), e(4, 3)));
  EXPECT_FALSE(is_zero(beta(w, e(4, 0), e(4, 2))));
}

TEST(Separated, GeneratorBasisOfC5) {
  const auto sys = f_of_group(MeklerGroup(make_cycle(5), 3));
  std::vector<Coords> basis;
  for (std::size_t i = 0; i < 5; ++i) basis.push_back(e(5, i));
  EXPECT_TRUE(is_separated_basis(sys, basis).separated);
}

TEST(Separated, TwoVectorsAlwaysSeparated) {
  std::mt19937_64 rng(2);
  const auto sys = wedge_quotient_fixture(3);
  for (int t = 0; t < 100; ++t) {
    auto vs = random_vectors(rng, 2, 4, 3);
    if (rank(sys.field(), vs, 4) < 2) continue;
    EXPECT_TRUE(is_separated_basis(sys, vs).separated);
    const auto r = find_separated_basis(sys, vs);
    EXPECT_EQ(r.status, SeparationStatus::Found);
    EXPECT_FALSE(counting_certificate(sys, vs).has_value());
  }
}

TEST(Separated, WedgeBasisWitness) {
  const auto sys = wedge_quotient_fixture(3);
  const std::vector<Coords> basis{e(4, 0), e(4, 1), e(4, 2), e(4, 3)};
  const auto r = is_separated_basis(sys, basis);
  EXPECT_FALSE(r.separated);
  ASSERT_EQ(r.witness.size(), 2u);
  EXPECT_EQ(r.witness[0].i, 0u);
  EXPECT_EQ(r.witness[0].j, 1u);
  EXPECT_EQ(r.witness[1].i, 2u);
  EXPECT_EQ(r.witness[1].j, 3u);
  EXPECT_EQ(sys.field().add(r.witness[0].coefficient, r.witness[1].coefficient), 0u);
}

TEST(Separated, DependentInputRejected) {
  const auto sys = wedge_quotient_fixture(3);
  EXPECT_THROW(is_separated_basis(sys, {e(4, 0), Coords{2, 0, 0, 0}}), InputError);
}

TEST(Separated, MatchesDefinitionByEnumeration) {
  std::mt19937_64 rng(3);
  const std::vector<BilinearSystem> systems{
      f_of_group(MeklerGroup(make_cycle(5), 3)), wedge_quotient_fixture(3),
      short_system(), f_of_group(MeklerGroup(make_cycle(6), 3))};
  std::size_t negatives = 0;
  for (const auto& sys : systems) {
    for (int t = 0; t < 150; ++t) {
      const std::size_t k = 1 + rng() % 4;
      auto vs = random_vectors(rng, k, sys.dim_v(), 3);
      if (rank(sys.field(), vs, sys.dim_v()) < k) continue;
      std::vector<Coords> values;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) values.push_back(sys.beta(vs[i], vs[j]));
      const bool expect = oracle::separated_by_enumeration(sys.field(), values);
      const auto got = is_separated_basis(sys, vs);
      ASSERT_EQ(got.separated, expect);
      if (!expect) ++negatives;
      if (!got.separated) {
        Coords total(sys.dim_w(), 0);
        for (const auto& term : got.witness) {
          EXPECT_FALSE(is_zero(sys.beta(vs[term.i], vs[term.j])));
          sys.field().axpy(total, term.coefficient, sys.beta(vs[term.i], vs[term.j]));
        }
        EXPECT_TRUE(is_zero(total));
      }
    }
  }
  EXPECT_GT(negatives, 0u);
}

TEST(FindSeparated, FullSpaceOfCyclesAndPetersen) {
  for (const auto& c : {make_cycle(5), make_cycle(6), make_cycle(8), make_petersen()}) {
    const auto sys = f_of_group(MeklerGroup(c, 3));
    std::vector<Coords> all;
    for (std::size_t i = 0; i < sys.dim_v(); ++i) all.push_back(e(sys.dim_v(), i));
    const auto r = find_separated_basis(sys, all);
    ASSERT_EQ(r.status, SeparationStatus::Found);
    EXPECT_EQ(r.basis.size(), sys.dim_v());
    EXPECT_TRUE(is_separated_basis(sys, r.basis).separated);
    EXPECT_FALSE(counting_certificate(sys, all).has_value());
  }
}

TEST(FindSeparated, RandomSubspacesOfMeklerSystems) {
  std::mt19937_64 rng(4);
  for (const auto& c : {make_cycle(6), make_cycle(8), make_petersen()}) {
    const auto sys = f_of_group(MeklerGroup(c, 3));
    for (int t = 0; t < 100; ++t) {
      const auto spanning = random_vectors(rng, 1 + rng() % 4, sys.dim_v(), 3);
      const auto r = find_separated_basis(sys, spanning);
      ASSERT_EQ(r.status, SeparationStatus::Found);
      EXPECT_TRUE(is_separated_basis(sys, r.basis).separated);
      EXPECT_EQ(Span(sys.field(), sys.dim_v(), r.basis),
                Span(sys.field(), sys.dim_v(), spanning));
    }
  }
}

// Checks the certificate hypotheses through group commutators: every pair of
// distinct projective points fails to commute, and the values span fewer
// than d(d-1)/2 dimensions.
void confirm_certificate(const MeklerGroup& g, const std::vector<Coords>& spanning,
                         const CountingCertificate& cert) {
  const auto& f = g.field();
  const auto basis = row_reduce(f, spanning, g.dim_v()).rows;
  ASSERT_EQ(basis.size(), cert.subspace_dim);
  std::vector<Coords> points;
  Coords c(basis.size(), 0);
  while (next_vector(c, g.p())) {
    if (c[*leading_index(c)] != 1) continue;
    Coords v(g.dim_v(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) f.axpy(v, c[i], basis[i]);
    points.push_back(v);
  }
  Span values(f, g.dim_w());
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const auto comm = commutator(g, Element{points[a], Coords(g.dim_w(), 0)},
                                   Element{points[b], Coords(g.dim_w(), 0)});
      ASSERT_NE(comm, g.identity());
      values.insert(comm.com);
    }
  }
  EXPECT_EQ(values.dim(), cert.value_span_dim);
  EXPECT_LT(values.dim(), basis.size() * (basis.size() - 1) / 2);
}

TEST(FindSeparated, RandomSubspacesOfC5AreFoundOrCertified) {
  // M(C5, 3) has subspaces without a separated basis; every outcome must be
  // a verified basis or a certificate that holds up independently.
  const MeklerGroup g(make_cycle(5), 3);
  const auto sys = f_of_group(g);
  std::mt19937_64 rng(4);
  std::size_t found = 0, certified = 0;
  for (int t = 0; t < 100; ++t) {
    const auto spanning = random_vectors(rng, 1 + rng() % 4, 5, 3);
    const auto r = find_separated_basis(sys, spanning);
    if (r.status == SeparationStatus::Found) {
      ++found;
      EXPECT_TRUE(is_separated_basis(sys, r.basis).separated);
      EXPECT_EQ(Span(sys.field(), 5, r.basis), Span(sys.field(), 5, spanning));
    } else {
      ASSERT_EQ(r.status, SeparationStatus::NoneCertified);
      ++certified;
      confirm_certificate(g, spanning, *r.certificate);
    }
  }
  EXPECT_GT(found, 0u);
  EXPECT_GT(certified, 0u);
}

TEST(FindSeparated, SumZeroHyperplaneOfC5HasNoSeparatedBasis) {
  const MeklerGroup g(make_cycle(5), 3);
  const auto sys = f_of_group(g);
  const std::vector<Coords> hyperplane{Coords{1, 0, 0, 0, 2}, Coords{0, 1, 0, 0, 2},
                                       Coords{0, 0, 1, 0, 2}, Coords{0, 0, 0, 1, 2}};
  const auto r = find_separated_basis(sys, hyperplane);
  ASSERT_EQ(r.status, SeparationStatus::NoneCertified);
  EXPECT_TRUE(r.search_exhausted);
  EXPECT_EQ(r.certificate->value_span_dim, 5u);
  confirm_certificate(g, hyperplane, *r.certificate);

  // By definition: no basis of the hyperplane is separated.
  std::vector<Coords> pts;
  Coords v(5, 0);
  while (next_vector(v, 3)) {
    Scalar s = 0;
    for (Scalar x : v) s += x;
    if (s % 3 == 0 && v[*leading_index(v)] == 1) pts.push_back(v);
  }
  ASSERT_EQ(pts.size(), 40u);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 2000; ++t) {
    std::vector<Coords> b;
    for (int k = 0; k < 4; ++k) b.push_back(pts[rng() % pts.size()]);
    if (rank(sys.field(), b, 5) < 4) continue;
    std::vector<Coords> values;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) values.push_back(sys.beta(b[i], b[j]));
    ASSERT_FALSE(oracle::separated_by_enumeration(sys.field(), values));
  }
}

TEST(FindSeparated, ReplacementStepRepairsABasis) {
  const auto sys = f_of_group(MeklerGroup(make_cycle(6), 3));
  const std::vector<Coords> spanning{
      Coords{0, 1, 2, 1, 0, 2}, Coords{0, 2, 0, 2, 2, 2}, Coords{0, 0, 0, 2, 0, 0},
      Coords{0, 1, 1, 1, 0, 1}, Coords{1, 1, 1, 2, 0, 1}};
  EXPECT_FALSE(
      is_separated_basis(sys, row_reduce(sys.field(), spanning, 6).rows).separated);
  const auto r = find_separated_basis(sys, spanning);
  ASSERT_EQ(r.status, SeparationStatus::Found);
  EXPECT_EQ(r.method, "replacement");
  EXPECT_GE(r.replacements, 1u);
  EXPECT_TRUE(is_separated_basis(sys, r.basis).separated);
  EXPECT_EQ(Span(sys.field(), 6, r.basis), Span(sys.field(), 6, spanning));
}

TEST(Certificate, AbsentWhenSomePairCommutes) {
  const auto sys = f_of_group(MeklerGroup(make_cycle(5), 3));
  EXPECT_FALSE(counting_certificate(sys, {e(5, 0), e(5, 1), e(5, 2)}).has_value());
}

// W_n by definition: all antisymmetric A and all n-tuples over V.
std::set<Coords> w_n_by_enumeration(const BilinearSystem& sys, std::size_t n) {
  std::set<Coords> out{Coords(sys.dim_w(), 0)};
  if (n < 2) return out;
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<Coords> points;
  Coords v(sys.dim_v(), 0);
  do points.push_back(v); while (next_vector(v, sys.p()));
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Coords> values;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        values.push_back(sys.beta(points[idx[i]], points[idx[j]]));
    Coords a(pairs, 0);
    do {
      Coords w(sys.dim_w(), 0);
      for (std::size_t k = 0; k < pairs; ++k) sys.field().axpy(w, a[k], values[k]);
      out.insert(w);
    } while (next_vector(a, sys.p()));
    std::size_t k = n;
    while (k > 0 && ++idx[k - 1] == points.size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

TEST(OrderN, MatchesDefinitionOnSmallSystems) {
  for (const auto& sys : {short_system(), wedge_quotient_fixture(3)}) {
    const std::size_t top = sys.dim_v() == 3 ? 3 : 2;
    const OrderTable table(sys, top);
    for (std::size_t n = 0; n <= top; ++n) {
      const auto expect = w_n_by_enumeration(sys, n);
      EXPECT_EQ(table.size(n), expect.size()) << n;
      Coords w(sys.dim_w(), 0);
      do {
        ASSERT_EQ(table.contains(w, n), expect.count(w) > 0)
            << "n=" << n << " w=" << format_coords(w);
      } while (next_vector(w, sys.p()));
    }
  }
}

TEST(OrderN, BasicFacts) {
  const auto sys = f_of_group(MeklerGroup(make_cycle(5), 3));
  const Coords zero(5, 0);
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_TRUE(w_n_membership(sys, zero, n));
  EXPECT_TRUE(w_n_membership(sys, beta(sys, e(5, 0), e(5, 2)), 2));
  EXPECT_FALSE(w_n_membership(sys, beta(sys, e(5, 0), e(5, 2)), 1));

  const OrderTable table(sys, 6);
  EXPECT_EQ(table.size(1), 1u);
  for (std::size_t n = 0; n < 6; ++n) EXPECT_LE(table.size(n), table.size(n + 1));
  // The union is the span of the image, which is all of W for a Mekler group.
  EXPECT_EQ(table.size(5), 243u);

  const auto s = short_system();
  for (std::size_t n = 0; n <= 4; ++n) {
    EXPECT_FALSE(w_n_membership(s, e(4, 3), n));
  }
  EXPECT_EQ(OrderTable(s, 4).size(4), 27u);
}

TEST(OrderN, CapRefusal) {
  const auto sys = f_of_group(MeklerGroup(make_petersen(), 3));
  EXPECT_THROW(w_n_membership(sys, beta(sys, e(10, 0), e(10, 2)), 2), CapExceeded);
}

TEST(Bn, PiAAndFnAgree) {
  const auto sys = f_of_group(MeklerGroup(make_cycle(5), 3));
  const CoefficientMatrix a{{0, 1}, {2, 0}};
  const auto w = beta(sys, e(5, 0), e(5, 2));
  const auto cls = f_n(sys, w, 2);
  ASSERT_TRUE(cls);
  EXPECT_EQ(cls->matrix, a);
  EXPECT_EQ(*cls, pi_A(sys, a, {e(5, 0), e(5, 2)}));
  EXPECT_EQ(beta(sys, cls->vectors[0], cls->vectors[1]), w);
  // f_2(w) = pi_A(v0, v1) exactly when beta(v0, v1) = w.
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto vs = random_vectors(rng, 2, 5, 3);
    EXPECT_EQ(*cls == pi_A(sys, a, vs), beta(sys, vs[0], vs[1]) == w);
  }
}

TEST(Bn, ZeroMatrixAndUndetermined) {
  const auto sys = short_system();
  EXPECT_TRUE(is_zero(pi_A(sys, {}, {}).canonical_value));
  const CoefficientMatrix z{{0, 0}, {0, 0}};
  EXPECT_TRUE(is_zero(pi_A(sys, z, {e(3, 0), e(3, 1)}).canonical_value));
  EXPECT_FALSE(f_n(sys, e(4, 3), 3).has_value());
  const auto f4 = f_n(sys, Coords{1, 2, 0, 0}, 4);
  ASSERT_TRUE(f4);
  EXPECT_EQ(f4->n, 4u);
}

TEST(Bn, RejectsNonAntisymmetric) {
  const auto sys = short_system();
  EXPECT_THROW(pi_A(sys, {{0, 1}, {1, 0}}, {e(3, 0), e(3, 1)}), InputError);
  EXPECT_THROW(pi_A(sys, {{1, 0}, {0, 0}}, {e(3, 0), e(3, 1)}), InputError);
  EXPECT_THROW(pi_A(sys, {{0, 1}, {2, 0}}, {e(3, 0)}), InputError);
}

TEST(Bn, SimeqProperties) {
  const auto sys = wedge_quotient_fixture(3);
  const CoefficientMatrix a{{0, 1}, {2, 0}};
  EXPECT_TRUE(simeq(sys, a, {e(4, 0), e(4, 1)}, a, {e(4, 0), e(4, 1)}));
  EXPECT_TRUE(simeq(sys, a, {e(4, 0), e(4, 1)}, a, {e(4, 2), e(4, 3)}));
  // Scale vbar by 2 and A by 2^{-2} = 1 (mod 3).
  EXPECT_TRUE(simeq(sys, a, {e(4, 0), e(4, 2)}, a, {Coords{2, 0, 0, 0}, Coords{0, 0, 2, 0}}));
  const auto five = BilinearSystem(5, 3, 3, {e(3, 0), e(3, 1), e(3, 2)});
  const CoefficientMatrix b{{0, 1}, {4, 0}};
  const CoefficientMatrix b4{{0, 4}, {1, 0}};  // 2^{-2} = 4 mod 5
  EXPECT_TRUE(simeq(five, b, {Coords{1, 1, 0}, Coords{0, 1, 3}}, b4,
                    {Coords{2, 2, 0}, Coords{0, 2, 1}}));

  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    auto x = random_vectors(rng, 2, 4, 3), y = random_vectors(rng, 2, 4, 3),
         z = random_vectors(rng, 2, 4, 3);
    const bool xy = simeq(sys, a, x, a, y), yz = simeq(sys, a, y, a, z);
    EXPECT_EQ(xy, simeq(sys, a, y, a, x));
    if (xy && yz) EXPECT_TRUE(simeq(sys, a, x, a, z));
  }
}

}  // namespace
}  // namespace mekler
