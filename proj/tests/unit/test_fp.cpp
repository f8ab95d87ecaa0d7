#include <gtest/gtest.h>

#include <random>

#include "mekler/errors.hpp"
#include "mekler/fp.hpp"

namespace mekler {
namespace {

TEST(PrimeField, RejectsComposites) {
  EXPECT_THROW(PrimeField(9), InputError);
  EXPECT_THROW(PrimeField(1), InputError);
  EXPECT_NO_THROW(PrimeField(7));
}

TEST(PrimeField, InverseOfEveryUnit) {
  for (Scalar p : {3u, 5u, 7u, 101u}) {
    PrimeField f(p);
    for (Scalar a = 1; a < p; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    EXPECT_THROW(f.inv(0), DomainError);
  }
}

TEST(PrimeField, ReduceHandlesNegatives) {
  PrimeField f(5);
  EXPECT_EQ(f.reduce(-1), 4u);
  EXPECT_EQ(f.reduce(-10), 0u);
  EXPECT_EQ(f.reduce(13), 3u);
}

TEST(PrimeField, NormalizedHasLeadingOne) {
  PrimeField f(7);
  EXPECT_EQ(f.normalized(Coords{0, 3, 6}), (Coords{0, 1, 2}));
  EXPECT_EQ(f.normalized(Coords{0, 0}), (Coords{0, 0}));
}

TEST(CheckedPow, DetectsOverflow) {
  EXPECT_EQ(checked_pow(3, 10), 59049u);
  EXPECT_FALSE(checked_pow(3, 41).has_value());
  EXPECT_TRUE(checked_pow(3, 40).has_value());
}

TEST(NextVector, VisitsEveryVectorOnce) {
  Coords v(3, 0);
  std::size_t count = 1;
  while (next_vector(v, 3)) ++count;
  EXPECT_EQ(count, 27u);
  EXPECT_EQ(v, (Coords{0, 0, 0}));
}

TEST(LinearAlgebra, RankNullityOnRandomMatrices) {
  PrimeField f(5);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = rng() % 5, width = 1 + rng() % 6;
    std::vector<Coords> m(rows, Coords(width));
    for (auto& r : m) {
      for (auto& x : r) x = static_cast<Scalar>(rng() % 5);
    }
    const auto kernel = null_space(f, m, width);
    EXPECT_EQ(rank(f, m, width) + kernel.size(), width);
    for (const auto& x : kernel) {
      for (const auto& r : m) {
        Scalar dot = 0;
        for (std::size_t i = 0; i < width; ++i) dot = f.add(dot, f.mul(r[i], x[i]));
        EXPECT_EQ(dot, 0u);
      }
    }
  }
}

TEST(LinearAlgebra, SolveCombination) {
  PrimeField f(3);
  std::vector<Coords> cols{{1, 0, 1}, {0, 1, 1}};
  auto c = solve_combination(f, cols, Coords{2, 1, 0}, 3);
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (Coords{2, 1}));
  EXPECT_FALSE(solve_combination(f, cols, Coords{1, 0, 0}, 3));
}

TEST(LinearAlgebra, FindDependency) {
  PrimeField f(3);
  EXPECT_FALSE(find_dependency(f, {{1, 0}, {0, 1}}, 2));
  auto d = find_dependency(f, {{1, 0}, {0, 1}, {1, 1}}, 2);
  ASSERT_TRUE(d);
  Coords total(2, 0);
  const std::vector<Coords> vs{{1, 0}, {0, 1}, {1, 1}};
  for (std::size_t i = 0; i < 3; ++i) f.axpy(total, (*d)[i], vs[i]);
  EXPECT_TRUE(is_zero(total));
}

TEST(SpanTest, EqualityIgnoresGenerators) {
  PrimeField f(5);
  Span a(f, 3, {{1, 2, 0}, {0, 1, 1}});
  Span b(f, 3, {{1, 3, 1}, {2, 4, 0}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_TRUE(a.contains(Coords{1, 0, 3}));
  EXPECT_FALSE(a.contains(Coords{0, 0, 1}));
  EXPECT_FALSE(a.insert(Coords{2, 4, 0}));
  EXPECT_TRUE(a.insert(Coords{0, 0, 1}));
  EXPECT_EQ(a.dim(), 3u);
}

TEST(FormatCoords, Brackets) { EXPECT_EQ(format_coords(Coords{1, 0, 2}), "[1,0,2]"); }

}  // namespace
}  // namespace mekler
