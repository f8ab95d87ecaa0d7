#pragma once

// Alternating bilinear systems (V, W, beta) over F_p: the system F(G) of a
// Mekler group and standalone systems given by structure constants.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mekler/fp.hpp"
#include "mekler/group.hpp"

namespace mekler {

class BilinearSystem {
 public:
  // `pair_values[k]` is beta(e_i, e_j) for the k-th pair i < j in
  // lexicographic order. Throws InputError on bad sizes or entries.
  BilinearSystem(Scalar p, std::size_t dim_v, std::size_t dim_w,
                 std::vector<Coords> pair_values);

  Scalar p() const { return field_.p(); }
  const PrimeField& field() const { return field_; }
  std::size_t dim_v() const { return dim_v_; }
  std::size_t dim_w() const { return dim_w_; }

  std::size_t pair_count() const { return values_.size(); }
  std::size_t pair_index(std::size_t i, std::size_t j) const;  // i < j
  // beta(e_i, e_j), extended alternately to i >= j.
  Coords basis_value(std::size_t i, std::size_t j) const;
  const std::vector<Coords>& pair_values() const { return values_; }

  Coords beta(std::span<const Scalar> u, std::span<const Scalar> v) const;

  // Basis of {w : beta(v, w) = 0}.
  std::vector<Coords> commuting_space(std::span<const Scalar> v) const;

  friend bool operator==(const BilinearSystem& a, const BilinearSystem& b) {
    return a.p() == b.p() && a.dim_v_ == b.dim_v_ && a.dim_w_ == b.dim_w_ &&
           a.values_ == b.values_;
  }

 private:
  PrimeField field_;
  std::size_t dim_v_, dim_w_;
  std::vector<Coords> values_;
};

// F(G) = (G/Z, Z, commutator map) in normal-form coordinates.
BilinearSystem f_of_group(const MeklerGroup& g);

// V = F_p^4, W = (V wedge V) / <e0^e1 - e2^e3>, so dim W = 5.
BilinearSystem wedge_quotient_fixture(Scalar p);

Coords beta(const BilinearSystem& sys, std::span<const Scalar> u,
            std::span<const Scalar> v);
// v R w iff beta(v, w) = 0.
bool relation_R(const BilinearSystem& sys, std::span<const Scalar> u,
                std::span<const Scalar> v);

// ---- separated bases -----------------------------------------------------------

struct PairTerm {
  std::size_t i, j;  // i < j, positions in the basis
  Scalar coefficient;
  friend bool operator==(const PairTerm&, const PairTerm&) = default;
};

struct SeparationCheck {
  bool separated = false;
  // When not separated: sum coefficient * beta(v_i, v_j) = 0 with every
  // listed value non-zero and every coefficient non-zero.
  std::vector<PairTerm> witness;
};

// Separated iff the non-zero values beta(v_i, v_j), i < j, are linearly
// independent: a vanishing combination over all pairs only involves pairs
// with a non-zero value, so it is trivial exactly when these are
// independent. Throws InputError if the vectors are dependent.
SeparationCheck is_separated_basis(const BilinearSystem& sys,
                                   const std::vector<Coords>& vectors);

struct CountingCertificate {
  std::size_t subspace_dim = 0;
  std::size_t value_span_dim = 0;  // dim <beta(V0, V0)>
  std::size_t pairs_needed = 0;    // d(d-1)/2
};

// If beta(v, v') != 0 for all independent v, v' in the subspace and
// dim <beta(V0, V0)> < d(d-1)/2, no basis of the subspace is separated.
// Throws CapExceeded if the projective pairs exceed `max_pairs`.
std::optional<CountingCertificate> counting_certificate(
    const BilinearSystem& sys, const std::vector<Coords>& spanning,
    std::uint64_t max_pairs = 50'000'000);

enum class SeparationStatus { Found, NoneCertified, Indeterminate };
std::string to_string(SeparationStatus s);

struct SeparatedSearchOptions {
  std::size_t max_replacements = 64;
  std::uint64_t node_budget = 2'000'000;
  std::uint64_t max_points = 2'000'000;  // projective points of the subspace
};

struct SeparatedSearchResult {
  SeparationStatus status = SeparationStatus::Indeterminate;
  std::vector<Coords> basis;  // set when Found
  std::string method;  // "echelon", "replacement" or "search" when Found
  std::size_t replacements = 0;
  std::uint64_t nodes = 0;
  bool search_exhausted = false;  // every basis up to scaling was tried
  std::optional<CountingCertificate> certificate;
};

// Tries, in order: the reduced echelon basis of the span; the replacement
// procedure (repeatedly swap an isolated basis vector v_i for
// v_a = sum_i alpha_i(a) v_i built from a vanishing combination and a unit
// vector a); a depth-first search over projective points, sparsest first.
// Non-existence is only reported with a counting certificate.
SeparatedSearchResult find_separated_basis(
    const BilinearSystem& sys, const std::vector<Coords>& spanning,
    const SeparatedSearchOptions& options = {});

// ---- W_n, B_n, pi_A, f_n --------------------------------------------------------------

using CoefficientMatrix = std::vector<Coords>;  // n x n, antisymmetric

// Element of B_n: the class of (A, vbar) under equality of
// sum_{i<j} a_ij beta(v_i, v_j).
struct BnClass {
  std::size_t n = 0;
  CoefficientMatrix matrix;
  std::vector<Coords> vectors;
  Coords canonical_value;

  friend bool operator==(const BnClass& a, const BnClass& b) {
    return a.n == b.n && a.canonical_value == b.canonical_value;
  }
};

// Throws InputError unless A is n x n antisymmetric with zero diagonal and
// vbar has n vectors of dimension dim V.
BnClass pi_A(const BilinearSystem& sys, const CoefficientMatrix& a,
             const std::vector<Coords>& vbar);

bool simeq(const BilinearSystem& sys, const CoefficientMatrix& a,
           const std::vector<Coords>& vbar, const CoefficientMatrix& a2,
           const std::vector<Coords>& vbar2);

// The sets W_n, built by enumeration. An antisymmetric form of rank 2k is a
// sum of k decomposable terms, so W_n is the k-fold sumset of
// {beta(u, u')} with k = floor(min(n, dim V) / 2).
class OrderTable {
 public:
  // Throws CapExceeded if |V|^2 > cap or a W_n set would exceed cap entries.
  OrderTable(const BilinearSystem& sys, std::size_t max_n,
             std::uint64_t cap = 20'000'000);

  std::size_t max_n() const { return max_n_; }
  bool contains(std::span<const Scalar> w, std::size_t n) const;
  // A pair list (u_1, u'_1), ..., (u_k, u'_k) with sum beta(u_l, u'_l) = w
  // using at most floor(n/2) pairs, if w is in W_n.
  std::optional<std::vector<std::pair<Coords, Coords>>> witness(
      std::span<const Scalar> w, std::size_t n) const;
  // |W_n| for n <= max_n.
  std::size_t size(std::size_t n) const;

 private:
  std::uint64_t encode(std::span<const Scalar> w) const;
  Coords decode(std::uint64_t code) const;
  std::size_t level(std::size_t n) const;

  BilinearSystem sys_;
  std::size_t max_n_;
  std::vector<Coords> points_;  // all of V, by rank
  // First time each W-vector is reached: the number of pairs used, the value
  // one pair earlier, and that pair.
  struct Entry {
    std::size_t pairs;
    std::uint64_t previous;
    std::uint32_t u, v;
  };
  std::unordered_map<std::uint64_t, Entry> reached_;
  std::vector<std::size_t> sizes_;  // |W_{2k}| by k
};

bool w_n_membership(const BilinearSystem& sys, std::span<const Scalar> w,
                    std::size_t n, std::uint64_t cap = 20'000'000);

// A class with canonical value w built from block-diagonal [[0,1],[-1,0]]
// coefficients, or nullopt (undetermined) when w is not in W_n.
std::optional<BnClass> f_n(const BilinearSystem& sys,
                           std::span<const Scalar> w, std::size_t n,
                           std::uint64_t cap = 20'000'000);

}  // namespace mekler
