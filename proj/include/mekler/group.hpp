#pragma once

// Finite Mekler groups M(C) over an odd prime p, in normal-form coordinates.
//
// Fix the vertex order 0..n-1 of C and the lexicographic order on the
// non-edges {i<j}. Every element has a unique normal form
//
//     x_0^{gen_0} ... x_{n-1}^{gen_{n-1}} * prod_{ {i<j} non-edge } c_ij^{com_ij}
//
// with c_ij = [x_i, x_j] = x_i^{-1} x_j^{-1} x_i x_j. The c_ij are central and
// span the centre Z, so gen is the image in V = G/Z and com the central part.
//
// Multiplication collects the letters of the right factor leftwards. Moving
// x_i past x_j (j > i) uses x_j x_i = x_i x_j [x_j, x_i] = x_i x_j c_ij^{-1},
// which gives the cocycle
//
//     kappa(a, b)_ij = -a_j * b_i        ({i<j} a non-edge)
//
// and commutators [a, b] with central part beta(a, b)_ij = a_i b_j - a_j b_i.

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "mekler/errors.hpp"
#include "mekler/fp.hpp"
#include "mekler/graph.hpp"

namespace mekler {

struct Element {
  Coords gen;  // exponents of the generators, vertex order
  Coords com;  // coordinates of the central part, non-edge order

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

class NotNiceError : public Error {
 public:
  explicit NotNiceError(NicenessReport report)
      : Error("graph is not nice: " + report.describe()),
        report_(std::move(report)) {}
  const NicenessReport& report() const { return report_; }

 private:
  NicenessReport report_;
};

struct BuildOptions {
  // Build M(C) even when C is not nice. Classification results are then
  // not guaranteed to follow the nice-graph case analysis.
  bool allow_non_nice = false;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

class MeklerGroup {
 public:
  // Throws InputError unless p is an odd prime, NotNiceError if `graph` is not
  // nice (unless overridden).
  MeklerGroup(Graph graph, Scalar p, BuildOptions options = {});

  const Graph& graph() const { return graph_; }
  Scalar p() const { return field_.p(); }
  const PrimeField& field() const { return field_; }

  std::size_t dim_v() const { return graph_.vertex_count(); }
  std::size_t dim_w() const { return non_edges_.size(); }
  const std::vector<Edge>& non_edges() const { return non_edges_; }
  std::optional<std::size_t> non_edge_index(Vertex i, Vertex j) const;

  // Central part of [x_i, x_j]. Antisymmetric; zero on edges and the diagonal.
  Coords beta_constants(Vertex i, Vertex j) const;

  // log_p |G| = |V| + #non-edges.
  std::size_t order_exponent() const { return dim_v() + dim_w(); }
  // |G|, or nullopt if it does not fit in 64 bits.
  std::optional<std::uint64_t> order() const;
  std::optional<std::uint64_t> center_order() const;

  Element identity() const;
  Element generator(Vertex i) const;
  Element central(Coords com) const;

  // Throws InputError on wrong lengths or out-of-range entries.
  void validate(const Element& g) const;

  // V x V -> W, the commutator map on images mod Z.
  Coords beta(std::span<const Scalar> u, std::span<const Scalar> v) const;
  // Collection cocycle: com(a*b) = com(a) + com(b) + kappa(gen(a), gen(b)).
  Coords kappa(std::span<const Scalar> u, std::span<const Scalar> v) const;

 private:
  Graph graph_;
  PrimeField field_;
  std::vector<Edge> non_edges_;
  std::vector<std::ptrdiff_t> pair_index_;  // n*n, -1 on edges/diagonal
};

Element multiply(const MeklerGroup& g, const Element& a, const Element& b);
Element inverse(const MeklerGroup& g, const Element& a);
// a^k for any integer k (negative exponents allowed).
Element power(const MeklerGroup& g, const Element& a, std::int64_t k);
// [a, b] = a^{-1} b^{-1} a b.
Element commutator(const MeklerGroup& g, const Element& a, const Element& b);

bool is_central(const MeklerGroup& g, const Element& a);
// pi: G -> V = G/Z.
Coords project_mod_center(const MeklerGroup& g, const Element& a);
// rho: the central part of a if a is central, the zero W-vector otherwise.
Coords center_part(const MeklerGroup& g, const Element& a);

// Basis of {v in V : beta(pi(a), v) = 0}; C(a) is its preimage in G, so
// |C(a)| = p^(kernel dim + dim W).
std::vector<Coords> centralizer_basis(const MeklerGroup& g, const Element& a);
std::vector<Coords> centralizer_basis(const MeklerGroup& g,
                                      std::span<const Scalar> v);

// ---- enumeration ---------------------------------------------------------

// Element with the given rank in lexicographic coordinate order
// (gen before com, last coordinate fastest).
Element element_at(const MeklerGroup& g, std::uint64_t index);

class ElementRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Element;
    using difference_type = std::ptrdiff_t;
    using pointer = const Element*;
    using reference = const Element&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      auto old = *this;
      ++*this;
      return old;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.index_ == b.index_;
    }

   private:
    friend class ElementRange;
    iterator(const MeklerGroup* g, std::uint64_t index, Element e)
        : group_(g), index_(index), current_(std::move(e)) {}
    const MeklerGroup* group_ = nullptr;
    std::uint64_t index_ = 0;
    Element current_;
  };

  ElementRange(const MeklerGroup& g, std::uint64_t first, std::uint64_t last);
  iterator begin() const;
  iterator end() const;
  std::uint64_t size() const { return last_ - first_; }

 private:
  const MeklerGroup* group_;
  std::uint64_t first_, last_;
};

// All of G. Throws CapExceeded if |G| > cap.
ElementRange enumerate_elements(const MeklerGroup& g,
                                std::uint64_t cap = kDefaultEnumerationCap);
// Ranks [first, last); disjoint ranges may be walked concurrently.
ElementRange enumerate_range(const MeklerGroup& g, std::uint64_t first,
                             std::uint64_t last,
                             std::uint64_t cap = kDefaultEnumerationCap);

// ---- text form -----------------------------------------------------------

// `gen=[...];com=[...]`
std::string format_element(const Element& a);
// Throws InputError on malformed text or if the element does not belong to g.
Element parse_element(const MeklerGroup& g, const std::string& text);

}  // namespace mekler
