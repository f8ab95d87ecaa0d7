#pragma once

// Centraliser classes, element types, handles, the A_{n,m} predicates with
// their supports, and the graphs Gamma(X) of a finite Mekler group.
//
// Everything here factors through pi: G -> V. C(g) is the preimage of the
// kernel of beta(pi(g), -), and g ≈ h depends only on the lines spanned by
// pi(g) and pi(h). The element-level functions therefore reduce to the
// V-vector overloads.
//
// Type case analysis for a non-zero v in V with support S (the vertices with
// a non-zero coordinate) and T = {u : every s in S \ {u} is adjacent to u},
// the vertices whose generators commute with v:
//
//   |S| = 1                    type 1^nu     class {a e_u}
//   S = {i, j} an edge         type p-1      class {a e_i + b e_j : a,b != 0}
//   T = {a}                    type p        class {l v + m e_a : l != 0},
//                                            handle [x_a]
//   T empty                    type 1^iota   class {l v : l != 0}
//
// In a nice graph these cases are exhaustive: two vertices of T outside S
// would close a square through S, and one inside S would close a triangle.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mekler/group.hpp"

namespace mekler {

enum class TypeTag { Central, OneNu, PMinusOne, TypeP, OneIota };
enum class Isolation { NotApplicable, Nu, Iota };

std::string to_string(TypeTag tag);
std::string to_string(Isolation iso);

// Canonical name of a ~-class: the lexicographically least pi-image of a
// class member whose first non-zero coordinate is 1. The central class is
// named by the zero vector.
struct ClassId {
  Coords rep;
  friend auto operator<=>(const ClassId&, const ClassId&) = default;
};

struct ElementType {
  TypeTag tag = TypeTag::Central;
  Isolation isolation = Isolation::NotApplicable;
  std::optional<ClassId> handle;  // set exactly for TypeP

  // Number of ≈-classes inside the ~-class (0 for the central class).
  std::uint64_t q(Scalar p) const;
  friend bool operator==(const ElementType&, const ElementType&) = default;
};

// g ~ h iff C(g) = C(h); decided by comparing centraliser kernels.
bool sim_equiv(const MeklerGroup& g, const Element& a, const Element& b);

// g ≈ h iff h = g^alpha c with c central and alpha a unit, i.e. pi(g) and
// pi(h) span the same subspace. Central elements form one class.
bool approx_equiv(const MeklerGroup& g, const Element& a, const Element& b);

// Vertices u with beta(v, e_u) = 0.
std::vector<Vertex> commuting_vertices(const MeklerGroup& g,
                                       std::span<const Scalar> v);

ElementType type_of(const MeklerGroup& g, std::span<const Scalar> v);
ElementType type_of(const MeklerGroup& g, const Element& a);

ClassId class_id(const MeklerGroup& g, std::span<const Scalar> v);
ClassId class_id(const MeklerGroup& g, const Element& a);

// Throws DomainError unless a is of type p.
ClassId handle(const MeklerGroup& g, const Element& a);

// The vertex u whose generator class [x_u] is `id`, if id names such a class.
std::optional<Vertex> vertex_of_class(const ClassId& id);

// ---- A_{n,m} and supports --------------------------------------------------
//
// v is in A_{n,m} when v = a_1 + ... + a_k + g_1 + ... + g_l with k <= n
// elements a_i of type 1^nu, l <= m elements g_j of type p with pairwise
// distinct handles, and no g_j a product of at most n elements of type 1^nu
// (its support has more than n vertices). The 1^nu part of a witness is
// determined by the residual v - sum g_j, one factor per support vertex.

struct AIndex {
  std::size_t n = 0;
  std::size_t m = 0;
  friend bool operator==(const AIndex&, const AIndex&) = default;
};

// Order used for minimal indices: m first, then n.
bool reverse_lex_less(const AIndex& a, const AIndex& b);

struct Decomposition {
  std::vector<Coords> nu_factors;  // one per vertex of the residual support
  std::vector<Coords> p_factors;   // sorted by handle vertex
  std::vector<Vertex> handles;     // handle vertex of each p factor
};

// All witnesses of v in A_{n,m} (empty iff v is not in A_{n,m}). Throws
// CapExceeded if more than `limit` candidate combinations would be tried.
std::vector<Decomposition> decompositions(const MeklerGroup& g,
                                          std::span<const Scalar> v,
                                          std::size_t n, std::size_t m,
                                          std::uint64_t limit = 50'000'000);

bool in_A(const MeklerGroup& g, std::span<const Scalar> v, std::size_t n,
          std::size_t m);
bool in_A(const MeklerGroup& g, const Element& a, std::size_t n,
          std::size_t m);

// Reverse-lexicographically least (n, m) with a in A_{n,m}.
AIndex minimal_A_index(const MeklerGroup& g, std::span<const Scalar> v);
AIndex minimal_A_index(const MeklerGroup& g, const Element& a);

struct SupportRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  std::set<ClassId> s;          // S_{n,m}: classes of the 1^nu factors
  std::set<ClassId> s_handles;  // S'_{n,m}: handles of the type-p factors
  bool minimal = false;         // (n, m) is the minimal index of the element
  // Every witness using the fewest factors yields the same (s, s_handles).
  bool witness_independent = true;
};

// Supports read off the witness with the fewest type-p factors, then the
// fewest 1^nu factors, ties broken by the least handle list and factors.
// nullopt is the undetermined value: a is not in A_{n,m}.
std::optional<SupportRecord> support(const MeklerGroup& g, const Element& a,
                                     std::size_t n, std::size_t m);
std::optional<SupportRecord> support(const MeklerGroup& g,
                                     std::span<const Scalar> v, std::size_t n,
                                     std::size_t m);

// ---- Gamma graphs ------------------------------------------------------------

struct QuotientGraph {
  std::vector<ClassId> classes;          // sorted; vertex k of `graph`
  std::vector<Element> representatives;  // first member of X in each class
  Graph graph;                           // commutation between classes
};

// Gamma(X) = X/~ with [a] R [b] iff a and b commute. X should be closed under
// ~; central elements are rejected with DomainError.
QuotientGraph gamma_graph(const MeklerGroup& g, const std::vector<Element>& x);

struct RecoveredGraph {
  QuotientGraph quotient;             // Gamma(E^nu)
  std::vector<Vertex> class_to_input; // [x_i] -> i
  std::vector<Vertex> isomorphism;    // found by graph_isomorphic
};

// Gamma(E^nu), built from the generator classes without enumerating G.
// Throws InternalError if the result is not isomorphic to the input graph.
RecoveredGraph recover_graph(const MeklerGroup& g);

// ---- census -------------------------------------------------------------------

struct TypeCensus {
  std::uint64_t central = 0;
  std::uint64_t one_nu = 0;
  std::optional<std::uint64_t> p_minus_one;
  std::optional<std::uint64_t> type_p;
  std::optional<std::uint64_t> one_iota;
  bool complete = false;  // false: only the structural counts are filled in
};

// Exact counts over G when |G| <= cap (walking V and weighting each image by
// |Z|); otherwise only Central = |Z| and OneNu = |V|(p-1)|Z|. Throws
// CapExceeded if even those do not fit in 64 bits.
TypeCensus type_census(const MeklerGroup& g,
                       std::uint64_t cap = kDefaultEnumerationCap);

// ---- inp pattern --------------------------------------------------------------

struct InpReport {
  std::size_t m = 0;
  std::vector<Vertex> vertices;
  std::size_t m_subsets_checked = 0;
  std::size_t m_subsets_realised = 0;
  std::size_t larger_subsets_checked = 0;   // (m+1)-subsets
  std::size_t larger_subsets_realised = 0;  // should be 0
  bool consistent = false;    // every m-subset is realised
  bool inconsistent = false;  // no (m+1)-subset is realised
  std::optional<std::size_t> inconsistent_at;  // m+1 when `inconsistent`
  // One realising element per m-subset, in subset order.
  std::vector<std::pair<std::vector<Vertex>, Element>> witnesses;
};

// Checks the family phi(x; y) = A_{m,0}(pi(x)) and y in S_{m,0}(x) over the
// vertex array: every m-subset is realised by some x, no (m+1)-subset is.
// Walks all of V; throws CapExceeded if p^|V| > cap, InputError on bad input.
InpReport inp_pattern_check(const MeklerGroup& g, std::size_t m,
                            const std::vector<Vertex>& vertices,
                            std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace mekler
