#pragma once

// Independence over subgroups, transversals X = X^nu X^p X^iota, full
// transversals (with X^zeta) and the normal form relative to them.
//
// In a group of exponent p and class 2 a product of powers of a_1..a_k that
// lies in a subgroup H containing Z only depends on the images in V = G/Z, so
// "no term in elements of H kills the tuple" is linear independence of the
// pi-images modulo pi(H). For tuples inside Z the same holds for the central
// parts modulo H intersected with Z.

#include <cstdint>
#include <string>
#include <vector>

#include "mekler/classification.hpp"
#include "mekler/group.hpp"

namespace mekler {

enum class Baseline {
  Center,             // Z
  CenterNu,           // <Z, E^nu>
  CenterNuP,          // <Z, E^nu, E^p>
  NuPIotaWithinCenter,  // <E^nu, E^p, E^iota> intersected with Z
  CustomV,            // a subgroup containing Z, given by its image in V
  CustomW,            // a subgroup of Z, given by its central parts
};

std::string to_string(Baseline b);
// Accepts the names printed by to_string. Throws InputError otherwise.
Baseline parse_baseline(const std::string& name);

struct BaselineSpec {
  Baseline tag = Baseline::Center;
  std::vector<Coords> generators;  // only for the custom tags
};

// The baseline as a subspace of V (or of W for the central tags).
Span baseline_subspace(const MeklerGroup& g, const BaselineSpec& baseline);

// For the central tags every tuple member must be central (InputError
// otherwise) and the central parts are compared modulo the baseline.
bool independent_over(const MeklerGroup& g, const std::vector<Element>& tuple,
                      const BaselineSpec& baseline);

struct Attestation {
  bool maximal = false;
  std::uint64_t candidates_examined = 0;
  // "enumerated": every candidate image was tried; "dimension": the baseline
  // plus the chosen elements already span the ambient space.
  std::string method;
};

struct Transversal {
  std::vector<Element> x_nu, x_p, x_iota, x_zeta;
  Attestation nu, p, iota, zeta;
  bool full = false;  // x_zeta was computed

  // x_nu, x_p, x_iota in this order.
  std::vector<Element> members() const;
};

// Greedy in vertex order, then over images in lexicographic order. Images
// are enumerated only when p^dim V <= cap; otherwise maximality must follow
// from dimension (InternalError if it does not).
Transversal compute_transversal(const MeklerGroup& g,
                                std::uint64_t cap = kDefaultEnumerationCap);
Transversal compute_full_transversal(const MeklerGroup& g,
                                     std::uint64_t cap = kDefaultEnumerationCap);

// Exponents of g = prod x^{n_x} prod [x, y]^{n_xy} prod z^{n_z}. Pairs are
// indices into members(), x before y; only the pairs kept by the frame
// carry exponents.
struct TransversalCoordinates {
  Coords x;      // one per member
  Coords pairs;  // one per frame pair
  Coords zeta;   // one per x_zeta element
  friend auto operator<=>(const TransversalCoordinates&,
                          const TransversalCoordinates&) = default;
  friend bool operator==(const TransversalCoordinates&,
                         const TransversalCoordinates&) = default;
};

class NormalFormFrame {
 public:
  // Pairs (x, y) are taken in lexicographic order and kept when [x, y] is
  // independent of the earlier kept commutators. Throws InputError unless
  // the members span V and the kept commutators with x_zeta span W.
  NormalFormFrame(const MeklerGroup& g, const Transversal& t);

  const std::vector<Element>& members() const { return members_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const {
    return pairs_;
  }

  TransversalCoordinates decompose(const Element& a) const;
  Element recompose(const TransversalCoordinates& c) const;

 private:
  const MeklerGroup* g_;
  std::vector<Element> members_, zeta_, commutators_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  // Row k gives the coordinates of e_k in the member (resp. central) basis.
  std::vector<Coords> v_inverse_, w_inverse_;
};

TransversalCoordinates normal_form_wrt(const MeklerGroup& g, const Element& a,
                                       const Transversal& t);
Element recompose(const MeklerGroup& g, const TransversalCoordinates& c,
                  const Transversal& t);

struct QfCheckReport {
  bool pass = true;
  std::uint64_t products_checked = 0;
  std::vector<std::string> violations;
};

// The quantifier-free predicate families: members have their stated types,
// no non-trivial power product of x_nu is central, none of x_p lies in
// A_{n,0} and none of x_iota lies in A_{n,m}, with n = m = dim V (the largest
// index that matters in a finite group). Products are enumerated.
QfCheckReport transversal_qf_check(const MeklerGroup& g, const Transversal& t,
                                   std::uint64_t cap = 10'000'000);

}  // namespace mekler
