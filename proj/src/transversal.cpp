#include "mekler/transversal.hpp"

#include <functional>

namespace mekler {

std::string to_string(Baseline b) {
  switch (b) {
    case Baseline::Center: return "Z";
    case Baseline::CenterNu: return "Z+Enu";
    case Baseline::CenterNuP: return "Z+Enu+Ep";
    case Baseline::NuPIotaWithinCenter: return "Enu+Ep+Eiota|Z";
    case Baseline::CustomV: return "custom-V";
    case Baseline::CustomW: return "custom-W";
  }
  return "?";
}

Baseline parse_baseline(const std::string& name) {
  for (auto b : {Baseline::Center, Baseline::CenterNu, Baseline::CenterNuP,
                 Baseline::NuPIotaWithinCenter, Baseline::CustomV,
                 Baseline::CustomW}) {
    if (to_string(b) == name) return b;
  }
  throw InputError("unknown baseline '" + name + "'");
}

namespace {

bool central_tag(Baseline b) {
  return b == Baseline::NuPIotaWithinCenter || b == Baseline::CustomW;
}

// Calls visit(v) for every v in V in lexicographic order.
void for_each_image(const MeklerGroup& g, std::uint64_t cap,
                    const std::function<void(const Coords&)>& visit) {
  const auto total = checked_pow(g.p(), g.dim_v());
  if (!total || *total > cap) {
    throw CapExceeded("V has too many elements to enumerate",
                      total ? std::to_string(*total) : "overflow");
  }
  Coords v(g.dim_v(), 0);
  while (next_vector(v, g.p())) visit(v);
}

// Images of type 1^nu are the non-zero multiples of unit vectors e_u whose
// support has one vertex, so the e_u span pi(<Z, E^nu>).
Span nu_span(const MeklerGroup& g) {
  Span s(g.field(), g.dim_v());
  for (Vertex u = 0; u < g.dim_v(); ++u) {
    const auto e = unit_vector(g.dim_v(), u);
    if (type_of(g, e).tag == TypeTag::OneNu) s.insert(e);
  }
  return s;
}

}  // namespace

Span baseline_subspace(const MeklerGroup& g, const BaselineSpec& baseline) {
  switch (baseline.tag) {
    case Baseline::Center:
      return Span(g.field(), g.dim_v());
    case Baseline::CenterNu:
      return nu_span(g);
    case Baseline::CenterNuP: {
      auto s = nu_span(g);
      if (s.dim() == g.dim_v()) return s;
      for_each_image(g, kDefaultEnumerationCap, [&](const Coords& v) {
        if (type_of(g, v).tag == TypeTag::TypeP) s.insert(v);
      });
      return s;
    }
    case Baseline::NuPIotaWithinCenter: {
      // Each E-set is a union of Z-cosets, so it generates all of Z as soon
      // as it is non-empty; E^nu contains the generators when dim V > 0.
      Span s(g.field(), g.dim_w());
      if (g.dim_v() > 0) {
        for (std::size_t k = 0; k < g.dim_w(); ++k) {
          s.insert(unit_vector(g.dim_w(), k));
        }
      }
      return s;
    }
    case Baseline::CustomV:
    case Baseline::CustomW: {
      const auto dim = baseline.tag == Baseline::CustomV ? g.dim_v() : g.dim_w();
      for (const auto& v : baseline.generators) {
        if (v.size() != dim) throw InputError("baseline generator has wrong dimension");
        for (Scalar s : v) {
          if (s >= g.p()) throw InputError("baseline entries must lie in 0..p-1");
        }
      }
      return Span(g.field(), dim, baseline.generators);
    }
  }
  throw InputError("unknown baseline");
}

bool independent_over(const MeklerGroup& g, const std::vector<Element>& tuple,
                      const BaselineSpec& baseline) {
  auto span = baseline_subspace(g, baseline);
  const bool central = central_tag(baseline.tag);
  for (const auto& a : tuple) {
    g.validate(a);
    if (central && !is_central(g, a)) {
      throw InputError("central baseline needs central tuple members");
    }
    if (!span.insert(central ? center_part(g, a) : project_mod_center(g, a))) {
      return false;
    }
  }
  return true;
}

std::vector<Element> Transversal::members() const {
  std::vector<Element> out = x_nu;
  out.insert(out.end(), x_p.begin(), x_p.end());
  out.insert(out.end(), x_iota.begin(), x_iota.end());
  return out;
}

namespace {

Element image_element(const MeklerGroup& g, const Coords& v) {
  return Element{v, Coords(g.dim_w(), 0)};
}

// Extends `chosen` greedily by images of type `tag` independent over `span`.
Attestation extend(const MeklerGroup& g, TypeTag tag, Span& span,
                   std::vector<Element>& chosen, std::uint64_t cap) {
  Attestation a;
  const auto total = checked_pow(g.p(), g.dim_v());
  if (total && *total <= cap) {
    for_each_image(g, cap, [&](const Coords& v) {
      if (type_of(g, v).tag != tag) return;
      ++a.candidates_examined;
      if (span.insert(v)) chosen.push_back(image_element(g, v));
    });
    a.maximal = true;
    a.method = "enumerated";
  } else if (span.dim() == g.dim_v()) {
    a.maximal = true;
    a.method = "dimension";
  } else {
    throw InternalError("cannot certify maximality without enumerating V");
  }
  return a;
}

}  // namespace

Transversal compute_transversal(const MeklerGroup& g, std::uint64_t cap) {
  Transversal t;
  Span span(g.field(), g.dim_v());
  // Generators first, then any further 1^nu images.
  for (Vertex u = 0; u < g.dim_v(); ++u) {
    const auto e = unit_vector(g.dim_v(), u);
    if (type_of(g, e).tag == TypeTag::OneNu && span.insert(e)) {
      t.x_nu.push_back(g.generator(u));
    }
  }
  t.nu = extend(g, TypeTag::OneNu, span, t.x_nu, cap);
  t.nu.candidates_examined += g.dim_v();
  t.p = extend(g, TypeTag::TypeP, span, t.x_p, cap);
  t.iota = extend(g, TypeTag::OneIota, span, t.x_iota, cap);
  return t;
}

Transversal compute_full_transversal(const MeklerGroup& g, std::uint64_t cap) {
  auto t = compute_transversal(g, cap);
  auto span = baseline_subspace(g, {Baseline::NuPIotaWithinCenter, {}});
  // The unit vectors span W, so one greedy pass over them is maximal.
  for (std::size_t k = 0; k < g.dim_w(); ++k) {
    const auto e = unit_vector(g.dim_w(), k);
    if (span.insert(e)) t.x_zeta.push_back(g.central(e));
  }
  t.zeta = Attestation{true, g.dim_w(), "enumerated"};
  t.full = true;
  return t;
}

// ---- normal form -----------------------------------------------------------------

namespace {

// Rows k: coordinates of e_k in `basis`, which must be a basis of F_p^dim.
std::vector<Coords> inverse_rows(const PrimeField& f,
                                 const std::vector<Coords>& basis,
                                 std::size_t dim, const char* what) {
  if (basis.size() != dim || rank(f, basis, dim) != dim) {
    throw InputError(std::string(what) + " do not form a basis");
  }
  std::vector<Coords> rows;
  for (std::size_t k = 0; k < dim; ++k) {
    rows.push_back(*solve_combination(f, basis, unit_vector(dim, k), dim));
  }
  return rows;
}

Coords coordinates(const PrimeField& f, const std::vector<Coords>& inverse,
                   std::span<const Scalar> v, std::size_t width) {
  Coords out(width, 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0) f.axpy(out, v[k], inverse[k]);
  }
  return out;
}

}  // namespace

NormalFormFrame::NormalFormFrame(const MeklerGroup& g, const Transversal& t)
    : g_(&g), members_(t.members()), zeta_(t.x_zeta) {
  if (!t.full) throw InputError("normal form needs a full transversal");
  std::vector<Coords> images;
  for (const auto& x : members_) {
    g.validate(x);
    images.push_back(x.gen);
  }
  v_inverse_ = inverse_rows(g.field(), images, g.dim_v(), "transversal images");

  Span kept(g.field(), g.dim_w());
  std::vector<Coords> central;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (std::size_t j = i + 1; j < members_.size(); ++j) {
      auto c = commutator(g, members_[i], members_[j]);
      if (kept.insert(c.com)) {
        pairs_.emplace_back(i, j);
        central.push_back(c.com);
        commutators_.push_back(std::move(c));
      }
    }
  }
  for (const auto& z : zeta_) {
    g.validate(z);
    if (!is_central(g, z)) throw InputError("x_zeta member is not central");
    central.push_back(z.com);
  }
  w_inverse_ = inverse_rows(g.field(), central, g.dim_w(),
                            "commutators and x_zeta");
}

TransversalCoordinates NormalFormFrame::decompose(const Element& a) const {
  const auto& g = *g_;
  g.validate(a);
  TransversalCoordinates c;
  c.x = coordinates(g.field(), v_inverse_, a.gen, members_.size());
  Element prefix = g.identity();
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (c.x[i] != 0) prefix = multiply(g, prefix, power(g, members_[i], c.x[i]));
  }
  const auto residual = multiply(g, inverse(g, prefix), a);
  if (!is_zero(residual.gen)) throw InternalError("normal form residual not central");
  const auto all = coordinates(g.field(), w_inverse_, residual.com, g.dim_w());
  c.pairs.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(pairs_.size()));
  c.zeta.assign(all.begin() + static_cast<std::ptrdiff_t>(pairs_.size()), all.end());
  return c;
}

Element NormalFormFrame::recompose(const TransversalCoordinates& c) const {
  const auto& g = *g_;
  if (c.x.size() != members_.size() || c.pairs.size() != pairs_.size() ||
      c.zeta.size() != zeta_.size()) {
    throw InputError("coordinate record does not match the transversal");
  }
  Element out = g.identity();
  for (std::size_t i = 0; i < members_.size(); ++i) {
    out = multiply(g, out, power(g, members_[i], c.x[i]));
  }
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    out = multiply(g, out, power(g, commutators_[k], c.pairs[k]));
  }
  for (std::size_t k = 0; k < zeta_.size(); ++k) {
    out = multiply(g, out, power(g, zeta_[k], c.zeta[k]));
  }
  return out;
}

TransversalCoordinates normal_form_wrt(const MeklerGroup& g, const Element& a,
                                       const Transversal& t) {
  return NormalFormFrame(g, t).decompose(a);
}

Element recompose(const MeklerGroup& g, const TransversalCoordinates& c,
                  const Transversal& t) {
  return NormalFormFrame(g, t).recompose(c);
}

// ---- quantifier-free predicates -------------------------------------------------

namespace {

// Calls test(k, product) for every non-trivial exponent vector k; stops at
// the first product for which test returns true and reports it.
void check_products(const MeklerGroup& g, const std::vector<Element>& xs,
                    const std::string& family, std::uint64_t cap,
                    QfCheckReport& report,
                    const std::function<bool(const Element&)>& bad) {
  if (xs.empty()) return;
  const auto total = checked_pow(g.p(), xs.size());
  if (!total || report.products_checked + *total > cap) {
    throw CapExceeded("too many power products to check",
                      total ? std::to_string(*total) : "overflow");
  }
  Coords k(xs.size(), 0);
  while (next_vector(k, g.p())) {
    ++report.products_checked;
    Element prod = g.identity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (k[i] != 0) prod = multiply(g, prod, power(g, xs[i], k[i]));
    }
    if (bad(prod)) {
      report.pass = false;
      report.violations.push_back(family + ": power product with exponents " +
                                  format_coords(k) + " violates the predicate");
      return;
    }
  }
}

void check_types(const MeklerGroup& g, const std::vector<Element>& xs,
                 TypeTag tag, const std::string& family, QfCheckReport& report) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    g.validate(xs[i]);
    const auto actual = type_of(g, xs[i]).tag;
    if (actual != tag) {
      report.pass = false;
      report.violations.push_back(family + "[" + std::to_string(i) + "] has type " +
                                  to_string(actual) + ", expected " + to_string(tag));
    }
  }
}

}  // namespace

QfCheckReport transversal_qf_check(const MeklerGroup& g, const Transversal& t,
                                   std::uint64_t cap) {
  QfCheckReport r;
  check_types(g, t.x_nu, TypeTag::OneNu, "x_nu", r);
  check_types(g, t.x_p, TypeTag::TypeP, "x_p", r);
  check_types(g, t.x_iota, TypeTag::OneIota, "x_iota", r);
  check_types(g, t.x_zeta, TypeTag::Central, "x_zeta", r);
  if (!r.pass) return r;

  const std::size_t n = g.dim_v();
  check_products(g, t.x_nu, "x_nu independent over Z", cap, r,
                 [&](const Element& a) { return is_central(g, a); });
  check_products(g, t.x_p, "x_p outside A_{n,0}", cap, r,
                 [&](const Element& a) { return in_A(g, a, n, 0); });
  check_products(g, t.x_iota, "x_iota outside A_{n,m}", cap, r,
                 [&](const Element& a) { return in_A(g, a, n, n); });
  const auto commutator_span =
      baseline_subspace(g, {Baseline::NuPIotaWithinCenter, {}});
  check_products(g, t.x_zeta, "x_zeta independent over the commutators", cap, r,
                 [&](const Element& a) { return commutator_span.contains(a.com); });
  return r;
}

}  // namespace mekler
