#include "mekler/classification.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace mekler {

std::string to_string(TypeTag tag) {
  switch (tag) {
    case TypeTag::Central: return "central";
    case TypeTag::OneNu: return "1^nu";
    case TypeTag::PMinusOne: return "p-1";
    case TypeTag::TypeP: return "p";
    case TypeTag::OneIota: return "1^iota";
  }
  return "?";
}

std::string to_string(Isolation iso) {
  switch (iso) {
    case Isolation::NotApplicable: return "none";
    case Isolation::Nu: return "nu";
    case Isolation::Iota: return "iota";
  }
  return "?";
}

std::uint64_t ElementType::q(Scalar p) const {
  switch (tag) {
    case TypeTag::Central: return 0;
    case TypeTag::OneNu:
    case TypeTag::OneIota: return 1;
    case TypeTag::PMinusOne: return p - 1;
    case TypeTag::TypeP: return p;
  }
  return 0;
}

namespace {

void check_dim(const MeklerGroup& g, std::span<const Scalar> v) {
  if (v.size() != g.dim_v()) throw InputError("V-vector has wrong dimension");
  if (!std::all_of(v.begin(), v.end(), [&](Scalar s) { return s < g.p(); })) {
    throw InputError("V-vector coordinates must lie in 0..p-1");
  }
}

std::vector<Vertex> support_of(std::span<const Scalar> v) {
  std::vector<Vertex> s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) s.push_back(i);
  }
  return s;
}

std::span<const Scalar> image(const MeklerGroup& g, const Element& a) {
  g.validate(a);
  return a.gen;
}

}  // namespace

bool sim_equiv(const MeklerGroup& g, const Element& a, const Element& b) {
  const auto& f = g.field();
  return Span(f, g.dim_v(), centralizer_basis(g, a)) ==
         Span(f, g.dim_v(), centralizer_basis(g, b));
}

bool approx_equiv(const MeklerGroup& g, const Element& a, const Element& b) {
  const auto& f = g.field();
  const auto u = image(g, a);
  const auto v = image(g, b);
  return Span(f, g.dim_v(), {Coords(u.begin(), u.end())}) ==
         Span(f, g.dim_v(), {Coords(v.begin(), v.end())});
}

std::vector<Vertex> commuting_vertices(const MeklerGroup& g,
                                       std::span<const Scalar> v) {
  check_dim(g, v);
  const auto& c = g.graph();
  const auto s = support_of(v);
  std::vector<Vertex> t;
  for (Vertex u = 0; u < g.dim_v(); ++u) {
    if (std::all_of(s.begin(), s.end(),
                    [&](Vertex w) { return w == u || c.adjacent(u, w); })) {
      t.push_back(u);
    }
  }
  return t;
}

ElementType type_of(const MeklerGroup& g, std::span<const Scalar> v) {
  check_dim(g, v);
  const auto s = support_of(v);
  if (s.empty()) return {};
  if (s.size() == 1) return {TypeTag::OneNu, Isolation::Nu, std::nullopt};
  if (s.size() == 2 && g.graph().adjacent(s[0], s[1])) {
    return {TypeTag::PMinusOne, Isolation::Nu, std::nullopt};
  }
  const auto t = commuting_vertices(g, v);
  if (t.empty()) return {TypeTag::OneIota, Isolation::Iota, std::nullopt};
  if (t.size() == 1) {
    return {TypeTag::TypeP, Isolation::Nu,
            ClassId{unit_vector(g.dim_v(), t.front())}};
  }
  throw DomainError("element " + format_coords(v) +
                    " falls outside the type analysis; the graph is not nice");
}

ElementType type_of(const MeklerGroup& g, const Element& a) {
  return type_of(g, image(g, a));
}

ClassId class_id(const MeklerGroup& g, std::span<const Scalar> v) {
  const auto type = type_of(g, v);
  const auto& f = g.field();
  const auto s = support_of(v);
  switch (type.tag) {
    case TypeTag::Central: return {Coords(g.dim_v(), 0)};
    case TypeTag::OneNu: return {unit_vector(g.dim_v(), s[0])};
    case TypeTag::PMinusOne: {
      Coords id(g.dim_v(), 0);
      id[s[0]] = id[s[1]] = 1;
      return {id};
    }
    case TypeTag::TypeP: {
      const Vertex a = *leading_index(type.handle->rep);
      Coords best;
      Coords w(v.begin(), v.end());
      for (Scalar mu = 0; mu < g.p(); ++mu) {
        w[a] = f.add(v[a], mu);
        auto cand = f.normalized(w);
        if (best.empty() || cand < best) best = std::move(cand);
      }
      return {best};
    }
    case TypeTag::OneIota: return {f.normalized(v)};
  }
  throw InternalError("unknown type tag");
}

ClassId class_id(const MeklerGroup& g, const Element& a) {
  return class_id(g, image(g, a));
}

ClassId handle(const MeklerGroup& g, const Element& a) {
  auto type = type_of(g, a);
  if (type.tag != TypeTag::TypeP) {
    throw DomainError("handle is defined only for elements of type p; " +
                      format_element(a) + " has type " + to_string(type.tag));
  }
  return *type.handle;
}

std::optional<Vertex> vertex_of_class(const ClassId& id) {
  if (support_size(id.rep) != 1) return std::nullopt;
  const auto u = *leading_index(id.rep);
  if (id.rep[u] != 1) return std::nullopt;
  return u;
}

// ---- A_{n,m} -----------------------------------------------------------------

bool reverse_lex_less(const AIndex& a, const AIndex& b) {
  return std::pair(a.m, a.n) < std::pair(b.m, b.n);
}

namespace {

// Type-p vectors with handle a and more than n support vertices. They live on
// the closed neighbourhood of a.
std::vector<Coords> p_candidates(const MeklerGroup& g, Vertex a,
                                 std::size_t n) {
  std::vector<Vertex> ball = g.graph().neighbors(a);
  ball.push_back(a);
  std::sort(ball.begin(), ball.end());
  std::vector<Coords> out;
  if (ball.size() <= n) return out;
  Coords local(ball.size(), 0);
  while (next_vector(local, g.p())) {
    if (support_size(local) <= n) continue;
    Coords w(g.dim_v(), 0);
    for (std::size_t k = 0; k < ball.size(); ++k) w[ball[k]] = local[k];
    const auto t = type_of(g, w);
    if (t.tag == TypeTag::TypeP && t.handle->rep[a] == 1) {
      out.push_back(std::move(w));
    }
  }
  return out;
}

// Calls `visit` on each witness in enumeration order until it returns false.
void search_decompositions(
    const MeklerGroup& g, std::span<const Scalar> v, std::size_t n,
    std::size_t m, std::uint64_t limit,
    const std::function<bool(const Decomposition&)>& visit) {
  check_dim(g, v);
  const auto& f = g.field();
  const auto& c = g.graph();
  const std::size_t dim = g.dim_v();
  const auto vs = support_of(v);

  std::map<Vertex, std::vector<Coords>> cache;
  auto candidates = [&](Vertex a) -> const std::vector<Coords>& {
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, p_candidates(g, a, n)).first;
    return it->second;
  };

  std::uint64_t tried = 0;
  bool stop = false;

  auto emit = [&](const std::vector<Vertex>& handles,
                  const std::vector<Coords>& factors, const Coords& residual) {
    Decomposition d;
    for (Vertex u : support_of(residual)) {
      Coords e(dim, 0);
      e[u] = residual[u];
      d.nu_factors.push_back(std::move(e));
    }
    d.p_factors = factors;
    d.handles = handles;
    if (!visit(d)) stop = true;
  };

  for (std::size_t count = 0; count <= std::min(m, dim) && !stop; ++count) {
    std::vector<Vertex> handles(count);
    // Lexicographic walk over increasing handle tuples.
    std::function<void(std::size_t, Vertex)> choose_handles;
    std::vector<Coords> factors(count);

    std::function<void(std::size_t, Coords&)> choose_factors =
        [&](std::size_t k, Coords& residual) {
          if (stop) return;
          if (k == count) {
            if (++tried > limit) {
              throw CapExceeded("A_{n,m} decomposition search",
                                std::to_string(tried));
            }
            if (support_size(residual) <= n) emit(handles, factors, residual);
            return;
          }
          for (const auto& w : candidates(handles[k])) {
            factors[k] = w;
            f.axpy(residual, g.p() - 1, w);
            choose_factors(k + 1, residual);
            f.axpy(residual, 1, w);
            if (stop) return;
          }
        };

    choose_handles = [&](std::size_t k, Vertex from) {
      if (stop) return;
      if (k == count) {
        // Factors only touch the closed neighbourhoods of their handles, so
        // the rest of supp(v) must already fit into the 1^nu part.
        std::size_t outside = 0;
        for (Vertex s : vs) {
          const bool covered = std::any_of(
              handles.begin(), handles.end(),
              [&](Vertex a) { return a == s || c.adjacent(a, s); });
          if (!covered) ++outside;
        }
        if (outside > n) return;
        Coords residual(v.begin(), v.end());
        choose_factors(0, residual);
        return;
      }
      for (Vertex a = from; a < dim; ++a) {
        handles[k] = a;
        choose_handles(k + 1, a + 1);
        if (stop) return;
      }
    };
    choose_handles(0, 0);
  }
}

std::pair<std::set<ClassId>, std::set<ClassId>> supports_of(
    const MeklerGroup& g, const Decomposition& d) {
  std::set<ClassId> s, sh;
  for (const auto& a : d.nu_factors) s.insert(class_id(g, a));
  for (Vertex h : d.handles) sh.insert(ClassId{unit_vector(g.dim_v(), h)});
  return {s, sh};
}

}  // namespace

std::vector<Decomposition> decompositions(const MeklerGroup& g,
                                          std::span<const Scalar> v,
                                          std::size_t n, std::size_t m,
                                          std::uint64_t limit) {
  std::vector<Decomposition> out;
  search_decompositions(g, v, n, m, limit, [&](const Decomposition& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

bool in_A(const MeklerGroup& g, std::span<const Scalar> v, std::size_t n,
          std::size_t m) {
  check_dim(g, v);
  if (support_size(v) <= n) return true;
  bool found = false;
  search_decompositions(g, v, n, m, UINT64_MAX, [&](const Decomposition&) {
    found = true;
    return false;
  });
  return found;
}

bool in_A(const MeklerGroup& g, const Element& a, std::size_t n,
          std::size_t m) {
  return in_A(g, image(g, a), n, m);
}

AIndex minimal_A_index(const MeklerGroup& g, std::span<const Scalar> v) {
  check_dim(g, v);
  // With m compared first, (|supp v|, 0) always wins: v is the sum of its
  // coordinate pieces, and no index with m = 0 and fewer factors holds v.
  return {support_size(v), 0};
}

AIndex minimal_A_index(const MeklerGroup& g, const Element& a) {
  return minimal_A_index(g, image(g, a));
}

std::optional<SupportRecord> support(const MeklerGroup& g,
                                     std::span<const Scalar> v, std::size_t n,
                                     std::size_t m) {
  const auto all = decompositions(g, v, n, m);
  if (all.empty()) return std::nullopt;
  auto key = [](const Decomposition& d) {
    return std::pair(d.p_factors.size(), d.nu_factors.size());
  };
  const auto best = std::min_element(
      all.begin(), all.end(),
      [&](const auto& a, const auto& b) { return key(a) < key(b); });
  SupportRecord rec;
  rec.n = n;
  rec.m = m;
  std::tie(rec.s, rec.s_handles) = supports_of(g, *best);
  rec.minimal = minimal_A_index(g, v) == AIndex{n, m};
  for (const auto& d : all) {
    if (key(d) == key(*best) &&
        supports_of(g, d) != std::pair(rec.s, rec.s_handles)) {
      rec.witness_independent = false;
      break;
    }
  }
  return rec;
}

std::optional<SupportRecord> support(const MeklerGroup& g, const Element& a,
                                     std::size_t n, std::size_t m) {
  return support(g, image(g, a), n, m);
}

// ---- Gamma graphs ---------------------------------------------------------------

QuotientGraph gamma_graph(const MeklerGroup& g, const std::vector<Element>& x) {
  std::map<ClassId, Element> reps;
  for (const auto& a : x) {
    if (is_central(g, a)) {
      throw DomainError("Gamma(X) needs non-central elements; " +
                        format_element(a) + " is central");
    }
    reps.try_emplace(class_id(g, a), a);
  }
  QuotientGraph out;
  for (auto& [id, a] : reps) {
    out.classes.push_back(id);
    out.representatives.push_back(a);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < out.classes.size(); ++i) {
    for (std::size_t j = i + 1; j < out.classes.size(); ++j) {
      if (is_zero(g.beta(out.representatives[i].gen,
                         out.representatives[j].gen))) {
        edges.emplace_back(i, j);
      }
    }
  }
  out.graph = Graph(out.classes.size(), edges);
  return out;
}

RecoveredGraph recover_graph(const MeklerGroup& g) {
  const std::size_t n = g.dim_v();
  std::vector<Element> gens;
  for (Vertex i = 0; i < n; ++i) gens.push_back(g.generator(i));
  // Generators must have pairwise distinct centralisers.
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (sim_equiv(g, gens[i], gens[j])) {
        throw InternalError("generators " + std::to_string(i) + " and " +
                            std::to_string(j) + " have equal centralisers");
      }
    }
  }
  RecoveredGraph out{gamma_graph(g, gens), {}, {}};
  for (const auto& id : out.quotient.classes) {
    const auto u = vertex_of_class(id);
    if (!u) throw InternalError("generator class is not a coordinate line");
    out.class_to_input.push_back(*u);
  }
  const auto iso = graph_isomorphic(out.quotient.graph, g.graph());
  if (!iso) {
    throw InternalError("Gamma(E^nu) is not isomorphic to the input graph");
  }
  out.isomorphism = *iso;
  for (const auto& [a, b] : out.quotient.graph.edges()) {
    if (!g.graph().adjacent(out.class_to_input[a], out.class_to_input[b])) {
      throw InternalError("class map [x_i] -> i is not a graph isomorphism");
    }
  }
  if (out.quotient.graph.edge_count() != g.graph().edge_count()) {
    throw InternalError("class map [x_i] -> i is not a graph isomorphism");
  }
  return out;
}

// ---- census -----------------------------------------------------------------------

TypeCensus type_census(const MeklerGroup& g, std::uint64_t cap) {
  const auto z = g.center_order();
  const auto order = g.order();
  TypeCensus out;
  const std::uint64_t nu_lines = g.dim_v() * (g.p() - 1);
  if (!z || (*z != 0 && nu_lines > UINT64_MAX / *z)) {
    throw CapExceeded("census counts overflow 64 bits",
                      std::to_string(g.p()) + "^" +
                          std::to_string(g.order_exponent()));
  }
  out.central = *z;
  out.one_nu = nu_lines * *z;
  if (!order || *order > cap) return out;

  std::uint64_t pm1 = 0, tp = 0, iota = 0;
  Coords v(g.dim_v(), 0);
  while (next_vector(v, g.p())) {
    switch (type_of(g, v).tag) {
      case TypeTag::PMinusOne: ++pm1; break;
      case TypeTag::TypeP: ++tp; break;
      case TypeTag::OneIota: ++iota; break;
      default: break;
    }
  }
  out.p_minus_one = pm1 * *z;
  out.type_p = tp * *z;
  out.one_iota = iota * *z;
  out.complete = true;
  return out;
}

// ---- inp pattern ---------------------------------------------------------------------

namespace {

// Calls visit(indices) for each k-subset of {0..size-1} in lexicographic order.
void for_each_subset(std::size_t size, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>&
                         visit) {
  if (k > size) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == size - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

InpReport inp_pattern_check(const MeklerGroup& g, std::size_t m,
                            const std::vector<Vertex>& vertices,
                            std::uint64_t cap) {
  if (m == 0) throw InputError("inp check needs m >= 1");
  if (g.dim_v() > 64) throw InputError("inp check supports at most 64 vertices");
  std::set<Vertex> distinct(vertices.begin(), vertices.end());
  if (distinct.size() != vertices.size()) {
    throw InputError("vertex array has repeated vertices");
  }
  if (!distinct.empty() && *distinct.rbegin() >= g.dim_v()) {
    throw InputError("vertex array has an out-of-range vertex");
  }
  if (vertices.size() < m + 1) {
    throw InputError("vertex array needs at least m+1 = " +
                     std::to_string(m + 1) + " vertices");
  }
  const auto size_v = checked_pow(g.p(), g.dim_v());
  if (!size_v || *size_v > cap) {
    throw CapExceeded("inp check walks V of size " + std::to_string(g.p()) +
                          "^" + std::to_string(g.dim_v()),
                      size_v ? std::to_string(*size_v) : "overflow");
  }

  // Realised supports S_{m,0}(x), as vertex masks, with a first witness each.
  std::map<std::uint64_t, Coords> realised;
  Coords v(g.dim_v(), 0);
  do {
    if (!in_A(g, v, m, 0)) continue;
    const auto rec = support(g, v, m, 0);
    std::uint64_t mask = 0;
    for (const auto& id : rec->s) mask |= std::uint64_t{1} << *vertex_of_class(id);
    realised.try_emplace(mask, v);
  } while (next_vector(v, g.p()));

  auto find_superset = [&](std::uint64_t want) -> const Coords* {
    for (const auto& [mask, x] : realised) {
      if ((mask & want) == want) return &x;
    }
    return nullptr;
  };

  InpReport out;
  out.m = m;
  out.vertices = vertices;
  for_each_subset(vertices.size(), m, [&](const auto& idx) {
    std::uint64_t want = 0;
    std::vector<Vertex> ys;
    for (auto i : idx) {
      want |= std::uint64_t{1} << vertices[i];
      ys.push_back(vertices[i]);
    }
    ++out.m_subsets_checked;
    if (const Coords* x = find_superset(want)) {
      ++out.m_subsets_realised;
      out.witnesses.emplace_back(ys, Element{*x, Coords(g.dim_w(), 0)});
    }
  });
  for_each_subset(vertices.size(), m + 1, [&](const auto& idx) {
    std::uint64_t want = 0;
    for (auto i : idx) want |= std::uint64_t{1} << vertices[i];
    ++out.larger_subsets_checked;
    if (find_superset(want)) ++out.larger_subsets_realised;
  });
  out.consistent = out.m_subsets_realised == out.m_subsets_checked;
  out.inconsistent = out.larger_subsets_realised == 0;
  if (out.inconsistent) out.inconsistent_at = m + 1;
  return out;
}

}  // namespace mekler
