#include "mekler/bilinear.hpp"

#include <algorithm>
#include <set>

namespace mekler {

BilinearSystem::BilinearSystem(Scalar p, std::size_t dim_v, std::size_t dim_w,
                               std::vector<Coords> pair_values)
    : field_(p), dim_v_(dim_v), dim_w_(dim_w), values_(std::move(pair_values)) {
  if (p == 2) throw InputError("bilinear systems need an odd prime");
  const std::size_t pairs = dim_v * (dim_v == 0 ? 0 : dim_v - 1) / 2;
  if (values_.size() != pairs) {
    throw InputError("expected " + std::to_string(pairs) +
                     " pair values for dim V = " + std::to_string(dim_v) +
                     ", got " + std::to_string(values_.size()));
  }
  for (const auto& w : values_) {
    if (w.size() != dim_w) throw InputError("pair value has wrong dimension");
    if (!std::all_of(w.begin(), w.end(), [p](Scalar s) { return s < p; })) {
      throw InputError("pair value entries must lie in 0..p-1");
    }
  }
}

std::size_t BilinearSystem::pair_index(std::size_t i, std::size_t j) const {
  if (!(i < j && j < dim_v_)) throw InputError("pair index needs i < j < dim V");
  return i * (2 * dim_v_ - i - 1) / 2 + (j - i - 1);
}

Coords BilinearSystem::basis_value(std::size_t i, std::size_t j) const {
  if (i == j) {
    if (i >= dim_v_) throw InputError("basis index out of range");
    return Coords(dim_w_, 0);
  }
  if (i < j) return values_[pair_index(i, j)];
  return field_.negated(values_[pair_index(j, i)]);
}

Coords BilinearSystem::beta(std::span<const Scalar> u,
                            std::span<const Scalar> v) const {
  if (u.size() != dim_v_ || v.size() != dim_v_) {
    throw InputError("V-vector has wrong dimension");
  }
  Coords w(dim_w_, 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < dim_v_; ++i) {
    for (std::size_t j = i + 1; j < dim_v_; ++j, ++k) {
      const Scalar c = field_.sub(field_.mul(u[i], v[j]), field_.mul(u[j], v[i]));
      field_.axpy(w, c, values_[k]);
    }
  }
  return w;
}

std::vector<Coords> BilinearSystem::commuting_space(
    std::span<const Scalar> v) const {
  // Column j of the map w -> beta(v, w) is beta(v, e_j).
  std::vector<Coords> rows(dim_w_, Coords(dim_v_, 0));
  for (std::size_t j = 0; j < dim_v_; ++j) {
    const auto col = beta(v, unit_vector(dim_v_, j));
    for (std::size_t k = 0; k < dim_w_; ++k) rows[k][j] = col[k];
  }
  return null_space(field_, rows, dim_v_);
}

BilinearSystem f_of_group(const MeklerGroup& g) {
  std::vector<Coords> values;
  for (Vertex i = 0; i < g.dim_v(); ++i) {
    for (Vertex j = i + 1; j < g.dim_v(); ++j) {
      values.push_back(g.beta_constants(i, j));
    }
  }
  return BilinearSystem(g.p(), g.dim_v(), g.dim_w(), std::move(values));
}

BilinearSystem wedge_quotient_fixture(Scalar p) {
  // Pairs 01 02 03 12 13 23; e0^e1 and e2^e3 share a coordinate.
  const std::size_t slot[] = {0, 1, 2, 3, 4, 0};
  std::vector<Coords> values;
  for (auto s : slot) values.push_back(unit_vector(5, s));
  return BilinearSystem(p, 4, 5, std::move(values));
}

Coords beta(const BilinearSystem& sys, std::span<const Scalar> u,
            std::span<const Scalar> v) {
  return sys.beta(u, v);
}

bool relation_R(const BilinearSystem& sys, std::span<const Scalar> u,
                std::span<const Scalar> v) {
  return is_zero(sys.beta(u, v));
}

// ---- separated bases -------------------------------------------------------------

namespace {

void check_vectors(const BilinearSystem& sys, const std::vector<Coords>& vs) {
  for (const auto& v : vs) {
    if (v.size() != sys.dim_v()) throw InputError("V-vector has wrong dimension");
    if (!std::all_of(v.begin(), v.end(), [&](Scalar s) { return s < sys.p(); })) {
      throw InputError("V-vector entries must lie in 0..p-1");
    }
  }
}

std::vector<Coords> echelon_basis(const BilinearSystem& sys,
                                  const std::vector<Coords>& spanning) {
  check_vectors(sys, spanning);
  return row_reduce(sys.field(), spanning, sys.dim_v()).rows;
}

// Non-zero points of span(basis) with leading coefficient 1, sparsest first.
std::vector<Coords> projective_points(const BilinearSystem& sys,
                                      const std::vector<Coords>& basis,
                                      std::uint64_t max_points) {
  const auto total = checked_pow(sys.p(), basis.size());
  if (!total || *total > max_points * (sys.p() - 1) + 1) {
    throw CapExceeded("subspace has too many projective points",
                      total ? std::to_string((*total - 1) / (sys.p() - 1))
                            : "overflow");
  }
  const auto& f = sys.field();
  std::vector<Coords> points;
  Coords c(basis.size(), 0);
  while (next_vector(c, sys.p())) {
    if (c[*leading_index(c)] != 1) continue;
    Coords v(sys.dim_v(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) f.axpy(v, c[i], basis[i]);
    points.push_back(std::move(v));
  }
  std::stable_sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    const auto sa = support_size(a), sb = support_size(b);
    return sa != sb ? sa < sb : a < b;
  });
  return points;
}

}  // namespace

SeparationCheck is_separated_basis(const BilinearSystem& sys,
                                   const std::vector<Coords>& vectors) {
  check_vectors(sys, vectors);
  if (rank(sys.field(), vectors, sys.dim_v()) != vectors.size()) {
    throw InputError("basis vectors are linearly dependent");
  }
  std::vector<Coords> values;
  std::vector<std::pair<std::size_t, std::size_t>> where;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      auto w = sys.beta(vectors[i], vectors[j]);
      if (is_zero(w)) continue;
      values.push_back(std::move(w));
      where.emplace_back(i, j);
    }
  }
  SeparationCheck out;
  const auto dep = find_dependency(sys.field(), values, sys.dim_w());
  out.separated = !dep;
  if (dep) {
    for (std::size_t k = 0; k < dep->size(); ++k) {
      if ((*dep)[k] != 0) {
        out.witness.push_back({where[k].first, where[k].second, (*dep)[k]});
      }
    }
  }
  return out;
}

std::optional<CountingCertificate> counting_certificate(
    const BilinearSystem& sys, const std::vector<Coords>& spanning,
    std::uint64_t max_pairs) {
  const auto basis = echelon_basis(sys, spanning);
  const std::size_t d = basis.size();
  const std::size_t needed = d * (d == 0 ? 0 : d - 1) / 2;
  std::vector<Coords> values;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      values.push_back(sys.beta(basis[i], basis[j]));
      // A commuting pair of basis vectors already defeats the hypothesis.
      if (is_zero(values.back())) return std::nullopt;
    }
  }
  const std::size_t span_dim = rank(sys.field(), values, sys.dim_w());
  if (span_dim >= needed) return std::nullopt;

  const auto total = checked_pow(sys.p(), d);
  const std::uint64_t points = total ? (*total - 1) / (sys.p() - 1) : UINT64_MAX;
  if (!total || points > 1'000'000 || points * (points - 1) / 2 > max_pairs) {
    throw CapExceeded("counting certificate needs all projective pairs",
                      total ? std::to_string(points * (points - 1) / 2)
                            : "overflow");
  }
  const auto pts = projective_points(sys, basis, points);
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (is_zero(sys.beta(pts[a], pts[b]))) return std::nullopt;
    }
  }
  return CountingCertificate{d, span_dim, needed};
}

std::string to_string(SeparationStatus s) {
  switch (s) {
    case SeparationStatus::Found: return "found";
    case SeparationStatus::NoneCertified: return "none-certified";
    case SeparationStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

// One round of the replacement procedure. Returns false when no isolated
// basis vector carries a non-zero alpha_i(a).
bool replace_isolated(const BilinearSystem& sys, std::vector<Coords>& basis,
                      const std::vector<PairTerm>& witness,
                      std::set<std::vector<Coords>>& seen) {
  const auto& f = sys.field();
  const std::size_t d = basis.size();
  std::vector<Coords> alpha(d, Coords(d, 0));
  for (const auto& t : witness) alpha[t.i][t.j] = t.coefficient;
  std::vector<bool> isolated(d);
  for (std::size_t i = 0; i < d; ++i) {
    isolated[i] = sys.commuting_space(basis[i]).size() == 1;
  }
  for (std::size_t a = 0; a < sys.dim_v(); ++a) {
    // gamma_j(a): coefficient of e_a in v_j.
    Coords coef(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const Scalar gamma = basis[j][a];
        if (j < i) coef[i] = f.add(coef[i], f.mul(alpha[j][i], gamma));
        if (i < j) coef[i] = f.sub(coef[i], f.mul(alpha[i][j], gamma));
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (!isolated[i] || coef[i] == 0) continue;
      Coords va(sys.dim_v(), 0);
      for (std::size_t k = 0; k < d; ++k) f.axpy(va, coef[k], basis[k]);
      auto next = basis;
      next[i] = std::move(va);
      if (!seen.insert(next).second) continue;
      basis = std::move(next);
      return true;
    }
  }
  return false;
}

class BasisSearch {
 public:
  BasisSearch(const BilinearSystem& sys, std::vector<Coords> points,
              std::size_t d, std::uint64_t budget)
      : sys_(sys), points_(std::move(points)), d_(d), budget_(budget) {}

  std::optional<std::vector<Coords>> run() {
    Span chosen_span(sys_.field(), sys_.dim_v());
    Span values(sys_.field(), sys_.dim_w());
    if (extend(0, chosen_span, values)) return chosen_;
    return std::nullopt;
  }
  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return !out_of_budget_; }

 private:
  bool extend(std::size_t from, const Span& span, const Span& values) {
    if (chosen_.size() == d_) return true;
    for (std::size_t k = from; k + (d_ - chosen_.size()) <= points_.size(); ++k) {
      if (++nodes_ > budget_) {
        out_of_budget_ = true;
        return false;
      }
      const auto& x = points_[k];
      if (span.contains(x)) continue;
      Span more = values;
      bool ok = true;
      for (const auto& c : chosen_) {
        const auto w = sys_.beta(c, x);
        if (!is_zero(w) && !more.insert(w)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Span next = span;
      next.insert(x);
      chosen_.push_back(x);
      if (extend(k + 1, next, more)) return true;
      chosen_.pop_back();
      if (out_of_budget_) return false;
    }
    return false;
  }

  const BilinearSystem& sys_;
  std::vector<Coords> points_;
  std::size_t d_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  std::vector<Coords> chosen_;
};

}  // namespace

SeparatedSearchResult find_separated_basis(const BilinearSystem& sys,
                                           const std::vector<Coords>& spanning,
                                           const SeparatedSearchOptions& options) {
  SeparatedSearchResult out;
  auto basis = echelon_basis(sys, spanning);
  auto found = [&](std::vector<Coords> b, const char* method) {
    out.status = SeparationStatus::Found;
    out.basis = std::move(b);
    out.method = method;
    return out;
  };

  std::set<std::vector<Coords>> seen{basis};
  for (std::size_t round = 0;; ++round) {
    const auto check = is_separated_basis(sys, basis);
    if (check.separated) {
      return found(std::move(basis), round == 0 ? "echelon" : "replacement");
    }
    if (round == options.max_replacements ||
        !replace_isolated(sys, basis, check.witness, seen)) {
      break;
    }
    ++out.replacements;
  }

  const std::size_t d = basis.size();
  auto points = projective_points(sys, basis, options.max_points);
  BasisSearch search(sys, std::move(points), d, options.node_budget);
  auto result = search.run();
  out.nodes = search.nodes();
  if (result) return found(std::move(*result), "search");
  out.search_exhausted = search.exhausted();
  out.certificate = counting_certificate(sys, basis);
  if (out.certificate) out.status = SeparationStatus::NoneCertified;
  return out;
}

// ---- B_n -------------------------------------------------------------------------------

BnClass pi_A(const BilinearSystem& sys, const CoefficientMatrix& a,
             const std::vector<Coords>& vbar) {
  const std::size_t n = a.size();
  if (vbar.size() != n) {
    throw InputError("coefficient matrix is " + std::to_string(n) + "x" +
                     std::to_string(n) + " but " + std::to_string(vbar.size()) +
                     " vectors were given");
  }
  check_vectors(sys, vbar);
  const auto& f = sys.field();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw InputError("coefficient matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j] >= sys.p()) throw InputError("coefficient out of range");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (a[i][j] != f.neg(a[j][i])) {
        throw InputError("coefficient matrix is not antisymmetric");
      }
    }
  }
  BnClass out{n, a, vbar, Coords(sys.dim_w(), 0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a[i][j] != 0) f.axpy(out.canonical_value, a[i][j], sys.beta(vbar[i], vbar[j]));
    }
  }
  return out;
}

bool simeq(const BilinearSystem& sys, const CoefficientMatrix& a,
           const std::vector<Coords>& vbar, const CoefficientMatrix& a2,
           const std::vector<Coords>& vbar2) {
  return pi_A(sys, a, vbar) == pi_A(sys, a2, vbar2);
}

// ---- W_n --------------------------------------------------------------------------------

OrderTable::OrderTable(const BilinearSystem& sys, std::size_t max_n,
                       std::uint64_t cap)
    : sys_(sys), max_n_(max_n) {
  const auto size_v = checked_pow(sys.p(), sys.dim_v());
  if (!size_v || *size_v > cap / std::max<std::uint64_t>(*size_v, 1)) {
    throw CapExceeded("W_n enumeration walks all pairs of V",
                      size_v ? std::to_string(*size_v) + "^2" : "overflow");
  }
  if (!checked_pow(sys.p(), sys.dim_w())) {
    throw CapExceeded("W does not fit the 64-bit encoding", "overflow");
  }
  Coords v(sys.dim_v(), 0);
  do {
    points_.push_back(v);
  } while (next_vector(v, sys.p()));

  // Decomposable values beta(u, u') with one witness each.
  std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> dec;
  for (std::uint32_t a = 0; a < points_.size(); ++a) {
    for (std::uint32_t b = 0; b < points_.size(); ++b) {
      dec.try_emplace(encode(sys.beta(points_[a], points_[b])), a, b);
    }
  }

  reached_.emplace(0, Entry{0, 0, 0, 0});
  sizes_.push_back(1);
  std::vector<std::uint64_t> frontier{0};
  const std::size_t levels = std::min(max_n, sys.dim_v()) / 2;
  for (std::size_t k = 1; k <= levels; ++k) {
    std::vector<std::uint64_t> next;
    for (auto x : frontier) {
      const Coords xv = decode(x);
      for (const auto& [d, uv] : dec) {
        const auto y = encode(sys.field().sum(xv, decode(d)));
        if (reached_.try_emplace(y, Entry{k, x, uv.first, uv.second}).second) {
          next.push_back(y);
          if (reached_.size() > cap) {
            throw CapExceeded("W_n grew beyond the cap", std::to_string(cap));
          }
        }
      }
    }
    frontier = std::move(next);
    sizes_.push_back(reached_.size());
  }
}

std::uint64_t OrderTable::encode(std::span<const Scalar> w) const {
  if (w.size() != sys_.dim_w()) throw InputError("W-vector has wrong dimension");
  std::uint64_t code = 0;
  for (Scalar s : w) {
    if (s >= sys_.p()) throw InputError("W-vector entries must lie in 0..p-1");
    code = code * sys_.p() + s;
  }
  return code;
}

Coords OrderTable::decode(std::uint64_t code) const {
  Coords w(sys_.dim_w(), 0);
  for (std::size_t k = w.size(); k-- > 0;) {
    w[k] = static_cast<Scalar>(code % sys_.p());
    code /= sys_.p();
  }
  return w;
}

std::size_t OrderTable::level(std::size_t n) const {
  const std::size_t eff = std::min(n, sys_.dim_v());
  if (eff > std::min(max_n_, sys_.dim_v())) {
    throw InputError("n = " + std::to_string(n) + " exceeds the table bound " +
                     std::to_string(max_n_));
  }
  return eff / 2;
}

bool OrderTable::contains(std::span<const Scalar> w, std::size_t n) const {
  const auto it = reached_.find(encode(w));
  return it != reached_.end() && it->second.pairs <= level(n);
}

std::size_t OrderTable::size(std::size_t n) const { return sizes_[level(n)]; }

std::optional<std::vector<std::pair<Coords, Coords>>> OrderTable::witness(
    std::span<const Scalar> w, std::size_t n) const {
  if (!contains(w, n)) return std::nullopt;
  std::vector<std::pair<Coords, Coords>> pairs;
  auto code = encode(w);
  while (true) {
    const auto& e = reached_.at(code);
    if (e.pairs == 0) break;
    pairs.emplace_back(points_[e.u], points_[e.v]);
    code = e.previous;
  }
  std::reverse(pairs.begin(), pairs.end());
  return pairs;
}

bool w_n_membership(const BilinearSystem& sys, std::span<const Scalar> w,
                    std::size_t n, std::uint64_t cap) {
  if (w.size() != sys.dim_w()) throw InputError("W-vector has wrong dimension");
  if (is_zero(w)) return true;
  if (n < 2) return false;
  return OrderTable(sys, n, cap).contains(w, n);
}

std::optional<BnClass> f_n(const BilinearSystem& sys, std::span<const Scalar> w,
                           std::size_t n, std::uint64_t cap) {
  if (w.size() != sys.dim_w()) throw InputError("W-vector has wrong dimension");
  std::vector<std::pair<Coords, Coords>> pairs;
  if (!is_zero(w)) {
    if (n < 2) return std::nullopt;
    auto found = OrderTable(sys, n, cap).witness(w, n);
    if (!found) return std::nullopt;
    pairs = std::move(*found);
  }
  CoefficientMatrix a(n, Coords(n, 0));
  std::vector<Coords> vbar(n, Coords(sys.dim_v(), 0));
  for (std::size_t l = 0; l < pairs.size(); ++l) {
    a[2 * l][2 * l + 1] = 1;
    a[2 * l + 1][2 * l] = sys.p() - 1;
    vbar[2 * l] = pairs[l].first;
    vbar[2 * l + 1] = pairs[l].second;
  }
  auto out = pi_A(sys, a, vbar);
  if (out.canonical_value != Coords(w.begin(), w.end())) {
    throw InternalError("f_n witness does not evaluate to w");
  }
  return out;
}

}  // namespace mekler
