#include "mekler/group.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mekler {

namespace {

PrimeField odd_prime_field(Scalar p) {
  if (p == 2) {
    throw InputError("p = 2 is not allowed: Mekler groups need an odd prime");
  }
  if (!is_prime(p)) {
    throw InputError("p must be an odd prime, got " + std::to_string(p));
  }
  return PrimeField(p);
}

}  // namespace

MeklerGroup::MeklerGroup(Graph graph, Scalar p, BuildOptions options)
    : graph_(std::move(graph)), field_(odd_prime_field(p)) {
  if (!options.allow_non_nice) {
    auto report = is_nice(graph_);
    if (!report.nice) throw NotNiceError(std::move(report));
  }
  non_edges_ = graph_.non_edges();
  const auto n = graph_.vertex_count();
  pair_index_.assign(n * n, -1);
  for (std::size_t k = 0; k < non_edges_.size(); ++k) {
    auto [i, j] = non_edges_[k];
    pair_index_[i * n + j] = pair_index_[j * n + i] =
        static_cast<std::ptrdiff_t>(k);
  }
}

std::optional<std::size_t> MeklerGroup::non_edge_index(Vertex i,
                                                       Vertex j) const {
  const auto n = dim_v();
  if (i >= n || j >= n) throw InputError("vertex out of range");
  const auto k = pair_index_[i * n + j];
  if (k < 0) return std::nullopt;
  return static_cast<std::size_t>(k);
}

Coords MeklerGroup::beta_constants(Vertex i, Vertex j) const {
  Coords w(dim_w(), 0);
  if (auto k = non_edge_index(i, j)) w[*k] = i < j ? 1 : p() - 1;
  return w;
}

std::optional<std::uint64_t> MeklerGroup::order() const {
  return checked_pow(p(), order_exponent());
}

std::optional<std::uint64_t> MeklerGroup::center_order() const {
  return checked_pow(p(), dim_w());
}

Element MeklerGroup::identity() const {
  return {Coords(dim_v(), 0), Coords(dim_w(), 0)};
}

Element MeklerGroup::generator(Vertex i) const {
  if (i >= dim_v()) throw InputError("generator index out of range");
  return {unit_vector(dim_v(), i), Coords(dim_w(), 0)};
}

Element MeklerGroup::central(Coords com) const {
  Element e{Coords(dim_v(), 0), std::move(com)};
  validate(e);
  return e;
}

void MeklerGroup::validate(const Element& g) const {
  if (g.gen.size() != dim_v() || g.com.size() != dim_w()) {
    throw InputError("element has dimensions (" +
                     std::to_string(g.gen.size()) + "," +
                     std::to_string(g.com.size()) + "), group expects (" +
                     std::to_string(dim_v()) + "," + std::to_string(dim_w()) +
                     ")");
  }
  auto in_range = [this](Scalar s) { return s < p(); };
  if (!std::all_of(g.gen.begin(), g.gen.end(), in_range) ||
      !std::all_of(g.com.begin(), g.com.end(), in_range)) {
    throw InputError("element coordinates must lie in 0..p-1");
  }
}

Coords MeklerGroup::beta(std::span<const Scalar> u,
                         std::span<const Scalar> v) const {
  if (u.size() != dim_v() || v.size() != dim_v()) {
    throw InputError("V-vector has wrong dimension");
  }
  Coords w(dim_w(), 0);
  for (std::size_t k = 0; k < non_edges_.size(); ++k) {
    auto [i, j] = non_edges_[k];
    w[k] = field_.sub(field_.mul(u[i], v[j]), field_.mul(u[j], v[i]));
  }
  return w;
}

Coords MeklerGroup::kappa(std::span<const Scalar> u,
                          std::span<const Scalar> v) const {
  if (u.size() != dim_v() || v.size() != dim_v()) {
    throw InputError("V-vector has wrong dimension");
  }
  Coords w(dim_w(), 0);
  for (std::size_t k = 0; k < non_edges_.size(); ++k) {
    auto [i, j] = non_edges_[k];
    w[k] = field_.neg(field_.mul(u[j], v[i]));
  }
  return w;
}

Element multiply(const MeklerGroup& g, const Element& a, const Element& b) {
  g.validate(a);
  g.validate(b);
  const auto& f = g.field();
  Element r{f.sum(a.gen, b.gen), f.sum(a.com, b.com)};
  f.axpy(r.com, 1, g.kappa(a.gen, b.gen));
  return r;
}

Element power(const MeklerGroup& g, const Element& a, std::int64_t k) {
  g.validate(a);
  const auto& f = g.field();
  const Scalar e = f.reduce(k);
  // Collecting e copies of a picks up C(e,2) * kappa(gen, gen).
  const auto binom = static_cast<Scalar>(
      (static_cast<std::uint64_t>(e) * (e == 0 ? 0 : e - 1) / 2) % g.p());
  Element r{f.scaled(e, a.gen), f.scaled(e, a.com)};
  f.axpy(r.com, binom, g.kappa(a.gen, a.gen));
  return r;
}

Element inverse(const MeklerGroup& g, const Element& a) {
  g.validate(a);
  const auto& f = g.field();
  Element r{f.negated(a.gen), f.negated(a.com)};
  f.axpy(r.com, 1, g.kappa(a.gen, a.gen));
  return r;
}

Element commutator(const MeklerGroup& g, const Element& a, const Element& b) {
  return multiply(g, multiply(g, inverse(g, a), inverse(g, b)),
                  multiply(g, a, b));
}

bool is_central(const MeklerGroup& g, const Element& a) {
  g.validate(a);
  return is_zero(a.gen);
}

Coords project_mod_center(const MeklerGroup& g, const Element& a) {
  g.validate(a);
  return a.gen;
}

Coords center_part(const MeklerGroup& g, const Element& a) {
  g.validate(a);
  if (!is_zero(a.gen)) return Coords(g.dim_w(), 0);
  return a.com;
}

std::vector<Coords> centralizer_basis(const MeklerGroup& g,
                                      std::span<const Scalar> v) {
  if (v.size() != g.dim_v()) throw InputError("V-vector has wrong dimension");
  // Row k of the matrix of w -> beta(v, w): coefficient of w_j in
  // beta(v, w)_k = v_i w_j - v_j w_i.
  const auto& f = g.field();
  std::vector<Coords> rows;
  rows.reserve(g.dim_w());
  for (auto [i, j] : g.non_edges()) {
    Coords row(g.dim_v(), 0);
    row[j] = v[i];
    row[i] = f.neg(v[j]);
    rows.push_back(std::move(row));
  }
  return null_space(f, rows, g.dim_v());
}

std::vector<Coords> centralizer_basis(const MeklerGroup& g, const Element& a) {
  g.validate(a);
  return centralizer_basis(g, std::span<const Scalar>(a.gen));
}

Element element_at(const MeklerGroup& g, std::uint64_t index) {
  Element e = g.identity();
  const auto p = g.p();
  for (std::size_t k = g.dim_w(); k-- > 0;) {
    e.com[k] = static_cast<Scalar>(index % p);
    index /= p;
  }
  for (std::size_t k = g.dim_v(); k-- > 0;) {
    e.gen[k] = static_cast<Scalar>(index % p);
    index /= p;
  }
  if (index != 0) throw InputError("element index exceeds group order");
  return e;
}

ElementRange::iterator& ElementRange::iterator::operator++() {
  ++index_;
  if (!next_vector(current_.com, group_->p())) {
    next_vector(current_.gen, group_->p());
  }
  return *this;
}

ElementRange::ElementRange(const MeklerGroup& g, std::uint64_t first,
                           std::uint64_t last)
    : group_(&g), first_(first), last_(last) {}

ElementRange::iterator ElementRange::begin() const {
  if (first_ == last_) return end();
  return iterator(group_, first_, element_at(*group_, first_));
}

ElementRange::iterator ElementRange::end() const {
  return iterator(group_, last_, Element{});
}

namespace {

std::uint64_t checked_order(const MeklerGroup& g, std::uint64_t cap) {
  const auto order = g.order();
  if (!order || *order > cap) {
    throw CapExceeded("group of order " + std::to_string(g.p()) + "^" +
                          std::to_string(g.order_exponent()) +
                          " exceeds the enumeration cap " + std::to_string(cap),
                      order ? std::to_string(*order)
                            : std::to_string(g.p()) + "^" +
                                  std::to_string(g.order_exponent()));
  }
  return *order;
}

}  // namespace

ElementRange enumerate_elements(const MeklerGroup& g, std::uint64_t cap) {
  return ElementRange(g, 0, checked_order(g, cap));
}

ElementRange enumerate_range(const MeklerGroup& g, std::uint64_t first,
                             std::uint64_t last, std::uint64_t cap) {
  const auto order = checked_order(g, cap);
  if (first > last || last > order) {
    throw InputError("enumeration range outside the group");
  }
  return ElementRange(g, first, last);
}

std::string format_element(const Element& a) {
  return "gen=" + format_coords(a.gen) + ";com=" + format_coords(a.com);
}

namespace {

Coords parse_bracketed(const std::string& text, const std::string& what) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw InputError(what + " must be a bracketed list, got `" + text + "`");
  }
  Coords out;
  const std::string body = text.substr(1, text.size() - 2);
  if (body.find_first_not_of(" \t") == std::string::npos) return out;
  std::stringstream ss(body);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty entry in " + what);
    item = item.substr(b, e - b + 1);
    if (!std::all_of(item.begin(), item.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; }) ||
        item.size() > 9) {
      throw InputError("bad entry `" + item + "` in " + what);
    }
    out.push_back(static_cast<Scalar>(std::stoul(item)));
  }
  return out;
}

}  // namespace

Element parse_element(const MeklerGroup& g, const std::string& text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  const auto semi = compact.find(';');
  if (compact.rfind("gen=", 0) != 0 || semi == std::string::npos ||
      compact.compare(semi + 1, 4, "com=") != 0) {
    throw InputError("element literal must look like gen=[...];com=[...]");
  }
  Element e{parse_bracketed(compact.substr(4, semi - 4), "gen"),
            parse_bracketed(compact.substr(semi + 5), "com")};
  g.validate(e);
  return e;
}

}  // namespace mekler
