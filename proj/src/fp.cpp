#include "mekler/fp.hpp"

#include <algorithm>
#include <sstream>

#include "mekler/errors.hpp"

namespace mekler {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t p, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (p != 0 && r > UINT64_MAX / p) return std::nullopt;
    r *= p;
  }
  return r;
}

PrimeField::PrimeField(Scalar p) : p_(p) {
  if (!is_prime(p) || p >= (1u << 16)) {
    throw InputError("field characteristic must be a prime below 65536, got " +
                     std::to_string(p));
  }
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const {
  Scalar result = 1 % p_;
  Scalar base = a % p_;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1u;
  }
  return result;
}

Scalar PrimeField::inv(Scalar a) const {
  if (a % p_ == 0) throw DomainError("zero has no inverse in F_p");
  return pow(a, p_ - 2);
}

void PrimeField::axpy(Coords& y, Scalar a, std::span<const Scalar> x) const {
  if (y.size() != x.size()) throw InputError("vector length mismatch");
  if (a == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = (y[i] + a * x[i]) % p_;
}

Coords PrimeField::scaled(Scalar a, std::span<const Scalar> x) const {
  Coords r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = mul(a, x[i]);
  return r;
}

Coords PrimeField::sum(std::span<const Scalar> x,
                       std::span<const Scalar> y) const {
  Coords r(x.begin(), x.end());
  axpy(r, 1, y);
  return r;
}

Coords PrimeField::difference(std::span<const Scalar> x,
                              std::span<const Scalar> y) const {
  Coords r(x.begin(), x.end());
  axpy(r, p_ - 1, y);
  return r;
}

Coords PrimeField::negated(std::span<const Scalar> x) const {
  return scaled(p_ - 1, x);
}

Coords PrimeField::normalized(std::span<const Scalar> x) const {
  const auto lead = leading_index(x);
  if (!lead) return Coords(x.begin(), x.end());
  return scaled(inv(x[*lead]), x);
}

bool is_zero(std::span<const Scalar> x) {
  return std::all_of(x.begin(), x.end(), [](Scalar s) { return s == 0; });
}

Coords unit_vector(std::size_t dim, std::size_t i) {
  Coords v(dim, 0);
  v.at(i) = 1;
  return v;
}

std::optional<std::size_t> leading_index(std::span<const Scalar> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) return i;
  }
  return std::nullopt;
}

std::size_t support_size(std::span<const Scalar> x) {
  return static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [](Scalar s) { return s != 0; }));
}

bool next_vector(Coords& v, Scalar p) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (++v[i] < p) return true;
    v[i] = 0;
  }
  return false;
}

Echelon row_reduce(const PrimeField& f, std::vector<Coords> rows,
                   std::size_t width) {
  for (const auto& r : rows) {
    if (r.size() != width) throw InputError("matrix row has wrong width");
  }
  Echelon out;
  std::size_t next = 0;
  for (std::size_t col = 0; col < width && next < rows.size(); ++col) {
    std::size_t pivot = next;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[next], rows[pivot]);
    const Scalar scale = f.inv(rows[next][col]);
    rows[next] = f.scaled(scale, rows[next]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && rows[r][col] != 0) {
        f.axpy(rows[r], f.neg(rows[r][col]), rows[next]);
      }
    }
    out.pivots.push_back(col);
    ++next;
  }
  rows.resize(next);
  out.rows = std::move(rows);
  return out;
}

std::size_t rank(const PrimeField& f, const std::vector<Coords>& rows,
                 std::size_t width) {
  return row_reduce(f, rows, width).rows.size();
}

std::vector<Coords> null_space(const PrimeField& f,
                               const std::vector<Coords>& rows,
                               std::size_t width) {
  const Echelon e = row_reduce(f, rows, width);
  std::vector<bool> is_pivot(width, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Coords> basis;
  for (std::size_t free = 0; free < width; ++free) {
    if (is_pivot[free]) continue;
    Coords x(width, 0);
    x[free] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      x[e.pivots[r]] = f.neg(e.rows[r][free]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<Coords> solve_combination(const PrimeField& f,
                                        const std::vector<Coords>& vectors,
                                        std::span<const Scalar> target,
                                        std::size_t width) {
  if (target.size() != width) throw InputError("target has wrong width");
  // Augmented system: columns are the vectors, right-hand side the target.
  const std::size_t k = vectors.size();
  std::vector<Coords> rows(width, Coords(k + 1, 0));
  for (std::size_t j = 0; j < k; ++j) {
    if (vectors[j].size() != width) throw InputError("vector has wrong width");
    for (std::size_t i = 0; i < width; ++i) rows[i][j] = vectors[j][i];
  }
  for (std::size_t i = 0; i < width; ++i) rows[i][k] = target[i];
  const Echelon e = row_reduce(f, std::move(rows), k + 1);
  Coords c(k, 0);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == k) return std::nullopt;  // inconsistent
    c[e.pivots[r]] = e.rows[r][k];
  }
  return c;
}

std::optional<Coords> find_dependency(const PrimeField& f,
                                      const std::vector<Coords>& vectors,
                                      std::size_t width) {
  const std::size_t k = vectors.size();
  std::vector<Coords> rows(width, Coords(k, 0));
  for (std::size_t j = 0; j < k; ++j) {
    if (vectors[j].size() != width) throw InputError("vector has wrong width");
    for (std::size_t i = 0; i < width; ++i) rows[i][j] = vectors[j][i];
  }
  auto kernel = null_space(f, rows, k);
  if (kernel.empty()) return std::nullopt;
  return kernel.front();
}

Span::Span(const PrimeField& f, std::size_t dim,
           const std::vector<Coords>& gens)
    : Span(f, dim) {
  for (const auto& g : gens) insert(g);
}

Coords Span::reduce(std::span<const Scalar> v) const {
  if (v.size() != dim_) throw InputError("vector has wrong dimension");
  Coords r(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Scalar c = r[pivots_[i]];
    if (c != 0) f_.axpy(r, f_.neg(c), basis_[i]);
  }
  return r;
}

bool Span::contains(std::span<const Scalar> v) const {
  return is_zero(reduce(v));
}

bool Span::insert(std::span<const Scalar> v) {
  Coords r = reduce(v);
  const auto lead = leading_index(r);
  if (!lead) return false;
  r = f_.scaled(f_.inv(r[*lead]), r);
  for (auto& b : basis_) {
    if (b[*lead] != 0) f_.axpy(b, f_.neg(b[*lead]), r);
  }
  const auto pos = static_cast<std::ptrdiff_t>(
      std::lower_bound(pivots_.begin(), pivots_.end(), *lead) -
      pivots_.begin());
  basis_.insert(basis_.begin() + pos, std::move(r));
  pivots_.insert(pivots_.begin() + pos, *lead);
  return true;
}

bool Span::operator==(const Span& other) const {
  return dim_ == other.dim_ && basis_ == other.basis_;
}

std::string format_coords(std::span<const Scalar> v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ']';
  return os.str();
}

}  // namespace mekler
