#pragma once

// Arithmetic and dense linear algebra over the prime field F_p.
//
// Vectors are plain coordinate vectors with entries in {0, ..., p-1}.
// Matrices are passed as lists of rows of a common width.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mekler {

using Scalar = std::uint32_t;
using Coords = std::vector<Scalar>;

bool is_prime(std::uint64_t n);

// p^e, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t p, std::size_t e);

class PrimeField {
 public:
  // Throws InputError unless p is prime and p < 2^16.
  explicit PrimeField(Scalar p);

  Scalar p() const { return p_; }

  Scalar reduce(std::int64_t x) const {
    const auto m = static_cast<std::int64_t>(p_);
    const auto r = x % m;
    return static_cast<Scalar>(r < 0 ? r + m : r);
  }
  Scalar add(Scalar a, Scalar b) const { return (a + b) % p_; }
  Scalar sub(Scalar a, Scalar b) const { return (a + p_ - b) % p_; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const { return (a * b) % p_; }
  Scalar inv(Scalar a) const;
  Scalar pow(Scalar a, std::uint64_t e) const;

  // y += a * x
  void axpy(Coords& y, Scalar a, std::span<const Scalar> x) const;
  Coords scaled(Scalar a, std::span<const Scalar> x) const;
  Coords sum(std::span<const Scalar> x, std::span<const Scalar> y) const;
  Coords difference(std::span<const Scalar> x, std::span<const Scalar> y) const;
  Coords negated(std::span<const Scalar> x) const;

  // The multiple of x whose first nonzero coordinate is 1 (zero stays zero).
  Coords normalized(std::span<const Scalar> x) const;

 private:
  Scalar p_;
};

bool is_zero(std::span<const Scalar> x);
Coords unit_vector(std::size_t dim, std::size_t i);

// Index of the first nonzero coordinate, or nullopt for the zero vector.
std::optional<std::size_t> leading_index(std::span<const Scalar> x);

std::size_t support_size(std::span<const Scalar> x);

// Steps v to its lexicographic successor in F_p^dim (last coordinate fastest).
// Returns false, leaving v zero, after the last vector.
bool next_vector(Coords& v, Scalar p);

// Fully reduced row echelon form.  `pivots[r]` is the pivot column of rows[r].
struct Echelon {
  std::vector<Coords> rows;
  std::vector<std::size_t> pivots;
};

Echelon row_reduce(const PrimeField& f, std::vector<Coords> rows,
                   std::size_t width);

std::size_t rank(const PrimeField& f, const std::vector<Coords>& rows,
                 std::size_t width);

// Basis of {x : rows * x = 0} in reduced form (one vector per free column).
std::vector<Coords> null_space(const PrimeField& f,
                               const std::vector<Coords>& rows,
                               std::size_t width);

// Coefficients c with sum_i c_i vectors[i] == target, if any.
std::optional<Coords> solve_combination(const PrimeField& f,
                                        const std::vector<Coords>& vectors,
                                        std::span<const Scalar> target,
                                        std::size_t width);

// A nontrivial c with sum_i c_i vectors[i] == 0, if the vectors are dependent.
std::optional<Coords> find_dependency(const PrimeField& f,
                                      const std::vector<Coords>& vectors,
                                      std::size_t width);

// A subspace of F_p^dim held as a reduced echelon basis.
class Span {
 public:
  Span(const PrimeField& f, std::size_t dim) : f_(f), dim_(dim) {}
  Span(const PrimeField& f, std::size_t dim, const std::vector<Coords>& gens);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Coords>& basis() const { return basis_; }

  bool contains(std::span<const Scalar> v) const;
  // Adds v; returns false (and leaves the span unchanged) if v was already in it.
  bool insert(std::span<const Scalar> v);

  // Same subspace.
  bool operator==(const Span& other) const;

 private:
  Coords reduce(std::span<const Scalar> v) const;

  PrimeField f_;
  std::size_t dim_;
  std::vector<Coords> basis_;  // reduced echelon, sorted by pivot
  std::vector<std::size_t> pivots_;
};

std::string format_coords(std::span<const Scalar> v);

}  // namespace mekler
