#pragma once

// Exact integer matrices: Smith normal form, rational rank, cokernels and
// left annihilators. Entries are arbitrary precision.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace exhom {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  // Columns given as vectors of equal length `rows`.
  static IntMatrix from_columns(std::size_t rows, std::span<const std::vector<std::int64_t>> columns);
  static IntMatrix hstack(std::span<const IntMatrix> blocks);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  IntMatrix transpose() const;
  bool is_zero() const;

  bool operator==(const IntMatrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
// Row vector times matrix.
IntVector row_times(const IntVector& v, const IntMatrix& a);

// Free rank plus torsion coefficients d_1 | d_2 | ..., each at least 2.
struct AbelianGroupShape {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool operator==(const AbelianGroupShape&) const = default;
  // "Z^5", "Z^2 + Z/2", "0".
  std::string to_string() const;
};

struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
// Pivot: smallest nonzero absolute value, ties broken by row-major position.
SmithForm snf(const IntMatrix& a);
// Nonzero diagonal entries of the Smith form, without the transforms.
std::vector<Integer> smith_invariants(const IntMatrix& a);

std::size_t rank_q(const IntMatrix& a);
// Shape of Z^rows / (column span of a).
AbelianGroupShape cokernel(const IntMatrix& a);
// Basis of {v : v * a = 0} in row Hermite normal form; every vector primitive.
std::vector<IntVector> left_annihilator(const IntMatrix& a);

// Row Hermite normal form of the lattice spanned by `rows` (zero rows dropped).
std::vector<IntVector> row_hermite(std::vector<IntVector> rows);

bool is_unimodular(const IntMatrix& a);
// Throws precondition unless a is unimodular.
IntMatrix unimodular_inverse(const IntMatrix& a);

// gcd of the entries (0 for the zero vector).
Integer content(const IntVector& v);

std::string to_string(const IntVector& v);

}  // namespace exhom
