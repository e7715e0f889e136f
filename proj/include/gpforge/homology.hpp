#pragma once

// Exact integer linear algebra: Smith normal form, abelianizations, and
// homology of 2-dimensional chain complexes.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gpforge/bigint.hpp"
#include "gpforge/presentations.hpp"

namespace gpforge {

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> row_major);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Determinant by fraction-free elimination (Bareiss).
BigInt determinant(const IntegerMatrix& a);

struct SnfResult {
  IntegerMatrix D;
  IntegerMatrix U;
  IntegerMatrix V;
  std::vector<BigInt> invariant_factors;  // the nonzero diagonal of D, each dividing the next
};

/// U * A * V = D with U, V unimodular and D diagonal with a divisibility
/// chain of nonnegative entries. Pivots are chosen by smallest absolute
/// value, ties broken in row-major order.
SnfResult smith_normal_form(const IntegerMatrix& a);

/// Column-oriented sparse integer matrix.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::map<std::size_t, BigInt>> columns;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  void add(std::size_t row, std::size_t col, const BigInt& value);
  static SparseMatrix from_dense(const IntegerMatrix& a);
  IntegerMatrix to_dense() const;
};

/// Nonzero invariant factors in ascending divisibility order. Unit pivots
/// are eliminated sparsely first, which keeps large boundary matrices cheap;
/// whatever remains goes through the dense Smith form.
std::vector<BigInt> invariant_factors(const SparseMatrix& a);

struct AbelianGroup {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next

  /// `rank=R torsion=[d1,d2,...]`
  std::string format() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Cokernel of a `rows x cols` relation matrix given by its nonzero
/// invariant factors: free rank `rows - factors.size()`.
AbelianGroup cokernel(std::size_t rows, const std::vector<BigInt>& factors);

/// Exponent-sum relation matrix (relators x generators, alphabet order)
/// reduced to Smith form.
AbelianGroup abelianization(const Presentation& p);
IntegerMatrix relation_matrix(const Presentation& p);

/// Boundary maps C2 -> C1 -> C0 (d1 is |C0| x |C1|, d2 is |C1| x |C2|).
struct ChainComplexData {
  SparseMatrix d1;
  SparseMatrix d2;
};

/// H0, H1, H2. Throws InvalidComplexError unless d1 * d2 = 0.
std::array<AbelianGroup, 3> complex_homology(const ChainComplexData& c);

}  // namespace gpforge
