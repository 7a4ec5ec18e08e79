#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckrec {

using Int = mpz_class;

// Uniform error type; `code` is a stable machine-readable tag
// (NotIrreducible, PermutationMatrix, BadEntry, TruncationTooSmall, ...).
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {
    if (rows == 0 || cols == 0) throw Error("BadShape", "rows and cols must be >= 1");
  }

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  IntMatrix transpose() const;
  bool operator==(const IntMatrix& o) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Int> e_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

// Fraction-free determinant (Bareiss); square input.
Int determinant(const IntMatrix& m);

// U * M * V = D with |det U| = |det V| = 1, D diagonal, nonnegative,
// each nonzero diagonal entry dividing the next, trailing zeros last.
struct SnfResult {
  IntMatrix u, d, v;
  std::vector<Int> factors;  // diagonal of d, min(rows, cols) entries
};

SnfResult snf(const IntMatrix& m);

// Basis of { x : M x = 0 } over the integers; empty iff kernel is trivial.
std::vector<std::vector<Int>> kernel_basis(const IntMatrix& m);

// Presentation of Z^ambient_rank / (column lattice of relations).
// Canonicalization lives with the group code (abgroup).
struct PresentedGroup {
  std::size_t ambient_rank;
  IntMatrix relations;  // ambient_rank rows; one relation per column
};

PresentedGroup cokernel_presentation(const IntMatrix& m);

// Independent oracle: d_k = g_k / g_{k-1}, g_k = gcd of all k x k minors.
// Guarded to dims <= 6; throws DimensionExceeded above that.
std::vector<Int> invariant_factors_via_minors(const IntMatrix& m);

}  // namespace ckrec
