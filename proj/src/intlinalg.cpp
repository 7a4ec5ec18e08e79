#include "ckrec/intlinalg.hpp"

#include <algorithm>
#include <sstream>

namespace ckrec {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  if (rows.empty() || rows[0].empty()) throw Error("BadShape", "empty row list");
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw Error("BadShape", "ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << at(i, j).get_str();
    }
    os << '\n';
  }
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error("BadShape", "product dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error("BadShape", "sum dimension mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error("BadShape", "difference dimension mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error("BadShape", "determinant of non-square matrix");
  std::size_t n = m.rows();
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

namespace {

void row_swap(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
void col_swap(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row a += q * row b
void row_addmul(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) += q * m.at(b, j);
}
void col_addmul(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, a) += q * m.at(i, b);
}
void row_negate(IntMatrix& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

}  // namespace

SnfResult snf(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  const std::size_t mn = std::min(R, C);
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(R);
  IntMatrix v = IntMatrix::identity(C);

  for (std::size_t t = 0; t < mn; ++t) {
    for (;;) {
      // minimal |nonzero| pivot in the trailing submatrix
      std::size_t pi = R, pj = C;
      Int best = 0;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j) {
          const Int& x = d.at(i, j);
          if (x == 0) continue;
          Int ax = abs(x);
          if (pi == R || ax < best) {
            best = ax;
            pi = i;
            pj = j;
          }
        }
      if (pi == R) goto diagonal_done;  // trailing block is zero
      if (pi != t) {
        row_swap(d, pi, t);
        row_swap(u, pi, t);
      }
      if (pj != t) {
        col_swap(d, pj, t);
        col_swap(v, pj, t);
      }

      bool again = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = d.at(i, t) / d.at(t, t);  // truncated: remainder smaller than pivot
        if (q != 0) {
          row_addmul(d, i, t, -q);
          row_addmul(u, i, t, -q);
        }
        if (d.at(i, t) != 0) again = true;
      }
      if (again) continue;
      for (std::size_t j = t + 1; j < C; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = d.at(t, j) / d.at(t, t);
        if (q != 0) {
          col_addmul(d, j, t, -q);
          col_addmul(v, j, t, -q);
        }
        if (d.at(t, j) != 0) again = true;
      }
      if (again) continue;

      // pivot now divides row/col remainders exactly zero; enforce chain
      bool fixed = false;
      for (std::size_t i = t + 1; i < R && !fixed; ++i)
        for (std::size_t j = t + 1; j < C && !fixed; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            row_addmul(d, t, i, Int(1));
            row_addmul(u, t, i, Int(1));
            fixed = true;
          }
      if (!fixed) break;
    }
  }
diagonal_done:

  for (std::size_t t = 0; t < mn; ++t)
    if (d.at(t, t) < 0) {
      row_negate(d, t);
      row_negate(u, t);
    }

  SnfResult r{std::move(u), std::move(d), std::move(v), {}};
  r.factors.reserve(mn);
  for (std::size_t t = 0; t < mn; ++t) r.factors.push_back(r.d.at(t, t));
  return r;
}

std::vector<std::vector<Int>> kernel_basis(const IntMatrix& m) {
  SnfResult s = snf(m);
  const std::size_t C = m.cols(), mn = std::min(m.rows(), C);
  std::vector<std::vector<Int>> basis;
  for (std::size_t j = 0; j < C; ++j) {
    bool zero_diag = (j >= mn) || (s.d.at(j, j) == 0);
    if (!zero_diag) continue;
    std::vector<Int> col(C);
    for (std::size_t i = 0; i < C; ++i) col[i] = s.v.at(i, j);
    basis.push_back(std::move(col));
  }
  return basis;
}

PresentedGroup cokernel_presentation(const IntMatrix& m) {
  return PresentedGroup{m.rows(), m};
}

namespace {

Int minor_det(const IntMatrix& m, const std::vector<std::size_t>& ri,
              const std::vector<std::size_t>& ci) {
  IntMatrix sub(ri.size(), ci.size());
  for (std::size_t a = 0; a < ri.size(); ++a)
    for (std::size_t b = 0; b < ci.size(); ++b) sub.at(a, b) = m.at(ri[a], ci[b]);
  return determinant(sub);
}

// all k-subsets of {0..n-1}
void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

}  // namespace

std::vector<Int> invariant_factors_via_minors(const IntMatrix& m) {
  if (m.rows() > 6 || m.cols() > 6)
    throw Error("DimensionExceeded", "minor-gcd oracle limited to dims <= 6");
  const std::size_t mn = std::min(m.rows(), m.cols());
  std::vector<Int> factors(mn, Int(0));
  Int g_prev = 1;
  for (std::size_t k = 1; k <= mn; ++k) {
    std::vector<std::vector<std::size_t>> rsets, csets;
    subsets(m.rows(), k, rsets);
    subsets(m.cols(), k, csets);
    Int g = 0;
    for (const auto& ri : rsets)
      for (const auto& ci : csets) {
        Int d = abs(minor_det(m, ri, ci));
        g = gcd(g, d);
        if (g == 1) break;
      }
    if (g == 0) break;  // all larger minors vanish too; trailing factors stay 0
    factors[k - 1] = g / g_prev;
    g_prev = g;
  }
  return factors;
}

}  // namespace ckrec
