#include "ckrec/ktheory.hpp"

#include <sstream>

namespace ckrec {

namespace {

IntMatrix identity_minus(const IntMatrix& a) {
  return IntMatrix::identity(a.rows()) - a;
}

}  // namespace

AdjacencyMatrix check_admissible(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error("BadEntry", "matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.at(i, j) != 0 && a.at(i, j) != 1)
        throw Error("BadEntry", "entries must be 0 or 1");

  bool permutation = true;
  for (std::size_t i = 0; i < n && permutation; ++i) {
    Int row = 0, col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += a.at(i, j);
      col += a.at(j, i);
    }
    permutation = (row == 1 && col == 1);
  }
  if (permutation)
    throw Error("PermutationMatrix", "permutation matrices are excluded");

  // Warshall closure over paths of length >= 1.
  std::vector<char> reach(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reach[i * n + j] = (a.at(i, j) == 1);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k * n + j]) reach[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!reach[i * n + j])
        throw Error("NotIrreducible", "graph is not strongly connected");

  return AdjacencyMatrix{a};
}

IntMatrix build_hatA(const AdjacencyMatrix& a) {
  const std::size_t n = a.n();
  IntMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h.at(i, j) = a.m.at(i, j) + (i == 0 ? 1 : 0) - a.m.at(i, 0);
  return h;
}

IntMatrix build_AT(const AdjacencyMatrix& a) {
  const std::size_t n = a.n();
  IntMatrix t(n + 1, n);
  for (std::size_t j = 0; j < n; ++j) t.at(0, j) = -1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.at(i + 1, j) = (i == j ? 1 : 0) - a.m.at(i, j);
  return t;
}

IntMatrix build_Ak(const AdjacencyMatrix& a, std::size_t k) {
  if (k < 1) throw Error("BadSize", "extension count k must be >= 1");
  const std::size_t n = a.n(), m = n + k;
  IntMatrix r(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      r.at(i, j) = (i < n && j < n) ? a.m.at(i, j) : Int(1);
  return r;
}

IntMatrix build_tildeAinfty(const AdjacencyMatrix& a, std::size_t m) {
  if (m <= a.n())
    throw Error("TruncationTooSmall", "truncation size must exceed N");
  return build_Ak(a, m - a.n());
}

IntMatrix build_hatAinfty(const AdjacencyMatrix& a, std::size_t m) {
  const std::size_t n = a.n();
  if (m < n + 2)
    throw Error("TruncationTooSmall", "truncation size must be at least N+2");
  IntMatrix r(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Int v;
      if (i < n)
        v = (j < n) ? a.m.at(j, i) : (j == n ? Int(1) : Int(0));
      else if (i == n)
        v = 1;
      else
        v = (j <= n) ? 1 : 0;
      r.at(i, j) = v;
    }
  return r;
}

InvariantSheet invariant_sheet(const AdjacencyMatrix& a) {
  const std::size_t n = a.n();
  InvariantSheet s;

  IntMatrix i_at = identity_minus(a.m.transpose());
  Canonicalized k0 = canonicalize(cokernel_presentation(i_at));
  s.k0 = k0.group;
  s.unit_class = k0.map.apply(std::vector<Int>(n, Int(1)));
  s.k1 = FgAbGroup{kernel_basis(i_at).size(), {}};

  IntMatrix i_hat = identity_minus(build_hatA(a));
  Canonicalized e1 = canonicalize(cokernel_presentation(i_hat));
  s.exts1 = e1.group;
  std::vector<Int> iota(n);
  for (std::size_t i = 0; i < n; ++i) iota[i] = (i == 0 ? 1 : 0) - a.m.at(i, 0);
  s.iota_class = e1.map.apply(iota);
  s.exts0 = FgAbGroup{kernel_basis(build_AT(a)).size(), {}};

  IntMatrix i_a = identity_minus(a.m);
  s.extw1 = canonicalize(cokernel_presentation(i_a)).group;
  s.extw0 = direct_sum(free_part(s.k0), torsion_part(s.k1));

  s.chi_oa = static_cast<long>(rank(s.k0)) - static_cast<long>(rank(s.k1));
  s.chi_hat = static_cast<long>(rank(s.exts1)) - static_cast<long>(rank(s.exts0));
  s.w_oa = static_cast<int>(rank(s.k0) - rank(quotient_by(s.unit_class)));
  s.w_hat = static_cast<int>(rank(s.exts1) - rank(quotient_by(s.iota_class)));
  return s;
}

KDatum reciprocal_kdata(const AdjacencyMatrix& a) {
  InvariantSheet s = invariant_sheet(a);
  return KDatum{s.exts1, s.iota_class, s.exts0};
}

ToeplitzKData toeplitz_kdata(const AdjacencyMatrix& a) {
  InvariantSheet s = invariant_sheet(a);
  return ToeplitzKData{KDatum{s.exts1, s.iota_class, s.exts0}, -1};
}

CheckReport verify_duality_sheet(const AdjacencyMatrix& a) {
  InvariantSheet s = invariant_sheet(a);
  CheckReport r;
  auto fail = [&r](const std::string& msg) { r.failures.push_back(msg); };

  if (s.chi_oa != 0) fail("chi of the algebra side is nonzero");
  if (s.chi_hat != 1) fail("chi of the dual side is not one");
  if (s.w_oa + s.w_hat != 1) fail("w values do not sum to one");
  if (!is_isomorphic(s.extw1, quotient_by(s.iota_class)))
    fail("weak Ext^1 differs from strong Ext^1 modulo the iota class");
  long drop = element_order(s.iota_class).finite ? 1 : 0;
  if (static_cast<long>(rank(s.exts0)) != static_cast<long>(rank(s.extw0)) - drop)
    fail("six-term rank relation between Ext^0 groups fails");
  return r;
}

}  // namespace ckrec
