#pragma once

#include "ckrec/abgroup.hpp"

#include <string>
#include <vector>

namespace ckrec {

// 0/1 matrix certified irreducible and non-permutation. Obtain through
// check_admissible only.
struct AdjacencyMatrix {
  IntMatrix m;
  std::size_t n() const { return m.rows(); }
};

// errors: BadEntry, PermutationMatrix, NotIrreducible
AdjacencyMatrix check_admissible(const IntMatrix& a);

// hatA(i,j) = A(i,j) + R1(i,j) - A(i,1), R1 the matrix whose first row is
// all ones. Entries may leave {0,1}; see the cokernel-invariance note in
// the README.
IntMatrix build_hatA(const AdjacencyMatrix& a);

// (N+1) x N: first row all -1, below it I - A.
IntMatrix build_AT(const AdjacencyMatrix& a);

// (N+k) x (N+k): A in the top-left corner, every other entry 1. k >= 1.
IntMatrix build_Ak(const AdjacencyMatrix& a, std::size_t k);

// m x m truncation, m > N: same filling rule as build_Ak.
// errors: TruncationTooSmall
IntMatrix build_tildeAinfty(const AdjacencyMatrix& a, std::size_t m);

// m x m truncation, m >= N+2, of the ordering matrix
//   (i,j <= N)           A(j,i)
//   (i <= N, j = N+1)    1
//   (i <= N, j >= N+2)   0
//   (i = N+1)            1
//   (i >= N+2, j <= N+1) 1
//   (i >= N+2, j >= N+2) 0
// errors: TruncationTooSmall
IntMatrix build_hatAinfty(const AdjacencyMatrix& a, std::size_t m);

// Complete invariant sheet of the pair (O_A, dual O_A).
struct InvariantSheet {
  FgAbGroup k0;             // coker(I - A^t)
  GroupElement unit_class;  // class of the all-ones vector
  FgAbGroup k1;             // ker(I - A^t), free
  FgAbGroup exts1;          // coker(I - hatA)
  GroupElement iota_class;  // class of (I - A)e1
  FgAbGroup exts0;          // ker(A_T), free
  FgAbGroup extw1;          // coker(I - A)
  FgAbGroup extw0;          // Free(k0) (+) Tor(k1)
  long chi_oa = 0;          // rank k0 - rank k1
  long chi_hat = 0;         // rank exts1 - rank exts0
  int w_oa = 0;             // rank k0 - rank(k0 / <unit>)
  int w_hat = 0;            // rank exts1 - rank(exts1 / <iota>)
};

InvariantSheet invariant_sheet(const AdjacencyMatrix& a);

// (exts1, iota_class, exts0): the pointed K-datum of the reciprocal dual.
KDatum reciprocal_kdata(const AdjacencyMatrix& a);

// K-data of the Toeplitz extension side, carried by the same sheet groups;
// the duality sign epsilon = -1 is reported as metadata and the unit class
// is the iota class (sign bookkeeping elided, invisible to pointed_iso).
struct ToeplitzKData {
  KDatum datum;
  int epsilon = -1;
};

ToeplitzKData toeplitz_kdata(const AdjacencyMatrix& a);

struct CheckReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Consistency of the sheet: chi(O_A) = 0, chi(dual) = 1, w + w_hat = 1,
// extw1 iso to exts1/<iota>, and the six-term rank relation
// rank exts0 = rank extw0 - [iota has finite order].
CheckReport verify_duality_sheet(const AdjacencyMatrix& a);

}  // namespace ckrec
