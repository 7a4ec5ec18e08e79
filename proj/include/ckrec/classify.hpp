#pragma once

#include "ckrec/ktheory.hpp"

namespace ckrec {

// Free(k0) iso k1 and Tor(k1) = 0: the datum shape realized by the
// algebras built from admissible matrices.
bool is_ck_form(const KDatum& d);

// Free(k0) iso k1 (+) Z and Tor(k1) = 0: the datum shape realized by
// their reciprocal duals.
bool is_reciprocal_ck_form(const KDatum& d);

// Reconstruction of the algebra-side K-data from a reciprocal-form datum:
// K0 = k0/<unit>; K1 = k1 when the unit has infinite order (w = 1),
// k1 (+) Z when it is torsion (w = 0).
struct WCaseReport {
  int w = 0;
  FgAbGroup rec_k0;
  FgAbGroup rec_k1;
};

// errors: NotReciprocalForm
WCaseReport w_case_report(const KDatum& d);

// Pointed K-datum equivalence: pointed_iso on (k0, unit) plus plain
// isomorphism on k1. For the simple purely infinite nuclear algebras in
// scope this decides isomorphism; the function itself only compares data.
bool kp_iso(const KDatum& d1, const KDatum& d2);

// Duality recognition, datum form: checks
//   (exts1(A), iota) pointed-iso (d.k0, d.unit)  and  exts0(A) iso d.k1.
CheckReport prop22_check(const AdjacencyMatrix& a, const KDatum& d);

// Duality recognition, matrix form: the pointed condition in both
// directions plus the four unpointed isomorphisms
//   K_i(A) iso Ext_s^{i+1}(B) and Ext_s^i(A) iso K_{i+1}(B), i = 0,1.
CheckReport prop22_check(const AdjacencyMatrix& a, const AdjacencyMatrix& b);

}  // namespace ckrec
