#include "ckrec/classify.hpp"

namespace ckrec {

bool is_ck_form(const KDatum& d) {
  return torsion_part(d.k1).trivial() && is_isomorphic(free_part(d.k0), d.k1);
}

bool is_reciprocal_ck_form(const KDatum& d) {
  return torsion_part(d.k1).trivial() &&
         is_isomorphic(free_part(d.k0), direct_sum(d.k1, FgAbGroup{1, {}}));
}

WCaseReport w_case_report(const KDatum& d) {
  if (!is_reciprocal_ck_form(d))
    throw Error("NotReciprocalForm", "datum is not of reciprocal form");
  WCaseReport r;
  r.w = element_order(d.unit).finite ? 0 : 1;
  r.rec_k0 = quotient_by(d.unit);
  r.rec_k1 = r.w == 1 ? d.k1 : direct_sum(d.k1, FgAbGroup{1, {}});
  return r;
}

bool kp_iso(const KDatum& d1, const KDatum& d2) {
  return is_isomorphic(d1.k1, d2.k1) &&
         pointed_iso(d1.k0, d1.unit, d2.k0, d2.unit);
}

CheckReport prop22_check(const AdjacencyMatrix& a, const KDatum& d) {
  InvariantSheet sa = invariant_sheet(a);
  CheckReport r;
  if (!pointed_iso(sa.exts1, sa.iota_class, d.k0, d.unit))
    r.failures.push_back("pointed (Ext^1, iota) does not match (k0, unit)");
  if (!is_isomorphic(sa.exts0, d.k1))
    r.failures.push_back("Ext^0 does not match k1");
  return r;
}

CheckReport prop22_check(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
  InvariantSheet sa = invariant_sheet(a);
  InvariantSheet sb = invariant_sheet(b);
  CheckReport r;
  auto fail = [&r](const std::string& m) { r.failures.push_back(m); };

  if (!pointed_iso(sa.exts1, sa.iota_class, sb.k0, sb.unit_class))
    fail("pointed (Ext^1 of first, iota) does not match (K0 of second, unit)");
  if (!is_isomorphic(sa.exts0, sb.k1)) fail("Ext^0 of first differs from K1 of second");
  if (!pointed_iso(sa.k0, sa.unit_class, sb.exts1, sb.iota_class))
    fail("pointed (K0 of first, unit) does not match (Ext^1 of second, iota)");
  if (!is_isomorphic(sa.k1, sb.exts0)) fail("K1 of first differs from Ext^0 of second");

  // unpointed cross-check, both parities
  if (!is_isomorphic(sa.k0, sb.exts1)) fail("K0 of first differs from Ext^1 of second");
  if (!is_isomorphic(sa.k1, sb.exts0)) fail("K1 of first differs from Ext^0 of second");
  if (!is_isomorphic(sa.exts0, sb.k1)) fail("Ext^0 of first differs from K1 of second");
  if (!is_isomorphic(sa.exts1, sb.k0)) fail("Ext^1 of first differs from K0 of second");
  return r;
}

}  // namespace ckrec
