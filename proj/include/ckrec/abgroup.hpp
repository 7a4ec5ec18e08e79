#pragma once

#include "ckrec/intlinalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ckrec {

// Canonical form of a finitely generated abelian group:
// Z^free_rank (+) Z/torsion[0] (+) ... with an ascending divisibility chain,
// every factor >= 2. Isomorphism is componentwise equality.
struct FgAbGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  bool operator==(const FgAbGroup& o) const = default;
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  // "Z^r (+) Z/d1 (+) ... (+) Z/dk"; trivial group renders as "0".
  std::string to_string() const;
};

// Element in canonical coordinates; torsion coordinate i lives in
// [0, torsion[i]). Equality of elements is syntactic.
struct GroupElement {
  FgAbGroup owner;
  std::vector<Int> free_coords;
  std::vector<Int> torsion_coords;

  bool operator==(const GroupElement& o) const = default;
  bool is_zero() const;
};

GroupElement make_element(const FgAbGroup& g, std::vector<Int> free_coords,
                          std::vector<Int> torsion_coords);
GroupElement zero_element(const FgAbGroup& g);

// Homomorphism from ambient presentation coordinates to canonical
// coordinates; vanishes exactly on the relation lattice.
struct CoordinateMap {
  IntMatrix u;                   // ambient transform from the normal form
  std::vector<Int> row_factor;   // per transformed row: 0 = free, 1 = dropped, >=2 = torsion
  FgAbGroup group;

  GroupElement apply(const std::vector<Int>& ambient) const;
};

struct Canonicalized {
  FgAbGroup group;
  CoordinateMap map;
};

Canonicalized canonicalize(const PresentedGroup& p);

// Order of g: {finite=true, value=k} for the least k > 0 with k g = 0,
// {finite=false} when g has a nonzero free coordinate.
struct Order {
  bool finite;
  Int value;  // meaningful only when finite
  bool operator==(const Order& o) const {
    return finite == o.finite && (!finite || value == o.value);
  }
};

Order element_order(const GroupElement& g);

// Canonical form of owner / <g>.
FgAbGroup quotient_by(const GroupElement& g);

// Pointed isomorphism (G, g) ~ (H, h): group iso + quotient iso + equal
// element order. Absorbs the sign automorphism automatically.
bool pointed_iso(const FgAbGroup& g_grp, const GroupElement& g,
                 const FgAbGroup& h_grp, const GroupElement& h);

// Independent validator: true iff some automorphism of G maps g to h,
// by exhaustive enumeration of endomorphism matrices filtered for
// bijectivity. G must be finite of order <= 256; enumerations whose
// matrix count exceeds an internal budget raise a size-exceeded error.
bool aut_orbit_oracle(const FgAbGroup& g_grp, const GroupElement& g,
                      const GroupElement& h);

FgAbGroup free_part(const FgAbGroup& g);
FgAbGroup torsion_part(const FgAbGroup& g);
std::size_t rank(const FgAbGroup& g);
bool is_isomorphic(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);

// Pointed K-theory datum (K0, [unit], K1); unit owned by k0.
struct KDatum {
  FgAbGroup k0;
  GroupElement unit;
  FgAbGroup k1;
};

}  // namespace ckrec
