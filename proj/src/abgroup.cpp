#include "ckrec/abgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace ckrec {

std::string FgAbGroup::to_string() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank == 1) {
    os << "Z";
    first = false;
  } else if (free_rank >= 2) {
    os << "Z^" << free_rank;
    first = false;
  }
  for (const Int& d : torsion) {
    if (!first) os << " (+) ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

bool GroupElement::is_zero() const {
  auto all0 = [](const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
  };
  return all0(free_coords) && all0(torsion_coords);
}

namespace {

Int mod_into(const Int& x, const Int& d) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return r;  // in [0, d) for d > 0
}

}  // namespace

GroupElement make_element(const FgAbGroup& g, std::vector<Int> free_coords,
                          std::vector<Int> torsion_coords) {
  if (free_coords.size() != g.free_rank || torsion_coords.size() != g.torsion.size())
    throw Error("OwnershipMismatch", "coordinate lengths do not match the group");
  for (std::size_t i = 0; i < torsion_coords.size(); ++i)
    torsion_coords[i] = mod_into(torsion_coords[i], g.torsion[i]);
  return GroupElement{g, std::move(free_coords), std::move(torsion_coords)};
}

GroupElement zero_element(const FgAbGroup& g) {
  return GroupElement{g, std::vector<Int>(g.free_rank, Int(0)),
                      std::vector<Int>(g.torsion.size(), Int(0))};
}

GroupElement CoordinateMap::apply(const std::vector<Int>& ambient) const {
  if (ambient.size() != u.cols())
    throw Error("BadShape", "ambient vector length does not match the presentation");
  std::vector<Int> w(u.rows(), Int(0));
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) w[i] += u.at(i, j) * ambient[j];
  std::vector<Int> fc, tc;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (row_factor[i] == 0)
      fc.push_back(w[i]);
    else if (row_factor[i] >= 2)
      tc.push_back(mod_into(w[i], row_factor[i]));
  }
  return GroupElement{group, std::move(fc), std::move(tc)};
}

Canonicalized canonicalize(const PresentedGroup& p) {
  if (p.relations.rows() != p.ambient_rank)
    throw Error("BadShape", "relation matrix rows must equal the ambient rank");
  SnfResult s = snf(p.relations);
  const std::size_t n = p.ambient_rank;
  const std::size_t mn = std::min(p.relations.rows(), p.relations.cols());
  std::vector<Int> row_factor(n, Int(0));
  for (std::size_t i = 0; i < mn; ++i) row_factor[i] = s.d.at(i, i);

  FgAbGroup g;
  for (std::size_t i = 0; i < n; ++i) {
    if (row_factor[i] == 0)
      ++g.free_rank;
    else if (row_factor[i] >= 2)
      g.torsion.push_back(row_factor[i]);
  }
  CoordinateMap map{std::move(s.u), std::move(row_factor), g};
  return Canonicalized{std::move(g), std::move(map)};
}

Order element_order(const GroupElement& g) {
  for (const Int& x : g.free_coords)
    if (x != 0) return Order{false, Int(0)};
  Int k = 1;
  for (std::size_t i = 0; i < g.torsion_coords.size(); ++i) {
    const Int& d = g.owner.torsion[i];
    const Int& t = g.torsion_coords[i];
    if (t == 0) continue;
    k = lcm(k, Int(d / gcd(d, t)));
  }
  return Order{true, k};
}

FgAbGroup quotient_by(const GroupElement& g) {
  const FgAbGroup& G = g.owner;
  const std::size_t t = G.torsion.size(), f = G.free_rank;
  if (t + f == 0) return FgAbGroup{};
  IntMatrix rel(t + f, t + 1);
  for (std::size_t i = 0; i < t; ++i) {
    rel.at(i, i) = G.torsion[i];
    rel.at(i, t) = g.torsion_coords[i];
  }
  for (std::size_t i = 0; i < f; ++i) rel.at(t + i, t) = g.free_coords[i];
  return canonicalize(PresentedGroup{t + f, rel}).group;
}

bool pointed_iso(const FgAbGroup& g_grp, const GroupElement& g,
                 const FgAbGroup& h_grp, const GroupElement& h) {
  if (g.owner != g_grp || h.owner != h_grp)
    throw Error("OwnershipMismatch", "element not owned by the stated group");
  if (g_grp != h_grp) return false;
  if (!(element_order(g) == element_order(h))) return false;
  return quotient_by(g) == quotient_by(h);
}

namespace {

constexpr long kEndoBudget = 1L << 21;

struct ChainAuts {
  std::vector<long> d;                    // torsion chain as machine ints
  std::vector<std::vector<long>> auts;    // each k*k row-major automorphism matrix
};

long det_mod_p(std::vector<long> a, std::size_t n, long p) {
  long det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] % p == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
      det = -det;
    }
    long inv = 1, base = ((a[c * n + c] % p) + p) % p, e = p - 2;
    while (e) {  // Fermat inverse; p prime
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    det = det * a[c * n + c] % p;
    for (std::size_t i = c + 1; i < n; ++i) {
      long m = ((a[i * n + c] % p) * inv) % p;
      if (!m) continue;
      for (std::size_t j = c; j < n; ++j)
        a[i * n + j] = ((a[i * n + j] - m * a[c * n + j]) % p + p) % p;
    }
  }
  return ((det % p) + p) % p;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

// Surjectivity of an endomorphism of (+) Z/d_i reduces to invertibility of
// the induced map on G/pG for every prime p of the largest factor.
bool endo_invertible(const std::vector<long>& m, const std::vector<long>& d,
                     const std::vector<long>& primes) {
  const std::size_t k = d.size();
  for (long p : primes) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < k; ++i)
      if (d[i] % p == 0) idx.push_back(i);
    std::vector<long> sub(idx.size() * idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b)
        sub[a * idx.size() + b] = m[idx[a] * k + idx[b]];
    if (det_mod_p(std::move(sub), idx.size(), p) == 0) return false;
  }
  return true;
}

const ChainAuts& chain_auts(const std::vector<long>& d) {
  static std::map<std::vector<long>, ChainAuts> cache;
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;

  const std::size_t k = d.size();
  // entry (i,j) ranges over multiples of d_i/gcd(d_i,d_j): gcd(d_i,d_j) choices
  std::vector<long> radix(k * k), step(k * k);
  long total = 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      long g = std::gcd(d[i], d[j]);
      radix[i * k + j] = g;
      step[i * k + j] = d[i] / g;
      if (total <= kEndoBudget)
        total = (total > kEndoBudget / g) ? kEndoBudget + 1 : total * g;
    }
  if (total > kEndoBudget)
    throw Error("SizeExceeded", "endomorphism enumeration exceeds the oracle budget");

  long exponent = d.empty() ? 1 : d.back();
  std::vector<long> primes = prime_divisors(exponent);

  ChainAuts ca;
  ca.d = d;
  std::vector<long> digits(k * k, 0), m(k * k, 0);
  for (long idx = 0; idx < total; ++idx) {
    for (std::size_t c = 0; c < k * k; ++c) m[c] = digits[c] * step[c];
    if (endo_invertible(m, d, primes)) ca.auts.push_back(m);
    for (std::size_t c = 0; c < k * k; ++c) {
      if (++digits[c] < radix[c]) break;
      digits[c] = 0;
    }
  }
  return cache.emplace(d, std::move(ca)).first->second;
}

}  // namespace

bool aut_orbit_oracle(const FgAbGroup& g_grp, const GroupElement& g,
                      const GroupElement& h) {
  if (g.owner != g_grp || h.owner != g_grp)
    throw Error("OwnershipMismatch", "element not owned by the stated group");
  if (g_grp.free_rank != 0)
    throw Error("InfiniteGroup", "orbit oracle requires a finite group");
  Int order = 1;
  for (const Int& d : g_grp.torsion) order *= d;
  if (order > 256)
    throw Error("SizeExceeded", "orbit oracle requires order <= 256");

  const std::size_t k = g_grp.torsion.size();
  if (k == 0) return g == h;  // trivial group
  std::vector<long> d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = g_grp.torsion[i].get_si();
  std::vector<long> gv(k), hv(k);
  for (std::size_t i = 0; i < k; ++i) {
    gv[i] = g.torsion_coords[i].get_si();
    hv[i] = h.torsion_coords[i].get_si();
  }

  const ChainAuts& ca = chain_auts(d);
  std::vector<long> img(k);
  for (const auto& m : ca.auts) {
    for (std::size_t i = 0; i < k; ++i) {
      long s = 0;
      for (std::size_t j = 0; j < k; ++j) s += m[i * k + j] * gv[j];
      img[i] = ((s % d[i]) + d[i]) % d[i];
    }
    if (img == hv) return true;
  }
  return false;
}

FgAbGroup free_part(const FgAbGroup& g) { return FgAbGroup{g.free_rank, {}}; }

FgAbGroup torsion_part(const FgAbGroup& g) { return FgAbGroup{0, g.torsion}; }

std::size_t rank(const FgAbGroup& g) { return g.free_rank; }

bool is_isomorphic(const FgAbGroup& a, const FgAbGroup& b) { return a == b; }

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  std::vector<Int> factors;
  factors.insert(factors.end(), a.torsion.begin(), a.torsion.end());
  factors.insert(factors.end(), b.torsion.begin(), b.torsion.end());
  if (factors.empty()) return FgAbGroup{a.free_rank + b.free_rank, {}};
  IntMatrix rel(factors.size(), factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) rel.at(i, i) = factors[i];
  FgAbGroup merged = canonicalize(PresentedGroup{factors.size(), rel}).group;
  merged.free_rank = a.free_rank + b.free_rank;
  return merged;
}

}  // namespace ckrec
