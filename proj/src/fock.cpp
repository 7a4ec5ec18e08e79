#include "ckrec/fock.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace ckrec {

GInt GInt::times_i_pow(int k) const {
  switch (((k % 4) + 4) % 4) {
    case 0: return *this;
    case 1: return GInt{-im, re};
    case 2: return GInt{-re, -im};
    default: return GInt{im, -re};
  }
}

namespace {
constexpr WordKey kLetterMask = 0x00FFFFFFFFFFFFFFULL;
}

WordKey word_prepend(WordKey w, std::size_t letter) {
  WordKey len = w >> 56;
  return ((len + 1) << 56) | (((w & kLetterMask) << 4) | WordKey(letter));
}

WordKey word_tail(WordKey w) {
  WordKey len = w >> 56;
  return ((len - 1) << 56) | ((w & kLetterMask) >> 4);
}

WordKey word_append(WordKey w, std::size_t letter) {
  WordKey len = w >> 56;
  return ((len + 1) << 56) | (w & kLetterMask) | (WordKey(letter) << (4 * len));
}

std::uint32_t FockBasis::index_of(WordKey w) const {
  auto it = std::lower_bound(sorted_keys.begin(), sorted_keys.end(), w);
  if (it == sorted_keys.end() || *it != w) return npos;
  return sorted_pos[std::size_t(it - sorted_keys.begin())];
}

std::size_t FockBasis::count_len_le(std::size_t l) const {
  return len_counts[std::min(l, depth)];
}

FockBasis enumerate_basis(const AdjacencyMatrix& b, std::size_t L) {
  const std::size_t m = b.n();
  if (m > 15 || L > 14)
    throw Error("DimensionExceeded", "word packing supports at most 15 letters and depth 14");
  if (L < 1) throw Error("BadSize", "depth must be at least 1");

  std::vector<char> adj(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) adj[i * m + j] = (b.m.at(i, j) == 1);

  FockBasis fb;
  fb.matrix = b;
  fb.depth = L;

  // depth-first, children in ascending letter order, parent before child
  struct Frame { WordKey w; std::size_t last; std::size_t len; };
  std::vector<Frame> stack;
  stack.push_back({WordKey(0), 0, 0});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    fb.words.push_back(f.w);
    if (f.len == L) continue;
    for (std::size_t j = m; j >= 1; --j) {  // reversed so the stack pops ascending
      if (f.len == 0 || adj[(f.last - 1) * m + (j - 1)])
        stack.push_back({word_append(f.w, j), j, f.len + 1});
    }
  }

  const std::size_t dim = fb.words.size();
  fb.sorted_keys = fb.words;
  std::vector<std::uint32_t> perm(dim);
  for (std::uint32_t i = 0; i < dim; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&fb](std::uint32_t x, std::uint32_t y) {
    return fb.words[x] < fb.words[y];
  });
  for (std::size_t i = 0; i < dim; ++i) fb.sorted_keys[i] = fb.words[perm[i]];
  fb.sorted_pos = std::move(perm);

  fb.len_counts.assign(L + 1, 0);
  for (WordKey w : fb.words) ++fb.len_counts[word_len(w)];
  for (std::size_t l = 1; l <= L; ++l) fb.len_counts[l] += fb.len_counts[l - 1];
  return fb;
}

SparseOp SparseOp::identity(std::size_t dim) {
  SparseOp s;
  s.dim = dim;
  s.col_ptr.resize(dim + 1);
  s.row.resize(dim);
  s.val.assign(dim, GInt{1, 0});
  for (std::size_t j = 0; j <= dim; ++j) s.col_ptr[j] = std::uint32_t(j);
  for (std::size_t j = 0; j < dim; ++j) s.row[j] = std::uint32_t(j);
  return s;
}

SparseOp SparseOp::zero(std::size_t dim) {
  SparseOp s;
  s.dim = dim;
  s.col_ptr.assign(dim + 1, 0);
  return s;
}

SparseOp SparseOp::adjoint() const {
  SparseOp t;
  t.dim = dim;
  t.col_ptr.assign(dim + 1, 0);
  t.row.resize(nnz());
  t.val.resize(nnz());
  for (std::uint32_t r : row) ++t.col_ptr[r + 1];
  for (std::size_t j = 1; j <= dim; ++j) t.col_ptr[j] += t.col_ptr[j - 1];
  std::vector<std::uint32_t> next(t.col_ptr.begin(), t.col_ptr.end() - 1);
  for (std::uint32_t c = 0; c < dim; ++c)
    for (std::uint32_t p = col_ptr[c]; p < col_ptr[c + 1]; ++p) {
      std::uint32_t dst = next[row[p]]++;
      t.row[dst] = c;
      t.val[dst] = val[p].conj();
    }
  return t;
}

GInt SparseOp::entry(std::uint32_t r, std::uint32_t c) const {
  for (std::uint32_t p = col_ptr[c]; p < col_ptr[c + 1]; ++p)
    if (row[p] == r) return val[p];
  return GInt{};
}

bool SparseOp::operator==(const SparseOp& o) const {
  return dim == o.dim && col_ptr == o.col_ptr && row == o.row && val == o.val;
}

SparseOp operator*(const SparseOp& a, const SparseOp& b) {
  SparseOp c;
  c.dim = a.dim;
  c.col_ptr.assign(c.dim + 1, 0);
  std::vector<GInt> acc(a.dim);
  std::vector<std::uint32_t> stamp(a.dim, 0xFFFFFFFFu);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t j = 0; j < b.dim; ++j) {
    touched.clear();
    for (std::uint32_t p = b.col_ptr[j]; p < b.col_ptr[j + 1]; ++p) {
      std::uint32_t k = b.row[p];
      const GInt& vb = b.val[p];
      for (std::uint32_t q = a.col_ptr[k]; q < a.col_ptr[k + 1]; ++q) {
        std::uint32_t r = a.row[q];
        if (stamp[r] != j) {
          stamp[r] = j;
          acc[r] = GInt{};
          touched.push_back(r);
        }
        acc[r] = acc[r] + a.val[q] * vb;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t r : touched)
      if (!acc[r].is_zero()) {
        c.row.push_back(r);
        c.val.push_back(acc[r]);
      }
    c.col_ptr[j + 1] = std::uint32_t(c.row.size());
  }
  return c;
}

namespace {

SparseOp combine(const SparseOp& a, const SparseOp& b, bool subtract) {
  SparseOp c;
  c.dim = a.dim;
  c.col_ptr.assign(c.dim + 1, 0);
  for (std::uint32_t j = 0; j < a.dim; ++j) {
    std::uint32_t pa = a.col_ptr[j], ea = a.col_ptr[j + 1];
    std::uint32_t pb = b.col_ptr[j], eb = b.col_ptr[j + 1];
    while (pa < ea || pb < eb) {
      std::uint32_t r;
      GInt v;
      if (pb >= eb || (pa < ea && a.row[pa] < b.row[pb])) {
        r = a.row[pa];
        v = a.val[pa++];
      } else if (pa >= ea || b.row[pb] < a.row[pa]) {
        r = b.row[pb];
        v = b.val[pb++];
        if (subtract) v = GInt{} - v;
      } else {
        r = a.row[pa];
        v = subtract ? a.val[pa] - b.val[pb] : a.val[pa] + b.val[pb];
        ++pa;
        ++pb;
      }
      if (!v.is_zero()) {
        c.row.push_back(r);
        c.val.push_back(v);
      }
    }
    c.col_ptr[j + 1] = std::uint32_t(c.row.size());
  }
  return c;
}

}  // namespace

SparseOp operator+(const SparseOp& a, const SparseOp& b) { return combine(a, b, false); }

SparseOp operator-(const SparseOp& a, const SparseOp& b) { return combine(a, b, true); }

SparseOp scale(const GInt& c, const SparseOp& a) {
  if (c.is_zero()) return SparseOp::zero(a.dim);
  SparseOp s = a;
  for (GInt& v : s.val) v = c * v;
  return s;
}

SparseOp creation_op(const FockBasis& b, std::size_t i) {
  const std::size_t m = b.matrix.n();
  if (i < 1 || i > m)
    throw Error("IndexOutOfRange", "creation letter outside the matrix");
  SparseOp t;
  t.dim = b.size();
  t.col_ptr.assign(t.dim + 1, 0);
  for (std::uint32_t c = 0; c < t.dim; ++c) {
    WordKey w = b.words[c];
    if (word_len(w) < b.depth &&
        (word_len(w) == 0 || b.matrix.m.at(i - 1, word_first(w) - 1) == 1)) {
      std::uint32_t r = b.index_of(word_prepend(w, i));
      t.row.push_back(r);
      t.val.push_back(GInt{1, 0});
    }
    t.col_ptr[c + 1] = std::uint32_t(t.row.size());
  }
  return t;
}

SparseOp interior_projector(const FockBasis& b, std::size_t h) {
  if (h > b.depth) throw Error("BadSize", "headroom exceeds depth");
  SparseOp p;
  p.dim = b.size();
  p.col_ptr.assign(p.dim + 1, 0);
  for (std::uint32_t c = 0; c < p.dim; ++c) {
    if (word_len(b.words[c]) <= b.depth - h) {
      p.row.push_back(c);
      p.val.push_back(GInt{1, 0});
    }
    p.col_ptr[c + 1] = std::uint32_t(p.row.size());
  }
  return p;
}

bool verify_relation(const SparseOp& lhs, const SparseOp& rhs,
                     const FockBasis& b, std::size_t h) {
  const std::size_t cutoff = b.depth - std::min(h, b.depth);
  for (std::uint32_t c = 0; c < lhs.dim; ++c) {
    if (word_len(b.words[c]) > cutoff) continue;
    std::uint32_t la = lhs.col_ptr[c], ea = lhs.col_ptr[c + 1];
    std::uint32_t lb = rhs.col_ptr[c], eb = rhs.col_ptr[c + 1];
    if (ea - la != eb - lb) return false;
    for (; la < ea; ++la, ++lb)
      if (lhs.row[la] != rhs.row[lb] || !(lhs.val[la] == rhs.val[lb])) return false;
  }
  return true;
}

int MonomialExpr::headroom() const {
  int run = 0, best = 0;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    if (it->first == Letter::Create) ++run;
    else if (it->first == Letter::Annihilate) --run;
    best = std::max(best, run);
  }
  return best;
}

MonomialExpr MonomialExpr::adjoint() const {
  MonomialExpr a;
  a.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    auto l = *it;
    if (l.first == Letter::Create) l.first = Letter::Annihilate;
    else if (l.first == Letter::Annihilate) l.first = Letter::Create;
    a.letters.push_back(l);
  }
  return a;
}

MonomialExpr MonomialExpr::one() { return MonomialExpr{}; }

MonomialExpr MonomialExpr::create(std::size_t i) {
  return MonomialExpr{{{Letter::Create, i}}};
}

MonomialExpr MonomialExpr::annihilate(std::size_t i) {
  return MonomialExpr{{{Letter::Annihilate, i}}};
}

MonomialExpr MonomialExpr::proj_interval(std::size_t n) {
  return MonomialExpr{{{Letter::ProjInterval, n}}};
}

MonomialExpr MonomialExpr::proj_vacuum() {
  return MonomialExpr{{{Letter::ProjVacuum, 0}}};
}

MonomialExpr operator*(const MonomialExpr& a, const MonomialExpr& b) {
  MonomialExpr c = a;
  c.letters.insert(c.letters.end(), b.letters.begin(), b.letters.end());
  return c;
}

int sum_headroom(const SumExpr& s) {
  int h = 0;
  for (const MonomialExpr& m : s) h = std::max(h, m.headroom());
  return h;
}

SumExpr sum_product(const SumExpr& a, const SumExpr& b) {
  SumExpr c;
  c.reserve(a.size() * b.size());
  for (const MonomialExpr& x : a)
    for (const MonomialExpr& y : b) c.push_back(x * y);
  return c;
}

SumExpr sum_adjoint(const SumExpr& s) {
  SumExpr a;
  a.reserve(s.size());
  for (const MonomialExpr& m : s) a.push_back(m.adjoint());
  return a;
}

SumExpr sum_concat(const SumExpr& a, const SumExpr& b) {
  SumExpr c = a;
  c.insert(c.end(), b.begin(), b.end());
  return c;
}

namespace {

// P_n as a diagonal operator: keeps the vacuum and words whose first
// letter exceeds n. Equals 1 - sum_{j<=n} T_jT_j* at every depth because
// T_jT_j* never leaves the truncated space.
SparseOp proj_interval_op(const FockBasis& b, std::size_t n) {
  SparseOp p;
  p.dim = b.size();
  p.col_ptr.assign(p.dim + 1, 0);
  for (std::uint32_t c = 0; c < p.dim; ++c) {
    WordKey w = b.words[c];
    if (word_len(w) == 0 || word_first(w) > n) {
      p.row.push_back(c);
      p.val.push_back(GInt{1, 0});
    }
    p.col_ptr[c + 1] = std::uint32_t(p.row.size());
  }
  return p;
}

SparseOp proj_vacuum_op(const FockBasis& b) {
  SparseOp p;
  p.dim = b.size();
  p.col_ptr.assign(p.dim + 1, 0);
  p.row.push_back(0);
  p.val.push_back(GInt{1, 0});
  for (std::size_t c = 1; c <= p.dim; ++c) p.col_ptr[c] = 1;
  return p;
}

}  // namespace

SparseOp realize(const MonomialExpr& m, const FockBasis& b) {
  SparseOp cur = SparseOp::identity(b.size());
  for (auto it = m.letters.rbegin(); it != m.letters.rend(); ++it) {
    SparseOp step;
    switch (it->first) {
      case MonomialExpr::Letter::Create: step = creation_op(b, it->second); break;
      case MonomialExpr::Letter::Annihilate:
        step = creation_op(b, it->second).adjoint();
        break;
      case MonomialExpr::Letter::ProjInterval:
        step = proj_interval_op(b, it->second);
        break;
      case MonomialExpr::Letter::ProjVacuum: step = proj_vacuum_op(b); break;
    }
    cur = step * cur;
  }
  return cur;
}

SparseOp realize_sum(const SumExpr& s, const FockBasis& b) {
  SparseOp acc = SparseOp::zero(b.size());
  for (const MonomialExpr& m : s) acc = acc + realize(m, b);
  return acc;
}

GenOp gen_product(const GenOp& a, const GenOp& b) {
  return GenOp{a.op * b.op, sum_product(a.expr, b.expr)};
}

GenOp gen_adjoint(const GenOp& a) {
  return GenOp{a.op.adjoint(), sum_adjoint(a.expr)};
}

GenOp gen_sum(const GenOp& a, const GenOp& b) {
  return GenOp{a.op + b.op, sum_concat(a.expr, b.expr)};
}

// expr tracks monomial shapes only (no signs), which is all headroom needs
GenOp gen_diff(const GenOp& a, const GenOp& b) {
  return GenOp{a.op - b.op, sum_concat(a.expr, b.expr)};
}

bool FockReport::ok() const {
  for (const RelationResult& r : results)
    if (!r.pass) return false;
  return true;
}

namespace {

bool nonzero_on_interior(const SparseOp& x, const FockBasis& b, std::size_t h) {
  const std::size_t cutoff = b.depth - std::min(h, b.depth);
  for (std::uint32_t c = 0; c < x.dim; ++c)
    if (word_len(b.words[c]) <= cutoff && x.col_ptr[c + 1] > x.col_ptr[c])
      return true;
  return false;
}

}  // namespace

OrderCheck projection_order(const GenOp& p, const GenOp& q, const FockBasis& b,
                            std::size_t h_min) {
  OrderCheck oc;
  GenOp qp = gen_product(q, p);
  std::size_t h1 = std::max({std::size_t(qp.headroom()), std::size_t(p.headroom()),
                             std::size_t(q.headroom()), h_min});
  oc.leq = verify_relation(qp.op, p.op, b, h1);
  oc.h_used = h1;
  if (oc.leq) {
    GenOp d = gen_diff(q, p);
    GenOp dd = gen_product(d, d);
    std::size_t h2 = std::max({std::size_t(dd.headroom()), h1});
    bool idem = verify_relation(dd.op, d.op, b, h2);
    bool nz = nonzero_on_interior(d.op, b, h2);
    oc.strict = idem && nz;
    oc.h_used = std::max(h1, h2);
  }
  return oc;
}

namespace {

GenOp make_creation(const FockBasis& b, std::size_t i) {
  return GenOp{creation_op(b, i), {MonomialExpr::create(i)}};
}

GenOp make_identity(const FockBasis& b) {
  return GenOp{SparseOp::identity(b.size()), {MonomialExpr::one()}};
}

GenOp make_proj_interval(const FockBasis& b, std::size_t n) {
  return GenOp{proj_interval_op(b, n), {MonomialExpr::proj_interval(n)}};
}

GenOp make_proj_vacuum(const FockBasis& b) {
  return GenOp{proj_vacuum_op(b), {MonomialExpr::proj_vacuum()}};
}

void push(FockReport& rep, std::string relation, std::string indices,
          std::size_t h, std::size_t depth, bool pass) {
  rep.results.push_back(
      RelationResult{std::move(relation), std::move(indices), int(h), depth, pass});
}

std::size_t rel_headroom(const GenOp& lhs, const GenOp& rhs) {
  return std::size_t(std::max(lhs.headroom(), rhs.headroom()));
}

}  // namespace

FockReport verify_toeplitz(const AdjacencyMatrix& a, std::size_t L) {
  if (L < 2) throw Error("BadSize", "depth must be at least 2");
  const std::size_t n = a.n();
  FockBasis basis = enumerate_basis(a, L);
  FockReport rep;

  std::vector<GenOp> t;
  for (std::size_t j = 1; j <= n; ++j) t.push_back(make_creation(basis, j));
  GenOp e = make_proj_vacuum(basis);
  GenOp one = make_identity(basis);

  GenOp range_sum = e;
  for (std::size_t j = 0; j < n; ++j)
    range_sum = gen_sum(range_sum, gen_product(t[j], gen_adjoint(t[j])));
  push(rep, "unit-partition", "", 0, L,
       verify_relation(one.op, range_sum.op, basis, 0));

  push(rep, "vacuum-projection-rank-one", "", 0, L,
       e.op.nnz() == 1 && e.op.entry(0, 0) == GInt{1, 0});

  for (std::size_t i = 1; i <= n; ++i) {
    GenOp lhs = gen_product(gen_adjoint(t[i - 1]), t[i - 1]);
    GenOp rhs = e;
    for (std::size_t j = 1; j <= n; ++j)
      if (a.m.at(i - 1, j - 1) == 1)
        rhs = gen_sum(rhs, gen_product(t[j - 1], gen_adjoint(t[j - 1])));
    std::size_t h = rel_headroom(lhs, rhs);
    push(rep, "matrix-row-relation", "i=" + std::to_string(i), h, L,
         verify_relation(lhs.op, rhs.op, basis, h));
    // certified to fail at full depth: creations kill the longest words
    push(rep, "matrix-row-relation-boundary-control", "i=" + std::to_string(i),
         0, L, !verify_relation(lhs.op, rhs.op, basis, 0));
  }
  return rep;
}

FockReport verify_oainf(const AdjacencyMatrix& a, std::size_t k, std::size_t L) {
  if (k < 1) throw Error("BadSize", "k must be at least 1");
  if (L < 3) throw Error("BadSize", "depth must be at least 3");
  const std::size_t n = a.n(), m = n + k;
  AdjacencyMatrix ak = check_admissible(build_Ak(a, k));
  FockBasis basis = enumerate_basis(ak, L);
  FockReport rep;

  std::vector<GenOp> s;
  for (std::size_t j = 1; j <= m; ++j) s.push_back(make_creation(basis, j));
  GenOp one = make_identity(basis);
  GenOp pn = make_proj_interval(basis, n);
  GenOp pm = make_proj_vacuum(basis);  // P_{N+k} = 1 - sum of all ranges

  std::vector<GenOp> range;  // S_jS_j*
  for (std::size_t j = 0; j < m; ++j)
    range.push_back(gen_product(s[j], gen_adjoint(s[j])));

  GenOp qsum = range[0];
  for (std::size_t nn = 1; nn <= m; ++nn) {
    GenOp qq = gen_product(qsum, qsum);
    std::size_t h = std::size_t(qq.headroom());
    push(rep, "range-sum-projection", "n=" + std::to_string(nn), h, L,
         verify_relation(qq.op, qsum.op, basis, h));
    if (nn < m) qsum = gen_sum(qsum, range[nn]);
  }
  push(rep, "unit-partition", "", 0, L,
       verify_relation(one.op, gen_sum(qsum, pm).op, basis, 0));

  GenOp pn_sub = one;  // 1 - sum_{j<=n} S_jS_j*, the subtraction form
  for (std::size_t j = 0; j < n; ++j) pn_sub = gen_diff(pn_sub, range[j]);
  push(rep, "interval-projection-identity", "", 0, L,
       verify_relation(pn.op, pn_sub.op, basis, 0));

  for (std::size_t i = 1; i <= n; ++i) {
    GenOp lhs = gen_product(gen_adjoint(s[i - 1]), s[i - 1]);
    GenOp rhs = pn_sub;
    for (std::size_t j = 1; j <= n; ++j)
      if (a.m.at(i - 1, j - 1) == 1) rhs = gen_sum(rhs, range[j - 1]);
    std::size_t h = std::max<std::size_t>(rel_headroom(lhs, rhs), 1);
    push(rep, "matrix-row-relation", "i=" + std::to_string(i), h, L,
         verify_relation(lhs.op, rhs.op, basis, h));
  }
  for (std::size_t i = n + 1; i <= m; ++i) {
    GenOp lhs = gen_product(gen_adjoint(s[i - 1]), s[i - 1]);
    std::size_t h = std::max<std::size_t>(rel_headroom(lhs, one), 1);
    push(rep, "isometry-relation", "i=" + std::to_string(i), h, L,
         verify_relation(lhs.op, one.op, basis, h));
  }

  OrderCheck oc = projection_order(range[n], pn, basis, 1);
  push(rep, "corner-dominates-adjoined-range", "", oc.h_used, L,
       oc.leq && oc.strict);

  // boundary controls: both families genuinely fail at full depth
  GenOp c2l = gen_product(gen_adjoint(s[0]), s[0]);
  GenOp c2r = pn_sub;
  for (std::size_t j = 1; j <= n; ++j)
    if (a.m.at(0, j - 1) == 1) c2r = gen_sum(c2r, range[j - 1]);
  push(rep, "matrix-row-relation-boundary-control", "i=1", 0, L,
       !verify_relation(c2l.op, c2r.op, basis, 0));
  GenOp c3 = gen_product(gen_adjoint(s[n]), s[n]);
  push(rep, "isometry-relation-boundary-control", "i=" + std::to_string(n + 1),
       0, L, !verify_relation(c3.op, one.op, basis, 0));
  return rep;
}

ReciprocalGenerators build_reciprocal_generators(const AdjacencyMatrix& a,
                                                 std::size_t k, std::size_t L) {
  if (k < 1) throw Error("BadSize", "k must be at least 1");
  const std::size_t n = a.n(), m = n + k;
  AdjacencyMatrix at = check_admissible(a.m.transpose());
  AdjacencyMatrix bk = check_admissible(build_Ak(at, k));

  ReciprocalGenerators g;
  g.basis = enumerate_basis(bk, L);
  g.n = n;
  g.k = k;
  for (std::size_t j = 1; j <= m; ++j) g.s_raw.push_back(make_creation(g.basis, j));
  g.p_n = make_proj_interval(g.basis, n);

  const GenOp& sn1 = g.s_raw[n];  // S_{N+1}
  for (std::size_t i = 1; i <= m; ++i)
    g.r.push_back(gen_product(gen_product(sn1, g.s_raw[i - 1]), gen_adjoint(sn1)));
  g.s = gen_product(sn1, g.p_n);

  GenOp gauge = gen_product(gen_adjoint(g.r[n]), g.r[n]);  // R_{N+1}*R_{N+1}
  GenOp low = gen_product(g.r[0], gen_adjoint(g.r[0]));
  for (std::size_t j = 2; j <= n; ++j)
    low = gen_sum(low, gen_product(g.r[j - 1], gen_adjoint(g.r[j - 1])));
  g.p1 = gen_diff(gauge, low);

  for (std::size_t i = 1; i <= m; ++i) {
    if (i <= n) g.t.push_back(g.r[i - 1]);
    else if (i == n + 1) g.t.push_back(g.s);
    else g.t.push_back(gen_product(gen_adjoint(g.s), g.r[i - 1]));
  }
  return g;
}

FockReport verify_thm57(const AdjacencyMatrix& a, std::size_t k, std::size_t L) {
  if (k < 3) throw Error("BadSize", "k must be at least 3");
  if (L < 6) throw Error("BadSize", "depth must be at least 6");
  const std::size_t n = a.n(), m = n + k;
  ReciprocalGenerators g = build_reciprocal_generators(a, k, L);
  const FockBasis& basis = g.basis;
  FockReport rep;

  std::vector<GenOp> rr;  // R_jR_j*
  for (std::size_t j = 0; j < m; ++j)
    rr.push_back(gen_product(g.r[j], gen_adjoint(g.r[j])));
  GenOp gauge = gen_product(gen_adjoint(g.r[n]), g.r[n]);

  for (std::size_t msum : {n, m}) {
    GenOp p = rr[0];
    for (std::size_t j = 2; j <= msum; ++j) p = gen_sum(p, rr[j - 1]);
    OrderCheck oc = projection_order(p, gauge, basis);
    push(rep, "range-sum-strictly-below-gauge-projection",
         "m=" + std::to_string(msum), oc.h_used, L, oc.leq && oc.strict);
  }
  for (std::size_t i = 2; i <= k; ++i) {
    GenOp other = gen_product(gen_adjoint(g.r[n + i - 1]), g.r[n + i - 1]);
    std::size_t h = rel_headroom(gauge, other);
    push(rep, "tail-isometry-equality", "i=" + std::to_string(n + i), h, L,
         verify_relation(gauge.op, other.op, basis, h));
  }

  for (std::size_t i = 1; i <= n; ++i) {
    GenOp lhs = gen_product(gen_adjoint(g.r[i - 1]), g.r[i - 1]);
    GenOp rhs = g.p1;
    for (std::size_t j = 1; j <= n; ++j)
      if (a.m.at(j - 1, i - 1) == 1) rhs = gen_sum(rhs, rr[j - 1]);
    std::size_t h = rel_headroom(lhs, rhs);
    push(rep, "matrix-column-relation", "i=" + std::to_string(i), h, L,
         verify_relation(lhs.op, rhs.op, basis, h));
  }

  GenOp ss_star = gen_product(g.s, gen_adjoint(g.s));
  std::size_t h3a = rel_headroom(ss_star, g.p1);
  push(rep, "shift-range-identity", "", h3a, L,
       verify_relation(ss_star.op, g.p1.op, basis, h3a));
  GenOp star_ss = gen_product(gen_adjoint(g.s), g.s);
  std::size_t h3b = rel_headroom(star_ss, g.p_n);
  push(rep, "shift-support-identity", "", h3b, L,
       verify_relation(star_ss.op, g.p_n.op, basis, h3b));

  GenOp x4a = gen_product(gen_adjoint(g.s), g.r[n]);
  std::size_t h4a = rel_headroom(x4a, gauge);
  push(rep, "shift-exchange-identity", "adjoint-side", h4a, L,
       verify_relation(x4a.op, gauge.op, basis, h4a));
  GenOp x4b = gen_product(g.s, gen_adjoint(g.r[n]));
  GenOp rrn1 = rr[n];
  std::size_t h4b = rel_headroom(x4b, rrn1);
  push(rep, "shift-exchange-identity", "direct-side", h4b, L,
       verify_relation(x4b.op, rrn1.op, basis, h4b));

  for (std::size_t i = 1; i <= m; ++i) {
    GenOp corner = gen_product(gen_product(g.p_n, g.r[i - 1]), g.p_n);
    std::size_t h = rel_headroom(corner, g.r[i - 1]);
    push(rep, "corner-membership", "i=" + std::to_string(i), h, L,
         verify_relation(corner.op, g.r[i - 1].op, basis, h));
  }

  // boundary controls, both provable failures at full depth
  push(rep, "shift-support-identity-boundary-control", "", 0, L,
       !verify_relation(star_ss.op, g.p_n.op, basis, 0));
  GenOp pm_all = rr[0];
  for (std::size_t j = 2; j <= m; ++j) pm_all = gen_sum(pm_all, rr[j - 1]);
  GenOp qp = gen_product(gauge, pm_all);
  push(rep, "range-sum-order-boundary-control", "", 0, L,
       !verify_relation(qp.op, pm_all.op, basis, 0));
  return rep;
}

FockReport verify_lemma56(const AdjacencyMatrix& a, std::size_t k, std::size_t L) {
  if (k < 3) throw Error("BadSize", "k must be at least 3");
  if (L < 6) throw Error("BadSize", "depth must be at least 6");
  const std::size_t n = a.n(), m = n + k;
  ReciprocalGenerators g = build_reciprocal_generators(a, k, L);
  const FockBasis& basis = g.basis;
  FockReport rep;

  IntMatrix expected_full = build_hatAinfty(a, m + 1);

  std::vector<GenOp> tt, tp;  // t_i*t_i and t_it_i*
  for (std::size_t i = 0; i < m; ++i) {
    tt.push_back(gen_product(gen_adjoint(g.t[i]), g.t[i]));
    tp.push_back(gen_product(g.t[i], gen_adjoint(g.t[i])));
  }

  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      bool expected = expected_full.at(i - 1, j - 1) == 1;
      OrderCheck oc = projection_order(tp[j - 1], tt[i - 1], basis);
      push(rep, "ordering-matrix-entry",
           "i=" + std::to_string(i) + ",j=" + std::to_string(j), oc.h_used, L,
           oc.leq == expected);
    }

  for (std::size_t i = 1; i <= m; ++i) {
    GenOp rhs = tp[n];  // t_{N+1}t_{N+1}*
    if (i <= n) {
      for (std::size_t j = 1; j <= n; ++j)
        if (a.m.at(j - 1, i - 1) == 1) rhs = gen_sum(rhs, tp[j - 1]);
    } else if (i == n + 1) {
      rhs = g.p_n;  // the corner unit
    } else {
      for (std::size_t j = 1; j <= n; ++j) rhs = gen_sum(rhs, tp[j - 1]);
    }
    std::size_t h = rel_headroom(tt[i - 1], rhs);
    const char* name = i <= n ? "t-column-relation"
                     : i == n + 1 ? "t-corner-unit" : "t-tail-relation";
    push(rep, name, "i=" + std::to_string(i), h, L,
         verify_relation(tt[i - 1].op, rhs.op, basis, h));
  }

  GenOp all = tp[0];
  for (std::size_t j = 2; j <= m; ++j) all = gen_sum(all, tp[j - 1]);
  OrderCheck oc = projection_order(all, g.p_n, basis);
  GenOp d = gen_diff(g.p_n, all);
  bool vacuum_witness = d.op.entry(0, 0) == GInt{1, 0};
  push(rep, "strict-corner-bound", "", oc.h_used, L,
       oc.leq && oc.strict && vacuum_witness);

  push(rep, "t-corner-unit-boundary-control", "i=" + std::to_string(n + 1), 0,
       L, !verify_relation(tt[n].op, g.p_n.op, basis, 0));
  return rep;
}

Gradings gauge_gradings(const FockBasis& b, std::size_t n_low) {
  const std::size_t dim = b.size();
  Gradings g;
  for (SparseOp* op : {&g.d_total, &g.d_low, &g.d_high}) {
    op->dim = dim;
    op->col_ptr.assign(dim + 1, 0);
  }
  auto add_diag = [](SparseOp& op, std::uint32_t c, long long v) {
    if (v != 0) {
      op.row.push_back(c);
      op.val.push_back(GInt{v, 0});
    }
    op.col_ptr[c + 1] = std::uint32_t(op.row.size());
  };
  for (std::uint32_t c = 0; c < dim; ++c) {
    WordKey w = b.words[c];
    long long total = (long long)word_len(w), low = 0;
    WordKey letters = w & kLetterMask;
    for (std::size_t p = 0; p < word_len(w); ++p) {
      if (((letters >> (4 * p)) & 0xF) <= n_low) ++low;
    }
    add_diag(g.d_total, c, total);
    add_diag(g.d_low, c, low);
    add_diag(g.d_high, c, total - low);
  }
  return g;
}

namespace {

std::vector<long long> diag_values(const SparseOp& d) {
  std::vector<long long> v(d.dim, 0);
  for (std::uint32_t c = 0; c < d.dim; ++c)
    for (std::uint32_t p = d.col_ptr[c]; p < d.col_ptr[c + 1]; ++p)
      if (d.row[p] == c) v[c] = d.val[p].re;
  return v;
}

}  // namespace

SparseOp quarter_turn_conjugate(const SparseOp& x, const SparseOp& d) {
  std::vector<long long> deg = diag_values(d);
  SparseOp y = x;
  for (std::uint32_t c = 0; c < x.dim; ++c)
    for (std::uint32_t p = x.col_ptr[c]; p < x.col_ptr[c + 1]; ++p)
      y.val[p] = x.val[p].times_i_pow(int(deg[x.row[p]] - deg[c]));
  return y;
}

SparseOp grading_commutator(const SparseOp& d, const SparseOp& x) {
  std::vector<long long> deg = diag_values(d);
  SparseOp y;
  y.dim = x.dim;
  y.col_ptr.assign(x.dim + 1, 0);
  for (std::uint32_t c = 0; c < x.dim; ++c) {
    for (std::uint32_t p = x.col_ptr[c]; p < x.col_ptr[c + 1]; ++p) {
      long long diff = deg[x.row[p]] - deg[c];
      if (diff == 0) continue;
      GInt v = GInt{0, diff} * x.val[p];
      if (!v.is_zero()) {
        y.row.push_back(x.row[p]);
        y.val.push_back(v);
      }
    }
    y.col_ptr[c + 1] = std::uint32_t(y.row.size());
  }
  return y;
}

double gauge_float_deviation(const FockBasis& b, double theta) {
  Gradings g = gauge_gradings(b, b.matrix.n());
  std::vector<long long> deg = diag_values(g.d_total);
  double worst = 0.0;
  for (std::size_t j = 1; j <= b.matrix.n(); ++j) {
    SparseOp t = creation_op(b, j);
    std::complex<double> phase = std::polar(1.0, theta);
    for (std::uint32_t c = 0; c < t.dim; ++c)
      for (std::uint32_t p = t.col_ptr[c]; p < t.col_ptr[c + 1]; ++p) {
        std::complex<double> conj_entry =
            std::polar(1.0, theta * double(deg[t.row[p]] - deg[c])) *
            std::complex<double>(double(t.val[p].re), double(t.val[p].im));
        std::complex<double> want =
            phase * std::complex<double>(double(t.val[p].re), double(t.val[p].im));
        worst = std::max(worst, std::abs(conj_entry - want));
      }
  }
  return worst;
}

RatComplex vacuum_state(const SparseOp& x) {
  GInt e = x.entry(0, 0);
  return RatComplex{mpq_class(long(e.re)), mpq_class(long(e.im))};
}

FockReport spectral_gap_check(const AdjacencyMatrix& a, std::size_t k,
                              std::size_t L, std::size_t samples, double tol) {
  if (L < 2) throw Error("SamplingDepth", "depth must be at least 2 to sample");
  if (k < 1) throw Error("BadSize", "k must be at least 1");
  AdjacencyMatrix ak = check_admissible(build_Ak(a, k));
  FockBasis basis = enumerate_basis(ak, L);
  FockReport rep;

  const std::size_t maxlen = L / 2;
  const std::size_t pool = basis.count_len_le(maxlen);
  std::mt19937_64 rng(0x5eedc0de2026ULL);
  std::uniform_int_distribution<std::size_t> pick_word(0, pool - 1);
  std::uniform_int_distribution<int> pick_terms(1, 4);
  std::uniform_int_distribution<long> pick_num(-9, 9);
  std::uniform_int_distribution<long> pick_den(1, 9);

  // basis indices of words with length <= maxlen, in enumeration order
  std::vector<std::uint32_t> short_words;
  short_words.reserve(pool);
  for (std::uint32_t c = 0; c < basis.size(); ++c)
    if (word_len(basis.words[c]) <= maxlen) short_words.push_back(c);

  mpq_class tol_q(tol);
  std::size_t violations = 0, degenerate = 0;

  struct Term {
    std::uint32_t mu, nu;
    mpq_class c;
  };
  std::vector<std::vector<Term>> kept_samples;

  for (std::size_t s = 0; s < samples; ++s) {
    int terms = pick_terms(rng);
    std::vector<Term> tl;
    for (int t = 0; t < terms; ++t) {
      std::uint32_t mu = short_words[pick_word(rng)];
      std::uint32_t nu = short_words[pick_word(rng)];
      if (mu == 0 && nu == 0) {
        --t;  // the coefficient of the vacuum-vacuum term must vanish
        continue;
      }
      long p = pick_num(rng);
      if (p == 0) p = 1;
      tl.push_back(Term{mu, nu, mpq_class(p, pick_den(rng))});
    }

    // v = X(vacuum); only nu = vacuum terms survive
    std::vector<std::pair<std::uint32_t, mpq_class>> v;
    for (const Term& t : tl)
      if (t.nu == 0) {
        bool found = false;
        for (auto& e : v)
          if (e.first == t.mu) {
            e.second += t.c;
            found = true;
          }
        if (!found) v.push_back({t.mu, t.c});
      }
    if (v.empty()) {
      ++degenerate;
      continue;
    }
    mpq_class lhs(0), rhs(0);
    for (const auto& e : v) {
      mpq_class sq = e.second * e.second;
      lhs += mpq_class(long(word_len(basis.words[e.first]))) * sq;
      rhs += sq;
    }
    if (lhs < rhs - tol_q) ++violations;
    if (kept_samples.size() < 3 && !v.empty()) kept_samples.push_back(tl);
  }
  push(rep, "gap-sample-sweep",
       "samples=" + std::to_string(samples) +
           ",degenerate=" + std::to_string(degenerate),
       0, L, violations == 0);

  // operator-path cross-check on a few kept samples, with denominators
  // cleared: the inequality is homogeneous of degree two in X
  Gradings g = gauge_gradings(basis, a.n());
  std::vector<GenOp> sgen;
  for (std::size_t j = 1; j <= ak.n(); ++j) sgen.push_back(make_creation(basis, j));
  auto word_op = [&](std::uint32_t idx) {
    SparseOp op = SparseOp::identity(basis.size());
    WordKey w = basis.words[idx];
    std::vector<std::size_t> letters;
    for (std::size_t p = 0; p < word_len(w); ++p)
      letters.push_back(((w & kLetterMask) >> (4 * p)) & 0xF);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      op = sgen[*it - 1].op * op;
    return op;
  };
  bool cross_ok = true;
  for (const auto& tl : kept_samples) {
    mpz_class lcm_den(1);
    for (const Term& t : tl) lcm_den = lcm(lcm_den, t.c.get_den());
    SparseOp x = SparseOp::zero(basis.size());
    for (const Term& t : tl) {
      mpz_class scaled = t.c.get_num() * (lcm_den / t.c.get_den());
      GInt coeff{scaled.get_si(), 0};
      x = x + scale(coeff, word_op(t.mu) * word_op(t.nu).adjoint());
    }
    SparseOp dx = grading_commutator(g.d_total, x);
    GInt num = (x.adjoint() * dx).entry(0, 0);       // phi(X* delta(X)) = i * real
    GInt den = (x.adjoint() * x).entry(0, 0);        // phi(X*X)
    // -i * (i r) = r; exactness of the vector path means num = i * lhs_scaled
    mpq_class lhs_op(0), rhs_op(0);
    mpq_class scale2(lcm_den * lcm_den);
    lhs_op = mpq_class(long(num.im)) / scale2;
    rhs_op = mpq_class(long(den.re)) / scale2;
    if (num.re != 0 || den.im != 0 || lhs_op < rhs_op) cross_ok = false;
  }
  push(rep, "gap-operator-path-crosscheck",
       "samples=" + std::to_string(kept_samples.size()), 0, L, cross_ok);

  // equality witness X = S_1: both sides phi(S_1*S_1) = 1
  {
    SparseOp x = sgen[0].op;
    SparseOp dx = grading_commutator(g.d_total, x);
    GInt num = (x.adjoint() * dx).entry(0, 0);
    GInt den = (x.adjoint() * x).entry(0, 0);
    push(rep, "gap-equality-witness", "X=S_1", 0, L,
         num == GInt{0, 1} && den == GInt{1, 0});
  }
  // strictness sample: a length-two monomial doubles the left side
  {
    SparseOp x = sgen[0].op * sgen[0].op;  // S_1S_1, admissible iff A(1,1)=1
    if (a.m.at(0, 0) == 1) {
      SparseOp dx = grading_commutator(g.d_total, x);
      GInt num = (x.adjoint() * dx).entry(0, 0);
      GInt den = (x.adjoint() * x).entry(0, 0);
      push(rep, "gap-strict-sample", "X=S_1S_1", 0, L,
           num == GInt{0, 2} && den == GInt{1, 0});
    }
  }
  // pure annihilation: both sides vanish at the vacuum
  {
    SparseOp x = sgen[0].op.adjoint();
    SparseOp dx = grading_commutator(g.d_total, x);
    GInt num = (x.adjoint() * dx).entry(0, 0);
    GInt den = (x.adjoint() * x).entry(0, 0);
    push(rep, "gap-annihilation-degenerate", "X=S_1*", 0, L,
         num == GInt{0, 0} && den == GInt{0, 0});
  }
  return rep;
}

}  // namespace ckrec
