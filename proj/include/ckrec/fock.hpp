#pragma once

#include "ckrec/ktheory.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ckrec {

// Gaussian integer scalar. Every operator this module builds from
// creations, annihilations and quarter-turn phases has entries here;
// rational coefficients enter only through vacuum vectors, which use
// exact rationals separately.
struct GInt {
  long long re = 0;
  long long im = 0;
  bool operator==(const GInt&) const = default;
  bool is_zero() const { return re == 0 && im == 0; }
  GInt conj() const { return GInt{re, -im}; }
  GInt operator+(const GInt& o) const { return GInt{re + o.re, im + o.im}; }
  GInt operator-(const GInt& o) const { return GInt{re - o.re, im - o.im}; }
  GInt operator*(const GInt& o) const {
    return GInt{re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GInt times_i_pow(int k) const;  // multiply by i^k, k any integer
};

// Word of letters 1..M packed into 64 bits: length in the top byte,
// letter p (1-based from the front) in nibble p-1. Supports O(1)
// prepend/tail, which is all the creation operators need.
using WordKey = std::uint64_t;

inline std::size_t word_len(WordKey w) { return std::size_t(w >> 56); }
inline std::size_t word_first(WordKey w) { return std::size_t(w & 0xF); }
WordKey word_prepend(WordKey w, std::size_t letter);
WordKey word_tail(WordKey w);
WordKey word_append(WordKey w, std::size_t letter);

struct FockBasis {
  AdjacencyMatrix matrix;  // size M, typically A_k or (A^t)_k
  std::size_t depth = 0;   // L
  std::vector<WordKey> words;  // depth-first order, vacuum at index 0

  static constexpr std::uint32_t npos = 0xFFFFFFFFu;
  std::size_t size() const { return words.size(); }
  std::uint32_t index_of(WordKey w) const;  // npos when absent
  std::size_t count_len_le(std::size_t l) const;

  // lookup tables built by enumerate_basis
  std::vector<WordKey> sorted_keys;
  std::vector<std::uint32_t> sorted_pos;
  std::vector<std::size_t> len_counts;  // cumulative, index 0..depth
};

// All words (i1,...,in), n <= L, with B(i_p, i_{p+1}) = 1 along the word.
// errors: DimensionExceeded when M > 15 or L > 14 (packing limit)
FockBasis enumerate_basis(const AdjacencyMatrix& b, std::size_t L);

// Compressed sparse columns over Gaussian integers.
struct SparseOp {
  std::size_t dim = 0;
  std::vector<std::uint32_t> col_ptr;  // size dim+1
  std::vector<std::uint32_t> row;
  std::vector<GInt> val;

  static SparseOp identity(std::size_t dim);
  static SparseOp zero(std::size_t dim);
  SparseOp adjoint() const;
  GInt entry(std::uint32_t r, std::uint32_t c) const;
  std::size_t nnz() const { return val.size(); }
  bool operator==(const SparseOp& o) const;
};

SparseOp operator*(const SparseOp& a, const SparseOp& b);
SparseOp operator+(const SparseOp& a, const SparseOp& b);
SparseOp operator-(const SparseOp& a, const SparseOp& b);
SparseOp scale(const GInt& c, const SparseOp& a);

// T_i: word w |-> i.w when B(i, first(w)) = 1 and |w| < L, vacuum |-> e_i,
// words of length L |-> 0. 1-based letter.
// errors: IndexOutOfRange
SparseOp creation_op(const FockBasis& b, std::size_t i);

// Orthogonal projection onto words of length <= L - h.
SparseOp interior_projector(const FockBasis& b, std::size_t h);

// (lhs - rhs) * interior_projector(b, h) = 0, checked column by column.
bool verify_relation(const SparseOp& lhs, const SparseOp& rhs,
                     const FockBasis& b, std::size_t h);

// Truncation-safety bookkeeping: a monomial in creations, annihilations
// and projections, recorded in operator order (rightmost letter acts
// first). headroom() is the largest intermediate length increase over the
// input length during application: the maximum over suffixes of
// (#create - #annihilate), never negative. A monomial with headroom h
// acts on words of length <= L - h exactly as in the untruncated space.
struct MonomialExpr {
  enum class Letter { Create, Annihilate, ProjInterval, ProjVacuum };
  // (letter, index): index is the 1-based letter for Create/Annihilate,
  // the cutoff n for ProjInterval (projection onto words whose first
  // letter exceeds n, plus the vacuum: the operator 1 - sum_{j<=n} T_jT_j*).
  std::vector<std::pair<Letter, std::size_t>> letters;

  int headroom() const;
  MonomialExpr adjoint() const;
  static MonomialExpr one();
  static MonomialExpr create(std::size_t i);
  static MonomialExpr annihilate(std::size_t i);
  static MonomialExpr proj_interval(std::size_t n);  // P_n
  static MonomialExpr proj_vacuum();                 // e_A
};

MonomialExpr operator*(const MonomialExpr& a, const MonomialExpr& b);

// Formal sum of monomials; products expand pairwise. Used to bound the
// headroom of composite relation sides honestly.
using SumExpr = std::vector<MonomialExpr>;

int sum_headroom(const SumExpr& s);
SumExpr sum_product(const SumExpr& a, const SumExpr& b);
SumExpr sum_adjoint(const SumExpr& s);
SumExpr sum_concat(const SumExpr& a, const SumExpr& b);

// Exact realization of a monomial on the basis (projections need no
// extra data; ProjInterval carries its own cutoff).
SparseOp realize(const MonomialExpr& m, const FockBasis& b);
SparseOp realize_sum(const SumExpr& s, const FockBasis& b);

// Operator together with the expression that produced it.
struct GenOp {
  SparseOp op;
  SumExpr expr;
  int headroom() const { return sum_headroom(expr); }
};

GenOp gen_product(const GenOp& a, const GenOp& b);
GenOp gen_adjoint(const GenOp& a);
GenOp gen_sum(const GenOp& a, const GenOp& b);
GenOp gen_diff(const GenOp& a, const GenOp& b);

struct RelationResult {
  std::string relation;
  std::string indices;
  int headroom = 0;
  std::size_t depth = 0;
  bool pass = false;
};

struct FockReport {
  std::vector<RelationResult> results;
  bool ok() const;
};

// Projection order p <= q on the interior: q p = p there; strictness
// additionally demands q - p idempotent and nonzero there. Headrooms are
// computed from the expressions; h_min raises them when a contract
// prescribes a specific headroom.
struct OrderCheck {
  bool leq = false;
  bool strict = false;
  std::size_t h_used = 0;
};

OrderCheck projection_order(const GenOp& p, const GenOp& q,
                            const FockBasis& b, std::size_t h_min = 0);

// Toeplitz relations over the Fock space of A itself:
// 1 = sum_j T_jT_j* + e_A at full depth, and per i
// T_i*T_i = sum_j A(i,j) T_jT_j* + e_A one level inside, with a boundary
// control certifying the per-i relation really fails at full depth.
FockReport verify_toeplitz(const AdjacencyMatrix& a, std::size_t L);

// Relations of the stabilized system over A_k: partition of unity,
// sum-projections, the two S_i*S_i families (matrix rows for i <= N,
// identity for i > N) one level inside, the strict order
// P_N > S_{N+1}S_{N+1}*, and boundary controls.
FockReport verify_oainf(const AdjacencyMatrix& a, std::size_t k, std::size_t L);

// Generators of the dual system, realized in the Fock space of (A^t)_k:
// R_i = S_{N+1} S_i S_{N+1}*, S = S_{N+1} P_N, the corner unit P_N,
// p1 = R_{N+1}*R_{N+1} - sum_{j<=N} R_jR_j*, and the t family
// (t_i = R_i for i <= N, t_{N+1} = S, t_i = S* R_i above).
struct ReciprocalGenerators {
  FockBasis basis;  // over (A^t)_k
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<GenOp> s_raw;  // creation ops of the ambient system, 1..N+k
  std::vector<GenOp> r;      // r[i-1] = R_i, i = 1..N+k
  GenOp s;
  GenOp p_n;
  GenOp p1;
  std::vector<GenOp> t;  // t[i-1] = t_i, i = 1..N+k
};

ReciprocalGenerators build_reciprocal_generators(const AdjacencyMatrix& a,
                                                 std::size_t k, std::size_t L);

// The four dual-generator relation groups: the strict range bound and the
// tail equalities, the column relations, the two corner identities for S,
// and the two exchange identities, plus corner membership and boundary
// controls. k >= 3, L >= 6.
FockReport verify_thm57(const AdjacencyMatrix& a, std::size_t k, std::size_t L);

// Ordering matrix O(i,j) = [t_i*t_i >= t_jt_j* on the interior] compared
// against the matching corner of build_hatAinfty(A, N+k+1), the t-relations,
// and the strict bound with the vacuum as witness. k >= 3, L >= 6.
FockReport verify_lemma56(const AdjacencyMatrix& a, std::size_t k, std::size_t L);

// Diagonal word-length gradings: d_total counts all letters, d_low those
// <= n_low, d_high the rest; d_total = d_low + d_high.
struct Gradings {
  SparseOp d_total;
  SparseOp d_low;
  SparseOp d_high;
};

Gradings gauge_gradings(const FockBasis& b, std::size_t n_low);

// Conjugation by the diagonal phase i^{d}: entry (v,w) picks up
// i^{d(v)-d(w)}. Exact on Gaussian integers.
SparseOp quarter_turn_conjugate(const SparseOp& x, const SparseOp& d);

// delta(x) = i(d x - x d) for a diagonal integer grading d.
SparseOp grading_commutator(const SparseOp& d, const SparseOp& x);

// Float smoke test: max entrywise deviation between conjugation of every
// creation operator by exp(i theta d_total) and the expected phase
// exp(i theta). Exercises irrational phases the exact path cannot.
double gauge_float_deviation(const FockBasis& b, double theta);

struct RatComplex {
  mpq_class re, im;
};

// (vacuum, vacuum) entry.
RatComplex vacuum_state(const SparseOp& x);

// Ground-state gap: for sampled X = sum c_{mu,nu} S_mu S_nu* with
// rational c and c_{vacuum,vacuum} = 0, checks
//   -i phi(X* delta(X)) >= phi(X*X) - tol
// with phi the vacuum state. Monomial lengths stay <= L/2 so both sides
// are truncation-exact; with rational coefficients tol = 0 and the
// comparison is exact. Includes the equality witness X = S_1 and a pure
// annihilation degenerate case. Deterministically seeded.
// errors: SamplingDepth when L < 2
FockReport spectral_gap_check(const AdjacencyMatrix& a, std::size_t k,
                              std::size_t L, std::size_t samples,
                              double tol = 0.0);

}  // namespace ckrec
