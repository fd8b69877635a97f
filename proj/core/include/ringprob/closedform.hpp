#pragma once

#include "ringprob/bigint.hpp"
#include "ringprob/probability.hpp"
#include "ringprob/ring.hpp"
#include "ringprob/structure.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ringprob {

/// Which closed form (or engine) produced a probability.
enum class Formula {
  kUnitLaw,         // |R*| / |R|^2 for units
  kMatrixRank,      // rank-stratum sum over M_n(GF(q))
  kChainRing,       // (k+1)(q-1)/q^(n+1) on local rings with J^(n-1) != 0
  kJSquaredZero,    // three-way formula on local rings with J^2 = 0
  kZnCrt,           // chain formula on each prime-power factor of Z_n
  kProductLaw,      // product of component probabilities
  kAnnihilatorSum,  // enumeration fallback
  kBruteForce,      // pair-count oracle
};

std::string_view formula_name(Formula formula);

struct FormulaResult {
  ProbFraction value;
  Formula formula = Formula::kBruteForce;
  /// Hypotheses that were checked before the formula was applied, e.g. "local",
  /// "q=2", "n=3", "x in J^1 \ J^2".
  std::vector<std::string> applicability;
};

struct MatrixClass {
  std::uint64_t q = 2;
  unsigned dim = 1;
  unsigned rank = 0;
};

// --- Simple rings ---------------------------------------------------------

/// Number of k-dimensional subspaces of GF(q)^n containing a fixed
/// r-dimensional one. Exact; the product of quotients is evaluated as one
/// big-integer division.
BigInt subspace_count(std::uint64_t q, unsigned n, unsigned r, unsigned k);

/// Number of pairs (A, B) with rank(A) = k and AB = X for a fixed X of rank r.
BigInt matrix_stratum_hits(std::uint64_t q, unsigned n, unsigned r, unsigned k);

/// Prob_X(M_n(GF(q))) for rk(X) = r, summed over the rank strata k = r..n.
FormulaResult prob_matrix_formula(const MatrixClass& cls);

/// Rank by Gaussian elimination over the field.
unsigned matrix_rank(const FieldDescriptor& field, unsigned dim, std::span<const std::uint64_t> entries);
/// Rank of an element of a Matrix (or Field, as M_1) ring.
unsigned matrix_rank(const Ring& ring, Index x);

// --- Any finite ring -------------------------------------------------------

FormulaResult prob_unit_formula(const Ring& ring, const StructureReport& report);

enum class XClass { kZero, kNonzeroZeroDivisor };

/// Closed interval of exact rationals.
struct Bounds {
  Rational lower;
  Rational upper;

  bool contains(const ProbFraction& p) const { return lower <= p.value() && p.value() <= upper; }
};

Bounds general_bounds(Index size, std::size_t unit_count, std::size_t zero_divisor_count, XClass cls);
Bounds general_bounds(const Ring& ring, const StructureReport& report, XClass cls);

// --- Local rings ------------------------------------------------------------

/// Throws kNTooSmall for n < 2.
Bounds local_bounds(std::uint64_t q, unsigned n, XClass cls);
/// Throws kNotLocal or kNTooSmall.
Bounds local_bounds(const StructureReport& report, XClass cls);

/// (k+1)(q-1)/q^(n+1) for x in J^k \ J^(k+1), J^0 = R.
ProbFraction chain_layer_probability(std::uint64_t q, unsigned n, unsigned k);
/// ((n+1)q - n)/q^(n+1).
ProbFraction chain_zero_probability(std::uint64_t q, unsigned n);

/// Throws kNotChain unless the ring is local with J^(n-1) != 0.
FormulaResult prob_chain_formula(const Ring& ring, const StructureReport& report, Index x);

/// Throws kNotJ2Zero unless the ring is local with J^2 = 0.
FormulaResult prob_j2zero_formula(const Ring& ring, const StructureReport& report, Index x);

/// Prob_x(Z_n) from the prime factorization of n; no enumeration.
FormulaResult prob_zn(std::uint64_t n, std::uint64_t x);

/// The four statements whose equivalence is claimed for local rings, n >= 2:
///   [0] Prob_x equals the local lower bound for every 0 != x in J
///   [1] Prob_x equals the local upper bound for every 0 != x in J
///   [2] Prob_0 equals the local lower bound for zero
///   [3] |R| = q^2
std::array<bool, 4> corollary_43_predicates(const StructureReport& report, const SpectrumReport& spectrum);

/// lhs: Prob_0 = (q^(n-1) + 2q - 2)/q^(n+1); rhs: J^2 = 0.
struct Corollary44 {
  bool lhs = false;
  bool rhs = false;
};
Corollary44 corollary_44_predicate(const StructureReport& report, const SpectrumReport& spectrum);

// --- Dispatch ----------------------------------------------------------------

enum class Method { kAuto, kBrute, kAnnsum, kFormula };

/// Evaluates Prob_x(R) with the requested engine. kAuto tries, in order: the
/// unit law, the matrix formula, the Z_n factorization, the product law, the
/// chain formula, the J^2 = 0 formula, and falls back to the annihilator sum.
/// kFormula is the same without the fallback (throws kValidationError when no
/// closed form applies). Enumeration is refused above `cap`.
FormulaResult evaluate_probability(const Ring& ring, Index x, Method method, Index cap = kDefaultSizeCap);

}  // namespace ringprob
