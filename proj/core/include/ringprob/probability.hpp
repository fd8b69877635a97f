#pragma once

#include "ringprob/bigint.hpp"
#include "ringprob/ring.hpp"
#include "ringprob/structure.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace ringprob {

/// Enumeration commands refuse rings above this size unless forced.
inline constexpr Index kDefaultSizeCap = 4096;

/// Exact probability |{(a,b) : ab = x}| / |R|^2, kept unreduced so hit counts
/// stay comparable with enumeration counters. Comparisons cross-multiply.
struct ProbFraction {
  BigInt hits;
  BigInt total;

  static ProbFraction over_square(BigInt hits, Index ring_size);

  Rational value() const { return Rational(hits, total); }
  /// Reduced "a/b".
  std::string to_string() const;
  std::string decimal(int digits = 12) const;

  /// Componentwise product (hits multiply, totals multiply).
  ProbFraction operator*(const ProbFraction& other) const;

  friend bool operator==(const ProbFraction& a, const ProbFraction& b) {
    return a.hits * b.total == b.hits * a.total;
  }
  friend std::strong_ordering operator<=>(const ProbFraction& a, const ProbFraction& b) {
    const BigInt lhs = a.hits * b.total;
    const BigInt rhs = b.hits * a.total;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const ProbFraction& a, const Rational& b) { return a.value() == b; }
};

/// 1 when ab = x is solvable in b, else 0.
int delta(const Ring& ring, Index a, Index x);

/// Definitional oracle: counts all |R|^2 ordered pairs.
ProbFraction prob_brute(const Ring& ring, Index x, Index cap = kDefaultSizeCap);

/// Annihilator-sum route: sum of |ann_r(a)| over the a with ab = x solvable.
ProbFraction prob_annsum(const Ring& ring, Index x, Index cap = kDefaultSizeCap);

/// Hit counts for every x from one pass over all ordered pairs. The outer
/// index range is split across `workers` threads (0 = hardware concurrency),
/// each with a private counter vector; the result does not depend on the split.
std::vector<std::uint64_t> pair_counts(const Ring& ring, unsigned workers = 0, Index cap = kDefaultSizeCap);

/// Hit counts for every x via annihilator sizes and the image sets aR.
/// Shares no loop with pair_counts.
std::vector<std::uint64_t> annsum_counts(const Ring& ring, Index cap = kDefaultSizeCap);

struct SpectrumEntry {
  std::string label;
  Index representative = 0;
  std::uint64_t class_size = 0;
  ProbFraction prob;
  std::vector<Index> members;
};

struct SpectrumReport {
  Ring ring;
  std::vector<std::uint64_t> hits;  // indexed by x
  std::vector<SpectrumEntry> entries;  // ascending hit count

  ProbFraction at(Index x) const { return ProbFraction::over_square(hits.at(x), ring.size()); }
};

/// Structural label of x: "zero", "unit", "zero-divisor", "rank r" for matrix
/// rings, "layer k" (x in J^k minus J^(k+1)) for chain rings.
std::string class_label(const Ring& ring, const StructureReport& report, Index x);

SpectrumReport spectrum(const Ring& ring, const StructureReport& report, unsigned workers = 0,
                        Index cap = kDefaultSizeCap);
SpectrumReport spectrum(const Ring& ring, unsigned workers = 0, Index cap = kDefaultSizeCap);

}  // namespace ringprob
