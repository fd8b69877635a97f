#pragma once

#include "ringprob/ring.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ringprob {

/// Sorted element indices.
using IndexSet = std::vector<Index>;

enum class IdealSide { kTwoSided, kRight, kLeft };

/// A validated ideal of a ring, stored as its sorted member indices.
/// One-sided ideals (annihilators, principal ideals aR / Ra) carry their side.
class Ideal {
 public:
  /// Validates closure under addition and the multiplication implied by `side`.
  /// Throws kNotAnIdeal otherwise.
  static Ideal make(const Ring& ring, IndexSet members, IdealSide side = IdealSide::kTwoSided);

  /// Additive closure of `generators`, then validated as an ideal of `side`.
  static Ideal generated_by(const Ring& ring, std::span<const Index> generators, IdealSide side = IdealSide::kTwoSided);

  const Ring& ring() const { return ring_; }
  const IndexSet& members() const { return members_; }
  IdealSide side() const { return side_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Index index) const;
  bool is_zero() const { return members_.size() == 1; }
  bool is_whole_ring() const { return members_.size() == ring_.size(); }

  bool operator==(const Ideal& other) const { return members_ == other.members_; }

 private:
  Ideal(Ring ring, IndexSet members, IdealSide side);

  Ring ring_;
  IndexSet members_;
  IdealSide side_;
};

/// Subgroup of (R, +) generated by `generators`, by breadth-first closure.
IndexSet additive_closure(const Ring& ring, std::span<const Index> generators);

IndexSet units(const Ring& ring);
IndexSet zero_divisors(const Ring& ring);

Ideal right_annihilator(const Ring& ring, Index a);
Ideal left_annihilator(const Ring& ring, Index a);

/// Whether left and right zero-divisors coincide element by element.
bool left_right_symmetry_check(const Ring& ring);

/// {x : 1 - a x is a unit for every a}; asserted to be a nilpotent two-sided ideal.
Ideal jacobson_radical(const Ring& ring);

/// [J, J^2, ..., {0}]; always ends with the zero ideal.
std::vector<Ideal> radical_powers(const Ring& ring);

/// aR and Ra.
Ideal right_principal_ideal(const Ring& ring, Index a);
Ideal left_principal_ideal(const Ring& ring, Index a);

/// Smallest two-sided ideal containing g.
Ideal principal_two_sided_ideal(const Ring& ring, Index g);

/// All distinct principal two-sided ideals, ordered by their smallest generator.
std::vector<Ideal> principal_two_sided_ideals(const Ring& ring);

/// Ring-theoretic quotient R / I.
Ring quotient_make(const Ring& ring, const Ideal& ideal);

struct StructureReport {
  Index size = 0;
  IndexSet units;
  IndexSet zero_divisors;
  std::vector<Ideal> radical_chain;  // J, J^2, ..., {0}
  unsigned nilpotency_index = 0;     // least t with J^t = 0
  bool is_local = false;
  std::optional<std::uint64_t> q;  // residue field order, local rings only
  std::optional<unsigned> n;       // |R| = q^n, local rings only
  bool is_max_chain = false;       // J^(n-1) != 0, local rings only
  bool is_j_squared_zero = false;  // J^2 = 0

  const Ideal& radical() const { return radical_chain.front(); }
  /// J^k for k >= 1; nullptr for k = 0 (J^0 = R).
  const Ideal* radical_power(unsigned k) const;
  /// Largest k with x in J^k (J^0 = R); x must be nonzero.
  unsigned radical_layer(Index x) const;
  bool is_unit(Index x) const;
};

StructureReport classify_local(const Ring& ring);

/// For a local ring: every aR, Ra, J^i and right annihilator has order q^alpha.
/// Throws kNotLocal otherwise.
bool ideal_size_power_check(const Ring& ring, const StructureReport& report);

/// u + j is a unit for every unit u and every j in J.
bool unit_plus_radical_check(const Ring& ring, const StructureReport& report);

}  // namespace ringprob
