#pragma once

#include "ringprob/finfield.hpp"

#include <cstdint>
#include <memory>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ringprob {

/// Canonical element index in [0, |R|). Index 0 is always the additive zero.
using Index = std::uint64_t;

enum class RingKind {
  kZMod,
  kField,
  kMatrix,
  kPolyQuotient,
  kTrivialExtension,
  kProduct,
  kTable,
  kQuotient,
};

/// Rings up to this size carry precomputed addition and multiplication tables.
inline constexpr Index kMemoTableLimit = 4096;

/// Cayley tables are audited in O(N^3) at load, hence the cap.
inline constexpr Index kTableRingLimit = 256;

/// Raw Cayley-table description accepted by Ring::table.
struct TableData {
  Index size = 0;
  Index one = 0;
  std::vector<std::vector<Index>> add;
  std::vector<std::vector<Index>> mul;
};

class Element;
class Ring;

namespace detail {
class RingNode;
/// Computes the construction key and memo tables, then freezes the node.
Ring finalize_ring(std::shared_ptr<RingNode> node);
}  // namespace detail

/// Immutable handle to a concrete finite unital ring.
///
/// Copies share state. All arithmetic is on canonical indices; element order is
/// mixed-radix per construction:
///   Z_n              residue value
///   GF(q)            base-p digits of the coefficient vector, constant term least significant
///   M_k(GF(q))       row-major entries, the last entry varying fastest
///   base[t]/(f)      coefficients in base |base|, constant term least significant
///   GF(q) + GF(q)^m  (a, u_1, ..., u_m), u_m varying fastest
///   R_1 x ... x R_m  components, the last varying fastest
///   Cayley table     the table's own indices
///   R / I            cosets ordered by their minimum parent index
class Ring {
 public:
  static Ring zmod(std::uint64_t n);
  static Ring field(const FieldDescriptor& field);
  static Ring matrix(unsigned dim, const FieldDescriptor& field);
  /// base[t]/(modulus) with `modulus` a monic coefficient list of base indices,
  /// constant term first. The base ring must be commutative.
  static Ring poly_quotient(const Ring& base, std::vector<Index> modulus);
  /// GF(q)[t]/(t^m).
  static Ring chain(std::uint64_t q, unsigned m);
  /// Z_{p^k}[t]/(f) with f the smallest monic polynomial of degree r that is
  /// irreducible mod p.
  static Ring galois(std::uint64_t p, unsigned k, unsigned r);
  /// Same, with an explicit modulus over Z_{p^k}; rejected unless f mod p is
  /// irreducible.
  static Ring galois(std::uint64_t p, unsigned k, const Poly& modulus);
  static Ring trivial_extension(const FieldDescriptor& field, unsigned m);
  /// Nested products are flattened.
  static Ring product(std::vector<Ring> factors);
  /// Audited Cayley-table ring. `source` is echoed by render().
  static Ring table(const TableData& data, std::string source = {});
  /// R / I for a two-sided proper ideal given by its member indices.
  static Ring quotient(const Ring& parent, std::span<const Index> ideal_members);

  RingKind kind() const;
  Index size() const { return size_; }
  Index zero() const { return 0; }
  Index one() const { return one_; }

  Index add(Index a, Index b) const {
    return add_ ? add_[a * size_ + b] : slow_add(a, b);
  }
  Index mul(Index a, Index b) const {
    return mul_ ? mul_[a * size_ + b] : slow_mul(a, b);
  }
  Index neg(Index a) const { return neg_ ? neg_[a] : slow_neg(a); }
  Index sub(Index a, Index b) const { return add(a, neg(b)); }

  bool has_memo_tables() const { return mul_ != nullptr; }
  bool is_commutative() const;

  /// Canonical text for this construction in the ring-spec grammar.
  std::string render() const;
  /// Exact identity of the construction; equal keys mean equal descriptors.
  const std::string& key() const;
  bool operator==(const Ring& other) const;

  std::string format(Index index) const;
  /// Parses an element literal (construction-specific, or "#index").
  Index parse(std::string_view literal) const;

  Element element(Index index) const;
  auto indices() const { return std::views::iota(Index{0}, size_); }

  // --- Construction accessors. Each throws kValidationError on the wrong kind.
  std::uint64_t zmod_modulus() const;
  const FieldDescriptor& field_descriptor() const;  // Field, Matrix, TrivialExtension, chain
  unsigned matrix_dim() const;
  std::vector<std::uint64_t> matrix_entries(Index index) const;  // field indices, row-major
  Index matrix_from_entries(std::span<const std::uint64_t> entries) const;
  const std::vector<Ring>& factors() const;  // Product
  std::vector<Index> split(Index index) const;  // Product components
  Index join(std::span<const Index> components) const;
  const Ring& parent() const;  // Quotient
  Index coset_of(Index parent_index) const;  // Quotient
  Index representative(Index coset) const;  // Quotient
  const Ring& base() const;  // PolyQuotient

  const detail::RingNode& node() const { return *node_; }

 private:
  friend Ring detail::finalize_ring(std::shared_ptr<detail::RingNode> node);
  explicit Ring(std::shared_ptr<const detail::RingNode> node);

  Index slow_add(Index a, Index b) const;
  Index slow_mul(Index a, Index b) const;
  Index slow_neg(Index a) const;

  std::shared_ptr<const detail::RingNode> node_;
  // Cached from node_ for the hot path.
  Index size_ = 0;
  Index one_ = 0;
  const std::uint16_t* add_ = nullptr;
  const std::uint16_t* mul_ = nullptr;
  const std::uint16_t* neg_ = nullptr;
};

/// Throws kSizeCapExceeded when |R| > cap.
void require_enumerable(const Ring& ring, Index cap);

/// An element bound to its ring; arithmetic checks that operands share a ring.
class Element {
 public:
  Element(Ring ring, Index index);

  const Ring& ring() const { return ring_; }
  Index index() const { return index_; }
  std::string form() const { return ring_.format(index_); }

  Element operator+(const Element& other) const;
  Element operator-(const Element& other) const;
  Element operator*(const Element& other) const;
  Element operator-() const;
  bool operator==(const Element& other) const;

 private:
  void require_same_ring(const Element& other) const;

  Ring ring_;
  Index index_;
};

}  // namespace ringprob
