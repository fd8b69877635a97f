#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ringprob {

// ---------------------------------------------------------------------------
// Integer helpers shared by the field and ring layers.
// ---------------------------------------------------------------------------

bool is_prime(std::uint64_t n);

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Returns (p, r) with n = p^r when n is a prime power, nullopt otherwise.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n);

/// p^e, or nullopt when the result does not fit below 2^62.
std::optional<std::uint64_t> checked_pow(std::uint64_t p, unsigned e);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

// ---------------------------------------------------------------------------
// Dense polynomials over Z_m, constant term first.
// ---------------------------------------------------------------------------

using Poly = std::vector<std::uint64_t>;

/// Remainder of `dividend` modulo a monic `divisor` over Z_m.
Poly poly_mod_monic(Poly dividend, const Poly& divisor, std::uint64_t m);

/// Irreducibility over Z_p by exhaustive scan of monic divisors of degree
/// 1..deg/2. Intended for the small degrees this library works with.
bool is_irreducible_mod_p(const Poly& monic, std::uint64_t p);

/// Human form such as "t^2 + t + 1".
std::string poly_to_string(const Poly& poly);

// ---------------------------------------------------------------------------
// GF(p^r)
// ---------------------------------------------------------------------------

class FieldElement;

/// GF(q), q = p^r, realised as Z_p[t]/(modulus). Cheap to copy; copies share
/// the same immutable state. Element indices are the base-p digits of the
/// coefficient vector with the constant term as the least significant digit,
/// so index 0 is zero and index 1 is one.
class FieldDescriptor {
 public:
  static constexpr unsigned kMaxDegree = 8;

  /// Field with the lexicographically smallest monic irreducible modulus
  /// (constant term varying fastest).
  static FieldDescriptor make(std::uint64_t p, unsigned r);

  /// Field of order q; q must be a prime power.
  static FieldDescriptor of_order(std::uint64_t q);

  /// Field with an explicit modulus, validated for irreducibility.
  static FieldDescriptor with_modulus(std::uint64_t p, Poly modulus);

  std::uint64_t characteristic() const;
  unsigned degree() const;
  std::uint64_t order() const;
  const Poly& modulus() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement element(std::uint64_t index) const;
  FieldElement from_coeffs(std::span<const std::uint64_t> coeffs) const;

  /// All q elements in index order.
  std::vector<FieldElement> enumerate() const;

  // Index-level arithmetic, used by the ring layer. Backed by lookup tables
  // for q <= 256.
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;

  std::vector<std::uint64_t> coeffs_of(std::uint64_t index) const;
  std::uint64_t index_of(std::span<const std::uint64_t> coeffs) const;

  /// "c0,c1,...", or a plain integer for prime fields.
  std::string format(std::uint64_t index) const;
  std::uint64_t parse(std::string_view literal) const;

  bool operator==(const FieldDescriptor& other) const;

 private:
  struct State;
  explicit FieldDescriptor(std::shared_ptr<const State> state) : state_(std::move(state)) {}
  std::shared_ptr<const State> state_;

  friend class FieldElement;
};

class FieldElement {
 public:
  const FieldDescriptor& field() const { return field_; }
  std::uint64_t index() const { return index_; }
  std::vector<std::uint64_t> coeffs() const { return field_.coeffs_of(index_); }
  bool is_zero() const { return index_ == 0; }

  FieldElement operator+(const FieldElement& other) const;
  FieldElement operator-(const FieldElement& other) const;
  FieldElement operator*(const FieldElement& other) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t exponent) const;

  bool operator==(const FieldElement& other) const;

  std::string to_string() const { return field_.format(index_); }

 private:
  friend class FieldDescriptor;
  FieldElement(FieldDescriptor field, std::uint64_t index) : field_(std::move(field)), index_(index) {}
  void require_same_field(const FieldElement& other) const;

  FieldDescriptor field_;
  std::uint64_t index_;
};

}  // namespace ringprob
