#include "ringprob/finfield.hpp"

#include "literal.hpp"
#include "ringprob/error.hpp"

#include <algorithm>
#include <sstream>

namespace ringprob {

namespace {

constexpr std::uint64_t kIndexLimit = std::uint64_t{1} << 62;
constexpr std::uint64_t kFieldTableLimit = 256;

void trim_poly(Poly& poly) {
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> factors;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) factors.emplace_back(d, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  auto factors = factorize(n);
  if (factors.size() != 1) return std::nullopt;
  return factors.front();
}

std::optional<std::uint64_t> checked_pow(std::uint64_t p, unsigned e) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (p != 0 && result > kIndexLimit / p) return std::nullopt;
    result *= p;
  }
  return result;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

Poly poly_mod_monic(Poly dividend, const Poly& divisor, std::uint64_t m) {
  const std::size_t d = divisor.size() - 1;
  check_internal(!divisor.empty() && divisor.back() % m == 1 % m, "poly_mod_monic: divisor must be monic");
  trim_poly(dividend);
  while (dividend.size() > d) {
    const std::uint64_t lead = dividend.back() % m;
    const std::size_t shift = dividend.size() - 1 - d;
    for (std::size_t j = 0; j <= d; ++j) {
      const std::uint64_t sub = mul_mod(lead, divisor[j] % m, m);
      dividend[shift + j] = (dividend[shift + j] % m + m - sub) % m;
    }
    trim_poly(dividend);
  }
  return dividend;
}

bool is_irreducible_mod_p(const Poly& monic, std::uint64_t p) {
  const std::size_t degree = monic.size() - 1;
  if (degree == 0) return false;
  if (degree == 1) return true;
  for (std::size_t div_degree = 1; div_degree <= degree / 2; ++div_degree) {
    const auto count = checked_pow(p, static_cast<unsigned>(div_degree));
    check_internal(count.has_value(), "is_irreducible_mod_p: divisor space too large");
    Poly divisor(div_degree + 1, 0);
    divisor[div_degree] = 1;
    for (std::uint64_t code = 0; code < *count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < div_degree; ++i) {
        divisor[i] = c % p;
        c /= p;
      }
      if (poly_mod_monic(monic, divisor, p).empty()) return false;
    }
  }
  return true;
}

std::string poly_to_string(const Poly& poly) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = poly.size(); i-- > 0;) {
    if (poly[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (i == 0 || poly[i] != 1) out << poly[i];
    if (i >= 1) out << 't';
    if (i >= 2) out << '^' << i;
  }
  if (first) out << '0';
  return out.str();
}

// ---------------------------------------------------------------------------

struct FieldDescriptor::State {
  std::uint64_t p = 0;
  unsigned r = 0;
  std::uint64_t q = 0;
  Poly modulus;
  // Row-major q*q tables, populated when q <= kFieldTableLimit.
  std::vector<std::uint16_t> add_table;
  std::vector<std::uint16_t> mul_table;

  std::vector<std::uint64_t> digits(std::uint64_t index) const {
    std::vector<std::uint64_t> out(r);
    for (unsigned i = 0; i < r; ++i) {
      out[i] = index % p;
      index /= p;
    }
    return out;
  }

  std::uint64_t undigits(std::span<const std::uint64_t> coeffs) const {
    std::uint64_t index = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) index = index * p + coeffs[i];
    return index;
  }

  std::uint64_t slow_add(std::uint64_t a, std::uint64_t b) const {
    if (r == 1) return (a + b) % p;
    auto x = digits(a);
    auto y = digits(b);
    for (unsigned i = 0; i < r; ++i) x[i] = (x[i] + y[i]) % p;
    return undigits(x);
  }

  std::uint64_t slow_mul(std::uint64_t a, std::uint64_t b) const {
    if (r == 1) return mul_mod(a, b, p);
    auto x = digits(a);
    auto y = digits(b);
    Poly product(2 * r - 1, 0);
    for (unsigned i = 0; i < r; ++i) {
      if (x[i] == 0) continue;
      for (unsigned j = 0; j < r; ++j) {
        product[i + j] = (product[i + j] + mul_mod(x[i], y[j], p)) % p;
      }
    }
    Poly reduced = poly_mod_monic(std::move(product), modulus, p);
    reduced.resize(r, 0);
    return undigits(reduced);
  }
};

FieldDescriptor FieldDescriptor::make(std::uint64_t p, unsigned r) {
  if (!is_prime(p)) fail(ErrorCode::kNonPrime, std::to_string(p) + " is not prime");
  if (r < 1 || r > kMaxDegree) {
    fail(ErrorCode::kDegreeOutOfRange, "extension degree " + std::to_string(r) + " outside [1, 8]");
  }
  const auto candidates = checked_pow(p, r);
  if (!candidates) fail(ErrorCode::kDegreeOutOfRange, "field order too large");
  Poly modulus(r + 1, 0);
  modulus[r] = 1;
  for (std::uint64_t code = 0; code < *candidates; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < r; ++i) {
      modulus[i] = c % p;
      c /= p;
    }
    if (is_irreducible_mod_p(modulus, p)) return with_modulus(p, modulus);
  }
  fail(ErrorCode::kInternal, "no irreducible polynomial found");
}

FieldDescriptor FieldDescriptor::of_order(std::uint64_t q) {
  auto pp = prime_power(q);
  if (!pp) fail(ErrorCode::kValidationError, std::to_string(q) + " is not a prime power");
  return make(pp->first, pp->second);
}

FieldDescriptor FieldDescriptor::with_modulus(std::uint64_t p, Poly modulus) {
  if (!is_prime(p)) fail(ErrorCode::kNonPrime, std::to_string(p) + " is not prime");
  trim_poly(modulus);
  if (modulus.size() < 2 || modulus.back() != 1) {
    fail(ErrorCode::kValidationError, "field modulus must be monic of degree >= 1");
  }
  const auto r = static_cast<unsigned>(modulus.size() - 1);
  if (r > kMaxDegree) fail(ErrorCode::kDegreeOutOfRange, "extension degree above 8");
  for (auto c : modulus) {
    if (c >= p) fail(ErrorCode::kValidationError, "modulus coefficient out of range");
  }
  if (!is_irreducible_mod_p(modulus, p)) {
    fail(ErrorCode::kValidationError, "modulus " + poly_to_string(modulus) + " is reducible");
  }
  auto q = checked_pow(p, r);
  if (!q) fail(ErrorCode::kDegreeOutOfRange, "field order too large");

  auto state = std::make_shared<State>();
  state->p = p;
  state->r = r;
  state->q = *q;
  state->modulus = std::move(modulus);
  if (state->q <= kFieldTableLimit) {
    const auto n = state->q;
    state->add_table.resize(n * n);
    state->mul_table.resize(n * n);
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = 0; b < n; ++b) {
        state->add_table[a * n + b] = static_cast<std::uint16_t>(state->slow_add(a, b));
        state->mul_table[a * n + b] = static_cast<std::uint16_t>(state->slow_mul(a, b));
      }
    }
  }
  return FieldDescriptor(std::move(state));
}

std::uint64_t FieldDescriptor::characteristic() const { return state_->p; }
unsigned FieldDescriptor::degree() const { return state_->r; }
std::uint64_t FieldDescriptor::order() const { return state_->q; }
const Poly& FieldDescriptor::modulus() const { return state_->modulus; }

FieldElement FieldDescriptor::zero() const { return FieldElement(*this, 0); }
FieldElement FieldDescriptor::one() const { return FieldElement(*this, 1); }

FieldElement FieldDescriptor::element(std::uint64_t index) const {
  if (index >= state_->q) fail(ErrorCode::kValidationError, "field element index out of range");
  return FieldElement(*this, index);
}

FieldElement FieldDescriptor::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  return FieldElement(*this, index_of(coeffs));
}

std::vector<FieldElement> FieldDescriptor::enumerate() const {
  std::vector<FieldElement> out;
  out.reserve(state_->q);
  for (std::uint64_t i = 0; i < state_->q; ++i) out.push_back(FieldElement(*this, i));
  return out;
}

std::uint64_t FieldDescriptor::add(std::uint64_t a, std::uint64_t b) const {
  const State& s = *state_;
  if (!s.add_table.empty()) return s.add_table[a * s.q + b];
  return s.slow_add(a, b);
}

std::uint64_t FieldDescriptor::neg(std::uint64_t a) const {
  const State& s = *state_;
  if (s.r == 1) return a == 0 ? 0 : s.p - a;
  auto x = s.digits(a);
  for (auto& c : x) c = c == 0 ? 0 : s.p - c;
  return s.undigits(x);
}

std::uint64_t FieldDescriptor::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t FieldDescriptor::mul(std::uint64_t a, std::uint64_t b) const {
  const State& s = *state_;
  if (!s.mul_table.empty()) return s.mul_table[a * s.q + b];
  return s.slow_mul(a, b);
}

std::uint64_t FieldDescriptor::inv(std::uint64_t a) const {
  if (a == 0) fail(ErrorCode::kDivisionByZero, "inverse of zero in GF(" + std::to_string(order()) + ")");
  // a^(q-2) by square and multiply.
  std::uint64_t result = 1;
  std::uint64_t base = a;
  std::uint64_t e = state_->q - 2;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> FieldDescriptor::coeffs_of(std::uint64_t index) const { return state_->digits(index); }

std::uint64_t FieldDescriptor::index_of(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() != state_->r) fail(ErrorCode::kValidationError, "field literal needs " + std::to_string(state_->r) + " coefficients");
  for (auto c : coeffs) {
    if (c >= state_->p) fail(ErrorCode::kValidationError, "field coefficient out of range");
  }
  return state_->undigits(coeffs);
}

std::string FieldDescriptor::format(std::uint64_t index) const {
  if (state_->r == 1) return std::to_string(index);
  auto digits = state_->digits(index);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(digits[i]);
  }
  return out;
}

std::uint64_t FieldDescriptor::parse(std::string_view text) const {
  text = literal::trim(text);
  if (!text.empty() && text.front() == '(' && text.back() == ')') {
    text = literal::trim(text.substr(1, text.size() - 2));
  }
  if (!text.empty() && text.front() == '#') {
    const auto index = literal::parse_int(text.substr(1));
    if (index < 0 || static_cast<std::uint64_t>(index) >= state_->q) {
      fail(ErrorCode::kValidationError, "field element index out of range");
    }
    return static_cast<std::uint64_t>(index);
  }
  std::vector<std::uint64_t> coeffs;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    coeffs.push_back(literal::parse_residue(piece, state_->p));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  // A single integer in a prime field is a residue; in an extension field it
  // names the constant polynomial.
  if (coeffs.size() == 1 && state_->r > 1) coeffs.resize(state_->r, 0);
  return index_of(coeffs);
}

bool FieldDescriptor::operator==(const FieldDescriptor& other) const {
  return state_ == other.state_ || (state_->p == other.state_->p && state_->modulus == other.state_->modulus);
}

// ---------------------------------------------------------------------------

void FieldElement::require_same_field(const FieldElement& other) const {
  if (!(field_ == other.field_)) {
    fail(ErrorCode::kMixedFields, "operands belong to different fields");
  }
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
  require_same_field(other);
  return FieldElement(field_, field_.add(index_, other.index_));
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
  require_same_field(other);
  return FieldElement(field_, field_.sub(index_, other.index_));
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
  require_same_field(other);
  return FieldElement(field_, field_.mul(index_, other.index_));
}

FieldElement FieldElement::operator-() const { return FieldElement(field_, field_.neg(index_)); }

FieldElement FieldElement::inverse() const { return FieldElement(field_, field_.inv(index_)); }

FieldElement FieldElement::pow(std::uint64_t exponent) const {
  std::uint64_t result = 1;
  std::uint64_t base = index_;
  while (exponent > 0) {
    if (exponent & 1) result = field_.mul(result, base);
    base = field_.mul(base, base);
    exponent >>= 1;
  }
  return FieldElement(field_, result);
}

bool FieldElement::operator==(const FieldElement& other) const {
  return index_ == other.index_ && field_ == other.field_;
}

}  // namespace ringprob
