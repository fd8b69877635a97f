#include "ringprob/closedform.hpp"

#include "ringprob/error.hpp"

#include <numeric>
#include <optional>

namespace ringprob {

namespace {

BigInt big_pow(std::uint64_t base, unsigned exponent) { return ipow(BigInt(base), exponent); }

void require_prime_power(std::uint64_t q) {
  if (!prime_power(q)) fail(ErrorCode::kValidationError, std::to_string(q) + " is not a prime power");
}

/// Pairs over |R|^2 = q^(2n) for a formula of the form hits_scaled / q^(n+1):
/// hits = hits_scaled * q^(n-1).
ProbFraction over_q_power(const BigInt& numerator, std::uint64_t q, unsigned n) {
  return ProbFraction{numerator * big_pow(q, n - 1), big_pow(q, 2 * n)};
}

std::string layer_text(unsigned k) {
  if (k == 0) return "x is a unit (layer J^0 \\ J^1)";
  return "x in J^" + std::to_string(k) + " \\ J^" + std::to_string(k + 1);
}

std::vector<std::string> local_hypotheses(const StructureReport& report) {
  return {"local", "q=" + std::to_string(*report.q), "n=" + std::to_string(*report.n)};
}

}  // namespace

std::string_view formula_name(Formula formula) {
  switch (formula) {
    case Formula::kUnitLaw: return "unit law";
    case Formula::kMatrixRank: return "matrix rank formula";
    case Formula::kChainRing: return "chain ring formula";
    case Formula::kJSquaredZero: return "J^2 = 0 formula";
    case Formula::kZnCrt: return "Z_n prime-power factorization";
    case Formula::kProductLaw: return "direct product law";
    case Formula::kAnnihilatorSum: return "annihilator sum";
    case Formula::kBruteForce: return "pair enumeration";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

BigInt subspace_count(std::uint64_t q, unsigned n, unsigned r, unsigned k) {
  if (r > k || k > n) {
    fail(ErrorCode::kBadDimensionOrder, "need r <= k <= n, got r=" + std::to_string(r) + " k=" + std::to_string(k) +
                                            " n=" + std::to_string(n));
  }
  require_prime_power(q);
  BigInt numerator = 1;
  BigInt denominator = 1;
  for (unsigned i = 0; i + r < k; ++i) {
    numerator *= big_pow(q, n - r) - big_pow(q, i);
    denominator *= big_pow(q, k - r) - big_pow(q, i);
  }
  BigInt quotient;
  BigInt remainder;
  boost::multiprecision::divide_qr(numerator, denominator, quotient, remainder);
  check_internal(remainder == 0, "subspace count is not integral");
  return quotient;
}

BigInt matrix_stratum_hits(std::uint64_t q, unsigned n, unsigned r, unsigned k) {
  // Matrices A of rank k whose column space contains col(X), times the
  // q^(n(n-k)) solutions B of AB = X for each.
  BigInt surjections = 1;
  for (unsigned i = 0; i < k; ++i) surjections *= big_pow(q, n) - big_pow(q, i);
  return big_pow(q, n * (n - k)) * subspace_count(q, n, r, k) * surjections;
}

FormulaResult prob_matrix_formula(const MatrixClass& cls) {
  require_prime_power(cls.q);
  if (cls.dim < 1 || cls.rank > cls.dim) fail(ErrorCode::kBadDimensionOrder, "rank must lie in [0, n]");
  BigInt hits = 0;
  for (unsigned k = cls.rank; k <= cls.dim; ++k) hits += matrix_stratum_hits(cls.q, cls.dim, cls.rank, k);
  FormulaResult result;
  result.value = ProbFraction{hits, big_pow(cls.q, 2 * cls.dim * cls.dim)};
  result.formula = Formula::kMatrixRank;
  result.applicability = {"M_" + std::to_string(cls.dim) + "(GF(" + std::to_string(cls.q) + "))",
                          "rank(X)=" + std::to_string(cls.rank)};
  return result;
}

unsigned matrix_rank(const FieldDescriptor& field, unsigned dim, std::span<const std::uint64_t> entries) {
  std::vector<std::uint64_t> m(entries.begin(), entries.end());
  check_internal(m.size() == std::size_t{dim} * dim, "matrix_rank: wrong entry count");
  unsigned rank = 0;
  for (unsigned col = 0; col < dim && rank < dim; ++col) {
    unsigned pivot = rank;
    while (pivot < dim && m[pivot * dim + col] == 0) ++pivot;
    if (pivot == dim) continue;
    for (unsigned j = 0; j < dim; ++j) std::swap(m[pivot * dim + j], m[rank * dim + j]);
    const auto inv = field.inv(m[rank * dim + col]);
    for (unsigned j = 0; j < dim; ++j) m[rank * dim + j] = field.mul(m[rank * dim + j], inv);
    for (unsigned i = 0; i < dim; ++i) {
      if (i == rank || m[i * dim + col] == 0) continue;
      const auto factor = m[i * dim + col];
      for (unsigned j = 0; j < dim; ++j) {
        m[i * dim + j] = field.sub(m[i * dim + j], field.mul(factor, m[rank * dim + j]));
      }
    }
    ++rank;
  }
  return rank;
}

unsigned matrix_rank(const Ring& ring, Index x) {
  const auto entries = ring.matrix_entries(x);
  return matrix_rank(ring.field_descriptor(), ring.matrix_dim(), entries);
}

// ---------------------------------------------------------------------------

FormulaResult prob_unit_formula(const Ring& ring, const StructureReport& report) {
  FormulaResult result;
  result.value = ProbFraction::over_square(report.units.size(), ring.size());
  result.formula = Formula::kUnitLaw;
  result.applicability = {"x is a unit", "|R*|=" + std::to_string(report.units.size())};
  return result;
}

Bounds general_bounds(Index size, std::size_t unit_count, std::size_t zero_divisor_count, XClass cls) {
  const BigInt n = size;
  const BigInt u = unit_count;
  const BigInt z = zero_divisor_count;
  const BigInt n2 = n * n;
  if (cls == XClass::kZero) {
    return {Rational(2 * n + z - 2, n2), Rational(2 * n - 2 * z + z * z, n2)};
  }
  return {Rational(u * (2 + z), n2 * z), Rational(n - 2 * z + z * z, n2)};
}

Bounds general_bounds(const Ring& ring, const StructureReport& report, XClass cls) {
  return general_bounds(ring.size(), report.units.size(), report.zero_divisors.size(), cls);
}

Bounds local_bounds(std::uint64_t q, unsigned n, XClass cls) {
  if (n < 2) fail(ErrorCode::kNTooSmall, "local bounds need n >= 2");
  const BigInt Q = q;
  const BigInt qn1 = big_pow(q, n - 1);
  const BigInt qn2 = big_pow(q, n - 2);
  const BigInt low_den = big_pow(q, 2 * n - 1);
  const BigInt up_den = big_pow(q, n + 1);
  if (cls == XClass::kZero) {
    return {Rational(3 * qn1 - qn2 - 1, low_den), Rational(qn1 + 2 * Q - 2, up_den)};
  }
  return {Rational((Q - 1) * (qn2 + 1), low_den), Rational(qn1 + Q - 2, up_den)};
}

Bounds local_bounds(const StructureReport& report, XClass cls) {
  if (!report.is_local) fail(ErrorCode::kNotLocal, "local bounds need a local ring");
  return local_bounds(*report.q, *report.n, cls);
}

ProbFraction chain_layer_probability(std::uint64_t q, unsigned n, unsigned k) {
  return over_q_power(BigInt(k + 1) * (q - 1), q, n);
}

ProbFraction chain_zero_probability(std::uint64_t q, unsigned n) {
  return over_q_power(BigInt(n + 1) * q - n, q, n);
}

FormulaResult prob_chain_formula(const Ring& ring, const StructureReport& report, Index x) {
  if (!report.is_local || !report.is_max_chain) {
    fail(ErrorCode::kNotChain, ring.render() + " is not a local ring with J^(n-1) != 0");
  }
  const auto q = *report.q;
  const auto n = *report.n;
  FormulaResult result;
  result.formula = Formula::kChainRing;
  result.applicability = local_hypotheses(report);
  result.applicability.push_back("J^(n-1) != 0");
  if (x == 0) {
    result.value = chain_zero_probability(q, n);
    result.applicability.push_back("x = 0");
    return result;
  }
  const unsigned k = report.radical_layer(x);
  check_internal(k < n, "chain ring layer out of range");
  result.value = chain_layer_probability(q, n, k);
  result.applicability.push_back(layer_text(k));
  return result;
}

FormulaResult prob_j2zero_formula(const Ring& ring, const StructureReport& report, Index x) {
  if (!report.is_local || !report.is_j_squared_zero) {
    fail(ErrorCode::kNotJ2Zero, ring.render() + " is not a local ring with J^2 = 0");
  }
  const auto q = *report.q;
  const auto n = *report.n;
  FormulaResult result;
  result.formula = Formula::kJSquaredZero;
  result.applicability = local_hypotheses(report);
  result.applicability.push_back("J^2 = 0");
  if (x == 0) {
    result.value = over_q_power(big_pow(q, n - 1) + 2 * BigInt(q) - 2, q, n);
    result.applicability.push_back("x = 0");
  } else if (report.radical().contains(x)) {
    result.value = over_q_power(2 * (BigInt(q) - 1), q, n);
    result.applicability.push_back("0 != x in J");
  } else {
    result.value = over_q_power(BigInt(q) - 1, q, n);
    result.applicability.push_back("x not in J");
  }
  return result;
}

FormulaResult prob_zn(std::uint64_t n, std::uint64_t x) {
  if (n < 2) fail(ErrorCode::kInvalidRing, "Z_n requires n >= 2");
  FormulaResult result;
  result.formula = Formula::kZnCrt;
  result.value = ProbFraction{1, 1};
  for (const auto& [p, e] : factorize(n)) {
    const std::uint64_t m = *checked_pow(p, e);
    std::uint64_t residue = x % m;
    std::string note = "Z_" + std::to_string(m) + ": ";
    if (residue == 0) {
      result.value = result.value * chain_zero_probability(p, e);
      note += "x = 0";
    } else {
      unsigned k = 0;
      while (residue % p == 0) {
        residue /= p;
        ++k;
      }
      result.value = result.value * chain_layer_probability(p, e, k);
      note += layer_text(k);
    }
    result.applicability.push_back(std::move(note));
  }
  return result;
}

std::array<bool, 4> corollary_43_predicates(const StructureReport& report, const SpectrumReport& spectrum) {
  if (!report.is_local) fail(ErrorCode::kNotLocal, "corollary predicates need a local ring");
  const auto q = *report.q;
  const auto n = *report.n;
  const Bounds nonzero = local_bounds(q, n, XClass::kNonzeroZeroDivisor);
  const Bounds zero = local_bounds(q, n, XClass::kZero);
  bool all_lower = true;
  bool all_upper = true;
  for (auto x : report.radical().members()) {
    if (x == 0) continue;
    const Rational p = spectrum.at(x).value();
    all_lower = all_lower && p == nonzero.lower;
    all_upper = all_upper && p == nonzero.upper;
  }
  const bool zero_lower = spectrum.at(0).value() == zero.lower;
  const bool order_q2 = BigInt(report.size) == BigInt(q) * q;
  return {all_lower, all_upper, zero_lower, order_q2};
}

Corollary44 corollary_44_predicate(const StructureReport& report, const SpectrumReport& spectrum) {
  if (!report.is_local) fail(ErrorCode::kNotLocal, "corollary predicate needs a local ring");
  const auto q = *report.q;
  const auto n = *report.n;
  const Rational target(big_pow(q, n - 1) + 2 * BigInt(q) - 2, big_pow(q, n + 1));
  return {spectrum.at(0).value() == target, report.is_j_squared_zero};
}

// ---------------------------------------------------------------------------

namespace {

std::optional<bool> structural_unit(const Ring& ring, Index x) {
  switch (ring.kind()) {
    case RingKind::kZMod: return std::gcd(x, ring.zmod_modulus()) == 1;
    case RingKind::kField: return x != 0;
    case RingKind::kMatrix: return matrix_rank(ring, x) == ring.matrix_dim();
    case RingKind::kProduct: {
      const auto parts = ring.split(x);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        auto u = structural_unit(ring.factors()[i], parts[i]);
        if (!u) return std::nullopt;
        if (!*u) return false;
      }
      return true;
    }
    default: return std::nullopt;
  }
}

std::optional<BigInt> structural_unit_count(const Ring& ring) {
  switch (ring.kind()) {
    case RingKind::kZMod: {
      BigInt phi = 1;
      for (const auto& [p, e] : factorize(ring.zmod_modulus())) phi *= big_pow(p, e - 1) * (p - 1);
      return phi;
    }
    case RingKind::kField: return BigInt(ring.size() - 1);
    case RingKind::kMatrix: {
      const auto q = ring.field_descriptor().order();
      const auto n = ring.matrix_dim();
      BigInt count = 1;
      for (unsigned i = 0; i < n; ++i) count *= big_pow(q, n) - big_pow(q, i);
      return count;
    }
    case RingKind::kProduct: {
      BigInt count = 1;
      for (const auto& f : ring.factors()) {
        auto c = structural_unit_count(f);
        if (!c) return std::nullopt;
        count *= *c;
      }
      return count;
    }
    default: return std::nullopt;
  }
}

FormulaResult annsum_result(const Ring& ring, Index x, Index cap) {
  return {prob_annsum(ring, x, cap), Formula::kAnnihilatorSum, {}};
}

std::optional<FormulaResult> closed_form(const Ring& ring, Index x, Index cap, bool allow_fallback) {
  const auto unit = structural_unit(ring, x);
  if (unit && *unit) {
    if (auto count = structural_unit_count(ring)) {
      FormulaResult result;
      result.value = ProbFraction::over_square(*count, ring.size());
      result.formula = Formula::kUnitLaw;
      result.applicability = {"x is a unit", "|R*|=" + count->str()};
      return result;
    }
  }
  switch (ring.kind()) {
    case RingKind::kField:
    case RingKind::kMatrix: {
      MatrixClass cls{ring.field_descriptor().order(), ring.matrix_dim(), matrix_rank(ring, x)};
      return prob_matrix_formula(cls);
    }
    case RingKind::kZMod: return prob_zn(ring.zmod_modulus(), x);
    case RingKind::kProduct: {
      FormulaResult result;
      result.formula = Formula::kProductLaw;
      result.value = ProbFraction{1, 1};
      const auto parts = ring.split(x);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const Ring& factor = ring.factors()[i];
        auto component = closed_form(factor, parts[i], cap, allow_fallback);
        if (!component) {
          if (!allow_fallback) return std::nullopt;
          component = annsum_result(factor, parts[i], cap);
        }
        result.value = result.value * component->value;
        std::string note = "factor " + std::to_string(i + 1) + " " + factor.render() + ": " +
                           std::string(formula_name(component->formula));
        for (const auto& h : component->applicability) note += "; " + h;
        result.applicability.push_back(std::move(note));
      }
      return result;
    }
    default: break;
  }
  require_enumerable(ring, cap);
  const StructureReport report = classify_local(ring);
  if (report.is_unit(x)) return prob_unit_formula(ring, report);
  if (report.is_local && report.is_max_chain) return prob_chain_formula(ring, report, x);
  if (report.is_local && report.is_j_squared_zero) return prob_j2zero_formula(ring, report, x);
  return std::nullopt;
}

}  // namespace

FormulaResult evaluate_probability(const Ring& ring, Index x, Method method, Index cap) {
  if (x >= ring.size()) fail(ErrorCode::kValidationError, "element index out of range");
  switch (method) {
    case Method::kBrute: return {prob_brute(ring, x, cap), Formula::kBruteForce, {}};
    case Method::kAnnsum: return annsum_result(ring, x, cap);
    case Method::kAuto:
    case Method::kFormula: {
      const bool fallback = method == Method::kAuto;
      if (auto result = closed_form(ring, x, cap, fallback)) return *result;
      if (!fallback) fail(ErrorCode::kValidationError, "no closed form applies to " + ring.render());
      return annsum_result(ring, x, cap);
    }
  }
  fail(ErrorCode::kInternal, "unknown method");
}

}  // namespace ringprob
