#include "ringprob/error.hpp"

#include "ringprob/bigint.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <iomanip>
#include <sstream>

namespace ringprob {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPrime: return "NonPrime";
    case ErrorCode::kDegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::kMixedFields: return "MixedFields";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kMixedRings: return "MixedRings";
    case ErrorCode::kInvalidRing: return "InvalidRing";
    case ErrorCode::kSizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::kNotAnIdeal: return "NotAnIdeal";
    case ErrorCode::kImproperIdeal: return "ImproperIdeal";
    case ErrorCode::kNotLocal: return "NotLocal";
    case ErrorCode::kNTooSmall: return "NTooSmall";
    case ErrorCode::kNotChain: return "NotChain";
    case ErrorCode::kNotJ2Zero: return "NotJ2Zero";
    case ErrorCode::kBadDimensionOrder: return "BadDimensionOrder";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "UnknownError";
}

std::string to_string(const Rational& value, bool always_fraction) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (!always_fraction && den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& value, int digits) {
  using Decimal = boost::multiprecision::cpp_dec_float_50;
  const Decimal num(boost::multiprecision::numerator(value));
  const Decimal den(boost::multiprecision::denominator(value));
  std::ostringstream out;
  out << std::setprecision(digits) << Decimal(num / den);
  return out.str();
}

}  // namespace ringprob
