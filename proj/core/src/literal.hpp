#pragma once

// Small text helpers shared by the element-literal and ring-spec parsers.

#include "ringprob/error.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ringprob::literal {

inline std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

/// Splits on `sep` at bracket depth zero; () and [] both nest.
inline std::vector<std::string_view> split_top_level(std::string_view text, char sep) {
  std::vector<std::string_view> pieces;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (c == sep && depth == 0) {
      pieces.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
    if (depth < 0) fail(ErrorCode::kParseError, "unbalanced brackets in '" + std::string(text) + "'");
  }
  if (depth != 0) fail(ErrorCode::kParseError, "unbalanced brackets in '" + std::string(text) + "'");
  pieces.push_back(trim(text.substr(start)));
  return pieces;
}

/// Returns the inside of `text` when it is wrapped in one matching open/close
/// pair spanning the whole string.
inline std::optional<std::string_view> strip_enclosing(std::string_view text, char open, char close) {
  text = trim(text);
  if (text.size() < 2 || text.front() != open || text.back() != close) return std::nullopt;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(' || text[i] == '[') ++depth;
    if (text[i] == ')' || text[i] == ']') --depth;
    if (depth == 0 && i + 1 < text.size()) return std::nullopt;
  }
  return trim(text.substr(1, text.size() - 2));
}

inline std::int64_t parse_int(std::string_view text) {
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorCode::kParseError, "expected an integer, got '" + std::string(text) + "'");
  }
  return negative ? -value : value;
}

inline std::uint64_t parse_residue(std::string_view text, std::uint64_t modulus) {
  const auto m = static_cast<std::int64_t>(modulus);
  std::int64_t r = parse_int(text) % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

}  // namespace ringprob::literal
