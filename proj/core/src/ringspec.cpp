#include "ringprob/ringspec.hpp"

#include "builtin_fixtures.hpp"
#include "literal.hpp"
#include "ringprob/error.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ringprob {

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  Ring parse() {
    std::vector<Ring> atoms;
    atoms.push_back(atom());
    skip_ws();
    while (pos_ < text_.size()) {
      if (text_[pos_] != 'x') error("expected 'x' between factors");
      ++pos_;
      atoms.push_back(atom());
      skip_ws();
    }
    if (atoms.size() == 1) return atoms.front();
    return Ring::product(std::move(atoms));
  }

 private:
  [[noreturn]] void error(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) error("expected '" + std::string(token) + "'");
  }

  std::uint64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    std::uint64_t value = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      const auto digit = static_cast<std::uint64_t>(text_[i] - '0');
      if (value > (~std::uint64_t{0} - digit) / 10) {
        pos_ = start;
        error("integer too large");
      }
      value = value * 10 + digit;
    }
    return value;
  }

  unsigned small_integer() {
    const std::size_t start = pos_;
    const auto value = integer();
    if (value > 64) {
      pos_ = start;
      error("parameter too large");
    }
    return static_cast<unsigned>(value);
  }

  Ring atom() {
    skip_ws();
    const std::size_t start = pos_;
    if (accept("table:")) {
      skip_ws();
      // The path runs to the next whitespace-delimited 'x' or the end.
      std::size_t end = pos_;
      while (end < text_.size()) {
        if (std::isspace(static_cast<unsigned char>(text_[end]))) {
          std::size_t next = end;
          while (next < text_.size() && std::isspace(static_cast<unsigned char>(text_[next]))) ++next;
          if (next < text_.size() && text_[next] == 'x') break;
        }
        ++end;
      }
      const std::string path(literal::trim(text_.substr(pos_, end - pos_)));
      if (path.empty()) error("expected a table path");
      pos_ = end;
      return validated(start, [&] { return load_table_ring(path); });
    }
    if (accept("chain(")) {
      const auto q = integer();
      expect(",");
      const auto m = small_integer();
      expect(")");
      return validated(start, [&] { return Ring::chain(q, m); });
    }
    if (accept("GR(")) {
      const auto p = integer();
      expect(",");
      const auto k = small_integer();
      expect(",");
      const auto r = small_integer();
      expect(")");
      return validated(start, [&] { return Ring::galois(p, k, r); });
    }
    if (accept("triv(")) {
      const auto q = integer();
      expect(",");
      const auto m = small_integer();
      expect(")");
      return validated(start, [&] { return Ring::trivial_extension(FieldDescriptor::of_order(q), m); });
    }
    if (accept("GF")) {
      const auto q = integer();
      return validated(start, [&] { return Ring::field(FieldDescriptor::of_order(q)); });
    }
    if (accept("M")) {
      const auto k = small_integer();
      expect("(");
      expect("GF");
      const auto q = integer();
      expect(")");
      return validated(start, [&] { return Ring::matrix(k, FieldDescriptor::of_order(q)); });
    }
    if (accept("Z")) {
      const auto n = integer();
      return validated(start, [&] { return Ring::zmod(n); });
    }
    error("expected a ring atom (Z, GF, M, chain, GR, triv, table:)");
  }

  template <typename Build>
  Ring validated(std::size_t start, Build build) {
    try {
      return build();
    } catch (const ParseError&) {
      throw;
    } catch (const RingError& e) {
      throw RingError(ErrorCode::kValidationError,
                      "'" + std::string(literal::trim(text_.substr(start, pos_ - start))) + "': " + e.message());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string file_name_of(const std::string& path) { return std::filesystem::path(path).filename().string(); }

}  // namespace

Ring parse_ring_spec(std::string_view text) {
  if (literal::trim(text).empty()) throw ParseError("empty ring spec", 0);
  return SpecParser(text).parse();
}

TableData table_from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kValidationError, std::string("table JSON: ") + e.what());
  }
  auto bad = [](const std::string& what) { fail(ErrorCode::kValidationError, "table JSON: " + what); };
  if (!doc.is_object()) bad("top level must be an object");
  for (const char* key : {"size", "one", "add", "mul"}) {
    if (!doc.contains(key)) bad(std::string("missing key '") + key + "'");
  }
  if (!doc["size"].is_number_unsigned()) bad("'size' must be a non-negative integer");
  if (!doc["one"].is_number_unsigned()) bad("'one' must be a non-negative integer");
  TableData data;
  data.size = doc["size"].get<Index>();
  data.one = doc["one"].get<Index>();
  if (data.size > kTableRingLimit) bad("size above " + std::to_string(kTableRingLimit));
  auto read_table = [&](const char* key) {
    const auto& rows = doc[key];
    if (!rows.is_array() || rows.size() != data.size) bad(std::string("'") + key + "' must have N rows");
    std::vector<std::vector<Index>> table;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != data.size) bad(std::string("'") + key + "' rows must have N entries");
      std::vector<Index> values;
      for (const auto& v : row) {
        if (!v.is_number_unsigned()) bad(std::string("'") + key + "' entries must be indices");
        values.push_back(v.get<Index>());
      }
      table.push_back(std::move(values));
    }
    return table;
  };
  data.add = read_table("add");
  data.mul = read_table("mul");
  return data;
}

std::string table_to_json(const Ring& ring) {
  if (ring.size() > kTableRingLimit) {
    fail(ErrorCode::kSizeCapExceeded, "table export is limited to " + std::to_string(kTableRingLimit) + " elements");
  }
  nlohmann::json doc;
  doc["size"] = ring.size();
  doc["one"] = ring.one();
  nlohmann::json add = nlohmann::json::array();
  nlohmann::json mul = nlohmann::json::array();
  for (Index a = 0; a < ring.size(); ++a) {
    nlohmann::json add_row = nlohmann::json::array();
    nlohmann::json mul_row = nlohmann::json::array();
    for (Index b = 0; b < ring.size(); ++b) {
      add_row.push_back(ring.add(a, b));
      mul_row.push_back(ring.mul(a, b));
    }
    add.push_back(std::move(add_row));
    mul.push_back(std::move(mul_row));
  }
  doc["add"] = std::move(add);
  doc["mul"] = std::move(mul);
  return doc.dump();
}

std::optional<std::string_view> builtin_table_fixture(std::string_view file_name) {
  for (const auto& fixture : detail::kBuiltinFixtures) {
    if (fixture.name == file_name) return fixture.json;
  }
  return std::nullopt;
}

Ring load_table_ring(const std::string& path) {
  std::ifstream in(path);
  if (in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return Ring::table(table_from_json(buffer.str()), path);
  }
  if (auto fixture = builtin_table_fixture(file_name_of(path))) {
    return Ring::table(table_from_json(*fixture), path);
  }
  fail(ErrorCode::kValidationError, "cannot open table file '" + path + "'");
}

}  // namespace ringprob
