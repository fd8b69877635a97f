#include "ringprob/ring.hpp"

#include "literal.hpp"
#include "ringprob/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ringprob {

namespace detail {

class RingNode {
 public:
  virtual ~RingNode() = default;

  virtual RingKind kind() const = 0;
  virtual Index size() const = 0;
  virtual Index one() const = 0;
  virtual Index add(Index a, Index b) const = 0;
  virtual Index mul(Index a, Index b) const = 0;
  virtual Index neg(Index a) const = 0;
  virtual bool commutative() const = 0;
  virtual std::string render() const = 0;
  virtual std::string make_key() const { return render(); }
  virtual std::string format(Index index) const = 0;
  virtual Index parse(std::string_view literal) const = 0;

  std::string key;
  std::vector<std::uint16_t> add_table;
  std::vector<std::uint16_t> mul_table;
  std::vector<std::uint16_t> neg_table;
};

}  // namespace detail

namespace {

using detail::RingNode;

constexpr Index kSizeLimit = Index{1} << 62;

Index checked_mul(Index a, Index b) {
  if (b != 0 && a > kSizeLimit / b) fail(ErrorCode::kValidationError, "ring order exceeds 2^62");
  return a * b;
}

Index checked_power(Index base, unsigned exponent) {
  Index result = 1;
  for (unsigned i = 0; i < exponent; ++i) result = checked_mul(result, base);
  return result;
}

/// Mixed-radix digits with a uniform radix, most significant first.
std::vector<std::uint64_t> digits_msf(Index index, std::uint64_t radix, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  for (std::size_t i = count; i-- > 0;) {
    out[i] = index % radix;
    index /= radix;
  }
  return out;
}

Index undigits_msf(std::span<const std::uint64_t> digits, std::uint64_t radix) {
  Index index = 0;
  for (auto d : digits) index = index * radix + d;
  return index;
}

/// Parenthesises a component literal that contains a top-level comma.
std::string wrap_if_list(const std::string& text) {
  return text.find(',') == std::string::npos ? text : "(" + text + ")";
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool table_is_commutative(const Ring& ring) {
  for (Index a = 0; a < ring.size(); ++a) {
    for (Index b = a + 1; b < ring.size(); ++b) {
      if (ring.mul(a, b) != ring.mul(b, a)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

class ZModNode final : public RingNode {
 public:
  explicit ZModNode(std::uint64_t n) : n_(n) {}
  RingKind kind() const override { return RingKind::kZMod; }
  Index size() const override { return n_; }
  Index one() const override { return 1; }
  Index add(Index a, Index b) const override { return (a + b) % n_; }
  Index mul(Index a, Index b) const override { return mul_mod(a, b, n_); }
  Index neg(Index a) const override { return a == 0 ? 0 : n_ - a; }
  bool commutative() const override { return true; }
  std::string render() const override { return "Z" + std::to_string(n_); }
  std::string format(Index index) const override { return std::to_string(index); }
  Index parse(std::string_view literal) const override { return literal::parse_residue(literal, n_); }

  std::uint64_t modulus() const { return n_; }

 private:
  std::uint64_t n_;
};

class FieldNode final : public RingNode {
 public:
  explicit FieldNode(FieldDescriptor field) : field_(std::move(field)) {}
  RingKind kind() const override { return RingKind::kField; }
  Index size() const override { return field_.order(); }
  Index one() const override { return 1; }
  Index add(Index a, Index b) const override { return field_.add(a, b); }
  Index mul(Index a, Index b) const override { return field_.mul(a, b); }
  Index neg(Index a) const override { return field_.neg(a); }
  bool commutative() const override { return true; }
  std::string render() const override { return "GF" + std::to_string(field_.order()); }
  std::string make_key() const override {
    std::string key = "GF(" + std::to_string(field_.characteristic()) + ";";
    for (auto c : field_.modulus()) key += std::to_string(c) + ",";
    return key + ")";
  }
  std::string format(Index index) const override { return field_.format(index); }
  Index parse(std::string_view literal) const override { return field_.parse(literal); }

  const FieldDescriptor& field() const { return field_; }

 private:
  FieldDescriptor field_;
};

class MatrixNode final : public RingNode {
 public:
  MatrixNode(unsigned dim, FieldDescriptor field)
      : dim_(dim), field_(std::move(field)), size_(checked_power(field_.order(), dim * dim)) {
    std::vector<std::uint64_t> identity(dim_ * dim_, 0);
    for (unsigned i = 0; i < dim_; ++i) identity[i * dim_ + i] = 1;
    one_ = encode(identity);
  }

  RingKind kind() const override { return RingKind::kMatrix; }
  Index size() const override { return size_; }
  Index one() const override { return one_; }

  Index add(Index a, Index b) const override {
    auto x = decode(a);
    const auto y = decode(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = field_.add(x[i], y[i]);
    return encode(x);
  }

  Index mul(Index a, Index b) const override {
    const auto x = decode(a);
    const auto y = decode(b);
    std::vector<std::uint64_t> z(dim_ * dim_, 0);
    for (unsigned i = 0; i < dim_; ++i) {
      for (unsigned k = 0; k < dim_; ++k) {
        const auto xik = x[i * dim_ + k];
        if (xik == 0) continue;
        for (unsigned j = 0; j < dim_; ++j) {
          z[i * dim_ + j] = field_.add(z[i * dim_ + j], field_.mul(xik, y[k * dim_ + j]));
        }
      }
    }
    return encode(z);
  }

  Index neg(Index a) const override {
    auto x = decode(a);
    for (auto& e : x) e = field_.neg(e);
    return encode(x);
  }

  bool commutative() const override { return dim_ == 1; }
  std::string render() const override {
    return "M" + std::to_string(dim_) + "(GF" + std::to_string(field_.order()) + ")";
  }
  std::string make_key() const override {
    std::string key = "M" + std::to_string(dim_) + "(" + std::to_string(field_.characteristic()) + ";";
    for (auto c : field_.modulus()) key += std::to_string(c) + ",";
    return key + ")";
  }

  std::string format(Index index) const override {
    const auto x = decode(index);
    std::vector<std::string> rows;
    for (unsigned i = 0; i < dim_; ++i) {
      std::vector<std::string> entries;
      for (unsigned j = 0; j < dim_; ++j) entries.push_back(wrap_if_list(field_.format(x[i * dim_ + j])));
      rows.push_back("[" + join(entries, ",") + "]");
    }
    return "[" + join(rows, ",") + "]";
  }

  Index parse(std::string_view text) const override {
    auto body = literal::strip_enclosing(text, '[', ']');
    if (!body) fail(ErrorCode::kParseError, "matrix literal must look like [[a,b],[c,d]]");
    const auto rows = literal::split_top_level(*body, ',');
    if (rows.size() != dim_) fail(ErrorCode::kValidationError, "matrix literal needs " + std::to_string(dim_) + " rows");
    std::vector<std::uint64_t> entries;
    for (auto row : rows) {
      auto inner = literal::strip_enclosing(row, '[', ']');
      if (!inner) fail(ErrorCode::kParseError, "matrix row must be bracketed");
      const auto cells = literal::split_top_level(*inner, ',');
      if (cells.size() != dim_) fail(ErrorCode::kValidationError, "matrix row needs " + std::to_string(dim_) + " entries");
      for (auto cell : cells) entries.push_back(field_.parse(cell));
    }
    return encode(entries);
  }

  unsigned dim() const { return dim_; }
  const FieldDescriptor& field() const { return field_; }

  std::vector<std::uint64_t> decode(Index index) const { return digits_msf(index, field_.order(), dim_ * dim_); }
  Index encode(std::span<const std::uint64_t> entries) const { return undigits_msf(entries, field_.order()); }

 private:
  unsigned dim_;
  FieldDescriptor field_;
  Index size_;
  Index one_ = 0;
};

class PolyQuotientNode final : public RingNode {
 public:
  PolyQuotientNode(Ring base, std::vector<Index> modulus, std::string tag)
      : base_(std::move(base)), modulus_(std::move(modulus)), tag_(std::move(tag)) {
    degree_ = modulus_.size() - 1;
    size_ = checked_power(base_.size(), static_cast<unsigned>(degree_));
  }

  RingKind kind() const override { return RingKind::kPolyQuotient; }
  Index size() const override { return size_; }
  Index one() const override {
    std::vector<Index> c(degree_, 0);
    c[0] = base_.one();
    return encode(c);
  }

  Index add(Index a, Index b) const override {
    auto x = decode(a);
    const auto y = decode(b);
    for (std::size_t i = 0; i < degree_; ++i) x[i] = base_.add(x[i], y[i]);
    return encode(x);
  }

  Index mul(Index a, Index b) const override {
    const auto x = decode(a);
    const auto y = decode(b);
    std::vector<Index> product(2 * degree_ - 1, 0);
    for (std::size_t i = 0; i < degree_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < degree_; ++j) {
        product[i + j] = base_.add(product[i + j], base_.mul(x[i], y[j]));
      }
    }
    // t^d = -(m_0 + m_1 t + ... + m_{d-1} t^{d-1}) since the modulus is monic.
    for (std::size_t deg = product.size(); deg-- > degree_;) {
      const Index lead = product[deg];
      if (lead == 0) continue;
      for (std::size_t j = 0; j < degree_; ++j) {
        const std::size_t pos = deg - degree_ + j;
        product[pos] = base_.sub(product[pos], base_.mul(lead, modulus_[j]));
      }
      product[deg] = 0;
    }
    product.resize(degree_);
    return encode(product);
  }

  Index neg(Index a) const override {
    auto x = decode(a);
    for (auto& c : x) c = base_.neg(c);
    return encode(x);
  }

  bool commutative() const override { return true; }

  std::string render() const override {
    if (!tag_.empty()) return tag_;
    std::vector<std::string> coeffs;
    for (auto c : modulus_) coeffs.push_back(wrap_if_list(base_.format(c)));
    return "poly(" + base_.render() + ";" + join(coeffs, ",") + ")";
  }
  std::string make_key() const override {
    std::string key = "poly(" + base_.key() + ";";
    for (auto c : modulus_) key += std::to_string(c) + ",";
    return key + ")";
  }

  std::string format(Index index) const override {
    const auto x = decode(index);
    std::vector<std::string> coeffs;
    for (auto c : x) coeffs.push_back(wrap_if_list(base_.format(c)));
    return join(coeffs, ",");
  }

  Index parse(std::string_view text) const override {
    auto pieces = literal::split_top_level(literal::trim(text), ',');
    if (pieces.size() > degree_) fail(ErrorCode::kValidationError, "too many coefficients for degree " + std::to_string(degree_));
    std::vector<Index> coeffs(degree_, 0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      auto piece = pieces[i];
      if (auto inner = literal::strip_enclosing(piece, '(', ')')) piece = *inner;
      coeffs[i] = base_.parse(piece);
    }
    return encode(coeffs);
  }

  const Ring& base() const { return base_; }

  std::vector<Index> decode(Index index) const {
    std::vector<Index> out(degree_);
    for (std::size_t i = 0; i < degree_; ++i) {
      out[i] = index % base_.size();
      index /= base_.size();
    }
    return out;
  }
  Index encode(std::span<const Index> coeffs) const {
    Index index = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) index = index * base_.size() + coeffs[i];
    return index;
  }

 private:
  Ring base_;
  std::vector<Index> modulus_;
  std::string tag_;
  std::size_t degree_ = 0;
  Index size_ = 0;
};

class TrivialExtensionNode final : public RingNode {
 public:
  TrivialExtensionNode(FieldDescriptor field, unsigned m)
      : field_(std::move(field)), m_(m), size_(checked_power(field_.order(), m + 1)) {}

  RingKind kind() const override { return RingKind::kTrivialExtension; }
  Index size() const override { return size_; }
  Index one() const override {
    std::vector<std::uint64_t> d(m_ + 1, 0);
    d[0] = 1;
    return encode(d);
  }

  Index add(Index a, Index b) const override {
    auto x = decode(a);
    const auto y = decode(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = field_.add(x[i], y[i]);
    return encode(x);
  }

  // (a, u)(b, v) = (ab, av + bu)
  Index mul(Index a, Index b) const override {
    const auto x = decode(a);
    const auto y = decode(b);
    std::vector<std::uint64_t> z(m_ + 1);
    z[0] = field_.mul(x[0], y[0]);
    for (unsigned i = 1; i <= m_; ++i) z[i] = field_.add(field_.mul(x[0], y[i]), field_.mul(y[0], x[i]));
    return encode(z);
  }

  Index neg(Index a) const override {
    auto x = decode(a);
    for (auto& c : x) c = field_.neg(c);
    return encode(x);
  }

  bool commutative() const override { return true; }
  std::string render() const override {
    return "triv(" + std::to_string(field_.order()) + "," + std::to_string(m_) + ")";
  }

  std::string format(Index index) const override {
    std::vector<std::string> parts;
    for (auto c : decode(index)) parts.push_back(wrap_if_list(field_.format(c)));
    return "(" + join(parts, ",") + ")";
  }

  Index parse(std::string_view text) const override {
    auto body = literal::strip_enclosing(text, '(', ')');
    if (!body) fail(ErrorCode::kParseError, "trivial-extension literal must look like (a,u1,...,um)");
    const auto parts = literal::split_top_level(*body, ',');
    if (parts.size() != m_ + 1) fail(ErrorCode::kValidationError, "expected " + std::to_string(m_ + 1) + " components");
    std::vector<std::uint64_t> d;
    for (auto p : parts) d.push_back(field_.parse(p));
    return encode(d);
  }

  const FieldDescriptor& field() const { return field_; }

 private:
  std::vector<std::uint64_t> decode(Index index) const { return digits_msf(index, field_.order(), m_ + 1); }
  Index encode(std::span<const std::uint64_t> d) const { return undigits_msf(d, field_.order()); }

  FieldDescriptor field_;
  unsigned m_;
  Index size_;
};

class ProductNode final : public RingNode {
 public:
  explicit ProductNode(std::vector<Ring> factors) : factors_(std::move(factors)) {
    size_ = 1;
    for (const auto& f : factors_) size_ = checked_mul(size_, f.size());
  }

  RingKind kind() const override { return RingKind::kProduct; }
  Index size() const override { return size_; }
  Index one() const override {
    std::vector<Index> c;
    for (const auto& f : factors_) c.push_back(f.one());
    return join_components(c);
  }

  Index add(Index a, Index b) const override { return combine(a, b, [](const Ring& r, Index x, Index y) { return r.add(x, y); }); }
  Index mul(Index a, Index b) const override { return combine(a, b, [](const Ring& r, Index x, Index y) { return r.mul(x, y); }); }
  Index neg(Index a) const override {
    auto c = split(a);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = factors_[i].neg(c[i]);
    return join_components(c);
  }

  bool commutative() const override {
    return std::all_of(factors_.begin(), factors_.end(), [](const Ring& r) { return r.is_commutative(); });
  }
  std::string render() const override {
    std::vector<std::string> parts;
    for (const auto& f : factors_) parts.push_back(f.render());
    return join(parts, " x ");
  }
  std::string make_key() const override {
    std::vector<std::string> parts;
    for (const auto& f : factors_) parts.push_back(f.key());
    return "prod[" + join(parts, "|") + "]";
  }

  std::string format(Index index) const override {
    const auto c = split(index);
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < c.size(); ++i) parts.push_back(factors_[i].format(c[i]));
    return "(" + join(parts, ",") + ")";
  }

  Index parse(std::string_view text) const override {
    auto body = literal::strip_enclosing(text, '(', ')');
    if (!body) fail(ErrorCode::kParseError, "product literal must be a parenthesised tuple");
    const auto parts = literal::split_top_level(*body, ',');
    if (parts.size() != factors_.size()) {
      fail(ErrorCode::kValidationError, "product literal needs " + std::to_string(factors_.size()) + " components");
    }
    std::vector<Index> c;
    for (std::size_t i = 0; i < parts.size(); ++i) c.push_back(factors_[i].parse(parts[i]));
    return join_components(c);
  }

  const std::vector<Ring>& factors() const { return factors_; }

  std::vector<Index> split(Index index) const {
    std::vector<Index> out(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
      out[i] = index % factors_[i].size();
      index /= factors_[i].size();
    }
    return out;
  }

  Index join_components(std::span<const Index> c) const {
    Index index = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) index = index * factors_[i].size() + c[i];
    return index;
  }

 private:
  template <typename Op>
  Index combine(Index a, Index b, Op op) const {
    auto x = split(a);
    const auto y = split(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = op(factors_[i], x[i], y[i]);
    return join_components(x);
  }

  std::vector<Ring> factors_;
  Index size_ = 1;
};

class TableNode final : public RingNode {
 public:
  TableNode(TableData data, std::string source) : data_(std::move(data)), source_(std::move(source)) {}

  RingKind kind() const override { return RingKind::kTable; }
  Index size() const override { return data_.size; }
  Index one() const override { return data_.one; }
  Index add(Index a, Index b) const override { return data_.add[a][b]; }
  Index mul(Index a, Index b) const override { return data_.mul[a][b]; }
  Index neg(Index a) const override {
    for (Index b = 0; b < data_.size; ++b) {
      if (data_.add[a][b] == 0) return b;
    }
    fail(ErrorCode::kInternal, "table ring element without additive inverse");
  }
  bool commutative() const override {
    for (Index a = 0; a < data_.size; ++a) {
      for (Index b = a + 1; b < data_.size; ++b) {
        if (data_.mul[a][b] != data_.mul[b][a]) return false;
      }
    }
    return true;
  }
  std::string render() const override { return "table:" + source_; }
  std::string make_key() const override {
    std::ostringstream key;
    key << "table{" << data_.size << ";" << data_.one << ";";
    for (const auto& row : data_.add) for (auto v : row) key << v << ',';
    key << ';';
    for (const auto& row : data_.mul) for (auto v : row) key << v << ',';
    key << '}';
    return key.str();
  }
  std::string format(Index index) const override { return std::to_string(index); }
  Index parse(std::string_view text) const override {
    const auto value = literal::parse_int(text);
    if (value < 0 || static_cast<Index>(value) >= data_.size) fail(ErrorCode::kValidationError, "table element index out of range");
    return static_cast<Index>(value);
  }

 private:
  TableData data_;
  std::string source_;
};

class QuotientNode final : public RingNode {
 public:
  QuotientNode(Ring parent, std::vector<Index> ideal) : parent_(std::move(parent)), ideal_(std::move(ideal)) {
    const Index n = parent_.size();
    constexpr Index kUnassigned = ~Index{0};
    coset_of_.assign(n, kUnassigned);
    for (Index a = 0; a < n; ++a) {
      if (coset_of_[a] != kUnassigned) continue;
      const Index id = reps_.size();
      reps_.push_back(a);
      for (Index i : ideal_) {
        const Index member = parent_.add(a, i);
        check_internal(coset_of_[member] == kUnassigned || coset_of_[member] == id, "quotient: overlapping cosets");
        coset_of_[member] = id;
      }
    }
  }

  RingKind kind() const override { return RingKind::kQuotient; }
  Index size() const override { return reps_.size(); }
  Index one() const override { return coset_of_[parent_.one()]; }
  Index add(Index a, Index b) const override { return coset_of_[parent_.add(reps_[a], reps_[b])]; }
  Index mul(Index a, Index b) const override { return coset_of_[parent_.mul(reps_[a], reps_[b])]; }
  Index neg(Index a) const override { return coset_of_[parent_.neg(reps_[a])]; }
  bool commutative() const override { return parent_.is_commutative() || commutative_by_scan(); }

  std::string render() const override { return "(" + parent_.render() + ")/" + ideal_text(false); }
  std::string make_key() const override { return "quot[" + parent_.key() + "]/" + ideal_text(true); }

  std::string format(Index index) const override { return parent_.format(reps_[index]); }
  Index parse(std::string_view text) const override { return coset_of_[parent_.parse(text)]; }

  const Ring& parent() const { return parent_; }
  Index coset_of(Index parent_index) const { return coset_of_.at(parent_index); }
  Index representative(Index coset) const { return reps_.at(coset); }

 private:
  bool commutative_by_scan() const {
    for (Index a = 0; a < size(); ++a) {
      for (Index b = a + 1; b < size(); ++b) {
        if (mul(a, b) != mul(b, a)) return false;
      }
    }
    return true;
  }

  std::string ideal_text(bool indices) const {
    std::vector<std::string> parts;
    for (Index i : ideal_) parts.push_back(indices ? std::to_string(i) : parent_.format(i));
    return "{" + join(parts, ";") + "}";
  }

  Ring parent_;
  std::vector<Index> ideal_;
  std::vector<Index> coset_of_;
  std::vector<Index> reps_;
};

template <typename NodeT>
const NodeT& node_as(const RingNode& node, const char* what) {
  const auto* typed = dynamic_cast<const NodeT*>(&node);
  if (!typed) fail(ErrorCode::kValidationError, std::string("ring is not a ") + what);
  return *typed;
}

}  // namespace

// ---------------------------------------------------------------------------

Ring::Ring(std::shared_ptr<const detail::RingNode> node) : node_(std::move(node)) {
  size_ = node_->size();
  one_ = node_->one();
  if (!node_->mul_table.empty()) {
    add_ = node_->add_table.data();
    mul_ = node_->mul_table.data();
    neg_ = node_->neg_table.data();
  }
}

namespace detail {

Ring finalize_ring(std::shared_ptr<RingNode> node) {
  const Index n = node->size();
  if (n < 2) fail(ErrorCode::kInvalidRing, "the trivial ring is not supported");
  node->key = node->make_key();
  if (n <= kMemoTableLimit) {
    node->add_table.resize(n * n);
    node->mul_table.resize(n * n);
    node->neg_table.resize(n);
    for (Index a = 0; a < n; ++a) {
      node->neg_table[a] = static_cast<std::uint16_t>(node->neg(a));
      for (Index b = 0; b < n; ++b) {
        node->add_table[a * n + b] = static_cast<std::uint16_t>(node->add(a, b));
        node->mul_table[a * n + b] = static_cast<std::uint16_t>(node->mul(a, b));
      }
    }
  }
  return Ring(std::shared_ptr<const RingNode>(std::move(node)));
}

}  // namespace detail


Ring Ring::zmod(std::uint64_t n) {
  if (n < 2) fail(ErrorCode::kInvalidRing, "Z_n requires n >= 2");
  if (n > kSizeLimit) fail(ErrorCode::kValidationError, "ring order exceeds 2^62");
  return detail::finalize_ring(std::make_shared<ZModNode>(n));
}

Ring Ring::field(const FieldDescriptor& field) { return detail::finalize_ring(std::make_shared<FieldNode>(field)); }

Ring Ring::matrix(unsigned dim, const FieldDescriptor& field) {
  if (dim < 1) fail(ErrorCode::kInvalidRing, "matrix dimension must be >= 1");
  return detail::finalize_ring(std::make_shared<MatrixNode>(dim, field));
}

namespace {

Ring make_poly_quotient(const Ring& base, std::vector<Index> modulus, std::string tag) {
  if (!base.is_commutative()) fail(ErrorCode::kInvalidRing, "polynomial quotient needs a commutative base");
  if (modulus.size() < 2) fail(ErrorCode::kInvalidRing, "polynomial modulus must have degree >= 1");
  if (modulus.back() != base.one()) fail(ErrorCode::kInvalidRing, "polynomial modulus must be monic");
  for (auto c : modulus) {
    if (c >= base.size()) fail(ErrorCode::kInvalidRing, "modulus coefficient out of range");
  }
  return detail::finalize_ring(std::make_shared<PolyQuotientNode>(base, std::move(modulus), std::move(tag)));
}

}  // namespace

Ring Ring::poly_quotient(const Ring& base, std::vector<Index> modulus) {
  return make_poly_quotient(base, std::move(modulus), {});
}

Ring Ring::chain(std::uint64_t q, unsigned m) {
  if (m < 1) fail(ErrorCode::kInvalidRing, "chain ring exponent must be >= 1");
  const auto field = FieldDescriptor::of_order(q);
  std::vector<Index> modulus(m + 1, 0);
  modulus[m] = 1;
  return make_poly_quotient(Ring::field(field), std::move(modulus),
                            "chain(" + std::to_string(q) + "," + std::to_string(m) + ")");
}

Ring Ring::galois(std::uint64_t p, unsigned k, unsigned r) {
  if (!is_prime(p)) fail(ErrorCode::kNonPrime, std::to_string(p) + " is not prime");
  if (k < 1) fail(ErrorCode::kInvalidRing, "Galois ring exponent must be >= 1");
  const auto field = FieldDescriptor::make(p, r);
  auto ring = galois(p, k, field.modulus());
  return ring;
}

Ring Ring::galois(std::uint64_t p, unsigned k, const Poly& modulus) {
  if (!is_prime(p)) fail(ErrorCode::kNonPrime, std::to_string(p) + " is not prime");
  if (k < 1) fail(ErrorCode::kInvalidRing, "Galois ring exponent must be >= 1");
  const auto pk = checked_pow(p, k);
  if (!pk) fail(ErrorCode::kValidationError, "characteristic too large");
  if (modulus.size() < 2 || modulus.back() != 1) fail(ErrorCode::kInvalidRing, "Galois ring modulus must be monic");
  Poly reduced;
  for (auto c : modulus) reduced.push_back(c % p);
  if (!is_irreducible_mod_p(reduced, p)) {
    fail(ErrorCode::kValidationError, "modulus " + poly_to_string(reduced) + " is reducible mod " + std::to_string(p));
  }
  std::vector<Index> coeffs;
  for (auto c : modulus) coeffs.push_back(c % *pk);
  const auto r = modulus.size() - 1;
  // The tag is only a faithful render for the default modulus.
  const Poly standard = FieldDescriptor::make(p, static_cast<unsigned>(r)).modulus();
  std::string tag;
  if (standard == modulus) tag = "GR(" + std::to_string(p) + "," + std::to_string(k) + "," + std::to_string(r) + ")";
  return make_poly_quotient(Ring::zmod(*pk), std::move(coeffs), std::move(tag));
}

Ring Ring::trivial_extension(const FieldDescriptor& field, unsigned m) {
  if (m < 1) fail(ErrorCode::kInvalidRing, "trivial extension needs m >= 1");
  return detail::finalize_ring(std::make_shared<TrivialExtensionNode>(field, m));
}

Ring Ring::product(std::vector<Ring> factors) {
  std::vector<Ring> flat;
  for (auto& f : factors) {
    if (f.kind() == RingKind::kProduct) {
      for (const auto& g : f.factors()) flat.push_back(g);
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (flat.size() < 2) fail(ErrorCode::kInvalidRing, "a product needs at least two factors");
  return detail::finalize_ring(std::make_shared<ProductNode>(std::move(flat)));
}

namespace {

void audit_table(const TableData& t) {
  const Index n = t.size;
  auto bad = [](const std::string& what) { fail(ErrorCode::kInvalidRing, "table ring audit: " + what); };
  if (n < 2) bad("size must be >= 2");
  if (n > kTableRingLimit) bad("size above " + std::to_string(kTableRingLimit));
  if (t.one >= n) bad("index of 1 out of range");
  auto check_shape = [&](const std::vector<std::vector<Index>>& table, const char* name) {
    if (table.size() != n) bad(std::string(name) + " table must have N rows");
    for (const auto& row : table) {
      if (row.size() != n) bad(std::string(name) + " table must have N columns");
      for (auto v : row) if (v >= n) bad(std::string(name) + " table entry out of range");
    }
  };
  check_shape(t.add, "addition");
  check_shape(t.mul, "multiplication");
  const auto& A = t.add;
  const auto& M = t.mul;
  for (Index a = 0; a < n; ++a) {
    if (A[0][a] != a || A[a][0] != a) bad("element 0 is not the additive identity");
    bool has_inverse = false;
    for (Index b = 0; b < n; ++b) {
      if (A[a][b] != A[b][a]) bad("addition is not commutative");
      if (A[a][b] == 0) has_inverse = true;
    }
    if (!has_inverse) bad("element " + std::to_string(a) + " has no additive inverse");
    if (M[t.one][a] != a || M[a][t.one] != a) bad("designated 1 is not a two-sided identity");
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      for (Index c = 0; c < n; ++c) {
        if (A[A[a][b]][c] != A[a][A[b][c]]) bad("addition is not associative");
        if (M[M[a][b]][c] != M[a][M[b][c]]) bad("multiplication is not associative");
        if (M[a][A[b][c]] != A[M[a][b]][M[a][c]]) bad("left distributivity fails");
        if (M[A[a][b]][c] != A[M[a][c]][M[b][c]]) bad("right distributivity fails");
      }
    }
  }
}

}  // namespace

Ring Ring::table(const TableData& data, std::string source) {
  audit_table(data);
  return detail::finalize_ring(std::make_shared<TableNode>(data, std::move(source)));
}

Ring Ring::quotient(const Ring& parent, std::span<const Index> ideal_members) {
  std::vector<Index> members(ideal_members.begin(), ideal_members.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const Index n = parent.size();
  auto not_ideal = [](const std::string& why) { fail(ErrorCode::kNotAnIdeal, why); };
  if (members.empty() || members.front() != 0) not_ideal("ideal must contain 0");
  if (members.back() >= n) not_ideal("ideal member out of range");
  std::vector<char> in(n, 0);
  for (auto i : members) in[i] = 1;
  for (auto i : members) {
    if (!in[parent.neg(i)]) not_ideal("not closed under negation");
    for (auto j : members) {
      if (!in[parent.add(i, j)]) not_ideal("not closed under addition");
    }
    for (Index r = 0; r < n; ++r) {
      if (!in[parent.mul(r, i)] || !in[parent.mul(i, r)]) not_ideal("not closed under multiplication by the ring");
    }
  }
  if (members.size() == n) fail(ErrorCode::kImproperIdeal, "quotient by the whole ring");

  auto node = std::make_shared<QuotientNode>(parent, members);
  // Well-definedness on a full pass over the parent.
  for (Index a = 0; a < n; ++a) {
    const Index ca = node->coset_of(a);
    for (Index b = 0; b < n; ++b) {
      const Index cb = node->coset_of(b);
      check_internal(node->coset_of(parent.mul(a, b)) == node->mul(ca, cb), "quotient multiplication is not well defined");
      check_internal(node->coset_of(parent.add(a, b)) == node->add(ca, cb), "quotient addition is not well defined");
    }
  }
  return detail::finalize_ring(std::move(node));
}

// ---------------------------------------------------------------------------

RingKind Ring::kind() const { return node_->kind(); }
Index Ring::slow_add(Index a, Index b) const { return node_->add(a, b); }
Index Ring::slow_mul(Index a, Index b) const { return node_->mul(a, b); }
Index Ring::slow_neg(Index a) const { return node_->neg(a); }

bool Ring::is_commutative() const {
  if (node_->kind() == RingKind::kTable || node_->kind() == RingKind::kQuotient) {
    if (has_memo_tables()) return table_is_commutative(*this);
  }
  return node_->commutative();
}

std::string Ring::render() const { return node_->render(); }
const std::string& Ring::key() const { return node_->key; }
bool Ring::operator==(const Ring& other) const { return node_ == other.node_ || node_->key == other.node_->key; }

std::string Ring::format(Index index) const {
  if (index >= size_) fail(ErrorCode::kValidationError, "element index out of range");
  return node_->format(index);
}

Index Ring::parse(std::string_view text) const {
  text = literal::trim(text);
  if (!text.empty() && text.front() == '#') {
    const auto value = literal::parse_int(text.substr(1));
    if (value < 0 || static_cast<Index>(value) >= size_) fail(ErrorCode::kValidationError, "element index out of range");
    return static_cast<Index>(value);
  }
  if (text.empty()) fail(ErrorCode::kParseError, "empty element literal");
  return node_->parse(text);
}

Element Ring::element(Index index) const { return Element(*this, index); }

std::uint64_t Ring::zmod_modulus() const { return node_as<ZModNode>(*node_, "Z_n").modulus(); }

const FieldDescriptor& Ring::field_descriptor() const {
  if (auto* f = dynamic_cast<const FieldNode*>(node_.get())) return f->field();
  if (auto* m = dynamic_cast<const MatrixNode*>(node_.get())) return m->field();
  if (auto* t = dynamic_cast<const TrivialExtensionNode*>(node_.get())) return t->field();
  fail(ErrorCode::kValidationError, "ring has no underlying field descriptor");
}

unsigned Ring::matrix_dim() const {
  if (node_->kind() == RingKind::kField) return 1;
  return node_as<MatrixNode>(*node_, "matrix ring").dim();
}

std::vector<std::uint64_t> Ring::matrix_entries(Index index) const {
  if (node_->kind() == RingKind::kField) return {index};
  return node_as<MatrixNode>(*node_, "matrix ring").decode(index);
}

Index Ring::matrix_from_entries(std::span<const std::uint64_t> entries) const {
  if (node_->kind() == RingKind::kField) return entries.front();
  return node_as<MatrixNode>(*node_, "matrix ring").encode(entries);
}

const std::vector<Ring>& Ring::factors() const { return node_as<ProductNode>(*node_, "product").factors(); }
std::vector<Index> Ring::split(Index index) const { return node_as<ProductNode>(*node_, "product").split(index); }
Index Ring::join(std::span<const Index> components) const {
  return node_as<ProductNode>(*node_, "product").join_components(components);
}
const Ring& Ring::parent() const { return node_as<QuotientNode>(*node_, "quotient").parent(); }
Index Ring::coset_of(Index parent_index) const { return node_as<QuotientNode>(*node_, "quotient").coset_of(parent_index); }
Index Ring::representative(Index coset) const { return node_as<QuotientNode>(*node_, "quotient").representative(coset); }
const Ring& Ring::base() const { return node_as<PolyQuotientNode>(*node_, "polynomial quotient").base(); }

void require_enumerable(const Ring& ring, Index cap) {
  if (ring.size() > cap) {
    fail(ErrorCode::kSizeCapExceeded,
         ring.render() + " has " + std::to_string(ring.size()) + " elements, above the cap of " + std::to_string(cap));
  }
}

// ---------------------------------------------------------------------------

Element::Element(Ring ring, Index index) : ring_(std::move(ring)), index_(index) {
  if (index_ >= ring_.size()) fail(ErrorCode::kValidationError, "element index out of range");
}

void Element::require_same_ring(const Element& other) const {
  if (!(ring_ == other.ring_)) fail(ErrorCode::kMixedRings, "operands belong to different rings");
}

Element Element::operator+(const Element& other) const {
  require_same_ring(other);
  return Element(ring_, ring_.add(index_, other.index_));
}

Element Element::operator-(const Element& other) const {
  require_same_ring(other);
  return Element(ring_, ring_.sub(index_, other.index_));
}

Element Element::operator*(const Element& other) const {
  require_same_ring(other);
  return Element(ring_, ring_.mul(index_, other.index_));
}

Element Element::operator-() const { return Element(ring_, ring_.neg(index_)); }

bool Element::operator==(const Element& other) const { return index_ == other.index_ && ring_ == other.ring_; }

}  // namespace ringprob
