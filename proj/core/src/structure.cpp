#include "ringprob/structure.hpp"

#include "ringprob/error.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ringprob {

namespace {

IndexSet collect(const std::vector<char>& marks) {
  IndexSet out;
  for (Index i = 0; i < marks.size(); ++i) {
    if (marks[i]) out.push_back(i);
  }
  return out;
}

std::vector<char> unit_marks(const Ring& ring) {
  const Index n = ring.size();
  const Index one = ring.one();
  std::vector<char> marks(n, 0);
  for (Index u = 0; u < n; ++u) {
    for (Index v = 0; v < n; ++v) {
      if (ring.mul(u, v) == one) {
        marks[u] = 1;
        break;
      }
    }
  }
  return marks;
}

bool is_power_of(std::uint64_t value, std::uint64_t base) {
  if (value == 0) return false;
  while (value % base == 0) value /= base;
  return value == 1;
}

}  // namespace

// ---------------------------------------------------------------------------

Ideal::Ideal(Ring ring, IndexSet members, IdealSide side)
    : ring_(std::move(ring)), members_(std::move(members)), side_(side) {}

Ideal Ideal::make(const Ring& ring, IndexSet members, IdealSide side) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const Index n = ring.size();
  if (members.empty() || members.front() != 0) fail(ErrorCode::kNotAnIdeal, "ideal must contain 0");
  if (members.back() >= n) fail(ErrorCode::kNotAnIdeal, "member index out of range");
  std::vector<char> in(n, 0);
  for (auto i : members) in[i] = 1;
  for (auto i : members) {
    if (!in[ring.neg(i)]) fail(ErrorCode::kNotAnIdeal, "not closed under negation");
    for (auto j : members) {
      if (!in[ring.add(i, j)]) fail(ErrorCode::kNotAnIdeal, "not closed under addition");
    }
    for (Index r = 0; r < n; ++r) {
      if (side != IdealSide::kLeft && !in[ring.mul(i, r)]) fail(ErrorCode::kNotAnIdeal, "not closed under right multiplication");
      if (side != IdealSide::kRight && !in[ring.mul(r, i)]) fail(ErrorCode::kNotAnIdeal, "not closed under left multiplication");
    }
  }
  return Ideal(ring, std::move(members), side);
}

Ideal Ideal::generated_by(const Ring& ring, std::span<const Index> generators, IdealSide side) {
  return make(ring, additive_closure(ring, generators), side);
}

bool Ideal::contains(Index index) const { return std::binary_search(members_.begin(), members_.end(), index); }

IndexSet additive_closure(const Ring& ring, std::span<const Index> generators) {
  std::vector<char> seen(ring.size(), 0);
  std::deque<Index> frontier;
  seen[0] = 1;
  frontier.push_back(0);
  IndexSet gens;
  for (auto g : generators) {
    if (g != 0) gens.push_back(g);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  // In a finite group the closure under + alone is already a subgroup.
  while (!frontier.empty()) {
    const Index x = frontier.front();
    frontier.pop_front();
    for (auto g : gens) {
      const Index y = ring.add(x, g);
      if (!seen[y]) {
        seen[y] = 1;
        frontier.push_back(y);
      }
    }
  }
  return collect(seen);
}

IndexSet units(const Ring& ring) { return collect(unit_marks(ring)); }

IndexSet zero_divisors(const Ring& ring) {
  const Index n = ring.size();
  std::vector<char> marks(n, 0);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 1; y < n; ++y) {
      if (ring.mul(x, y) == 0 || ring.mul(y, x) == 0) {
        marks[x] = 1;
        break;
      }
    }
  }
  return collect(marks);
}

Ideal right_annihilator(const Ring& ring, Index a) {
  IndexSet members;
  for (Index y = 0; y < ring.size(); ++y) {
    if (ring.mul(a, y) == 0) members.push_back(y);
  }
  return Ideal::make(ring, std::move(members), IdealSide::kRight);
}

Ideal left_annihilator(const Ring& ring, Index a) {
  IndexSet members;
  for (Index y = 0; y < ring.size(); ++y) {
    if (ring.mul(y, a) == 0) members.push_back(y);
  }
  return Ideal::make(ring, std::move(members), IdealSide::kLeft);
}

bool left_right_symmetry_check(const Ring& ring) {
  const Index n = ring.size();
  for (Index a = 0; a < n; ++a) {
    bool left = false;   // some b != 0 with ba = 0
    bool right = false;  // some c != 0 with ac = 0
    for (Index b = 1; b < n && !(left && right); ++b) {
      left = left || ring.mul(b, a) == 0;
      right = right || ring.mul(a, b) == 0;
    }
    if (left != right) return false;
  }
  return true;
}

Ideal jacobson_radical(const Ring& ring) {
  const Index n = ring.size();
  const auto is_unit = unit_marks(ring);
  const Index one = ring.one();
  IndexSet members;
  for (Index x = 0; x < n; ++x) {
    bool in_radical = true;
    for (Index a = 0; a < n && in_radical; ++a) {
      in_radical = is_unit[ring.sub(one, ring.mul(a, x))] != 0;
    }
    if (in_radical) members.push_back(x);
  }
  Ideal radical = Ideal::make(ring, std::move(members), IdealSide::kTwoSided);
  // Nilpotency: every member has a vanishing power.
  for (auto x : radical.members()) {
    Index power = x;
    Index steps = 0;
    while (power != 0) {
      power = ring.mul(power, x);
      check_internal(++steps <= n, "Jacobson radical element is not nilpotent");
    }
  }
  return radical;
}

std::vector<Ideal> radical_powers(const Ring& ring) {
  const Ideal radical = jacobson_radical(ring);
  std::vector<Ideal> chain{radical};
  while (!chain.back().is_zero()) {
    std::vector<char> seen(ring.size(), 0);
    IndexSet products;
    for (auto a : chain.back().members()) {
      for (auto b : radical.members()) {
        const Index p = ring.mul(a, b);
        if (!seen[p]) {
          seen[p] = 1;
          products.push_back(p);
        }
      }
    }
    Ideal next = Ideal::generated_by(ring, products, IdealSide::kTwoSided);
    check_internal(next.size() < chain.back().size(), "radical powers stopped decreasing above zero");
    chain.push_back(std::move(next));
  }
  return chain;
}

Ideal right_principal_ideal(const Ring& ring, Index a) {
  IndexSet members;
  for (Index r = 0; r < ring.size(); ++r) members.push_back(ring.mul(a, r));
  return Ideal::make(ring, std::move(members), IdealSide::kRight);
}

Ideal left_principal_ideal(const Ring& ring, Index a) {
  IndexSet members;
  for (Index r = 0; r < ring.size(); ++r) members.push_back(ring.mul(r, a));
  return Ideal::make(ring, std::move(members), IdealSide::kLeft);
}

Ideal principal_two_sided_ideal(const Ring& ring, Index g) {
  const Index n = ring.size();
  std::vector<char> left_seen(n, 0);
  IndexSet left;
  for (Index a = 0; a < n; ++a) {
    const Index ag = ring.mul(a, g);
    if (!left_seen[ag]) {
      left_seen[ag] = 1;
      left.push_back(ag);
    }
  }
  std::vector<char> seen(n, 0);
  IndexSet generators;
  for (auto y : left) {
    for (Index b = 0; b < n; ++b) {
      const Index ygb = ring.mul(y, b);
      if (!seen[ygb]) {
        seen[ygb] = 1;
        generators.push_back(ygb);
      }
    }
  }
  return Ideal::generated_by(ring, generators, IdealSide::kTwoSided);
}

std::vector<Ideal> principal_two_sided_ideals(const Ring& ring) {
  std::vector<Ideal> ideals;
  std::set<IndexSet> seen;
  for (Index g = 0; g < ring.size(); ++g) {
    Ideal ideal = principal_two_sided_ideal(ring, g);
    if (seen.insert(ideal.members()).second) ideals.push_back(std::move(ideal));
  }
  return ideals;
}

Ring quotient_make(const Ring& ring, const Ideal& ideal) {
  if (!(ideal.ring() == ring)) fail(ErrorCode::kMixedRings, "ideal belongs to a different ring");
  return Ring::quotient(ring, ideal.members());
}

// ---------------------------------------------------------------------------

const Ideal* StructureReport::radical_power(unsigned k) const {
  if (k == 0) return nullptr;
  const std::size_t pos = std::min<std::size_t>(k - 1, radical_chain.size() - 1);
  return &radical_chain[pos];
}

unsigned StructureReport::radical_layer(Index x) const {
  check_internal(x != 0, "radical_layer: zero lies in every power");
  unsigned k = 0;
  while (k < radical_chain.size() && radical_chain[k].contains(x)) ++k;
  return k;
}

bool StructureReport::is_unit(Index x) const { return std::binary_search(units.begin(), units.end(), x); }

StructureReport classify_local(const Ring& ring) {
  StructureReport report;
  report.size = ring.size();
  report.units = units(ring);
  report.zero_divisors = zero_divisors(ring);
  report.radical_chain = radical_powers(ring);
  report.nilpotency_index = static_cast<unsigned>(report.radical_chain.size());
  report.is_j_squared_zero = report.radical_chain.size() <= 1 || report.radical_chain[1].is_zero();

  check_internal(report.units.size() + report.zero_divisors.size() == ring.size(),
                 "units and zero-divisors do not partition the ring");

  // Local iff the non-units are closed under addition.
  const IndexSet& nonunits = report.zero_divisors;
  std::vector<char> is_nonunit(ring.size(), 0);
  for (auto z : nonunits) is_nonunit[z] = 1;
  bool closed = true;
  for (std::size_t i = 0; i < nonunits.size() && closed; ++i) {
    for (std::size_t j = i; j < nonunits.size() && closed; ++j) {
      closed = is_nonunit[ring.add(nonunits[i], nonunits[j])] != 0;
    }
  }
  report.is_local = closed;
  if (!closed) return report;

  const Ideal& radical = report.radical();
  check_internal(radical.members() == nonunits, "local ring whose non-units differ from J");
  const std::uint64_t q = ring.size() / radical.size();
  check_internal(q * radical.size() == ring.size(), "|J| does not divide |R|");
  unsigned n = 0;
  std::uint64_t power = 1;
  while (power < ring.size()) {
    power *= q;
    ++n;
  }
  check_internal(power == ring.size(), "|R| is not a power of the residue field order");
  report.q = q;
  report.n = n;
  // J^0 = R is nonzero, so fields count as chain rings.
  report.is_max_chain = n == 1 || !report.radical_power(n - 1)->is_zero();
  return report;
}

bool ideal_size_power_check(const Ring& ring, const StructureReport& report) {
  if (!report.is_local) fail(ErrorCode::kNotLocal, ring.render() + " is not local");
  const std::uint64_t q = *report.q;
  for (Index a = 0; a < ring.size(); ++a) {
    if (!is_power_of(right_principal_ideal(ring, a).size(), q)) return false;
    if (!is_power_of(left_principal_ideal(ring, a).size(), q)) return false;
    if (!is_power_of(right_annihilator(ring, a).size(), q)) return false;
  }
  for (const auto& power : report.radical_chain) {
    if (!is_power_of(power.size(), q)) return false;
  }
  return true;
}

bool unit_plus_radical_check(const Ring& ring, const StructureReport& report) {
  std::vector<char> is_unit(ring.size(), 0);
  for (auto u : report.units) is_unit[u] = 1;
  for (auto u : report.units) {
    for (auto j : report.radical().members()) {
      if (!is_unit[ring.add(u, j)]) return false;
    }
  }
  return true;
}

}  // namespace ringprob
