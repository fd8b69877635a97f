#include "oracles.hpp"

#include "ringprob/closedform.hpp"
#include "ringprob/probability.hpp"
#include "ringprob/ringspec.hpp"
#include "ringprob/structure.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace ringprob;

const std::vector<std::string> kAtoms = {"Z2",      "Z3",         "Z4",         "Z5",        "Z6",       "Z8",
                                         "Z9",      "GF4",        "GF8",        "chain(2,2)", "chain(2,3)", "GR(2,2,2)",
                                         "M2(GF2)", "triv(2,1)",  "triv(2,2)",  "chain(3,2)", "table:upper_triangular_f2.json"};

// Random direct product of up to three atoms with at most `max_size` elements.
Ring random_ring(std::mt19937_64& rng, Index max_size, int min_factors = 1) {
  std::uniform_int_distribution<std::size_t> pick(0, kAtoms.size() - 1);
  std::uniform_int_distribution<int> count(min_factors, 3);
  const int wanted = count(rng);
  std::vector<Ring> factors;
  Index size = 1;
  for (int attempt = 0; attempt < 50 && static_cast<int>(factors.size()) < wanted; ++attempt) {
    Ring atom = parse_ring_spec(kAtoms[pick(rng)]);
    if (size * atom.size() > max_size) continue;
    size *= atom.size();
    factors.push_back(std::move(atom));
  }
  if (factors.empty()) return Ring::zmod(2);
  if (factors.size() == 1) return factors.front();
  return Ring::product(std::move(factors));
}

class RandomRings : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomRings, AxiomsHoldOnSampledTriples) {
  std::mt19937_64 rng(GetParam());
  const Ring ring = random_ring(rng, 256);
  std::uniform_int_distribution<Index> element(0, ring.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const Index a = element(rng), b = element(rng), c = element(rng);
    ASSERT_EQ(ring.mul(a, ring.mul(b, c)), ring.mul(ring.mul(a, b), c)) << ring.render();
    ASSERT_EQ(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
    ASSERT_EQ(ring.mul(ring.add(a, b), c), ring.add(ring.mul(a, c), ring.mul(b, c)));
    ASSERT_EQ(ring.add(a, ring.add(b, c)), ring.add(ring.add(a, b), c));
    ASSERT_EQ(ring.add(a, b), ring.add(b, a));
    ASSERT_EQ(ring.add(a, ring.neg(a)), 0u);
    ASSERT_EQ(ring.mul(a, ring.one()), a);
    ASSERT_EQ(ring.mul(ring.one(), a), a);
  }
}

TEST_P(RandomRings, EnginesAndIdentities) {
  std::mt19937_64 rng(GetParam());
  const Ring ring = random_ring(rng, 128);
  const auto report = classify_local(ring);
  const auto hits = pair_counts(ring, 2);
  EXPECT_EQ(hits, annsum_counts(ring)) << ring.render();
  std::uint64_t sum = 0;
  for (auto h : hits) sum += h;
  EXPECT_EQ(sum, ring.size() * ring.size());
  const auto unit_value = ProbFraction::over_square(report.units.size(), ring.size());
  for (Index x = 0; x < ring.size(); ++x) {
    const auto p = ProbFraction::over_square(hits[x], ring.size());
    EXPECT_EQ(p == unit_value, report.is_unit(x)) << ring.render() << " " << ring.format(x);
    if (!report.is_unit(x)) {
      EXPECT_TRUE(general_bounds(ring, report, x == 0 ? XClass::kZero : XClass::kNonzeroZeroDivisor).contains(p));
    }
    EXPECT_EQ(evaluate_probability(ring, x, Method::kAuto).value, p) << ring.render() << " " << ring.format(x);
  }
}

TEST_P(RandomRings, QuotientMonotonicity) {
  std::mt19937_64 rng(GetParam() * 7919);
  const Ring ring = random_ring(rng, 64);
  const auto hits = pair_counts(ring, 1);
  for (const auto& ideal : principal_two_sided_ideals(ring)) {
    if (ideal.is_whole_ring()) continue;
    const Ring q = quotient_make(ring, ideal);
    EXPECT_EQ(q.size() * ideal.size(), ring.size());
    const auto q_hits = pair_counts(q, 1);
    for (Index x = 0; x < ring.size(); ++x) {
      EXPECT_LE(ProbFraction::over_square(hits[x], ring.size()),
                ProbFraction::over_square(q_hits[q.coset_of(x)], q.size()));
    }
  }
}

TEST_P(RandomRings, ProductLaw) {
  std::mt19937_64 rng(GetParam() + 1000);
  const Ring ring = random_ring(rng, 128, 2);
  ASSERT_EQ(ring.kind(), RingKind::kProduct);
  std::vector<std::vector<std::uint64_t>> factor_hits;
  for (const auto& f : ring.factors()) factor_hits.push_back(pair_counts(f, 1));
  const auto hits = pair_counts(ring, 1);
  for (Index x = 0; x < ring.size(); ++x) {
    const auto parts = ring.split(x);
    ProbFraction expected{1, 1};
    for (std::size_t i = 0; i < parts.size(); ++i) {
      expected = expected * ProbFraction::over_square(factor_hits[i][parts[i]], ring.factors()[i].size());
    }
    EXPECT_EQ(expected, ProbFraction::over_square(hits[x], ring.size()));
  }
}

TEST_P(RandomRings, RadicalOfCommutativeRingIsNilradical) {
  std::mt19937_64 rng(GetParam() + 77);
  const Ring ring = random_ring(rng, 128);
  const auto j = jacobson_radical(ring);
  if (ring.is_commutative()) {
    EXPECT_EQ(j.members(), oracle::nilradical(ring)) << ring.render();
  }
  // Radical elements are nilpotent in every finite ring.
  const auto nil = oracle::nilradical(ring);
  for (auto x : j.members()) EXPECT_TRUE(std::binary_search(nil.begin(), nil.end(), x));
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomRings, ::testing::Range<std::uint64_t>(1, 25));

TEST(RandomFieldElements, AxiomsInLargerFields) {
  std::mt19937_64 rng(42);
  for (std::uint64_t q : {128, 243, 256, 343, 625}) {
    const auto f = FieldDescriptor::of_order(q);
    std::uniform_int_distribution<std::uint64_t> element(0, q - 1);
    for (int trial = 0; trial < 500; ++trial) {
      const auto a = f.element(element(rng));
      const auto b = f.element(element(rng));
      const auto c = f.element(element(rng));
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * b, b * a);
      if (!a.is_zero()) {
        ASSERT_EQ(a * a.inverse(), f.one());
      }
      ASSERT_EQ(a.pow(q), a);  // Frobenius fixes GF(q)
    }
  }
}

TEST(RandomLocalRings, ChainAndJ2ZeroFormulasAgreeWhereBothApply) {
  for (const char* spec : {"Z4", "Z9", "Z25", "chain(2,2)", "chain(3,2)", "chain(4,2)", "chain(5,2)", "triv(2,1)",
                           "triv(3,1)", "triv(4,1)", "GR(2,2,2)", "GR(3,2,2)"}) {
    const Ring ring = parse_ring_spec(spec);
    const auto report = classify_local(ring);
    ASSERT_TRUE(report.is_max_chain && report.is_j_squared_zero) << spec;
    for (Index x = 0; x < ring.size(); ++x) {
      EXPECT_EQ(prob_chain_formula(ring, report, x).value, prob_j2zero_formula(ring, report, x).value) << spec;
    }
  }
}

}  // namespace
