#include "oracles.hpp"

#include "ringprob/error.hpp"
#include "ringprob/probability.hpp"
#include "ringprob/ringspec.hpp"

#include <gtest/gtest.h>

namespace {

using namespace ringprob;

Rational r(long a, long b) { return Rational(a, b); }

TEST(Delta, Examples) {
  const Ring z4 = Ring::zmod(4);
  EXPECT_EQ(delta(z4, 2, 2), 1);
  EXPECT_EQ(delta(z4, 0, 2), 0);
  EXPECT_EQ(delta(z4, 2, 1), 0);
}

TEST(ProbBrute, Examples) {
  const Ring z2 = Ring::zmod(2);
  EXPECT_EQ(prob_brute(z2, 0), r(3, 4));
  EXPECT_EQ(prob_brute(z2, 1), r(1, 4));
  const auto p = prob_brute(Ring::zmod(4), 2);
  EXPECT_EQ(p.hits, 4);
  EXPECT_EQ(p.total, 16);
  EXPECT_EQ(p.to_string(), "1/4");
}

TEST(ProbAnnsum, Examples) {
  EXPECT_EQ(prob_annsum(Ring::zmod(4), 2).hits, 4);
  EXPECT_EQ(prob_annsum(Ring::zmod(2), 0), r(3, 4));
  for (const char* spec : {"Z6", "M2(GF2)", "triv(2,2)", "table:upper_triangular_f2.json"}) {
    const Ring ring = parse_ring_spec(spec);
    const auto units = ringprob::units(ring).size();
    EXPECT_EQ(prob_annsum(ring, ring.one()), ProbFraction::over_square(units, ring.size())) << spec;
  }
}

TEST(Engines, AgreeWithZnOracle) {
  for (std::uint64_t n = 2; n <= 20; ++n) {
    const Ring z = Ring::zmod(n);
    const auto pc = pair_counts(z, 1);
    const auto ac = annsum_counts(z);
    for (Index x = 0; x < n; ++x) {
      const auto expected = oracle::zn_hits(n, x);
      EXPECT_EQ(pc[x], expected);
      EXPECT_EQ(ac[x], expected);
      EXPECT_EQ(prob_brute(z, x).hits, expected);
      EXPECT_EQ(prob_annsum(z, x).hits, expected);
    }
  }
}

TEST(Engines, AgreeWithElementOracle) {
  for (const char* spec : {"GF9", "M2(GF2)", "chain(2,3)", "GR(2,2,2)", "Z2 x Z4", "table:upper_triangular_f2.json"}) {
    const Ring ring = parse_ring_spec(spec);
    const auto expected = oracle::element_hits(ring);
    EXPECT_EQ(pair_counts(ring, 1), expected) << spec;
    EXPECT_EQ(annsum_counts(ring), expected) << spec;
  }
}

TEST(Engines, WorkerCountDoesNotMatter) {
  const Ring ring = parse_ring_spec("M2(GF3)");
  const auto one = pair_counts(ring, 1);
  for (unsigned w : {2u, 3u, 7u, 0u}) EXPECT_EQ(pair_counts(ring, w), one) << w;
}

TEST(Engines, HitsSumToPairCount) {
  const Ring ring = parse_ring_spec("Z2 x M2(GF2)");
  std::uint64_t sum = 0;
  for (auto h : pair_counts(ring)) sum += h;
  EXPECT_EQ(sum, ring.size() * ring.size());
}

TEST(Engines, SizeCap) {
  const Ring big = Ring::matrix(3, FieldDescriptor::of_order(3));
  EXPECT_THROW(prob_brute(big, 0), RingError);
  EXPECT_THROW(pair_counts(big), RingError);
  EXPECT_THROW(annsum_counts(big), RingError);
}

TEST(Spectrum, Z4) {
  const auto s = spectrum(Ring::zmod(4));
  ASSERT_EQ(s.entries.size(), 3u);
  EXPECT_EQ(s.entries[0].label, "unit");
  EXPECT_EQ(s.entries[0].class_size, 2u);
  EXPECT_EQ(s.entries[0].prob, r(2, 16));
  EXPECT_EQ(s.entries[1].members, (std::vector<Index>{2}));
  EXPECT_EQ(s.entries[1].prob, r(4, 16));
  EXPECT_EQ(s.entries[2].label, "zero");
  EXPECT_EQ(s.entries[2].prob, r(8, 16));
}

TEST(Spectrum, Gf3) {
  const auto s = spectrum(Ring::field(FieldDescriptor::of_order(3)));
  ASSERT_EQ(s.entries.size(), 2u);
  EXPECT_EQ(s.at(0), r(5, 9));
  EXPECT_EQ(s.at(1), r(2, 9));
  EXPECT_EQ(s.at(2), r(2, 9));
}

TEST(Spectrum, M2F2) {
  const Ring m2 = Ring::matrix(2, FieldDescriptor::of_order(2));
  const auto s = spectrum(m2);
  ASSERT_EQ(s.entries.size(), 3u);
  EXPECT_EQ(s.entries[0].label, "rank 2");
  EXPECT_EQ(s.entries[0].prob.hits, 6);
  EXPECT_EQ(s.entries[0].class_size, 6u);
  EXPECT_EQ(s.entries[1].label, "rank 1");
  EXPECT_EQ(s.entries[1].prob.hits, 18);
  EXPECT_EQ(s.entries[1].class_size, 9u);
  EXPECT_EQ(s.entries[2].label, "zero");
  EXPECT_EQ(s.entries[2].prob.hits, 58);
  EXPECT_EQ(s.entries[0].prob.total, 256);
}

TEST(Spectrum, ChainLayers) {
  const auto s = spectrum(Ring::zmod(8));
  std::vector<std::string> labels;
  for (const auto& e : s.entries) labels.push_back(e.label);
  EXPECT_EQ(labels, (std::vector<std::string>{"unit", "layer 1", "layer 2", "zero"}));
}

TEST(Spectrum, ClassesPartitionTheRing) {
  const Ring ring = parse_ring_spec("Z2 x M2(GF2)");
  const auto s = spectrum(ring);
  std::uint64_t total = 0;
  for (const auto& e : s.entries) {
    total += e.class_size;
    EXPECT_EQ(e.members.size(), e.class_size);
    for (auto x : e.members) EXPECT_EQ(s.hits[x], e.prob.hits);
  }
  EXPECT_EQ(total, ring.size());
}

TEST(ProbFractionType, ArithmeticAndFormatting) {
  const auto a = ProbFraction::over_square(15, 6);
  EXPECT_EQ(a.total, 36);
  EXPECT_EQ(a.to_string(), "5/12");
  EXPECT_EQ(a.decimal(), "0.416666666667");
  const auto b = ProbFraction{3, 4} * ProbFraction{5, 9};
  EXPECT_EQ(b.hits, 15);
  EXPECT_EQ(b.total, 36);
  EXPECT_EQ(a, b);
  EXPECT_LT(ProbFraction(1, 4), ProbFraction(1, 3));
  EXPECT_EQ(ProbFraction::over_square(0, 2).to_string(), "0/1");
  EXPECT_EQ(ProbFraction::over_square(4, 2).to_string(), "1/1");
}

}  // namespace
