#include "oracles.hpp"

#include "ringprob/error.hpp"
#include "ringprob/ringspec.hpp"
#include "ringprob/structure.hpp"

#include <gtest/gtest.h>

namespace {

using namespace ringprob;

const std::vector<std::string> kSpecs = {
    "Z2",         "Z3",         "Z4",         "Z6",        "Z8",        "Z9",         "Z12",
    "Z27",        "GF2",        "GF3",        "GF4",       "GF9",       "chain(2,2)", "chain(2,3)",
    "chain(3,2)", "chain(3,3)", "GR(2,2,2)",  "M1(GF2)",   "M2(GF2)",   "M2(GF3)",    "triv(2,1)",
    "triv(2,2)",  "triv(2,3)",  "triv(3,2)",  "Z2 x Z4",   "Z2 x M2(GF2)", "table:upper_triangular_f2.json"};

IndexSet members(const Ring& r, std::initializer_list<const char*> literals) {
  IndexSet out;
  for (const char* l : literals) out.push_back(r.parse(l));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Units, Examples) {
  EXPECT_EQ(units(Ring::zmod(4)), (IndexSet{1, 3}));
  EXPECT_EQ(units(Ring::matrix(2, FieldDescriptor::of_order(2))).size(), 6u);
  EXPECT_EQ(units(Ring::field(FieldDescriptor::of_order(9))).size(), 8u);
}

TEST(ZeroDivisors, Examples) {
  EXPECT_EQ(zero_divisors(Ring::zmod(6)), (IndexSet{0, 2, 3, 4}));
  EXPECT_EQ(zero_divisors(Ring::zmod(4)), (IndexSet{0, 2}));
  EXPECT_EQ(zero_divisors(Ring::field(FieldDescriptor::of_order(5))), (IndexSet{0}));
}

TEST(Annihilators, Examples) {
  const Ring z4 = Ring::zmod(4);
  EXPECT_EQ(right_annihilator(z4, 2).members(), (IndexSet{0, 2}));
  EXPECT_EQ(right_annihilator(z4, 0).size(), 4u);
  EXPECT_EQ(right_annihilator(z4, 3).members(), (IndexSet{0}));
  EXPECT_EQ(right_annihilator(z4, 2).side(), IdealSide::kRight);
}

TEST(Annihilators, OneSidedAsymmetryInTableRing) {
  const Ring t = parse_ring_spec("table:upper_triangular_f2.json");
  bool differs = false;
  for (Index a = 0; a < t.size(); ++a) {
    differs = differs || right_annihilator(t, a).members() != left_annihilator(t, a).members();
  }
  EXPECT_TRUE(differs);
}

TEST(Symmetry, HoldsOnCorpus) {
  for (const auto& spec : kSpecs) EXPECT_TRUE(left_right_symmetry_check(parse_ring_spec(spec))) << spec;
}

TEST(UnitZeroDivisorPartition, AgreesWithDefinitions) {
  for (const auto& spec : kSpecs) {
    const Ring r = parse_ring_spec(spec);
    const auto u = units(r);
    const auto z = zero_divisors(r);
    EXPECT_EQ(u.size() + z.size(), r.size()) << spec;
    for (Index x = 0; x < r.size(); ++x) {
      const bool in_u = std::binary_search(u.begin(), u.end(), x);
      const bool in_z = std::binary_search(z.begin(), z.end(), x);
      EXPECT_EQ(in_u, oracle::is_unit(r, x)) << spec << " x=" << x;
      EXPECT_EQ(in_z, oracle::is_zero_divisor(r, x)) << spec << " x=" << x;
      EXPECT_NE(in_u, in_z);
    }
  }
}

TEST(JacobsonRadical, Examples) {
  EXPECT_EQ(jacobson_radical(Ring::zmod(12)).members(), (IndexSet{0, 6}));
  EXPECT_TRUE(jacobson_radical(Ring::matrix(2, FieldDescriptor::of_order(3))).is_zero());
  const Ring c = Ring::chain(2, 3);
  EXPECT_EQ(jacobson_radical(c).members(), members(c, {"0,0,0", "0,1,0", "0,0,1", "0,1,1"}));
}

TEST(JacobsonRadical, EqualsNilradicalForCommutativeRings) {
  for (const auto& spec : kSpecs) {
    const Ring r = parse_ring_spec(spec);
    if (!r.is_commutative()) continue;
    EXPECT_EQ(jacobson_radical(r).members(), oracle::nilradical(r)) << spec;
  }
}

TEST(JacobsonRadical, NilpotentTwoSidedIdealOnCorpus) {
  for (const auto& spec : kSpecs) {
    const Ring r = parse_ring_spec(spec);
    const auto j = jacobson_radical(r);
    EXPECT_EQ(j.side(), IdealSide::kTwoSided);
    for (auto x : j.members()) {
      // 1 - a x is a unit for every a.
      for (Index a = 0; a < r.size(); ++a) EXPECT_TRUE(oracle::is_unit(r, r.sub(r.one(), r.mul(a, x))));
    }
  }
}

TEST(RadicalPowers, Examples) {
  const auto z8 = radical_powers(Ring::zmod(8));
  ASSERT_EQ(z8.size(), 3u);
  EXPECT_EQ(z8[0].members(), (IndexSet{0, 2, 4, 6}));
  EXPECT_EQ(z8[1].members(), (IndexSet{0, 4}));
  EXPECT_EQ(z8[2].members(), (IndexSet{0}));
  const auto triv = radical_powers(Ring::trivial_extension(FieldDescriptor::of_order(2), 2));
  ASSERT_EQ(triv.size(), 2u);
  EXPECT_EQ(triv[0].size(), 4u);
  EXPECT_TRUE(triv[1].is_zero());
  const auto gf = radical_powers(Ring::field(FieldDescriptor::of_order(7)));
  ASSERT_EQ(gf.size(), 1u);
  EXPECT_TRUE(gf[0].is_zero());
}

TEST(Classification, Examples) {
  const auto z9 = classify_local(Ring::zmod(9));
  EXPECT_TRUE(z9.is_local);
  EXPECT_EQ(z9.q, 3u);
  EXPECT_EQ(z9.n, 2u);
  EXPECT_TRUE(z9.is_max_chain);
  EXPECT_TRUE(z9.is_j_squared_zero);

  const auto gr = classify_local(Ring::galois(2, 2, 2));
  EXPECT_TRUE(gr.is_local);
  EXPECT_EQ(gr.q, 4u);
  EXPECT_EQ(gr.n, 2u);
  EXPECT_TRUE(gr.is_max_chain);

  const auto z6 = classify_local(Ring::zmod(6));
  EXPECT_FALSE(z6.is_local);
  EXPECT_FALSE(z6.q.has_value());

  const auto triv = classify_local(Ring::trivial_extension(FieldDescriptor::of_order(2), 3));
  EXPECT_TRUE(triv.is_local);
  EXPECT_EQ(triv.n, 4u);
  EXPECT_FALSE(triv.is_max_chain);
  EXPECT_TRUE(triv.is_j_squared_zero);

  const auto c = classify_local(Ring::chain(2, 3));
  EXPECT_EQ(c.nilpotency_index, 3u);
  EXPECT_EQ(c.radical_layer(c.radical_chain[1].members().back()), 2u);
  EXPECT_EQ(c.radical_layer(Ring::chain(2, 3).one()), 0u);
  EXPECT_EQ(c.radical_power(0), nullptr);
}

TEST(Classification, LocalSizeIsPowerOfResidueOrder) {
  for (const auto& spec : kSpecs) {
    const Ring r = parse_ring_spec(spec);
    const auto report = classify_local(r);
    if (!report.is_local) continue;
    EXPECT_EQ(*checked_pow(*report.q, *report.n), r.size()) << spec;
    EXPECT_EQ(report.radical().size() * *report.q, r.size()) << spec;
  }
}

TEST(IdealSizes, PowersOfQ) {
  for (const char* spec : {"Z8", "chain(3,2)", "triv(2,2)", "GR(2,2,2)", "chain(2,3)"}) {
    const Ring r = parse_ring_spec(spec);
    EXPECT_TRUE(ideal_size_power_check(r, classify_local(r))) << spec;
  }
  const Ring z6 = Ring::zmod(6);
  try {
    ideal_size_power_check(z6, classify_local(z6));
    FAIL();
  } catch (const RingError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotLocal);
  }
}

TEST(IdealSizes, ExplicitSizeSets) {
  const Ring triv = Ring::trivial_extension(FieldDescriptor::of_order(2), 2);
  for (Index a = 0; a < triv.size(); ++a) {
    const auto s = right_annihilator(triv, a).size();
    EXPECT_TRUE(s == 1 || s == 4 || s == 8) << s;
  }
  const Ring c = Ring::chain(3, 2);
  for (Index a = 0; a < c.size(); ++a) {
    const auto s = right_principal_ideal(c, a).size();
    EXPECT_TRUE(s == 1 || s == 3 || s == 9) << s;
  }
}

TEST(UnitPlusRadical, HoldsOnCorpus) {
  for (const auto& spec : kSpecs) {
    const Ring r = parse_ring_spec(spec);
    EXPECT_TRUE(unit_plus_radical_check(r, classify_local(r))) << spec;
  }
}

TEST(PrincipalIdeals, Examples) {
  const Ring z12 = Ring::zmod(12);
  EXPECT_EQ(principal_two_sided_ideal(z12, 4).members(), (IndexSet{0, 4, 8}));
  EXPECT_TRUE(principal_two_sided_ideal(z12, 0).is_zero());
  const Ring m2 = Ring::matrix(2, FieldDescriptor::of_order(2));
  for (Index g = 1; g < m2.size(); ++g) EXPECT_TRUE(principal_two_sided_ideal(m2, g).is_whole_ring());
  EXPECT_EQ(principal_two_sided_ideals(m2).size(), 2u);
  // Z_12 has one ideal per divisor of 12.
  EXPECT_EQ(principal_two_sided_ideals(z12).size(), 6u);
}

TEST(IdealValidation, RejectsNonIdeals) {
  const Ring z6 = Ring::zmod(6);
  EXPECT_THROW(Ideal::make(z6, {0, 1}), RingError);
  EXPECT_THROW(Ideal::make(z6, {0, 2}), RingError);  // not closed under +
  EXPECT_EQ(Ideal::generated_by(z6, std::vector<Index>{2}).members(), (IndexSet{0, 2, 4}));
  EXPECT_EQ(additive_closure(z6, std::vector<Index>{3}), (IndexSet{0, 3}));
}

TEST(Quotients, LocalInvariantsDescend) {
  const Ring z8 = Ring::zmod(8);
  const Ring q = quotient_make(z8, principal_two_sided_ideal(z8, 4));
  const auto report = classify_local(q);
  EXPECT_EQ(q.size(), 4u);
  EXPECT_TRUE(report.is_local);
  EXPECT_EQ(report.n, 2u);
}

}  // namespace
