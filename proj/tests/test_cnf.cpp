#include <gtest/gtest.h>

#include "pilab/cnf.hpp"
#include "pilab/errors.hpp"
#include "pilab/oracle.hpp"
#include "test_util.hpp"

using namespace pilab;
using namespace pilab::testing;

TEST(Literal, IndexRoundTrip) {
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(Literal::from_index(i).index(), i);
  EXPECT_EQ(pos(3).index(), 4u);
  EXPECT_EQ(neg(3).index(), 5u);
  EXPECT_EQ(~pos(3), neg(3));
  EXPECT_EQ(neg(3).to_string(), "~x3");
  EXPECT_EQ(Literal::from_dimacs(-7), neg(7));
  EXPECT_THROW(Literal(0), PreconditionError);
  EXPECT_THROW(Literal::from_dimacs(0), PreconditionError);
}

TEST(Clause, SortsDedupsAndFlagsTautology) {
  Clause c{pos(2), neg(1), pos(2)};
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.literals()[0], neg(1));
  EXPECT_FALSE(c.tautological());
  EXPECT_TRUE((Clause{pos(1), neg(1)}).tautological());
  EXPECT_TRUE(Clause{}.empty());
}

TEST(CnfFormula, RejectsBadShapes) {
  EXPECT_THROW(CnfFormula(0, {}), PreconditionError);
  EXPECT_THROW(cnf(2, {{1, 3}}), PreconditionError);
  EXPECT_THROW(CnfFormula(3, {Clause{pos(1), pos(2), pos(3)}}, 2), PreconditionError);
  const CnfFormula f = cnf(4, {{1, -3}, {3}});
  EXPECT_EQ(f.width(), 2u);
  EXPECT_EQ(f.occurring_variables(), (std::vector<Var>{1, 3}));
  EXPECT_EQ(CnfFormula(2, {}).width(), 0u);
}

TEST(Restriction, CanonicalStringAndOrder) {
  const auto rho = Restriction::from_string("1*0");
  EXPECT_EQ(rho[1], Value::One);
  EXPECT_EQ(rho[2], Value::Free);
  EXPECT_EQ(rho[3], Value::Zero);
  EXPECT_EQ(rho.to_string(), "1*0");
  EXPECT_EQ(rho.fixed_count(), 2u);
  EXPECT_TRUE(rho.is_partial());
  EXPECT_LT(Restriction::from_string("*1"), Restriction::from_string("0*"));
  EXPECT_LT(Restriction::from_string("01"), Restriction::from_string("1*"));
  EXPECT_THROW(Restriction::from_string("1x"), PreconditionError);
  EXPECT_EQ(rho.value_of(neg(3)), Value::One);
  EXPECT_EQ(rho.value_of(neg(2)), Value::Free);
  EXPECT_TRUE(Restriction::from_string("110").extends(rho.from_string("1**")));
  EXPECT_FALSE(Restriction::from_string("1**").extends(rho.from_string("110")));
}

TEST(Restriction, StringRoundTripOverAllOfThreeToTheFour) {
  for_each_restriction(4, [](const Restriction& rho) {
    EXPECT_EQ(Restriction::from_string(rho.to_string()), rho);
  });
}

TEST(Evaluate, NeedsTotalAssignment) {
  const CnfFormula f = cnf(2, {{1, 2}});
  EXPECT_TRUE(evaluate(f, Restriction::from_string("10")));
  EXPECT_FALSE(evaluate(f, Restriction::from_string("00")));
  EXPECT_THROW(evaluate(f, Restriction::from_string("1*")), PreconditionError);
  EXPECT_THROW(evaluate(f, Restriction::from_string("100")), PreconditionError);
}

TEST(Implicant, TwoClauseExamples) {
  // (~x1 | x2) & (~x1 | ~x2): the only prime implicant is x1 = 0.
  const CnfFormula f = cnf(2, {{-1, 2}, {-1, -2}});
  EXPECT_TRUE(is_prime_implicant(f, Restriction::from_string("0*")));
  EXPECT_TRUE(is_implicant(f, Restriction::from_string("01")));
  EXPECT_FALSE(is_prime_implicant(f, Restriction::from_string("01")));
  EXPECT_FALSE(is_implicant(f, Restriction::from_string("1*")));
  EXPECT_FALSE(is_implicant(f, Restriction::from_string("**")));
}

TEST(Implicant, TautologiesAreConstantOne) {
  const CnfFormula f = cnf(2, {{1, -1}, {2}});
  EXPECT_TRUE(is_prime_implicant(f, Restriction::from_string("*1")));
  EXPECT_TRUE(restrict(f, Restriction::from_string("*1")).clauses().empty());
}

TEST(Implicant, EmptyFormulaHasAllFreePrime) {
  EXPECT_TRUE(is_prime_implicant(CnfFormula(3, {}), Restriction(3)));
}

TEST(Restrict, KeepsNumberingAndDropsSatisfied) {
  const CnfFormula f = cnf(3, {{1, 2}, {-1, 3}, {2, 3}});
  const CnfFormula g = restrict(f, Restriction::from_string("1**"));
  EXPECT_EQ(g.num_vars(), 3u);
  ASSERT_EQ(g.num_clauses(), 2u);
  EXPECT_EQ(g.clauses()[0], (Clause{pos(3)}));
  const CnfFormula h = restrict(f, Restriction::from_string("00*"));
  EXPECT_TRUE(h.clauses()[0].empty());
}

TEST(Preprocess, PropagatesUnits) {
  const auto pre = preprocess(cnf(3, {{1}, {-1, 2}, {-2, 3, 1}, {2, 3}}));
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->forced.to_string(), "11*");
  EXPECT_TRUE(pre->residual.clauses().empty());
}

TEST(Preprocess, DetectsConflict) {
  EXPECT_FALSE(preprocess(cnf(2, {{1}, {-1, 2}, {-2}})));
  EXPECT_FALSE(preprocess(cnf(1, {{1}, {-1}})));
  EXPECT_FALSE(preprocess(CnfFormula(1, {Clause{}})));
}

TEST(Preprocess, DropsTautologiesAndKeepsTheRest) {
  const auto pre = preprocess(cnf(3, {{1, -1}, {2, 3}}));
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->forced.to_string(), "***");
  EXPECT_EQ(pre->residual.num_clauses(), 1u);
}

TEST(Canonicalize, SortsAndDedups) {
  std::vector<Restriction> rs{Restriction::from_string("1*"), Restriction::from_string("*0"),
                              Restriction::from_string("1*")};
  canonicalize(rs);
  EXPECT_EQ(strings(rs), (std::vector<std::string>{"*0", "1*"}));
}

// Properties over degenerate random formulas (tautologies and unit-like
// clauses included) at n <= 8.
class CnfProperties : public ::testing::TestWithParam<unsigned> {};

TEST_P(CnfProperties, Hold) {
  const unsigned seed = GetParam();
  const Var n = 2 + seed % 7;
  const CnfFormula f = gen_random_2cnf(n, 1 + seed % 12, seed, RandomOptions{true}).formula;

  for_each_assignment(n, [&](const Restriction& a) { EXPECT_EQ(evaluate(f, a), is_implicant(f, a)); });

  for (const auto& rho : oracle_prime_implicants(f)) {
    EXPECT_TRUE(is_implicant(f, rho));
    // Every extension of an implicant is an implicant.
    for (Var v = 1; v <= n; ++v) {
      if (rho.is_fixed(v)) continue;
      Restriction ext = rho;
      ext.set(v, Value::Zero);
      EXPECT_TRUE(is_implicant(f, ext));
      EXPECT_FALSE(is_prime_implicant(f, ext));
    }
  }

  // Fixing more variables only shrinks the restricted formula.
  for_each_restriction(n, [&](const Restriction& rho) {
    for (Var v = 1; v <= n; ++v) {
      if (rho.is_fixed(v)) continue;
      Restriction ext = rho;
      ext.set(v, Value::One);
      EXPECT_LE(restrict(f, ext).num_clauses(), restrict(f, rho).num_clauses());
    }
  });

  // Unit propagation keeps exactly the models compatible with the forced part.
  const auto pre = preprocess(f);
  for_each_assignment(n, [&](const Restriction& a) {
    const bool sat = evaluate(f, a);
    if (!pre) {
      EXPECT_FALSE(sat);
      return;
    }
    EXPECT_EQ(sat, a.extends(pre->forced) && evaluate(pre->residual, a));
  });
  if (pre) {
    for (const Clause& c : pre->residual.clauses()) {
      EXPECT_FALSE(c.is_unit());
      EXPECT_FALSE(c.tautological());
      for (Literal lit : c.literals()) EXPECT_TRUE(pre->forced.is_free(lit.var()));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CnfProperties, ::testing::Range(1u, 61u));
