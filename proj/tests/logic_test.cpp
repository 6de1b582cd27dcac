#include <gtest/gtest.h>

#include <set>

#include "support/oracle.hpp"
#include "support/random_models.hpp"
#include "varcore/formula.hpp"
#include "varcore/formula_parser.hpp"
#include "varcore/sat.hpp"

using namespace varcore::logic;

namespace {

const char* kXor = "Time_Function_T1001 <=> (server & !client) | (!server & client)";

Formula v(const char* n) { return Formula::var(n); }

}  // namespace

TEST(Parse, XorExample) {
  const Formula expected = Formula::equivalence(
      v("Time_Function_T1001"),
      Formula::disjunction({Formula::conjunction({v("server"), Formula::negation(v("client"))}),
                            Formula::conjunction({Formula::negation(v("server")), v("client")})}));
  EXPECT_EQ(parse_formula(kXor), expected);
}

TEST(Parse, SingleIdentifier) { EXPECT_EQ(parse_formula("a"), v("a")); }

TEST(Parse, UnclosedParenthesisReportsOffsetFive) {
  try {
    parse_formula("a & (b");
    FAIL() << "expected a syntax error";
  } catch (const FormulaSyntaxError& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_NE(std::string(e.what()).find("unclosed"), std::string::npos) << e.what();
    EXPECT_EQ(e.expected(), std::vector<std::string>{"')'"});
  }
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_formula(""), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("   "), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("a)"), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("a & "), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("a # b"), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("a b"), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("a = b"), FormulaSyntaxError);
  try {
    parse_formula("a & & b");
  } catch (const FormulaSyntaxError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_formula("!a & b | c"),
            Formula::disjunction({Formula::conjunction({Formula::negation(v("a")), v("b")}), v("c")}));
  EXPECT_EQ(parse_formula("a => b => c"), Formula::implication(v("a"), Formula::implication(v("b"), v("c"))));
  EXPECT_EQ(parse_formula("a <=> b <=> c"), Formula::equivalence(Formula::equivalence(v("a"), v("b")), v("c")));
  EXPECT_EQ(parse_formula("a & b & c"), Formula::conjunction({v("a"), v("b"), v("c")}));
  EXPECT_EQ(parse_formula("(a & b) & c"), Formula::conjunction({Formula::conjunction({v("a"), v("b")}), v("c")}));
  EXPECT_EQ(parse_formula("a | b => c <=> d"),
            Formula::equivalence(Formula::implication(Formula::disjunction({v("a"), v("b")}), v("c")), v("d")));
  EXPECT_EQ(parse_formula("true & !false"), Formula::conjunction({Formula::constant(true), Formula::negation(Formula::constant(false))}));
}

TEST(Formula, InvariantsEnforced) {
  EXPECT_THROW(Formula::var("1abc"), varcore::Error);
  EXPECT_THROW(Formula::var("true"), varcore::Error);
  EXPECT_THROW(Formula::conjunction({v("a")}), varcore::Error);
  EXPECT_THROW(Formula::disjunction({}), varcore::Error);
}

TEST(Eval, XorRows) {
  const Formula f = parse_formula(kXor);
  EXPECT_TRUE(eval(f, {{"Time_Function_T1001", true}, {"server", true}, {"client", false}}));
  EXPECT_FALSE(eval(f, {{"Time_Function_T1001", true}, {"server", true}, {"client", true}}));
}

TEST(Eval, UndefinedVariableNamed) {
  try {
    eval(v("a"), {{"b", true}});
    FAIL();
  } catch (const UndefinedVariableError& e) {
    EXPECT_EQ(e.variable(), "a");
  }
}

TEST(Sat, Examples) {
  EXPECT_FALSE(sat(Formula::conjunction({v("a"), Formula::negation(v("a"))})));
  const auto r = sat(Formula::disjunction({v("a"), v("b")}));
  ASSERT_TRUE(r);
  EXPECT_TRUE(eval(Formula::disjunction({v("a"), v("b")}), r.witness));
  EXPECT_TRUE(sat(Formula::conjunction({parse_formula(kXor), v("Time_Function_T1001")})));
  EXPECT_TRUE(sat(Formula::constant(true)));
  EXPECT_FALSE(sat(Formula::constant(false)));
}

TEST(AllSat, Examples) {
  const Formula f = Formula::conjunction({parse_formula(kXor), v("Time_Function_T1001")});
  const auto models = all_sat(f, {"server", "client"});
  ASSERT_EQ(models.size(), 2u);
  EXPECT_EQ(models[0], (Assignment{{"server", false}, {"client", true}}));
  EXPECT_EQ(models[1], (Assignment{{"server", true}, {"client", false}}));
  EXPECT_TRUE(all_sat(Formula::conjunction({v("a"), Formula::negation(v("a"))}), {"a"}).empty());
  EXPECT_EQ(all_sat(Formula::constant(true), {"a", "b", "c"}).size(), 8u);
}

TEST(AllSat, CapacityGuard) {
  std::vector<std::string> many;
  for (int i = 0; i < 65; ++i) many.push_back("x" + std::to_string(i));
  EXPECT_THROW(all_sat(Formula::constant(true), many), CapacityError);
  AllSatOptions small;
  small.max_variables = 2;
  EXPECT_THROW(all_sat(Formula::constant(true), {"a", "b", "c"}, small), CapacityError);
  EXPECT_THROW(all_sat(v("a"), {"a", "a"}), varcore::Error);
}

TEST(AllSat, LexicographicOrder) {
  const auto models = all_sat(Formula::disjunction({v("a"), v("b")}), {"a", "b"});
  ASSERT_EQ(models.size(), 3u);
  EXPECT_EQ(models[0], (Assignment{{"a", false}, {"b", true}}));
  EXPECT_EQ(models[1], (Assignment{{"a", true}, {"b", false}}));
  EXPECT_EQ(models[2], (Assignment{{"a", true}, {"b", true}}));
}

class LogicProperty : public ::testing::TestWithParam<int> {};

TEST_P(LogicProperty, AgreesWithTruthTable) {
  gen::Rng rng(static_cast<std::uint64_t>(GetParam()));
  std::vector<std::string> pool;
  const int n = 1 + GetParam() % 15;
  for (int i = 0; i < n; ++i) pool.push_back("v" + std::to_string(i));
  for (int round = 0; round < 10; ++round) {
    const Formula f = gen::formula(rng, pool, 4);
    const auto vars = variables(f);
    const auto rows = oracle::truth_table(f, vars);

    const auto r = sat(f);
    EXPECT_EQ(r.satisfiable, !rows.empty()) << to_string(f);
    if (r) {
      EXPECT_TRUE(eval(f, r.witness));
      EXPECT_TRUE(oracle::evaluate(f, r.witness));
    }

    std::vector<std::string> project;
    for (const auto& name : pool) {
      if (std::uniform_int_distribution<int>(0, 2)(rng) != 0) project.push_back(name);
    }
    const auto got = all_sat(f, project);
    const std::set<Assignment> got_set(got.begin(), got.end());
    EXPECT_EQ(got_set.size(), got.size()) << "duplicate projections";
    EXPECT_EQ(got_set, oracle::projected_models(f, vars, project)) << to_string(f);
    EXPECT_TRUE(std::is_sorted(got.begin(), got.end(), [&](const Assignment& a, const Assignment& b) {
      for (const auto& p : project) {
        if (a.at(p) != b.at(p)) return !a.at(p);
      }
      return false;
    }));

    for (const auto& row : oracle::truth_table(Formula::constant(true), vars)) {
      EXPECT_EQ(eval(f, row), oracle::evaluate(f, row));
    }
  }
}

TEST_P(LogicProperty, PrintParseRoundTrip) {
  gen::Rng rng(1000 + static_cast<std::uint64_t>(GetParam()));
  const std::vector<std::string> pool{"a", "b", "c", "d", "e"};
  for (int round = 0; round < 20; ++round) {
    const Formula f = gen::formula(rng, pool, 5);
    EXPECT_EQ(parse_formula(to_string(f)), f) << to_string(f);
  }
}

INSTANTIATE_TEST_SUITE_P(Random, LogicProperty, ::testing::Range(0, 30));
