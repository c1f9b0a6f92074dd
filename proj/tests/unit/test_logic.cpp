#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "generators.hpp"
#include "rfq/error.hpp"
#include "rfq/logic/mode.hpp"
#include "rfq/logic/query.hpp"
#include "rfq/logic/text.hpp"

namespace {

using namespace rfq;
using namespace rfq::logic;

std::vector<std::string> keys(const std::vector<Substitution>& subs) {
  std::vector<std::string> out;
  for (const auto& s : subs) {
    out.push_back(testkit::canonical(s));
  }
  std::ranges::sort(out);
  return out;
}

TEST(Symbol, InterningIsStable) {
  Symbol a = Symbol::intern("block7");
  EXPECT_EQ(a, Symbol::intern("block7"));
  EXPECT_NE(a, Symbol::intern("block8"));
  EXPECT_EQ(a.name(), "block7");
  EXPECT_FALSE(Symbol{}.valid());
}

TEST(Text, AtomsRoundTrip) {
  for (const char* text : {"on(b1,floor)", "clear(X)", "heightlessthan(V3,b2)", "isFloor(floor)"}) {
    EXPECT_EQ(to_string(parse_atom(text)), text);
  }
  auto c = parse_conjunction("on(X,Y), !clear(Y)");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_TRUE(c.literals[1].negated);
  EXPECT_EQ(to_string(c), "on(X,Y), !clear(Y)");
  EXPECT_EQ(to_string(Conjunction{}), "true");
}

TEST(Text, UppercaseIsVariable) {
  Atom a = parse_atom("on(X,b)");
  EXPECT_TRUE(a.args[0].is_variable());
  EXPECT_TRUE(a.args[1].is_constant());
  EXPECT_FALSE(a.is_ground());
  EXPECT_THROW(parse_ground_atom("on(X,b)"), ParseError);
}

TEST(Text, StateRoundTrip) {
  State s = parse_state("on(a,b)\nclear(a)\non(b,floor)\n");
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(parse_state(format_state(s)), s);
}

TEST(State, SetSemantics) {
  State s;
  GroundAtom f = parse_ground_atom("clear(a)");
  EXPECT_TRUE(s.add(f));
  EXPECT_FALSE(s.add(f));
  EXPECT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.contains(f));
  EXPECT_FALSE(s.contains(parse_ground_atom("clear(b)")));
}

TEST(State, EqualityIgnoresInsertionOrder) {
  State a = parse_state("p(a)\nq(a,b)");
  State b = parse_state("q(a,b)\np(a)");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
}

TEST(Substitution, BindAndExtend) {
  Symbol x = Symbol::intern("X");
  Substitution s;
  EXPECT_TRUE(s.bind(x, Symbol::intern("a")));
  EXPECT_TRUE(s.bind(x, Symbol::intern("a")));
  EXPECT_FALSE(s.bind(x, Symbol::intern("b")));
  EXPECT_EQ(*s.lookup(x), Symbol::intern("a"));
  Substitution t = s;
  t.bind(Symbol::intern("Y"), Symbol::intern("b"));
  EXPECT_TRUE(t.extends(s));
  EXPECT_FALSE(s.extends(t));
  EXPECT_EQ(to_string(apply(t, parse_atom("on(X,Z)"))), "on(a,Z)");
}

TEST(Match, SmallExample) {
  State s = parse_state("on(a,b)\non(b,c)\nclear(a)");
  auto subs = match(parse_conjunction("on(X,Y), on(Y,Z)"), s);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(testkit::canonical(subs[0]), "X=a;Y=b;Z=c;");
  EXPECT_TRUE(match(parse_conjunction("on(X,Y), clear(Y)"), s).empty());
  EXPECT_EQ(match(parse_conjunction("on(X,Y), !clear(X)"), s).size(), 1u);
}

TEST(Match, NegationNeedsBoundVariables) {
  State s = parse_state("p(a)");
  EXPECT_THROW(match(parse_conjunction("p(X), !q(X,Y)"), s), BiasError);
  Substitution seed{{Symbol::intern("Y"), Symbol::intern("a")}};
  EXPECT_NO_THROW(match(parse_conjunction("p(X), !q(X,Y)"), s, seed));
}

TEST(Match, EmptyConjunctionReturnsSeed) {
  Substitution seed{{Symbol::intern("X"), Symbol::intern("a")}};
  auto subs = match(Conjunction{}, State{}, seed);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(subs[0], seed);
}

TEST(Match, AgreesWithBruteForce) {
  Rng rng = make_rng(11, {});
  for (int trial = 0; trial < 300; ++trial) {
    State s = testkit::random_state(rng);
    Substitution seed;
    std::vector<Symbol> seeded;
    if (uniform01(rng) < 0.5) {
      seeded.push_back(Symbol::intern("X"));
      seed.bind(seeded[0], Symbol::intern(uniform01(rng) < 0.5 ? "a" : "b"));
    }
    Conjunction c = testkit::random_conjunction(rng, seeded);
    EXPECT_EQ(keys(match(c, s, seed)), keys(testkit::brute_force_match(c, s, seed))) << to_string(c);
  }
}

TEST(Match, FirstMatchIsFirstOfAll) {
  Rng rng = make_rng(12, {});
  for (int trial = 0; trial < 200; ++trial) {
    State s = testkit::random_state(rng);
    Conjunction c = testkit::random_conjunction(rng, {});
    auto all = match(c, s);
    auto first = first_match(c, s);
    ASSERT_EQ(first.has_value(), !all.empty());
    if (first) {
      EXPECT_EQ(*first, all.front());
    }
  }
}

TEST(Satisfies, SeedsActionVariables) {
  State s = parse_state("clear(a)\non(a,b)\nclear(c)");
  GroundAtom move = parse_ground_atom("move(a,c)");
  std::vector<Symbol> vars = {action_variable(0), action_variable(1)};
  EXPECT_TRUE(satisfies(parse_conjunction("clear(A), clear(B)"), s, move, vars));
  EXPECT_FALSE(satisfies(parse_conjunction("on(B,V2)"), s, move, vars));
  auto sub = satisfies(parse_conjunction("on(A,V2)"), s, move, vars);
  ASSERT_TRUE(sub);
  EXPECT_EQ(*sub->lookup(Symbol::intern("V2")), Symbol::intern("b"));
}

TEST(Mode, ParseAndPrint) {
  ModeDecl m = parse_mode("on(+block,-block)");
  EXPECT_EQ(m.predicate, Predicate::make("on", 2));
  ASSERT_EQ(m.args.size(), 2u);
  EXPECT_EQ(m.args[0].mode, ArgMode::Input);
  EXPECT_EQ(m.args[1].mode, ArgMode::Output);
  EXPECT_EQ(to_string(m), "on(+block,-block)");
  EXPECT_EQ(parse_mode(to_string(parse_mode("truckIn(#truck,-city)"))), parse_mode("truckIn(#truck,-city)"));
}

}  // namespace
