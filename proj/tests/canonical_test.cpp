#include <set>

#include "gtest/gtest.h"

#include "fdep/canonical.hpp"
#include "fdep/derivation.hpp"
#include "fdep/fixtures.hpp"
#include "fdep/rng.hpp"
#include "support.hpp"

using namespace fdep;
using namespace fdep::test_support;

namespace {

Atom A(const Graph& g, const std::string& text) { return ParseAtom(text, g); }

// The pennies payoff recomputed from the strategy labels alone.
Rational PenniesPayoff(const Game& game, VertexSet a_star, int v, const std::vector<int>& p) {
  const Graph& g = game.graph();
  auto strategy = [&](int u) { return ParsePenniesLabel(game.labels(u)[p[u]]); };
  // Face u shows towards neighbour w: neighbours are listed in ascending order.
  auto face = [&](int u, int w) -> bool {
    int slot = 0;
    for (int x = 0; x < w; ++x) slot += g.adjacent(u, x) ? 1 : 0;
    return strategy(u).tails.at(slot);
  };
  const PenniesStrategy mine = strategy(v);
  Rational total = 0;
  if (mine.playsPennies()) {
    for (int w = 0; w < g.size(); ++w) {
      if (!g.adjacent(v, w) || !strategy(w).playsPennies()) continue;
      const bool match = face(v, w) == face(w, v);
      const bool tail = g.name(v) < g.name(w);
      if (match == tail) total += 1;
    }
  } else {
    bool zero = false, one = false;
    for (int u = 0; u < g.size(); ++u) {
      if (u != v && !g.adjacent(u, v)) continue;
      if (a_star.contains(u)) continue;
      const PenniesStrategy s = strategy(u);
      if (s.kind != PenniesStrategy::Kind::kBit) continue;
      (s.bit == 0 ? zero : one) = true;
    }
    if (zero && one) total -= 1;
  }
  return total;
}

struct PenniesCase {
  std::string graph;
  Graph g;
  VertexSet aStar;
};

std::vector<PenniesCase> SmallPenniesCases(int max_vertices) {
  std::vector<PenniesCase> out;
  for (const auto& [name, g] : fixtures::GraphsUpTo(max_vertices)) {
    g.all().forEachSubset([&](VertexSet a) { out.push_back({name, g, a}); });
  }
  return out;
}

}  // namespace

TEST(PenniesLabels, RoundTrip) {
  PenniesStrategy s;
  EXPECT_EQ(PenniesLabel(s), "pass");
  s.kind = PenniesStrategy::Kind::kBit;
  s.bit = 1;
  EXPECT_EQ(PenniesLabel(s), "1");
  s.kind = PenniesStrategy::Kind::kPennies;
  s.tails = {false, true, true};
  EXPECT_EQ(PenniesLabel(s), "p:H,T,T");
  const PenniesStrategy back = ParsePenniesLabel("p:H,T,T");
  EXPECT_TRUE(back.playsPennies());
  EXPECT_EQ(back.tails, s.tails);
  EXPECT_EQ(ParsePenniesLabel("0").bit, 0);
  for (const char* bad : {"", "2", "p:", "p:X", "p:H,", "p:HT", "PASS"}) {
    ExpectKind(ErrorKind::kInvalidStrategy, [&] { ParsePenniesLabel(bad); });
  }
}

TEST(PenniesGame, StrategySets) {
  const Graph g = fixtures::GraphByName("split");  // a-b, c isolated
  const Game game = BuildPenniesGame(g, g.setOf({"a"}));
  EXPECT_EQ(game.labels(g.index("a")), (std::vector<std::string>{"pass", "p:H", "p:T"}));
  EXPECT_EQ(game.labels(g.index("b")), (std::vector<std::string>{"0", "1", "p:H", "p:T"}));
  EXPECT_EQ(game.labels(g.index("c")), (std::vector<std::string>{"0", "1"}));
  const Game closed = BuildPenniesGame(g, g.all());
  EXPECT_EQ(closed.labels(g.index("c")), (std::vector<std::string>{"pass"}));

  const Graph g1 = fixtures::Gamma1();
  const Game path = BuildPenniesGame(g1, {});
  EXPECT_EQ(path.strategyCount(g1.index("b")), 2 + 4);
  EXPECT_EQ(EdgeOrientation(g1), g1.edges());
}

TEST(PenniesGame, PayoffsMatchTheRules) {
  for (const auto& c : SmallPenniesCases(3)) {
    const Game game = BuildPenniesGame(c.g, c.aStar);
    for (const Profile& p : AllProfiles(Sizes(game))) {
      for (int v = 0; v < c.g.size(); ++v) {
        ASSERT_EQ(Payoff(game, v, p), PenniesPayoff(game, c.aStar, v, p.choices()))
            << c.graph << " A*=" << c.g.format(c.aStar) << " " << game.format(p) << " v=" << v;
      }
    }
  }
}

TEST(PenniesGame, EquilibriumStructure) {
  for (const auto& c : SmallPenniesCases(4)) {
    if (c.graph == "k4") continue;  // 10^4 profiles for each of 16 sets; covered elsewhere
    const Game game = BuildPenniesGame(c.g, c.aStar);
    const auto ne = EnumerateNash(game);
    const auto classes = EquivClasses(c.g, c.aStar);
    for (const Profile& p : ne) {
      for (int v = 0; v < c.g.size(); ++v) {
        const PenniesStrategy s = ParsePenniesLabel(game.labels(v)[p[v]]);
        EXPECT_FALSE(s.playsPennies()) << c.graph;
        EXPECT_EQ(s.kind == PenniesStrategy::Kind::kPass, c.aStar.contains(v));
      }
      // Neighbourhoods outside A* agree.
      for (int v = 0; v < c.g.size(); ++v) {
        std::set<int> seen;
        (c.g.adjPlus(v) - c.aStar).forEach([&](int u) { seen.insert(p[u]); });
        EXPECT_LE(seen.size(), 1u);
      }
      // So do whole classes.
      for (VertexSet cls : classes) {
        std::set<int> seen;
        (cls - c.aStar).forEach([&](int u) { seen.insert(p[u]); });
        EXPECT_LE(seen.size(), 1u);
      }
    }
    for (VertexSet cls : classes) EXPECT_TRUE(Border(c.g, cls).subsetOf(c.aStar));
    for (int k : {0, 1}) {
      const Profile s = ConstantProfile(c.g, c.aStar, k);
      EXPECT_TRUE(IsNash(game, s));
      EXPECT_TRUE(std::binary_search(ne.begin(), ne.end(), s));
    }
  }
}

TEST(PenniesGame, ClosedSetsAreExactlyWhatTheGameDetermines) {
  SplitMix64 rng(71);
  for (const auto& [name, g] : fixtures::GraphsUpTo(4)) {
    if (name == "k4") continue;
    for (int i = 0; i < 3; ++i) {
      HypothesisSet h;
      for (int k = 0; k < 2; ++k) {
        const auto full = std::uint64_t{1} << g.size();
        h.push_back(Atom{VertexSet(static_cast<std::uint32_t>(rng.below(full))),
                         VertexSet(static_cast<std::uint32_t>(rng.below(full)))});
      }
      const ClosureMap map = ComputeClosureMap(g, h);
      CanonicalGames games(g);
      g.all().forEachSubset([&](VertexSet a) {
        const VertexSet star = map.closure(a);
        const EquilibriumSet& ne = games.equilibria(star);
        // Everything derivable holds in G_A.
        g.all().forEachSubset([&](VertexSet l) {
          EXPECT_TRUE(ne.holds(Atom{l, map.closure(l)})) << name;
        });
        // And A determines nothing outside its closure.
        (g.all() - star).forEach([&](int b) {
          EXPECT_FALSE(ne.holds(Atom{a, VertexSet::Single(b)})) << name;
        });
      });
    }
  }
}

TEST(ConstantProfiles, PassOnClosureBitElsewhere) {
  const Graph g = fixtures::Gamma3();
  const Profile p = ConstantProfile(g, g.setOf({"b"}), 1);
  const Game game = BuildPenniesGame(g, g.setOf({"b"}));
  EXPECT_EQ(game.format(p), "(1,pass,1)");
  ExpectKind(ErrorKind::kInvalidStrategy, [&] { ConstantProfile(g, {}, 2); });
}

TEST(Counterexample, PathWithoutShield) {
  const Graph g = fixtures::Gamma3();
  const Counterexample cx = MakeCounterexample(g, {A(g, "a |> c")}, A(g, "b |> c"));
  EXPECT_EQ(cx.aStar, g.setOf({"b"}));
  EXPECT_EQ(cx.witness, g.index("c"));
  EXPECT_TRUE(IsNash(cx.game, cx.first));
  EXPECT_TRUE(IsNash(cx.game, cx.second));
  EXPECT_TRUE(HoldsAtom(cx.game, A(g, "a |> c")));
  EXPECT_FALSE(HoldsAtom(cx.game, A(g, "b |> c")));
  EXPECT_TRUE(cx.first.agreesOn(cx.second, cx.refuted.lhs));
  EXPECT_NE(cx.first[cx.witness], cx.second[cx.witness]);
}

TEST(Counterexample, EmptyHypotheses) {
  const Graph g = fixtures::GraphByName("edge");
  const Counterexample cx = MakeCounterexample(g, {}, A(g, "a |> b"));
  EXPECT_EQ(cx.aStar, g.setOf({"a"}));
  EXPECT_FALSE(HoldsAtom(cx.game, A(g, "a |> b")));
  EXPECT_EQ(cx.game.format(cx.first), "(pass,0)");
  EXPECT_EQ(cx.game.format(cx.second), "(pass,1)");
}

TEST(Counterexample, DerivableAtomsHaveNone) {
  const Graph g = fixtures::Gamma1();
  ExpectKind(ErrorKind::kNoCounterexample,
             [&] { MakeCounterexample(g, {A(g, "a |> d")}, A(g, "b,c |> d")); });
  ExpectKind(ErrorKind::kNoCounterexample, [&] { MakeCounterexample(g, {}, A(g, "a |> a")); });
}

TEST(Product, EquilibriaFactorAndDependenceIsConjunctive) {
  const Graph g = fixtures::GraphByName("edge");
  std::vector<Game> games;
  for (std::uint64_t seed = 0; seed < 6; ++seed) games.push_back(RandomGame(g, {2, 2}, 1, seed));
  games.push_back(fixtures::CoordinationGame());
  games.push_back(fixtures::MatchingPenniesGame());
  for (const Game& x : games) {
    for (const Game& y : games) {
      const std::vector<Game> factors = {x, y};
      const Game prod = ProductGame(factors);
      const auto nx = EnumerateNash(x), ny = EnumerateNash(y), np = EnumerateNash(prod);
      std::set<Profile> expected;
      for (const Profile& p : nx) {
        for (const Profile& q : ny) expected.insert(CombineProfiles(factors, {p, q}));
      }
      EXPECT_EQ(std::set<Profile>(np.begin(), np.end()), expected);
      for (const Profile& p : np) {
        const auto parts = SplitProductProfile(factors, p);
        EXPECT_EQ(CombineProfiles(factors, parts), p);
      }
      if (nx.empty() || ny.empty()) continue;
      g.all().forEachSubset([&](VertexSet l) {
        g.all().forEachSubset([&](VertexSet r) {
          const Atom a{l, r};
          EXPECT_EQ(HoldsAtom(prod, a), HoldsAtom(x, a) && HoldsAtom(y, a));
        });
      });
    }
  }
}

TEST(Product, LabelsPayoffsAndErrors) {
  const Game x = fixtures::CoordinationGame();
  const Game y = fixtures::MatchingPenniesGame();
  const Game prod = ProductGame({x, y});
  EXPECT_EQ(prod.labels(0).front(), "(a1;heads)");
  EXPECT_EQ(prod.strategyCount(0), 4);
  const Profile p = CombineProfiles({x, y}, {Profile({0, 0}), Profile({0, 1})});
  EXPECT_EQ(Payoff(prod, 0, p), Payoff(x, 0, Profile({0, 0})) + Payoff(y, 0, Profile({0, 1})));
  ExpectKind(ErrorKind::kInvalidGraph, [&] { ProductGame({x, fixtures::ParityGame()}); });
  ExpectKind(ErrorKind::kTooLarge, [&] { ProductGame({x, y}, 15); });
}

TEST(FormulaCounterexample, RefutesUnderivableFormulas) {
  const Graph g = fixtures::Gamma2();
  CanonicalGames games(g);
  const Formula f = Parse("(a |> d) -> (b,c |> d)", g);
  const FormulaCounterexample cx = games.counterexample(f);
  EXPECT_FALSE(Models(cx.game, f));
  EXPECT_FALSE(EvalProp(f, cx.assignment.truth));
  for (const auto& [atom, value] : cx.assignment.truth) {
    EXPECT_EQ(HoldsAtom(cx.game, atom), value) << Render(atom, g);
  }
  ExpectKind(ErrorKind::kNoCounterexample,
             [&] { games.counterexample(Parse("a |> d -> b,c |> d -> a |> d", g)); });
}

TEST(FormulaCounterexample, RandomSmallFormulas) {
  SplitMix64 rng(73);
  for (const char* name : {"edge", "gamma3", "triangle", "split"}) {
    const Graph g = fixtures::GraphByName(name);
    CanonicalGames games(g);
    Decider decider(g);
    int refuted = 0;
    for (int i = 0; i < 12; ++i) {
      const auto full = std::uint64_t{1} << g.size();
      auto atom = [&] {
        return Formula::Dep(Atom{VertexSet(static_cast<std::uint32_t>(rng.below(full))),
                                 VertexSet(static_cast<std::uint32_t>(rng.below(full)))});
      };
      const Formula f = rng.below(3) == 0 ? Formula::Not(atom())
                                          : Formula::Implies(atom(), atom());
      if (decider.derivable(f)) continue;
      const FormulaCounterexample cx = games.counterexample(f);
      EXPECT_FALSE(Models(cx.game, f)) << name << " " << Render(f, g);
      ++refuted;
    }
    EXPECT_GT(refuted, 0) << name;
  }
}
