#include <algorithm>
#include <set>

#include "gtest/gtest.h"

#include "fdep/fixtures.hpp"
#include "fdep/game.hpp"
#include "fdep/rng.hpp"
#include "support.hpp"

using namespace fdep;
using namespace fdep::test_support;

namespace {

std::vector<std::string> Formatted(const Game& game, const std::vector<Profile>& ps) {
  std::vector<std::string> out;
  for (const Profile& p : ps) out.push_back(game.format(p));
  return out;
}

Atom A(const Graph& g, const std::string& text) { return ParseAtom(text, g); }

// Payoffs drawn from a hash of (seed, v, local strategies), so the test can
// recompute them without going through the game.
std::int64_t HashedPayoff(std::uint64_t seed, const Graph& g, int v,
                          const std::vector<int>& p, int bound) {
  std::uint64_t h = seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(v);
  g.adjPlus(v).forEach([&](VertexIndex u) {
    h = SplitMix64(h ^ (static_cast<std::uint64_t>(p[u]) << 8 | u)).next();
  });
  return static_cast<std::int64_t>(h % (2 * bound + 1)) - bound;
}

}  // namespace

TEST(Nash, CoordinationGame) {
  const Game game = fixtures::CoordinationGame();
  const auto ne = EnumerateNash(game);
  EXPECT_EQ(Formatted(game, ne), (std::vector<std::string>{"(a1,b1)", "(a2,b2)"}));
  EXPECT_TRUE(HoldsAtom(game, A(game.graph(), "a |> b")));
  EXPECT_TRUE(HoldsAtom(game, A(game.graph(), "b |> a")));
}

TEST(Nash, AsymmetricGame) {
  const Game game = fixtures::AsymmetricGame();
  EXPECT_EQ(Formatted(game, EnumerateNash(game)),
            (std::vector<std::string>{"(a1,b1)", "(a2,b2)", "(a3,b1)"}));
  EXPECT_TRUE(HoldsAtom(game, A(game.graph(), "a |> b")));
  EXPECT_FALSE(HoldsAtom(game, A(game.graph(), "b |> a")));
}

TEST(Nash, ParityGameHasTheEvenProfiles) {
  const Game game = fixtures::ParityGame();
  EXPECT_EQ(Formatted(game, EnumerateNash(game)),
            (std::vector<std::string>{"(0,0,0)", "(0,1,1)", "(1,0,1)", "(1,1,0)"}));
  EXPECT_TRUE(HoldsAtom(game, A(game.graph(), "a,b |> c")));
  EXPECT_FALSE(HoldsAtom(game, A(game.graph(), "a |> c")));
}

TEST(Nash, RockPaperScissorsAgainstDirectEnumeration) {
  const Game game = fixtures::RockPaperScissorsGame();
  const Graph& g = game.graph();
  const int a = g.index("a"), b = g.index("b"), c = g.index("c"), d = g.index("d");
  // rock 0, paper 1, scissors 2: paper beats rock, scissors beat paper, rock
  // beats scissors.
  auto beats = [](int x, int y) {
    return (x == 1 && y == 0) || (x == 2 && y == 1) || (x == 0 && y == 2);
  };
  const PayoffOracle payoff = [&](int v, const std::vector<int>& p) {
    if (v == a || v == d || p[a] == p[d]) return Rational(0);
    const int self = p[v];
    const int other = v == b ? p[c] : p[b];
    return Rational(beats(self, other) ? 1 : beats(other, self) ? -1 : 0);
  };
  const auto expected = NashByDefinition(Sizes(game), payoff);
  EXPECT_EQ(expected.size(), 27u);
  EXPECT_EQ(EnumerateNash(game), expected);
  EXPECT_TRUE(HoldsAtom(game, A(g, "a |> d")));
  EXPECT_FALSE(HoldsAtom(game, A(g, "b,c |> d")));
  EXPECT_FALSE(Models(game, Parse("(a |> d) -> (b,c |> d)", g)));
  EXPECT_EQ(game.profileCount(), 81u);
}

TEST(Nash, MatchingPenniesHasNoPureEquilibrium) {
  const Game game = fixtures::MatchingPenniesGame();
  const PayoffOracle payoff = [](int v, const std::vector<int>& p) {
    return Rational((v == 0) == (p[0] == p[1]) ? 1 : 0);
  };
  EXPECT_TRUE(NashByDefinition(Sizes(game), payoff).empty());
  const EquilibriumSet ne(game);
  EXPECT_TRUE(ne.empty());
  // Vacuous truth: every atom holds.
  EXPECT_TRUE(ne.holds(A(game.graph(), ". |> a,b")));
  EXPECT_FALSE(ne.models(Formula::Falsum()));
}

TEST(Nash, EnumerationMatchesDefinitionOnRandomGames) {
  SplitMix64 rng(2024);
  for (const auto& [name, g] : fixtures::GraphsUpTo(4)) {
    for (int round = 0; round < 20; ++round) {
      std::vector<std::vector<std::string>> labels(g.size());
      std::vector<int> sizes(g.size());
      for (int v = 0; v < g.size(); ++v) {
        sizes[v] = static_cast<int>(rng.between(1, 3));
        for (int s = 0; s < sizes[v]; ++s) labels[v].push_back("s" + std::to_string(s));
      }
      const std::uint64_t seed = rng.next();
      const int bound = static_cast<int>(rng.between(0, 3));
      const Game game = Game::FromFunction(g, labels, [&](VertexIndex v, const Profile& p) {
        return Rational(HashedPayoff(seed, g, v, p.choices(), bound));
      });
      const auto expected = NashByDefinition(sizes, [&](int v, const std::vector<int>& p) {
        return Rational(HashedPayoff(seed, g, v, p, bound));
      });
      EXPECT_EQ(EnumerateNash(game), expected) << name;
      for (const Profile& p : AllProfiles(sizes)) {
        EXPECT_EQ(IsNash(game, p),
                  std::binary_search(expected.begin(), expected.end(), p));
      }
    }
  }
}

TEST(Nash, ThreadCountDoesNotChangeTheResult) {
  const Graph g = fixtures::GraphByName("k4");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Game game = RandomGame(g, {3, 3, 3, 3}, 1, seed);
    EnumerationOptions one, many;
    many.threads = 4;
    EXPECT_EQ(EnumerateNash(game, one), EnumerateNash(game, many));
    many.threads = 7;
    EXPECT_EQ(EnumerateNash(game, one), EnumerateNash(game, many));
  }
}

TEST(Nash, GuardLimitsTheProfileSpace) {
  const Game game = fixtures::RockPaperScissorsGame();
  EnumerationOptions options;
  options.guard = 80;
  ExpectKind(ErrorKind::kTooLarge, [&] { EnumerateNash(game, options); });
  options.guard = 81;
  EXPECT_EQ(EnumerateNash(game, options).size(), 27u);
}

TEST(Nash, ExactRationalComparison) {
  // 1/3 and 2/6 are equal, so neither player strictly improves.
  const Graph g({"a", "b"}, {{"a", "b"}});
  const Game game = Game::FromFunction(
      g, {{"x", "y"}, {"x"}}, [](VertexIndex v, const Profile& p) {
        if (v == 1) return Rational(0);
        return p[0] == 0 ? Rational(1, 3) : Rational(2, 6);
      });
  EXPECT_EQ(EnumerateNash(game).size(), 2u);
  const Game tilted = Game::FromFunction(
      g, {{"x", "y"}, {"x"}}, [](VertexIndex v, const Profile& p) {
        if (v == 1) return Rational(0);
        return p[0] == 0 ? Rational(1, 3) : Rational(333333, 1000000);
      });
  EXPECT_EQ(Formatted(tilted, EnumerateNash(tilted)), (std::vector<std::string>{"(x,x)"}));
}

TEST(Rationals, ParseAndFormat) {
  EXPECT_EQ(ParseRational("7"), Rational(7));
  EXPECT_EQ(ParseRational("-3"), Rational(-3));
  EXPECT_EQ(ParseRational("2/4"), Rational(1, 2));
  EXPECT_EQ(ParseRational("-2/5"), Rational(-2, 5));
  EXPECT_EQ(FormatRational(Rational(3, 6)), "1/2");
  EXPECT_EQ(FormatRational(Rational(-4)), "-4");
  for (const char* bad : {"", "1/0", "x", "1/", "/2", "1.5", "--1"}) {
    ExpectKind(ErrorKind::kFormat, [&] { ParseRational(bad); });
  }
}

TEST(Game, RejectsMalformedTables) {
  const Graph g({"a", "b"}, {{"a", "b"}});
  ExpectKind(ErrorKind::kIncompleteGame,
             [&] { Game(g, {{"x"}, {"y"}}, {{Rational(0)}}); });
  ExpectKind(ErrorKind::kIncompleteGame,
             [&] { Game(g, {{"x", "z"}, {"y"}}, {{Rational(0)}, {Rational(0)}}); });
  ExpectKind(ErrorKind::kIncompleteGame, [&] { Game(g, {{}, {"y"}}, {{}, {}}); });
  const Game game = fixtures::CoordinationGame();
  ExpectKind(ErrorKind::kInvalidStrategy, [&] { game.strategyIndex(0, "b1"); });
  ExpectKind(ErrorKind::kInvalidStrategy, [&] { game.checkProfile(Profile({0})); });
  ExpectKind(ErrorKind::kInvalidStrategy, [&] { game.checkProfile(Profile({0, 2})); });
  EXPECT_EQ(game.strategyIndex(1, "b2"), 1);
}

TEST(Game, PayoffsOnlyReadTheNeighbourhood) {
  const Graph g = fixtures::Gamma1();
  const Game game = RandomGame(g, {2, 2, 2, 2}, 5, 99);
  for (const Profile& p : AllProfiles({2, 2, 2, 2})) {
    Profile q = p;
    q[3] = 1 - q[3];  // d is not adjacent to a
    EXPECT_EQ(Payoff(game, 0, p), Payoff(game, 0, q));
  }
  EXPECT_EQ(game.localPlayers(1), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(game.table(0).size(), 4u);
}

TEST(RandomGames, Deterministic) {
  const Graph g = fixtures::Gamma2();
  const Game x = RandomGame(g, {2, 3, 1, 2}, 4, 5);
  const Game y = RandomGame(g, {2, 3, 1, 2}, 4, 5);
  const Game z = RandomGame(g, {2, 3, 1, 2}, 4, 6);
  bool differs = false;
  for (int v = 0; v < g.size(); ++v) {
    EXPECT_EQ(x.table(v), y.table(v));
    for (const Rational& r : x.table(v)) EXPECT_LE(abs(r), 4);
    differs = differs || x.table(v) != z.table(v);
  }
  EXPECT_TRUE(differs);
  ExpectKind(ErrorKind::kInvalidStrategy, [&] { RandomGame(g, {2, 0, 1, 2}, 4, 5); });
}

TEST(RandomGames, ZeroBoundMakesEveryProfileAnEquilibrium) {
  const Game game = RandomGame(fixtures::Gamma1(), {2, 3, 2, 1}, 0, 11);
  EXPECT_EQ(EnumerateNash(game).size(), 12u);
}

TEST(Stitch, SplicesAlongTheCut) {
  const Graph g = fixtures::Gamma3();
  const Profile p({0, 0, 0});
  const Profile q({0, 1, 1});
  const Cut cut{g.setOf({"a"}), g.setOf({"b", "c"})};
  EXPECT_EQ(Stitch(p, q, cut), q);
  EXPECT_EQ(Stitch(p, p, cut), p);
  EXPECT_EQ(Stitch(p, q, Cut{g.all(), {}}), p);
  EXPECT_EQ(Stitch(Profile({1, 0, 2}), Profile({0, 1, 1}), Cut{g.setOf({"a", "c"}), g.setOf({"b"})}),
            Profile({1, 1, 2}));
}

TEST(Holds, AgreesWithDefinitionOnRandomGames) {
  for (const auto& [name, g] : fixtures::GraphsUpTo(4)) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Game game = RandomGame(g, std::vector<int>(g.size(), 2), 1, seed);
      const EquilibriumSet ne(game);
      g.all().forEachSubset([&](VertexSet l) {
        g.all().forEachSubset([&](VertexSet r) {
          const Atom atom{l, r};
          EXPECT_EQ(ne.holds(atom), HoldsByDefinition(ne.profiles(), atom)) << name;
          if (r.subsetOf(l)) EXPECT_TRUE(ne.holds(atom));
        });
      });
    }
  }
}
