#include "fdep/fixtures.hpp"

#include "fdep/canonical.hpp"
#include "fdep/derivation.hpp"
#include "fdep/error.hpp"

namespace fdep::fixtures {

Graph Gamma1() { return Graph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}}); }

Graph Gamma2() {
  return Graph({"a", "b", "c", "d"},
               {{"a", "b"}, {"a", "c"}, {"b", "c"}, {"b", "d"}, {"c", "d"}});
}

Graph Gamma3() { return Graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

Graph Gamma4() {
  return Graph({"a", "b", "c", "d", "e"},
               {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}, {"d", "e"}});
}

Graph Gamma5() {
  return Graph({"a", "b", "c", "d", "e", "f"}, {{"a", "d"},
                                                {"b", "e"},
                                                {"c", "f"},
                                                {"d", "e"},
                                                {"e", "f"},
                                                {"d", "f"}});
}

std::vector<NamedGraph> AllGraphs() {
  return {
      {"gamma1", Gamma1()},
      {"gamma2", Gamma2()},
      {"gamma3", Gamma3()},
      {"gamma4", Gamma4()},
      {"gamma5", Gamma5()},
      {"edge", Graph({"a", "b"}, {{"a", "b"}})},
      {"triangle", CompleteGraph({"a", "b", "c"})},
      {"k4", CompleteGraph({"a", "b", "c", "d"})},
      {"star", Graph({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"a", "d"}})},
      {"split", Graph({"a", "b", "c"}, {{"a", "b"}})},
      {"empty3", Graph({"a", "b", "c"}, {})},
  };
}

std::vector<NamedGraph> GraphsUpTo(int max_vertices) {
  std::vector<NamedGraph> out;
  for (auto& ng : AllGraphs()) {
    if (ng.graph.size() <= max_vertices) out.push_back(std::move(ng));
  }
  return out;
}

Graph GraphByName(const std::string& name) {
  for (auto& ng : AllGraphs()) {
    if (ng.name == name) return std::move(ng.graph);
  }
  throw Error(ErrorKind::kFormat, "no fixture graph named '" + name + "'");
}

namespace {

Graph Edge() { return Graph({"a", "b"}, {{"a", "b"}}); }

}  // namespace

Game CoordinationGame() {
  return Game::FromFunction(Edge(), {{"a1", "a2"}, {"b1", "b2"}},
                            [](VertexIndex, const Profile& p) {
                              return Rational(p[0] == p[1] ? 1 : 0);
                            });
}

Game AsymmetricGame() {
  // a3 behaves like a1.
  return Game::FromFunction(Edge(), {{"a1", "a2", "a3"}, {"b1", "b2"}},
                            [](VertexIndex, const Profile& p) {
                              const int row = p[0] == 2 ? 0 : p[0];
                              return Rational(row == p[1] ? 1 : 0);
                            });
}

Game ParityGame() {
  return Game::FromFunction(CompleteGraph({"a", "b", "c"}),
                            {{"0", "1"}, {"0", "1"}, {"0", "1"}},
                            [](VertexIndex, const Profile& p) {
                              return Rational((p[0] + p[1] + p[2]) % 2 == 0 ? 1 : 0);
                            });
}

Game CopyGame() {
  return Game::FromFunction(CompleteGraph({"a", "b", "c"}),
                            {{"0", "1"}, {"0", "1"}, {"0", "1"}},
                            [](VertexIndex, const Profile& p) {
                              return Rational(p[0] == p[1] && p[1] == p[2] ? 1 : 0);
                            });
}

Game RockPaperScissorsGame() {
  const std::vector<std::string> rps = {"rock", "paper", "scissors"};
  const Graph g = Gamma2();
  const VertexIndex a = g.index("a");
  const VertexIndex b = g.index("b");
  const VertexIndex c = g.index("c");
  const VertexIndex d = g.index("d");
  // +1 if x beats y, -1 if y beats x, 0 on a tie.
  auto score = [](int x, int y) {
    if (x == y) return 0;
    return (x - y + 3) % 3 == 1 ? 1 : -1;
  };
  return Game::FromFunction(g, {rps, rps, rps, rps},
                            [=](VertexIndex v, const Profile& p) {
                              if (v == a || v == d || p[a] == p[d]) return Rational(0);
                              return Rational(v == b ? score(p[b], p[c])
                                                     : score(p[c], p[b]));
                            });
}

Game MatchingPenniesGame() {
  return Game::FromFunction(Edge(), {{"heads", "tails"}, {"heads", "tails"}},
                            [](VertexIndex v, const Profile& p) {
                              const bool match = p[0] == p[1];
                              return Rational((v == 0) == match ? 1 : 0);
                            });
}

Game ConstantGame(const Graph& g, int strategies) {
  std::vector<std::string> labels;
  for (int s = 0; s < strategies; ++s) labels.push_back(std::to_string(s));
  return Game::FromFunction(
      g, std::vector<std::vector<std::string>>(g.size(), labels),
      [](VertexIndex, const Profile&) { return Rational(0); });
}

std::vector<NamedGame> AllGames() {
  return {
      {"coordination", CoordinationGame()},
      {"asymmetric", AsymmetricGame()},
      {"parity", ParityGame()},
      {"copy", CopyGame()},
      {"rps", RockPaperScissorsGame()},
      {"matching_pennies", MatchingPenniesGame()},
      {"constant_gamma1", ConstantGame(Gamma1(), 2)},
  };
}

Game GameByName(const std::string& name) {
  for (auto& ng : AllGames()) {
    if (ng.name == name) return std::move(ng.game);
  }
  throw Error(ErrorKind::kFormat, "no fixture game named '" + name + "'");
}

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kModels: return "models";
    case Verdict::kNotModels: return "does not model";
    case Verdict::kDerivable: return "derivable";
    case Verdict::kNotDerivable: return "not derivable";
    case Verdict::kCounterexample: return "counterexample exists";
  }
  return "?";
}

std::vector<FixtureCase> AllCases() {
  using V = Verdict;
  return {
      {"coordination-a-b", "edge", "coordination", {}, "a |> b", V::kModels,
       "coordination game: each player's choice reveals the other's"},
      {"coordination-b-a", "edge", "coordination", {}, "b |> a", V::kModels,
       "coordination game, reverse direction"},
      {"asymmetric-a-b", "edge", "asymmetric", {}, "a |> b", V::kModels,
       "three-row coordination variant: a's choice fixes b"},
      {"asymmetric-b-a", "edge", "asymmetric", {}, "b |> a", V::kNotModels,
       "three-row coordination variant: b1 is played against a1 and a3"},
      {"parity-ab-c", "triangle", "parity", {}, "a,b |> c", V::kModels,
       "parity game: any two bits fix the third"},
      {"parity-a-c", "triangle", "parity", {}, "a |> c", V::kNotModels,
       "parity game: one bit alone fixes nothing"},
      {"copy-a-bc", "triangle", "copy", {}, "a |> b,c", V::kModels,
       "all-equal game: one player's bit fixes both others"},
      {"rps-a-d", "gamma2", "rps", {}, "a |> d", V::kModels,
       "rock-paper-scissors game: equilibria need a and d to agree"},
      {"rps-bc-d", "gamma2", "rps", {}, "b,c |> d", V::kNotModels,
       "rock-paper-scissors game: b and c are free in equilibrium"},
      {"rps-separator", "gamma2", "rps", {}, "(a |> d) -> (b,c |> d)", V::kNotModels,
       "a two-vertex separator is not enough when the separators are adjacent"},
      {"gamma1-separator", "gamma1", {}, {}, "a |> d -> b,c |> d", V::kDerivable,
       "path: the middle pair shields d from a"},
      {"gamma1-two-sided", "gamma1", {}, {},
       "a,c |> d -> (d,b |> a -> b,c |> a,d)", V::kDerivable,
       "path: dependences on both ends combine"},
      {"gamma4-cut", "gamma4", {}, {}, "a,c |> e -> b,c,d |> e", V::kDerivable,
       "cut ({a,b,c},{d,e}) re-bases a,c |> e on the borders"},
      {"gamma5-cycle", "gamma5", {}, {},
       "a |> b -> b |> c -> c |> a -> d,e,f |> a,b,c", V::kDerivable,
       "triangle with pendants: the inner triangle determines the pendants"},
      {"gamma3-no-shield", "gamma3", {}, {}, "(a |> c) -> (b |> c)", V::kNotDerivable,
       "path a-b-c: b alone does not inherit a's dependence"},
      {"gamma2-no-separator", "gamma2", {}, {}, "(a |> d) -> (b,c |> d)",
       V::kNotDerivable, "the rock-paper-scissors game refutes this"},
      {"falsum", "gamma1", {}, {}, "false", V::kNotDerivable,
       "the constant game is a model, so the system is consistent"},
      {"gamma3-counterexample", "gamma3", {}, {"a |> c"}, "b |> c",
       V::kCounterexample, "finite stand-in for an infinite-strategy example"},
      {"edge-counterexample", "edge", {}, {}, "a |> b", V::kCounterexample,
       "no hypotheses: a does not determine its neighbour"},
  };
}

bool Reproduces(const FixtureCase& c) {
  const Graph g = GraphByName(c.graph);
  HypothesisSet hyps;
  for (const auto& h : c.hypotheses) hyps.push_back(ParseAtom(h, g));
  switch (c.expected) {
    case Verdict::kModels:
    case Verdict::kNotModels: {
      if (!c.game) throw Error(ErrorKind::kFormat, "case '" + c.name + "' needs a game");
      const Game game = GameByName(*c.game);
      const bool holds = Models(game, Parse(c.formula, game.graph()));
      return holds == (c.expected == Verdict::kModels);
    }
    case Verdict::kDerivable:
    case Verdict::kNotDerivable: {
      std::vector<Formula> premises;
      for (const Atom& a : hyps) premises.push_back(Formula::Dep(a));
      const Formula f = Formula::Chain(premises, Parse(c.formula, g));
      return DecideFormula(g, f) == (c.expected == Verdict::kDerivable);
    }
    case Verdict::kCounterexample: {
      try {
        MakeCounterexample(g, hyps, ParseAtom(c.formula, g));
        return true;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kNoCounterexample) return false;
        throw;
      }
    }
  }
  return false;
}

}  // namespace fdep::fixtures
