#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdep/game.hpp"
#include "fdep/graph.hpp"

namespace fdep::fixtures {

// Named dependency graphs. gamma1..gamma5 are reconstructions chosen to
// satisfy the border and separation facts the worked examples rely on:
//   gamma1  path a-b-c-d
//   gamma2  a-b, a-c, b-c, b-d, c-d   (b and c separate a from d, and are
//                                      adjacent so their payoffs can read
//                                      each other)
//   gamma3  path a-b-c
//   gamma4  a-b, a-c, b-d, c-d, d-e
//   gamma5  triangle d-e-f with pendants a-d, b-e, c-f
Graph Gamma1();
Graph Gamma2();
Graph Gamma3();
Graph Gamma4();
Graph Gamma5();

struct NamedGraph {
  std::string name;
  Graph graph;
};

// gamma1..gamma5 plus small structural cases (single edge, triangle, K4,
// star, a disconnected graph, an edgeless graph).
std::vector<NamedGraph> AllGraphs();
std::vector<NamedGraph> GraphsUpTo(int max_vertices);
Graph GraphByName(const std::string& name);

// Two players a-b. a1/b1 and a2/b2 pay (1,1), mismatches (0,0).
Game CoordinationGame();
// As the coordination game with a third row a3 identical to a1.
Game AsymmetricGame();
// Three players over K3 choosing bits; everyone gets 1 iff the sum is even.
Game ParityGame();
// Three players over K3 choosing bits; everyone gets 1 iff all bits agree.
Game CopyGame();
// Over gamma2: a and d score 0; b and c play rock-paper-scissors (win 1,
// tie 0, loss -1) unless a and d pick the same strategy, in which case they
// score 0.
Game RockPaperScissorsGame();
// One edge, two faces each; a earns 1 for matching, b for mismatching.
Game MatchingPenniesGame();
// Every payoff 0; `strategies` labels "0".."k-1" per player.
Game ConstantGame(const Graph& g, int strategies);

struct NamedGame {
  std::string name;
  Game game;
};
std::vector<NamedGame> AllGames();
Game GameByName(const std::string& name);

enum class Verdict { kModels, kNotModels, kDerivable, kNotDerivable, kCounterexample };

const char* VerdictName(Verdict v);

struct FixtureCase {
  std::string name;
  std::string graph;                // key into AllGraphs()
  std::optional<std::string> game;  // key into AllGames()
  std::vector<std::string> hypotheses;
  std::string formula;
  Verdict expected;
  std::string note;
};

std::vector<FixtureCase> AllCases();

// Re-runs the operation a case refers to and reports whether the verdict
// matches. Throws on malformed cases.
bool Reproduces(const FixtureCase& c);

}  // namespace fdep::fixtures
