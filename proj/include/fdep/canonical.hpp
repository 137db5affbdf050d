#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fdep/derivation.hpp"
#include "fdep/game.hpp"

namespace fdep {

// A strategy in the pennies game: pass, a bit, or one heads/tails face per
// neighbour (in ascending neighbour order).
struct PenniesStrategy {
  enum class Kind { kPass, kBit, kPennies };
  Kind kind = Kind::kPass;
  int bit = 0;
  std::vector<bool> tails;

  bool playsPennies() const { return kind == Kind::kPennies; }
};

// "pass", "0", "1", or "p:H,T,..." with one face per neighbour.
std::string PenniesLabel(const PenniesStrategy& s);
// Throws Error(kInvalidStrategy) for anything else.
PenniesStrategy ParsePenniesLabel(const std::string& label);

// Every edge as (tail, head); the tail is the lexicographically smaller name.
std::vector<std::pair<VertexIndex, VertexIndex>> EdgeOrientation(const Graph& g);

// Players in aStar choose pass or pennies, the others choose 0, 1 or pennies;
// isolated players never get pennies strategies. Along an oriented edge where
// both ends play pennies, the tail earns 1 for matching and the head earns 1
// for mismatching. A player not playing pennies pays 1 whenever Adj+(v) minus
// aStar contains both a 0 and a 1 (v itself included).
Game BuildPenniesGame(const Graph& g, VertexSet a_star);

// pass on aStar, bit k elsewhere.
Profile ConstantProfile(const Graph& g, VertexSet a_star, int k);

// Component-wise product: strategy labels are tuples "(s1;s2;...)", payoffs
// are sums of the factor payoffs. Throws Error(kInvalidGraph) when the graphs
// differ and Error(kTooLarge) when the product exceeds guard profiles.
Game ProductGame(const std::vector<Game>& factors,
                 std::uint64_t guard = EnumerationOptions{}.guard);

// Per-factor profiles of a product profile, and back.
std::vector<Profile> SplitProductProfile(const std::vector<Game>& factors,
                                         const Profile& p);
Profile CombineProfiles(const std::vector<Game>& factors,
                        const std::vector<Profile>& parts);

struct Counterexample {
  Game game;
  Profile first;   // pass on aStar, 0 elsewhere
  Profile second;  // pass on aStar, 1 elsewhere
  Atom refuted;
  VertexSet aStar;
  VertexIndex witness = 0;  // member of refuted.rhs outside aStar
};

struct FormulaCounterexample {
  Game game;
  RealizableAssignment assignment;
};

// Pennies games over one graph, with their equilibria cached by aStar.
class CanonicalGames {
 public:
  explicit CanonicalGames(Graph g, ClosureOptions closure = {},
                          EnumerationOptions enumeration = {});

  const Graph& graph() const { return graph_; }
  const Game& game(VertexSet a_star);
  const EquilibriumSet& equilibria(VertexSet a_star);

  // A single pennies game in which every atom of h holds and a fails, with
  // the two constant profiles as witnesses. Throws Error(kNoCounterexample)
  // if a is derivable from h, and Error(kInternalSoundness) if the built
  // game does not verify.
  Counterexample counterexample(const HypothesisSet& h, const Atom& a);
  // Same, with the closure map of h supplied by the caller.
  Counterexample counterexample(const HypothesisSet& h, const ClosureMap& map,
                                const Atom& a);

  // A finite game refuting an underivable formula: the product of the
  // pennies games for the false atoms of a realizable falsifying assignment.
  // Throws Error(kNoCounterexample) if f is derivable.
  FormulaCounterexample counterexample(const Formula& f);

 private:
  struct Entry {
    Game game;
    std::unique_ptr<EquilibriumSet> equilibria;
  };
  Entry& entry(VertexSet a_star);

  Graph graph_;
  ClosureOptions closure_;
  EnumerationOptions enumeration_;
  std::map<std::uint32_t, Entry> cache_;
};

Counterexample MakeCounterexample(const Graph& g, const HypothesisSet& h,
                                  const Atom& a);

}  // namespace fdep
