#include "fdep/canonical.hpp"

#include <algorithm>
#include <set>

#include "fdep/error.hpp"

namespace fdep {

std::string PenniesLabel(const PenniesStrategy& s) {
  switch (s.kind) {
    case PenniesStrategy::Kind::kPass:
      return "pass";
    case PenniesStrategy::Kind::kBit:
      return std::to_string(s.bit);
    case PenniesStrategy::Kind::kPennies: {
      std::string out = "p:";
      for (std::size_t i = 0; i < s.tails.size(); ++i) {
        if (i > 0) out += ',';
        out += s.tails[i] ? 'T' : 'H';
      }
      return out;
    }
  }
  return "";
}

PenniesStrategy ParsePenniesLabel(const std::string& label) {
  PenniesStrategy s;
  if (label == "pass") return s;
  if (label == "0" || label == "1") {
    s.kind = PenniesStrategy::Kind::kBit;
    s.bit = label[0] - '0';
    return s;
  }
  auto bad = [&]() {
    return Error(ErrorKind::kInvalidStrategy,
                 "'" + label + "' is not a pennies-game strategy");
  };
  if (label.size() < 3 || label.compare(0, 2, "p:") != 0) throw bad();
  s.kind = PenniesStrategy::Kind::kPennies;
  for (std::size_t i = 2; i < label.size(); ++i) {
    const bool face_slot = (i % 2) == 0;
    if (face_slot) {
      if (label[i] != 'H' && label[i] != 'T') throw bad();
      s.tails.push_back(label[i] == 'T');
    } else if (label[i] != ',') {
      throw bad();
    }
  }
  if (label.size() % 2 == 0) throw bad();  // trailing comma
  return s;
}

std::vector<std::pair<VertexIndex, VertexIndex>> EdgeOrientation(const Graph& g) {
  // Graph::edges() already lists (smaller, larger) pairs, and indices follow
  // name order.
  return g.edges();
}

namespace {

std::vector<PenniesStrategy> StrategiesFor(const Graph& g, VertexSet a_star,
                                           VertexIndex v) {
  std::vector<PenniesStrategy> out;
  if (a_star.contains(v)) {
    out.push_back(PenniesStrategy{});
  } else {
    out.push_back(PenniesStrategy{PenniesStrategy::Kind::kBit, 0, {}});
    out.push_back(PenniesStrategy{PenniesStrategy::Kind::kBit, 1, {}});
  }
  const int degree = g.adj(v).size();
  if (degree == 0) return out;
  for (std::uint32_t faces = 0; faces < (std::uint32_t{1} << degree); ++faces) {
    PenniesStrategy s{PenniesStrategy::Kind::kPennies, 0, {}};
    for (int i = 0; i < degree; ++i) s.tails.push_back((faces >> i) & 1u);
    out.push_back(std::move(s));
  }
  return out;
}

// Position of u among v's neighbours.
int NeighbourSlot(const Graph& g, VertexIndex v, VertexIndex u) {
  const VertexSet below(g.adj(v).mask() & ((VertexSet::Mask{1} << u) - 1));
  return below.size();
}

}  // namespace

Game BuildPenniesGame(const Graph& g, VertexSet a_star) {
  g.checkSubset(a_star);
  const int n = g.size();
  std::vector<std::vector<PenniesStrategy>> strategies(n);
  std::vector<std::vector<std::string>> labels(n);
  for (VertexIndex v = 0; v < n; ++v) {
    strategies[v] = StrategiesFor(g, a_star, v);
    for (const auto& s : strategies[v]) labels[v].push_back(PenniesLabel(s));
  }
  return Game::FromFunction(
      g, std::move(labels), [&](VertexIndex v, const Profile& p) -> Rational {
        const PenniesStrategy& mine = strategies[v][p[v]];
        if (mine.playsPennies()) {
          int reward = 0;
          g.adj(v).forEach([&](VertexIndex u) {
            const PenniesStrategy& theirs = strategies[u][p[u]];
            if (!theirs.playsPennies()) return;
            const bool my_face = mine.tails[NeighbourSlot(g, v, u)];
            const bool their_face = theirs.tails[NeighbourSlot(g, u, v)];
            const bool tail = v < u;
            if (tail == (my_face == their_face)) ++reward;
          });
          return Rational(reward);
        }
        bool zero = false;
        bool one = false;
        (g.adjPlus(v) - a_star).forEach([&](VertexIndex u) {
          const PenniesStrategy& s = strategies[u][p[u]];
          if (s.kind != PenniesStrategy::Kind::kBit) return;
          (s.bit == 0 ? zero : one) = true;
        });
        return Rational(zero && one ? -1 : 0);
      });
}

Profile ConstantProfile(const Graph& g, VertexSet a_star, int k) {
  if (k != 0 && k != 1) {
    throw Error(ErrorKind::kInvalidStrategy, "constant profile bit must be 0 or 1");
  }
  g.checkSubset(a_star);
  std::vector<int> choice(g.size());
  // "pass" is strategy 0 inside aStar; "0" and "1" are strategies 0 and 1
  // outside it.
  for (VertexIndex v = 0; v < g.size(); ++v) choice[v] = a_star.contains(v) ? 0 : k;
  return Profile(std::move(choice));
}

Game ProductGame(const std::vector<Game>& factors, std::uint64_t guard) {
  if (factors.empty()) {
    throw Error(ErrorKind::kInvalidGraph, "product of an empty family of games");
  }
  const Graph& g = factors.front().graph();
  for (const Game& f : factors) {
    if (!(f.graph() == g)) {
      throw Error(ErrorKind::kInvalidGraph,
                  "product factors are played over different graphs");
    }
  }
  const int n = g.size();
  std::vector<std::vector<std::string>> labels(n);
  std::uint64_t profiles = 1;
  for (VertexIndex v = 0; v < n; ++v) {
    std::uint64_t count = 1;
    for (const Game& f : factors) {
      count *= static_cast<std::uint64_t>(f.strategyCount(v));
      if (count > guard) break;
    }
    profiles = (count > guard || profiles > guard / count) ? guard + 1
                                                           : profiles * count;
    if (profiles > guard) {
      throw Error(ErrorKind::kTooLarge,
                  "product game exceeds the guard of " + std::to_string(guard) +
                      " profiles");
    }
    // Factor 0 is the most significant digit of the tuple index.
    std::vector<int> digits(factors.size(), 0);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::string label = "(";
      for (std::size_t k = 0; k < factors.size(); ++k) {
        if (k > 0) label += ';';
        label += factors[k].labels(v)[digits[k]];
      }
      labels[v].push_back(label + ")");
      for (int k = static_cast<int>(factors.size()) - 1; k >= 0; --k) {
        if (++digits[k] < factors[k].strategyCount(v)) break;
        digits[k] = 0;
      }
    }
  }
  return Game::FromFunction(
      g, std::move(labels), [&](VertexIndex v, const Profile& p) -> Rational {
        Rational total = 0;
        const auto parts = SplitProductProfile(factors, p);
        for (std::size_t k = 0; k < factors.size(); ++k) {
          total += Payoff(factors[k], v, parts[k]);
        }
        return total;
      });
}

std::vector<Profile> SplitProductProfile(const std::vector<Game>& factors,
                                         const Profile& p) {
  std::vector<Profile> parts(factors.size(),
                             Profile(std::vector<int>(p.size(), 0)));
  for (VertexIndex v = 0; v < p.size(); ++v) {
    int index = p[v];
    for (int k = static_cast<int>(factors.size()) - 1; k >= 0; --k) {
      const int count = factors[k].strategyCount(v);
      parts[k][v] = index % count;
      index /= count;
    }
  }
  return parts;
}

Profile CombineProfiles(const std::vector<Game>& factors,
                        const std::vector<Profile>& parts) {
  const int n = factors.front().players();
  std::vector<int> choice(n, 0);
  for (VertexIndex v = 0; v < n; ++v) {
    int index = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      index = index * factors[k].strategyCount(v) + parts[k][v];
    }
    choice[v] = index;
  }
  return Profile(std::move(choice));
}

CanonicalGames::CanonicalGames(Graph g, ClosureOptions closure,
                               EnumerationOptions enumeration)
    : graph_(std::move(g)), closure_(closure), enumeration_(enumeration) {}

CanonicalGames::Entry& CanonicalGames::entry(VertexSet a_star) {
  auto it = cache_.find(a_star.mask());
  if (it == cache_.end()) {
    Entry e{BuildPenniesGame(graph_, a_star), nullptr};
    it = cache_.emplace(a_star.mask(), std::move(e)).first;
  }
  return it->second;
}

const Game& CanonicalGames::game(VertexSet a_star) { return entry(a_star).game; }

const EquilibriumSet& CanonicalGames::equilibria(VertexSet a_star) {
  Entry& e = entry(a_star);
  if (!e.equilibria) {
    e.equilibria = std::make_unique<EquilibriumSet>(e.game, enumeration_);
  }
  return *e.equilibria;
}

Counterexample CanonicalGames::counterexample(const HypothesisSet& h,
                                              const Atom& a) {
  graph_.checkSubset(a.lhs);
  graph_.checkSubset(a.rhs);
  if (a.rhs.subsetOf(a.lhs)) {
    throw Error(ErrorKind::kNoCounterexample,
                "'" + Render(a, graph_) + "' holds by reflexivity");
  }
  return counterexample(h, ComputeClosureMap(graph_, h, closure_), a);
}

Counterexample CanonicalGames::counterexample(const HypothesisSet& h,
                                              const ClosureMap& map,
                                              const Atom& a) {
  const VertexSet a_star = map.closure(a.lhs);
  const VertexSet missing = a.rhs - a_star;
  if (missing.empty()) {
    throw Error(ErrorKind::kNoCounterexample,
                "'" + Render(a, graph_) + "' is derivable from the hypotheses");
  }
  auto fail = [&](const std::string& what) {
    return Error(ErrorKind::kInternalSoundness,
                 "counterexample for '" + Render(a, graph_) +
                     "' does not verify: " + what);
  };

  Counterexample out{game(a_star), ConstantProfile(graph_, a_star, 0),
                     ConstantProfile(graph_, a_star, 1), a, a_star,
                     missing.members().front()};
  if (!IsNash(out.game, out.first) || !IsNash(out.game, out.second)) {
    throw fail("a constant profile is not an equilibrium");
  }
  if (!out.first.agreesOn(out.second, a.lhs) ||
      out.first[out.witness] == out.second[out.witness]) {
    throw fail("the witnesses do not separate the atom");
  }
  const EquilibriumSet& eq = equilibria(a_star);
  for (const Atom& hyp : h) {
    if (!eq.holds(hyp)) throw fail("hypothesis '" + Render(hyp, graph_) + "' fails");
  }
  if (eq.holds(a)) throw fail("the refuted atom still holds");
  return out;
}

FormulaCounterexample CanonicalGames::counterexample(const Formula& f) {
  DecideOptions options;
  options.closure = closure_;
  Decider decider(graph_, options);
  auto assignment = decider.findFalsifier(f);
  if (!assignment) {
    throw Error(ErrorKind::kNoCounterexample,
                "'" + Render(f, graph_) + "' is derivable");
  }
  const ClosureMap map = ComputeClosureMap(graph_, assignment->trueAtoms, closure_);
  std::set<std::uint32_t> stars;
  for (const Atom& a : assignment->falseAtoms) stars.insert(map.closure(a.lhs).mask());
  if (stars.empty()) stars.insert(map.closure(VertexSet()).mask());

  std::vector<Game> factors;
  for (std::uint32_t s : stars) factors.push_back(game(VertexSet(s)));
  Game product = factors.size() == 1 ? factors.front()
                                     : ProductGame(factors, enumeration_.guard);

  const EquilibriumSet eq(product, enumeration_);
  for (const auto& [atom, value] : assignment->truth) {
    if (eq.holds(atom) != value) {
      throw Error(ErrorKind::kInternalSoundness,
                  "formula counterexample disagrees with the assignment on '" +
                      Render(atom, graph_) + "'");
    }
  }
  if (eq.models(f)) {
    throw Error(ErrorKind::kInternalSoundness,
                "formula counterexample satisfies the formula");
  }
  return FormulaCounterexample{std::move(product), std::move(*assignment)};
}

Counterexample MakeCounterexample(const Graph& g, const HypothesisSet& h,
                                  const Atom& a) {
  CanonicalGames games(g);
  return games.counterexample(h, a);
}

}  // namespace fdep
