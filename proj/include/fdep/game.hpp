#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fdep/formula.hpp"
#include "fdep/graph.hpp"

namespace fdep {

using Rational = boost::multiprecision::cpp_rational;

// Parses "7", "-3", "2/5" or "-2/5". Throws Error(kFormat).
Rational ParseRational(const std::string& text);
std::string FormatRational(const Rational& r);

// One strategy index per vertex, in graph vertex order.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<int> choice) : choice_(std::move(choice)) {}

  int operator[](VertexIndex v) const { return choice_[v]; }
  int& operator[](VertexIndex v) { return choice_[v]; }
  int size() const { return static_cast<int>(choice_.size()); }
  const std::vector<int>& choices() const { return choice_; }

  // s =_X t
  bool agreesOn(const Profile& other, VertexSet x) const;

  auto operator<=>(const Profile&) const = default;

 private:
  std::vector<int> choice_;
};

struct EnumerationOptions {
  // Maximum number of profiles enumerateNash may visit.
  std::uint64_t guard = 10'000'000;
  unsigned threads = 1;
};

// Finite strategic game over a dependency graph. The payoff of v is a table
// keyed on the strategies of Adj+(v) only, so locality holds by shape.
class Game {
 public:
  // Called with v and a full profile whose entries outside Adj+(v) are 0.
  using PayoffFn = std::function<Rational(VertexIndex v, const Profile& p)>;

  Game() = default;

  // tables[v] is indexed by the mixed-radix encoding of the strategies of
  // Adj+(v) in ascending vertex order, the largest vertex varying fastest.
  Game(Graph graph, std::vector<std::vector<std::string>> labels,
       std::vector<std::vector<Rational>> tables);

  static Game FromFunction(Graph graph,
                           std::vector<std::vector<std::string>> labels,
                           const PayoffFn& payoff);

  const Graph& graph() const { return graph_; }
  int players() const { return graph_.size(); }
  int strategyCount(VertexIndex v) const {
    return static_cast<int>(labels_[v].size());
  }
  const std::vector<std::string>& labels(VertexIndex v) const {
    return labels_[v];
  }
  // Throws Error(kInvalidStrategy) for an unknown label.
  int strategyIndex(VertexIndex v, const std::string& label) const;

  // Product of all strategy counts, saturating at UINT64_MAX.
  std::uint64_t profileCount() const;

  // Adj+(v) in ascending order: the key shape of v's payoff table.
  const std::vector<VertexIndex>& localPlayers(VertexIndex v) const {
    return local_[v];
  }
  std::size_t localIndex(VertexIndex v, const Profile& p) const;
  const std::vector<Rational>& table(VertexIndex v) const { return (*tables_)[v]; }

  // Throws Error(kInvalidStrategy) unless p is total with valid indices.
  void checkProfile(const Profile& p) const;

  // "(a1,b1)" style rendering in vertex order.
  std::string format(const Profile& p) const;

  bool fastPathAvailable(VertexIndex v) const { return !(*fast_)[v].empty(); }

 private:
  friend Rational Payoff(const Game&, VertexIndex, const Profile&);
  friend bool IsNash(const Game&, const Profile&);

  void buildIndex();
  void buildFastTables();

  Graph graph_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::vector<VertexIndex>> local_;
  std::vector<std::vector<std::size_t>> strides_;  // parallel to local_
  // Games are immutable, so copies share the payoff tables.
  std::shared_ptr<const std::vector<std::vector<Rational>>> tables_;
  // Per-player payoffs scaled by a common positive factor into int64, when
  // they fit. Scaling one player's payoffs preserves every equilibrium test.
  std::shared_ptr<const std::vector<std::vector<std::int64_t>>> fast_;
};

Rational Payoff(const Game& game, VertexIndex v, const Profile& p);

// No player has a strictly improving unilateral deviation.
bool IsNash(const Game& game, const Profile& p);

// All pure equilibria in lexicographic order. Throws Error(kTooLarge) if the
// profile space exceeds options.guard. Output is independent of threads.
std::vector<Profile> EnumerateNash(const Game& game,
                                   const EnumerationOptions& options = {});

// The equilibria of one game, with atom checks against them.
class EquilibriumSet {
 public:
  EquilibriumSet(const Game& game, const EnumerationOptions& options = {});
  EquilibriumSet(const Game& game, std::vector<Profile> equilibria);

  const std::vector<Profile>& profiles() const { return equilibria_; }
  bool empty() const { return equilibria_.empty(); }

  // Every two equilibria agreeing on a.lhs agree on a.rhs.
  bool holds(const Atom& a) const;
  bool models(const Formula& f) const;

 private:
  std::uint64_t key(const Profile& p, VertexSet s) const;

  std::vector<Profile> equilibria_;
  std::vector<std::uint64_t> radix_;
};

bool HoldsAtom(const Game& game, const Atom& a,
               const EnumerationOptions& options = {});
bool Models(const Game& game, const Formula& f,
            const EnumerationOptions& options = {});

// p's choices on cut.u, q's on cut.w.
Profile Stitch(const Profile& p, const Profile& q, const Cut& cut);

// Payoffs uniform in [-bound, bound]; sizes[v] strategies for vertex v,
// labelled "0", "1", ... Deterministic in all arguments.
Game RandomGame(const Graph& g, const std::vector<int>& sizes, int bound,
                std::uint64_t seed);

}  // namespace fdep
