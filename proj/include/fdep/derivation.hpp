#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdep/formula.hpp"
#include "fdep/graph.hpp"

namespace fdep {

using HypothesisSet = std::vector<Atom>;

// ---------------------------------------------------------------------------
// Brute-force saturation over the whole atom space (4^|V| atoms). This is the
// reference the closure-map procedure is checked against.

struct SaturationOptions {
  int maxVertices = 5;
  bool contiguity = true;
  // Also close under the derived monotonicity rules
  //   A |> C  =>  A,B |> C      and      A |> B,C  =>  A |> B.
  // They are admissible, so this must not change the result.
  bool monotonicityRules = false;
};

class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(int vertices)
      : vertices_(vertices), bits_(std::size_t{1} << (2 * vertices), false) {}

  int vertices() const { return vertices_; }
  bool contains(const Atom& a) const { return bits_[index(a)]; }
  // Returns true if the atom was new.
  bool insert(const Atom& a);
  std::size_t count() const;
  std::vector<Atom> atoms() const;

  bool operator==(const AtomSet&) const = default;

 private:
  std::size_t index(const Atom& a) const {
    return (std::size_t{a.lhs.mask()} << vertices_) | a.rhs.mask();
  }

  int vertices_ = 0;
  std::vector<bool> bits_;
};

// Least atom set containing h and all Reflexivity instances, closed under
// Augmentation, Transitivity and Contiguity. Throws Error(kTooLarge) above
// options.maxVertices.
AtomSet SaturateAtoms(const Graph& g, const HypothesisSet& h,
                      const SaturationOptions& options = {});

// ---------------------------------------------------------------------------
// Closure maps: for every L, the set of v with h |- L |> v.

struct ClosureOptions {
  int maxVertices = 12;
  unsigned threads = 1;
  bool contiguity = true;
};

class ClosureMap {
 public:
  ClosureMap() = default;
  ClosureMap(int vertices, std::vector<VertexSet> closure)
      : vertices_(vertices), closure_(std::move(closure)) {}

  int vertices() const { return vertices_; }
  VertexSet closure(VertexSet lhs) const { return closure_.at(lhs.mask()); }
  bool derives(const Atom& a) const { return a.rhs.subsetOf(closure(a.lhs)); }
  const std::vector<VertexSet>& entries() const { return closure_; }

  bool operator==(const ClosureMap&) const = default;

 private:
  int vertices_ = 0;
  std::vector<VertexSet> closure_;
};

ClosureMap ComputeClosureMap(const Graph& g, const HypothesisSet& h,
                             const ClosureOptions& options = {});

bool DerivesAtom(const Graph& g, const HypothesisSet& h, const Atom& a,
                 const ClosureOptions& options = {});

// ---------------------------------------------------------------------------
// Formulas.

struct DecideOptions {
  int maxAtoms = 20;
  ClosureOptions closure;
  // Use SaturateAtoms instead of closure maps (small graphs only).
  bool oracle = false;
};

// A truth assignment to the atoms of a formula that falsifies it and is
// consistent with the axioms: the closure of its true atoms derives none of
// its false atoms.
struct RealizableAssignment {
  std::map<Atom, bool> truth;
  HypothesisSet trueAtoms;
  HypothesisSet falseAtoms;
};

// Decides |- f for one graph. Closure maps are memoised by hypothesis set, so
// one Decider can answer many related queries cheaply.
class Decider {
 public:
  explicit Decider(Graph g, DecideOptions options = {});

  const Graph& graph() const { return graph_; }

  bool derivesAtom(const HypothesisSet& h, const Atom& a);
  bool derivable(const Formula& f);
  // std::nullopt iff f is derivable.
  std::optional<RealizableAssignment> findFalsifier(const Formula& f);

  std::size_t cacheSize() const { return cache_.size() + oracleCache_.size(); }

 private:
  static constexpr std::size_t kMaxCached = 4096;

  bool derives(const HypothesisSet& h, const Atom& a);

  Graph graph_;
  DecideOptions options_;
  std::map<HypothesisSet, ClosureMap> cache_;
  std::map<HypothesisSet, AtomSet> oracleCache_;
};

// Throws Error(kTooLarge) if f has more than options.maxAtoms distinct atoms.
bool DecideFormula(const Graph& g, const Formula& f,
                   const DecideOptions& options = {});

// ---------------------------------------------------------------------------
// Proof traces.

enum class Rule {
  kReflexivity,
  kAugmentation,
  kTransitivity,
  kContiguity,
  kHypothesis,
  kLeftMono,
  kRightMono,
};

const char* RuleName(Rule r);

struct ProofStep {
  Rule rule = Rule::kReflexivity;
  std::vector<int> premises;  // 0-based indices of earlier steps
  Atom conclusion;
  // Augmentation: the added set C. Contiguity: the kept set B.
  VertexSet parameter;
  // Contiguity: the U side of the cut.
  std::optional<VertexSet> cutU;
};

// A derivation of a from h. Throws Error(kNoProof) if a is not derivable.
std::vector<ProofStep> DeriveTrace(const Graph& g, const HypothesisSet& h,
                                   const Atom& a,
                                   const ClosureOptions& options = {});

// Re-checks every step against its rule. Returns a description of the first
// invalid step, or std::nullopt if the whole trace is valid.
std::optional<std::string> CheckTrace(const Graph& g, const HypothesisSet& h,
                                      const std::vector<ProofStep>& steps);

// "k. <atom> [<rule> from <i>,<j>; cut=(U|W)]" per line, 1-based.
std::string FormatTrace(const Graph& g, const std::vector<ProofStep>& steps);

// ---------------------------------------------------------------------------

// (V-{w1}) |> w1 -> ... -> (V-{wk}) |> wk -> (V-W) |> W for a sparse W.
// Throws Error(kNotSparse) otherwise.
Formula SparsePrincipleFormula(const Graph& g, VertexSet w);

}  // namespace fdep
