// Independent checker for proof traces. It only uses graph borders and set
// comparisons; nothing here depends on how the trace was produced.

#include <algorithm>

#include "fdep/derivation.hpp"

namespace fdep {

namespace {

std::optional<std::string> CheckStep(const Graph& g, const HypothesisSet& h,
                                     const std::vector<ProofStep>& steps,
                                     std::size_t k) {
  const ProofStep& s = steps[k];
  const Atom& c = s.conclusion;
  if (!c.lhs.subsetOf(g.all()) || !c.rhs.subsetOf(g.all())) {
    return "conclusion mentions unknown vertices";
  }
  for (int p : s.premises) {
    if (p < 0 || static_cast<std::size_t>(p) >= k) {
      return "premise index " + std::to_string(p + 1) + " is not an earlier step";
    }
  }
  auto premise = [&](std::size_t i) -> const Atom& {
    return steps[s.premises[i]].conclusion;
  };
  auto arity = [&](std::size_t n) -> std::optional<std::string> {
    if (s.premises.size() != n) {
      return std::string(RuleName(s.rule)) + " expects " + std::to_string(n) +
             " premise(s), got " + std::to_string(s.premises.size());
    }
    return std::nullopt;
  };

  switch (s.rule) {
    case Rule::kReflexivity:
      if (auto e = arity(0)) return e;
      if (!c.rhs.subsetOf(c.lhs)) return "right side is not a subset of left side";
      return std::nullopt;

    case Rule::kHypothesis:
      if (auto e = arity(0)) return e;
      if (std::find(h.begin(), h.end(), c) == h.end()) return "not a hypothesis";
      return std::nullopt;

    case Rule::kAugmentation: {
      if (auto e = arity(1)) return e;
      const Atom& p = premise(0);
      if (c.lhs != (p.lhs | s.parameter) || c.rhs != (p.rhs | s.parameter)) {
        return "conclusion is not the premise augmented by the given set";
      }
      return std::nullopt;
    }

    case Rule::kTransitivity: {
      if (auto e = arity(2)) return e;
      const Atom& p = premise(0);
      const Atom& q = premise(1);
      if (p.rhs != q.lhs) return "premises do not chain (A |> B, B |> C)";
      if (c.lhs != p.lhs || c.rhs != q.rhs) return "conclusion is not A |> C";
      return std::nullopt;
    }

    case Rule::kContiguity: {
      if (auto e = arity(1)) return e;
      if (!s.cutU) return "contiguity step without a cut";
      const VertexSet u = *s.cutU;
      if (!u.subsetOf(g.all())) return "cut mentions unknown vertices";
      const VertexSet w = g.all() - u;
      const Atom& p = premise(0);
      const VertexSet b = s.parameter;
      if (!b.subsetOf(p.lhs)) return "kept set B is not part of the premise";
      if (!(p.lhs - b).subsetOf(u)) return "dropped set A is not inside U";
      if (!p.rhs.subsetOf(w)) return "right side is not inside W";
      if (c.rhs != p.rhs) return "right side changed";
      if (c.lhs != (Border(g, u) | Border(g, w) | b)) {
        return "left side is not B(U), B(W), B";
      }
      return std::nullopt;
    }

    case Rule::kLeftMono: {
      if (auto e = arity(1)) return e;
      const Atom& p = premise(0);
      if (c.rhs != p.rhs || !p.lhs.subsetOf(c.lhs)) {
        return "left monotonicity must only grow the left side";
      }
      return std::nullopt;
    }

    case Rule::kRightMono: {
      if (auto e = arity(1)) return e;
      const Atom& p = premise(0);
      if (c.lhs != p.lhs || !c.rhs.subsetOf(p.rhs)) {
        return "right monotonicity must only shrink the right side";
      }
      return std::nullopt;
    }
  }
  return "unknown rule";
}

}  // namespace

std::optional<std::string> CheckTrace(const Graph& g, const HypothesisSet& h,
                                      const std::vector<ProofStep>& steps) {
  if (steps.empty()) return "empty trace";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (auto error = CheckStep(g, h, steps, k)) {
      return "step " + std::to_string(k + 1) + ": " + *error;
    }
  }
  return std::nullopt;
}

}  // namespace fdep
