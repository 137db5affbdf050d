#include <algorithm>
#include <map>
#include <sstream>

#include "closure_engine.hpp"
#include "fdep/derivation.hpp"
#include "fdep/error.hpp"

namespace fdep {

const char* RuleName(Rule r) {
  switch (r) {
    case Rule::kReflexivity: return "Reflexivity";
    case Rule::kAugmentation: return "Augmentation";
    case Rule::kTransitivity: return "Transitivity";
    case Rule::kContiguity: return "Contiguity";
    case Rule::kHypothesis: return "Hypothesis";
    case Rule::kLeftMono: return "LeftMono";
    case Rule::kRightMono: return "RightMono";
  }
  return "?";
}

namespace {

using detail::ClosureEngine;
using detail::Justification;

// Turns the justifications recorded by the engine into proof steps. Every
// justification only refers to facts that existed when it was recorded, so
// the recursion is well founded.
class TraceBuilder {
 public:
  TraceBuilder(const Graph& g, const ClosureEngine& engine)
      : g_(g), engine_(engine) {}

  // The steps the given one depends on, renumbered, in their original order.
  std::vector<ProofStep> take(int last) {
    std::vector<bool> used(steps_.size(), false);
    used[last] = true;
    for (int k = last; k >= 0; --k) {
      if (!used[k]) continue;
      for (int p : steps_[k].premises) used[p] = true;
    }
    std::vector<int> renumber(steps_.size(), -1);
    std::vector<ProofStep> out;
    for (int k = 0; k <= last; ++k) {
      if (!used[k]) continue;
      ProofStep step = steps_[k];
      for (int& p : step.premises) p = renumber[p];
      renumber[k] = static_cast<int>(out.size());
      out.push_back(std::move(step));
    }
    return out;
  }

  // An atom that already has a step is never proved twice.
  int emit(Rule rule, std::vector<int> premises, Atom conclusion,
           VertexSet parameter = {}, std::optional<VertexSet> cut_u = {}) {
    if (auto it = proved_.find(conclusion); it != proved_.end()) return it->second;
    steps_.push_back(
        ProofStep{rule, std::move(premises), conclusion, parameter, cut_u});
    return proved_[conclusion] = static_cast<int>(steps_.size()) - 1;
  }

  int hypothesis(const Atom& a) { return emit(Rule::kHypothesis, {}, a); }

  // lhs |> {v}
  int fact(VertexSet lhs, VertexIndex v) {
    const auto key = std::make_pair(lhs.mask(), v);
    if (auto it = facts_.find(key); it != facts_.end()) return it->second;
    const int step = buildFact(lhs, v);
    facts_[key] = step;
    return step;
  }

  // lhs |> target, from the single-vertex facts.
  int set(VertexSet lhs, VertexSet target) {
    const auto key = std::make_pair(lhs.mask(), target.mask());
    if (auto it = sets_.find(key); it != sets_.end()) return it->second;
    int step;
    if (auto it = proved_.find(Atom{lhs, target}); it != proved_.end()) {
      step = it->second;
    } else if (target.subsetOf(lhs)) {
      step = emit(Rule::kReflexivity, {}, {lhs, target});
    } else if ((target - lhs).size() == 1 && !target.intersects(lhs)) {
      step = fact(lhs, (target - lhs).members().front());
    } else {
      // Grow lhs |> S one vertex at a time, starting from the members of
      // target already inside lhs:
      //   lhs |> x          --Aug(lhs)-->  lhs |> lhs,x
      //   lhs |> S          --Aug(x)---->  lhs,x |> S,x
      //   both              --Trans----->  lhs |> S,x
      VertexSet have = target & lhs;
      step = emit(Rule::kReflexivity, {}, {lhs, have});
      (target - lhs).forEach([&](VertexIndex x) {
        const VertexSet vx = VertexSet::Single(x);
        const int single = fact(lhs, x);
        const int widened =
            emit(Rule::kAugmentation, {single}, {lhs, lhs | vx}, lhs);
        const int shifted =
            emit(Rule::kAugmentation, {step}, {lhs | vx, have | vx}, vx);
        have = have | vx;
        step = emit(Rule::kTransitivity, {widened, shifted}, {lhs, have});
      });
    }
    sets_[key] = step;
    return step;
  }

 private:
  int buildFact(VertexSet lhs, VertexIndex v) {
    const VertexSet target = VertexSet::Single(v);
    const Justification& why = engine_.why(lhs.mask(), v);
    switch (why.kind) {
      case Justification::Kind::kReflexive:
        return emit(Rule::kReflexivity, {}, {lhs, target});
      case Justification::Kind::kHypothesis: {
        const Atom& h = engine_.hypotheses().at(why.source);
        const int hyp = hypothesis(h);
        int step = hyp;
        if (h.lhs != lhs) {
          const int premise = set(lhs, h.lhs);
          step = emit(Rule::kTransitivity, {premise, hyp}, {lhs, h.rhs});
        }
        if (h.rhs != target) {
          step = emit(Rule::kRightMono, {step}, {lhs, target});
        }
        return step;
      }
      case Justification::Kind::kTransitive: {
        const VertexSet middle(why.source);
        const int first = set(lhs, middle);
        const int second = fact(middle, v);
        return emit(Rule::kTransitivity, {first, second}, {lhs, target});
      }
      case Justification::Kind::kMonotone: {
        const int premise = fact(VertexSet(why.source), v);
        return emit(Rule::kLeftMono, {premise}, {lhs, target});
      }
      case Justification::Kind::kContiguity: {
        const VertexSet source(why.source);
        const VertexSet u(why.cut);
        const VertexSet w = g_.all() - u;
        const int premise = fact(source, v);
        return emit(Rule::kContiguity, {premise}, {lhs, target}, source & w, u);
      }
      case Justification::Kind::kNone:
        break;
    }
    throw Error(ErrorKind::kInternalSoundness,
                "closure fact without justification: " + g_.format(lhs) +
                    " |> " + g_.name(v));
  }

  const Graph& g_;
  const ClosureEngine& engine_;
  std::vector<ProofStep> steps_;
  std::map<std::pair<std::uint32_t, VertexIndex>, int> facts_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> sets_;
  std::map<Atom, int> proved_;
};

}  // namespace

std::vector<ProofStep> DeriveTrace(const Graph& g, const HypothesisSet& h,
                                   const Atom& a,
                                   const ClosureOptions& options) {
  g.checkSubset(a.lhs);
  g.checkSubset(a.rhs);
  if (a.rhs.subsetOf(a.lhs)) {
    return {ProofStep{Rule::kReflexivity, {}, a, {}, {}}};
  }
  if (std::find(h.begin(), h.end(), a) != h.end()) {
    return {ProofStep{Rule::kHypothesis, {}, a, {}, {}}};
  }
  ClosureEngine engine(g, h, options, /*record=*/true);
  engine.run();
  const VertexSet closure = engine.result().at(a.lhs.mask());
  if (!a.rhs.subsetOf(closure)) {
    throw Error(ErrorKind::kNoProof,
                "'" + Render(a, g) + "' is not derivable from the hypotheses");
  }
  TraceBuilder builder(g, engine);
  return builder.take(builder.set(a.lhs, a.rhs));
}

std::string FormatTrace(const Graph& g, const std::vector<ProofStep>& steps) {
  std::ostringstream out;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const ProofStep& s = steps[k];
    out << (k + 1) << ". " << Render(s.conclusion, g) << " [" << RuleName(s.rule);
    if (!s.premises.empty()) {
      out << " from ";
      for (std::size_t i = 0; i < s.premises.size(); ++i) {
        if (i > 0) out << ',';
        out << (s.premises[i] + 1);
      }
    }
    if (s.rule == Rule::kContiguity && s.cutU) {
      out << "; cut=(" << g.format(*s.cutU) << '|'
          << g.format(g.all() - *s.cutU) << ")";
    }
    out << "]\n";
  }
  return out.str();
}

}  // namespace fdep
