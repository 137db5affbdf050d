#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "fdep/derivation.hpp"

namespace fdep::detail {

// Why a vertex entered clos(L). `source` is a vertex-set mask for the
// transitive, monotone and contiguity cases and a hypothesis index for
// kHypothesis.
struct Justification {
  enum class Kind : std::uint8_t {
    kNone,
    kReflexive,
    kHypothesis,
    kTransitive,
    kMonotone,
    kContiguity,
  };
  Kind kind = Kind::kNone;
  std::uint32_t source = 0;
  std::uint32_t cut = 0;
};

// Fixpoint of the closure-map rules
//   (R) L in clos(L)
//   (H) C |> D in h, C in clos(L)          =>  D in clos(L)
//   (T) X in clos(L)                       =>  clos(X) in clos(L)
//   (M) L' in L                            =>  clos(L') in clos(L)
//   (C) cut (U,W), c in clos(L) and in W   =>  c in clos(B(U) | B(W) | (L & W))
// The rules are monotone and inflationary, so the least fixpoint does not
// depend on the order of application; worker threads share the entries
// through atomic fetch_or.
class ClosureEngine {
 public:
  ClosureEngine(const Graph& g, const HypothesisSet& h,
                const ClosureOptions& options, bool record);

  void run();

  std::vector<VertexSet> result() const;
  // Only populated when constructed with record = true.
  const Justification& why(std::uint32_t lhs, VertexIndex v) const {
    return why_[static_cast<std::size_t>(lhs) * n_ + v];
  }
  const HypothesisSet& hypotheses() const { return h_; }

 private:
  bool processRange(std::uint32_t begin, std::uint32_t end, std::uint32_t step);
  bool add(std::uint32_t target, std::uint32_t bits, Justification just);

  const Graph& g_;
  HypothesisSet h_;
  ClosureOptions options_;
  bool record_;
  int n_;
  std::uint32_t size_;
  std::uint32_t full_;
  std::vector<std::atomic<std::uint32_t>> clos_;
  std::vector<std::uint32_t> lastContiguity_;
  std::vector<std::uint32_t> cutBorders_;
  std::vector<Justification> why_;
};

}  // namespace fdep::detail
