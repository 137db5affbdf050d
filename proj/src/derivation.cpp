#include "fdep/derivation.hpp"

#include <algorithm>
#include <deque>
#include <thread>

#include "closure_engine.hpp"
#include "fdep/error.hpp"

namespace fdep {

namespace {

void CheckHypotheses(const Graph& g, const HypothesisSet& h) {
  for (const Atom& a : h) {
    g.checkSubset(a.lhs);
    g.checkSubset(a.rhs);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// AtomSet / SaturateAtoms

bool AtomSet::insert(const Atom& a) {
  auto ref = bits_[index(a)];
  if (ref) return false;
  ref = true;
  return true;
}

std::size_t AtomSet::count() const {
  std::size_t c = 0;
  for (bool b : bits_) c += b;
  return c;
}

std::vector<Atom> AtomSet::atoms() const {
  std::vector<Atom> out;
  const std::uint32_t size = std::uint32_t{1} << vertices_;
  for (std::uint32_t l = 0; l < size; ++l) {
    for (std::uint32_t r = 0; r < size; ++r) {
      const Atom a{VertexSet(l), VertexSet(r)};
      if (contains(a)) out.push_back(a);
    }
  }
  return out;
}

AtomSet SaturateAtoms(const Graph& g, const HypothesisSet& h,
                      const SaturationOptions& options) {
  const int n = g.size();
  if (n > options.maxVertices) {
    throw Error(ErrorKind::kTooLarge,
                "atom saturation is limited to " +
                    std::to_string(options.maxVertices) + " vertices, graph has " +
                    std::to_string(n));
  }
  CheckHypotheses(g, h);
  const VertexSet all = g.all();
  std::vector<VertexSet> borders;
  for (std::uint32_t u = 0; u <= all.mask(); ++u) {
    borders.push_back(CutBorders(g, VertexSet(u)));
  }

  AtomSet have(n);
  std::deque<Atom> queue;
  auto add = [&](const Atom& a) {
    if (have.insert(a)) queue.push_back(a);
  };

  all.forEachSubset([&](VertexSet lhs) {
    lhs.forEachSubset([&](VertexSet rhs) { add({lhs, rhs}); });
  });
  for (const Atom& a : h) add(a);

  while (!queue.empty()) {
    const Atom a = queue.front();
    queue.pop_front();

    // Augmentation.
    all.forEachSubset([&](VertexSet c) { add({a.lhs | c, a.rhs | c}); });

    // Transitivity, with a as either premise.
    all.forEachSubset([&](VertexSet x) {
      if (have.contains({a.rhs, x})) add({a.lhs, x});
      if (have.contains({x, a.lhs})) add({x, a.rhs});
    });

    // Contiguity: a = (A u B) |> C with A in U, C in W gives
    // B(U), B(W), B |> C. B ranges over lhs - U <= B <= lhs.
    if (options.contiguity) {
      (all - a.rhs).forEachSubset([&](VertexSet u) {
        const VertexSet forced = a.lhs - u;
        (a.lhs & u).forEachSubset([&](VertexSet optional) {
          add({borders[u.mask()] | forced | optional, a.rhs});
        });
      });
    }

    if (options.monotonicityRules) {
      all.forEachSubset([&](VertexSet b) { add({a.lhs | b, a.rhs}); });
      a.rhs.forEachSubset([&](VertexSet b) { add({a.lhs, b}); });
    }
  }
  return have;
}

// ---------------------------------------------------------------------------
// ClosureEngine

namespace detail {

ClosureEngine::ClosureEngine(const Graph& g, const HypothesisSet& h,
                             const ClosureOptions& options, bool record)
    : g_(g), h_(h), options_(options), record_(record), n_(g.size()) {
  if (n_ > options.maxVertices) {
    throw Error(ErrorKind::kTooLarge,
                "closure maps are limited to " +
                    std::to_string(options.maxVertices) +
                    " vertices (raise the bound to go further), graph has " +
                    std::to_string(n_));
  }
  CheckHypotheses(g, h);
  size_ = std::uint32_t{1} << n_;
  full_ = size_ - 1;
  clos_ = std::vector<std::atomic<std::uint32_t>>(size_);
  lastContiguity_.resize(size_);
  for (std::uint32_t l = 0; l < size_; ++l) {
    clos_[l].store(l, std::memory_order_relaxed);
    lastContiguity_[l] = l;
  }
  if (options_.contiguity) {
    cutBorders_.resize(size_);
    for (std::uint32_t u = 0; u < size_; ++u) {
      cutBorders_[u] = CutBorders(g, VertexSet(u)).mask();
    }
  }
  if (record_) {
    why_.assign(static_cast<std::size_t>(size_) * n_, Justification{});
    for (std::uint32_t l = 0; l < size_; ++l) {
      VertexSet(l).forEach([&](VertexIndex v) {
        why_[static_cast<std::size_t>(l) * n_ + v].kind =
            Justification::Kind::kReflexive;
      });
    }
  }
}

bool ClosureEngine::add(std::uint32_t target, std::uint32_t bits,
                        Justification just) {
  if ((clos_[target].load(std::memory_order_relaxed) & bits) == bits) {
    return false;
  }
  const std::uint32_t old =
      clos_[target].fetch_or(bits, std::memory_order_relaxed);
  const std::uint32_t fresh = bits & ~old;
  if (fresh == 0) return false;
  if (record_) {
    VertexSet(fresh).forEach([&](VertexIndex v) {
      why_[static_cast<std::size_t>(target) * n_ + v] = just;
    });
  }
  return true;
}

bool ClosureEngine::processRange(std::uint32_t begin, std::uint32_t end,
                                 std::uint32_t step) {
  using Kind = Justification::Kind;
  bool changed = false;
  for (std::uint32_t l = begin; l < end; l += step) {
    auto load = [&](std::uint32_t x) {
      return clos_[x].load(std::memory_order_relaxed);
    };
    std::uint32_t cur = load(l);
    while (true) {
      const std::uint32_t before = cur;
      for (std::uint32_t m = l; m != 0; m &= m - 1) {
        const std::uint32_t sub = l & ~(m & (~m + 1));
        changed |= add(l, load(sub), {Kind::kMonotone, sub, 0});
      }
      cur = load(l);
      for (std::size_t i = 0; i < h_.size(); ++i) {
        if ((h_[i].lhs.mask() & ~cur) == 0) {
          changed |= add(l, h_[i].rhs.mask(),
                         {Kind::kHypothesis, static_cast<std::uint32_t>(i), 0});
          cur = load(l);
        }
      }
      changed |= add(l, load(cur), {Kind::kTransitive, cur, 0});
      cur = load(l);
      if (cur == before) break;
    }

    if (options_.contiguity && cur != lastContiguity_[l]) {
      lastContiguity_[l] = cur;
      // Vertices already in L land in targets that contain them anyway.
      const std::uint32_t extra = cur & ~l;
      for (std::uint32_t u = 0; u < size_; ++u) {
        const std::uint32_t w = full_ & ~u;
        const std::uint32_t moved = extra & w;
        if (moved == 0) continue;
        const std::uint32_t target = cutBorders_[u] | (l & w);
        changed |= add(target, moved, {Kind::kContiguity, l, u});
      }
    }
  }
  return changed;
}

void ClosureEngine::run() {
  const unsigned threads =
      record_ ? 1u : std::max(1u, std::min<unsigned>(options_.threads, size_));
  while (true) {
    bool changed = false;
    if (threads == 1) {
      changed = processRange(0, size_, 1);
    } else {
      std::vector<char> flags(threads, 0);
      std::vector<std::thread> workers;
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] { flags[t] = processRange(t, size_, threads); });
      }
      for (auto& w : workers) w.join();
      for (char f : flags) changed |= (f != 0);
    }
    if (!changed) break;
  }
}

std::vector<VertexSet> ClosureEngine::result() const {
  std::vector<VertexSet> out;
  out.reserve(size_);
  for (const auto& c : clos_) out.emplace_back(c.load(std::memory_order_relaxed));
  return out;
}

}  // namespace detail

ClosureMap ComputeClosureMap(const Graph& g, const HypothesisSet& h,
                             const ClosureOptions& options) {
  detail::ClosureEngine engine(g, h, options, /*record=*/false);
  engine.run();
  return ClosureMap(g.size(), engine.result());
}

bool DerivesAtom(const Graph& g, const HypothesisSet& h, const Atom& a,
                 const ClosureOptions& options) {
  g.checkSubset(a.lhs);
  g.checkSubset(a.rhs);
  if (a.rhs.subsetOf(a.lhs)) return true;
  return ComputeClosureMap(g, h, options).derives(a);
}

// ---------------------------------------------------------------------------
// Decider

Decider::Decider(Graph g, DecideOptions options)
    : graph_(std::move(g)), options_(options) {}

bool Decider::derives(const HypothesisSet& h, const Atom& a) {
  if (a.rhs.subsetOf(a.lhs)) return true;
  if (options_.oracle) {
    auto it = oracleCache_.find(h);
    if (it == oracleCache_.end()) {
      AtomSet s = SaturateAtoms(graph_, h);
      if (oracleCache_.size() >= kMaxCached) return s.contains(a);
      it = oracleCache_.emplace(h, std::move(s)).first;
    }
    return it->second.contains(a);
  }
  auto it = cache_.find(h);
  if (it == cache_.end()) {
    ClosureMap m = ComputeClosureMap(graph_, h, options_.closure);
    if (cache_.size() >= kMaxCached) return m.derives(a);
    it = cache_.emplace(h, std::move(m)).first;
  }
  return it->second.derives(a);
}

bool Decider::derivesAtom(const HypothesisSet& h, const Atom& a) {
  graph_.checkSubset(a.lhs);
  graph_.checkSubset(a.rhs);
  HypothesisSet sorted = h;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return derives(sorted, a);
}

std::optional<RealizableAssignment> Decider::findFalsifier(const Formula& f) {
  const std::vector<Atom> atoms = AtomsOf(f);
  if (static_cast<int>(atoms.size()) > options_.maxAtoms) {
    throw Error(ErrorKind::kTooLarge,
                "formula has " + std::to_string(atoms.size()) +
                    " distinct atoms; the decision procedure is limited to " +
                    std::to_string(options_.maxAtoms));
  }
  for (const Atom& a : atoms) {
    graph_.checkSubset(a.lhs);
    graph_.checkSubset(a.rhs);
  }
  const std::uint64_t assignments = std::uint64_t{1} << atoms.size();
  for (std::uint64_t tau = 0; tau < assignments; ++tau) {
    RealizableAssignment candidate;
    bool trivially_false = false;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const bool value = (tau >> i) & 1u;
      candidate.truth.emplace(atoms[i], value);
      if (value) {
        candidate.trueAtoms.push_back(atoms[i]);
      } else {
        candidate.falseAtoms.push_back(atoms[i]);
        trivially_false |= atoms[i].rhs.subsetOf(atoms[i].lhs);
      }
    }
    if (trivially_false) continue;
    if (EvalProp(f, candidate.truth)) continue;
    bool realizable = true;
    for (const Atom& a : candidate.falseAtoms) {
      if (derives(candidate.trueAtoms, a)) {
        realizable = false;
        break;
      }
    }
    if (realizable) return candidate;
  }
  return std::nullopt;
}

bool Decider::derivable(const Formula& f) { return !findFalsifier(f); }

bool DecideFormula(const Graph& g, const Formula& f,
                   const DecideOptions& options) {
  return Decider(g, options).derivable(f);
}

// ---------------------------------------------------------------------------

Formula SparsePrincipleFormula(const Graph& g, VertexSet w) {
  g.checkSubset(w);
  if (!IsSparse(g, w)) {
    throw Error(ErrorKind::kNotSparse,
                "vertex set {" + g.format(w) +
                    "} is not sparse (two members are within distance 2)");
  }
  std::vector<Formula> premises;
  w.forEach([&](VertexIndex v) {
    premises.push_back(
        Formula::Dep({g.all().without(v), VertexSet::Single(v)}));
  });
  return Formula::Chain(premises, Formula::Dep({g.all() - w, w}));
}

}  // namespace fdep
