#include "fdep/harness.hpp"

#include <sstream>

#include "fdep/derivation.hpp"
#include "fdep/error.hpp"
#include "fdep/rng.hpp"

namespace fdep {

SoundnessCounts& SoundnessCounts::operator+=(const SoundnessCounts& o) {
  reflexivity += o.reflexivity;
  augmentation += o.augmentation;
  transitivity += o.transitivity;
  contiguity += o.contiguity;
  stitching += o.stitching;
  closure += o.closure;
  if (violations == 0 && o.violations > 0) firstViolation = o.firstViolation;
  violations += o.violations;
  return *this;
}

namespace {

class Checker {
 public:
  Checker(const Game& game, const EnumerationOptions& options)
      : game_(game), g_(game.graph()), n_(g_.size()), ne_(game, options) {
    const std::size_t subsets = std::size_t{1} << n_;
    holds_.resize(subsets * subsets);
    for (std::uint32_t l = 0; l < subsets; ++l) {
      for (std::uint32_t r = 0; r < subsets; ++r) {
        holds_[index(l, r)] = ne_.holds(Atom{VertexSet(l), VertexSet(r)});
      }
    }
  }

  SoundnessCounts run() {
    reflexivity();
    augmentationAndTransitivity();
    contiguity();
    stitching();
    closure();
    return counts_;
  }

 private:
  std::size_t index(std::uint32_t l, std::uint32_t r) const {
    return (std::size_t{l} << n_) | r;
  }
  bool holds(VertexSet l, VertexSet r) const { return holds_[index(l.mask(), r.mask())]; }

  std::string atom(VertexSet l, VertexSet r) const {
    return Render(Atom{l, r}, g_);
  }

  void fail(const std::string& what) {
    if (counts_.violations++ == 0) counts_.firstViolation = what;
  }

  void reflexivity() {
    g_.all().forEachSubset([&](VertexSet a) {
      a.forEachSubset([&](VertexSet b) {
        ++counts_.reflexivity;
        if (!holds(a, b)) fail("reflexivity: " + atom(a, b) + " fails");
      });
    });
  }

  void augmentationAndTransitivity() {
    const VertexSet all = g_.all();
    all.forEachSubset([&](VertexSet a) {
      all.forEachSubset([&](VertexSet b) {
        if (!holds(a, b)) return;
        all.forEachSubset([&](VertexSet c) {
          ++counts_.augmentation;
          if (!holds(a | c, b | c)) {
            fail("augmentation: " + atom(a, b) + " holds but " + atom(a | c, b | c) +
                 " fails");
          }
          if (holds(b, c)) {
            ++counts_.transitivity;
            if (!holds(a, c)) {
              fail("transitivity: " + atom(a, b) + " and " + atom(b, c) +
                   " hold but " + atom(a, c) + " fails");
            }
          }
        });
      });
    });
  }

  void contiguity() {
    const VertexSet all = g_.all();
    all.forEachSubset([&](VertexSet u) {
      const VertexSet w = all - u;
      const VertexSet borders = CutBorders(g_, u);
      u.forEachSubset([&](VertexSet a) {
        w.forEachSubset([&](VertexSet c) {
          all.forEachSubset([&](VertexSet b) {
            if (!holds(a | b, c)) return;
            ++counts_.contiguity;
            if (!holds(borders | b, c)) {
              fail("contiguity: cut (" + g_.format(u) + "|" + g_.format(w) + "), " +
                   atom(a | b, c) + " holds but " + atom(borders | b, c) + " fails");
            }
          });
        });
      });
    });
  }

  void stitching() {
    const auto& eq = ne_.profiles();
    const VertexSet all = g_.all();
    all.forEachSubset([&](VertexSet u) {
      const Cut cut{u, all - u};
      const VertexSet borders = CutBorders(g_, u);
      for (const Profile& p : eq) {
        for (const Profile& q : eq) {
          if (!p.agreesOn(q, borders)) continue;
          ++counts_.stitching;
          if (!IsNash(game_, Stitch(p, q, cut))) {
            fail("stitching: cut (" + g_.format(u) + "|" + g_.format(cut.w) + "), " +
                 game_.format(p) + " + " + game_.format(q) + " is not an equilibrium");
          }
        }
      }
    });
  }

  // Everything derivable from the atoms the game satisfies must hold in it.
  void closure() {
    HypothesisSet h;
    const VertexSet all = g_.all();
    all.forEachSubset([&](VertexSet l) {
      all.forEachSubset([&](VertexSet r) {
        if (!r.subsetOf(l) && holds(l, r)) h.push_back(Atom{l, r});
      });
    });
    ClosureOptions options;
    options.maxVertices = n_;
    const ClosureMap map = ComputeClosureMap(g_, h, options);
    all.forEachSubset([&](VertexSet l) {
      map.closure(l).forEach([&](VertexIndex v) {
        ++counts_.closure;
        const VertexSet r = VertexSet::Single(v);
        if (!holds(l, r)) fail("closure: derivable " + atom(l, r) + " fails");
      });
    });
  }

  const Game& game_;
  const Graph& g_;
  int n_;
  EquilibriumSet ne_;
  std::vector<bool> holds_;
  SoundnessCounts counts_;
};

}  // namespace

SoundnessCounts CheckSoundness(const Game& game, const EnumerationOptions& options) {
  return Checker(game, options).run();
}

namespace {

// Each sample owns one child stream of the seed's root stream.
Game DrawGame(const Graph& g, const FuzzOptions& options, SplitMix64& root) {
  SplitMix64 rng = root.split();
  std::vector<int> sizes(g.size());
  for (int& s : sizes) s = static_cast<int>(rng.between(1, options.maxStrategies));
  return RandomGame(g, sizes, options.bound, rng.next());
}

}  // namespace

Game FuzzGame(const Graph& g, const FuzzOptions& options, int sample) {
  SplitMix64 root(options.seed);
  for (int i = 0; i < sample; ++i) root.split();
  return DrawGame(g, options, root);
}

FuzzReport Fuzz(const Graph& g, const FuzzOptions& options) {
  if (g.size() > options.maxVertices) {
    throw Error(ErrorKind::kTooLarge, "fuzzing is limited to " +
                                          std::to_string(options.maxVertices) +
                                          " vertices");
  }
  if (options.samples < 0 || options.maxStrategies < 1 || options.bound < 0) {
    throw Error(ErrorKind::kFormat,
                "samples and bound must be non-negative, max strategies positive");
  }
  FuzzReport report;
  SplitMix64 root(options.seed);
  for (int i = 0; i < options.samples; ++i) {
    const Game game = DrawGame(g, options, root);
    const auto eq = EnumerateNash(game, options.enumeration);
    report.equilibria += eq.size();
    if (eq.empty()) ++report.emptyGames;
    SoundnessCounts c = Checker(game, options.enumeration).run();
    if (c.violations > 0) c.firstViolation = "sample " + std::to_string(i) + ": " + c.firstViolation;
    report.counts += c;
    ++report.samples;
  }
  return report;
}

std::string FuzzReport::text(const Graph& g, const FuzzOptions& options) const {
  std::ostringstream out;
  out << "graph: " << g.format(g.all()) << " (" << g.edgeCount() << " edges)\n"
      << "seed: " << options.seed << "\n"
      << "samples: " << samples << "\n"
      << "max strategies: " << options.maxStrategies << "\n"
      << "payoff bound: " << options.bound << "\n"
      << "equilibria: " << equilibria << "\n"
      << "games without equilibria: " << emptyGames << "\n"
      << "reflexivity checks: " << counts.reflexivity << "\n"
      << "augmentation checks: " << counts.augmentation << "\n"
      << "transitivity checks: " << counts.transitivity << "\n"
      << "contiguity checks: " << counts.contiguity << "\n"
      << "stitching checks: " << counts.stitching << "\n"
      << "closure checks: " << counts.closure << "\n"
      << "violations: " << counts.violations << "\n";
  if (!passed()) out << "first violation: " << counts.firstViolation << "\n";
  out << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace fdep
