#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdep/game.hpp"
#include "fdep/graph.hpp"

namespace fdep {

struct FuzzOptions {
  std::uint64_t seed = 42;
  int samples = 100;
  int maxStrategies = 3;
  int bound = 2;
  // Holds tables have 4^|V| entries and the axiom checks walk triples of
  // subsets, so the harness stays small on purpose.
  int maxVertices = 6;
  EnumerationOptions enumeration;
};

struct SoundnessCounts {
  std::uint64_t reflexivity = 0;
  std::uint64_t augmentation = 0;
  std::uint64_t transitivity = 0;
  std::uint64_t contiguity = 0;
  std::uint64_t stitching = 0;
  std::uint64_t closure = 0;
  std::uint64_t violations = 0;
  std::string firstViolation;

  SoundnessCounts& operator+=(const SoundnessCounts& o);
};

// Checks one game: the four axioms against its full holds table, the
// stitching invariant over every cut and equilibrium pair, and that every
// atom derivable from the atoms the game satisfies also holds in it.
SoundnessCounts CheckSoundness(const Game& game, const EnumerationOptions& options = {});

// The i-th game a fuzz run with these options would draw.
Game FuzzGame(const Graph& g, const FuzzOptions& options, int sample);

struct FuzzReport {
  int samples = 0;
  std::uint64_t equilibria = 0;
  int emptyGames = 0;
  SoundnessCounts counts;

  bool passed() const { return counts.violations == 0; }
  // Byte-identical for identical inputs.
  std::string text(const Graph& g, const FuzzOptions& options) const;
};

FuzzReport Fuzz(const Graph& g, const FuzzOptions& options);

}  // namespace fdep
