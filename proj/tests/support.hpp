#pragma once

#include <functional>
#include <vector>

#include "gtest/gtest.h"

#include "fdep/error.hpp"
#include "fdep/game.hpp"

namespace fdep::test_support {

inline void ExpectKind(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << ErrorKindName(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

// Every profile over the given strategy counts, first player most significant.
inline std::vector<Profile> AllProfiles(const std::vector<int>& sizes) {
  std::vector<Profile> out;
  std::vector<int> p(sizes.size(), 0);
  while (true) {
    out.emplace_back(p);
    int k = static_cast<int>(sizes.size()) - 1;
    while (k >= 0 && ++p[k] == sizes[k]) p[k--] = 0;
    if (k < 0) return out;
  }
}

using PayoffOracle = std::function<Rational(int v, const std::vector<int>& p)>;

// Pure equilibria straight from the definition.
inline std::vector<Profile> NashByDefinition(const std::vector<int>& sizes,
                                             const PayoffOracle& payoff) {
  std::vector<Profile> out;
  for (const Profile& p : AllProfiles(sizes)) {
    bool stable = true;
    for (int v = 0; v < static_cast<int>(sizes.size()) && stable; ++v) {
      std::vector<int> q = p.choices();
      const Rational here = payoff(v, q);
      for (int s = 0; s < sizes[v]; ++s) {
        q[v] = s;
        if (payoff(v, q) > here) stable = false;
      }
    }
    if (stable) out.push_back(p);
  }
  return out;
}

inline std::vector<int> Sizes(const Game& game) {
  std::vector<int> sizes;
  for (int v = 0; v < game.players(); ++v) sizes.push_back(game.strategyCount(v));
  return sizes;
}

// a |> b by the definition: any two equilibria agreeing on lhs agree on rhs.
inline bool HoldsByDefinition(const std::vector<Profile>& ne, const Atom& a) {
  for (const Profile& p : ne) {
    for (const Profile& q : ne) {
      if (p.agreesOn(q, a.lhs) && !p.agreesOn(q, a.rhs)) return false;
    }
  }
  return true;
}

}  // namespace fdep::test_support
