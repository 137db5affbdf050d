#include "fdep/game.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <thread>
#include <unordered_map>

#include "fdep/error.hpp"
#include "fdep/rng.hpp"

namespace fdep {

namespace mp = boost::multiprecision;

Rational ParseRational(const std::string& text) {
  auto bad = [&]() {
    return Error(ErrorKind::kFormat, "invalid rational value '" + text + "'");
  };
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw bad();
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw bad();
    }
    return mp::cpp_int(s[0] == '+' ? s.substr(1) : s);
  };
  if (slash == std::string::npos) return Rational(parse_int(text, true));
  const mp::cpp_int num = parse_int(text.substr(0, slash), true);
  const mp::cpp_int den = parse_int(text.substr(slash + 1), false);
  if (den == 0) throw bad();
  return Rational(num, den);
}

std::string FormatRational(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

bool Profile::agreesOn(const Profile& other, VertexSet x) const {
  bool same = true;
  x.forEach([&](VertexIndex v) { same = same && choice_[v] == other.choice_[v]; });
  return same;
}

Game::Game(Graph graph, std::vector<std::vector<std::string>> labels,
           std::vector<std::vector<Rational>> tables)
    : graph_(std::move(graph)),
      labels_(std::move(labels)),
      tables_(std::make_shared<const std::vector<std::vector<Rational>>>(
          std::move(tables))) {
  const int n = graph_.size();
  if (static_cast<int>(labels_.size()) != n) {
    throw Error(ErrorKind::kIncompleteGame,
                "strategy lists given for " + std::to_string(labels_.size()) +
                    " players, graph has " + std::to_string(n));
  }
  for (VertexIndex v = 0; v < n; ++v) {
    if (labels_[v].empty()) {
      throw Error(ErrorKind::kIncompleteGame,
                  "player '" + graph_.name(v) + "' has no strategies");
    }
    std::set<std::string> seen(labels_[v].begin(), labels_[v].end());
    if (seen.size() != labels_[v].size()) {
      throw Error(ErrorKind::kIncompleteGame,
                  "player '" + graph_.name(v) + "' has duplicate strategies");
    }
  }
  buildIndex();
  if (static_cast<int>(tables_->size()) != n) {
    throw Error(ErrorKind::kIncompleteGame, "payoff tables missing");
  }
  for (VertexIndex v = 0; v < n; ++v) {
    std::size_t expected = 1;
    for (VertexIndex u : local_[v]) expected *= labels_[u].size();
    if ((*tables_)[v].size() != expected) {
      throw Error(ErrorKind::kIncompleteGame,
                  "payoff table of '" + graph_.name(v) + "' has " +
                      std::to_string((*tables_)[v].size()) + " entries, expected " +
                      std::to_string(expected));
    }
  }
  buildFastTables();
}

Game Game::FromFunction(Graph graph,
                        std::vector<std::vector<std::string>> labels,
                        const PayoffFn& payoff) {
  const int n = graph.size();
  if (static_cast<int>(labels.size()) != n) {
    throw Error(ErrorKind::kIncompleteGame, "strategy list count mismatch");
  }
  std::vector<std::vector<Rational>> tables(n);
  for (VertexIndex v = 0; v < n; ++v) {
    const auto local = graph.adjPlus(v).members();
    Profile p(std::vector<int>(n, 0));
    // Odometer over Adj+(v), last member fastest, matching the table layout.
    while (true) {
      tables[v].push_back(payoff(v, p));
      int k = static_cast<int>(local.size()) - 1;
      for (; k >= 0; --k) {
        const VertexIndex u = local[k];
        if (++p[u] < static_cast<int>(labels.at(u).size())) break;
        p[u] = 0;
      }
      if (k < 0) break;
    }
  }
  return Game(std::move(graph), std::move(labels), std::move(tables));
}

void Game::buildIndex() {
  const int n = graph_.size();
  local_.assign(n, {});
  strides_.assign(n, {});
  for (VertexIndex v = 0; v < n; ++v) {
    local_[v] = graph_.adjPlus(v).members();
    strides_[v].assign(local_[v].size(), 1);
    std::size_t stride = 1;
    for (int k = static_cast<int>(local_[v].size()) - 1; k >= 0; --k) {
      strides_[v][k] = stride;
      stride *= labels_[local_[v][k]].size();
    }
  }
}

void Game::buildFastTables() {
  const int n = graph_.size();
  std::vector<std::vector<std::int64_t>> fast(n);
  const mp::cpp_int lo = std::numeric_limits<std::int64_t>::min();
  const mp::cpp_int hi = std::numeric_limits<std::int64_t>::max();
  for (VertexIndex v = 0; v < n; ++v) {
    mp::cpp_int scale = 1;
    for (const Rational& r : (*tables_)[v]) {
      scale = mp::lcm(scale, mp::denominator(r));
    }
    std::vector<std::int64_t> scaled;
    scaled.reserve((*tables_)[v].size());
    bool fits = true;
    for (const Rational& r : (*tables_)[v]) {
      const mp::cpp_int x = mp::numerator(r) * (scale / mp::denominator(r));
      if (x < lo || x > hi) {
        fits = false;
        break;
      }
      scaled.push_back(static_cast<std::int64_t>(x));
    }
    if (fits) fast[v] = std::move(scaled);
  }
  fast_ = std::make_shared<const std::vector<std::vector<std::int64_t>>>(std::move(fast));
}

int Game::strategyIndex(VertexIndex v, const std::string& label) const {
  const auto& ls = labels_.at(v);
  auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end()) {
    throw Error(ErrorKind::kInvalidStrategy,
                "player '" + graph_.name(v) + "' has no strategy '" + label +
                    "'");
  }
  return static_cast<int>(it - ls.begin());
}

std::uint64_t Game::profileCount() const {
  std::uint64_t total = 1;
  for (const auto& ls : labels_) {
    const std::uint64_t k = ls.size();
    if (total > std::numeric_limits<std::uint64_t>::max() / k) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= k;
  }
  return total;
}

std::size_t Game::localIndex(VertexIndex v, const Profile& p) const {
  std::size_t idx = 0;
  const auto& local = local_[v];
  const auto& strides = strides_[v];
  for (std::size_t k = 0; k < local.size(); ++k) {
    idx += static_cast<std::size_t>(p[local[k]]) * strides[k];
  }
  return idx;
}

void Game::checkProfile(const Profile& p) const {
  if (p.size() != players()) {
    throw Error(ErrorKind::kInvalidStrategy,
                "profile has " + std::to_string(p.size()) +
                    " entries, game has " + std::to_string(players()) +
                    " players");
  }
  for (VertexIndex v = 0; v < players(); ++v) {
    if (p[v] < 0 || p[v] >= strategyCount(v)) {
      throw Error(ErrorKind::kInvalidStrategy,
                  "strategy index out of range for '" + graph_.name(v) + "'");
    }
  }
}

std::string Game::format(const Profile& p) const {
  std::string out = "(";
  for (VertexIndex v = 0; v < p.size(); ++v) {
    if (v > 0) out += ',';
    out += labels_[v][p[v]];
  }
  return out + ")";
}

Rational Payoff(const Game& game, VertexIndex v, const Profile& p) {
  game.checkProfile(p);
  const std::size_t idx = game.localIndex(v, p);
  if (idx >= (*game.tables_)[v].size()) {
    throw Error(ErrorKind::kIncompleteGame,
                "no payoff entry for '" + game.graph_.name(v) + "'");
  }
  return (*game.tables_)[v][idx];
}

namespace {

// v's position inside its own local key.
std::size_t SelfStride(const std::vector<VertexIndex>& local,
                       const std::vector<std::size_t>& strides, VertexIndex v) {
  for (std::size_t k = 0; k < local.size(); ++k) {
    if (local[k] == v) return strides[k];
  }
  return 0;
}

template <typename Value>
bool CanImprove(const std::vector<Value>& table, std::size_t idx,
                std::size_t stride, int current, int count) {
  const Value& base = table[idx];
  const std::size_t origin = idx - static_cast<std::size_t>(current) * stride;
  for (int s = 0; s < count; ++s) {
    if (s != current && table[origin + static_cast<std::size_t>(s) * stride] > base) {
      return true;
    }
  }
  return false;
}

}  // namespace

bool IsNash(const Game& game, const Profile& p) {
  for (VertexIndex v = 0; v < game.players(); ++v) {
    const std::size_t idx = game.localIndex(v, p);
    const std::size_t stride =
        SelfStride(game.local_[v], game.strides_[v], v);
    const int count = game.strategyCount(v);
    const bool improves =
        (*game.fast_)[v].empty()
            ? CanImprove((*game.tables_)[v], idx, stride, p[v], count)
            : CanImprove((*game.fast_)[v], idx, stride, p[v], count);
    if (improves) return false;
  }
  return true;
}

namespace {

void DecodeProfile(const Game& game, std::uint64_t linear, Profile& p) {
  for (VertexIndex v = game.players() - 1; v >= 0; --v) {
    const std::uint64_t k = game.strategyCount(v);
    p[v] = static_cast<int>(linear % k);
    linear /= k;
  }
}

void AdvanceProfile(const Game& game, Profile& p) {
  for (VertexIndex v = game.players() - 1; v >= 0; --v) {
    if (++p[v] < game.strategyCount(v)) return;
    p[v] = 0;
  }
}

std::vector<Profile> ScanRange(const Game& game, std::uint64_t begin,
                               std::uint64_t end) {
  std::vector<Profile> found;
  if (begin >= end) return found;
  Profile p(std::vector<int>(game.players(), 0));
  DecodeProfile(game, begin, p);
  for (std::uint64_t i = begin; i < end; ++i) {
    if (IsNash(game, p)) found.push_back(p);
    AdvanceProfile(game, p);
  }
  return found;
}

}  // namespace

std::vector<Profile> EnumerateNash(const Game& game,
                                   const EnumerationOptions& options) {
  const std::uint64_t total = game.profileCount();
  if (total > options.guard) {
    throw Error(ErrorKind::kTooLarge,
                "game has " +
                    (total == std::numeric_limits<std::uint64_t>::max()
                         ? std::string("more than 2^64")
                         : std::to_string(total)) +
                    " profiles, above the enumeration guard of " +
                    std::to_string(options.guard) +
                    "; raise the guard (--guard) to enumerate it");
  }
  const unsigned threads = std::max(
      1u, static_cast<unsigned>(std::min<std::uint64_t>(options.threads, total)));
  if (threads == 1) return ScanRange(game, 0, total);

  // Chunks are contiguous in lexicographic order, so concatenating them in
  // chunk order reproduces the single-threaded output.
  std::vector<std::vector<Profile>> parts(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = total * t / threads;
    const std::uint64_t end = total * (t + 1) / threads;
    workers.emplace_back([&, t, begin, end] { parts[t] = ScanRange(game, begin, end); });
  }
  for (auto& w : workers) w.join();
  std::vector<Profile> all;
  for (auto& part : parts) {
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

EquilibriumSet::EquilibriumSet(const Game& game,
                               const EnumerationOptions& options)
    : EquilibriumSet(game, EnumerateNash(game, options)) {}

EquilibriumSet::EquilibriumSet(const Game& game, std::vector<Profile> equilibria)
    : equilibria_(std::move(equilibria)) {
  if (game.profileCount() == std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorKind::kTooLarge, "profile space too large to index");
  }
  radix_.assign(game.players(), 1);
  std::uint64_t r = 1;
  for (VertexIndex v = 0; v < game.players(); ++v) {
    radix_[v] = r;
    r *= static_cast<std::uint64_t>(game.strategyCount(v));
  }
}

std::uint64_t EquilibriumSet::key(const Profile& p, VertexSet s) const {
  std::uint64_t k = 0;
  s.forEach([&](VertexIndex v) {
    k += static_cast<std::uint64_t>(p[v]) * radix_[v];
  });
  return k;
}

bool EquilibriumSet::holds(const Atom& a) const {
  if (a.rhs.subsetOf(a.lhs) || equilibria_.size() < 2) return true;
  std::unordered_map<std::uint64_t, std::uint64_t> seen;
  seen.reserve(equilibria_.size());
  for (const Profile& p : equilibria_) {
    const std::uint64_t rhs = key(p, a.rhs);
    auto [it, inserted] = seen.emplace(key(p, a.lhs), rhs);
    if (!inserted && it->second != rhs) return false;
  }
  return true;
}

bool EquilibriumSet::models(const Formula& f) const {
  return EvalProp(f, [&](const Atom& a) { return holds(a); });
}

bool HoldsAtom(const Game& game, const Atom& a,
               const EnumerationOptions& options) {
  game.graph().checkSubset(a.lhs);
  game.graph().checkSubset(a.rhs);
  return EquilibriumSet(game, options).holds(a);
}

bool Models(const Game& game, const Formula& f,
            const EnumerationOptions& options) {
  return EquilibriumSet(game, options).models(f);
}

Profile Stitch(const Profile& p, const Profile& q, const Cut& cut) {
  Profile e = p;
  cut.w.forEach([&](VertexIndex v) { e[v] = q[v]; });
  return e;
}

Game RandomGame(const Graph& g, const std::vector<int>& sizes, int bound,
                std::uint64_t seed) {
  if (static_cast<int>(sizes.size()) != g.size()) {
    throw Error(ErrorKind::kInvalidStrategy,
                "strategy counts given for " + std::to_string(sizes.size()) +
                    " players, graph has " + std::to_string(g.size()));
  }
  std::vector<std::vector<std::string>> labels(g.size());
  for (VertexIndex v = 0; v < g.size(); ++v) {
    if (sizes[v] < 1) {
      throw Error(ErrorKind::kInvalidStrategy,
                  "player '" + g.name(v) + "' needs at least one strategy");
    }
    for (int s = 0; s < sizes[v]; ++s) labels[v].push_back(std::to_string(s));
  }
  if (bound < 0) bound = -bound;
  SplitMix64 root(seed);
  std::vector<std::vector<Rational>> tables(g.size());
  for (VertexIndex v = 0; v < g.size(); ++v) {
    SplitMix64 rng = root.split();
    std::size_t entries = 1;
    g.adjPlus(v).forEach([&](VertexIndex u) { entries *= sizes[u]; });
    tables[v].reserve(entries);
    for (std::size_t i = 0; i < entries; ++i) {
      tables[v].emplace_back(rng.between(-bound, bound));
    }
  }
  return Game(g, std::move(labels), std::move(tables));
}

}  // namespace fdep
