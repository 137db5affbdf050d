#include "fdep/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "fdep/error.hpp"

namespace fdep {

namespace {

Error FormatError(const std::string& message) {
  return Error(ErrorKind::kFormat, message);
}

const Json& Field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw FormatError(std::string("missing field '") + name + "'");
  }
  return doc.at(name);
}

std::string AsString(const Json& j, const std::string& what) {
  if (!j.is_string()) throw FormatError(what + " must be a string");
  return j.get<std::string>();
}

}  // namespace

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("'" + path.string() + "': " + e.what());
  }
}

void WriteJsonFile(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

Graph GraphFromJson(const Json& doc) {
  const Json& vertices = Field(doc, "vertices");
  const Json& edges = Field(doc, "edges");
  if (!vertices.is_array() || !edges.is_array()) {
    throw FormatError("'vertices' and 'edges' must be arrays");
  }
  std::vector<std::string> names;
  for (const Json& v : vertices) names.push_back(AsString(v, "vertex name"));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const Json& e : edges) {
    if (!e.is_array() || e.size() != 2) {
      throw FormatError("every edge must be a 2-element array of names");
    }
    pairs.emplace_back(AsString(e[0], "edge endpoint"),
                       AsString(e[1], "edge endpoint"));
  }
  return Graph(std::move(names), pairs);
}

Json GraphToJson(const Graph& g) {
  Json doc;
  doc["vertices"] = g.names();
  Json edges = Json::array();
  for (const auto& [v, w] : g.edges()) edges.push_back({g.name(v), g.name(w)});
  doc["edges"] = std::move(edges);
  return doc;
}

Graph LoadGraph(const std::filesystem::path& path) {
  return GraphFromJson(ReadJsonFile(path));
}

namespace {

Graph GraphField(const Json& doc, const std::filesystem::path& base_dir) {
  const Json& g = Field(doc, "graph");
  if (g.is_string()) {
    std::filesystem::path p = g.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return LoadGraph(p);
  }
  return GraphFromJson(g);
}

Rational ValueFromJson(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return ParseRational(j.get<std::string>());
  throw FormatError("payoff value must be an integer or a \"p/q\" string");
}

Json ValueToJson(const Rational& r) {
  namespace mp = boost::multiprecision;
  if (mp::denominator(r) == 1 &&
      mp::numerator(r) >= std::numeric_limits<std::int64_t>::min() &&
      mp::numerator(r) <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(mp::numerator(r));
  }
  return FormatRational(r);
}

}  // namespace

Game GameFromJson(const Json& doc, const std::filesystem::path& base_dir) {
  Graph g = GraphField(doc, base_dir);
  const int n = g.size();
  const Json& strategies = Field(doc, "strategies");
  const Json& payoffs = Field(doc, "payoffs");
  if (!strategies.is_object() || !payoffs.is_object()) {
    throw FormatError("'strategies' and 'payoffs' must be objects");
  }
  for (const auto& [name, _] : strategies.items()) g.index(name);
  for (const auto& [name, _] : payoffs.items()) g.index(name);

  std::vector<std::vector<std::string>> labels(n);
  for (VertexIndex v = 0; v < n; ++v) {
    if (!strategies.contains(g.name(v))) {
      throw Error(ErrorKind::kIncompleteGame,
                  "no strategies for player '" + g.name(v) + "'");
    }
    const Json& list = strategies.at(g.name(v));
    if (!list.is_array()) throw FormatError("strategy list must be an array");
    for (const Json& s : list) labels[v].push_back(AsString(s, "strategy label"));
  }

  std::vector<std::vector<Rational>> tables(n);
  std::vector<std::vector<bool>> filled(n);
  for (VertexIndex v = 0; v < n; ++v) {
    const auto local = g.adjPlus(v).members();
    std::size_t entries = 1;
    for (VertexIndex u : local) entries *= labels[u].size();
    tables[v].assign(entries, Rational(0));
    filled[v].assign(entries, false);

    if (!payoffs.contains(g.name(v))) {
      throw Error(ErrorKind::kIncompleteGame,
                  "no payoff table for player '" + g.name(v) + "'");
    }
    const Json& rows = payoffs.at(g.name(v));
    if (!rows.is_array()) throw FormatError("payoff table must be an array");
    for (const Json& row : rows) {
      const Json& profile = Field(row, "profile");
      if (!profile.is_object()) throw FormatError("'profile' must be an object");
      for (const auto& [name, _] : profile.items()) {
        const VertexIndex u = g.index(name);
        if (!g.adjPlus(v).contains(u)) {
          throw Error(ErrorKind::kIncompleteGame,
                      "payoff of '" + g.name(v) + "' keys on '" + name +
                          "', which is outside its neighbourhood");
        }
      }
      std::size_t index = 0;
      for (VertexIndex u : local) {
        if (!profile.contains(g.name(u))) {
          throw Error(ErrorKind::kIncompleteGame,
                      "payoff row of '" + g.name(v) + "' does not fix '" +
                          g.name(u) + "'");
        }
        const std::string label =
            AsString(profile.at(g.name(u)), "strategy label");
        auto it = std::find(labels[u].begin(), labels[u].end(), label);
        if (it == labels[u].end()) {
          throw Error(ErrorKind::kInvalidStrategy,
                      "player '" + g.name(u) + "' has no strategy '" + label + "'");
        }
        index = index * labels[u].size() +
                static_cast<std::size_t>(it - labels[u].begin());
      }
      if (filled[v][index]) {
        throw Error(ErrorKind::kIncompleteGame,
                    "payoff table of '" + g.name(v) + "' repeats a profile");
      }
      filled[v][index] = true;
      tables[v][index] = ValueFromJson(Field(row, "value"));
    }
    const auto missing = std::count(filled[v].begin(), filled[v].end(), false);
    if (missing > 0) {
      throw Error(ErrorKind::kIncompleteGame,
                  "payoff table of '" + g.name(v) + "' is missing " +
                      std::to_string(missing) + " of " +
                      std::to_string(entries) + " local profiles");
    }
  }
  return Game(std::move(g), std::move(labels), std::move(tables));
}

Json GameToJson(const Game& game) {
  const Graph& g = game.graph();
  Json doc;
  doc["graph"] = GraphToJson(g);
  Json strategies = Json::object();
  for (VertexIndex v = 0; v < g.size(); ++v) strategies[g.name(v)] = game.labels(v);
  doc["strategies"] = std::move(strategies);

  Json payoffs = Json::object();
  for (VertexIndex v = 0; v < g.size(); ++v) {
    const auto& local = game.localPlayers(v);
    std::vector<int> digits(local.size(), 0);
    Json rows = Json::array();
    for (const Rational& value : game.table(v)) {
      Json profile = Json::object();
      for (std::size_t k = 0; k < local.size(); ++k) {
        profile[g.name(local[k])] = game.labels(local[k])[digits[k]];
      }
      rows.push_back({{"profile", std::move(profile)}, {"value", ValueToJson(value)}});
      for (int k = static_cast<int>(local.size()) - 1; k >= 0; --k) {
        if (++digits[k] < game.strategyCount(local[k])) break;
        digits[k] = 0;
      }
    }
    payoffs[g.name(v)] = std::move(rows);
  }
  doc["payoffs"] = std::move(payoffs);
  return doc;
}

Game LoadGame(const std::filesystem::path& path) {
  return GameFromJson(ReadJsonFile(path), path.parent_path());
}

Json ProfileToJson(const Game& game, const Profile& p) {
  Json doc = Json::object();
  for (VertexIndex v = 0; v < game.players(); ++v) {
    doc[game.graph().name(v)] = game.labels(v)[p[v]];
  }
  return doc;
}

Profile ProfileFromJson(const Game& game, const Json& doc) {
  if (!doc.is_object()) throw FormatError("profile must be an object");
  std::vector<int> choice(game.players());
  for (VertexIndex v = 0; v < game.players(); ++v) {
    const std::string& name = game.graph().name(v);
    if (!doc.contains(name)) {
      throw Error(ErrorKind::kInvalidStrategy, "profile does not fix '" + name + "'");
    }
    choice[v] = game.strategyIndex(v, AsString(doc.at(name), "strategy label"));
  }
  return Profile(std::move(choice));
}

Formula Query::asFormula() const {
  std::vector<Formula> premises;
  for (const Atom& a : hypotheses) premises.push_back(Formula::Dep(a));
  return Formula::Chain(premises, goal);
}

Query QueryFromJson(const Json& doc, const std::filesystem::path& base_dir) {
  Graph g = GraphField(doc, base_dir);
  HypothesisSet hypotheses;
  if (doc.contains("hypotheses")) {
    const Json& list = doc.at("hypotheses");
    if (!list.is_array()) throw FormatError("'hypotheses' must be an array");
    for (const Json& h : list) hypotheses.push_back(ParseAtom(AsString(h, "hypothesis"), g));
  }
  Formula goal = Parse(AsString(Field(doc, "goal"), "goal"), g);
  return Query{std::move(g), std::move(hypotheses), std::move(goal)};
}

Query LoadQuery(const std::filesystem::path& path) {
  return QueryFromJson(ReadJsonFile(path), path.parent_path());
}

Json CounterexampleToJson(const Counterexample& cx) {
  const Graph& g = cx.game.graph();
  Json doc = GameToJson(cx.game);
  doc["witness"] = {
      {"refuted", Render(cx.refuted, g)},
      {"closure", g.format(cx.aStar)},
      {"differs_at", g.name(cx.witness)},
      {"profiles", {ProfileToJson(cx.game, cx.first), ProfileToJson(cx.game, cx.second)}},
  };
  return doc;
}

Json FormulaCounterexampleToJson(const FormulaCounterexample& cx) {
  const Graph& g = cx.game.graph();
  Json doc = GameToJson(cx.game);
  Json assignment = Json::object();
  for (const auto& [atom, value] : cx.assignment.truth) {
    assignment[Render(atom, g)] = value;
  }
  doc["assignment"] = std::move(assignment);
  return doc;
}

}  // namespace fdep
