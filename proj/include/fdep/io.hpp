#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "fdep/canonical.hpp"
#include "fdep/derivation.hpp"
#include "fdep/formula.hpp"
#include "fdep/game.hpp"
#include "fdep/graph.hpp"

namespace fdep {

using Json = nlohmann::ordered_json;

// Reads and parses a JSON document; throws Error(kFormat).
Json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const std::filesystem::path& path, const Json& doc);

// {"vertices": [...], "edges": [["a","b"], ...]}
Graph GraphFromJson(const Json& doc);
Json GraphToJson(const Graph& g);
Graph LoadGraph(const std::filesystem::path& path);

// {"graph": <inline graph or path>, "strategies": {v: [labels]},
//  "payoffs": {v: [{"profile": {u: label, ...}, "value": 3 | "p/q"}, ...]}}
// Relative graph paths resolve against base_dir. Rejects tables that are not
// total over Adj+(v), key on other vertices, or repeat a local profile.
Game GameFromJson(const Json& doc, const std::filesystem::path& base_dir = {});
Json GameToJson(const Game& game);
Game LoadGame(const std::filesystem::path& path);

Json ProfileToJson(const Game& game, const Profile& p);
Profile ProfileFromJson(const Game& game, const Json& doc);

// {"graph": ..., "hypotheses": ["a |> d", ...], "goal": "b,c |> d"}
struct Query {
  Graph graph;
  HypothesisSet hypotheses;
  Formula goal;

  // hypotheses[0] -> ... -> goal
  Formula asFormula() const;
};

Query QueryFromJson(const Json& doc, const std::filesystem::path& base_dir = {});
Query LoadQuery(const std::filesystem::path& path);

// Game document plus
//   "witness": {"refuted": "<atom>", "profiles": [<profile>, <profile>],
//               "closure": "<aStar>"}
Json CounterexampleToJson(const Counterexample& cx);
// Game document plus "assignment": {"<atom>": true|false, ...}.
Json FormulaCounterexampleToJson(const FormulaCounterexample& cx);

}  // namespace fdep
