#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fdep/canonical.hpp"
#include "fdep/derivation.hpp"
#include "fdep/error.hpp"
#include "fdep/fixtures.hpp"
#include "fdep/harness.hpp"
#include "fdep/io.hpp"

namespace fs = std::filesystem;
using namespace fdep;

namespace {

// Exit codes are verdicts: 0 true, 1 false, 2 error.
constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kFailure = 2;

struct Settings {
  std::uint64_t guard = EnumerationOptions{}.guard;
  unsigned threads = 1;
};

EnumerationOptions Enumeration(const Settings& s) {
  EnumerationOptions o;
  o.guard = s.guard;
  o.threads = s.threads;
  return o;
}

ClosureOptions Closure(const Settings& s) {
  ClosureOptions o;
  o.threads = s.threads;
  return o;
}

void WarnIfVacuous(const EquilibriumSet& ne) {
  if (ne.empty()) {
    std::cerr << "warning: the game has no pure Nash equilibrium, so every "
                 "dependence atom holds vacuously\n";
  }
}

int Nash(const Settings& s, const std::string& file, std::ostream& out) {
  const Game game = LoadGame(file);
  const EquilibriumSet ne(game, Enumeration(s));
  for (const Profile& p : ne.profiles()) out << game.format(p) << '\n';
  WarnIfVacuous(ne);
  return kTrue;
}

int ModelsCmd(const Settings& s, const std::string& file, const std::string& text,
              std::ostream& out) {
  const Game game = LoadGame(file);
  const Formula f = Parse(text, game.graph());
  const EquilibriumSet ne(game, Enumeration(s));
  WarnIfVacuous(ne);
  const bool verdict = ne.models(f);
  out << (verdict ? "true" : "false") << '\n';
  return verdict ? kTrue : kFalse;
}

// h1 -> ... -> hk -> goal with atom premises and an atom goal is the atom
// query "goal from h + {h1..hk}", which is the form traces are built for.
bool AsAtomQuery(const Query& q, HypothesisSet& h, Atom& goal) {
  h = q.hypotheses;
  Formula f = q.goal;
  while (f.isImplies() && f.antecedent().isDep()) {
    h.push_back(f.antecedent().atom());
    f = f.consequent();
  }
  if (!f.isDep()) return false;
  goal = f.atom();
  return true;
}

int Derive(const Settings& s, const std::string& file, bool trace, bool oracle,
           std::ostream& out) {
  const Query q = LoadQuery(file);
  HypothesisSet h;
  Atom goal;
  bool verdict = false;
  const bool atomic = AsAtomQuery(q, h, goal);
  if (atomic && oracle) {
    verdict = SaturateAtoms(q.graph, h).contains(goal);
  } else if (atomic) {
    verdict = DerivesAtom(q.graph, h, goal, Closure(s));
  } else {
    DecideOptions options;
    options.closure = Closure(s);
    options.oracle = oracle;
    verdict = DecideFormula(q.graph, q.asFormula(), options);
  }
  out << (verdict ? "derivable" : "not derivable") << '\n';
  if (trace && !atomic) {
    std::cerr << "note: traces are only produced for chains of atoms\n";
  } else if (trace && verdict) {
    out << FormatTrace(q.graph, DeriveTrace(q.graph, h, goal, Closure(s)));
  }
  return verdict ? kTrue : kFalse;
}

int CounterexampleCmd(const Settings& s, const std::string& file,
                      const std::string& out_file, std::ostream& out) {
  const Query q = LoadQuery(file);
  CanonicalGames games(q.graph, Closure(s), Enumeration(s));
  Json doc;
  std::string summary;
  try {
    if (q.goal.isDep()) {
      const Counterexample cx = games.counterexample(q.hypotheses, q.goal.atom());
      doc = CounterexampleToJson(cx);
      summary = "refutes " + Render(cx.refuted, q.graph) + " with closure " +
                q.graph.format(cx.aStar) + ", differing at " + q.graph.name(cx.witness);
    } else {
      const FormulaCounterexample cx = games.counterexample(q.asFormula());
      doc = FormulaCounterexampleToJson(cx);
      summary = "refutes " + Render(q.asFormula(), q.graph) + " with " +
                std::to_string(cx.game.profileCount()) + " profiles";
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNoCounterexample) throw;
    out << "derivable: no counterexample exists\n";
    return kFalse;
  }
  if (out_file.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    WriteJsonFile(out_file, doc);
    out << summary << '\n' << "wrote " << out_file << '\n';
  }
  return kTrue;
}

int FuzzCmd(const Settings& s, const std::string& file, FuzzOptions options,
            std::ostream& out) {
  const Graph g = LoadGraph(file);
  options.enumeration = Enumeration(s);
  const FuzzReport report = Fuzz(g, options);
  out << report.text(g, options);
  return report.passed() ? kTrue : kFalse;
}

int ValidateGraph(const std::string& file, std::ostream& out) {
  const Graph g = LoadGraph(file);
  out << "valid: " << g.size() << " vertices, " << g.edgeCount() << " edges\n";
  return kTrue;
}

int ListFixtures(std::ostream& out) {
  for (const auto& c : fixtures::AllCases()) {
    out << c.name << ": [" << c.graph << (c.game ? "/" + *c.game : "") << "] ";
    for (const auto& h : c.hypotheses) out << h << "; ";
    out << c.formula << " => " << fixtures::VerdictName(c.expected) << '\n';
  }
  return kTrue;
}

int CheckFixtures(std::ostream& out) {
  int failures = 0;
  for (const auto& c : fixtures::AllCases()) {
    const bool ok = fixtures::Reproduces(c);
    if (!ok) ++failures;
    out << (ok ? "ok   " : "FAIL ") << c.name << '\n';
  }
  return failures == 0 ? kTrue : kFalse;
}

int ExportFixtures(const std::string& dir, std::ostream& out) {
  const fs::path root(dir);
  fs::create_directories(root / "graphs");
  fs::create_directories(root / "games");
  fs::create_directories(root / "queries");
  int written = 0;
  for (const auto& [name, g] : fixtures::AllGraphs()) {
    WriteJsonFile(root / "graphs" / (name + ".json"), GraphToJson(g));
    ++written;
  }
  for (const auto& [name, game] : fixtures::AllGames()) {
    WriteJsonFile(root / "games" / (name + ".json"), GameToJson(game));
    ++written;
  }
  Json index = Json::array();
  for (const auto& c : fixtures::AllCases()) {
    Json entry = {{"name", c.name}, {"graph", "graphs/" + c.graph + ".json"}};
    if (c.game) {
      entry["game"] = "games/" + *c.game + ".json";
    } else {
      Json query = {{"graph", "../graphs/" + c.graph + ".json"},
                    {"hypotheses", c.hypotheses},
                    {"goal", c.formula}};
      WriteJsonFile(root / "queries" / (c.name + ".json"), query);
      entry["query"] = "queries/" + c.name + ".json";
      ++written;
    }
    entry["hypotheses"] = c.hypotheses;
    entry["formula"] = c.formula;
    entry["expected"] = fixtures::VerdictName(c.expected);
    entry["note"] = c.note;
    index.push_back(std::move(entry));
  }
  WriteJsonFile(root / "cases.json", index);
  out << "wrote " << written + 1 << " files to " << dir << '\n';
  return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional dependence in graphical strategic games"};
  app.require_subcommand(1);
  Settings settings;
  app.add_option("--guard", settings.guard, "Maximum number of profiles to enumerate")
      ->capture_default_str();
  app.add_option("--threads", settings.threads, "Worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();

  std::string file, formula, out_file, dir;
  bool trace = false, oracle = false;
  FuzzOptions fuzz;

  auto* nash = app.add_subcommand("nash", "List the pure Nash equilibria of a game");
  nash->add_option("game", file, "Game file")->required();

  auto* models = app.add_subcommand("models", "Check a formula against a game");
  models->add_option("game", file, "Game file")->required();
  models->add_option("formula", formula, "Formula, e.g. \"a |> b\"")->required();

  auto* derive = app.add_subcommand("derive", "Decide derivability of a query");
  derive->add_option("query", file, "Query file")->required();
  derive->add_flag("--trace", trace, "Print a proof of a derivable atom");
  derive->add_flag("--oracle", oracle, "Use brute-force saturation");

  auto* cx = app.add_subcommand("counterexample", "Build a game refuting a query");
  cx->add_option("query", file, "Query file")->required();
  cx->add_option("--out", out_file, "Write the game here instead of stdout");

  auto* fz = app.add_subcommand("fuzz", "Check soundness on random games");
  fz->add_option("graph", file, "Graph file")->required();
  fz->add_option("--seed", fuzz.seed)->capture_default_str();
  fz->add_option("--samples", fuzz.samples)->check(CLI::NonNegativeNumber)->capture_default_str();
  fz->add_option("--max-strategies", fuzz.maxStrategies)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fz->add_option("--bound", fuzz.bound, "Payoffs are drawn from [-bound, bound]")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* graph = app.add_subcommand("graph", "Graph utilities");
  graph->require_subcommand(1);
  auto* validate = graph->add_subcommand("validate", "Load and check a graph file");
  validate->add_option("graph", file, "Graph file")->required();

  auto* fx = app.add_subcommand("fixtures", "Built-in example corpus");
  fx->require_subcommand(1);
  auto* fx_list = fx->add_subcommand("list", "List the fixture cases");
  auto* fx_check = fx->add_subcommand("check", "Re-run every fixture case");
  auto* fx_export = fx->add_subcommand("export", "Write the corpus as JSON files");
  fx_export->add_option("dir", dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kFailure;
  }

  std::ostringstream out;
  int code = kFailure;
  try {
    if (*nash) code = Nash(settings, file, out);
    else if (*models) code = ModelsCmd(settings, file, formula, out);
    else if (*derive) code = Derive(settings, file, trace, oracle, out);
    else if (*cx) code = CounterexampleCmd(settings, file, out_file, out);
    else if (*fz) code = FuzzCmd(settings, file, fuzz, out);
    else if (*validate) code = ValidateGraph(file, out);
    else if (*fx_list) code = ListFixtures(out);
    else if (*fx_check) code = CheckFixtures(out);
    else if (*fx_export) code = ExportFixtures(dir, out);
  } catch (const Error& e) {
    std::cerr << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  std::cout << out.str() << std::flush;
  return code;
}
