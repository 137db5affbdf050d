#include "fdep/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "fdep/error.hpp"

namespace fdep {

Formula Formula::Falsum() {
  static const Formula falsum(std::make_shared<const Node>());
  return falsum;
}

Formula Formula::Dep(Atom atom) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kDep;
  node->atom = atom;
  return Formula(std::move(node));
}

Formula Formula::Implies(Formula antecedent, Formula consequent) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kImplies;
  node->left = std::make_shared<const Formula>(std::move(antecedent));
  node->right = std::make_shared<const Formula>(std::move(consequent));
  return Formula(std::move(node));
}

Formula Formula::Not(Formula f) { return Implies(std::move(f), Falsum()); }

Formula Formula::Chain(const std::vector<Formula>& premises, Formula goal) {
  Formula out = std::move(goal);
  for (auto it = premises.rbegin(); it != premises.rend(); ++it) {
    out = Implies(*it, std::move(out));
  }
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::kFalsum:
      return true;
    case Formula::Kind::kDep:
      return a.atom() == b.atom();
    case Formula::Kind::kImplies:
      return a.antecedent() == b.antecedent() &&
             a.consequent() == b.consequent();
  }
  return false;
}

namespace {

enum class Tok { kName, kDot, kComma, kDep, kArrow, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

const char* TokName(Tok t) {
  switch (t) {
    case Tok::kName: return "vertex name";
    case Tok::kDot: return "'.'";
    case Tok::kComma: return "','";
    case Tok::kDep: return "'|>'";
    case Tok::kArrow: return "'->'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

std::vector<Token> Lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_') {
      while (i < text.size() &&
             ((text[i] >= 'a' && text[i] <= 'z') ||
              (text[i] >= '0' && text[i] <= '9') || text[i] == '_')) {
        ++i;
      }
      out.push_back({Tok::kName, std::string(text.substr(start, i - start)),
                     start});
      continue;
    }
    if (text.substr(i, 2) == "|>") {
      out.push_back({Tok::kDep, "|>", start});
      i += 2;
      continue;
    }
    if (text.substr(i, 2) == "->") {
      out.push_back({Tok::kArrow, "->", start});
      i += 2;
      continue;
    }
    switch (c) {
      case '.': out.push_back({Tok::kDot, ".", start}); break;
      case ',': out.push_back({Tok::kComma, ",", start}); break;
      case '(': out.push_back({Tok::kLParen, "(", start}); break;
      case ')': out.push_back({Tok::kRParen, ")", start}); break;
      default:
        throw SyntaxError(start, std::string("unexpected character '") + c +
                                     "'");
    }
    ++i;
  }
  out.push_back({Tok::kEnd, "", text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Graph& g)
      : tokens_(std::move(tokens)), g_(g) {}

  Formula parseAll() {
    Formula f = formula();
    if (peek().kind != Tok::kEnd) unexpected("'->' or end of input");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void unexpected(const std::string& expected) const {
    throw SyntaxError(peek().pos, "expected " + expected + ", found " +
                                      TokName(peek().kind));
  }

  void expect(Tok kind) {
    if (peek().kind != kind) unexpected(TokName(kind));
    take();
  }

  Formula formula() {
    Formula left = implicand();
    if (peek().kind == Tok::kArrow) {
      take();
      return Formula::Implies(std::move(left), formula());
    }
    return left;
  }

  Formula implicand() {
    const Token& t = peek();
    if (t.kind == Tok::kLParen) {
      take();
      Formula inner = formula();
      expect(Tok::kRParen);
      return inner;
    }
    // 'false' is a keyword unless it starts a vertex list.
    if (t.kind == Tok::kName && t.text == "false" &&
        peek(1).kind != Tok::kComma && peek(1).kind != Tok::kDep) {
      take();
      return Formula::Falsum();
    }
    if (t.kind == Tok::kName || t.kind == Tok::kDot) {
      Atom a;
      a.lhs = vlist();
      expect(Tok::kDep);
      a.rhs = vlist();
      return Formula::Dep(a);
    }
    unexpected("'false', an atom or '('");
  }

  VertexSet vlist() {
    if (peek().kind == Tok::kDot) {
      take();
      return VertexSet();
    }
    VertexSet s = vertex();
    while (peek().kind == Tok::kComma) {
      take();
      s |= vertex();
    }
    return s;
  }

  VertexSet vertex() {
    if (peek().kind != Tok::kName) unexpected("vertex name");
    const Token& t = take();
    if (!g_.hasVertex(t.text)) {
      throw Error(ErrorKind::kInvalidVertex,
                  "unknown vertex '" + t.text + "' at position " +
                      std::to_string(t.pos));
    }
    return VertexSet::Single(g_.index(t.text));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Graph& g_;
};

void RenderInto(const Formula& f, const Graph& g, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::kFalsum:
      out += "false";
      return;
    case Formula::Kind::kDep:
      out += Render(f.atom(), g);
      return;
    case Formula::Kind::kImplies: {
      const bool wrap = f.antecedent().isImplies();
      if (wrap) out += '(';
      RenderInto(f.antecedent(), g, out);
      if (wrap) out += ')';
      out += " -> ";
      RenderInto(f.consequent(), g, out);
      return;
    }
  }
}

void CollectAtoms(const Formula& f, std::vector<Atom>& out) {
  if (f.isDep()) {
    out.push_back(f.atom());
  } else if (f.isImplies()) {
    CollectAtoms(f.antecedent(), out);
    CollectAtoms(f.consequent(), out);
  }
}

}  // namespace

Formula Parse(std::string_view text, const Graph& g) {
  auto tokens = Lex(text);
  if (tokens.size() == 1) throw SyntaxError(0, "empty formula");
  return Parser(std::move(tokens), g).parseAll();
}

Atom ParseAtom(std::string_view text, const Graph& g) {
  const Formula f = Parse(text, g);
  if (!f.isDep()) {
    throw Error(ErrorKind::kSyntax,
                "expected a single dependence atom, got '" +
                    std::string(text) + "'");
  }
  return f.atom();
}

std::string Render(const Atom& a, const Graph& g) {
  return g.format(a.lhs) + " |> " + g.format(a.rhs);
}

std::string Render(const Formula& f, const Graph& g) {
  std::string out;
  RenderInto(f, g, out);
  return out;
}

std::vector<Atom> AtomsOf(const Formula& f) {
  std::vector<Atom> out;
  CollectAtoms(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool EvalProp(const Formula& f,
              const std::function<bool(const Atom&)>& truth) {
  switch (f.kind()) {
    case Formula::Kind::kFalsum:
      return false;
    case Formula::Kind::kDep:
      return truth(f.atom());
    case Formula::Kind::kImplies:
      return !EvalProp(f.antecedent(), truth) ||
             EvalProp(f.consequent(), truth);
  }
  return false;
}

bool EvalProp(const Formula& f, const std::map<Atom, bool>& truth) {
  // Every atom must be assigned, including ones evaluation would skip.
  for (const Atom& a : AtomsOf(f)) {
    if (!truth.contains(a)) {
      throw Error(ErrorKind::kIncompleteAssignment,
                  "truth assignment has no value for an atom of the formula");
    }
  }
  return EvalProp(f, [&](const Atom& a) { return truth.at(a); });
}

}  // namespace fdep
