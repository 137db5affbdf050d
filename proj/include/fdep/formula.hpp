#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fdep/graph.hpp"

namespace fdep {

// Dependence atom lhs |> rhs: agreement on lhs forces agreement on rhs.
struct Atom {
  VertexSet lhs;
  VertexSet rhs;

  auto operator<=>(const Atom&) const = default;
};

// Formulas are immutable trees with shared subterms; copying is cheap.
class Formula {
 public:
  enum class Kind { kFalsum, kDep, kImplies };

  static Formula Falsum();
  static Formula Dep(Atom atom);
  static Formula Implies(Formula antecedent, Formula consequent);
  // phi -> false
  static Formula Not(Formula f);
  // h1 -> (h2 -> ... -> goal)
  static Formula Chain(const std::vector<Formula>& premises, Formula goal);

  Kind kind() const { return node_->kind; }
  bool isFalsum() const { return kind() == Kind::kFalsum; }
  bool isDep() const { return kind() == Kind::kDep; }
  bool isImplies() const { return kind() == Kind::kImplies; }

  // Valid only for the matching kind.
  const Atom& atom() const { return node_->atom; }
  const Formula& antecedent() const { return *node_->left; }
  const Formula& consequent() const { return *node_->right; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind = Kind::kFalsum;
    Atom atom;
    std::shared_ptr<const Formula> left;
    std::shared_ptr<const Formula> right;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Grammar (whitespace insignificant, '->' right associative):
//   formula   := implicand ( '->' formula )?
//   implicand := 'false' | atom | '(' formula ')'
//   atom      := vlist '|>' vlist
//   vlist     := '.' | name ( ',' name )*
// Throws SyntaxError (with byte position) or Error(kInvalidVertex).
Formula Parse(std::string_view text, const Graph& g);

// Parses a formula and requires it to be a single atom.
Atom ParseAtom(std::string_view text, const Graph& g);

// Canonical text: sorted vertex lists, only the parentheses the grammar needs.
std::string Render(const Formula& f, const Graph& g);
std::string Render(const Atom& a, const Graph& g);

// Distinct Dep leaves, in ascending Atom order.
std::vector<Atom> AtomsOf(const Formula& f);

// Classical evaluation with Falsum false. Throws
// Error(kIncompleteAssignment) if an atom of f is missing from truth.
bool EvalProp(const Formula& f, const std::map<Atom, bool>& truth);
bool EvalProp(const Formula& f, const std::function<bool(const Atom&)>& truth);

}  // namespace fdep
