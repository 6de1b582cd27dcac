#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "varcore/error.hpp"

namespace varcore::logic {

enum class Op : std::uint8_t { False, True, Var, Not, And, Or, Implies, Iff };

/// Immutable propositional formula over named variables.
///
/// Nodes are shared, so copies are cheap and values may be handed across
/// threads freely. And/Or always carry at least two children, Not exactly one,
/// Implies/Iff exactly two (lhs first). Variable names are identifiers
/// ([A-Za-z_][A-Za-z0-9_]*) other than the keywords `true` and `false`.
class Formula {
 public:
  /// The constant `true`.
  Formula();

  static Formula constant(bool value);
  static Formula var(std::string name);
  static Formula negation(Formula child);
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);

  Op op() const;
  bool is(Op op) const { return this->op() == op; }
  /// Variable name; empty for every other node kind.
  const std::string& name() const;
  const std::vector<Formula>& children() const;
  const Formula& child(std::size_t i) const { return children().at(i); }

  /// Structural equality (child order matters).
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Conjunction that tolerates short inputs: empty -> true, single -> itself.
Formula all_of(std::vector<Formula> parts);
/// Disjunction that tolerates short inputs: empty -> false, single -> itself.
Formula any_of(std::vector<Formula> parts);

bool is_identifier(std::string_view text);

/// Variables in first-occurrence (left-to-right) order, without duplicates.
std::vector<std::string> variables(const Formula& f);
std::set<std::string> variable_set(const Formula& f);

/// Canonical text in the constraint language. parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

using Assignment = std::map<std::string, bool>;

class UndefinedVariableError : public Error {
 public:
  explicit UndefinedVariableError(std::string name);
  const std::string& variable() const { return name_; }

 private:
  std::string name_;
};

/// Throws UndefinedVariableError when a variable reached during evaluation is
/// missing from `values`.
bool eval(const Formula& f, const Assignment& values);

}  // namespace varcore::logic
