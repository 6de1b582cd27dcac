#include "varcore/formula.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace varcore::logic {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> children;
};

Formula::Formula() : Formula(constant(true)) {}

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::constant(bool value) {
  static const auto t = std::make_shared<const Node>(Node{Op::True, {}, {}});
  static const auto f = std::make_shared<const Node>(Node{Op::False, {}, {}});
  return Formula(value ? t : f);
}

Formula Formula::var(std::string name) {
  if (!is_identifier(name)) {
    throw Error("invalid variable name '" + name + "'");
  }
  return Formula(std::make_shared<const Node>(Node{Op::Var, std::move(name), {}}));
}

Formula Formula::negation(Formula child) {
  return Formula(std::make_shared<const Node>(Node{Op::Not, {}, {std::move(child)}}));
}

Formula Formula::conjunction(std::vector<Formula> children) {
  if (children.size() < 2) throw Error("conjunction needs at least two operands");
  return Formula(std::make_shared<const Node>(Node{Op::And, {}, std::move(children)}));
}

Formula Formula::disjunction(std::vector<Formula> children) {
  if (children.size() < 2) throw Error("disjunction needs at least two operands");
  return Formula(std::make_shared<const Node>(Node{Op::Or, {}, std::move(children)}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Op::Implies, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::equivalence(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Op::Iff, {}, {std::move(lhs), std::move(rhs)}}));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<Formula>& Formula::children() const { return node_->children; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.op() == b.op() && a.name() == b.name() && a.children() == b.children();
}

Formula all_of(std::vector<Formula> parts) {
  if (parts.empty()) return Formula::constant(true);
  if (parts.size() == 1) return std::move(parts.front());
  return Formula::conjunction(std::move(parts));
}

Formula any_of(std::vector<Formula> parts) {
  if (parts.empty()) return Formula::constant(false);
  if (parts.size() == 1) return std::move(parts.front());
  return Formula::disjunction(std::move(parts));
}

bool is_identifier(std::string_view text) {
  if (text.empty() || text == "true" || text == "false") return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text.front())) return false;
  return std::all_of(text.begin(), text.end(), [&](char c) { return alpha(c) || digit(c); });
}

namespace {

void collect(const Formula& f, std::vector<std::string>& out,
             std::unordered_set<std::string>& seen) {
  if (f.is(Op::Var)) {
    if (seen.insert(f.name()).second) out.push_back(f.name());
    return;
  }
  for (const auto& c : f.children()) collect(c, out, seen);
}

// Binding strength used by the printer; larger binds tighter.
int precedence(Op op) {
  switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Not: return 5;
    default: return 6;
  }
}

void print(const Formula& f, std::ostream& os);

void print_operand(const Formula& f, int min_precedence, std::ostream& os) {
  if (precedence(f.op()) < min_precedence) {
    os << '(';
    print(f, os);
    os << ')';
  } else {
    print(f, os);
  }
}

void print(const Formula& f, std::ostream& os) {
  switch (f.op()) {
    case Op::True: os << "true"; return;
    case Op::False: os << "false"; return;
    case Op::Var: os << f.name(); return;
    case Op::Not:
      os << '!';
      print_operand(f.child(0), precedence(Op::Not), os);
      return;
    case Op::And:
    case Op::Or: {
      // The parser flattens chains, so a nested node of the same kind must be
      // parenthesized to survive a round trip.
      const char* sep = f.is(Op::And) ? " & " : " | ";
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) os << sep;
        first = false;
        print_operand(c, precedence(f.op()) + 1, os);
      }
      return;
    }
    case Op::Implies:  // right-associative
      print_operand(f.child(0), precedence(Op::Implies) + 1, os);
      os << " => ";
      print_operand(f.child(1), precedence(Op::Implies), os);
      return;
    case Op::Iff:  // left-associative
      print_operand(f.child(0), precedence(Op::Iff), os);
      os << " <=> ";
      print_operand(f.child(1), precedence(Op::Iff) + 1, os);
      return;
  }
}

}  // namespace

std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect(f, out, seen);
  return out;
}

std::set<std::string> variable_set(const Formula& f) {
  auto vars = variables(f);
  return {vars.begin(), vars.end()};
}

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(f, os);
  return os.str();
}

UndefinedVariableError::UndefinedVariableError(std::string name)
    : Error("undefined variable: " + name), name_(std::move(name)) {}

bool eval(const Formula& f, const Assignment& values) {
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Var: {
      auto it = values.find(f.name());
      if (it == values.end()) throw UndefinedVariableError(f.name());
      return it->second;
    }
    case Op::Not: return !eval(f.child(0), values);
    case Op::And:
    case Op::Or: {
      // No short-circuit: every variable must be defined, not just the ones
      // that happen to decide the result.
      bool all = true;
      bool any = false;
      for (const auto& c : f.children()) {
        bool v = eval(c, values);
        all = all && v;
        any = any || v;
      }
      return f.is(Op::And) ? all : any;
    }
    case Op::Implies: {
      bool lhs = eval(f.child(0), values);
      bool rhs = eval(f.child(1), values);
      return !lhs || rhs;
    }
    case Op::Iff: {
      bool lhs = eval(f.child(0), values);
      return lhs == eval(f.child(1), values);
    }
  }
  return false;
}

}  // namespace varcore::logic
