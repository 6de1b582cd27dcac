#include "varcore/synthesis.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace varcore::synthesis {

using logic::Formula;
using logic::Op;
using model::Feature;
using model::GroupKind;
using rtw::EntryKind;
using rtw::RequirementEntry;

std::string_view to_string(RuleId rule) {
  switch (rule) {
    case RuleId::Mandatory: return "R1_MANDATORY";
    case RuleId::Optional: return "R2_OPTIONAL";
    case RuleId::Or: return "R3_OR";
    case RuleId::Alternative: return "R4_ALTERNATIVE";
    case RuleId::Requires: return "R5_REQUIRES";
    case RuleId::Excludes: return "R6_EXCLUDES";
    case RuleId::Generic: return "GENERIC_CONSTRAINT";
  }
  return "GENERIC_CONSTRAINT";
}

SynthesisError::SynthesisError(const std::string& message, std::string entry_id)
    : Error(entry_id.empty() ? message : entry_id + ": " + message), entry_id_(std::move(entry_id)) {}

namespace {

using Names = std::vector<std::string>;

std::optional<std::string> var_name(const Formula& f) {
  if (f.is(Op::Var)) return f.name();
  return std::nullopt;
}

// Names of the operands when `f` is `op` over plain variables only.
std::optional<Names> vars_under(const Formula& f, Op op) {
  if (!f.is(op)) return std::nullopt;
  Names out;
  for (const auto& c : f.children()) {
    auto n = var_name(c);
    if (!n) return std::nullopt;
    out.push_back(*n);
  }
  return out;
}

bool distinct(const Names& names) {
  return std::set<std::string>(names.begin(), names.end()).size() == names.size();
}

// (C1 & !C2 & ... ) | (!C1 & C2 & ...) | ...
std::optional<Names> exactly_one_disjunctive(const Formula& f) {
  if (!f.is(Op::Or)) return std::nullopt;
  Names positives;
  std::set<std::string> universe;
  for (const auto& term : f.children()) {
    if (!term.is(Op::And)) return std::nullopt;
    std::optional<std::string> positive;
    std::set<std::string> seen;
    for (const auto& lit : term.children()) {
      if (auto n = var_name(lit)) {
        if (positive) return std::nullopt;
        positive = *n;
        seen.insert(*n);
      } else if (lit.is(Op::Not) && lit.child(0).is(Op::Var)) {
        seen.insert(lit.child(0).name());
      } else {
        return std::nullopt;
      }
    }
    if (!positive || seen.size() != term.children().size()) return std::nullopt;
    if (universe.empty()) universe = seen;
    if (seen != universe) return std::nullopt;
    positives.push_back(*positive);
  }
  if (!distinct(positives) || positives.size() != universe.size()) return std::nullopt;
  return positives;
}

// (C1 | ... | Cn) & !(Ci & Cj) for every pair, exclusions also as !Ci | !Cj.
std::optional<Names> exactly_one_pairwise(const Formula& f) {
  if (!f.is(Op::And)) return std::nullopt;
  std::optional<Names> members;
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& part : f.children()) {
    if (auto names = vars_under(part, Op::Or)) {
      if (members) return std::nullopt;
      members = names;
      continue;
    }
    std::optional<std::pair<std::string, std::string>> pair;
    if (part.is(Op::Not)) {
      if (auto names = vars_under(part.child(0), Op::And); names && names->size() == 2) {
        pair = std::minmax((*names)[0], (*names)[1]);
      }
    } else if (part.is(Op::Or) && part.children().size() == 2 && part.child(0).is(Op::Not) &&
               part.child(1).is(Op::Not) && part.child(0).child(0).is(Op::Var) &&
               part.child(1).child(0).is(Op::Var)) {
      pair = std::minmax(part.child(0).child(0).name(), part.child(1).child(0).name());
    }
    if (!pair || pair->first == pair->second || !pairs.insert(*pair).second) return std::nullopt;
  }
  if (!members || !distinct(*members)) return std::nullopt;
  const std::size_t n = members->size();
  if (pairs.size() != n * (n - 1) / 2) return std::nullopt;
  const std::set<std::string> universe(members->begin(), members->end());
  for (const auto& [a, b] : pairs) {
    if (!universe.count(a) || !universe.count(b)) return std::nullopt;
  }
  return members;
}

struct Shape {
  RuleId rule;
  std::string parent;
  Names children;
};

std::optional<Shape> requirement_shape(const Formula& f, const std::string& expected_parent) {
  if (f.is(Op::Iff)) {
    for (int side = 0; side < 2; ++side) {
      auto p = var_name(f.child(side));
      if (!p) continue;
      // Prefer the orientation whose variable is the expected parent.
      if (!expected_parent.empty() && *p != expected_parent && var_name(f.child(1 - side)) == expected_parent) {
        continue;
      }
      const Formula& rhs = f.child(1 - side);
      if (auto c = var_name(rhs)) return Shape{RuleId::Mandatory, *p, {*c}};
      if (auto cs = vars_under(rhs, Op::And); cs && distinct(*cs)) return Shape{RuleId::Mandatory, *p, *cs};
      if (auto cs = vars_under(rhs, Op::Or); cs && distinct(*cs)) return Shape{RuleId::Or, *p, *cs};
      if (auto cs = exactly_one_disjunctive(rhs)) return Shape{RuleId::Alternative, *p, *cs};
      if (auto cs = exactly_one_pairwise(rhs)) return Shape{RuleId::Alternative, *p, *cs};
    }
    return std::nullopt;
  }
  auto optional_pair = [](const Formula& g) -> std::optional<std::pair<std::string, std::string>> {
    if (!g.is(Op::Implies)) return std::nullopt;
    auto c = var_name(g.child(0));
    auto p = var_name(g.child(1));
    if (!c || !p) return std::nullopt;
    return std::make_pair(*p, *c);
  };
  if (auto pc = optional_pair(f)) return Shape{RuleId::Optional, pc->first, {pc->second}};
  if (f.is(Op::And)) {
    Shape s{RuleId::Optional, {}, {}};
    for (const auto& part : f.children()) {
      auto pc = optional_pair(part);
      if (!pc || (!s.parent.empty() && pc->first != s.parent)) return std::nullopt;
      s.parent = pc->first;
      s.children.push_back(pc->second);
    }
    if (!distinct(s.children)) return std::nullopt;
    return s;
  }
  return std::nullopt;
}

std::string join(const Names& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return "{" + out + "}";
}

}  // namespace

RuleMatch classify_entry(const RequirementEntry& e, std::string_view root_name) {
  if (e.kind == EntryKind::Constraint) {
    const Formula& f = e.formula;
    if (f.is(Op::Implies) && f.child(0).is(Op::Var)) {
      const std::string& a = f.child(0).name();
      const Formula& rhs = f.child(1);
      if (rhs.is(Op::Var) && rhs.name() != a) return {RuleId::Requires, a, {rhs.name()}};
      if (rhs.is(Op::Not) && rhs.child(0).is(Op::Var) && rhs.child(0).name() != a) {
        return {RuleId::Excludes, a, {rhs.child(0).name()}};
      }
    }
    return {RuleId::Generic, {}, {}};
  }
  const std::string expected = !e.abstract_feature.empty() ? e.abstract_feature
                               : !e.parent.empty()         ? e.parent
                                                           : std::string(root_name);
  auto shape = requirement_shape(e.formula, expected);
  if (!shape) throw SynthesisError("formula matches no mapping rule: " + logic::to_string(e.formula), e.id);
  if (!expected.empty() && shape->parent != expected) {
    throw SynthesisError("rule parent '" + shape->parent + "' must be the abstract feature or parent '" +
                             expected + "'",
                         e.id);
  }
  const std::set<std::string> got(shape->children.begin(), shape->children.end());
  const std::set<std::string> declared(e.concrete_features.begin(), e.concrete_features.end());
  if (got != declared || declared.size() != e.concrete_features.size()) {
    throw SynthesisError("formula children " + join(shape->children) +
                             " differ from the declared concrete features " + join(e.concrete_features),
                         e.id);
  }
  return {shape->rule, shape->parent, e.concrete_features};
}

Fragment entry_to_subtree(const RequirementEntry& e, const RuleMatch& match) {
  if (e.kind == EntryKind::Constraint) return model::CrossConstraint{e.id, e.formula};
  SubTree t;
  t.attach_to = e.parent;
  t.merge = e.abstract_feature.empty();
  t.node.name = match.parent;
  if (!t.merge) {
    t.node.abstract = true;
    t.node.mandatory = true;
    t.node.origin = e.id;
  }
  switch (match.rule) {
    case RuleId::Or: t.node.group = GroupKind::Or; break;
    case RuleId::Alternative: t.node.group = GroupKind::Alternative; break;
    default: t.node.group = GroupKind::And; break;
  }
  for (const auto& name : match.children) {
    Feature c;
    c.name = name;
    c.mandatory = match.rule == RuleId::Mandatory;
    c.origin = e.id;
    t.node.children.push_back(std::move(c));
  }
  return t;
}

namespace {

struct Pending {
  std::string entry_id;
  SubTree tree;
  bool attached = false;
};

void attach(Feature& node, std::vector<Pending>& pending, const std::string& root) {
  for (auto& p : pending) {
    const std::string target = p.tree.attach_to.empty() ? root : p.tree.attach_to;
    if (p.attached || target != node.name) continue;
    p.attached = true;
    if (p.tree.merge) {
      if (!node.children.empty() && (node.group != GroupKind::And || p.tree.node.group != GroupKind::And)) {
        throw SynthesisError("group kind conflict: " + node.name + " already has " +
                                 std::string(model::to_string(node.group)) + " children",
                             p.entry_id);
      }
      node.group = p.tree.node.group;
      for (auto& c : p.tree.node.children) node.children.push_back(std::move(c));
    } else {
      if (node.group != GroupKind::And) {
        throw SynthesisError("group kind conflict: cannot add mandatory " + p.tree.node.name + " under the " +
                                 std::string(model::to_string(node.group)) + " group of " + node.name,
                             p.entry_id);
      }
      node.children.push_back(std::move(p.tree.node));
    }
  }
  for (auto& c : node.children) attach(c, pending, root);
}

}  // namespace

Assembly assemble_model(const rtw::Worksheet& w) {
  if (w.model_name.empty()) throw SynthesisError("worksheet has no model name");
  Assembly out;
  Feature& root = out.model.root;
  root.name = w.model_name;
  root.abstract = true;

  std::map<std::string, std::string> introduced{{w.model_name, ""}};
  std::vector<Pending> pending;
  for (const auto& e : w.entries) {
    if (e.status.flagged || e.kind != EntryKind::Requirement) continue;
    for (const auto& name : e.introduced()) {
      auto [it, fresh] = introduced.emplace(name, e.id);
      if (!fresh) {
        throw SynthesisError("duplicate feature introduction: " + name +
                                 (it->second.empty() ? " (model root)" : " (already introduced by " + it->second + ")"),
                             e.id);
      }
    }
    RuleMatch m = classify_entry(e, w.model_name);
    out.rules.emplace_back(e.id, m);
    pending.push_back({e.id, std::get<SubTree>(entry_to_subtree(e, m)), false});
  }
  for (const auto& p : pending) {
    if (!p.tree.attach_to.empty() && !introduced.count(p.tree.attach_to)) {
      throw SynthesisError("unknown parent: " + p.tree.attach_to, p.entry_id);
    }
  }
  attach(root, pending, w.model_name);
  for (const auto& p : pending) {
    if (!p.attached) {
      throw SynthesisError("parent chain of " + p.tree.attach_to + " does not reach the root " + w.model_name,
                           p.entry_id);
    }
  }

  std::set<std::string> names;
  for (const auto& n : model::feature_names(out.model)) names.insert(n);
  for (const auto& e : w.entries) {
    if (e.status.flagged) {
      out.report.findings.push_back(
          {e.id, rtw::Severity::Info,
           "FLAGGED" + (e.status.reason.empty() ? std::string() : "(" + e.status.reason + ")") + "; excluded"});
      continue;
    }
    if (e.kind != EntryKind::Constraint) continue;
    Names missing;
    for (const auto& v : logic::variables(e.formula)) {
      if (!names.count(v)) missing.push_back(v);
    }
    if (!missing.empty()) {
      for (const auto& v : missing) {
        out.report.findings.push_back(
            {e.id, rtw::Severity::Error, "undefined feature reference: " + v + "; entry FLAGGED and excluded"});
      }
      continue;
    }
    RuleMatch m = classify_entry(e, w.model_name);
    out.rules.emplace_back(e.id, m);
    out.model.constraints.push_back(std::get<model::CrossConstraint>(entry_to_subtree(e, m)));
  }
  model::validate(out.model);
  return out;
}

}  // namespace varcore::synthesis
