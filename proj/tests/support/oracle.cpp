#include "support/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracle {

using varcore::logic::Op;
using varcore::model::Feature;
using varcore::model::FeatureModel;
using varcore::model::GroupKind;

bool evaluate(const Formula& f, const Assignment& values) {
  switch (f.op()) {
    case Op::False: return false;
    case Op::True: return true;
    case Op::Var: {
      auto it = values.find(f.name());
      if (it == values.end()) throw std::out_of_range("oracle: unassigned " + f.name());
      return it->second;
    }
    case Op::Not: return !evaluate(f.child(0), values);
    case Op::And:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return evaluate(c, values); });
    case Op::Or:
      return std::any_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return evaluate(c, values); });
    case Op::Implies: return !evaluate(f.child(0), values) || evaluate(f.child(1), values);
    case Op::Iff: return evaluate(f.child(0), values) == evaluate(f.child(1), values);
  }
  return false;
}

namespace {

template <typename Visit>
void each_assignment(const std::vector<std::string>& vars, const Visit& visit) {
  if (vars.size() > 24) throw std::length_error("oracle: too many variables");
  const std::uint64_t rows = std::uint64_t{1} << vars.size();
  Assignment a;
  for (std::uint64_t row = 0; row < rows; ++row) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      a[vars[i]] = (row >> (vars.size() - 1 - i)) & 1U;
    }
    visit(a);
  }
}

void collect(const Feature& f, std::vector<const Feature*>& out) {
  out.push_back(&f);
  for (const auto& c : f.children) collect(c, out);
}

std::vector<const Feature*> all_features(const FeatureModel& m) {
  std::vector<const Feature*> out;
  collect(m.root, out);
  return out;
}

bool tree_ok(const Feature& p, const Assignment& a) {
  const bool on = a.at(p.name);
  int selected = 0;
  for (const auto& c : p.children) {
    const bool child_on = a.at(c.name);
    if (child_on && !on) return false;
    if (p.group == GroupKind::And && c.mandatory && on && !child_on) return false;
    selected += child_on ? 1 : 0;
    if (!tree_ok(c, a)) return false;
  }
  if (on && p.group == GroupKind::Or && selected < 1) return false;
  if (on && p.group == GroupKind::Alternative && selected != 1) return false;
  return true;
}

}  // namespace

std::vector<Assignment> truth_table(const Formula& f, const std::vector<std::string>& vars) {
  std::vector<Assignment> out;
  each_assignment(vars, [&](const Assignment& a) {
    if (evaluate(f, a)) out.push_back(a);
  });
  return out;
}

std::set<Assignment> projected_models(const Formula& f, const std::vector<std::string>& vars,
                                      const std::vector<std::string>& project) {
  // Projection names outside `vars` are unconstrained, so enumerate them too.
  std::vector<std::string> all = vars;
  for (const auto& name : project) {
    if (std::find(all.begin(), all.end(), name) == all.end()) all.push_back(name);
  }
  std::set<Assignment> out;
  for (const auto& a : truth_table(f, all)) {
    Assignment p;
    for (const auto& name : project) p[name] = a.at(name);
    out.insert(std::move(p));
  }
  return out;
}

bool is_configuration(const FeatureModel& m, const Assignment& a, const std::set<std::string>& skip) {
  if (!a.at(m.root.name)) return false;
  if (!tree_ok(m.root, a)) return false;
  for (const auto& c : m.constraints) {
    if (skip.count(c.id)) continue;
    if (!evaluate(c.formula, a)) return false;
  }
  return true;
}

std::vector<Assignment> configurations(const FeatureModel& m, const std::set<std::string>& skip) {
  std::vector<std::string> names;
  for (const auto* f : all_features(m)) names.push_back(f->name);
  std::vector<Assignment> out;
  each_assignment(names, [&](const Assignment& a) {
    if (is_configuration(m, a, skip)) out.push_back(a);
  });
  return out;
}

std::set<Assignment> variants(const FeatureModel& m) {
  std::set<Assignment> out;
  for (const auto& a : configurations(m)) {
    Assignment p;
    for (const auto* f : all_features(m)) {
      if (!f->abstract) p[f->name] = a.at(f->name);
    }
    out.insert(std::move(p));
  }
  return out;
}

Verdicts verdicts(const FeatureModel& m) {
  Verdicts v;
  const auto configs = configurations(m);
  v.void_model = configs.empty();
  std::vector<std::pair<const Feature*, const Feature*>> with_parent;
  for (const auto* p : all_features(m)) {
    for (const auto& c : p->children) with_parent.emplace_back(&c, p);
  }
  for (const auto* f : all_features(m)) {
    const bool present = std::any_of(configs.begin(), configs.end(),
                                     [&](const Assignment& a) { return a.at(f->name); });
    if (!present) v.dead.insert(f->name);
  }
  for (const auto& [f, p] : with_parent) {
    if (f->mandatory && p->group == GroupKind::And) continue;
    if (v.dead.count(f->name)) continue;
    const bool always = std::all_of(configs.begin(), configs.end(), [&](const Assignment& a) {
      return !a.at(p->name) || a.at(f->name);
    });
    if (always) v.false_optional.insert(f->name);
  }
  for (const auto& c : m.constraints) {
    const auto others = configurations(m, {c.id});
    const bool implied = std::all_of(others.begin(), others.end(),
                                     [&](const Assignment& a) { return evaluate(c.formula, a); });
    if (implied) v.redundant.insert(c.id);
  }
  return v;
}

}  // namespace oracle
