#include "varcore/feature_model.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace varcore::model {

using logic::Formula;

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::And: return "and";
    case GroupKind::Or: return "or";
    case GroupKind::Alternative: return "alt";
  }
  return "and";
}

namespace {

template <typename F, typename Visit>
void preorder(F& f, const Visit& visit) {
  visit(f);
  for (auto& c : f.children) preorder(c, visit);
}

}  // namespace

void validate(const FeatureModel& m) {
  std::set<std::string> names;
  preorder(m.root, [&](const Feature& f) {
    if (!logic::is_identifier(f.name)) throw ModelError("invalid feature name '" + f.name + "'");
    if (!names.insert(f.name).second) throw ModelError("duplicate feature name: " + f.name);
    if (f.group != GroupKind::And) {
      if (f.children.size() < 2) {
        throw ModelError(std::string(to_string(f.group)) + " group under " + f.name +
                         " needs at least two children");
      }
      for (const auto& c : f.children) {
        if (c.mandatory) {
          throw ModelError("feature " + c.name + " is marked mandatory inside the " +
                           std::string(to_string(f.group)) + " group of " + f.name);
        }
      }
    }
  });
  std::set<std::string> ids;
  for (const auto& c : m.constraints) {
    if (!ids.insert(c.id).second) throw ModelError("duplicate constraint id: " + c.id);
    for (const auto& v : logic::variables(c.formula)) {
      if (!names.count(v)) {
        throw ModelError("constraint " + c.id + " refers to unknown feature " + v);
      }
    }
  }
}

Formula model_to_formula(const FeatureModel& m) { return model_to_formula(m, {}); }

Formula model_to_formula(const FeatureModel& m, const std::vector<std::string>& skip) {
  validate(m);
  std::vector<Formula> parts;
  parts.push_back(Formula::var(m.root.name));
  preorder(m.root, [&](const Feature& p) {
    if (p.children.empty()) return;
    Formula parent = Formula::var(p.name);
    std::vector<Formula> kids;
    for (const auto& c : p.children) {
      kids.push_back(Formula::var(c.name));
      parts.push_back(Formula::implication(kids.back(), parent));
    }
    switch (p.group) {
      case GroupKind::And:
        for (std::size_t i = 0; i < p.children.size(); ++i) {
          if (p.children[i].mandatory) parts.push_back(Formula::implication(parent, kids[i]));
        }
        break;
      case GroupKind::Or:
        parts.push_back(Formula::implication(parent, Formula::disjunction(kids)));
        break;
      case GroupKind::Alternative: {
        std::vector<Formula> exactly_one{Formula::disjunction(kids)};
        for (std::size_t i = 0; i < kids.size(); ++i) {
          for (std::size_t j = i + 1; j < kids.size(); ++j) {
            exactly_one.push_back(Formula::negation(Formula::conjunction({kids[i], kids[j]})));
          }
        }
        parts.push_back(Formula::implication(parent, Formula::conjunction(exactly_one)));
        break;
      }
    }
  });
  for (const auto& c : m.constraints) {
    if (std::find(skip.begin(), skip.end(), c.id) == skip.end()) parts.push_back(c.formula);
  }
  return logic::all_of(std::move(parts));
}

const Feature* find_feature(const FeatureModel& m, std::string_view name) {
  const Feature* found = nullptr;
  preorder(m.root, [&](const Feature& f) {
    if (!found && f.name == name) found = &f;
  });
  return found;
}

Feature* find_feature(FeatureModel& m, std::string_view name) {
  return const_cast<Feature*>(find_feature(std::as_const(m), name));
}

const Feature* parent_of(const FeatureModel& m, std::string_view name) {
  const Feature* found = nullptr;
  preorder(m.root, [&](const Feature& f) {
    for (const auto& c : f.children) {
      if (!found && c.name == name) found = &f;
    }
  });
  return found;
}

std::vector<const Feature*> features(const FeatureModel& m) {
  std::vector<const Feature*> out;
  preorder(m.root, [&](const Feature& f) { out.push_back(&f); });
  return out;
}

std::vector<std::string> feature_names(const FeatureModel& m) {
  std::vector<std::string> out;
  for (const auto* f : features(m)) out.push_back(f->name);
  return out;
}

std::vector<std::string> concrete_feature_names(const FeatureModel& m) {
  std::vector<std::string> out;
  for (const auto* f : features(m)) {
    if (!f->abstract) out.push_back(f->name);
  }
  return out;
}

}  // namespace varcore::model
