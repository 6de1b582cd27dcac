#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "varcore/error.hpp"
#include "varcore/formula.hpp"

namespace varcore::model {

/// Relationship between a feature and its children.
enum class GroupKind {
  And,          ///< each child individually mandatory or optional
  Or,           ///< at least one child when the parent is selected
  Alternative,  ///< exactly one child when the parent is selected
};

std::string_view to_string(GroupKind kind);

struct Feature {
  std::string name;
  /// Abstract features structure the tree and have no code counterpart.
  bool abstract = false;
  /// Selected whenever the parent is; only meaningful under an And group.
  bool mandatory = false;
  GroupKind group = GroupKind::And;
  std::vector<Feature> children;
  /// Id of the worksheet entry that introduced the feature; empty if unknown.
  std::string origin;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct CrossConstraint {
  std::string id;
  logic::Formula formula;

  friend bool operator==(const CrossConstraint&, const CrossConstraint&) = default;
};

/// Feature tree plus cross-tree constraints. The root is always selected.
struct FeatureModel {
  Feature root;
  std::vector<CrossConstraint> constraints;

  friend bool operator==(const FeatureModel&, const FeatureModel&) = default;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

/// Checks the structural invariants: identifier names unique model-wide,
/// Or/Alternative groups with at least two children and no mandatory flags,
/// constraint ids unique, constraints referring only to existing features.
void validate(const FeatureModel& m);

/// Propositional semantics of the model: root; child implies parent;
/// parent implies each mandatory child; parent implies the Or disjunction;
/// parent implies exactly one Alternative child (pairwise exclusion form);
/// and every cross-tree constraint.
logic::Formula model_to_formula(const FeatureModel& m);

/// Same as model_to_formula but leaves out the constraints listed in `skip`.
logic::Formula model_to_formula(const FeatureModel& m, const std::vector<std::string>& skip);

/// Exact, case-sensitive lookup. Returns nullptr when absent.
const Feature* find_feature(const FeatureModel& m, std::string_view name);
Feature* find_feature(FeatureModel& m, std::string_view name);

/// Parent of `name`, nullptr for the root or unknown names.
const Feature* parent_of(const FeatureModel& m, std::string_view name);

/// Features in depth-first preorder, root first.
std::vector<const Feature*> features(const FeatureModel& m);
std::vector<std::string> feature_names(const FeatureModel& m);
std::vector<std::string> concrete_feature_names(const FeatureModel& m);

}  // namespace varcore::model
