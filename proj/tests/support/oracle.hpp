#pragma once

// Brute-force reference implementations used to check the library. Nothing
// here calls into the solver, the formula evaluator or model_to_formula.

#include <set>
#include <string>
#include <vector>

#include "varcore/feature_model.hpp"
#include "varcore/formula.hpp"

namespace oracle {

using varcore::logic::Assignment;
using varcore::logic::Formula;

bool evaluate(const Formula& f, const Assignment& values);

/// Every assignment over `vars` (truth-table order) that satisfies `f`.
std::vector<Assignment> truth_table(const Formula& f, const std::vector<std::string>& vars);

/// Distinct projections of the truth-table models onto `project`. Names in
/// `project` missing from `vars` are free.
std::set<Assignment> projected_models(const Formula& f, const std::vector<std::string>& vars,
                                      const std::vector<std::string>& project);

/// Checks a full feature assignment against the tree and constraint semantics
/// directly (root selected, child needs parent, groups, cross constraints).
/// Constraints whose ids appear in `skip` are ignored.
bool is_configuration(const varcore::model::FeatureModel& m, const Assignment& a,
                      const std::set<std::string>& skip = {});

/// All valid configurations over every feature of `m`.
std::vector<Assignment> configurations(const varcore::model::FeatureModel& m,
                                       const std::set<std::string>& skip = {});

/// Distinct valid configurations projected onto the concrete features.
std::set<Assignment> variants(const varcore::model::FeatureModel& m);

struct Verdicts {
  bool void_model = false;
  std::set<std::string> dead;
  std::set<std::string> false_optional;
  std::set<std::string> redundant;  // constraint ids

  friend bool operator==(const Verdicts&, const Verdicts&) = default;
};

/// Anomaly verdicts computed from the textbook definitions by enumeration.
Verdicts verdicts(const varcore::model::FeatureModel& m);

}  // namespace oracle
