#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "varcore/error.hpp"
#include "varcore/feature_model.hpp"
#include "varcore/worksheet.hpp"

namespace varcore::synthesis {

enum class RuleId {
  Mandatory,    ///< R1: P <=> C, or P <=> C1 & ... & Cn
  Optional,     ///< R2: C => P, or a conjunction of Ci => P
  Or,           ///< R3: P <=> C1 | ... | Cn
  Alternative,  ///< R4: P <=> exactly one of C1..Cn
  Requires,     ///< R5: A => B
  Excludes,     ///< R6: A => !B
  Generic,      ///< any other constraint formula
};

/// Stable identifier such as "R4_ALTERNATIVE".
std::string_view to_string(RuleId rule);

struct RuleMatch {
  RuleId rule = RuleId::Generic;
  /// R1-R4: the group parent; R5/R6: the antecedent A.
  std::string parent;
  /// R1-R4: the children in entry order; R5/R6: the single consequent B.
  std::vector<std::string> children;

  friend bool operator==(const RuleMatch&, const RuleMatch&) = default;
};

class SynthesisError : public Error {
 public:
  SynthesisError(const std::string& message, std::string entry_id = {});
  const std::string& entry_id() const { return entry_id_; }

 private:
  std::string entry_id_;
};

/// Matches the entry's formula against the rule shapes. Operand order inside
/// &, |, <=> does not matter. For requirements the parent symbol must be the
/// abstract feature, or the parent column when there is none (`root_name`
/// stands in for an empty parent), and the children must be exactly the
/// entry's concrete features. Requirements that match no rule are errors.
RuleMatch classify_entry(const rtw::RequirementEntry& e, std::string_view root_name = {});

/// Sub-tree contributed by a requirement entry.
struct SubTree {
  /// Name of the feature the sub-tree hangs under (empty: model root).
  std::string attach_to;
  /// With an abstract feature, `node` is that feature and becomes a mandatory
  /// child of `attach_to`. Without one, `node` carries only a group kind and
  /// children, which are merged into `attach_to` itself.
  bool merge = false;
  model::Feature node;
};

using Fragment = std::variant<SubTree, model::CrossConstraint>;

Fragment entry_to_subtree(const rtw::RequirementEntry& e, const RuleMatch& match);

struct Assembly {
  model::FeatureModel model;
  rtw::ValidationReport report;
  /// Classification of every entry that took part, in worksheet order.
  std::vector<std::pair<std::string, RuleMatch>> rules;
};

/// Builds the model: a root named after the worksheet, requirement sub-trees
/// attached under their parents in worksheet order (parents may be introduced
/// later in the worksheet), then constraints in worksheet order. FLAGGED
/// entries are skipped and echoed. ACTIVE constraints that mention unknown
/// features are reported, marked FLAGGED in the report and left out.
Assembly assemble_model(const rtw::Worksheet& w);

}  // namespace varcore::synthesis
