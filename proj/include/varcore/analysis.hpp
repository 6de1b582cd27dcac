#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "varcore/error.hpp"
#include "varcore/feature_model.hpp"
#include "varcore/worksheet.hpp"

namespace varcore::analysis {

enum class AnomalyKind { VoidModel, DeadFeature, FalseOptional, RedundantConstraint, ConstraintConflict };

/// "VOID_MODEL", "DEAD_FEATURE", ...
std::string_view to_string(AnomalyKind kind);

struct Anomaly {
  AnomalyKind kind = AnomalyKind::VoidModel;
  /// Dead or false-optional feature.
  std::string feature;
  /// Parent of a false-optional feature.
  std::string parent;
  /// Redundant constraint id.
  std::string constraint;
  /// ConstraintConflict: index of the anomaly it explains, and the minimal
  /// correction set for it.
  std::size_t ref = 0;
  std::vector<std::string> implicated;
  /// Requirement ids involved: the constraints that jointly produce the
  /// anomaly (deletion-minimal), then origins of the features concerned.
  std::vector<std::string> trace;

  /// Redundancy is a warning; every other kind is an error.
  bool is_error() const { return kind != AnomalyKind::RedundantConstraint; }

  friend bool operator==(const Anomaly&, const Anomaly&) = default;
};

struct Statistics {
  std::size_t features = 0;
  std::size_t abstract_features = 0;
  std::size_t concrete_features = 0;
  std::size_t constraints = 0;
  /// Full configurations and concrete-feature variants; absent when counting
  /// was disabled or the model is void.
  std::optional<std::uint64_t> configurations;
  std::optional<std::uint64_t> variants;

  friend bool operator==(const Statistics&, const Statistics&) = default;
};

struct AnalysisReport {
  std::vector<Anomaly> anomalies;
  Statistics statistics;

  bool valid() const { return anomalies.empty(); }
  bool has_errors() const;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

struct AnalyzeOptions {
  /// Add a ConstraintConflict entry for every void/dead/false-optional anomaly
  /// that constraints can repair.
  bool attribute = true;
  /// Count configurations and variants (bounded by the all-solutions limit).
  bool count = true;
};

/// Void, dead, false-optional and redundancy checks against model_to_formula.
/// Every feature except the root is checked for false-optionality unless it is
/// a mandatory child of an And group. Order: void, dead (preorder),
/// false-optional (preorder), redundant (declaration order), conflicts.
AnalysisReport analyze(const model::FeatureModel& m, const AnalyzeOptions& options = {});

/// Re-runs the single check behind `a` with the given constraints removed.
bool anomaly_present(const model::FeatureModel& m, const Anomaly& a, const std::vector<std::string>& removed = {});

/// Minimal correction set for a void, dead or false-optional anomaly. Starts
/// from every constraint removed and, in declaration order, puts back each
/// one whose removal is not needed. Empty when removing every constraint
/// still leaves the anomaly.
std::vector<std::string> attribute_conflict(const model::FeatureModel& m, const Anomaly& a);

/// Deletion-minimal set of constraints that on their own (with the tree)
/// still produce the anomaly.
std::vector<std::string> explain(const model::FeatureModel& m, const Anomaly& a);

struct TraceRow {
  std::string entry_id;
  std::string source_doc;
  std::string source_loc;
  std::string text;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct AnomalyTrace {
  std::size_t anomaly = 0;
  std::vector<TraceRow> rows;
};

/// Resolves every trace id against the worksheet. Throws when an id is unknown.
std::vector<AnomalyTrace> trace_report(const AnalysisReport& r, const rtw::Worksheet& w);

/// One line per anomaly plus the statistics block.
std::string to_text(const AnalysisReport& r);

std::string describe(const Anomaly& a);

}  // namespace varcore::analysis
