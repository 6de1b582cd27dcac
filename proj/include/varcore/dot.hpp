#pragma once

#include <string>

#include "varcore/analysis.hpp"
#include "varcore/feature_model.hpp"

namespace varcore::interop {

/// Graphviz digraph: one box per feature (abstract ones dashed), one edge per
/// parent/child pair. Edge heads: filled dot for mandatory, hollow dot for
/// optional; or/alt group edges are labelled. With a report, dead features
/// are filled red and false-optional ones orange.
std::string export_dot(const model::FeatureModel& m, const analysis::AnalysisReport* anomalies = nullptr);

}  // namespace varcore::interop
