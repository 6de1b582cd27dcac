#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "varcore/error.hpp"
#include "varcore/feature_model.hpp"

namespace varcore::interop {

class XmlModelError : public Error {
 public:
  using Error::Error;
};

/// FeatureIDE-style document: featureModel/struct holds nested and/or/alt
/// elements (features with children) and feature elements (leaves), with
/// abstract/mandatory/name attributes; featureModel/constraints holds rule
/// elements built from imp, eqv, conj, disj, not and var. Feature origins and
/// constraint ids go into description elements. Tab indentation, attributes
/// in alphabetical order.
std::string export_xml(const model::FeatureModel& m);

struct XmlImport {
  model::FeatureModel model;
  /// Ignored top-level metadata elements, one message each.
  std::vector<std::string> warnings;
};

/// Inverse of export_xml. Absent abstract/mandatory attributes mean false.
/// Rules without a description get ids C1, C2, ... by position. Unknown
/// elements inside struct or constraints are errors; unknown siblings of
/// struct and constraints are skipped with a warning.
XmlImport import_xml(std::string_view document);
XmlImport load_xml(const std::filesystem::path& path);

}  // namespace varcore::interop
