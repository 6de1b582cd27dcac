#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "varcore/error.hpp"
#include "varcore/feature_model.hpp"
#include "varcore/formula.hpp"

namespace varcore::variants {

/// A valid configuration projected onto the concrete features.
struct Variant {
  /// Zero-padded sequence number, "0001" upwards.
  std::string id;
  logic::Assignment values;

  friend bool operator==(const Variant&, const Variant&) = default;
};

struct VariantSet {
  /// Concrete features in model preorder; the projection order.
  std::vector<std::string> features;
  std::vector<Variant> variants;

  const Variant* find(std::string_view id) const;

  friend bool operator==(const VariantSet&, const VariantSet&) = default;
};

class VoidModelError : public Error {
 public:
  using Error::Error;
};

/// All distinct valid configurations over the concrete features, ordered
/// lexicographically over `features` with false before true.
VariantSet enumerate_variants(const model::FeatureModel& m);

std::string format_variant_id(std::size_t index);

/// Writes NNNN.variant files (one `feature=true|false` line per feature) and
/// index.txt (format tag, feature list, then one id per line).
void write_variants(const VariantSet& vs, const std::filesystem::path& dir);
VariantSet read_variants(const std::filesystem::path& dir);

class FeatureMapError : public Error {
 public:
  using Error::Error;
};

/// Concrete feature name to configuration symbol, in file order.
struct FeatureCodeMap {
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* symbol(std::string_view feature) const;
};

/// Two comma-separated columns, feature then symbol. A leading
/// `feature,symbol` header, blank lines and `#` comments are skipped.
FeatureCodeMap parse_feature_map(std::string_view content);

/// Checks the map is total over `features`, names no other feature, and uses
/// distinct C identifiers as symbols.
void check_feature_map(const FeatureCodeMap& map, const std::vector<std::string>& features);

FeatureCodeMap load_feature_map(const std::filesystem::path& path, const std::vector<std::string>& features);

enum class ConfigFormat { CHeader, KeyValue };

/// One line per map entry, in map order: `#define SYM true|false` or
/// `SYM=true|false`.
std::string emit_config(const Variant& v, const FeatureCodeMap& map, ConfigFormat format);

}  // namespace varcore::variants
