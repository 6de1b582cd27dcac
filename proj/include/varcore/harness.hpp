#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "varcore/error.hpp"
#include "varcore/feature_model.hpp"
#include "varcore/variants.hpp"

namespace varcore::harness {

struct Sampling {
  enum class Kind { All, Random, Ids };
  Kind kind = Kind::All;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> ids;

  /// "all", "random:N:SEED" or "ids:0001,0004".
  static Sampling parse(std::string_view spec);
  std::string to_string() const;
};

/// Ids of the selected variants in variant order. Random sampling draws
/// min(N, total) ids with a generator seeded by SEED.
std::vector<std::string> select(const variants::VariantSet& vs, const Sampling& s);

enum class Outcome { Pass, Fail, Skipped };

std::string_view to_string(Outcome o);

struct VariantResult {
  std::string id;
  Outcome outcome = Outcome::Skipped;
  int exit_code = 0;
  /// Config file path relative to the work directory (empty when skipped).
  std::string config;
};

struct HarnessReport {
  std::vector<VariantResult> results;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
  std::size_t total = 0;
};

struct HarnessOptions {
  /// Shell command; `{config}` becomes the config file path and `{id}` the
  /// variant id.
  std::string command;
  std::filesystem::path workdir;
  variants::ConfigFormat format = variants::ConfigFormat::CHeader;
  Sampling sampling;
  /// Commands running at once; results are reported in variant order.
  std::size_t jobs = 1;
};

class HarnessError : public Error {
 public:
  using Error::Error;
};

/// Writes each selected variant's config into workdir/ID/, runs the command
/// through /bin/sh with output captured in workdir/ID/log.txt, and records
/// PASS for exit status 0, FAIL otherwise.
HarnessReport run_harness(const variants::VariantSet& vs, const variants::FeatureCodeMap& map,
                          const HarnessOptions& options);

/// A feature value shared by a failing variant that no passing variant has.
struct Suspect {
  std::string feature;
  bool value = false;
  /// Requirement id that introduced the feature (empty without a model).
  std::string origin;

  friend bool operator==(const Suspect&, const Suspect&) = default;
};

struct FailureTrace {
  std::string id;
  std::vector<Suspect> suspects;
};

/// For each FAIL row, the feature values that never occur among the passing
/// variants, with feature origins looked up in `m` when given.
std::vector<FailureTrace> trace_failures(const HarnessReport& r, const variants::VariantSet& vs,
                                         const model::FeatureModel* m = nullptr);

std::string to_text(const HarnessReport& r);

}  // namespace varcore::harness
