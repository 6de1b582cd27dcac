#pragma once

#include <vector>

#include <json.hpp>

#include "varcore/analysis.hpp"
#include "varcore/harness.hpp"
#include "varcore/synthesis.hpp"
#include "varcore/variants.hpp"
#include "varcore/worksheet.hpp"

namespace varcore::report {

using Json = nlohmann::ordered_json;

// Every document carries a "format" tag of the form varcore.<kind>/<version>.

Json validation_json(const rtw::ValidationReport& r);

Json assembly_json(const synthesis::Assembly& a);

/// `assembly` and `traces` are optional (absent for models read from XML).
Json analysis_json(const analysis::AnalysisReport& r, const rtw::ValidationReport* assembly = nullptr,
                   const std::vector<analysis::AnomalyTrace>* traces = nullptr);

Json variants_json(const variants::VariantSet& vs);

Json harness_json(const harness::HarnessReport& r, const harness::Sampling& sampling,
                  const std::vector<harness::FailureTrace>& failures);

}  // namespace varcore::report
