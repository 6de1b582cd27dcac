#include "varcore/report_json.hpp"

namespace varcore::report {

namespace {

Json findings(const rtw::ValidationReport& r) {
  Json arr = Json::array();
  for (const auto& f : r.findings) {
    arr.push_back({{"entry", f.entry_id}, {"severity", rtw::to_string(f.severity)}, {"message", f.message}});
  }
  return arr;
}

}  // namespace

Json validation_json(const rtw::ValidationReport& r) {
  return {{"format", "varcore.validation/1"},
          {"errors", r.count(rtw::Severity::Error)},
          {"warnings", r.count(rtw::Severity::Warning)},
          {"findings", findings(r)}};
}

Json assembly_json(const synthesis::Assembly& a) {
  Json rules = Json::array();
  for (const auto& [id, m] : a.rules) {
    rules.push_back({{"entry", id}, {"rule", synthesis::to_string(m.rule)}, {"parent", m.parent}, {"children", m.children}});
  }
  const auto names = model::feature_names(a.model);
  return {{"format", "varcore.model/1"},
          {"root", a.model.root.name},
          {"features", names.size()},
          {"concrete_features", model::concrete_feature_names(a.model).size()},
          {"constraints", a.model.constraints.size()},
          {"rules", rules},
          {"findings", findings(a.report)}};
}

Json analysis_json(const analysis::AnalysisReport& r, const rtw::ValidationReport* assembly,
                   const std::vector<analysis::AnomalyTrace>* traces) {
  Json anomalies = Json::array();
  for (std::size_t i = 0; i < r.anomalies.size(); ++i) {
    const auto& a = r.anomalies[i];
    Json j{{"kind", analysis::to_string(a.kind)}, {"severity", a.is_error() ? "error" : "warning"}};
    switch (a.kind) {
      case analysis::AnomalyKind::VoidModel: break;
      case analysis::AnomalyKind::DeadFeature: j["feature"] = a.feature; break;
      case analysis::AnomalyKind::FalseOptional:
        j["feature"] = a.feature;
        j["parent"] = a.parent;
        break;
      case analysis::AnomalyKind::RedundantConstraint: j["constraint"] = a.constraint; break;
      case analysis::AnomalyKind::ConstraintConflict:
        j["anomaly"] = a.ref;
        j["implicated"] = a.implicated;
        break;
    }
    j["trace"] = a.trace;
    if (traces) {
      Json rows = Json::array();
      for (const auto& row : (*traces)[i].rows) {
        rows.push_back({{"entry", row.entry_id}, {"source_doc", row.source_doc}, {"source_loc", row.source_loc}, {"text", row.text}});
      }
      j["provenance"] = rows;
    }
    anomalies.push_back(std::move(j));
  }
  const auto& s = r.statistics;
  Json stats{{"features", s.features},
             {"abstract_features", s.abstract_features},
             {"concrete_features", s.concrete_features},
             {"constraints", s.constraints}};
  stats["configurations"] = s.configurations ? Json(*s.configurations) : Json(nullptr);
  stats["variants"] = s.variants ? Json(*s.variants) : Json(nullptr);
  Json out{{"format", "varcore.analysis/1"}, {"valid", r.valid()}};
  if (assembly) out["findings"] = findings(*assembly);
  out["anomalies"] = anomalies;
  out["statistics"] = stats;
  return out;
}

Json variants_json(const variants::VariantSet& vs) {
  Json ids = Json::array();
  for (const auto& v : vs.variants) ids.push_back(v.id);
  return {{"format", "varcore.variants/1"}, {"count", vs.variants.size()}, {"features", vs.features}, {"ids", ids}};
}

Json harness_json(const harness::HarnessReport& r, const harness::Sampling& sampling,
                  const std::vector<harness::FailureTrace>& failures) {
  Json results = Json::array();
  for (const auto& res : r.results) {
    Json j{{"id", res.id}, {"outcome", harness::to_string(res.outcome)}};
    if (res.outcome != harness::Outcome::Skipped) {
      j["exit_code"] = res.exit_code;
      j["config"] = res.config;
    }
    results.push_back(std::move(j));
  }
  Json traced = Json::array();
  for (const auto& t : failures) {
    Json suspects = Json::array();
    for (const auto& s : t.suspects) {
      suspects.push_back({{"feature", s.feature}, {"value", s.value}, {"origin", s.origin}});
    }
    traced.push_back({{"id", t.id}, {"suspects", suspects}});
  }
  return {{"format", "varcore.harness/1"},
          {"sampling", sampling.to_string()},
          {"totals", {{"pass", r.pass}, {"fail", r.fail}, {"skipped", r.skipped}, {"total", r.total}}},
          {"results", results},
          {"failures", traced}};
}

}  // namespace varcore::report
