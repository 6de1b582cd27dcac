#include "varcore/analysis.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "varcore/sat.hpp"

namespace varcore::analysis {

using logic::Formula;
using model::FeatureModel;

std::string_view to_string(AnomalyKind kind) {
  switch (kind) {
    case AnomalyKind::VoidModel: return "VOID_MODEL";
    case AnomalyKind::DeadFeature: return "DEAD_FEATURE";
    case AnomalyKind::FalseOptional: return "FALSE_OPTIONAL";
    case AnomalyKind::RedundantConstraint: return "REDUNDANT_CONSTRAINT";
    case AnomalyKind::ConstraintConflict: return "CONSTRAINT_CONFLICT";
  }
  return "VOID_MODEL";
}

bool AnalysisReport::has_errors() const {
  return std::any_of(anomalies.begin(), anomalies.end(), [](const Anomaly& a) { return a.is_error(); });
}

namespace {

bool satisfiable(const Formula& f) { return logic::sat(f).satisfiable; }

Formula with(const Formula& phi, std::vector<Formula> extra) {
  extra.insert(extra.begin(), phi);
  return logic::all_of(std::move(extra));
}

const model::CrossConstraint& constraint(const FeatureModel& m, const std::string& id) {
  for (const auto& c : m.constraints) {
    if (c.id == id) return c;
  }
  throw Error("unknown constraint: " + id);
}

std::vector<std::string> constraint_ids(const FeatureModel& m) {
  std::vector<std::string> out;
  for (const auto& c : m.constraints) out.push_back(c.id);
  return out;
}

std::vector<std::string> minus(const std::vector<std::string>& all, const std::vector<std::string>& keep) {
  std::vector<std::string> out;
  for (const auto& id : all) {
    if (std::find(keep.begin(), keep.end(), id) == keep.end()) out.push_back(id);
  }
  return out;
}

void add_unique(std::vector<std::string>& v, const std::string& id) {
  if (!id.empty() && std::find(v.begin(), v.end(), id) == v.end()) v.push_back(id);
}

std::string origin_of(const FeatureModel& m, const std::string& name) {
  const auto* f = model::find_feature(m, name);
  return f ? f->origin : std::string();
}

}  // namespace

bool anomaly_present(const FeatureModel& m, const Anomaly& a, const std::vector<std::string>& removed) {
  switch (a.kind) {
    case AnomalyKind::VoidModel: return !satisfiable(model::model_to_formula(m, removed));
    case AnomalyKind::DeadFeature:
      return !satisfiable(with(model::model_to_formula(m, removed), {Formula::var(a.feature)}));
    case AnomalyKind::FalseOptional: {
      const Formula phi = model::model_to_formula(m, removed);
      const Formula f = Formula::var(a.feature);
      return !satisfiable(with(phi, {Formula::var(a.parent), Formula::negation(f)})) && satisfiable(with(phi, {f}));
    }
    case AnomalyKind::RedundantConstraint: {
      if (std::find(removed.begin(), removed.end(), a.constraint) != removed.end()) return false;
      std::vector<std::string> skip = removed;
      skip.push_back(a.constraint);
      const Formula& c = constraint(m, a.constraint).formula;
      return !satisfiable(with(model::model_to_formula(m, skip), {Formula::negation(c)}));
    }
    case AnomalyKind::ConstraintConflict: break;
  }
  throw Error("a constraint conflict entry cannot be re-checked");
}

std::vector<std::string> attribute_conflict(const FeatureModel& m, const Anomaly& a) {
  if (a.kind == AnomalyKind::RedundantConstraint || a.kind == AnomalyKind::ConstraintConflict) {
    throw Error("conflict attribution applies to void, dead and false-optional anomalies");
  }
  if (!anomaly_present(m, a)) throw Error("anomaly not present in the model: " + describe(a));
  const auto all = constraint_ids(m);
  if (anomaly_present(m, a, all)) return {};
  // Start from every constraint removed, then put each back in declaration
  // order when the anomaly stays absent without it.
  std::vector<std::string> removal = all;
  for (const auto& id : all) {
    std::vector<std::string> smaller = minus(removal, {id});
    if (!anomaly_present(m, a, smaller)) removal = std::move(smaller);
  }
  return removal;
}

std::vector<std::string> explain(const FeatureModel& m, const Anomaly& a) {
  if (a.kind == AnomalyKind::ConstraintConflict) return a.implicated;
  const auto all = constraint_ids(m);
  const bool redundant = a.kind == AnomalyKind::RedundantConstraint;
  std::vector<std::string> keep = redundant ? minus(all, {a.constraint}) : all;
  // The redundant constraint itself always stays in the model.
  auto removed_for = [&](const std::vector<std::string>& kept) {
    auto removed = minus(all, kept);
    return redundant ? minus(removed, {a.constraint}) : removed;
  };
  if (!anomaly_present(m, a, removed_for(keep))) throw Error("anomaly not present in the model: " + describe(a));
  for (const auto& id : std::vector<std::string>(keep)) {
    std::vector<std::string> smaller = minus(keep, {id});
    if (anomaly_present(m, a, removed_for(smaller))) keep = std::move(smaller);
  }
  return keep;
}

namespace {

std::vector<std::string> trace_for(const FeatureModel& m, const Anomaly& a) {
  std::vector<std::string> ids;
  std::vector<std::string> constraints = explain(m, a);
  if (a.kind == AnomalyKind::RedundantConstraint) constraints.push_back(a.constraint);
  for (const auto& id : constraint_ids(m)) {
    if (std::find(constraints.begin(), constraints.end(), id) != constraints.end()) add_unique(ids, id);
  }
  if (!a.feature.empty()) add_unique(ids, origin_of(m, a.feature));
  if (!a.parent.empty()) add_unique(ids, origin_of(m, a.parent));
  return ids;
}

}  // namespace

AnalysisReport analyze(const FeatureModel& m, const AnalyzeOptions& options) {
  AnalysisReport r;
  const Formula phi = model::model_to_formula(m);
  const auto all = model::features(m);

  auto& s = r.statistics;
  s.features = all.size();
  s.abstract_features = static_cast<std::size_t>(
      std::count_if(all.begin(), all.end(), [](const model::Feature* f) { return f->abstract; }));
  s.concrete_features = s.features - s.abstract_features;
  s.constraints = m.constraints.size();

  if (!satisfiable(phi)) {
    Anomaly a;
    a.kind = AnomalyKind::VoidModel;
    r.anomalies.push_back(std::move(a));
  }
  for (const auto* f : all) {
    if (!satisfiable(with(phi, {Formula::var(f->name)}))) {
      Anomaly a;
      a.kind = AnomalyKind::DeadFeature;
      a.feature = f->name;
      r.anomalies.push_back(std::move(a));
    }
  }
  for (const auto* p : all) {
    for (const auto& c : p->children) {
      if (c.mandatory && p->group == model::GroupKind::And) continue;
      Anomaly a;
      a.kind = AnomalyKind::FalseOptional;
      a.feature = c.name;
      a.parent = p->name;
      if (anomaly_present(m, a)) r.anomalies.push_back(std::move(a));
    }
  }
  for (const auto& c : m.constraints) {
    Anomaly a;
    a.kind = AnomalyKind::RedundantConstraint;
    a.constraint = c.id;
    if (anomaly_present(m, a)) r.anomalies.push_back(std::move(a));
  }
  for (auto& a : r.anomalies) a.trace = trace_for(m, a);

  if (options.attribute && !m.constraints.empty()) {
    const std::size_t n = r.anomalies.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (r.anomalies[i].kind == AnomalyKind::RedundantConstraint) continue;
      auto mcs = attribute_conflict(m, r.anomalies[i]);
      if (mcs.empty()) continue;
      Anomaly c;
      c.kind = AnomalyKind::ConstraintConflict;
      c.ref = i;
      c.feature = r.anomalies[i].feature;
      c.implicated = mcs;
      c.trace = mcs;
      r.anomalies.push_back(std::move(c));
    }
  }

  if (options.count && satisfiable(phi)) {
    try {
      s.configurations = logic::all_sat(phi, model::feature_names(m)).size();
      s.variants = logic::all_sat(phi, model::concrete_feature_names(m)).size();
    } catch (const logic::CapacityError&) {
      s.configurations.reset();
      s.variants.reset();
    }
  }
  return r;
}

std::vector<AnomalyTrace> trace_report(const AnalysisReport& r, const rtw::Worksheet& w) {
  std::vector<AnomalyTrace> out;
  for (std::size_t i = 0; i < r.anomalies.size(); ++i) {
    AnomalyTrace t;
    t.anomaly = i;
    for (const auto& id : r.anomalies[i].trace) {
      const auto* e = w.find(id);
      if (!e) throw Error("trace id " + id + " is not in the worksheet");
      t.rows.push_back({e->id, e->source_doc, e->source_loc, e->text});
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::string describe(const Anomaly& a) {
  std::string s(to_string(a.kind));
  switch (a.kind) {
    case AnomalyKind::VoidModel: break;
    case AnomalyKind::DeadFeature: s += " " + a.feature; break;
    case AnomalyKind::FalseOptional: s += " " + a.feature + " (parent " + a.parent + ")"; break;
    case AnomalyKind::RedundantConstraint: s += " " + a.constraint; break;
    case AnomalyKind::ConstraintConflict: {
      s += " for anomaly #" + std::to_string(a.ref + 1) + ":";
      for (const auto& id : a.implicated) s += " " + id;
      break;
    }
  }
  return s;
}

std::string to_text(const AnalysisReport& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.anomalies.size(); ++i) {
    const auto& a = r.anomalies[i];
    out << "#" << i + 1 << "\t" << (a.is_error() ? "error" : "warning") << "\t" << describe(a);
    if (!a.trace.empty()) {
      out << "\ttrace:";
      for (const auto& id : a.trace) out << " " << id;
    }
    out << "\n";
  }
  if (r.valid()) out << "model is valid\n";
  const auto& s = r.statistics;
  out << "features: " << s.features << " (" << s.abstract_features << " abstract, " << s.concrete_features
      << " concrete)\n";
  out << "constraints: " << s.constraints << "\n";
  if (s.configurations) out << "configurations: " << *s.configurations << "\n";
  if (s.variants) out << "variants: " << *s.variants << "\n";
  return out.str();
}

}  // namespace varcore::analysis
