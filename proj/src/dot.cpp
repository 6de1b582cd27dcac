#include "varcore/dot.hpp"

#include <map>
#include <sstream>

namespace varcore::interop {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void emit(std::ostringstream& out, const model::Feature& f, const std::map<std::string, std::string>& marks) {
  std::string attrs = f.abstract ? "style=\"dashed\"" : "style=\"solid\"";
  if (auto it = marks.find(f.name); it != marks.end()) {
    attrs = (f.abstract ? "style=\"dashed,filled\"" : "style=\"filled\"") + std::string(", fillcolor=") + it->second;
  }
  out << "  " << quoted(f.name) << " [" << attrs << "];\n";
  for (const auto& c : f.children) emit(out, c, marks);
}

void edges(std::ostringstream& out, const model::Feature& p) {
  for (const auto& c : p.children) {
    out << "  " << quoted(p.name) << " -> " << quoted(c.name) << " [";
    switch (p.group) {
      case model::GroupKind::And: out << "arrowhead=" << (c.mandatory ? "dot" : "odot"); break;
      case model::GroupKind::Or: out << "arrowhead=none, label=\"or\""; break;
      case model::GroupKind::Alternative: out << "arrowhead=none, label=\"alt\""; break;
    }
    out << "];\n";
  }
  for (const auto& c : p.children) edges(out, c);
}

}  // namespace

std::string export_dot(const model::FeatureModel& m, const analysis::AnalysisReport* anomalies) {
  std::map<std::string, std::string> marks;
  if (anomalies) {
    for (const auto& a : anomalies->anomalies) {
      if (a.kind == analysis::AnomalyKind::DeadFeature) marks[a.feature] = "red";
      if (a.kind == analysis::AnomalyKind::FalseOptional && !marks.count(a.feature)) marks[a.feature] = "orange";
    }
  }
  std::ostringstream out;
  out << "digraph " << quoted(m.root.name) << " {\n";
  out << "  node [shape=box];\n";
  emit(out, m.root, marks);
  edges(out, m.root);
  out << "}\n";
  return out.str();
}

}  // namespace varcore::interop
