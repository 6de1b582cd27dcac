#include "varcore/worksheet.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "varcore/formula_parser.hpp"

namespace varcore::rtw {

std::string_view to_string(EntryKind kind) {
  return kind == EntryKind::Requirement ? "REQUIREMENT" : "CONSTRAINT";
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
  }
  return "error";
}

std::vector<std::string> RequirementEntry::introduced() const {
  std::vector<std::string> out;
  if (!abstract_feature.empty()) out.push_back(abstract_feature);
  out.insert(out.end(), concrete_features.begin(), concrete_features.end());
  return out;
}

const RequirementEntry* Worksheet::find(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

namespace {

std::string where(std::size_t line, const std::string& id) {
  std::string s;
  if (line > 0) s += "line " + std::to_string(line);
  if (!id.empty()) s += (s.empty() ? "" : " ") + std::string("(") + id + ")";
  return s;
}

}  // namespace

RtwError::RtwError(const std::string& message, std::size_t line, std::string entry_id)
    : Error(where(line, entry_id).empty() ? message : where(line, entry_id) + ": " + message),
      line_(line),
      entry_id_(std::move(entry_id)) {}

const std::vector<std::string>& rtw_columns() {
  static const std::vector<std::string> columns{
      "id",   "kind",   "source_doc",      "source_loc",        "text",
      "formula", "abstract_feature", "concrete_features", "parent", "status"};
  return columns;
}

namespace {

struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
  bool comment = false;
  std::string raw;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Record> split_records(std::string_view text) {
  std::vector<Record> out;
  std::size_t i = 0;
  std::size_t line = 1;
  while (i < text.size()) {
    Record r;
    r.line = line;
    // Comments and blank lines are only recognised at the start of a record.
    const auto eol = text.find('\n', i);
    const std::string_view whole = text.substr(i, eol == std::string_view::npos ? text.size() - i : eol - i);
    const std::string trimmed = trim(whole);
    if (trimmed.empty() || trimmed.front() == '#') {
      if (!trimmed.empty()) {
        r.comment = true;
        r.raw = trimmed;
        out.push_back(std::move(r));
      }
      i = eol == std::string_view::npos ? text.size() : eol + 1;
      ++line;
      continue;
    }
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (;;) {
      if (i >= text.size()) {
        if (quoted) throw RtwError("unterminated quoted field", r.line);
        r.fields.push_back(was_quoted ? field : trim(field));
        break;
      }
      const char c = text[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field += '"';
            i += 2;
          } else {
            quoted = false;
            ++i;
          }
          continue;
        }
        if (c == '\n') ++line;
        field += c;
        ++i;
        continue;
      }
      if (c == '"' && trim(field).empty()) {
        quoted = true;
        was_quoted = true;
        field.clear();
        ++i;
      } else if (c == ',') {
        r.fields.push_back(was_quoted ? field : trim(field));
        field.clear();
        was_quoted = false;
        ++i;
      } else if (c == '\n') {
        r.fields.push_back(was_quoted ? field : trim(field));
        ++i;
        ++line;
        break;
      } else if (c == '\r') {
        ++i;
      } else {
        if (!was_quoted) field += c;
        ++i;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> split_features(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ';')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

EntryStatus parse_status(const std::string& raw, std::size_t line, const std::string& id) {
  EntryStatus st;
  const std::string u = upper(raw);
  if (u.empty() || u == "ACTIVE") return st;
  if (u.rfind("FLAGGED", 0) == 0) {
    st.flagged = true;
    std::string rest = trim(std::string_view(raw).substr(7));
    if (!rest.empty()) {
      if (rest.front() != '(' || rest.back() != ')') {
        throw RtwError("malformed status '" + raw + "'", line, id);
      }
      st.reason = trim(std::string_view(rest).substr(1, rest.size() - 2));
    }
    return st;
  }
  throw RtwError("unknown status '" + raw + "'", line, id);
}

std::string infer_model_name(const std::vector<RequirementEntry>& entries) {
  std::set<std::string> introduced;
  for (const auto& e : entries) {
    for (const auto& f : e.introduced()) introduced.insert(f);
  }
  std::set<std::string> candidates;
  for (const auto& e : entries) {
    if (e.kind == EntryKind::Requirement && !e.parent.empty() && !introduced.count(e.parent)) {
      candidates.insert(e.parent);
    }
  }
  if (candidates.size() == 1) return *candidates.begin();
  throw RtwError(candidates.empty() ? "no '# model: NAME' line and no root parent to infer it from"
                                    : "no '# model: NAME' line and several candidate root names");
}

}  // namespace

Worksheet parse_rtw(std::string_view content) {
  Worksheet w;
  std::vector<std::size_t> index;  // column position for each canonical column
  bool have_header = false;
  std::size_t width = 0;
  std::set<std::string> ids;
  static const std::regex directive(R"(^#\s*model\s*:\s*(\S+)\s*$)");

  for (auto& rec : split_records(content)) {
    if (rec.comment) {
      std::smatch m;
      if (std::regex_match(rec.raw, m, directive)) {
        if (!logic::is_identifier(m[1].str())) {
          throw RtwError("model name '" + m[1].str() + "' is not an identifier", rec.line);
        }
        w.model_name = m[1].str();
      }
      continue;
    }
    if (!have_header) {
      const auto& cols = rtw_columns();
      std::map<std::string, std::size_t> pos;
      for (std::size_t i = 0; i < rec.fields.size(); ++i) {
        const std::string name = trim(rec.fields[i]);
        if (std::find(cols.begin(), cols.end(), name) == cols.end()) {
          throw RtwError("unknown column '" + name + "'", rec.line);
        }
        if (!pos.emplace(name, i).second) throw RtwError("duplicate column '" + name + "'", rec.line);
      }
      for (const auto& c : cols) {
        auto it = pos.find(c);
        if (it == pos.end()) throw RtwError("missing column: " + c, rec.line);
        index.push_back(it->second);
      }
      width = rec.fields.size();
      have_header = true;
      continue;
    }
    if (rec.fields.size() != width) {
      throw RtwError("expected " + std::to_string(width) + " fields, found " +
                         std::to_string(rec.fields.size()),
                     rec.line);
    }
    auto field = [&](std::size_t canonical) -> const std::string& { return rec.fields[index[canonical]]; };
    RequirementEntry e;
    e.line = rec.line;
    e.id = field(0);
    if (e.id.empty()) throw RtwError("empty id", rec.line);
    if (!ids.insert(e.id).second) throw RtwError("duplicate id: " + e.id, rec.line, e.id);
    const std::string kind = upper(field(1));
    if (kind == "REQUIREMENT") {
      e.kind = EntryKind::Requirement;
    } else if (kind == "CONSTRAINT") {
      e.kind = EntryKind::Constraint;
    } else {
      throw RtwError("unknown kind '" + field(1) + "'", rec.line, e.id);
    }
    e.source_doc = field(2);
    e.source_loc = field(3);
    e.text = field(4);
    e.formula_text = field(5);
    try {
      e.formula = logic::parse_formula(e.formula_text);
    } catch (const logic::FormulaSyntaxError& ex) {
      throw RtwError(std::string("unparsable formula: ") + ex.what(), rec.line, e.id);
    }
    e.abstract_feature = field(6);
    e.concrete_features = split_features(field(7));
    e.parent = field(8);
    e.status = parse_status(field(9), rec.line, e.id);
    if (e.kind == EntryKind::Constraint && !e.introduced().empty()) {
      throw RtwError("constraint entry must not introduce features", rec.line, e.id);
    }
    if (e.kind == EntryKind::Requirement && e.concrete_features.empty()) {
      throw RtwError("requirement entry introduces no concrete feature", rec.line, e.id);
    }
    w.entries.push_back(std::move(e));
  }
  if (!have_header) throw RtwError("missing header row");
  if (w.model_name.empty() && !w.entries.empty()) w.model_name = infer_model_name(w.entries);
  return w;
}

Worksheet load_rtw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rtw(buf.str());
}

namespace {

std::string quote(const std::string& s) {
  const bool plain = s.find_first_of(",\"\n\r;") == std::string::npos && trim(s) == s;
  if (plain) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string write_rtw(const Worksheet& w) {
  std::ostringstream out;
  if (!w.model_name.empty()) out << "# model: " << w.model_name << "\n";
  const auto& cols = rtw_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& e : w.entries) {
    std::string features;
    for (std::size_t i = 0; i < e.concrete_features.size(); ++i) {
      features += (i ? ";" : "") + e.concrete_features[i];
    }
    std::string status = "ACTIVE";
    if (e.status.flagged) status = e.status.reason.empty() ? "FLAGGED" : "FLAGGED(" + e.status.reason + ")";
    const std::string formula = e.formula_text.empty() ? logic::to_string(e.formula) : e.formula_text;
    const std::vector<std::string> row{e.id,      std::string(to_string(e.kind)), e.source_doc, e.source_loc,
                                       e.text,    formula, e.abstract_feature, features,
                                       e.parent,  status};
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << quote(row[i]);
    out << "\n";
  }
  return out.str();
}

std::size_t ValidationReport::count(Severity s) const {
  return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(),
                                                [&](const Finding& f) { return f.severity == s; }));
}

bool follows_naming_convention(std::string_view name) {
  static const std::regex pattern(R"(^[A-Za-z0-9]+(_[A-Za-z0-9]+)*_[A-Za-z]*[0-9]+$)");
  return std::regex_match(name.begin(), name.end(), pattern);
}

std::set<std::string> vocabulary(const Worksheet& w) {
  std::set<std::string> out;
  if (!w.model_name.empty()) out.insert(w.model_name);
  for (const auto& e : w.entries) {
    if (e.status.flagged) continue;
    for (const auto& f : e.introduced()) out.insert(f);
  }
  return out;
}

std::vector<std::string> undefined_references(const Worksheet& w, const RequirementEntry& e) {
  const auto vocab = vocabulary(w);
  std::vector<std::string> out;
  for (const auto& v : logic::variables(e.formula)) {
    if (!vocab.count(v)) out.push_back(v);
  }
  return out;
}

ValidationReport validate_rtw(const Worksheet& w) {
  ValidationReport r;
  if (w.entries.empty()) {
    r.findings.push_back({"", Severity::Error, "no entries"});
    return r;
  }
  const auto vocab = vocabulary(w);
  std::map<std::string, std::string> introduced_by;
  if (!w.model_name.empty()) introduced_by[w.model_name] = "";
  for (const auto& e : w.entries) {
    auto add = [&](Severity s, std::string msg) { r.findings.push_back({e.id, s, std::move(msg)}); };
    if (e.status.flagged) {
      add(Severity::Info, "flagged" + (e.status.reason.empty() ? std::string() : ": " + e.status.reason) +
                              "; excluded from synthesis");
      continue;
    }
    if (e.kind == EntryKind::Constraint && !e.introduced().empty()) {
      add(Severity::Error, "constraint entry must not introduce features");
    }
    if (e.kind == EntryKind::Requirement && e.concrete_features.empty()) {
      add(Severity::Error, "requirement entry introduces no concrete feature");
    }
    if (!e.abstract_feature.empty() && !follows_naming_convention(e.abstract_feature)) {
      add(Severity::Warning, "abstract feature '" + e.abstract_feature +
                                 "' does not follow the name_id naming convention");
    }
    for (const auto& f : e.introduced()) {
      if (!logic::is_identifier(f)) {
        add(Severity::Error, "invalid feature name '" + f + "'");
        continue;
      }
      auto [it, fresh] = introduced_by.emplace(f, e.id);
      if (!fresh) {
        add(Severity::Error, "duplicate feature introduction: " + f +
                                 (it->second.empty() ? " (model root)" : " (first introduced by " + it->second + ")"));
      }
    }
    if (e.kind == EntryKind::Requirement && !e.parent.empty() && !vocab.count(e.parent)) {
      add(Severity::Error, "undefined parent: " + e.parent);
    }
    for (const auto& name : undefined_references(w, e)) {
      add(Severity::Error, "undefined feature reference: " + name);
    }
  }
  return r;
}

std::string to_text(const ValidationReport& r) {
  std::ostringstream out;
  for (const auto& f : r.findings) {
    out << to_string(f.severity) << "\t" << (f.entry_id.empty() ? "-" : f.entry_id) << "\t" << f.message << "\n";
  }
  out << r.count(Severity::Error) << " error(s), " << r.count(Severity::Warning) << " warning(s), "
      << r.count(Severity::Info) << " note(s)\n";
  return out.str();
}

}  // namespace varcore::rtw
