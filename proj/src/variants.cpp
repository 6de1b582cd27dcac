#include "varcore/variants.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "varcore/sat.hpp"

namespace varcore::variants {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kIndexTag = "# varcore.variants/1";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + p.string());
  out << content;
  if (!out) throw Error("cannot write " + p.string());
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true") {
    out = true;
  } else if (s == "false") {
    out = false;
  } else {
    return false;
  }
  return true;
}

}  // namespace

const Variant* VariantSet::find(std::string_view id) const {
  for (const auto& v : variants) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

std::string format_variant_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04zu", index);
  return buf;
}

VariantSet enumerate_variants(const model::FeatureModel& m) {
  const logic::Formula phi = model::model_to_formula(m);
  if (!logic::sat(phi)) throw VoidModelError("the model is void (no valid configuration); run analyze");
  VariantSet vs;
  vs.features = model::concrete_feature_names(m);
  std::size_t n = 0;
  for (auto& values : logic::all_sat(phi, vs.features)) {
    vs.variants.push_back({format_variant_id(++n), std::move(values)});
  }
  return vs;
}

void write_variants(const VariantSet& vs, const fs::path& dir) {
  fs::create_directories(dir);
  std::ostringstream index;
  index << kIndexTag << "\nfeatures:";
  for (const auto& f : vs.features) index << " " << f;
  index << "\n";
  for (const auto& v : vs.variants) {
    std::ostringstream body;
    for (const auto& f : vs.features) body << f << "=" << (v.values.at(f) ? "true" : "false") << "\n";
    write_file(dir / (v.id + ".variant"), body.str());
    index << v.id << "\n";
  }
  write_file(dir / "index.txt", index.str());
}

VariantSet read_variants(const fs::path& dir) {
  std::istringstream index(read_file(dir / "index.txt"));
  std::string line;
  if (!std::getline(index, line) || trim(line) != kIndexTag) {
    throw Error((dir / "index.txt").string() + ": not a variant index");
  }
  VariantSet vs;
  if (!std::getline(index, line) || line.rfind("features:", 0) != 0) {
    throw Error((dir / "index.txt").string() + ": missing features line");
  }
  std::istringstream names(line.substr(9));
  for (std::string f; names >> f;) vs.features.push_back(f);
  const std::set<std::string> expected(vs.features.begin(), vs.features.end());
  while (std::getline(index, line)) {
    const std::string id = trim(line);
    if (id.empty()) continue;
    Variant v{id, {}};
    std::istringstream body(read_file(dir / (id + ".variant")));
    while (std::getline(body, line)) {
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      bool value = false;
      if (eq == std::string::npos || !parse_bool(trim(line.substr(eq + 1)), value)) {
        throw Error(id + ".variant: malformed line '" + line + "'");
      }
      v.values[trim(line.substr(0, eq))] = value;
    }
    std::set<std::string> got;
    for (const auto& [k, _] : v.values) got.insert(k);
    if (got != expected) throw Error(id + ".variant: features differ from the index");
    vs.variants.push_back(std::move(v));
  }
  return vs;
}

const std::string* FeatureCodeMap::symbol(std::string_view feature) const {
  for (const auto& [f, s] : entries) {
    if (f == feature) return &s;
  }
  return nullptr;
}

FeatureCodeMap parse_feature_map(std::string_view content) {
  FeatureCodeMap map;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
      throw FeatureMapError("line " + std::to_string(lineno) + ": expected two columns");
    }
    std::string feature = trim(t.substr(0, comma));
    std::string symbol = trim(t.substr(comma + 1));
    if (first && feature == "feature" && symbol == "symbol") {
      first = false;
      continue;
    }
    first = false;
    if (feature.empty() || symbol.empty()) {
      throw FeatureMapError("line " + std::to_string(lineno) + ": empty column");
    }
    map.entries.emplace_back(std::move(feature), std::move(symbol));
  }
  return map;
}

void check_feature_map(const FeatureCodeMap& map, const std::vector<std::string>& features) {
  const std::set<std::string> known(features.begin(), features.end());
  std::set<std::string> mapped;
  std::set<std::string> symbols;
  for (const auto& [f, s] : map.entries) {
    if (!known.count(f)) throw FeatureMapError("unknown feature in map: " + f);
    if (!mapped.insert(f).second) throw FeatureMapError("feature mapped twice: " + f);
    if (!logic::is_identifier(s)) throw FeatureMapError("symbol for " + f + " is not a C identifier: " + s);
    if (!symbols.insert(s).second) throw FeatureMapError("duplicate symbol: " + s);
  }
  for (const auto& f : features) {
    if (!mapped.count(f)) throw FeatureMapError("missing feature in map: " + f);
  }
}

FeatureCodeMap load_feature_map(const fs::path& path, const std::vector<std::string>& features) {
  FeatureCodeMap map = parse_feature_map(read_file(path));
  check_feature_map(map, features);
  return map;
}

std::string emit_config(const Variant& v, const FeatureCodeMap& map, ConfigFormat format) {
  std::string out;
  for (const auto& [feature, symbol] : map.entries) {
    auto it = v.values.find(feature);
    if (it == v.values.end()) throw FeatureMapError("variant " + v.id + " has no value for " + feature);
    const char* value = it->second ? "true" : "false";
    if (format == ConfigFormat::CHeader) {
      out += "#define " + symbol + " " + value + "\n";
    } else {
      out += symbol + "=" + value + "\n";
    }
  }
  return out;
}

}  // namespace varcore::variants
