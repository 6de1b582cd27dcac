#include "varcore/xml_model.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace varcore::interop {

namespace pt = boost::property_tree;
using logic::Formula;
using logic::Op;
using model::Feature;
using model::GroupKind;

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

class Writer {
 public:
  void line(int depth, const std::string& text) { out_ << std::string(static_cast<std::size_t>(depth), '\t') << text << "\n"; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

void write_feature(Writer& w, const Feature& f, int depth, bool is_root) {
  std::string attrs;
  if (f.abstract) attrs += " abstract=\"true\"";
  if (f.mandatory && !is_root) attrs += " mandatory=\"true\"";
  attrs += " name=\"" + escape(f.name) + "\"";
  const char* tag = "feature";
  if (!f.children.empty()) {
    tag = f.group == GroupKind::And ? "and" : f.group == GroupKind::Or ? "or" : "alt";
  }
  if (f.children.empty() && f.origin.empty()) {
    w.line(depth, std::string("<") + tag + attrs + "/>");
    return;
  }
  w.line(depth, std::string("<") + tag + attrs + ">");
  if (!f.origin.empty()) w.line(depth + 1, "<description>" + escape(f.origin) + "</description>");
  for (const auto& c : f.children) write_feature(w, c, depth + 1, false);
  w.line(depth, std::string("</") + tag + ">");
}

void write_formula(Writer& w, const Formula& f, int depth, const std::string& root) {
  auto nested = [&](const char* tag) {
    w.line(depth, std::string("<") + tag + ">");
    for (const auto& c : f.children()) write_formula(w, c, depth + 1, root);
    w.line(depth, std::string("</") + tag + ">");
  };
  switch (f.op()) {
    // The dialect has no constants; the root is selected in every configuration.
    case Op::True: w.line(depth, "<var>" + escape(root) + "</var>"); break;
    case Op::False:
      w.line(depth, "<not>");
      w.line(depth + 1, "<var>" + escape(root) + "</var>");
      w.line(depth, "</not>");
      break;
    case Op::Var: w.line(depth, "<var>" + escape(f.name()) + "</var>"); break;
    case Op::Not: nested("not"); break;
    case Op::And: nested("conj"); break;
    case Op::Or: nested("disj"); break;
    case Op::Implies: nested("imp"); break;
    case Op::Iff: nested("eqv"); break;
  }
}

}  // namespace

std::string export_xml(const model::FeatureModel& m) {
  model::validate(m);
  Writer w;
  w.line(0, R"(<?xml version="1.0" encoding="UTF-8" standalone="no"?>)");
  w.line(0, "<featureModel>");
  w.line(1, "<struct>");
  write_feature(w, m.root, 2, true);
  w.line(1, "</struct>");
  if (m.constraints.empty()) {
    w.line(1, "<constraints/>");
  } else {
    w.line(1, "<constraints>");
    for (const auto& c : m.constraints) {
      w.line(2, "<rule>");
      w.line(3, "<description>" + escape(c.id) + "</description>");
      write_formula(w, c.formula, 3, m.root.name);
      w.line(2, "</rule>");
    }
    w.line(1, "</constraints>");
  }
  w.line(0, "</featureModel>");
  return w.str();
}

namespace {

bool is_meta(const std::string& key) { return key == "<xmlattr>" || key == "<xmlcomment>"; }

bool flag(const pt::ptree& node, const char* attr) {
  const auto v = node.get<std::string>(std::string("<xmlattr>.") + attr, "false");
  if (v == "true") return true;
  if (v == "false") return false;
  throw XmlModelError(std::string("attribute ") + attr + " must be true or false, found '" + v + "'");
}

Feature read_feature(const std::string& tag, const pt::ptree& node) {
  Feature f;
  f.name = node.get<std::string>("<xmlattr>.name", "");
  if (f.name.empty()) throw XmlModelError("<" + tag + "> element without a name attribute");
  f.abstract = flag(node, "abstract");
  f.mandatory = flag(node, "mandatory");
  f.group = tag == "or" ? GroupKind::Or : tag == "alt" ? GroupKind::Alternative : GroupKind::And;
  for (const auto& [key, child] : node) {
    if (is_meta(key)) continue;
    if (key == "description") {
      f.origin = child.data();
    } else if (key == "feature" || key == "and" || key == "or" || key == "alt") {
      if (tag == "feature") throw XmlModelError("malformed nesting: <feature> " + f.name + " has child features");
      f.children.push_back(read_feature(key, child));
    } else {
      throw XmlModelError("unknown element <" + key + "> in struct (feature " + f.name + ")");
    }
  }
  return f;
}

Formula read_formula(const std::string& tag, const pt::ptree& node) {
  std::vector<Formula> kids;
  for (const auto& [key, child] : node) {
    if (is_meta(key)) continue;
    kids.push_back(read_formula(key, child));
  }
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (kids.size() < lo || kids.size() > hi) {
      throw XmlModelError("malformed nesting: <" + tag + "> has " + std::to_string(kids.size()) + " operand(s)");
    }
  };
  if (tag == "var") {
    arity(0, 0);
    const std::string name = node.data();
    if (!logic::is_identifier(name)) throw XmlModelError("<var> holds an invalid feature name '" + name + "'");
    return Formula::var(name);
  }
  if (tag == "not") {
    arity(1, 1);
    return Formula::negation(kids[0]);
  }
  if (tag == "imp" || tag == "eqv") {
    arity(2, 2);
    return tag == "imp" ? Formula::implication(kids[0], kids[1]) : Formula::equivalence(kids[0], kids[1]);
  }
  if (tag == "conj" || tag == "disj") {
    arity(2, static_cast<std::size_t>(-1));
    return tag == "conj" ? Formula::conjunction(kids) : Formula::disjunction(kids);
  }
  throw XmlModelError("unknown element <" + tag + "> in constraint");
}

}  // namespace

XmlImport import_xml(std::string_view document) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(document)};
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw XmlModelError(std::string("malformed XML: ") + e.what());
  }
  XmlImport out;
  const pt::ptree* fm = nullptr;
  for (const auto& [key, child] : tree) {
    if (key == "featureModel") {
      if (fm) throw XmlModelError("more than one <featureModel> element");
      fm = &child;
    } else if (!is_meta(key) && key != "<xmldecl>") {
      throw XmlModelError("unknown element <" + key + "> at document level");
    }
  }
  if (!fm) throw XmlModelError("missing <featureModel> element");
  bool have_struct = false;
  for (const auto& [key, child] : *fm) {
    if (is_meta(key)) continue;
    if (key == "struct") {
      if (have_struct) throw XmlModelError("more than one <struct> element");
      have_struct = true;
      std::size_t roots = 0;
      for (const auto& [k, node] : child) {
        if (is_meta(k)) continue;
        if (k != "feature" && k != "and" && k != "or" && k != "alt") {
          throw XmlModelError("unknown element <" + k + "> in struct");
        }
        if (++roots > 1) throw XmlModelError("malformed nesting: <struct> has more than one root feature");
        out.model.root = read_feature(k, node);
      }
      if (roots == 0) throw XmlModelError("malformed nesting: <struct> has no root feature");
    } else if (key == "constraints") {
      for (const auto& [k, rule] : child) {
        if (is_meta(k)) continue;
        if (k != "rule") throw XmlModelError("unknown element <" + k + "> in constraints");
        model::CrossConstraint c;
        std::size_t bodies = 0;
        for (const auto& [rk, node] : rule) {
          if (is_meta(rk)) continue;
          if (rk == "description") {
            c.id = node.data();
            continue;
          }
          if (++bodies > 1) throw XmlModelError("malformed nesting: <rule> has more than one formula");
          c.formula = read_formula(rk, node);
        }
        if (bodies == 0) throw XmlModelError("malformed nesting: empty <rule>");
        if (c.id.empty()) c.id = "C" + std::to_string(out.model.constraints.size() + 1);
        out.model.constraints.push_back(std::move(c));
      }
    } else {
      out.warnings.push_back("ignored element <" + key + ">");
    }
  }
  if (!have_struct) throw XmlModelError("missing <struct> element");
  try {
    model::validate(out.model);
  } catch (const model::ModelError& e) {
    throw XmlModelError(e.what());
  }
  return out;
}

XmlImport load_xml(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return import_xml(buf.str());
}

}  // namespace varcore::interop
