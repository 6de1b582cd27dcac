#include <gtest/gtest.h>

#include <set>

#include "support/oracle.hpp"
#include "support/random_models.hpp"
#include "varcore/analysis.hpp"
#include "varcore/dot.hpp"
#include "varcore/formula_parser.hpp"
#include "varcore/synthesis.hpp"
#include "varcore/xml_model.hpp"

using namespace varcore::interop;
using varcore::logic::parse_formula;
using varcore::model::Feature;
using varcore::model::FeatureModel;
using varcore::model::GroupKind;

namespace {

FeatureModel alt_model() {
  FeatureModel m;
  m.root.name = "root";
  m.root.abstract = true;
  m.root.group = GroupKind::Alternative;
  for (const char* n : {"a", "b"}) {
    Feature f;
    f.name = n;
    m.root.children.push_back(f);
  }
  return m;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + needle.size())) ++n;
  return n;
}

}  // namespace

TEST(ExportXml, Alternative) {
  const std::string expected =
      "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      "<featureModel>\n"
      "\t<struct>\n"
      "\t\t<alt abstract=\"true\" name=\"root\">\n"
      "\t\t\t<feature name=\"a\"/>\n"
      "\t\t\t<feature name=\"b\"/>\n"
      "\t\t</alt>\n"
      "\t</struct>\n"
      "\t<constraints/>\n"
      "</featureModel>\n";
  EXPECT_EQ(export_xml(alt_model()), expected);
}

TEST(ExportXml, SingleRootAndNesting) {
  FeatureModel m;
  m.root.name = "solo";
  EXPECT_NE(export_xml(m).find("<feature name=\"solo\"/>"), std::string::npos);

  auto n = alt_model();
  n.constraints.push_back({"K1", parse_formula("a => !b")});
  const auto xml = export_xml(n);
  EXPECT_NE(xml.find("\t\t\t<imp>\n\t\t\t\t<var>a</var>\n\t\t\t\t<not>\n\t\t\t\t\t<var>b</var>\n\t\t\t\t</not>\n\t\t\t</imp>"),
            std::string::npos)
      << xml;
  EXPECT_NE(xml.find("<description>K1</description>"), std::string::npos);
}

TEST(ImportXml, HandWrittenDocument) {
  const auto imp = load_xml(VARCORE_DATA_DIR "/samples/transport.xml");
  const auto& m = imp.model;
  EXPECT_EQ(m.root.name, "Transport");
  EXPECT_EQ(varcore::model::features(m).size(), 6u);
  const auto* link = varcore::model::find_feature(m, "Link");
  ASSERT_NE(link, nullptr);
  EXPECT_EQ(link->group, GroupKind::Alternative);
  EXPECT_TRUE(link->mandatory);
  ASSERT_EQ(m.constraints.size(), 1u);
  EXPECT_EQ(m.constraints[0].id, "C1");
  EXPECT_EQ(m.constraints[0].formula, parse_formula("ethernet => crc"));
  EXPECT_EQ(imp.warnings.size(), 4u);
  EXPECT_EQ(oracle::variants(m).size(), 5u);
}

TEST(ImportXml, Errors) {
  const std::string head = "<featureModel><struct>";
  EXPECT_THROW(import_xml(head + "<and name=\"r\"><widget name=\"x\"/></and></struct></featureModel>"), XmlModelError);
  EXPECT_THROW(import_xml(head + "<feature name=\"r\"><feature name=\"x\"/></feature></struct></featureModel>"), XmlModelError);
  EXPECT_THROW(import_xml(head + "<feature/></struct></featureModel>"), XmlModelError);
  EXPECT_THROW(import_xml(head + "<feature name=\"r\" abstract=\"yes\"/></struct></featureModel>"), XmlModelError);
  EXPECT_THROW(import_xml(head + "<feature name=\"r\"/></struct><constraints><rule><xor><var>r</var></xor></rule>"
                                 "</constraints></featureModel>"),
               XmlModelError);
  EXPECT_THROW(import_xml(head + "<feature name=\"r\"/></struct><constraints><rule><var>q</var></rule>"
                                 "</constraints></featureModel>"),
               XmlModelError);
  EXPECT_THROW(import_xml("<featureModel><struct>"), XmlModelError);
  EXPECT_THROW(import_xml("<other/>"), XmlModelError);
}

TEST(RoundTrip, TimeModel) {
  const auto a = varcore::synthesis::assemble_model(varcore::rtw::load_rtw(VARCORE_DATA_DIR "/time/time_initial.rtw"));
  const auto back = import_xml(export_xml(a.model));
  EXPECT_EQ(back.model, a.model);
  EXPECT_TRUE(back.warnings.empty());
  EXPECT_EQ(load_xml(VARCORE_DATA_DIR "/time/time.xml").model,
            varcore::synthesis::assemble_model(varcore::rtw::load_rtw(VARCORE_DATA_DIR "/time/time.rtw")).model);
}

class InteropProperty : public ::testing::TestWithParam<int> {};

TEST_P(InteropProperty, XmlRoundTripIsExact) {
  gen::Rng rng(static_cast<std::uint64_t>(GetParam()));
  const FeatureModel m = gen::model(rng, {12, 4});
  const auto xml = export_xml(m);
  const auto back = import_xml(xml).model;
  EXPECT_EQ(back, m) << xml;
  EXPECT_EQ(export_xml(back), xml);
}

INSTANTIATE_TEST_SUITE_P(Random, InteropProperty, ::testing::Range(0, 100));

TEST(Dot, CountsAndHighlights) {
  FeatureModel m = alt_model();
  m.constraints.push_back({"C1", parse_formula("a => b")});
  const auto r = varcore::analysis::analyze(m);
  const auto dot = export_dot(m, &r);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_EQ(count(dot, " -> "), 2u);
  EXPECT_EQ(count(dot, "label=\"alt\""), 2u);
  EXPECT_EQ(count(dot, "fillcolor=red"), 1u);
  EXPECT_EQ(count(dot, "fillcolor=orange"), 1u);
  EXPECT_EQ(count(dot, "dashed"), 1u);
  EXPECT_EQ(count(export_dot(m), "fillcolor"), 0u);
}
