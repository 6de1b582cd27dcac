#include "varcore/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "varcore/analysis.hpp"
#include "varcore/dot.hpp"
#include "varcore/harness.hpp"
#include "varcore/report_json.hpp"
#include "varcore/synthesis.hpp"
#include "varcore/variants.hpp"
#include "varcore/worksheet.hpp"
#include "varcore/xml_model.hpp"

namespace varcore::cli {

namespace fs = std::filesystem;

namespace {

// Failures that are findings about the input rather than bad usage.
class FindingError : public Error {
 public:
  using Error::Error;
};

void write_text(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content)) throw Error("cannot write " + path.string());
}

struct Source {
  std::string rtw;
  std::string model;
};

void add_source(CLI::App* cmd, Source& s) {
  auto* r = cmd->add_option("--rtw", s.rtw, "requirements traceability worksheet (CSV)")->check(CLI::ExistingFile);
  auto* m = cmd->add_option("--model", s.model, "feature model XML")->check(CLI::ExistingFile);
  r->excludes(m);
  m->excludes(r);
}

struct Loaded {
  std::optional<rtw::Worksheet> worksheet;
  std::optional<synthesis::Assembly> assembly;
  model::FeatureModel model;
  std::vector<std::string> warnings;
};

Loaded load(const Source& s) {
  Loaded l;
  if (!s.rtw.empty()) {
    l.worksheet = rtw::load_rtw(s.rtw);
    try {
      l.assembly = synthesis::assemble_model(*l.worksheet);
    } catch (const synthesis::SynthesisError& e) {
      throw FindingError(e.what());
    } catch (const model::ModelError& e) {
      throw FindingError(e.what());
    }
    l.model = l.assembly->model;
  } else if (!s.model.empty()) {
    auto imported = interop::load_xml(s.model);
    l.model = std::move(imported.model);
    l.warnings = std::move(imported.warnings);
  } else {
    throw CLI::RequiredError("--rtw or --model");
  }
  return l;
}

variants::ConfigFormat parse_style(const std::string& style) {
  return style == "kv" ? variants::ConfigFormat::KeyValue : variants::ConfigFormat::CHeader;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variability requirements to feature models, anomaly analysis and configuration testing", "varcore"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "varcore 1.0.0");
  std::string format = "text";
  const auto formats = CLI::IsMember({"text", "json"});

  auto* validate = app.add_subcommand("validate", "check a worksheet");
  std::string rtw_path;
  validate->add_option("rtw", rtw_path, "worksheet file")->required()->check(CLI::ExistingFile);
  validate->add_option("--format", format, "text or json")->check(formats);

  auto* model_cmd = app.add_subcommand("model", "assemble the feature model from a worksheet");
  std::string xml_out;
  std::string dot_out;
  model_cmd->add_option("rtw", rtw_path, "worksheet file")->required()->check(CLI::ExistingFile);
  model_cmd->add_option("--xml", xml_out, "write the model as XML");
  model_cmd->add_option("--dot", dot_out, "write the feature diagram as Graphviz");
  model_cmd->add_option("--format", format, "text or json")->check(formats);

  auto* analyze = app.add_subcommand("analyze", "detect anomalies and trace them to requirements");
  Source analyze_src;
  add_source(analyze, analyze_src);
  analyze->add_option("--dot", dot_out, "write the diagram with anomalies highlighted");
  analyze->add_option("--format", format, "text or json")->check(formats);

  auto* enumerate = app.add_subcommand("enumerate", "write every product variant");
  Source enum_src;
  std::string out_dir;
  add_source(enumerate, enum_src);
  enumerate->add_option("--out", out_dir, "output directory")->required();
  enumerate->add_option("--format", format, "text or json")->check(formats);

  auto* genconfig = app.add_subcommand("genconfig", "emit build configuration files for variants");
  std::string variants_dir;
  std::string map_path;
  std::string style = "header";
  std::vector<std::string> only_ids;
  genconfig->add_option("--variants", variants_dir, "directory written by enumerate")->required()->check(CLI::ExistingDirectory);
  genconfig->add_option("--map", map_path, "feature,symbol CSV")->required()->check(CLI::ExistingFile);
  genconfig->add_option("--out", out_dir, "output directory")->required();
  genconfig->add_option("--style", style, "header (#define) or kv (SYMBOL=value)")->check(CLI::IsMember({"header", "kv"}));
  genconfig->add_option("--id", only_ids, "restrict to these variant ids");

  auto* test = app.add_subcommand("test", "run a build/test command for each selected variant");
  Source test_src;
  std::string command;
  std::string sample = "all";
  std::size_t jobs = 1;
  std::string workdir;
  test->add_option("--variants", variants_dir, "directory written by enumerate")->required()->check(CLI::ExistingDirectory);
  test->add_option("--map", map_path, "feature,symbol CSV")->required()->check(CLI::ExistingFile);
  test->add_option("--cmd", command, "command template with {config} and optional {id}")->required();
  test->add_option("--sample", sample, "all | random:N:SEED | ids:ID,ID");
  test->add_option("--jobs", jobs, "commands run concurrently")->check(CLI::PositiveNumber);
  test->add_option("--workdir", workdir, "scratch directory (default: $VARCORE_WORKDIR or ./varcore-work)");
  test->add_option("--style", style, "header or kv")->check(CLI::IsMember({"header", "kv"}));
  add_source(test, test_src);
  test->add_option("--format", format, "text or json")->check(formats);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kClean : kUsage;
  }

  const bool json = format == "json";
  try {
    if (*validate) {
      const auto w = rtw::load_rtw(rtw_path);
      const auto r = rtw::validate_rtw(w);
      out << (json ? report::validation_json(r).dump(2) + "\n" : rtw::to_text(r));
      return r.has_errors() ? kFindings : kClean;
    }

    if (*model_cmd) {
      const auto l = load({rtw_path, {}});
      const auto& a = *l.assembly;
      if (!xml_out.empty()) write_text(xml_out, interop::export_xml(a.model));
      if (!dot_out.empty()) write_text(dot_out, interop::export_dot(a.model));
      if (json) {
        out << report::assembly_json(a).dump(2) << "\n";
      } else {
        for (const auto& [id, m] : a.rules) {
          out << id << "\t" << synthesis::to_string(m.rule);
          if (!m.parent.empty()) out << "\t" << m.parent;
          for (const auto& c : m.children) out << " " << c;
          out << "\n";
        }
        out << rtw::to_text(a.report);
      }
      return a.report.has_errors() ? kFindings : kClean;
    }

    if (*analyze) {
      const auto l = load(analyze_src);
      for (const auto& w : l.warnings) err << "warning: " << w << "\n";
      const auto r = analysis::analyze(l.model);
      std::optional<std::vector<analysis::AnomalyTrace>> traces;
      if (l.worksheet) traces = analysis::trace_report(r, *l.worksheet);
      if (!dot_out.empty()) write_text(dot_out, interop::export_dot(l.model, &r));
      const rtw::ValidationReport* findings = l.assembly ? &l.assembly->report : nullptr;
      if (json) {
        out << report::analysis_json(r, findings, traces ? &*traces : nullptr).dump(2) << "\n";
      } else {
        if (findings) out << rtw::to_text(*findings);
        out << analysis::to_text(r);
        if (traces) {
          for (const auto& t : *traces) {
            for (const auto& row : t.rows) {
              out << "  #" << t.anomaly + 1 << " " << row.entry_id << " | " << row.source_doc << " | "
                  << row.source_loc << " | " << row.text << "\n";
            }
          }
        }
      }
      const bool assembly_errors = findings && findings->has_errors();
      return assembly_errors || r.has_errors() ? kFindings : kClean;
    }

    if (*enumerate) {
      const auto l = load(enum_src);
      variants::VariantSet vs;
      try {
        vs = variants::enumerate_variants(l.model);
      } catch (const variants::VoidModelError& e) {
        throw FindingError(e.what());
      }
      variants::write_variants(vs, out_dir);
      if (json) {
        out << report::variants_json(vs).dump(2) << "\n";
      } else {
        out << vs.variants.size() << " variant(s) written to " << out_dir << "\n";
      }
      return kClean;
    }

    if (*genconfig) {
      const auto vs = variants::read_variants(variants_dir);
      const auto map = variants::load_feature_map(map_path, vs.features);
      const auto fmt = parse_style(style);
      const std::string ext = fmt == variants::ConfigFormat::CHeader ? ".h" : ".cfg";
      std::size_t written = 0;
      for (const auto& id : only_ids) {
        if (!vs.find(id)) throw Error("no variant with id " + id);
      }
      for (const auto& v : vs.variants) {
        if (!only_ids.empty() && std::find(only_ids.begin(), only_ids.end(), v.id) == only_ids.end()) continue;
        write_text(fs::path(out_dir) / (v.id + ext), variants::emit_config(v, map, fmt));
        ++written;
      }
      out << written << " configuration file(s) written to " << out_dir << "\n";
      return kClean;
    }

    if (*test) {
      const auto vs = variants::read_variants(variants_dir);
      const auto map = variants::load_feature_map(map_path, vs.features);
      harness::HarnessOptions opts;
      opts.command = command;
      opts.sampling = harness::Sampling::parse(sample);
      opts.jobs = jobs;
      opts.format = parse_style(style);
      const char* env = std::getenv("VARCORE_WORKDIR");
      opts.workdir = !workdir.empty() ? fs::path(workdir) : env && *env ? fs::path(env) : fs::path("varcore-work");
      const auto r = harness::run_harness(vs, map, opts);
      std::optional<Loaded> l;
      if (!test_src.rtw.empty() || !test_src.model.empty()) l = load(test_src);
      const auto failures = harness::trace_failures(r, vs, l ? &l->model : nullptr);
      if (json) {
        out << report::harness_json(r, opts.sampling, failures).dump(2) << "\n";
      } else {
        out << harness::to_text(r);
        for (const auto& f : failures) {
          out << f.id << " suspects:";
          for (const auto& s : f.suspects) {
            out << " " << s.feature << "=" << (s.value ? "true" : "false");
            if (!s.origin.empty()) out << " [" << s.origin << "]";
          }
          out << "\n";
        }
      }
      return r.fail > 0 ? kFindings : kClean;
    }
  } catch (const FindingError& e) {
    err << "error: " << e.what() << "\n";
    return kFindings;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace varcore::cli
