#include "varcore/harness.hpp"

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>
#include <fcntl.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

extern char** environ;

namespace varcore::harness {

namespace fs = std::filesystem;
using variants::VariantSet;

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& s, std::string_view what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw HarnessError("invalid " + std::string(what) + " '" + s + "'");
  }
  return static_cast<T>(std::stoull(s));
}

}  // namespace

Sampling Sampling::parse(std::string_view spec) {
  Sampling s;
  if (spec == "all") return s;
  const auto parts = split(spec, ':');
  if (parts[0] == "random" && parts.size() == 3) {
    s.kind = Kind::Random;
    s.count = parse_number<std::size_t>(parts[1], "sample size");
    s.seed = parse_number<std::uint64_t>(parts[2], "seed");
    return s;
  }
  if (parts[0] == "ids" && parts.size() == 2) {
    s.kind = Kind::Ids;
    for (auto& id : split(parts[1], ',')) {
      if (!id.empty()) s.ids.push_back(id);
    }
    if (s.ids.empty()) throw HarnessError("empty id list in sampling '" + std::string(spec) + "'");
    return s;
  }
  throw HarnessError("unknown sampling '" + std::string(spec) + "' (all, random:N:SEED, ids:ID,...)");
}

std::string Sampling::to_string() const {
  switch (kind) {
    case Kind::All: return "all";
    case Kind::Random: return "random:" + std::to_string(count) + ":" + std::to_string(seed);
    case Kind::Ids: {
      std::string out = "ids:";
      for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
      return out;
    }
  }
  return "all";
}

std::vector<std::string> select(const VariantSet& vs, const Sampling& s) {
  std::vector<std::string> all;
  for (const auto& v : vs.variants) all.push_back(v.id);
  switch (s.kind) {
    case Sampling::Kind::All: return all;
    case Sampling::Kind::Random: {
      std::vector<std::string> out;
      std::mt19937_64 rng(s.seed);
      std::sample(all.begin(), all.end(), std::back_inserter(out), s.count, rng);
      return out;
    }
    case Sampling::Kind::Ids: {
      const std::set<std::string> wanted(s.ids.begin(), s.ids.end());
      for (const auto& id : wanted) {
        if (!vs.find(id)) throw HarnessError("no variant with id " + id);
      }
      std::vector<std::string> out;
      for (const auto& id : all) {
        if (wanted.count(id)) out.push_back(id);
      }
      return out;
    }
  }
  return all;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Skipped: return "SKIPPED";
  }
  return "SKIPPED";
}

namespace {

bool is_builtin(const std::string& word) {
  static const std::set<std::string> builtins{":", ".", "[", "cd", "echo", "eval", "exec", "exit", "export",
                                              "false", "printf", "read", "set", "test", "true", "umask"};
  return builtins.count(word) > 0;
}

void check_executable(const std::string& command) {
  std::istringstream in(command);
  std::string word;
  in >> word;
  if (word.empty()) throw HarnessError("empty command");
  // Leave anything the shell itself interprets to the shell.
  if (word.find_first_of("{}=$`'\"();|&<>") != std::string::npos || is_builtin(word)) return;
  if (word.find('/') != std::string::npos) {
    if (::access(word.c_str(), X_OK) != 0) throw HarnessError("command not executable: " + word);
    return;
  }
  const char* path = std::getenv("PATH");
  for (const auto& dir : split(path ? path : "/usr/bin:/bin", ':')) {
    const fs::path candidate = fs::path(dir.empty() ? "." : dir) / word;
    if (::access(candidate.c_str(), X_OK) == 0) return;
  }
  throw HarnessError("command not executable: " + word + " (not found on PATH)");
}

void check_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path probe = dir / ".varcore-probe";
  std::ofstream out(probe);
  if (ec || !out) throw HarnessError("work directory not writable: " + dir.string());
  out.close();
  fs::remove(probe, ec);
}

std::string substitute(std::string text, const std::string& key, const std::string& value) {
  for (std::size_t pos = 0; (pos = text.find(key, pos)) != std::string::npos; pos += value.size()) {
    text.replace(pos, key.size(), value);
  }
  return text;
}

int run_shell(const std::string& command, const fs::path& log) {
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_adddup2(&actions, STDOUT_FILENO, STDERR_FILENO);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  std::string arg0 = "sh";
  std::string arg1 = "-c";
  std::string arg2 = command;
  char* argv[] = {arg0.data(), arg1.data(), arg2.data(), nullptr};
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, "/bin/sh", &actions, nullptr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) return 127;
  int status = 0;
  while (waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) return 127;
  }
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

}  // namespace

HarnessReport run_harness(const VariantSet& vs, const variants::FeatureCodeMap& map, const HarnessOptions& options) {
  if (options.command.find("{config}") == std::string::npos) {
    throw HarnessError("command template must contain {config}");
  }
  check_feature_map(map, vs.features);
  check_executable(options.command);
  check_writable(options.workdir);

  const auto selected = select(vs, options.sampling);
  const std::set<std::string> chosen(selected.begin(), selected.end());
  const std::string config_name =
      options.format == variants::ConfigFormat::CHeader ? "config.h" : "config.txt";

  HarnessReport report;
  std::vector<std::size_t> work;
  for (std::size_t i = 0; i < vs.variants.size(); ++i) {
    const auto& v = vs.variants[i];
    VariantResult r;
    r.id = v.id;
    if (chosen.count(v.id)) {
      const fs::path dir = options.workdir / v.id;
      fs::create_directories(dir);
      std::ofstream(dir / config_name, std::ios::binary | std::ios::trunc)
          << variants::emit_config(v, map, options.format);
      r.config = v.id + "/" + config_name;
      work.push_back(i);
    }
    report.results.push_back(std::move(r));
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < work.size();) {
      auto& r = report.results[work[k]];
      const fs::path dir = options.workdir / r.id;
      std::string cmd = substitute(options.command, "{config}", (dir / config_name).string());
      cmd = substitute(cmd, "{id}", r.id);
      r.exit_code = run_shell(cmd, dir / "log.txt");
      r.outcome = r.exit_code == 0 ? Outcome::Pass : Outcome::Fail;
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(work.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& r : report.results) {
    switch (r.outcome) {
      case Outcome::Pass: ++report.pass; break;
      case Outcome::Fail: ++report.fail; break;
      case Outcome::Skipped: ++report.skipped; break;
    }
  }
  report.total = report.results.size();
  return report;
}

std::vector<FailureTrace> trace_failures(const HarnessReport& r, const VariantSet& vs, const model::FeatureModel* m) {
  std::map<std::string, std::set<bool>> passing_values;
  for (const auto& res : r.results) {
    if (res.outcome != Outcome::Pass) continue;
    for (const auto& [f, value] : vs.find(res.id)->values) passing_values[f].insert(value);
  }
  std::vector<FailureTrace> out;
  for (const auto& res : r.results) {
    if (res.outcome != Outcome::Fail) continue;
    FailureTrace t{res.id, {}};
    const auto* v = vs.find(res.id);
    for (const auto& f : vs.features) {
      const bool value = v->values.at(f);
      if (passing_values[f].count(value)) continue;
      Suspect s{f, value, {}};
      if (m) {
        if (const auto* feature = model::find_feature(*m, f)) s.origin = feature->origin;
      }
      t.suspects.push_back(std::move(s));
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::string to_text(const HarnessReport& r) {
  std::ostringstream out;
  for (const auto& res : r.results) {
    out << res.id << "\t" << to_string(res.outcome);
    if (res.outcome == Outcome::Fail) out << "(" << res.exit_code << ")";
    out << "\n";
  }
  out << "pass " << r.pass << ", fail " << r.fail << ", skipped " << r.skipped << ", total " << r.total << "\n";
  return out.str();
}

}  // namespace varcore::harness
