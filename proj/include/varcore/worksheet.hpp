#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "varcore/error.hpp"
#include "varcore/formula.hpp"

namespace varcore::rtw {

enum class EntryKind { Requirement, Constraint };

std::string_view to_string(EntryKind kind);

struct EntryStatus {
  bool flagged = false;
  std::string reason;

  friend bool operator==(const EntryStatus&, const EntryStatus&) = default;
};

/// One worksheet row.
struct RequirementEntry {
  std::string id;
  EntryKind kind = EntryKind::Requirement;
  std::string source_doc;
  std::string source_loc;
  std::string text;
  /// Formula as written in the worksheet and its parsed form.
  std::string formula_text;
  logic::Formula formula;
  /// Empty when the entry attaches its concrete features directly to `parent`.
  std::string abstract_feature;
  std::vector<std::string> concrete_features;
  /// Empty means the model root.
  std::string parent;
  EntryStatus status;
  /// 1-based line of the row in the source file; 0 for entries built in code.
  std::size_t line = 0;

  /// Features this entry introduces: the abstract feature (if any) first.
  std::vector<std::string> introduced() const;
};

struct Worksheet {
  std::string model_name;
  std::vector<RequirementEntry> entries;

  const RequirementEntry* find(std::string_view id) const;
};

/// Malformed worksheet file.
class RtwError : public Error {
 public:
  RtwError(const std::string& message, std::size_t line = 0, std::string entry_id = {});
  std::size_t line() const { return line_; }
  const std::string& entry_id() const { return entry_id_; }

 private:
  std::size_t line_;
  std::string entry_id_;
};

/// Column names, in file order.
const std::vector<std::string>& rtw_columns();

/// Parses comma-separated worksheet text.
///
/// Fields may be double-quoted ("" escapes a quote); quoted fields may span
/// lines. The first non-comment line is the header and must name every column
/// (any order). Lines starting with `#` are comments, except `# model: NAME`,
/// which sets the root feature name. Without that directive the root is the
/// single parent name that no entry introduces.
Worksheet parse_rtw(std::string_view content);
Worksheet load_rtw(const std::filesystem::path& path);

/// Inverse of parse_rtw (columns in canonical order, fields quoted as needed).
std::string write_rtw(const Worksheet& w);

enum class Severity { Error, Warning, Info };

std::string_view to_string(Severity s);

struct Finding {
  std::string entry_id;
  Severity severity = Severity::Error;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  std::size_t count(Severity s) const;
  bool has_errors() const { return count(Severity::Error) > 0; }

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// `name_id` convention for abstract features: at least two segments and a
/// final segment made of optional letters followed by digits
/// (Time_Function_T1001, Time_Server_Client_1_22_4_5).
bool follows_naming_convention(std::string_view name);

/// Root name plus every feature introduced by an ACTIVE entry.
std::set<std::string> vocabulary(const Worksheet& w);

/// Identifiers in `e.formula` missing from `vocabulary(w)`, in formula order.
std::vector<std::string> undefined_references(const Worksheet& w, const RequirementEntry& e);

/// Checks the worksheet without changing it. Findings come in entry order.
ValidationReport validate_rtw(const Worksheet& w);

std::string to_text(const ValidationReport& r);

}  // namespace varcore::rtw
