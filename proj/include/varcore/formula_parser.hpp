#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "varcore/error.hpp"
#include "varcore/formula.hpp"

namespace varcore::logic {

/// Syntax error in the constraint language.
///
/// `position()` is the 1-based byte column the error refers to; for an unclosed
/// parenthesis it is the column of the opening `(`, and at end of input it is
/// one past the last byte. `expected()` lists the tokens that would have been
/// accepted there.
class FormulaSyntaxError : public Error {
 public:
  FormulaSyntaxError(std::string problem, std::size_t position, std::vector<std::string> expected);

  const std::string& problem() const { return problem_; }
  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::string problem_;
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Parses the constraint language (see docs/constraint-grammar.md).
///
/// Precedence from tightest: `!`, `&`, `|`, `=>`, `<=>`. `=>` associates to the
/// right; `&` and `|` chains become a single n-ary node; `<=>` associates to the
/// left. Parentheses always produce a separate node.
Formula parse_formula(std::string_view text);

}  // namespace varcore::logic
