#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "varcore/error.hpp"
#include "varcore/formula.hpp"

namespace varcore::logic {

struct SatResult {
  bool satisfiable = false;
  /// Satisfying assignment over the formula's own variables (SAT only).
  Assignment witness;

  explicit operator bool() const { return satisfiable; }
};

/// Decides satisfiability with DPLL over a Tseitin encoding of `f`.
SatResult sat(const Formula& f);

class CapacityError : public Error {
 public:
  using Error::Error;
};

struct AllSatOptions {
  /// Upper bound on the projection size; larger requests raise CapacityError.
  std::size_t max_variables = 64;
};

/// All distinct projections of the models of `f` onto `project`.
///
/// Each result maps exactly the names in `project`; names that do not occur in
/// `f` are unconstrained. Results come in lexicographic order over `project`
/// with false before true.
std::vector<Assignment> all_sat(const Formula& f, const std::vector<std::string>& project,
                                const AllSatOptions& options = {});

}  // namespace varcore::logic
