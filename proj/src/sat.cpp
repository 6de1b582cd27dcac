#include "varcore/sat.hpp"

#include <cstdlib>
#include <set>
#include <unordered_map>

namespace varcore::logic {

namespace {

using Clause = std::vector<int>;
// Indexed by variable number; 0 = unassigned, 1 = true, -1 = false.
using Values = std::vector<signed char>;

struct Cnf {
  int num_vars = 0;
  std::vector<Clause> clauses;

  int new_var() { return ++num_vars; }
};

// Structural (Tseitin) transformation: every compound node gets an auxiliary
// variable constrained to be equivalent to it, so projections onto the
// original variables are exact.
class Encoder {
 public:
  explicit Encoder(Cnf& cnf) : cnf_(cnf) {}

  int var_for(const std::string& name) {
    auto [it, inserted] = vars_.try_emplace(name, 0);
    if (inserted) it->second = cnf_.new_var();
    return it->second;
  }

  int encode(const Formula& f) {
    switch (f.op()) {
      case Op::True: return true_literal();
      case Op::False: return -true_literal();
      case Op::Var: return var_for(f.name());
      case Op::Not: return -encode(f.child(0));
      case Op::And: return gate(f.children(), true);
      case Op::Or: return gate(f.children(), false);
      case Op::Implies: {
        int a = encode(f.child(0));
        int b = encode(f.child(1));
        return gate_literals({-a, b}, false);
      }
      case Op::Iff: {
        int a = encode(f.child(0));
        int b = encode(f.child(1));
        int x = cnf_.new_var();
        cnf_.clauses.push_back({-x, -a, b});
        cnf_.clauses.push_back({-x, a, -b});
        cnf_.clauses.push_back({x, a, b});
        cnf_.clauses.push_back({x, -a, -b});
        return x;
      }
    }
    return true_literal();
  }

  const std::unordered_map<std::string, int>& vars() const { return vars_; }

 private:
  int true_literal() {
    if (true_var_ == 0) {
      true_var_ = cnf_.new_var();
      cnf_.clauses.push_back({true_var_});
    }
    return true_var_;
  }

  int gate(const std::vector<Formula>& children, bool conjunction) {
    Clause lits;
    lits.reserve(children.size());
    for (const auto& c : children) lits.push_back(encode(c));
    return gate_literals(std::move(lits), conjunction);
  }

  int gate_literals(Clause lits, bool conjunction) {
    int x = cnf_.new_var();
    Clause big;
    big.reserve(lits.size() + 1);
    if (conjunction) {
      // x -> each l; (all l) -> x
      big.push_back(x);
      for (int l : lits) {
        cnf_.clauses.push_back({-x, l});
        big.push_back(-l);
      }
    } else {
      // each l -> x; x -> (some l)
      big.push_back(-x);
      for (int l : lits) {
        cnf_.clauses.push_back({x, -l});
        big.push_back(l);
      }
    }
    cnf_.clauses.push_back(std::move(big));
    return x;
  }

  Cnf& cnf_;
  std::unordered_map<std::string, int> vars_;
  int true_var_ = 0;
};

class Dpll {
 public:
  explicit Dpll(const Cnf& cnf) : cnf_(cnf) {}

  Values initial() const { return Values(static_cast<std::size_t>(cnf_.num_vars) + 1, 0); }

  static void assign(Values& v, int lit) { v[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : -1; }

  // Unit propagation to a fixpoint. Returns false on conflict.
  bool propagate(Values& v) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : cnf_.clauses) {
        int unassigned = 0;
        int last = 0;
        bool satisfied = false;
        for (int lit : clause) {
          signed char val = v[static_cast<std::size_t>(std::abs(lit))];
          if (val == 0) {
            ++unassigned;
            last = lit;
          } else if ((val > 0) == (lit > 0)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(v, last);
          changed = true;
        }
      }
    }
    return true;
  }

  // Completes `v` to a model if one exists; `v` is only modified on success.
  bool solve(Values& v) const {
    Values work = v;
    if (!propagate(work)) return false;
    int branch = 0;
    for (int var = 1; var <= cnf_.num_vars; ++var) {
      if (work[static_cast<std::size_t>(var)] == 0) {
        branch = var;
        break;
      }
    }
    if (branch == 0) {
      v = std::move(work);
      return true;
    }
    for (int lit : {-branch, branch}) {
      Values attempt = work;
      assign(attempt, lit);
      if (solve(attempt)) {
        v = std::move(attempt);
        return true;
      }
    }
    return false;
  }

 private:
  const Cnf& cnf_;
};

}  // namespace

SatResult sat(const Formula& f) {
  Cnf cnf;
  Encoder encoder(cnf);
  cnf.clauses.push_back({encoder.encode(f)});
  Dpll dpll(cnf);
  Values v = dpll.initial();
  SatResult result;
  if (!dpll.solve(v)) return result;
  result.satisfiable = true;
  for (const auto& name : variables(f)) {
    result.witness[name] = v[static_cast<std::size_t>(encoder.vars().at(name))] > 0;
  }
  return result;
}

namespace {

// Enumerates projections by deciding the projection variables first, in
// order, false before true. Each projection is reached at most once by the
// chronological search, which plays the role of a blocking clause.
class Enumerator {
 public:
  Enumerator(const Dpll& dpll, std::vector<int> project_vars, const std::vector<std::string>& names)
      : dpll_(dpll), vars_(std::move(project_vars)), names_(names) {}

  void run(Values v, std::size_t index) {
    if (!dpll_.propagate(v)) return;
    while (index < vars_.size() && v[static_cast<std::size_t>(vars_[index])] != 0) ++index;
    Values probe = v;
    if (!dpll_.solve(probe)) return;
    if (index == vars_.size()) {
      Assignment a;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        a[names_[i]] = probe[static_cast<std::size_t>(vars_[i])] > 0;
      }
      results_.push_back(std::move(a));
      return;
    }
    for (int lit : {-vars_[index], vars_[index]}) {
      Values next = v;
      Dpll::assign(next, lit);
      run(std::move(next), index + 1);
    }
  }

  std::vector<Assignment> take() { return std::move(results_); }

 private:
  const Dpll& dpll_;
  std::vector<int> vars_;
  const std::vector<std::string>& names_;
  std::vector<Assignment> results_;
};

}  // namespace

std::vector<Assignment> all_sat(const Formula& f, const std::vector<std::string>& project,
                                const AllSatOptions& options) {
  if (project.size() > options.max_variables) {
    throw CapacityError("projection over " + std::to_string(project.size()) +
                        " variables exceeds the limit of " +
                        std::to_string(options.max_variables));
  }
  std::set<std::string> seen;
  for (const auto& name : project) {
    if (!seen.insert(name).second) throw Error("duplicate projection variable: " + name);
  }
  Cnf cnf;
  Encoder encoder(cnf);
  std::vector<int> project_vars;
  project_vars.reserve(project.size());
  for (const auto& name : project) project_vars.push_back(encoder.var_for(name));
  cnf.clauses.push_back({encoder.encode(f)});
  Dpll dpll(cnf);
  Enumerator enumerator(dpll, std::move(project_vars), project);
  enumerator.run(dpll.initial(), 0);
  return enumerator.take();
}

}  // namespace varcore::logic
