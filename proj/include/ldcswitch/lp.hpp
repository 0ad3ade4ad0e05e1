#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ldcswitch/rational.hpp"

namespace ldcswitch {

/// A malformed linear program (unknown variable, duplicate name).
class LpError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Relation { Equal, LessEqual, GreaterEqual };
enum class Sense { Maximize, Minimize };

/// Variable bound; nullopt is -inf for a lower bound and +inf for an upper bound.
using Bound = std::optional<Rational>;

struct Term {
  std::size_t var;
  Rational coeff;
};

struct Variable {
  std::string name;
  Bound lower;
  Bound upper;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation;
  Rational rhs;
};

class LinearProgram {
 public:
  std::size_t add_variable(std::string name, Bound lower, Bound upper);
  void add_constraint(std::vector<Term> terms, Relation relation, Rational rhs);
  void set_objective(Sense sense, std::vector<Term> terms);

  [[nodiscard]] const std::vector<Variable>& variables() const noexcept { return variables_; }
  [[nodiscard]] const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  [[nodiscard]] Sense sense() const noexcept { return sense_; }
  [[nodiscard]] const std::vector<Term>& objective() const noexcept { return objective_; }
  [[nodiscard]] std::optional<std::size_t> find(const std::string& name) const;

 private:
  void check_terms(const std::vector<Term>& terms) const;

  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Sense sense_ = Sense::Minimize;
  std::vector<Term> objective_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct LpOutcome {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  /// Objective value (Optimal only).
  Rational value;
  /// Value per variable index (Optimal only).
  std::vector<Rational> assignment;
  /// Improving direction per variable index (Unbounded only).
  std::vector<Rational> ray;

  [[nodiscard]] std::map<std::string, Rational> named_assignment(const LinearProgram& lp) const;
};

/// Two-phase bounded-variable primal simplex over exact rationals with
/// Bland's rule. Deterministic for identical input.
LpOutcome solve_lp(const LinearProgram& lp);

/// True iff assignment satisfies every bound and constraint exactly.
bool assert_solution(const LinearProgram& lp, std::span<const Rational> assignment);

/// Objective value of an assignment.
Rational evaluate_objective(const LinearProgram& lp, std::span<const Rational> assignment);

}  // namespace ldcswitch
