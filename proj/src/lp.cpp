#include "ldcswitch/lp.hpp"

#include <algorithm>

namespace ldcswitch {

std::size_t LinearProgram::add_variable(std::string name, Bound lower, Bound upper) {
  if (index_.count(name)) throw LpError("duplicate variable '" + name + "'");
  const std::size_t i = variables_.size();
  index_.emplace(name, i);
  variables_.push_back({std::move(name), std::move(lower), std::move(upper)});
  return i;
}

void LinearProgram::check_terms(const std::vector<Term>& terms) const {
  for (const Term& t : terms) {
    if (t.var >= variables_.size()) throw LpError("unknown variable index " + std::to_string(t.var));
  }
}

void LinearProgram::add_constraint(std::vector<Term> terms, Relation relation, Rational rhs) {
  check_terms(terms);
  constraints_.push_back({std::move(terms), relation, std::move(rhs)});
}

void LinearProgram::set_objective(Sense sense, std::vector<Term> terms) {
  check_terms(terms);
  sense_ = sense;
  objective_ = std::move(terms);
}

std::optional<std::size_t> LinearProgram::find(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, Rational> LpOutcome::named_assignment(const LinearProgram& lp) const {
  std::map<std::string, Rational> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) out.emplace(lp.variables()[i].name, assignment[i]);
  return out;
}

namespace {

using Row = std::vector<std::pair<std::size_t, Rational>>;

// Combines duplicate variables and drops zero coefficients.
Row normalize(const std::vector<Term>& terms) {
  Row row;
  row.reserve(terms.size());
  for (const Term& t : terms) row.emplace_back(t.var, t.coeff);
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Row out;
  for (auto& [v, c] : row) {
    if (!out.empty() && out.back().first == v) {
      out.back().second += c;
    } else {
      out.emplace_back(v, std::move(c));
    }
  }
  std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
  return out;
}

bool below(const Rational& v, const Bound& lo) { return lo && v < *lo; }
bool above(const Rational& v, const Bound& up) { return up && *up < v; }

// Dense tableau over columns [structural | row activity | artificial].
// Invariant: T * x = 0 and basic columns of T are unit vectors; basic values
// are kept explicitly in beta_.
class Simplex {
 public:
  enum class Result { Optimal, Unbounded };

  Simplex(std::size_t structural, const std::vector<Row>& rows, std::vector<Bound> row_lo, std::vector<Bound> row_up,
          std::vector<Bound> lo, std::vector<Bound> up)
      : rows_(rows.size()), structural_(structural) {
    lo_ = std::move(lo);
    up_ = std::move(up);
    lo_.insert(lo_.end(), row_lo.begin(), row_lo.end());
    up_.insert(up_.end(), row_up.begin(), row_up.end());

    value_.resize(structural_ + rows_);
    for (std::size_t j = 0; j < structural_; ++j) {
      if (lo_[j]) {
        value_[j] = *lo_[j];
      } else if (up_[j]) {
        value_[j] = *up_[j];
      }
    }

    // Rows whose activity violates the row bounds get an artificial column.
    std::vector<Rational> activity(rows_);
    std::vector<int> art_sign(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (const auto& [v, c] : rows[i]) {
        if (!value_[v].is_zero()) activity[i] += c * value_[v];
      }
      const std::size_t r = structural_ + i;
      if (below(activity[i], lo_[r])) {
        art_sign[i] = 1;  // art = r - activity > 0 with r at its lower bound
        value_[r] = *lo_[r];
      } else if (above(activity[i], up_[r])) {
        art_sign[i] = -1;
        value_[r] = *up_[r];
      }
    }
    const auto artificials =
        static_cast<std::size_t>(std::count_if(art_sign.begin(), art_sign.end(), [](int s) { return s != 0; }));
    cols_ = structural_ + rows_ + artificials;
    first_artificial_ = structural_ + rows_;
    lo_.resize(cols_, Rational());
    up_.resize(cols_);
    value_.resize(cols_);
    table_.assign(rows_ * cols_, Rational());
    basis_.resize(rows_);
    row_of_.assign(cols_, npos);
    beta_.resize(rows_);

    std::size_t next_art = first_artificial_;
    for (std::size_t i = 0; i < rows_; ++i) {
      const std::size_t r = structural_ + i;
      if (art_sign[i] == 0) {
        for (const auto& [v, c] : rows[i]) at(i, v) = -c;
        at(i, r) = 1;
        set_basic(i, r, activity[i]);
      } else {
        const Rational s(art_sign[i]);
        for (const auto& [v, c] : rows[i]) at(i, v) = s * c;
        at(i, r) = -s;
        at(i, next_art) = 1;
        set_basic(i, next_art, s * (value_[r] - activity[i]));
        ++next_art;
      }
    }
  }

  [[nodiscard]] bool has_artificials() const { return cols_ > first_artificial_; }

  /// Phase 1: minimise the sum of artificials. Returns false if positive.
  bool drive_feasible() {
    if (!has_artificials()) return true;
    std::vector<Rational> cost(cols_);
    for (std::size_t j = first_artificial_; j < cols_; ++j) cost[j] = 1;
    price(cost);
    run();
    Rational infeasibility;
    for (std::size_t j = first_artificial_; j < cols_; ++j) infeasibility += current(j);
    if (infeasibility.sign() > 0) return false;
    for (std::size_t j = first_artificial_; j < cols_; ++j) {
      up_[j] = Rational();  // fixed at zero from now on
      if (row_of_[j] == npos) value_[j] = Rational();
    }
    return true;
  }

  Result optimize(const std::vector<Rational>& structural_cost) {
    std::vector<Rational> cost(cols_);
    std::copy(structural_cost.begin(), structural_cost.end(), cost.begin());
    price(cost);
    return run();
  }

  [[nodiscard]] Rational current(std::size_t j) const { return row_of_[j] == npos ? value_[j] : beta_[row_of_[j]]; }
  [[nodiscard]] const std::vector<Rational>& ray() const { return ray_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Rational& at(std::size_t i, std::size_t j) { return table_[i * cols_ + j]; }

  void set_basic(std::size_t row, std::size_t var, Rational v) {
    basis_[row] = var;
    row_of_[var] = row;
    beta_[row] = std::move(v);
  }

  void price(const std::vector<Rational>& cost) {
    cost_ = cost;
    reduced_.assign(cols_, Rational());
    for (std::size_t j = 0; j < cols_; ++j) {
      if (row_of_[j] != npos) continue;
      Rational d = cost[j];
      for (std::size_t i = 0; i < rows_; ++i) {
        const Rational& t = table_[i * cols_ + j];
        if (t.is_zero()) continue;
        const Rational& cb = cost[basis_[i]];
        if (!cb.is_zero()) d -= cb * t;
      }
      reduced_[j] = std::move(d);
    }
  }

  Result run() {
    for (;;) {
      // Bland: lowest-index improving column.
      std::size_t enter = npos;
      int dir = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (row_of_[j] != npos) continue;
        const Rational& d = reduced_[j];
        const int s = d.sign();
        if (s == 0) continue;
        if (lo_[j] && up_[j] && *lo_[j] == *up_[j]) continue;
        if (s < 0 && (!up_[j] || value_[j] < *up_[j])) {
          enter = j;
          dir = 1;
          break;
        }
        if (s > 0 && (!lo_[j] || *lo_[j] < value_[j])) {
          enter = j;
          dir = -1;
          break;
        }
      }
      if (enter == npos) return Result::Optimal;

      // Ratio test; ties go to the lowest variable index (the entering
      // column itself counts with its own index for a bound flip).
      std::optional<Rational> step;
      std::size_t leave_row = npos;
      std::size_t leave_var = npos;
      const Bound& own = dir > 0 ? up_[enter] : lo_[enter];
      if (own) {
        step = dir > 0 ? *own - value_[enter] : value_[enter] - *own;
        leave_var = enter;
      }
      for (std::size_t i = 0; i < rows_; ++i) {
        const Rational& t = table_[i * cols_ + enter];
        if (t.is_zero()) continue;
        const int rate = dir > 0 ? -t.sign() : t.sign();
        const std::size_t v = basis_[i];
        const Bound& limit = rate > 0 ? up_[v] : lo_[v];
        if (!limit) continue;
        Rational ratio = (*limit - beta_[i]) / (dir > 0 ? -t : t);
        if (!step || ratio < *step || (ratio == *step && v < leave_var)) {
          step = std::move(ratio);
          leave_row = i;
          leave_var = v;
        }
      }
      if (!step) {
        ray_.assign(structural_, Rational());
        if (enter < structural_) ray_[enter] = dir;
        for (std::size_t i = 0; i < rows_; ++i) {
          const std::size_t v = basis_[i];
          if (v < structural_) ray_[v] = dir > 0 ? -table_[i * cols_ + enter] : table_[i * cols_ + enter];
        }
        return Result::Unbounded;
      }

      const Rational& delta = *step;
      if (!delta.is_zero()) {
        for (std::size_t i = 0; i < rows_; ++i) {
          const Rational& t = table_[i * cols_ + enter];
          if (t.is_zero()) continue;
          if (dir > 0) {
            beta_[i] -= t * delta;
          } else {
            beta_[i] += t * delta;
          }
        }
        if (dir > 0) {
          value_[enter] += delta;
        } else {
          value_[enter] -= delta;
        }
      }
      if (leave_row == npos) continue;  // bound flip

      // The leaving variable sits exactly on the bound it hit.
      const std::size_t out = basis_[leave_row];
      value_[out] = beta_[leave_row];
      row_of_[out] = npos;
      pivot(leave_row, enter);
      set_basic(leave_row, enter, value_[enter]);
    }
  }

  void pivot(std::size_t r, std::size_t j) {
    Rational* prow = &table_[r * cols_];
    const Rational inv = Rational(1) / prow[j];
    nonzero_.clear();
    for (std::size_t k = 0; k < cols_; ++k) {
      if (prow[k].is_zero()) continue;
      if (k == j) {
        prow[k] = 1;
      } else {
        prow[k] *= inv;
      }
      nonzero_.push_back(k);
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      Rational* row = &table_[i * cols_];
      if (row[j].is_zero()) continue;
      const Rational f = row[j];
      for (std::size_t k : nonzero_) row[k] -= f * prow[k];
    }
    if (!reduced_[j].is_zero()) {
      const Rational f = reduced_[j];
      for (std::size_t k : nonzero_) reduced_[k] -= f * prow[k];
    }
  }

  std::size_t rows_;
  std::size_t structural_;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<Rational> table_;
  std::vector<Rational> beta_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> row_of_;
  std::vector<Rational> value_;
  std::vector<Bound> lo_;
  std::vector<Bound> up_;
  std::vector<Rational> cost_;
  std::vector<Rational> reduced_;
  std::vector<Rational> ray_;
  std::vector<std::size_t> nonzero_;
};

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.variables().size();
  LpOutcome outcome;

  std::vector<Bound> lo(n);
  std::vector<Bound> up(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Variable& v = lp.variables()[j];
    if (v.lower && v.upper && *v.upper < *v.lower) return outcome;
    lo[j] = v.lower;
    up[j] = v.upper;
  }

  // Constraints with identical left-hand sides become one ranged row.
  std::vector<Row> rows;
  std::vector<Bound> row_lo;
  std::vector<Bound> row_up;
  std::map<Row, std::size_t> seen;
  for (const Constraint& c : lp.constraints()) {
    for (const Term& t : c.terms) {
      if (t.var >= n) throw LpError("unknown variable index " + std::to_string(t.var));
    }
    Row row = normalize(c.terms);
    const bool has_lo = c.relation != Relation::LessEqual;
    const bool has_up = c.relation != Relation::GreaterEqual;
    if (row.empty()) {
      if ((has_lo && c.rhs.sign() > 0) || (has_up && c.rhs.sign() < 0)) return outcome;
      continue;
    }
    auto [it, fresh] = seen.emplace(row, rows.size());
    if (fresh) {
      rows.push_back(std::move(row));
      row_lo.emplace_back();
      row_up.emplace_back();
    }
    const std::size_t i = it->second;
    if (has_lo && (!row_lo[i] || *row_lo[i] < c.rhs)) row_lo[i] = c.rhs;
    if (has_up && (!row_up[i] || c.rhs < *row_up[i])) row_up[i] = c.rhs;
    if (row_lo[i] && row_up[i] && *row_up[i] < *row_lo[i]) return outcome;
  }

  Simplex simplex(n, rows, row_lo, row_up, lo, up);
  if (!simplex.drive_feasible()) return outcome;

  std::vector<Rational> cost(n);
  for (const auto& [v, c] : normalize(lp.objective())) {
    cost[v] = lp.sense() == Sense::Maximize ? -c : c;
  }
  if (simplex.optimize(cost) == Simplex::Result::Unbounded) {
    outcome.status = LpOutcome::Status::Unbounded;
    outcome.ray = simplex.ray();
    return outcome;
  }
  outcome.status = LpOutcome::Status::Optimal;
  outcome.assignment.resize(n);
  for (std::size_t j = 0; j < n; ++j) outcome.assignment[j] = simplex.current(j);
  outcome.value = evaluate_objective(lp, outcome.assignment);
  return outcome;
}

Rational evaluate_objective(const LinearProgram& lp, std::span<const Rational> assignment) {
  Rational value;
  for (const Term& t : lp.objective()) value += t.coeff * assignment[t.var];
  return value;
}

bool assert_solution(const LinearProgram& lp, std::span<const Rational> assignment) {
  if (assignment.size() != lp.variables().size()) return false;
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    const Variable& v = lp.variables()[j];
    if (below(assignment[j], v.lower) || above(assignment[j], v.upper)) return false;
  }
  for (const Constraint& c : lp.constraints()) {
    Rational lhs;
    for (const Term& t : c.terms) lhs += t.coeff * assignment[t.var];
    switch (c.relation) {
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::LessEqual:
        if (c.rhs < lhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

}  // namespace ldcswitch
