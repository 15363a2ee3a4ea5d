#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twi {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { less_equal, greater_equal, equal };
enum class Sense { minimize, maximize };

using SparseRow = std::vector<std::pair<int, double>>;

struct LpVariable {
  double lower = 0.0;
  double upper = kInfinity;
  double objective = 0.0;
  std::string name;
};

struct LpConstraint {
  SparseRow row;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
  std::string name;
};

// Builder for a linear programme.  Lower bounds must be finite.
class LinearProgram {
 public:
  explicit LinearProgram(Sense sense = Sense::minimize) : sense_(sense) {}

  int add_variable(double lower, double upper, double objective = 0.0, std::string name = {});
  int add_constraint(SparseRow row, Relation relation, double rhs, std::string name = {});
  void set_objective(int var, double coefficient);

  Sense sense() const { return sense_; }
  int variable_count() const { return static_cast<int>(vars_.size()); }
  int constraint_count() const { return static_cast<int>(rows_.size()); }
  const std::vector<LpVariable>& variables() const { return vars_; }
  const std::vector<LpConstraint>& constraints() const { return rows_; }

 private:
  Sense sense_;
  std::vector<LpVariable> vars_;
  std::vector<LpConstraint> rows_;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit, numerical_failure };
std::string to_string(LpStatus status);

struct LpTolerances {
  double feas = 1e-7;
  double gap = 1e-6;
  double cut = 1e-6;
};

struct SimplexOptions {
  LpTolerances tol;
  int max_iterations = 0;        // 0 picks a limit from the problem size
  int refactor_interval = 100;
};

// Duals follow the usual sign convention for the stated sense: for a
// minimisation, a <= row has dual <= 0 and a >= row dual >= 0, and the
// objective equals sum(dual * rhs) + sum over variables at a bound of
// reduced_cost * bound.
struct LpSolution {
  LpStatus status = LpStatus::numerical_failure;
  double objective = 0.0;
  std::vector<double> primal;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  int iterations = 0;
  double max_primal_infeasibility = 0.0;
  double max_dual_infeasibility = 0.0;

  bool optimal() const { return status == LpStatus::optimal; }
};

LpSolution solve(const LinearProgram& lp, const SimplexOptions& options = {});

// Dual objective of the box-constrained problem implied by `duals`:
// sum(dual_i * rhs_i) + sum_j [max(d_j,0)*l_j + min(d_j,0)*u_j] for a
// minimisation (mirrored for maximisation), with d the reduced costs.
double dual_objective(const LinearProgram& lp, const std::vector<double>& duals);

// Largest violation of rows and bounds at `x`.
double primal_infeasibility(const LinearProgram& lp, const std::vector<double>& x);

// CPLEX-style LP text, for debugging.
std::string to_lp_format(const LinearProgram& lp);

// A constraint `coefficients . x  relation  rhs` over the master variables.
struct CutInequality {
  SparseRow coefficients;
  Relation relation = Relation::greater_equal;
  double rhs = 0.0;
  std::string origin;
  double violation_at_addition = 0.0;
};

double violation(const CutInequality& cut, const std::vector<double>& x);

struct CutPool {
  std::vector<CutInequality> cuts;
};

class CuttingPlaneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CuttingPlaneOptions {
  int max_rounds = 500;
  SimplexOptions simplex;
};

struct CuttingPlaneResult {
  LpSolution solution;
  CutPool pool;
  int rounds = 0;
  std::vector<double> objective_history;
};

// Returns nullopt when the point is accepted, or a cut it violates.
using SeparationCallback = std::function<std::optional<CutInequality>(const LpSolution&)>;

// Re-solves `initial` plus all cuts so far until the callback accepts.
// Throws CuttingPlaneError on a non-violated cut, a non-optimal master or
// the round cap.
CuttingPlaneResult cutting_plane(const LinearProgram& initial, const SeparationCallback& separate,
                                 const CuttingPlaneOptions& options = {});

}  // namespace twi
