#include "twi/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace twi {

int LinearProgram::add_variable(double lower, double upper, double objective, std::string name) {
  if (!std::isfinite(lower)) throw std::invalid_argument("variable lower bounds must be finite");
  vars_.push_back({lower, upper, objective, std::move(name)});
  return variable_count() - 1;
}

int LinearProgram::add_constraint(SparseRow row, Relation relation, double rhs, std::string name) {
  std::sort(row.begin(), row.end());
  SparseRow merged;
  for (const auto& [j, a] : row) {
    if (j < 0 || j >= variable_count())
      throw std::invalid_argument("constraint references undeclared variable " + std::to_string(j));
    if (!merged.empty() && merged.back().first == j)
      merged.back().second += a;
    else
      merged.emplace_back(j, a);
  }
  std::erase_if(merged, [](const auto& p) { return p.second == 0.0; });
  rows_.push_back({std::move(merged), relation, rhs, std::move(name)});
  return constraint_count() - 1;
}

void LinearProgram::set_objective(int var, double coefficient) {
  vars_.at(var).objective = coefficient;
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
    case LpStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

enum class State : unsigned char { basic, at_lower, at_upper };

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& opt) : lp_(lp), opt_(opt) {
    m_ = lp.constraint_count();
    n_ = lp.variable_count();
    const double sign = lp.sense() == Sense::minimize ? 1.0 : -1.0;
    cols_.resize(n_ + m_);
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp.constraints()[i];
      for (const auto& [j, a] : row.row) cols_[j].emplace_back(i, a);
      cols_[n_ + i].emplace_back(i, 1.0);
      b_.push_back(row.rhs);
    }
    for (const auto& v : lp.variables()) {
      lo_.push_back(v.lower);
      up_.push_back(v.upper);
      cost_.push_back(sign * v.objective);
    }
    for (const auto& row : lp.constraints()) {
      switch (row.relation) {
        case Relation::less_equal: lo_.push_back(0.0); up_.push_back(kInfinity); break;
        case Relation::greater_equal: lo_.push_back(-kInfinity); up_.push_back(0.0); break;
        case Relation::equal: lo_.push_back(0.0); up_.push_back(0.0); break;
      }
      cost_.push_back(0.0);
    }
    max_iter_ = opt.max_iterations > 0 ? opt.max_iterations : std::max(20000, 50 * (m_ + n_));
    bscale_ = 1.0;
    for (double v : b_) bscale_ = std::max(bscale_, std::abs(v));
  }

  LpSolution run() {
    LpSolution sol;
    for (int j = 0; j < n_; ++j)
      if (up_[j] < lo_[j]) {
        sol.status = LpStatus::infeasible;
        return sol;
      }
    initial_basis();
    // Phase 1: drive the artificials to zero.
    std::vector<double> phase1(cols_.size(), 0.0);
    for (int j = first_art_; j < total(); ++j) phase1[j] = 1.0;
    LpStatus st = iterate(phase1);
    if (st != LpStatus::optimal) return fail(sol, st);
    double art = 0;
    for (int j = first_art_; j < total(); ++j) art += x_[j];
    if (art > opt_.tol.feas * bscale_) {
      sol.status = LpStatus::infeasible;
      sol.iterations = iterations_;
      return sol;
    }
    for (int j = first_art_; j < total(); ++j) {
      up_[j] = 0.0;
      if (state_[j] != State::basic) x_[j] = 0.0;
    }
    std::vector<double> phase2 = cost_;
    phase2.resize(total(), 0.0);
    for (int attempt = 0; attempt < 2; ++attempt) {
      st = iterate(phase2);
      if (st != LpStatus::optimal) return fail(sol, st);
      if (!refactor()) return fail(sol, LpStatus::numerical_failure);
      if (attempt == 0) continue;  // a second pass after a fresh factorisation
    }
    return extract(sol, phase2);
  }

 private:
  int total() const { return static_cast<int>(cols_.size()); }

  LpSolution& fail(LpSolution& sol, LpStatus st) {
    sol.status = st;
    sol.iterations = iterations_;
    return sol;
  }

  void initial_basis() {
    x_.assign(total(), 0.0);
    state_.assign(total(), State::at_lower);
    for (int j = 0; j < n_; ++j) x_[j] = lo_[j];
    std::vector<double> r = b_;
    for (int j = 0; j < n_; ++j)
      for (const auto& [i, a] : cols_[j]) r[i] -= a * x_[j];
    head_.assign(m_, -1);
    first_art_ = total();
    std::vector<double> sigma(m_, 1.0);
    for (int i = 0; i < m_; ++i) {
      const int aux = n_ + i;
      const double tol = opt_.tol.feas;
      if (r[i] >= lo_[aux] - tol && r[i] <= up_[aux] + tol) {
        head_[i] = aux;
        state_[aux] = State::basic;
        x_[aux] = r[i];
      } else {
        state_[aux] = std::isfinite(lo_[aux]) ? State::at_lower : State::at_upper;
        x_[aux] = 0.0;
        sigma[i] = r[i] >= 0 ? 1.0 : -1.0;
        cols_.push_back({{i, sigma[i]}});
        lo_.push_back(0.0);
        up_.push_back(kInfinity);
        cost_.push_back(0.0);
        x_.push_back(std::abs(r[i]));
        state_.push_back(State::basic);
        head_[i] = total() - 1;
      }
    }
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) binv_[idx(i, i)] = head_[i] >= first_art_ ? sigma[i] : 1.0;
  }

  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * m_ + c; }

  // Rebuilds B^-1 by Gauss-Jordan and recomputes basic values.
  bool refactor() {
    std::vector<double> B(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int k = 0; k < m_; ++k)
      for (const auto& [i, a] : cols_[head_[k]]) B[idx(i, k)] = a;
    std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[idx(i, i)] = 1.0;
    std::vector<int> perm(m_);
    for (int c = 0; c < m_; ++c) {
      int piv = -1;
      double best = 0;
      for (int r = c; r < m_; ++r)
        if (std::abs(B[idx(r, c)]) > best) {
          best = std::abs(B[idx(r, c)]);
          piv = r;
        }
      if (piv < 0 || best < 1e-12) return false;
      if (piv != c)
        for (int k = 0; k < m_; ++k) {
          std::swap(B[idx(piv, k)], B[idx(c, k)]);
          std::swap(inv[idx(piv, k)], inv[idx(c, k)]);
        }
      const double p = B[idx(c, c)];
      for (int k = 0; k < m_; ++k) {
        B[idx(c, k)] /= p;
        inv[idx(c, k)] /= p;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = B[idx(r, c)];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          B[idx(r, k)] -= f * B[idx(c, k)];
          inv[idx(r, k)] -= f * inv[idx(c, k)];
        }
      }
    }
    // Gauss-Jordan on B (columns = basis positions) yields B^-1 whose row k
    // belongs to basis position k.
    binv_ = std::move(inv);
    std::vector<double> r = b_;
    for (int j = 0; j < total(); ++j)
      if (state_[j] != State::basic)
        for (const auto& [i, a] : cols_[j]) r[i] -= a * x_[j];
    for (int k = 0; k < m_; ++k) {
      double v = 0;
      for (int i = 0; i < m_; ++i) v += binv_[idx(k, i)] * r[i];
      x_[head_[k]] = v;
    }
    return true;
  }

  void duals(const std::vector<double>& cost, std::vector<double>& pi) const {
    pi.assign(m_, 0.0);
    for (int k = 0; k < m_; ++k) {
      const double c = cost[head_[k]];
      if (c == 0.0) continue;
      for (int i = 0; i < m_; ++i) pi[i] += c * binv_[idx(k, i)];
    }
  }

  double reduced_cost(int j, const std::vector<double>& cost, const std::vector<double>& pi) const {
    double d = cost[j];
    for (const auto& [i, a] : cols_[j]) d -= pi[i] * a;
    return d;
  }

  LpStatus iterate(const std::vector<double>& cost) {
    const double opt_tol = 1e-9;
    const double piv_tol = 1e-9;
    std::vector<double> pi, alpha(m_);
    int degenerate_run = 0;
    int since_refactor = 0;
    for (;;) {
      if (iterations_ >= max_iter_) return LpStatus::iteration_limit;
      if (since_refactor >= opt_.refactor_interval) {
        if (!refactor()) return LpStatus::numerical_failure;
        since_refactor = 0;
      }
      duals(cost, pi);
      const bool bland = degenerate_run > 50;
      int q = -1;
      double best = 0;
      for (int j = 0; j < total(); ++j) {
        if (state_[j] == State::basic || lo_[j] == up_[j]) continue;
        const double d = reduced_cost(j, cost, pi);
        const bool improves = (state_[j] == State::at_lower && d < -opt_tol) ||
                              (state_[j] == State::at_upper && d > opt_tol);
        if (!improves) continue;
        if (bland) {
          q = j;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          q = j;
        }
      }
      if (q < 0) return LpStatus::optimal;

      std::fill(alpha.begin(), alpha.end(), 0.0);
      for (const auto& [i, a] : cols_[q])
        for (int k = 0; k < m_; ++k) alpha[k] += binv_[idx(k, i)] * a;
      const double dir = state_[q] == State::at_lower ? 1.0 : -1.0;

      // Two-pass ratio test with slightly relaxed bounds, preferring large pivots.
      const double relax = opt_.tol.feas * 0.1;
      double tmax = kInfinity;
      for (int k = 0; k < m_; ++k) {
        const double delta = -dir * alpha[k];
        if (std::abs(alpha[k]) <= piv_tol) continue;
        const int j = head_[k];
        double t = kInfinity;
        if (delta < 0 && std::isfinite(lo_[j])) t = (x_[j] - lo_[j] + relax) / -delta;
        if (delta > 0 && std::isfinite(up_[j])) t = (up_[j] - x_[j] + relax) / delta;
        tmax = std::min(tmax, t);
      }
      int leave = -1;
      double t_leave = kInfinity, best_piv = 0;
      if (std::isfinite(tmax)) {
        for (int k = 0; k < m_; ++k) {
          const double delta = -dir * alpha[k];
          if (std::abs(alpha[k]) <= piv_tol) continue;
          const int j = head_[k];
          double t = kInfinity;
          if (delta < 0 && std::isfinite(lo_[j])) t = (x_[j] - lo_[j]) / -delta;
          if (delta > 0 && std::isfinite(up_[j])) t = (up_[j] - x_[j]) / delta;
          if (t <= tmax && std::abs(alpha[k]) > best_piv) {
            best_piv = std::abs(alpha[k]);
            leave = k;
            t_leave = std::max(0.0, t);
          }
        }
      }
      const double flip = up_[q] - lo_[q];
      if (leave < 0 && !std::isfinite(flip)) return LpStatus::unbounded;
      ++iterations_;
      ++since_refactor;
      if (leave < 0 || flip <= t_leave) {
        for (int k = 0; k < m_; ++k) x_[head_[k]] -= dir * alpha[k] * flip;
        if (state_[q] == State::at_lower) {
          state_[q] = State::at_upper;
          x_[q] = up_[q];
        } else {
          state_[q] = State::at_lower;
          x_[q] = lo_[q];
        }
        degenerate_run = 0;
        continue;
      }
      const double t = t_leave;
      degenerate_run = t <= 1e-12 ? degenerate_run + 1 : 0;
      for (int k = 0; k < m_; ++k) x_[head_[k]] -= dir * alpha[k] * t;
      x_[q] += dir * t;
      const int out = head_[leave];
      const double delta_out = -dir * alpha[leave];
      if (delta_out < 0) {
        state_[out] = State::at_lower;
        x_[out] = lo_[out];
      } else {
        state_[out] = State::at_upper;
        x_[out] = up_[out];
      }
      head_[leave] = q;
      state_[q] = State::basic;
      const double p = alpha[leave];
      for (int i = 0; i < m_; ++i) binv_[idx(leave, i)] /= p;
      for (int k = 0; k < m_; ++k) {
        if (k == leave || alpha[k] == 0.0) continue;
        const double f = alpha[k];
        for (int i = 0; i < m_; ++i) binv_[idx(k, i)] -= f * binv_[idx(leave, i)];
      }
    }
  }

  LpSolution extract(LpSolution& sol, const std::vector<double>& cost) {
    std::vector<double> pi;
    duals(cost, pi);
    const double sign = lp_.sense() == Sense::minimize ? 1.0 : -1.0;
    sol.primal.assign(x_.begin(), x_.begin() + n_);
    for (int j = 0; j < n_; ++j) sol.primal[j] = std::clamp(sol.primal[j], lo_[j], up_[j]);
    sol.duals.resize(m_);
    for (int i = 0; i < m_; ++i) sol.duals[i] = sign * pi[i];
    sol.reduced_costs.resize(n_);
    for (int j = 0; j < n_; ++j) sol.reduced_costs[j] = sign * reduced_cost(j, cost, pi);
    sol.objective = 0;
    for (int j = 0; j < n_; ++j) sol.objective += lp_.variables()[j].objective * sol.primal[j];
    sol.iterations = iterations_;
    sol.max_primal_infeasibility = primal_infeasibility(lp_, sol.primal);

    double cscale = 1.0;
    for (double c : cost) cscale = std::max(cscale, std::abs(c));
    double dinf = 0;
    for (int j = 0; j < total(); ++j) {
      if (state_[j] == State::basic || lo_[j] == up_[j]) continue;
      const double d = reduced_cost(j, cost, pi);
      dinf = std::max(dinf, state_[j] == State::at_lower ? -d : d);
    }
    sol.max_dual_infeasibility = std::max(0.0, dinf);
    const double gap = std::abs(sol.objective - dual_objective(lp_, sol.duals));
    const bool ok = sol.max_primal_infeasibility <= opt_.tol.feas * bscale_ &&
                    sol.max_dual_infeasibility <= opt_.tol.feas * cscale &&
                    gap <= opt_.tol.gap * std::max(1.0, std::abs(sol.objective));
    sol.status = ok ? LpStatus::optimal : LpStatus::numerical_failure;
    return sol;
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;
  int m_ = 0, n_ = 0, first_art_ = 0;
  int iterations_ = 0, max_iter_ = 0;
  double bscale_ = 1.0;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> lo_, up_, cost_, b_, x_;
  std::vector<State> state_;
  std::vector<int> head_;
  std::vector<double> binv_;  // row k of B^-1 belongs to basis position k
};

}  // namespace

LpSolution solve(const LinearProgram& lp, const SimplexOptions& options) {
  Simplex simplex(lp, options);
  return simplex.run();
}

double dual_objective(const LinearProgram& lp, const std::vector<double>& duals) {
  const bool minimize = lp.sense() == Sense::minimize;
  std::vector<double> d(lp.variable_count());
  for (int j = 0; j < lp.variable_count(); ++j) d[j] = lp.variables()[j].objective;
  double value = 0;
  for (int i = 0; i < lp.constraint_count(); ++i) {
    const auto& row = lp.constraints()[i];
    value += duals[i] * row.rhs;
    for (const auto& [j, a] : row.row) d[j] -= duals[i] * a;
  }
  for (int j = 0; j < lp.variable_count(); ++j) {
    const auto& v = lp.variables()[j];
    if (std::abs(d[j]) <= 1e-9) d[j] = 0.0;  // basic columns carry round-off only
    const double toward_lower = minimize ? std::max(d[j], 0.0) : std::min(d[j], 0.0);
    const double toward_upper = minimize ? std::min(d[j], 0.0) : std::max(d[j], 0.0);
    value += toward_lower * v.lower;
    if (toward_upper != 0.0) value += toward_upper * v.upper;  // -inf/+inf if unbounded
  }
  return value;
}

double primal_infeasibility(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0;
  for (int j = 0; j < lp.variable_count(); ++j) {
    const auto& v = lp.variables()[j];
    worst = std::max({worst, v.lower - x[j], x[j] - v.upper});
  }
  for (const auto& row : lp.constraints()) {
    double lhs = 0;
    for (const auto& [j, a] : row.row) lhs += a * x[j];
    switch (row.relation) {
      case Relation::less_equal: worst = std::max(worst, lhs - row.rhs); break;
      case Relation::greater_equal: worst = std::max(worst, row.rhs - lhs); break;
      case Relation::equal: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
    }
  }
  return worst;
}

std::string to_lp_format(const LinearProgram& lp) {
  std::ostringstream out;
  out.precision(17);
  auto name = [&](int j) {
    const auto& n = lp.variables()[j].name;
    return n.empty() ? "x" + std::to_string(j) : n;
  };
  auto terms = [&](const SparseRow& row) {
    std::ostringstream s;
    s.precision(17);
    bool first = true;
    for (const auto& [j, a] : row) {
      s << (a < 0 ? " - " : (first ? " " : " + ")) << std::abs(a) << ' ' << name(j);
      first = false;
    }
    if (first) s << " 0 " << (lp.variable_count() > 0 ? name(0) : "x0");
    return s.str();
  };
  out << (lp.sense() == Sense::minimize ? "Minimize\n" : "Maximize\n") << " obj:";
  SparseRow objective;
  for (int j = 0; j < lp.variable_count(); ++j)
    if (lp.variables()[j].objective != 0.0) objective.emplace_back(j, lp.variables()[j].objective);
  out << terms(objective) << "\nSubject To\n";
  for (int i = 0; i < lp.constraint_count(); ++i) {
    const auto& row = lp.constraints()[i];
    out << ' ' << (row.name.empty() ? "c" + std::to_string(i) : row.name) << ':' << terms(row.row)
        << (row.relation == Relation::less_equal
                ? " <= "
                : row.relation == Relation::greater_equal ? " >= " : " = ")
        << row.rhs << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.variable_count(); ++j) {
    const auto& v = lp.variables()[j];
    out << ' ' << v.lower << " <= " << name(j);
    if (std::isfinite(v.upper)) out << " <= " << v.upper;
    out << '\n';
  }
  out << "End\n";
  return out.str();
}

double violation(const CutInequality& cut, const std::vector<double>& x) {
  double lhs = 0;
  for (const auto& [j, a] : cut.coefficients) lhs += a * x[j];
  switch (cut.relation) {
    case Relation::greater_equal: return cut.rhs - lhs;
    case Relation::less_equal: return lhs - cut.rhs;
    case Relation::equal: return std::abs(lhs - cut.rhs);
  }
  return 0;
}

CuttingPlaneResult cutting_plane(const LinearProgram& initial, const SeparationCallback& separate,
                                 const CuttingPlaneOptions& options) {
  CuttingPlaneResult result;
  LinearProgram master = initial;
  for (;;) {
    result.solution = solve(master, options.simplex);
    if (!result.solution.optimal())
      throw CuttingPlaneError("master LP ended with status " + to_string(result.solution.status));
    result.objective_history.push_back(result.solution.objective);
    ++result.rounds;
    auto cut = separate(result.solution);
    if (!cut) return result;
    const double v = violation(*cut, result.solution.primal);
    if (!(v >= options.simplex.tol.cut))
      throw CuttingPlaneError("separation returned a cut violated by only " + std::to_string(v));
    if (result.rounds >= options.max_rounds)
      throw CuttingPlaneError("cutting-plane loop hit the cap of " +
                              std::to_string(options.max_rounds) + " rounds");
    cut->violation_at_addition = v;
    master.add_constraint(cut->coefficients, cut->relation, cut->rhs, cut->origin);
    result.pool.cuts.push_back(std::move(*cut));
  }
}

}  // namespace twi
