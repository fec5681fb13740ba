#include "tspn/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tspn::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

double row_scale(const std::vector<double>& a) {
  double s = 1.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

struct Elimination {
  int var;
  std::vector<double> coeffs;  // x_var = rhs - sum_j coeffs[j] x_j
  double rhs;
};

// Reduced system: G y >= h over free y, minimize c^T y.
struct Reduced {
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
  Eigen::VectorXd c;
};

enum class TableauOutcome { Optimal, Unbounded, IterationLimit };

class DualTableau {
 public:
  // Columns [0, m) are dual variables z_j >= 0 (one per primal row),
  // columns [m, m + r) are artificials, the last column is the rhs.
  DualTableau(const Reduced& red, const Options& opt) : opt_(opt) {
    r_ = static_cast<int>(red.G.cols());
    m_ = static_cast<int>(red.G.rows());
    cols_ = m_ + r_ + 1;
    T_ = Eigen::MatrixXd::Zero(r_, cols_);
    for (int i = 0; i < r_; ++i) {
      double sign = red.c(i) < 0 ? -1.0 : 1.0;
      for (int j = 0; j < m_; ++j) T_(i, j) = sign * red.G(j, i);
      T_(i, m_ + i) = 1.0;
      T_(i, cols_ - 1) = sign * red.c(i);
    }
    basis_.resize(static_cast<size_t>(r_));
    for (int i = 0; i < r_; ++i) basis_[static_cast<size_t>(i)] = m_ + i;
    dropped_.assign(static_cast<size_t>(r_), false);
    T0_ = T_;
  }

  // Rebuilds the tableau from the original data for the current basis, which
  // discards the rounding error accumulated by pivoting. Returns false if the
  // basis matrix has become singular.
  bool refactor() {
    Eigen::MatrixXd B(r_, r_);
    for (int i = 0; i < r_; ++i) B.col(i) = T0_.col(basis_[static_cast<size_t>(i)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible()) return false;
    T_ = lu.solve(T0_);
    for (int i = 0; i < r_; ++i) {
      double& rhs = T_(i, cols_ - 1);
      if (rhs < 0.0 && rhs > -1e-9 * std::max(1.0, T0_.col(cols_ - 1).cwiseAbs().maxCoeff())) rhs = 0.0;
    }
    return true;
  }

  // Phase 1: minimize the sum of artificials.
  bool phase_one(int& pivots) {
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols_ - 1);
    for (int i = 0; i < r_; ++i) cost(m_ + i) = 1.0;
    auto outcome = run(cost, /*allow_artificial=*/true, pivots);
    if (outcome != TableauOutcome::Optimal) return false;
    double infeas = 0.0;
    for (int i = 0; i < r_; ++i) {
      if (dropped_[static_cast<size_t>(i)]) continue;
      if (basis_[static_cast<size_t>(i)] >= m_) infeas += T_(i, cols_ - 1);
    }
    double scale = 1.0;
    for (int i = 0; i < r_; ++i) scale = std::max(scale, std::abs(T_(i, cols_ - 1)));
    if (infeas > 1e-9 * scale) return false;
    // Drive zero-level artificials out of the basis or drop redundant rows.
    for (int i = 0; i < r_; ++i) {
      if (basis_[static_cast<size_t>(i)] < m_) continue;
      int col = -1;
      double best = opt_.pivot_tol;
      for (int j = 0; j < m_; ++j) {
        if (std::abs(T_(i, j)) > best) {
          best = std::abs(T_(i, j));
          col = j;
        }
      }
      if (col >= 0) {
        pivot(i, col);
        ++pivots;
      } else {
        dropped_[static_cast<size_t>(i)] = true;
      }
    }
    return true;
  }

  // Pivots until a freshly refactored tableau confirms optimality.
  TableauOutcome phase_two(const Eigen::VectorXd& h, int& pivots) {
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols_ - 1);
    for (int j = 0; j < m_; ++j) cost(j) = -h(j);
    for (int round = 0; round < 8; ++round) {
      int before = pivots;
      auto outcome = run(cost, /*allow_artificial=*/false, pivots);
      if (outcome != TableauOutcome::Optimal) return outcome;
      if (!refactor()) return TableauOutcome::IterationLimit;
      if (round > 0 && pivots == before) return outcome;
    }
    return TableauOutcome::Optimal;
  }

  std::vector<int> basic_rows() const {
    std::vector<int> rows;
    for (int i = 0; i < r_; ++i) {
      if (dropped_[static_cast<size_t>(i)]) continue;
      if (basis_[static_cast<size_t>(i)] < m_) rows.push_back(basis_[static_cast<size_t>(i)]);
    }
    return rows;
  }

 private:
  void pivot(int row, int col) {
    double p = T_(row, col);
    T_.row(row) /= p;
    for (int i = 0; i < r_; ++i) {
      if (i == row) continue;
      double f = T_(i, col);
      if (f != 0.0) T_.row(i) -= f * T_.row(row);
    }
    basis_[static_cast<size_t>(row)] = col;
  }

  TableauOutcome run(const Eigen::VectorXd& cost, bool allow_artificial, int& pivots) {
    const int limit_col = allow_artificial ? cols_ - 1 : m_;
    Eigen::VectorXd reduced(cols_ - 1);
    while (true) {
      // reduced_j = cost_j - sum_i cost_{B(i)} T(i, j)
      reduced = cost;
      for (int i = 0; i < r_; ++i) {
        if (dropped_[static_cast<size_t>(i)]) continue;
        double cb = cost(basis_[static_cast<size_t>(i)]);
        if (cb != 0.0) reduced -= cb * T_.row(i).head(cols_ - 1).transpose();
      }
      // Bland: lowest-index improving column.
      int enter = -1;
      for (int j = 0; j < limit_col; ++j) {
        if (reduced(j) < -opt_.cost_tol) {
          bool is_basic = false;
          for (int i = 0; i < r_; ++i) {
            if (!dropped_[static_cast<size_t>(i)] && basis_[static_cast<size_t>(i)] == j) {
              is_basic = true;
              break;
            }
          }
          if (!is_basic) {
            enter = j;
            break;
          }
        }
      }
      if (enter < 0) return TableauOutcome::Optimal;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < r_; ++i) {
        if (dropped_[static_cast<size_t>(i)]) continue;
        double a = T_(i, enter);
        if (a <= opt_.pivot_tol) continue;
        double ratio = T_(i, cols_ - 1) / a;
        bool better = leave < 0 || ratio < best_ratio - 1e-12;
        bool tie = leave >= 0 && std::abs(ratio - best_ratio) <= 1e-12 &&
                   basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)];
        if (better || tie) {
          best_ratio = std::min(best_ratio, ratio);
          leave = i;
        }
      }
      if (leave < 0) return TableauOutcome::Unbounded;
      pivot(leave, enter);
      if (++pivots > opt_.max_pivots) return TableauOutcome::IterationLimit;
      if (pivots % kRefactorEvery == 0 && !refactor()) return TableauOutcome::IterationLimit;
    }
  }

  static constexpr int kRefactorEvery = 50;

  Options opt_;
  int r_ = 0, m_ = 0, cols_ = 0;
  Eigen::MatrixXd T_;
  Eigen::MatrixXd T0_;
  std::vector<int> basis_;
  std::vector<bool> dropped_;
};

enum class ReducedStatus { Optimal, Infeasible, Unbounded, Failure };

ReducedStatus solve_reduced(const Reduced& red, const Options& opt, Eigen::VectorXd& y, int& pivots);

// Feasibility of G y >= h alone (objective zero). Returns Optimal iff feasible.
ReducedStatus feasibility_only(const Reduced& red, const Options& opt, int& pivots) {
  Reduced zero{red.G, red.h, Eigen::VectorXd::Zero(red.c.size())};
  Eigen::VectorXd y;
  return solve_reduced(zero, opt, y, pivots);
}

ReducedStatus solve_reduced(const Reduced& red, const Options& opt, Eigen::VectorXd& y, int& pivots) {
  const int r = static_cast<int>(red.G.cols());
  const int m = static_cast<int>(red.G.rows());
  if (r == 0) {
    for (int j = 0; j < m; ++j) {
      if (red.h(j) > opt.feasibility_tol) return ReducedStatus::Infeasible;
    }
    y.resize(0);
    return ReducedStatus::Optimal;
  }
  DualTableau tab(red, opt);
  if (!tab.phase_one(pivots)) {
    // Dual infeasible: primal is unbounded or infeasible.
    bool all_zero = red.c.cwiseAbs().maxCoeff() == 0.0;
    if (all_zero) return ReducedStatus::Failure;
    auto feas = feasibility_only(red, opt, pivots);
    if (feas == ReducedStatus::Optimal) return ReducedStatus::Unbounded;
    if (feas == ReducedStatus::Infeasible) return ReducedStatus::Infeasible;
    return ReducedStatus::Failure;
  }
  auto outcome = tab.phase_two(red.h, pivots);
  if (outcome == TableauOutcome::Unbounded) return ReducedStatus::Infeasible;
  if (outcome == TableauOutcome::IterationLimit) return ReducedStatus::Failure;

  std::vector<int> tight = tab.basic_rows();
  if (tight.empty()) {
    y = Eigen::VectorXd::Zero(r);
    return ReducedStatus::Optimal;
  }
  Eigen::MatrixXd A(static_cast<Eigen::Index>(tight.size()), r);
  Eigen::VectorXd b(static_cast<Eigen::Index>(tight.size()));
  for (size_t k = 0; k < tight.size(); ++k) {
    A.row(static_cast<Eigen::Index>(k)) = red.G.row(tight[k]);
    b(static_cast<Eigen::Index>(k)) = red.h(tight[k]);
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  y = cod.solve(b);
  // One step of iterative refinement.
  Eigen::VectorXd res = b - A * y;
  y += cod.solve(res);
  return ReducedStatus::Optimal;
}

}  // namespace

double max_violation(const Problem& problem, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& row : problem.rows) {
    double lhs = 0.0;
    for (int j = 0; j < problem.num_vars; ++j) lhs += row.coeffs[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
    double s = row_scale(row.coeffs);
    double v = 0.0;
    switch (row.sense) {
      case Sense::LessEqual: v = lhs - row.rhs; break;
      case Sense::GreaterEqual: v = row.rhs - lhs; break;
      case Sense::Equal: v = std::abs(lhs - row.rhs); break;
    }
    worst = std::max(worst, v / s);
  }
  return worst;
}

Result solve(const Problem& problem, const Options& opt) {
  const int n = problem.num_vars;
  Result result;

  std::vector<Row> eqs;
  std::vector<Row> ineqs;  // all in >= form
  for (const auto& row : problem.rows) {
    if (row.sense == Sense::Equal) {
      eqs.push_back(row);
    } else if (row.sense == Sense::GreaterEqual) {
      ineqs.push_back(row);
    } else {
      Row flipped = row;
      for (auto& v : flipped.coeffs) v = -v;
      flipped.rhs = -row.rhs;
      flipped.sense = Sense::GreaterEqual;
      ineqs.push_back(std::move(flipped));
    }
  }
  std::vector<double> obj = problem.objective;
  double obj_const = problem.objective_offset;
  std::vector<bool> active(static_cast<size_t>(n), true);
  std::vector<Elimination> elims;

  auto substitute = [&](std::vector<double>& coeffs, double& rhs_or_const, int p,
                        const std::vector<double>& e, double e_rhs, bool is_objective) {
    double f = coeffs[static_cast<size_t>(p)];
    if (f == 0.0) return;
    for (int j = 0; j < n; ++j) coeffs[static_cast<size_t>(j)] -= f * e[static_cast<size_t>(j)];
    coeffs[static_cast<size_t>(p)] = 0.0;
    // row: f * x_p = f * (e_rhs - e.x)  => rhs -= f * e_rhs ; objective const += f * e_rhs
    if (is_objective) {
      rhs_or_const += f * e_rhs;
    } else {
      rhs_or_const -= f * e_rhs;
    }
  };

  for (size_t k = 0; k < eqs.size(); ++k) {
    Row& row = eqs[k];
    int p = -1;
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!active[static_cast<size_t>(j)]) continue;
      double a = std::abs(row.coeffs[static_cast<size_t>(j)]);
      if (a > best) {
        best = a;
        p = j;
      }
    }
    double scale = row_scale(row.coeffs);
    if (p < 0 || best <= 1e-11 * scale) {
      if (std::abs(row.rhs) > opt.feasibility_tol * std::max(1.0, scale)) {
        result.status = Status::Infeasible;
        return result;
      }
      continue;
    }
    double a_p = row.coeffs[static_cast<size_t>(p)];
    std::vector<double> e(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
      if (j != p) e[static_cast<size_t>(j)] = row.coeffs[static_cast<size_t>(j)] / a_p;
    }
    double e_rhs = row.rhs / a_p;
    for (size_t k2 = k + 1; k2 < eqs.size(); ++k2) substitute(eqs[k2].coeffs, eqs[k2].rhs, p, e, e_rhs, false);
    for (auto& ineq : ineqs) substitute(ineq.coeffs, ineq.rhs, p, e, e_rhs, false);
    substitute(obj, obj_const, p, e, e_rhs, true);
    active[static_cast<size_t>(p)] = false;
    elims.push_back(Elimination{p, std::move(e), e_rhs});
  }

  std::vector<int> remaining;
  for (int j = 0; j < n; ++j) {
    if (active[static_cast<size_t>(j)]) remaining.push_back(j);
  }
  const int r = static_cast<int>(remaining.size());
  const int m = static_cast<int>(ineqs.size());
  Reduced red;
  red.G.resize(m, r);
  red.h.resize(m);
  red.c.resize(r);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < r; ++k) red.G(i, k) = ineqs[static_cast<size_t>(i)].coeffs[static_cast<size_t>(remaining[static_cast<size_t>(k)])];
    red.h(i) = ineqs[static_cast<size_t>(i)].rhs;
  }
  for (int k = 0; k < r; ++k) red.c(k) = obj[static_cast<size_t>(remaining[static_cast<size_t>(k)])];

  Eigen::VectorXd y;
  auto st = solve_reduced(red, opt, y, result.pivots);
  if (st == ReducedStatus::Infeasible) {
    result.status = Status::Infeasible;
    return result;
  }
  if (st == ReducedStatus::Unbounded) {
    result.status = Status::Unbounded;
    return result;
  }
  if (st == ReducedStatus::Failure) {
    result.status = Status::NumericalFailure;
    return result;
  }

  std::vector<double> x(static_cast<size_t>(n), 0.0);
  for (int k = 0; k < r; ++k) x[static_cast<size_t>(remaining[static_cast<size_t>(k)])] = y(k);
  for (auto it = elims.rbegin(); it != elims.rend(); ++it) {
    double v = it->rhs;
    for (int j = 0; j < n; ++j) v -= it->coeffs[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(it->var)] = v;
  }
  double objective = problem.objective_offset;
  for (int j = 0; j < n; ++j) objective += problem.objective[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];

  if (max_violation(problem, x) > opt.feasibility_tol) {
    result.status = Status::NumericalFailure;
    result.x = std::move(x);
    result.objective = objective;
    return result;
  }
  result.status = Status::Optimal;
  result.x = std::move(x);
  result.objective = objective;
  return result;
}

}  // namespace tspn::lp
