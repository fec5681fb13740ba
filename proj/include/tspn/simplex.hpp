#pragma once

// Dense linear programming over free variables.
//
//   minimize    c^T x + offset
//   subject to  a_i^T x  {<=, =, >=}  b_i
//
// Bounds on variables are ordinary rows. The solver first eliminates
// variables through the equality rows (Gauss-Jordan with partial pivoting),
// then runs a two-phase tableau simplex with Bland's rule on the dual of the
// remaining inequality system and recovers the primal point from the optimal
// dual basis by re-solving the tight rows.

#include <vector>

namespace tspn::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Row {
  std::vector<double> coeffs;  // dense, size == num_vars
  Sense sense = Sense::GreaterEqual;
  double rhs = 0.0;
};

struct Problem {
  int num_vars = 0;
  std::vector<double> objective;  // size == num_vars
  double objective_offset = 0.0;
  std::vector<Row> rows;

  explicit Problem(int n = 0) : num_vars(n), objective(static_cast<size_t>(n), 0.0) {}

  Row& add_row(Sense sense, double rhs) {
    rows.push_back(Row{std::vector<double>(static_cast<size_t>(num_vars), 0.0), sense, rhs});
    return rows.back();
  }
};

enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(Status s);

struct Result {
  Status status = Status::NumericalFailure;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
};

struct Options {
  double pivot_tol = 1e-10;
  double cost_tol = 1e-10;
  // Optimal points must satisfy every row to this (row-norm scaled) tolerance.
  double feasibility_tol = 1e-7;
  int max_pivots = 200000;
};

Result solve(const Problem& problem, const Options& options = {});

// Largest violation of any row at x, each row scaled by max(1, |a_i|_inf).
double max_violation(const Problem& problem, const std::vector<double>& x);

}  // namespace tspn::lp
