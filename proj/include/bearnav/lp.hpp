#pragma once

#include <Eigen/Dense>
#include <vector>

namespace bearnav::lp {

// One affine row: coeffs . v <= bound.
struct Constraint {
    Eigen::VectorXd coeffs;
    double bound = 0.0;
};

struct FeasibilityResult {
    bool feasible = false;
    Eigen::VectorXd solution;  // size num_vars, valid iff feasible
    double margin = 0.0;       // achieved uniform slack t in [0, 1]
};

// Maximizes t subject to coeffs . v + t <= bound for every row and t <= 1
// (the cap keeps the objective bounded). Infeasible when even t = 0 cannot
// be met, i.e. the original constraint set has no solution.
FeasibilityResult solve_feasibility_lp(int num_vars, const std::vector<Constraint>& constraints);

// Dense two-phase simplex: max c^T x subject to A x <= b, x >= 0.
// Returns -inf if infeasible, +inf if unbounded, else the optimum with the
// optimizer written to x.
double simplex_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                     Eigen::VectorXd& x);

}  // namespace bearnav::lp
