#include "bearnav/lp.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace bearnav::lp {

namespace {

constexpr double kPivotEps = 1e-9;
const double kInf = std::numeric_limits<double>::infinity();

// Tableau simplex in the classic KACTL layout: column n holds the phase-1
// artificial variable, column n+1 the right-hand side; row m is the phase-1
// objective and row m+1 the real objective. Index pairs break pivot ties by
// variable id, which prevents cycling in practice.
class Tableau {
  public:
    Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
        : m_(static_cast<int>(b.size())),
          n_(static_cast<int>(c.size())),
          nonbasic_(n_ + 1),
          basic_(m_),
          t_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < n_; ++j) t_[i][j] = A(i, j);
            basic_[i] = n_ + i;
            t_[i][n_] = -1.0;
            t_[i][n_ + 1] = b(i);
        }
        for (int j = 0; j < n_; ++j) {
            nonbasic_[j] = j;
            t_[m_][j] = -c(j);
        }
        nonbasic_[n_] = -1;
        t_[m_ + 1][n_] = 1.0;
    }

    double solve(Eigen::VectorXd& x) {
        int r = 0;
        for (int i = 1; i < m_; ++i)
            if (t_[i][n_ + 1] < t_[r][n_ + 1]) r = i;
        if (t_[r][n_ + 1] < -kPivotEps) {
            pivot(r, n_);
            if (!run_phase(2) || t_[m_ + 1][n_ + 1] < -kPivotEps) return -kInf;
            for (int i = 0; i < m_; ++i) {
                if (basic_[i] != -1) continue;
                int s = 0;
                for (int j = 1; j <= n_; ++j)
                    if (better_entering(i, j, s)) s = j;
                pivot(i, s);
            }
        }
        const bool bounded = run_phase(1);
        x = Eigen::VectorXd::Zero(n_);
        for (int i = 0; i < m_; ++i)
            if (basic_[i] < n_) x(basic_[i]) = t_[i][n_ + 1];
        return bounded ? t_[m_][n_ + 1] : kInf;
    }

  private:
    bool better_entering(int row, int j, int s) const {
        return std::make_pair(t_[row][j], nonbasic_[j]) < std::make_pair(t_[row][s], nonbasic_[s]);
    }

    void pivot(int r, int s) {
        std::vector<double>& prow = t_[r];
        const double inv = 1.0 / prow[s];
        for (int i = 0; i < m_ + 2; ++i) {
            if (i == r || std::abs(t_[i][s]) <= kPivotEps) continue;
            const double factor = t_[i][s] * inv;
            for (int j = 0; j < n_ + 2; ++j) t_[i][j] -= prow[j] * factor;
            t_[i][s] = prow[s] * factor;
        }
        for (int j = 0; j < n_ + 2; ++j)
            if (j != s) prow[j] *= inv;
        for (int i = 0; i < m_ + 2; ++i)
            if (i != r) t_[i][s] *= -inv;
        prow[s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    bool run_phase(int phase) {
        const int obj = m_ + phase - 1;
        for (;;) {
            int s = -1;
            for (int j = 0; j <= n_; ++j) {
                if (nonbasic_[j] == -phase) continue;
                if (s == -1 || better_entering(obj, j, s)) s = j;
            }
            if (t_[obj][s] >= -kPivotEps) return true;
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                if (t_[i][s] <= kPivotEps) continue;
                if (r == -1 ||
                    std::make_pair(t_[i][n_ + 1] / t_[i][s], basic_[i]) <
                        std::make_pair(t_[r][n_ + 1] / t_[r][s], basic_[r]))
                    r = i;
            }
            if (r == -1) return false;  // unbounded along column s
            pivot(r, s);
        }
    }

    int m_, n_;
    std::vector<int> nonbasic_, basic_;
    std::vector<std::vector<double>> t_;
};

}  // namespace

double simplex_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                     Eigen::VectorXd& x) {
    return Tableau(A, b, c).solve(x);
}

FeasibilityResult solve_feasibility_lp(int num_vars, const std::vector<Constraint>& constraints) {
    // Free decision variables are split v = p - q with p, q >= 0; the slack t
    // sits in the last column and is itself required nonnegative, so a
    // negative-optimum case shows up as simplex infeasibility.
    const int cols = 2 * num_vars + 1;
    const int rows = static_cast<int>(constraints.size()) + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd b(rows);
    for (int k = 0; k < rows - 1; ++k) {
        const Constraint& row = constraints[k];
        for (int v = 0; v < num_vars; ++v) {
            A(k, v) = row.coeffs(v);
            A(k, num_vars + v) = -row.coeffs(v);
        }
        A(k, 2 * num_vars) = 1.0;
        b(k) = row.bound;
    }
    A(rows - 1, 2 * num_vars) = 1.0;
    b(rows - 1) = 1.0;

    Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);
    c(2 * num_vars) = 1.0;

    Eigen::VectorXd raw;
    const double value = simplex_solve(A, b, c, raw);

    FeasibilityResult result;
    if (!std::isfinite(value)) return result;  // -inf: no t >= 0 exists
    result.feasible = true;
    result.margin = value;
    result.solution = raw.head(num_vars) - raw.segment(num_vars, num_vars);
    return result;
}

}  // namespace bearnav::lp
