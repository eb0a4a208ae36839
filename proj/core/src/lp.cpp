#include "qep/lp.hpp"

#include "qep/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace qep {

namespace {

constexpr double kEps = 1e-10;

// Dense tableau simplex over
//   A x <= b, x free, maximize <c, x>
// in standard form with x = xp - xm, one slack per row and artificials where
// the (sign-corrected) slack cannot seed the basis. Bland's rule throughout,
// so the iteration terminates without anti-cycling heuristics.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Vector& b) {
    m_ = static_cast<int>(A.rows());
    n_ = static_cast<int>(A.cols());
    cols_ = 2 * n_ + m_;
    D_.resize(m_, cols_ + m_);  // reserve artificial block up front
    D_.setZero();
    rhs_.resize(m_);
    basis_.assign(m_, -1);

    n_art_ = 0;
    art_col_of_row_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j) {
        D_(i, j) = sign * A(i, j);
        D_(i, n_ + j) = -sign * A(i, j);
      }
      D_(i, 2 * n_ + i) = sign;  // slack
      rhs_[i] = sign * b[i];
      if (sign > 0.0) {
        basis_[i] = 2 * n_ + i;
      } else {
        const int acol = cols_ + n_art_;
        D_(i, acol) = 1.0;
        basis_[i] = acol;
        art_col_of_row_[i] = acol;
        ++n_art_;
      }
    }
    total_cols_ = cols_ + n_art_;
  }

  LpStatus run(const Vector& objective, Vector* point, double* value) {
    if (n_art_ > 0) {
      Vector phase1 = Vector::Zero(total_cols_);
      for (int i = 0; i < m_; ++i) {
        if (art_col_of_row_[i] >= 0) phase1[art_col_of_row_[i]] = -1.0;
      }
      if (!optimize(phase1, total_cols_)) {
        // Phase 1 objective is bounded by construction.
        throw NonConvergenceError("simplex phase 1 failed to terminate");
      }
      if (objective_value(phase1) < -1e-8) return LpStatus::Infeasible;
      purge_artificials();
    }

    Vector cost = Vector::Zero(total_cols_);
    for (int j = 0; j < n_; ++j) {
      cost[j] = objective[j];
      cost[n_ + j] = -objective[j];
    }
    if (!optimize(cost, cols_)) return LpStatus::Unbounded;

    Vector x = Vector::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      const int bj = basis_[i];
      if (bj < n_) {
        x[bj] += rhs_[i];
      } else if (bj < 2 * n_) {
        x[bj - n_] -= rhs_[i];
      }
    }
    *point = x;
    *value = objective.dot(x);
    return LpStatus::Optimal;
  }

 private:
  double objective_value(const Vector& cost) const {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v += cost[basis_[i]] * rhs_[i];
    return v;
  }

  // Returns false on unboundedness.
  bool optimize(const Vector& cost, int usable_cols) {
    const long max_iter = 4096 + 64L * (m_ + total_cols_) * (m_ + 1);
    for (long iter = 0; iter < max_iter; ++iter) {
      // Reduced costs priced against the current basis.
      Vector y = Vector::Zero(m_);
      for (int i = 0; i < m_; ++i) y[i] = cost[basis_[i]];

      int enter = -1;
      for (int j = 0; j < usable_cols; ++j) {
        if (is_basic(j)) continue;
        const double red = cost[j] - y.dot(D_.col(j));
        if (red > kEps) {
          enter = j;  // Bland: first improving index
          break;
        }
      }
      if (enter < 0) return true;  // optimal

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const double d = D_(i, enter);
        if (d > kEps) {
          const double ratio = rhs_[i] / d;
          if (ratio < best_ratio - kEps ||
              (ratio < best_ratio + kEps &&
               (leave < 0 || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
    throw NonConvergenceError("simplex iteration limit reached");
  }

  bool is_basic(int j) const {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] == j) return true;
    }
    return false;
  }

  void pivot(int row, int col) {
    const double p = D_(row, col);
    D_.row(row) /= p;
    rhs_[row] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = D_(i, col);
      if (f != 0.0) {
        D_.row(i) -= f * D_.row(row);
        rhs_[i] -= f * rhs_[row];
      }
    }
    basis_[row] = col;
  }

  // After a feasible phase 1, swap any basic artificial (necessarily at
  // level ~0) for a structural column, or mark its row redundant by zeroing.
  void purge_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < cols_) continue;
      int swap = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!is_basic(j) && std::abs(D_(i, j)) > 1e-8) {
          swap = j;
          break;
        }
      }
      if (swap >= 0) {
        pivot(i, swap);
      } else {
        D_.row(i).setZero();
        rhs_[i] = 0.0;
        D_(i, basis_[i]) = 1.0;  // keep the artificial basic at zero, inert
      }
    }
  }

  int m_ = 0, n_ = 0, cols_ = 0, n_art_ = 0, total_cols_ = 0;
  Eigen::MatrixXd D_;
  Vector rhs_;
  std::vector<int> basis_;
  std::vector<int> art_col_of_row_;
};

}  // namespace

LpResult solve_lp_max(const Vector& objective, const Eigen::MatrixXd& A,
                      const Vector& b) {
  if (A.rows() != b.size() || A.cols() != objective.size()) {
    throw DimensionMismatchError("solve_lp_max: inconsistent shapes");
  }
  LpResult out;
  Tableau t(A, b);
  out.point = Vector::Zero(objective.size());
  out.status = t.run(objective, &out.point, &out.value);
  return out;
}

LpResult find_feasible_point(const Eigen::MatrixXd& A, const Vector& b) {
  return solve_lp_max(Vector::Zero(A.cols()), A, b);
}

}  // namespace qep
