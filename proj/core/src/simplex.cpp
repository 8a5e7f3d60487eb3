#include "sceot/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "sceot/error.hpp"
#include "sceot/numeric.hpp"

namespace sceot {

namespace {

class RevisedSimplex {
 public:
  RevisedSimplex(const EqualityLP& lp, const SimplexOptions& opt) : lp_(lp), opt_(opt) {
    R_ = lp.rows;
    N_ = static_cast<int>(lp.columns.size());
    if (static_cast<int>(lp.cost.size()) != N_ || static_cast<int>(lp.rhs.size()) != R_) {
      throw DomainError("LP cost/rhs sizes do not match the constraint matrix");
    }
    std::vector<double> norm2(static_cast<std::size_t>(R_), 0.0);
    for (const auto& col : lp.columns) {
      if (col.rows.size() != col.values.size()) throw DomainError("malformed sparse column");
      for (std::size_t k = 0; k < col.rows.size(); ++k) {
        const int r = col.rows[k];
        if (r < 0 || r >= R_) throw DomainError("sparse column row index out of range");
        norm2[static_cast<std::size_t>(r)] += col.values[k] * col.values[k];
      }
    }
    scale_.resize(static_cast<std::size_t>(R_));
    b_.resize(R_);
    for (int i = 0; i < R_; ++i) {
      const double nrm = std::sqrt(norm2[static_cast<std::size_t>(i)]);
      double s = nrm > 0.0 ? 1.0 / nrm : 1.0;
      if (lp.rhs[static_cast<std::size_t>(i)] * s < 0.0) s = -s;
      scale_[static_cast<std::size_t>(i)] = s;
      b_[i] = lp.rhs[static_cast<std::size_t>(i)] * s;
    }
    cols_ = lp.columns;
    for (auto& col : cols_) {
      for (std::size_t k = 0; k < col.rows.size(); ++k) col.values[k] *= scale_[static_cast<std::size_t>(col.rows[k])];
    }
  }

  LPResult run() {
    LPResult res;
    basis_.resize(static_cast<std::size_t>(R_));
    is_basic_.assign(static_cast<std::size_t>(N_ + R_), false);
    for (int i = 0; i < R_; ++i) {
      basis_[static_cast<std::size_t>(i)] = N_ + i;
      is_basic_[static_cast<std::size_t>(N_ + i)] = true;
    }
    binv_ = Eigen::MatrixXd::Identity(R_, R_);
    xb_ = b_;

    phase_cost_.assign(static_cast<std::size_t>(N_ + R_), 0.0);
    for (int i = 0; i < R_; ++i) phase_cost_[static_cast<std::size_t>(N_ + i)] = 1.0;
    if (!iterate()) throw StateError("phase one of the simplex reported unboundedness");

    double infeas = 0.0;
    for (int i = 0; i < R_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] >= N_) infeas += std::max(0.0, xb_[i]);
    }
    res.iterations = iterations_;
    if (infeas > opt_.feasibility_tol * std::max(1.0, b_.cwiseAbs().maxCoeff())) {
      res.status = LPStatus::infeasible;
      return res;
    }
    drive_out_artificials();

    for (int j = 0; j < N_; ++j) phase_cost_[static_cast<std::size_t>(j)] = lp_.cost[static_cast<std::size_t>(j)];
    for (int i = 0; i < R_; ++i) phase_cost_[static_cast<std::size_t>(N_ + i)] = 0.0;
    cost_scale_ = 1.0;
    for (double c : lp_.cost) cost_scale_ = std::max(cost_scale_, std::abs(c));
    const bool bounded = iterate();
    res.iterations = iterations_;
    if (!bounded) {
      res.status = LPStatus::unbounded;
      return res;
    }

    res.status = LPStatus::optimal;
    res.x.assign(static_cast<std::size_t>(N_), 0.0);
    for (int i = 0; i < R_; ++i) {
      const int j = basis_[static_cast<std::size_t>(i)];
      if (j < N_) res.x[static_cast<std::size_t>(j)] = std::max(0.0, xb_[i]);
    }
    const Eigen::VectorXd ys = duals();
    res.y.resize(static_cast<std::size_t>(R_));
    for (int i = 0; i < R_; ++i) res.y[static_cast<std::size_t>(i)] = ys[i] * scale_[static_cast<std::size_t>(i)];
    CompensatedSum v;
    for (int j = 0; j < N_; ++j) {
      if (res.x[static_cast<std::size_t>(j)] != 0.0) v.add(lp_.cost[static_cast<std::size_t>(j)] * res.x[static_cast<std::size_t>(j)]);
    }
    res.value = v.value();
    return res;
  }

 private:
  Eigen::VectorXd duals() const {
    Eigen::VectorXd cb(R_);
    for (int i = 0; i < R_; ++i) cb[i] = phase_cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
    return binv_.transpose() * cb;
  }

  double dot(const Eigen::VectorXd& y, int j) const {
    if (j >= N_) return y[j - N_];
    const auto& col = cols_[static_cast<std::size_t>(j)];
    double s = 0.0;
    for (std::size_t k = 0; k < col.rows.size(); ++k) s += y[col.rows[k]] * col.values[k];
    return s;
  }

  Eigen::VectorXd ftran(int j) const {
    if (j >= N_) return binv_.col(j - N_);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(R_);
    const auto& col = cols_[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < col.rows.size(); ++k) u += binv_.col(col.rows[k]) * col.values[k];
    return u;
  }

  void pivot(int r, int q, const Eigen::VectorXd& u) {
    const double ur = u[r];
    binv_.row(r) /= ur;
    for (int i = 0; i < R_; ++i) {
      if (i != r && u[i] != 0.0) binv_.row(i) -= u[i] * binv_.row(r);
    }
    is_basic_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = false;
    basis_[static_cast<std::size_t>(r)] = q;
    is_basic_[static_cast<std::size_t>(q)] = true;
    ++iterations_;
    if (iterations_ % opt_.refactor_every == 0) refactor();
  }

  void refactor() {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(R_, R_);
    for (int i = 0; i < R_; ++i) {
      const int j = basis_[static_cast<std::size_t>(i)];
      if (j >= N_) {
        B(j - N_, i) = 1.0;
      } else {
        const auto& col = cols_[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < col.rows.size(); ++k) B(col.rows[k], i) = col.values[k];
      }
    }
    binv_ = B.partialPivLu().inverse();
    xb_ = binv_ * b_;
    for (int i = 0; i < R_; ++i) {
      if (xb_[i] < 0.0 && xb_[i] > -opt_.feasibility_tol) xb_[i] = 0.0;
    }
  }

  // Returns false when the phase is unbounded.
  bool iterate() {
    while (iterations_ < opt_.max_iterations) {
      const Eigen::VectorXd y = duals();
      const double tol = opt_.optimality_tol * cost_scale_;
      int q = -1;
      for (int j = 0; j < N_; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)]) continue;
        if (phase_cost_[static_cast<std::size_t>(j)] - dot(y, j) < -tol) {
          q = j;
          break;
        }
      }
      if (q < 0) return true;
      const Eigen::VectorXd u = ftran(q);
      int r = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < R_; ++i) {
        if (u[i] <= opt_.pivot_tol) continue;
        const double theta = std::max(0.0, xb_[i]) / u[i];
        const double eps = 1e-12 * (1.0 + std::abs(best));
        if (r < 0 || theta < best - eps ||
            (std::abs(theta - best) <= eps && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(r)])) {
          r = i;
          best = theta;
        }
      }
      if (r < 0) return false;
      for (int i = 0; i < R_; ++i) xb_[i] -= best * u[i];
      xb_[r] = best;
      pivot(r, q, u);
    }
    throw StateError("simplex iteration limit reached");
  }

  void drive_out_artificials() {
    for (int r = 0; r < R_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < N_) continue;
      const Eigen::VectorXd row = binv_.row(r).transpose();
      int best_j = -1;
      double best_abs = 1e-9;
      for (int j = 0; j < N_; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)]) continue;
        const double a = std::abs(dot(row, j));
        if (a > best_abs) {
          best_abs = a;
          best_j = j;
        }
      }
      // No candidate means the row is redundant; its artificial stays at zero.
      if (best_j < 0) continue;
      const Eigen::VectorXd u = ftran(best_j);
      const double theta = xb_[r] / u[r];
      for (int i = 0; i < R_; ++i) xb_[i] -= theta * u[i];
      xb_[r] = theta;
      pivot(r, best_j, u);
    }
    refactor();
  }

  const EqualityLP& lp_;
  SimplexOptions opt_;
  int R_ = 0;
  int N_ = 0;
  std::vector<double> scale_;
  Eigen::VectorXd b_;
  std::vector<SparseColumn> cols_;
  std::vector<int> basis_;
  std::vector<bool> is_basic_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  std::vector<double> phase_cost_;
  double cost_scale_ = 1.0;
  std::size_t iterations_ = 0;
};

}  // namespace

LPResult solve_lp(const EqualityLP& lp, const SimplexOptions& options) {
  if (lp.rows < 1) throw DomainError("LP needs at least one row");
  RevisedSimplex s(lp, options);
  return s.run();
}

}  // namespace sceot
