#include "mfd/linalg.hpp"

#include "mfd/error.hpp"

#include <cmath>

namespace mfd {

LinearSolution solve_linear(const Matrix& a, const Vector& b, const Tolerance& tol) {
  if (a.rows() != b.size()) throw Error(ErrorCode::kShapeMismatch, "linear system shape mismatch");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const bool exact = a.all_exact() && std::all_of(b.begin(), b.end(), [](const Scalar& x) { return x.is_exact(); });

  Matrix aug(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto is_zero = [&](const Scalar& x) { return exact ? x.is_zero() : tol.is_zero(x); };

  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t best = m;
    for (std::size_t r = row; r < m; ++r) {
      if (is_zero(aug(r, col))) continue;
      if (best == m) {
        best = r;
        if (exact) break;
      } else if (std::abs(aug(r, col).to_double()) > std::abs(aug(best, col).to_double())) {
        best = r;
      }
    }
    if (best == m) continue;
    if (best != row)
      for (std::size_t j = 0; j <= n; ++j) std::swap(aug(row, j), aug(best, j));
    Scalar pivot = aug(row, col);
    for (std::size_t j = col; j <= n; ++j) aug(row, j) /= pivot;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || aug(r, col).is_zero()) continue;
      Scalar factor = aug(r, col);
      for (std::size_t j = col; j <= n; ++j) aug(r, j) -= factor * aug(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }

  LinearSolution out;
  out.rank = pivot_cols.size();
  for (std::size_t r = out.rank; r < m; ++r) {
    if (!is_zero(aug(r, n))) {
      out.kind = LinearSolution::Kind::kInconsistent;
      out.inconsistent_row = r;
      return out;
    }
  }
  out.x.assign(n, exact ? Scalar(0) : Scalar(0.0));
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) out.x[pivot_cols[k]] = aug(k, n);
  out.kind = out.rank == n ? LinearSolution::Kind::kUnique : LinearSolution::Kind::kUnderdetermined;
  return out;
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols, bool exact, const Tolerance& tol)
      : t_(rows + 1, cols + 1), basis_(rows), exact_(exact), tol_(tol) {}

  Scalar& at(std::size_t i, std::size_t j) { return t_(i, j); }
  std::size_t rows() const { return t_.rows() - 1; }
  std::size_t cols() const { return t_.cols() - 1; }
  std::size_t obj() const { return t_.rows() - 1; }
  std::size_t rhs() const { return t_.cols() - 1; }
  std::vector<std::size_t>& basis() { return basis_; }

  bool negative(const Scalar& x) const { return exact_ ? x.sign() < 0 : x.to_double() < -tol_.eps; }
  bool positive(const Scalar& x) const { return exact_ ? x.sign() > 0 : x.to_double() > tol_.eps; }

  void pivot(std::size_t row, std::size_t col) {
    Scalar p = t_(row, col);
    for (std::size_t j = 0; j < t_.cols(); ++j) t_(row, j) /= p;
    for (std::size_t r = 0; r < t_.rows(); ++r) {
      if (r == row || t_(r, col).is_zero()) continue;
      Scalar factor = t_(r, col);
      for (std::size_t j = 0; j < t_.cols(); ++j) t_(r, j) -= factor * t_(row, j);
    }
    basis_[row] = col;
  }

  /// Runs Bland's rule over columns < active_cols. Returns false if unbounded.
  bool optimize(std::size_t active_cols) {
    for (;;) {
      std::size_t enter = active_cols;
      for (std::size_t j = 0; j < active_cols; ++j)
        if (negative(t_(obj(), j))) {
          enter = j;
          break;
        }
      if (enter == active_cols) return true;
      std::size_t leave = rows();
      Scalar best_ratio;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (!positive(t_(i, enter))) continue;
        Scalar ratio = t_(i, rhs()) / t_(i, enter);
        if (leave == rows() || ratio < best_ratio ||
            (!(best_ratio < ratio) && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }

  void remove_row(std::size_t row) {
    Matrix next(t_.rows() - 1, t_.cols());
    for (std::size_t r = 0, k = 0; r < t_.rows(); ++r) {
      if (r == row) continue;
      for (std::size_t j = 0; j < t_.cols(); ++j) next(k, j) = t_(r, j);
      ++k;
    }
    t_ = std::move(next);
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
  }

 private:
  Matrix t_;
  std::vector<std::size_t> basis_;
  bool exact_;
  Tolerance tol_;
};

}  // namespace

LpResult simplex_maximize(const Matrix& a, const Vector& b, const Vector& c, const Tolerance& tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m || c.size() != n) throw Error(ErrorCode::kShapeMismatch, "LP shape mismatch");
  const bool exact = a.all_exact() && std::all_of(b.begin(), b.end(), [](const Scalar& x) { return x.is_exact(); }) &&
                     std::all_of(c.begin(), c.end(), [](const Scalar& x) { return x.is_exact(); });

  // Columns: n structural, m artificial, then rhs.
  Tableau tab(m, n + m, exact, tol);
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = b[i].sign() < 0;
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = flip ? -a(i, j) : a(i, j);
    tab.at(i, n + i) = Scalar(1);
    tab.at(i, tab.rhs()) = flip ? -b[i] : b[i];
    tab.basis()[i] = n + i;
  }
  // Phase one: maximize -sum(artificials).
  for (std::size_t j = 0; j <= n + m; ++j) {
    Scalar s = j >= n && j < n + m ? Scalar(1) : Scalar(0);
    for (std::size_t i = 0; i < m; ++i) s -= tab.at(i, j);
    if (j >= n && j < n + m) s += Scalar(1);  // artificial columns reduce to zero
    tab.at(tab.obj(), j) = s;
  }
  for (std::size_t i = 0; i < m; ++i) tab.at(tab.obj(), n + i) = Scalar(0);
  tab.optimize(n + m);

  LpResult out;
  out.infeasibility = -tab.at(tab.obj(), tab.rhs());
  if (tab.positive(out.infeasibility)) {
    out.status = LpResult::Status::kInfeasible;
    return out;
  }

  // Drive remaining artificials out of the basis.
  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basis()[i] < n) {
      ++i;
      continue;
    }
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j)
      if (tab.positive(tab.at(i, j)) || tab.negative(tab.at(i, j))) {
        col = j;
        break;
      }
    if (col == n) {
      tab.remove_row(i);
      continue;
    }
    tab.pivot(i, col);
    ++i;
  }

  // Phase two on structural columns only.
  for (std::size_t j = 0; j <= n + m; ++j) tab.at(tab.obj(), j) = Scalar(0);
  for (std::size_t j = 0; j < n; ++j) tab.at(tab.obj(), j) = -c[j];
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    std::size_t bj = tab.basis()[i];
    Scalar coef = tab.at(tab.obj(), bj);
    if (coef.is_zero()) continue;
    for (std::size_t j = 0; j <= n + m; ++j) tab.at(tab.obj(), j) -= coef * tab.at(i, j);
  }
  if (!tab.optimize(n)) {
    out.status = LpResult::Status::kUnbounded;
    return out;
  }
  out.status = LpResult::Status::kOptimal;
  out.x.assign(n, exact ? Scalar(0) : Scalar(0.0));
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] < n) out.x[tab.basis()[i]] = tab.at(i, tab.rhs());
  out.objective = tab.at(tab.obj(), tab.rhs());
  return out;
}

}  // namespace mfd
