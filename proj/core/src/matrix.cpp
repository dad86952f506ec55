#include "mfd/matrix.hpp"

#include "mfd/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfd {

Matrix::Matrix(std::size_t rows, std::size_t cols, const Scalar& fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  Matrix m;
  m.rows_ = rows.size();
  m.cols_ = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != m.cols_) {
      throw Error(ErrorCode::kNotRectangular, "matrix rows have different lengths");
    }
    m.data_.insert(m.data_.end(), r.begin(), r.end());
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::col(std::size_t j) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::as(NumberMode mode) const {
  Matrix out = *this;
  for (auto& x : out.data_) x = x.as(mode);
  return out;
}

bool Matrix::all_exact() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x.is_exact(); });
}

Eigen::MatrixXd Matrix::to_eigen() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).to_double();
  return m;
}

Matrix Matrix::from_eigen(const Eigen::MatrixXd& m) {
  Matrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Scalar(m(i, j));
  return out;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw Error(ErrorCode::kShapeMismatch, "matrix product shape mismatch");
  Matrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const Scalar& a = lhs(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

bool operator==(const Matrix& lhs, const Matrix& rhs) {
  return lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.data_ == rhs.data_;
}

PartialMatrix::PartialMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

PartialMatrix::PartialMatrix(std::initializer_list<std::initializer_list<std::optional<Scalar>>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

PartialMatrix::PartialMatrix(const Matrix& total) : PartialMatrix(total.rows(), total.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) set(i, j, total(i, j));
}

const Scalar& PartialMatrix::value(std::size_t i, std::size_t j) const {
  const auto& entry = at(i, j);
  if (!entry) {
    throw Error(ErrorCode::kMissingEntry, "matrix entry is not defined",
                {{"edge", {i, j}}});
  }
  return *entry;
}

bool PartialMatrix::is_total() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& x) { return x.has_value(); });
}

Matrix PartialMatrix::to_total() const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = value(i, j);
  return m;
}

PartialMatrix PartialMatrix::transpose() const {
  PartialMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (has(i, j)) t.set(j, i, *at(i, j));
  return t;
}

PartialMatrix restrict_to_support(const Matrix& total, const Matrix& pattern) {
  if (total.rows() != pattern.rows() || total.cols() != pattern.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "support pattern shape mismatch");
  }
  PartialMatrix out(total.rows(), total.cols());
  for (std::size_t i = 0; i < total.rows(); ++i)
    for (std::size_t j = 0; j < total.cols(); ++j)
      if (!pattern(i, j).is_zero()) out.set(i, j, total(i, j));
  return out;
}

Vector left_multiply(const Vector& row, const Matrix& m) {
  if (row.size() != m.rows()) throw Error(ErrorCode::kShapeMismatch, "vector-matrix shape mismatch");
  Vector out(m.cols(), Scalar(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out[j] += row[i] * m(i, j);
  return out;
}

Vector right_multiply(const Matrix& m, const Vector& col) {
  if (col.size() != m.cols()) throw Error(ErrorCode::kShapeMismatch, "matrix-vector shape mismatch");
  Vector out(m.rows(), Scalar(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out[i] += m(i, j) * col[j];
  return out;
}

Scalar sum(const Vector& v) {
  Scalar s(0);
  for (const auto& x : v) s += x;
  return s;
}

Scalar dot(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kShapeMismatch, "dot product length mismatch");
  Scalar s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Vector scaled(const Vector& v, const Scalar& factor) {
  Vector out = v;
  for (auto& x : out) x *= factor;
  return out;
}

Vector as_mode(const Vector& v, NumberMode mode) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.as(mode));
  return out;
}

std::vector<double> to_doubles(const Vector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_double());
  return out;
}

Vector from_doubles(const std::vector<double>& v) { return Vector(v.begin(), v.end()); }

Eigen::VectorXd to_eigen(const Vector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].to_double();
  return out;
}

Vector from_eigen(const Eigen::VectorXd& v) {
  Vector out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.emplace_back(v(i));
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "matrix shape mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j).to_double() - b(i, j).to_double()));
  return m;
}

double max_abs_diff(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kShapeMismatch, "vector length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i].to_double() - b[i].to_double()));
  return m;
}

bool close(const Matrix& a, const Matrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!tol.close(a(i, j), b(i, j))) return false;
  return true;
}

bool close(const Vector& a, const Vector& b, const Tolerance& tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!tol.close(a[i], b[i])) return false;
  return true;
}

}  // namespace mfd
