#ifndef MFD_MATRIX_HPP
#define MFD_MATRIX_HPP

#include "mfd/scalar.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace mfd {

using Vector = std::vector<Scalar>;

/// Small dense row-major matrix of Scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Scalar& fill = Scalar(0));
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector col(std::size_t j) const;

  Matrix transpose() const;
  Matrix as(NumberMode mode) const;
  bool all_exact() const;

  Eigen::MatrixXd to_eigen() const;
  static Matrix from_eigen(const Eigen::MatrixXd& m);

  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
  friend bool operator==(const Matrix& lhs, const Matrix& rhs);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Matrix with explicitly absent entries (entries off a support pattern).
class PartialMatrix {
 public:
  PartialMatrix() = default;
  PartialMatrix(std::size_t rows, std::size_t cols);
  PartialMatrix(std::initializer_list<std::initializer_list<std::optional<Scalar>>> rows);
  /// Every entry present.
  explicit PartialMatrix(const Matrix& total);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool has(std::size_t i, std::size_t j) const { return data_[i * cols_ + j].has_value(); }
  const std::optional<Scalar>& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  /// Throws Error(MissingEntry) when the entry is absent.
  const Scalar& value(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Scalar v) { data_[i * cols_ + j] = std::move(v); }
  void clear(std::size_t i, std::size_t j) { data_[i * cols_ + j].reset(); }

  bool is_total() const;
  /// Throws Error(MissingEntry) unless total.
  Matrix to_total() const;
  PartialMatrix transpose() const;

  friend bool operator==(const PartialMatrix& lhs, const PartialMatrix& rhs) {
    return lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.data_ == rhs.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::optional<Scalar>> data_;
};

/// Entries of `total` where `pattern` is nonzero; absent elsewhere.
PartialMatrix restrict_to_support(const Matrix& total, const Matrix& pattern);

/// row * M (row-vector convention).
Vector left_multiply(const Vector& row, const Matrix& m);
/// M * col.
Vector right_multiply(const Matrix& m, const Vector& col);

Scalar sum(const Vector& v);
Scalar dot(const Vector& x, const Vector& y);
Vector scaled(const Vector& v, const Scalar& factor);
Vector as_mode(const Vector& v, NumberMode mode);
std::vector<double> to_doubles(const Vector& v);
Vector from_doubles(const std::vector<double>& v);
Eigen::VectorXd to_eigen(const Vector& v);
Vector from_eigen(const Eigen::VectorXd& v);

/// max_ij |a_ij - b_ij| in doubles.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const Vector& a, const Vector& b);

bool close(const Matrix& a, const Matrix& b, const Tolerance& tol);
bool close(const Vector& a, const Vector& b, const Tolerance& tol);

}  // namespace mfd

#endif  // MFD_MATRIX_HPP
