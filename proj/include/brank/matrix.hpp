#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace brank {

/// Dense row-major matrix of 64-bit floats. The only tensor type in the
/// library; column vectors are (n, 1) matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);  // zero-filled
  Matrix(int rows, int cols, std::vector<double> values);

  static Matrix zeros(int rows, int cols) { return Matrix(rows, cols); }
  static Matrix identity(int n);
  static Matrix column(std::initializer_list<double> values);
  static Matrix column(const std::vector<double>& values);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_ * cols_; }
  bool empty() const { return size() == 0; }
  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  std::string shape_str() const;

  double& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double& operator[](int i) { return data_[static_cast<size_t>(i)]; }
  double operator[](int i) const { return data_[static_cast<size_t>(i)]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* row(int r) { return data_.data() + static_cast<size_t>(r) * cols_; }
  const double* row(int r) const { return data_.data() + static_cast<size_t>(r) * cols_; }
  const std::vector<double>& values() const { return data_; }

  void fill(double v);
  void set_zero() { fill(0.0); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Throws NumericError if any entry is NaN or infinite. `where` names the
// operation for the diagnostic.
void check_finite(const Matrix& m, const char* where);
void check_finite(std::span<const double> v, const char* where);

double dot(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const double> v);
double cosine(std::span<const double> a, std::span<const double> b);
// Scales v to unit L2 norm; the zero vector is left as-is.
void normalize_in_place(std::vector<double>& v);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);
double dot(const Matrix& a, const Matrix& b);
double l2_norm(const Matrix& a);
double cosine(const Matrix& a, const Matrix& b);  // 0 when either side is zero

// Numerically stable softmax (max-subtraction). Empty input is an ArgumentError.
std::vector<double> softmax(std::span<const double> v);

double mse_loss(std::span<const double> pred, std::span<const double> target);
double mae_loss(std::span<const double> pred, std::span<const double> target);

// Cholesky factorization of a symmetric positive definite matrix, lower
// triangular factor. Throws NumericError when the matrix is not SPD.
Matrix cholesky(const Matrix& spd);
// Solves L y = b for lower-triangular L.
Matrix solve_lower(const Matrix& l, const Matrix& b);
// Solves L^T x = b using the lower factor.
Matrix solve_lower_transposed(const Matrix& l, const Matrix& b);
// Solves (L L^T) x = b.
Matrix cholesky_solve(const Matrix& l, const Matrix& b);

}  // namespace brank
