#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mubasis/poly.hpp"

namespace mubasis {

// Dense rectangular matrix of polynomials sharing one ring.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int nvars, int rows, int cols);
  static PolyMatrix identity(int nvars, int n);
  // Builds an m x 1 column.
  static PolyMatrix column(const PolyVector& entries);
  static PolyMatrix from_columns(int nvars, int rows, const std::vector<PolyVector>& cols);

  int nvars() const { return nvars_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Poly& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Poly& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  PolyVector col(int j) const;
  PolyVector row(int i) const;
  PolyMatrix transpose() const;
  PolyMatrix block(int r0, int c0, int nrows, int ncols) const;
  PolyMatrix map(const std::function<Poly(const Poly&)>& f) const;

  // Max entry degree; kDegreeOfZero for the zero matrix.
  int degree() const;
  bool is_zero() const;
  bool is_identity() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

  // In-place elementary row operations.
  void add_row_multiple(int target, int source, const Poly& factor);
  void swap_rows(int a, int b);
  void scale_row(int r, const Scalar& c);

  std::string to_string() const;

 private:
  int nvars_ = 2;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Poly> data_;
};

PolyVector mat_vec(const PolyMatrix& m, const PolyVector& v);

}  // namespace mubasis
