#include "mubasis/poly_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "mubasis/errors.hpp"

namespace mubasis {

PolyMatrix::PolyMatrix(int nvars, int rows, int cols)
    : nvars_(nvars), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Poly(nvars)) {}

PolyMatrix PolyMatrix::identity(int nvars, int n) {
  PolyMatrix m(nvars, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Poly::constant(nvars, 1);
  return m;
}

PolyMatrix PolyMatrix::column(const PolyVector& entries) {
  int nvars = entries.empty() ? 2 : entries.front().nvars();
  PolyMatrix m(nvars, static_cast<int>(entries.size()), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(static_cast<int>(i), 0) = entries[i];
  return m;
}

PolyMatrix PolyMatrix::from_columns(int nvars, int rows, const std::vector<PolyVector>& cols) {
  PolyMatrix m(nvars, rows, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (static_cast<int>(cols[j].size()) != rows) throw InvalidInput("column length mismatch");
    for (int i = 0; i < rows; ++i) m(i, static_cast<int>(j)) = cols[j][i];
  }
  return m;
}

PolyVector PolyMatrix::col(int j) const {
  PolyVector v;
  v.reserve(rows_);
  for (int i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

PolyVector PolyMatrix::row(int i) const {
  return PolyVector(data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
                    data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(nvars_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

PolyMatrix PolyMatrix::block(int r0, int c0, int nrows, int ncols) const {
  PolyMatrix b(nvars_, nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

PolyMatrix PolyMatrix::map(const std::function<Poly(const Poly&)>& f) const {
  PolyMatrix out(nvars_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = f(data_[k]);
  if (!out.data_.empty()) out.nvars_ = out.data_.front().nvars();
  return out;
}

int PolyMatrix::degree() const {
  int d = kDegreeOfZero;
  for (const auto& p : data_) d = std::max(d, p.degree());
  return d;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool PolyMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Poly& p = (*this)(i, j);
      if (i == j ? !(p.is_nonzero_constant() && p.constant_term() == 1) : !p.is_zero()) return false;
    }
  return true;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("matrix dimension mismatch in product");
  PolyMatrix c(std::max(a.nvars_, b.nvars_), a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Poly& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Poly& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        c(i, j) += aik * bkj;
      }
    }
  return c;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix dimension mismatch in sum");
  PolyMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix dimension mismatch in difference");
  PolyMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

void PolyMatrix::add_row_multiple(int target, int source, const Poly& factor) {
  if (factor.is_zero()) return;
  for (int j = 0; j < cols_; ++j) {
    const Poly& s = (*this)(source, j);
    if (!s.is_zero()) (*this)(target, j) += factor * s;
  }
}

void PolyMatrix::swap_rows(int a, int b) {
  if (a == b) return;
  for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void PolyMatrix::scale_row(int r, const Scalar& c) {
  for (int j = 0; j < cols_; ++j) (*this)(r, j) *= c;
}

std::string PolyMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

PolyVector mat_vec(const PolyMatrix& m, const PolyVector& v) {
  if (static_cast<int>(v.size()) != m.cols()) throw InvalidInput("matrix-vector dimension mismatch");
  PolyVector out(m.rows(), Poly(m.nvars()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace mubasis
