#include "core/qmatrix.hpp"

namespace conelab {

QMatrix QMatrix::from_rows(std::initializer_list<std::initializer_list<Rat>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  QMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw std::invalid_argument("QMatrix: ragged rows");
    int j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("QMatrix: shape mismatch in product");
  QMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& aik = (*this)(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
    }
  return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMatrix: shape mismatch");
  QMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMatrix: shape mismatch");
  QMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

QMatrix QMatrix::scaled(const Rat& c) const {
  QMatrix r = *this;
  for (auto& x : r.a_) x *= c;
  return r;
}

QMatrix QMatrix::transpose() const {
  QMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

QMatrix QMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("QMatrix: inverse of non-square matrix");
  int n = rows_;
  QMatrix a = *this;
  QMatrix inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a(r, col).is_zero()) { piv = r; break; }
    if (piv < 0) throw std::domain_error("QMatrix: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) { std::swap(a(piv, j), a(col, j)); std::swap(inv(piv, j), inv(col, j)); }
    Rat p = a(col, col).inv();
    for (int j = 0; j < n; ++j) { a(col, j) *= p; inv(col, j) *= p; }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Rat f = a(r, col);
      for (int j = 0; j < n; ++j) { a(r, j) -= f * a(col, j); inv(r, j) -= f * inv(col, j); }
    }
  }
  return inv;
}

bool QMatrix::is_invertible() const {
  try {
    (void)inverse();
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

bool QMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace conelab
