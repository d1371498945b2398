#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "core/rational.hpp"

namespace conelab {

// Small dense matrix over Rat.  Used for metrics, basis changes and the
// constant blocks of matrix-valued series.
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  static QMatrix identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Rat(1);
    return m;
  }
  static QMatrix from_rows(std::initializer_list<std::initializer_list<Rat>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix scaled(const Rat& c) const;
  QMatrix transpose() const;

  // Gaussian elimination; throws std::domain_error when singular.
  QMatrix inverse() const;
  bool is_invertible() const;

  bool is_zero() const;

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

}  // namespace conelab
