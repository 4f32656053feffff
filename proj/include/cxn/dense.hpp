#ifndef CXN_DENSE_HPP
#define CXN_DENSE_HPP

#include <span>
#include <vector>

#include "cxn/error.hpp"

namespace cxn {

/// Row-major dense matrix of doubles. Feature blocks, affine weights and
/// embedding tables are all small enough that a flat buffer is the right
/// representation.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::span<double> row(int i) { return {data_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)}; }
  std::span<const double> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)};
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const DenseMatrix&) const = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows())
    fail(errc::shape_mismatch, "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                   " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  DenseMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      double v = a(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += v * b(k, j);
    }
  return c;
}

}  // namespace cxn

#endif
