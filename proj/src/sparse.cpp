#include "cxn/sparse.hpp"

#include <algorithm>

#include "cxn/util.hpp"

namespace cxn {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets,
                                         std::vector<std::string> row_labels,
                                         std::vector<std::string> col_labels) {
  if (rows < 0 || cols < 0) fail(errc::shape_mismatch, "negative matrix dimension");
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      fail(errc::shape_mismatch, "triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                                     ") outside " + std::to_string(rows) + "x" + std::to_string(cols));

  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return std::pair(a.row, a.col) < std::pair(b.row, b.col);
  });
  std::vector<Triplet> coalesced;
  coalesced.reserve(triplets.size());
  for (const Triplet& t : triplets) {
    if (!coalesced.empty() && coalesced.back().row == t.row && coalesced.back().col == t.col)
      coalesced.back().value += t.value;
    else
      coalesced.push_back(t);
  }
  std::erase_if(coalesced, [](const Triplet& t) { return t.value == 0.0; });

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.triplets_ = std::move(coalesced);
  m.row_labels_ = std::move(row_labels);
  m.col_labels_ = std::move(col_labels);
  m.row_start_.assign(rows + 1, 0);
  for (const Triplet& t : m.triplets_) ++m.row_start_[t.row + 1];
  for (int i = 0; i < rows; ++i) m.row_start_[i + 1] += m.row_start_[i];
  return m;
}

std::span<const Triplet> SparseMatrix::row(int i) const {
  return {triplets_.data() + row_start_[i], triplets_.data() + row_start_[i + 1]};
}

double SparseMatrix::at(int i, int j) const {
  for (const Triplet& t : row(i))
    if (t.col == j) return t.value;
  return 0.0;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> flipped;
  flipped.reserve(triplets_.size());
  for (const Triplet& t : triplets_) flipped.push_back({t.col, t.row, t.value});
  return from_triplets(cols_, rows_, std::move(flipped), col_labels_, row_labels_);
}

std::vector<double> SparseMatrix::row_sums() const {
  std::vector<double> sums(rows_, 0.0);
  std::vector<double> scratch;
  for (int i = 0; i < rows_; ++i) {
    scratch.clear();
    for (const Triplet& t : row(i)) scratch.push_back(t.value);
    sums[i] = invariant_sum(scratch);
  }
  return sums;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (const Triplet& t : triplets_) d(t.row, t.col) = t.value;
  return d;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows())
    fail(errc::shape_mismatch, "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                   " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  // Gather per (row, col) term lists, then fold each in value order.
  std::vector<Triplet> out;
  std::vector<std::vector<double>> terms(b.cols());
  std::vector<int> touched;
  for (int i = 0; i < a.rows(); ++i) {
    touched.clear();
    for (const Triplet& ta : a.row(i)) {
      for (const Triplet& tb : b.row(ta.col)) {
        if (terms[tb.col].empty()) touched.push_back(tb.col);
        terms[tb.col].push_back(ta.value * tb.value);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int j : touched) {
      double v = invariant_sum(terms[j]);
      if (v != 0.0) out.push_back({i, j, v});
      terms[j].clear();
    }
  }
  return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(out), a.row_labels(), b.col_labels());
}

DenseMatrix multiply(const SparseMatrix& a, const DenseMatrix& h) {
  if (a.cols() != h.rows())
    fail(errc::shape_mismatch, "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                   " by " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
  DenseMatrix y(a.rows(), h.cols());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32)
#endif
  for (int i = 0; i < a.rows(); ++i) {
    std::vector<double> scratch;
    auto entries = a.row(i);
    for (int t = 0; t < h.cols(); ++t) {
      scratch.clear();
      for (const Triplet& e : entries) scratch.push_back(e.value * h(e.col, t));
      y(i, t) = invariant_sum(scratch);
    }
  }
  return y;
}

}  // namespace cxn
