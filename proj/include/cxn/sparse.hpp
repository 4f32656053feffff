#ifndef CXN_SPARSE_HPP
#define CXN_SPARSE_HPP

#include <span>
#include <string>
#include <vector>

#include "cxn/dense.hpp"
#include "cxn/error.hpp"

namespace cxn {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;

  bool operator==(const Triplet&) const = default;
};

/// Immutable sparse matrix in sorted-coordinate form with CSR row offsets.
/// Row/column labels carry the cell ids the indices stand for. Duplicate
/// coordinates are coalesced (values added) and exact zeros dropped at
/// assembly, so `triplets()` is canonical: row-major sorted, unique, nonzero.
class SparseMatrix {
public:
  SparseMatrix() = default;

  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets,
                                    std::vector<std::string> row_labels = {},
                                    std::vector<std::string> col_labels = {});

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(triplets_.size()); }
  bool square() const { return rows_ == cols_; }

  const std::vector<Triplet>& triplets() const { return triplets_; }
  std::span<const Triplet> row(int i) const;

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  double at(int i, int j) const;

  SparseMatrix transpose() const;

  /// Row sums folded in value order, so the result is independent of any
  /// reindexing of the columns.
  std::vector<double> row_sums() const;

  DenseMatrix to_dense() const;

  bool operator==(const SparseMatrix&) const = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Triplet> triplets_;
  std::vector<int> row_start_;  // rows_+1 offsets into triplets_
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

/// C = A * B over doubles. Row folds use value-ordered summation, keeping
/// products bit-identical under simultaneous permutation of A's rows/B's
/// columns and matching index permutations.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/// Sparse-times-dense: Y = A * H, one value-ordered fold per output entry.
DenseMatrix multiply(const SparseMatrix& a, const DenseMatrix& h);

}  // namespace cxn

#endif
