#include "cxn/operators.hpp"

#include <cmath>

#include "cxn/util.hpp"

namespace cxn {

namespace {

std::vector<std::string> labels_for_range(const CellComplex& x, int begin, int end) {
  std::vector<std::string> labels;
  labels.reserve(end - begin);
  for (int i = begin; i < end; ++i) labels.push_back(x.id(i));
  return labels;
}

// Shared assembly for adjacency (witnesses one dimension up) and coadjacency
// (one dimension down). Rows/cols cover cell indices [begin, end); every
// witness cell w contributes 1 to entry (i, j) for i in the positive and j
// in the negative incidence class of w (both classes = all incidences when
// unoriented), giving entry (i, j) = |CO[c_j, c_i]| resp. |C[c_j, c_i]|.
SparseMatrix witness_matrix(const CellComplex& x, Relation relation, int begin, int end) {
  std::vector<Triplet> triplets;
  int witness_begin = 0, witness_end = x.size();
  for (int w = witness_begin; w < witness_end; ++w) {
    auto incident = relation == Relation::adjacent ? x.boundary_of(w) : x.cofacets_of(w);
    for (auto [i, si] : incident) {
      if (i < begin || i >= end) continue;
      if (x.oriented() && si != 1) continue;
      for (auto [j, sj] : incident) {
        if (j < begin || j >= end || j == i) continue;
        if (x.oriented() && sj != -1) continue;
        triplets.push_back({i - begin, j - begin, 1.0});
      }
    }
  }
  auto labels = labels_for_range(x, begin, end);
  return SparseMatrix::from_triplets(end - begin, end - begin, std::move(triplets), labels, labels);
}

}  // namespace

SparseMatrix boundary_matrix(const CellComplex& x, int k) {
  if (k < 1 || k > x.dimension())
    fail(errc::k_out_of_range, "boundary matrix needs 1 <= k <= " + std::to_string(x.dimension()) +
                                   ", got " + std::to_string(k));
  int row_begin = x.offset(k - 1), row_end = x.offset(k);
  int col_begin = x.offset(k), col_end = x.offset(k + 1);
  std::vector<Triplet> triplets;
  for (int c = col_begin; c < col_end; ++c)
    for (auto [f, sign] : x.boundary_of(c))
      triplets.push_back({f - row_begin, c - col_begin, static_cast<double>(sign)});
  return SparseMatrix::from_triplets(row_end - row_begin, col_end - col_begin, std::move(triplets),
                                     labels_for_range(x, row_begin, row_end),
                                     labels_for_range(x, col_begin, col_end));
}

SparseMatrix adjacency_matrix(const CellComplex& x, MatrixScope scope, int k) {
  if (scope == MatrixScope::all) {
    if (x.dimension() < 1)
      fail(errc::k_out_of_range, "adjacency over X^{<n} needs a complex of dimension >= 1");
    return witness_matrix(x, Relation::adjacent, 0, x.offset(x.dimension()));
  }
  if (k < 0 || k >= x.dimension())
    fail(errc::k_out_of_range, "adjacency block needs 0 <= k < " + std::to_string(x.dimension()) +
                                   ", got " + std::to_string(k));
  return witness_matrix(x, Relation::adjacent, x.offset(k), x.offset(k + 1));
}

SparseMatrix coadjacency_matrix(const CellComplex& x, MatrixScope scope, int k) {
  if (scope == MatrixScope::all) return witness_matrix(x, Relation::coadjacent, x.offset(1), x.size());
  if (k < 1 || k > x.dimension())
    fail(errc::k_out_of_range, "coadjacency block needs 0 < k <= " + std::to_string(x.dimension()) +
                                   ", got " + std::to_string(k));
  return witness_matrix(x, Relation::coadjacent, x.offset(k), x.offset(k + 1));
}

SparseMatrix degree_matrix(const SparseMatrix& a) {
  if (!a.square())
    fail(errc::not_square, "degree matrix needs a square input, got " + std::to_string(a.rows()) + "x" +
                               std::to_string(a.cols()));
  std::vector<double> sums = a.row_sums();
  std::vector<Triplet> triplets;
  for (int i = 0; i < a.rows(); ++i)
    if (sums[i] != 0.0) triplets.push_back({i, i, sums[i]});
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(triplets), a.row_labels(), a.col_labels());
}

SparseMatrix normalized_operator(const SparseMatrix& a, NormVariant variant) {
  if (!a.square())
    fail(errc::not_square, "normalized operator needs a square input, got " + std::to_string(a.rows()) + "x" +
                               std::to_string(a.cols()));
  int n = a.rows();
  std::vector<Triplet> triplets;

  // Entries are scaled by 1/sqrt(d_i * d_j) rather than by the product of
  // per-row inverse square roots: mathematically the same, but exact in
  // floating point whenever the degree product is a perfect square (so a
  // degree-2 pair yields exactly 0.5, not 0.5 +/- 1 ulp).
  if (variant == NormVariant::plain) {
    // I + D^{-1/2} A D^{-1/2}, with 0 in place of 1/sqrt(0).
    std::vector<double> degree = a.row_sums();
    for (int i = 0; i < n; ++i) triplets.push_back({i, i, 1.0});
    for (const Triplet& t : a.triplets()) {
      double d = degree[t.row] * degree[t.col];
      triplets.push_back({t.row, t.col, d > 0.0 ? t.value / std::sqrt(d) : 0.0});
    }
  } else {
    // Dt^{-1/2} (A + I) Dt^{-1/2}; Dt degrees are >= 1, never zero.
    std::vector<double> scratch;
    std::vector<double> degree(n);
    for (int i = 0; i < n; ++i) {
      scratch.clear();
      scratch.push_back(1.0);
      for (const Triplet& t : a.row(i)) scratch.push_back(t.value);
      degree[i] = invariant_sum(scratch);
    }
    for (int i = 0; i < n; ++i) triplets.push_back({i, i, 1.0 / degree[i]});
    for (const Triplet& t : a.triplets())
      triplets.push_back({t.row, t.col, t.value / std::sqrt(degree[t.row] * degree[t.col])});
  }
  return SparseMatrix::from_triplets(n, n, std::move(triplets), a.row_labels(), a.col_labels());
}

}  // namespace cxn
