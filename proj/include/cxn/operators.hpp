#ifndef CXN_OPERATORS_HPP
#define CXN_OPERATORS_HPP

#include "cxn/cell_complex.hpp"
#include "cxn/sparse.hpp"

namespace cxn {

enum class MatrixScope { all, single_dim };
enum class NormVariant { plain, renormalized };

/// Boundary matrix of the k-cells: shape |X^{k-1}| x |X^k|, entry (f, c) =
/// sign of f in the boundary of c (always +1 for unoriented complexes).
/// Entries are exact small integers stored as doubles. The coboundary is
/// transpose().
SparseMatrix boundary_matrix(const CellComplex& x, int k);

/// Adjacency matrix. scope=all: square over X^{<n} in canonical order
/// (block-diagonal across dimensions); scope=single_dim: the k-block alone,
/// 0 <= k < n. Entry (i, j) is the number of shared cofacets witnessing
/// that c_j is adjacent to c_i (|CO[c_j, c_i]|), zero otherwise; the
/// diagonal is zero. Symmetric for unoriented complexes; oriented complexes
/// use the sign-split CO and the matrix may be asymmetric.
SparseMatrix adjacency_matrix(const CellComplex& x, MatrixScope scope, int k = -1);

/// Coadjacency mirror: scope=all over X^{>0}; scope=single_dim with
/// 0 < k <= n. Entry (i, j) = |C[c_j, c_i]|, the shared-facet witness count.
SparseMatrix coadjacency_matrix(const CellComplex& x, MatrixScope scope, int k = -1);

/// Diagonal matrix of row sums of a square matrix.
SparseMatrix degree_matrix(const SparseMatrix& a);

/// plain: I + D^{-1/2} A D^{-1/2}; renormalized: Dt^{-1/2} (A + I) Dt^{-1/2}
/// where Dt is the degree matrix of A + I. D^{-1/2} takes the entry 0 where
/// the degree is 0, so isolated cells pass features through unchanged.
SparseMatrix normalized_operator(const SparseMatrix& a, NormVariant variant);

}  // namespace cxn

#endif
