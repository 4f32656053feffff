#ifndef CXN_FORWARD_HPP
#define CXN_FORWARD_HPP

#include "cxn/cell_complex.hpp"
#include "cxn/scheme.hpp"

namespace cxn {

/// Precomputed message routes for the adjacency or coadjacency scheme: for
/// every cell of an updated dimension, its neighbors and, per neighbor a,
/// the witness cells CO[a,c] (resp. C[a,c]) whose features feed the inner
/// aggregate. Local indices relative to each dimension's first cell.
struct NeighborLists {
  struct Edge {
    int neighbor;                // local index within dimension m
    std::vector<int> witnesses;  // local indices within the witness dimension
  };
  // routes[m][c] = edges of cell c (local) in dimension m; empty for
  // dimensions the scheme does not update.
  std::vector<std::vector<std::vector<Edge>>> routes;
};

NeighborLists build_neighbor_lists(const CellComplex& x, Scheme scheme);

/// Runs cfg.depth layers of the adjacency or coadjacency scheme (delegates
/// to cxn_forward_hodge when cfg.scheme == hodge). Adjacency updates
/// dimensions 0..n-1 and never touches n-cell rows; its inner aggregate for
/// (n-1)-cells reads the initial n-cell features (which never change), all
/// other reads are from the previous layer. Coadjacency mirrors: updates
/// 1..n, freezes 0-cells, 1-cells read initial 0-cell features. Updates are
/// synchronous within a layer and parallelized across cells.
FeatureMap cxn_forward(const CellComplex& x, const FeatureMap& h0, const SchemeConfig& cfg);

/// Hodge-style neighborhood: facets and cofacets whose incidence sign
/// equals compatible_sign (+1 by default), in canonical order.
std::vector<CellId> hodge_neighborhood(const CellComplex& x, const CellId& c, int compatible_sign = +1);

/// Hodge scheme: every dimension 0..n updates synchronously with
/// h_c <- alpha(h_c, E over a in I(c) of phi_{m,d(a)}(h_c, h_a)), where
/// I(c) is the compatible-orientation neighborhood and phi is selected by
/// the neighbor's dimension (phi_down for m-1, phi_up for m+1).
FeatureMap cxn_forward_hodge(const CellComplex& x, const FeatureMap& h0, const SchemeConfig& cfg);

/// Convolutional layers H <- ReLU(A_hat H W) with A_hat the normalized
/// adjacency over X^{<n}. H0 rows follow the canonical X^{<n} order.
DenseMatrix ccxn_forward(const CellComplex& x, const DenseMatrix& h0, const CcxnWeights& weights,
                         NormVariant variant);

}  // namespace cxn

#endif
