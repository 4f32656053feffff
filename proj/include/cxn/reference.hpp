#ifndef CXN_REFERENCE_HPP
#define CXN_REFERENCE_HPP

#include "cxn/embedding.hpp"
#include "cxn/forward.hpp"

namespace cxn::reference {

/// Serial reference implementations of the parallel kernels. They recompute
/// every neighborhood through the public per-cell set queries instead of
/// the precomputed routes and never spawn threads, yet must produce
/// bit-identical results; the test suite and the benchmark tool compare the
/// two paths.
FeatureMap cxn_forward(const CellComplex& x, const FeatureMap& h0, const SchemeConfig& cfg);
FeatureMap cxn_forward_hodge(const CellComplex& x, const FeatureMap& h0, const SchemeConfig& cfg);
DenseMatrix ccxn_forward(const CellComplex& x, const DenseMatrix& h0, const CcxnWeights& weights,
                         NormVariant variant);
WalkCorpus generate_walks(const CellComplex& x, int k, int length, int walks_per_cell,
                          std::uint64_t seed);

}  // namespace cxn::reference

#endif
