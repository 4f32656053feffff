#include "cxn/reference.hpp"

#include <algorithm>

namespace cxn::reference {

namespace {

std::vector<double> concat3(std::span<const double> a, std::span<const double> b,
                            std::span<const double> c) {
  std::vector<double> out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace

FeatureMap cxn_forward(const CellComplex& x, const FeatureMap& h0, const SchemeConfig& cfg) {
  if (cfg.scheme == Scheme::hodge) return reference::cxn_forward_hodge(x, h0, cfg);
  bool adj = cfg.scheme == Scheme::adjacency;
  Relation relation = adj ? Relation::adjacent : Relation::coadjacent;
  PairSet witness_kind = adj ? PairSet::shared_cofacets : PairSet::shared_facets;
  int n = x.dimension();

  FeatureMap cur = h0;
  for (int k = 0; k < cfg.depth; ++k) {
    FeatureMap next = cur;
    for (int m = 0; m <= n; ++m) {
      bool updated = adj ? m < n : m > 0;
      if (!updated) continue;
      const AffineStack& phi = cfg.stack(cfg.phi, k, m, "phi");
      const AffineStack& alpha = cfg.stack(cfg.alpha, k, m, "alpha");

      int source_dim = adj ? m + 1 : m - 1;
      bool frozen_read = adj ? m == n - 1 : m == 1;
      const DenseMatrix& source = frozen_read ? h0.by_dim[source_dim] : cur.by_dim[source_dim];
      const DenseMatrix& own = cur.by_dim[m];
      int fw = source.cols();
      int phi_out = phi.empty() ? 2 * own.cols() + fw : phi.output_width();

      int base = x.offset(m);
      int src_base = x.offset(source_dim);
      std::vector<std::vector<double>> rows;
      for (int c = 0; c < x.size(m); ++c) {
        const CellId& c_id = x.id(base + c);
        std::vector<std::vector<double>> messages;
        for (const CellId& a_id : neighbors(x, c_id, relation)) {
          std::vector<std::vector<double>> inner;
          for (const CellId& w_id : co_set(x, a_id, c_id, witness_kind)) {
            auto row = source.row(x.index(w_id) - src_base);
            inner.emplace_back(row.begin(), row.end());
          }
          std::vector<double> f = aggregate(cfg.inner, inner, fw);
          messages.push_back(
              affine_apply(phi, concat3(own.row(c), own.row(x.index(a_id) - base), f)));
        }
        std::vector<double> e = aggregate(cfg.outer, messages, phi_out);
        std::vector<double> h_and_e;
        h_and_e.insert(h_and_e.end(), own.row(c).begin(), own.row(c).end());
        h_and_e.insert(h_and_e.end(), e.begin(), e.end());
        rows.push_back(affine_apply(alpha, h_and_e));
      }
      int ow = rows.empty() ? (alpha.empty() ? own.cols() + phi_out : alpha.output_width())
                            : static_cast<int>(rows.front().size());
      DenseMatrix out(x.size(m), ow);
      for (int c = 0; c < x.size(m); ++c) {
        if (static_cast<int>(rows[c].size()) != ow)
          fail(errc::width_mismatch, "inconsistent alpha output width in dimension " + std::to_string(m));
        std::copy(rows[c].begin(), rows[c].end(), out.row(c).begin());
      }
      next.by_dim[m] = std::move(out);
    }
    cur = std::move(next);
  }
  return cur;
}

FeatureMap cxn_forward_hodge(const CellComplex& x, const FeatureMap& h0, const SchemeConfig& cfg) {
  if (!x.oriented()) fail(errc::not_oriented, "hodge scheme needs an oriented complex");
  int n = x.dimension();

  FeatureMap cur = h0;
  for (int k = 0; k < cfg.depth; ++k) {
    FeatureMap next = cur;
    for (int m = 0; m <= n; ++m) {
      const AffineStack& alpha = cfg.stack(cfg.alpha, k, m, "alpha");
      const DenseMatrix& own = cur.by_dim[m];
      int base = x.offset(m);

      std::vector<std::vector<double>> rows;
      int message_width = -1;
      for (int c = 0; c < x.size(m); ++c) {
        const CellId& c_id = x.id(base + c);
        std::vector<std::vector<double>> messages;
        for (const CellId& a_id : hodge_neighborhood(x, c_id, cfg.compatible_sign)) {
          int a = x.index(a_id);
          int a_dim = x.dim_of(a);
          const AffineStack& phi = a_dim > m ? cfg.stack(cfg.phi_up, k, m, "phi (toward cofacets)")
                                             : cfg.stack(cfg.phi_down, k, m, "phi (toward facets)");
          auto other = cur.by_dim[a_dim].row(a - x.offset(a_dim));
          std::vector<double> in;
          in.insert(in.end(), own.row(c).begin(), own.row(c).end());
          in.insert(in.end(), other.begin(), other.end());
          messages.push_back(affine_apply(phi, in));
          message_width = static_cast<int>(messages.back().size());
        }
        if (message_width < 0) message_width = alpha.empty() ? 0 : alpha.input_width() - own.cols();
        std::vector<double> e = aggregate(cfg.outer, messages, message_width);
        std::vector<double> h_and_e;
        h_and_e.insert(h_and_e.end(), own.row(c).begin(), own.row(c).end());
        h_and_e.insert(h_and_e.end(), e.begin(), e.end());
        rows.push_back(affine_apply(alpha, h_and_e));
      }
      int ow = rows.empty() ? (alpha.empty() ? own.cols() : alpha.output_width())
                            : static_cast<int>(rows.front().size());
      DenseMatrix out(x.size(m), ow);
      for (int c = 0; c < x.size(m); ++c) {
        if (static_cast<int>(rows[c].size()) != ow)
          fail(errc::width_mismatch, "inconsistent alpha output width in dimension " + std::to_string(m));
        std::copy(rows[c].begin(), rows[c].end(), out.row(c).begin());
      }
      next.by_dim[m] = std::move(out);
    }
    cur = std::move(next);
  }
  return cur;
}

DenseMatrix ccxn_forward(const CellComplex& x, const DenseMatrix& h0, const CcxnWeights& weights,
                         NormVariant variant) {
  DenseMatrix a_hat = normalized_operator(adjacency_matrix(x, MatrixScope::all), variant).to_dense();
  DenseMatrix h = h0;
  std::vector<double> scratch(a_hat.cols());
  for (const DenseMatrix& w : weights.layers) {
    DenseMatrix ah(a_hat.rows(), h.cols());
    for (int i = 0; i < a_hat.rows(); ++i)
      for (int t = 0; t < h.cols(); ++t) {
        for (int j = 0; j < a_hat.cols(); ++j) scratch[j] = a_hat(i, j) * h(j, t);
        ah(i, t) = invariant_sum(scratch);
      }
    DenseMatrix out(ah.rows(), w.cols());
    for (int i = 0; i < ah.rows(); ++i)
      for (int j = 0; j < w.cols(); ++j) {
        double v = 0.0;
        for (int t = 0; t < ah.cols(); ++t) v += ah(i, t) * w(t, j);
        out(i, j) = v > 0.0 ? v : 0.0;
      }
    h = std::move(out);
  }
  return h;
}

WalkCorpus generate_walks(const CellComplex& x, int k, int length, int walks_per_cell,
                          std::uint64_t seed) {
  if (k < 0 || k >= x.dimension())
    fail(errc::k_out_of_range, "walks need 0 <= k < " + std::to_string(x.dimension()) + ", got " +
                                   std::to_string(k));
  int cells = x.size(k);
  int base = x.offset(k);

  WalkCorpus corpus;
  corpus.dim = k;
  corpus.length = length;
  corpus.walks_per_cell = walks_per_cell;
  corpus.seed = seed;

  for (int w = 0; w < walks_per_cell * cells; ++w) {
    SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(w)));
    std::vector<int> walk;
    int current = base + w % cells;
    walk.push_back(current);
    while (static_cast<int>(walk.size()) < length) {
      std::vector<CellId> hood = neighbors(x, x.id(current), Relation::adjacent);
      if (hood.empty()) break;
      std::vector<double> weights;
      double degree = 0.0;
      for (const CellId& b : hood) {
        // Transition weight = adjacency entry = shared-cofacet witness count.
        weights.push_back(static_cast<double>(co_set(x, b, x.id(current), PairSet::shared_cofacets).size()));
        degree += weights.back();
      }
      double u = rng.next_double() * degree;
      double cumulative = 0.0;
      int pick = static_cast<int>(hood.size()) - 1;
      for (std::size_t i = 0; i < hood.size(); ++i) {
        cumulative += weights[i];
        if (u < cumulative) {
          pick = static_cast<int>(i);
          break;
        }
      }
      current = x.index(hood[pick]);
      walk.push_back(current);
    }
    corpus.walks.push_back(std::move(walk));
  }
  return corpus;
}

}  // namespace cxn::reference
