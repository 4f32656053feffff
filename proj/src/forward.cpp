#include "cxn/forward.hpp"

#include <algorithm>

namespace cxn {

namespace {

void check_coverage(const CellComplex& x, const FeatureMap& h0) {
  if (static_cast<int>(h0.by_dim.size()) != x.dimension() + 1)
    fail(errc::missing_feature, "feature map covers " + std::to_string(h0.by_dim.size()) +
                                    " dimensions, complex has " + std::to_string(x.dimension() + 1));
  for (int m = 0; m <= x.dimension(); ++m)
    if (h0.by_dim[m].rows() != x.size(m))
      fail(errc::missing_feature, "feature map has " + std::to_string(h0.by_dim[m].rows()) +
                                      " rows for dimension " + std::to_string(m) + ", complex has " +
                                      std::to_string(x.size(m)) + " cells");
}

// Validates internal width chaining and the expected input width up front,
// so applying the stack inside a parallel region cannot throw.
void check_stack(const AffineStack& stack, int input_width, const char* role, int m) {
  int width = input_width;
  for (const AffineLayer& layer : stack.layers) {
    if (layer.weight.rows() != width)
      fail(errc::width_mismatch, std::string(role) + " stack for dimension " + std::to_string(m) +
                                     " expects input width " + std::to_string(layer.weight.rows()) +
                                     ", gets " + std::to_string(width));
    if (!layer.bias.empty() && static_cast<int>(layer.bias.size()) != layer.weight.cols())
      fail(errc::width_mismatch, std::string(role) + " stack for dimension " + std::to_string(m) +
                                     " has a bias of width " + std::to_string(layer.bias.size()) +
                                     " on a layer of output width " + std::to_string(layer.weight.cols()));
    width = layer.weight.cols();
  }
}

std::vector<double> concat(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<double> concat(std::span<const double> a, std::span<const double> b, std::span<const double> c) {
  std::vector<double> out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace

NeighborLists build_neighbor_lists(const CellComplex& x, Scheme scheme) {
  if (scheme == Scheme::hodge)
    fail(errc::config_invalid, "neighbor lists cover the adjacency and coadjacency schemes");
  bool adj = scheme == Scheme::adjacency;
  Relation relation = adj ? Relation::adjacent : Relation::coadjacent;
  PairSet witness_kind = adj ? PairSet::shared_cofacets : PairSet::shared_facets;
  int n = x.dimension();

  NeighborLists lists;
  lists.routes.resize(n + 1);
  for (int m = 0; m <= n; ++m) {
    bool updated = adj ? m < n : m > 0;
    if (!updated) continue;
    int base = x.offset(m);
    int witness_base = x.offset(adj ? m + 1 : m - 1);
    lists.routes[m].resize(x.size(m));
    for (int c = 0; c < x.size(m); ++c) {
      auto& edges = lists.routes[m][c];
      for (int a : neighbor_indices(x, base + c, relation)) {
        NeighborLists::Edge edge;
        edge.neighbor = a - base;
        for (int w : co_set_indices(x, a, base + c, witness_kind)) edge.witnesses.push_back(w - witness_base);
        edges.push_back(std::move(edge));
      }
    }
  }
  return lists;
}

FeatureMap cxn_forward(const CellComplex& x, const FeatureMap& h0, const SchemeConfig& cfg) {
  if (cfg.scheme == Scheme::hodge) return cxn_forward_hodge(x, h0, cfg);
  check_coverage(x, h0);
  if (cfg.depth < 1) fail(errc::config_invalid, "depth must be >= 1");

  bool adj = cfg.scheme == Scheme::adjacency;
  int n = x.dimension();
  NeighborLists lists = build_neighbor_lists(x, cfg.scheme);

  FeatureMap cur = h0;
  for (int k = 0; k < cfg.depth; ++k) {
    FeatureMap next = cur;
    for (int m = 0; m <= n; ++m) {
      bool updated = adj ? m < n : m > 0;
      if (!updated) continue;

      const AffineStack& phi = cfg.stack(cfg.phi, k, m, "phi");
      const AffineStack& alpha = cfg.stack(cfg.alpha, k, m, "alpha");

      // The inner aggregate of the dimension bordering the frozen side reads
      // the initial features; every other read is from layer k-1. (For the
      // adjacency scheme the two coincide anyway: top cells never update.)
      int source_dim = adj ? m + 1 : m - 1;
      bool frozen_read = adj ? m == n - 1 : m == 1;
      const DenseMatrix& source = frozen_read ? h0.by_dim[source_dim] : cur.by_dim[source_dim];
      const DenseMatrix& own = cur.by_dim[m];

      int lw = own.cols();
      int fw = source.cols();
      check_stack(phi, 2 * lw + fw, "phi", m);
      int phi_out = phi.empty() ? 2 * lw + fw : phi.output_width();
      check_stack(alpha, lw + phi_out, "alpha", m);
      int ow = alpha.empty() ? lw + phi_out : alpha.output_width();

      int rows = x.size(m);
      DenseMatrix out(rows, ow);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
      for (int c = 0; c < rows; ++c) {
        std::vector<std::vector<double>> messages;
        std::vector<std::vector<double>> inner;
        for (const NeighborLists::Edge& edge : lists.routes[m][c]) {
          inner.clear();
          for (int w : edge.witnesses) {
            auto row = source.row(w);
            inner.emplace_back(row.begin(), row.end());
          }
          std::vector<double> f = aggregate(cfg.inner, inner, fw);
          messages.push_back(affine_apply(phi, concat(own.row(c), own.row(edge.neighbor), f)));
        }
        std::vector<double> e = aggregate(cfg.outer, messages, phi_out);
        std::vector<double> updated_row = affine_apply(alpha, concat(own.row(c), e));
        std::copy(updated_row.begin(), updated_row.end(), out.row(c).begin());
      }
      next.by_dim[m] = std::move(out);
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<CellId> hodge_neighborhood(const CellComplex& x, const CellId& c, int compatible_sign) {
  if (!x.oriented()) fail(errc::not_oriented, "hodge neighborhood needs an oriented complex");
  int i = x.index(c);
  std::vector<int> picked;
  for (auto [f, sign] : x.boundary_of(i))
    if (sign == compatible_sign) picked.push_back(f);
  for (auto [e, sign] : x.cofacets_of(i))
    if (sign == compatible_sign) picked.push_back(e);
  std::sort(picked.begin(), picked.end());
  std::vector<CellId> out;
  for (int p : picked) out.push_back(x.id(p));
  return out;
}

FeatureMap cxn_forward_hodge(const CellComplex& x, const FeatureMap& h0, const SchemeConfig& cfg) {
  if (!x.oriented()) fail(errc::not_oriented, "hodge scheme needs an oriented complex");
  check_coverage(x, h0);
  if (cfg.depth < 1) fail(errc::config_invalid, "depth must be >= 1");
  int n = x.dimension();

  // I(c) per cell, split by neighbor dimension: (global neighbor, is_up).
  std::vector<std::vector<std::pair<int, bool>>> hood(x.size());
  std::vector<bool> wants_down(n + 1, false), wants_up(n + 1, false);
  for (int i = 0; i < x.size(); ++i) {
    int m = x.dim_of(i);
    for (auto [f, sign] : x.boundary_of(i))
      if (sign == cfg.compatible_sign) {
        hood[i].push_back({f, false});
        wants_down[m] = true;
      }
    for (auto [e, sign] : x.cofacets_of(i))
      if (sign == cfg.compatible_sign) {
        hood[i].push_back({e, true});
        wants_up[m] = true;
      }
  }

  FeatureMap cur = h0;
  for (int k = 0; k < cfg.depth; ++k) {
    FeatureMap next = cur;
    for (int m = 0; m <= n; ++m) {
      const AffineStack& alpha = cfg.stack(cfg.alpha, k, m, "alpha");
      const AffineStack* phi_down =
          wants_down[m] ? &cfg.stack(cfg.phi_down, k, m, "phi (toward facets)") : nullptr;
      const AffineStack* phi_up = wants_up[m] ? &cfg.stack(cfg.phi_up, k, m, "phi (toward cofacets)") : nullptr;

      const DenseMatrix& own = cur.by_dim[m];
      int lw = own.cols();
      int base = x.offset(m);
      int rows = x.size(m);

      int message_width = -1;
      if (phi_down != nullptr) {
        check_stack(*phi_down, lw + cur.width(m - 1), "phi (toward facets)", m);
        message_width = phi_down->empty() ? lw + cur.width(m - 1) : phi_down->output_width();
      }
      if (phi_up != nullptr) {
        check_stack(*phi_up, lw + cur.width(m + 1), "phi (toward cofacets)", m);
        int up_width = phi_up->empty() ? lw + cur.width(m + 1) : phi_up->output_width();
        if (message_width >= 0 && up_width != message_width)
          fail(errc::width_mismatch, "phi stacks for dimension " + std::to_string(m) +
                                         " disagree on output width (" + std::to_string(message_width) +
                                         " vs " + std::to_string(up_width) + ")");
        message_width = up_width;
      }
      if (message_width < 0) message_width = alpha.empty() ? 0 : alpha.input_width() - lw;
      if (message_width < 0)
        fail(errc::width_mismatch, "cannot infer message width for dimension " + std::to_string(m));
      check_stack(alpha, lw + message_width, "alpha", m);
      int ow = alpha.empty() ? lw + message_width : alpha.output_width();

      DenseMatrix out(rows, ow);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
      for (int c = 0; c < rows; ++c) {
        std::vector<std::vector<double>> messages;
        for (auto [a, up] : hood[base + c]) {
          const AffineStack& phi = up ? *phi_up : *phi_down;
          int a_dim = up ? m + 1 : m - 1;
          const DenseMatrix& other = cur.by_dim[a_dim];
          messages.push_back(affine_apply(phi, concat(own.row(c), other.row(a - x.offset(a_dim)))));
        }
        std::vector<double> e = aggregate(cfg.outer, messages, message_width);
        std::vector<double> updated_row = affine_apply(alpha, concat(own.row(c), e));
        std::copy(updated_row.begin(), updated_row.end(), out.row(c).begin());
      }
      next.by_dim[m] = std::move(out);
    }
    cur = std::move(next);
  }
  return cur;
}

DenseMatrix ccxn_forward(const CellComplex& x, const DenseMatrix& h0, const CcxnWeights& weights,
                         NormVariant variant) {
  SparseMatrix a_hat = normalized_operator(adjacency_matrix(x, MatrixScope::all), variant);
  if (h0.rows() != a_hat.rows())
    fail(errc::shape_mismatch, "H0 has " + std::to_string(h0.rows()) + " rows, X^{<n} has " +
                                   std::to_string(a_hat.rows()) + " cells");
  DenseMatrix h = h0;
  for (const DenseMatrix& w : weights.layers) {
    if (w.rows() != h.cols() || w.cols() != w.rows())
      fail(errc::shape_mismatch, "weight matrix must be " + std::to_string(h.cols()) + "x" +
                                     std::to_string(h.cols()) + ", got " + std::to_string(w.rows()) + "x" +
                                     std::to_string(w.cols()));
    h = matmul(multiply(a_hat, h), w);
    for (double& v : h.data()) v = v > 0.0 ? v : 0.0;
  }
  return h;
}

}  // namespace cxn
