// Shared generators and oracles for the test binaries. Everything here is
// deliberately independent of the library's internal routes: complexes are
// produced through the public builders and expected values are recomputed
// from first principles where a test needs an oracle.

#ifndef CXN_TEST_HELPERS_HPP
#define CXN_TEST_HELPERS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "cxn/cell_complex.hpp"
#include "cxn/embedding.hpp"
#include "cxn/io.hpp"
#include "cxn/scheme.hpp"
#include "cxn/util.hpp"

namespace cxn::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(CXN_FIXTURES_DIR) + "/" + name;
}

inline CellComplex load_fixture(const std::string& name) {
  std::string text = read_file(fixture_path(name));
  if (name.size() >= 4 && name.compare(name.size() - 4, 4, ".off") == 0) return parse_off(text);
  return parse_complex(text);
}

/// Random simplicial complex with at least one edge (so dimension >= 1).
inline CellComplex random_simplicial(SplitMix64& rng, int max_vertices = 8, int max_simplices = 12,
                                     int max_arity = 5) {
  for (;;) {
    int vertex_count = 2 + static_cast<int>(rng.next_below(max_vertices - 1));
    int simplex_count = 1 + static_cast<int>(rng.next_below(max_simplices));
    std::vector<std::vector<std::string>> maximal;
    bool has_edge = false;
    for (int s = 0; s < simplex_count; ++s) {
      int arity = 1 + static_cast<int>(rng.next_below(std::min(max_arity, vertex_count)));
      std::vector<int> pool(vertex_count);
      for (int i = 0; i < vertex_count; ++i) pool[i] = i;
      shuffle(pool, rng);
      std::vector<std::string> simplex;
      for (int i = 0; i < arity; ++i) simplex.push_back("s" + std::to_string(pool[i]));
      has_edge = has_edge || arity >= 2;
      maximal.push_back(std::move(simplex));
    }
    if (has_edge) return build_simplicial(maximal);
  }
}

/// Random polygonal 2-complex: a handful of cycles over a shared vertex
/// pool, so faces share edges often.
inline CellComplex random_polygonal(SplitMix64& rng, int max_vertices = 10, int max_faces = 5) {
  int vertex_count = 4 + static_cast<int>(rng.next_below(max_vertices - 3));
  int face_count = 1 + static_cast<int>(rng.next_below(max_faces));
  std::vector<std::vector<int>> faces;
  for (int f = 0; f < face_count; ++f) {
    int arity = 3 + static_cast<int>(rng.next_below(std::min(4, vertex_count - 2)));
    std::vector<int> pool(vertex_count);
    for (int i = 0; i < vertex_count; ++i) pool[i] = i;
    shuffle(pool, rng);
    faces.push_back(std::vector<int>(pool.begin(), pool.begin() + arity));
  }
  return build_polygonal(vertex_count, faces);
}

/// A grab-bag of shapes and orientation flags for property tests.
inline CellComplex random_complex(SplitMix64& rng) {
  switch (rng.next_below(4)) {
    case 0: return random_simplicial(rng);
    case 1: return random_polygonal(rng);
    case 2: return random_simplicial(rng).as_unoriented();
    default: return random_polygonal(rng).as_unoriented();
  }
}

/// Random Erdos-Renyi graph as an unoriented 1-complex; regenerates until
/// at least one edge exists.
inline CellComplex random_graph(SplitMix64& rng, int max_vertices = 12, double p = 0.4) {
  for (;;) {
    int vertex_count = 2 + static_cast<int>(rng.next_below(max_vertices - 1));
    std::vector<Cell> specs;
    for (int i = 0; i < vertex_count; ++i) specs.push_back({"v" + std::to_string(i), 0, {}});
    bool has_edge = false;
    for (int i = 0; i < vertex_count; ++i)
      for (int j = i + 1; j < vertex_count; ++j)
        if (rng.next_double() < p) {
          specs.push_back({"e" + std::to_string(i) + "_" + std::to_string(j), 1,
                           {{"v" + std::to_string(i), +1}, {"v" + std::to_string(j), +1}}});
          has_edge = true;
        }
    if (has_edge) return build_complex(std::move(specs), false);
  }
}

/// Uniform random features, one block per dimension 0..n with the given
/// widths (widths.size() must be n+1).
inline FeatureMap random_features(const CellComplex& x, const std::vector<int>& widths,
                                  std::uint64_t seed) {
  FeatureMap h;
  for (int m = 0; m <= x.dimension(); ++m)
    h.by_dim.push_back(random_matrix(x.size(m), widths[m], mix_seed(seed, m), 1.0));
  return h;
}

inline AggregatorKind random_aggregator(SplitMix64& rng) {
  switch (rng.next_below(3)) {
    case 0: return AggregatorKind::sum;
    case 1: return AggregatorKind::mean;
    default: return AggregatorKind::max;
  }
}

/// Random width-preserving scheme configuration over per-dimension widths:
/// after every layer, m-cells keep width widths[m].
inline SchemeConfig random_scheme_config(Scheme scheme, const std::vector<int>& widths, int depth,
                                         SplitMix64& rng) {
  int n = static_cast<int>(widths.size()) - 1;
  SchemeConfig cfg;
  cfg.scheme = scheme;
  cfg.depth = depth;
  cfg.outer = random_aggregator(rng);
  cfg.inner = random_aggregator(rng);
  cfg.alpha.resize(depth);
  cfg.phi.resize(depth);
  cfg.phi_down.resize(depth);
  cfg.phi_up.resize(depth);
  auto act = [&rng] {
    switch (rng.next_below(3)) {
      case 0: return Activation::identity;
      case 1: return Activation::relu;
      default: return Activation::tanh_;
    }
  };
  for (int k = 0; k < depth; ++k)
    for (int m = 0; m <= n; ++m) {
      int w = widths[m];
      int message = 1 + static_cast<int>(rng.next_below(4));
      if (scheme == Scheme::adjacency && m < n) {
        cfg.phi[k][m] = random_stack({2 * w + widths[m + 1], message}, act(), rng.next(), 0.6);
        cfg.alpha[k][m] = random_stack({w + message, w}, act(), rng.next(), 0.6);
      } else if (scheme == Scheme::coadjacency && m > 0) {
        cfg.phi[k][m] = random_stack({2 * w + widths[m - 1], message}, act(), rng.next(), 0.6);
        cfg.alpha[k][m] = random_stack({w + message, w}, act(), rng.next(), 0.6);
      } else if (scheme == Scheme::hodge) {
        if (m > 0) cfg.phi_down[k][m] = random_stack({w + widths[m - 1], message}, act(), rng.next(), 0.6);
        if (m < n) cfg.phi_up[k][m] = random_stack({w + widths[m + 1], message}, act(), rng.next(), 0.6);
        cfg.alpha[k][m] = random_stack({w + message, w}, act(), rng.next(), 0.6);
      }
    }
  return cfg;
}

/// Structurally identical complex with shuffled declaration order and
/// renamed ids; to_new[old canonical index] = new canonical index. Renaming
/// keeps dimensions, so to_new permutes within each dimension block.
struct Relabeled {
  CellComplex x;
  std::vector<int> to_new;
};

/// Worst relative deviation between the analytic gradient and a central
/// finite difference of loss_total, with the denominator floored at 1 so
/// near-zero components are compared absolutely.
inline double max_gradient_rel_error(EmbedMethod method, const CellComplex& x, EmbeddingTable emb,
                                     const std::vector<PairList>& data, double step) {
  DenseMatrix analytic = loss_gradient(method, x, emb, data);
  double worst = 0.0;
  for (int r = 0; r < emb.z.rows(); ++r)
    for (int c = 0; c < emb.z.cols(); ++c) {
      double saved = emb.z(r, c);
      emb.z(r, c) = saved + step;
      double up = loss_total(method, x, emb, data);
      emb.z(r, c) = saved - step;
      double down = loss_total(method, x, emb, data);
      emb.z(r, c) = saved;
      double fd = (up - down) / (2.0 * step);
      double err = std::abs(analytic(r, c) - fd) / std::max(1.0, std::abs(fd));
      worst = std::max(worst, err);
    }
  return worst;
}

/// Training pairs of the kind train_embeddings consumes, for gradient and
/// loss tests: similarity pairs for ip/lap, normalized co-occurrence for rw.
inline std::vector<PairList> training_pairs(const CellComplex& x, EmbedMethod method,
                                            std::uint64_t seed) {
  if (method != EmbedMethod::random_walk)
    return pairs_from_similarity(x, similarity_from_adjacency(x), -1);
  std::vector<PairList> data;
  for (int k = 0; k < x.dimension(); ++k) {
    WalkCorpus corpus = generate_walks(x, k, 6, 2, mix_seed(seed, k));
    SparseMatrix sim = cooccurrence(x, corpus, 2).by_dim[k];
    PairList list;
    list.dim = k;
    for (const Triplet& t : sim.triplets()) list.pairs.push_back({t.row, t.col, t.value});
    data.push_back(std::move(list));
  }
  return data;
}

inline Relabeled relabel(const CellComplex& x, SplitMix64& rng) {
  int count = x.size();
  std::vector<int> tag(count);
  for (int i = 0; i < count; ++i) tag[i] = i;
  shuffle(tag, rng);
  std::vector<std::string> new_id(count);
  for (int i = 0; i < count; ++i) new_id[i] = "r" + std::to_string(tag[i]);

  std::vector<Cell> specs;
  for (int i = 0; i < count; ++i) {
    Cell spec{new_id[i], x.dim_of(i), {}};
    for (auto [f, sign] : x.boundary_of(i)) spec.boundary.push_back({new_id[f], sign});
    specs.push_back(std::move(spec));
  }
  shuffle(specs, rng);

  Relabeled out{build_complex(std::move(specs), x.oriented()), {}};
  out.to_new.resize(count);
  for (int i = 0; i < count; ++i) out.to_new[i] = out.x.index(new_id[i]);
  return out;
}

}  // namespace cxn::test

#endif
