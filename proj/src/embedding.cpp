#include "cxn/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cxn {

SimilarityMeasure similarity_from_adjacency(const CellComplex& x) {
  if (x.dimension() < 1) fail(errc::k_out_of_range, "similarity needs a complex of dimension >= 1");
  SimilarityMeasure sim;
  for (int k = 0; k < x.dimension(); ++k)
    sim.by_dim.push_back(adjacency_matrix(x, MatrixScope::single_dim, k));
  return sim;
}

WalkCorpus generate_walks(const CellComplex& x, int k, int length, int walks_per_cell,
                          std::uint64_t seed) {
  if (k < 0 || k >= x.dimension())
    fail(errc::k_out_of_range, "walks need 0 <= k < " + std::to_string(x.dimension()) + ", got " +
                                   std::to_string(k));
  if (length < 1 || walks_per_cell < 1)
    fail(errc::config_invalid, "walk length and walks-per-cell must be >= 1");

  SparseMatrix a = adjacency_matrix(x, MatrixScope::single_dim, k);
  int cells = x.size(k);
  int base = x.offset(k);

  WalkCorpus corpus;
  corpus.dim = k;
  corpus.length = length;
  corpus.walks_per_cell = walks_per_cell;
  corpus.seed = seed;
  corpus.walks.assign(static_cast<std::size_t>(walks_per_cell) * cells, {});

  int total = walks_per_cell * cells;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (int w = 0; w < total; ++w) {
    SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(w)));
    std::vector<int>& walk = corpus.walks[w];
    walk.reserve(length);
    int current = w % cells;  // local index; repetition r = w / cells
    walk.push_back(base + current);
    while (static_cast<int>(walk.size()) < length) {
      auto row = a.row(current);
      if (row.empty()) break;  // zero adjacency degree halts the walk
      double degree = 0.0;
      for (const Triplet& t : row) degree += t.value;
      double u = rng.next_double() * degree;
      double cumulative = 0.0;
      int next = row.back().col;
      for (const Triplet& t : row) {
        cumulative += t.value;
        if (u < cumulative) {
          next = t.col;
          break;
        }
      }
      walk.push_back(base + next);
      current = next;
    }
  }
  return corpus;
}

SparseMatrix cooccurrence_counts(const CellComplex& x, const WalkCorpus& corpus, int window) {
  if (window < 1) fail(errc::config_invalid, "window must be >= 1");
  int k = corpus.dim;
  int cells = x.size(k);
  int base = x.offset(k);
  std::vector<std::string> labels;
  labels.reserve(cells);
  for (int i = 0; i < cells; ++i) labels.push_back(x.id(base + i));

  std::vector<Triplet> triplets;
  for (const auto& walk : corpus.walks) {
    int len = static_cast<int>(walk.size());
    for (int p = 0; p < len; ++p)
      for (int q = p + 1; q < len && q <= p + window; ++q) {
        triplets.push_back({walk[p] - base, walk[q] - base, 1.0});
        triplets.push_back({walk[q] - base, walk[p] - base, 1.0});
      }
  }
  return SparseMatrix::from_triplets(cells, cells, std::move(triplets), labels, labels);
}

SimilarityMeasure cooccurrence(const CellComplex& x, const WalkCorpus& corpus, int window) {
  SparseMatrix counts = cooccurrence_counts(x, corpus, window);
  std::vector<double> sums = counts.row_sums();
  std::vector<Triplet> triplets;
  for (const Triplet& t : counts.triplets()) triplets.push_back({t.row, t.col, t.value / sums[t.row]});
  SimilarityMeasure sim;
  sim.by_dim.resize(x.dimension());
  for (int k = 0; k < x.dimension(); ++k) {
    if (k == corpus.dim)
      sim.by_dim[k] = SparseMatrix::from_triplets(counts.rows(), counts.cols(), std::move(triplets),
                                                  counts.row_labels(), counts.col_labels());
    else
      sim.by_dim[k] = SparseMatrix::from_triplets(x.size(k), x.size(k), {});
  }
  return sim;
}

EmbedMethod embed_method_from_name(const std::string& name) {
  if (name == "ip" || name == "inner_product") return EmbedMethod::inner_product;
  if (name == "lap" || name == "laplacian") return EmbedMethod::laplacian;
  if (name == "rw" || name == "random_walk") return EmbedMethod::random_walk;
  fail(errc::config_invalid, "unknown embedding method '" + name + "' (expected rw, ip or lap)");
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double v = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * b[i];
  return v;
}

void check_width(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    fail(errc::width_mismatch, "embedding widths differ: " + std::to_string(a.size()) + " vs " +
                                   std::to_string(b.size()));
}

}  // namespace

double decode(EmbedMethod method, std::span<const double> z_a, std::span<const double> z_c,
              const std::vector<std::span<const double>>* context) {
  check_width(z_a, z_c);
  switch (method) {
    case EmbedMethod::laplacian: {
      double v = 0.0;
      for (std::size_t i = 0; i < z_a.size(); ++i) v += (z_a[i] - z_c[i]) * (z_a[i] - z_c[i]);
      return v;
    }
    case EmbedMethod::inner_product:
      return std::max(0.0, dot(z_a, z_c));
    case EmbedMethod::random_walk: {
      if (context == nullptr || context->empty())
        fail(errc::missing_context, "softmax decoding needs the full same-dimension context");
      double m = dot(z_a, z_c);
      for (auto zb : *context) {
        check_width(z_a, zb);
        m = std::max(m, dot(z_a, zb));
      }
      double den = 0.0;
      for (auto zb : *context) den += std::exp(dot(z_a, zb) - m);
      return std::exp(dot(z_a, z_c) - m) / den;
    }
  }
  fail(errc::config_invalid, "unhandled decode method");
}

std::vector<PairList> pairs_from_similarity(const CellComplex& x, const SimilarityMeasure& sim,
                                            int dim_filter) {
  std::vector<PairList> out;
  for (int k = 0; k < static_cast<int>(sim.by_dim.size()); ++k) {
    if (dim_filter >= 0 && k != dim_filter) continue;
    PairList list;
    list.dim = k;
    for (const Triplet& t : sim.by_dim[k].triplets()) {
      if (!x.oriented() && t.col <= t.row) continue;  // unordered pairs once
      list.pairs.push_back({t.row, t.col, t.value});
    }
    out.push_back(std::move(list));
  }
  return out;
}

namespace {

struct SoftmaxScratch {
  std::vector<double> p;  // softmax weights over the dimension's cells
};

// Softmax of dot(z_b, z_c) over all local cells b of the dimension.
void softmax_against(const DenseMatrix& z, int base, int cells, std::span<const double> z_c,
                     SoftmaxScratch& s) {
  s.p.resize(cells);
  double m = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < cells; ++b) {
    s.p[b] = dot(z.row(base + b), z_c);
    m = std::max(m, s.p[b]);
  }
  double den = 0.0;
  for (int b = 0; b < cells; ++b) {
    s.p[b] = std::exp(s.p[b] - m);
    den += s.p[b];
  }
  for (int b = 0; b < cells; ++b) s.p[b] /= den;
}

}  // namespace

std::vector<double> loss_by_dim(EmbedMethod method, const CellComplex& x, const EmbeddingTable& emb,
                                const std::vector<PairList>& data) {
  std::vector<double> by_dim(std::max(1, x.dimension()), 0.0);
  SoftmaxScratch scratch;
  for (const PairList& list : data) {
    int base = x.offset(list.dim);
    int cells = x.size(list.dim);
    double& acc = by_dim[list.dim];
    for (const auto& pair : list.pairs) {
      auto z_c = emb.z.row(base + pair.c);
      auto z_a = emb.z.row(base + pair.a);
      switch (method) {
        case EmbedMethod::inner_product: {
          double r = dot(z_a, z_c) - pair.weight;
          acc += r * r;
          break;
        }
        case EmbedMethod::laplacian: {
          double v = 0.0;
          for (std::size_t i = 0; i < z_a.size(); ++i) v += (z_a[i] - z_c[i]) * (z_a[i] - z_c[i]);
          acc += pair.weight * v;
          break;
        }
        case EmbedMethod::random_walk: {
          softmax_against(emb.z, base, cells, z_c, scratch);
          acc += pair.weight * -std::log(scratch.p[pair.a]);
          break;
        }
      }
    }
  }
  return by_dim;
}

double loss_total(EmbedMethod method, const CellComplex& x, const EmbeddingTable& emb,
                  const std::vector<PairList>& data) {
  double total = 0.0;
  for (double v : loss_by_dim(method, x, emb, data)) total += v;
  return total;
}

DenseMatrix loss_gradient(EmbedMethod method, const CellComplex& x, const EmbeddingTable& emb,
                          const std::vector<PairList>& data) {
  DenseMatrix g(emb.z.rows(), emb.z.cols());
  SoftmaxScratch scratch;
  for (const PairList& list : data) {
    int base = x.offset(list.dim);
    int cells = x.size(list.dim);
    for (const auto& pair : list.pairs) {
      int gc = base + pair.c, ga = base + pair.a;
      auto z_c = emb.z.row(gc);
      auto z_a = emb.z.row(ga);
      int d = emb.z.cols();
      switch (method) {
        case EmbedMethod::inner_product: {
          double r = 2.0 * (dot(z_a, z_c) - pair.weight);
          for (int i = 0; i < d; ++i) {
            g(ga, i) += r * z_c[i];
            g(gc, i) += r * z_a[i];
          }
          break;
        }
        case EmbedMethod::laplacian: {
          for (int i = 0; i < d; ++i) {
            double v = 2.0 * pair.weight * (z_a[i] - z_c[i]);
            g(ga, i) += v;
            g(gc, i) -= v;
          }
          break;
        }
        case EmbedMethod::random_walk: {
          // d/dz_c = w(-z_a + sum_b p_b z_b); d/dz_b = w(p_b - [b==a]) z_c.
          // Applying the z_b rule for b == c as well yields the exact full
          // derivative, including the self-interaction terms.
          softmax_against(emb.z, base, cells, z_c, scratch);
          for (int i = 0; i < d; ++i) {
            double s = 0.0;
            for (int b = 0; b < cells; ++b) s += scratch.p[b] * emb.z(base + b, i);
            g(gc, i) += pair.weight * (s - z_a[i]);
          }
          for (int b = 0; b < cells; ++b) {
            double coeff = pair.weight * (scratch.p[b] - (b == pair.a ? 1.0 : 0.0));
            for (int i = 0; i < d; ++i) g(base + b, i) += coeff * z_c[i];
          }
          break;
        }
      }
    }
  }
  return g;
}

namespace {

void project_unit(std::span<double> row) {
  double norm = std::sqrt(dot(row, row));
  if (norm == 0.0) {
    row[0] = 1.0;
    return;
  }
  for (double& v : row) v /= norm;
}

struct FlatPair {
  int dim;
  int c;
  int a;
  double weight;
};

}  // namespace

EmbeddingTable train_embeddings(const CellComplex& x, const TrainConfig& cfg,
                                std::vector<double>* epoch_losses) {
  if (x.dimension() < 1) fail(errc::config_invalid, "embedding training needs a complex of dimension >= 1");
  if (cfg.d < 1 || cfg.epochs < 1 || !(cfg.lr > 0.0))
    fail(errc::config_invalid, "need d >= 1, epochs >= 1 and a positive learning rate");
  if (cfg.dim_filter >= x.dimension() || cfg.dim_filter < -1)
    fail(errc::config_invalid, "dimension filter " + std::to_string(cfg.dim_filter) + " outside [0, " +
                                   std::to_string(x.dimension()) + ")");
  if (cfg.method == EmbedMethod::random_walk &&
      (cfg.walk_length < 1 || cfg.walks_per_cell < 1 || cfg.window < 1))
    fail(errc::config_invalid, "random-walk training needs positive walk length, walks-per-cell and window");

  // Pair data per trained dimension. Random-walk pairs are weighted by the
  // row-normalized co-occurrence (the empirical conditional the softmax
  // decoder reconstructs), so per-pair step sizes stay bounded no matter how
  // large the corpus is.
  std::vector<PairList> data;
  if (cfg.method == EmbedMethod::random_walk) {
    for (int k = 0; k < x.dimension(); ++k) {
      if (cfg.dim_filter >= 0 && k != cfg.dim_filter) continue;
      WalkCorpus corpus =
          generate_walks(x, k, cfg.walk_length, cfg.walks_per_cell, mix_seed(cfg.seed, 0x57414C4Bull + k));
      SparseMatrix sim = cooccurrence(x, corpus, cfg.window).by_dim[k];
      PairList list;
      list.dim = k;
      for (const Triplet& t : sim.triplets()) list.pairs.push_back({t.row, t.col, t.value});
      data.push_back(std::move(list));
    }
  } else {
    data = pairs_from_similarity(x, similarity_from_adjacency(x), cfg.dim_filter);
  }

  EmbeddingTable emb;
  emb.d = cfg.d;
  emb.z = DenseMatrix(x.offset(x.dimension()), cfg.d);  // one row per cell of X^{<n}
  SplitMix64 init_rng(mix_seed(cfg.seed, 0x494E4954ull));
  double scale = 0.5 / cfg.d;
  for (double& v : emb.z.data()) v = init_rng.next_uniform(-scale, scale);
  if (cfg.method == EmbedMethod::laplacian)
    for (int i = 0; i < emb.z.rows(); ++i) project_unit(emb.z.row(i));

  std::vector<FlatPair> pairs;
  for (const PairList& list : data)
    for (const auto& p : list.pairs) pairs.push_back({list.dim, p.c, p.a, p.weight});

  SoftmaxScratch scratch;
  std::vector<double> z_c_old(cfg.d), z_a_old(cfg.d), grad_c(cfg.d);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double lr = cfg.lr;
    if (cfg.method == EmbedMethod::random_walk && cfg.epochs > 1)
      lr = cfg.lr * (1.0 - 0.9 * static_cast<double>(epoch) / (cfg.epochs - 1));

    SplitMix64 order_rng(mix_seed(cfg.seed, 0xE70C4E5ull + epoch));
    shuffle(pairs, order_rng);

    for (const FlatPair& pair : pairs) {
      int base = x.offset(pair.dim);
      int cells = x.size(pair.dim);
      int gc = base + pair.c, ga = base + pair.a;
      switch (cfg.method) {
        case EmbedMethod::inner_product: {
          auto z_c = emb.z.row(gc), z_a = emb.z.row(ga);
          double r = 2.0 * (dot(z_a, z_c) - pair.weight);
          std::copy(z_a.begin(), z_a.end(), z_a_old.begin());
          for (int i = 0; i < cfg.d; ++i) z_a[i] -= lr * r * z_c[i];
          for (int i = 0; i < cfg.d; ++i) z_c[i] -= lr * r * z_a_old[i];
          break;
        }
        case EmbedMethod::laplacian: {
          auto z_c = emb.z.row(gc), z_a = emb.z.row(ga);
          for (int i = 0; i < cfg.d; ++i) {
            double v = 2.0 * pair.weight * (z_a[i] - z_c[i]);
            z_a[i] -= lr * v;
            z_c[i] += lr * v;
          }
          project_unit(z_a);
          if (ga != gc) project_unit(z_c);
          break;
        }
        case EmbedMethod::random_walk: {
          auto z_c = emb.z.row(gc), z_a = emb.z.row(ga);
          std::copy(z_c.begin(), z_c.end(), z_c_old.begin());
          softmax_against(emb.z, base, cells, z_c, scratch);
          for (int i = 0; i < cfg.d; ++i) {
            double s = 0.0;
            for (int b = 0; b < cells; ++b) s += scratch.p[b] * emb.z(base + b, i);
            grad_c[i] = pair.weight * (s - z_a[i]);
          }
          for (int b = 0; b < cells; ++b) {
            double coeff = lr * pair.weight * (scratch.p[b] - (b == pair.a ? 1.0 : 0.0));
            auto z_b = emb.z.row(base + b);
            for (int i = 0; i < cfg.d; ++i) z_b[i] -= coeff * z_c_old[i];
          }
          for (int i = 0; i < cfg.d; ++i) z_c[i] -= lr * grad_c[i];
          break;
        }
      }
    }
    if (epoch_losses != nullptr)
      epoch_losses->push_back(loss_total(cfg.method, x, emb, data));
  }
  return emb;
}

}  // namespace cxn
