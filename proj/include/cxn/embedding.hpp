#ifndef CXN_EMBEDDING_HPP
#define CXN_EMBEDDING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cxn/cell_complex.hpp"
#include "cxn/dense.hpp"
#include "cxn/operators.hpp"
#include "cxn/sparse.hpp"
#include "cxn/util.hpp"

namespace cxn {

/// One embedding row per cell of X^{<n}, in canonical order (row index ==
/// canonical cell index).
struct EmbeddingTable {
  int d = 0;
  DenseMatrix z;
};

/// Per-dimension nonnegative similarity blocks over k-cells, 0 <= k < n.
struct SimilarityMeasure {
  std::vector<SparseMatrix> by_dim;
};

/// Adjacency similarity: per-dimension shared-cofacet witness counts.
SimilarityMeasure similarity_from_adjacency(const CellComplex& x);

struct WalkCorpus {
  int dim = 0;
  int length = 0;
  int walks_per_cell = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> walks;  // global cell indices
};

/// walks_per_cell seeded walks from every k-cell. Steps move to b with
/// probability proportional to the adjacency row entry (the shared-cofacet
/// count); a walk halts early at a zero-degree cell. `length` counts cells,
/// so length 1 means start cells only. Walk w draws from an independent
/// stream derived from (seed, w); walks are generated in parallel, the
/// corpus order (repetition-major, then canonical start cell) and content
/// are seed-determined.
WalkCorpus generate_walks(const CellComplex& x, int k, int length, int walks_per_cell,
                          std::uint64_t seed);

/// Raw window co-occurrence counts over the corpus dimension: entry (c, a)
/// counts how often a appears within `window` positions of c (both
/// directions), in local k-cell indices.
SparseMatrix cooccurrence_counts(const CellComplex& x, const WalkCorpus& corpus, int window);

/// Row-normalized empirical p(a|c): entry (c, a) = count(a,c) / sum_b
/// count(b,c). Rows with no co-occurrences stay empty.
SimilarityMeasure cooccurrence(const CellComplex& x, const WalkCorpus& corpus, int window);

enum class EmbedMethod { inner_product, laplacian, random_walk };

EmbedMethod embed_method_from_name(const std::string& name);

/// Similarity decoders. laplacian: squared distance; inner_product: dot
/// product clamped at zero for reporting (losses and gradients use the raw
/// dot); random_walk: softmax weight of z_c against the context list, which
/// must hold the embeddings of every same-dimension cell.
double decode(EmbedMethod method, std::span<const double> z_a, std::span<const double> z_c,
              const std::vector<std::span<const double>>* context = nullptr);

struct TrainConfig {
  EmbedMethod method = EmbedMethod::random_walk;
  int d = 16;
  int epochs = 50;
  double lr = 0.025;
  std::uint64_t seed = 0;
  int walk_length = 20;
  int walks_per_cell = 10;
  int window = 3;
  int dim_filter = -1;  // -1: train every k < n; otherwise the single k
};

/// Training pairs for one dimension: ordered (c, a) with a positive weight.
/// inner_product/laplacian weight = similarity value (each unordered pair
/// once for unoriented complexes); random_walk weight = row-normalized
/// co-occurrence, the empirical conditional p(a|c).
struct PairList {
  int dim = 0;
  struct Pair {
    int c = 0;  // local index within the dimension
    int a = 0;
    double weight = 0.0;
  };
  std::vector<Pair> pairs;
};

std::vector<PairList> pairs_from_similarity(const CellComplex& x, const SimilarityMeasure& sim,
                                            int dim_filter);

/// Reconstruction loss, one addend per pair, summed per dimension k and in
/// total. `data` holds the target weights: similarity values for
/// inner_product/laplacian, empirical co-occurrence conditionals for
/// random_walk (where each addend is weight * -log p(a|c)).
std::vector<double> loss_by_dim(EmbedMethod method, const CellComplex& x, const EmbeddingTable& emb,
                                const std::vector<PairList>& data);
double loss_total(EmbedMethod method, const CellComplex& x, const EmbeddingTable& emb,
                  const std::vector<PairList>& data);

/// Full-batch analytic gradient of loss_total with respect to every
/// embedding row; same shape as emb.z.
DenseMatrix loss_gradient(EmbedMethod method, const CellComplex& x, const EmbeddingTable& emb,
                          const std::vector<PairList>& data);

/// Seeded SGD over shuffled pair lists. Initialization is uniform in
/// [-0.5/d, 0.5/d]; the laplacian method keeps every row on the unit sphere
/// (projected at initialization and after each step); the random_walk
/// learning rate decays linearly to 10% of its start value across epochs.
/// Appends the post-epoch total loss to epoch_losses when given.
EmbeddingTable train_embeddings(const CellComplex& x, const TrainConfig& cfg,
                                std::vector<double>* epoch_losses = nullptr);

}  // namespace cxn

#endif
