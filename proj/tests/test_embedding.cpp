#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <optional>

#include "doctest.h"
#include "helpers.hpp"

using namespace cxn;

namespace {

template <typename F>
std::optional<errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

CellComplex path_graph() {
  return build_complex(
      {
          {"a", 0, {}},
          {"b", 0, {}},
          {"c", 0, {}},
          {"ab", 1, {{"a", +1}, {"b", +1}}},
          {"bc", 1, {{"b", +1}, {"c", +1}}},
      },
      false);
}

double row_dot(const DenseMatrix& z, int i, int j) {
  double v = 0.0;
  for (int k = 0; k < z.cols(); ++k) v += z(i, k) * z(j, k);
  return v;
}

}  // namespace

TEST_CASE("similarity blocks are the per-dimension adjacency matrices") {
  CellComplex x = test::load_fixture("triangle.cxc");
  SimilarityMeasure sim = similarity_from_adjacency(x);
  REQUIRE(sim.by_dim.size() == 2);
  CHECK(sim.by_dim[0] == adjacency_matrix(x, MatrixScope::single_dim, 0));
  CHECK(sim.by_dim[1] == adjacency_matrix(x, MatrixScope::single_dim, 1));
  CHECK(thrown_code([] {
          similarity_from_adjacency(build_complex({{"v", 0, {}}}, true));
        }) == errc::k_out_of_range);
}

TEST_CASE("walk corpora are seeded, repetition-major, and halt at dead ends") {
  CellComplex x = test::load_fixture("multiedge_path.cxc");
  WalkCorpus corpus = generate_walks(x, 0, 4, 3, 99);
  CHECK(corpus.walks.size() == 12);
  for (int w = 0; w < 12; ++w) CHECK(corpus.walks[w][0] == w % 4);  // v1..v4 cyclically

  WalkCorpus again = generate_walks(x, 0, 4, 3, 99);
  CHECK(corpus.walks == again.walks);
  WalkCorpus other = generate_walks(x, 0, 4, 3, 100);
  CHECK(corpus.walks != other.walks);

  // Oriented v4 has no outgoing adjacency, so its walks stay singletons.
  int v4 = x.index("v4");
  for (int w = 0; w < 12; ++w) {
    CHECK(corpus.walks[w].size() <= 4);
    if (corpus.walks[w][0] == v4) CHECK(corpus.walks[w].size() == 1);
  }

  WalkCorpus singletons = generate_walks(x, 0, 1, 2, 7);
  for (const auto& walk : singletons.walks) CHECK(walk.size() == 1);

  CHECK(thrown_code([&] { generate_walks(x, 2, 4, 1, 0); }) == errc::k_out_of_range);
  CHECK(thrown_code([&] { generate_walks(x, 0, 0, 1, 0); }) == errc::config_invalid);
  CHECK(thrown_code([&] { generate_walks(x, 0, 4, 0, 0); }) == errc::config_invalid);

  // Edge walks exist too: dimension 1 of the same fixture.
  WalkCorpus edges = generate_walks(x, 1, 3, 1, 5);
  CHECK(edges.walks.size() == 7);
  for (const auto& walk : edges.walks)
    for (int cell : walk) CHECK(x.dim_of(cell) == 1);
}

TEST_CASE("empirical transition frequencies track the adjacency row weights") {
  CellComplex x = path_graph();
  WalkCorpus corpus = generate_walks(x, 0, 2, 2000, 31);
  int from_b = 0, to_a = 0;
  for (const auto& walk : corpus.walks) {
    if (walk[0] != x.index("b") || walk.size() < 2) continue;
    ++from_b;
    if (walk[1] == x.index("a")) ++to_a;
  }
  CHECK(from_b == 2000);
  CHECK(std::abs(static_cast<double>(to_a) / from_b - 0.5) < 0.05);
}

TEST_CASE("co-occurrence counts look through the window in both directions") {
  CellComplex x = path_graph();
  WalkCorpus corpus;
  corpus.dim = 0;
  corpus.length = 3;
  corpus.walks_per_cell = 1;
  corpus.seed = 0;
  corpus.walks = {{x.index("a"), x.index("b"), x.index("c")}};

  SparseMatrix w1 = cooccurrence_counts(x, corpus, 1);
  CHECK(w1.at(0, 1) == 1.0);
  CHECK(w1.at(1, 0) == 1.0);
  CHECK(w1.at(1, 2) == 1.0);
  CHECK(w1.at(2, 1) == 1.0);
  CHECK(w1.at(0, 2) == 0.0);
  CHECK(w1.row_labels()[0] == "a");

  SparseMatrix w2 = cooccurrence_counts(x, corpus, 2);
  CHECK(w2.at(0, 2) == 1.0);
  CHECK(w2.at(2, 0) == 1.0);

  SimilarityMeasure sim = cooccurrence(x, corpus, 2);
  REQUIRE(sim.by_dim.size() == 1);
  std::vector<double> sums = sim.by_dim[0].row_sums();
  for (double s : sums) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  // Row b: one co-occurrence each with a and c inside the window.
  CHECK(sim.by_dim[0].at(1, 0) == 0.5);
  CHECK(sim.by_dim[0].at(1, 2) == 0.5);

  CHECK(thrown_code([&] { cooccurrence_counts(x, corpus, 0); }) == errc::config_invalid);
}

TEST_CASE("decoders compute the documented scores") {
  std::vector<double> za = {1.0, 0.0}, zc = {0.5, 2.0};
  CHECK(decode(EmbedMethod::laplacian, za, zc) == 0.25 + 4.0);
  CHECK(decode(EmbedMethod::inner_product, za, zc) == 0.5);
  std::vector<double> zneg = {-1.0, 0.0};
  CHECK(decode(EmbedMethod::inner_product, zneg, zc) == 0.0);  // clamped report

  DenseMatrix z(3, 2);
  z(0, 0) = 1.0;
  z(1, 0) = 0.4;
  z(1, 1) = -0.3;
  z(2, 1) = 0.8;
  std::vector<std::span<const double>> context;
  for (int i = 0; i < 3; ++i) context.push_back(z.row(i));
  for (int c = 0; c < 3; ++c) {
    double total = 0.0;
    for (int a = 0; a < 3; ++a)
      total += decode(EmbedMethod::random_walk, z.row(c), z.row(a), &context);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(thrown_code([&] { decode(EmbedMethod::random_walk, za, zc); }) == errc::missing_context);
  std::vector<double> wide = {1.0, 2.0, 3.0};
  CHECK(thrown_code([&] { decode(EmbedMethod::laplacian, za, wide); }) == errc::width_mismatch);
}

TEST_CASE("pair lists take unordered pairs once, ordered pairs as-is") {
  CellComplex tri = test::load_fixture("triangle.cxc");
  std::vector<PairList> unordered = pairs_from_similarity(tri, similarity_from_adjacency(tri), -1);
  REQUIRE(unordered.size() == 2);
  CHECK(unordered[0].pairs.size() == 3);
  CHECK(unordered[1].pairs.size() == 3);

  CellComplex path = test::load_fixture("multiedge_path.cxc");
  std::vector<PairList> ordered = pairs_from_similarity(path, similarity_from_adjacency(path), -1);
  CHECK(ordered[0].pairs.size() == 5);  // all nonzero sign-split entries

  std::vector<PairList> only_edges = pairs_from_similarity(tri, similarity_from_adjacency(tri), 1);
  REQUIRE(only_edges.size() == 1);
  CHECK(only_edges[0].dim == 1);
}

TEST_CASE("losses match hand-computed values on a single edge") {
  CellComplex x = build_complex(
      {{"a", 0, {}}, {"b", 0, {}}, {"e", 1, {{"a", +1}, {"b", +1}}}}, false);
  std::vector<PairList> data = pairs_from_similarity(x, similarity_from_adjacency(x), -1);
  REQUIRE(data.size() == 1);
  REQUIRE(data[0].pairs.size() == 1);
  CHECK(data[0].pairs[0].weight == 1.0);

  EmbeddingTable emb;
  emb.d = 2;
  emb.z = DenseMatrix(2, 2);
  emb.z(0, 0) = 1.0;
  emb.z(1, 0) = 0.5;

  CHECK(loss_total(EmbedMethod::inner_product, x, emb, data) == 0.25);
  CHECK(loss_total(EmbedMethod::laplacian, x, emb, data) == 0.25);
  // p(b|a) = e^{0.5} / (e^{1} + e^{0.5}); the loss is its negative log.
  double expected = -std::log(std::exp(0.5) / (std::exp(1.0) + std::exp(0.5)));
  CHECK(loss_total(EmbedMethod::random_walk, x, emb, data) ==
        doctest::Approx(expected).epsilon(1e-14));

  std::vector<double> per_dim = loss_by_dim(EmbedMethod::inner_product, x, emb, data);
  CHECK(per_dim == std::vector<double>{0.25});
}

TEST_CASE("analytic gradients agree with central finite differences") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    CellComplex x = test::random_complex(rng);
    int d = 2 + static_cast<int>(rng.next_below(3));
    EmbeddingTable emb;
    emb.d = d;
    emb.z = random_matrix(x.offset(x.dimension()), d, rng.next(), 0.7);
    for (EmbedMethod method :
         {EmbedMethod::inner_product, EmbedMethod::laplacian, EmbedMethod::random_walk}) {
      std::vector<PairList> data = test::training_pairs(x, method, rng.next());
      CHECK(test::max_gradient_rel_error(method, x, emb, data, 1e-5) < 1e-5);
    }
  }
}

TEST_CASE("training is deterministic and reports epoch losses") {
  CellComplex x = test::load_fixture("two_triangles.cxc");
  TrainConfig cfg;
  cfg.method = EmbedMethod::random_walk;
  cfg.d = 4;
  cfg.epochs = 3;
  cfg.seed = 17;
  cfg.walk_length = 8;
  cfg.walks_per_cell = 4;

  std::vector<double> losses1, losses2;
  EmbeddingTable e1 = train_embeddings(x, cfg, &losses1);
  EmbeddingTable e2 = train_embeddings(x, cfg, &losses2);
  CHECK(e1.z == e2.z);
  CHECK(losses1 == losses2);
  CHECK(losses1.size() == 3);
  CHECK(e1.z.rows() == x.offset(x.dimension()));
  CHECK(e1.z.cols() == 4);

  cfg.seed = 18;
  EmbeddingTable e3 = train_embeddings(x, cfg, nullptr);
  CHECK(e1.z != e3.z);
}

TEST_CASE("inner-product training reduces the loss on the triangle") {
  CellComplex x = test::load_fixture("triangle.cxc");
  TrainConfig cfg;
  cfg.method = EmbedMethod::inner_product;
  cfg.d = 3;
  cfg.epochs = 40;
  cfg.lr = 0.05;
  cfg.seed = 1;
  std::vector<double> losses;
  train_embeddings(x, cfg, &losses);
  REQUIRE(losses.size() == 40);
  CHECK(losses.back() < losses.front());
  CHECK(losses.back() < 0.05);
}

TEST_CASE("laplacian training keeps every embedding on the unit sphere") {
  CellComplex x = test::load_fixture("two_triangles.cxc");
  TrainConfig cfg;
  cfg.method = EmbedMethod::laplacian;
  cfg.d = 5;
  cfg.epochs = 4;
  cfg.seed = 9;
  EmbeddingTable emb = train_embeddings(x, cfg, nullptr);
  for (int i = 0; i < emb.z.rows(); ++i) {
    double norm = std::sqrt(row_dot(emb.z, i, i));
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("trainer validates its configuration") {
  CellComplex x = test::load_fixture("triangle.cxc");
  TrainConfig cfg;
  cfg.d = 0;
  CHECK(thrown_code([&] { train_embeddings(x, cfg, nullptr); }) == errc::config_invalid);
  cfg = TrainConfig{};
  cfg.epochs = 0;
  CHECK(thrown_code([&] { train_embeddings(x, cfg, nullptr); }) == errc::config_invalid);
  cfg = TrainConfig{};
  cfg.lr = 0.0;
  CHECK(thrown_code([&] { train_embeddings(x, cfg, nullptr); }) == errc::config_invalid);
  cfg = TrainConfig{};
  cfg.dim_filter = 2;  // the top dimension is not embedded
  CHECK(thrown_code([&] { train_embeddings(x, cfg, nullptr); }) == errc::config_invalid);
  cfg = TrainConfig{};
  cfg.window = 0;
  CHECK(thrown_code([&] { train_embeddings(x, cfg, nullptr); }) == errc::config_invalid);
  CHECK(thrown_code([&] {
          train_embeddings(build_complex({{"v", 0, {}}}, true), TrainConfig{}, nullptr);
        }) == errc::config_invalid);

  CHECK(embed_method_from_name("rw") == EmbedMethod::random_walk);
  CHECK(embed_method_from_name("inner_product") == EmbedMethod::inner_product);
  CHECK(embed_method_from_name("lap") == EmbedMethod::laplacian);
  CHECK(thrown_code([] { embed_method_from_name("x"); }) == errc::config_invalid);
}
