// Compares the parallel kernels against their serial reference
// implementations on a synthetic quad grid: same inputs, timed runs, and a
// bit-identity check on the outputs.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cxn/cell_complex.hpp"
#include "cxn/embedding.hpp"
#include "cxn/forward.hpp"
#include "cxn/reference.hpp"
#include "cxn/scheme.hpp"

namespace {

cxn::CellComplex make_grid(int side) {
  auto vertex = [side](int i, int j) { return i * (side + 1) + j; };
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      faces.push_back({vertex(i, j), vertex(i, j + 1), vertex(i + 1, j + 1), vertex(i + 1, j)});
  return cxn::build_polygonal((side + 1) * (side + 1), faces);
}

cxn::FeatureMap random_features(const cxn::CellComplex& x, int width, std::uint64_t seed) {
  cxn::FeatureMap h;
  for (int m = 0; m <= x.dimension(); ++m)
    h.by_dim.push_back(cxn::random_matrix(x.size(m), width, cxn::mix_seed(seed, m), 1.0));
  return h;
}

cxn::SchemeConfig scheme_config(cxn::Scheme scheme, int n, int width, int depth,
                                std::uint64_t seed) {
  cxn::SchemeConfig cfg;
  cfg.scheme = scheme;
  cfg.depth = depth;
  cfg.alpha.resize(depth);
  cfg.phi.resize(depth);
  cfg.phi_down.resize(depth);
  cfg.phi_up.resize(depth);
  std::uint64_t stream = 0;
  for (int k = 0; k < depth; ++k)
    for (int m = 0; m <= n; ++m) {
      cfg.alpha[k][m] = cxn::random_stack({2 * width, width}, cxn::Activation::tanh_,
                                          cxn::mix_seed(seed, ++stream), 0.5);
      cfg.phi[k][m] = cxn::random_stack({3 * width, width}, cxn::Activation::relu,
                                        cxn::mix_seed(seed, ++stream), 0.5);
      cfg.phi_down[k][m] = cxn::random_stack({2 * width, width}, cxn::Activation::relu,
                                             cxn::mix_seed(seed, ++stream), 0.5);
      cfg.phi_up[k][m] = cxn::random_stack({2 * width, width}, cxn::Activation::relu,
                                           cxn::mix_seed(seed, ++stream), 0.5);
    }
  return cfg;
}

double time_best_ms(int repetitions, const std::function<void()>& body) {
  double best = 0.0;
  for (int r = 0; r < repetitions; ++r) {
    auto start = std::chrono::steady_clock::now();
    body();
    auto stop = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    if (r == 0 || ms < best) best = ms;
  }
  return best;
}

void report(const std::string& kernel, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-14s %10.2f ms %10.2f ms %8.2fx   %s\n", kernel.c_str(), serial_ms, parallel_ms,
              parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  int side = 24;
  int width = 16;
  int depth = 2;
  int repetitions = 3;
  std::uint64_t seed = 1;

  CLI::App app{"serial-reference vs parallel-kernel benchmark"};
  app.add_option("--side", side, "grid side length (cells per edge)");
  app.add_option("--width", width, "feature width");
  app.add_option("--depth", depth, "forward layers");
  app.add_option("--reps", repetitions, "repetitions (best time kept)");
  app.add_option("--seed", seed, "random seed");
  CLI11_PARSE(app, argc, argv);

  cxn::CellComplex x = make_grid(side);
  std::printf("grid %dx%d: %d vertices + %d edges + %d faces = %d cells\n", side, side, x.size(0),
              x.size(1), x.size(2), x.size());
  std::printf("%-14s %13s %13s %9s   %s\n", "kernel", "serial", "parallel", "speedup", "identical");

  cxn::FeatureMap h0 = random_features(x, width, cxn::mix_seed(seed, 100));

  {
    cxn::SchemeConfig cfg = scheme_config(cxn::Scheme::adjacency, x.dimension(), width, depth,
                                          cxn::mix_seed(seed, 200));
    cxn::FeatureMap serial_out, parallel_out;
    double s = time_best_ms(repetitions, [&] { serial_out = cxn::reference::cxn_forward(x, h0, cfg); });
    double p = time_best_ms(repetitions, [&] { parallel_out = cxn::cxn_forward(x, h0, cfg); });
    report("forward-adj", s, p, serial_out.by_dim == parallel_out.by_dim);
  }
  {
    cxn::SchemeConfig cfg = scheme_config(cxn::Scheme::coadjacency, x.dimension(), width, depth,
                                          cxn::mix_seed(seed, 300));
    cxn::FeatureMap serial_out, parallel_out;
    double s = time_best_ms(repetitions, [&] { serial_out = cxn::reference::cxn_forward(x, h0, cfg); });
    double p = time_best_ms(repetitions, [&] { parallel_out = cxn::cxn_forward(x, h0, cfg); });
    report("forward-coadj", s, p, serial_out.by_dim == parallel_out.by_dim);
  }
  {
    cxn::SchemeConfig cfg =
        scheme_config(cxn::Scheme::hodge, x.dimension(), width, depth, cxn::mix_seed(seed, 400));
    cxn::FeatureMap serial_out, parallel_out;
    double s = time_best_ms(repetitions,
                            [&] { serial_out = cxn::reference::cxn_forward_hodge(x, h0, cfg); });
    double p = time_best_ms(repetitions, [&] { parallel_out = cxn::cxn_forward_hodge(x, h0, cfg); });
    report("forward-hodge", s, p, serial_out.by_dim == parallel_out.by_dim);
  }
  {
    cxn::CcxnWeights weights;
    for (int l = 0; l < depth; ++l)
      weights.layers.push_back(cxn::random_matrix(width, width, cxn::mix_seed(seed, 500 + l), 0.5));
    cxn::DenseMatrix flat(x.size_below_top(), width);
    for (int i = 0; i < flat.rows(); ++i) {
      auto src = h0.by_dim[x.dim_of(i)].row(i - x.offset(x.dim_of(i)));
      std::copy(src.begin(), src.end(), flat.row(i).begin());
    }
    cxn::DenseMatrix serial_out, parallel_out;
    double s = time_best_ms(repetitions, [&] {
      serial_out = cxn::reference::ccxn_forward(x, flat, weights, cxn::NormVariant::renormalized);
    });
    double p = time_best_ms(repetitions, [&] {
      parallel_out = cxn::ccxn_forward(x, flat, weights, cxn::NormVariant::renormalized);
    });
    report("ccxn", s, p, serial_out == parallel_out);
  }
  {
    cxn::WalkCorpus serial_out, parallel_out;
    double s = time_best_ms(repetitions, [&] {
      serial_out = cxn::reference::generate_walks(x, 0, 40, 20, cxn::mix_seed(seed, 600));
    });
    double p = time_best_ms(repetitions, [&] {
      parallel_out = cxn::generate_walks(x, 0, 40, 20, cxn::mix_seed(seed, 600));
    });
    report("walks", s, p, serial_out.walks == parallel_out.walks);
  }
  return 0;
}
