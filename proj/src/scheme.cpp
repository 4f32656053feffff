#include "cxn/scheme.hpp"

#include <algorithm>
#include <cmath>

namespace cxn {

FeatureMap make_feature_map(const CellComplex& x, const std::vector<int>& widths) {
  if (static_cast<int>(widths.size()) != x.dimension() + 1)
    fail(errc::width_mismatch, "expected " + std::to_string(x.dimension() + 1) + " widths, got " +
                                   std::to_string(widths.size()));
  FeatureMap h;
  h.by_dim.reserve(widths.size());
  for (int m = 0; m <= x.dimension(); ++m) h.by_dim.emplace_back(x.size(m), widths[m]);
  return h;
}

Activation activation_from_name(const std::string& name) {
  if (name == "identity") return Activation::identity;
  if (name == "relu") return Activation::relu;
  if (name == "tanh") return Activation::tanh_;
  fail(errc::config_invalid, "unknown activation '" + name + "' (expected identity, relu or tanh)");
}

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::identity: return "identity";
    case Activation::relu: return "relu";
    case Activation::tanh_: return "tanh";
  }
  return "identity";
}

AggregatorKind aggregator_from_name(const std::string& name) {
  if (name == "sum") return AggregatorKind::sum;
  if (name == "mean") return AggregatorKind::mean;
  if (name == "max") return AggregatorKind::max;
  fail(errc::config_invalid, "unknown aggregator '" + name + "' (expected sum, mean or max)");
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "adj" || name == "adjacency") return Scheme::adjacency;
  if (name == "coadj" || name == "coadjacency") return Scheme::coadjacency;
  if (name == "hodge") return Scheme::hodge;
  fail(errc::config_invalid, "unknown scheme '" + name + "'");
}

std::vector<double> affine_apply(const AffineStack& stack, std::span<const double> x) {
  std::vector<double> current(x.begin(), x.end());
  for (const AffineLayer& layer : stack.layers) {
    if (static_cast<int>(current.size()) != layer.weight.rows())
      fail(errc::width_mismatch, "affine layer expects width " + std::to_string(layer.weight.rows()) +
                                     ", got " + std::to_string(current.size()));
    std::vector<double> next(layer.weight.cols());
    for (int j = 0; j < layer.weight.cols(); ++j) {
      double v = layer.bias.empty() ? 0.0 : layer.bias[j];
      for (int i = 0; i < layer.weight.rows(); ++i) v += current[i] * layer.weight(i, j);
      switch (layer.activation) {
        case Activation::identity: break;
        case Activation::relu: v = v > 0.0 ? v : 0.0; break;
        case Activation::tanh_: v = std::tanh(v); break;
      }
      next[j] = v;
    }
    current = std::move(next);
  }
  return current;
}

std::vector<double> aggregate(AggregatorKind kind, const std::vector<std::vector<double>>& inputs,
                              int declared_width) {
  for (const auto& v : inputs)
    if (static_cast<int>(v.size()) != declared_width)
      fail(errc::width_mismatch, "aggregate input width " + std::to_string(v.size()) + " != declared " +
                                     std::to_string(declared_width));
  std::vector<double> out(declared_width, 0.0);
  if (inputs.empty()) return out;

  std::vector<double> scratch(inputs.size());
  for (int j = 0; j < declared_width; ++j) {
    for (std::size_t i = 0; i < inputs.size(); ++i) scratch[i] = inputs[i][j];
    switch (kind) {
      case AggregatorKind::sum: out[j] = invariant_sum(scratch); break;
      case AggregatorKind::mean: out[j] = invariant_sum(scratch) / static_cast<double>(inputs.size()); break;
      case AggregatorKind::max: {
        double m = *std::max_element(scratch.begin(), scratch.end());
        out[j] = m == 0.0 ? 0.0 : m;  // canonicalize -0.0
        break;
      }
    }
  }
  return out;
}

const AffineStack& SchemeConfig::stack(const std::vector<std::map<int, AffineStack>>& table, int layer,
                                       int m, const char* role) const {
  if (layer < 0 || layer >= static_cast<int>(table.size()))
    fail(errc::config_invalid, std::string("no ") + role + " table for layer " + std::to_string(layer));
  auto it = table[layer].find(m);
  if (it == table[layer].end())
    fail(errc::config_invalid, std::string("no ") + role + " stack for layer " + std::to_string(layer) +
                                   ", dimension " + std::to_string(m));
  return it->second;
}

DenseMatrix random_matrix(int rows, int cols, std::uint64_t seed, double scale) {
  SplitMix64 rng(seed);
  DenseMatrix m(rows, cols);
  for (double& v : m.data()) v = rng.next_uniform(-scale, scale);
  return m;
}

AffineStack random_stack(const std::vector<int>& widths, Activation activation, std::uint64_t seed,
                         double scale) {
  if (widths.size() < 2) fail(errc::config_invalid, "random_stack needs at least two widths");
  AffineStack stack;
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
    AffineLayer layer;
    layer.weight = random_matrix(widths[i], widths[i + 1], mix_seed(seed, i), scale);
    layer.bias.assign(widths[i + 1], 0.0);
    layer.activation = activation;
    stack.layers.push_back(std::move(layer));
  }
  return stack;
}

}  // namespace cxn
