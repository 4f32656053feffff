#ifndef CXN_SCHEME_HPP
#define CXN_SCHEME_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cxn/cell_complex.hpp"
#include "cxn/dense.hpp"
#include "cxn/error.hpp"
#include "cxn/operators.hpp"
#include "cxn/util.hpp"

namespace cxn {

/// Dense feature rows per dimension; by_dim[m] has one row per m-cell in
/// canonical order. Dimensions the complex lacks hold 0x0 matrices.
struct FeatureMap {
  std::vector<DenseMatrix> by_dim;

  int width(int m) const {
    return m >= 0 && m < static_cast<int>(by_dim.size()) ? by_dim[m].cols() : 0;
  }
};

/// Builds a feature map shell with the given per-dimension widths, zeroed.
FeatureMap make_feature_map(const CellComplex& x, const std::vector<int>& widths);

enum class Activation { identity, relu, tanh_ };

Activation activation_from_name(const std::string& name);
const char* activation_name(Activation a);

/// One affine layer in row-vector convention: y = act(x * W + b), so W is
/// in_width x out_width and b has out_width entries.
struct AffineLayer {
  DenseMatrix weight;
  std::vector<double> bias;
  Activation activation = Activation::identity;
};

/// A small MLP: layers applied in sequence. An empty stack is the identity.
struct AffineStack {
  std::vector<AffineLayer> layers;

  bool empty() const { return layers.empty(); }
  int input_width() const { return layers.empty() ? -1 : layers.front().weight.rows(); }
  int output_width() const { return layers.empty() ? -1 : layers.back().weight.cols(); }
};

std::vector<double> affine_apply(const AffineStack& stack, std::span<const double> x);

enum class AggregatorKind { sum, mean, max };

AggregatorKind aggregator_from_name(const std::string& name);

/// Elementwise multiset aggregation. The empty multiset maps to the zero
/// vector of the declared width (for mean and max too, by convention). Sum
/// and mean fold in value order, so the result depends only on the input
/// multiset, never on iteration order.
std::vector<double> aggregate(AggregatorKind kind, const std::vector<std::vector<double>>& inputs,
                              int declared_width);

enum class Scheme { adjacency, coadjacency, hodge };

Scheme scheme_from_name(const std::string& name);

/// Per-layer, per-dimension function tables for the message-passing
/// schemes. alpha/phi are indexed [layer][dimension]; slots a scheme never
/// touches may stay empty. The hodge scheme ignores `phi` and uses
/// phi_down/phi_up, selected by the neighbor's dimension (m-1 resp. m+1).
struct SchemeConfig {
  Scheme scheme = Scheme::adjacency;
  int depth = 1;
  AggregatorKind outer = AggregatorKind::sum;  // E, over neighbors
  AggregatorKind inner = AggregatorKind::sum;  // F, over shared (co)facets
  int compatible_sign = +1;                    // hodge orientation-compatibility coefficient
  std::vector<std::map<int, AffineStack>> alpha;
  std::vector<std::map<int, AffineStack>> phi;
  std::vector<std::map<int, AffineStack>> phi_down;
  std::vector<std::map<int, AffineStack>> phi_up;

  const AffineStack& stack(const std::vector<std::map<int, AffineStack>>& table, int layer, int m,
                           const char* role) const;
};

/// Square weight matrices of the convolutional scheme, one per layer, all
/// d x d.
struct CcxnWeights {
  std::vector<DenseMatrix> layers;

  int width() const { return layers.empty() ? 0 : layers.front().cols(); }
};

/// Seeded uniform initialization in [-scale, scale] for experimentation;
/// byte-identical across platforms for a given seed.
DenseMatrix random_matrix(int rows, int cols, std::uint64_t seed, double scale);
AffineStack random_stack(const std::vector<int>& widths, Activation activation, std::uint64_t seed,
                         double scale);

}  // namespace cxn

#endif
