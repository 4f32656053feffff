#include "cxn/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cxn {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

// Per-line view with '#' comments removed and the 1-based line number kept.
std::vector<std::pair<int, std::vector<std::string>>> content_lines(const std::string& text) {
  std::vector<std::pair<int, std::vector<std::string>>> lines;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<std::string> tokens = split_ws(line);
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
  }
  return lines;
}

[[noreturn]] void fail_line(errc code, int line, const std::string& what) {
  fail(code, "line " + std::to_string(line) + ": " + what);
}

long long parse_integer(const std::string& token, int line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(token, &used);
  } catch (const std::exception&) {
    fail_line(errc::syntax, line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size()) fail_line(errc::syntax, line, "expected an integer, got '" + token + "'");
  return v;
}

double parse_real(const std::string& token, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    fail_line(errc::syntax, line, "expected a number, got '" + token + "'");
  }
  if (used != token.size()) fail_line(errc::syntax, line, "expected a number, got '" + token + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

CellComplex parse_complex(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.empty()) fail(errc::syntax, "empty document, expected a `cxc 1 ...` header");

  auto& [header_line, header] = lines.front();
  if (header.size() != 3 || header[0] != "cxc" || header[1] != "1" ||
      (header[2] != "oriented" && header[2] != "unoriented"))
    fail_line(errc::syntax, header_line, "expected header `cxc 1 oriented|unoriented`");
  bool oriented = header[2] == "oriented";

  std::vector<Cell> specs;
  std::unordered_map<std::string, std::size_t> declared;  // id -> index into specs
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto& [number, tokens] = lines[i];
    if (tokens[0] == "c") {
      if (tokens.size() != 3) fail_line(errc::syntax, number, "expected `c <id> <dim>`");
      long long dim = parse_integer(tokens[2], number);
      if (dim < 0) fail_line(errc::syntax, number, "cell dimension must be >= 0");
      if (declared.count(tokens[1]))
        fail_line(errc::duplicate_id, number, "cell '" + tokens[1] + "' already declared");
      declared.emplace(tokens[1], specs.size());
      specs.push_back({tokens[1], static_cast<int>(dim), {}});
    } else if (tokens[0] == "b") {
      if (tokens.size() != 4) fail_line(errc::syntax, number, "expected `b <id> <facet_id> <+1|-1>`");
      auto owner = declared.find(tokens[1]);
      if (owner == declared.end())
        fail_line(errc::syntax, number, "boundary entry for undeclared cell '" + tokens[1] + "'");
      if (!declared.count(tokens[2]))
        fail_line(errc::dangling_facet, number, "facet '" + tokens[2] + "' used before declaration");
      int sign = 0;
      if (tokens[3] == "+1")
        sign = +1;
      else if (tokens[3] == "-1")
        sign = -1;
      else
        fail_line(errc::syntax, number, "sign must be literal +1 or -1, got '" + tokens[3] + "'");
      specs[owner->second].boundary.push_back({tokens[2], sign});
    } else {
      fail_line(errc::syntax, number, "unknown directive '" + tokens[0] + "'");
    }
  }
  return build_complex(std::move(specs), oriented);
}

std::string serialize(const CellComplex& x) {
  std::string out = "cxc 1 ";
  out += x.oriented() ? "oriented" : "unoriented";
  out += "\n";
  for (int i = 0; i < x.size(); ++i) {
    out += "c " + x.id(i) + " " + std::to_string(x.dim_of(i)) + "\n";
    for (auto [f, sign] : x.boundary_of(i))
      out += "b " + x.id(i) + " " + x.id(f) + " " + (sign > 0 ? "+1" : "-1") + "\n";
  }
  return out;
}

CellComplex parse_off(const std::string& text) {
  auto lines = content_lines(text);
  std::size_t at = 0;
  if (at >= lines.size() || lines[at].second.size() != 1 || lines[at].second[0] != "OFF")
    fail(errc::syntax, "expected `OFF` header");
  ++at;
  if (at >= lines.size() || lines[at].second.size() < 3)
    fail(errc::syntax, "expected counts line `<vertices> <faces> <edges>`");
  int line = lines[at].first;
  long long nv = parse_integer(lines[at].second[0], line);
  long long nf = parse_integer(lines[at].second[1], line);
  parse_integer(lines[at].second[2], line);  // edge count, unused
  if (nv < 0 || nf < 0) fail_line(errc::syntax, line, "counts must be nonnegative");
  ++at;

  for (long long v = 0; v < nv; ++v, ++at) {
    if (at >= lines.size()) fail(errc::syntax, "unexpected end of file in vertex list");
    auto& [number, tokens] = lines[at];
    if (tokens.size() < 3) fail_line(errc::syntax, number, "vertex line needs 3 coordinates");
    for (int c = 0; c < 3; ++c) parse_real(tokens[c], number);  // validated, then discarded
  }

  std::vector<std::vector<int>> faces;
  for (long long f = 0; f < nf; ++f, ++at) {
    if (at >= lines.size()) fail(errc::syntax, "unexpected end of file in face list");
    auto& [number, tokens] = lines[at];
    long long k = parse_integer(tokens[0], number);
    if (k < 1 || tokens.size() < static_cast<std::size_t>(k) + 1)
      fail_line(errc::syntax, number, "face line `k i1 ... ik` is short");
    std::vector<int> cycle;
    for (long long i = 0; i < k; ++i)
      cycle.push_back(static_cast<int>(parse_integer(tokens[1 + i], number)));
    faces.push_back(std::move(cycle));
  }
  return build_polygonal(static_cast<int>(nv), faces);
}

std::string write_matrix(const SparseMatrix& m) {
  std::string out = "%%MatrixMarket matrix coordinate real general\n";
  for (std::size_t i = 0; i < m.row_labels().size(); ++i)
    out += "% row " + std::to_string(i + 1) + ": " + m.row_labels()[i] + "\n";
  for (std::size_t j = 0; j < m.col_labels().size(); ++j)
    out += "% col " + std::to_string(j + 1) + ": " + m.col_labels()[j] + "\n";
  out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " + std::to_string(m.nnz()) + "\n";
  for (const Triplet& t : m.triplets())
    out += std::to_string(t.row + 1) + " " + std::to_string(t.col + 1) + " " + format_double(t.value) + "\n";
  return out;
}

SparseMatrix read_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  bool header_seen = false;
  std::vector<Triplet> triplets;
  long long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++number;
    if (!header_seen) {
      if (line.rfind("%%MatrixMarket", 0) != 0)
        fail_line(errc::syntax, number, "expected `%%MatrixMarket` banner");
      if (line.find("matrix coordinate real general") == std::string::npos)
        fail_line(errc::syntax, number, "only `matrix coordinate real general` is supported");
      header_seen = true;
      continue;
    }
    if (!line.empty() && line[0] == '%') continue;
    std::vector<std::string> tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (rows < 0) {
      if (tokens.size() != 3) fail_line(errc::syntax, number, "expected `rows cols nnz`");
      rows = parse_integer(tokens[0], number);
      cols = parse_integer(tokens[1], number);
      nnz = parse_integer(tokens[2], number);
      continue;
    }
    if (tokens.size() != 3) fail_line(errc::syntax, number, "expected `i j value`");
    long long i = parse_integer(tokens[0], number), j = parse_integer(tokens[1], number);
    if (i < 1 || i > rows || j < 1 || j > cols) fail_line(errc::syntax, number, "index out of range");
    triplets.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1), parse_real(tokens[2], number)});
  }
  if (rows < 0) fail(errc::syntax, "missing size line");
  if (static_cast<long long>(triplets.size()) != nnz)
    fail(errc::syntax, "entry count " + std::to_string(triplets.size()) + " does not match declared " +
                           std::to_string(nnz));
  return SparseMatrix::from_triplets(static_cast<int>(rows), static_cast<int>(cols), std::move(triplets));
}

std::string write_features(const CellComplex& x, const FeatureMap& h) {
  std::string out;
  for (int m = 0; m < static_cast<int>(h.by_dim.size()); ++m) {
    const DenseMatrix& block = h.by_dim[m];
    if (block.cols() == 0) continue;
    int base = x.offset(m);
    for (int c = 0; c < block.rows(); ++c) {
      out += x.id(base + c) + "\t" + std::to_string(m);
      for (double v : block.row(c)) out += "\t" + format_double(v);
      out += "\n";
    }
  }
  return out;
}

FeatureMap parse_features(const std::string& text, const CellComplex& x,
                          const std::vector<int>& required_dims) {
  std::vector<int> widths(x.dimension() + 1, -1);
  std::vector<std::vector<std::pair<int, std::vector<double>>>> rows(x.dimension() + 1);
  std::unordered_set<int> seen;

  for (auto& [number, tokens] : content_lines(text)) {
    if (tokens.size() < 2) fail_line(errc::syntax, number, "expected `cell_id dim v1 ... vd`");
    if (!x.contains(tokens[0])) fail_line(errc::unknown_cell, number, "unknown cell '" + tokens[0] + "'");
    int index = x.index(tokens[0]);
    long long dim = parse_integer(tokens[1], number);
    if (dim != x.dim_of(index))
      fail_line(errc::dimension_mismatch, number, "cell '" + tokens[0] + "' has dimension " +
                                                      std::to_string(x.dim_of(index)) + ", row claims " +
                                                      std::to_string(dim));
    if (!seen.insert(index).second)
      fail_line(errc::syntax, number, "duplicate row for cell '" + tokens[0] + "'");
    std::vector<double> values;
    for (std::size_t i = 2; i < tokens.size(); ++i) values.push_back(parse_real(tokens[i], number));
    int width = static_cast<int>(values.size());
    if (widths[dim] < 0)
      widths[dim] = width;
    else if (widths[dim] != width)
      fail_line(errc::width_mismatch, number, "dimension " + std::to_string(dim) + " rows mix widths " +
                                                  std::to_string(widths[dim]) + " and " +
                                                  std::to_string(width));
    rows[dim].push_back({index - x.offset(static_cast<int>(dim)), std::move(values)});
  }

  FeatureMap h;
  for (int m = 0; m <= x.dimension(); ++m) {
    bool required = std::find(required_dims.begin(), required_dims.end(), m) != required_dims.end();
    int have = static_cast<int>(rows[m].size());
    if ((required && have != x.size(m)) || (!required && have != 0 && have != x.size(m)))
      fail(errc::missing_feature, "dimension " + std::to_string(m) + " has " + std::to_string(have) +
                                      " feature rows, complex has " + std::to_string(x.size(m)) + " cells");
    DenseMatrix block(x.size(m), have == 0 ? 0 : widths[m]);
    for (auto& [local, values] : rows[m]) std::copy(values.begin(), values.end(), block.row(local).begin());
    h.by_dim.push_back(std::move(block));
  }
  return h;
}

std::string write_embeddings(const CellComplex& x, const EmbeddingTable& emb) {
  std::string out;
  for (int i = 0; i < emb.z.rows(); ++i) {
    out += x.id(i) + "\t" + std::to_string(x.dim_of(i));
    for (double v : emb.z.row(i)) out += "\t" + format_double(v);
    out += "\n";
  }
  return out;
}

std::map<std::string, AffineStack> parse_weights(const std::string& text) {
  auto lines = content_lines(text);
  std::map<std::string, AffineStack> stacks;
  std::size_t at = 0;
  while (at < lines.size()) {
    auto& [number, tokens] = lines[at];
    if (tokens[0] != "stack" || tokens.size() != 3)
      fail_line(errc::syntax, number, "expected `stack <name> <layers>`");
    std::string name = tokens[1];
    long long layer_count = parse_integer(tokens[2], number);
    if (layer_count < 0) fail_line(errc::syntax, number, "layer count must be >= 0");
    if (stacks.count(name)) fail_line(errc::syntax, number, "stack '" + name + "' already defined");
    ++at;

    AffineStack stack;
    for (long long l = 0; l < layer_count; ++l) {
      if (at >= lines.size()) fail(errc::syntax, "unexpected end of file in stack '" + name + "'");
      auto& [hline, htokens] = lines[at];
      if (htokens[0] != "layer" || htokens.size() != 4)
        fail_line(errc::syntax, hline, "expected `layer <rows> <cols> <activation>`");
      long long rows = parse_integer(htokens[1], hline), cols = parse_integer(htokens[2], hline);
      if (rows < 1 || cols < 1) fail_line(errc::syntax, hline, "layer dimensions must be positive");
      AffineLayer layer;
      layer.activation = activation_from_name(htokens[3]);
      layer.weight = DenseMatrix(static_cast<int>(rows), static_cast<int>(cols));
      ++at;
      for (long long r = 0; r <= rows; ++r, ++at) {  // last row is the bias
        if (at >= lines.size()) fail(errc::syntax, "unexpected end of file in stack '" + name + "'");
        auto& [vline, vtokens] = lines[at];
        if (static_cast<long long>(vtokens.size()) != cols)
          fail_line(errc::syntax, vline, "expected " + std::to_string(cols) + " values, got " +
                                             std::to_string(vtokens.size()));
        for (long long c = 0; c < cols; ++c) {
          double v = parse_real(vtokens[c], vline);
          if (r < rows)
            layer.weight(static_cast<int>(r), static_cast<int>(c)) = v;
          else
            layer.bias.push_back(v);
        }
      }
      stack.layers.push_back(std::move(layer));
    }
    stacks.emplace(std::move(name), std::move(stack));
  }
  return stacks;
}

std::string write_weights(const std::map<std::string, AffineStack>& stacks) {
  std::string out;
  for (const auto& [name, stack] : stacks) {
    out += "stack " + name + " " + std::to_string(stack.layers.size()) + "\n";
    for (const AffineLayer& layer : stack.layers) {
      out += "layer " + std::to_string(layer.weight.rows()) + " " + std::to_string(layer.weight.cols()) +
             " " + activation_name(layer.activation) + "\n";
      for (int r = 0; r < layer.weight.rows(); ++r) {
        for (int c = 0; c < layer.weight.cols(); ++c)
          out += (c ? " " : "") + format_double(layer.weight(r, c));
        out += "\n";
      }
      for (int c = 0; c < layer.weight.cols(); ++c) {
        double b = c < static_cast<int>(layer.bias.size()) ? layer.bias[c] : 0.0;
        out += (c ? " " : "") + format_double(b);
      }
      out += "\n";
    }
  }
  return out;
}

namespace {

// Splits `alpha.k2.m1` / `phi.k0.m3.down` into its parts.
struct StackName {
  std::string role;  // alpha | phi
  int layer = -1;
  int dim = -1;
  std::string suffix;  // "", "down", "up"
};

StackName parse_stack_name(const std::string& name) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (begin <= name.size()) {
    std::size_t end = name.find('.', begin);
    if (end == std::string::npos) end = name.size();
    parts.push_back(name.substr(begin, end - begin));
    begin = end + 1;
  }
  auto bad = [&]() -> StackName {
    fail(errc::config_invalid, "stack name '" + name + "' does not match alpha.k<K>.m<M> / phi.k<K>.m<M>[.down|.up]");
  };
  if (parts.size() < 3 || parts.size() > 4) return bad();
  if (parts[0] != "alpha" && parts[0] != "phi") return bad();
  if (parts[1].size() < 2 || parts[1][0] != 'k') return bad();
  if (parts[2].size() < 2 || parts[2][0] != 'm') return bad();
  StackName out;
  out.role = parts[0];
  try {
    out.layer = std::stoi(parts[1].substr(1));
    out.dim = std::stoi(parts[2].substr(1));
  } catch (const std::exception&) {
    return bad();
  }
  if (parts.size() == 4) {
    if (parts[3] != "down" && parts[3] != "up") return bad();
    out.suffix = parts[3];
  }
  return out;
}

}  // namespace

SchemeConfig config_from_stacks(const std::map<std::string, AffineStack>& stacks, Scheme scheme,
                                int depth) {
  std::vector<std::pair<StackName, const AffineStack*>> named;
  int max_layer = -1;
  for (const auto& [name, stack] : stacks) {
    if (name == "ccxn") continue;
    StackName parsed = parse_stack_name(name);
    max_layer = std::max(max_layer, parsed.layer);
    named.push_back({parsed, &stack});
  }
  if (depth < 0) depth = max_layer + 1;
  if (depth < 1) fail(errc::config_invalid, "weights define no scheme stacks");

  SchemeConfig cfg;
  cfg.scheme = scheme;
  cfg.depth = depth;
  cfg.alpha.resize(depth);
  cfg.phi.resize(depth);
  cfg.phi_down.resize(depth);
  cfg.phi_up.resize(depth);
  for (auto& [name, stack] : named) {
    if (name.layer >= depth) continue;
    if (name.role == "alpha") {
      if (!name.suffix.empty())
        fail(errc::config_invalid, "alpha stacks take no .down/.up suffix");
      cfg.alpha[name.layer][name.dim] = *stack;
    } else if (name.suffix == "down") {
      cfg.phi_down[name.layer][name.dim] = *stack;
    } else if (name.suffix == "up") {
      cfg.phi_up[name.layer][name.dim] = *stack;
    } else {
      cfg.phi[name.layer][name.dim] = *stack;
    }
  }
  return cfg;
}

CcxnWeights ccxn_from_stacks(const std::map<std::string, AffineStack>& stacks, int layers) {
  auto it = stacks.find("ccxn");
  if (it == stacks.end()) fail(errc::config_invalid, "weights file defines no `ccxn` stack");
  const AffineStack& stack = it->second;
  int available = static_cast<int>(stack.layers.size());
  if (layers < 0) layers = available;
  if (layers > available)
    fail(errc::config_invalid, "requested " + std::to_string(layers) + " layers, ccxn stack has " +
                                   std::to_string(available));
  CcxnWeights w;
  for (int l = 0; l < layers; ++l) {
    const AffineLayer& layer = stack.layers[l];
    if (layer.weight.rows() != layer.weight.cols())
      fail(errc::config_invalid, "ccxn layers must be square weight matrices");
    if (layer.activation != Activation::relu)
      fail(errc::config_invalid, "ccxn layers use relu (fixed by the convolutional update rule)");
    for (double b : layer.bias)
      if (b != 0.0) fail(errc::config_invalid, "ccxn layers take no bias; set the bias row to zeros");
    w.layers.push_back(layer.weight);
  }
  return w;
}

std::string write_walks(const CellComplex& x, const WalkCorpus& corpus) {
  std::string out = "# dim=" + std::to_string(corpus.dim) + " seed=" + std::to_string(corpus.seed) +
                    " length=" + std::to_string(corpus.length) + "\n";
  for (const auto& walk : corpus.walks) {
    for (std::size_t i = 0; i < walk.size(); ++i) out += (i ? " " : "") + x.id(walk[i]);
    out += "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_failure, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_failure, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) fail(errc::io_failure, "write to '" + path + "' failed");
}

}  // namespace cxn
