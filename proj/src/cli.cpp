#include "cxn/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cxn/cell_complex.hpp"
#include "cxn/embedding.hpp"
#include "cxn/forward.hpp"
#include "cxn/io.hpp"
#include "cxn/operators.hpp"

namespace cxn {

namespace {

CellComplex load_complex(const std::string& path) {
  std::string text = read_file(path);
  std::string lower = path;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower.size() >= 4 && lower.compare(lower.size() - 4, 4, ".off") == 0) return parse_off(text);
  return parse_complex(text);
}

int run_validate(const std::string& path, bool check_chain) {
  CellComplex x = load_complex(path);
  ValidationReport report = validate(x, check_chain);
  for (const ValidationIssue& issue : report.errors) std::cout << "error: " << issue.message << "\n";
  for (const std::string& w : report.warnings) std::cout << "warning: " << w << "\n";
  if (!report.ok()) return 1;
  std::cout << "ok: " << x.size() << " cells, dimension " << x.dimension() << ", "
            << (x.oriented() ? "oriented" : "unoriented") << "\n";
  return 0;
}

int run_info(const std::string& path) {
  CellComplex x = load_complex(path);
  std::cout << "oriented: " << (x.oriented() ? "yes" : "no") << "\n";
  std::cout << "dimension: " << x.dimension() << "\n";
  for (int m = 0; m <= x.dimension(); ++m)
    std::cout << "cells dim " << m << ": " << x.size(m) << "\n";
  std::cout << "N: " << x.size() << "\n";
  std::cout << "N-hat: " << x.size_below_top() << "\n";
  return 0;
}

void emit_matrix(const std::filesystem::path& dir, const std::string& name, const SparseMatrix& m) {
  std::filesystem::path path = dir / name;
  write_file(path.string(), write_matrix(m));
  std::cout << "wrote " << path.string() << "\n";
}

int run_matrices(const std::string& path, const std::string& kind, int dim,
                 const std::string& variant_name, const std::string& out_dir) {
  CellComplex x = load_complex(path);
  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  std::string suffix = dim >= 0 ? "_dim" + std::to_string(dim) : "";

  if (kind == "adj") {
    SparseMatrix a = dim >= 0 ? adjacency_matrix(x, MatrixScope::single_dim, dim)
                              : adjacency_matrix(x, MatrixScope::all);
    emit_matrix(dir, "A_adj" + suffix + ".mtx", a);
  } else if (kind == "coadj") {
    SparseMatrix a = dim >= 0 ? coadjacency_matrix(x, MatrixScope::single_dim, dim)
                              : coadjacency_matrix(x, MatrixScope::all);
    emit_matrix(dir, "A_co" + suffix + ".mtx", a);
  } else if (kind == "boundary") {
    if (dim >= 0) {
      emit_matrix(dir, "boundary_" + std::to_string(dim) + ".mtx", boundary_matrix(x, dim));
    } else if (x.dimension() == 0) {
      std::cout << "no boundary matrices: complex has dimension 0\n";
    } else {
      for (int k = 1; k <= x.dimension(); ++k)
        emit_matrix(dir, "boundary_" + std::to_string(k) + ".mtx", boundary_matrix(x, k));
    }
  } else {  // norm-adj
    NormVariant variant =
        variant_name == "renormalized" ? NormVariant::renormalized : NormVariant::plain;
    SparseMatrix a = dim >= 0 ? adjacency_matrix(x, MatrixScope::single_dim, dim)
                              : adjacency_matrix(x, MatrixScope::all);
    emit_matrix(dir, "norm_adj_" + variant_name + suffix + ".mtx", normalized_operator(a, variant));
  }
  return 0;
}

int run_forward(const std::string& path, const std::string& scheme_name,
                const std::string& features_path, const std::string& weights_path, int layers,
                const std::string& out) {
  CellComplex x = load_complex(path);
  std::map<std::string, AffineStack> stacks = parse_weights(read_file(weights_path));
  std::string features_text = read_file(features_path);

  FeatureMap result;
  if (scheme_name == "ccxn") {
    CcxnWeights weights = ccxn_from_stacks(stacks, layers);
    std::vector<int> required;
    for (int m = 0; m < x.dimension(); ++m) required.push_back(m);
    FeatureMap h = parse_features(features_text, x, required);
    int d = weights.width();
    for (int m = 0; m < x.dimension(); ++m)
      if (h.width(m) != d)
        fail(errc::width_mismatch, "ccxn expects width " + std::to_string(d) + " features, dimension " +
                                       std::to_string(m) + " has width " + std::to_string(h.width(m)));
    DenseMatrix h0(x.size_below_top(), d);
    for (int m = 0; m < x.dimension(); ++m) {
      int base = x.offset(m);
      for (int c = 0; c < x.size(m); ++c) {
        auto src = h.by_dim[m].row(c);
        std::copy(src.begin(), src.end(), h0.row(base + c).begin());
      }
    }
    DenseMatrix y = ccxn_forward(x, h0, weights, NormVariant::renormalized);
    for (int m = 0; m <= x.dimension(); ++m) {
      DenseMatrix block(x.size(m), m < x.dimension() ? d : 0);
      int base = x.offset(m);
      for (int c = 0; c < block.rows() && m < x.dimension(); ++c) {
        auto src = y.row(base + c);
        std::copy(src.begin(), src.end(), block.row(c).begin());
      }
      result.by_dim.push_back(std::move(block));
    }
  } else {
    SchemeConfig cfg = config_from_stacks(stacks, scheme_from_name(scheme_name), layers);
    std::vector<int> required;
    for (int m = 0; m <= x.dimension(); ++m) required.push_back(m);
    FeatureMap h0 = parse_features(features_text, x, required);
    result = cxn_forward(x, h0, cfg);
  }
  write_file(out, write_features(x, result));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_walks(const std::string& path, int dim, int length, int count, std::uint64_t seed,
              const std::string& out) {
  CellComplex x = load_complex(path);
  WalkCorpus corpus = generate_walks(x, dim, length, count, seed);
  write_file(out, write_walks(x, corpus));
  std::cout << "wrote " << corpus.walks.size() << " walks to " << out << "\n";
  return 0;
}

int run_embed(const std::string& path, const TrainConfig& cfg, const std::string& out) {
  CellComplex x = load_complex(path);
  std::vector<double> losses;
  EmbeddingTable emb = train_embeddings(x, cfg, &losses);
  for (std::size_t e = 0; e < losses.size(); ++e)
    std::cout << "epoch " << e << ": loss " << format_double(losses[e]) << "\n";
  write_file(out, write_embeddings(x, emb));
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"cell-complex networks: operators, message passing, embeddings"};
  app.require_subcommand(1);
  int code = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check a complex file and report issues");
  std::string v_file;
  bool v_chain = false;
  validate_cmd->add_option("file", v_file, "complex file (.cxc or .off)")->required();
  validate_cmd->add_flag("--check-chain", v_chain, "also test d(d(c)) = 0 on every cell");
  validate_cmd->callback([&] { code = run_validate(v_file, v_chain); });

  auto* info_cmd = app.add_subcommand("info", "print cell counts per dimension");
  std::string i_file;
  info_cmd->add_option("file", i_file, "complex file (.cxc or .off)")->required();
  info_cmd->callback([&] { code = run_info(i_file); });

  auto* mat_cmd = app.add_subcommand("matrices", "export operator matrices in MatrixMarket form");
  std::string m_file, m_kind, m_out;
  std::string m_variant = "plain";
  int m_dim = -1;
  mat_cmd->add_option("file", m_file, "complex file (.cxc or .off)")->required();
  mat_cmd->add_option("--kind", m_kind, "which operator to export")
      ->required()
      ->check(CLI::IsMember({"adj", "coadj", "boundary", "norm-adj"}));
  mat_cmd->add_option("--dim", m_dim, "restrict to one dimension");
  mat_cmd->add_option("--variant", m_variant, "normalization variant (norm-adj only)")
      ->check(CLI::IsMember({"plain", "renormalized"}));
  mat_cmd->add_option("--out", m_out, "output directory")->required();
  mat_cmd->callback([&] { code = run_matrices(m_file, m_kind, m_dim, m_variant, m_out); });

  auto* fwd_cmd = app.add_subcommand("forward", "run a forward pass over stored features");
  std::string f_file, f_scheme, f_features, f_weights, f_out;
  int f_layers = -1;
  fwd_cmd->add_option("file", f_file, "complex file (.cxc or .off)")->required();
  fwd_cmd->add_option("--scheme", f_scheme, "update rule")
      ->required()
      ->check(CLI::IsMember({"ccxn", "adj", "coadj", "hodge"}));
  fwd_cmd->add_option("--features", f_features, "input feature TSV")->required();
  fwd_cmd->add_option("--weights", f_weights, "weights file")->required();
  fwd_cmd->add_option("--layers", f_layers, "layer count (default: all defined)");
  fwd_cmd->add_option("--out", f_out, "output feature TSV")->required();
  fwd_cmd->callback(
      [&] { code = run_forward(f_file, f_scheme, f_features, f_weights, f_layers, f_out); });

  auto* walk_cmd = app.add_subcommand("walks", "sample seeded random walks on k-cells");
  std::string w_file, w_out;
  int w_dim = 0, w_length = 0, w_count = 0;
  std::uint64_t w_seed = 0;
  walk_cmd->add_option("file", w_file, "complex file (.cxc or .off)")->required();
  walk_cmd->add_option("--dim", w_dim, "cell dimension to walk on")->required();
  walk_cmd->add_option("--length", w_length, "walk length in cells")->required();
  walk_cmd->add_option("--count", w_count, "walks per cell")->required();
  walk_cmd->add_option("--seed", w_seed, "random seed")->required();
  walk_cmd->add_option("--out", w_out, "output corpus file")->required();
  walk_cmd->callback([&] { code = run_walks(w_file, w_dim, w_length, w_count, w_seed, w_out); });

  auto* embed_cmd = app.add_subcommand("embed", "train cell embeddings");
  std::string e_file, e_method, e_out;
  TrainConfig e_cfg;
  embed_cmd->add_option("file", e_file, "complex file (.cxc or .off)")->required();
  embed_cmd->add_option("--method", e_method, "decoder family")
      ->required()
      ->check(CLI::IsMember({"rw", "ip", "lap", "random_walk", "inner_product", "laplacian"}));
  embed_cmd->add_option("--dim-embed", e_cfg.d, "embedding width")->required();
  embed_cmd->add_option("--epochs", e_cfg.epochs, "training epochs")->required();
  embed_cmd->add_option("--lr", e_cfg.lr, "learning rate")->required();
  embed_cmd->add_option("--seed", e_cfg.seed, "random seed")->required();
  embed_cmd->add_option("--walk-length", e_cfg.walk_length, "walk length (rw method)");
  embed_cmd->add_option("--walks-per-cell", e_cfg.walks_per_cell, "walks per cell (rw method)");
  embed_cmd->add_option("--window", e_cfg.window, "co-occurrence window (rw method)");
  embed_cmd->add_option("--out", e_out, "output embedding TSV")->required();
  embed_cmd->callback([&] {
    e_cfg.method = embed_method_from_name(e_method);
    code = run_embed(e_file, e_cfg, e_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int cli_code = app.exit(e);
    return cli_code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace cxn
