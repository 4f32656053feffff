#ifndef CXN_IO_HPP
#define CXN_IO_HPP

#include <map>
#include <string>

#include "cxn/cell_complex.hpp"
#include "cxn/embedding.hpp"
#include "cxn/scheme.hpp"
#include "cxn/sparse.hpp"

namespace cxn {

/// CXC text format. Line 1: `cxc 1 oriented|unoriented`. Then `c <id> <dim>`
/// declares a cell and `b <id> <facet_id> <+1|-1>` appends a signed boundary
/// entry; `#` starts a comment; ids must be declared before use. parse and
/// serialize round-trip exactly.
CellComplex parse_complex(const std::string& text);
std::string serialize(const CellComplex& x);

/// OFF polygon meshes: coordinates are parsed (and validated) but discarded;
/// the combinatorics feed build_polygonal. Extra per-line fields (colors)
/// are tolerated.
CellComplex parse_off(const std::string& text);

/// MatrixMarket coordinate real general, 1-based, with a comment block
/// mapping row/column indices to cell ids. read_matrix ignores comments, so
/// labels do not survive a round trip (values and shape do).
std::string write_matrix(const SparseMatrix& m);
SparseMatrix read_matrix(const std::string& text);

/// Feature/embedding TSV: `cell_id <TAB> dim <TAB> v1 <TAB> ... <TAB> vd`,
/// 17-significant-digit values, canonical row order on output; input rows
/// may come in any order and are matched by cell id. Every dimension listed
/// in required_dims must be fully covered; other dimensions must be covered
/// fully or not at all.
std::string write_features(const CellComplex& x, const FeatureMap& h);
FeatureMap parse_features(const std::string& text, const CellComplex& x,
                          const std::vector<int>& required_dims);
std::string write_embeddings(const CellComplex& x, const EmbeddingTable& emb);

/// Weights file: `stack <name> <layers>`, then per layer a header
/// `layer <rows> <cols> <activation>` followed by <rows> weight rows and one
/// bias row. Stack names bind them to scheme slots: `alpha.k<K>.m<M>` and
/// `phi.k<K>.m<M>` (suffix `.down`/`.up` for the hodge scheme's
/// facet/cofacet directions), or `ccxn` for the convolutional weights.
std::map<std::string, AffineStack> parse_weights(const std::string& text);
std::string write_weights(const std::map<std::string, AffineStack>& stacks);

/// Assembles a SchemeConfig from named stacks. depth -1 infers the layer
/// count from the largest k mentioned; stacks beyond the chosen depth are
/// ignored.
SchemeConfig config_from_stacks(const std::map<std::string, AffineStack>& stacks, Scheme scheme,
                                int depth);

/// Extracts convolutional layer matrices from the stack named `ccxn`: every
/// layer must be square with relu activation and zero bias (the update rule
/// fixes both). layers -1 takes all.
CcxnWeights ccxn_from_stacks(const std::map<std::string, AffineStack>& stacks, int layers);

/// Walk corpus text: header `# dim=<k> seed=<s> length=<L>`, then one walk
/// per line as space-separated cell ids.
std::string write_walks(const CellComplex& x, const WalkCorpus& corpus);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// %.17g, enough digits to reproduce any double exactly.
std::string format_double(double v);

}  // namespace cxn

#endif
