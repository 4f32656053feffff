#ifndef CXN_CELL_COMPLEX_HPP
#define CXN_CELL_COMPLEX_HPP

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cxn/error.hpp"

namespace cxn {

using CellId = std::string;

/// One signed incidence: a cell id together with an orientation coefficient.
struct SignedEntry {
  CellId id;
  int sign = +1;

  bool operator==(const SignedEntry&) const = default;
};

using SignedCellList = std::vector<SignedEntry>;

/// Input description of a single cell: its id, dimension, and signed facet
/// list. In unoriented complexes every sign must be +1.
struct Cell {
  CellId id;
  int dim = 0;
  SignedCellList boundary;
};

enum class Direction { facets, cofacets };
enum class Relation { adjacent, coadjacent };

/// Which shared-witness set a pair query asks for: shared_cofacets is the
/// set of common cofacets of two k-cells (written CO below), shared_facets
/// the set of common facets (written C).
enum class PairSet { shared_cofacets, shared_facets };

/// Skeleton selectors: cells of dimension == k, < k, or > k.
enum class SkeletonFilter { eq, below, above };

struct ValidationIssue {
  errc code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
};

/// A finite regular cell complex held purely combinatorially: cells with
/// dimensions and signed facet incidences. Immutable after construction, so
/// instances can be shared read-only across threads.
///
/// Cells are stored in canonical order: ascending dimension, insertion order
/// within a dimension. Every matrix row/column ordering downstream derives
/// from this storage order.
class CellComplex {
public:
  struct StoredCell {
    CellId id;
    int dim;
    std::vector<std::pair<int, int>> boundary;  // (cell index, sign)
    std::vector<std::pair<int, int>> cofacets;  // (cell index, sign)
  };

  int dimension() const { return dim_; }
  bool oriented() const { return oriented_; }
  int size() const { return static_cast<int>(cells_.size()); }

  /// Number of cells of dimension m (0 for out-of-range m).
  int size(int m) const;

  /// Number of cells of dimension < top, i.e. |X| - |X^n|.
  int size_below_top() const { return size() - size(dim_); }

  bool contains(const CellId& id) const { return index_of_.count(id) != 0; }

  /// Canonical index of a cell; throws UnknownCell.
  int index(const CellId& id) const;

  const CellId& id(int index) const { return cells_[index].id; }
  int dim_of(int index) const { return cells_[index].dim; }
  int dim_of(const CellId& id) const { return cells_[index(id)].dim; }

  /// Canonical index of the first cell of dimension m (== size() when the
  /// complex has no cell of dimension >= m).
  int offset(int m) const;

  const StoredCell& cell(int index) const { return cells_[index]; }

  std::span<const std::pair<int, int>> boundary_of(int index) const { return cells_[index].boundary; }
  std::span<const std::pair<int, int>> cofacets_of(int index) const { return cells_[index].cofacets; }

  /// A structurally identical complex with all orientation data dropped
  /// (every sign +1, oriented flag cleared).
  CellComplex as_unoriented() const;

  friend CellComplex build_complex(std::vector<Cell> cell_specs, bool oriented);

private:
  std::vector<StoredCell> cells_;           // canonical order
  std::unordered_map<CellId, int> index_of_;
  std::vector<int> offsets_;                // offsets_[m] = first index of dim m; size dim_+2
  int dim_ = 0;
  bool oriented_ = false;
};

/// Validates and assembles a complex from cell descriptions. The specs may
/// arrive in any order; they are stably sorted by dimension first.
CellComplex build_complex(std::vector<Cell> cell_specs, bool oriented);

/// Collects every violation in the specs instead of throwing on the first.
ValidationReport validate_cells(const std::vector<Cell>& cell_specs, bool oriented);

/// Closure of a set of maximal simplices, with the alternating-sign
/// orientation induced by sorting each simplex's vertices ascending. The
/// result always satisfies the chain condition d(d(c)) = 0.
CellComplex build_simplicial(const std::vector<std::vector<std::string>>& maximal_simplices);

/// Polygonal 2-complex from vertex-index cycles: one 2-cell per cycle, edges
/// deduplicated across faces and oriented along their first traversal.
CellComplex build_polygonal(int vertex_count, const std::vector<std::vector<int>>& faces);

/// Cells matched by the selector, in canonical order. Out-of-range k yields
/// an empty list.
std::vector<CellId> skeleton(const CellComplex& x, SkeletonFilter filter, int k);

/// Facets or cofacets of a cell with their incidence signs. In unoriented
/// complexes every returned sign is +1. facets+/- partitions are obtained by
/// filtering on sign.
SignedCellList incident_cells(const CellComplex& x, const CellId& c, Direction direction);

SignedCellList filter_sign(const SignedCellList& entries, int sign);

/// Adjacent (shared cofacet) or coadjacent (shared facet) cells of c, sorted
/// canonically. Unoriented complexes use the symmetric relation; oriented
/// ones the sign-split relation, which need not be symmetric. A cell is
/// never its own neighbor.
std::vector<CellId> neighbors(const CellComplex& x, const CellId& c, Relation relation);
std::vector<int> neighbor_indices(const CellComplex& x, int c, Relation relation);

/// Shared cofacet set CO[a,b] or shared facet set C[a,b] of two cells of
/// equal dimension, as an unsigned cell set in canonical order. Throws
/// DimensionMismatch when d(a) != d(b).
///
/// Unoriented: CO[a,b] = cofacets(a) n cofacets(b), symmetric. Oriented:
/// CO[a,b] = cofacets-(a) n cofacets+(b), the witnesses that a is adjacent
/// to b; generally CO[a,b] != CO[b,a]. C mirrors this on facets.
std::vector<CellId> co_set(const CellComplex& x, const CellId& a, const CellId& b, PairSet which);
std::vector<int> co_set_indices(const CellComplex& x, int a, int b, PairSet which);

/// Re-checks structural invariants and, when check_chain is set on an
/// oriented complex, whether d(d(c)) = 0 in integer arithmetic for every
/// cell of dimension >= 2. Chain violations are warnings, not errors:
/// hand-authored sign choices may legitimately break the chain condition.
ValidationReport validate(const CellComplex& x, bool check_chain);

/// Integer coefficients of d(d(c)) for the cell at `index`, as (cell index,
/// coefficient) pairs with zeros dropped. Empty result means the chain
/// condition holds at c.
std::vector<std::pair<int, long long>> chain_defect(const CellComplex& x, int index);

}  // namespace cxn

#endif
