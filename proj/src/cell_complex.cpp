#include "cxn/cell_complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace cxn {

int CellComplex::size(int m) const {
  if (m < 0 || m > dim_) return 0;
  return offsets_[m + 1] - offsets_[m];
}

int CellComplex::index(const CellId& id) const {
  auto it = index_of_.find(id);
  if (it == index_of_.end()) fail(errc::unknown_cell, "unknown cell '" + id + "'");
  return it->second;
}

int CellComplex::offset(int m) const {
  if (m < 0) return 0;
  if (m > dim_ + 1) return size();
  return offsets_[m];
}

CellComplex CellComplex::as_unoriented() const {
  std::vector<Cell> specs;
  specs.reserve(cells_.size());
  for (const StoredCell& c : cells_) {
    Cell spec{c.id, c.dim, {}};
    spec.boundary.reserve(c.boundary.size());
    for (auto [f, sign] : c.boundary) spec.boundary.push_back({cells_[f].id, +1});
    specs.push_back(std::move(spec));
  }
  return build_complex(std::move(specs), false);
}

ValidationReport validate_cells(const std::vector<Cell>& cell_specs, bool oriented) {
  ValidationReport report;
  auto error = [&](errc code, std::string message) {
    report.errors.push_back({code, std::move(message)});
  };

  std::unordered_map<CellId, int> dim_of;
  for (const Cell& c : cell_specs) {
    if (!dim_of.emplace(c.id, c.dim).second) error(errc::duplicate_id, "duplicate cell id '" + c.id + "'");
    if (c.dim < 0) error(errc::syntax, "cell '" + c.id + "' has negative dimension");
  }

  for (const Cell& c : cell_specs) {
    std::unordered_set<CellId> seen;
    for (const SignedEntry& entry : c.boundary) {
      if (!seen.insert(entry.id).second) {
        error(errc::duplicate_facet, "cell '" + c.id + "' lists facet '" + entry.id + "' more than once");
        continue;
      }
      auto it = dim_of.find(entry.id);
      if (it == dim_of.end()) {
        error(errc::dangling_facet, "cell '" + c.id + "' references unknown facet '" + entry.id + "'");
      } else if (it->second != c.dim - 1) {
        error(errc::dimension_mismatch, "cell '" + c.id + "' (dim " + std::to_string(c.dim) +
                                            ") lists '" + entry.id + "' (dim " + std::to_string(it->second) +
                                            ") as a facet");
      }
      if (oriented) {
        if (entry.sign != 1 && entry.sign != -1)
          error(errc::syntax, "cell '" + c.id + "': facet sign must be +1 or -1");
      } else if (entry.sign != 1) {
        error(errc::sign_in_unoriented, "cell '" + c.id + "': signed facet '" + entry.id +
                                            "' in an unoriented complex");
      }
    }
  }
  return report;
}

CellComplex build_complex(std::vector<Cell> cell_specs, bool oriented) {
  ValidationReport report = validate_cells(cell_specs, oriented);
  if (!report.ok()) fail(report.errors.front().code, report.errors.front().message);

  // Canonical order: dimension-major, insertion order within a dimension.
  std::stable_sort(cell_specs.begin(), cell_specs.end(),
                   [](const Cell& a, const Cell& b) { return a.dim < b.dim; });

  CellComplex x;
  x.oriented_ = oriented;
  x.cells_.reserve(cell_specs.size());
  for (int i = 0; i < static_cast<int>(cell_specs.size()); ++i) {
    x.index_of_.emplace(cell_specs[i].id, i);
    x.cells_.push_back({cell_specs[i].id, cell_specs[i].dim, {}, {}});
    x.dim_ = std::max(x.dim_, cell_specs[i].dim);
  }

  for (int i = 0; i < static_cast<int>(cell_specs.size()); ++i) {
    auto& stored = x.cells_[i].boundary;
    for (const SignedEntry& entry : cell_specs[i].boundary)
      stored.push_back({x.index_of_.at(entry.id), entry.sign});
    std::sort(stored.begin(), stored.end());
  }
  for (int i = 0; i < x.size(); ++i)
    for (auto [f, sign] : x.cells_[i].boundary) x.cells_[f].cofacets.push_back({i, sign});

  x.offsets_.assign(x.dim_ + 2, 0);
  for (const auto& c : x.cells_) ++x.offsets_[c.dim + 1];
  for (int m = 0; m <= x.dim_; ++m) x.offsets_[m + 1] += x.offsets_[m];
  return x;
}

std::vector<CellId> skeleton(const CellComplex& x, SkeletonFilter filter, int k) {
  int begin = 0, end = 0;
  switch (filter) {
    case SkeletonFilter::eq:
      if (k >= 0 && k <= x.dimension()) begin = x.offset(k), end = x.offset(k + 1);
      break;
    case SkeletonFilter::below:
      begin = 0, end = x.offset(k);
      break;
    case SkeletonFilter::above:
      begin = x.offset(k + 1), end = x.size();
      break;
  }
  std::vector<CellId> ids;
  ids.reserve(end - begin);
  for (int i = begin; i < end; ++i) ids.push_back(x.id(i));
  return ids;
}

SignedCellList incident_cells(const CellComplex& x, const CellId& c, Direction direction) {
  int i = x.index(c);
  auto entries = direction == Direction::facets ? x.boundary_of(i) : x.cofacets_of(i);
  SignedCellList out;
  out.reserve(entries.size());
  for (auto [cell, sign] : entries) out.push_back({x.id(cell), sign});
  return out;
}

SignedCellList filter_sign(const SignedCellList& entries, int sign) {
  SignedCellList out;
  for (const SignedEntry& e : entries)
    if (e.sign == sign) out.push_back(e);
  return out;
}

std::vector<int> neighbor_indices(const CellComplex& x, int c, Relation relation) {
  std::vector<int> out;
  if (x.oriented()) {
    // b is adjacent to c when some e has c in facets+(e) and b in facets-(e);
    // coadjacency mirrors the same sign split on shared facets.
    if (relation == Relation::adjacent) {
      for (auto [e, sc] : x.cofacets_of(c)) {
        if (sc != 1) continue;
        for (auto [b, sb] : x.boundary_of(e))
          if (sb == -1 && b != c) out.push_back(b);
      }
    } else {
      for (auto [f, sc] : x.boundary_of(c)) {
        if (sc != 1) continue;
        for (auto [b, sb] : x.cofacets_of(f))
          if (sb == -1 && b != c) out.push_back(b);
      }
    }
  } else {
    if (relation == Relation::adjacent) {
      for (auto [e, sc] : x.cofacets_of(c))
        for (auto [b, sb] : x.boundary_of(e))
          if (b != c) out.push_back(b);
    } else {
      for (auto [f, sc] : x.boundary_of(c))
        for (auto [b, sb] : x.cofacets_of(f))
          if (b != c) out.push_back(b);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CellId> neighbors(const CellComplex& x, const CellId& c, Relation relation) {
  std::vector<CellId> ids;
  for (int b : neighbor_indices(x, x.index(c), relation)) ids.push_back(x.id(b));
  return ids;
}

std::vector<int> co_set_indices(const CellComplex& x, int a, int b, PairSet which) {
  if (x.dim_of(a) != x.dim_of(b))
    fail(errc::dimension_mismatch, "co_set requires cells of equal dimension ('" + x.id(a) + "' is " +
                                       std::to_string(x.dim_of(a)) + "-dimensional, '" + x.id(b) + "' is " +
                                       std::to_string(x.dim_of(b)) + "-dimensional)");
  auto side_a = which == PairSet::shared_cofacets ? x.cofacets_of(a) : x.boundary_of(a);
  auto side_b = which == PairSet::shared_cofacets ? x.cofacets_of(b) : x.boundary_of(b);

  // Oriented witnesses split by sign: CO[a,b] = cofacets-(a) n cofacets+(b),
  // C[a,b] = facets-(a) n facets+(b). Unoriented sets ignore signs.
  std::vector<int> left, right;
  for (auto [cell, sign] : side_a)
    if (!x.oriented() || sign == -1) left.push_back(cell);
  for (auto [cell, sign] : side_b)
    if (!x.oriented() || sign == 1) right.push_back(cell);
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());

  std::vector<int> out;
  std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(out));
  return out;
}

std::vector<CellId> co_set(const CellComplex& x, const CellId& a, const CellId& b, PairSet which) {
  std::vector<CellId> ids;
  for (int e : co_set_indices(x, x.index(a), x.index(b), which)) ids.push_back(x.id(e));
  return ids;
}

std::vector<std::pair<int, long long>> chain_defect(const CellComplex& x, int index) {
  std::map<int, long long> coeff;
  for (auto [f, s] : x.boundary_of(index))
    for (auto [g, t] : x.boundary_of(f)) coeff[g] += static_cast<long long>(s) * t;
  std::vector<std::pair<int, long long>> out;
  for (auto [g, v] : coeff)
    if (v != 0) out.push_back({g, v});
  return out;
}

ValidationReport validate(const CellComplex& x, bool check_chain) {
  ValidationReport report;
  for (int i = 0; i < x.size(); ++i) {
    std::unordered_set<int> seen;
    for (auto [f, sign] : x.boundary_of(i)) {
      if (!seen.insert(f).second)
        report.errors.push_back({errc::duplicate_facet, "cell '" + x.id(i) + "' lists facet '" + x.id(f) +
                                                            "' more than once"});
      if (x.dim_of(f) != x.dim_of(i) - 1)
        report.errors.push_back({errc::dimension_mismatch, "cell '" + x.id(i) + "' has facet '" + x.id(f) +
                                                               "' of dimension " + std::to_string(x.dim_of(f))});
      if (!x.oriented() && sign != 1)
        report.errors.push_back({errc::sign_in_unoriented, "cell '" + x.id(i) + "': signed facet '" + x.id(f) +
                                                               "' in an unoriented complex"});
    }
  }

  if (check_chain) {
    if (!x.oriented()) {
      report.warnings.push_back("chain check skipped: complex is unoriented");
    } else {
      for (int i = 0; i < x.size(); ++i) {
        if (x.dim_of(i) < 2) continue;
        auto defect = chain_defect(x, i);
        if (defect.empty()) continue;
        std::string terms;
        for (auto [g, v] : defect) {
          if (!terms.empty()) terms += " ";
          terms += (v > 0 ? "+" : "") + std::to_string(v) + "*" + x.id(g);
        }
        report.warnings.push_back("chain condition violated at '" + x.id(i) + "': dd(" + x.id(i) +
                                  ") = " + terms);
      }
    }
  }
  return report;
}

namespace {

// Lexicographic (m+1)-subsets of 0..n-1; returns false when exhausted.
bool next_combination(std::vector<int>& c, int n) {
  int m = static_cast<int>(c.size());
  for (int i = m - 1; i >= 0; --i) {
    if (c[i] < n - m + i) {
      ++c[i];
      for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::string join_id(const std::vector<std::string>& vertices, const std::vector<int>& pick) {
  std::string id;
  for (int i : pick) {
    if (!id.empty()) id += "|";
    id += vertices[i];
  }
  return id;
}

}  // namespace

CellComplex build_simplicial(const std::vector<std::vector<std::string>>& maximal_simplices) {
  std::vector<Cell> specs;
  std::unordered_set<std::string> declared;

  for (const auto& simplex : maximal_simplices) {
    std::vector<std::string> vertices = simplex;
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
      fail(errc::duplicate_vertex_in_simplex, "simplex repeats vertex '" +
                                                  *std::adjacent_find(vertices.begin(), vertices.end()) + "'");

    int n = static_cast<int>(vertices.size());
    for (int m = 0; m < n; ++m) {
      std::vector<int> pick(m + 1);
      for (int i = 0; i <= m; ++i) pick[i] = i;
      do {
        std::string id = join_id(vertices, pick);
        if (!declared.insert(id).second) continue;
        Cell face{id, m, {}};
        // Standard alternating simplicial boundary over ascending vertices.
        for (int drop = 0; drop <= m && m > 0; ++drop) {
          std::vector<int> facet;
          for (int i = 0; i <= m; ++i)
            if (i != drop) facet.push_back(pick[i]);
          face.boundary.push_back({join_id(vertices, facet), drop % 2 == 0 ? +1 : -1});
        }
        specs.push_back(std::move(face));
      } while (next_combination(pick, n));
    }
  }
  return build_complex(std::move(specs), true);
}

CellComplex build_polygonal(int vertex_count, const std::vector<std::vector<int>>& faces) {
  std::vector<Cell> specs;
  specs.reserve(vertex_count);
  for (int i = 0; i < vertex_count; ++i) specs.push_back({"v" + std::to_string(i), 0, {}});

  std::map<std::pair<int, int>, std::pair<std::string, bool>> edges;  // key -> (id, stored as key order)
  std::vector<Cell> face_cells;
  for (const auto& cycle : faces) {
    std::set<int> distinct(cycle.begin(), cycle.end());
    if (distinct.size() < 3)
      fail(errc::cycle_too_short, "face cycle needs at least 3 distinct vertices, got " +
                                      std::to_string(distinct.size()));
    for (int v : cycle)
      if (v < 0 || v >= vertex_count)
        fail(errc::vertex_index_out_of_range, "vertex index " + std::to_string(v) + " outside [0, " +
                                                  std::to_string(vertex_count) + ")");

    Cell face{"f" + std::to_string(face_cells.size()), 2, {}};
    int n = static_cast<int>(cycle.size());
    for (int i = 0; i < n; ++i) {
      int a = cycle[i], b = cycle[(i + 1) % n];
      auto key = std::minmax(a, b);
      auto it = edges.find(key);
      if (it == edges.end()) {
        // First traversal fixes the edge orientation: tail -1, head +1.
        std::string id = "e" + std::to_string(edges.size());
        it = edges.emplace(key, std::pair{id, a == key.first}).first;
        specs.push_back({id, 1, {{"v" + std::to_string(a), -1}, {"v" + std::to_string(b), +1}}});
      }
      bool along = (a == key.first) == it->second.second;
      face.boundary.push_back({it->second.first, along ? +1 : -1});
    }
    face_cells.push_back(std::move(face));
  }
  for (Cell& f : face_cells) specs.push_back(std::move(f));
  return build_complex(std::move(specs), true);
}

}  // namespace cxn
