#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
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

SignedCellList list(std::initializer_list<SignedEntry> entries) { return SignedCellList(entries); }

}  // namespace

TEST_CASE("cells are stored dimension-major in declaration order") {
  CellComplex x = build_complex(
      {
          {"F", 2, {{"e1", +1}, {"e2", -1}}},
          {"e2", 1, {{"v1", +1}, {"v2", -1}}},
          {"v2", 0, {}},
          {"e1", 1, {{"v1", -1}, {"v2", +1}}},
          {"v1", 0, {}},
      },
      true);
  CHECK(x.dimension() == 2);
  CHECK(x.size() == 5);
  CHECK(x.size(0) == 2);
  CHECK(x.size(1) == 2);
  CHECK(x.size(2) == 1);
  CHECK(x.size_below_top() == 4);
  // Declaration order within a dimension survives the dimension-major sort.
  CHECK(x.id(0) == "v2");
  CHECK(x.id(1) == "v1");
  CHECK(x.id(2) == "e2");
  CHECK(x.id(3) == "e1");
  CHECK(x.id(4) == "F");
  CHECK(x.offset(0) == 0);
  CHECK(x.offset(1) == 2);
  CHECK(x.offset(2) == 4);
  CHECK(x.offset(3) == 5);
  CHECK(x.index("e1") == 3);
  CHECK(x.dim_of("e1") == 1);
  CHECK(x.contains("F"));
  CHECK_FALSE(x.contains("missing"));
  CHECK(thrown_code([&] { x.index("missing"); }) == errc::unknown_cell);
}

TEST_CASE("builder rejects malformed cell lists") {
  CHECK(thrown_code([] {
          build_complex({{"v", 0, {}}, {"v", 0, {}}}, true);
        }) == errc::duplicate_id);
  CHECK(thrown_code([] {
          build_complex({{"e", 1, {{"v", -1}}}}, true);
        }) == errc::dangling_facet);
  CHECK(thrown_code([] {
          build_complex({{"v", 0, {}}, {"w", 0, {}}, {"F", 2, {{"v", +1}, {"w", -1}}}}, true);
        }) == errc::dimension_mismatch);
  CHECK(thrown_code([] {
          build_complex({{"v", 0, {}}, {"w", 0, {}}, {"e", 1, {{"v", +1}, {"v", -1}}}}, true);
        }) == errc::duplicate_facet);
  CHECK(thrown_code([] {
          build_complex({{"v", 0, {}}, {"w", 0, {}}, {"e", 1, {{"v", +1}, {"w", -1}}}}, false);
        }) == errc::sign_in_unoriented);
  CHECK(thrown_code([] {
          build_complex({{"v", 0, {}}, {"w", 0, {}}, {"e", 1, {{"v", +2}, {"w", -1}}}}, true);
        }) == errc::syntax);
  CHECK(thrown_code([] { build_complex({{"v", -1, {}}}, true); }) == errc::syntax);
}

TEST_CASE("validate_cells collects every issue instead of stopping at the first") {
  ValidationReport report = validate_cells(
      {
          {"v", 0, {}},
          {"v", 0, {}},
          {"e", 1, {{"v", +1}, {"ghost", -1}}},
      },
      true);
  CHECK_FALSE(report.ok());
  CHECK(report.errors.size() == 2);
}

TEST_CASE("simplicial closure of one triangle") {
  CellComplex x = build_simplicial({{"b", "a", "c"}});
  CHECK(x.oriented());
  CHECK(x.size(0) == 3);
  CHECK(x.size(1) == 3);
  CHECK(x.size(2) == 1);
  // Vertices inside an id are sorted, so the orientation is canonical.
  CHECK(x.contains("a|b"));
  CHECK(x.contains("a|b|c"));
  // Alternating boundary signs: d(a|b|c) = b|c - a|c + a|b.
  SignedCellList boundary = incident_cells(x, "a|b|c", Direction::facets);
  CHECK(boundary == list({{"a|b", +1}, {"a|c", -1}, {"b|c", +1}}));
  for (int i = 0; i < x.size(); ++i) CHECK(chain_defect(x, i).empty());
  CHECK(thrown_code([] { build_simplicial({{"a", "b", "a"}}); }) ==
        errc::duplicate_vertex_in_simplex);
}

TEST_CASE("shared faces of two simplices are built once") {
  CellComplex x = build_simplicial({{"a", "b", "c"}, {"b", "c", "d"}});
  CHECK(x.size(0) == 4);
  CHECK(x.size(1) == 5);  // b|c appears in both triangles but is one cell
  CHECK(x.size(2) == 2);
}

TEST_CASE("polygonal builder dedupes edges and orients by first traversal") {
  CellComplex x = build_polygonal(6, {{0, 1, 4, 3}, {1, 2, 5, 4}});
  CHECK(x.size(0) == 6);
  CHECK(x.size(1) == 7);
  CHECK(x.size(2) == 2);
  // The shared edge 1-4 is traversed forward by f0 and backward by f1.
  int shared = -1;
  for (int i = x.offset(1); i < x.offset(2); ++i) {
    auto b = x.boundary_of(i);
    if (b.size() == 2 && x.id(b[0].first) == "v1" && x.id(b[1].first) == "v4") shared = i;
  }
  REQUIRE(shared >= 0);
  auto cofacets = x.cofacets_of(shared);
  REQUIRE(cofacets.size() == 2);
  CHECK(x.id(cofacets[0].first) == "f0");
  CHECK(cofacets[0].second == +1);
  CHECK(x.id(cofacets[1].first) == "f1");
  CHECK(cofacets[1].second == -1);
  for (int i = 0; i < x.size(); ++i) CHECK(chain_defect(x, i).empty());

  CHECK(thrown_code([] { build_polygonal(3, {{0, 1}}); }) == errc::cycle_too_short);
  CHECK(thrown_code([] { build_polygonal(3, {{0, 1, 3}}); }) == errc::vertex_index_out_of_range);
}

TEST_CASE("skeleton selectors slice the canonical order") {
  CellComplex x = test::load_fixture("multiedge_path.cxc");
  CHECK(skeleton(x, SkeletonFilter::eq, 0) ==
        std::vector<CellId>{"v1", "v2", "v3", "v4"});
  CHECK(skeleton(x, SkeletonFilter::below, 1) ==
        std::vector<CellId>{"v1", "v2", "v3", "v4"});
  CHECK(skeleton(x, SkeletonFilter::above, 1) == std::vector<CellId>{"F1", "F3"});
  CHECK(skeleton(x, SkeletonFilter::eq, 9).empty());
}

TEST_CASE("signed incidences on the multiedge path fixture") {
  CellComplex x = test::load_fixture("multiedge_path.cxc");
  CHECK(incident_cells(x, "v1", Direction::cofacets) == list({{"e1", -1}, {"e2", +1}}));
  CHECK(incident_cells(x, "v2", Direction::cofacets) ==
        list({{"e1", +1}, {"e2", -1}, {"e3", -1}, {"e4", -1}, {"e5", +1}}));
  CHECK(incident_cells(x, "v3", Direction::cofacets) ==
        list({{"e3", +1}, {"e4", +1}, {"e5", -1}, {"e6", +1}, {"e7", +1}}));
  CHECK(incident_cells(x, "v4", Direction::cofacets) == list({{"e6", -1}, {"e7", -1}}));
  CHECK(incident_cells(x, "F1", Direction::facets) == list({{"e1", +1}, {"e2", -1}}));
  CHECK(incident_cells(x, "e6", Direction::cofacets) == list({{"F3", +1}}));
  CHECK(incident_cells(x, "e7", Direction::cofacets) == list({{"F3", -1}}));
  CHECK(filter_sign(incident_cells(x, "v2", Direction::cofacets), +1) ==
        list({{"e1", +1}, {"e5", +1}}));
}

TEST_CASE("oriented neighbor relations are sign-split") {
  CellComplex x = test::load_fixture("multiedge_path.cxc");
  CHECK(neighbors(x, "v2", Relation::adjacent) == std::vector<CellId>{"v1", "v3"});
  CHECK(neighbors(x, "v4", Relation::adjacent).empty());
  CHECK(co_set(x, "v2", "v3", PairSet::shared_cofacets) == std::vector<CellId>{"e3", "e4"});
  CHECK(co_set(x, "v3", "v2", PairSet::shared_cofacets) == std::vector<CellId>{"e5"});
  CHECK(thrown_code([&] { co_set(x, "v1", "e1", PairSet::shared_cofacets); }) ==
        errc::dimension_mismatch);

  CellComplex y = test::load_fixture("double_disk.cxc");
  CHECK(neighbors(y, "F1", Relation::coadjacent) == std::vector<CellId>{"F2"});
  CHECK(neighbors(y, "F2", Relation::coadjacent).empty());
  CHECK(neighbors(y, "e1", Relation::adjacent).empty());
  CHECK(neighbors(y, "e2", Relation::adjacent).empty());
  CHECK(incident_cells(y, "e1", Direction::cofacets) == list({{"F1", +1}, {"F2", -1}}));
  CHECK(incident_cells(y, "e2", Direction::cofacets) == list({{"F1", +1}, {"F2", -1}}));
  CHECK(co_set(y, "e1", "e2", PairSet::shared_cofacets).empty());
  CHECK(co_set(y, "e2", "e1", PairSet::shared_cofacets).empty());
  CHECK(co_set(y, "F2", "F1", PairSet::shared_facets) == std::vector<CellId>{"e1", "e2"});
}

TEST_CASE("unoriented neighbor relations are symmetric") {
  CellComplex x = test::load_fixture("multiedge_path.cxc").as_unoriented();
  CHECK_FALSE(x.oriented());
  CHECK(neighbors(x, "v2", Relation::adjacent) == std::vector<CellId>{"v1", "v3"});
  CHECK(neighbors(x, "v4", Relation::adjacent) == std::vector<CellId>{"v3"});
  CHECK(co_set(x, "v2", "v3", PairSet::shared_cofacets) ==
        std::vector<CellId>{"e3", "e4", "e5"});
  CHECK(co_set(x, "v3", "v2", PairSet::shared_cofacets) ==
        std::vector<CellId>{"e3", "e4", "e5"});
  for (auto [f, sign] : x.boundary_of(x.index("F1"))) {
    (void)f;
    CHECK(sign == +1);
  }

  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    CellComplex y = test::random_complex(rng).as_unoriented();
    for (int i = 0; i < y.size(); ++i)
      for (int j : neighbor_indices(y, i, Relation::adjacent)) {
        auto back = neighbor_indices(y, j, Relation::adjacent);
        CHECK(std::find(back.begin(), back.end(), i) != back.end());
      }
  }
}

TEST_CASE("neighbor queries agree with the witness-set gate") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    CellComplex x = test::random_complex(rng);
    for (int i = 0; i < x.size(); ++i) {
      int m = x.dim_of(i);
      for (int j = x.offset(m); j < x.offset(m + 1); ++j) {
        if (i == j) continue;
        bool adjacent_listed = false;
        for (int a : neighbor_indices(x, i, Relation::adjacent)) adjacent_listed |= a == j;
        // a is in N_adj(b) exactly when CO[a,b] is nonempty.
        CHECK(adjacent_listed == !co_set_indices(x, j, i, PairSet::shared_cofacets).empty());
        bool coadjacent_listed = false;
        for (int a : neighbor_indices(x, i, Relation::coadjacent)) coadjacent_listed |= a == j;
        CHECK(coadjacent_listed == !co_set_indices(x, j, i, PairSet::shared_facets).empty());
      }
    }
  }
}

TEST_CASE("chain defects and validate warnings") {
  CellComplex x = test::load_fixture("multiedge_path.cxc");
  auto defect = chain_defect(x, x.index("F1"));
  REQUIRE(defect.size() == 2);
  CHECK(defect[0] == std::pair<int, long long>{x.index("v1"), -2});
  CHECK(defect[1] == std::pair<int, long long>{x.index("v2"), +2});
  CHECK(chain_defect(x, x.index("F3")).empty());

  ValidationReport report = validate(x, true);
  CHECK(report.ok());
  REQUIRE(report.warnings.size() == 1);
  CHECK(report.warnings[0] ==
        "chain condition violated at 'F1': dd(F1) = -2*v1 +2*v2");
  CHECK(validate(x, false).warnings.empty());

  CellComplex y = test::load_fixture("double_disk.cxc");
  CHECK(validate(y, true).warnings.empty());

  ValidationReport skipped = validate(x.as_unoriented(), true);
  CHECK(skipped.ok());
  REQUIRE(skipped.warnings.size() == 1);
  CHECK(skipped.warnings[0] == "chain check skipped: complex is unoriented");
}

TEST_CASE("builders always satisfy the chain condition") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    CellComplex x = rng.next_below(2) ? test::random_simplicial(rng) : test::random_polygonal(rng);
    CHECK(validate(x, true).warnings.empty());
  }
}
