#include "diameter/exact.hpp"
#include "diameter/grid.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace diameter;

namespace {

Cell cell(std::initializer_list<std::int64_t> v) {
  Cell c(static_cast<Index>(v.size()));
  Index i = 0;
  for (auto x : v) c[i++] = x;
  return c;
}

Point point(std::initializer_list<double> v) {
  Point p(static_cast<Index>(v.size()));
  Index i = 0;
  for (auto x : v) p[i++] = x;
  return p;
}

PointSet uniform(Index d, Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointSet s(d, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < d; ++i) s(i, j) = u(rng);
  return s;
}

RoundedSet lattice_set(std::initializer_list<Cell> cells) {
  const Index d = cells.begin()->size();
  RoundedSet s{GridSpec::with_width(Point::Zero(d), 1.0), RoundingMode::grid_vertex, {}};
  Index k = 0;
  for (const auto& c : cells) s.points.push_back({c, {k++}});
  return s;
}

// Independent oracle: all-pairs maximum squared lattice distance.
std::int64_t max_sq(const RoundedSet& s) {
  std::int64_t best = 0;
  for (const auto& a : s.points)
    for (const auto& b : s.points) best = std::max<std::int64_t>(best, (a.cell - b.cell).squaredNorm());
  return best;
}

}  // namespace

TEST(Embed, Examples) {
  const GridSpec unit = GridSpec::with_width(point({0, 0}), 1.0);
  EXPECT_EQ(embed(unit, RoundingMode::cell_center, cell({0, 0})), point({0.5, 0.5}));
  const GridSpec half = GridSpec::with_width(point({0, 0}), 0.5);
  EXPECT_EQ(embed(half, RoundingMode::grid_vertex, cell({2, -1})), point({1.0, -0.5}));
  const GridSpec wide = GridSpec::with_width(point({3}), 2.0);
  EXPECT_EQ(embed(wide, RoundingMode::cell_center, cell({0})), point({4.0}));
}

TEST(GridSpec, RejectsNonpositiveWidth) {
  EXPECT_THROW(GridSpec::with_width(point({0}), 0.0), std::invalid_argument);
  EXPECT_THROW(GridSpec::with_width(point({0}), -1.0), std::invalid_argument);
  PointSet s(1, 1);
  s << 0.5;
  EXPECT_THROW(round_to_cell_centers(s, 0.0, point({0})), std::invalid_argument);
}

TEST(RoundToCellCenters, Examples) {
  PointSet a(2, 1);
  a << 0.3, 0.7;
  const auto ra = round_to_cell_centers(a, 1.0, point({0, 0}));
  ASSERT_EQ(ra.size(), 1);
  EXPECT_EQ(ra.points[0].cell, cell({0, 0}));
  EXPECT_EQ(ra.embed(0), point({0.5, 0.5}));

  // Interior boundary goes up by the floor rule; (0, 0) keeps the top face from being clamped.
  PointSet b(2, 3);
  b << 1.0, 0.0, 3.0,
       2.0, 0.0, 3.0;
  const auto rb = round_to_cell_centers(b, 1.0, point({0, 0}));
  EXPECT_EQ(rb.points[0].cell, cell({1, 2}));
}

TEST(RoundToCellCenters, TopFaceClampedIntoLastCell) {
  PointSet s(1, 3);
  s << 0.0, 0.4, 1.0;
  const auto r = round_to_cell_centers(s, 0.25, point({0}));
  std::set<std::int64_t> cells;
  for (const auto& lp : r.points) cells.insert(lp.cell[0]);
  EXPECT_EQ(cells, (std::set<std::int64_t>{0, 1, 3}));
}

TEST(RoundToCellCenters, UnitSquareHasAtMostSixteenCells) {
  const PointSet s = uniform(2, 1000, 5);
  const auto r = round_to_cell_centers(s, 0.25, point({0, 0}));
  EXPECT_LE(r.size(), 16);
  EXPECT_GE(r.size(), 15);  // 1000 uniform points essentially fill the 4x4 grid
  for (const auto& lp : r.points) {
    EXPECT_GE(lp.cell.minCoeff(), 0);
    EXPECT_LE(lp.cell.maxCoeff(), 3);
  }
}

TEST(RoundToCellCenters, SourcesPartitionInput) {
  const PointSet s = uniform(3, 500, 9);
  const auto r = round_to_cell_centers(s, 0.1, point({0, 0, 0}));
  std::vector<int> hits(500, 0);
  for (const auto& lp : r.points) {
    EXPECT_TRUE(std::is_sorted(lp.sources.begin(), lp.sources.end()));
    for (Index j : lp.sources) ++hits[static_cast<std::size_t>(j)];
  }
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(RoundToCellCenters, DisplacementAtMostHalfCellPerAxis) {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const Index d = 1 + seed % 5;
    const PointSet s = uniform(d, 300, seed);
    const double w = 0.013 * (1 + seed);
    const auto r = round_to_cell_centers(s, w, Point(s.rowwise().minCoeff()));
    for (Index k = 0; k < r.size(); ++k) {
      const Point c = r.embed(k);
      for (Index j : r.points[static_cast<std::size_t>(k)].sources) {
        const double tol = 8 * std::numeric_limits<double>::epsilon();
        EXPECT_LE((s.col(j) - c).cwiseAbs().maxCoeff(), w / 2 + tol);
        EXPECT_LE((s.col(j) - c).norm(), w * std::sqrt(double(d)) / 2 + tol);
      }
    }
  }
}

TEST(RoundToGridVertices, NearestVertexAndHalfUpTie) {
  RoundedSet fine{GridSpec::with_width(point({0.73}), 0.02), RoundingMode::cell_center, {}};
  fine.points.push_back({cell({0}), {0}});  // 0.74
  const GridSpec coarse = GridSpec::with_width(point({0.0}), 0.5);
  const auto r = round_to_grid_vertices(fine, coarse);
  ASSERT_EQ(r.size(), 1);
  EXPECT_EQ(r.points[0].cell, cell({1}));
  EXPECT_EQ(r.embed(0), point({0.5}));

  RoundedSet tie{GridSpec::with_width(point({0.0}), 0.5), RoundingMode::cell_center, {}};
  tie.points.push_back({cell({1}), {0}});  // 0.75
  const auto rt = round_to_grid_vertices(tie, 0.5, point({0.0}));
  EXPECT_EQ(rt.points[0].cell, cell({2}));
  EXPECT_EQ(rt.embed(0), point({1.0}));
}

TEST(RoundToGridVertices, RejectsVertexInput) {
  const RoundedSet v = lattice_set({cell({0})});
  EXPECT_THROW(round_to_grid_vertices(v, 1.0, point({0.0})), std::invalid_argument);
}

TEST(RoundToGridVertices, VertexCountForUnitEpsilonInThePlane) {
  // eps = 1, d = 2, ell = 1: both grids have 2 sqrt 2 cells across.
  const PointSet s = uniform(2, 20000, 3);
  PointSet full(2, s.cols() + 2);
  full.leftCols(s.cols()) = s;
  full.col(s.cols()) << 0, 0;
  full.col(s.cols() + 1) << 1, 1;
  const double r = 2 * std::sqrt(2.0);
  const GridSpec g{Point::Zero(2), 1.0, r};
  const auto fine = round_to_cell_centers(full, g);
  const auto coarse = round_to_grid_vertices(fine, g);
  EXPECT_LE(coarse.size(), 14);
  EXPECT_LE(coarse.size(), fine.size());
}

TEST(RoundToGridVertices, LatticeAndRealPathsAgree) {
  const PointSet s = uniform(3, 400, 21);
  const GridSpec fine_grid{Point::Zero(3), 1.0, 37.0};
  const GridSpec coarse_grid{Point::Zero(3), 1.0, 37.0 / 6.1};
  const auto fine = round_to_cell_centers(s, fine_grid);
  const auto a = round_to_grid_vertices(fine, coarse_grid);
  const auto b = round_to_grid_vertices(fine, coarse_grid.cell_width(), Point(Point::Zero(3)));
  ASSERT_EQ(a.size(), b.size());
  for (Index k = 0; k < a.size(); ++k) EXPECT_EQ(a.points[k].cell, b.points[k].cell);
}

TEST(ColumnFilter, KeepsColumnExtremes) {
  const auto s = lattice_set({cell({0, 0}), cell({0, 3}), cell({0, 7})});
  const auto f = column_filter(s);
  ASSERT_EQ(f.size(), 2);
  EXPECT_EQ(f.points[0].cell, cell({0, 0}));
  EXPECT_EQ(f.points[1].cell, cell({0, 7}));
}

TEST(ColumnFilter, Idempotent) {
  const auto s = lattice_set({cell({0, 0}), cell({0, 7}), cell({1, 2}), cell({2, -1}), cell({2, 4})});
  const auto f = column_filter(s);
  EXPECT_EQ(f.size(), s.size());
  const auto ff = column_filter(f);
  ASSERT_EQ(ff.size(), f.size());
  for (Index k = 0; k < f.size(); ++k) EXPECT_EQ(ff.points[k].cell, f.points[k].cell);
}

TEST(ColumnFilter, PreservesDiameterOfRandomRoundedSets) {
  for (unsigned seed = 0; seed < 30; ++seed) {
    const Index d = 1 + seed % 4;
    const PointSet s = uniform(d, 500, 100 + seed);
    const auto r = round_to_cell_centers(s, 0.05 + 0.01 * (seed % 7), Point(Point::Zero(d)));
    const auto f = column_filter(r);
    EXPECT_LE(f.size(), static_cast<Index>(2 * distinct_prefixes(r)));
    EXPECT_EQ(max_sq(f), max_sq(r));
  }
}

TEST(CollectBox, ClosedBoundary) {
  RoundedSet s{GridSpec::with_width(point({0, 0}), 1.0), RoundingMode::grid_vertex, {}};
  s.points.push_back({cell({1, 1}), {0}});
  const auto in = collect_box(s, point({0, 0}), 1.0);
  EXPECT_EQ(in.size(), 1);

  RoundedSet t{GridSpec::with_width(point({0, 0}), 0.01), RoundingMode::grid_vertex, {}};
  t.points.push_back({cell({101, 0}), {0}});
  EXPECT_EQ(collect_box(t, point({0, 0}), 1.0).size(), 0);
}

TEST(CollectBox, LatticeFormMatchesRealForm) {
  const PointSet s = uniform(2, 2000, 4);
  const GridSpec fine_grid{Point::Zero(2), 1.0, 2 * std::sqrt(2.0) / 0.1};
  const GridSpec coarse_grid{Point::Zero(2), 1.0, 2 * std::sqrt(2.0) / std::sqrt(0.1)};
  const auto fine = round_to_cell_centers(s, fine_grid);
  for (std::int64_t x = 0; x <= 9; x += 3) {
    const Cell v = cell({x, 9 - x});
    const auto a = collect_box_around_vertex(fine, coarse_grid, v, 0.75);
    const auto b = collect_box(fine, embed(coarse_grid, RoundingMode::grid_vertex, v), 0.75 * coarse_grid.cell_width());
    EXPECT_EQ(a.size(), b.size());
  }
}

TEST(CollectBox, CellCountForQuarterEpsilonInThePlane) {
  // rho = 2 fine cells per coarse cell; a closed box of side 3 fine widths around an
  // even lattice vertex meets 4 cell centers per axis.
  const double eps = 0.25;
  const PointSet s = uniform(2, 20000, 8);
  const GridSpec fine_grid{Point::Zero(2), 1.0, 2 * std::sqrt(2.0) / eps};
  const GridSpec coarse_grid{Point::Zero(2), 1.0, 2 * std::sqrt(2.0) / std::sqrt(eps)};
  const auto fine = round_to_cell_centers(s, fine_grid);
  Index largest = 0;
  for (std::int64_t x = 1; x <= 3; ++x)
    for (std::int64_t y = 1; y <= 3; ++y) {
      largest = std::max(largest, collect_box_around_vertex(fine, coarse_grid, cell({x, y}), 0.75).size());
    }
  EXPECT_EQ(largest, 16);
}

TEST(MergeUnion, DeduplicatesByCell) {
  const auto a = lattice_set({cell({0, 0}), cell({1, 0})});
  const auto b = lattice_set({cell({1, 0}), cell({2, 2})});
  const auto u = merge_union(a, b);
  EXPECT_EQ(u.size(), 3);
}
