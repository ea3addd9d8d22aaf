#pragma once

#include "diameter/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace diameter {

using Cell = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(c.size());
    for (Index i = 0; i < c.size(); ++i) {
      h ^= static_cast<std::uint64_t>(c[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct CellEqual {
  bool operator()(const Cell& a, const Cell& b) const noexcept { return a.size() == b.size() && a == b; }
};

/// Axis-aligned grid anchored at `origin`. Cells have width reference_length / resolution.
///
/// The width is kept in this factored form so that lattice coordinates of a point depend
/// only on (p - origin) / reference_length, which is invariant under uniform scaling of
/// the input when reference_length is itself a data extent.
template <typename Scalar = double>
struct GridSpecT {
  PointT<Scalar> origin;
  Scalar reference_length{1};
  Scalar resolution{1};

  static GridSpecT with_width(PointT<Scalar> origin, Scalar cell_width) {
    if (!(cell_width > 0) || !std::isfinite(cell_width)) {
      throw std::invalid_argument("grid: cell width must be positive and finite");
    }
    return {std::move(origin), cell_width, Scalar(1)};
  }

  Index dim() const { return origin.size(); }
  Scalar cell_width() const { return reference_length / resolution; }

  /// Point coordinate i expressed in cell units relative to the origin.
  Scalar lattice_coordinate(Scalar x, Index i) const { return (x - origin[i]) / reference_length * resolution; }

  void validate() const {
    if (!(reference_length > 0) || !(resolution > 0) || !std::isfinite(reference_length) ||
        !std::isfinite(resolution)) {
      throw std::invalid_argument("grid: cell width must be positive and finite");
    }
  }

  /// True when `other` is anchored at the same origin with the same reference length,
  /// so that the two lattices can be related through the resolution ratio alone.
  bool commensurable_with(const GridSpecT& other) const {
    return origin.size() == other.origin.size() && origin == other.origin &&
           reference_length == other.reference_length;
  }
};

using GridSpec = GridSpecT<double>;

enum class RoundingMode { cell_center, grid_vertex };

struct LatticePoint {
  Cell cell;
  /// Original input columns that rounded here, ascending.
  std::vector<Index> sources;
};

template <typename Scalar = double>
struct RoundedSetT {
  GridSpecT<Scalar> grid;
  RoundingMode mode{RoundingMode::cell_center};
  std::vector<LatticePoint> points;

  Index size() const { return static_cast<Index>(points.size()); }
  bool empty() const { return points.empty(); }
  Index dim() const { return grid.dim(); }

  PointT<Scalar> embed(Index i) const;
  /// All entries embedded as columns of a d x m matrix.
  PointSetT<Scalar> embedded() const;
  /// Lattice coordinates in cell units (cell_center entries sit at cell + 1/2).
  PointSetT<Scalar> lattice_coordinates() const;
};

using RoundedSet = RoundedSetT<double>;

template <typename Scalar>
PointT<Scalar> embed(const GridSpecT<Scalar>& grid, RoundingMode mode, const Cell& cell) {
  const Scalar shift = mode == RoundingMode::cell_center ? Scalar(0.5) : Scalar(0);
  const Scalar w = grid.cell_width();
  PointT<Scalar> p(cell.size());
  for (Index i = 0; i < cell.size(); ++i) {
    p[i] = grid.origin[i] + (static_cast<Scalar>(cell[i]) + shift) * w;
  }
  return p;
}

template <typename Scalar>
PointT<Scalar> RoundedSetT<Scalar>::embed(Index i) const {
  return diameter::embed(grid, mode, points[static_cast<std::size_t>(i)].cell);
}

template <typename Scalar>
PointSetT<Scalar> RoundedSetT<Scalar>::embedded() const {
  PointSetT<Scalar> out(dim(), size());
  for (Index j = 0; j < size(); ++j) out.col(j) = embed(j);
  return out;
}

template <typename Scalar>
PointSetT<Scalar> RoundedSetT<Scalar>::lattice_coordinates() const {
  const Scalar shift = mode == RoundingMode::cell_center ? Scalar(0.5) : Scalar(0);
  PointSetT<Scalar> out(dim(), size());
  for (Index j = 0; j < size(); ++j) {
    out.col(j) = points[static_cast<std::size_t>(j)].cell.template cast<Scalar>().array() + shift;
  }
  return out;
}

namespace detail {

inline std::int64_t to_cell_index(double v) {
  if (!(std::abs(v) < 9.0e15)) throw std::overflow_error("grid: lattice coordinate out of range");
  return static_cast<std::int64_t>(v);
}

/// Merges entries sharing a cell; first-seen order, sources kept ascending.
template <typename Scalar>
RoundedSetT<Scalar> merge_cells(GridSpecT<Scalar> grid, RoundingMode mode, std::vector<Cell> cells,
                                const std::vector<const std::vector<Index>*>& sources) {
  RoundedSetT<Scalar> out{std::move(grid), mode, {}};
  std::unordered_map<Cell, std::size_t, CellHash, CellEqual> slot;
  slot.reserve(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    auto [it, inserted] = slot.try_emplace(cells[k], out.points.size());
    if (inserted) out.points.push_back({std::move(cells[k]), {}});
    auto& dst = out.points[it->second].sources;
    dst.insert(dst.end(), sources[k]->begin(), sources[k]->end());
  }
  for (auto& lp : out.points) {
    if (!std::is_sorted(lp.sources.begin(), lp.sources.end())) std::sort(lp.sources.begin(), lp.sources.end());
  }
  return out;
}

}  // namespace detail

/// Rounds every column of `s` to the center of its grid cell.
///
/// Cell index is floor of the lattice coordinate; a point on the top face of the occupied
/// range is clamped into the last occupied cell instead of opening a new one.
template <typename Derived>
RoundedSetT<typename Derived::Scalar> round_to_cell_centers(const Eigen::MatrixBase<Derived>& s,
                                                            const GridSpecT<typename Derived::Scalar>& grid) {
  using Scalar = typename Derived::Scalar;
  using std::ceil;
  using std::floor;
  grid.validate();
  if (s.rows() != grid.dim()) throw std::invalid_argument("round_to_cell_centers: dimension mismatch");
  const Index d = s.rows();
  const Index n = s.cols();

  PointSetT<Scalar> q(d, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < d; ++i) q(i, j) = grid.lattice_coordinate(s(i, j), i);

  // Last occupied cell per axis; a flat axis (all points on one boundary) is never clamped.
  std::vector<std::int64_t> last(static_cast<std::size_t>(d), std::numeric_limits<std::int64_t>::max());
  if (n > 0) {
    for (Index i = 0; i < d; ++i) {
      const std::int64_t hi = detail::to_cell_index(ceil(q.row(i).maxCoeff())) - 1;
      const std::int64_t lo = detail::to_cell_index(floor(q.row(i).minCoeff()));
      if (hi >= lo) last[static_cast<std::size_t>(i)] = hi;
    }
  }

  std::vector<Cell> cells(static_cast<std::size_t>(n), Cell(d));
  std::vector<std::vector<Index>> own(static_cast<std::size_t>(n));
  std::vector<const std::vector<Index>*> src(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    auto& c = cells[static_cast<std::size_t>(j)];
    for (Index i = 0; i < d; ++i) {
      c[i] = std::min(detail::to_cell_index(floor(q(i, j))), last[static_cast<std::size_t>(i)]);
    }
    own[static_cast<std::size_t>(j)] = {j};
    src[static_cast<std::size_t>(j)] = &own[static_cast<std::size_t>(j)];
  }
  return detail::merge_cells(grid, RoundingMode::cell_center, std::move(cells), src);
}

template <typename Derived>
RoundedSetT<typename Derived::Scalar> round_to_cell_centers(const Eigen::MatrixBase<Derived>& s,
                                                            typename Derived::Scalar cell_width,
                                                            PointT<typename Derived::Scalar> origin) {
  return round_to_cell_centers(s, GridSpecT<typename Derived::Scalar>::with_width(std::move(origin), cell_width));
}

/// Rounds every entry of a cell-center set to its nearest vertex of `grid` (ties round up).
///
/// When both grids share origin and reference length the computation stays in lattice
/// units, so exact half-way ties are detected exactly.
template <typename Scalar>
RoundedSetT<Scalar> round_to_grid_vertices(const RoundedSetT<Scalar>& s, const GridSpecT<Scalar>& grid) {
  using std::floor;
  grid.validate();
  if (s.mode != RoundingMode::cell_center) {
    throw std::invalid_argument("round_to_grid_vertices: input must be a cell_center set");
  }
  if (s.dim() != grid.dim()) throw std::invalid_argument("round_to_grid_vertices: dimension mismatch");
  const Index d = grid.dim();
  const bool lattice_path = s.grid.commensurable_with(grid);
  const Scalar ratio = grid.resolution / s.grid.resolution;

  std::vector<Cell> cells(s.points.size(), Cell(d));
  std::vector<const std::vector<Index>*> src(s.points.size());
  for (std::size_t j = 0; j < s.points.size(); ++j) {
    const auto& lp = s.points[j];
    const PointT<Scalar> p = lattice_path ? PointT<Scalar>() : s.embed(static_cast<Index>(j));
    for (Index i = 0; i < d; ++i) {
      const Scalar q = lattice_path ? (static_cast<Scalar>(lp.cell[i]) + Scalar(0.5)) * ratio
                                    : grid.lattice_coordinate(p[i], i);
      cells[j][i] = detail::to_cell_index(floor(q + Scalar(0.5)));
    }
    src[j] = &lp.sources;
  }
  return detail::merge_cells(grid, RoundingMode::grid_vertex, std::move(cells), src);
}

template <typename Scalar>
RoundedSetT<Scalar> round_to_grid_vertices(const RoundedSetT<Scalar>& s, Scalar cell_width, PointT<Scalar> origin) {
  return round_to_grid_vertices(s, GridSpecT<Scalar>::with_width(std::move(origin), cell_width));
}

/// Keeps, within every group of entries sharing their first d-1 cell coordinates, only the
/// entries with the smallest and largest last coordinate. Preserves the diameter.
template <typename Scalar>
RoundedSetT<Scalar> column_filter(const RoundedSetT<Scalar>& s) {
  const Index d = s.dim();
  if (d < 1) throw std::invalid_argument("column_filter: dimension must be at least 1");
  struct Extremes {
    std::size_t lo, hi;
  };
  std::unordered_map<Cell, Extremes, CellHash, CellEqual> groups;
  std::vector<Cell> order;
  for (std::size_t j = 0; j < s.points.size(); ++j) {
    const Cell& c = s.points[j].cell;
    Cell prefix = c.head(d - 1);
    auto [it, inserted] = groups.try_emplace(prefix, Extremes{j, j});
    if (inserted) {
      order.push_back(std::move(prefix));
      continue;
    }
    auto& e = it->second;
    if (c[d - 1] < s.points[e.lo].cell[d - 1]) e.lo = j;
    if (c[d - 1] > s.points[e.hi].cell[d - 1]) e.hi = j;
  }
  std::vector<std::size_t> keep;
  keep.reserve(2 * order.size());
  for (const auto& prefix : order) {
    const auto& e = groups.at(prefix);
    keep.push_back(e.lo);
    if (e.hi != e.lo) keep.push_back(e.hi);
  }
  std::sort(keep.begin(), keep.end());
  RoundedSetT<Scalar> out{s.grid, s.mode, {}};
  out.points.reserve(keep.size());
  for (std::size_t j : keep) out.points.push_back(s.points[j]);
  return out;
}

/// Number of distinct first-(d-1)-coordinate prefixes among the entries.
template <typename Scalar>
std::size_t distinct_prefixes(const RoundedSetT<Scalar>& s) {
  std::unordered_map<Cell, char, CellHash, CellEqual> seen;
  for (const auto& lp : s.points) seen.try_emplace(lp.cell.head(s.dim() - 1), 0);
  return seen.size();
}

/// Entries whose embedded position lies in the closed cube |x_i - center_i| <= half_side.
template <typename Scalar>
RoundedSetT<Scalar> collect_box(const RoundedSetT<Scalar>& s, const PointT<Scalar>& center, Scalar half_side) {
  using std::abs;
  if (center.size() != s.dim()) throw std::invalid_argument("collect_box: dimension mismatch");
  RoundedSetT<Scalar> out{s.grid, s.mode, {}};
  for (Index j = 0; j < s.size(); ++j) {
    const PointT<Scalar> p = s.embed(j);
    if (((p - center).array().abs() <= half_side).all()) out.points.push_back(s.points[static_cast<std::size_t>(j)]);
  }
  return out;
}

/// Lattice form of collect_box for a cube centred on a vertex of a commensurable coarse grid:
/// keeps the cell centers within `multiplier` coarse cell widths of the vertex per axis.
/// Evaluated in fine-cell units so boundary contacts are decided exactly.
template <typename Scalar>
RoundedSetT<Scalar> collect_box_around_vertex(const RoundedSetT<Scalar>& fine, const GridSpecT<Scalar>& coarse,
                                              const Cell& vertex, Scalar multiplier) {
  using std::abs;
  if (fine.mode != RoundingMode::cell_center || !fine.grid.commensurable_with(coarse)) {
    return collect_box(fine, embed(coarse, RoundingMode::grid_vertex, vertex), multiplier * coarse.cell_width());
  }
  const Scalar rho = fine.grid.resolution / coarse.resolution;  // fine cells per coarse cell
  const Scalar reach = multiplier * rho;
  RoundedSetT<Scalar> out{fine.grid, fine.mode, {}};
  for (const auto& lp : fine.points) {
    bool inside = true;
    for (Index i = 0; i < vertex.size() && inside; ++i) {
      const Scalar offset = static_cast<Scalar>(lp.cell[i]) + Scalar(0.5) - static_cast<Scalar>(vertex[i]) * rho;
      inside = abs(offset) <= reach;
    }
    if (inside) out.points.push_back(lp);
  }
  return out;
}

/// Union of two subsets of the same rounded set, deduplicated by cell, first-seen order.
template <typename Scalar>
RoundedSetT<Scalar> merge_union(const RoundedSetT<Scalar>& a, const RoundedSetT<Scalar>& b) {
  std::vector<Cell> cells;
  std::vector<const std::vector<Index>*> src;
  std::unordered_map<Cell, char, CellHash, CellEqual> seen;
  for (const auto* part : {&a, &b}) {
    for (const auto& lp : part->points) {
      if (!seen.try_emplace(lp.cell, 0).second) continue;
      cells.push_back(lp.cell);
      src.push_back(&lp.sources);
    }
  }
  return detail::merge_cells(a.grid, a.mode, std::move(cells), src);
}

}  // namespace diameter
