#pragma once

#include "diameter/core.hpp"
#include "diameter/exact.hpp"
#include "diameter/grid.hpp"
#include "diameter/projection.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace diameter {

struct AlgoConfig {
  double epsilon{0.1};
  /// Candidate cube half-side in coarse cell widths (3/4 gives a cube of side 3/2 cells).
  double box_half_side_multiplier{0.75};
  bool enable_column_filter{true};

  void validate() const {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
    if (!(box_half_side_multiplier > 0.0) || !std::isfinite(box_half_side_multiplier)) {
      throw std::invalid_argument("box_half_side_multiplier must be positive");
    }
  }
};

/// Work counters and phase timings of one grid-based run.
struct GridRunStats {
  Index input_points{0};
  Index fine_cells{0};                 // |S^|
  Index coarse_vertices{0};            // |S^_1| before column filtering
  Index coarse_vertices_filtered{0};   // |S^_1| after column filtering
  Index coarse_prefixes{0};            // distinct (d-1)-prefixes of S^_1
  Index diametrical_pairs{0};
  Index max_box_cells{0};              // largest |B_1| or |B_2| before filtering
  Index max_union_cells{0};            // largest |B_1 u B_2| handed to the inner solver
  std::int64_t rounding_ns{0};
  std::int64_t post_rounding_ns{0};
};

template <typename Scalar = double>
struct GridRunT {
  DiameterResultT<Scalar> result;
  GridRunStats stats;
};

using GridRun = GridRunT<double>;

/// (2 sqrt(d) / eps^coarse_exponent + 1)^d: grid points of the coarse grid over the bounding box.
inline double coarse_vertex_bound(Index d, double epsilon, double coarse_exponent) {
  const double dd = static_cast<double>(d);
  return std::pow(2.0 * std::sqrt(dd) / std::pow(epsilon, coarse_exponent) + 1.0, dd);
}

/// Volume of a candidate cube (side 2 * multiplier coarse cells) over the volume of a fine cell.
inline double box_cell_bound(Index d, double epsilon, double coarse_exponent, double multiplier = 0.75) {
  const double dd = static_cast<double>(d);
  return std::pow(2.0 * multiplier, dd) / std::pow(epsilon, dd * (1.0 - coarse_exponent));
}

using BoxPair = std::pair<RoundedSet, RoundedSet>;

/// One (B_1, B_2) per diametrical pair of the coarse set, each collected from the fine set
/// around the pair's vertices.
template <typename Scalar>
std::vector<std::pair<RoundedSetT<Scalar>, RoundedSetT<Scalar>>> candidate_boxes(const RoundedSetT<Scalar>& fine,
                                                                                 const RoundedSetT<Scalar>& coarse,
                                                                                 const PairList& pairs,
                                                                                 Scalar multiplier) {
  std::vector<std::pair<RoundedSetT<Scalar>, RoundedSetT<Scalar>>> out;
  out.reserve(pairs.pairs.size());
  for (const auto& [i, j] : pairs.pairs) {
    const Cell& a = coarse.points[static_cast<std::size_t>(i)].cell;
    const Cell& b = coarse.points[static_cast<std::size_t>(j)].cell;
    out.emplace_back(collect_box_around_vertex(fine, coarse.grid, a, multiplier),
                     collect_box_around_vertex(fine, coarse.grid, b, multiplier));
  }
  return out;
}

namespace detail {

/// Smallest original index represented by a lattice entry.
inline Index representative(const LatticePoint& lp) { return lp.sources.front(); }

/// Nudges a value up by a few units in the last place so that accumulated rounding in the
/// grid arithmetic cannot move a certified bound to the wrong side.
template <typename Scalar>
Scalar round_up(Scalar x) {
  return x + std::abs(x) * Scalar(16) * std::numeric_limits<Scalar>::epsilon();
}

enum class InnerSolver { brute_force, chan };

template <typename Derived>
GridRunT<typename Derived::Scalar> grid_diameter(const Eigen::MatrixBase<Derived>& s, const AlgoConfig& cfg,
                                                 double coarse_exponent, InnerSolver inner) {
  using Scalar = typename Derived::Scalar;
  using Clock = std::chrono::steady_clock;
  using std::pow;
  using std::sqrt;
  require_valid_nonempty(s, inner == InnerSolver::chan ? "algorithm2" : "algorithm1");
  cfg.validate();

  GridRunT<Scalar> run;
  auto& r = run.result;
  r.algorithm = inner == InnerSolver::chan ? Algorithm::algorithm2 : Algorithm::algorithm1;
  r.guarantee = inner == InnerSolver::chan ? Guarantee::lower_sandwich : Guarantee::upper_sandwich;
  r.epsilon = static_cast<Scalar>(cfg.epsilon);
  r.witness = IndexPair{0, 0};
  run.stats.input_points = s.cols();

  const auto t0 = Clock::now();
  const auto box = bounding_box(s);
  const Scalar ell = box.ell();
  if (ell == Scalar(0)) return run;

  const Index d = s.rows();
  const Scalar eps = static_cast<Scalar>(cfg.epsilon);
  const Scalar two_root_d = Scalar(2) * sqrt(static_cast<Scalar>(d));
  // Widths eps*ell/(2 sqrt d) and eps^exponent*ell/(2 sqrt d), as ell / resolution.
  const GridSpecT<Scalar> fine_grid{box.low, ell, two_root_d / eps};
  const GridSpecT<Scalar> coarse_grid{box.low, ell, two_root_d / pow(eps, static_cast<Scalar>(coarse_exponent))};

  const auto fine = round_to_cell_centers(s, fine_grid);
  const auto coarse_raw = round_to_grid_vertices(fine, coarse_grid);
  const auto t1 = Clock::now();

  run.stats.fine_cells = fine.size();
  run.stats.coarse_vertices = coarse_raw.size();
  run.stats.coarse_prefixes = static_cast<Index>(distinct_prefixes(coarse_raw));
  const auto coarse = cfg.enable_column_filter ? column_filter(coarse_raw) : coarse_raw;
  run.stats.coarse_vertices_filtered = coarse.size();

  const PairList pairs = diametrical_pairs(coarse);
  run.stats.diametrical_pairs = static_cast<Index>(pairs.pairs.size());
  const auto boxes = candidate_boxes(fine, coarse, pairs, static_cast<Scalar>(cfg.box_half_side_multiplier));

  // Best candidate in fine-cell units, compared as (length, witness) with ties to the smaller pair.
  Scalar best_cells = -1;
  IndexPair best_witness{0, 0};
  for (const auto& [b1, b2] : boxes) {
    run.stats.max_box_cells = std::max({run.stats.max_box_cells, b1.size(), b2.size()});
    const auto joined =
        cfg.enable_column_filter ? merge_union(column_filter(b1), column_filter(b2)) : merge_union(b1, b2);
    run.stats.max_union_cells = std::max(run.stats.max_union_cells, joined.size());

    Scalar cells = 0;
    IndexPair w{0, 0};
    if (inner == InnerSolver::brute_force) {
      const PairList inner_pairs = diametrical_pairs(joined);
      cells = sqrt(static_cast<Scalar>(inner_pairs.squared_cells));
      const auto [a, b] = inner_pairs.pairs.front();
      w = ordered_pair(representative(joined.points[static_cast<std::size_t>(a)]),
                       representative(joined.points[static_cast<std::size_t>(b)]));
    } else {
      const auto sub = chan_recursive_diameter(joined.lattice_coordinates(), eps);
      cells = sub.value;
      w = ordered_pair(representative(joined.points[static_cast<std::size_t>(sub.witness->first)]),
                       representative(joined.points[static_cast<std::size_t>(sub.witness->second)]));
    }
    if (cells > best_cells || (cells == best_cells && w < best_witness)) {
      best_cells = cells;
      best_witness = w;
    }
  }

  const Scalar d_hat = best_cells * fine_grid.cell_width();
  r.value = round_up(inner == InnerSolver::brute_force ? d_hat + eps * ell / Scalar(2) : d_hat);
  r.witness = best_witness;
  const auto t2 = Clock::now();
  run.stats.rounding_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
  run.stats.post_rounding_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t2 - t1).count();
  return run;
}

}  // namespace detail

/// Two-level grid rounding followed by a brute-force diameter of the candidate cubes around
/// every diametrical pair of the coarse set, plus eps*ell/2. D <= value <= (1 + eps) D.
template <typename Derived>
GridRunT<typename Derived::Scalar> run_algorithm1(const Eigen::MatrixBase<Derived>& s, const AlgoConfig& cfg) {
  return detail::grid_diameter(s, cfg, 0.5, detail::InnerSolver::brute_force);
}

template <typename Derived>
DiameterResultT<typename Derived::Scalar> algorithm1(const Eigen::MatrixBase<Derived>& s, const AlgoConfig& cfg) {
  return run_algorithm1(s, cfg).result;
}

/// As algorithm1 with coarse width eps^(1/3) ell / (2 sqrt d) and the recursive planar
/// projection as inner solver. D (1 - eps/2) / (1 + eps)^(d-1) <= value <= (1 + eps) D.
template <typename Derived>
GridRunT<typename Derived::Scalar> run_algorithm2(const Eigen::MatrixBase<Derived>& s, const AlgoConfig& cfg) {
  return detail::grid_diameter(s, cfg, 1.0 / 3.0, detail::InnerSolver::chan);
}

template <typename Derived>
DiameterResultT<typename Derived::Scalar> algorithm2(const Eigen::MatrixBase<Derived>& s, const AlgoConfig& cfg) {
  return run_algorithm2(s, cfg).result;
}

/// Runs any of the implemented algorithms by tag.
DiameterResult run_algorithm(Algorithm algo, const PointSet& s, double epsilon);

/// Multiplicative band [lo, hi] such that lo * D <= value <= hi * D is the algorithm's contract.
std::pair<double, double> guarantee_band(Algorithm algo, double epsilon, Index d);

}  // namespace diameter
