#pragma once

#include "diameter/core.hpp"
#include "diameter/grid.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace diameter {

/// Brute-force diameter over all unordered pairs. The witness is the lexicographically
/// smallest attaining index pair; a single point yields (0, 0).
template <typename Derived>
DiameterResultT<typename Derived::Scalar> exact_diameter(const Eigen::MatrixBase<Derived>& s) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  require_valid_nonempty(s, "exact_diameter");
  Scalar best = 0;
  IndexPair witness{0, 0};
  for (Index i = 0; i < s.cols(); ++i) {
    for (Index j = i + 1; j < s.cols(); ++j) {
      const Scalar d2 = (s.col(i) - s.col(j)).squaredNorm();
      if (d2 > best) {
        best = d2;
        witness = {i, j};
      }
    }
  }
  DiameterResultT<Scalar> r;
  r.value = sqrt(best);
  r.witness = witness;
  r.algorithm = Algorithm::exact;
  r.guarantee = Guarantee::exact;
  return r;
}

/// All pairs of lattice entries attaining the maximum lattice distance.
struct PairList {
  /// Maximum squared distance in integer cell units.
  std::int64_t squared_cells{0};
  /// Entry index pairs (i < j, or (0, 0) for a single entry), lexicographically sorted.
  std::vector<IndexPair> pairs;

  template <typename Scalar>
  Scalar value(const GridSpecT<Scalar>& grid) const {
    using std::sqrt;
    return sqrt(static_cast<Scalar>(squared_cells)) * grid.cell_width();
  }
};

namespace detail {

inline std::int64_t checked_square_sum(const Cell& a, const Cell& b) {
  std::int64_t acc = 0;
  for (Index i = 0; i < a.size(); ++i) {
    std::int64_t diff = 0;
    std::int64_t sq = 0;
    if (__builtin_sub_overflow(a[i], b[i], &diff) || __builtin_mul_overflow(diff, diff, &sq) ||
        __builtin_add_overflow(acc, sq, &acc)) {
      throw std::overflow_error("lattice distance overflows 64-bit integers");
    }
  }
  return acc;
}

}  // namespace detail

inline std::int64_t squared_cell_distance(const LatticePoint& a, const LatticePoint& b) {
  return detail::checked_square_sum(a.cell, b.cell);
}

/// Exact maximum over all pairs in integer arithmetic, with every attaining pair.
template <typename Scalar>
PairList diametrical_pairs(const RoundedSetT<Scalar>& s) {
  if (s.empty()) throw std::invalid_argument("diametrical_pairs: empty lattice set");
  PairList out;
  out.pairs.push_back({0, 0});
  for (Index i = 0; i < s.size(); ++i) {
    const auto& a = s.points[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < s.size(); ++j) {
      const std::int64_t d2 = squared_cell_distance(a, s.points[static_cast<std::size_t>(j)]);
      if (d2 > out.squared_cells) {
        out.squared_cells = d2;
        out.pairs.clear();
        out.pairs.push_back({i, j});
      } else if (d2 == out.squared_cells && d2 > 0) {
        out.pairs.push_back({i, j});
      }
    }
  }
  return out;
}

}  // namespace diameter
