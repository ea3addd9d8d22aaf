#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace diameter {

using Index = Eigen::Index;

/// A single point in R^d.
template <typename Scalar = double>
using PointT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// n points in R^d, stored column-wise (d rows, n columns).
template <typename Scalar = double>
using PointSetT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Point = PointT<double>;
using PointSet = PointSetT<double>;

/// Ordered (first <= second) pair of column indices.
using IndexPair = std::pair<Index, Index>;

inline IndexPair ordered_pair(Index a, Index b) { return a <= b ? IndexPair{a, b} : IndexPair{b, a}; }

enum class Algorithm { exact, two_approx, agarwal, chan, algorithm1, algorithm2 };

/// How a returned value relates to the true diameter D.
///   exact          : value == D
///   upper_sandwich : D <= value <= (1+eps) D
///   lower_sandwich : value <= D <= c * value for an algorithm-specific c
///   two_approx     : D/2 <= value <= D
enum class Guarantee { exact, upper_sandwich, lower_sandwich, two_approx };

std::string_view to_string(Algorithm a);
std::string_view to_string(Guarantee g);
std::optional<Algorithm> parse_algorithm(std::string_view name);

template <typename Scalar = double>
struct DiameterResultT {
  Scalar value{0};
  std::optional<IndexPair> witness;
  Algorithm algorithm{Algorithm::exact};
  std::optional<Scalar> epsilon;
  Guarantee guarantee{Guarantee::exact};
};

using DiameterResult = DiameterResultT<double>;

template <typename Scalar = double>
struct BoundingBoxT {
  PointT<Scalar> low;
  PointT<Scalar> high;

  PointT<Scalar> side_lengths() const { return high - low; }
  /// Largest side length.
  Scalar ell() const { return low.size() == 0 ? Scalar(0) : (high - low).maxCoeff(); }
};

using BoundingBox = BoundingBoxT<double>;

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar squared_distance(const Eigen::MatrixBase<DerivedA>& a,
                                           const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("squared_distance: dimension mismatch");
  return (a - b).squaredNorm();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using std::sqrt;
  return sqrt(squared_distance(a, b));
}

/// Throws unless the set is non-empty, has d >= 1 and only finite coordinates.
template <typename Derived>
void require_valid_nonempty(const Eigen::MatrixBase<Derived>& s, const char* who) {
  if (s.cols() == 0) throw std::invalid_argument(std::string(who) + ": empty point set");
  if (s.rows() == 0) throw std::invalid_argument(std::string(who) + ": dimension must be at least 1");
  if (!s.allFinite()) throw std::invalid_argument(std::string(who) + ": non-finite coordinate");
}

template <typename Derived>
BoundingBoxT<typename Derived::Scalar> bounding_box(const Eigen::MatrixBase<Derived>& s) {
  require_valid_nonempty(s, "bounding_box");
  return {s.rowwise().minCoeff(), s.rowwise().maxCoeff()};
}

/// Distance from column 0 to its farthest column; within a factor 2 of the diameter.
template <typename Derived>
DiameterResultT<typename Derived::Scalar> two_approx_diameter(const Eigen::MatrixBase<Derived>& s) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  require_valid_nonempty(s, "two_approx_diameter");
  Scalar best = 0;
  Index far = 0;
  for (Index j = 1; j < s.cols(); ++j) {
    const Scalar d2 = squared_distance(s.col(0), s.col(j));
    if (d2 > best) {
      best = d2;
      far = j;
    }
  }
  DiameterResultT<Scalar> r;
  r.value = sqrt(best);
  r.witness = IndexPair{0, far};
  r.algorithm = Algorithm::two_approx;
  r.guarantee = Guarantee::two_approx;
  return r;
}

template <typename Scalar>
bool diameter_bounds_check(const DiameterResultT<Scalar>& result, Scalar oracle, Scalar lo_factor,
                           Scalar hi_factor) {
  return lo_factor * oracle <= result.value && result.value <= hi_factor * oracle;
}

}  // namespace diameter
