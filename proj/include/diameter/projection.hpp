#pragma once

#include "diameter/core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace diameter {

template <typename Scalar = double>
struct DirectionSetT {
  /// Unit vectors, one per column.
  PointSetT<Scalar> vectors;
  Index ambient_dim{0};
  /// Upper bound on the angle between any direction and its nearest member (V_d), or the
  /// spacing between consecutive members (V_2).
  Scalar angular_gap{0};

  Index size() const { return vectors.cols(); }
};

using DirectionSet = DirectionSetT<double>;

namespace detail {

inline void require_epsilon(double eps, const char* who) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument(std::string(who) + ": epsilon must lie in (0, 1]");
}

/// Normalizes v and nudges it down so that its computed squared norm never exceeds 1;
/// projections onto it then never lengthen a vector by rounding.
template <typename Scalar>
void normalize_not_above_one(Eigen::Ref<PointT<Scalar>> v) {
  v /= v.norm();
  while (v.squaredNorm() > Scalar(1)) v *= Scalar(1) - std::numeric_limits<Scalar>::epsilon();
}

}  // namespace detail

/// k = ceil(pi / sqrt(eps)) planar directions at angles j*pi/k, j = 0..k-1.
template <typename Scalar = double>
DirectionSetT<Scalar> build_v2(Scalar epsilon) {
  using std::ceil;
  using std::cos;
  using std::sin;
  using std::sqrt;
  detail::require_epsilon(static_cast<double>(epsilon), "build_v2");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Index k = static_cast<Index>(ceil(pi / sqrt(epsilon)));
  DirectionSetT<Scalar> out;
  out.vectors.resize(2, k);
  out.ambient_dim = 2;
  out.angular_gap = pi / static_cast<Scalar>(k);
  for (Index j = 0; j < k; ++j) {
    if (j == 0) {
      out.vectors.col(j) << 1, 0;
    } else if (2 * j == k) {
      out.vectors.col(j) << 0, 1;
    } else {
      const Scalar theta = static_cast<Scalar>(j) * pi / static_cast<Scalar>(k);
      out.vectors.col(j) << cos(theta), sin(theta);
      detail::normalize_not_above_one<Scalar>(out.vectors.col(j));
    }
  }
  return out;
}

/// Directions through the nodes of a uniform grid on the boundary of [-1, 1]^d.
///
/// The grid step is at most 2 sqrt(eps) / sqrt(d - 1), so any face point lies within
/// sqrt(eps) of a node and, the faces being at distance >= 1 from the origin, within angle
/// sqrt(eps) of it. The node count per axis is even so the coordinate axes are members.
/// Only one of each antipodal pair is kept (first nonzero coordinate positive).
template <typename Scalar = double>
DirectionSetT<Scalar> build_vd(Scalar epsilon, Index d) {
  using std::ceil;
  using std::sqrt;
  detail::require_epsilon(static_cast<double>(epsilon), "build_vd");
  if (d < 2) throw std::invalid_argument("build_vd: dimension must be at least 2");
  const Scalar step = Scalar(2) * sqrt(epsilon) / sqrt(static_cast<Scalar>(d - 1));
  Index m = std::max<Index>(2, static_cast<Index>(ceil(Scalar(2) / step)));
  if (m % 2 != 0) ++m;

  // Node coordinates are integers in {-m, -m+2, ..., m}; real coordinate = t / m.
  std::vector<Index> t(static_cast<std::size_t>(d), -m);
  std::vector<Scalar> flat;
  for (;;) {
    bool on_boundary = false;
    Index first_nonzero = 0;
    for (Index i = d - 1; i >= 0; --i) {
      if (t[static_cast<std::size_t>(i)] != 0) first_nonzero = t[static_cast<std::size_t>(i)];
      on_boundary = on_boundary || std::abs(t[static_cast<std::size_t>(i)]) == m;
    }
    if (on_boundary && first_nonzero > 0) {
      for (Index i = 0; i < d; ++i) flat.push_back(static_cast<Scalar>(t[static_cast<std::size_t>(i)]));
    }
    Index i = d - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == m) t[static_cast<std::size_t>(i--)] = -m;
    if (i < 0) break;
    t[static_cast<std::size_t>(i)] += 2;
  }

  DirectionSetT<Scalar> out;
  const Index count = static_cast<Index>(flat.size()) / d;
  out.vectors = Eigen::Map<PointSetT<Scalar>>(flat.data(), d, count);
  for (Index j = 0; j < count; ++j) {
    if ((out.vectors.col(j).array() != 0).count() == 1) {
      out.vectors.col(j) = out.vectors.col(j).cwiseSign();  // axis directions stay exact
    } else {
      detail::normalize_not_above_one<Scalar>(out.vectors.col(j));
    }
  }
  out.ambient_dim = d;
  out.angular_gap = sqrt(epsilon);
  return out;
}

/// Scalar products a . p for every column p of s.
template <typename Derived, typename DerivedA>
Eigen::Matrix<typename Derived::Scalar, 1, Eigen::Dynamic> project_all(const Eigen::MatrixBase<Derived>& s,
                                                                        const Eigen::MatrixBase<DerivedA>& a) {
  if (a.size() != s.rows()) throw std::invalid_argument("project_all: dimension mismatch");
  return a.transpose() * s;
}

/// pi_a(x) = (a1 x1 + a2 x2, x3, ..., xd).
template <typename Derived, typename DerivedA>
PointT<typename Derived::Scalar> pi_a(const Eigen::MatrixBase<Derived>& x, const Eigen::MatrixBase<DerivedA>& a) {
  const Index d = x.size();
  if (d < 2) throw std::invalid_argument("pi_a: dimension must be at least 2");
  if (a.size() != 2) throw std::invalid_argument("pi_a: direction must be planar");
  PointT<typename Derived::Scalar> out(d - 1);
  out[0] = a[0] * x[0] + a[1] * x[1];
  out.tail(d - 2) = x.tail(d - 2);
  return out;
}

/// Column-wise pi_a over a whole point set.
template <typename Derived, typename DerivedA>
PointSetT<typename Derived::Scalar> pi_a_all(const Eigen::MatrixBase<Derived>& s,
                                             const Eigen::MatrixBase<DerivedA>& a) {
  const Index d = s.rows();
  if (d < 2) throw std::invalid_argument("pi_a: dimension must be at least 2");
  PointSetT<typename Derived::Scalar> out(d - 1, s.cols());
  out.row(0) = a[0] * s.row(0) + a[1] * s.row(1);
  out.bottomRows(d - 2) = s.bottomRows(d - 2);
  return out;
}

namespace detail {

template <typename Scalar>
struct Extent {
  Scalar value{0};
  IndexPair witness{0, 0};
};

/// Better means larger value, ties going to the lexicographically smaller witness.
template <typename Scalar>
bool better(const Extent<Scalar>& a, const Extent<Scalar>& b) {
  return a.value > b.value || (a.value == b.value && a.witness < b.witness);
}

/// max - min of a row of values; witness built from the smallest provenance attaining each end.
template <typename Scalar, typename Row>
Extent<Scalar> extent_of(const Row& values, const std::vector<Index>& provenance) {
  Index lo = 0;
  Index hi = 0;
  for (Index j = 1; j < values.size(); ++j) {
    const auto pj = provenance[static_cast<std::size_t>(j)];
    if (values[j] < values[lo] || (values[j] == values[lo] && pj < provenance[static_cast<std::size_t>(lo)])) lo = j;
    if (values[j] > values[hi] || (values[j] == values[hi] && pj < provenance[static_cast<std::size_t>(hi)])) hi = j;
  }
  return {values[hi] - values[lo],
          ordered_pair(provenance[static_cast<std::size_t>(lo)], provenance[static_cast<std::size_t>(hi)])};
}

/// Removes bitwise-identical columns, keeping the smallest provenance for each.
template <typename Scalar>
void collapse_duplicates(PointSetT<Scalar>& pts, std::vector<Index>& provenance) {
  const Index d = pts.rows();
  auto hash = [&](Index j) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Index i = 0; i < d; ++i) {
      Scalar v = pts(i, j);
      if (v == Scalar(0)) v = Scalar(0);  // fold -0 into +0
      std::uint64_t bits = 0;
      std::memcpy(&bits, &v, std::min(sizeof(bits), sizeof(v)));
      h = (h ^ bits) * 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  };
  auto equal = [&](Index a, Index b) { return (pts.col(a).array() == pts.col(b).array()).all(); };
  std::unordered_set<Index, decltype(hash), decltype(equal)> seen(static_cast<std::size_t>(pts.cols()) * 2, hash,
                                                                   equal);
  Index kept = 0;
  std::vector<Index> slot_of(static_cast<std::size_t>(pts.cols()));
  for (Index j = 0; j < pts.cols(); ++j) {
    if (kept != j) pts.col(kept) = pts.col(j);
    auto [it, inserted] = seen.insert(kept);
    if (inserted) {
      provenance[static_cast<std::size_t>(kept)] = provenance[static_cast<std::size_t>(j)];
      ++kept;
    } else {
      auto& rep = provenance[static_cast<std::size_t>(*it)];
      rep = std::min(rep, provenance[static_cast<std::size_t>(j)]);
    }
  }
  if (kept != pts.cols()) {
    pts.conservativeResize(Eigen::NoChange, kept);
    provenance.resize(static_cast<std::size_t>(kept));
  }
}

template <typename Scalar>
Extent<Scalar> chan_recurse(const PointSetT<Scalar>& pts, const std::vector<Index>& provenance,
                            const DirectionSetT<Scalar>& v2) {
  const Index d = pts.rows();
  if (d == 1) return extent_of<Scalar>(pts.row(0), provenance);

  Extent<Scalar> best{-1, {0, 0}};
  if (d == 2) {
    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> line(pts.cols());
    for (Index k = 0; k < v2.size(); ++k) {
      line.noalias() = v2.vectors(0, k) * pts.row(0) + v2.vectors(1, k) * pts.row(1);
      const auto e = extent_of<Scalar>(line, provenance);
      if (better(e, best)) best = e;
    }
    return best;
  }
  for (Index k = 0; k < v2.size(); ++k) {
    PointSetT<Scalar> child = pi_a_all(pts, v2.vectors.col(k));
    std::vector<Index> child_prov = provenance;
    collapse_duplicates(child, child_prov);
    const auto e = chan_recurse(child, child_prov, v2);
    if (better(e, best)) best = e;
  }
  return best;
}

}  // namespace detail

/// Directional-width baseline: maximum projected extent over a V_d direction set.
/// value <= D <= (1 + eps) value.
template <typename Derived>
DiameterResultT<typename Derived::Scalar> agarwal_diameter(const Eigen::MatrixBase<Derived>& s,
                                                           typename Derived::Scalar epsilon) {
  using Scalar = typename Derived::Scalar;
  require_valid_nonempty(s, "agarwal_diameter");
  detail::require_epsilon(static_cast<double>(epsilon), "agarwal_diameter");
  const Index d = s.rows();
  const Index n = s.cols();
  DirectionSetT<Scalar> dirs;
  if (d == 1) {
    dirs.vectors = PointSetT<Scalar>::Ones(1, 1);
    dirs.ambient_dim = 1;
  } else {
    dirs = build_vd<Scalar>(epsilon, d);
  }

  std::vector<Index> identity(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) identity[static_cast<std::size_t>(j)] = j;

  constexpr Index block = 2048;
  detail::Extent<Scalar> best{-1, {0, 0}};
  PointSetT<Scalar> proj;
  for (Index start = 0; start < dirs.size(); start += block) {
    const Index len = std::min(block, dirs.size() - start);
    proj.noalias() = dirs.vectors.middleCols(start, len).transpose() * s;
    for (Index k = 0; k < len; ++k) {
      const Scalar span = proj.row(k).maxCoeff() - proj.row(k).minCoeff();
      if (span > best.value) {
        best = detail::extent_of<Scalar>(proj.row(k), identity);
      }
    }
  }

  DiameterResultT<Scalar> r;
  r.value = best.value;
  r.witness = best.witness;
  r.algorithm = Algorithm::agarwal;
  r.epsilon = epsilon;
  r.guarantee = Guarantee::lower_sandwich;
  return r;
}

/// Recursive planar-projection diameter: for each a in V_2 recurse on pi_a(S), exact at d = 1.
/// value <= D <= (1 + eps)^(d-1) value. The witness refers to columns of `s`.
template <typename Derived>
DiameterResultT<typename Derived::Scalar> chan_recursive_diameter(const Eigen::MatrixBase<Derived>& s,
                                                                  typename Derived::Scalar epsilon) {
  using Scalar = typename Derived::Scalar;
  require_valid_nonempty(s, "chan_recursive_diameter");
  detail::require_epsilon(static_cast<double>(epsilon), "chan_recursive_diameter");
  const Index n = s.cols();
  const auto v2 = build_v2<Scalar>(epsilon);
  // Raw coordinates on purpose: along axis directions the projected extents are then
  // bit-identical to the coordinate differences an exact computation would use.
  PointSetT<Scalar> pts = s;
  std::vector<Index> provenance(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) provenance[static_cast<std::size_t>(j)] = j;
  if (s.rows() > 1) detail::collapse_duplicates(pts, provenance);
  const auto best = detail::chan_recurse(pts, provenance, v2);

  DiameterResultT<Scalar> r;
  r.value = best.value;
  r.witness = best.witness;
  r.algorithm = Algorithm::chan;
  r.epsilon = epsilon;
  r.guarantee = Guarantee::lower_sandwich;
  return r;
}

}  // namespace diameter
