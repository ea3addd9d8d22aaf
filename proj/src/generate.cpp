#include "diameter/bench.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace diameter::bench {

namespace {

constexpr Index kDefaultClusters = 4;
constexpr double kClusterSpread = 0.05;

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal by Box-Muller; the second variate of each pair is kept for the next call.
  double normal() {
    if (spare_) {
      const double z = *spare_;
      spare_.reset();
      return z;
    }
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

Point unit_direction(Stream& rng, Index d) {
  Point v(d);
  for (;;) {
    for (Index i = 0; i < d; ++i) v[i] = rng.normal();
    const double norm = v.norm();
    if (norm > 1e-300) return v / norm;
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::cube: return "cube";
    case Distribution::ball: return "ball";
    case Distribution::sphere: return "sphere";
    case Distribution::gauss: return "gauss";
    case Distribution::clusters: return "clusters";
  }
  return "unknown";
}

std::optional<Distribution> parse_distribution(std::string_view name) {
  for (auto d : {Distribution::cube, Distribution::ball, Distribution::sphere, Distribution::gauss,
                 Distribution::clusters}) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

void GeneratorSpec::validate() const {
  if (n < 1) throw std::invalid_argument("generator: n must be at least 1");
  if (d < 1) throw std::invalid_argument("generator: d must be at least 1");
  if (cluster_count && *cluster_count < 1) throw std::invalid_argument("generator: cluster count must be positive");
}

std::string GeneratorSpec::describe() const {
  std::string s = std::string(to_string(distribution)) + "-n" + std::to_string(n) + "-d" + std::to_string(d);
  if (distribution == Distribution::clusters) s += "-k" + std::to_string(cluster_count.value_or(kDefaultClusters));
  return s + "-s" + std::to_string(seed);
}

PointSet generate(const GeneratorSpec& spec) {
  spec.validate();
  Stream rng(spec.seed);
  PointSet s(spec.d, spec.n);
  switch (spec.distribution) {
    case Distribution::cube:
      for (Index j = 0; j < spec.n; ++j)
        for (Index i = 0; i < spec.d; ++i) s(i, j) = rng.uniform();
      break;
    case Distribution::gauss:
      for (Index j = 0; j < spec.n; ++j)
        for (Index i = 0; i < spec.d; ++i) s(i, j) = rng.normal();
      break;
    case Distribution::sphere:
      for (Index j = 0; j < spec.n; ++j) s.col(j) = unit_direction(rng, spec.d);
      break;
    case Distribution::ball:
      for (Index j = 0; j < spec.n; ++j) {
        const Point u = unit_direction(rng, spec.d);
        s.col(j) = u * std::pow(rng.uniform(), 1.0 / static_cast<double>(spec.d));
      }
      break;
    case Distribution::clusters: {
      const Index k = spec.cluster_count.value_or(kDefaultClusters);
      PointSet centers(spec.d, k);
      for (Index c = 0; c < k; ++c)
        for (Index i = 0; i < spec.d; ++i) centers(i, c) = rng.uniform();
      for (Index j = 0; j < spec.n; ++j) {
        const Index c = std::min<Index>(k - 1, static_cast<Index>(rng.uniform() * static_cast<double>(k)));
        for (Index i = 0; i < spec.d; ++i) s(i, j) = centers(i, c) + kClusterSpread * rng.normal();
      }
      break;
    }
  }
  return s;
}

}  // namespace diameter::bench
