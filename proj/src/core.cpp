#include "diameter/approx.hpp"

#include <cmath>
#include <stdexcept>

namespace diameter {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::exact: return "exact";
    case Algorithm::two_approx: return "twoapprox";
    case Algorithm::agarwal: return "agarwal";
    case Algorithm::chan: return "chan";
    case Algorithm::algorithm1: return "algo1";
    case Algorithm::algorithm2: return "algo2";
  }
  return "unknown";
}

std::string_view to_string(Guarantee g) {
  switch (g) {
    case Guarantee::exact: return "exact";
    case Guarantee::upper_sandwich: return "upper_sandwich";
    case Guarantee::lower_sandwich: return "lower_sandwich";
    case Guarantee::two_approx: return "two_approx";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::exact, Algorithm::two_approx, Algorithm::agarwal, Algorithm::chan, Algorithm::algorithm1,
                 Algorithm::algorithm2}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

DiameterResult run_algorithm(Algorithm algo, const PointSet& s, double epsilon) {
  switch (algo) {
    case Algorithm::exact: return exact_diameter(s);
    case Algorithm::two_approx: return two_approx_diameter(s);
    case Algorithm::agarwal: return agarwal_diameter(s, epsilon);
    case Algorithm::chan: return chan_recursive_diameter(s, epsilon);
    case Algorithm::algorithm1: return algorithm1(s, AlgoConfig{epsilon});
    case Algorithm::algorithm2: return algorithm2(s, AlgoConfig{epsilon});
  }
  throw std::invalid_argument("run_algorithm: unknown algorithm");
}

std::pair<double, double> guarantee_band(Algorithm algo, double epsilon, Index d) {
  const double shrink = std::pow(1.0 + epsilon, static_cast<double>(std::max<Index>(d, 1) - 1));
  switch (algo) {
    case Algorithm::exact: return {1.0, 1.0};
    case Algorithm::two_approx: return {0.5, 1.0};
    case Algorithm::agarwal: return {1.0 / (1.0 + epsilon), 1.0};
    case Algorithm::chan: return {1.0 / shrink, 1.0};
    case Algorithm::algorithm1: return {1.0, 1.0 + epsilon};
    case Algorithm::algorithm2: return {(1.0 - epsilon / 2.0) / shrink, 1.0 + epsilon};
  }
  throw std::invalid_argument("guarantee_band: unknown algorithm");
}

}  // namespace diameter
