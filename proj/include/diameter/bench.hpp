#pragma once

#include "diameter/approx.hpp"
#include "diameter/core.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace diameter::bench {

enum class Distribution { cube, ball, sphere, gauss, clusters };

std::string_view to_string(Distribution d);
std::optional<Distribution> parse_distribution(std::string_view name);

struct GeneratorSpec {
  Distribution distribution{Distribution::cube};
  Index n{1};
  Index d{1};
  std::uint64_t seed{0};
  /// Blob count for Distribution::clusters (ignored otherwise).
  std::optional<Index> cluster_count;

  void validate() const;
  /// e.g. "cube-n500-d3-s7"
  std::string describe() const;
};

/// Deterministic synthetic point sets. The stream is std::mt19937_64 (whose output sequence is
/// fixed by the C++ standard) seeded through SplitMix64; uniform and normal variates are
/// derived here rather than through the implementation-defined std:: distributions, so the
/// same spec produces the same bytes on every platform.
PointSet generate(const GeneratorSpec& spec);

/// SplitMix64 finalizer, used to decorrelate consecutive seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// CSV with a `x0,...,x{d-1}` header and one point per row, shortest round-trip decimals.
void write_points(const PointSet& s, std::ostream& out);
void write_points(const PointSet& s, const std::filesystem::path& path);
PointSet read_points(std::istream& in);
PointSet read_points(const std::filesystem::path& path);

struct BenchCell {
  GeneratorSpec instance;
  Algorithm algorithm{Algorithm::algorithm1};
  double epsilon{0.1};
};

struct BenchRecord {
  Index cell{0};
  Index trial{0};
  std::string instance;
  Algorithm algorithm{Algorithm::algorithm1};
  double epsilon{0};
  Index n{0};
  Index d{0};
  std::uint64_t seed{0};
  double value{0};
  std::optional<double> oracle;
  std::optional<double> ratio;
  std::int64_t wall_time_ns{0};
  std::optional<IndexPair> witness;
  /// Set when an oracle was available and the value left the algorithm's guarantee band.
  bool violation{false};
};

struct BenchOptions {
  Index trials{1};
  bool with_oracle{true};
  /// Oracle skipped (with a warning) above this many points.
  Index oracle_max_n{20000};
  /// Worker threads; 0 means hardware concurrency capped by DIAM_THREADS.
  unsigned threads{0};
};

struct BenchReport {
  std::vector<BenchRecord> records;
  std::vector<std::string> warnings;

  bool has_violation() const;
};

/// One record per cell per trial, trial t using seed = cell seed + t. Records are ordered by
/// cell then trial regardless of which worker finished first.
BenchReport run_bench(const std::vector<BenchCell>& matrix, const BenchOptions& options);

/// Ratio of value to oracle: 1 when both are zero, infinity when only the oracle is zero.
double ratio_of(double value, double oracle);

/// instance,algo,eps,n,d,seed,value,oracle,ratio,wall_time_ns
void write_report_csv(const BenchReport& report, std::ostream& out);
/// Per-cell aggregates (min / median / max ratio, violation count) as JSON.
std::string summary_json(const BenchReport& report);

unsigned worker_count(unsigned requested);

}  // namespace diameter::bench
