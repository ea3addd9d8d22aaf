#include "diameter/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

namespace diameter::bench {

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

double ratio_of(double value, double oracle) {
  if (oracle > 0) return value / oracle;
  return value == 0 ? 1.0 : std::numeric_limits<double>::infinity();
}

bool BenchReport::has_violation() const {
  return std::any_of(records.begin(), records.end(), [](const BenchRecord& r) { return r.violation; });
}

unsigned worker_count(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("DIAM_THREADS")) {
    unsigned limit = 0;
    const std::string_view sv(cap);
    if (std::from_chars(sv.data(), sv.data() + sv.size(), limit).ec == std::errc() && limit > 0) {
      n = std::min(n, limit);
    }
  }
  return n;
}

BenchReport run_bench(const std::vector<BenchCell>& matrix, const BenchOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("bench: trials must be at least 1");
  for (const auto& cell : matrix) cell.instance.validate();

  BenchReport report;
  const std::size_t trials = static_cast<std::size_t>(options.trials);
  report.records.resize(matrix.size() * trials);

  std::mutex mu;
  std::map<std::string, double> oracle_cache;
  std::vector<std::string> warnings;
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t task = next++; task < report.records.size(); task = next++) {
      const auto& cell = matrix[task / trials];
      GeneratorSpec spec = cell.instance;
      spec.seed += task % trials;
      const PointSet s = generate(spec);

      BenchRecord rec;
      rec.cell = static_cast<Index>(task / trials);
      rec.trial = static_cast<Index>(task % trials);
      rec.instance = spec.describe();
      rec.algorithm = cell.algorithm;
      rec.epsilon = cell.epsilon;
      rec.n = spec.n;
      rec.d = spec.d;
      rec.seed = spec.seed;

      const auto t0 = std::chrono::steady_clock::now();
      const DiameterResult result = run_algorithm(cell.algorithm, s, cell.epsilon);
      const auto t1 = std::chrono::steady_clock::now();
      rec.value = result.value;
      rec.witness = result.witness;
      rec.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();

      if (options.with_oracle) {
        if (spec.n > options.oracle_max_n) {
          std::lock_guard lock(mu);
          warnings.push_back("oracle skipped for " + rec.instance + ": n = " + std::to_string(spec.n) +
                             " exceeds oracle limit " + std::to_string(options.oracle_max_n));
        } else {
          std::optional<double> cached;
          {
            std::lock_guard lock(mu);
            if (auto it = oracle_cache.find(rec.instance); it != oracle_cache.end()) cached = it->second;
          }
          const double oracle = cached ? *cached : exact_diameter(s).value;
          if (!cached) {
            std::lock_guard lock(mu);
            oracle_cache.emplace(rec.instance, oracle);
          }
          rec.oracle = oracle;
          rec.ratio = ratio_of(rec.value, oracle);
          const auto [lo, hi] = guarantee_band(cell.algorithm, cell.epsilon, spec.d);
          rec.violation = !(lo * oracle <= rec.value && rec.value <= hi * oracle);
        }
      }
      report.records[task] = std::move(rec);
    }
  };

  const unsigned workers = std::min<unsigned>(worker_count(options.threads),
                                              static_cast<unsigned>(std::max<std::size_t>(1, report.records.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::sort(warnings.begin(), warnings.end());
  warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());
  report.warnings = std::move(warnings);
  return report;
}

void write_report_csv(const BenchReport& report, std::ostream& out) {
  out << "instance,algo,eps,n,d,seed,value,oracle,ratio,wall_time_ns\n";
  for (const auto& r : report.records) {
    out << r.instance << ',' << to_string(r.algorithm) << ',' << shortest(r.epsilon) << ',' << r.n << ',' << r.d << ','
        << r.seed << ',' << shortest(r.value) << ',' << (r.oracle ? shortest(*r.oracle) : "") << ','
        << (r.ratio ? shortest(*r.ratio) : "") << ',' << r.wall_time_ns << '\n';
  }
}

std::string summary_json(const BenchReport& report) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  std::size_t violations = 0;
  for (std::size_t begin = 0; begin < report.records.size();) {
    std::size_t end = begin;
    while (end < report.records.size() && report.records[end].cell == report.records[begin].cell) ++end;
    const auto& first = report.records[begin];

    std::vector<double> ratios;
    std::size_t cell_violations = 0;
    for (std::size_t k = begin; k < end; ++k) {
      if (report.records[k].ratio) ratios.push_back(*report.records[k].ratio);
      cell_violations += report.records[k].violation ? 1 : 0;
    }
    violations += cell_violations;

    nlohmann::ordered_json c;
    c["cell"] = first.cell;
    c["instance"] = first.instance;
    c["algo"] = to_string(first.algorithm);
    c["eps"] = first.epsilon;
    c["n"] = first.n;
    c["d"] = first.d;
    c["trials"] = end - begin;
    if (!ratios.empty()) {
      c["min_ratio"] = *std::min_element(ratios.begin(), ratios.end());
      c["median_ratio"] = median(ratios);
      c["max_ratio"] = *std::max_element(ratios.begin(), ratios.end());
    } else {
      c["min_ratio"] = nullptr;
      c["median_ratio"] = nullptr;
      c["max_ratio"] = nullptr;
    }
    c["violations"] = cell_violations;
    cells.push_back(std::move(c));
    begin = end;
  }
  nlohmann::ordered_json root;
  root["records"] = report.records.size();
  root["violations"] = violations;
  root["warnings"] = report.warnings;
  root["cells"] = std::move(cells);
  return root.dump(2);
}

}  // namespace diameter::bench
