#include "diameter/approx.hpp"
#include "diameter/bench.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace diameter;
using namespace diameter::bench;

constexpr int kOk = 0;
constexpr int kUsageOrIo = 1;
constexpr int kViolation = 2;

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what, T (*convert)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(convert(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string("invalid ") + what + " '" + item + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError(std::string("empty ") + what + " list");
  return out;
}

Algorithm to_algorithm(const std::string& s) {
  if (auto a = parse_algorithm(s)) return *a;
  throw std::invalid_argument(s);
}

Distribution to_distribution(const std::string& s) {
  if (auto d = parse_distribution(s)) return *d;
  throw std::invalid_argument(s);
}

double to_double(const std::string& s) { return std::stod(s); }
Index to_index(const std::string& s) { return static_cast<Index>(std::stoll(s)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate and exact diameters of d-dimensional point sets"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic point set as CSV");
  std::string dist = "cube";
  Index gen_n = 0;
  Index gen_d = 0;
  std::uint64_t gen_seed = 0;
  Index clusters = 0;
  std::string gen_out;
  gen->add_option("--dist", dist, "cube | ball | sphere | gauss | clusters")->required();
  gen->add_option("--n", gen_n, "number of points")->required();
  gen->add_option("--d", gen_d, "dimension")->required();
  gen->add_option("--seed", gen_seed, "64-bit seed")->required();
  gen->add_option("--clusters", clusters, "blob count for the clusters distribution");
  gen->add_option("--out", gen_out, "output CSV file")->required();

  // diam
  auto* diam = app.add_subcommand("diam", "Compute a diameter of a CSV point set");
  std::string algo = "algo1";
  double eps = 0.1;
  std::string in_path;
  bool as_json = false;
  diam->add_option("--algo", algo, "exact | twoapprox | agarwal | algo1 | algo2 | chan")->required();
  diam->add_option("--eps", eps, "error parameter in (0, 1]");
  diam->add_option("--in", in_path, "input CSV file")->required();
  diam->add_flag("--json", as_json, "print the result as JSON");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark matrix against the exact oracle");
  std::string algos = "algo1";
  std::string eps_list = "0.1";
  std::string sizes = "100";
  std::string dims = "2";
  std::string dists = "cube";
  Index trials = 1;
  bool no_oracle = false;
  std::string report_path;
  std::string summary_path;
  std::uint64_t base_seed = 1;
  Index bench_clusters = 4;
  Index oracle_max_n = 20000;
  bench_cmd->add_option("--algos", algos, "comma-separated algorithm list")->required();
  bench_cmd->add_option("--eps-list", eps_list, "comma-separated epsilons")->required();
  bench_cmd->add_option("--sizes", sizes, "comma-separated point counts")->required();
  bench_cmd->add_option("--dims", dims, "comma-separated dimensions")->required();
  bench_cmd->add_option("--dists", dists, "comma-separated distributions")->required();
  bench_cmd->add_option("--trials", trials, "trials per cell")->required();
  bench_cmd->add_flag("--no-oracle", no_oracle, "skip the exact oracle");
  bench_cmd->add_option("--report", report_path, "CSV report path")->required();
  bench_cmd->add_option("--summary", summary_path, "JSON summary path (default: stdout)");
  bench_cmd->add_option("--seed", base_seed, "base seed; trial t uses seed + t");
  bench_cmd->add_option("--clusters", bench_clusters, "blob count for the clusters distribution");
  bench_cmd->add_option("--oracle-max-n", oracle_max_n, "largest n for which the oracle is computed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageOrIo;
  }

  try {
    if (*gen) {
      const auto d = parse_distribution(dist);
      if (!d) throw std::invalid_argument("unknown distribution '" + dist + "'");
      GeneratorSpec spec{*d, gen_n, gen_d, gen_seed, std::nullopt};
      if (clusters > 0) spec.cluster_count = clusters;
      write_points(generate(spec), std::filesystem::path(gen_out));
      return kOk;
    }

    if (*diam) {
      const auto a = parse_algorithm(algo);
      if (!a) throw std::invalid_argument("unknown algorithm '" + algo + "'");
      const PointSet s = read_points(std::filesystem::path(in_path));
      const DiameterResult r = run_algorithm(*a, s, eps);
      if (as_json) {
        nlohmann::ordered_json j;
        j["algo"] = to_string(r.algorithm);
        j["value"] = r.value;
        j["witness"] = r.witness ? nlohmann::ordered_json::array({r.witness->first, r.witness->second})
                                 : nlohmann::ordered_json(nullptr);
        j["eps"] = r.epsilon ? nlohmann::ordered_json(*r.epsilon) : nlohmann::ordered_json(nullptr);
        j["guarantee"] = to_string(r.guarantee);
        j["n"] = s.cols();
        j["d"] = s.rows();
        std::cout << j.dump() << '\n';
      } else {
        std::cout.precision(17);
        std::cout << r.value;
        if (r.witness) std::cout << ' ' << r.witness->first << ' ' << r.witness->second;
        std::cout << '\n';
      }
      return kOk;
    }

    if (*bench_cmd) {
      const auto algo_list = parse_list<Algorithm>(algos, "algorithm", to_algorithm);
      const auto eps_values = parse_list<double>(eps_list, "epsilon", to_double);
      const auto size_list = parse_list<Index>(sizes, "size", to_index);
      const auto dim_list = parse_list<Index>(dims, "dimension", to_index);
      const auto dist_list = parse_list<Distribution>(dists, "distribution", to_distribution);

      std::vector<BenchCell> matrix;
      for (auto dist_value : dist_list)
        for (Index n : size_list)
          for (Index d : dim_list)
            for (auto a : algo_list)
              for (double e : eps_values) {
                GeneratorSpec spec{dist_value, n, d, base_seed, std::nullopt};
                if (dist_value == Distribution::clusters) spec.cluster_count = bench_clusters;
                matrix.push_back({spec, a, e});
              }

      BenchOptions options;
      options.trials = trials;
      options.with_oracle = !no_oracle;
      options.oracle_max_n = oracle_max_n;
      const BenchReport report = run_bench(matrix, options);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';

      std::ofstream out(report_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open " + report_path + " for writing");
      write_report_csv(report, out);
      const std::string summary = summary_json(report);
      if (summary_path.empty()) {
        std::cout << summary << '\n';
      } else {
        std::ofstream js(summary_path, std::ios::binary);
        if (!js) throw std::runtime_error("cannot open " + summary_path + " for writing");
        js << summary << '\n';
      }
      for (const auto& r : report.records) {
        if (r.violation) {
          std::cerr << "guarantee violation: " << r.instance << " algo=" << to_string(r.algorithm)
                    << " eps=" << r.epsilon << " value=" << r.value << " oracle=" << *r.oracle << '\n';
        }
      }
      return report.has_violation() ? kViolation : kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageOrIo;
  }
  return kUsageOrIo;
}
