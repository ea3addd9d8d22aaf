#include "diameter/bench.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace diameter::bench {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_points(const PointSet& s, std::ostream& out) {
  for (Index i = 0; i < s.rows(); ++i) out << (i ? ",x" : "x") << i;
  out << '\n';
  char buf[64];
  for (Index j = 0; j < s.cols(); ++j) {
    for (Index i = 0; i < s.rows(); ++i) {
      const auto res = std::to_chars(buf, buf + sizeof(buf), s(i, j));
      if (i) out << ',';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

void write_points(const PointSet& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_points(s, out);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

PointSet read_points(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  Index d = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw std::runtime_error("empty point file");

  const auto header = split(line);
  d = static_cast<Index>(header.size());
  for (Index i = 0; i < d; ++i) {
    if (header[static_cast<std::size_t>(i)] != "x" + std::to_string(i)) {
      fail(line_no, "expected header x0,...,x" + std::to_string(d - 1));
    }
  }

  std::vector<double> coords;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (static_cast<Index>(fields.size()) != d) {
      fail(line_no, "expected " + std::to_string(d) + " fields, found " + std::to_string(fields.size()));
    }
    for (const auto f : fields) {
      double v = 0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size() || f.empty()) {
        fail(line_no, "non-numeric field '" + std::string(f) + "'");
      }
      if (!std::isfinite(v)) fail(line_no, "non-finite coordinate");
      coords.push_back(v);
    }
  }
  if (coords.empty()) throw std::runtime_error("no data rows");
  const Index n = static_cast<Index>(coords.size()) / d;
  return Eigen::Map<const PointSet>(coords.data(), d, n);
}

PointSet read_points(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_points(in);
}

}  // namespace diameter::bench
