#include "capcond/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace capcond {

std::vector<SpherePoint> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open instance file '" + path + "'");
  }
  long long n = 0, m = 0;
  if (!(in >> n >> m) || n < 1 || m < 1) {
    throw IoError(path + ": first line must be 'n m' with n, m >= 1");
  }
  std::vector<SpherePoint> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    Vector v(m + 1);
    for (long long j = 0; j <= m; ++j) {
      if (!(in >> v[j])) {
        throw IoError(path + ": row " + std::to_string(i + 1) + " has fewer than " +
                      std::to_string(m + 1) + " numbers");
      }
    }
    const double norm = v.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > SpherePoint::kAcceptTolerance) {
      std::ostringstream msg;
      msg << path << ": row " << i + 1 << " is not a unit vector (norm " << norm << ")";
      throw IoError(msg.str());
    }
    rows.emplace_back(v);
  }
  std::string extra;
  if (in >> extra) {
    throw IoError(path + ": trailing data after " + std::to_string(n) + " rows");
  }
  return rows;
}

Instance read_instance(const std::string& path) {
  auto rows = read_points(path);
  if (rows.size() <= rows.front().ambient_dim()) {
    throw IoError(path + ": an instance needs n > m + 1 rows");
  }
  return Instance(std::move(rows));
}

void write_instance(const std::string& path, std::span<const SpherePoint> rows) {
  if (rows.empty()) {
    throw DomainError("cannot write an empty instance");
  }
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) {
    throw IoError("cannot write instance file '" + path + "'");
  }
  std::fprintf(f, "%zu %zu\n", rows.size(), rows.front().dim());
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.ambient_dim(); ++j) {
      std::fprintf(f, j ? " %.17g" : "%.17g", row[j]);
    }
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) {
    throw IoError("error while writing '" + path + "'");
  }
}

} // namespace capcond
