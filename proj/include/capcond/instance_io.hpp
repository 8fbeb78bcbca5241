#pragma once

#include <string>
#include <vector>

#include "capcond/instance.hpp"

namespace capcond {

/// Reads "n m" followed by n rows of m+1 reals. Rows must be unit to 1e-6;
/// errors name the file and the offending row.
std::vector<SpherePoint> read_points(const std::string& path);
Instance read_instance(const std::string& path);

void write_instance(const std::string& path, std::span<const SpherePoint> rows);

} // namespace capcond
