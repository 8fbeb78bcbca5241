#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace capcond::cli {

/// Exit codes: 0 success, 1 usage, I/O or solver error, 2 a bound check failed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1.2" or "piOverK".
double parse_angle(const std::string& text);
/// "lo:hi:points", geometric.
std::vector<double> parse_t_grid(const std::string& text);
/// "4:10" (inclusive range) or "4,6,8".
std::vector<int> parse_k_list(const std::string& text);

/// Reads key=value lines ('#' comments) into "--key value" tokens.
std::vector<std::string> config_tokens(const std::string& path);

} // namespace capcond::cli
