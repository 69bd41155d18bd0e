#pragma once

#include <string>
#include <vector>

namespace bergman::detail {

std::string trim(const std::string& s);
// shortest readable form, used in names
std::string fmt_num(double v);
double parse_number(const std::string& s, const std::string& ctx);
// splits "a, b(c, d), e" at top-level commas
std::vector<std::string> split_top(const std::string& s, char sep = ',');
// "key=value" lookup within a comma list; returns fallback when absent
double keyed(const std::vector<std::string>& parts, const std::string& key, double fallback, const std::string& ctx);

}  // namespace bergman::detail
