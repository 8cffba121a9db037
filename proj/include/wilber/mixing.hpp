#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wilber {

// Merge two disjoint sets in increasing order and label each element by its
// origin, e.g. mix({2,3,8},{1,5}) = "RLLRL". Throws std::invalid_argument if
// the sets intersect.
std::string mix(std::vector<int> left, std::vector<int> right);

// Number of adjacent positions whose symbols differ, e.g. "LLLRL" -> 2.
long long num_switches(std::string_view s);

// num_switches(mix(left, right)), computed by one linear merge without
// materializing the string.
long long mix_value(std::vector<int> left, std::vector<int> right);

// Fast path for callers that already hold sorted, disjoint sets.
long long mix_value_sorted(std::span<const int> left, std::span<const int> right);

}  // namespace wilber
