#include "wilber/mixing.hpp"

#include <algorithm>
#include <stdexcept>

namespace wilber {

namespace {

void sort_and_check(std::vector<int>& left, std::vector<int>& right) {
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  // merge walk just to detect a shared element
  std::size_t i = 0, j = 0;
  while (i < left.size() && j < right.size()) {
    if (left[i] == right[j])
      throw std::invalid_argument("mix: sets are not disjoint (share " +
                                  std::to_string(left[i]) + ")");
    if (left[i] < right[j])
      ++i;
    else
      ++j;
  }
}

}  // namespace

std::string mix(std::vector<int> left, std::vector<int> right) {
  sort_and_check(left, right);
  std::string s;
  s.reserve(left.size() + right.size());
  std::size_t i = 0, j = 0;
  while (i < left.size() || j < right.size()) {
    if (j == right.size() || (i < left.size() && left[i] < right[j])) {
      s.push_back('L');
      ++i;
    } else {
      s.push_back('R');
      ++j;
    }
  }
  return s;
}

long long num_switches(std::string_view s) {
  long long count = 0;
  for (std::size_t t = 1; t < s.size(); ++t)
    if (s[t] != s[t - 1]) ++count;
  return count;
}

long long mix_value_sorted(std::span<const int> left, std::span<const int> right) {
  std::size_t i = 0, j = 0;
  int last = 0;  // 0 none, 1 left, 2 right
  long long count = 0;
  while (i < left.size() || j < right.size()) {
    int side;
    if (j == right.size() || (i < left.size() && left[i] <= right[j])) {
      if (j < right.size() && left[i] == right[j])
        throw std::invalid_argument("mix_value: sets are not disjoint (share " +
                                    std::to_string(left[i]) + ")");
      side = 1;
      ++i;
    } else {
      side = 2;
      ++j;
    }
    if (last != 0 && side != last) ++count;
    last = side;
  }
  return count;
}

long long mix_value(std::vector<int> left, std::vector<int> right) {
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  return mix_value_sorted(left, right);
}

}  // namespace wilber
