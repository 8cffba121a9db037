#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wilber {

// A finite sequence of key accesses over the key universe [1, universe_size].
struct AccessSequence {
  int universe_size = 0;
  std::vector<int> accesses;

  std::size_t length() const { return accesses.size(); }

  // Throws std::invalid_argument if any access is outside [1, universe_size].
  void validate() const;

  friend bool operator==(const AccessSequence&, const AccessSequence&) = default;
};

struct Point {
  int x = 0;  // key
  int y = 0;  // time, 1-based

  friend bool operator==(const Point&, const Point&) = default;
};

// A finite point set with pairwise-distinct y-coordinates, stored in
// increasing y order.
class PointSet {
 public:
  PointSet() = default;

  // Sorts by y and rejects duplicate y-coordinates.
  static PointSet from_points(std::vector<Point> pts);

  const std::vector<Point>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }

 private:
  std::vector<Point> pts_;  // sorted by y, distinct y
  friend PointSet geometric_view(const AccessSequence&);
};

// Plots access t as the point (X_t, t).
PointSet geometric_view(const AccessSequence& seq);

// (1, 2, ..., n)
AccessSequence gen_sequential(int n);

// Access t is 1 + reverse_bits(t-1) over log2(n) bits; n must be a power of
// two. The result is a permutation of [n].
AccessSequence gen_bit_reversal(int n);

// m accesses drawn uniformly from [n] by a seeded generator; identical
// (n, m, seed) triples yield identical sequences.
AccessSequence gen_random(int n, std::size_t m, std::uint64_t seed);

// Appends accesses, grouped by key in ascending key order, until every key in
// [n] appears exactly max-count times. The input is a prefix of the output.
AccessSequence pad_uniform(const AccessSequence& seq);

// Text format: line 1 is "n m", then one key per line.
void write_sequence(std::ostream& out, const AccessSequence& seq);
void write_sequence_file(const std::string& path, const AccessSequence& seq);
AccessSequence read_sequence(std::istream& in, const std::string& name = "<stream>");
AccessSequence read_sequence_file(const std::string& path);

}  // namespace wilber
