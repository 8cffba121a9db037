#include "wilber/sequences.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wilber/rng.hpp"

namespace wilber {

void AccessSequence::validate() const {
  if (universe_size < 0)
    throw std::invalid_argument("sequence: negative universe size");
  for (std::size_t t = 0; t < accesses.size(); ++t) {
    int x = accesses[t];
    if (x < 1 || x > universe_size)
      throw std::invalid_argument("sequence: access " + std::to_string(t + 1) +
                                  " is " + std::to_string(x) +
                                  ", outside [1, " + std::to_string(universe_size) + "]");
  }
}

PointSet PointSet::from_points(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Point& a, const Point& b) { return a.y < b.y; });
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].y == pts[i - 1].y)
      throw std::invalid_argument("point set: duplicate y-coordinate " +
                                  std::to_string(pts[i].y));
  PointSet p;
  p.pts_ = std::move(pts);
  return p;
}

PointSet geometric_view(const AccessSequence& seq) {
  PointSet p;
  p.pts_.reserve(seq.accesses.size());
  for (std::size_t t = 0; t < seq.accesses.size(); ++t)
    p.pts_.push_back({seq.accesses[t], int(t) + 1});
  return p;  // distinct increasing y by construction
}

AccessSequence gen_sequential(int n) {
  if (n < 1) throw std::invalid_argument("gen_sequential: n must be positive");
  AccessSequence seq{n, {}};
  seq.accesses.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) seq.accesses[std::size_t(i)] = i + 1;
  return seq;
}

AccessSequence gen_bit_reversal(int n) {
  if (n < 1 || (n & (n - 1)) != 0)
    throw std::invalid_argument("gen_bit_reversal: n must be a power of two, got " +
                                std::to_string(n));
  int bits = 0;
  while ((1 << bits) < n) ++bits;
  AccessSequence seq{n, {}};
  seq.accesses.resize(std::size_t(n));
  for (int t = 0; t < n; ++t) {
    unsigned v = unsigned(t), r = 0;
    for (int b = 0; b < bits; ++b) {
      r = (r << 1) | (v & 1u);
      v >>= 1;
    }
    seq.accesses[std::size_t(t)] = int(r) + 1;
  }
  return seq;
}

AccessSequence gen_random(int n, std::size_t m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_random: n must be positive");
  Rng rng(seed);
  AccessSequence seq{n, {}};
  seq.accesses.reserve(m);
  for (std::size_t t = 0; t < m; ++t)
    seq.accesses.push_back(int(uniform_below(rng, std::uint64_t(n))) + 1);
  return seq;
}

AccessSequence pad_uniform(const AccessSequence& seq) {
  seq.validate();
  std::vector<std::size_t> count(std::size_t(seq.universe_size) + 1, 0);
  for (int x : seq.accesses) ++count[std::size_t(x)];
  std::size_t target = 0;
  for (int x = 1; x <= seq.universe_size; ++x)
    target = std::max(target, count[std::size_t(x)]);
  AccessSequence out = seq;
  out.accesses.reserve(std::size_t(seq.universe_size) * target);
  for (int x = 1; x <= seq.universe_size; ++x)
    for (std::size_t c = count[std::size_t(x)]; c < target; ++c)
      out.accesses.push_back(x);
  return out;
}

void write_sequence(std::ostream& out, const AccessSequence& seq) {
  out << seq.universe_size << ' ' << seq.accesses.size() << '\n';
  for (int x : seq.accesses) out << x << '\n';
}

void write_sequence_file(const std::string& path, const AccessSequence& seq) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_sequence(f, seq);
  if (!f) throw std::runtime_error("write failed: " + path);
}

AccessSequence read_sequence(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(name + ": empty sequence file");
  std::istringstream head(line);
  long long n = 0, m = 0;
  if (!(head >> n >> m) || n < 0 || m < 0)
    throw std::runtime_error(name + ": line 1: expected \"n m\"");
  AccessSequence seq{int(n), {}};
  seq.accesses.reserve(std::size_t(m));
  for (long long t = 0; t < m; ++t) {
    const std::string lineno = std::to_string(t + 2);
    if (!std::getline(in, line))
      throw std::runtime_error(name + ": line " + lineno +
                               ": expected a key, found end of file");
    std::istringstream row(line);
    long long x = 0;
    if (!(row >> x))
      throw std::runtime_error(name + ": line " + lineno + ": expected a key");
    if (x < 1 || x > n)
      throw std::runtime_error(name + ": line " + lineno + ": key " +
                               std::to_string(x) + " outside [1, " +
                               std::to_string(n) + "]");
    seq.accesses.push_back(int(x));
  }
  return seq;
}

AccessSequence read_sequence_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_sequence(f, path);
}

}  // namespace wilber
