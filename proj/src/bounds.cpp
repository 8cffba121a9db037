#include "wilber/bounds.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

#include "wilber/mixing.hpp"

namespace wilber {

namespace {

// One node's worth of the alternation recursion: walk the y-ordered points,
// route them left/right of `key` (dropping matches), count side switches and
// report each switch to `emit` when set.
long long split_and_count(const std::vector<Point>& pts, int key,
                          std::vector<Point>& lps, std::vector<Point>& rps,
                          const std::function<void(int, Point, Point)>* emit) {
  long long switches = 0;
  int last = 0;
  Point prev{};
  for (const Point& p : pts) {
    int side = p.x < key ? 1 : (p.x > key ? 2 : 0);
    if (side == 0) continue;
    (side == 1 ? lps : rps).push_back(p);
    if (last != 0 && side != last) {
      ++switches;
      if (emit) (*emit)(key, prev, p);
    }
    last = side;
    prev = p;
  }
  return switches;
}

long long alt_tree_rec(const ReferenceTree& T, int node, const std::vector<Point>& pts,
                       const std::function<void(int, Point, Point)>* emit) {
  if (pts.empty()) return 0;
  if (node < 0)
    throw std::invalid_argument("alt_for_tree: point key " +
                                std::to_string(pts.front().x) +
                                " is absent from the tree");
  const ReferenceTree::Node& nd = T.nodes[std::size_t(node)];
  std::vector<Point> lps, rps;
  long long total = split_and_count(pts, nd.key, lps, rps, emit);
  total += alt_tree_rec(T, nd.left, lps, emit);
  total += alt_tree_rec(T, nd.right, rps, emit);
  return total;
}

}  // namespace

long long alt_for_tree(const PointSet& P, const ReferenceTree& T) {
  if (P.empty()) return 0;
  return alt_tree_rec(T, T.root, P.points(), nullptr);
}

void for_each_alternation(const PointSet& P, const ReferenceTree& T,
                          const std::function<void(int, Point, Point)>& fn) {
  if (P.empty()) return;
  alt_tree_rec(T, T.root, P.points(), &fn);
}

namespace {

struct KeyIndex {
  std::vector<int> keys;   // distinct, sorted
  std::vector<int> ranks;  // per point, in y order

  explicit KeyIndex(const PointSet& P) {
    keys.reserve(P.size());
    for (const Point& p : P.points()) keys.push_back(p.x);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    ranks.reserve(P.size());
    for (const Point& p : P.points())
      ranks.push_back(int(std::lower_bound(keys.begin(), keys.end(), p.x) -
                          keys.begin()));
  }
};

int build_witness(const std::vector<int>& keys, const std::vector<int>& best, int K,
                  int i, int j, std::vector<ReferenceTree::Node>& out) {
  if (i > j) return -1;
  int r = best[std::size_t(i) * std::size_t(K) + std::size_t(j)];
  int idx = int(out.size());
  out.push_back({keys[std::size_t(r)], -1, -1});
  out[std::size_t(idx)].left = build_witness(keys, best, K, i, r - 1, out);
  out[std::size_t(idx)].right = build_witness(keys, best, K, r + 1, j, out);
  return idx;
}

AltExactResult alt_exact_impl(const PointSet& P, bool parallel) {
  if (P.empty()) return {0, {}};
  KeyIndex ki(P);
  const int K = int(ki.keys.size());
  std::vector<long long> dp(std::size_t(K) * std::size_t(K), 0);
  std::vector<int> best(std::size_t(K) * std::size_t(K), -1);
  auto dp_at = [&](int i, int j) -> long long {
    return i > j ? 0 : dp[std::size_t(i) * std::size_t(K) + std::size_t(j)];
  };

  // Interval DP by diagonal; cells on one diagonal only read strictly shorter
  // intervals, so they are independent.
  for (int len = 1; len <= K; ++len) {
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i <= K - len; ++i) {
      const int j = i + len - 1;
      std::vector<int> cell;
      for (int rk : ki.ranks)
        if (rk >= i && rk <= j) cell.push_back(rk);
      long long best_value = -1;
      int best_root = i;
      for (int r = i; r <= j; ++r) {
        long long sw = 0;
        int last = 0;
        for (int rk : cell) {
          int side = rk < r ? 1 : (rk > r ? 2 : 0);
          if (side == 0) continue;
          if (last != 0 && side != last) ++sw;
          last = side;
        }
        long long v = sw + dp_at(i, r - 1) + dp_at(r + 1, j);
        if (v > best_value) {  // ties keep the smaller root key
          best_value = v;
          best_root = r;
        }
      }
      dp[std::size_t(i) * std::size_t(K) + std::size_t(j)] = best_value;
      best[std::size_t(i) * std::size_t(K) + std::size_t(j)] = best_root;
    }
  }

  AltExactResult res;
  res.value = dp_at(0, K - 1);
  res.witness.root = build_witness(ki.keys, best, K, 0, K - 1, res.witness.nodes);
  return res;
}

}  // namespace

AltExactResult alt_exact(const PointSet& P) { return alt_exact_impl(P, true); }
AltExactResult alt_exact_serial(const PointSet& P) { return alt_exact_impl(P, false); }

namespace {

// Enumeration pool for the brute-force oracle. Subtrees are shared between
// enclosing trees; evaluation is read-only so sharing is harmless.
struct TreePool {
  struct Node {
    int key, left, right;  // -1 = absent
  };
  std::vector<Node> nodes;

  int add(int key, int l, int r) {
    nodes.push_back({key, l, r});
    return int(nodes.size()) - 1;
  }
};

std::vector<int> enumerate_bsts(const std::vector<int>& keys, int i, int j,
                                TreePool& pool,
                                std::vector<std::vector<std::vector<int>>>& memo) {
  if (i > j) return {-1};
  if (!memo[std::size_t(i)][std::size_t(j)].empty())
    return memo[std::size_t(i)][std::size_t(j)];
  std::vector<int> roots;
  for (int r = i; r <= j; ++r) {
    auto lefts = enumerate_bsts(keys, i, r - 1, pool, memo);
    auto rights = enumerate_bsts(keys, r + 1, j, pool, memo);
    for (int l : lefts)
      for (int rr : rights) roots.push_back(pool.add(keys[std::size_t(r)], l, rr));
  }
  memo[std::size_t(i)][std::size_t(j)] = roots;
  return roots;
}

long long alt_pool_rec(const TreePool& pool, int node, const std::vector<Point>& pts) {
  if (pts.empty()) return 0;
  if (node < 0)
    throw std::invalid_argument("alt_bruteforce: point key absent from tree");
  const TreePool::Node& nd = pool.nodes[std::size_t(node)];
  std::vector<Point> lps, rps;
  long long total = split_and_count(pts, nd.key, lps, rps, nullptr);
  total += alt_pool_rec(pool, nd.left, lps);
  total += alt_pool_rec(pool, nd.right, rps);
  return total;
}

}  // namespace

long long alt_bruteforce(const PointSet& P) {
  if (P.empty()) return 0;
  KeyIndex ki(P);
  const int K = int(ki.keys.size());
  if (K > 10)
    throw std::invalid_argument("alt_bruteforce: more than 10 distinct keys (" +
                                std::to_string(K) + ")");
  TreePool pool;
  std::vector<std::vector<std::vector<int>>> memo{
      std::size_t(K), std::vector<std::vector<int>>(std::size_t(K))};
  std::vector<int> roots = enumerate_bsts(ki.keys, 0, K - 1, pool, memo);
  long long bestv = 0;
  for (int root : roots)
    bestv = std::max(bestv, alt_pool_rec(pool, root, P.points()));
  return bestv;
}

Funnel funnel_of_point(const PointSet& P, Point p) {
  const std::vector<Point>& pts = P.points();
  std::size_t idx = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] == p) {
      idx = i;
      break;
    }
  if (idx == pts.size())
    throw std::invalid_argument("funnel_of_point: query point not in set");

  Funnel f;
  long long lo = LLONG_MIN, hi = LLONG_MAX;  // staircase frontiers
  for (std::size_t i = idx; i-- > 0;) {
    const Point& q = pts[i];
    if (q.x == p.x) break;  // a repeat of the key closes both sides
    if (q.x < p.x) {
      if (q.x > lo) {
        f.left.push_back(q);
        lo = q.x;
      }
    } else {
      if (q.x < hi) {
        f.right.push_back(q);
        hi = q.x;
      }
    }
  }
  std::reverse(f.left.begin(), f.left.end());  // report by increasing y
  std::reverse(f.right.begin(), f.right.end());
  return f;
}

long long funnel_switches(const PointSet& P, std::size_t point_index) {
  const std::vector<Point>& pts = P.points();
  const Point p = pts[point_index];
  long long lo = LLONG_MIN, hi = LLONG_MAX;
  int last = 0;
  long long switches = 0;
  // Scanning by decreasing y; the switch count is the same in either
  // direction.
  for (std::size_t i = point_index; i-- > 0;) {
    const Point& q = pts[i];
    if (q.x == p.x) break;
    if (q.x < p.x) {
      if (q.x > lo) {
        if (last == 2) ++switches;
        last = 1;
        lo = q.x;
      }
    } else {
      if (q.x < hi) {
        if (last == 1) ++switches;
        last = 2;
        hi = q.x;
      }
    }
  }
  return switches;
}

namespace {

long long funnel_bound_impl(const PointSet& P, bool parallel) {
  const long long m = (long long)P.size();
  long long total = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : total) if (parallel)
  for (long long i = 0; i < m; ++i) total += funnel_switches(P, std::size_t(i));
  return total;
}

}  // namespace

long long funnel_bound(const PointSet& P) { return funnel_bound_impl(P, true); }
long long funnel_bound_serial(const PointSet& P) { return funnel_bound_impl(P, false); }

long long funnel_bound_oracle(const PointSet& P) {
  const std::vector<Point>& pts = P.points();
  long long total = 0;
  for (const Point& p : pts) {
    std::vector<int> left_y, right_y;
    for (const Point& q : pts) {
      if (q.y >= p.y || q.x == p.x) continue;
      const int xlo = std::min(p.x, q.x), xhi = std::max(p.x, q.x);
      bool blocked = false;
      for (const Point& r : pts) {
        if (r == p || r == q) continue;
        if (xlo <= r.x && r.x <= xhi && q.y <= r.y && r.y <= p.y) {
          blocked = true;
          break;
        }
      }
      if (!blocked) (q.x < p.x ? left_y : right_y).push_back(q.y);
    }
    total += mix_value(left_y, right_y);
  }
  return total;
}

BoundReport bound_report(const AccessSequence& seq) {
  if (seq.accesses.empty())
    throw std::invalid_argument("bound_report: empty sequence");
  const PointSet P = geometric_view(seq);
  BoundReport r;
  r.m = seq.length();
  r.alt_value = alt_exact(P).value;
  r.funnel_value = funnel_bound(P);
  r.amortized_alt = Rational(r.alt_value, (long long)r.m);
  r.amortized_funnel = Rational(r.funnel_value, (long long)r.m);
  return r;
}

}  // namespace wilber
