#include "wilber/tango.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wilber {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int int_log2(int v) {
  int lg = 0;
  while ((1 << lg) < v) ++lg;
  return lg;
}

}  // namespace

CompleteRefTree::CompleteRefTree(int n_, int k_) : n(n_), k(k_) {
  if (n < 2 || !power_of_two(n))
    throw std::invalid_argument("tango: n must be a power of two >= 2, got " +
                                std::to_string(n));
  if (k < 1 || k > int_log2(n))
    throw std::invalid_argument("tango: k must lie in [1, log2(n)], got " +
                                std::to_string(k));
  parent.assign(std::size_t(n) + 1, 0);
  left.assign(std::size_t(n) + 1, 0);
  right.assign(std::size_t(n) + 1, 0);
  depth.assign(std::size_t(n) + 1, 0);
  lo.assign(std::size_t(n) + 1, 0);
  hi.assign(std::size_t(n) + 1, 0);
  level.assign(std::size_t(n) + 1, 0);
  rel_depth.assign(std::size_t(n) + 1, 0);
  subtree_root.assign(std::size_t(n) + 1, 0);

  // ceil-mid recursion: the unique complete shape, bottom level packed left
  struct Builder {
    CompleteRefTree& t;
    void build(int a, int b, int par, int dep) {
      if (a > b) return;
      int mid = (a + b + 1) / 2;
      t.parent[std::size_t(mid)] = par;
      t.depth[std::size_t(mid)] = dep;
      t.lo[std::size_t(mid)] = a;
      t.hi[std::size_t(mid)] = b;
      t.level[std::size_t(mid)] = (dep - 1) / t.k + 1;
      t.rel_depth[std::size_t(mid)] = (dep - 1) % t.k + 1;
      t.subtree_root[std::size_t(mid)] =
          t.rel_depth[std::size_t(mid)] == 1 ? mid : t.subtree_root[std::size_t(par)];
      if (par != 0) {
        if (mid < par)
          t.left[std::size_t(par)] = mid;
        else
          t.right[std::size_t(par)] = mid;
      }
      t.height = std::max(t.height, dep);
      build(a, mid - 1, mid, dep + 1);
      build(mid + 1, b, mid, dep + 1);
    }
  };
  Builder{*this}.build(1, n, 0, 1);
  root = (n + 2) / 2;
  num_levels = (height + k - 1) / k;
}

ReferenceTree CompleteRefTree::as_reference_tree() const {
  ReferenceTree t;
  t.nodes.reserve(std::size_t(n));
  struct Builder {
    const CompleteRefTree& r;
    ReferenceTree& t;
    int build(int key) {
      if (key == 0) return -1;
      int idx = int(t.nodes.size());
      t.nodes.push_back({key, -1, -1});
      t.nodes[std::size_t(idx)].left = build(r.left[std::size_t(key)]);
      t.nodes[std::size_t(idx)].right = build(r.right[std::size_t(key)]);
      return idx;
    }
  };
  t.root = Builder{*this, t}.build(root);
  return t;
}

AuxForest::AuxForest(const CompleteRefTree& ref) : ref_(&ref) {
  const std::size_t sz = std::size_t(ref.n) + 1;
  left_.assign(sz, 0);
  right_.assign(sz, 0);
  height_.assign(sz, 1);
  mind_.assign(sz, 0);
  maxd_.assign(sz, 0);
  for (int key = 1; key <= ref.n; ++key)
    mind_[std::size_t(key)] = maxd_[std::size_t(key)] = ref.rel_depth[std::size_t(key)];
  height_[0] = 0;
}

void AuxForest::pull(int v) {
  const int l = left_[std::size_t(v)], r = right_[std::size_t(v)];
  height_[std::size_t(v)] =
      1 + std::max(height_[std::size_t(l)], height_[std::size_t(r)]);
  int mn = ref_->rel_depth[std::size_t(v)], mx = mn;
  if (l) {
    mn = std::min(mn, mind_[std::size_t(l)]);
    mx = std::max(mx, maxd_[std::size_t(l)]);
  }
  if (r) {
    mn = std::min(mn, mind_[std::size_t(r)]);
    mx = std::max(mx, maxd_[std::size_t(r)]);
  }
  mind_[std::size_t(v)] = mn;
  maxd_[std::size_t(v)] = mx;
}

int AuxForest::rotate_left(int v) {
  ++touches_;
  int r = right_[std::size_t(v)];
  right_[std::size_t(v)] = left_[std::size_t(r)];
  left_[std::size_t(r)] = v;
  pull(v);
  pull(r);
  return r;
}

int AuxForest::rotate_right(int v) {
  ++touches_;
  int l = left_[std::size_t(v)];
  left_[std::size_t(v)] = right_[std::size_t(l)];
  right_[std::size_t(l)] = v;
  pull(v);
  pull(l);
  return l;
}

int AuxForest::rebalance(int v) {
  pull(v);
  const int hl = height_[std::size_t(left_[std::size_t(v)])];
  const int hr = height_[std::size_t(right_[std::size_t(v)])];
  if (hl > hr + 1) {
    int l = left_[std::size_t(v)];
    if (height_[std::size_t(left_[std::size_t(l)])] <
        height_[std::size_t(right_[std::size_t(l)])])
      left_[std::size_t(v)] = rotate_left(l);
    return rotate_right(v);
  }
  if (hr > hl + 1) {
    int r = right_[std::size_t(v)];
    if (height_[std::size_t(right_[std::size_t(r)])] <
        height_[std::size_t(left_[std::size_t(r)])])
      right_[std::size_t(v)] = rotate_right(r);
    return rotate_left(v);
  }
  return v;
}

int AuxForest::join_mid(int l, int mid, int r) {
  ++touches_;
  const int hl = height_[std::size_t(l)], hr = height_[std::size_t(r)];
  if (std::abs(hl - hr) <= 1) {
    left_[std::size_t(mid)] = l;
    right_[std::size_t(mid)] = r;
    pull(mid);
    return mid;
  }
  if (hl > hr) {
    right_[std::size_t(l)] = join_mid(right_[std::size_t(l)], mid, r);
    return rebalance(l);
  }
  left_[std::size_t(r)] = join_mid(l, mid, left_[std::size_t(r)]);
  return rebalance(r);
}

int AuxForest::join2(int l, int r) {
  if (!l) return r;
  if (!r) return l;
  // detach the maximum of l to reuse as the middle
  struct Detach {
    AuxForest& f;
    int operator()(int t, int& out) {
      ++f.touches_;
      if (!f.right_[std::size_t(t)]) {
        out = t;
        int rest = f.left_[std::size_t(t)];
        f.left_[std::size_t(t)] = 0;
        f.pull(t);
        return rest;
      }
      f.right_[std::size_t(t)] = (*this)(f.right_[std::size_t(t)], out);
      return f.rebalance(t);
    }
  };
  int mid = 0;
  l = Detach{*this}(l, mid);
  return join_mid(l, mid, r);
}

void AuxForest::split_key(int t, int key, int& l, int& r) {
  if (!t) {
    l = r = 0;
    return;
  }
  ++touches_;
  const int lc = left_[std::size_t(t)], rc = right_[std::size_t(t)];
  left_[std::size_t(t)] = right_[std::size_t(t)] = 0;
  if (t < key) {
    int l1 = 0, r1 = 0;
    split_key(rc, key, l1, r1);
    l = join_mid(lc, t, l1);
    r = r1;
  } else {  // keys >= `key` go right
    int l1 = 0, r1 = 0;
    split_key(lc, key, l1, r1);
    l = l1;
    r = join_mid(r1, t, rc);
  }
}

int AuxForest::find_extreme_deeper(int t, int d, bool leftmost) {
  while (t) {
    ++touches_;
    const int first = leftmost ? left_[std::size_t(t)] : right_[std::size_t(t)];
    const int second = leftmost ? right_[std::size_t(t)] : left_[std::size_t(t)];
    if (first && maxd_[std::size_t(first)] > d) {
      t = first;
      continue;
    }
    if (ref_->rel_depth[std::size_t(t)] > d) return t;
    t = (second && maxd_[std::size_t(second)] > d) ? second : 0;
  }
  return 0;
}

int AuxForest::search(int root, int x) {
  if (!root) throw std::invalid_argument("aux search: empty tree");
  int t = root, best = 0;
  while (t) {
    ++touches_;
    if (ref_->is_ancestor_or_self(t, x) &&
        (best == 0 ||
         ref_->depth[std::size_t(t)] > ref_->depth[std::size_t(best)]))
      best = t;
    if (t == x) return t;  // the key's own node ends the path prefix
    t = x < t ? left_[std::size_t(t)] : right_[std::size_t(t)];
  }
  return best;
}

std::pair<int, int> AuxForest::cut_by_depth(int root, int d) {
  if (!root) throw std::invalid_argument("aux cut: empty tree");
  if (d < mind_[std::size_t(root)] || d > maxd_[std::size_t(root)])
    throw std::invalid_argument("aux cut: depth " + std::to_string(d) +
                                " outside the path's span [" +
                                std::to_string(mind_[std::size_t(root)]) + ", " +
                                std::to_string(maxd_[std::size_t(root)]) + "]");
  // Nodes below the cut sit inside one child interval of the cut node, so
  // their keys form a contiguous block of the path's keys.
  int lmost = find_extreme_deeper(root, d, true);
  int rmost = find_extreme_deeper(root, d, false);
  if (!lmost) return {root, 0};
  int a = 0, rest = 0, bottom = 0, b = 0;
  split_key(root, lmost, a, rest);
  split_key(rest, rmost + 1, bottom, b);
  return {join2(a, b), bottom};
}

int AuxForest::join(int top, int bottom) {
  if (!bottom) return top;
  if (!top) return bottom;
  // top's deepest node must be the reference parent of bottom's shallowest
  int deepest = top;
  while (ref_->rel_depth[std::size_t(deepest)] != maxd_[std::size_t(top)]) {
    ++touches_;
    const int l = left_[std::size_t(deepest)];
    deepest = (l && maxd_[std::size_t(l)] == maxd_[std::size_t(top)])
                  ? l
                  : right_[std::size_t(deepest)];
  }
  int shallowest = bottom;
  while (ref_->rel_depth[std::size_t(shallowest)] != mind_[std::size_t(bottom)]) {
    ++touches_;
    const int l = left_[std::size_t(shallowest)];
    shallowest = (l && mind_[std::size_t(l)] == mind_[std::size_t(bottom)])
                     ? l
                     : right_[std::size_t(shallowest)];
  }
  if (ref_->parent[std::size_t(shallowest)] != deepest ||
      ref_->rel_depth[std::size_t(shallowest)] !=
          ref_->rel_depth[std::size_t(deepest)] + 1)
    throw std::invalid_argument(
        "aux join: pieces do not concatenate into one path");
  const int blo = ref_->lo[std::size_t(shallowest)];
  int a = 0, b = 0;
  split_key(top, blo, a, b);
  return join2(a, join2(bottom, b));
}

int AuxForest::build_path(const std::vector<int>& path_keys) {
  if (path_keys.empty()) return 0;
  int t = path_keys.front();
  for (std::size_t i = 1; i < path_keys.size(); ++i)
    t = join(t, path_keys[i]);
  return t;
}

std::vector<std::pair<int, int>> AuxForest::items(int root) const {
  std::vector<std::pair<int, int>> out;
  struct Walk {
    const AuxForest& f;
    std::vector<std::pair<int, int>>& out;
    void operator()(int t) {
      if (!t) return;
      (*this)(f.left_[std::size_t(t)]);
      out.emplace_back(t, f.ref_->rel_depth[std::size_t(t)]);
      (*this)(f.right_[std::size_t(t)]);
    }
  };
  Walk{*this, out}(root);
  return out;
}

int AuxForest::min_depth(int root) const { return root ? mind_[std::size_t(root)] : 0; }
int AuxForest::max_depth(int root) const { return root ? maxd_[std::size_t(root)] : 0; }

TangoTreeK::TangoTreeK(int n, int k)
    : ref_(n, k),
      pref_(std::size_t(n) + 1, PreferredChild::none),
      aux_(ref_),
      aux_root_by_top_(std::size_t(n) + 1, 0) {
  // with no accesses yet, every node is a singleton path
  for (int key = 1; key <= n; ++key) aux_root_by_top_[std::size_t(key)] = key;
}

int TangoTreeK::preferred_key(int v) const {
  switch (pref_[std::size_t(v)]) {
    case PreferredChild::left:
      return ref_.left[std::size_t(v)];
    case PreferredChild::right:
      return ref_.right[std::size_t(v)];
    default:
      return 0;
  }
}

AccessStats TangoTreeK::access(int x) {
  if (x < 1 || x > ref_.n)
    throw std::invalid_argument("tango access: key " + std::to_string(x) +
                                " outside [1, " + std::to_string(ref_.n) + "]");
  AccessStats st;
  st.per_level.assign(std::size_t(ref_.num_levels), 0);
  aux_.reset_touches();
  long long restructures = 0;

  // Search: descend through the auxiliary trees of the preferred paths that
  // intersect the root-to-x reference path.
  int cur_top = ref_.root;
  while (true) {
    const int sr = ref_.subtree_root[std::size_t(cur_top)];
    if (st.visited_subtree_roots.empty() || st.visited_subtree_roots.back() != sr)
      st.visited_subtree_roots.push_back(sr);
    const int aroot = aux_root_by_top_[std::size_t(cur_top)];
    if (!aroot) throw consistency_error("tango: missing auxiliary tree for a path top");
    const int exit_key = aux_.search(aroot, x);
    if (!exit_key) throw consistency_error("tango: search left the reference path");
    if (exit_key == x) break;
    cur_top = x < exit_key ? ref_.left[std::size_t(exit_key)]
                           : ref_.right[std::size_t(exit_key)];
    if (!cur_top) throw consistency_error("tango: reference child missing");
  }

  // Update: repoint every node on the root-to-x path toward x, cutting and
  // joining paths as preferences change. The accessed node itself keeps its
  // preference (switch counts ignore accesses to the node's own key).
  int path_top = ref_.root;
  int v = ref_.root;
  while (v != x) {
    const bool go_left = x < v;
    const int c = go_left ? ref_.left[std::size_t(v)] : ref_.right[std::size_t(v)];
    const PreferredChild newside =
        go_left ? PreferredChild::left : PreferredChild::right;
    const PreferredChild old = pref_[std::size_t(v)];
    if (old != newside) {
      if (old != PreferredChild::none)
        ++st.per_level[std::size_t(ref_.level[std::size_t(v)]) - 1];
      if (ref_.children_in_level(v)) {
        if (old != PreferredChild::none) {
          const int old_child = preferred_key(v);
          auto [top_part, bottom] =
              aux_.cut_by_depth(aux_root_by_top_[std::size_t(path_top)],
                                ref_.rel_depth[std::size_t(v)]);
          ++restructures;
          aux_root_by_top_[std::size_t(path_top)] = top_part;
          aux_root_by_top_[std::size_t(old_child)] = bottom;
        }
        const int broot = aux_root_by_top_[std::size_t(c)];
        if (!broot) throw consistency_error("tango: missing auxiliary tree to join");
        aux_root_by_top_[std::size_t(c)] = 0;
        aux_root_by_top_[std::size_t(path_top)] =
            aux_.join(aux_root_by_top_[std::size_t(path_top)], broot);
        ++restructures;
      }
      pref_[std::size_t(v)] = newside;
    }
    if (!ref_.children_in_level(v)) path_top = c;
    v = c;
  }

  for (long long f : st.per_level) st.a += f;
  st.node_touches = aux_.touches();
  st.restructure_ops = restructures;
  return st;
}

CostReport TangoTreeK::run(const AccessSequence& seq) {
  CostReport rep;
  rep.total_per_level.assign(std::size_t(ref_.num_levels), 0);
  rep.per_access.reserve(seq.length());
  for (int x : seq.accesses) {
    AccessStats st = access(x);
    rep.total_a += st.a;
    rep.total_touches += st.node_touches;
    rep.total_restructures += st.restructure_ops;
    for (std::size_t l = 0; l < st.per_level.size(); ++l)
      rep.total_per_level[l] += st.per_level[l];
    rep.per_access.push_back(std::move(st));
  }

  rep.alt_reference = alt_for_tree(geometric_view(seq), ref_.as_reference_tree());
  if (rep.alt_reference != rep.total_a)
    throw consistency_error(
        "tango: preferred-child flips (" + std::to_string(rep.total_a) +
        ") disagree with the alternation bound (" +
        std::to_string(rep.alt_reference) + ")");

  const double m = double(seq.length());
  rep.cost_budget = (double(rep.alt_reference) +
                     m * std::log2(double(ref_.n)) / double(ref_.k)) *
                    (std::log2(double(ref_.k)) + 1.0);
  rep.measured_constant =
      rep.cost_budget > 0 ? double(rep.total_touches) / rep.cost_budget : 0.0;
  return rep;
}

bool TangoTreeK::audit_paths() const {
  const int n = ref_.n;
  std::vector<char> covered(std::size_t(n) + 1, 0);
  for (int key = 1; key <= n; ++key) {
    const int par = ref_.parent[std::size_t(key)];
    const bool is_top =
        par == 0 || ref_.level[std::size_t(par)] != ref_.level[std::size_t(key)] ||
        preferred_key(par) != key;
    if (!is_top) {
      if (aux_root_by_top_[std::size_t(key)] != 0) return false;
      continue;
    }
    // expected chain: follow preferred children within the level subtree
    std::vector<std::pair<int, int>> expected;
    int cur = key;
    while (cur) {
      expected.emplace_back(cur, ref_.rel_depth[std::size_t(cur)]);
      covered[std::size_t(cur)] = 1;
      const int nxt = preferred_key(cur);
      if (!nxt || ref_.level[std::size_t(nxt)] != ref_.level[std::size_t(cur)]) break;
      cur = nxt;
    }
    std::sort(expected.begin(), expected.end());
    const int aroot = aux_root_by_top_[std::size_t(key)];
    if (!aroot) return false;
    if (aux_.items(aroot) != expected) return false;
  }
  for (int key = 1; key <= n; ++key)
    if (!covered[std::size_t(key)]) return false;
  return true;
}

}  // namespace wilber
