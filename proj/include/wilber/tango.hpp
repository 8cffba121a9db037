#pragma once

#include <utility>
#include <vector>

#include "wilber/bounds.hpp"
#include "wilber/sequences.hpp"
#include "wilber/tree.hpp"

namespace wilber {

// The unique complete-BST shape over [n] (bottom level packed left), with
// per-key structural metadata and a partition of depths into levels of
// height k: level l covers depths (l-1)k+1 .. lk.
struct CompleteRefTree {
  int n = 0;
  int k = 1;
  int height = 0;
  int num_levels = 0;
  int root = 0;

  // All arrays are indexed by key, 1..n; 0 means absent.
  std::vector<int> parent;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<int> depth;         // root has depth 1
  std::vector<int> lo, hi;        // subtree key interval
  std::vector<int> level;         // 1-based level of the node's depth
  std::vector<int> rel_depth;     // depth within the level subtree, 1..k
  std::vector<int> subtree_root;  // root key of the node's level subtree

  CompleteRefTree(int n, int k);

  bool is_ancestor_or_self(int anc, int x) const {
    return lo[anc] <= x && x <= hi[anc];
  }
  // Children live in the same level subtree iff the node is not at its
  // level's bottom depth.
  bool children_in_level(int key) const { return rel_depth[key] < k; }

  ReferenceTree as_reference_tree() const;
};

// Forest of balanced auxiliary trees over the keys of one CompleteRefTree.
// Every key lives in exactly one tree; a tree stores one preferred path
// (a chain of the reference tree, so its key intervals nest by depth) keyed
// by key order and augmented with subtree min/max relative depth. Trees are
// addressed by their root key; 0 is the empty tree. Each operation touches
// O(log p + 1) nodes, counted in touches().
class AuxForest {
 public:
  explicit AuxForest(const CompleteRefTree& ref);

  // The deepest path node that is an ancestor-or-self of x in the reference
  // tree. Tree must be nonempty.
  int search(int root, int x);

  // Splits into (top, bottom): relative depths <= d and > d. d must lie
  // within the path's depth span.
  std::pair<int, int> cut_by_depth(int root, int d);

  // Rejoins two path pieces; top's deepest node must be the reference parent
  // of bottom's shallowest node. Either side may be empty.
  int join(int top, int bottom);

  // Builds a path tree from top-down path keys (each currently a singleton).
  int build_path(const std::vector<int>& path_keys);

  long long touches() const { return touches_; }
  void reset_touches() { touches_ = 0; }

  // (key, rel_depth) pairs in key order, for audits and oracle tests.
  std::vector<std::pair<int, int>> items(int root) const;
  int min_depth(int root) const;
  int max_depth(int root) const;

 private:
  const CompleteRefTree* ref_;
  std::vector<int> left_, right_;
  std::vector<int> height_;
  std::vector<int> mind_, maxd_;
  long long touches_ = 0;

  void pull(int v);
  int rotate_left(int v);
  int rotate_right(int v);
  int rebalance(int v);
  int join_mid(int l, int mid, int r);
  int join2(int l, int r);
  void split_key(int t, int key, int& l, int& r);
  int find_extreme_deeper(int t, int d, bool leftmost);
};

enum class PreferredChild : signed char { none = 0, left = 1, right = 2 };

// Per-access accounting.
struct AccessStats {
  std::vector<long long> per_level;        // preferred-child flips per level
  long long a = 0;                         // total flips (left<->right only)
  long long node_touches = 0;              // aux nodes visited + rebalance steps
  long long restructure_ops = 0;           // cut/join operations
  std::vector<int> visited_subtree_roots;  // level subtrees traversed, in order
};

struct CostReport {
  std::vector<AccessStats> per_access;
  std::vector<long long> total_per_level;
  long long total_a = 0;
  long long total_touches = 0;
  long long total_restructures = 0;
  // Exact cross-check: total_a must equal alt_for_tree on the same tree.
  long long alt_reference = 0;
  // (alt + m * log2(n)/k) * (log2(k) + 1), for comparison with the measured
  // touch count.
  double cost_budget = 0.0;
  double measured_constant = 0.0;  // total_touches / cost_budget
};

// Search-only BST over a fixed complete reference tree split into height-k
// levels. Preferred paths are stored in auxiliary trees; each access descends
// through them, repoints the preferred children along the reference path, and
// restores the path partition with cut/join.
class TangoTreeK {
 public:
  TangoTreeK(int n, int k);

  const CompleteRefTree& ref() const { return ref_; }

  AccessStats access(int x);

  // Runs the whole sequence and cross-checks the flip total against
  // alt_for_tree (throws consistency_error on mismatch).
  CostReport run(const AccessSequence& seq);

  PreferredChild preferred(int key) const { return pref_[key]; }

  // Recomputes the expected path partition from the preferred-child state and
  // compares it with the auxiliary forest.
  bool audit_paths() const;

 private:
  CompleteRefTree ref_;
  std::vector<PreferredChild> pref_;
  AuxForest aux_;
  std::vector<int> aux_root_by_top_;  // path-top key -> aux root key; 0 = none

  int preferred_key(int v) const;
};

}  // namespace wilber
