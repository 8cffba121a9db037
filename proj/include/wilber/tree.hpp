#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wilber/rng.hpp"

namespace wilber {

// A binary search tree over a set of integer keys. Nodes are stored by index;
// -1 marks an absent child.
struct ReferenceTree {
  struct Node {
    int key = 0;
    int left = -1;
    int right = -1;
  };

  std::vector<Node> nodes;
  int root = -1;

  bool empty() const { return root < 0; }
  std::size_t size() const { return nodes.size(); }

  // Sorted key list / membership.
  std::vector<int> keys() const;
  bool contains(int key) const;

  // Root-to-key node-index path; throws if the key is absent.
  std::vector<int> path_to(int key) const;

  // Throws std::invalid_argument if the structure is not a valid single BST
  // (search property, one root, every node reachable exactly once).
  void validate() const;

  // Balanced tree over the given sorted-unique keys (ceil-mid split: the
  // bottom level packs to the left).
  static ReferenceTree balanced(const std::vector<int>& sorted_keys);

  // The unique complete-BST shape over keys 1..n.
  static ReferenceTree complete_over_universe(int n);

  // Uniformly random BST shape over the given sorted-unique keys.
  static ReferenceTree random_shape(const std::vector<int>& sorted_keys, Rng& rng);

  // Returns a copy with every key shifted by delta.
  ReferenceTree shifted(int delta) const;
};

// Text format: line 1 is the node count; node lines follow as
// "key left_index right_index" with 1-based indices into the node list
// (0 = absent child); the first node line is the root.
void write_tree(std::ostream& out, const ReferenceTree& t);
void write_tree_file(const std::string& path, const ReferenceTree& t);
ReferenceTree read_tree(std::istream& in, const std::string& name = "<stream>");
ReferenceTree read_tree_file(const std::string& path);

}  // namespace wilber
