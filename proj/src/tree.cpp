#include "wilber/tree.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wilber {

std::vector<int> ReferenceTree::keys() const {
  std::vector<int> ks;
  ks.reserve(nodes.size());
  for (const Node& n : nodes) ks.push_back(n.key);
  std::sort(ks.begin(), ks.end());
  return ks;
}

bool ReferenceTree::contains(int key) const {
  int cur = root;
  while (cur >= 0) {
    if (nodes[std::size_t(cur)].key == key) return true;
    cur = key < nodes[std::size_t(cur)].key ? nodes[std::size_t(cur)].left
                                            : nodes[std::size_t(cur)].right;
  }
  return false;
}

std::vector<int> ReferenceTree::path_to(int key) const {
  std::vector<int> path;
  int cur = root;
  while (cur >= 0) {
    path.push_back(cur);
    if (nodes[std::size_t(cur)].key == key) return path;
    cur = key < nodes[std::size_t(cur)].key ? nodes[std::size_t(cur)].left
                                            : nodes[std::size_t(cur)].right;
  }
  throw std::invalid_argument("tree: key " + std::to_string(key) + " not present");
}

void ReferenceTree::validate() const {
  if (root < 0) {
    if (!nodes.empty())
      throw std::invalid_argument("tree: nodes present but no root");
    return;
  }
  if (std::size_t(root) >= nodes.size())
    throw std::invalid_argument("tree: root index out of range");
  std::vector<char> seen(nodes.size(), 0);
  long long count = 0;
  // search property via interval bounds, iterative to spare the stack
  struct Frame {
    int idx;
    long long lo, hi;
  };
  std::vector<Frame> stack{{root, std::numeric_limits<long long>::min(),
                            std::numeric_limits<long long>::max()}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.idx < 0) continue;
    if (std::size_t(f.idx) >= nodes.size())
      throw std::invalid_argument("tree: child index out of range");
    if (seen[std::size_t(f.idx)])
      throw std::invalid_argument("tree: node " + std::to_string(f.idx + 1) +
                                  " referenced twice");
    seen[std::size_t(f.idx)] = 1;
    ++count;
    const Node& n = nodes[std::size_t(f.idx)];
    if (n.key <= f.lo || n.key >= f.hi)
      throw std::invalid_argument("tree: search property violated at key " +
                                  std::to_string(n.key));
    stack.push_back({n.left, f.lo, n.key});
    stack.push_back({n.right, n.key, f.hi});
  }
  if (count != (long long)nodes.size())
    throw std::invalid_argument("tree: unreachable nodes present");
}

namespace {

int build_balanced(const std::vector<int>& ks, int lo, int hi,
                   std::vector<ReferenceTree::Node>& out) {
  if (lo > hi) return -1;
  int mid = (lo + hi + 1) / 2;  // bottom level packs left
  int idx = int(out.size());
  out.push_back({ks[std::size_t(mid)], -1, -1});
  out[std::size_t(idx)].left = build_balanced(ks, lo, mid - 1, out);
  out[std::size_t(idx)].right = build_balanced(ks, mid + 1, hi, out);
  return idx;
}

int build_random(const std::vector<int>& ks, int lo, int hi, Rng& rng,
                 std::vector<ReferenceTree::Node>& out) {
  if (lo > hi) return -1;
  int r = int(uniform_range(rng, lo, hi));
  int idx = int(out.size());
  out.push_back({ks[std::size_t(r)], -1, -1});
  out[std::size_t(idx)].left = build_random(ks, lo, r - 1, rng, out);
  out[std::size_t(idx)].right = build_random(ks, r + 1, hi, rng, out);
  return idx;
}

void check_sorted_unique(const std::vector<int>& ks) {
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (ks[i] <= ks[i - 1])
      throw std::invalid_argument("tree builder: keys must be sorted and distinct");
}

}  // namespace

ReferenceTree ReferenceTree::balanced(const std::vector<int>& sorted_keys) {
  check_sorted_unique(sorted_keys);
  ReferenceTree t;
  if (sorted_keys.empty()) return t;
  t.nodes.reserve(sorted_keys.size());
  t.root = build_balanced(sorted_keys, 0, int(sorted_keys.size()) - 1, t.nodes);
  return t;
}

ReferenceTree ReferenceTree::complete_over_universe(int n) {
  std::vector<int> ks(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) ks[std::size_t(i)] = i + 1;
  return balanced(ks);
}

ReferenceTree ReferenceTree::random_shape(const std::vector<int>& sorted_keys, Rng& rng) {
  check_sorted_unique(sorted_keys);
  ReferenceTree t;
  if (sorted_keys.empty()) return t;
  t.nodes.reserve(sorted_keys.size());
  t.root = build_random(sorted_keys, 0, int(sorted_keys.size()) - 1, rng, t.nodes);
  return t;
}

ReferenceTree ReferenceTree::shifted(int delta) const {
  ReferenceTree t = *this;
  for (Node& n : t.nodes) n.key += delta;
  return t;
}

void write_tree(std::ostream& out, const ReferenceTree& t) {
  // re-number in preorder so the root lands on the first node line
  std::vector<int> order;
  std::vector<int> newindex(t.nodes.size(), -1);
  std::vector<int> stack;
  if (t.root >= 0) stack.push_back(t.root);
  while (!stack.empty()) {
    int idx = stack.back();
    stack.pop_back();
    newindex[std::size_t(idx)] = int(order.size());
    order.push_back(idx);
    const ReferenceTree::Node& n = t.nodes[std::size_t(idx)];
    if (n.right >= 0) stack.push_back(n.right);
    if (n.left >= 0) stack.push_back(n.left);
  }
  out << order.size() << '\n';
  for (int idx : order) {
    const ReferenceTree::Node& n = t.nodes[std::size_t(idx)];
    int l = n.left >= 0 ? newindex[std::size_t(n.left)] + 1 : 0;
    int r = n.right >= 0 ? newindex[std::size_t(n.right)] + 1 : 0;
    out << n.key << ' ' << l << ' ' << r << '\n';
  }
}

void write_tree_file(const std::string& path, const ReferenceTree& t) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_tree(f, t);
  if (!f) throw std::runtime_error("write failed: " + path);
}

ReferenceTree read_tree(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(name + ": empty tree file");
  std::istringstream head(line);
  long long count = 0;
  if (!(head >> count) || count < 0)
    throw std::runtime_error(name + ": line 1: expected a node count");
  ReferenceTree t;
  t.nodes.resize(std::size_t(count));
  for (long long i = 0; i < count; ++i) {
    const std::string lineno = std::to_string(i + 2);
    if (!std::getline(in, line))
      throw std::runtime_error(name + ": line " + lineno +
                               ": expected a node, found end of file");
    std::istringstream row(line);
    long long key = 0, l = 0, r = 0;
    if (!(row >> key >> l >> r))
      throw std::runtime_error(name + ": line " + lineno +
                               ": expected \"key left right\"");
    if (l < 0 || l > count || r < 0 || r > count)
      throw std::runtime_error(name + ": line " + lineno + ": child index out of range");
    t.nodes[std::size_t(i)] = {int(key), int(l) - 1, int(r) - 1};
  }
  t.root = count > 0 ? 0 : -1;
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(name + ": " + e.what());
  }
  return t;
}

ReferenceTree read_tree_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_tree(f, path);
}

}  // namespace wilber
