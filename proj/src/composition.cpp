#include "wilber/composition.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wilber/bounds.hpp"

namespace wilber {

void CompositionSpec::validate() const {
  const std::size_t l = components.size();
  if (l == 0) throw std::invalid_argument("composition: no components");
  if (ranges.size() != l)
    throw std::invalid_argument("composition: ranges/components count mismatch");
  int expected_lo = 1;
  for (std::size_t j = 0; j < l; ++j) {
    if (ranges[j].lo != expected_lo || ranges[j].hi < ranges[j].lo)
      throw std::invalid_argument(
          "composition: ranges must tile [1, n] in ascending order");
    expected_lo = ranges[j].hi + 1;
    if (components[j].universe_size != ranges[j].width())
      throw std::invalid_argument("composition: component " + std::to_string(j + 1) +
                                  " universe does not match its range width");
    components[j].validate();
  }
  if (template_seq.universe_size != int(l))
    throw std::invalid_argument("composition: template universe must be the component count");
  template_seq.validate();
  std::vector<std::size_t> mult(l + 1, 0);
  for (int j : template_seq.accesses) ++mult[std::size_t(j)];
  for (std::size_t j = 0; j < l; ++j)
    if (mult[j + 1] != components[j].length())
      throw std::invalid_argument("composition: template must contain index " +
                                  std::to_string(j + 1) + " exactly " +
                                  std::to_string(components[j].length()) + " times");
}

AccessSequence compose(const CompositionSpec& spec) {
  spec.validate();
  AccessSequence out{spec.total_universe(), {}};
  out.accesses.reserve(spec.template_seq.length());
  std::vector<std::size_t> next(spec.components.size(), 0);
  for (int j : spec.template_seq.accesses) {
    const std::size_t c = std::size_t(j - 1);
    const int key = spec.components[c].accesses[next[c]++];
    out.accesses.push_back(key + spec.ranges[c].lo - 1);
  }
  return out;
}

int range_index(int x, const std::vector<KeyRange>& ranges) {
  for (std::size_t j = 0; j < ranges.size(); ++j)
    if (ranges[j].covers(x)) return int(j) + 1;
  throw std::invalid_argument("range_index: key " + std::to_string(x) +
                              " is outside every range");
}

CompositionSpec decompose(const AccessSequence& seq, const std::vector<KeyRange>& ranges) {
  if (ranges.empty()) throw std::invalid_argument("decompose: no ranges");
  int expected_lo = 1;
  for (const KeyRange& r : ranges) {
    if (r.lo != expected_lo || r.hi < r.lo)
      throw std::invalid_argument("decompose: ranges must tile [1, n] in ascending order");
    expected_lo = r.hi + 1;
  }
  CompositionSpec spec;
  spec.ranges = ranges;
  spec.template_seq.universe_size = int(ranges.size());
  spec.components.resize(ranges.size());
  for (std::size_t j = 0; j < ranges.size(); ++j)
    spec.components[j].universe_size = ranges[j].width();
  for (int x : seq.accesses) {
    const int j = range_index(x, ranges);
    spec.template_seq.accesses.push_back(j);
    spec.components[std::size_t(j - 1)].accesses.push_back(x - ranges[std::size_t(j - 1)].lo + 1);
  }
  return spec;
}

namespace {

int project_range_rec(const ReferenceTree& T, int node, KeyRange range,
                      std::vector<ReferenceTree::Node>& out) {
  if (node < 0) return -1;
  const ReferenceTree::Node& nd = T.nodes[std::size_t(node)];
  if (range.covers(nd.key)) {
    int idx = int(out.size());
    out.push_back({nd.key, -1, -1});
    out[std::size_t(idx)].left = project_range_rec(T, nd.left, range, out);
    out[std::size_t(idx)].right = project_range_rec(T, nd.right, range, out);
    return idx;
  }
  // the range is contiguous, so only one side can hold its keys
  return project_range_rec(T, nd.key < range.lo ? nd.right : nd.left, range, out);
}

}  // namespace

ReferenceTree project_component_tree(const ReferenceTree& T, KeyRange range) {
  if (range.hi < range.lo)
    throw std::invalid_argument("project_component_tree: empty range");
  ReferenceTree out;
  out.root = project_range_rec(T, T.root, range, out.nodes);
  if (int(out.nodes.size()) != range.width())
    throw std::invalid_argument("project_component_tree: tree does not contain all of [" +
                                std::to_string(range.lo) + ", " +
                                std::to_string(range.hi) + "]");
  return out;
}

namespace {

struct TemplateProjector {
  const ReferenceTree& T;
  const std::vector<KeyRange>& ranges;
  std::vector<int> min_key, max_key;  // per node of T
  std::vector<char> seen;             // per range index
  std::vector<ReferenceTree::Node> out;

  TemplateProjector(const ReferenceTree& t, const std::vector<KeyRange>& r)
      : T(t), ranges(r), seen(r.size() + 1, 0) {
    min_key.assign(T.nodes.size(), 0);
    max_key.assign(T.nodes.size(), 0);
    if (T.root >= 0) fill_minmax(T.root);
  }

  void fill_minmax(int node) {
    const ReferenceTree::Node& nd = T.nodes[std::size_t(node)];
    int mn = nd.key, mx = nd.key;
    if (nd.left >= 0) {
      fill_minmax(nd.left);
      mn = std::min(mn, min_key[std::size_t(nd.left)]);
      mx = std::max(mx, max_key[std::size_t(nd.left)]);
    }
    if (nd.right >= 0) {
      fill_minmax(nd.right);
      mn = std::min(mn, min_key[std::size_t(nd.right)]);
      mx = std::max(mx, max_key[std::size_t(nd.right)]);
    }
    min_key[std::size_t(node)] = mn;
    max_key[std::size_t(node)] = mx;
  }

  int build(int node) {
    if (node < 0) return -1;
    const ReferenceTree::Node& nd = T.nodes[std::size_t(node)];
    const int j = range_index(nd.key, ranges);
    if (!seen[std::size_t(j)]) {
      // first visit: this node is the lowest common ancestor of its range
      seen[std::size_t(j)] = 1;
      int idx = int(out.size());
      out.push_back({j, -1, -1});
      out[std::size_t(idx)].left = build(nd.left);
      out[std::size_t(idx)].right = build(nd.right);
      return idx;
    }
    const KeyRange& r = ranges[std::size_t(j - 1)];
    const bool left_leaves = nd.left >= 0 && min_key[std::size_t(nd.left)] < r.lo;
    const bool right_leaves = nd.right >= 0 && max_key[std::size_t(nd.right)] > r.hi;
    if (left_leaves && right_leaves)
      throw std::invalid_argument(
          "project_template_tree: ranges are not contiguous in the tree");
    if (left_leaves) return build(nd.left);
    if (right_leaves) return build(nd.right);
    return -1;
  }
};

}  // namespace

ReferenceTree project_template_tree(const ReferenceTree& T,
                                    const std::vector<KeyRange>& ranges) {
  if (ranges.empty()) throw std::invalid_argument("project_template_tree: no ranges");
  int expected_lo = ranges.front().lo;
  for (const KeyRange& r : ranges) {
    if (r.lo != expected_lo || r.hi < r.lo)
      throw std::invalid_argument(
          "project_template_tree: ranges must be contiguous and ascending");
    expected_lo = r.hi + 1;
  }
  const int span = ranges.back().hi - ranges.front().lo + 1;
  if (int(T.nodes.size()) != span)
    throw std::invalid_argument(
        "project_template_tree: ranges must partition the tree's key set");
  TemplateProjector proj(T, ranges);
  ReferenceTree out;
  out.root = proj.build(T.root);
  out.nodes = std::move(proj.out);
  if (out.nodes.size() != ranges.size())
    throw std::invalid_argument("project_template_tree: not every range was emitted");
  return out;
}

namespace {

constexpr long long kNegInf = std::numeric_limits<long long>::min();
constexpr long long kPosInf = std::numeric_limits<long long>::max();

// Largest strict-ancestor key below `key` and smallest above it, along the
// root path of a BST.
struct AncestorWindow {
  long long below = kNegInf;
  long long above = kPosInf;
};

AncestorWindow ancestor_window(const ReferenceTree& T, int key) {
  AncestorWindow w;
  int cur = T.root;
  while (cur >= 0) {
    const ReferenceTree::Node& nd = T.nodes[std::size_t(cur)];
    if (nd.key == key) return w;
    if (key < nd.key) {
      w.above = std::min(w.above, (long long)nd.key);
      cur = nd.left;
    } else {
      w.below = std::max(w.below, (long long)nd.key);
      cur = nd.right;
    }
  }
  throw std::invalid_argument("ancestor_window: key not in tree");
}

// Is b the highest ancestor of z lying in z's range on the stated side of z?
bool highest_sided_ancestor_is(const ReferenceTree& T, int z, int b,
                               const KeyRange& z_range) {
  const bool want_above = z < b;  // matches the side b actually lies on
  int cur = T.root;
  while (cur >= 0) {
    const ReferenceTree::Node& nd = T.nodes[std::size_t(cur)];
    if (nd.key == z) return false;  // never reached b => b was not on the path
    const bool qualifies = z_range.covers(nd.key) &&
                           (want_above ? z < nd.key : nd.key < z);
    if (qualifies) return nd.key == b;
    cur = z < nd.key ? nd.left : nd.right;
  }
  throw std::invalid_argument("classify: endpoint key not in tree");
}

}  // namespace

namespace {

AlternationTypeCounts classify_impl(const AccessSequence& seq, const ReferenceTree& T,
                                    const std::vector<KeyRange>& ranges,
                                    long long* unclassified) {
  const ReferenceTree templ = project_template_tree(T, ranges);
  const PointSet P = geometric_view(seq);

  AlternationTypeCounts counts;
  auto classify = [&](int b, Point earlier, Point later) {
    const int x = earlier.x, y = later.x;
    const int jx = range_index(x, ranges);
    const int jy = range_index(y, ranges);
    const int jb = range_index(b, ranges);

    if (jx == jb && jy == jb) {
      ++counts.type1;
      return;
    }

    if ((jx == jb &&
         highest_sided_ancestor_is(T, x, b, ranges[std::size_t(jx - 1)])) ||
        (jy == jb &&
         highest_sided_ancestor_is(T, y, b, ranges[std::size_t(jy - 1)]))) {
      ++counts.type2;
      return;
    }

    const AncestorWindow wb = ancestor_window(T, b);
    const KeyRange& rb = ranges[std::size_t(jb - 1)];
    const bool range_descends = wb.below < rb.lo && rb.hi < wb.above;
    const AncestorWindow wt = ancestor_window(templ, jb);
    if (range_descends) {
      const bool x_closest = jx != jb && (jx < jb ? jx == wt.below : jx == wt.above);
      const bool y_closest = jy != jb && (jy < jb ? jy == wt.below : jy == wt.above);
      if (x_closest || y_closest) {
        ++counts.type3;
        return;
      }
    }

    if (jx != jb && jy != jb && jx != jy) {
      const int j_left = std::min(jx, jy);   // endpoint on b's left side
      const int j_right = std::max(jx, jy);  // endpoint on b's right side
      if (wt.below < j_left && j_left < jb && jb < j_right && j_right < wt.above) {
        ++counts.type4;
        return;
      }
    }

    if (unclassified) {
      ++*unclassified;
      return;
    }
    throw consistency_error(
        "classify_alternations: alternation matches no type (pivot " +
        std::to_string(b) + ", times " + std::to_string(earlier.y) + " < " +
        std::to_string(later.y) + ")");
  };

  for_each_alternation(P, T, classify);
  return counts;
}

}  // namespace

AlternationTypeCounts classify_alternations(const AccessSequence& seq,
                                            const ReferenceTree& T,
                                            const std::vector<KeyRange>& ranges) {
  return classify_impl(seq, T, ranges, nullptr);
}

AlternationTypeCounts classify_alternations_counting(
    const AccessSequence& seq, const ReferenceTree& T,
    const std::vector<KeyRange>& ranges, long long& unclassified) {
  return classify_impl(seq, T, ranges, &unclassified);
}

CompositionSpec read_composition_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();

  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error(path + ": empty file");
  long long l = 0;
  if (!(std::istringstream(line) >> l) || l < 1)
    throw std::runtime_error(path + ": line 1: expected the component count");

  CompositionSpec spec;
  spec.ranges.resize(std::size_t(l));
  for (long long j = 0; j < l; ++j) {
    if (!std::getline(f, line))
      throw std::runtime_error(path + ": missing range line " + std::to_string(j + 1));
    std::istringstream row(line);
    if (!(row >> spec.ranges[std::size_t(j)].lo >> spec.ranges[std::size_t(j)].hi))
      throw std::runtime_error(path + ": line " + std::to_string(j + 2) +
                               ": expected \"lo hi\"");
  }
  auto next_path = [&](const char* what) {
    if (!std::getline(f, line) || line.empty())
      throw std::runtime_error(path + ": missing " + std::string(what) + " path");
    std::filesystem::path p(line);
    if (p.is_relative()) p = dir / p;
    return p.string();
  };
  spec.template_seq = read_sequence_file(next_path("template"));
  spec.components.resize(std::size_t(l));
  for (long long j = 0; j < l; ++j)
    spec.components[std::size_t(j)] =
        read_sequence_file(next_path("component"));
  spec.validate();
  return spec;
}

void write_composition_file(const std::string& path, const CompositionSpec& spec,
                            const std::string& basename) {
  spec.validate();
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << spec.components.size() << '\n';
  for (const KeyRange& r : spec.ranges) f << r.lo << ' ' << r.hi << '\n';
  const std::string templ_name = basename + "_template.seq";
  f << templ_name << '\n';
  write_sequence_file((dir / templ_name).string(), spec.template_seq);
  for (std::size_t j = 0; j < spec.components.size(); ++j) {
    const std::string comp_name = basename + "_comp" + std::to_string(j + 1) + ".seq";
    f << comp_name << '\n';
    write_sequence_file((dir / comp_name).string(), spec.components[j]);
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace wilber
