#pragma once

#include <string>
#include <vector>

#include "wilber/sequences.hpp"
#include "wilber/tree.hpp"

namespace wilber {

// A contiguous key interval [lo, hi].
struct KeyRange {
  int lo = 0;
  int hi = 0;

  int width() const { return hi - lo + 1; }
  bool covers(int x) const { return lo <= x && x <= hi; }
  friend bool operator==(const KeyRange&, const KeyRange&) = default;
};

// l component sequences over disjoint ascending key ranges, interleaved by a
// template sequence over [l] in which index j appears exactly |component j|
// times. Ranges tile [1, n] in ascending order.
struct CompositionSpec {
  std::vector<AccessSequence> components;  // component j over [ranges[j].width()]
  std::vector<KeyRange> ranges;
  AccessSequence template_seq;  // over [l]

  void validate() const;
  int total_universe() const { return ranges.empty() ? 0 : ranges.back().hi; }
};

// Interleaves the components in template order, offsetting component j's keys
// into its range.
AccessSequence compose(const CompositionSpec& spec);

// Inverse of compose for the given range partition of [1, n].
CompositionSpec decompose(const AccessSequence& seq, const std::vector<KeyRange>& ranges);

// 1-based index of the unique range covering x; throws if uncovered.
int range_index(int x, const std::vector<KeyRange>& ranges);

// The unique BST over the range's keys preserving T's ancestor order within
// the range (root-in-range keeps the node; otherwise descend toward the
// range).
ReferenceTree project_component_tree(const ReferenceTree& T, KeyRange range);

// The unique BST over range indices [l] preserving T's ancestor order across
// ranges: index j roots a subtree at the lowest common ancestor of its range.
ReferenceTree project_template_tree(const ReferenceTree& T,
                                    const std::vector<KeyRange>& ranges);

struct AlternationTypeCounts {
  long long type1 = 0;  // within one component's projected tree
  long long type2 = 0;  // charged to one endpoint access
  long long type3 = 0;  // charged to the pivot's range
  long long type4 = 0;  // an alternation of the projected template tree

  long long total() const { return type1 + type2 + type3 + type4; }
};

// Classifies every preferred-child alternation of alt_for_tree(G_seq, T) into
// the smallest applicable type. An unclassifiable alternation throws
// consistency_error: the four cases are supposed to be exhaustive.
AlternationTypeCounts classify_alternations(const AccessSequence& seq,
                                            const ReferenceTree& T,
                                            const std::vector<KeyRange>& ranges);

// Harness variant: counts unclassifiable alternations instead of throwing on
// the first one.
AlternationTypeCounts classify_alternations_counting(const AccessSequence& seq,
                                                     const ReferenceTree& T,
                                                     const std::vector<KeyRange>& ranges,
                                                     long long& unclassified);

// Text format: line 1 is l; then l lines "lo hi"; then l+1 sequence-file
// paths, template first. Relative paths resolve against the spec file's
// directory.
CompositionSpec read_composition_file(const std::string& path);
void write_composition_file(const std::string& path, const CompositionSpec& spec,
                            const std::string& basename);

}  // namespace wilber
