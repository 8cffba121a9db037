#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "wilber/rational.hpp"
#include "wilber/sequences.hpp"
#include "wilber/tree.hpp"

namespace wilber {

// Thrown when two routes that must agree exactly (implementation vs oracle,
// or an internal identity) disagree.
struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Alternation bound for a fixed reference tree: at every node, the points
// are split by key into the left and right subtrees (points matching the
// node's key are dropped), their time sets are mixed, and switch counts are
// summed over the whole tree. Every point key must be present in T.
long long alt_for_tree(const PointSet& P, const ReferenceTree& T);

// Invokes fn(node_key, earlier, later) for every adjacent side switch at
// every tree node, where `earlier`/`later` are the two points of the switch.
void for_each_alternation(const PointSet& P, const ReferenceTree& T,
                          const std::function<void(int, Point, Point)>& fn);

struct AltExactResult {
  long long value = 0;
  ReferenceTree witness;
};

// Maximum of alt_for_tree over all BSTs on the key set of P, by interval DP
// over contiguous key ranges (root ties break toward the smaller key).
// alt_exact runs the DP diagonals in parallel; alt_exact_serial is the
// reference kept for testing. Both return identical results.
AltExactResult alt_exact(const PointSet& P);
AltExactResult alt_exact_serial(const PointSet& P);

// Independent oracle: enumerates every BST over the key set (at most 10
// distinct keys) and maximizes alt_for_tree.
long long alt_bruteforce(const PointSet& P);

// Left/right funnel of a query point: the earlier points on each side whose
// closed rectangle with p contains no other point. Listed by increasing y.
struct Funnel {
  std::vector<Point> left;
  std::vector<Point> right;
};

Funnel funnel_of_point(const PointSet& P, Point p);

// Side-switch count of one point's funnel, by a backward scan maintaining
// the two staircase frontiers.
long long funnel_switches(const PointSet& P, std::size_t point_index);

// Sum of funnel side switches over all points. funnel_bound scans points in
// parallel; funnel_bound_serial is the reference kept for testing.
long long funnel_bound(const PointSet& P);
long long funnel_bound_serial(const PointSet& P);

// Independent O(m^3) oracle: literal rectangle-emptiness transcription, with
// the switch count routed through mix_value.
long long funnel_bound_oracle(const PointSet& P);

struct BoundReport {
  long long alt_value = 0;
  long long funnel_value = 0;
  std::size_t m = 0;
  Rational amortized_alt;
  Rational amortized_funnel;
};

// Both bounds of geometric_view(seq); rejects empty sequences.
BoundReport bound_report(const AccessSequence& seq);

}  // namespace wilber
