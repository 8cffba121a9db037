#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wilber/composition.hpp"
#include "wilber/rational.hpp"
#include "wilber/sequences.hpp"

namespace wilber {

// Generator mapping a universe size n' (of the form 2^(2^r)) to a sequence
// over [n'] with uniform key frequency.
using BaseGenerator = std::function<AccessSequence(int)>;

struct AmplifierConfig {
  int n = 0;                    // universe size, of the form 2^(2^r), r >= 1
  int R = 1;                    // power-of-two recursion parameter
  BaseGenerator base;           // supplies the depth-1 sequence
  int min_leaf_universe = 16;   // smallest permitted n^(1/R)

  void validate() const;
};

// Recursive composition: depth 1 is the padded base sequence over [n];
// doubling R composes sqrt(n) copies of the half-depth sequence over
// consecutive key ranges, templated by the same sequence repeated sqrt(n)
// times.
AccessSequence amplify(const AmplifierConfig& cfg);

// One composition level of the recursion, for level-by-level checks: the
// composed sequence splits into `copies` identical components and a template
// made of `copies` concatenated copies of the same component.
struct AmplificationLevel {
  int universe = 0;             // universe of the composed sequence
  int copies = 0;               // sqrt(universe)
  AccessSequence composed;
  AccessSequence template_seq;  // over [copies]
  AccessSequence component;     // over [copies] as well (one copy)
};

// amplify plus every intermediate composition level, outermost first.
struct AmplifyTrace {
  AccessSequence sequence;
  std::vector<AmplificationLevel> levels;
};

AmplifyTrace amplify_with_levels(const AmplifierConfig& cfg);

struct AmplificationRow {
  int R = 0;
  std::size_t m = 0;
  long long alt = 0;
  long long funnel = 0;
  Rational amortized_alt;
  Rational amortized_funnel;
};

// Exact bounds of the amplified sequence for each requested R.
std::vector<AmplificationRow> amplification_report(AmplifierConfig cfg,
                                                   const std::vector<int>& r_values);

}  // namespace wilber
