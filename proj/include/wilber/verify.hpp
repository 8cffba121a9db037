#pragma once

#include <cstdint>
#include <string>

#include "wilber/rational.hpp"

namespace wilber {

struct VerifyReport {
  long long trials = 0;
  long long failures = 0;
  // Largest observed (alt(X) - alt(template) - sum alt(components)) / m.
  Rational max_alt_slack_per_m{0, 1};
  // Smallest observed funnel(X) - funnel(template) - sum funnel(components).
  long long min_funnel_margin = 0;
  long long unclassified = 0;        // alternations matching no type
  // Largest observed node_touches / cost_budget ratio across the corpus.
  double max_cost_ratio = 0.0;
  std::string first_failure;         // reproduction hint for the first failure
};

struct VerifyParams {
  long long trials = 100;
  int n = 16;          // per-trial universe (lemma31) or component width cap
  int m = 0;           // accesses; 0 picks a per-harness default
  int l = 4;           // max component count for compositions
  std::uint64_t seed = 1;
};

// Subadditivity of the alternation bound (slack constant 8) and exact
// superadditivity of the funnel bound, on random equal-length equal-range
// compositions. Trials run in parallel; per-trial seeds keep the aggregates
// order-independent.
VerifyReport verify_directsum(const VerifyParams& p);

// Exhaustiveness of the four-way alternation classification on random
// compositions with random reference trees, plus the per-type side bounds.
VerifyReport verify_claim23(const VerifyParams& p);

// Exact identity between accumulated preferred-child flips and the
// alternation bound on the complete tree, for k in {1, 2, log2 n}.
VerifyReport verify_lemma31(const VerifyParams& p);

}  // namespace wilber
