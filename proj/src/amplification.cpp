#include "wilber/amplification.hpp"

#include <algorithm>
#include <stdexcept>

#include "wilber/bounds.hpp"

namespace wilber {

namespace {

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

int int_log2(long long v) {
  int lg = 0;
  while ((1LL << lg) < v) ++lg;
  return lg;
}

// n of the form 2^(2^r), r >= 0: the exponent itself is a power of two.
bool is_tower_size(int n) {
  return n >= 2 && is_power_of_two(n) && is_power_of_two(int_log2(n));
}

}  // namespace

void AmplifierConfig::validate() const {
  if (!base) throw std::invalid_argument("amplify: no base generator");
  if (!is_tower_size(n) || n < 4)
    throw std::invalid_argument("amplify: n must be of the form 2^(2^r) with r >= 1, got " +
                                std::to_string(n));
  if (R < 1 || !is_power_of_two(R))
    throw std::invalid_argument("amplify: R must be a power of two, got " +
                                std::to_string(R));
  const int lg = int_log2(n);
  if (lg % R != 0)
    throw std::invalid_argument("amplify: R = " + std::to_string(R) +
                                " exceeds log2(n) = " + std::to_string(lg));
  const int leaf = 1 << (lg / R);
  if (leaf < min_leaf_universe)
    throw std::invalid_argument("amplify: leaf universe " + std::to_string(leaf) +
                                " is below the minimum " +
                                std::to_string(min_leaf_universe));
}

namespace {

AccessSequence amplify_rec(int n_cur, int r_cur, const BaseGenerator& base,
                           std::vector<AmplificationLevel>* levels) {
  if (r_cur == 1) {
    AccessSequence b = base(n_cur);
    if (b.universe_size != n_cur)
      throw std::invalid_argument("amplify: base generator returned universe " +
                                  std::to_string(b.universe_size) + ", expected " +
                                  std::to_string(n_cur));
    b.validate();
    return pad_uniform(b);
  }
  const int s = 1 << (int_log2(n_cur) / 2);  // sqrt, exact for tower sizes
  const AccessSequence sub = amplify_rec(s, r_cur / 2, base, levels);

  CompositionSpec spec;
  spec.ranges.resize(std::size_t(s));
  for (int j = 0; j < s; ++j) spec.ranges[std::size_t(j)] = {j * s + 1, (j + 1) * s};
  spec.components.assign(std::size_t(s), sub);
  spec.template_seq.universe_size = s;
  spec.template_seq.accesses.reserve(sub.length() * std::size_t(s));
  for (int c = 0; c < s; ++c)
    spec.template_seq.accesses.insert(spec.template_seq.accesses.end(),
                                      sub.accesses.begin(), sub.accesses.end());

  AccessSequence composed = compose(spec);
  if (levels)
    levels->push_back({n_cur, s, composed, spec.template_seq, sub});
  return composed;
}

}  // namespace

AccessSequence amplify(const AmplifierConfig& cfg) {
  cfg.validate();
  return amplify_rec(cfg.n, cfg.R, cfg.base, nullptr);
}

AmplifyTrace amplify_with_levels(const AmplifierConfig& cfg) {
  cfg.validate();
  AmplifyTrace trace;
  trace.sequence = amplify_rec(cfg.n, cfg.R, cfg.base, &trace.levels);
  std::reverse(trace.levels.begin(), trace.levels.end());  // outermost first
  return trace;
}

std::vector<AmplificationRow> amplification_report(AmplifierConfig cfg,
                                                   const std::vector<int>& r_values) {
  std::vector<AmplificationRow> rows;
  rows.reserve(r_values.size());
  for (int r : r_values) {
    cfg.R = r;
    const AccessSequence seq = amplify(cfg);
    const BoundReport b = bound_report(seq);
    rows.push_back({r, b.m, b.alt_value, b.funnel_value, b.amortized_alt,
                    b.amortized_funnel});
  }
  return rows;
}

}  // namespace wilber
