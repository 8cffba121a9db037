#include "wilber/verify.hpp"

#include <algorithm>
#include <vector>

#include "wilber/bounds.hpp"
#include "wilber/composition.hpp"
#include "wilber/rng.hpp"
#include "wilber/tango.hpp"

namespace wilber {

namespace {

Rng trial_rng(std::uint64_t seed, long long trial) {
  return Rng(seed ^ (0x9e3779b97f4a7c15ULL * std::uint64_t(trial + 1)));
}

AccessSequence random_sequence(Rng& rng, int n, std::size_t m) {
  AccessSequence s{n, {}};
  s.accesses.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    s.accesses.push_back(int(uniform_below(rng, std::uint64_t(n))) + 1);
  return s;
}

// Random composition with equal-width ranges; equal component lengths when
// requested (the proven form of the alternation inequality needs them).
CompositionSpec random_composition(Rng& rng, int l_max, int width_max, int m_max,
                                   bool equal_lengths) {
  CompositionSpec spec;
  const int l = int(uniform_range(rng, 1, l_max));
  const int w = int(uniform_range(rng, 1, width_max));
  const int common_m = int(uniform_range(rng, 1, m_max));
  spec.ranges.resize(std::size_t(l));
  spec.components.resize(std::size_t(l));
  for (int j = 0; j < l; ++j) {
    spec.ranges[std::size_t(j)] = {j * w + 1, (j + 1) * w};
    const int mj = equal_lengths ? common_m : int(uniform_range(rng, 1, m_max));
    spec.components[std::size_t(j)] = random_sequence(rng, w, std::size_t(mj));
  }
  spec.template_seq.universe_size = l;
  for (int j = 1; j <= l; ++j)
    spec.template_seq.accesses.insert(spec.template_seq.accesses.end(),
                                      spec.components[std::size_t(j - 1)].length(),
                                      j);
  // Fisher-Yates with the deterministic stream
  auto& a = spec.template_seq.accesses;
  for (std::size_t i = a.size(); i > 1; --i)
    std::swap(a[i - 1], a[uniform_below(rng, i)]);
  return spec;
}

struct TrialOutcome {
  bool failed = false;
  std::string note;
  Rational alt_slack{0, 1};
  long long funnel_margin = 0;
  long long unclassified = 0;
  double cost_ratio = 0.0;
  bool has_slack = false;
  bool has_margin = false;
};

VerifyReport aggregate(const std::vector<TrialOutcome>& outcomes) {
  VerifyReport rep;
  rep.trials = (long long)outcomes.size();
  bool first_slack = true, first_margin = true;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const TrialOutcome& o = outcomes[i];
    if (o.failed) {
      ++rep.failures;
      if (rep.first_failure.empty())
        rep.first_failure = "trial " + std::to_string(i) + ": " + o.note;
    }
    rep.unclassified += o.unclassified;
    if (o.has_slack && (first_slack || rep.max_alt_slack_per_m < o.alt_slack)) {
      rep.max_alt_slack_per_m = o.alt_slack;
      first_slack = false;
    }
    if (o.has_margin && (first_margin || o.funnel_margin < rep.min_funnel_margin)) {
      rep.min_funnel_margin = o.funnel_margin;
      first_margin = false;
    }
    rep.max_cost_ratio = std::max(rep.max_cost_ratio, o.cost_ratio);
  }
  return rep;
}

}  // namespace

VerifyReport verify_directsum(const VerifyParams& p) {
  const int width_max = std::max(1, std::min(p.n, 6));  // keeps alt_exact cheap
  const int m_max = p.m > 0 ? p.m : 16;
  std::vector<TrialOutcome> outcomes(std::size_t(p.trials));

#pragma omp parallel for schedule(dynamic)
  for (long long t = 0; t < p.trials; ++t) {
    TrialOutcome& o = outcomes[std::size_t(t)];
    Rng rng = trial_rng(p.seed, t);
    const CompositionSpec spec =
        random_composition(rng, std::max(1, p.l), width_max, m_max, true);
    const AccessSequence X = compose(spec);
    const long long m = (long long)X.length();

    long long alt_whole = alt_exact(geometric_view(X)).value;
    long long alt_parts = alt_exact(geometric_view(spec.template_seq)).value;
    long long funnel_whole = funnel_bound(geometric_view(X));
    long long funnel_parts = funnel_bound(geometric_view(spec.template_seq));
    for (const AccessSequence& c : spec.components) {
      alt_parts += alt_exact(geometric_view(c)).value;
      funnel_parts += funnel_bound(geometric_view(c));
    }

    o.alt_slack = Rational(alt_whole - alt_parts, m);
    o.has_slack = true;
    o.funnel_margin = funnel_whole - funnel_parts;
    o.has_margin = true;
    if (alt_whole > alt_parts + 8 * m) {
      o.failed = true;
      o.note = "alternation subadditivity violated (slack " + o.alt_slack.str() +
               " per access)";
    }
    if (o.funnel_margin < 0) {
      o.failed = true;
      o.note = "funnel superadditivity violated (margin " +
               std::to_string(o.funnel_margin) + ")";
    }
  }
  return aggregate(outcomes);
}

VerifyReport verify_claim23(const VerifyParams& p) {
  const int width_max = std::max(1, std::min(p.n, 8));
  const int m_max = p.m > 0 ? p.m : 16;
  std::vector<TrialOutcome> outcomes(std::size_t(p.trials));

#pragma omp parallel for schedule(dynamic)
  for (long long t = 0; t < p.trials; ++t) {
    TrialOutcome& o = outcomes[std::size_t(t)];
    Rng rng = trial_rng(p.seed, t);
    const CompositionSpec spec =
        random_composition(rng, std::max(1, p.l), width_max, m_max, false);
    const AccessSequence X = compose(spec);
    const int n = spec.total_universe();
    std::vector<int> keys(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) keys[std::size_t(i)] = i + 1;
    const ReferenceTree T = ReferenceTree::random_shape(keys, rng);

    const AlternationTypeCounts counts =
        classify_alternations_counting(X, T, spec.ranges, o.unclassified);
    if (o.unclassified > 0) {
      o.failed = true;
      o.note = std::to_string(o.unclassified) + " unclassified alternations";
      continue;
    }

    const long long total = alt_for_tree(geometric_view(X), T);
    if (counts.total() != total) {
      o.failed = true;
      o.note = "type counts do not add up to the alternation total";
      continue;
    }

    // per-type charges: components bound type 1, the template bounds type 4
    long long component_sum = 0;
    for (std::size_t j = 0; j < spec.ranges.size(); ++j) {
      const ReferenceTree tj = project_component_tree(T, spec.ranges[j])
                                   .shifted(-(spec.ranges[j].lo - 1));
      component_sum +=
          alt_for_tree(geometric_view(spec.components[j]), tj);
    }
    const ReferenceTree templ = project_template_tree(T, spec.ranges);
    const long long template_alt =
        alt_for_tree(geometric_view(spec.template_seq), templ);
    if (counts.type1 > component_sum) {
      o.failed = true;
      o.note = "type-1 count exceeds the component alternation sum";
    }
    if (counts.type4 > template_alt) {
      o.failed = true;
      o.note = "type-4 count exceeds the template alternation bound";
    }
  }
  return aggregate(outcomes);
}

VerifyReport verify_lemma31(const VerifyParams& p) {
  const int n = p.n;
  const std::size_t m = p.m > 0 ? std::size_t(p.m) : std::size_t(10) * std::size_t(n);
  int lg = 0;
  while ((1 << lg) < n) ++lg;
  std::vector<int> ks{1, 2, lg};
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  ks.erase(std::remove_if(ks.begin(), ks.end(), [&](int k) { return k < 1 || k > lg; }),
           ks.end());

  std::vector<TrialOutcome> outcomes(std::size_t(p.trials));
#pragma omp parallel for schedule(dynamic)
  for (long long t = 0; t < p.trials; ++t) {
    TrialOutcome& o = outcomes[std::size_t(t)];
    Rng rng = trial_rng(p.seed, t);
    const AccessSequence seq = random_sequence(rng, n, m);
    for (int k : ks) {
      try {
        TangoTreeK tree(n, k);
        const CostReport rep = tree.run(seq);  // throws on identity mismatch
        o.cost_ratio = std::max(o.cost_ratio, rep.measured_constant);
      } catch (const consistency_error& e) {
        o.failed = true;
        o.note = "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + e.what();
        break;
      }
    }
  }
  return aggregate(outcomes);
}

}  // namespace wilber
