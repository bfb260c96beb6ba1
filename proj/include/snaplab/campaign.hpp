#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "snaplab/acquisition.hpp"
#include "snaplab/causality.hpp"
#include "snaplab/evaluator.hpp"
#include "snaplab/fixtures.hpp"
#include "snaplab/model.hpp"
#include "snaplab/vclock.hpp"
#include "snaplab/workload.hpp"

namespace snaplab {

enum class Strategy { Frozen, Sequential, CopyOnWrite, Priority };

constexpr std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Frozen: return "frozen";
    case Strategy::Sequential: return "sequential";
    case Strategy::CopyOnWrite: return "cow";
    case Strategy::Priority: return "priority";
  }
  return "?";
}

inline std::optional<Strategy> parse_strategy(std::string_view text) {
  for (Strategy s : {Strategy::Frozen, Strategy::Sequential, Strategy::CopyOnWrite, Strategy::Priority})
    if (text == to_string(s)) return s;
  return std::nullopt;
}

// How the integrity reference time tau is drawn for a case. It is never
// later than the first copy: the integrity checks pass vacuously for regions
// copied before tau, and the integrity implications only hold without them.
enum class TauMode { Random, AtStart };

struct CampaignConfig {
  std::size_t cases = 10000;
  std::uint64_t seed = 7;
  std::vector<KindRegime> regimes{KindRegime::AllUniquelyModifying, KindRegime::AllModifying,
                                  KindRegime::MixedWithReads};
  std::vector<Strategy> strategies{Strategy::Frozen, Strategy::Sequential, Strategy::CopyOnWrite, Strategy::Priority};
  double linked_list_share = 0.3;
  double read_fraction = 0.3;
  std::size_t min_regions = 1, max_regions = 5;
  std::size_t max_processes = 4;
  std::size_t min_events = 0, max_events = 30;
  Time min_delay = 1, max_delay = 3;
  bool overlap_activity = false;  // start every scan early enough to overlap events
  TauMode tau_mode = TauMode::Random;
  std::size_t threads = 1;
};

struct CampaignCase {
  std::size_t index = 0;
  WorkloadConfig workload;
  AcquisitionPlan plan;
  Time tau = 0;
};

namespace detail {

inline void validate(const CampaignConfig& c) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (c.regimes.empty() || c.strategies.empty()) fail("campaign needs at least one regime and one strategy");
  if (c.min_regions < 1 || c.min_regions > c.max_regions) fail("bad region range");
  if (c.max_processes < 1) fail("bad process count");
  if (c.min_events > c.max_events) fail("bad event range");
  if (c.min_delay < 1 || c.min_delay > c.max_delay) fail("bad delay range");
}

}  // namespace detail

/// Deterministic case `index` of a campaign: depends only on the campaign
/// seed and the index.
inline CampaignCase make_case(const CampaignConfig& config, std::size_t index) {
  Rng rng(splitmix64(config.seed ^ splitmix64(index)));
  CampaignCase c;
  c.index = index;

  WorkloadConfig& w = c.workload;
  w.seed = rng.next();
  w.regime = config.regimes[rng.below(config.regimes.size())];
  w.read_fraction = w.regime == KindRegime::MixedWithReads ? config.read_fraction : 0.0;
  w.region_count = rng.between(config.min_regions, config.max_regions);
  w.process_count = rng.between(1, config.max_processes);
  w.event_count = rng.between(config.min_events, config.max_events);
  if (rng.chance(config.linked_list_share)) w.workload = LinkedListWorkload{w.region_count};

  const Strategy strategy = config.strategies[rng.below(config.strategies.size())];
  const Time delay = rng.between(config.min_delay, config.max_delay);
  const Time span = w.region_count * delay;
  const Time last = w.event_count;
  const Time start = config.overlap_activity && strategy != Strategy::Frozen
                         ? rng.between(0, last > span ? last - span : 0)
                         : rng.between(0, last);
  std::vector<RegionId> order = index_order(w.region_count);
  rng.shuffle(order);

  switch (strategy) {
    case Strategy::Frozen: c.plan = FrozenPlan{start}; break;
    case Strategy::Sequential: c.plan = SequentialPlan{start, order, delay}; break;
    case Strategy::CopyOnWrite: c.plan = CopyOnWritePlan{start, order, delay}; break;
    case Strategy::Priority:
      order.resize(rng.below(w.region_count + 1));
      c.plan = PriorityPlan{start, order, delay};
      break;
  }
  c.tau = config.tau_mode == TauMode::AtStart || rng.chance(0.5) ? start : rng.between(0, start);
  return c;
}

/// Everything derived from one case.
struct CaseOutcome {
  Snapshot snapshot;
  Verdict verdict;
  bool vc_consistent = false;
  bool rt_consistent = false;
  bool has_reads = false;
  bool all_uniquely_modifying = false;
  bool matches_frozen_at_start = false;  // values equal a frozen copy at the plan start
};

inline CaseOutcome run_case(const CampaignCase& c) {
  const Computation comp = generate(c.workload);
  const GroundTruth gt = replay(comp);
  const CausalOrder order = build_causal_order(comp);
  CaseOutcome out;
  out.snapshot = acquire(comp, gt, c.plan);
  out.verdict = classify(comp, order, gt, out.snapshot, c.tau, {.assert_invariants = false});
  out.vc_consistent = vc_consistent(clock_snapshot(comp, out.snapshot));
  out.rt_consistent = rt_consistent(comp, out.snapshot);
  out.has_reads = comp.has_kind(EventKind::NonModifying);
  out.all_uniquely_modifying = comp.all_kind(EventKind::UniquelyModifying);
  const Snapshot frozen = acquire_frozen(gt, plan_start(c.plan));
  out.matches_frozen_at_start = std::equal(
      frozen.copies().begin(), frozen.copies().end(), out.snapshot.copies().begin(),
      [](const RegionCopy& a, const RegionCopy& b) { return a.v == b.v; });
  return out;
}

/// A directed implication between two criteria and the cases it covers.
struct Implication {
  std::string_view name;
  std::string_view scope;
  bool (*applies)(const CaseOutcome&);
  bool (*antecedent)(const Verdict&);
  bool (*consequent)(const Verdict&);
};

inline const std::array<Implication, 7>& implications() {
  static const std::array<Implication, 7> table{{
      {"instantaneous => quasi_instantaneous", "all", [](const CaseOutcome&) { return true; },
       [](const Verdict& v) { return v.instantaneous; }, [](const Verdict& v) { return v.quasi_instantaneous; }},
      {"restrictive_integrity => permissive_integrity", "all", [](const CaseOutcome&) { return true; },
       [](const Verdict& v) { return v.restrictive_integrity; },
       [](const Verdict& v) { return v.permissive_integrity; }},
      {"permissive_integrity => quasi_instantaneous", "all", [](const CaseOutcome&) { return true; },
       [](const Verdict& v) { return v.permissive_integrity; },
       [](const Verdict& v) { return v.quasi_instantaneous; }},
      {"restrictive_integrity => correct", "all", [](const CaseOutcome&) { return true; },
       [](const Verdict& v) { return v.restrictive_integrity; }, [](const Verdict& v) { return v.correct; }},
      {"permissive_integrity => correct", "all", [](const CaseOutcome&) { return true; },
       [](const Verdict& v) { return v.permissive_integrity; }, [](const Verdict& v) { return v.correct; }},
      {"restrictive_integrity => causal", "no reads", [](const CaseOutcome& o) { return !o.has_reads; },
       [](const Verdict& v) { return v.restrictive_integrity; }, [](const Verdict& v) { return v.causal; }},
      {"quasi_instantaneous => causal", "uniquely modifying",
       [](const CaseOutcome& o) { return o.all_uniquely_modifying; },
       [](const Verdict& v) { return v.quasi_instantaneous; }, [](const Verdict& v) { return v.causal; }},
  }};
  return table;
}

/// A combination of verdicts showing that an implication does NOT hold.
struct NonImplication {
  std::string_view name;
  bool (*holds)(const CaseOutcome&);
};

inline const std::array<NonImplication, 3>& non_implications() {
  static const std::array<NonImplication, 3> table{{
      {"causal && !quasi_instantaneous",
       [](const CaseOutcome& o) { return o.verdict.causal && !o.verdict.quasi_instantaneous; }},
      {"quasi_instantaneous && !permissive_integrity",
       [](const CaseOutcome& o) { return o.verdict.quasi_instantaneous && !o.verdict.permissive_integrity; }},
      {"quasi_instantaneous && !causal (reads present)",
       [](const CaseOutcome& o) { return o.has_reads && o.verdict.quasi_instantaneous && !o.verdict.causal; }},
  }};
  return table;
}

struct ImplicationTally {
  std::string name;
  std::string scope;
  std::size_t applicable = 0;
  std::size_t antecedent_held = 0;
  std::size_t counterexamples = 0;
  friend bool operator==(const ImplicationTally&, const ImplicationTally&) = default;
};

struct WitnessTally {
  std::string name;
  std::size_t campaign_cases = 0;
  std::optional<std::size_t> first_case;
  std::vector<std::string> fixtures;
  bool found() const { return campaign_cases > 0 || !fixtures.empty(); }
  friend bool operator==(const WitnessTally&, const WitnessTally&) = default;
};

struct ViolationCounts {
  std::size_t not_correct = 0;
  std::size_t not_instantaneous = 0;
  std::size_t not_quasi_instantaneous = 0;
  std::size_t not_causal = 0;
  std::size_t not_restrictive_integrity = 0;
  std::size_t not_permissive_integrity = 0;
  friend bool operator==(const ViolationCounts&, const ViolationCounts&) = default;
};

/// Full reproduction data for a failed check.
struct CounterexampleBundle {
  std::string check;
  std::uint64_t campaign_seed = 0;
  CampaignCase case_data;
  Snapshot snapshot;
  Verdict verdict;
};

struct CampaignReport {
  CampaignConfig config;
  std::size_t cases = 0;
  std::array<std::size_t, 4> cases_by_strategy{};
  std::vector<ImplicationTally> implications;
  std::vector<WitnessTally> non_implications;
  // Clock check agrees with the cut check on every case.
  std::size_t vc_disagreements = 0;
  // Realtime check: sufficient for quasi-instantaneity, not necessary.
  std::size_t rt_consistent_cases = 0;
  std::size_t rt_consistent_not_quasi = 0;
  std::size_t rt_inconsistent_but_quasi = 0;
  ViolationCounts violations;
  std::vector<CounterexampleBundle> counterexamples;

  bool clean() const { return counterexamples.empty(); }
  double rate(std::size_t count) const { return cases == 0 ? 0.0 : static_cast<double>(count) / cases; }
};

/// Runs every case of the campaign, fanning out over `config.threads`
/// workers; per-case outcomes are merged in index order, so the report does
/// not depend on the thread count.
inline CampaignReport verify_implications(const CampaignConfig& config) {
  detail::validate(config);
  std::vector<CaseOutcome> outcomes(config.cases);
  std::vector<CampaignCase> cases(config.cases);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < config.cases; i += stride) {
      cases[i] = make_case(config, i);
      outcomes[i] = run_case(cases[i]);
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(config.threads, config.cases));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  CampaignReport report;
  report.config = config;
  report.cases = config.cases;
  for (const auto& imp : implications()) report.implications.push_back({std::string(imp.name), std::string(imp.scope)});
  for (const auto& non : non_implications()) {
    WitnessTally tally;
    tally.name = non.name;
    report.non_implications.push_back(std::move(tally));
  }

  auto bundle = [&](std::string check, std::size_t i) {
    report.counterexamples.push_back({std::move(check), config.seed, cases[i], outcomes[i].snapshot, outcomes[i].verdict});
  };

  for (std::size_t i = 0; i < config.cases; ++i) {
    const CaseOutcome& o = outcomes[i];
    const Verdict& v = o.verdict;
    ++report.cases_by_strategy[cases[i].plan.index()];

    for (std::size_t k = 0; k < implications().size(); ++k) {
      const Implication& imp = implications()[k];
      if (!imp.applies(o)) continue;
      ImplicationTally& tally = report.implications[k];
      ++tally.applicable;
      if (!imp.antecedent(v)) continue;
      ++tally.antecedent_held;
      if (!imp.consequent(v)) {
        ++tally.counterexamples;
        bundle(std::string(imp.name), i);
      }
    }
    for (std::size_t k = 0; k < non_implications().size(); ++k) {
      if (!non_implications()[k].holds(o)) continue;
      WitnessTally& w = report.non_implications[k];
      if (!w.first_case) w.first_case = i;
      ++w.campaign_cases;
    }

    if (o.vc_consistent != v.causal) {
      ++report.vc_disagreements;
      bundle("vector clocks agree with causal consistency", i);
    }
    if (o.rt_consistent) {
      ++report.rt_consistent_cases;
      if (!v.quasi_instantaneous) {
        ++report.rt_consistent_not_quasi;
        bundle("rt_consistent => quasi_instantaneous", i);
      }
    } else if (v.quasi_instantaneous) {
      ++report.rt_inconsistent_but_quasi;
    }

    report.violations.not_correct += !v.correct;
    report.violations.not_instantaneous += !v.instantaneous;
    report.violations.not_quasi_instantaneous += !v.quasi_instantaneous;
    report.violations.not_causal += !v.causal;
    report.violations.not_restrictive_integrity += !v.restrictive_integrity;
    report.violations.not_permissive_integrity += !v.permissive_integrity;
  }

  // The boundary fixtures stand in as witnesses regardless of what the
  // random cases happened to hit.
  for (const auto& f : fixtures::all()) {
    const GroundTruth gt = replay(f.computation);
    CaseOutcome o;
    o.snapshot = f.snapshot;
    o.verdict = classify(f.computation, gt, f.snapshot, f.tau);
    o.has_reads = f.computation.has_kind(EventKind::NonModifying);
    for (std::size_t k = 0; k < non_implications().size(); ++k)
      if (non_implications()[k].holds(o)) report.non_implications[k].fixtures.push_back(f.name);
  }
  return report;
}

/// Throws CounterexampleFound when the report is not clean.
inline void require_clean(const CampaignReport& report) {
  if (report.clean()) return;
  const auto& first = report.counterexamples.front();
  throw Error(ErrorCode::CounterexampleFound, first.check + " fails on case " + std::to_string(first.case_data.index) +
                                                  " of campaign seed " + std::to_string(first.campaign_seed));
}

}  // namespace snaplab
