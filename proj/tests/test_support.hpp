#pragma once

#include <vector>

#include "snaplab/acquisition.hpp"
#include "snaplab/fixtures.hpp"
#include "snaplab/workload.hpp"

namespace snaplab::testing {

inline EventId e(std::uint32_t id) { return EventId(id); }

/// Workload configurations spread over sizes, regimes and both shapes.
inline WorkloadConfig random_config(Rng& rng, std::size_t max_events, std::size_t max_regions = 4) {
  WorkloadConfig c;
  c.region_count = rng.between(1, max_regions);
  c.process_count = rng.between(1, 3);
  c.event_count = rng.between(0, max_events);
  const KindRegime regimes[] = {KindRegime::AllUniquelyModifying, KindRegime::AllModifying,
                                KindRegime::MixedWithReads};
  c.regime = regimes[rng.below(3)];
  c.read_fraction = c.regime == KindRegime::MixedWithReads ? 0.4 : 0.0;
  c.seed = rng.next();
  if (rng.chance(0.3)) c.workload = LinkedListWorkload{c.region_count};
  return c;
}

/// Arbitrary snapshot: every region copied at a random tick with its true value.
inline Snapshot random_snapshot(Rng& rng, const GroundTruth& gt, Time last) {
  std::vector<RegionCopy> copies;
  for (std::size_t r = 0; r < gt.region_count(); ++r) {
    const Time t = rng.between(0, last + 1);
    copies.push_back({gt.value_at(region(r), t), t});
  }
  return Snapshot(std::move(copies));
}

/// Plans over a small grid of starts, delays and orders.
inline std::vector<AcquisitionPlan> plan_grid(std::size_t regions, Time last) {
  std::vector<AcquisitionPlan> plans;
  std::vector<RegionId> forward = index_order(regions);
  std::vector<RegionId> backward(forward.rbegin(), forward.rend());
  for (Time start = 0; start <= last + 1; ++start) {
    plans.push_back(FrozenPlan{start});
    for (Time delay : {Time{1}, Time{2}}) {
      plans.push_back(SequentialPlan{start, forward, delay});
      plans.push_back(SequentialPlan{start, backward, delay});
      plans.push_back(CopyOnWritePlan{start, backward, delay});
      plans.push_back(PriorityPlan{start, {backward.front()}, delay});
    }
  }
  return plans;
}

}  // namespace snaplab::testing
