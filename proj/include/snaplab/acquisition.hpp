#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "snaplab/model.hpp"

namespace snaplab {

// All regions copied at one instant of a paused system.
struct FrozenPlan {
  Time at = 0;
  friend bool operator==(const FrozenPlan&, const FrozenPlan&) = default;
};

// Linear scan: the i-th region of `order` is copied at start + (i+1)*delay.
struct SequentialPlan {
  Time start = 0;
  std::vector<RegionId> order;
  Time delay = 1;
  friend bool operator==(const SequentialPlan&, const SequentialPlan&) = default;
};

// Background scan in `order`; a write to a region not yet copied is held
// back until the region has been copied.
struct CopyOnWritePlan {
  Time start = 0;
  std::vector<RegionId> order;
  Time delay = 1;
  friend bool operator==(const CopyOnWritePlan&, const CopyOnWritePlan&) = default;
};

// Scan the listed regions first, the rest afterwards in index order.
struct PriorityPlan {
  Time start = 0;
  std::vector<RegionId> priority;
  Time delay = 1;
  friend bool operator==(const PriorityPlan&, const PriorityPlan&) = default;
};

using AcquisitionPlan = std::variant<FrozenPlan, SequentialPlan, CopyOnWritePlan, PriorityPlan>;

inline std::string_view strategy_name(const AcquisitionPlan& plan) {
  static constexpr std::string_view names[] = {"frozen", "sequential", "cow", "priority"};
  return names[plan.index()];
}

/// The instant the acquisition begins (the copy instant for a frozen plan).
inline Time plan_start(const AcquisitionPlan& plan) {
  return std::visit(
      [](const auto& p) -> Time {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, FrozenPlan>)
          return p.at;
        else
          return p.start;
      },
      plan);
}

namespace detail {

inline void require_delay(Time delay) {
  if (delay < 1) throw Error(ErrorCode::InvalidPlan, "per-region delay must be at least one tick");
}

inline void require_permutation(const std::vector<RegionId>& order, std::size_t n) {
  if (order.size() != n) throw Error(ErrorCode::InvalidPlan, "order must list every region exactly once");
  std::vector<bool> seen(n, false);
  for (RegionId r : order) {
    if (r.index() >= n || seen[r.index()])
      throw Error(ErrorCode::InvalidPlan, "order must list every region exactly once");
    seen[r.index()] = true;
  }
}

inline Time slot_time(Time start, std::size_t slot, Time delay) { return start + (slot + 1) * delay; }

}  // namespace detail

inline std::vector<RegionId> index_order(std::size_t n) {
  std::vector<RegionId> order;
  for (std::size_t i = 0; i < n; ++i) order.push_back(region(i));
  return order;
}

/// Priority regions first, then the remaining ones in index order.
inline std::vector<RegionId> priority_order(const std::vector<RegionId>& priority, std::size_t n) {
  std::vector<bool> listed(n, false);
  for (RegionId r : priority) {
    if (r.index() >= n || listed[r.index()])
      throw Error(ErrorCode::InvalidPlan, "priority regions must be distinct valid regions");
    listed[r.index()] = true;
  }
  std::vector<RegionId> order = priority;
  for (std::size_t i = 0; i < n; ++i)
    if (!listed[i]) order.push_back(region(i));
  return order;
}

inline Snapshot acquire_frozen(const GroundTruth& gt, Time at) {
  std::vector<RegionCopy> copies;
  for (std::size_t r = 0; r < gt.region_count(); ++r) copies.push_back({gt.value_at(region(r), at), at});
  return Snapshot(std::move(copies));
}

inline Snapshot acquire_sequential(const GroundTruth& gt, Time start, const std::vector<RegionId>& order,
                                   Time delay) {
  detail::require_delay(delay);
  detail::require_permutation(order, gt.region_count());
  std::vector<RegionCopy> copies(gt.region_count());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Time t = detail::slot_time(start, i, delay);
    copies[order[i].index()] = {gt.value_at(order[i], t), t};
  }
  return Snapshot(std::move(copies));
}

/// Copy-on-write acquisition starting at `start`. A region whose first write
/// after `start` falls at or before its background slot is copied when that
/// write arrives, before it lands: the copy is stamped one tick ahead of the
/// write and holds the value the region had at `start`. Reads never trigger
/// a copy. The computation itself is not altered.
inline Snapshot acquire_cow(const Computation& comp, const GroundTruth& gt, Time start,
                            const std::vector<RegionId>& order, Time delay) {
  detail::require_delay(delay);
  detail::require_permutation(order, comp.region_count());
  std::vector<RegionCopy> copies(comp.region_count());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const RegionId r = order[i];
    const Time slot = detail::slot_time(start, i, delay);
    std::optional<Time> intercepted;
    for (std::size_t pos : comp.events_on(r)) {
      const Event& e = comp.event_at(pos);
      if (e.rt <= start || !writes(e.kind)) continue;
      if (e.rt <= slot) intercepted = e.rt - 1;
      break;
    }
    copies[r.index()] = {gt.value_at(r, start), intercepted.value_or(slot)};
  }
  return Snapshot(std::move(copies));
}

inline Snapshot acquire_priority(const GroundTruth& gt, Time start, const std::vector<RegionId>& priority,
                                 Time delay) {
  return acquire_sequential(gt, start, priority_order(priority, gt.region_count()), delay);
}

inline Snapshot acquire(const Computation& comp, const GroundTruth& gt, const AcquisitionPlan& plan) {
  struct Visitor {
    const Computation& comp;
    const GroundTruth& gt;
    Snapshot operator()(const FrozenPlan& p) const { return acquire_frozen(gt, p.at); }
    Snapshot operator()(const SequentialPlan& p) const { return acquire_sequential(gt, p.start, p.order, p.delay); }
    Snapshot operator()(const CopyOnWritePlan& p) const { return acquire_cow(comp, gt, p.start, p.order, p.delay); }
    Snapshot operator()(const PriorityPlan& p) const { return acquire_priority(gt, p.start, p.priority, p.delay); }
  };
  return std::visit(Visitor{comp, gt}, plan);
}

}  // namespace snaplab
