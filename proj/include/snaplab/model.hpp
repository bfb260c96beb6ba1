#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "snaplab/error.hpp"

namespace snaplab {

// Small index types. Distinct tags keep regions, processes and events from
// being mixed up at call sites.
template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}

  constexpr std::size_t index() const { return value; }
  friend constexpr auto operator<=>(const Id&, const Id&) = default;
};

using RegionId = Id<struct RegionTag>;
using ProcessId = Id<struct ProcessTag>;
using EventId = Id<struct EventTag>;

// Ticks of the discrete time domain. Time 0 holds the initial state; events
// occur at ticks >= 1.
using Time = std::uint64_t;
using Value = std::uint64_t;

enum class EventKind { NonModifying, Modifying, UniquelyModifying };

constexpr std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::NonModifying: return "NonModifying";
    case EventKind::Modifying: return "Modifying";
    case EventKind::UniquelyModifying: return "UniquelyModifying";
  }
  return "?";
}

inline std::optional<EventKind> parse_event_kind(std::string_view text) {
  if (text == "NonModifying") return EventKind::NonModifying;
  if (text == "Modifying") return EventKind::Modifying;
  if (text == "UniquelyModifying") return EventKind::UniquelyModifying;
  return std::nullopt;
}

constexpr bool writes(EventKind kind) { return kind != EventKind::NonModifying; }

struct Event {
  EventId id;
  ProcessId process;
  RegionId region;
  Time rt = 0;
  EventKind kind = EventKind::NonModifying;
  std::optional<Value> written;

  friend bool operator==(const Event&, const Event&) = default;
};

/// An immutable computation: events over regions, strictly ordered by their
/// realtime stamp. The constructor checks the structural invariants (sorted
/// injective stamps, valid ids, written values present exactly for writes);
/// value semantics of the event kinds are checked by replay().
class Computation {
 public:
  Computation(std::size_t region_count, std::size_t process_count,
              std::vector<Value> initial_values, std::vector<Event> events)
      : region_count_(region_count),
        process_count_(process_count),
        initial_values_(std::move(initial_values)),
        events_(std::move(events)) {
    if (region_count_ == 0) fail("region_count must be at least 1");
    if (process_count_ == 0) fail("process_count must be at least 1");
    if (initial_values_.size() != region_count_) fail("one initial value per region required");

    by_region_.resize(region_count_);
    by_process_.resize(process_count_);
    Time previous = 0;
    for (std::size_t i = 0; i < events_.size(); ++i) {
      const Event& e = events_[i];
      if (e.rt == 0) fail("event " + std::to_string(e.id.value) + " at tick 0");
      if (i > 0 && e.rt <= previous) fail("events not strictly ascending by rt");
      previous = e.rt;
      if (e.region.index() >= region_count_) fail("event " + std::to_string(e.id.value) + " has invalid region");
      if (e.process.index() >= process_count_) fail("event " + std::to_string(e.id.value) + " has invalid process");
      if (writes(e.kind) != e.written.has_value())
        fail("event " + std::to_string(e.id.value) + " written value does not match its kind");
      if (!index_.emplace(e.id.value, i).second) fail("duplicate event id " + std::to_string(e.id.value));
      by_region_[e.region.index()].push_back(i);
      by_process_[e.process.index()].push_back(i);
    }
  }

  std::size_t region_count() const { return region_count_; }
  std::size_t process_count() const { return process_count_; }
  std::size_t event_count() const { return events_.size(); }
  const std::vector<Value>& initial_values() const { return initial_values_; }
  Value initial_value(RegionId r) const { return initial_values_.at(r.index()); }
  const std::vector<Event>& events() const { return events_; }
  const Event& event_at(std::size_t position) const { return events_.at(position); }

  /// Position of an event in rt order. Throws UnknownEvent.
  std::size_t position_of(EventId id) const {
    auto it = index_.find(id.value);
    if (it == index_.end()) throw Error(ErrorCode::UnknownEvent, "no event with id " + std::to_string(id.value));
    return it->second;
  }
  bool contains(EventId id) const { return index_.count(id.value) != 0; }

  // Positions of the events touching a region / issued by a process, in rt order.
  std::span<const std::size_t> events_on(RegionId r) const { return by_region_.at(r.index()); }
  std::span<const std::size_t> events_of(ProcessId p) const { return by_process_.at(p.index()); }

  /// Tick of the last event, or 0 for an empty computation.
  Time last_tick() const { return events_.empty() ? 0 : events_.back().rt; }

  bool has_kind(EventKind kind) const {
    return std::any_of(events_.begin(), events_.end(), [kind](const Event& e) { return e.kind == kind; });
  }
  bool all_kind(EventKind kind) const {
    return std::all_of(events_.begin(), events_.end(), [kind](const Event& e) { return e.kind == kind; });
  }

  friend bool operator==(const Computation& a, const Computation& b) {
    return a.region_count_ == b.region_count_ && a.process_count_ == b.process_count_ &&
           a.initial_values_ == b.initial_values_ && a.events_ == b.events_;
  }

 private:
  [[noreturn]] static void fail(const std::string& what) { throw Error(ErrorCode::InvalidComputation, what); }

  std::size_t region_count_;
  std::size_t process_count_;
  std::vector<Value> initial_values_;
  std::vector<Event> events_;
  std::unordered_map<std::uint32_t, std::size_t> index_;
  std::vector<std::vector<std::size_t>> by_region_;
  std::vector<std::vector<std::size_t>> by_process_;
};

struct ChangePoint {
  Time at = 0;
  Value value = 0;
  friend bool operator==(const ChangePoint&, const ChangePoint&) = default;
};

/// Piecewise-constant region contents over time, stored as change points.
/// Each region's list starts with (0, initial value).
class GroundTruth {
 public:
  explicit GroundTruth(std::vector<std::vector<ChangePoint>> regions) : regions_(std::move(regions)) {}

  std::size_t region_count() const { return regions_.size(); }
  const std::vector<ChangePoint>& change_points(RegionId r) const { return regions_.at(r.index()); }

  // Value after every event with rt <= t has applied.
  Value value_at(RegionId r, Time t) const {
    const auto& points = regions_.at(r.index());
    auto it = std::upper_bound(points.begin(), points.end(), t,
                               [](Time lhs, const ChangePoint& cp) { return lhs < cp.at; });
    return std::prev(it)->value;
  }

  /// Every tick at which some region changes, plus 0; sorted, unique.
  std::vector<Time> change_times() const {
    std::vector<Time> times{0};
    for (const auto& points : regions_)
      for (const auto& cp : points) times.push_back(cp.at);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
  }

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;

 private:
  std::vector<std::vector<ChangePoint>> regions_;
};

struct RegionCopy {
  Value v = 0;
  Time t = 0;
  friend bool operator==(const RegionCopy&, const RegionCopy&) = default;
};

/// One (value, copy time) pair per region.
class Snapshot {
 public:
  Snapshot() = default;
  explicit Snapshot(std::vector<RegionCopy> copies) : copies_(std::move(copies)) {}

  std::size_t region_count() const { return copies_.size(); }
  const RegionCopy& operator[](RegionId r) const { return copies_.at(r.index()); }
  RegionCopy& operator[](RegionId r) { return copies_.at(r.index()); }
  const std::vector<RegionCopy>& copies() const { return copies_; }

  Time earliest_copy() const {
    Time t = copies_.empty() ? 0 : copies_.front().t;
    for (const auto& c : copies_) t = std::min(t, c.t);
    return t;
  }
  Time latest_copy() const {
    Time t = 0;
    for (const auto& c : copies_) t = std::max(t, c.t);
    return t;
  }

  friend bool operator==(const Snapshot&, const Snapshot&) = default;

 private:
  std::vector<RegionCopy> copies_;
};

/// A set of events, kept sorted by id.
struct Cut {
  std::vector<EventId> events;

  Cut() = default;
  explicit Cut(std::vector<EventId> ids) : events(std::move(ids)) {
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
  }

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
  bool contains(EventId id) const { return std::binary_search(events.begin(), events.end(), id); }

  bool subset_of(const Cut& other) const {
    return std::includes(other.events.begin(), other.events.end(), events.begin(), events.end());
  }

  friend bool operator==(const Cut&, const Cut&) = default;
};

inline void require_complete(const Computation& comp, const Snapshot& s) {
  if (s.region_count() != comp.region_count())
    throw Error(ErrorCode::LengthMismatch, "snapshot covers " + std::to_string(s.region_count()) +
                                               " regions, computation has " + std::to_string(comp.region_count()));
}

/// Materializes the ground truth by replaying the writes. Throws
/// InvalidComputation when an event violates its declared kind.
inline GroundTruth replay(const Computation& comp) {
  std::vector<std::vector<ChangePoint>> regions(comp.region_count());
  std::vector<std::unordered_set<Value>> seen(comp.region_count());
  for (std::size_t r = 0; r < comp.region_count(); ++r) {
    regions[r].push_back({0, comp.initial_values()[r]});
    seen[r].insert(comp.initial_values()[r]);
  }
  for (const Event& e : comp.events()) {
    if (!writes(e.kind)) continue;
    const std::size_t r = e.region.index();
    const Value next = *e.written;
    if (next == regions[r].back().value)
      throw Error(ErrorCode::InvalidComputation,
                  "event " + std::to_string(e.id.value) + " writes the region's current value");
    if (e.kind == EventKind::UniquelyModifying && seen[r].count(next) != 0)
      throw Error(ErrorCode::InvalidComputation,
                  "event " + std::to_string(e.id.value) + " repeats a value previously stored in its region");
    seen[r].insert(next);
    regions[r].push_back({e.rt, next});
  }
  return GroundTruth(std::move(regions));
}

inline Value value_at(const GroundTruth& gt, RegionId r, Time t) { return gt.value_at(r, t); }

/// Position (in rt order) of the latest event on r with rt <= t.
inline std::optional<std::size_t> most_recent_position(const Computation& comp, RegionId r, Time t) {
  auto on_region = comp.events_on(r);
  auto it = std::upper_bound(on_region.begin(), on_region.end(), t,
                             [&](Time lhs, std::size_t pos) { return lhs < comp.event_at(pos).rt; });
  if (it == on_region.begin()) return std::nullopt;
  return *std::prev(it);
}

inline std::optional<Event> most_recent_event(const Computation& comp, RegionId r, Time t) {
  if (auto pos = most_recent_position(comp, r, t)) return comp.event_at(*pos);
  return std::nullopt;
}

/// Events on each region up to and including that region's copy time.
inline Cut induced_cut(const Computation& comp, const Snapshot& s) {
  require_complete(comp, s);
  std::vector<EventId> ids;
  for (std::size_t r = 0; r < comp.region_count(); ++r) {
    const Time copied = s[RegionId(static_cast<std::uint32_t>(r))].t;
    for (std::size_t pos : comp.events_on(RegionId(static_cast<std::uint32_t>(r)))) {
      if (comp.event_at(pos).rt > copied) break;
      ids.push_back(comp.event_at(pos).id);
    }
  }
  return Cut(std::move(ids));
}

inline RegionId region(std::size_t index) { return RegionId(static_cast<std::uint32_t>(index)); }
inline ProcessId process(std::size_t index) { return ProcessId(static_cast<std::uint32_t>(index)); }

}  // namespace snaplab

template <class Tag>
struct std::hash<snaplab::Id<Tag>> {
  std::size_t operator()(const snaplab::Id<Tag>& id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
