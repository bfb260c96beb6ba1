#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "snaplab/model.hpp"

namespace snaplab {

/// Counter vector attached to a memory region; index i holds region i's
/// local counter. The owning region is implied by where the clock is stored.
class VectorClock {
 public:
  using Counter = std::uint64_t;

  VectorClock() = default;
  explicit VectorClock(std::size_t regions) : counters_(regions, 0) {}
  VectorClock(std::initializer_list<Counter> counters) : counters_(counters) {}
  explicit VectorClock(std::vector<Counter> counters) : counters_(std::move(counters)) {}

  std::size_t size() const { return counters_.size(); }
  Counter operator[](std::size_t i) const { return counters_.at(i); }
  Counter& operator[](std::size_t i) { return counters_.at(i); }
  const std::vector<Counter>& counters() const { return counters_; }

  friend bool operator==(const VectorClock&, const VectorClock&) = default;

 private:
  std::vector<Counter> counters_;
};

namespace detail {

inline void require_same_length(const VectorClock& a, const VectorClock& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::LengthMismatch,
                "vector clocks of length " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
}

}  // namespace detail

/// Componentwise max of the region's clock and the clock the accessing
/// process saw last, then the owner's local counter ticks.
inline VectorClock vc_update(const VectorClock& region_clock, const VectorClock& process_last_seen, RegionId owner) {
  detail::require_same_length(region_clock, process_last_seen);
  if (owner.index() >= region_clock.size())
    throw Error(ErrorCode::LengthMismatch, "owner index outside the clock");
  VectorClock result(region_clock.size());
  for (std::size_t x = 0; x < region_clock.size(); ++x) result[x] = std::max(region_clock[x], process_last_seen[x]);
  ++result[owner.index()];
  return result;
}

/// Strict happened-before on clocks: all components <=, at least one <.
inline bool vc_less(const VectorClock& lhs, const VectorClock& rhs) {
  detail::require_same_length(lhs, rhs);
  bool strict = false;
  for (std::size_t x = 0; x < lhs.size(); ++x) {
    if (lhs[x] > rhs[x]) return false;
    strict = strict || lhs[x] < rhs[x];
  }
  return strict;
}

/// Supremum of the snapshot's region clocks.
inline VectorClock global_time(std::span<const VectorClock> clocks) {
  if (clocks.empty()) return VectorClock{};
  VectorClock sup = clocks.front();
  for (const auto& c : clocks.subspan(1)) {
    detail::require_same_length(sup, c);
    for (std::size_t x = 0; x < c.size(); ++x) sup[x] = std::max(sup[x], c[x]);
  }
  return sup;
}

inline VectorClock diagonal(std::span<const VectorClock> clocks) {
  VectorClock diag(clocks.size());
  for (std::size_t i = 0; i < clocks.size(); ++i) {
    if (clocks[i].size() != clocks.size())
      throw Error(ErrorCode::LengthMismatch, "expected one clock of length n per region");
    diag[i] = clocks[i][i];
  }
  return diag;
}

/// A snapshot's clocks are consistent iff the global time equals the vector
/// of each region's own counter.
inline bool vc_consistent(std::span<const VectorClock> clocks) { return global_time(clocks) == diagonal(clocks); }

/// Region clocks replayed over a computation under the update rule. Every
/// access, read or write, ticks the accessed region's clock. A process that
/// has not accessed anything yet carries the zero clock.
class ClockedTrace {
 public:
  explicit ClockedTrace(const Computation& comp) {
    const std::size_t n = comp.region_count();
    std::vector<VectorClock> region_clock(n, VectorClock(n));
    last_seen_.assign(comp.process_count(), VectorClock(n));
    after_.reserve(comp.event_count());
    for (const Event& e : comp.events()) {
      VectorClock& clock = region_clock[e.region.index()];
      clock = vc_update(clock, last_seen_[e.process.index()], e.region);
      last_seen_[e.process.index()] = clock;
      after_.push_back(clock);
    }
  }

  // Clock of the accessed region right after the event at `position`.
  const VectorClock& after(std::size_t position) const { return after_.at(position); }
  const VectorClock& last_seen(ProcessId p) const { return last_seen_.at(p.index()); }
  std::size_t size() const { return after_.size(); }

 private:
  std::vector<VectorClock> after_;
  std::vector<VectorClock> last_seen_;
};

/// Per region, its clock as of the most recent event at the copy time (the
/// zero clock when nothing happened on the region yet).
inline std::vector<VectorClock> clock_snapshot(const Computation& comp, const ClockedTrace& trace,
                                               const Snapshot& s) {
  require_complete(comp, s);
  std::vector<VectorClock> clocks;
  clocks.reserve(comp.region_count());
  for (std::size_t r = 0; r < comp.region_count(); ++r) {
    auto pos = most_recent_position(comp, region(r), s[region(r)].t);
    clocks.push_back(pos ? trace.after(*pos) : VectorClock(comp.region_count()));
  }
  return clocks;
}

inline std::vector<VectorClock> clock_snapshot(const Computation& comp, const Snapshot& s) {
  return clock_snapshot(comp, ClockedTrace(comp), s);
}

/// Per region, the realtime stamp of its most recent event (0 if none).
struct TimestampVector {
  std::vector<Time> ticks;
  friend bool operator==(const TimestampVector&, const TimestampVector&) = default;
};

/// The "current time" vector at tick t.
inline TimestampVector current_time(const Computation& comp, Time t) {
  TimestampVector out;
  for (std::size_t r = 0; r < comp.region_count(); ++r) {
    auto pos = most_recent_position(comp, region(r), t);
    out.ticks.push_back(pos ? comp.event_at(*pos).rt : 0);
  }
  return out;
}

/// Timestamps the acquirer tracks: per region, the stamp current when that
/// region was copied.
inline TimestampVector snapshot_timestamps(const Computation& comp, const Snapshot& s) {
  require_complete(comp, s);
  TimestampVector out;
  for (std::size_t r = 0; r < comp.region_count(); ++r) {
    auto pos = most_recent_position(comp, region(r), s[region(r)].t);
    out.ticks.push_back(pos ? comp.event_at(*pos).rt : 0);
  }
  return out;
}

inline bool rt_consistent(const TimestampVector& current, const TimestampVector& snapshot_ts) {
  if (current.ticks.size() != snapshot_ts.ticks.size())
    throw Error(ErrorCode::LengthMismatch, "timestamp vectors differ in length");
  return current == snapshot_ts;
}

/// Realtime check evaluated when the last region has been copied.
inline bool rt_consistent(const Computation& comp, const Snapshot& s) {
  return rt_consistent(current_time(comp, s.latest_copy()), snapshot_timestamps(comp, s));
}

}  // namespace snaplab
