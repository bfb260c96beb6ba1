#pragma once

#include <string>
#include <vector>

#include "snaplab/model.hpp"

// Small hand-built computations and snapshots that sit on the boundaries
// between the quality criteria.

namespace snaplab::fixtures {

struct Fixture {
  std::string name;
  std::string shows;
  Computation computation;
  Snapshot snapshot;
  Time tau = 0;
};

inline Event write_event(std::uint32_t id, std::size_t p, std::size_t r, Time rt, Value v,
                         EventKind kind = EventKind::UniquelyModifying) {
  return Event{EventId(id), process(p), region(r), rt, kind, v};
}

inline Event read_event(std::uint32_t id, std::size_t p, std::size_t r, Time rt) {
  return Event{EventId(id), process(p), region(r), rt, EventKind::NonModifying, std::nullopt};
}

/// Two regions, two processes. p1 writes 1 to r1 (e1, tick 1) and later 2 to
/// r2 (e3, tick 3); p2 writes 1 to r2 in between (e2, tick 2). Regions and
/// processes are 0-based here: r1 is region 0, p1 is process 0.
inline Computation canonical_computation() {
  return Computation(2, 2, {0, 0},
                     {write_event(1, 0, 0, 1, 1), write_event(2, 1, 1, 2, 1), write_event(3, 0, 1, 3, 2)});
}

/// r1 copied before e1, r2 after e3: the cut {e2, e3} misses e1, the cause of e3.
inline Fixture causally_inconsistent() {
  return {"causally_inconsistent", "effect e3 captured without its cause e1", canonical_computation(),
          Snapshot({{0, 0}, {2, 3}}), 0};
}

/// Independent writes e1 on r1 and e2 on r2. r1 is copied before e1, r2
/// after e2, so the copied values never coexisted although every cut of this
/// computation is consistent.
inline Fixture causal_not_quasi() {
  Computation comp(2, 2, {0, 0},
                   {write_event(1, 0, 0, 1, 1, EventKind::Modifying), write_event(2, 1, 1, 2, 1, EventKind::Modifying)});
  return {"causal_not_quasi", "causally consistent yet the copied values never coexisted", std::move(comp),
          Snapshot({{0, 0}, {1, 3}}), 0};
}

/// r1 changes at tick 1, after tau = 0, and is copied at tick 2; r2 is
/// copied unchanged at tick 3. The values coexist from tick 1 on.
inline Fixture quasi_not_permissive() {
  Computation comp(2, 1, {0, 0}, {write_event(1, 0, 0, 1, 1)});
  return {"quasi_not_permissive", "values coexisted at tick 1 but r1 changed after tau", std::move(comp),
          Snapshot({{1, 2}, {0, 3}}), 0};
}

/// p1 reads r1 (e1) and then writes r2 (e2). Copying r1 before the read and
/// r2 after the write leaves out e1 although e1 -> e2; the values coexist.
inline Fixture quasi_not_causal_read() {
  Computation comp(2, 1, {0, 0}, {read_event(1, 0, 0, 1), write_event(2, 0, 1, 2, 1, EventKind::Modifying)});
  return {"quasi_not_causal_read", "the causing event is a read, invisible in the values", std::move(comp),
          Snapshot({{0, 0}, {1, 3}}), 0};
}

/// p1 writes r1 then r2; p2 reverts r1. With r1 copied first and r2 last the
/// values coexist after the revert, but e1 -> e2 and e1 is missing.
inline Fixture quasi_not_causal_revert() {
  Computation comp(2, 2, {0, 0},
                   {write_event(1, 0, 0, 1, 1, EventKind::Modifying), write_event(2, 0, 1, 2, 1, EventKind::Modifying),
                    write_event(3, 1, 0, 3, 0, EventKind::Modifying)});
  return {"quasi_not_causal_revert", "a reverted write hides the missing cause", std::move(comp),
          Snapshot({{0, 0}, {1, 4}}), 0};
}

/// r1 changes after tau and is changed back before it is copied.
inline Fixture reverted_before_copy() {
  Computation comp(1, 1, {0},
                   {write_event(1, 0, 0, 1, 1, EventKind::Modifying), write_event(2, 0, 0, 2, 0, EventKind::Modifying)});
  return {"reverted_before_copy", "restrictive integrity rejects, permissive integrity accepts", std::move(comp),
          Snapshot({{0, 3}}), 0};
}

inline std::vector<Fixture> all() {
  return {causally_inconsistent(), causal_not_quasi(),      quasi_not_permissive(),
          quasi_not_causal_read(), quasi_not_causal_revert(), reverted_before_copy()};
}

}  // namespace snaplab::fixtures
