#pragma once

// Brute-force reference implementations for the tests. None of these share
// code paths with the library beyond the Computation container itself.

#include <cstdint>
#include <optional>
#include <vector>

#include "snaplab/model.hpp"

namespace snaplab::oracle {

/// reach[e][f] == true iff e happened before f (positions in rt order),
/// built from the adjacency rules directly and closed with Floyd-Warshall.
inline std::vector<std::vector<bool>> happened_before_matrix(const Computation& comp) {
  const std::size_t k = comp.event_count();
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (std::size_t e = 0; e < k; ++e) {
    const Event& a = comp.event_at(e);
    bool process_next_found = false, region_next_found = false;
    for (std::size_t f = e + 1; f < k; ++f) {
      const Event& b = comp.event_at(f);
      if (!process_next_found && b.process == a.process) {
        reach[e][f] = true;
        process_next_found = true;
      }
      if (!region_next_found && b.region == a.region) {
        reach[e][f] = true;
        region_next_found = true;
      }
    }
  }
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      if (reach[i][m])
        for (std::size_t j = 0; j < k; ++j)
          if (reach[m][j]) reach[i][j] = true;
  return reach;
}

/// Every subset (as a bitmask over rt positions) that is closed under the
/// oracle relation and is a per-region prefix.
inline std::vector<std::uint64_t> consistent_cut_masks(const Computation& comp) {
  const std::size_t k = comp.event_count();
  const auto reach = happened_before_matrix(comp);
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    bool ok = true;
    for (std::size_t f = 0; f < k && ok; ++f) {
      if (!(mask >> f & 1)) continue;
      for (std::size_t e = 0; e < k && ok; ++e)
        if (reach[e][f] && !(mask >> e & 1)) ok = false;
    }
    for (std::size_t r = 0; r < comp.region_count() && ok; ++r) {
      bool gap = false;
      for (std::size_t pos : comp.events_on(region(r))) {
        const bool in = mask >> pos & 1;
        if (in && gap) ok = false;
        if (!in) gap = true;
      }
    }
    if (ok) out.push_back(mask);
  }
  return out;
}

/// Region contents at every tick 0..last, by stepping through the events.
inline std::vector<std::vector<Value>> dense_states(const Computation& comp, Time last) {
  std::vector<std::vector<Value>> states;
  std::vector<Value> state = comp.initial_values();
  std::size_t next = 0;
  for (Time t = 0; t <= last; ++t) {
    while (next < comp.event_count() && comp.event_at(next).rt == t) {
      const Event& e = comp.event_at(next++);
      if (e.written) state[e.region.index()] = *e.written;
    }
    states.push_back(state);
  }
  return states;
}

/// Smallest tick in [0, last] at which the snapshot values all coexisted.
inline std::optional<Time> quasi_witness(const Computation& comp, const Snapshot& s, Time last) {
  const auto states = dense_states(comp, last);
  for (Time t = 0; t <= last; ++t) {
    bool all = true;
    for (std::size_t r = 0; r < comp.region_count(); ++r) all = all && states[t][r] == s[region(r)].v;
    if (all) return t;
  }
  return std::nullopt;
}

/// Consistency of an arbitrary event set by the oracle relation.
inline bool closed(const Computation& comp, const std::vector<bool>& member) {
  const auto reach = happened_before_matrix(comp);
  for (std::size_t f = 0; f < comp.event_count(); ++f)
    for (std::size_t e = 0; e < comp.event_count(); ++e)
      if (member[f] && reach[e][f] && !member[e]) return false;
  return true;
}

}  // namespace snaplab::oracle
