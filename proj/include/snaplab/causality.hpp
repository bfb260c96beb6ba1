#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "snaplab/model.hpp"

namespace snaplab {

/// Happened-before over the events of one computation, materialized as a
/// transitively closed predecessor bitset per event (indexed by rt position).
class CausalOrder {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;

  CausalOrder(std::vector<EventId> ids, std::vector<Bits> predecessors)
      : ids_(std::move(ids)), predecessors_(std::move(predecessors)) {
    for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i].value, i);
  }

  std::size_t size() const { return ids_.size(); }
  EventId id_at(std::size_t position) const { return ids_.at(position); }

  std::size_t position_of(EventId id) const {
    auto it = index_.find(id.value);
    if (it == index_.end()) throw Error(ErrorCode::UnknownEvent, "no event with id " + std::to_string(id.value));
    return it->second;
  }

  const Bits& predecessors(std::size_t position) const { return predecessors_.at(position); }

  bool before(std::size_t e, std::size_t f) const { return predecessors_.at(f).test(e); }

 private:
  std::vector<EventId> ids_;
  std::vector<Bits> predecessors_;
  std::unordered_map<std::uint32_t, std::size_t> index_;
};

/// Closure of process adjacency and region adjacency. Both kinds of edges run
/// forward in rt order, so one pass in rt order closes the relation.
inline CausalOrder build_causal_order(const Computation& comp) {
  const std::size_t k = comp.event_count();
  std::vector<CausalOrder::Bits> preds(k, CausalOrder::Bits(k));
  std::vector<std::optional<std::size_t>> last_of_process(comp.process_count());
  std::vector<std::optional<std::size_t>> last_on_region(comp.region_count());
  std::vector<EventId> ids;
  ids.reserve(k);

  for (std::size_t f = 0; f < k; ++f) {
    const Event& ev = comp.event_at(f);
    ids.push_back(ev.id);
    for (auto direct : {last_of_process[ev.process.index()], last_on_region[ev.region.index()]}) {
      if (!direct) continue;
      preds[f] |= preds[*direct];
      preds[f].set(*direct);
    }
    last_of_process[ev.process.index()] = f;
    last_on_region[ev.region.index()] = f;
  }
  return CausalOrder(std::move(ids), std::move(preds));
}

inline bool happened_before(const CausalOrder& order, EventId e, EventId f) {
  return order.before(order.position_of(e), order.position_of(f));
}

inline bool concurrent(const CausalOrder& order, EventId e, EventId f) {
  if (e == f) throw Error(ErrorCode::SameEvent, "concurrency is undefined for an event and itself");
  return !happened_before(order, e, f) && !happened_before(order, f, e);
}

/// True iff c is closed under happened-before.
inline bool is_consistent_cut(const Computation& comp, const CausalOrder& order, const Cut& c) {
  CausalOrder::Bits members(comp.event_count());
  for (EventId id : c.events) members.set(comp.position_of(id));
  for (std::size_t f = members.find_first(); f != CausalOrder::Bits::npos; f = members.find_next(f))
    if (!order.predecessors(f).is_subset_of(members)) return false;
  return true;
}

/// The consistent cuts of a computation and their covering relation
/// (cut a is covered by cut b when b adds exactly one event to a).
struct CutLattice {
  std::vector<Cut> cuts;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
};

inline constexpr std::size_t kDefaultEnumerationBound = 20;

namespace detail {

inline bool cut_order_less(const Cut& a, const Cut& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.events < b.events;
}

}  // namespace detail

/// Enumerates every consistent cut, sorted by cardinality and then by the
/// lexicographic order of the member ids. Throws TooLarge beyond `bound`
/// events; `bound` itself may not exceed 64.
inline CutLattice enumerate_cut_lattice(const Computation& comp, std::size_t bound = kDefaultEnumerationBound) {
  if (bound > 64) throw Error(ErrorCode::TooLarge, "enumeration bound is limited to 64 events");
  const std::size_t k = comp.event_count();
  if (k > bound)
    throw Error(ErrorCode::TooLarge,
                std::to_string(k) + " events exceed the enumeration bound of " + std::to_string(bound));

  const CausalOrder order = build_causal_order(comp);
  std::vector<std::uint64_t> pred_mask(k, 0);
  for (std::size_t f = 0; f < k; ++f)
    for (std::size_t e = 0; e < k; ++e)
      if (order.before(e, f)) pred_mask[f] |= std::uint64_t{1} << e;

  // Region adjacency is part of happened-before, so every closed set found
  // here is also a per-region prefix.
  std::vector<std::uint64_t> masks{0};
  std::unordered_set<std::uint64_t> seen{0};
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const std::uint64_t m = masks[i];
    for (std::size_t e = 0; e < k; ++e) {
      const std::uint64_t bit = std::uint64_t{1} << e;
      if ((m & bit) || (pred_mask[e] & ~m)) continue;
      if (seen.insert(m | bit).second) masks.push_back(m | bit);
    }
  }

  auto to_cut = [&](std::uint64_t m) {
    std::vector<EventId> ids;
    for (std::size_t e = 0; e < k; ++e)
      if (m & (std::uint64_t{1} << e)) ids.push_back(order.id_at(e));
    return Cut(std::move(ids));
  };

  std::vector<std::pair<Cut, std::uint64_t>> entries;
  entries.reserve(masks.size());
  for (std::uint64_t m : masks) entries.emplace_back(to_cut(m), m);
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return detail::cut_order_less(a.first, b.first); });

  CutLattice lattice;
  std::unordered_map<std::uint64_t, std::size_t> slot;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    slot.emplace(entries[i].second, i);
    lattice.cuts.push_back(entries[i].first);
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::uint64_t m = entries[i].second;
    for (std::size_t e = 0; e < k; ++e) {
      const std::uint64_t bit = std::uint64_t{1} << e;
      if (m & bit) continue;
      if (auto it = slot.find(m | bit); it != slot.end()) lattice.covers.emplace_back(i, it->second);
    }
  }
  std::sort(lattice.covers.begin(), lattice.covers.end());
  return lattice;
}

inline std::vector<Cut> enumerate_consistent_cuts(const Computation& comp,
                                                  std::size_t bound = kDefaultEnumerationBound) {
  return enumerate_cut_lattice(comp, bound).cuts;
}

inline std::string cut_label(const Cut& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.events.size(); ++i) {
    if (i) out += ",";
    out += "e" + std::to_string(c.events[i].value);
  }
  return out + "}";
}

/// Graphviz rendering of the lattice, one edge per covering pair.
inline std::string lattice_dot(const CutLattice& lattice) {
  std::ostringstream out;
  out << "digraph lattice {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < lattice.cuts.size(); ++i)
    out << "  c" << i << " [label=\"" << cut_label(lattice.cuts[i]) << "\"];\n";
  for (const auto& [from, to] : lattice.covers) out << "  c" << from << " -> c" << to << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace snaplab
