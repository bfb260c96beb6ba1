#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "snaplab/model.hpp"

namespace snaplab {

enum class KindRegime { AllUniquelyModifying, AllModifying, MixedWithReads };

constexpr std::string_view to_string(KindRegime regime) {
  switch (regime) {
    case KindRegime::AllUniquelyModifying: return "unique";
    case KindRegime::AllModifying: return "modifying";
    case KindRegime::MixedWithReads: return "mixed";
  }
  return "?";
}

inline std::optional<KindRegime> parse_regime(std::string_view text) {
  if (text == "unique") return KindRegime::AllUniquelyModifying;
  if (text == "modifying") return KindRegime::AllModifying;
  if (text == "mixed") return KindRegime::MixedWithReads;
  return std::nullopt;
}

struct RandomWorkload {
  friend bool operator==(const RandomWorkload&, const RandomWorkload&) = default;
};

struct LinkedListWorkload {
  std::size_t node_count = 0;
  friend bool operator==(const LinkedListWorkload&, const LinkedListWorkload&) = default;
};

using WorkloadShape = std::variant<RandomWorkload, LinkedListWorkload>;

struct WorkloadConfig {
  std::size_t region_count = 1;
  std::size_t process_count = 1;
  std::size_t event_count = 0;
  KindRegime regime = KindRegime::AllUniquelyModifying;
  double read_fraction = 0.0;  // only used by MixedWithReads
  std::uint64_t seed = 0;
  WorkloadShape workload = RandomWorkload{};
  std::vector<Value> initial_values;  // empty means 0 for every region

  friend bool operator==(const WorkloadConfig&, const WorkloadConfig&) = default;
};

// Platform-independent draws on top of mt19937_64 (whose output sequence is
// fixed by the standard, unlike the std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t bound) { return bound <= 1 ? 0 : static_cast<std::size_t>(engine_() % bound); }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + engine_() % (hi - lo + 1); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Doubly linked list whose nodes are the memory regions. A process may
/// detach one node at a time and must relink it before detaching another;
/// other processes never touch a detached node. Every operation returns
/// the regions it touches, in access order.
class LinkedListModel {
 public:
  LinkedListModel(std::size_t nodes, std::size_t processes) : held_(processes) {
    for (std::size_t i = 0; i < nodes; ++i) list_.push_back(region(i));
  }

  const std::vector<RegionId>& linked() const { return list_; }
  std::optional<RegionId> held_by(ProcessId p) const { return held_.at(p.index()); }

  bool is_linked(RegionId node) const { return std::find(list_.begin(), list_.end(), node) != list_.end(); }

  std::vector<RegionId> access(ProcessId p, RegionId node) const {
    require_reachable(p, node);
    return {node};
  }

  // Neighbours plus the node itself.
  std::size_t unlink_cost(std::size_t position) const {
    return 1 + (position > 0 ? 1 : 0) + (position + 1 < list_.size() ? 1 : 0);
  }
  std::size_t relink_cost(std::size_t position) const {
    return 1 + (position > 0 ? 1 : 0) + (position < list_.size() ? 1 : 0);
  }

  std::vector<RegionId> unlink(ProcessId p, std::size_t position) {
    if (held_.at(p.index())) throw std::logic_error("process already holds a detached node");
    if (position >= list_.size()) throw std::logic_error("unlink position outside the list");
    std::vector<RegionId> touched;
    if (position > 0) touched.push_back(list_[position - 1]);
    touched.push_back(list_[position]);
    if (position + 1 < list_.size()) touched.push_back(list_[position + 1]);
    held_[p.index()] = list_[position];
    list_.erase(list_.begin() + static_cast<std::ptrdiff_t>(position));
    return touched;
  }

  std::vector<RegionId> relink(ProcessId p, std::size_t position) {
    auto node = held_.at(p.index());
    if (!node) throw std::logic_error("process holds no detached node");
    if (position > list_.size()) throw std::logic_error("relink position outside the list");
    std::vector<RegionId> touched;
    if (position > 0) touched.push_back(list_[position - 1]);
    touched.push_back(*node);
    if (position < list_.size()) touched.push_back(list_[position]);
    list_.insert(list_.begin() + static_cast<std::ptrdiff_t>(position), *node);
    held_[p.index()].reset();
    return touched;
  }

 private:
  void require_reachable(ProcessId p, RegionId node) const {
    if (held_.at(p.index()) == node) return;
    if (!is_linked(node)) throw std::logic_error("access to a node detached by another process");
  }

  std::vector<RegionId> list_;
  std::vector<std::optional<RegionId>> held_;
};

namespace detail {

inline void validate(const WorkloadConfig& config) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (config.region_count == 0) fail("region_count must be at least 1");
  if (config.process_count == 0) fail("process_count must be at least 1");
  if (!(config.read_fraction >= 0.0 && config.read_fraction <= 1.0)) fail("read_fraction must lie in [0,1]");
  if (!config.initial_values.empty() && config.initial_values.size() != config.region_count)
    fail("initial_values must be empty or list one value per region");
  if (auto* list = std::get_if<LinkedListWorkload>(&config.workload); list && list->node_count != config.region_count)
    fail("linked-list workload needs one region per list node");
}

// Produces the written value (or none) for the next access under a regime.
class ValueSource {
 public:
  ValueSource(const WorkloadConfig& config, const std::vector<Value>& initial)
      : regime_(config.regime), read_fraction_(config.read_fraction), current_(initial), high_(initial) {}

  bool draw_read(Rng& rng) const {
    return regime_ == KindRegime::MixedWithReads && rng.chance(read_fraction_);
  }

  Event write(Rng& rng, RegionId r) {
    Event e;
    e.region = r;
    Value& cur = current_[r.index()];
    if (regime_ == KindRegime::AllUniquelyModifying) {
      e.kind = EventKind::UniquelyModifying;
      cur = ++high_[r.index()];
    } else {
      // Small domain so that overwrites can revert earlier values.
      e.kind = EventKind::Modifying;
      std::vector<Value> options;
      for (Value v = 0; v < 4; ++v)
        if (v != cur) options.push_back(v);
      cur = options[rng.below(options.size())];
    }
    e.written = cur;
    return e;
  }

  static Event read(RegionId r) {
    Event e;
    e.region = r;
    e.kind = EventKind::NonModifying;
    return e;
  }

 private:
  KindRegime regime_;
  double read_fraction_;
  std::vector<Value> current_;
  std::vector<Value> high_;
};

inline void generate_random(const WorkloadConfig& config, Rng& rng, ValueSource& values, std::vector<Event>& out) {
  for (std::size_t i = 0; i < config.event_count; ++i) {
    const ProcessId p = process(rng.below(config.process_count));
    const RegionId r = region(rng.below(config.region_count));
    Event e = values.draw_read(rng) ? ValueSource::read(r) : values.write(rng, r);
    e.process = p;
    out.push_back(e);
  }
}

inline void generate_linked_list(const WorkloadConfig& config, Rng& rng, ValueSource& values,
                                 std::vector<Event>& out) {
  LinkedListModel list(config.region_count, config.process_count);
  enum class Op { Read, Write, Unlink, Relink };

  while (out.size() < config.event_count) {
    const std::size_t budget = config.event_count - out.size();
    const ProcessId p = process(rng.below(config.process_count));
    const auto held = list.held_by(p);

    std::vector<RegionId> reachable = list.linked();
    if (held) reachable.push_back(*held);
    if (reachable.empty()) continue;  // every node is detached by someone else

    Op op = Op::Write;
    if (values.draw_read(rng)) {
      op = Op::Read;
    } else {
      std::vector<Op> options{Op::Write};
      if (!held && !list.linked().empty()) options.push_back(Op::Unlink);
      if (held) options.push_back(Op::Relink);
      op = options[rng.below(options.size())];
    }

    std::vector<RegionId> touched;
    switch (op) {
      case Op::Read:
      case Op::Write:
        touched = list.access(p, reachable[rng.below(reachable.size())]);
        break;
      case Op::Unlink: {
        const std::size_t pos = rng.below(list.linked().size());
        if (list.unlink_cost(pos) > budget) continue;
        touched = list.unlink(p, pos);
        break;
      }
      case Op::Relink: {
        const std::size_t pos = rng.below(list.linked().size() + 1);
        if (list.relink_cost(pos) > budget) continue;
        touched = list.relink(p, pos);
        break;
      }
    }
    for (RegionId r : touched) {
      Event e = op == Op::Read ? ValueSource::read(r) : values.write(rng, r);
      e.process = p;
      out.push_back(e);
    }
  }
}

}  // namespace detail

/// Builds a computation from a seeded configuration. One global tick per
/// event, starting at tick 1; event ids are 1-based in tick order.
inline Computation generate(const WorkloadConfig& config) {
  detail::validate(config);
  const std::vector<Value> initial =
      config.initial_values.empty() ? std::vector<Value>(config.region_count, 0) : config.initial_values;

  Rng rng(config.seed);
  detail::ValueSource values(config, initial);
  std::vector<Event> events;
  events.reserve(config.event_count);
  if (std::holds_alternative<RandomWorkload>(config.workload))
    detail::generate_random(config, rng, values, events);
  else
    detail::generate_linked_list(config, rng, values, events);

  for (std::size_t i = 0; i < events.size(); ++i) {
    events[i].id = EventId(static_cast<std::uint32_t>(i + 1));
    events[i].rt = i + 1;
  }
  return Computation(config.region_count, config.process_count, initial, std::move(events));
}

}  // namespace snaplab
