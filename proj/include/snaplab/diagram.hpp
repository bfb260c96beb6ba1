#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "snaplab/model.hpp"

namespace snaplab {

namespace detail {

inline std::string event_node(const Event& e) { return "e" + std::to_string(e.id.value); }
inline std::string rail_head(std::size_t r) { return "r" + std::to_string(r + 1); }
inline std::string cut_node(std::size_t r) { return "cut_r" + std::to_string(r + 1); }

}  // namespace detail

/// Space/time diagram in Graphviz dot. Each region is a horizontal rail of
/// its events in rt order; process arrows join consecutive events of a
/// process. A snapshot adds one marker per region after the last event with
/// rt <= s(r).t; a cut adds one after the last member event on the region.
/// Regions and processes are labelled 1-based (r1, p1, ...).
inline std::string diagram(const Computation& comp, const Snapshot* s = nullptr, const Cut* cut = nullptr) {
  std::ostringstream out;
  out << "digraph spacetime {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";

  for (const Event& e : comp.events())
    out << "  " << detail::event_node(e) << " [label=\"" << detail::event_node(e) << "\\np" << e.process.value + 1
        << " r" << e.region.value + 1 << " t=" << e.rt << "\"];\n";

  const bool with_markers = s != nullptr || cut != nullptr;
  for (std::size_t r = 0; r < comp.region_count(); ++r) {
    out << "  " << detail::rail_head(r) << " [shape=plaintext];\n";

    // Rail entries in order; the marker sits after `marker_after` events.
    std::vector<std::string> rail{detail::rail_head(r)};
    std::size_t marker_after = 0;
    const auto on_region = comp.events_on(region(r));
    for (std::size_t k = 0; k < on_region.size(); ++k) {
      const Event& e = comp.event_at(on_region[k]);
      rail.push_back(detail::event_node(e));
      if (s && e.rt <= (*s)[region(r)].t) marker_after = k + 1;
      if (cut && cut->contains(e.id)) marker_after = k + 1;
    }
    if (with_markers) {
      out << "  " << detail::cut_node(r) << " [shape=point, color=red];\n";
      rail.insert(rail.begin() + static_cast<std::ptrdiff_t>(marker_after + 1), detail::cut_node(r));
    }
    for (std::size_t k = 0; k + 1 < rail.size(); ++k)
      out << "  " << rail[k] << " -> " << rail[k + 1] << " [arrowhead=none, color=gray];\n";
  }

  for (std::size_t p = 0; p < comp.process_count(); ++p) {
    const auto issued = comp.events_of(process(p));
    for (std::size_t k = 0; k + 1 < issued.size(); ++k)
      out << "  " << detail::event_node(comp.event_at(issued[k])) << " -> "
          << detail::event_node(comp.event_at(issued[k + 1])) << " [color=blue, label=\"p" << p + 1
          << "\", constraint=false];\n";
  }

  if (with_markers)
    for (std::size_t r = 0; r + 1 < comp.region_count(); ++r)
      out << "  " << detail::cut_node(r) << " -> " << detail::cut_node(r + 1)
          << " [style=dashed, color=red, arrowhead=none, constraint=false];\n";

  out << "}\n";
  return out.str();
}

}  // namespace snaplab
