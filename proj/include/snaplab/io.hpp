#pragma once

#include <json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "snaplab/acquisition.hpp"
#include "snaplab/campaign.hpp"
#include "snaplab/evaluator.hpp"
#include "snaplab/model.hpp"
#include "snaplab/vclock.hpp"
#include "snaplab/workload.hpp"

// Every file is newline-delimited JSON: a header record carrying
// "format_version", then one record per line.

namespace snaplab::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace detail {

[[noreturn]] inline void format_error(const std::string& what) { throw Error(ErrorCode::Format, what); }

template <class T>
T field(const Json& record, const char* name) {
  auto it = record.find(name);
  if (it == record.end()) format_error(std::string("missing field \"") + name + "\"");
  try {
    return it->template get<T>();
  } catch (const nlohmann::json::exception&) {
    format_error(std::string("field \"") + name + "\" has the wrong type");
  }
}

inline std::vector<Json> read_records(std::istream& in) {
  std::vector<Json> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      records.push_back(Json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      format_error("line " + std::to_string(number) + ": " + e.what());
    }
    if (!records.back().is_object()) format_error("line " + std::to_string(number) + " is not an object");
  }
  if (records.empty()) format_error("no header record");
  const Json& header = records.front();
  if (field<int>(header, "format_version") != kFormatVersion)
    format_error("unsupported format_version " + header["format_version"].dump());
  return records;
}

}  // namespace detail

// ---- trace files ----------------------------------------------------------

inline Json event_record(const Event& e) {
  Json j;
  j["id"] = e.id.value;
  j["p"] = e.process.value;
  j["r"] = e.region.value;
  j["rt"] = e.rt;
  j["kind"] = std::string(to_string(e.kind));
  j["written"] = e.written ? Json(*e.written) : Json(nullptr);
  return j;
}

inline void write_trace(std::ostream& out, const Computation& comp) {
  Json header;
  header["format_version"] = kFormatVersion;
  header["region_count"] = comp.region_count();
  header["process_count"] = comp.process_count();
  header["initial_values"] = comp.initial_values();
  out << header.dump() << '\n';
  for (const Event& e : comp.events()) out << event_record(e).dump() << '\n';
}

inline Computation read_trace(std::istream& in) {
  using detail::field;
  const auto records = detail::read_records(in);
  const Json& header = records.front();
  std::vector<Event> events;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const Json& rec = records[i];
    Event e;
    e.id = EventId(field<std::uint32_t>(rec, "id"));
    e.process = ProcessId(field<std::uint32_t>(rec, "p"));
    e.region = RegionId(field<std::uint32_t>(rec, "r"));
    e.rt = field<Time>(rec, "rt");
    auto kind = parse_event_kind(field<std::string>(rec, "kind"));
    if (!kind) detail::format_error("unknown event kind " + rec["kind"].dump());
    e.kind = *kind;
    auto written = rec.find("written");
    if (written == rec.end()) detail::format_error("missing field \"written\"");
    if (!written->is_null()) e.written = field<Value>(rec, "written");
    events.push_back(e);
  }
  return Computation(field<std::size_t>(header, "region_count"), field<std::size_t>(header, "process_count"),
                     field<std::vector<Value>>(header, "initial_values"), std::move(events));
}

// ---- snapshot files -------------------------------------------------------

inline void write_snapshot(std::ostream& out, const Snapshot& s) {
  Json header;
  header["format_version"] = kFormatVersion;
  header["region_count"] = s.region_count();
  out << header.dump() << '\n';
  for (std::size_t r = 0; r < s.region_count(); ++r) {
    Json rec;
    rec["r"] = r;
    rec["v"] = s[region(r)].v;
    rec["t"] = s[region(r)].t;
    out << rec.dump() << '\n';
  }
}

inline Snapshot read_snapshot(std::istream& in) {
  using detail::field;
  const auto records = detail::read_records(in);
  const auto n = field<std::size_t>(records.front(), "region_count");
  if (records.size() != n + 1) detail::format_error("expected one record per region");
  std::vector<RegionCopy> copies(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto r = field<std::size_t>(records[i], "r");
    if (r >= n || seen[r]) detail::format_error("region " + std::to_string(r) + " missing or repeated");
    seen[r] = true;
    copies[r] = {field<Value>(records[i], "v"), field<Time>(records[i], "t")};
  }
  return Snapshot(std::move(copies));
}

// ---- verdicts and clock dumps --------------------------------------------

inline Json clock_json(const VectorClock& c) { return Json(c.counters()); }

inline Json verdict_record(const Verdict& v) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["correct"] = v.correct;
  j["instantaneous"] = v.instantaneous;
  j["quasi_instantaneous"] = v.quasi_instantaneous;
  j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  j["causal"] = v.causal;
  j["restrictive_integrity"] = v.restrictive_integrity;
  j["permissive_integrity"] = v.permissive_integrity;
  j["tau"] = v.tau;
  j["regions_before_tau"] = v.regions_before_tau;
  return j;
}

/// The verdict plus the clock-based and realtime-based measurements.
inline Json evaluation_record(const Computation& comp, const Snapshot& s, const Verdict& v) {
  Json j = verdict_record(v);
  const auto clocks = clock_snapshot(comp, s);
  Json dump;
  Json per_region = Json::array();
  for (const auto& c : clocks) per_region.push_back(clock_json(c));
  dump["region_clocks"] = per_region;
  dump["global_time"] = clock_json(global_time(clocks));
  dump["diagonal"] = clock_json(diagonal(clocks));
  dump["consistent"] = vc_consistent(clocks);
  j["vector_clocks"] = dump;
  Json rt;
  rt["current_time"] = current_time(comp, s.latest_copy()).ticks;
  rt["snapshot_time"] = snapshot_timestamps(comp, s).ticks;
  rt["consistent"] = rt_consistent(comp, s);
  j["realtime"] = rt;
  return j;
}

// ---- campaign reports ----------------------------------------------------

inline Json plan_json(const AcquisitionPlan& plan) {
  auto ids = [](const std::vector<RegionId>& regions) {
    Json a = Json::array();
    for (RegionId r : regions) a.push_back(r.value);
    return a;
  };
  Json j;
  j["strategy"] = std::string(strategy_name(plan));
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, FrozenPlan>) {
          j["at"] = p.at;
        } else {
          j["start"] = p.start;
          j["delay"] = p.delay;
          if constexpr (std::is_same_v<P, PriorityPlan>)
            j["priority"] = ids(p.priority);
          else
            j["order"] = ids(p.order);
        }
      },
      plan);
  return j;
}

inline Json workload_json(const WorkloadConfig& w) {
  Json j;
  j["regions"] = w.region_count;
  j["processes"] = w.process_count;
  j["events"] = w.event_count;
  j["regime"] = std::string(to_string(w.regime));
  j["read_fraction"] = w.read_fraction;
  j["seed"] = w.seed;
  if (auto* list = std::get_if<LinkedListWorkload>(&w.workload)) {
    j["workload"] = "linked-list";
    j["node_count"] = list->node_count;
  } else {
    j["workload"] = "random";
  }
  if (!w.initial_values.empty()) j["initial_values"] = w.initial_values;
  return j;
}

inline Json snapshot_json(const Snapshot& s) {
  Json a = Json::array();
  for (const auto& c : s.copies()) a.push_back(Json{{"v", c.v}, {"t", c.t}});
  return a;
}

/// One header record, one record per implication, per non-implication, the
/// realtime and clock tallies, the violation rates, then one record per
/// counterexample bundle.
inline void write_report(std::ostream& out, const CampaignReport& report) {
  Json header;
  header["format_version"] = kFormatVersion;
  header["record"] = "campaign";
  header["seed"] = report.config.seed;
  header["cases"] = report.cases;
  Json regimes = Json::array();
  for (auto r : report.config.regimes) regimes.push_back(std::string(to_string(r)));
  header["regimes"] = regimes;
  Json by_strategy;
  for (std::size_t i = 0; i < report.cases_by_strategy.size(); ++i)
    by_strategy[std::string(to_string(static_cast<Strategy>(i)))] = report.cases_by_strategy[i];
  header["cases_by_strategy"] = by_strategy;
  header["clean"] = report.clean();
  out << header.dump() << '\n';

  for (const auto& t : report.implications) {
    Json j;
    j["record"] = "implication";
    j["name"] = t.name;
    j["scope"] = t.scope;
    j["applicable"] = t.applicable;
    j["antecedent_held"] = t.antecedent_held;
    j["counterexamples"] = t.counterexamples;
    out << j.dump() << '\n';
  }
  for (const auto& w : report.non_implications) {
    Json j;
    j["record"] = "non_implication";
    j["name"] = w.name;
    j["campaign_cases"] = w.campaign_cases;
    j["first_case"] = w.first_case ? Json(*w.first_case) : Json(nullptr);
    j["fixtures"] = w.fixtures;
    j["witnessed"] = w.found();
    out << j.dump() << '\n';
  }
  {
    Json j;
    j["record"] = "vector_clock_agreement";
    j["disagreements"] = report.vc_disagreements;
    out << j.dump() << '\n';
  }
  {
    Json j;
    j["record"] = "realtime_check";
    j["rt_consistent"] = report.rt_consistent_cases;
    j["rt_consistent_not_quasi"] = report.rt_consistent_not_quasi;
    j["rt_inconsistent_but_quasi"] = report.rt_inconsistent_but_quasi;
    out << j.dump() << '\n';
  }
  {
    const auto& v = report.violations;
    Json j;
    j["record"] = "violation_rates";
    j["correct"] = report.rate(v.not_correct);
    j["instantaneous"] = report.rate(v.not_instantaneous);
    j["quasi_instantaneous"] = report.rate(v.not_quasi_instantaneous);
    j["causal"] = report.rate(v.not_causal);
    j["restrictive_integrity"] = report.rate(v.not_restrictive_integrity);
    j["permissive_integrity"] = report.rate(v.not_permissive_integrity);
    out << j.dump() << '\n';
  }
  for (const auto& b : report.counterexamples) {
    Json j;
    j["record"] = "counterexample";
    j["check"] = b.check;
    j["campaign_seed"] = b.campaign_seed;
    j["case"] = b.case_data.index;
    j["workload"] = workload_json(b.case_data.workload);
    j["plan"] = plan_json(b.case_data.plan);
    j["tau"] = b.case_data.tau;
    j["snapshot"] = snapshot_json(b.snapshot);
    j["verdict"] = verdict_record(b.verdict);
    out << j.dump() << '\n';
  }
}

// ---- files ---------------------------------------------------------------

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path + " for reading");
  return in;
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  out << contents;
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path);
}

inline Computation load_trace(const std::string& path) {
  auto in = open_input(path);
  return read_trace(in);
}

inline Snapshot load_snapshot(const std::string& path) {
  auto in = open_input(path);
  return read_snapshot(in);
}

inline std::string trace_text(const Computation& comp) {
  std::ostringstream out;
  write_trace(out, comp);
  return out.str();
}

inline std::string snapshot_text(const Snapshot& s) {
  std::ostringstream out;
  write_snapshot(out, s);
  return out.str();
}

}  // namespace snaplab::io
