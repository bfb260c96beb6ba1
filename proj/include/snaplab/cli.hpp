#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "snaplab/acquisition.hpp"
#include "snaplab/campaign.hpp"
#include "snaplab/causality.hpp"
#include "snaplab/diagram.hpp"
#include "snaplab/evaluator.hpp"
#include "snaplab/io.hpp"
#include "snaplab/workload.hpp"

namespace snaplab::cli {

inline constexpr const char* kToolVersion = "1.0.0";

// sysexits-style codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitSoftware = 70;
inline constexpr int kExitIo = 74;

/// Everything needed to reproduce a run: the fully resolved argument list
/// (defaults and environment overrides made explicit) plus bookkeeping.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> args;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<std::uint64_t> seed;
};

inline io::Json manifest_json(const RunManifest& m) {
  io::Json j;
  j["format_version"] = io::kFormatVersion;
  j["tool"] = "snaplab";
  j["version"] = kToolVersion;
  j["subcommand"] = m.subcommand;
  j["args"] = m.args;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["seed"] = m.seed ? io::Json(*m.seed) : io::Json(nullptr);
  return j;
}

inline std::string manifest_path(const std::string& output) { return output + ".manifest.json"; }

namespace detail {

template <class T>
std::string join(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + std::to_string(items[i]);
  return out;
}

inline std::uint64_t default_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("SNAPLAB_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, std::string("SNAPLAB_SEED is not a number: ") + env);
    }
  }
  return fallback;
}

inline std::vector<RegionId> to_regions(const std::vector<std::uint32_t>& raw) {
  std::vector<RegionId> out;
  for (auto r : raw) out.push_back(RegionId(r));
  return out;
}

inline void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (path)
    io::write_file(*path, text);
  else
    out << text;
}

inline void write_manifest(const RunManifest& m) {
  for (const auto& output : m.outputs) io::write_file(manifest_path(output), manifest_json(m).dump() + "\n");
}

struct SimulateArgs {
  std::size_t regions = 2, processes = 2, events = 10;
  std::string regime = "unique";
  double read_fraction = 0.3;
  std::optional<std::uint64_t> seed;
  std::string workload = "random";
  std::vector<Value> initial;
  std::string out;
};

struct AcquireArgs {
  std::string trace, strategy, out;
  std::optional<Time> at, start;
  Time delay = 1;
  std::vector<std::uint32_t> order, priority;
};

struct EvaluateArgs {
  std::string trace, snapshot;
  std::optional<Time> tau;
  bool window = false;
  std::optional<std::string> out;
};

struct LatticeArgs {
  std::string trace;
  std::size_t bound = kDefaultEnumerationBound;
  std::optional<std::string> out;
};

struct VerifyArgs {
  std::size_t cases = 10000;
  std::optional<std::uint64_t> seed;
  std::string regime = "all";
  std::size_t threads = 1;
  std::optional<std::string> out;
};

struct DiagramArgs {
  std::string trace;
  std::optional<std::string> snapshot;
  std::vector<std::uint32_t> cut;
  bool has_cut = false;
  std::optional<std::string> out;
};

inline int simulate(SimulateArgs& a, std::ostream& out) {
  WorkloadConfig config;
  config.region_count = a.regions;
  config.process_count = a.processes;
  config.event_count = a.events;
  auto regime = parse_regime(a.regime);
  if (!regime) throw Error(ErrorCode::InvalidConfig, "unknown regime " + a.regime);
  config.regime = *regime;
  config.read_fraction = config.regime == KindRegime::MixedWithReads ? a.read_fraction : 0.0;
  config.seed = a.seed.value_or(default_seed(0));
  if (a.workload == "linked-list")
    config.workload = LinkedListWorkload{a.regions};
  else if (a.workload != "random")
    throw Error(ErrorCode::InvalidConfig, "unknown workload " + a.workload);
  config.initial_values = a.initial;

  const Computation comp = generate(config);
  replay(comp);
  io::write_file(a.out, io::trace_text(comp));

  RunManifest m{"simulate",
                {"simulate", "--regions", std::to_string(a.regions), "--processes", std::to_string(a.processes),
                 "--events", std::to_string(a.events), "--regime", a.regime, "--read-fraction",
                 io::Json(a.read_fraction).dump(), "--seed", std::to_string(config.seed), "--workload", a.workload,
                 "--out", a.out},
                {},
                {a.out},
                config.seed};
  if (!a.initial.empty()) {
    m.args.push_back("--initial");
    m.args.push_back(join(a.initial));
  }
  write_manifest(m);
  out << "wrote " << comp.event_count() << " events to " << a.out << "\n";
  return kExitOk;
}

inline int acquire_cmd(AcquireArgs& a, std::ostream& out) {
  const Computation comp = io::load_trace(a.trace);
  const GroundTruth gt = replay(comp);
  if (a.at && a.start && *a.at != *a.start) throw Error(ErrorCode::InvalidPlan, "--at and --start disagree");
  const Time start = a.at ? *a.at : a.start.value_or(0);
  auto strategy = parse_strategy(a.strategy);
  if (!strategy) throw Error(ErrorCode::InvalidPlan, "unknown strategy " + a.strategy);
  const auto order = a.order.empty() ? index_order(comp.region_count()) : to_regions(a.order);

  AcquisitionPlan plan;
  switch (*strategy) {
    case Strategy::Frozen: plan = FrozenPlan{start}; break;
    case Strategy::Sequential: plan = SequentialPlan{start, order, a.delay}; break;
    case Strategy::CopyOnWrite: plan = CopyOnWritePlan{start, order, a.delay}; break;
    case Strategy::Priority: plan = PriorityPlan{start, to_regions(a.priority), a.delay}; break;
  }
  const Snapshot s = acquire(comp, gt, plan);
  io::write_file(a.out, io::snapshot_text(s));

  RunManifest m{"acquire",
                {"acquire", "--trace", a.trace, "--strategy", a.strategy, "--start", std::to_string(start), "--delay",
                 std::to_string(a.delay), "--out", a.out},
                {a.trace},
                {a.out},
                std::nullopt};
  if (*strategy == Strategy::Sequential || *strategy == Strategy::CopyOnWrite) {
    std::vector<std::uint32_t> raw;
    for (RegionId r : order) raw.push_back(r.value);
    m.args.insert(m.args.end(), {"--order", join(raw)});
  }
  if (*strategy == Strategy::Priority && !a.priority.empty())
    m.args.insert(m.args.end(), {"--priority", join(a.priority)});
  write_manifest(m);
  out << "wrote snapshot of " << s.region_count() << " regions to " << a.out << "\n";
  return kExitOk;
}

inline int evaluate(EvaluateArgs& a, std::ostream& out) {
  const Computation comp = io::load_trace(a.trace);
  const Snapshot s = io::load_snapshot(a.snapshot);
  require_complete(comp, s);
  const GroundTruth gt = replay(comp);
  const Time tau = a.tau.value_or(s.earliest_copy());
  const Verdict v = classify(comp, gt, s, tau, {.window = a.window});
  const std::string text = io::evaluation_record(comp, s, v).dump() + "\n";
  out << text;
  if (a.out) {
    io::write_file(*a.out, text);
    RunManifest m{"evaluate",
                  {"evaluate", "--trace", a.trace, "--snapshot", a.snapshot, "--tau", std::to_string(tau), "--out",
                   *a.out},
                  {a.trace, a.snapshot},
                  {*a.out},
                  std::nullopt};
    if (a.window) m.args.push_back("--window");
    write_manifest(m);
  }
  return kExitOk;
}

inline int lattice(LatticeArgs& a, std::ostream& out) {
  const Computation comp = io::load_trace(a.trace);
  emit(lattice_dot(enumerate_cut_lattice(comp, a.bound)), a.out, out);
  if (a.out)
    write_manifest({"lattice",
                    {"lattice", "--trace", a.trace, "--bound", std::to_string(a.bound), "--out", *a.out},
                    {a.trace},
                    {*a.out},
                    std::nullopt});
  return kExitOk;
}

inline int verify(VerifyArgs& a, std::ostream& out) {
  CampaignConfig config;
  config.cases = a.cases;
  config.seed = a.seed.value_or(default_seed(7));
  config.threads = a.threads;
  if (a.regime != "all") {
    auto regime = parse_regime(a.regime);
    if (!regime) throw Error(ErrorCode::InvalidConfig, "unknown regime " + a.regime);
    config.regimes = {*regime};
  }
  const CampaignReport report = verify_implications(config);
  std::ostringstream text;
  io::write_report(text, report);
  if (a.out) {
    io::write_file(*a.out, text.str());
    write_manifest({"verify",
                    {"verify", "--cases", std::to_string(a.cases), "--seed", std::to_string(config.seed), "--regime",
                     a.regime, "--threads", std::to_string(a.threads), "--out", *a.out},
                    {},
                    {*a.out},
                    config.seed});
  }

  out << "cases: " << report.cases << " (seed " << config.seed << ")\n";
  for (const auto& t : report.implications)
    out << (t.counterexamples == 0 ? "ok   " : "FAIL ") << t.name << " [" << t.scope << "]: " << t.antecedent_held
        << " of " << t.applicable << " cases with antecedent, " << t.counterexamples << " counterexamples\n";
  for (const auto& w : report.non_implications)
    out << (w.found() ? "seen " : "none ") << w.name << ": " << w.campaign_cases << " campaign cases, "
        << w.fixtures.size() << " fixtures\n";
  out << "vector clock disagreements: " << report.vc_disagreements << "\n";
  out << "rt_consistent cases: " << report.rt_consistent_cases << ", of which not quasi-instantaneous: "
      << report.rt_consistent_not_quasi << "\n";
  if (!report.clean()) {
    out << report.counterexamples.size() << " counterexamples\n";
    return kExitCounterexample;
  }
  return kExitOk;
}

inline int diagram_cmd(DiagramArgs& a, std::ostream& out) {
  const Computation comp = io::load_trace(a.trace);
  std::optional<Snapshot> s;
  if (a.snapshot) {
    s = io::load_snapshot(*a.snapshot);
    require_complete(comp, *s);
  }
  std::optional<Cut> cut;
  if (a.has_cut) {
    std::vector<EventId> ids;
    for (auto id : a.cut) {
      if (!comp.contains(EventId(id))) throw Error(ErrorCode::UnknownEvent, "no event with id " + std::to_string(id));
      ids.push_back(EventId(id));
    }
    cut = Cut(std::move(ids));
  }
  emit(diagram(comp, s ? &*s : nullptr, cut ? &*cut : nullptr), a.out, out);
  if (a.out) {
    RunManifest m{"diagram", {"diagram", "--trace", a.trace, "--out", *a.out}, {a.trace}, {*a.out}, std::nullopt};
    if (a.snapshot) {
      m.args.insert(m.args.end(), {"--snapshot", *a.snapshot});
      m.inputs.push_back(*a.snapshot);
    }
    if (a.has_cut) m.args.insert(m.args.end(), {"--cut", join(a.cut)});
    write_manifest(m);
  }
  return kExitOk;
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::Format:
    case ErrorCode::InvalidComputation: return kExitIo;
    case ErrorCode::CounterexampleFound: return kExitCounterexample;
    case ErrorCode::InternalImplicationViolation: return kExitSoftware;
    default: return kExitUsage;
  }
}

}  // namespace detail

namespace detail {

inline std::vector<std::string> manifest_args(const std::string& path) {
  auto in = io::open_input(path);
  io::Json j;
  try {
    j = io::Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Format, path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("args") || !j["args"].is_array())
    throw Error(ErrorCode::Format, path + " is not a run manifest");
  return j["args"].get<std::vector<std::string>>();
}

}  // namespace detail

/// Parses and dispatches one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"snaplab: snapshot quality simulator and checker"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  detail::SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "generate a seeded computation trace");
  simulate->add_option("--regions", sim.regions, "number of memory regions")->check(CLI::PositiveNumber);
  simulate->add_option("--processes", sim.processes, "number of processes")->check(CLI::PositiveNumber);
  simulate->add_option("--events", sim.events, "number of events");
  simulate->add_option("--regime", sim.regime, "unique | modifying | mixed");
  simulate->add_option("--read-fraction", sim.read_fraction, "share of reads under the mixed regime")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--seed", sim.seed, "generator seed (default: $SNAPLAB_SEED or 0)");
  simulate->add_option("--workload", sim.workload, "random | linked-list");
  simulate->add_option("--initial", sim.initial, "initial value per region")->delimiter(',');
  simulate->add_option("--out", sim.out, "trace file to write")->required();

  detail::AcquireArgs acq;
  auto* acquire = app.add_subcommand("acquire", "take a snapshot of a trace");
  acquire->add_option("--trace", acq.trace)->required();
  acquire->add_option("--strategy", acq.strategy, "frozen | sequential | cow | priority")->required();
  acquire->add_option("--at", acq.at, "copy instant (frozen)");
  acquire->add_option("--start", acq.start, "acquisition start");
  acquire->add_option("--delay", acq.delay, "ticks per region copy")->check(CLI::PositiveNumber);
  acquire->add_option("--order", acq.order, "region scan order, 0-based")->delimiter(',');
  acquire->add_option("--priority", acq.priority, "regions scanned first, 0-based")->delimiter(',');
  acquire->add_option("--out", acq.out, "snapshot file to write")->required();

  detail::EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "classify a snapshot");
  evaluate->add_option("--trace", ev.trace)->required();
  evaluate->add_option("--snapshot", ev.snapshot)->required();
  evaluate->add_option("--tau", ev.tau, "integrity reference time (default: earliest copy)");
  evaluate->add_flag("--window", ev.window, "search coexistence only within [tau, last copy]");
  evaluate->add_option("--out", ev.out);

  detail::LatticeArgs lat;
  auto* lattice = app.add_subcommand("lattice", "emit the lattice of consistent cuts as dot");
  lattice->add_option("--trace", lat.trace)->required();
  lattice->add_option("--bound", lat.bound, "maximum event count");
  lattice->add_option("--out", lat.out);

  detail::VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "randomized campaign over the criteria implications");
  verify->add_option("--cases", ver.cases);
  verify->add_option("--seed", ver.seed, "campaign seed (default: $SNAPLAB_SEED or 7)");
  verify->add_option("--regime", ver.regime, "all | unique | modifying | mixed");
  verify->add_option("--threads", ver.threads)->check(CLI::PositiveNumber);
  verify->add_option("--out", ver.out, "report file");

  detail::DiagramArgs dia;
  auto* diagram = app.add_subcommand("diagram", "emit a space/time diagram as dot");
  diagram->add_option("--trace", dia.trace)->required();
  diagram->add_option("--snapshot", dia.snapshot);
  auto* cut_opt = diagram->add_option("--cut", dia.cut, "event ids of a cut")->delimiter(',');
  diagram->add_option("--out", dia.out);

  std::string manifest;
  auto* rerun = app.add_subcommand("rerun", "repeat the run recorded in a manifest");
  rerun->add_option("--manifest", manifest)->required();

  std::vector<std::string> argv_storage{"snaplab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) return detail::simulate(sim, out);
    if (*acquire) return detail::acquire_cmd(acq, out);
    if (*evaluate) return detail::evaluate(ev, out);
    if (*lattice) return detail::lattice(lat, out);
    if (*verify) return detail::verify(ver, out);
    if (*diagram) {
      dia.has_cut = cut_opt->count() > 0;
      return detail::diagram_cmd(dia, out);
    }
    if (*rerun) return run(detail::manifest_args(manifest), out, err);
  } catch (const Error& e) {
    err << "snaplab: " << e.what() << "\n";
    return detail::exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace snaplab::cli
