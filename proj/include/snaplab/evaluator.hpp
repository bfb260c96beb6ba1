#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "snaplab/causality.hpp"
#include "snaplab/model.hpp"

namespace snaplab {

/// Classification of one snapshot.
struct Verdict {
  bool correct = false;
  bool instantaneous = false;
  bool quasi_instantaneous = false;
  std::optional<Time> witness;  // smallest coexistence time, set iff quasi_instantaneous
  bool causal = false;
  bool restrictive_integrity = false;
  bool permissive_integrity = false;
  Time tau = 0;
  std::size_t regions_before_tau = 0;  // regions judged vacuously by the integrity checks

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Restricts the quasi-instantaneous witness search to [from, to].
struct TimeWindow {
  Time from = 0;
  Time to = 0;
};

inline bool check_correctness(const Snapshot& s, const GroundTruth& gt) {
  for (std::size_t r = 0; r < s.region_count(); ++r)
    if (s[region(r)].v != gt.value_at(region(r), s[region(r)].t)) return false;
  return true;
}

inline bool check_instantaneous(const Snapshot& s) {
  const auto& c = s.copies();
  return std::all_of(c.begin(), c.end(), [&](const RegionCopy& x) { return x.t == c.front().t; });
}

/// Smallest tick at which every copied value was present in memory at once.
/// The contents are piecewise constant, so 0 and the change-point ticks are
/// the only candidates that need checking.
inline std::optional<Time> check_quasi_instantaneous(const Snapshot& s, const GroundTruth& gt,
                                                     std::optional<TimeWindow> window = std::nullopt) {
  std::vector<Time> candidates = gt.change_times();
  if (window) {
    if (window->from > window->to) return std::nullopt;
    std::vector<Time> inside{window->from};
    for (Time t : candidates)
      if (t > window->from && t <= window->to) inside.push_back(t);
    candidates = std::move(inside);
  }
  for (Time t : candidates) {
    bool all = true;
    for (std::size_t r = 0; r < s.region_count() && all; ++r) all = gt.value_at(region(r), t) == s[region(r)].v;
    if (all) return t;
  }
  return std::nullopt;
}

/// From tau to the latest copy.
inline TimeWindow acquisition_window(const Snapshot& s, Time tau) { return {tau, s.latest_copy()}; }

inline bool check_causal(const Computation& comp, const CausalOrder& order, const Snapshot& s) {
  return is_consistent_cut(comp, order, induced_cut(comp, s));
}

/// No region copied at or after tau changed between tau and its copy.
/// Regions copied before tau satisfy the check vacuously.
inline bool check_restrictive_integrity(const Snapshot& s, const GroundTruth& gt, Time tau) {
  for (std::size_t r = 0; r < s.region_count(); ++r) {
    const RegionCopy& copy = s[region(r)];
    if (copy.t < tau) continue;
    if (gt.value_at(region(r), tau) != copy.v || gt.value_at(region(r), copy.t) != copy.v) return false;
    for (const ChangePoint& cp : gt.change_points(region(r)))
      if (cp.at > tau && cp.at <= copy.t && cp.value != copy.v) return false;
  }
  return true;
}

/// Every region copied at or after tau holds its value from tau.
inline bool check_permissive_integrity(const Snapshot& s, const GroundTruth& gt, Time tau) {
  for (std::size_t r = 0; r < s.region_count(); ++r) {
    const RegionCopy& copy = s[region(r)];
    if (copy.t >= tau && copy.v != gt.value_at(region(r), tau)) return false;
  }
  return true;
}

namespace detail {

// Asserts the implications that are theorems for the given inputs:
// restrictive => permissive always; with tau at or before every copy,
// permissive => quasi and restrictive => correct; for a correct snapshot,
// instantaneous => quasi (inside a restricted search window only when that
// window reaches back to the copy instant).
inline void assert_verdict_invariants(const Verdict& v, bool windowed) {
  auto violated = [](const char* what) {
    throw Error(ErrorCode::InternalImplicationViolation, std::string("checker disagreement: ") + what);
  };
  if (v.restrictive_integrity && !v.permissive_integrity) violated("restrictive integrity without permissive");
  if (v.regions_before_tau == 0) {
    if (v.permissive_integrity && !v.quasi_instantaneous) violated("permissive integrity without quasi-instantaneity");
    if (v.restrictive_integrity && !v.correct) violated("restrictive integrity without correctness");
  }
  if (v.correct && v.instantaneous && (!windowed || v.regions_before_tau == 0) && !v.quasi_instantaneous)
    violated("instantaneous without quasi-instantaneity");
  if (v.quasi_instantaneous != v.witness.has_value()) violated("quasi-instantaneity without witness");
}

}  // namespace detail

struct ClassifyOptions {
  bool window = false;             // restrict the witness search to the acquisition window
  bool assert_invariants = true;   // campaigns tally implication failures instead
};

inline Verdict classify(const Computation& comp, const CausalOrder& order, const GroundTruth& gt, const Snapshot& s,
                        Time tau, ClassifyOptions options = {}) {
  require_complete(comp, s);
  Verdict v;
  v.tau = tau;
  v.correct = check_correctness(s, gt);
  v.instantaneous = check_instantaneous(s);
  v.witness = check_quasi_instantaneous(s, gt, options.window ? std::optional(acquisition_window(s, tau))
                                                              : std::nullopt);
  v.quasi_instantaneous = v.witness.has_value();
  v.causal = check_causal(comp, order, s);
  v.restrictive_integrity = check_restrictive_integrity(s, gt, tau);
  v.permissive_integrity = check_permissive_integrity(s, gt, tau);
  v.regions_before_tau = static_cast<std::size_t>(std::count_if(
      s.copies().begin(), s.copies().end(), [tau](const RegionCopy& c) { return c.t < tau; }));
  if (options.assert_invariants) detail::assert_verdict_invariants(v, options.window);
  return v;
}

inline Verdict classify(const Computation& comp, const GroundTruth& gt, const Snapshot& s, Time tau,
                        ClassifyOptions options = {}) {
  return classify(comp, build_causal_order(comp), gt, s, tau, options);
}

}  // namespace snaplab
