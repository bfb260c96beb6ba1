#include <gtest/gtest.h>

#include "oracles.hpp"
#include "snaplab/acquisition.hpp"
#include "snaplab/evaluator.hpp"
#include "snaplab/fixtures.hpp"
#include "snaplab/workload.hpp"
#include "test_support.hpp"

namespace snaplab {
namespace {

using fixtures::write_event;

Verdict classify_fixture(const fixtures::Fixture& f) {
  return classify(f.computation, replay(f.computation), f.snapshot, f.tau);
}

const Computation& canonical() {
  static const Computation comp = fixtures::canonical_computation();
  return comp;
}

TEST(Correctness, Examples) {
  const GroundTruth gt = replay(canonical());
  EXPECT_TRUE(check_correctness(acquire_sequential(gt, 0, index_order(2), 1), gt));
  EXPECT_FALSE(check_correctness(Snapshot({{2, 1}, {1, 2}}), gt));  // r1 perturbed by +1
  EXPECT_TRUE(check_correctness(acquire_frozen(gt, 0), gt));
}

TEST(Instantaneous, Examples) {
  const GroundTruth gt = replay(canonical());
  EXPECT_TRUE(check_instantaneous(acquire_frozen(gt, 2)));
  EXPECT_FALSE(check_instantaneous(acquire_sequential(gt, 0, index_order(2), 1)));
  EXPECT_TRUE(check_instantaneous(Snapshot({{4, 9}})));
}

TEST(QuasiInstantaneous, Examples) {
  const GroundTruth gt = replay(canonical());
  EXPECT_EQ(check_quasi_instantaneous(Snapshot({{1, 5}, {1, 5}}), gt), Time{2});
  EXPECT_EQ(check_quasi_instantaneous(Snapshot({{0, 0}, {2, 3}}), gt), std::nullopt);
  for (Time t = 0; t <= 4; ++t)
    EXPECT_EQ(check_quasi_instantaneous(acquire_frozen(gt, t), gt), std::min<Time>(t, 3)) << t;
}

TEST(QuasiInstantaneous, WindowRestrictsTheSearch) {
  const GroundTruth gt = replay(canonical());
  const Snapshot s({{0, 0}, {0, 0}});
  EXPECT_EQ(check_quasi_instantaneous(s, gt, TimeWindow{0, 5}), Time{0});
  EXPECT_EQ(check_quasi_instantaneous(s, gt, TimeWindow{1, 5}), std::nullopt);
  EXPECT_EQ(check_quasi_instantaneous(Snapshot({{1, 9}, {2, 9}}), gt, TimeWindow{1, 2}), std::nullopt);
  EXPECT_EQ(check_quasi_instantaneous(Snapshot({{1, 9}, {1, 9}}), gt, TimeWindow{2, 2}), Time{2});
  EXPECT_EQ(check_quasi_instantaneous(s, gt, TimeWindow{3, 1}), std::nullopt);
  EXPECT_EQ(acquisition_window(Snapshot({{0, 4}, {0, 7}}), 2).to, 7u);
}

TEST(Causal, Examples) {
  const CausalOrder order = build_causal_order(canonical());
  EXPECT_FALSE(check_causal(canonical(), order, Snapshot({{0, 0}, {2, 3}})));
  const fixtures::Fixture fig7 = fixtures::causal_not_quasi();
  EXPECT_TRUE(check_causal(fig7.computation, build_causal_order(fig7.computation), fig7.snapshot));
  EXPECT_TRUE(check_causal(canonical(), order, acquire_frozen(replay(canonical()), 2)));
}

TEST(Integrity, Examples) {
  const GroundTruth gt = replay(canonical());
  const Snapshot seq = acquire_sequential(gt, 0, index_order(2), 1);
  EXPECT_FALSE(check_restrictive_integrity(seq, gt, 0));
  EXPECT_FALSE(check_permissive_integrity(seq, gt, 0));
  const Snapshot quiet = acquire_sequential(gt, 3, index_order(2), 1);
  EXPECT_TRUE(check_restrictive_integrity(quiet, gt, 3));
  EXPECT_TRUE(check_permissive_integrity(quiet, gt, 3));
  const Snapshot cow = acquire_cow(canonical(), gt, 0, index_order(2), 10);
  EXPECT_TRUE(check_permissive_integrity(cow, gt, 0));
}

TEST(Integrity, RevertSeparatesTheDefinitions) {
  const fixtures::Fixture f = fixtures::reverted_before_copy();
  const GroundTruth gt = replay(f.computation);
  EXPECT_FALSE(check_restrictive_integrity(f.snapshot, gt, 0));
  EXPECT_TRUE(check_permissive_integrity(f.snapshot, gt, 0));
}

TEST(Integrity, RegionsCopiedBeforeTauAreVacuous) {
  const GroundTruth gt = replay(canonical());
  const Snapshot s({{9, 0}, {2, 3}});  // r1 copy is wrong but precedes tau
  EXPECT_TRUE(check_permissive_integrity(s, gt, 3));
  EXPECT_TRUE(check_restrictive_integrity(s, gt, 3));
}

TEST(Classify, FrozenIsAllTrue) {
  const GroundTruth gt = replay(canonical());
  for (Time t = 0; t <= 4; ++t) {
    const Verdict v = classify(canonical(), gt, acquire_frozen(gt, t), t);
    EXPECT_TRUE(v.correct && v.instantaneous && v.quasi_instantaneous && v.causal && v.restrictive_integrity &&
                v.permissive_integrity);
  }
}

TEST(Classify, Fixtures) {
  const Verdict fig5 = classify_fixture(fixtures::causally_inconsistent());
  EXPECT_FALSE(fig5.causal);
  EXPECT_FALSE(fig5.quasi_instantaneous);

  const Verdict fig7 = classify_fixture(fixtures::causal_not_quasi());
  EXPECT_TRUE(fig7.causal);
  EXPECT_FALSE(fig7.quasi_instantaneous);

  const Verdict fig10 = classify_fixture(fixtures::quasi_not_permissive());
  EXPECT_TRUE(fig10.quasi_instantaneous);
  EXPECT_EQ(fig10.witness, Time{1});
  EXPECT_FALSE(fig10.permissive_integrity);

  for (const auto& f : {fixtures::quasi_not_causal_read(), fixtures::quasi_not_causal_revert()}) {
    const Verdict v = classify_fixture(f);
    EXPECT_TRUE(v.quasi_instantaneous) << f.name;
    EXPECT_FALSE(v.causal) << f.name;
  }
  EXPECT_TRUE(fixtures::quasi_not_causal_read().computation.has_kind(EventKind::NonModifying));
}

TEST(Classify, InvariantViolationIsAnInternalError) {
  Verdict v;
  v.restrictive_integrity = true;
  try {
    detail::assert_verdict_invariants(v, false);
    FAIL() << "expected InternalImplicationViolation";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::InternalImplicationViolation);
  }
  Verdict w;
  w.quasi_instantaneous = true;  // no witness
  EXPECT_THROW(detail::assert_verdict_invariants(w, false), Error);
}

TEST(Classify, PermissiveNeedNotImplyQuasiWhenCopiesPrecedeTau) {
  // r1 is copied before tau, so both integrity checks skip it; the copied
  // pair of values never coexisted.
  const Computation comp = canonical();
  const GroundTruth gt = replay(comp);
  const Verdict v = classify(comp, gt, Snapshot({{0, 0}, {2, 3}}), 3);
  EXPECT_EQ(v.regions_before_tau, 1u);
  EXPECT_TRUE(v.permissive_integrity);
  EXPECT_TRUE(v.restrictive_integrity);
  EXPECT_FALSE(v.quasi_instantaneous);
  EXPECT_FALSE(v.causal);
}

TEST(Classify, RejectsIncompleteSnapshot) {
  EXPECT_THROW(classify(canonical(), replay(canonical()), Snapshot({{0, 0}}), 0), Error);
}

// Properties over generated computations.

TEST(EvaluatorProperties, QuasiMatchesEveryTickOracle) {
  Rng rng(61);
  for (int round = 0; round < 500; ++round) {
    const Computation comp = generate(testing::random_config(rng, 60));
    const GroundTruth gt = replay(comp);
    for (int k = 0; k < 10; ++k) {
      Snapshot s = testing::random_snapshot(rng, gt, comp.last_tick());
      if (rng.chance(0.3)) {
        std::vector<RegionCopy> copies = s.copies();
        copies[rng.below(copies.size())].v = rng.below(4);
        s = Snapshot(copies);
      }
      ASSERT_EQ(check_quasi_instantaneous(s, gt), oracle::quasi_witness(comp, s, comp.last_tick() + 1));
    }
  }
}

TEST(EvaluatorProperties, ClassifyNeverTripsItsInvariants) {
  Rng rng(62);
  for (int round = 0; round < 300; ++round) {
    const Computation comp = generate(testing::random_config(rng, 20));
    const GroundTruth gt = replay(comp);
    const CausalOrder order = build_causal_order(comp);
    for (const auto& plan : testing::plan_grid(comp.region_count(), comp.last_tick())) {
      const Snapshot s = acquire(comp, gt, plan);
      const Time tau = rng.between(0, comp.last_tick() + 2);
      ASSERT_NO_THROW(classify(comp, order, gt, s, tau));
      ASSERT_NO_THROW(classify(comp, order, gt, s, tau, {.window = true}));
    }
  }
}

TEST(EvaluatorProperties, UniquelyModifyingQuasiIsCausal) {
  Rng rng(63);
  for (int round = 0; round < 300; ++round) {
    WorkloadConfig c = testing::random_config(rng, 20);
    c.regime = KindRegime::AllUniquelyModifying;
    c.read_fraction = 0;
    const Computation comp = generate(c);
    const GroundTruth gt = replay(comp);
    const CausalOrder order = build_causal_order(comp);
    for (int k = 0; k < 20; ++k) {
      const Snapshot s = testing::random_snapshot(rng, gt, comp.last_tick());
      if (check_quasi_instantaneous(s, gt)) {
        ASSERT_TRUE(check_causal(comp, order, s));
      }
    }
  }
}

}  // namespace
}  // namespace snaplab
