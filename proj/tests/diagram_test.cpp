#include <gtest/gtest.h>

#include "snaplab/diagram.hpp"
#include "snaplab/fixtures.hpp"

namespace snaplab {
namespace {

bool has(const std::string& text, const std::string& piece) { return text.find(piece) != std::string::npos; }

TEST(Diagram, CanonicalGolden) {
  EXPECT_EQ(diagram(fixtures::canonical_computation()),
            "digraph spacetime {\n"
            "  rankdir=LR;\n"
            "  node [shape=circle];\n"
            "  e1 [label=\"e1\\np1 r1 t=1\"];\n"
            "  e2 [label=\"e2\\np2 r2 t=2\"];\n"
            "  e3 [label=\"e3\\np1 r2 t=3\"];\n"
            "  r1 [shape=plaintext];\n"
            "  r1 -> e1 [arrowhead=none, color=gray];\n"
            "  r2 [shape=plaintext];\n"
            "  r2 -> e2 [arrowhead=none, color=gray];\n"
            "  e2 -> e3 [arrowhead=none, color=gray];\n"
            "  e1 -> e3 [color=blue, label=\"p1\", constraint=false];\n"
            "}\n");
}

TEST(Diagram, EmptyComputationHasRailsOnly) {
  const std::string dot = diagram(Computation(2, 1, {0, 0}, {}));
  EXPECT_TRUE(has(dot, "r1 [shape=plaintext]"));
  EXPECT_TRUE(has(dot, "r2 [shape=plaintext]"));
  EXPECT_FALSE(has(dot, "->"));
}

TEST(Diagram, SnapshotMarkers) {
  const Snapshot s({{0, 0}, {2, 3}});
  const std::string dot = diagram(fixtures::canonical_computation(), &s);
  EXPECT_TRUE(has(dot, "r1 -> cut_r1"));     // left of e1
  EXPECT_TRUE(has(dot, "cut_r1 -> e1"));
  EXPECT_TRUE(has(dot, "e3 -> cut_r2"));     // right of e3
  EXPECT_TRUE(has(dot, "cut_r1 -> cut_r2 [style=dashed"));
}

TEST(Diagram, CutMarkers) {
  const Cut c({EventId(1)});
  const std::string dot = diagram(fixtures::canonical_computation(), nullptr, &c);
  EXPECT_TRUE(has(dot, "e1 -> cut_r1"));
  EXPECT_TRUE(has(dot, "r2 -> cut_r2"));
  EXPECT_TRUE(has(dot, "cut_r2 -> e2"));
}

TEST(Diagram, Deterministic) {
  const Snapshot s({{1, 1}, {1, 2}});
  EXPECT_EQ(diagram(fixtures::canonical_computation(), &s), diagram(fixtures::canonical_computation(), &s));
}

}  // namespace
}  // namespace snaplab
