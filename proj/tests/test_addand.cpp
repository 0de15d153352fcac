#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pse/addand.hpp"
#include "support.hpp"

using namespace pse;

namespace {

// y=3 over y'=4, the one-block shape: weight 4, entropy of {3,0,0,1}/4
AddAnd block_diagram() {
  AddAnd d;
  auto t3 = d.terminal(3);
  auto t0 = d.terminal(0);
  auto t1 = d.terminal(1);
  auto lo = d.decision(4, t3, t0);
  auto hi = d.decision(4, t0, t1);
  d.set_root(d.decision(3, lo, hi));
  return d;
}

}  // namespace

TEST_CASE("weights and entropy of a hand-built diagram") {
  AddAnd d = block_diagram();
  CHECK(d.size() == 6);
  CHECK(d.weight() == 4);
  CHECK(d.entropy() ==
        doctest::Approx(testsupport::kBlockEntropy).epsilon(1e-12));
  CHECK(testsupport::diagram_weight_by_enum(d) == 4);
  CHECK(d.entropy() ==
        doctest::Approx(testsupport::diagram_entropy_by_enum(d)).epsilon(1e-12));
}

TEST_CASE("evaluation follows one path per assignment") {
  AddAnd d = block_diagram();
  Assignment s(4);
  s.set(Lit(3, false));
  s.set(Lit(4, false));
  CHECK(d.eval(s) == 3);
  s.set(Lit(4, true));
  CHECK(d.eval(s) == 0);
  s.set(Lit(3, true));
  CHECK(d.eval(s) == 1);
}

TEST_CASE("construction interns structurally equal nodes") {
  AddAnd d;
  auto t1 = d.terminal(1);
  auto t1b = d.terminal(1);
  CHECK(t1 == t1b);
  auto a = d.decision(2, t1, d.terminal(0));
  auto b = d.decision(2, t1, d.terminal(0));
  CHECK(a == b);
  auto c1 = d.decision(1, t1, t1);
  auto j1 = d.conj({a, c1});
  auto j2 = d.conj({c1, a});
  CHECK(j1 == j2);
}

TEST_CASE("identical branches are not collapsed") {
  AddAnd d;
  auto t2 = d.terminal(2);
  auto u = d.decision(1, t2, t2);
  CHECK(d.node(u).kind == AddKind::kDecision);
  d.set_root(u);
  CHECK(d.weight() == 4);
  CHECK(d.entropy() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a skipped variable doubles the skipping branch") {
  AddAnd d;
  auto t1 = d.terminal(1);
  auto inner = d.decision(2, t1, t1);
  d.set_root(d.decision(1, t1, inner));
  // lo skips variable 2: weight 2*1 + (1+1) = 4, distribution uniform
  CHECK(d.weight() == 4);
  CHECK(d.entropy() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(testsupport::diagram_weight_by_enum(d) == 4);
  CHECK(testsupport::diagram_has_gap(d));
}

TEST_CASE("conjunction multiplies weights and adds entropies") {
  AddAnd d;
  auto a = d.decision(1, d.terminal(1), d.terminal(1));
  auto b = d.decision(2, d.terminal(1), d.terminal(3));
  auto j = d.conj({a, b});
  d.set_root(j);
  CHECK(d.weight() == 8);
  double hb = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  CHECK(d.entropy() == doctest::Approx(1.0 + hb).epsilon(1e-12));
  CHECK(testsupport::diagram_weight_by_enum(d) == 8);
  CHECK(d.entropy() ==
        doctest::Approx(testsupport::diagram_entropy_by_enum(d)).epsilon(1e-12));
}

TEST_CASE("a zero-weight conjunction has zero entropy") {
  AddAnd d;
  auto a = d.decision(1, d.terminal(0), d.terminal(0));
  auto b = d.decision(2, d.terminal(1), d.terminal(3));
  d.set_root(d.conj({a, b}));
  CHECK(d.weight() == 0);
  CHECK(d.entropy() == 0.0);
}

TEST_CASE("construction rejects malformed nodes") {
  AddAnd d;
  auto t1 = d.terminal(1);
  auto u1 = d.decision(1, t1, d.terminal(2));
  CHECK_THROWS_AS(d.terminal(BigCount(-3)), std::invalid_argument);
  CHECK_THROWS_AS(d.decision(1, u1, t1), std::invalid_argument);  // 1 below
  CHECK_THROWS_AS(d.conj({}), std::invalid_argument);
  auto u1b = d.decision(1, t1, t1);
  CHECK_THROWS_AS(d.conj({u1, u1b}), std::invalid_argument);  // overlap on 1
  CHECK(d.conj({u1}) == u1);  // singleton unwraps
  CHECK_THROWS_AS(d.decision(2, -1, t1), std::invalid_argument);
}

TEST_CASE("order respect is a per-path property") {
  AddAnd d = block_diagram();
  CHECK(d.respects_order({3, 4}));
  CHECK_FALSE(d.respects_order({4, 3}));
  CHECK_FALSE(d.respects_order({3}));  // 4 unranked
}

TEST_CASE("trace import and export round-trip") {
  AddAnd d = block_diagram();
  TraceLog log = to_trace(d);
  CHECK(log.nodes.size() == d.size());
  AddAnd e = build_from_trace(log);
  CHECK(e.size() == d.size());
  CHECK(e.weight() == d.weight());
  CHECK(e.entropy() == doctest::Approx(d.entropy()).epsilon(1e-15));

  TraceLog empty;
  CHECK_THROWS_AS(build_from_trace(empty), std::invalid_argument);
}

TEST_CASE("text serialization round-trips") {
  AddAnd d = block_diagram();
  std::ostringstream out;
  write_diagram(out, d);
  std::istringstream in(out.str());
  AddAnd e = read_diagram(in);
  CHECK(e.size() == d.size());
  CHECK(e.weight() == d.weight());
  CHECK(e.entropy() == doctest::Approx(d.entropy()).epsilon(1e-15));
}

TEST_CASE("dot export labels the node kinds") {
  AddAnd d;
  auto a = d.decision(1, d.terminal(2), d.terminal(1));
  auto b = d.decision(2, d.terminal(1), d.terminal(0));
  d.set_root(d.conj({a, b}));
  std::string dot = to_dot(d);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("\xE2\x88\xA7") != std::string::npos);
  CHECK(dot.find("dashed") != std::string::npos);
  CHECK(dot.find("y1") != std::string::npos);
}

TEST_CASE("random diagrams match exhaustive evaluation") {
  int with_gap = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    AddAnd d = testsupport::random_diagram(seed, 4 + seed % 9);
    CHECK(d.weight() == testsupport::diagram_weight_by_enum(d));
    CHECK(d.entropy() ==
          doctest::Approx(testsupport::diagram_entropy_by_enum(d))
              .epsilon(1e-9));
    if (testsupport::diagram_has_gap(d)) ++with_gap;

    AddAnd r = reduce(d);
    CHECK(r.size() <= d.size());
    CHECK(r.weight() == d.weight());
    CHECK(r.entropy() == doctest::Approx(d.entropy()).epsilon(1e-12));

    std::ostringstream out;
    write_diagram(out, d);
    std::istringstream in(out.str());
    AddAnd e = read_diagram(in);
    CHECK(e.weight() == d.weight());
    CHECK(e.entropy() == doctest::Approx(d.entropy()).epsilon(1e-12));
  }
  CHECK(with_gap >= 5);  // the generator must actually exercise gaps
}
