#include <random>

#include "chromlc/analysis.hpp"
#include "chromlc/compiler.hpp"
#include "chromlc/error.hpp"
#include "chromlc/generate.hpp"
#include "chromlc/simulator.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chromlc;

namespace {

Gate gate_with_angle(int k, int l, double angle) {
  return Gate::make(k, l, expm_i(CMatrix(kron(pauli(3), pauli(3))), angle));
}

PauliCoeffs single(int a, int b, double value) {
  PauliCoeffs c;
  c(a, b) = value;
  return c;
}

HamiltonianSchedule chain(int n, double T) {
  GeneratorParams p;
  p.n = n;
  p.duration = T;
  return generate(GeneratorKind::Chain, p);
}

}  // namespace

TEST_CASE("weighted depth") {
  CHECK(weighted_depth(GateSchedule{2, {}}) == 0.0);
  const GateSchedule one{4, {Step{{gate_with_angle(0, 1, 0.2), gate_with_angle(2, 3, 0.5)}}}};
  CHECK(weighted_depth(one) == doctest::Approx(0.5).epsilon(1e-12));
  const GateSchedule two{4, {Step{{gate_with_angle(0, 1, 0.5)}}, Step{{gate_with_angle(1, 2, 0.3)}}}};
  CHECK(weighted_depth(two) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("Gate::make normalizes pair order") {
  std::mt19937_64 rng(2);
  const Matrix4c u = oracle::random_unitary(4, rng);
  const Gate g = Gate::make(2, 0, u);
  CHECK(g.first == 0);
  CHECK(g.second == 2);
  // Same operator on the full space either way.
  CHECK(max_entry(oracle::embed_pair(g.unitary, 3, 0, 2) - oracle::embed_pair(u, 3, 2, 0)) < 1e-14);
  CHECK_THROWS_AS(Gate::make(1, 1, u), Error);
  CHECK_THROWS_AS(Gate::make(0, 1, Matrix4c(2.0 * u)), Error);
}

TEST_CASE("compile a single constant pair") {
  std::mt19937_64 rng(4);
  CMatrix h = oracle::random_hermitian(4, rng);
  h *= 0.9 / operator_norm(h);
  const auto term = PairTerm::constant(0, 1, PauliCoeffs::from_matrix(h));
  const HamiltonianSchedule s(2, {Segment{0, 1, {term}}});
  const auto c = compile(s, 1.0);
  REQUIRE(c.gates.steps.size() == 1);
  REQUIRE(c.gates.steps[0].gates.size() == 1);
  CHECK(max_entry(c.gates.steps[0].gates[0].unitary - expm_i(h, 1.0)) < 1e-12);
  CHECK(c.report.weighted_depth == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(c.report.source_index.integral == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("unit chain alternates between the two bond matchings") {
  for (int n : {4, 5, 6}) {
    const auto c = compile(chain(n, 1.0), 0.125);
    CHECK(c.gates.steps.size() == 16);
    CHECK(c.report.weighted_depth == doctest::Approx(2.0).epsilon(1e-12));
    for (std::size_t i = 0; i < c.gates.steps.size(); ++i) {
      const auto& step = c.gates.steps[i];
      const int parity = step.gates.front().first % 2;
      CHECK(static_cast<int>(i % 2) == parity);
      for (const auto& g : step.gates) {
        CHECK(g.second == g.first + 1);
        CHECK(g.first % 2 == parity);
      }
      CHECK(step.gates.size() == static_cast<std::size_t>(parity == 0 ? n / 2 : (n - 1) / 2));
    }
  }
}

TEST_CASE("weighted depth telescopes to I on piecewise-constant schedules") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    GeneratorParams p;
    p.n = 5;
    p.segments = 4;
    p.seed = rng();
    p.coupling = 0.3 + (rng() % 10) / 10.0;
    const auto s = generate(GeneratorKind::RandomGraph, p);
    const double I = integrated_chromatic_index(s, 1).integral;
    for (double eps : {0.25, 0.125, 0.0625}) {
      const auto c = compile(s, eps);
      CHECK(std::abs(c.report.weighted_depth - I) < 1e-9);
      CHECK(std::abs(c.report.riemann_sum - I) < 1e-9);
      CHECK_NOTHROW(c.gates.validate());
    }
  }
}

TEST_CASE("compile is deterministic and reports intervals") {
  GeneratorParams p;
  p.n = 6;
  p.segments = 2;
  p.degree = 2;
  p.seed = 77;
  const auto s = generate(GeneratorKind::RandomTimeVarying, p);
  const auto a = compile(s, 0.1), b = compile(s, 0.1);
  REQUIRE(a.gates.steps.size() == b.gates.steps.size());
  for (std::size_t i = 0; i < a.gates.steps.size(); ++i)
    for (std::size_t j = 0; j < a.gates.steps[i].gates.size(); ++j)
      CHECK(a.gates.steps[i].gates[j].unitary == b.gates.steps[i].gates[j].unitary);
  CHECK(a.report.intervals.size() == 10);
  std::size_t covered = 0;
  for (const auto& iv : a.report.intervals) {
    CHECK(iv.first_step == covered);
    covered += iv.step_count;
  }
  CHECK(covered == a.gates.steps.size());
}

TEST_CASE("compile argument checks") {
  const auto s = chain(3, 1.0);
  CHECK_THROWS_AS(compile(s, 0.0), Error);
  try {
    compile(s, 1.5);
    FAIL("expected EpsilonTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EpsilonTooLarge);
  }
  CHECK_NOTHROW(compile(s, 1.0));
}

TEST_CASE("trotterize") {
  SUBCASE("m = 1 on a single pair equals compile at epsilon = T") {
    const HamiltonianSchedule s(2, {Segment{0, 0.7, {PairTerm::constant(0, 1, single(1, 2, 1.3))}}});
    const auto t = trotterize(s, 1);
    const auto c = compile(s, 0.7);
    REQUIRE(t.steps.size() == 1);
    CHECK(max_entry(t.steps[0].gates[0].unitary - c.gates.steps[0].gates[0].unitary) < 1e-12);
  }
  SUBCASE("commuting ZZ terms are exact") {
    const HamiltonianSchedule s(4, {Segment{0, 1,
                                            {PairTerm::constant(0, 1, single(3, 3, 0.8)),
                                             PairTerm::constant(1, 2, single(3, 3, -0.5)),
                                             PairTerm::constant(0, 3, single(3, 3, 1.1))}}});
    const CMatrix reference = full_unitary(s, 1e-12);
    for (int m : {1, 3, 8}) {
      const auto g = trotterize(s, m);
      CHECK(g.steps.size() == static_cast<std::size_t>(3 * m));
      CHECK(spectral_distance(full_unitary(g), reference) < 1e-9);
    }
  }
  SUBCASE("first order in 1/m") {
    const HamiltonianSchedule s(3, {Segment{0, 1,
                                            {PairTerm::constant(0, 1, single(1, 1, 1.0)),
                                             PairTerm::constant(1, 2, single(3, 3, 1.0))}}});
    const CMatrix reference = full_unitary(s, 1e-12);
    std::vector<double> errors;
    for (int m : {8, 16, 32, 64}) errors.push_back(spectral_distance(full_unitary(trotterize(s, m)), reference));
    const auto check = check_ratios(errors, 1.7, 2.3, 1.0);
    CHECK(check.passed);
    CHECK(check.ratios.size() == 3);
  }
  CHECK_THROWS_AS(trotterize(chain(3, 1.0), 0), Error);
  GeneratorParams p;
  p.segments = 2;
  CHECK_THROWS_AS(trotterize(generate(GeneratorKind::Chain, p), 2), Error);
}

TEST_CASE("rechromatize") {
  SUBCASE("enough colors keeps the snapshot and the running time") {
    GeneratorParams p;
    p.n = 5;
    p.segments = 2;
    p.degree = 2;
    p.seed = 5;
    const auto s = generate(GeneratorKind::RandomTimeVarying, p);
    const auto r = rechromatize(s, 10, 0.25);
    CHECK(r.duration() == doctest::Approx(s.duration()));
    CHECK(r.is_piecewise_constant());
    CHECK(r.segments().size() == 4);
    for (const auto& seg : r.segments()) {
      const double mid = seg.midpoint();
      const auto original = interaction_graph(s, mid);
      const auto snap = interaction_graph(r, mid);
      REQUIRE(original.edge_count() == snap.edge_count());
      for (const auto& term : seg.terms)
        CHECK(max_entry(term.matrix(mid) - eval_pair(s, term.first, term.second, mid)) < 1e-12);
    }
  }
  SUBCASE("chain throttled to one color doubles the running time") {
    const auto r = rechromatize(chain(6, 1.0), 1, 0.25);
    CHECK(r.duration() == doctest::Approx(2.0).epsilon(1e-12));
    for (const auto& seg : r.segments())
      CHECK(chromatic_index_exact(interaction_graph(r, seg.midpoint())).index <= 1);
  }
  CHECK_THROWS_AS(rechromatize(chain(3, 1.0), 0, 0.5), Error);
  CHECK_THROWS_AS(rechromatize(chain(3, 1.0), 1, 2.0), Error);
}
