// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "chromlc/analysis.hpp"
#include "chromlc/compiler.hpp"
#include "chromlc/generate.hpp"
#include "chromlc/io.hpp"
#include "chromlc/simulator.hpp"
#include "oracles.hpp"

using namespace chromlc;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

PauliCoeffs single(int a, int b, double value) {
  PauliCoeffs c;
  c(a, b) = value;
  return c;
}

HamiltonianSchedule unit_chain(int n) {
  GeneratorParams p;
  p.n = n;
  return generate(GeneratorKind::Chain, p);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome discrete_embedding_identity() {
  std::mt19937_64 rng(1001);
  double worst_gap = 0, worst_distance = 0;
  for (int rep = 0; rep < 50; ++rep) {
    GateSchedule g{4, {}};
    const int steps = 1 + static_cast<int>(rng() % 6);
    for (int s = 0; s < steps; ++s) {
      std::vector<int> q{0, 1, 2, 3};
      std::shuffle(q.begin(), q.end(), rng);
      Step step;
      const int gates = 1 + static_cast<int>(rng() % 2);
      for (int j = 0; j < gates; ++j)
        step.gates.push_back(Gate::make(q[2 * j], q[2 * j + 1], oracle::random_unitary(4, rng)));
      g.steps.push_back(std::move(step));
    }
    const auto embedded = embed_discrete(g);
    worst_gap = std::max(worst_gap, std::abs(weighted_depth(g) - integrated_chromatic_index(embedded, 1).integral));
    worst_distance = std::max(worst_distance, spectral_distance(full_unitary(g), full_unitary(embedded, 1e-10)));
  }
  return {worst_gap < 1e-9 && worst_distance < 1e-8,
          "max |depth - I| " + fmt(worst_gap) + ", max distance " + fmt(worst_distance)};
}

std::vector<HamiltonianSchedule> convergence_schedules() {
  std::vector<HamiltonianSchedule> out;
  for (std::uint64_t i = 0; i < 10; ++i) {
    GeneratorParams p;
    p.n = 4;
    p.duration = 1.0;
    p.segments = 5;
    p.edge_probability = 0.6;
    p.coupling = 0.25;
    p.seed = 2000 + i;
    out.push_back(generate(GeneratorKind::RandomGraph, p));
  }
  return out;
}

const std::vector<double> kEpsilons{0.2, 0.1, 0.05, 0.025};

Outcome unitary_convergence() {
  Outcome o;
  std::size_t checked = 0;
  double smallest = 10, largest = 0;
  ConvergenceOptions opts;
  opts.threads = default_thread_count();
  for (const auto& s : convergence_schedules()) {
    const auto study = convergence_study(s, kEpsilons, opts);
    std::vector<double> errors;
    for (const auto& row : study.rows) errors.push_back(row.error);
    const auto check = check_ratios(errors);
    checked += check.ratios.size();
    for (double r : check.ratios) smallest = std::min(smallest, r), largest = std::max(largest, r);
    if (!check.passed) {
      o.passed = false;
      o.detail = check.message + "; ";
    }
  }
  if (checked == 0) o.passed = false;
  o.detail += std::to_string(checked) + " ratios checked, range [" + fmt(smallest) + ", " + fmt(largest) + "]";
  return o;
}

HamiltonianSchedule ramp_schedule() {
  // Every bond carries t XI + ZX; the two Pauli products anticommute, so each
  // norm is sqrt(1 + t^2) and W(t) is not linear in t.
  std::vector<PairTerm> terms;
  for (int k = 0; k < 3; ++k) {
    PairTerm term;
    term.first = k;
    term.second = k + 1;
    term.coeffs[PauliCoeffs::index(1, 0)] = {0.0, 1.0};
    term.coeffs[PauliCoeffs::index(3, 1)] = {1.0};
    terms.push_back(std::move(term));
  }
  return HamiltonianSchedule(4, {Segment{0, 1, std::move(terms)}});
}

Outcome depth_convergence() {
  Outcome o;
  double worst = 0;
  for (const auto& s : convergence_schedules()) {
    const double I = integrated_chromatic_index(s, 1).integral;
    for (double eps : kEpsilons) worst = std::max(worst, std::abs(compile(s, eps).report.weighted_depth - I));
  }
  const auto ramp = ramp_schedule();
  const double reference = integrated_chromatic_index(ramp, 1 << 14).integral;
  std::vector<double> gaps;
  for (double eps : kEpsilons) gaps.push_back(std::abs(compile(ramp, eps).report.weighted_depth - reference));
  double min_ratio = 1e300;
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i) min_ratio = std::min(min_ratio, gaps[i] / gaps[i + 1]);
  o.passed = worst < 1e-9 && min_ratio >= 1.7;
  o.detail = "constant max gap " + fmt(worst) + ", ramp gaps " + fmt(gaps.front()) + " .. " + fmt(gaps.back()) +
             ", min halving ratio " + fmt(min_ratio);
  return o;
}

Outcome chain_parallelization() {
  Outcome o;
  std::string detail;
  for (int n : {4, 6}) {
    std::vector<VertexPair> even, odd;
    for (int k = 0; k + 1 < n; ++k) (k % 2 == 0 ? even : odd).emplace_back(k, k + 1);
    for (double eps : {1.0, 0.5, 0.1}) {
      const auto c = compile(unit_chain(n), eps);
      if (std::abs(c.report.weighted_depth - 2.0) > 1e-9) o.passed = false;
      for (const auto& step : c.gates.steps) {
        std::vector<VertexPair> pairs;
        for (const auto& g : step.gates) pairs.emplace_back(g.first, g.second);
        if (pairs != even && pairs != odd) o.passed = false;
      }
      detail = "n = " + std::to_string(n) + ", eps = " + fmt(eps) + ": depth " + fmt(c.report.weighted_depth);
    }
  }
  o.detail = detail;
  return o;
}

Outcome chromatic_oracle() {
  Outcome o;
  std::size_t graphs = 0;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& edges : oracle::connected_graphs(n)) {
      std::vector<WeightedEdge> w;
      for (auto [u, v] : edges) w.push_back({u, v, 1.0});
      const WeightedGraph g(n, w);
      const auto res = chromatic_index_exact(g);
      if (res.index != oracle::brute_force_chromatic_index(g) || !is_valid_coloring(g, res.coloring)) o.passed = false;
      ++graphs;
    }
  }
  std::mt19937_64 rng(5005);
  int worst_excess = -1;
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 19);
    std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.05, 0.9)(rng));
    std::vector<WeightedEdge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng)) edges.push_back({u, v, 1.0});
    const WeightedGraph g(n, edges);
    const auto c = edge_color_vizing(g);
    const int excess = static_cast<int>(c.color_count()) - g.max_degree();
    worst_excess = std::max(worst_excess, excess);
    if (!is_valid_coloring(g, c) || excess > 1) o.passed = false;
  }
  o.detail = std::to_string(graphs) + " connected graphs, Vizing max excess over degree " + std::to_string(worst_excess);
  return o;
}

Outcome variance_bound_trials() {
  Outcome o;
  VarianceOptions opts;
  opts.threads = default_thread_count();
  std::ostringstream detail;
  for (auto [n, alpha] : {std::pair{8, 0.25}, std::pair{6, 0.4}}) {
    const auto records = variance_bound_experiment(n, alpha, 100, 7000, opts);
    int violations = 0;
    double worst = 0;
    for (const auto& r : records) {
      if (r.variance > r.bound) ++violations;
      worst = std::max(worst, r.variance);
    }
    if (violations) o.passed = false;
    detail << "n=" << n << " alpha=" << alpha << ": max V " << fmt(worst) << " / bound " << fmt(records[0].bound)
           << ", " << violations << " violations; ";
  }
  opts.random_product_states = true;
  double worst_baseline = 0;
  for (int n : {6, 8}) {
    for (const auto& r : variance_bound_experiment(n, 0.0, 20, 9000, opts)) {
      worst_baseline = std::max(worst_baseline, r.variance / n);
      if (r.variance > n + 1e-9) o.passed = false;
    }
  }
  detail << "alpha=0 max V/n " << fmt(worst_baseline);
  o.detail = detail.str();
  return o;
}

Outcome witness_sanity() {
  Outcome o;
  double worst = 0;
  for (int n : {4, 8, 12}) {
    const auto z = MeanFieldObservable::uniform(n, pauli(3));
    worst = std::max(worst, std::abs(variance(ghz_state(n), z) - n * n));
    worst = std::max(worst, std::abs(variance(uniform_superposition(n), z) - n));
  }
  o.passed = worst < 1e-9;
  o.detail = "max deviation " + fmt(worst);
  return o;
}

Outcome trotter_baseline() {
  const HamiltonianSchedule s(3, {Segment{0, 1,
                                          {PairTerm::constant(0, 1, single(1, 1, 1.0)),
                                           PairTerm::constant(1, 2, single(3, 3, 1.0))}}});
  const auto cmp = trotter_comparison(s, {8, 16, 32, 64}, {});
  std::vector<double> errors;
  for (const auto& r : cmp.rows) errors.push_back(r.error);
  // Every doubling is checked, not only those below 1e-2.
  const auto check = check_ratios(errors, 1.7, 2.3, 1e300);
  std::string ratios;
  for (double r : check.ratios) ratios += fmt(r) + " ";
  return {check.passed && check.ratios.size() == 3, "ratios " + ratios};
}

Outcome rechromatization() {
  Outcome o;
  const auto chain = unit_chain(4);
  const CMatrix reference = full_unitary(chain, 1e-11);
  std::vector<double> errors;
  for (double eps : {0.05, 0.025, 0.0125, 0.00625, 0.003125}) {
    const auto r = rechromatize(chain, 1, eps);
    if (std::abs(r.duration() - 2 * chain.duration()) > 1e-9) o.passed = false;
    for (const auto& seg : r.segments())
      if (chromatic_index_exact(interaction_graph(r, seg.midpoint())).index > 1) o.passed = false;
    errors.push_back(spectral_distance(full_unitary(r, 1e-11), reference));
  }
  const auto check = check_ratios(errors);
  if (!check.passed || check.ratios.empty()) o.passed = false;
  std::string ratios;
  for (double r : check.ratios) ratios += fmt(r) + " ";
  o.detail = "errors " + fmt(errors.front()) + " .. " + fmt(errors.back()) + ", ratios " + ratios;
  return o;
}

Outcome kernel_properties() {
  std::mt19937_64 rng(10010);
  std::uniform_real_distribution<double> uniform(-3, 3);
  double log_err = 0, group_err = 0, eig_err = 0;
  int io_mismatch = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const CMatrix u = oracle::random_unitary(4, rng);
    const CMatrix l = unitary_log(u);
    log_err = std::max({log_err, max_entry(expm_i(l, -1.0) - u), std::abs(operator_norm(l) - unitary_angle(u))});

    const CMatrix h = oracle::random_hermitian(4, rng);
    const double s = uniform(rng), t = uniform(rng);
    group_err = std::max(group_err, max_entry(expm_i(h, s) * expm_i(h, t) - expm_i(h, s + t)));

    const int dim = 2 + static_cast<int>(rng() % 15);
    const CMatrix a = oracle::random_hermitian(dim, rng);
    eig_err = std::max(eig_err, max_entry(hermitian_eig(a).reconstruct() - a));

    GeneratorParams p;
    p.n = 2 + static_cast<int>(rng() % 6);
    p.segments = 1 + static_cast<int>(rng() % 3);
    p.degree = static_cast<int>(rng() % 4);
    p.seed = rng();
    const auto sched = generate(rep % 2 ? GeneratorKind::RandomTimeVarying : GeneratorKind::RandomGraph, p);
    const auto text = serialize(sched);
    const auto back = parse_schedule(text).schedule;
    if (serialize(back) != text) ++io_mismatch;
    for (std::size_t i = 0; i < sched.segments().size(); ++i)
      for (std::size_t j = 0; j < sched.segments()[i].terms.size(); ++j)
        if (sched.segments()[i].terms[j].coeffs != back.segments()[i].terms[j].coeffs) ++io_mismatch;
  }
  return {log_err < 1e-9 && group_err < 1e-10 && eig_err < 1e-11 && io_mismatch == 0,
          "log " + fmt(log_err) + ", group law " + fmt(group_err) + ", eig " + fmt(eig_err) + ", serializer mismatches " +
              std::to_string(io_mismatch)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"discrete embedding: weighted depth equals I", discrete_embedding_identity},
      {"compiled unitaries converge at first order", unitary_convergence},
      {"weighted depth converges to I", depth_convergence},
      {"unit chain compiles to depth 2 with two matchings", chain_parallelization},
      {"chromatic index matches exhaustive search", chromatic_oracle},
      {"variance bound holds", variance_bound_trials},
      {"GHZ and uniform witnesses", witness_sanity},
      {"Trotter baseline is first order", trotter_baseline},
      {"rechromatize throttles the chain", rechromatization},
      {"kernel property sweep", kernel_properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.passed) ++failures;
    std::printf("criterion %2zu %s: %s (%s; %.1f s)\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
