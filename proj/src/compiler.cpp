#include "chromlc/compiler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "chromlc/error.hpp"

namespace chromlc {

namespace {

Matrix4c swap_conjugate(const Matrix4c& u) {
  Matrix4c swap = Matrix4c::Zero();
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
  return swap * u * swap;
}

double principal(double phase) {
  double wrapped = std::remainder(phase, 2 * std::numbers::pi);
  if (wrapped <= -std::numbers::pi) wrapped += 2 * std::numbers::pi;
  return wrapped;
}

// Number of equal subintervals of length <= epsilon covering `length`.
int subdivisions(double length, double epsilon) {
  return std::max(1, static_cast<int>(std::ceil(length / epsilon - 1e-9)));
}

// exp(-i x H) from a cached spectral decomposition, with its angle.
Gate level_gate(int k, int l, const HermitianEig<Complex>& eig, double x) {
  Eigen::Vector4cd phases;
  double angle = 0;
  for (int j = 0; j < 4; ++j) {
    phases(j) = std::polar(1.0, -x * eig.eigenvalues(j));
    angle = std::max(angle, std::abs(principal(-x * eig.eigenvalues(j))));
  }
  Gate g;
  g.first = k;
  g.second = l;
  g.unitary = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
  g.angle = angle;
  return g;
}

}  // namespace

Gate Gate::make(int k, int l, const Matrix4c& u) {
  if (k == l || k < 0 || l < 0)
    throw Error(ErrorKind::IndexOutOfRange, "gate pair (" + std::to_string(k) + "," + std::to_string(l) + ")");
  Gate g;
  g.unitary = (k < l) ? u : swap_conjugate(u);
  g.first = std::min(k, l);
  g.second = std::max(k, l);
  if (!is_unitary(g.unitary, tolerance::kAlgebraic)) throw Error(ErrorKind::NotUnitary, "gate matrix is not unitary");
  g.angle = unitary_angle(g.unitary);
  return g;
}

void GateSchedule::validate() const {
  if (n_qubits < 1) throw Error(ErrorKind::InvalidSchedule, "n_qubits must be positive");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto where = "step " + std::to_string(i);
    if (steps[i].gates.empty()) throw Error(ErrorKind::InvalidSchedule, where + ": no gates");
    std::set<int> touched;
    for (std::size_t j = 0; j < steps[i].gates.size(); ++j) {
      const auto& g = steps[i].gates[j];
      const auto gwhere = where + ", gate " + std::to_string(j);
      if (g.first < 0 || g.first >= g.second || g.second >= n_qubits)
        throw Error(ErrorKind::InvalidSchedule, gwhere + ": invalid pair");
      if (!touched.insert(g.first).second || !touched.insert(g.second).second)
        throw Error(ErrorKind::InvalidSchedule, gwhere + ": pairs within a step must be disjoint");
      if (!is_unitary(g.unitary, tolerance::kAlgebraic))
        throw Error(ErrorKind::InvalidSchedule, gwhere + ": matrix is not unitary");
      if (!(g.angle >= 0) || std::abs(g.angle - unitary_angle(g.unitary)) > tolerance::kCircuit)
        throw Error(ErrorKind::InvalidSchedule, gwhere + ": angle does not match the unitary");
    }
  }
}

double weighted_depth(const GateSchedule& g) {
  double total = 0;
  for (const auto& step : g.steps) {
    double widest = 0;
    for (const auto& gate : step.gates) widest = std::max(widest, gate.angle);
    total += widest;
  }
  return total;
}

namespace {

std::string shortest_repr(double x) {
  char buf[32];
  return std::string(buf, std::to_chars(buf, buf + sizeof buf, x).ptr);
}

}  // namespace

Compilation compile(const HamiltonianSchedule& s, double epsilon, int index_samples) {
  if (!(epsilon > 0)) throw Error(ErrorKind::BadParams, "epsilon must be positive");
  if (epsilon > s.shortest_segment() * (1 + 1e-12))
    throw Error(ErrorKind::EpsilonTooLarge, "epsilon " + shortest_repr(epsilon) +
                                                " exceeds the shortest segment length " +
                                                shortest_repr(s.shortest_segment()));
  Compilation out;
  out.gates.n_qubits = s.n_qubits();
  auto& report = out.report;
  report.epsilon = epsilon;

  for (const auto& seg : s.segments()) {
    const int parts = subdivisions(seg.length(), epsilon);
    const double delta = seg.length() / parts;
    for (int i = 0; i < parts; ++i) {
      const double mid = seg.t_start + (i + 0.5) * delta;
      IntervalDiagnostic diag;
      diag.t_start = seg.t_start + i * delta;
      diag.length = delta;
      diag.first_step = out.gates.steps.size();

      // Cache H(mid) spectra for the active pairs.
      std::vector<WeightedEdge> edges;
      std::vector<std::pair<VertexPair, HermitianEig<Complex>>> spectra;
      for (const auto& term : seg.terms) {
        const Matrix4c h = term.matrix(mid);
        auto eig = hermitian_eig(h, tolerance::kConstruction * std::max(1.0, max_entry(h)));
        const double norm = std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(3)));
        if (norm <= kZeroNorm) continue;
        edges.push_back({term.first, term.second, norm});
        spectra.emplace_back(VertexPair{term.first, term.second}, std::move(eig));
      }
      const WeightedGraph graph(s.n_qubits(), edges);
      auto find_edge = [&](const VertexPair& p) -> std::size_t {
        for (std::size_t e = 0; e < spectra.size(); ++e)
          if (spectra[e].first == p) return e;
        throw Error(ErrorKind::InvalidGraph, "coloring references an unknown edge");
      };

      const auto levels = level_decompose(graph);
      double prev = 0;
      for (const auto& level : levels.levels) {
        const double gap = level.threshold - prev;
        diag.levels.push_back({level.threshold, level.chromatic_index, level.exact});
        for (const auto& matching : level.coloring.classes) {
          Step step;
          for (const auto& pair : matching) {
            const std::size_t e = find_edge(pair);
            const double x = delta * gap / edges[e].weight;
            step.gates.push_back(level_gate(pair.first, pair.second, spectra[e].second, x));
          }
          out.gates.steps.push_back(std::move(step));
        }
        prev = level.threshold;
      }
      report.riemann_sum += delta * levels.weighted_sum();
      diag.step_count = out.gates.steps.size() - diag.first_step;
      report.intervals.push_back(std::move(diag));
    }
  }

  report.step_count = out.gates.steps.size();
  report.weighted_depth = weighted_depth(out.gates);
  report.source_index = integrated_chromatic_index(s, index_samples);
  return out;
}

GateSchedule trotterize(const HamiltonianSchedule& s, int m) {
  if (m < 1) throw Error(ErrorKind::BadParams, "m must be at least 1");
  if (s.segments().size() != 1 || !s.is_piecewise_constant())
    throw Error(ErrorKind::NotConstant, "trotterize needs a single constant segment");
  const auto& seg = s.segments().front();
  const double slice = s.duration() / m;

  std::vector<const PairTerm*> ordered;
  for (const auto& term : seg.terms) ordered.push_back(&term);
  std::sort(ordered.begin(), ordered.end(), [](const PairTerm* a, const PairTerm* b) {
    return std::tie(a->first, a->second) < std::tie(b->first, b->second);
  });

  std::vector<Gate> pass;
  for (const PairTerm* term : ordered) {
    const Matrix4c h = term->matrix(0.0);
    const auto eig = hermitian_eig(h, tolerance::kConstruction * std::max(1.0, max_entry(h)));
    const double norm = std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(3)));
    if (norm <= kZeroNorm) continue;
    pass.push_back(level_gate(term->first, term->second, eig, slice));
  }

  GateSchedule out;
  out.n_qubits = s.n_qubits();
  for (int rep = 0; rep < m; ++rep)
    for (const auto& gate : pass) out.steps.push_back(Step{{gate}});
  return out;
}

HamiltonianSchedule rechromatize(const HamiltonianSchedule& s, int m, double epsilon) {
  if (m < 1) throw Error(ErrorKind::BadParams, "m must be at least 1");
  if (!(epsilon > 0) || epsilon > s.shortest_segment() * (1 + 1e-12))
    throw Error(ErrorKind::BadParams, "epsilon must lie in (0, shortest segment length]");

  std::vector<Segment> out;
  auto emit = [&](double length, std::vector<PairTerm> terms) {
    const double start = out.empty() ? 0.0 : out.back().t_end;
    std::sort(terms.begin(), terms.end(), [](const PairTerm& a, const PairTerm& b) {
      return std::tie(a.first, a.second) < std::tie(b.first, b.second);
    });
    out.push_back(Segment{start, start + length, std::move(terms)});
  };

  for (const auto& seg : s.segments()) {
    const int parts = subdivisions(seg.length(), epsilon);
    const double delta = seg.length() / parts;
    for (int i = 0; i < parts; ++i) {
      const double mid = seg.t_start + (i + 0.5) * delta;
      const auto graph = interaction_graph(seg, s.n_qubits(), mid);
      const auto chrom = chromatic_index(graph);
      const int n0 = chrom.index;
      if (n0 == 0) {
        emit(delta, {});
        continue;
      }
      const int groups = (n0 + m - 1) / m;
      for (int g = 0; g < groups; ++g) {
        std::vector<PairTerm> terms;
        for (int c = g * m; c < std::min(n0, (g + 1) * m); ++c) {
          for (const auto& [k, l] : chrom.coloring.classes[static_cast<std::size_t>(c)]) {
            const auto it = std::find_if(seg.terms.begin(), seg.terms.end(), [&, k = k, l = l](const PairTerm& t) {
              return t.first == k && t.second == l;
            });
            terms.push_back(PairTerm::constant(k, l, it->at(mid)));
          }
        }
        emit(delta, std::move(terms));
      }
    }
  }
  return HamiltonianSchedule(s.n_qubits(), std::move(out));
}

}  // namespace chromlc
