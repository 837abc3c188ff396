#include "chromlc/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "chromlc/error.hpp"

namespace chromlc {

double evaluate(const Polynomial& p, double t) {
  double acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

PairTerm PairTerm::constant(int k, int l, const PauliCoeffs& c) {
  PairTerm term;
  term.first = k;
  term.second = l;
  for (std::size_t i = 0; i < 16; ++i)
    if (c.c[i] != 0) term.coeffs[i] = {c.c[i]};
  return term;
}

PauliCoeffs PairTerm::at(double t) const {
  PauliCoeffs out;
  for (std::size_t i = 0; i < 16; ++i) out.c[i] = evaluate(coeffs[i], t);
  return out;
}

bool PairTerm::is_constant() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Polynomial& p) { return p.size() <= 1; });
}

namespace {

std::string segment_label(std::size_t index) { return "segment " + std::to_string(index); }

}  // namespace

HamiltonianSchedule::HamiltonianSchedule(int n_qubits, std::vector<Segment> segments)
    : n_(n_qubits), segments_(std::move(segments)) {
  if (n_ < 2) throw Error(ErrorKind::InvalidSchedule, "n_qubits must be at least 2");
  if (segments_.empty()) throw Error(ErrorKind::InvalidSchedule, "schedule must cover [0,T]");
  if (segments_.front().t_start != 0.0)
    throw Error(ErrorKind::InvalidSchedule, "schedule must cover [0,T]: first segment does not start at 0");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& seg = segments_[i];
    if (!(seg.t_start < seg.t_end) || !std::isfinite(seg.t_end))
      throw Error(ErrorKind::InvalidSchedule, segment_label(i) + ": t_start must be below t_end");
    if (i > 0 && seg.t_start != segments_[i - 1].t_end)
      throw Error(ErrorKind::InvalidSchedule, segment_label(i) + ": segments must be contiguous");
    std::set<VertexPair> pairs;
    for (std::size_t j = 0; j < seg.terms.size(); ++j) {
      const auto& term = seg.terms[j];
      const auto where = segment_label(i) + ", term " + std::to_string(j);
      if (term.first >= term.second)
        throw Error(ErrorKind::InvalidSchedule, where + ": pair must satisfy k < l");
      if (term.first < 0 || term.second >= n_)
        throw Error(ErrorKind::InvalidSchedule, where + ": pair index out of range");
      if (!pairs.emplace(term.first, term.second).second)
        throw Error(ErrorKind::InvalidSchedule, where + ": duplicate pair");
      for (const auto& p : term.coeffs) {
        if (p.size() > static_cast<std::size_t>(kMaxPolynomialDegree) + 1)
          throw Error(ErrorKind::InvalidSchedule, where + ": polynomial degree exceeds 8");
        if (!std::all_of(p.begin(), p.end(), [](double x) { return std::isfinite(x); }))
          throw Error(ErrorKind::InvalidSchedule, where + ": non-finite coefficient");
      }
    }
  }
}

double HamiltonianSchedule::shortest_segment() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& seg : segments_) best = std::min(best, seg.length());
  return best;
}

const Segment& HamiltonianSchedule::segment_at(double t) const {
  if (segments_.empty() || !(t >= 0.0) || t > duration())
    throw Error(ErrorKind::OutOfRange, "time " + std::to_string(t) + " outside [0, T]");
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double x, const Segment& seg) { return x < seg.t_end; });
  if (it == segments_.end()) return segments_.back();
  return *it;
}

bool HamiltonianSchedule::is_piecewise_constant() const {
  return std::all_of(segments_.begin(), segments_.end(), [](const Segment& seg) {
    return std::all_of(seg.terms.begin(), seg.terms.end(), [](const PairTerm& t) { return t.is_constant(); });
  });
}

HamiltonianSchedule HamiltonianSchedule::scaled(double lambda) const {
  auto segs = segments_;
  for (auto& seg : segs)
    for (auto& term : seg.terms)
      for (auto& p : term.coeffs)
        for (auto& x : p) x *= lambda;
  return HamiltonianSchedule(n_, std::move(segs));
}

namespace {

// q(t) = -p(T - t)
Polynomial reflect(const Polynomial& p, double total) {
  Polynomial q(p.size(), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    double binom = 1;
    for (std::size_t j = 0; j <= k; ++j) {
      // C(k, j) T^(k-j) (-1)^j
      const double term = p[k] * binom * std::pow(total, static_cast<double>(k - j)) * ((j % 2) ? -1.0 : 1.0);
      q[j] -= term;
      binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
    }
  }
  return q;
}

}  // namespace

HamiltonianSchedule HamiltonianSchedule::time_reversed() const {
  const double total = duration();
  std::vector<Segment> segs;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    Segment seg;
    seg.t_start = segs.empty() ? 0.0 : segs.back().t_end;
    seg.t_end = (std::next(it) == segments_.rend()) ? total : total - it->t_start;
    for (const auto& term : it->terms) {
      PairTerm rev = term;
      for (auto& p : rev.coeffs) p = reflect(p, total);
      seg.terms.push_back(std::move(rev));
    }
    segs.push_back(std::move(seg));
  }
  return HamiltonianSchedule(n_, std::move(segs));
}

Matrix4c eval_pair(const HamiltonianSchedule& s, int k, int l, double t) {
  if (k > l) std::swap(k, l);
  if (k < 0 || l >= s.n_qubits() || k == l)
    throw Error(ErrorKind::IndexOutOfRange, "invalid pair (" + std::to_string(k) + "," + std::to_string(l) + ")");
  const auto& seg = s.segment_at(t);
  for (const auto& term : seg.terms)
    if (term.first == k && term.second == l) return term.matrix(t);
  return Matrix4c::Zero();
}

WeightedGraph interaction_graph(const Segment& seg, int n_qubits, double t, double r) {
  const double cut = std::max(r, kZeroNorm);
  std::vector<WeightedEdge> edges;
  for (const auto& term : seg.terms) {
    const double norm = operator_norm(term.matrix(t));
    if (norm > cut) edges.push_back({term.first, term.second, norm});
  }
  return WeightedGraph(n_qubits, std::move(edges));
}

WeightedGraph interaction_graph(const HamiltonianSchedule& s, double t, double r) {
  if (r < 0) throw Error(ErrorKind::BadParams, "threshold r must be non-negative");
  return interaction_graph(s.segment_at(t), s.n_qubits(), t, r);
}

double weighted_chromatic_index(const HamiltonianSchedule& s, double t) {
  return level_decompose(interaction_graph(s, t, 0)).weighted_sum();
}

namespace {

double midpoint_rule(const Segment& seg, int n_qubits, int samples, std::vector<double>* times,
                     std::vector<double>* values) {
  const double h = seg.length() / samples;
  double sum = 0;
  for (int i = 0; i < samples; ++i) {
    const double t = seg.t_start + (i + 0.5) * h;
    const double w = level_decompose(interaction_graph(seg, n_qubits, t)).weighted_sum();
    if (times) times->push_back(t);
    if (values) values->push_back(w);
    sum += w;
  }
  return sum * h;
}

}  // namespace

IndexProfile integrated_chromatic_index(const HamiltonianSchedule& s, int samples_per_segment) {
  if (samples_per_segment < 1) throw Error(ErrorKind::BadParams, "samples_per_segment must be >= 1");
  IndexProfile out;
  for (const auto& seg : s.segments()) {
    bool constant = std::all_of(seg.terms.begin(), seg.terms.end(),
                                [](const PairTerm& t) { return t.is_constant(); });
    const double coarse = midpoint_rule(seg, s.n_qubits(), samples_per_segment, &out.times, &out.values);
    out.integral += coarse;
    if (!constant) {
      const double fine = midpoint_rule(seg, s.n_qubits(), 2 * samples_per_segment, nullptr, nullptr);
      out.error_estimate += std::abs(fine - coarse);
    }
  }
  return out;
}

HamiltonianSchedule embed_discrete(const GateSchedule& g) {
  g.validate();
  const int n = std::max(g.n_qubits, 2);
  if (g.steps.empty()) return HamiltonianSchedule(n, {Segment{0.0, 1.0, {}}});

  std::vector<Segment> segs;
  for (std::size_t j = 0; j < g.steps.size(); ++j) {
    Segment seg{static_cast<double>(j), static_cast<double>(j + 1), {}};
    std::vector<const Gate*> ordered;
    for (const auto& gate : g.steps[j].gates) ordered.push_back(&gate);
    std::sort(ordered.begin(), ordered.end(), [](const Gate* a, const Gate* b) {
      return std::tie(a->first, a->second) < std::tie(b->first, b->second);
    });
    for (const Gate* gate : ordered) {
      const Matrix4c generator = -unitary_log(gate->unitary);
      seg.terms.push_back(PairTerm::constant(gate->first, gate->second, PauliCoeffs::from_matrix(generator)));
    }
    segs.push_back(std::move(seg));
  }
  return HamiltonianSchedule(n, std::move(segs));
}

}  // namespace chromlc
