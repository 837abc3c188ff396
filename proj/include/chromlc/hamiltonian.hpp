#pragma once

#include <array>
#include <vector>

#include "chromlc/gates.hpp"
#include "chromlc/graphs.hpp"
#include "chromlc/linalg.hpp"
#include "chromlc/pauli.hpp"

namespace chromlc {

// Ascending-degree coefficients in absolute time t.
using Polynomial = std::vector<double>;

inline constexpr int kMaxPolynomialDegree = 8;

// Pair terms whose operator norm falls below this are treated as absent.
inline constexpr double kZeroNorm = 1e-12;

double evaluate(const Polynomial& p, double t);

struct PairTerm {
  int first = 0;
  int second = 1;
  std::array<Polynomial, 16> coeffs;  // indexed like PauliCoeffs

  static PairTerm constant(int k, int l, const PauliCoeffs& c);

  PauliCoeffs at(double t) const;
  Matrix4c matrix(double t) const { return at(t).to_matrix(); }
  bool is_constant() const;
};

struct Segment {
  double t_start = 0;
  double t_end = 0;
  std::vector<PairTerm> terms;

  double length() const { return t_end - t_start; }
  double midpoint() const { return 0.5 * (t_start + t_end); }
};

// H(t) = sum over pairs of H_kl(t), piecewise polynomial on segments that
// tile [0, T].
class HamiltonianSchedule {
 public:
  HamiltonianSchedule() = default;
  // Throws InvalidSchedule when the invariants do not hold.
  HamiltonianSchedule(int n_qubits, std::vector<Segment> segments);

  int n_qubits() const noexcept { return n_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  double duration() const { return segments_.empty() ? 0.0 : segments_.back().t_end; }
  double shortest_segment() const;

  // Right-open lookup; t == T resolves to the last segment.
  const Segment& segment_at(double t) const;

  bool is_piecewise_constant() const;

  // Every pair term multiplied by lambda.
  HamiltonianSchedule scaled(double lambda) const;
  // H'(t) = -H(T - t): evolving with it undoes the original evolution.
  HamiltonianSchedule time_reversed() const;

 private:
  int n_ = 0;
  std::vector<Segment> segments_;
};

Matrix4c eval_pair(const HamiltonianSchedule& s, int k, int l, double t);

// Pairs of one segment at time t whose norm exceeds max(r, kZeroNorm).
WeightedGraph interaction_graph(const Segment& seg, int n_qubits, double t, double r = 0);
WeightedGraph interaction_graph(const HamiltonianSchedule& s, double t, double r = 0);

// Integral over r of the chromatic index of G_r(t), as an exact level sum.
double weighted_chromatic_index(const HamiltonianSchedule& s, double t);

struct IndexProfile {
  std::vector<double> times;
  std::vector<double> values;  // W at `times`
  double integral = 0;
  double error_estimate = 0;
};

inline constexpr int kDefaultIndexSamples = 64;

// Composite midpoint rule per segment for the time integral of W; the error
// estimate compares against the rule with twice as many samples.
IndexProfile integrated_chromatic_index(const HamiltonianSchedule& s,
                                        int samples_per_segment = kDefaultIndexSamples);

// Constant Hamiltonian -log(u_p) per step on unit-length segments, so that
// unit-time evolution reproduces every step exactly.
HamiltonianSchedule embed_discrete(const GateSchedule& g);

}  // namespace chromlc
