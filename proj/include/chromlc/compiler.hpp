#pragma once

#include <vector>

#include "chromlc/gates.hpp"
#include "chromlc/hamiltonian.hpp"

namespace chromlc {

struct LevelDiagnostic {
  double threshold = 0;
  int chromatic_index = 0;
  bool exact = true;
};

struct IntervalDiagnostic {
  double t_start = 0;
  double length = 0;
  std::vector<LevelDiagnostic> levels;
  std::size_t first_step = 0;
  std::size_t step_count = 0;
};

struct CompilationReport {
  double epsilon = 0;
  std::size_t step_count = 0;
  double weighted_depth = 0;
  // sum over subintervals of length * W(midpoint): the value the weighted
  // depth would take with every level gate at its nominal angle.
  double riemann_sum = 0;
  IndexProfile source_index;
  std::vector<IntervalDiagnostic> intervals;
};

struct Compilation {
  GateSchedule gates;
  CompilationReport report;
};

// Continuous -> discrete. Each segment is split into ceil(L / epsilon) equal
// subintervals; at each midpoint the interaction graph is level-decomposed and
// every matching of every level becomes one step whose gates are
// exp(-i delta (r_j - r_{j-1}) H_kl / |H_kl|).
// Throws EpsilonTooLarge when epsilon exceeds the shortest segment.
Compilation compile(const HamiltonianSchedule& s, double epsilon,
                    int index_samples = kDefaultIndexSamples);

// First-order product formula, fully sequential: m passes over the pairs in
// lexicographic order, one gate exp(-i H_kl T/m) per step. Needs a single
// constant segment (NotConstant otherwise).
GateSchedule trotterize(const HamiltonianSchedule& s, int m);

// Replaces every epsilon-subinterval whose instantaneous graph has chromatic
// index n0 by k = ceil(n0 / m) consecutive intervals of the same length, each
// switching on a group of at most m color classes of the midpoint
// Hamiltonian. Running time grows by the factor k per subinterval.
HamiltonianSchedule rechromatize(const HamiltonianSchedule& s, int m, double epsilon);

}  // namespace chromlc
