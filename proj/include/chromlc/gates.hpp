#pragma once

#include <vector>

#include "chromlc/linalg.hpp"

namespace chromlc {

// A two-qubit unitary on qubits (first, second), first < second. In the 4x4
// matrix the `first` qubit is the more significant bit.
struct Gate {
  int first = 0;
  int second = 1;
  Matrix4c unitary = Matrix4c::Identity();
  double angle = 0;

  // Normalizes the pair order (conjugating by SWAP when given second < first)
  // and computes the angle. Throws NotUnitary / IndexOutOfRange.
  static Gate make(int k, int l, const Matrix4c& u);
};

struct Step {
  std::vector<Gate> gates;
};

struct GateSchedule {
  int n_qubits = 0;
  std::vector<Step> steps;

  // Throws InvalidSchedule on empty steps, out-of-range or overlapping pairs,
  // non-unitary gates, or angles that disagree with the unitary.
  void validate() const;
};

// Sum over steps of the largest gate angle in the step.
double weighted_depth(const GateSchedule& g);

}  // namespace chromlc
