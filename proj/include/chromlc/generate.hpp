#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "chromlc/hamiltonian.hpp"

namespace chromlc {

enum class GeneratorKind { Chain, CompleteMeanField, DisjointPairs, RandomGraph, RandomTimeVarying };

std::optional<GeneratorKind> parse_generator_kind(std::string_view name);
std::string_view to_string(GeneratorKind kind);

struct GeneratorParams {
  int n = 4;
  double duration = 1.0;
  // Operator norm of every pair term (for complete_mean_field, the total
  // norm is shared as coupling / (n - 1) per pair).
  double coupling = 1.0;
  double edge_probability = 0.5;
  int segments = 1;
  int degree = 1;  // random_time_varying only
  // Local field h * sigma_X on every qubit j, folded into pair (j, j+1 mod n).
  double local_field = 0.0;
  std::uint64_t seed = 0;
};

// chain / complete_mean_field / disjoint_pairs use the isotropic exchange
// (XX + YY + ZZ) / 3, whose operator norm is 1. Random kinds draw i.i.d.
// normal coefficients on the 15 traceless Pauli products and rescale to
// `coupling` (at the segment midpoint for time-varying terms).
HamiltonianSchedule generate(GeneratorKind kind, const GeneratorParams& params);

// Traceless random two-qubit Hermitian with the requested operator norm.
PauliCoeffs random_pauli_coeffs(std::mt19937_64& rng, double norm);

}  // namespace chromlc
