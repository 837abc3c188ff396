#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "chromlc/linalg.hpp"

namespace chromlc {

// Single-qubit Pauli basis in the order I, X, Y, Z.
const Matrix2c& pauli(int index);

// Two-qubit Pauli expansion: sum_{a,b} c[4a+b] sigma_a (x) sigma_b. The first
// factor acts on the lower-numbered qubit of the pair.
struct PauliCoeffs {
  std::array<double, 16> c{};

  static constexpr std::size_t index(int a, int b) { return static_cast<std::size_t>(4 * a + b); }

  double& operator()(int a, int b) { return c[index(a, b)]; }
  double operator()(int a, int b) const { return c[index(a, b)]; }

  Matrix4c to_matrix() const;

  // tr(m sigma_a (x) sigma_b) / 4 for each basis element; m must be Hermitian.
  static PauliCoeffs from_matrix(const Matrix4c& m);
};

// "XZ" <-> basis index 4*X + Z
std::string pauli_label(std::size_t index);
std::optional<std::size_t> pauli_index(std::string_view label);

}  // namespace chromlc
