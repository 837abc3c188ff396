#include "chromlc/pauli.hpp"

namespace chromlc {

namespace {

std::array<Matrix2c, 4> make_paulis() {
  const Complex i{0, 1};
  std::array<Matrix2c, 4> p;
  p[0] << 1, 0, 0, 1;
  p[1] << 0, 1, 1, 0;
  p[2] << 0, -i, i, 0;
  p[3] << 1, 0, 0, -1;
  return p;
}

const std::array<Matrix2c, 4>& paulis() {
  static const auto table = make_paulis();
  return table;
}

constexpr std::string_view kLetters = "IXYZ";

}  // namespace

const Matrix2c& pauli(int index) { return paulis().at(static_cast<std::size_t>(index)); }

Matrix4c PauliCoeffs::to_matrix() const {
  Matrix4c m = Matrix4c::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double w = (*this)(a, b);
      if (w != 0) m += w * kron(pauli(a), pauli(b));
    }
  return m;
}

PauliCoeffs PauliCoeffs::from_matrix(const Matrix4c& m) {
  if (!is_hermitian(m, tolerance::kConstruction * std::max(1.0, max_entry(m))))
    throw Error(ErrorKind::NotHermitian, "pauli expansion needs a Hermitian 4x4 matrix");
  PauliCoeffs out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Matrix4c basis = kron(pauli(a), pauli(b));
      out(a, b) = std::real((m * basis).trace()) / 4.0;
    }
  return out;
}

std::string pauli_label(std::size_t index) {
  return {kLetters[index / 4], kLetters[index % 4]};
}

std::optional<std::size_t> pauli_index(std::string_view label) {
  if (label.size() != 2) return std::nullopt;
  const auto a = kLetters.find(label[0]);
  const auto b = kLetters.find(label[1]);
  if (a == std::string_view::npos || b == std::string_view::npos) return std::nullopt;
  return 4 * a + b;
}

}  // namespace chromlc
