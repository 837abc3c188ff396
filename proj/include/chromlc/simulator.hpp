#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chromlc/gates.hpp"
#include "chromlc/hamiltonian.hpp"
#include "chromlc/linalg.hpp"

namespace chromlc {

// 2^n amplitudes; qubit 0 is the most significant bit of the basis index.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n_qubits, std::uint64_t basis_index = 0);
  StateVector(int n_qubits, CVector amplitudes);

  int n_qubits() const noexcept { return n_; }
  const CVector& amplitudes() const noexcept { return amps_; }
  CVector& amplitudes() noexcept { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  int n_ = 0;
  CVector amps_;
};

inline constexpr int kMaxSimulatedQubits = 14;
inline constexpr int kMaxFullUnitaryQubits = 6;

// Tensor product of single-qubit states (normalized internally).
StateVector product_state(const std::vector<Eigen::Vector2cd>& qubits);
StateVector ghz_state(int n_qubits);
StateVector uniform_superposition(int n_qubits);

// Per-qubit density matrices of rho_1 (x) ... (x) rho_n.
struct ProductState {
  std::vector<Matrix2c> factors;

  void validate() const;
  // Pure-product branches with probability > 1e-12 (n <= 10).
  std::vector<std::pair<double, StateVector>> branches() const;
};

// sum_j a_j with every a_j a norm-1 Hermitian on qubit j.
struct MeanFieldObservable {
  std::vector<Matrix2c> terms;

  void validate() const;
  static MeanFieldObservable uniform(int n_qubits, const Matrix2c& a);
  static MeanFieldObservable random(int n_qubits, std::mt19937_64& rng);
};

// In-place action of a 4x4 operator on qubits (k, l) for every column of a
// 2^n x m block of states.
void apply_pair_operator(Eigen::Ref<CMatrix> states, int n_qubits, int k, int l, const Matrix4c& op);

StateVector apply_gate(StateVector psi, const Gate& g);
StateVector run_schedule(StateVector psi, const GateSchedule& g);

inline constexpr double kDefaultEvolutionTolerance = 1e-10;

// RK4 on d(psi)/dt = -i H(t) psi, halving the step until the endpoint moves
// by less than tol / 4. Throws ToleranceUnreachable or NormDrift.
StateVector evolve_continuous(StateVector psi, const HamiltonianSchedule& s,
                              double tol = kDefaultEvolutionTolerance);

CMatrix full_unitary(const GateSchedule& g);
CMatrix full_unitary(const HamiltonianSchedule& s, double tol = kDefaultEvolutionTolerance);

double expectation(const StateVector& psi, const MeanFieldObservable& a);
// <a^2> - <a>^2 for the mean-field sum.
double variance(const StateVector& psi, const MeanFieldObservable& a);
// Variance in U (rho_1 (x) ... (x) rho_n) U^dag where U is the evolution of s.
double variance(const ProductState& rho, const HamiltonianSchedule& s, const MeanFieldObservable& a,
                double tol = kDefaultEvolutionTolerance);

}  // namespace chromlc
