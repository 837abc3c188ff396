#include "chromlc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chromlc/error.hpp"

namespace chromlc {

namespace {

std::uint64_t dimension(int n) { return std::uint64_t{1} << n; }

std::uint64_t bit_of(int n, int qubit) { return std::uint64_t{1} << (n - 1 - qubit); }

void check_pair(int n, int k, int l) {
  if (k < 0 || l < 0 || k >= n || l >= n || k == l)
    throw Error(ErrorKind::IndexOutOfRange,
                "pair (" + std::to_string(k) + "," + std::to_string(l) + ") on " + std::to_string(n) + " qubits");
}

// out += op acting on qubits (k, l) of every column of `in`.
void accumulate_pair_operator(const CMatrix& in, CMatrix& out, int n, int k, int l, const Matrix4c& op) {
  const auto bk = bit_of(n, k), bl = bit_of(n, l);
  const auto mask = bk | bl;
  const auto dim = dimension(n);
  for (Eigen::Index col = 0; col < in.cols(); ++col) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & mask) continue;
      const Eigen::Index idx[4] = {static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i | bl),
                                   static_cast<Eigen::Index>(i | bk), static_cast<Eigen::Index>(i | mask)};
      const Complex x0 = in(idx[0], col), x1 = in(idx[1], col), x2 = in(idx[2], col), x3 = in(idx[3], col);
      for (int r = 0; r < 4; ++r)
        out(idx[r], col) += op(r, 0) * x0 + op(r, 1) * x1 + op(r, 2) * x2 + op(r, 3) * x3;
    }
  }
}

CVector apply_single(const CVector& psi, int n, int qubit, const Matrix2c& op) {
  CVector out(psi.size());
  const auto b = bit_of(n, qubit);
  for (std::uint64_t i = 0; i < dimension(n); ++i) {
    if (i & b) continue;
    const auto i0 = static_cast<Eigen::Index>(i), i1 = static_cast<Eigen::Index>(i | b);
    out(i0) = op(0, 0) * psi(i0) + op(0, 1) * psi(i1);
    out(i1) = op(1, 0) * psi(i0) + op(1, 1) * psi(i1);
  }
  return out;
}

// Pair matrices of a segment at time t; constant terms are evaluated once.
class SegmentOperators {
 public:
  explicit SegmentOperators(const Segment& seg) : seg_(seg), matrices_(seg.terms.size()) {
    for (std::size_t i = 0; i < seg.terms.size(); ++i) {
      if (seg.terms[i].is_constant())
        matrices_[i] = seg.terms[i].matrix(seg.t_start);
      else
        varying_.push_back(i);
    }
  }

  const std::vector<Matrix4c>& at(double t) {
    for (std::size_t i : varying_) matrices_[i] = seg_.terms[i].matrix(t);
    return matrices_;
  }

 private:
  const Segment& seg_;
  std::vector<Matrix4c> matrices_;
  std::vector<std::size_t> varying_;
};

// -i H(t) Y, term by term.
CMatrix derivative(const Segment& seg, SegmentOperators& ops, int n, double t, const CMatrix& y) {
  CMatrix out = CMatrix::Zero(y.rows(), y.cols());
  const auto& matrices = ops.at(t);
  for (std::size_t i = 0; i < seg.terms.size(); ++i)
    accumulate_pair_operator(y, out, n, seg.terms[i].first, seg.terms[i].second, matrices[i]);
  return out * Complex(0, -1);
}

CMatrix rk4(const Segment& seg, int n, const CMatrix& y0, long steps) {
  SegmentOperators ops(seg);
  const double h = seg.length() / static_cast<double>(steps);
  CMatrix y = y0;
  for (long i = 0; i < steps; ++i) {
    const double t = seg.t_start + static_cast<double>(i) * h;
    const CMatrix k1 = derivative(seg, ops, n, t, y);
    const CMatrix k2 = derivative(seg, ops, n, t + 0.5 * h, y + (0.5 * h) * k1);
    const CMatrix k3 = derivative(seg, ops, n, t + 0.5 * h, y + (0.5 * h) * k2);
    const CMatrix k4 = derivative(seg, ops, n, t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

double max_column_norm(const CMatrix& m) {
  double best = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) best = std::max(best, m.col(c).norm());
  return best;
}

constexpr long kMaxStepsPerSegment = long{1} << 22;

CMatrix integrate(const HamiltonianSchedule& s, CMatrix states, double tol) {
  if (!(tol >= 1e-12)) throw Error(ErrorKind::BadParams, "evolution tolerance must be >= 1e-12");
  const int n = s.n_qubits();
  RVector initial_norms(states.cols());
  for (Eigen::Index c = 0; c < states.cols(); ++c) initial_norms(c) = states.col(c).norm();

  for (const auto& seg : s.segments()) {
    if (seg.terms.empty()) continue;
    double strength = 0;
    for (const auto& term : seg.terms) {
      double local = 0;
      for (double t : {seg.t_start, seg.midpoint(), seg.t_end}) local = std::max(local, operator_norm(term.matrix(t)));
      strength += local;
    }
    if (strength == 0) continue;
    const double seg_tol = tol * seg.length() / s.duration();
    long steps = std::max(1L, static_cast<long>(std::ceil(seg.length() * strength / 0.5)));
    CMatrix coarse = rk4(seg, n, states, steps);
    for (;;) {
      if (2 * steps > kMaxStepsPerSegment)
        throw Error(ErrorKind::ToleranceUnreachable, "RK4 step count exceeded 2^22 in one segment");
      CMatrix fine = rk4(seg, n, states, 2 * steps);
      const double diff = max_column_norm(fine - coarse);
      steps *= 2;
      coarse = std::move(fine);
      if (diff < seg_tol / 4) break;
    }
    states = std::move(coarse);
  }

  for (Eigen::Index c = 0; c < states.cols(); ++c) {
    const double norm = states.col(c).norm();
    if (std::abs(norm - initial_norms(c)) > 1e-6)
      throw Error(ErrorKind::NormDrift, "state norm drifted by " + std::to_string(std::abs(norm - initial_norms(c))));
    if (norm > 0) states.col(c) *= initial_norms(c) / norm;
  }
  return states;
}

}  // namespace

StateVector::StateVector(int n_qubits, std::uint64_t basis_index) : n_(n_qubits) {
  if (n_ < 1 || n_ > kMaxSimulatedQubits)
    throw Error(ErrorKind::TooLarge, "state vectors support 1.." + std::to_string(kMaxSimulatedQubits) + " qubits");
  if (basis_index >= dimension(n_)) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
  amps_ = CVector::Zero(static_cast<Eigen::Index>(dimension(n_)));
  amps_(static_cast<Eigen::Index>(basis_index)) = 1;
}

StateVector::StateVector(int n_qubits, CVector amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_ < 1 || n_ > kMaxSimulatedQubits)
    throw Error(ErrorKind::TooLarge, "state vectors support 1.." + std::to_string(kMaxSimulatedQubits) + " qubits");
  if (static_cast<std::uint64_t>(amps_.size()) != dimension(n_))
    throw Error(ErrorKind::DimensionMismatch, "amplitude count does not match 2^n");
  if (std::abs(amps_.norm() - 1) > tolerance::kCircuit)
    throw Error(ErrorKind::NormDrift, "state vector must have unit norm");
}

StateVector product_state(const std::vector<Eigen::Vector2cd>& qubits) {
  CVector amps = CVector::Ones(1);
  for (const auto& q : qubits) {
    if (q.norm() == 0) throw Error(ErrorKind::BadParams, "zero single-qubit state");
    amps = kron(amps, (q / q.norm()).eval()).eval();
  }
  return StateVector(static_cast<int>(qubits.size()), std::move(amps));
}

StateVector ghz_state(int n_qubits) {
  StateVector psi(n_qubits);
  auto& a = psi.amplitudes();
  a(0) = a(a.size() - 1) = 1 / std::sqrt(2.0);
  return psi;
}

StateVector uniform_superposition(int n_qubits) {
  const auto dim = static_cast<Eigen::Index>(dimension(n_qubits));
  return StateVector(n_qubits, CVector::Constant(dim, 1 / std::sqrt(static_cast<double>(dim))));
}

void ProductState::validate() const {
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const auto& rho = factors[j];
    const auto where = "qubit " + std::to_string(j);
    if (!is_hermitian(rho, tolerance::kConstruction)) throw Error(ErrorKind::NotHermitian, where + ": density matrix not Hermitian");
    if (std::abs(rho.trace() - Complex(1, 0)) > tolerance::kConstruction)
      throw Error(ErrorKind::BadParams, where + ": density matrix trace is not 1");
    if (hermitian_eig(rho).eigenvalues(0) < -tolerance::kConstruction)
      throw Error(ErrorKind::BadParams, where + ": density matrix is not positive semidefinite");
  }
}

std::vector<std::pair<double, StateVector>> ProductState::branches() const {
  validate();
  const int n = static_cast<int>(factors.size());
  if (n > 10) throw Error(ErrorKind::TooLarge, "mixed product states are expanded only up to 10 qubits");
  std::vector<std::pair<double, std::vector<Eigen::Vector2cd>>> partial{{1.0, {}}};
  for (const auto& rho : factors) {
    const auto eig = hermitian_eig(rho);
    std::vector<std::pair<double, std::vector<Eigen::Vector2cd>>> next;
    for (const auto& [p, qubits] : partial) {
      for (int j = 0; j < 2; ++j) {
        const double q = p * std::max(0.0, eig.eigenvalues(j));
        if (q <= 1e-12) continue;
        auto extended = qubits;
        extended.push_back(eig.eigenvectors.col(j));
        next.emplace_back(q, std::move(extended));
      }
    }
    partial = std::move(next);
  }
  std::vector<std::pair<double, StateVector>> out;
  for (const auto& [p, qubits] : partial) out.emplace_back(p, product_state(qubits));
  return out;
}

void MeanFieldObservable::validate() const {
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (!is_hermitian(terms[j], tolerance::kConstruction))
      throw Error(ErrorKind::NotHermitian, "observable on qubit " + std::to_string(j) + " is not Hermitian");
    if (std::abs(operator_norm(terms[j]) - 1) > tolerance::kAlgebraic)
      throw Error(ErrorKind::BadParams, "observable on qubit " + std::to_string(j) + " must have norm 1");
  }
}

MeanFieldObservable MeanFieldObservable::uniform(int n_qubits, const Matrix2c& a) {
  MeanFieldObservable out{std::vector<Matrix2c>(static_cast<std::size_t>(n_qubits), a)};
  out.validate();
  return out;
}

MeanFieldObservable MeanFieldObservable::random(int n_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const Complex i{0, 1};
  MeanFieldObservable out;
  for (int j = 0; j < n_qubits; ++j) {
    double c0 = 0, cx = 0, cy = 0, cz = 0, scale = 0;
    while (scale < 1e-6) {
      c0 = normal(rng);
      cx = normal(rng);
      cy = normal(rng);
      cz = normal(rng);
      scale = std::abs(c0) + std::sqrt(cx * cx + cy * cy + cz * cz);
    }
    Matrix2c a;
    a << c0 + cz, cx - i * cy, cx + i * cy, c0 - cz;
    out.terms.push_back(a / scale);
  }
  return out;
}

void apply_pair_operator(Eigen::Ref<CMatrix> states, int n_qubits, int k, int l, const Matrix4c& op) {
  check_pair(n_qubits, k, l);
  if (static_cast<std::uint64_t>(states.rows()) != dimension(n_qubits))
    throw Error(ErrorKind::DimensionMismatch, "state block does not have 2^n rows");
  const CMatrix in = states;
  CMatrix out = CMatrix::Zero(in.rows(), in.cols());
  accumulate_pair_operator(in, out, n_qubits, k, l, op);
  states = out;
}

StateVector apply_gate(StateVector psi, const Gate& g) {
  apply_pair_operator(psi.amplitudes(), psi.n_qubits(), g.first, g.second, g.unitary);
  return psi;
}

StateVector run_schedule(StateVector psi, const GateSchedule& g) {
  if (g.n_qubits != psi.n_qubits()) throw Error(ErrorKind::DimensionMismatch, "schedule and state disagree on n");
  for (const auto& step : g.steps)
    for (const auto& gate : step.gates) psi = apply_gate(std::move(psi), gate);
  return psi;
}

StateVector evolve_continuous(StateVector psi, const HamiltonianSchedule& s, double tol) {
  if (s.n_qubits() != psi.n_qubits()) throw Error(ErrorKind::DimensionMismatch, "schedule and state disagree on n");
  CMatrix evolved = integrate(s, psi.amplitudes(), tol);
  psi.amplitudes() = evolved.col(0);
  return psi;
}

CMatrix full_unitary(const GateSchedule& g) {
  if (g.n_qubits > kMaxFullUnitaryQubits) throw Error(ErrorKind::TooLarge, "full unitaries need n <= 6");
  const auto dim = static_cast<Eigen::Index>(dimension(std::max(g.n_qubits, 1)));
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const auto& step : g.steps)
    for (const auto& gate : step.gates) apply_pair_operator(u, g.n_qubits, gate.first, gate.second, gate.unitary);
  return u;
}

CMatrix full_unitary(const HamiltonianSchedule& s, double tol) {
  if (s.n_qubits() > kMaxFullUnitaryQubits) throw Error(ErrorKind::TooLarge, "full unitaries need n <= 6");
  const auto dim = static_cast<Eigen::Index>(dimension(s.n_qubits()));
  return integrate(s, CMatrix::Identity(dim, dim), tol);
}

namespace {

CVector apply_mean_field(const StateVector& psi, const MeanFieldObservable& a) {
  if (static_cast<int>(a.terms.size()) != psi.n_qubits())
    throw Error(ErrorKind::DimensionMismatch, "observable and state disagree on n");
  CVector out = CVector::Zero(psi.amplitudes().size());
  for (int j = 0; j < psi.n_qubits(); ++j)
    out += apply_single(psi.amplitudes(), psi.n_qubits(), j, a.terms[static_cast<std::size_t>(j)]);
  return out;
}

}  // namespace

double expectation(const StateVector& psi, const MeanFieldObservable& a) {
  return std::real(psi.amplitudes().dot(apply_mean_field(psi, a)));
}

double variance(const StateVector& psi, const MeanFieldObservable& a) {
  const CVector image = apply_mean_field(psi, a);
  const double mean = std::real(psi.amplitudes().dot(image));
  return std::max(0.0, image.squaredNorm() - mean * mean);
}

double variance(const ProductState& rho, const HamiltonianSchedule& s, const MeanFieldObservable& a, double tol) {
  double second = 0, first = 0;
  for (const auto& [p, branch] : rho.branches()) {
    const auto evolved = evolve_continuous(branch, s, tol);
    const CVector image = apply_mean_field(evolved, a);
    first += p * std::real(evolved.amplitudes().dot(image));
    second += p * image.squaredNorm();
  }
  return std::max(0.0, second - first * first);
}

}  // namespace chromlc
