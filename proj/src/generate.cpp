#include "chromlc/generate.hpp"

#include <array>
#include <string>

#include "chromlc/error.hpp"

namespace chromlc {

namespace {

constexpr std::array<std::pair<std::string_view, GeneratorKind>, 5> kKinds{{
    {"chain", GeneratorKind::Chain},
    {"complete_mean_field", GeneratorKind::CompleteMeanField},
    {"disjoint_pairs", GeneratorKind::DisjointPairs},
    {"random_graph", GeneratorKind::RandomGraph},
    {"random_time_varying", GeneratorKind::RandomTimeVarying},
}};

PauliCoeffs exchange(double strength) {
  PauliCoeffs c;
  c(1, 1) = c(2, 2) = c(3, 3) = strength / 3.0;
  return c;
}

std::vector<Segment> uniform_segments(const GeneratorParams& p) {
  std::vector<Segment> segs;
  for (int i = 0; i < p.segments; ++i) {
    const double start = (i == 0) ? 0.0 : segs.back().t_end;
    const double end = (i + 1 == p.segments) ? p.duration : p.duration * (i + 1) / p.segments;
    segs.push_back(Segment{start, end, {}});
  }
  return segs;
}

void fold_local_field(std::vector<Segment>& segs, int n, double h) {
  for (auto& seg : segs) {
    for (int j = 0; j < n; ++j) {
      const int partner = (j + 1) % n;
      const int k = std::min(j, partner), l = std::max(j, partner);
      const std::size_t slot = (j == k) ? PauliCoeffs::index(1, 0) : PauliCoeffs::index(0, 1);
      auto it = std::find_if(seg.terms.begin(), seg.terms.end(),
                             [&](const PairTerm& t) { return t.first == k && t.second == l; });
      if (it == seg.terms.end()) {
        seg.terms.push_back(PairTerm{k, l, {}});
        it = std::prev(seg.terms.end());
      }
      auto& poly = it->coeffs[slot];
      if (poly.empty()) poly.push_back(0.0);
      poly[0] += h;
    }
    std::sort(seg.terms.begin(), seg.terms.end(), [](const PairTerm& a, const PairTerm& b) {
      return std::tie(a.first, a.second) < std::tie(b.first, b.second);
    });
  }
}

}  // namespace

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) {
  for (const auto& [label, kind] : kKinds)
    if (label == name) return kind;
  return std::nullopt;
}

std::string_view to_string(GeneratorKind kind) {
  for (const auto& [label, k] : kKinds)
    if (k == kind) return label;
  return "unknown";
}

PauliCoeffs random_pauli_coeffs(std::mt19937_64& rng, double norm) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    PauliCoeffs c;
    for (std::size_t i = 1; i < 16; ++i) c.c[i] = normal(rng);
    const double current = operator_norm(c.to_matrix());
    if (current < 1e-6) continue;
    for (auto& x : c.c) x *= norm / current;
    return c;
  }
}

HamiltonianSchedule generate(GeneratorKind kind, const GeneratorParams& p) {
  if (p.n < 2) throw Error(ErrorKind::BadParams, "n must be at least 2");
  if (p.n > 64) throw Error(ErrorKind::BadParams, "n must be at most 64");
  if (!(p.duration > 0)) throw Error(ErrorKind::BadParams, "duration T must be positive");
  if (!(p.coupling > 0)) throw Error(ErrorKind::BadParams, "coupling must be positive");
  if (p.segments < 1) throw Error(ErrorKind::BadParams, "segments must be at least 1");
  if (!(p.edge_probability >= 0 && p.edge_probability <= 1))
    throw Error(ErrorKind::BadParams, "edge probability must lie in [0, 1]");
  if (p.degree < 0 || p.degree > kMaxPolynomialDegree)
    throw Error(ErrorKind::BadParams, "polynomial degree must lie in [0, 8]");

  std::mt19937_64 rng(p.seed);
  auto segs = uniform_segments(p);

  switch (kind) {
    case GeneratorKind::Chain:
      for (auto& seg : segs)
        for (int k = 0; k + 1 < p.n; ++k) seg.terms.push_back(PairTerm::constant(k, k + 1, exchange(p.coupling)));
      break;
    case GeneratorKind::CompleteMeanField:
      for (auto& seg : segs)
        for (int k = 0; k < p.n; ++k)
          for (int l = k + 1; l < p.n; ++l)
            seg.terms.push_back(PairTerm::constant(k, l, exchange(p.coupling / (p.n - 1))));
      break;
    case GeneratorKind::DisjointPairs:
      for (auto& seg : segs)
        for (int k = 0; k + 1 < p.n; k += 2) seg.terms.push_back(PairTerm::constant(k, k + 1, exchange(p.coupling)));
      break;
    case GeneratorKind::RandomGraph: {
      std::bernoulli_distribution coin(p.edge_probability);
      for (auto& seg : segs)
        for (int k = 0; k < p.n; ++k)
          for (int l = k + 1; l < p.n; ++l)
            if (coin(rng)) seg.terms.push_back(PairTerm::constant(k, l, random_pauli_coeffs(rng, p.coupling)));
      break;
    }
    case GeneratorKind::RandomTimeVarying: {
      std::bernoulli_distribution coin(p.edge_probability);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& seg : segs) {
        for (int k = 0; k < p.n; ++k) {
          for (int l = k + 1; l < p.n; ++l) {
            if (!coin(rng)) continue;
            PairTerm term{k, l, {}};
            double norm = 0;
            while (norm < 1e-6) {
              for (std::size_t i = 1; i < 16; ++i) {
                term.coeffs[i].assign(static_cast<std::size_t>(p.degree) + 1, 0.0);
                for (auto& x : term.coeffs[i]) x = normal(rng);
              }
              norm = operator_norm(term.matrix(seg.midpoint()));
            }
            for (auto& poly : term.coeffs)
              for (auto& x : poly) x *= p.coupling / norm;
            seg.terms.push_back(std::move(term));
          }
        }
      }
      break;
    }
  }

  if (p.local_field != 0.0) fold_local_field(segs, p.n, p.local_field);
  return HamiltonianSchedule(p.n, std::move(segs));
}

}  // namespace chromlc
