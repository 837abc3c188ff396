#include "chromlc/analysis.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <thread>

#include "chromlc/error.hpp"
#include "chromlc/generate.hpp"
#include "chromlc/simulator.hpp"
#include "json.hpp"

namespace chromlc {

int default_thread_count() {
  if (const char* env = std::getenv("CHROMLC_THREADS")) {
    const int requested = std::atoi(env);
    if (requested > 0) return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs body(i) for i in [0, count); results are written by index so the
// outcome does not depend on scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<StateVector> random_states(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<StateVector> out;
  const auto dim = Eigen::Index{1} << n;
  for (int i = 0; i < count; ++i) {
    CVector v(dim);
    for (Eigen::Index j = 0; j < dim; ++j) v(j) = Complex(normal(rng), normal(rng));
    out.emplace_back(n, v / v.norm());
  }
  return out;
}

}  // namespace

ConvergenceStudy convergence_study(const HamiltonianSchedule& s, const std::vector<double>& epsilons,
                                   const ConvergenceOptions& options) {
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0)) throw Error(ErrorKind::BadParams, "epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw Error(ErrorKind::BadParams, "epsilons must be strictly decreasing");
  }
  ConvergenceStudy study;
  const auto index = integrated_chromatic_index(s, options.index_samples);
  study.integrated_index = index.integral;
  study.index_error = index.error_estimate;

  const bool spectral = s.n_qubits() <= kMaxFullUnitaryQubits;
  study.metric = spectral ? "spectral" : "fidelity";

  CMatrix reference_unitary;
  std::vector<StateVector> inputs, references;
  if (spectral) {
    reference_unitary = full_unitary(s, options.reference_tol);
  } else {
    inputs = random_states(s.n_qubits(), options.fidelity_states, options.seed);
    for (const auto& psi : inputs) references.push_back(evolve_continuous(psi, s, options.reference_tol));
  }

  study.rows.resize(epsilons.size());
  parallel_for(static_cast<int>(epsilons.size()), options.threads, [&](int i) {
    const auto start = std::chrono::steady_clock::now();
    const auto compiled = compile(s, epsilons[static_cast<std::size_t>(i)], 1);
    ConvergenceRow row;
    row.epsilon = epsilons[static_cast<std::size_t>(i)];
    row.steps = compiled.report.step_count;
    row.weighted_depth = compiled.report.weighted_depth;
    row.index_gap = std::abs(row.weighted_depth - study.integrated_index);
    if (spectral) {
      row.error = spectral_distance(full_unitary(compiled.gates), reference_unitary);
    } else {
      for (std::size_t j = 0; j < inputs.size(); ++j) {
        const auto out = run_schedule(inputs[j], compiled.gates);
        row.error = std::max(row.error, (out.amplitudes() - references[j].amplitudes()).norm());
      }
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    study.rows[static_cast<std::size_t>(i)] = row;
  });
  return study;
}

RatioCheck check_ratios(const std::vector<double>& errors, double lo, double hi, double active_below, double floor) {
  RatioCheck out;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double a = errors[i], b = errors[i + 1];
    if (a >= active_below) continue;
    if (a < floor && b < floor) continue;
    const double ratio = b > 0 ? a / b : std::numeric_limits<double>::infinity();
    out.ratios.push_back(ratio);
    if (!(ratio >= lo && ratio <= hi)) {
      out.passed = false;
      if (out.message.empty())
        out.message = "error ratio " + format_number(ratio) + " at index " + std::to_string(i) + " outside [" +
                      format_number(lo) + ", " + format_number(hi) + "]";
    }
  }
  return out;
}

double variance_bound(int n, double alpha) { return n / std::pow(1 - 2 * alpha, 4); }

std::vector<VarianceTrialRecord> variance_bound_experiment(int n, double alpha, int trials, std::uint64_t seed,
                                                           const VarianceOptions& options) {
  if (!(alpha >= 0 && alpha < 0.5)) throw Error(ErrorKind::BadParams, "bound requires alpha < 1/2");
  if (n < 2 || n > 12) throw Error(ErrorKind::BadParams, "variance experiments need 2 <= n <= 12");
  if (trials < 1) throw Error(ErrorKind::BadParams, "trials must be positive");

  std::vector<VarianceTrialRecord> records(static_cast<std::size_t>(trials));
  parallel_for(trials, options.threads, [&](int trial) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(trial);
    std::seed_seq seq{static_cast<std::uint32_t>(trial_seed), static_cast<std::uint32_t>(trial_seed >> 32), 0x5eedu};
    std::mt19937_64 rng(seq);

    GeneratorParams params;
    params.n = n;
    params.duration = 1.0;
    params.coupling = 1.0;
    params.edge_probability = 0.4;
    params.segments = 4;

    HamiltonianSchedule schedule;
    double index = 0;
    do {
      params.seed = rng();
      schedule = generate(GeneratorKind::RandomGraph, params);
      index = integrated_chromatic_index(schedule, 1).integral;
    } while (index < 1e-9);
    schedule = schedule.scaled(alpha / index);

    const auto observable = MeanFieldObservable::random(n, rng);
    StateVector initial(n);
    if (options.random_product_states) {
      std::normal_distribution<double> normal(0.0, 1.0);
      std::vector<Eigen::Vector2cd> qubits;
      for (int j = 0; j < n; ++j)
        qubits.emplace_back(Complex(normal(rng), normal(rng)), Complex(normal(rng), normal(rng)));
      initial = product_state(qubits);
    }
    const auto evolved = evolve_continuous(initial, schedule, options.tol);

    VarianceTrialRecord rec;
    rec.seed = trial_seed;
    rec.n = n;
    rec.alpha = integrated_chromatic_index(schedule, 1).integral;
    rec.variance = variance(evolved, observable);
    rec.bound = variance_bound(n, alpha);
    rec.slack = rec.bound - rec.variance;
    records[static_cast<std::size_t>(trial)] = rec;
  });
  return records;
}

TrotterComparison trotter_comparison(const HamiltonianSchedule& s, const std::vector<int>& m_list,
                                     const std::vector<double>& epsilons, double reference_tol) {
  if (s.segments().size() != 1 || !s.is_piecewise_constant())
    throw Error(ErrorKind::NotConstant, "trotter comparison needs a single constant segment");
  TrotterComparison out;
  out.integrated_index = integrated_chromatic_index(s, 1).integral;
  const CMatrix reference = full_unitary(s, reference_tol);
  for (int m : m_list) {
    const auto gates = trotterize(s, m);
    out.rows.push_back({"trotter", static_cast<double>(m), gates.steps.size(), weighted_depth(gates),
                        spectral_distance(full_unitary(gates), reference)});
  }
  for (double eps : epsilons) {
    const auto compiled = compile(s, eps, 1);
    out.rows.push_back({"compile", eps, compiled.gates.steps.size(), compiled.report.weighted_depth,
                        spectral_distance(full_unitary(compiled.gates), reference)});
  }
  return out;
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
  auto quote = [](const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  auto line = [&](const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += quote(fields[i]);
    }
    return out + "\n";
  };
  std::string out = line(table.header);
  for (const auto& row : table.rows) out += line(row);
  return out;
}

Table to_table(const ConvergenceStudy& study, bool with_timing) {
  Table t;
  t.header = {"epsilon", "error", "steps", "weighted_depth", "integrated_index", "index_gap", "metric"};
  if (with_timing) t.header.push_back("wall_seconds");
  for (const auto& r : study.rows) {
    std::vector<std::string> row{format_number(r.epsilon),        format_number(r.error),
                                 std::to_string(r.steps),         format_number(r.weighted_depth),
                                 format_number(study.integrated_index), format_number(r.index_gap),
                                 study.metric};
    if (with_timing) row.push_back(format_number(r.wall_seconds));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table to_table(const std::vector<VarianceTrialRecord>& records) {
  Table t;
  t.header = {"seed", "n", "alpha", "variance", "bound", "slack"};
  for (const auto& r : records)
    t.rows.push_back({std::to_string(r.seed), std::to_string(r.n), format_number(r.alpha), format_number(r.variance),
                      format_number(r.bound), format_number(r.slack)});
  return t;
}

Table to_table(const TrotterComparison& comparison) {
  Table t;
  t.header = {"method", "parameter", "steps", "weighted_depth", "error", "integrated_index"};
  for (const auto& r : comparison.rows)
    t.rows.push_back({r.method, format_number(r.parameter), std::to_string(r.steps), format_number(r.weighted_depth),
                      format_number(r.error), format_number(comparison.integrated_index)});
  return t;
}

std::string json_summary(const std::string& study, const std::string& params_json, const Table& table) {
  nlohmann::ordered_json doc;
  doc["study"] = study;
  doc["params"] = nlohmann::ordered_json::parse(params_json);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < table.header.size() && i < row.size(); ++i) {
      const auto& field = row[i];
      const char* end = field.data() + field.size();
      std::int64_t whole = 0;
      double value = 0;
      if (const auto res = std::from_chars(field.data(), end, whole); res.ec == std::errc() && res.ptr == end)
        obj[table.header[i]] = whole;
      else if (const auto res2 = std::from_chars(field.data(), end, value); res2.ec == std::errc() && res2.ptr == end)
        obj[table.header[i]] = value;
      else
        obj[table.header[i]] = field;
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace chromlc
