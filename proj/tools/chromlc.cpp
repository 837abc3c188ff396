// chromlc command-line frontend. Machine output goes to stdout (or -o),
// diagnostics to stderr. Exit codes: 0 ok, 1 verification failed, 2 usage,
// parse or parameter error.

#include <algorithm>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chromlc/analysis.hpp"
#include "chromlc/compiler.hpp"
#include "chromlc/error.hpp"
#include "chromlc/generate.hpp"
#include "chromlc/io.hpp"
#include "chromlc/simulator.hpp"
#include "json.hpp"

using namespace chromlc;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

constexpr std::string_view kProductStateFormat = "chromlc-product-state";

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << text << std::flush;
  else
    write_text_file(path, text);
}

std::string render(const std::string& study, const ordered_json& params, const Table& table, const std::string& format) {
  return format == "csv" ? to_csv(table) : json_summary(study, params.dump(), table);
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

HamiltonianSchedule load_schedule(const std::string& path) {
  const auto text = read_text_file(path);
  if (detect_format(text) == DocumentFormat::Gates) {
    std::cerr << "note: " << path << " is a gate schedule; using its continuous embedding\n";
    return embed_discrete(parse_gates(text));
  }
  auto parsed = parse_schedule(text);
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
  return std::move(parsed.schedule);
}

// {"format": "chromlc-product-state", "version": 1,
//  "qubits": [[[re, im], [re, im]], ...]}  one pure qubit per entry, qubit 0 first
StateVector load_product_state(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  if (doc.value("format", "") != kProductStateFormat)
    throw Error(ErrorKind::ParseError, path + ": expected format \"" + std::string(kProductStateFormat) + "\"");
  if (doc.value("version", 0) != kFormatVersion) throw Error(ErrorKind::SchemaVersionMismatch, path);
  std::vector<Eigen::Vector2cd> qubits;
  try {
    for (const auto& q : doc.at("qubits")) {
      if (q.size() != 2) throw Error(ErrorKind::ParseError, path + ": each qubit needs two amplitudes");
      Eigen::Vector2cd v;
      for (int i = 0; i < 2; ++i) v(i) = Complex(q[static_cast<std::size_t>(i)].at(0).get<double>(),
                                                  q[static_cast<std::size_t>(i)].at(1).get<double>());
      qubits.push_back(v);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": qubits: " + e.what());
  }
  return product_state(qubits);
}

StateVector initial_state(const std::string& spec, int n) {
  if (spec.rfind("basis:", 0) == 0) {
    std::uint64_t index = 0;
    try {
      index = std::stoull(spec.substr(6));
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadParams, "--state basis:<index> needs a non-negative integer");
    }
    return StateVector(n, index);
  }
  if (spec == "ghz") return ghz_state(n);
  if (spec == "plus") return uniform_superposition(n);
  auto psi = load_product_state(spec);
  if (psi.n_qubits() != n) throw Error(ErrorKind::DimensionMismatch, "product state has the wrong number of qubits");
  return psi;
}

MeanFieldObservable observable(const std::string& name, int n) {
  if (name == "x") return MeanFieldObservable::uniform(n, pauli(1));
  if (name == "y") return MeanFieldObservable::uniform(n, pauli(2));
  if (name == "z") return MeanFieldObservable::uniform(n, pauli(3));
  throw Error(ErrorKind::BadParams, "--observable must be x, y or z");
}

ordered_json report_json(const CompilationReport& r) {
  ordered_json doc;
  doc["epsilon"] = r.epsilon;
  doc["step_count"] = r.step_count;
  doc["weighted_depth"] = r.weighted_depth;
  doc["riemann_sum"] = r.riemann_sum;
  doc["integrated_index"] = r.source_index.integral;
  doc["index_error_estimate"] = r.source_index.error_estimate;
  auto intervals = ordered_json::array();
  for (const auto& iv : r.intervals) {
    ordered_json j;
    j["t_start"] = iv.t_start;
    j["length"] = iv.length;
    j["first_step"] = iv.first_step;
    j["step_count"] = iv.step_count;
    auto levels = ordered_json::array();
    for (const auto& level : iv.levels)
      levels.push_back({{"threshold", level.threshold}, {"chromatic_index", level.chromatic_index}, {"exact", level.exact}});
    j["levels"] = std::move(levels);
    intervals.push_back(std::move(j));
  }
  doc["intervals"] = std::move(intervals);
  return doc;
}

// ---- subcommands ------------------------------------------------------------

struct GenerateArgs {
  std::string kind;
  GeneratorParams params;
  std::string output;
};

int run_generate(const GenerateArgs& a) {
  const auto kind = parse_generator_kind(a.kind);
  if (!kind) throw Error(ErrorKind::BadParams, "unknown generator kind \"" + a.kind + "\"");
  emit(serialize(generate(*kind, a.params)), a.output);
  return 0;
}

struct IndexArgs {
  std::string input;
  int samples = kDefaultIndexSamples;
  std::string format = "json";
  std::string output;
};

int run_index(const IndexArgs& a) {
  const auto s = load_schedule(a.input);
  const auto profile = integrated_chromatic_index(s, a.samples);
  std::cerr << "I = " << format_number(profile.integral) << "\n";
  if (a.format == "csv") {
    Table t;
    t.header = {"t", "W"};
    for (std::size_t i = 0; i < profile.times.size(); ++i)
      t.rows.push_back({format_number(profile.times[i]), format_number(profile.values[i])});
    emit(to_csv(t), a.output);
    return 0;
  }
  ordered_json doc;
  doc["integrated_index"] = profile.integral;
  doc["error_estimate"] = profile.error_estimate;
  doc["samples_per_segment"] = a.samples;
  auto rows = ordered_json::array();
  for (std::size_t i = 0; i < profile.times.size(); ++i) rows.push_back({{"t", profile.times[i]}, {"W", profile.values[i]}});
  doc["profile"] = std::move(rows);
  emit(dump(doc), a.output);
  return 0;
}

struct CompileArgs {
  std::string input;
  double epsilon = 0;
  int samples = kDefaultIndexSamples;
  std::string output;
  std::string report;
};

int run_compile(const CompileArgs& a) {
  const auto s = load_schedule(a.input);
  const auto c = compile(s, a.epsilon, a.samples);
  std::cerr << c.report.step_count << " steps, weighted depth " << format_number(c.report.weighted_depth)
            << ", I = " << format_number(c.report.source_index.integral) << "\n";
  emit(serialize(c.gates), a.output);
  if (!a.report.empty()) write_text_file(a.report, dump(report_json(c.report)));
  return 0;
}

struct SimulateArgs {
  std::string input;
  std::string state = "basis:0";
  std::string observable = "z";
  double tol = kDefaultEvolutionTolerance;
  int top = 8;
  std::string output;
};

int run_simulate(const SimulateArgs& a) {
  const auto text = read_text_file(a.input);
  const bool gates = detect_format(text) == DocumentFormat::Gates;
  GateSchedule g;
  HamiltonianSchedule s;
  int n = 0;
  if (gates) {
    g = parse_gates(text);
    n = g.n_qubits;
  } else {
    auto parsed = parse_schedule(text);
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << a.input << ": " << w << "\n";
    s = std::move(parsed.schedule);
    n = s.n_qubits();
  }
  const auto psi0 = initial_state(a.state, n);
  const auto psi = gates ? run_schedule(psi0, g) : evolve_continuous(psi0, s, a.tol);
  const auto obs = observable(a.observable, n);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(psi.amplitudes().size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& amps = psi.amplitudes();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return std::norm(amps(x)) > std::norm(amps(y)); });

  ordered_json doc;
  doc["input"] = gates ? "gates" : "schedule";
  doc["n_qubits"] = n;
  doc["norm"] = psi.norm();
  doc["observable"] = a.observable;
  doc["expectation"] = expectation(psi, obs);
  doc["variance"] = variance(psi, obs);
  auto top = ordered_json::array();
  for (std::size_t i = 0; i < order.size() && static_cast<int>(i) < a.top; ++i) {
    std::string bits;
    for (int q = 0; q < n; ++q) bits += ((order[i] >> (n - 1 - q)) & 1) ? '1' : '0';
    const Complex z = amps(order[i]);
    top.push_back({{"basis", bits}, {"amplitude", {z.real(), z.imag()}}, {"probability", std::norm(z)}});
  }
  doc["largest_amplitudes"] = std::move(top);
  emit(dump(doc), a.output);
  return 0;
}

struct ConvergenceArgs {
  std::string input;
  std::vector<double> epsilons;
  double tol = 1e-10;
  int states = 20;
  std::uint64_t seed = 0;
  int samples = 2048;
  bool timing = false;
  std::string format = "csv";
  std::string output;
};

bool divides_segments(const HamiltonianSchedule& s, double eps) {
  for (const auto& seg : s.segments()) {
    const double parts = seg.length() / eps;
    if (std::abs(parts - std::round(parts)) > 1e-9) return false;
  }
  return true;
}

int run_convergence(const ConvergenceArgs& a) {
  const auto s = load_schedule(a.input);
  ConvergenceOptions opts;
  opts.reference_tol = a.tol;
  opts.fidelity_states = a.states;
  opts.seed = a.seed;
  opts.index_samples = a.samples;
  opts.threads = default_thread_count();
  const auto study = convergence_study(s, a.epsilons, opts);

  bool ok = true;
  std::vector<double> errors;
  for (const auto& row : study.rows) {
    errors.push_back(row.error);
    if (s.is_piecewise_constant() && divides_segments(s, row.epsilon) && row.index_gap > 1e-9) {
      std::cerr << "FAIL: |weighted depth - I| = " << format_number(row.index_gap) << " at epsilon "
                << format_number(row.epsilon) << "\n";
      ok = false;
    }
  }
  const auto ratios = check_ratios(errors);
  if (!ratios.passed) {
    std::cerr << "FAIL: " << ratios.message << "\n";
    ok = false;
  }
  if (ratios.ratios.empty()) std::cerr << "note: no error pair below 1e-2; ratio check is vacuous\n";

  ordered_json params;
  params["input"] = a.input;
  params["metric"] = study.metric;
  params["integrated_index"] = study.integrated_index;
  params["reference_tol"] = a.tol;
  emit(render("convergence", params, to_table(study, a.timing), a.format), a.output);
  std::cerr << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : kExitVerificationFailed;
}

struct VarianceArgs {
  int n = 8;
  double alpha = 0.25;
  int trials = 100;
  std::uint64_t seed = 0;
  bool product_states = false;
  double tol = 1e-10;
  std::string format = "csv";
  std::string output;
};

int run_variance(const VarianceArgs& a) {
  VarianceOptions opts;
  opts.random_product_states = a.product_states;
  opts.tol = a.tol;
  opts.threads = default_thread_count();
  const auto records = variance_bound_experiment(a.n, a.alpha, a.trials, a.seed, opts);
  int violations = 0;
  double worst = 0;
  for (const auto& r : records) {
    if (r.slack < 0) ++violations;
    worst = std::max(worst, r.variance / r.bound);
  }
  ordered_json params;
  params["n"] = a.n;
  params["alpha"] = a.alpha;
  params["trials"] = a.trials;
  params["seed"] = a.seed;
  params["initial_states"] = a.product_states ? "random_product" : "zero";
  emit(render("variance", params, to_table(records), a.format), a.output);
  std::cerr << violations << " violations, max V/bound " << format_number(worst) << "\n";
  return violations == 0 ? 0 : kExitVerificationFailed;
}

struct TrotterArgs {
  std::string input;
  std::vector<int> m_list;
  std::vector<double> epsilons;
  double tol = 1e-10;
  std::string format = "csv";
  std::string output;
};

int run_trotter(const TrotterArgs& a) {
  const auto s = load_schedule(a.input);
  const auto cmp = trotter_comparison(s, a.m_list, a.epsilons, a.tol);
  ordered_json params;
  params["input"] = a.input;
  params["integrated_index"] = cmp.integrated_index;
  emit(render("trotter", params, to_table(cmp), a.format), a.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chromlc: chromatic-index compiler and verification toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "chromlc 1.0");

  const auto formats = CLI::IsMember({"json", "csv"});

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "write a synthetic Hamiltonian schedule");
  generate_cmd->add_option("kind", gen.kind, "chain | complete_mean_field | disjoint_pairs | random_graph | random_time_varying")
      ->required();
  generate_cmd->add_option("--n", gen.params.n, "qubits")->capture_default_str();
  generate_cmd->add_option("--t", gen.params.duration, "duration T")->capture_default_str();
  generate_cmd->add_option("--coupling", gen.params.coupling, "pair-term operator norm")->capture_default_str();
  generate_cmd->add_option("--p", gen.params.edge_probability, "edge probability (random kinds)")->capture_default_str();
  generate_cmd->add_option("--segments", gen.params.segments, "equal-length segments")->capture_default_str();
  generate_cmd->add_option("--degree", gen.params.degree, "polynomial degree (random_time_varying)")->capture_default_str();
  generate_cmd->add_option("--field", gen.params.local_field, "local X field strength")->capture_default_str();
  generate_cmd->add_option("--seed", gen.params.seed, "RNG seed")->capture_default_str();
  generate_cmd->add_option("-o,--output", gen.output, "output file (default stdout)");

  IndexArgs idx;
  auto* index_cmd = app.add_subcommand("index", "weighted chromatic index profile and I");
  index_cmd->add_option("schedule", idx.input, "schedule or gate file")->required()->check(CLI::ExistingFile);
  index_cmd->add_option("--samples", idx.samples, "midpoint samples per segment")->capture_default_str()->check(CLI::PositiveNumber);
  index_cmd->add_option("--format", idx.format)->capture_default_str()->check(formats);
  index_cmd->add_option("-o,--output", idx.output, "output file (default stdout)");

  CompileArgs comp;
  auto* compile_cmd = app.add_subcommand("compile", "compile a schedule into parallel gate steps");
  compile_cmd->add_option("schedule", comp.input)->required()->check(CLI::ExistingFile);
  compile_cmd->add_option("--epsilon", comp.epsilon, "subinterval length bound")->required();
  compile_cmd->add_option("--samples", comp.samples, "samples per segment for I in the report")->capture_default_str();
  compile_cmd->add_option("-o,--output", comp.output, "gate file (default stdout)");
  compile_cmd->add_option("--report", comp.report, "write a compilation report (JSON)");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "run a gate or Hamiltonian schedule on a state");
  simulate_cmd->add_option("input", sim.input, "gate or schedule file")->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("--state", sim.state, "basis:<k> | ghz | plus | <product-state file>")->capture_default_str();
  simulate_cmd->add_option("--observable", sim.observable, "mean-field Pauli: x | y | z")->capture_default_str();
  simulate_cmd->add_option("--tol", sim.tol, "evolution tolerance")->capture_default_str();
  simulate_cmd->add_option("--top", sim.top, "amplitudes to list")->capture_default_str();
  simulate_cmd->add_option("-o,--output", sim.output, "output file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "verification experiments");
  verify_cmd->require_subcommand(1);

  ConvergenceArgs conv;
  auto* convergence_cmd = verify_cmd->add_subcommand("theorem1", "compile convergence study");
  convergence_cmd->alias("convergence");
  convergence_cmd->add_option("schedule", conv.input)->required()->check(CLI::ExistingFile);
  convergence_cmd->add_option("--epsilons", conv.epsilons, "strictly decreasing list")->required()->delimiter(',');
  convergence_cmd->add_option("--tol", conv.tol, "reference evolution tolerance")->capture_default_str();
  convergence_cmd->add_option("--states", conv.states, "random inputs for the fidelity metric (n > 6)")->capture_default_str();
  convergence_cmd->add_option("--seed", conv.seed)->capture_default_str();
  convergence_cmd->add_option("--samples", conv.samples, "samples per segment for I")->capture_default_str();
  convergence_cmd->add_flag("--timing", conv.timing, "add a wall-time column (output no longer reproducible)");
  convergence_cmd->add_option("--format", conv.format)->capture_default_str()->check(formats);
  convergence_cmd->add_option("-o,--output", conv.output);

  VarianceArgs var;
  auto* variance_cmd = verify_cmd->add_subcommand("variance", "variance bound trials");
  variance_cmd->add_option("--n", var.n)->capture_default_str();
  variance_cmd->add_option("--alpha", var.alpha, "target integrated chromatic index")->capture_default_str();
  variance_cmd->add_option("--trials", var.trials)->capture_default_str();
  variance_cmd->add_option("--seed", var.seed)->capture_default_str();
  variance_cmd->add_flag("--product-states", var.product_states, "random pure product inputs instead of |0...0>");
  variance_cmd->add_option("--tol", var.tol)->capture_default_str();
  variance_cmd->add_option("--format", var.format)->capture_default_str()->check(formats);
  variance_cmd->add_option("-o,--output", var.output);

  TrotterArgs tr;
  auto* trotter_cmd = app.add_subcommand("trotter", "product formula vs chromatic compilation");
  trotter_cmd->add_option("schedule", tr.input)->required()->check(CLI::ExistingFile);
  trotter_cmd->add_option("--m-list", tr.m_list, "Trotter step counts")->required()->delimiter(',');
  trotter_cmd->add_option("--epsilons", tr.epsilons, "compile epsilons")->delimiter(',');
  trotter_cmd->add_option("--tol", tr.tol, "reference evolution tolerance")->capture_default_str();
  trotter_cmd->add_option("--format", tr.format)->capture_default_str()->check(formats);
  trotter_cmd->add_option("-o,--output", tr.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*generate_cmd) return run_generate(gen);
    if (*index_cmd) return run_index(idx);
    if (*compile_cmd) return run_compile(comp);
    if (*simulate_cmd) return run_simulate(sim);
    if (*convergence_cmd) return run_convergence(conv);
    if (*variance_cmd) return run_variance(var);
    if (*trotter_cmd) return run_trotter(tr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
