#include "chromlc/io.hpp"

#include <fstream>
#include <sstream>

#include "chromlc/error.hpp"
#include "json.hpp"

namespace chromlc {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where.empty() ? what : where + ": " + what);
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    fail("line " + std::to_string(line), e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

const json& array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  return v;
}

void check_header(const json& doc, std::string_view format) {
  const auto& f = field(doc, "format", "");
  if (!f.is_string() || f.get<std::string>() != format)
    fail("format", "expected \"" + std::string(format) + "\"");
  const int version = integer(field(doc, "version", ""), "version");
  if (version != kFormatVersion)
    throw Error(ErrorKind::SchemaVersionMismatch,
                "document version " + std::to_string(version) + ", supported " + std::to_string(kFormatVersion));
}

VertexPair read_pair(const json& v, const std::string& where) {
  const auto& arr = array(v, where);
  if (arr.size() != 2) fail(where, "pair must have two entries");
  const int k = integer(arr[0], where + "[0]");
  const int l = integer(arr[1], where + "[1]");
  if (k == l) fail(where, "pair indices must differ (k = l = " + std::to_string(k) + ")");
  return {k, l};
}

}  // namespace

std::string serialize(const HamiltonianSchedule& s) {
  ordered_json doc;
  doc["format"] = kScheduleFormat;
  doc["version"] = kFormatVersion;
  doc["n_qubits"] = s.n_qubits();
  auto segments = ordered_json::array();
  for (const auto& seg : s.segments()) {
    ordered_json js;
    js["t_start"] = seg.t_start;
    js["t_end"] = seg.t_end;
    auto terms = ordered_json::array();
    for (const auto& term : seg.terms) {
      ordered_json jt;
      jt["pair"] = {term.first, term.second};
      auto coeffs = ordered_json::object();
      for (std::size_t i = 0; i < 16; ++i)
        if (!term.coeffs[i].empty()) coeffs[pauli_label(i)] = term.coeffs[i];
      jt["coeffs"] = std::move(coeffs);
      terms.push_back(std::move(jt));
    }
    js["terms"] = std::move(terms);
    segments.push_back(std::move(js));
  }
  doc["segments"] = std::move(segments);
  return doc.dump(2) + "\n";
}

ParsedSchedule parse_schedule(std::string_view text) {
  const json doc = parse_document(text);
  check_header(doc, kScheduleFormat);
  ParsedSchedule out;
  const int n = integer(field(doc, "n_qubits", ""), "n_qubits");
  const auto& jsegs = array(field(doc, "segments", ""), "segments");
  if (jsegs.empty()) fail("segments", "schedule must cover [0,T]");

  std::vector<Segment> segs;
  for (std::size_t i = 0; i < jsegs.size(); ++i) {
    const std::string where = "segment " + std::to_string(i);
    const auto& js = jsegs[i];
    Segment seg;
    seg.t_start = number(field(js, "t_start", where), where + ".t_start");
    seg.t_end = number(field(js, "t_end", where), where + ".t_end");
    const auto& jterms = array(field(js, "terms", where), where + ".terms");
    for (std::size_t j = 0; j < jterms.size(); ++j) {
      const std::string twhere = where + ", term " + std::to_string(j);
      const auto& jt = jterms[j];
      PairTerm term;
      std::tie(term.first, term.second) = read_pair(field(jt, "pair", twhere), twhere + ".pair");
      const auto& jc = field(jt, "coeffs", twhere);
      if (!jc.is_object()) fail(twhere + ".coeffs", "expected an object");
      for (auto it = jc.begin(); it != jc.end(); ++it) {
        const auto slot = pauli_index(it.key());
        if (!slot) fail(twhere + ".coeffs", "unknown Pauli key \"" + it.key() + "\"");
        const auto& poly = array(it.value(), twhere + ".coeffs." + it.key());
        for (const auto& x : poly) term.coeffs[*slot].push_back(number(x, twhere + ".coeffs." + it.key()));
        if (*slot == 0)
          out.warnings.push_back(twhere + ": \"II\" component only contributes a global phase");
      }
      seg.terms.push_back(std::move(term));
    }
    segs.push_back(std::move(seg));
  }
  try {
    out.schedule = HamiltonianSchedule(n, std::move(segs));
  } catch (const Error& e) {
    fail("", e.what());
  }
  return out;
}

std::string serialize(const GateSchedule& g) {
  ordered_json doc;
  doc["format"] = kGatesFormat;
  doc["version"] = kFormatVersion;
  doc["n_qubits"] = g.n_qubits;
  auto steps = ordered_json::array();
  for (const auto& step : g.steps) {
    auto gates = ordered_json::array();
    for (const auto& gate : step.gates) {
      ordered_json jg;
      jg["pair"] = {gate.first, gate.second};
      auto rows = ordered_json::array();
      for (int r = 0; r < 4; ++r) {
        auto row = ordered_json::array();
        for (int c = 0; c < 4; ++c) row.push_back({gate.unitary(r, c).real(), gate.unitary(r, c).imag()});
        rows.push_back(std::move(row));
      }
      jg["unitary"] = std::move(rows);
      jg["angle"] = gate.angle;
      gates.push_back(std::move(jg));
    }
    ordered_json js;
    js["gates"] = std::move(gates);
    steps.push_back(std::move(js));
  }
  doc["steps"] = std::move(steps);
  return doc.dump(2) + "\n";
}

GateSchedule parse_gates(std::string_view text) {
  const json doc = parse_document(text);
  check_header(doc, kGatesFormat);
  GateSchedule out;
  out.n_qubits = integer(field(doc, "n_qubits", ""), "n_qubits");
  const auto& jsteps = array(field(doc, "steps", ""), "steps");
  for (std::size_t i = 0; i < jsteps.size(); ++i) {
    const std::string where = "step " + std::to_string(i);
    const auto& jgates = array(field(jsteps[i], "gates", where), where + ".gates");
    Step step;
    for (std::size_t j = 0; j < jgates.size(); ++j) {
      const std::string gwhere = where + ", gate " + std::to_string(j);
      const auto& jg = jgates[j];
      Gate gate;
      std::tie(gate.first, gate.second) = read_pair(field(jg, "pair", gwhere), gwhere + ".pair");
      const auto& rows = array(field(jg, "unitary", gwhere), gwhere + ".unitary");
      if (rows.size() != 4) fail(gwhere + ".unitary", "expected 4 rows");
      for (int r = 0; r < 4; ++r) {
        const auto& row = array(rows[static_cast<std::size_t>(r)], gwhere + ".unitary");
        if (row.size() != 4) fail(gwhere + ".unitary", "expected 4 columns");
        for (int c = 0; c < 4; ++c) {
          const auto& z = array(row[static_cast<std::size_t>(c)], gwhere + ".unitary");
          if (z.size() != 2) fail(gwhere + ".unitary", "entries are [re, im]");
          gate.unitary(r, c) = Complex(number(z[0], gwhere + ".unitary"), number(z[1], gwhere + ".unitary"));
        }
      }
      gate.angle = number(field(jg, "angle", gwhere), gwhere + ".angle");
      step.gates.push_back(std::move(gate));
    }
    out.steps.push_back(std::move(step));
  }
  try {
    out.validate();
  } catch (const Error& e) {
    fail("", e.what());
  }
  return out;
}

DocumentFormat detect_format(std::string_view text) {
  const json doc = parse_document(text);
  const auto& f = field(doc, "format", "");
  if (f.is_string()) {
    if (f.get<std::string>() == kScheduleFormat) return DocumentFormat::Schedule;
    if (f.get<std::string>() == kGatesFormat) return DocumentFormat::Gates;
  }
  fail("format", "unknown document format");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::BadParams, "cannot write " + path.string());
  out << text;
}

}  // namespace chromlc
