#include <functional>
#include <string>

#include "chromlc/compiler.hpp"
#include "chromlc/error.hpp"
#include "chromlc/generate.hpp"
#include "chromlc/io.hpp"
#include "doctest.h"

using namespace chromlc;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::BadParams;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("schedule roundtrip is exact") {
  for (auto kind : {GeneratorKind::Chain, GeneratorKind::CompleteMeanField, GeneratorKind::DisjointPairs,
                    GeneratorKind::RandomGraph, GeneratorKind::RandomTimeVarying}) {
    GeneratorParams p;
    p.n = 6;
    p.segments = 3;
    p.degree = 3;
    p.duration = 1.7;
    p.seed = 1234;
    p.local_field = 0.25;
    const auto s = generate(kind, p);
    const std::string text = serialize(s);
    const auto parsed = parse_schedule(text);
    CHECK(parsed.warnings.empty());
    CHECK(serialize(parsed.schedule) == text);
    REQUIRE(parsed.schedule.segments().size() == s.segments().size());
    for (std::size_t i = 0; i < s.segments().size(); ++i) {
      CHECK(parsed.schedule.segments()[i].t_end == s.segments()[i].t_end);
      for (std::size_t j = 0; j < s.segments()[i].terms.size(); ++j)
        CHECK(parsed.schedule.segments()[i].terms[j].coeffs == s.segments()[i].terms[j].coeffs);
    }
    CHECK(detect_format(text) == DocumentFormat::Schedule);
  }
}

TEST_CASE("gate schedule roundtrip is exact") {
  GeneratorParams p;
  p.n = 5;
  p.seed = 9;
  p.segments = 2;
  const auto compiled = compile(generate(GeneratorKind::RandomGraph, p), 0.25);
  const std::string text = serialize(compiled.gates);
  const auto parsed = parse_gates(text);
  CHECK(serialize(parsed) == text);
  CHECK(weighted_depth(parsed) == weighted_depth(compiled.gates));
  CHECK(detect_format(text) == DocumentFormat::Gates);
}

TEST_CASE("pair with equal indices names segment and term") {
  const std::string text = R"({"format": "chromlc-schedule", "version": 1, "n_qubits": 3,
    "segments": [{"t_start": 0, "t_end": 1, "terms": [
      {"pair": [0, 1], "coeffs": {"ZZ": [1]}},
      {"pair": [2, 2], "coeffs": {"XX": [1]}}]}]})";
  const auto msg = message_of([&] { parse_schedule(text); });
  CHECK(msg.find("segment 0, term 1") != std::string::npos);
  CHECK(msg.find("ParseError") != std::string::npos);
}

TEST_CASE("empty segment list") {
  const std::string text = R"({"format": "chromlc-schedule", "version": 1, "n_qubits": 2, "segments": []})";
  CHECK(message_of([&] { parse_schedule(text); }).find("schedule must cover [0,T]") != std::string::npos);
}

TEST_CASE("version mismatch and malformed documents") {
  const std::string v2 = R"({"format": "chromlc-schedule", "version": 2, "n_qubits": 2, "segments": []})";
  CHECK(kind_of([&] { parse_schedule(v2); }) == ErrorKind::SchemaVersionMismatch);

  const std::string broken = "{\n  \"format\": \"chromlc-schedule\",\n  \"version\": 1,\n  oops\n}";
  const auto msg = message_of([&] { parse_schedule(broken); });
  CHECK(msg.find("line 4") != std::string::npos);

  const std::string gap = R"({"format": "chromlc-schedule", "version": 1, "n_qubits": 2,
    "segments": [{"t_start": 0, "t_end": 1, "terms": []}, {"t_start": 1.5, "t_end": 2, "terms": []}]})";
  CHECK(kind_of([&] { parse_schedule(gap); }) == ErrorKind::ParseError);

  const std::string bad_key = R"({"format": "chromlc-schedule", "version": 1, "n_qubits": 2,
    "segments": [{"t_start": 0, "t_end": 1, "terms": [{"pair": [0, 1], "coeffs": {"XQ": [1]}}]}]})";
  CHECK(message_of([&] { parse_schedule(bad_key); }).find("XQ") != std::string::npos);

  CHECK(kind_of([&] { detect_format(R"({"format": "other"})"); }) == ErrorKind::ParseError);
}

TEST_CASE("identity component is accepted with a warning") {
  const std::string text = R"({"format": "chromlc-schedule", "version": 1, "n_qubits": 2,
    "segments": [{"t_start": 0, "t_end": 1, "terms": [{"pair": [0, 1], "coeffs": {"II": [3], "ZZ": [1]}}]}]})";
  const auto parsed = parse_schedule(text);
  REQUIRE(parsed.warnings.size() == 1);
  CHECK(parsed.warnings[0].find("II") != std::string::npos);
}

TEST_CASE("gate documents are validated") {
  const std::string overlapping = R"({"format": "chromlc-gates", "version": 1, "n_qubits": 3, "steps": [{"gates": [
    {"pair": [0, 1], "unitary": [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]]], "angle": 0},
    {"pair": [1, 2], "unitary": [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]]], "angle": 0}]}]})";
  CHECK(kind_of([&] { parse_gates(overlapping); }) == ErrorKind::ParseError);

  const std::string wrong_angle = R"({"format": "chromlc-gates", "version": 1, "n_qubits": 2, "steps": [{"gates": [
    {"pair": [0, 1], "unitary": [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]]], "angle": 0.5}]}]})";
  CHECK(message_of([&] { parse_gates(wrong_angle); }).find("angle") != std::string::npos);
}
