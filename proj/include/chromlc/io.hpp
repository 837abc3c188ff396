#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "chromlc/gates.hpp"
#include "chromlc/hamiltonian.hpp"

namespace chromlc {

inline constexpr std::string_view kScheduleFormat = "chromlc-schedule";
inline constexpr std::string_view kGatesFormat = "chromlc-gates";
inline constexpr int kFormatVersion = 1;

struct ParsedSchedule {
  HamiltonianSchedule schedule;
  std::vector<std::string> warnings;
};

// Schedule document:
//   {"format": "chromlc-schedule", "version": 1, "n_qubits": n,
//    "segments": [{"t_start": a, "t_end": b,
//                  "terms": [{"pair": [k, l], "coeffs": {"XX": [p0, p1, ...]}}]}]}
// Pauli keys are two letters over IXYZ, first letter on qubit k; missing keys
// are zero; polynomials are ascending-degree in absolute time.
std::string serialize(const HamiltonianSchedule& s);
ParsedSchedule parse_schedule(std::string_view text);

// Gate document:
//   {"format": "chromlc-gates", "version": 1, "n_qubits": n,
//    "steps": [{"gates": [{"pair": [k, l], "unitary": [[[re, im], ...] x4], "angle": a}]}]}
std::string serialize(const GateSchedule& g);
GateSchedule parse_gates(std::string_view text);

enum class DocumentFormat { Schedule, Gates };

// Reads the "format" field only. Throws ParseError for anything else.
DocumentFormat detect_format(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace chromlc
