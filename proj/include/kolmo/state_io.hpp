#pragma once

#include "kolmo/inner_builder.hpp"
#include "kolmo/kr_outer.hpp"
#include "kolmo/piecewise_linear.hpp"
#include "kolmo/separation.hpp"
#include "kolmo/town_system.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace kolmo {

inline constexpr const char* kToolVersion = "1.0.0";

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"n", "epsilon", "level", "towns": [{"start", "end", "value", "origin", "birth_level"}]}.
std::string state_to_json(const RefinementState& state);

/// Throws ParseError naming `source` and the offending byte offset or field path.
RefinementState state_from_json(const std::string& text, const std::string& source = "<input>");

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

void write_state(const std::filesystem::path& path, const RefinementState& state);
RefinementState read_state(const std::filesystem::path& path);

/// One JSON line per plug solution, then one per break.
std::string audit_to_jsonl(const LevelAudit& audit);

struct BuildManifest {
  int n = 2;
  Rational epsilon;
  int levels = 0;
  bool deterministic = true;
  std::string tool_version = kToolVersion;
  std::vector<std::string> state_files;
  std::vector<std::string> report_files;
};

std::string manifest_to_json(const BuildManifest& m);

/// "x,psi" header and `samples` evenly spaced rows over the knot range, decimals truncated to `digits`.
std::string psi_csv(const RationalPL& psi, int samples, int digits = 12);

/// {"knots": [{"x": "p/q", "y": "p/q"}, ...]}.
std::string knots_json(const RationalPL& f);

std::string chi_json(const OuterState& outer, int digits = 40);

struct RoundRow {
  int round = 0;
  int j_r = 0;
  BigFloat M;
};

/// "round,j_r,M_r" rows.
std::string rounds_csv(const std::vector<RoundRow>& rows, int digits = 17);

std::string report_json(const std::vector<VerificationReport>& reports);

}  // namespace kolmo
