#include "kolmo/state_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace kolmo {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json ext_json(const ExtRational& v) { return ext_str(v); }

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + ": missing field '" + key + "'");
  return *it;
}

Rational rational_field(const ordered_json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_string()) throw ParseError(path + "." + key + ": expected a \"p/q\" string");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(path + "." + key + ": " + e.what());
  }
}

int int_field(const ordered_json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_number_integer()) throw ParseError(path + "." + key + ": expected an integer");
  return v.get<int>();
}

}  // namespace

std::string state_to_json(const RefinementState& state) {
  ordered_json j;
  j["n"] = state.n;
  j["epsilon"] = state.epsilon.str();
  j["level"] = state.level;
  ordered_json towns = ordered_json::array();
  for (const Town& t : state.towns) {
    ordered_json o;
    o["start"] = t.start.str();
    o["end"] = t.end.str();
    o["value"] = t.value.str();
    o["origin"] = std::string(to_string(t.origin));
    o["birth_level"] = t.birth_level;
    towns.push_back(std::move(o));
  }
  j["towns"] = std::move(towns);
  return j.dump(1) + "\n";
}

RefinementState state_from_json(const std::string& text, const std::string& source) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": byte " + std::to_string(e.byte) + ": malformed JSON");
  }
  try {
    RefinementState s;
    s.n = int_field(j, "n", "$");
    s.epsilon = rational_field(j, "epsilon", "$");
    s.level = int_field(j, "level", "$");
    const auto& towns = field(j, "towns", "$");
    if (!towns.is_array()) throw ParseError("$.towns: expected an array");
    for (std::size_t i = 0; i < towns.size(); ++i) {
      const std::string path = "$.towns[" + std::to_string(i) + "]";
      Town t;
      t.start = rational_field(towns[i], "start", path);
      t.end = rational_field(towns[i], "end", path);
      t.value = rational_field(towns[i], "value", path);
      const auto& origin = field(towns[i], "origin", path);
      if (!origin.is_string()) throw ParseError(path + ".origin: expected a string");
      try {
        t.origin = parse_origin(origin.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ParseError(path + ".origin: " + e.what());
      }
      t.birth_level = int_field(towns[i], "birth_level", path);
      s.towns.push_back(std::move(t));
    }
    return s;
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_state(const std::filesystem::path& path, const RefinementState& state) { write_text(path, state_to_json(state)); }

RefinementState read_state(const std::filesystem::path& path) { return state_from_json(read_text(path), path.string()); }

std::string audit_to_jsonl(const LevelAudit& audit) {
  std::string out;
  for (const PlugSolution& p : audit.plugs) {
    ordered_json o;
    o["type"] = "plug";
    o["level"] = audit.level;
    o["hole"] = {p.hole.left_end.str(), p.hole.right_end.str()};
    o["nu"] = p.nu;
    ordered_json ends = ordered_json::array();
    for (const Interval& e : p.endpoints) ends.push_back({e.lo.str(), e.hi.str()});
    o["endpoints"] = std::move(ends);
    ordered_json vals = ordered_json::array();
    for (const Rational& v : p.values) vals.push_back(v.str());
    o["values"] = std::move(vals);
    o["m_hat"] = p.m_hat.str();
    out += o.dump() + "\n";
  }
  for (const BreakPlan& b : audit.breaks) {
    ordered_json o;
    o["type"] = "break";
    o["level"] = audit.level;
    o["town"] = b.town_index;
    o["p"] = b.p.str();
    o["rho_plus"] = ext_json(b.rho_plus);
    o["rho_minus"] = ext_json(b.rho_minus);
    o["delta_plus"] = ext_json(b.delta_plus);
    o["delta_minus"] = ext_json(b.delta_minus);
    o["rho"] = b.rho.str();
    o["eta"] = b.eta.str();
    out += o.dump() + "\n";
  }
  return out;
}

std::string manifest_to_json(const BuildManifest& m) {
  ordered_json j;
  j["n"] = m.n;
  j["epsilon"] = m.epsilon.str();
  j["levels"] = m.levels;
  j["deterministic"] = m.deterministic;
  j["tool_version"] = m.tool_version;
  j["state_files"] = m.state_files;
  j["report_files"] = m.report_files;
  return j.dump(2) + "\n";
}

std::string psi_csv(const RationalPL& psi, int samples, int digits) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  std::string out = "x,psi\n";
  const Rational lo = psi.lo();
  const Rational width = psi.hi() - lo;
  for (int i = 0; i < samples; ++i) {
    const Rational x = lo + width * rat(i, samples - 1);
    out += x.decimal(digits) + "," + psi.eval(x).decimal(digits) + "\n";
  }
  return out;
}

std::string knots_json(const RationalPL& f) {
  ordered_json arr = ordered_json::array();
  for (const auto& k : f.knots()) arr.push_back({{"x", k.x.str()}, {"y", k.y.str()}});
  ordered_json j;
  j["knots"] = std::move(arr);
  return j.dump(1) + "\n";
}

std::string chi_json(const OuterState& outer, int digits) {
  ordered_json j;
  j["round"] = outer.r;
  j["j_r"] = outer.j_r;
  j["M"] = outer.M.str(digits);
  ordered_json chi = ordered_json::array();
  for (const BigPL& f : outer.chi) {
    ordered_json knots = ordered_json::array();
    for (const auto& k : f.knots()) knots.push_back({{"x", k.x.str(digits)}, {"y", k.y.str(digits)}});
    chi.push_back(std::move(knots));
  }
  j["chi"] = std::move(chi);
  return j.dump() + "\n";
}

std::string rounds_csv(const std::vector<RoundRow>& rows, int digits) {
  std::string out = "round,j_r,M_r\n";
  for (const RoundRow& r : rows) out += std::to_string(r.round) + "," + std::to_string(r.j_r) + "," + r.M.str(digits) + "\n";
  return out;
}

std::string report_json(const std::vector<VerificationReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json o;
    o["level"] = r.level;
    o["max_diameter"] = r.max_diameter.str();
    o["diameter_target"] = r.diameter_target.str();
    o["min_coverage"] = r.min_coverage;
    o["lipschitz"] = r.lipschitz.str();
    o["diameter_ok"] = r.diameter_ok;
    o["coverage_ok"] = r.coverage_ok;
    o["monotone"] = r.monotone;
    o["slope_cap_ok"] = r.slope_cap_ok;
    o["image_separation_ok"] = r.image_separation_ok;
    o["min_image_gap"] = r.min_image_gap.str(20);
    ordered_json f = ordered_json::array();
    for (const auto& x : r.failures) f.push_back({{"item", x.item}, {"detail", x.detail}});
    o["failures"] = std::move(f);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

}  // namespace kolmo
