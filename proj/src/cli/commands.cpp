#include "kolmo/cli.hpp"

#include "kolmo/counterexample.hpp"
#include "kolmo/inner_builder.hpp"
#include "kolmo/kr_outer.hpp"
#include "kolmo/separation.hpp"
#include "kolmo/state_io.hpp"
#include "kolmo/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iomanip>

namespace fs = std::filesystem;

namespace kolmo::cli {

namespace {

std::string level_file(int level) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "level_%02d.json", level);
  return buf;
}

/// Expands directories to their level_*.json files, in name order.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("level_", 0) == 0 && entry.path().extension() == ".json") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<RefinementState> load_states(const std::vector<std::string>& inputs) {
  std::vector<RefinementState> states;
  for (const auto& p : expand_inputs(inputs)) states.push_back(read_state(p));
  if (states.empty()) throw ParseError("no state files found");
  return states;
}

struct BuildArgs {
  int n = 2;
  std::string epsilon;
  int levels = 4;
  std::string out = "kolmo-build";
};

int do_build(const BuildArgs& a, std::ostream& out) {
  const Rational eps = a.epsilon.empty() ? rat(1, 2L * a.n + 1) : Rational::parse(a.epsilon);
  std::vector<LevelAudit> audit;
  const auto states = build(a.n, eps, a.levels, {}, &audit);
  fs::create_directories(a.out);
  BuildManifest m;
  m.n = a.n;
  m.epsilon = eps;
  m.levels = a.levels;
  for (const auto& s : states) {
    const std::string name = level_file(s.level);
    write_state(fs::path(a.out) / name, s);
    m.state_files.push_back(name);
  }
  std::string log;
  for (const auto& l : audit) log += audit_to_jsonl(l);
  write_text(fs::path(a.out) / "audit.jsonl", log);
  m.report_files.push_back("audit.jsonl");
  write_text(fs::path(a.out) / "manifest.json", manifest_to_json(m));
  out << "built levels 0.." << a.levels << " (n=" << a.n << ", epsilon=" << eps.str() << ") into " << a.out << "\n";
  for (const auto& s : states) out << "  level " << s.level << ": " << s.towns.size() << " towns\n";
  return kPass;
}

int do_verify(const std::vector<std::string>& inputs, const std::string& report_path, std::ostream& out) {
  const auto states = load_states(inputs);
  std::vector<VerificationReport> reports;
  out << std::left << std::setw(7) << "level" << std::setw(8) << "towns" << std::setw(14) << "max_diam" << std::setw(9)
      << "min_cov" << std::setw(12) << "family_gaps" << std::setw(14) << "lipschitz" << std::setw(10) << "monotone"
      << "result\n";
  bool ok = true;
  for (const auto& s : states) {
    auto bad = s.validate();
    VerificationReport r = check_criterion(s);
    for (auto& b : bad) r.failures.push_back({"state", b});
    ok = ok && r.passed();
    out << std::setw(7) << s.level << std::setw(8) << s.towns.size() << std::setw(14) << r.max_diameter.decimal(8)
        << std::setw(9) << r.min_coverage << std::setw(12) << (2 * s.n + 1 - r.min_coverage) << std::setw(14)
        << r.lipschitz.decimal(8) << std::setw(10) << (r.monotone ? "yes" : "no") << (r.passed() ? "pass" : "FAIL") << "\n";
    for (const auto& f : r.failures) out << "    " << f.item << ": " << f.detail << "\n";
    reports.push_back(std::move(r));
  }
  if (!report_path.empty()) write_text(report_path, report_json(reports));
  return ok ? kPass : kVerifyFailed;
}

struct ExportArgs {
  std::vector<std::string> inputs;
  std::string format;
  std::string svg_kind = "towns";
  int samples = 10001;
  int digits = 12;
  std::string out;
};

int do_export(const ExportArgs& a, std::ostream& out) {
  const auto states = load_states(a.inputs);
  std::string text;
  if (a.format == "csv") {
    text = psi_csv(from_state(states.back()), a.samples, a.digits);
  } else if (a.format == "knots") {
    text = knots_json(from_state(states.back()));
  } else if (a.format == "svg") {
    if (a.svg_kind == "psi") {
      text = psi_svg(from_state(states.back()), std::min(a.samples, 20001));
    } else {
      text = towns_svg(states);
    }
  }
  if (a.out.empty()) {
    out << text;
  } else {
    write_text(a.out, text);
  }
  return kPass;
}

struct DecomposeArgs {
  std::string function;
  std::vector<std::string> inputs;
  int rounds = 3;
  int grid = 101;
  std::string out;
  std::string chi_out;
};

int do_decompose(const DecomposeArgs& a, std::ostream& out) {
  const auto states = load_states(a.inputs);
  const Embedding e = Embedding::from_state(states.back());
  const TestFunction f = make_test_function(a.function, e.n);
  OuterOptions opts;
  opts.grid = a.grid;
  SeparationCache cache;
  OuterState st = initial_outer_state(f, e, opts);
  std::vector<RoundRow> rows{{0, 0, st.M}};
  out << "round 0: M_0 = " << st.M.str(17) << "\n";
  for (int r = 1; r <= a.rounds; ++r) {
    st = outer_round(f, e, states, st, opts, &cache);
    rows.push_back({st.r, st.j_r, st.M});
    out << "round " << st.r << ": j_r = " << st.j_r << ", M_r = " << st.M.str(17)
        << ", ratio = " << (rows[rows.size() - 2].M.is_zero() ? std::string("-") : (st.M / rows[rows.size() - 2].M).str(6))
        << ", cube coverage >= " << st.min_cube_coverage << "\n";
  }
  if (!a.out.empty()) write_text(a.out, rounds_csv(rows));
  if (!a.chi_out.empty()) write_text(a.chi_out, chi_json(st));
  return kPass;
}

struct CounterArgs {
  int k_max = 2;
  int gamma = 10;
  std::string epsilon = "1/50";
  int plot_k = 0;
  int plot_p = 1;
  int plot_q = 0;
  std::string plot_out;
};

std::string show_box(const std::vector<std::optional<Rational>>& box) {
  std::string s = "(";
  for (std::size_t i = 0; i < box.size(); ++i) s += (i ? ", " : "") + (box[i] ? box[i]->str() : std::string("gap"));
  return s + ")";
}

int do_counterexample(const CounterArgs& a, std::ostream& out) {
  LinearCandidate c;
  c.gamma = a.gamma;
  c.epsilon = Rational::parse(a.epsilon);
  const auto bad = c.validate();
  if (!bad.empty()) throw std::invalid_argument(bad.front());
  const BadLemmaReport report = check_bad_lemmas(c, a.k_max);
  out << "finite levels (gamma=" << c.gamma << ", epsilon=" << c.epsilon.str() << ")\n";
  out << std::left << std::setw(6) << "item" << std::setw(4) << "k" << std::setw(10) << "checks" << "result\n";
  for (const auto& row : report.rows) {
    out << std::setw(6) << row.item << std::setw(4) << row.k << std::setw(10) << row.checks
        << (row.passed ? "pass" : "FAIL") << (row.sampled ? " (sampled)" : "") << (row.detail.empty() ? "" : "  " + row.detail)
        << "\n";
  }
  const CollisionWitness w = collision_witness(c);
  out << "limit collision under Psi^0(x) = x1 + sqrt2 x2:\n";
  out << "  Psi(0, sqrt2/4) = " << w.value1.str() << "   box " << show_box(w.box1) << "\n";
  out << "  Psi(1/2, 0)     = " << w.value2.str() << "   box " << show_box(w.box2) << "\n";
  const bool collision = w.value1 == w.value2 && !w.same_box;
  out << (collision ? "  equal values in different boxes: separation is lost in the limit\n"
                    : "  no collision found\n");
  if (a.plot_k > 0) {
    const QuadPL f = bad_psi_level(c, a.plot_k, a.plot_p, a.plot_q);
    std::string csv = "x,psi\n";
    for (const auto& k : f.knots()) csv += k.x.decimal(12) + "," + std::to_string(k.y.to_double()) + "\n";
    if (a.plot_out.empty()) {
      out << csv;
    } else {
      write_text(a.plot_out, csv);
    }
  }
  return report.passed() && collision ? kPass : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lipschitz inner function for the Kolmogorov superposition theorem", "kolmo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  BuildArgs ba;
  auto* b = app.add_subcommand("build", "run the town refinement and write one state file per level");
  b->add_option("--n", ba.n, "spatial dimension")->check(CLI::Range(2, 16));
  b->add_option("--epsilon", ba.epsilon, "shift as p/q (default 1/(2n+1))");
  b->add_option("--levels", ba.levels, "refinement levels")->check(CLI::NonNegativeNumber);
  b->add_option("--out", ba.out, "output directory");

  std::vector<std::string> verify_inputs;
  std::string report_path;
  auto* v = app.add_subcommand("verify", "check the interval criterion on state files");
  v->add_option("states", verify_inputs, "state files or build directories")->required();
  v->add_option("--report", report_path, "write the JSON report here");

  ExportArgs ea;
  auto* x = app.add_subcommand("export", "export psi samples, knots or SVG");
  x->add_option("states", ea.inputs, "state files or build directories")->required();
  x->add_option("--format", ea.format, "csv | svg | knots")->required()->check(CLI::IsMember({"csv", "svg", "knots"}));
  x->add_option("--svg", ea.svg_kind, "towns | psi")->check(CLI::IsMember({"towns", "psi"}));
  x->add_option("--samples", ea.samples, "CSV/SVG sample count")->check(CLI::Range(2, 10000000));
  x->add_option("--digits", ea.digits, "decimal digits in CSV")->check(CLI::Range(1, 100));
  x->add_option("--out", ea.out, "output file (default stdout)");

  DecomposeArgs da;
  auto* d = app.add_subcommand("decompose", "run the outer-function iteration for a test function");
  d->add_option("--function", da.function, "const:c | sum | product | runge2d")->required();
  d->add_option("states", da.inputs, "all levels 0..J (files or a build directory)")->required();
  d->add_option("--rounds", da.rounds, "outer rounds")->check(CLI::Range(1, 100));
  d->add_option("--grid", da.grid, "grid points per axis for M_r")->check(CLI::Range(2, 2001));
  d->add_option("--out", da.out, "round,j_r,M_r CSV");
  d->add_option("--chi", da.chi_out, "final chi knots as JSON");

  CounterArgs ca;
  auto* c = app.add_subcommand("counterexample", "finite-level checks and the limit collision of the linear candidate");
  c->add_option("--k-max", ca.k_max, "deepest level for the lemma checks")->check(CLI::Range(1, 4));
  c->add_option("--gamma", ca.gamma, "base");
  c->add_option("--epsilon", ca.epsilon, "shift as p/q");
  c->add_option("--plot-k", ca.plot_k, "emit staircase knots for this level");
  c->add_option("--plot-p", ca.plot_p, "coordinate of the staircase");
  c->add_option("--plot-q", ca.plot_q, "shift of the staircase");
  c->add_option("--plot-out", ca.plot_out, "staircase CSV file (default stdout)");

  std::vector<std::string> argv_store{"kolmo"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*b) return do_build(ba, out);
    if (*v) return do_verify(verify_inputs, report_path, out);
    if (*x) return do_export(ea, out);
    if (*d) return do_decompose(da, out);
    if (*c) return do_counterexample(ca, out);
  } catch (const BuildError& e) {
    err << "error: " << e.what() << "\n";
    return kBuilderError;
  } catch (const DeeperPsiRequired& e) {
    err << "error: " << e.what() << "\n";
    return kBuilderError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBuilderError;
  }
  return kUsage;
}

}  // namespace kolmo::cli
