#include "kolmo/cli.hpp"
#include "kolmo/inner_builder.hpp"
#include "kolmo/state_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace kolmo;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run kolmo_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kolmo-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_SUITE("cli-io") {
  TEST_CASE("state JSON round-trips exactly") {
    for (const auto& s : build(2, rat(1, 5), 6)) {
      const std::string text = state_to_json(s);
      CHECK(state_from_json(text) == s);
      CHECK(state_to_json(state_from_json(text)) == text);
    }
  }

  TEST_CASE("parse errors carry a location") {
    try {
      state_from_json("{\"n\": 2", "x.json");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("x.json") != std::string::npos);
      CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
    auto text = state_to_json(build(2, rat(1, 5), 2).back());
    text.replace(text.find("\"start\": \"") + 10, 0, "q");
    try {
      state_from_json(text, "y.json");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("$.towns[0].start") != std::string::npos);
    }
  }

  TEST_CASE("build writes one state per level plus audit and manifest") {
    const auto dir = scratch("build");
    const auto r = kolmo_cli({"build", "--n", "2", "--epsilon", "1/5", "--levels", "4", "--out", dir.string()});
    CHECK(r.code == 0);
    for (int j = 0; j <= 4; ++j) CHECK(fs::exists(dir / ("level_0" + std::to_string(j) + ".json")));
    CHECK(fs::exists(dir / "audit.jsonl"));
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(read_state(dir / "level_04.json") == build(2, rat(1, 5), 4).back());

    const auto zero = scratch("build0");
    CHECK(kolmo_cli({"build", "--levels", "0", "--out", zero.string()}).code == 0);
    CHECK(fs::exists(zero / "level_00.json"));
    CHECK_FALSE(fs::exists(zero / "level_01.json"));

    CHECK(kolmo_cli({"build", "--n", "2", "--epsilon", "1/3", "--out", zero.string()}).code == 2);
  }

  TEST_CASE("verify") {
    const auto dir = scratch("verify");
    REQUIRE(kolmo_cli({"build", "--levels", "4", "--epsilon", "1/5", "--out", dir.string()}).code == 0);
    const auto ok = kolmo_cli({"verify", (dir / "level_03.json").string(), (dir / "level_04.json").string(), "--report",
                               (dir / "report.json").string()});
    CHECK(ok.code == 0);
    CHECK(fs::exists(dir / "report.json"));
    CHECK(max_family_gaps(read_state(dir / "level_03.json")) == 1);
    CHECK(max_family_gaps(read_state(dir / "level_04.json")) == 1);

    auto s = read_state(dir / "level_03.json");
    s.towns[2].value = s.towns[1].value;
    write_state(dir / "tampered.json", s);
    const auto bad = kolmo_cli({"verify", (dir / "tampered.json").string()});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL") != std::string::npos);

    CHECK(kolmo_cli({"verify"}).code == 2);
    write_text(dir / "broken.json", "{\"n\": ");
    const auto broken = kolmo_cli({"verify", (dir / "broken.json").string()});
    CHECK(broken.code == 2);
    CHECK(broken.err.find("broken.json") != std::string::npos);
  }

  TEST_CASE("export") {
    const auto dir = scratch("export");
    REQUIRE(kolmo_cli({"build", "--levels", "5", "--epsilon", "1/5", "--out", dir.string()}).code == 0);
    const auto knots = kolmo_cli({"export", (dir / "level_01.json").string(), "--format", "knots"});
    CHECK(knots.code == 0);
    CHECK(knots.out.find("\"-1/15\"") != std::string::npos);
    const auto f = from_state(read_state(dir / "level_01.json"));
    CHECK(f.size() == 4);

    const auto csv = kolmo_cli({"export", (dir / "level_05.json").string(), "--format", "csv", "--samples", "1001"});
    REQUIRE(csv.code == 0);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "x,psi");
    double prev = -1;
    int rows = 0;
    while (std::getline(lines, line)) {
      const double y = std::stod(line.substr(line.find(',') + 1));
      CHECK(y >= prev);
      prev = y;
      ++rows;
    }
    CHECK(rows == 1001);

    const auto svg = kolmo_cli({"export", dir.string(), "--format", "svg", "--out", (dir / "towns.svg").string()});
    CHECK(svg.code == 0);
    CHECK(read_text(dir / "towns.svg").find("<svg") != std::string::npos);
    CHECK(kolmo_cli({"export", dir.string(), "--format", "svg", "--svg", "psi"}).out.find("polyline") != std::string::npos);
    CHECK(kolmo_cli({"export", dir.string(), "--format", "pdf"}).code == 2);
  }

  TEST_CASE("decompose") {
    const auto dir = scratch("decompose");
    REQUIRE(kolmo_cli({"build", "--levels", "4", "--epsilon", "1/5", "--out", dir.string()}).code == 0);
    const auto c = kolmo_cli({"decompose", "--function", "const:3", dir.string(), "--rounds", "1", "--grid", "11", "--out",
                              (dir / "rounds.csv").string(), "--chi", (dir / "chi.json").string()});
    CHECK(c.code == 0);
    CHECK(read_text(dir / "rounds.csv").rfind("round,j_r,M_r\n0,0,3\n", 0) == 0);
    CHECK(fs::exists(dir / "chi.json"));
    const auto deep = kolmo_cli({"decompose", "--function", "sum", dir.string(), "--rounds", "2", "--grid", "11"});
    CHECK(deep.code == 3);
    CHECK(deep.err.find("build psi deeper") != std::string::npos);
    CHECK(kolmo_cli({"decompose", "--function", "nope", dir.string()}).code == 2);
  }

  TEST_CASE("counterexample command") {
    const auto dir = scratch("cx");
    const auto r = kolmo_cli({"counterexample", "--k-max", "2", "--plot-k", "1", "--plot-p", "2", "--plot-out",
                              (dir / "stairs.csv").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("1/2") != std::string::npos);
    CHECK(read_text(dir / "stairs.csv").rfind("x,psi\n", 0) == 0);
  }

  TEST_CASE("builds are byte-identical across runs") {
    const auto a = scratch("det-a");
    const auto b = scratch("det-b");
    REQUIRE(kolmo_cli({"build", "--levels", "6", "--out", a.string()}).code == 0);
    REQUIRE(kolmo_cli({"build", "--levels", "6", "--out", b.string()}).code == 0);
    for (const auto& entry : fs::directory_iterator(a)) {
      CHECK(read_text(entry.path()) == read_text(b / entry.path().filename()));
    }
  }
}
