#include "mfd_cli/batch.hpp"
#include "mfd_cli/commands.hpp"
#include "mfd_cli/report.hpp"
#include "mfd_cli/input_file.hpp"

#include "mfd/error.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace mfd;
using namespace mfd::cli;
using nlohmann::json;

namespace {

const std::string kFixtures = MFD_FIXTURE_DIR;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mfd_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("input parsing") {
  SUBCASE("delta entries") {
    InputFile s = parse_input(R"({"D": [[1, 0], [1, 1]], "delta": [["3/2", null], [0.125, [7, 3]]]})");
    REQUIRE(s.delta);
    CHECK(s.delta->value(0, 0) == Scalar::ratio(3, 2));
    CHECK_FALSE(s.delta->has(0, 1));
    CHECK(s.delta->value(1, 0) == Scalar::ratio(1, 8));
    CHECK(s.delta->value(1, 1) == Scalar::ratio(7, 3));
    CHECK(s.inclusion().a() == 2);
  }
  SUBCASE("float mode from the file and from the override") {
    InputFile f = parse_input(R"({"D": [[1, 0], [1, 1]], "delta": [["1/3", null], [2, 1]], "number_mode": "float"})");
    CHECK(f.mode == NumberMode::kFloat);
    CHECK_FALSE(f.delta->value(0, 0).is_exact());
    InputFile r = parse_input(R"({"D": [[2]], "number_mode": "float"})", "x", NumberMode::kRational);
    CHECK(r.dims(0, 0).is_exact());
  }
  SUBCASE("Lambda stands in for D") {
    InputFile s = parse_input(R"({"Lambda": [[1, 0], [1, 1]], "m0": [1, 2]})");
    CHECK(s.dims == Matrix{{1, 0}, {1, 1}});
    CHECK(s.m0 == Vector{1, 2});
  }
  SUBCASE("syntax error carries line and column") {
    try {
      parse_input("{\n  \"D\": [[1, 0],\n        [1 1]]\n}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.location()["line"] == 3);
      CHECK(e.location()["column"].get<int>() > 1);
      CHECK(e.to_json()["error"] == "ParseError");
    }
  }
  SUBCASE("schema errors carry the field and its line") {
    try {
      parse_input("{\n  \"a\": 2,\n  \"D\": [[1, 0], [1, \"x\"]]\n}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.location()["field"] == "D[1][1]");
      CHECK(e.location()["line"] == 3);
    }
    CHECK_THROWS_AS(parse_input(R"({"delta": [[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_input(R"({"D": [[1, 2]], "a": 3})"), ParseError);
    CHECK_THROWS_AS(parse_input(R"({"D": [[1, null]]})"), ParseError);
    CHECK_THROWS_AS(parse_input(R"({"D": [[1, 2], [3]]})"), ParseError);
    CHECK_THROWS_AS(parse_input(R"({"D": [[1]], "delta": [[1, 2]]})"), ParseError);
    CHECK_THROWS_AS(parse_input(R"({"D": [[1]], "number_mode": "complex"})"), ParseError);
    CHECK_THROWS_AS(parse_input(R"({"D": [[1]], "tolerance": -1})"), ParseError);
    CHECK_THROWS_AS(parse_input(R"([1, 2])"), ParseError);
    CHECK_THROWS_AS(load_input(kFixtures + "/does-not-exist.json"), ParseError);
  }
  SUBCASE("invalid inclusions are parse errors with the domain cause") {
    try {
      parse_input(R"({"D": [[1, 0], [0, 1]]})");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.location()["cause"]["error"] == "DisconnectedSupport");
    }
  }
}

TEST_CASE("digest") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("command examples") {
  Options options;
  SUBCASE("tower on A4 gives exact Fibonacci levels") {
    options.steps = 3;
    options.mode = NumberMode::kRational;
    Report r = run_file("tower", fixture("a4.json"), options);
    REQUIRE(r.exit_code == kExitOk);
    const json& levels = r.result["levels"];
    REQUIRE(levels.size() == 4);
    CHECK(levels[1]["distortion"] == json::parse(R"([["5/2", "3/2"], ["5/3", "1"]])"));
    for (int n = 0; n <= 3; ++n)
      CHECK(matrix_from_json(levels[n]["distortion"], NumberMode::kRational) == oracle::fibonacci_level(n));
    options.format = OutputFormat::kTable;
    const std::string table = render(r, OutputFormat::kTable);
    CHECK(table.find("5/2") != std::string::npos);
    CHECK(table.find("5/3") != std::string::npos);
  }
  SUBCASE("strict downward on A4 level 0") {
    Report r = run_file("downward", fixture("a4.json"), options);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.result["status"] == "Infeasible");
    CHECK(r.result["certificate"]["candidate_pi"] == json::parse(R"(["1/2", "0"])"));
    options.feasibility = FeasibilityMode::kMarkovTunnel;
    CHECK(run_file("downward", fixture("a4.json"), options).result["status"] == "MarkovTunnelOnly");
  }
  SUBCASE("perron of a factor") {
    Report r = run_file("perron", fixture("scalar.json"), options);
    CHECK(r.result["d"] == "3");
    CHECK(r.result["alpha"] == json::parse(R"(["1"])"));
    CHECK(r.result["beta"] == json::parse(R"(["1"])"));
  }
  SUBCASE("homogeneity") {
    CHECK(run_file("homogeneity", fixture("a4.json"), options).result["summary"] == "all-false");
    CHECK(run_file("homogeneity", fixture("homog.json"), options).result["summary"] == "all-true");
  }
  SUBCASE("morita rescale and explicit weights") {
    Report r = run_file("morita-rescale", fixture("a4.json"), options);
    CHECK(parse_scalar(r.result["rho"][1].get<std::string>(), NumberMode::kFloat).to_double() ==
          doctest::Approx(oracle::kPhi).epsilon(1e-12));
    options.rho = "1,2";
    Report w = run_file("morita-rescale", fixture("a4.json"), options);
    CHECK(w.result["distortion"] == json::parse(R"([["3", "2"], ["3/2", "1"]])"));
    CHECK(w.result["realizable"] == true);
    options.rho = "1";
    CHECK(run_file("morita-rescale", fixture("a4.json"), options).exit_code == kExitParseError);
  }
  SUBCASE("realizable and extend") {
    Report r = run_file("realizable", fixture("a4.json"), options);
    CHECK(r.result["realizable"] == true);
    CHECK(r.result["eta"] == json::parse(R"(["1", "1"])"));
    Report e = run_file("extend", fixture("a4.json"), options);
    CHECK(e.result["extension"] == json::parse(R"([["2", "1"], ["2", "1"]])"));
  }
  SUBCASE("markov-trace finite-dimensional route") {
    Report r = run_file("markov-trace", fixture("a4.json"), options);
    CHECK(r.result["finite_dimensional"]["distortion"] == json::parse(R"([["2", "1"], ["2", "1"]])"));
    CHECK(r.result["finite_dimensional"]["with_m0"]["m_B"] == json::parse(R"(["3", "2"])"));
  }
  SUBCASE("loop basis") {
    Report r = run_file("loopbasis-verify", fixture("a4.json"), options);
    CHECK(r.result["basis_size"] == 7);
    CHECK(r.result["n1_loops"] == 13);
    CHECK(r.result["pimsner_popa_holds"] == true);
    CHECK(run_file("loopbasis-verify", fixture("homog.json"), options).exit_code == kExitParseError);
  }
  SUBCASE("fixed point mode of tower") {
    options.max_iter = 200;
    Report r = run_file("tower", fixture("a4.json"), options);
    CHECK(r.diagnostics["converged"] == true);
    options.max_iter = 1;
    CHECK(run_file("tower", fixture("a4.json"), options).exit_code == kExitDomainError);
  }
}

TEST_CASE("report-all reproduces the A4 values in one run") {
  Report r = run_file("report-all", fixture("a4.json"), Options{});
  REQUIRE(r.exit_code == kExitOk);
  const json& x = r.result;
  CHECK(x["extend"]["extension"] == json::parse(R"([["2", "1"], ["2", "1"]])"));
  CHECK(x["markov-trace"]["finite_dimensional"]["distortion"] == json::parse(R"([["2", "1"], ["2", "1"]])"));
  CHECK(x["tower"]["levels"][1]["distortion"] == json::parse(R"([["5/2", "3/2"], ["5/3", "1"]])"));
  CHECK(x["downward"]["pi"] == json::parse(R"(["1/2", "0"])"));
  CHECK(x["homogeneity"]["summary"] == "all-false");
  CHECK(x["extremality"]["extremal"] == true);
  CHECK(x["realizable"]["realizable"] == true);
  CHECK(x["loopbasis-verify"]["basis_size"] == 7);
  CHECK(x["loopbasis-verify"]["central_transfer"] == json::parse(R"([["1", "2"], ["0.5", "2"]])"));
  CHECK(x["morita-rescale"]["rho"][0] == "1");

  Report scalar = run_file("report-all", fixture("scalar.json"), Options{});
  CHECK(scalar.exit_code == kExitOk);
  Report homog = run_file("report-all", fixture("homog.json"), Options{});
  CHECK(homog.result["loopbasis-verify"].contains("skipped"));
}

TEST_CASE("reports are byte-stable and round-trip") {
  const std::string first = render(run_file("report-all", fixture("a4.json"), Options{}), OutputFormat::kJson);
  const std::string second = render(run_file("report-all", fixture("a4.json"), Options{}), OutputFormat::kJson);
  CHECK(first == second);

  Options steps;
  steps.steps = 10;
  Report tower = run_file("tower", fixture("a4.json"), steps);
  json reparsed = json::parse(render(tower, OutputFormat::kJson));
  for (int n = 0; n <= 10; ++n)
    CHECK(matrix_from_json(reparsed["result"]["levels"][n]["distortion"], NumberMode::kRational) ==
          oracle::fibonacci_level(n));

  Report perron = run_file("perron", fixture("a4.json"), Options{});
  PerronData p = perron_data(validate_inclusion(Matrix{{1, 0}, {1, 1}}));
  Vector alpha = vector_from_json(json::parse(render(perron, OutputFormat::kJson))["result"]["alpha"], NumberMode::kFloat);
  for (std::size_t k = 0; k < alpha.size(); ++k) CHECK(alpha[k].to_double() == p.alpha[k].to_double());
}

TEST_CASE("error handling") {
  CHECK_THROWS_AS(run("frobnicate", load_input(fixture("a4.json")), Options{}), ParseError);
  CHECK_FALSE(is_command("frobnicate"));
  CHECK(is_command("report-all"));
  CHECK(command_names().size() == 10);

  auto dir = scratch_dir("errors");
  write_file(dir / "cycle.json", R"({"D": [[1, 1], [1, 1]], "delta": [[1, 2], [3, 4]]})");
  Report r = run_file("extend", (dir / "cycle.json").string(), Options{});
  CHECK(r.exit_code == kExitDomainError);
  CHECK((*r.error)["error"] == "CycleViolation");
  CHECK((*r.error)["payload"].contains("cycle"));

  Report missing = run_file("downward", fixture("does-not-exist.json"), Options{});
  CHECK(missing.exit_code == kExitParseError);
  write_file(dir / "bare.json", R"({"D": [[1, 1]]})");
  Report no_delta = run_file("downward", (dir / "bare.json").string(), Options{});
  CHECK(no_delta.exit_code == kExitParseError);
  CHECK((*no_delta.error)["payload"]["field"] == "delta");
}

TEST_CASE("tolerance precedence") {
  InputFile plain = load_input(fixture("a4.json"));
  InputFile with_tol = parse_input(R"({"D": [[1]], "tolerance": "1e-8"})");
  Options none;
  Options flag;
  flag.tol = 1e-4;
  ::unsetenv("MFD_TOLERANCE");
  CHECK(resolve_tolerance(none, plain) == Tolerance::kDefaultEps);
  ::setenv("MFD_TOLERANCE", "1e-6", 1);
  CHECK(resolve_tolerance(none, plain) == 1e-6);
  CHECK(resolve_tolerance(none, with_tol) == 1e-8);
  CHECK(resolve_tolerance(flag, with_tol) == 1e-4);
  ::setenv("MFD_TOLERANCE", "nope", 1);
  CHECK_THROWS_AS(resolve_tolerance(none, plain), ParseError);
  ::unsetenv("MFD_TOLERANCE");
}

TEST_CASE("batch") {
  SUBCASE("homogeneity over the canonical fixtures") {
    auto dir = scratch_dir("batch");
    std::filesystem::copy_file(fixture("homog.json"), dir / "homog.json");
    std::filesystem::copy_file(fixture("a4.json"), dir / "a4.json");
    write_file(dir / "notes.txt", "ignored");
    BatchResult b = run_batch(dir.string(), "homogeneity", Options{});
    REQUIRE(b.entries.size() == 2);
    CHECK(b.entries[0].file == "a4.json");
    CHECK(b.summary()["files"] == json::parse(R"({"a4.json": "all-false", "homog.json": "all-true"})"));
    CHECK(b.passed() == 2);
  }
  SUBCASE("empty directory") {
    BatchResult b = run_batch(scratch_dir("empty").string(), "homogeneity", Options{});
    CHECK(b.entries.empty());
    CHECK(b.summary()["total"] == 0);
  }
  SUBCASE("one malformed file") {
    auto dir = scratch_dir("malformed");
    std::filesystem::copy_file(fixture("homog.json"), dir / "homog.json");
    std::filesystem::copy_file(fixture("a4.json"), dir / "a4.json");
    write_file(dir / "broken.json", "{ \"D\": [[1, 0], [1 ");
    BatchResult b = run_batch(dir.string(), "homogeneity", Options{});
    REQUIRE(b.entries.size() == 3);
    CHECK(b.summary()["files"]["broken.json"] == "parse-error");
    CHECK(b.summary()["files"]["a4.json"] == "all-false");
    CHECK(b.summary()["files"]["homog.json"] == "all-true");
    CHECK(b.failed() == 1);
  }
  SUBCASE("missing directory") { CHECK_THROWS_AS(run_batch("/nonexistent/mfd", "perron", Options{}), ParseError); }
  SUBCASE("deterministic across runs") {
    auto dir = scratch_dir("repeat");
    for (const char* name : {"a4.json", "homog.json", "scalar.json"}) std::filesystem::copy_file(fixture(name), dir / name);
    const std::string first = run_batch(dir.string(), "report-all", Options{}).to_json().dump();
    for (int k = 0; k < 3; ++k) CHECK(run_batch(dir.string(), "report-all", Options{}).to_json().dump() == first);
  }
}
