#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "qwsearch/cli.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/io.hpp"

using namespace qwsearch;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qwsearch_test_" + name);
  fs::remove_all(p);
  return p;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qwsearch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

TEST_CASE("graph spec grammar") {
  const auto lat = parse_graph_spec("lattice:4:6");
  REQUIRE(lat.as_lattice() != nullptr);
  CHECK(lat.as_lattice()->dim == 4);
  CHECK(lat.as_lattice()->side == 6);
  CHECK(lat.num_vertices() == 1296);
  CHECK(parse_graph_spec("complete:1024") == GraphFamily::complete(1024));
  CHECK(parse_graph_spec("hypercube:10") == GraphFamily::hypercube(10));
  CHECK_THROWS_AS(parse_graph_spec("lattice:1:1"), RangeError);
  CHECK_THROWS_AS(parse_graph_spec("complete:1"), RangeError);
  CHECK_THROWS_AS(parse_graph_spec("complete:99999999999999999999999"), RangeError);

  auto position_of = [](const char* text) -> std::size_t {
    try {
      parse_graph_spec(text);
    } catch (const SyntaxError& e) {
      return e.position();
    }
    return 999;
  };
  CHECK(position_of("lattice:x") == 8);
  CHECK(position_of("lattice:3") == 9);
  CHECK(position_of("lattice:3:4:5") == 11);
  CHECK(position_of("torus:3") == 0);
  CHECK(position_of("complete") == 8);
  CHECK(position_of("complete:-4") == 9);
  CHECK(position_of("hypercube:4 ") == 11);
}

TEST_CASE("CSV schemas are stable") {
  CHECK(io::kScanColumns == std::vector<std::string>{"gamma", "ground", "first_excited", "gap",
                                                      "overlap_s_psi0", "overlap_s_psi1",
                                                      "overlap_w_psi0", "overlap_w_psi1"});
  CHECK(io::kScalingColumns == std::vector<std::string>{"num_vertices", "gamma_used", "gap",
                                                         "t_star", "p_star", "runtime_metric"});
  CHECK(io::kSpectrumColumns ==
        std::vector<std::string>{"index", "energy", "fprime", "w_overlap_sq", "s_overlap_sq"});
  CHECK(io::kTraceColumns ==
        std::vector<std::string>{"t", "amplitude_re", "amplitude_im", "probability"});
  CHECK(io::kConstantColumns == std::vector<std::string>{"kind", "j", "d", "num_vertices", "a",
                                                          "value", "error_estimate", "method",
                                                          "truncation"});
  CHECK(io::kBoundColumns == std::vector<std::string>{"graph", "gamma", "gamma_c",
                                                       "above_critical", "bound_id", "lhs", "rhs",
                                                       "slack", "pass"});
  CHECK(io::kCeilingColumns.size() == 12);
  CHECK(io::kPredictionColumns.size() == 16);

  const auto csv = io::to_csv(io::scan_table(
      scan_gamma(GraphFamily::lattice(2, 4), 0.5, 1.5, 3)));
  CHECK(first_line(csv) ==
        "gamma,ground,first_excited,gap,overlap_s_psi0,overlap_s_psi1,overlap_w_psi0,overlap_w_psi1");
}

TEST_CASE("doubles survive the CSV round trip exactly") {
  io::Table t{{"x", "label", "n", "flag", "empty"}, {}};
  const std::vector<double> xs = {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 1.0};
  for (double x : xs) t.add_row({x, std::string("a,\"b\""), std::int64_t{7}, true, {}});
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  const auto text = io::to_csv(t);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  const auto back = io::parse_csv(text);
  CHECK(back.columns == t.columns);
  const auto col = back.numeric_column("x");
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(col[i] == xs[i]);
  CHECK(back.rows[0][1] == "a,\"b\"");
  CHECK(back.rows[0][3] == "true");
  CHECK(back.rows[0][4].empty());

  const auto j = nlohmann::json::parse(io::to_json(t));
  CHECK(j.size() == xs.size());
  CHECK(j[1]["x"].get<double>() == xs[1]);
  CHECK(j[0]["empty"].is_null());
}

TEST_CASE("atomic writes leave no temporary behind") {
  const auto dir = scratch("atomic");
  io::write_atomic(dir / "a.txt", "one");
  io::write_atomic(dir / "a.txt", "two");
  CHECK(io::read_file(dir / "a.txt") == "two");
  CHECK(!fs::exists(dir / "a.txt.tmp"));
}

TEST_CASE("constants command writes the table and a manifest") {
  const auto dir = scratch("constants");
  const auto r = invoke({"constants", "--output", dir.string()});
  REQUIRE(r.code == 0);
  const auto data = io::read_csv(dir / "constants.csv");
  CHECK(data.columns == io::kConstantColumns);
  int i_rows = 0;
  for (const auto& row : data.rows) i_rows += row[0] == "I";
  CHECK(i_rows == 14);
  const auto manifest = nlohmann::json::parse(io::read_file(dir / "constants.manifest.json"));
  CHECK(manifest["config"]["command"] == "constants");
  CHECK(manifest["version"].is_string());
  CHECK(manifest["artifacts"][0] == "constants.csv");
}

TEST_CASE("figures are deterministic and include the secular-function dataset") {
  const auto a = scratch("figures_a"), b = scratch("figures_b");
  REQUIRE(invoke({"figures", "--output", a.string()}).code == 0);
  REQUIRE(invoke({"figures", "--output", b.string()}).code == 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    CHECK(io::read_file(entry.path()) == io::read_file(b / entry.path().filename()));
  }
  CHECK(files >= 16);
  const auto poles = io::read_csv(a / "secular_poles_lattice_2_4.csv");
  const auto e = poles.numeric_column("energy");
  const auto m = poles.numeric_column("multiplicity");
  const std::vector<double> want_e = {0, 2, 4, 6, 8}, want_m = {1, 4, 6, 4, 1};
  REQUIRE(e.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(e[i] == doctest::Approx(want_e[i]));
    CHECK(m[i] == want_m[i]);
  }
  CHECK(fs::exists(a / "scan_complete_1024.csv"));
  CHECK(fs::exists(a / "scan_lattice_2_32.gp"));

  const auto svg = scratch("figures_svg");
  REQUIRE(invoke({"figures", "--output", svg.string(), "--plot", "svg"}).code == 0);
  CHECK(io::read_file(svg / "secular_lattice_2_4.svg").rfind("<svg", 0) == 0);
}

TEST_CASE("spectrum, scan, evolve, critical and scaling commands") {
  const auto dir = scratch("commands");
  const std::string out = dir.string();
  CHECK(invoke({"spectrum", "--graph", "lattice:2:4", "--gamma", "1", "--output", out}).code == 0);
  CHECK(io::read_csv(dir / "spectrum.csv").rows.size() == 5);

  CHECK(invoke({"scan", "--graph", "complete:64", "--points", "11", "--output", out}).code == 0);
  CHECK(io::read_csv(dir / "scan.csv").rows.size() == 11);

  CHECK(invoke({"evolve", "--graph", "complete:64", "--gamma", "0.015625", "--t-max", "20",
                "--points", "5", "--format", "json", "--output", out})
            .code == 0);
  const auto ev = nlohmann::json::parse(io::read_file(dir / "evolve.json"));
  CHECK(ev.size() == 5);
  CHECK(ev[4]["t"].get<double>() == 20.0);

  CHECK(invoke({"critical", "--graph", "lattice:3:6", "--format", "json", "--output", out}).code == 0);
  const auto bounds = nlohmann::json::parse(io::read_file(dir / "bounds.json"));
  REQUIRE(bounds.size() == 2);
  for (const auto& check : bounds[0]["checks"]) {
    for (const char* key : {"bound_id", "lhs", "rhs", "slack", "pass"}) CHECK(check.contains(key));
  }

  CHECK(invoke({"scaling", "--dim", "5", "--sides", "3", "4", "--output", out}).code == 0);
  CHECK(io::read_csv(dir / "scaling.csv").rows.size() == 2);
  CHECK(io::read_csv(dir / "scaling_fit.csv").rows.size() == 1);
}

TEST_CASE("validate command against the dense oracle") {
  const auto dir = scratch("validate");
  const auto r = invoke({"validate", "--graph", "lattice:2:4", "--seed", "7", "--output", dir.string()});
  CHECK(r.code == 0);
  const auto data = io::read_csv(dir / "validate.csv");
  CHECK(data.rows.size() == 20);
  for (const auto& row : data.rows) CHECK(row.back() == "pass");

  const auto d1 = oracle_draws(GraphFamily::hypercube(6), 7, 5);
  const auto d2 = oracle_draws(GraphFamily::hypercube(6), 7, 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(d1[i].gamma == d2[i].gamma);
    CHECK(d1[i].t == d2[i].t);
  }
}

TEST_CASE("errors map to exit codes and machine-readable JSON") {
  const auto dir = scratch("errors").string();
  auto check_error = [](const Outcome& r, int code, const char* kind) {
    CHECK(r.code == code);
    const auto j = nlohmann::json::parse(r.err);
    CHECK(j["error"]["kind"] == kind);
    CHECK(j["exit_code"] == code);
  };
  check_error(invoke({"spectrum", "--graph", "lattice:1:1", "--output", dir}), 2, "range");
  const auto syntax = invoke({"spectrum", "--graph", "lattice:x", "--output", dir});
  check_error(syntax, 2, "syntax");
  CHECK(nlohmann::json::parse(syntax.err)["error"]["position"] == 8);
  check_error(invoke({"frobnicate", "--output", dir}), 2, "config");
  check_error(invoke({"spectrum", "--output", dir}), 2, "config");
  check_error(invoke({"scan", "--graph", "complete:8", "--bogus"}), 2, "config");
  check_error(invoke({"validate", "--graph", "lattice:2:8", "--oracle-cap", "32", "--output", dir}),
              2, "oracle_cap");
  check_error(invoke({"critical", "--dim", "3", "--output", dir}), 2, "range");
}

TEST_CASE("output directory defaults to the environment variable") {
  const auto dir = scratch("env");
  ::setenv("QWSEARCH_OUTPUT_DIR", dir.string().c_str(), 1);
  CHECK(default_output_dir() == dir);
  const auto r = invoke({"spectrum", "--graph", "complete:8", "--gamma", "0.1"});
  ::unsetenv("QWSEARCH_OUTPUT_DIR");
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "spectrum.csv"));
  CHECK(fs::exists(dir / "spectrum.manifest.json"));
  CHECK(default_output_dir() == fs::path("qwsearch-output"));
}
