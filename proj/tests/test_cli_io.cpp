#include <doctest.h>

#include <cstdlib>

#include "smale/cli_io.hpp"
#include "smale/spectral.hpp"
#include "support.hpp"

using namespace smale;

namespace {

const char* kMinimal = R"({
  "name": "full2",
  "adjacency": [[2]],
  "P": [["0"]],
  "Q": [["1"]]
})";

std::string config_path(const std::string& name) { return std::string(SMALE_CONFIG_DIR) + "/" + name; }

std::string with(const std::string& key, const std::string& value) {
  return R"({"name": "x", "adjacency": [[2]], "P": [["0"]], "Q": [["1"]], ")" + key + "\": " + value + "}";
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

double cell(const RunReport& rep, std::size_t row, const std::string& column) {
  for (std::size_t i = 0; i < rep.columns.size(); ++i)
    if (rep.columns[i] == column) return std::strtod(rep.rows.at(row).at(i).c_str(), nullptr);
  FAIL("missing column " << column);
  return 0;
}

}  // namespace

TEST_SUITE("cli_io") {

TEST_CASE("a minimal document gets the defaults") {
  auto cfg = parse_config(kMinimal);
  CHECK(cfg.name == "full2");
  CHECK(cfg.shift()->edge_count() == 2);
  CHECK(EdgeShift::kLambda == 2.0);
  CHECK(EdgeShift::kEpsilonX == 1.0);
  CHECK(cfg.c0 == 1);
  CHECK(cfg.hop == 1);
  CHECK(cfg.omega0_kind == Omega0Kind::indicator);
  CHECK(cfg.defaults == RunDefaults{});
  CHECK(cfg.localization == LocalizationSpec{});
  CHECK(cfg.weights().P().size() == 1);
}

TEST_CASE("validation errors name the invariant") {
  CHECK(error_of(R"({"name": "x", "adjacency": [[2]], "P": [["0"]], "Q": [["0"]]})") == "P and Q overlap");
  CHECK(error_of(R"({"name": "x", "adjacency": [[1, 1], [1, 0]], "P": [["0"]], "Q": [["1"]]})").find("not a closed path") !=
        std::string::npos);
  CHECK(error_of(with("colour", "1")).find("unknown key 'colour'") != std::string::npos);
  CHECK(error_of(with("C0", "0")) == "C0 must be positive");
  CHECK(error_of(with("C0", "\"1/0\"")) != "");
  CHECK(error_of(with("omega0Kind", "\"step\"")).find("omega0Kind") != std::string::npos);
  CHECK(error_of(with("localization", R"({"q": 3})")).find("localization.q") != std::string::npos);
  CHECK(error_of(with("defaults", R"({"window": [9, 4]})")).find("window") != std::string::npos);
  CHECK(error_of(with("maxCore", "31")).find("maxCore") != std::string::npos);
  CHECK(error_of(R"({"name": "x", "adjacency": [[1, 0], [0, 1]], "P": [["0"]], "Q": [["1"]]})") != "");
  CHECK(error_of(R"({"name": "x", "adjacency": [[2]], "edges": [{"source": 0, "target": 0, "label": "a"}],
                     "P": [["a"]], "Q": [["a"]]})") == "edge list disagrees with adjacency");
  CHECK_THROWS_AS(parse_config(with("K", "0")), ValidationError);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_config("{\n  \"name\": \"x\",\n  \"adjacency\": [[2]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() >= 1);
  }
  CHECK_THROWS_AS(parse_config("[]"), ParseError);
  CHECK_THROWS_AS(parse_config(""), ParseError);
}

TEST_CASE("serialization round-trips") {
  for (const char* name : {"full2.json", "full3.json", "golden.json", "full2_ramp.json"}) {
    CAPTURE(name);
    auto cfg = load_config(config_path(name));
    const auto text = serialize_config(cfg);
    auto again = parse_config(text);
    CHECK(again == cfg);
    CHECK(serialize_config(again) == text);
    CHECK(config_digest(again) == config_digest(cfg));
    CHECK(config_digest(cfg).size() == 16);
  }
  auto ramp = load_config(config_path("full2_ramp.json"));
  CHECK(ramp.c0 == Rational(1, 2));
  CHECK(ramp.omega0_kind == Omega0Kind::lipschitz_ramp);
  CHECK(config_digest(ramp) != config_digest(load_config(config_path("full2.json"))));
}

TEST_CASE("number formatting and windows") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(NAN) == "nan");
  CHECK(parse_window("5:30") == std::pair<Coord, Coord>{5, 30});
  CHECK_THROWS_AS(parse_window("5"), ValidationError);
  CHECK_THROWS_AS(parse_window("a:b"), ValidationError);
}

TEST_CASE("counts on the golden-mean shift") {
  auto cfg = load_config(config_path("golden.json"));
  Overrides o;
  o.n_max = 25;
  auto rep = run("counts", cfg, o);
  CHECK(rep.success);
  CHECK(rep.columns == std::vector<std::string>{"n", "c_n", "certified"});
  CHECK(rep.rows.size() == 25);
  CHECK(rep.rows.front().front() == "1");
  CHECK(rep.rows.back().front() == "25");
  for (std::size_t i = 0; i < rep.rows.size(); ++i) CHECK(rep.certified.at(i));
  auto cs = count_series(cfg.weights(), cfg.localization_function(), 25);
  for (const auto& row : rep.rows) CHECK(std::stoull(row[1]) == cs.at(std::stoll(row[0])));
}

TEST_CASE("specdim reports the dimension and its target") {
  auto rep = run("specdim", load_config(config_path("full2.json")));
  CHECK(rep.success);
  CHECK(rep.columns == std::vector<std::string>{"nMin", "nMax", "dimEstimate", "stdError", "entropyPerron", "target"});
  CHECK(cell(rep, 0, "dimEstimate") == doctest::Approx(1.0).epsilon(0.02));
  CHECK(cell(rep, 0, "target") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cell(rep, 0, "entropyPerron") == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("trace commands honour overrides") {
  auto cfg = load_config(config_path("full3.json"));
  Overrides o;
  o.t = 0.5;
  auto theta = run("trace-theta", cfg, o);
  CHECK(theta.success);
  CHECK(theta.columns == std::vector<std::string>{"termsUsed", "value", "tailBound", "converged"});
  CHECK(cell(theta, 0, "tailBound") <= 1e-9);
  o.s = 1.0;
  auto zeta = run("trace-zeta", cfg, o);
  CHECK_FALSE(zeta.success);
  o.s = 2.0;
  CHECK(run("trace-zeta", cfg, o).success);
}

TEST_CASE("check passes on every shipped configuration") {
  for (const char* name : {"full2.json", "full3.json", "golden.json", "full2_ramp.json"}) {
    CAPTURE(name);
    auto rep = run("check", load_config(config_path(name)));
    for (const auto& row : rep.rows) {
      CAPTURE(row.front());
      CHECK(row.at(1) == "true");
    }
    CHECK(rep.success);
  }
}

TEST_CASE("runs are deterministic") {
  auto cfg = load_config(config_path("golden.json"));
  for (const auto& command : command_names()) {
    CAPTURE(command);
    auto a = run(command, cfg);
    auto b = run(command, load_config(config_path("golden.json")));
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.inputs_digest == config_digest(cfg));
  }
  CHECK_THROWS_AS(run("plot", cfg), ValidationError);
}

TEST_CASE("CSV output escapes fields") {
  RunReport rep;
  rep.columns = {"a", "b"};
  rep.rows = {{"1", "x,y"}, {"2", "say \"hi\""}};
  CHECK(rep.to_csv() == "a,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\n");
}

}  // TEST_SUITE
