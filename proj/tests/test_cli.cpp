#include "support.hpp"

#include "padic/cli.hpp"
#include "padic/json_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace padic;
using io::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("padic_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

const char* kDigitExample = "-5 + digitsum(x1, 4+7*i^3, 5)";

}  // namespace

TEST_CASE("cli: expand") {
  const auto r = run({"expand", "--prime", "3", "--level", "2", "--precision", "4", "--expr", "x1"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["p"] == 3);
  CHECK(j["K"] == 2);
  CHECK(j["B"].size() == 9);
  CHECK(j["B"][4] == Json::array({0, 1, 0, 0}));
  CHECK(r.err.find("\"reconstruction_check\":\"passed\"") != std::string::npos);

  const auto zero = run({"expand", "--prime", "5", "--vars", "2", "--level", "1", "--expr", "0"}).json();
  CHECK(zero["n"] == 2);
  for (const auto& [key, digits] : zero["A"].items()) {
    for (const auto& d : digits) CHECK(d == 0);
  }

  const auto g = run({"expand", "--prime", "7", "--level", "2", "--precision", "6", "--expr", kDigitExample}).json();
  const auto table = io::table1_from_json(g);
  for (int m = 0; m < 7; ++m) {
    CHECK(table.coeffs[m] == PadicInt::from_signed(-5 + 4 * testsupport::ipow(m, 5), Prime(7), 6));
  }
}

TEST_CASE("cli: expand writes the table to --out") {
  const auto path = temp_path("table.json");
  const auto r = run({"expand", "--prime", "3", "--level", "2", "--expr", "x1^2", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.json()["entries"] == 9);
  std::ifstream in(path);
  const auto table = io::table1_from_json(Json::parse(in));
  CHECK(table.size() == 9);
  std::filesystem::remove(path);
}

TEST_CASE("cli: eval") {
  const auto r = run({"eval", "--prime", "7", "--precision", "5", "--expr", "divp(x1 - x1^7, 1)", "--point", "2"});
  REQUIRE(r.code == 0);
  CHECK(io::padic_from_json(r.json()) == PadicInt::from_signed(-18, Prime(7), 5));
  const auto t = run({"eval", "--prime", "3", "--precision", "3", "--format", "text", "--vars", "2", "--expr", "x1 + x2", "--point", "4,6"});
  CHECK(t.out == "1 0 1 | p=3 N=3\n");
}

TEST_CASE("cli: lipschitz tiers") {
  const auto good = run({"lipschitz", "--prime", "7", "--level", "2", "--alpha", "1", "--samples", "500",
                         "--expr", "divp(x1 - x1^7, 1)"});
  CHECK(good.code == 0);
  const auto gj = good.json();
  CHECK(gj["verdict"] == "pass");
  CHECK(gj["necessary-bound"]["holds"] == true);
  CHECK(gj["pair-sampled"]["violations"] == 0);

  const auto bad = run({"lipschitz", "--prime", "7", "--level", "2", "--alpha", "0", "--samples", "500",
                        "--expr", "divp(x1 - x1^7, 1)"});
  CHECK(bad.code == 1);
  CHECK(bad.json()["necessary-bound"]["holds"] == false);

  const auto c = run({"lipschitz", "--prime", "5", "--vars", "2", "--level", "1", "--samples", "200", "--expr", "3"});
  CHECK(c.code == 0);
  CHECK(c.json()["projection-sampled"]["holds"] == true);

  const auto multi = run({"lipschitz", "--prime", "7", "--vars", "2", "--level", "2", "--alpha", "0,0",
                          "--samples", "500", "--fixed-samples", "2", "--expr", "divp(x1 - x1^7, 1) + x2"});
  CHECK(multi.code == 1);
  const auto mj = multi.json();
  CHECK(mj["necessary-bound"]["scope"] == "necessary condition only");
  CHECK(mj["projection-sampled"]["holds"] == false);
  CHECK(mj["pair-sampled"]["violations"].get<int>() > 0);
}

TEST_CASE("cli: lipschitz accepts a coefficient table") {
  const auto path = temp_path("fermat.json");
  REQUIRE(run({"expand", "--prime", "7", "--level", "2", "--precision", "6", "--expr", "divp(x1 - x1^7, 1)", "--out", path}).code == 0);
  CHECK(run({"lipschitz", "--table", path, "--alpha", "1", "--samples", "300"}).code == 0);
  CHECK(run({"lipschitz", "--table", path, "--alpha", "0", "--samples", "300"}).code == 1);
  CHECK(run({"lipschitz", "--table", path, "--prime", "5"}).code == 2);
  const auto e = run({"eval", "--table", path, "--point", "3", "--precision", "9"});
  CHECK(e.code == 4);
  std::filesystem::remove(path);
}

TEST_CASE("cli: roots") {
  const auto r = run({"roots", "--prime", "7", "--level", "1", "--expr", kDigitExample});
  REQUIRE(r.code == 0);
  CHECK(r.json()["roots"] == Json::array({5}));
  const auto m = run({"roots", "--prime", "3", "--vars", "2", "--level", "1", "--expr", "x1 + x2"}).json();
  CHECK(m["roots"] == Json::parse("[[0,0],[1,2],[2,1]]"));
  const auto proj = run({"roots", "--prime", "3", "--vars", "2", "--level", "2", "--coordinate", "1",
                         "--fixed", "1", "--expr", "x1 + x2"}).json();
  CHECK(proj["levels"][0]["roots"] == Json::array({2}));
  CHECK(proj["levels"][1]["roots"] == Json::array({8}));
}

TEST_CASE("cli: lift") {
  const auto r = run({"lift", "--prime", "7", "--expr", kDigitExample, "--start", "5", "--l0", "1",
                      "--alpha", "0", "--target-precision", "10"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["status"] == "lifted");
  CHECK(j["replay_verified"] == true);
  CHECK(j["levels"].size() == 9);
  CHECK(j["levels"][0]["condition_set"].size() == 6);

  const auto c = run({"lift", "--prime", "5", "--expr", "x1 - 777", "--start", "2", "--target-precision", "6"});
  CHECK(c.code == 0);
  CHECK(io::padic_from_json(c.json()["root"][0]).to_natural() == 777);

  const auto neg = run({"lift", "--prime", "2", "--expr", "x1^2 - 1", "--start", "1", "--target-precision", "6"});
  CHECK(neg.code == 1);
  CHECK(neg.json()["status"] == "condition-failed");

  const auto multi = run({"lift", "--prime", "7", "--vars", "2", "--expr", "0*x1 + x2 - 100", "--start", "3,2",
                          "--auto-coordinate", "--target-precision", "4"});
  CHECK(multi.code == 0);
  CHECK(multi.json()["coordinate"] == "auto");

  CHECK(run({"lift", "--prime", "7", "--expr", "x1 - 3", "--start", "2"}).code == 2);
  CHECK(run({"lift", "--prime", "7", "--vars", "2", "--expr", "x1", "--start", "0,0", "--coordinate", "1",
             "--auto-coordinate"}).code == 2);
}

TEST_CASE("cli: wellposed") {
  const auto good = run({"wellposed", "--prime", "7", "--samples", "300", "--alpha", "1", "--expr", "divp(x1 - x1^7, 1)"});
  CHECK(good.code == 0);
  CHECK(good.json()["divisibility"]["inexact_failures"] == 0);
  const auto bad = run({"wellposed", "--prime", "7", "--samples", "300", "--expr", "divp(x1, 1)"});
  CHECK(bad.code == 1);
}

TEST_CASE("cli: function files") {
  const auto path = temp_path("func.json");
  write_file(path, R"j({"arity":1,"alpha":[0],"body":"-5 + digitsum(x1, 4+7*i^3, 5)"})j");
  const auto r = run({"lift", "--prime", "7", "--func", path, "--start", "5", "--target-precision", "6"});
  CHECK(r.code == 0);
  CHECK(r.json()["alpha"] == Json::array({0}));
  write_file(path, R"j({"arity":1,"body":"x1 +"})j");
  CHECK(run({"eval", "--prime", "7", "--func", path, "--point", "1"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("cli: errors map to exit codes") {
  CHECK(run({"expand", "--prime", "4", "--expr", "x1"}).code == 2);
  CHECK(run({"expand", "--expr", "x1"}).code == 2);
  CHECK(run({"expand", "--prime", "3", "--expr", "x2"}).code == 2);
  CHECK(run({"expand", "--prime", "3", "--expr", "x1", "--func", "f.json"}).code == 2);
  CHECK(run({"expand", "--prime", "3", "--level", "20", "--expr", "x1"}).code == 2);
  CHECK(run({"eval", "--prime", "7", "--expr", "divp(x1, 1)", "--point", "3"}).code == 3);
  CHECK(run({"eval", "--prime", "7", "--expr", "x1", "--point", "3,4"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  const auto e = run({"expand", "--prime", "3", "--expr", "x1 + * 2"});
  CHECK(e.err.find("column 6") != std::string::npos);
}

TEST_CASE("cli: output is deterministic") {
  const std::vector<std::string> args{"lipschitz", "--prime", "3", "--vars", "2", "--level", "2",
                                      "--alpha", "1,0", "--seed", "9", "--samples", "400",
                                      "--expr", "divp(x1 - x1^3, 1) * x2 + digitsum(x2, i, 2)"};
  const auto a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.json()["seed"] == 9);
}

TEST_CASE("json round trips") {
  const auto x = PadicInt::from_integer(10, Prime(3), 4);
  CHECK(io::to_json(x).dump() == R"({"p":3,"precision":4,"digits":[1,0,1,0]})");
  CHECK(io::padic_from_json(io::to_json(x)) == x);
  const Natural big = testsupport::ipow(7, 40);
  CHECK(io::natural_from_json(io::to_json(big)) == big);
  CHECK(io::to_json(big).is_string());

  const auto def = dsl::FuncDef::make("x1*x2", 2, std::vector<int>{1, 0});
  const auto back = io::funcdef_from_json(io::to_json(def));
  CHECK(back.alpha == def.alpha);
  CHECK(back.body == def.body);

  const auto f = dsl::make_function("x1^2 + 3*x2", 2, Prime(3));
  const auto t = vdp_expand_multi(*f, 2, 4);
  const auto tb = io::tableN_from_json(io::to_json(t));
  CHECK(tb.coeffs == t.coeffs);
  const auto tj = io::to_json(t);
  CHECK(tj["A"].contains("(3,1)"));
  const auto n = normalize_weighted(t, std::vector<int>{1, 0});
  CHECK(io::tableN_from_json(io::to_json(n)).normalized->coeffs == n.normalized->coeffs);

  const auto u = normalize_alpha(vdp_expand_uni(*dsl::make_function("x1", 1, Prime(5)), 2, 4), 0);
  const auto ub = io::table1_from_json(io::to_json(u));
  CHECK(ub.coeffs == u.coeffs);
  CHECK(ub.normalized->coeffs == u.normalized->coeffs);
  CHECK_THROWS_AS(io::table1_from_json(Json::parse(R"({"p":3,"K":1,"N":2,"B":[[0,0]]})")), Error);
}
