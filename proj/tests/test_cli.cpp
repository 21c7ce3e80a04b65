#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "weingarten/cli.hpp"
#include "weingarten/engine.hpp"
#include "weingarten/serialize.hpp"

using namespace weingarten;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("wg prints exact class values") {
  const auto r = run({"wg", "-k", "2", "--symbolic"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "(2): -1/((n-1)*n*(n+1))"));
  CHECK(has(r.out, "e: 1/((n-1)*(n+1))"));
  const auto ladder = run({"wg", "-k", "3", "-n", "3", "--route", "ladder"});
  CHECK(ladder.code == 0);
  CHECK(has(ladder.out, "7/120"));
  CHECK(has(ladder.out, "-1/40"));
  for (const std::string route : {"char", "gram", "recursive", "ladder"}) {
    CHECK(run({"wg", "-k", "3", "-n", "5", "--route", route}).out == run({"wg", "-k", "3", "-n", "5"}).out);
  }
}

TEST_CASE("exit codes") {
  const auto domain = run({"wg", "-k", "3", "-n", "2"});
  CHECK(domain.code == 1);
  CHECK(has(domain.err, "pseudo-wg"));
  CHECK(run({"wg", "-k", "3"}).code == 2);
  CHECK(run({"wg", "-n", "3"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"wg", "-k", "2", "-n", "4", "--format", "yaml"}).code == 2);
  CHECK(run({"moment", "q[1,1]", "-n", "3"}).code == 2);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"sample", "r[1,1]", "-n", "3", "--samples", "1"}).code == 2);
  CHECK(run({"wg", "-k", "9", "-n", "9", "--route", "gram", "--dense-bound", "3"}).code == 1);
}

TEST_CASE("pseudo-wg, raise, lower and gram") {
  const auto pseudo = run({"pseudo-wg", "-k", "3", "-n", "2"});
  CHECK(has(pseudo.out, "(3): -7/144"));
  CHECK(has(pseudo.out, "e: 17/144"));
  const auto raise = run({"raise", "-k", "3", "--symbolic"});
  CHECK(has(raise.out, "(3): -1/(n*(n+1)*(n+2))"));
  CHECK(has(raise.out, "(2,1): 1/(n*(n+2))"));
  const auto lower = run({"lower", "-k", "2", "-n", "2"});
  CHECK(has(lower.out, "(2): -1/2"));
  CHECK(has(lower.out, "e: 5/2"));
  CHECK(has(run({"gram", "-k", "3", "-n", "4"}).out, "e: 64"));
}

TEST_CASE("verify suites through the CLI") {
  const auto neg = run({"verify", "negative-control"});
  CHECK(neg.code == 0);
  CHECK(has(neg.out, "negative-control: 4/4 passed"));
  const auto pseudo = run({"verify", "pseudo", "--k", "3", "--n", "2"});
  CHECK(pseudo.code == 0);
  CHECK(has(pseudo.out, "pseudo: 2/2 passed"));
  const auto rec = run({"verify", "recursion", "--kmax", "4", "--nmax", "7"});
  CHECK(rec.code == 0);
  const auto json = nlohmann::json::parse(run({"verify", "descension", "--format", "json"}).out);
  REQUIRE(json.size() == 1);
  CHECK(json[0].at("suite") == "descension");
  CHECK(json[0].at("failures") == 0);
  CHECK(json[0].at("checks").get<int>() > 0);
}

TEST_CASE("tables") {
  const auto csv = run({"table", "wg", "-k", "2", "--nmin", "2", "--nmax", "5", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("n,cycle_type,value\n", 0) == 0);
  CHECK(has(csv.out, "2,\"2\",-1/6\n"));
  CHECK(has(csv.out, "5,\"1,1\",1/24\n"));
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 9);
  CHECK(has(run({"table", "raise", "-k", "3", "--symbolic"}).out, "(n^3-4*n-1)/(n*(n+1)*(n+2))"));
  CHECK(has(run({"table", "lower", "-k", "2", "-n", "2"}).out, "e: 5/2"));

  const auto json = run({"table", "wg", "-k", "3", "--nmin", "3", "--nmax", "4", "--format", "json"});
  REQUIRE(json.code == 0);
  const auto parsed = nlohmann::json::parse(json.out);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].at("object") == "wg");
  CHECK(parsed[1].at("n") == 4);
  const auto wg34 = class_function_from_json<Rational>(parsed[1]);
  CHECK(wg34 == weingarten::weingarten(3, Rational(4)));
}

TEST_CASE("--out writes to a file") {
  const auto path = std::filesystem::temp_directory_path() / "weingarten_cli_out_test.txt";
  std::filesystem::remove(path);
  const auto r = run({"wg", "-k", "2", "-n", "3", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(has(text.str(), "e: 1/8"));
  std::filesystem::remove(path);
  CHECK(run({"wg", "-k", "2", "-n", "3", "--out", "/nonexistent-dir/x.txt"}).code == 1);
}

TEST_CASE("moment and sample") {
  const auto sym = run({"moment", "r[n,n] r~[n,n]", "--symbolic"});
  CHECK(sym.code == 0);
  CHECK(has(sym.out, "1/n"));
  CHECK(has(run({"moment", "u[2,2] u[3,3] u~[2,3] u~[3,2]", "-n", "3", "--method", "recursive"}).out, "-1/24"));
  CHECK(has(run({"moment", "u[n-1,n-1] u[n,n] u~[n-1,n] u~[n,n-1]", "--symbolic"}).out, "-1/((n-1)*n*(n+1))"));

  const auto s = run({"sample", "r[1,1]^3", "-n", "3", "--samples", "20000", "--seed", "3", "--format", "json"});
  REQUIRE(s.code == 0);
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j.at("N") == 20000);
  CHECK(j.at("exact") == "2/5");
  CHECK(j.at("z_score").get<double>() < 5.0);

  ::setenv("WEINGARTEN_WORKERS", "3", 1);
  const auto a = run({"sample", "r[1,1]", "-n", "3", "--samples", "3000", "--seed", "4", "--format", "json"});
  const auto b = run({"sample", "r[1,1]", "-n", "3", "--samples", "3000", "--seed", "4", "--workers", "3", "--format", "json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  ::setenv("WEINGARTEN_WORKERS", "zero", 1);
  CHECK(run({"sample", "r[1,1]", "-n", "3", "--samples", "100"}).code == 2);
  ::unsetenv("WEINGARTEN_WORKERS");
}
