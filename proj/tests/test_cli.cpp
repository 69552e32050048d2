#include <catch_amalgamated.hpp>

#include <sstream>

#include "koopinv/cli.hpp"

using namespace koopinv;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("invert prints the inverse polynomial") {
  const auto r = run({"invert", "--field", "5", "--poly", "x^3+2*x^2+3*x+3"});
  CHECK(r.code == 0);
  CHECK(r.out == "x^3 + 3*x^2 + 3*x + 2\n");
}

TEST_CASE("invert-map prints the inverse map") {
  const auto r = run({"invert-map", "--field", "2", "--vars", "3", "--map",
                      "x2; x3; x1 + x2*x3"});
  CHECK(r.code == 0);
  CHECK(r.out == "x1*x2 + x3; x1; x2\n");
}

TEST_CASE("non-permutations exit with code 2 and still print the verdict") {
  const auto r = run({"invert", "--field", "5", "--poly", "x^2"});
  CHECK(r.code == 2);
  CHECK(r.out == "not a permutation (det M = 0)\n");
}

TEST_CASE("usage and parse errors exit with code 1") {
  CHECK(run({"invert", "--field", "5", "--poly", "3x"}).code == 1);
  CHECK(run({"invert", "--field", "4", "--poly", "x"}).code == 1);
  CHECK(run({"invert", "--field", "5"}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("verify cross-checks against the oracle") {
  CHECK(run({"verify", "--field", "5", "--poly", "x^3+2*x^2+3*x+3"}).code == 0);
  CHECK(run({"verify", "--field", "5", "--poly", "x^2"}).code == 0);
  CHECK(run({"verify", "--field", "2", "--vars", "3", "--map", "x2; x3; x1 + x2*x3"}).code ==
        0);
  CHECK(run({"verify", "--field", "13", "--param", "a", "--poly", "x^5+a*x^3+3*a^2*x"})
            .code == 0);
  CHECK(run({"invert", "--field", "5", "--poly", "x^3", "--verify"}).code == 0);
}

TEST_CASE("power subcommand") {
  const auto r2 = run({"power", "--field", "5", "--poly", "x^3+2*x^2+3*x+3", "--power", "2"});
  CHECK(r2.code == 0);
  CHECK(r2.out == "2*x^3 + 3*x^2 + 4*x + 2\n");

  const auto r0 = run({"power", "--field", "5", "--poly", "x^3+2*x^2+3*x+3", "--power", "0"});
  CHECK(r0.out == "x\n");

  const auto rneg =
      run({"power", "--field", "5", "--poly", "x^3+2*x^2+3*x+3", "--power", "-1"});
  CHECK(rneg.out == "x^3 + 3*x^2 + 3*x + 2\n");

  CHECK(run({"power", "--field", "5", "--poly", "x^2", "--power", "-1"}).code == 2);
  CHECK(run({"power", "--field", "5", "--poly", "x^2", "--power", "2"}).code == 0);
}

TEST_CASE("koopman subcommand text output") {
  const auto r = run({"koopman", "--field", "5", "--poly", "x^3+2*x^2+3*x+3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("dimension: 3") != std::string::npos);
  CHECK(r.out.find("alpha: [4, 3, 3]") != std::string::npos);
  CHECK(r.out.find("det: 4") != std::string::npos);
  CHECK(r.out.find("invertible: true") != std::string::npos);
  CHECK(r.out.find("psi3 = 2*x^3 + 3*x^2 + 4*x + 2") != std::string::npos);
}

TEST_CASE("classify subcommand") {
  const auto r = run({"classify", "--field", "13", "--poly", "x^5 + a*x^3 + 3*a^2*x"});
  CHECK(r.code == 0);
  CHECK(r.out.find("generic dimension: 6") != std::string::npos);
  CHECK(r.out.find("invertible: {2, 5, 6, 7, 8, 11}") != std::string::npos);
  CHECK(r.out.find("singular: {1, 3, 4, 9, 10, 12}") != std::string::npos);
  CHECK(r.out.find("undefined: {0}") != std::string::npos);
  CHECK(r.out.find("(a^2 + a + 12)") != std::string::npos);
  CHECK(r.out.find("(a^2 + 12*a + 12)") != std::string::npos);
}

TEST_CASE("param-invert specializes with --at") {
  const auto r = run({"param-invert", "--field", "17", "--at", "9", "--poly",
                      "x^11 + 6*a*x^9 + 10*a^2*x^7 + 8*a^3*x^5 + 4*a^4*x^3 + 6*a^5*x"});
  CHECK(r.code == 0);
  CHECK(r.out == "9*x^13 + 13*x^11 + 11*x^9 + 12*x^7 + 11*x^5 + 11*x^3 + 8*x\n");

  // singular specialization point
  const auto rs = run({"param-invert", "--field", "13", "--at", "4", "--poly",
                       "x^5 + a*x^3 + 3*a^2*x"});
  CHECK(rs.code == 2);

  // undefined specialization point
  const auto ru = run({"param-invert", "--field", "13", "--at", "0", "--poly",
                       "x^5 + a*x^3 + 3*a^2*x"});
  CHECK(ru.code == 1);
}

TEST_CASE("json output carries the stable schema") {
  const auto r =
      run({"invert", "--field", "5", "--poly", "x^3+2*x^2+3*x+3", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  for (const char* key :
       {"field", "nvars", "input", "dimension", "matrix", "alpha", "invertible", "det",
        "inverse"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc["field"] == 5);
  CHECK(doc["nvars"] == 1);
  CHECK(doc["dimension"] == 3);
  CHECK(doc["alpha"] == nlohmann::json({4, 3, 3}));
  CHECK(doc["matrix"] == nlohmann::json({{0, 1, 0}, {0, 0, 1}, {4, 3, 3}}));
  CHECK(doc["det"] == 4);
  CHECK(doc["invertible"] == true);
  CHECK(doc["inverse"] == "x^3 + 3*x^2 + 3*x + 2");

  // text and json agree on the numeric content
  const auto rt = run({"invert", "--field", "5", "--poly", "x^3+2*x^2+3*x+3"});
  CHECK(rt.out == doc["inverse"].get<std::string>() + "\n");
}

TEST_CASE("json output in parametric mode uses num/den coefficient arrays") {
  const auto r = run({"classify", "--field", "5", "--poly", "a*x", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["det"]["num"] == nlohmann::json({0, 1}));
  CHECK(doc["det"]["den"] == nlohmann::json({1}));
  CHECK(doc["classification"]["invertible"] == nlohmann::json({1, 2, 3, 4}));
  CHECK(doc["classification"]["singular"] == nlohmann::json({0}));
  CHECK(doc["classification"]["undefined"] == nlohmann::json::array());
  CHECK(doc.contains("factors"));
}

TEST_CASE("expressions can be piped through stdin") {
  const auto r = run({"invert", "--field", "5", "--poly", "-"}, "x^3+2*x^2+3*x+3\n");
  CHECK(r.code == 0);
  CHECK(r.out == "x^3 + 3*x^2 + 3*x + 2\n");
}

TEST_CASE("the space cap is adjustable from the command line") {
  // 11^4 = 14641 cells
  CHECK(run({"invert-map", "--field", "11", "--vars", "4", "--map", "x1; x2; x3; x4",
             "--max-space", "10000"})
            .code == 1);
  CHECK(run({"invert-map", "--field", "11", "--vars", "4", "--map", "x1; x2; x3; x4",
             "--max-space", "20000"})
            .code == 0);
  CHECK(run({"invert", "--field", "5", "--poly", "x", "--max-space", "3"}).code == 1);
}

TEST_CASE("invert-map without a map is a usage error") {
  CHECK(run({"invert-map", "--field", "2", "--vars", "3", "--poly", "x1"}).code == 1);
}

TEST_CASE("help exits cleanly") {
  CHECK(run({"--help"}).code == 0);
}
