#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>

#include "mf/cli.hpp"
#include "mf/linform.hpp"

using namespace mf;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  Run r;
  r.code = run_cli(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

void check_schema(const json& j) {
  CHECK(j.contains("command"));
  CHECK(j.at("params").is_object());
  CHECK(j.at("result").is_object());
  CHECK(j.contains("error_bound"));
  REQUIRE(j.at("checks").is_array());
  for (const auto& c : j.at("checks")) {
    CHECK(c.at("name").is_string());
    CHECK((c.at("status") == "pass" || c.at("status") == "fail"));
    CHECK(c.at("detail").is_string());
  }
}

}  // namespace

TEST_CASE("coeffs") {
  Run j = run({"coeffs", "--nu", "1", "--delta", "2", "--output", "json"});
  REQUIRE(j.code == 0);
  json doc = json::parse(j.out);
  check_schema(doc);
  CHECK(doc["result"]["alpha"] == json({"-8", "216", "-64"}));
  CHECK(doc["result"]["table"]["gamma"][2] == json({{"num", "-564"}, {"den", "1"}}));
  CHECK(json::parse(doc.dump()) == doc);

  Run c = run({"coeffs", "--nu", "1", "--delta", "2", "--output", "csv"});
  CHECK(c.code == 0);
  CHECK(c.out == "k,alpha,beta,gamma\n0,-8,48,-156\n1,216,-216,720\n2,-64,-240,-564\n");

  CHECK(run({"coeffs", "--nu", "0", "--delta", "2"}).code == 2);
  CHECK(run({"coeffs", "--nu", "1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("eval") {
  Run f1 = run({"eval", "--which", "f1", "--nu", "1", "--delta", "2", "--z", "0.5", "--output", "json"});
  REQUIRE(f1.code == 0);
  json d = json::parse(f1.out);
  check_schema(d);
  CHECK(d["result"]["exact"] == json({{"num", "-42"}, {"den", "1"}}));

  Run both = run({"eval", "--which", "f2", "--nu", "1", "--delta", "2", "--z", "2", "--path", "both", "--output", "json"});
  REQUIRE(both.code == 0);
  json b = json::parse(both.out);
  CHECK(b["result"]["values"].size() == 2);
  CHECK(b["result"]["max_deviation_log2"].get<double>() < -250);
  CHECK(b["result"]["values"]["series"]["value"]["prec_bits"].get<long>() >= 256);

  CHECK(run({"eval", "--which", "f2", "--nu", "1", "--delta", "2", "--z", "-3"}).code == 3);
  CHECK(run({"eval", "--which", "f4", "--nu", "1", "--delta", "2", "--z", "0.5"}).code == 3);
  CHECK(run({"eval", "--which", "f9", "--nu", "1", "--delta", "2", "--z", "2"}).code == 2);
  CHECK(run({"eval", "--which", "f2", "--nu", "1", "--delta", "2", "--z", "2,x"}).code == 2);
  CHECK(run({"--max-terms", "20", "eval", "--which", "f2", "--nu", "1", "--delta", "2", "--z", "1"}).code == 4);

  Run cz = run({"eval", "--which", "f3", "--nu", "1", "--delta", "2", "--z", "2,1", "--precision-bits", "64"});
  CHECK(cz.code == 0);
  CHECK(cz.out.find("i\n") != std::string::npos);
}

TEST_CASE("meijer") {
  Run m = run({"meijer", "--m", "1", "--n", "3", "--p", "6", "--q", "6", "--a=-1,-1,-1,4,4,4", "--b=0,0,0,1,1,1",
               "--z", "0.5", "--output", "json"});
  REQUIRE(m.code == 0);
  json j = json::parse(m.out);
  check_schema(j);
  std::string labels = j["result"]["labels"];
  CHECK(labels.find("B2") != std::string::npos);
  CHECK(labels.find("B3") != std::string::npos);
  // f1* = C^3 (-1)^(nu (Delta + 1)) G with C = 2
  CHECK(std::stod(j["result"]["value"]["re"].get<std::string>()) * -8 == doctest::Approx(-42));

  Run none = run({"meijer", "--m", "1", "--n", "1", "--p", "2", "--q", "2", "--a=1/2,1/2", "--b=0,0", "--z", "1"});
  CHECK(none.code == 5);
  CHECK(none.err.find("labels") != std::string::npos);

  Run side = run({"meijer", "--m", "1", "--n", "1", "--p", "1", "--q", "1", "--a=2", "--b=0", "--z", "0.5"});
  CHECK(side.code == 2);
  CHECK(side.err.find("positive integer") != std::string::npos);

  CHECK(run({"meijer", "--m", "1", "--n", "0", "--p", "0", "--q", "2", "--b=0", "--z", "0.5"}).code == 2);
  CHECK(run({"meijer", "--m", "1", "--n", "0", "--p", "0", "--q", "1", "--b=0", "--z", "0.5", "--contour", "L7"}).code ==
        2);
}

TEST_CASE("verify") {
  Run pf = run({"verify", "--suite", "partial-fractions", "--nu", "1..2", "--delta", "2..3", "--output", "json"});
  REQUIRE(pf.code == 0);
  json j = json::parse(pf.out);
  check_schema(j);
  CHECK(j["checks"].size() == 12);
  std::vector<std::string> names;
  for (const auto& c : j["checks"]) names.push_back(c["name"]);
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(run({"verify", "--suite", "partial-fractions", "--nu", "1..2", "--delta", "2..3", "--output", "json"}).out ==
        pf.out);
  CHECK(run({"verify", "--suite", "nonsense"}).code == 2);
  CHECK(run({"verify", "--suite", "partial-fractions", "--nu", "3..1"}).code == 2);

  Run mx = run({"verify", "--suite", "meijer-crosscheck", "--nu", "1", "--delta", "2", "--precision-bits", "96"});
  CHECK(mx.code == 0);
  CHECK(mx.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("scan") {
  Run s = run({"scan", "--max-height", "1", "--gamma", "0", "--output", "json"});
  REQUIRE(s.code == 0);
  json j = json::parse(s.out);
  check_schema(j);
  CHECK(j["result"]["argmin"] == json({0, -1}));
  CHECK(j["result"].contains("reference"));
  ScanResult direct = scan(1, 0.0, PrecisionBudget(256));
  CHECK(j["result"]["min_c"] == direct.min_c.str(40));

  CHECK(run({"scan", "--max-height", "0"}).code == 2);
  Run low = run({"scan", "--max-height", "40", "--zeta-bits", "80"});
  CHECK(low.code == 6);
  CHECK(low.err.find("hint") != std::string::npos);
}

TEST_CASE("configuration from the environment") {
  setenv("MF_PRECISION_BITS", "96", 1);
  setenv("MF_OUTPUT", "json", 1);
  json j = json::parse(run({"scan", "--max-height", "2"}).out);
  CHECK(j["params"]["precision_bits"] == 96);
  json k = json::parse(run({"--precision-bits", "80", "scan", "--max-height", "2"}).out);
  CHECK(k["params"]["precision_bits"] == 80);
  setenv("MF_PRECISION_BITS", "32", 1);
  CHECK(run({"scan", "--max-height", "2"}).code == 2);
  unsetenv("MF_PRECISION_BITS");
  unsetenv("MF_OUTPUT");
  CHECK(run({"scan", "--max-height", "2", "--precision-bits", "63"}).code == 2);
}
