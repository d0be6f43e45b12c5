#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qmexpect/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qmexpect");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = qmexpect::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("suite in json round-trips byte for byte") {
  const auto r = run({"suite", "angular", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j.dump(2) + "\n" == r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"suite", "config", "checks", "all_passed"});
  std::vector<std::string> check_keys;
  for (const auto& [k, v] : j["checks"][0].items()) check_keys.push_back(k);
  CHECK(check_keys == std::vector<std::string>{"id", "claim", "computed", "reference", "tolerance", "passed", "note"});
  CHECK(j["all_passed"] == true);
}

TEST_CASE("failing and erroring reports also round-trip") {
  const auto pos = run({"suite", "position", "--format", "json"});
  CHECK(pos.code == 1);
  CHECK(nlohmann::ordered_json::parse(pos.out).dump(2) + "\n" == pos.out);

  setenv("QMEXPECT_NODE_BUDGET", "80", 1);
  const auto tight = run({"suite", "hydrogen", "--format", "json"});
  unsetenv("QMEXPECT_NODE_BUDGET");
  CHECK(tight.code == 1);
  const auto j = nlohmann::ordered_json::parse(tight.out);
  CHECK(j.dump(2) + "\n" == tight.out);
  CHECK(j["config"]["node_budget"] == 80.0);
  bool saw_null = false;
  for (const auto& c : j["checks"]) saw_null = saw_null || c["reference"].is_null();
  CHECK(saw_null);
}

TEST_CASE("expect prints the Morse decomposition") {
  const auto r = run({"expect", "--family", "morse", "--n", "2", "--lambda", "10.5", "--op", "px"});
  CHECK(r.code == 0);
  for (const char* part : {"I1 =", "I2 =", "I3 =", "bracket ="}) CHECK(r.out.find(part) != std::string::npos);

  const auto js = run({"expect", "--family", "morse", "--n", "2", "--lambda", "10.5", "--op", "px", "--format", "json"});
  const auto j = nlohmann::ordered_json::parse(js.out);
  CHECK(std::abs(j["value"]["re"].get<double>()) < 1e-10);
  CHECK(std::abs(j["value"]["im"].get<double>()) < 1e-10);
  CHECK(j["decomposition"].size() == 4);
}

TEST_CASE("divergent moments exit 1") {
  const auto r = run({"expect", "--family", "hydrogen", "--n", "1", "--L", "0", "--op", "inv_r3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("DivergentMoment") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"suite"}).code == 2);
  CHECK(run({"suite", "nope"}).code == 2);
  CHECK(run({"suite", "angular", "--format", "yaml"}).code == 2);
  CHECK(run({"suite", "angular", "--param", "colour=red"}).code == 2);
  CHECK(run({"suite", "angular", "--tol", "-1"}).code == 2);
  CHECK(run({"expect", "--family", "lho", "--op", "px"}).code == 2);
  CHECK(run({"expect", "--family", "lho", "--n", "0", "--op", "spin"}).code == 2);
  CHECK(run({"expect", "--family", "quark", "--n", "0", "--op", "px"}).code == 2);
  CHECK(run({"expect", "--family", "morse", "--n", "5", "--lambda", "3.2", "--op", "px"}).code == 2);
  setenv("QMEXPECT_NODE_BUDGET", "lots", 1);
  CHECK(run({"suite", "angular"}).code == 2);
  unsetenv("QMEXPECT_NODE_BUDGET");
}

TEST_CASE("help exits 0") { CHECK(run({"--help"}).code == 0); }

TEST_CASE("wrong coordinate exits 1") {
  const auto r = run({"expect", "--family", "lho", "--n", "0", "--op", "l_phi"});
  CHECK(r.code == 1);
  CHECK(r.err.find("WrongDomain") != std::string::npos);
}

TEST_CASE("hydrogen angular operators act on the angular factors") {
  const auto r = run({"expect", "--family", "hydrogen", "--n", "3", "--L", "2", "--M", "-2", "--op", "l_phi",
                      "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::ordered_json::parse(r.out)["value"]["re"].get<double>() == doctest::Approx(-2.0));
}

TEST_CASE("--out writes the report to a file") {
  const std::string path = "qmexpect_cli_test_report.json";
  const auto r = run({"suite", "heisenberg", "--format", "json", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(nlohmann::ordered_json::parse(ss.str())["suite"] == "heisenberg");
  std::remove(path.c_str());
}

TEST_CASE("--tol overrides the check tolerances") {
  const auto r = run({"suite", "wells", "--tol", "1e-4", "--format", "json"});
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["config"]["rel_tol"] == 1e-4);
  CHECK(j["config"]["zero_tol"] == 1e-4);
}
