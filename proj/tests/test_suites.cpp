#include <cmath>
#include <set>

#include "doctest.h"
#include "qmexpect/errors.hpp"
#include "qmexpect/report.hpp"
#include "qmexpect/suites.hpp"

using namespace qmexpect;

namespace {

const Check& find(const VerificationReport& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return c;
  FAIL("missing check " << id);
  throw 0;
}

}  // namespace

TEST_CASE("every suite except position passes at default settings") {
  for (const auto& name : suite_names()) {
    if (name == "all" || name == "position") continue;
    const auto r = run_suite(name);
    INFO(name);
    CHECK(r.all_passed);
    CHECK(!r.checks.empty());
    for (const auto& c : r.checks) {
      INFO(c.id << ": " << c.note);
      CHECK(c.passed);
      CHECK(c.id.rfind(name + ".", 0) == 0);
    }
  }
}

TEST_CASE("position suite: only the quoted first-excited Morse form disagrees") {
  const auto r = run_suite("position");
  CHECK_FALSE(r.all_passed);
  std::set<std::string> failed;
  for (const auto& c : r.checks)
    if (!c.passed) failed.insert(c.id);
  CHECK(failed == std::set<std::string>{"position.morse.lambda4.2.n1.x", "position.morse.lambda10.5.n1.x"});
  CHECK(find(r, "position.morse.lambda10.5.n0.x").passed);
  CHECK(find(r, "position.morse.lambda10.5.n1.x_rederived").passed);
  CHECK(find(r, "position.morse.prefactor.normalized").passed);
  CHECK(find(r, "position.morse.prefactor.literal_dx").passed);
}

TEST_CASE("suite all holds every check exactly once") {
  const auto all = run_suite("all");
  std::size_t total = 0;
  for (const auto& name : suite_names())
    if (name != "all") total += run_suite(name).checks.size();
  CHECK(all.checks.size() == total);
  std::set<std::string> ids;
  for (const auto& c : all.checks) ids.insert(c.id);
  CHECK(ids.size() == all.checks.size());
}

TEST_CASE("reports are reproducible") {
  SuiteConfig cfg;
  cfg.set("lambda", "10.5");
  CHECK(to_json(run_suite("morse", cfg)) == to_json(run_suite("morse", cfg)));
}

TEST_CASE("parameter narrowing") {
  SuiteConfig cfg;
  cfg.set("M", "3");
  const auto ang = run_suite("angular", cfg);
  const auto& lphi = find(ang, "angular.phi.M3.mean_Lphi");
  CHECK(lphi.passed);
  CHECK(lphi.computed.real() == doctest::Approx(3.0).epsilon(1e-14));

  SuiteConfig m;
  m.set("lambda", "10.5");
  m.set("n", "2");
  const auto morse = run_suite("morse", m);
  const auto& i3 = find(morse, "morse.morse.lambda10.5.n2.I3");
  CHECK(i3.passed);
  CHECK(std::abs(i3.computed) <= i3.tolerance);
  for (const auto& c : morse.checks) CHECK(c.id.find(".n3.") == std::string::npos);
}

TEST_CASE("numerical errors fail single checks without aborting the suite") {
  SuiteConfig cfg;
  cfg.node_budget = 60;
  const auto r = run_suite("hydrogen", cfg);
  CHECK_FALSE(r.all_passed);
  bool saw_error = false;
  for (const auto& c : r.checks)
    if (c.errored) {
      saw_error = true;
      CHECK_FALSE(c.passed);
      CHECK(std::isnan(c.computed.real()));
      CHECK(c.note.rfind("NoConvergence: ", 0) == 0);
    }
  CHECK(saw_error);
  CHECK(find(r, "hydrogen.n4.L3.energy").passed);
}

TEST_CASE("config and suite name validation") {
  SuiteConfig cfg;
  CHECK_THROWS_AS(cfg.set("colour", "1"), DomainError);
  CHECK_THROWS_AS(cfg.set("omega", "fast"), DomainError);
  CHECK_THROWS_AS(cfg.set("M", "1.5"), DomainError);
  CHECK_THROWS_AS(run_suite("nope"), DomainError);
}

TEST_CASE("an illegal parameter surfaces as a failed check") {
  SuiteConfig cfg;
  cfg.set("lambda", "0.4");  // no Morse bound state
  const auto r = run_suite("morse", cfg);
  CHECK_FALSE(r.all_passed);
  const auto& c = find(r, "morse.catalog.construct");
  CHECK(c.errored);
  CHECK(c.note.rfind("NoBoundState", 0) == 0);
}

TEST_CASE("a looser tolerance widens zero checks") {
  SuiteConfig cfg;
  cfg.zero_tol = 1e-3;
  const auto r = run_suite("wells", cfg);
  const auto& c = find(r, "wells.delta.px");
  const auto& d = find(run_suite("wells"), "wells.delta.px");
  CHECK(c.tolerance == doctest::Approx(d.tolerance * 1e7));
}
