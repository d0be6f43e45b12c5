#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qmexpect/errors.hpp"
#include "qmexpect/quadrature.hpp"
#include "qmexpect/specfun.hpp"

using namespace qmexpect;

TEST_CASE("domain invariants") {
  CHECK_THROWS_AS(CoordinateDomain::finite(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(CoordinateDomain::half_line(5.0, 1), DomainError);
  auto bad = CoordinateDomain::finite(0.0, 1.0);
  bad.angular_weight = AngularWeight::SinTheta;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK(CoordinateDomain::polar_angle().measure(0.5) == doctest::Approx(std::sin(0.5)));
  CHECK(CoordinateDomain::half_line(5.0, 2).measure(3.0) == doctest::Approx(9.0));
}

TEST_CASE("gaussian and gamma integrals") {
  const auto g = integrate([](double x) { return std::exp(-x * x); }, CoordinateDomain::full_line(10.0));
  CHECK(std::abs(g.value - std::sqrt(std::numbers::pi)) <= 1e-12);
  CHECK(g.abs_error_estimate >= 0.0);
  CHECK(g.nodes_used > 0);

  const double s = 2.37;
  const auto r = integrate([s](double x) { return x > 0.0 ? std::exp(-x + s * std::log(x)) : 0.0; },
                           CoordinateDomain::half_line(80.0));
  CHECK(std::abs(r.value - std::exp(specfun::ln_gamma(s + 1.0))) <= 1e-12 * r.value);
}

TEST_CASE("odd integrands vanish when integrated as given") {
  const auto r = integrate_odd_symmetric_check([](double x) { return x * std::exp(-x * x); },
                                               CoordinateDomain::full_line(10.0));
  CHECK(std::abs(r.value) <= 1e-12);
  const double k = 2.3;
  const double a = 1.7;
  const auto t = integrate_odd_symmetric_check([k](double x) { return std::sin(k * x) * std::cos(k * x); },
                                               CoordinateDomain::finite(-a, a));
  CHECK(std::abs(t.value) <= 1e-12);
  CHECK_THROWS_AS(integrate_odd_symmetric_check([](double x) { return x; }, CoordinateDomain::finite(0.0, 1.0)),
                  DomainError);
  // y (1 - y^2)^{-1/2} [P(y)]^2 through the cos substitution
  const auto p = integrate_inverse_sqrt_weight([](double y) {
    const double v = specfun::poschl_teller_poly(3, 1.7, y).value;
    return y * v * v;
  });
  CHECK(std::abs(p.value) <= 1e-9);
}

TEST_CASE("polar angle odd integrand") {
  // cos(theta) |Theta|^2 sin(theta) for Theta proportional to P_2^1(cos theta)
  const auto r = integrate(
      [](double th) {
        const double v = specfun::assoc_legendre_value(2, 1, std::cos(th));
        return std::cos(th) * v * v;
      },
      CoordinateDomain::polar_angle());
  CHECK(std::abs(r.value) <= 1e-12);
}

TEST_CASE("endpoint singularity through the cos substitution") {
  const auto r = integrate_inverse_sqrt_weight([](double) { return 1.0; });
  CHECK(std::abs(r.value - std::numbers::pi) <= 1e-10 * std::numbers::pi);
}

TEST_CASE("determinism and truncation stability") {
  auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
  const auto a = integrate(f, CoordinateDomain::full_line(9.0));
  const auto b = integrate(f, CoordinateDomain::full_line(9.0));
  CHECK(a.value == b.value);
  CHECK(a.nodes_used == b.nodes_used);
  const auto c = integrate(f, CoordinateDomain::full_line(18.0));
  CHECK(std::abs(a.value - c.value) <= std::max({a.abs_error_estimate, c.abs_error_estimate, 1e-15}));

  auto e = [](double x) { return x > 0.0 ? x * x * std::exp(-x) : 0.0; };
  const auto d = integrate(e, CoordinateDomain::half_line(60.0));
  const auto d2 = integrate(e, CoordinateDomain::half_line(120.0));
  CHECK(std::abs(d.value - d2.value) <= std::max({d.abs_error_estimate, d2.abs_error_estimate, 1e-13}));
}

TEST_CASE("complex integrand and node budget") {
  const auto r = integrate_complex([](double t) { return std::polar(1.0, 3.0 * t); },
                                   CoordinateDomain::periodic_angle());
  CHECK(std::abs(r.value) <= 1e-12);
  QuadOptions tight;
  tight.node_budget = 100;
  CHECK_THROWS_AS(integrate([](double x) { return std::sqrt(std::abs(x - 0.3137)); }, CoordinateDomain::finite(0.0, 1.0),
                            tight),
                  NoConvergence);
}

TEST_CASE("breakpoints split kinks") {
  const auto d = CoordinateDomain::full_line(30.0).with_breakpoints({0.0});
  const auto r = integrate([](double x) { return std::exp(-2.0 * std::abs(x)); }, d);
  CHECK(std::abs(r.value - 1.0) <= 1e-13);
  CHECK(r.nodes_used < 5000);
}

TEST_CASE("envelope cutoff") {
  const double x = envelope_cutoff([](double t) { return -t; }, 0.0, 0.5, 20.0);
  CHECK(x >= 20.0 * std::log(10.0));
  CHECK(x < 20.0 * std::log(10.0) + 0.5 + 1e-12);
}
