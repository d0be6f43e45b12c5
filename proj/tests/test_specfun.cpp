#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qmexpect/errors.hpp"
#include "qmexpect/jet.hpp"
#include "qmexpect/quadrature.hpp"
#include "qmexpect/specfun.hpp"

using namespace qmexpect;
using namespace qmexpect::specfun;

namespace {

// Independent oracles.

double hermite_oracle(int n, double q) {
  std::vector<double> h = {1.0, 2.0 * q};
  for (int k = 1; k < n; ++k) h.push_back(2.0 * q * h[k] - 2.0 * k * h[k - 1]);
  return h[static_cast<std::size_t>(n)];
}

double laguerre_oracle(int n, double s, double xi) {
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double binom = std::tgamma(n + s + 1.0) / (std::tgamma(n - k + 1.0) * std::tgamma(s + k + 1.0));
    sum += (k % 2 == 0 ? 1.0 : -1.0) * binom * std::pow(xi, k) / std::tgamma(k + 1.0);
  }
  return sum;
}

// Ferrers P_nu^mu(y) from its hypergeometric series in (1 - y) / 2.
double ferrers_oracle(double nu, double mu, double y) {
  const double z = 0.5 * (1.0 - y);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 400; ++k) {
    term *= (-nu + k) * (nu + 1.0 + k) / ((1.0 - mu + k) * (k + 1.0)) * z;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::pow((1.0 + y) / (1.0 - y), 0.5 * mu) / std::tgamma(1.0 - mu) * sum;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("hermite low orders and recurrence oracle") {
  CHECK(hermite(0, 0.7).value == 1.0);
  CHECK(hermite(0, 0.7).derivative == 0.0);
  CHECK(hermite(1, 0.3).value == doctest::Approx(0.6));
  CHECK(hermite(1, 0.3).derivative == 2.0);
  for (int n = 0; n <= 12; ++n) {
    CHECK(rel(hermite(n, 1.3).value, hermite_oracle(n, 1.3)) < 1e-13);
    if (n > 0) CHECK(rel(hermite(n, 1.3).derivative, 2.0 * n * hermite_oracle(n - 1, 1.3)) < 1e-13);
  }
  CHECK_THROWS_AS(hermite(-1, 0.0), DomainError);
}

TEST_CASE("associated legendre values, parity and domain") {
  CHECK(assoc_legendre_int(1, 0, 0.37).value == doctest::Approx(0.37));
  // Rodrigues form with the Condon-Shortley phase: P_3^2 = 15 x (1 - x^2).
  const double x = 0.4;
  CHECK(rel(assoc_legendre_int(3, 2, x).value, 15.0 * x * (1.0 - x * x)) < 1e-14);
  CHECK(rel(assoc_legendre_int(3, 2, x).derivative, 15.0 - 45.0 * x * x) < 1e-12);
  CHECK(rel(assoc_legendre_int(2, 1, x).value, -3.0 * x * std::sqrt(1.0 - x * x)) < 1e-14);
  // P_2^{-1} = -(1/6) P_2^1
  CHECK(rel(assoc_legendre_int(2, -1, x).value, 0.5 * x * std::sqrt(1.0 - x * x)) < 1e-14);

  for (int L = 0; L <= 6; ++L)
    for (int M = -L; M <= L; ++M)
      for (int i = 0; i < 64; ++i) {
        const double y = -1.0 + 2.0 * (i + 0.5) / 64.0;
        const double sign = (L + M) % 2 == 0 ? 1.0 : -1.0;
        CHECK(std::abs(assoc_legendre_value(L, M, y) - sign * assoc_legendre_value(L, M, -y)) <= 1e-12);
      }
  CHECK_THROWS_AS(assoc_legendre_int(2, 1, 1.01), DomainError);
  CHECK_THROWS_AS(assoc_legendre_int(2, 3, 0.1), DomainError);
  CHECK_THROWS_AS(assoc_legendre_int(2, 1, 1.0), DomainError);
}

TEST_CASE("associated legendre derivative recurrence lowers the degree") {
  // (x^2 - 1) dP_L^M/dx = L x P_L^M - (L + M) P_{L-1}^M
  for (int L = 1; L <= 8; ++L)
    for (int M = -L + 1; M <= L - 1; ++M)
      for (double x : {-0.83, -0.2, 0.11, 0.57, 0.94}) {
        const auto p = assoc_legendre_int(L, M, x);
        const double lhs = (x * x - 1.0) * p.derivative;
        const double rhs = L * x * p.value - (L + M) * assoc_legendre_int(L - 1, M, x).value;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
      }
}

TEST_CASE("associated laguerre against the finite series") {
  CHECK(assoc_laguerre(0, 2.5, 3.0).value == 1.0);
  CHECK(assoc_laguerre(0, 2.5, 3.0).derivative == 0.0);
  CHECK(rel(assoc_laguerre(1, 2.5, 0.8).value, -0.8 + 2.5 + 1.0) < 1e-14);
  CHECK(rel(assoc_laguerre(4, 2.37, 1.1).value, laguerre_oracle(4, 2.37, 1.1)) < 1e-13);
  CHECK(rel(assoc_laguerre(4, 2.37, 1.1).derivative, -laguerre_oracle(3, 3.37, 1.1)) < 1e-13);
  CHECK_THROWS_AS(assoc_laguerre(2, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(assoc_laguerre(2, 0.5, -1.0), DomainError);
}

TEST_CASE("poschl-teller polynomial against the hypergeometric series") {
  for (double lambda : {1.3, 1.8, 3.0, 4.5})
    for (int n = 0; n <= 4; ++n)
      for (double y : {-0.6, -0.1, 0.3, 0.55}) {
        const double want = ferrers_oracle(n + lambda - 0.5, 0.5 - lambda, y);
        CHECK(std::abs(poschl_teller_poly(n, lambda, y).value - want) <= 1e-12 * std::max(1.0, std::abs(want)));
      }
  // n = 0 is a pure power of (1 - y^2).
  const double lambda = 2.2;
  const double ref = poschl_teller_poly(0, lambda, 0.0).value;
  for (double y : {-0.9, -0.4, 0.2, 0.7}) {
    const double ratio = poschl_teller_poly(0, lambda, y).value / std::pow(1.0 - y * y, 0.5 * (lambda - 0.5));
    CHECK(rel(ratio, ref) < 1e-12);
  }
  for (int n = 0; n <= 5; ++n)
    for (double y : {0.1, 0.45, 0.8}) {
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::abs(poschl_teller_poly(n, 1.7, -y).value - sign * poschl_teller_poly(n, 1.7, y).value) <= 1e-12);
    }
  CHECK_THROWS_AS(poschl_teller_poly(1, 1.7, 1.2), DomainError);
  CHECK_THROWS_AS(poschl_teller_poly(1, 0.9, 0.2), DomainError);
}

TEST_CASE("gamma family") {
  CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(ln_gamma(2.0)) < 1e-15);
  CHECK(rel(ln_gamma(7.5), std::log(std::tgamma(7.5))) < 1e-14);
  CHECK(std::abs(digamma(1.0) + 0.57721566490153286061) < 1e-14);
  for (double x : {0.1, 0.5, 1.7, 3.3, 9.0, 25.5}) CHECK(std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) < 1e-13);
  // Psi(1/2) = -gamma - 2 ln 2
  CHECK(std::abs(digamma(0.5) + 0.57721566490153286061 + 2.0 * std::log(2.0)) < 1e-14);
  CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
  CHECK_THROWS_AS(digamma(-1.0), DomainError);
}

TEST_CASE("hermite orthogonality") {
  const auto d = CoordinateDomain::full_line(12.0);
  for (int n = 0; n <= 12; ++n)
    for (int m = 0; m < n; ++m) {
      const auto r = integrate([&](double q) { return std::exp(-q * q) * hermite(n, q).value * hermite(m, q).value; }, d);
      const double nn = std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::pow(2.0, m) * std::tgamma(m + 1.0) *
                                  std::numbers::pi);
      CHECK(std::abs(r.value) <= 1e-10 * nn);
    }
}

TEST_CASE("laguerre orthogonality with real order") {
  for (double s : {0.5, 2.37, 5.0}) {
    const auto d = CoordinateDomain::half_line(120.0);
    for (int n = 0; n <= 8; ++n)
      for (int m = 0; m <= n; ++m) {
        const auto r = integrate(
            [&](double xi) {
              if (xi <= 0.0) return 0.0;
              return std::exp(-xi + s * std::log(xi)) * assoc_laguerre(n, s, xi).value * assoc_laguerre(m, s, xi).value;
            },
            d);
        const double norm = std::exp(ln_gamma(s + n + 1.0) - ln_gamma(n + 1.0));
        if (n == m)
          CHECK(rel(r.value, norm) <= 1e-9);
        else
          CHECK(std::abs(r.value) <= 1e-9 * norm);
      }
  }
}

TEST_CASE("analytic derivatives agree with central differences") {
  const double h = 1e-5;
  auto fd = [h](auto f, double x) { return (f(x + h) - f(x - h)) / (2.0 * h); };
  for (int n = 1; n <= 8; ++n) {
    const double q = 0.63;
    CHECK(rel(hermite(n, q).derivative, fd([n](double t) { return hermite(n, t).value; }, q)) <= 1e-6);
    const double xi = 1.9;
    CHECK(rel(assoc_laguerre(n, 2.37, xi).derivative, fd([n](double t) { return assoc_laguerre(n, 2.37, t).value; }, xi)) <=
          1e-6);
    const double y = 0.37;
    CHECK(rel(poschl_teller_poly(n, 1.8, y).derivative, fd([n](double t) { return poschl_teller_poly(n, 1.8, t).value; }, y)) <=
          1e-6);
  }
  for (int L = 1; L <= 6; ++L)
    for (int M = -L; M <= L; ++M) {
      const double x = 0.29;
      const double d = assoc_legendre_int(L, M, x).derivative;
      const double f = fd([L, M](double t) { return assoc_legendre_int(L, M, t).value; }, x);
      CHECK(std::abs(d - f) <= 1e-6 * std::max(1.0, std::abs(f)));
    }
}

TEST_CASE("generic evaluators on jets match the recurrence derivatives") {
  const auto q = Jet4::variable(0.81);
  for (int n = 0; n <= 10; ++n) CHECK(rel(hermite_value(n, q).derivative(1) + 1e-300, hermite(n, 0.81).derivative + 1e-300) < 1e-12);
  const LaguerreSeries series(5, 2.37);
  const auto xi = Jet4::variable(1.4);
  CHECK(rel(series(xi).derivative(1), assoc_laguerre(5, 2.37, 1.4).derivative) < 1e-12);
  CHECK(rel(series(xi).derivative(2), LaguerreSeries(3, 4.37)(1.4)) < 1e-12);
}
