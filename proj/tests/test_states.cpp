#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qmexpect/errors.hpp"
#include "qmexpect/specfun.hpp"
#include "qmexpect/states.hpp"

using namespace qmexpect;
constexpr double kPi = std::numbers::pi;

namespace {

void check_normalized(const BoundState& s, double tol = 1e-10) {
  INFO(s.label());
  CHECK(std::abs(norm_integral(s).value - 1.0) <= tol);
}

void check_fd(const BoundState& s, double x) {
  INFO(s.label() << " at " << x);
  const double h = 1e-5;
  const double fd = (s.eval(x + h).value.real() - s.eval(x - h).value.real()) / (2.0 * h);
  const auto p = s.eval(x);
  CHECK(std::abs(p.derivative.real() - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
  // jets and recurrences agree on the first derivative
  CHECK(std::abs(s.derivatives(x)[1].real() - p.derivative.real()) <= 1e-10 * std::max(1.0, std::abs(fd)));
  CHECK(std::abs(s.derivatives(x)[0].real() - p.value.real()) <= 1e-12 * std::max(1.0, std::abs(p.value.real())));
}

}  // namespace

TEST_CASE("infinite well") {
  const auto odd = make_infinite_well(1, Parity::Odd, 2.0);
  CHECK(std::abs(odd.eval(0.3).value.real() - std::sin(kPi * 0.3)) < 1e-15);
  for (int n = 1; n <= 6; ++n)
    for (Parity p : {Parity::Even, Parity::Odd}) {
      const auto s = make_infinite_well(n, p, 1.7);
      check_normalized(s);
      CHECK(std::abs(s.eval(0.85).value) < 1e-14);
      CHECK(std::abs(s.eval(-0.85).value) < 1e-14);
      CHECK(count_nodes(s) == s.expected_nodes());
      CHECK(hamiltonian_residual(s) <= 1e-6);
      check_fd(s, 0.31);
    }
  CHECK_THROWS_AS(make_infinite_well(0, Parity::Odd, 1.0), DomainError);
  CHECK_THROWS_AS(make_infinite_well(1, Parity::Odd, -1.0), DomainError);
  CHECK_THROWS_AS(odd.eval(1.5), DomainError);
  const auto sh = make_infinite_well_shifted(3, 2.0);
  check_normalized(sh);
  CHECK(count_nodes(sh) == 2);
}

TEST_CASE("finite well matching") {
  const double v0 = 10.0, a = 1.0;
  CHECK(finite_well_branch_count(v0, a, Parity::Even) == 2);
  CHECK(finite_well_branch_count(v0, a, Parity::Odd) == 1);
  for (Parity p : {Parity::Even, Parity::Odd})
    for (int b = 0; b < finite_well_branch_count(v0, a, p); ++b) {
      const auto s = make_finite_well(v0, a, p, b);
      const double k = s.param("k"), kappa = s.param("kappa");
      if (p == Parity::Even)
        CHECK(std::abs(k * std::tan(k * a) - kappa) <= 1e-10);
      else
        CHECK(std::abs(-k / std::tan(k * a) - kappa) <= 1e-10);
      CHECK(std::abs(k * k + kappa * kappa - 2.0 * v0) <= 1e-10);
      check_normalized(s);
      for (double edge : {-a, a}) {
        const double in = s.eval(edge * (1.0 - 1e-15)).value.real();
        const double out = s.eval(edge * (1.0 + 1e-15)).value.real();
        CHECK(std::abs(in - out) <= 1e-12);
        const double din = s.eval(edge * (1.0 - 1e-15)).derivative.real();
        const double dout = s.eval(edge * (1.0 + 1e-15)).derivative.real();
        CHECK(std::abs(din - dout) <= 1e-10);
      }
      CHECK(count_nodes(s) == s.expected_nodes());
      CHECK(hamiltonian_residual(s) <= 1e-6);
      check_fd(s, 0.4);
      check_fd(s, -1.6);
    }
  CHECK_THROWS_AS(make_finite_well(v0, a, Parity::Even, 2), NoSuchBranch);
  CHECK_THROWS_AS(make_finite_well(v0, a, Parity::Odd, 1), NoSuchBranch);
  // deep-well limit
  const auto deep = make_finite_well(1e6, 1.0, Parity::Even, 0);
  CHECK(std::abs(deep.param("k") * 1.0 / (kPi / 2.0) - 1.0) < 0.01);
}

TEST_CASE("delta well") {
  const auto s = make_delta(1.3);
  const double kappa = 1.3;
  CHECK(std::abs(s.energy() + 1.3 * 1.3 / 2.0) < 1e-15);
  check_normalized(s, 1e-12);
  const auto p = s.eval(0.0);
  CHECK(p.one_sided);
  CHECK(std::abs(p.derivative.real() + std::pow(kappa, 1.5)) < 1e-14);
  const auto l = s.eval_one_sided(0.0, Side::Left);
  const auto r = s.eval_one_sided(0.0, Side::Right);
  CHECK(std::abs((r.derivative - l.derivative).real() + 2.0 * kappa * p.value.real()) < 1e-14);
  CHECK(std::abs(s.eval(0.7).value.real() - std::sqrt(kappa) * std::exp(-kappa * 0.7)) < 1e-15);
  CHECK(count_nodes(s) == 0);
  check_fd(s, 0.5);
  check_fd(s, -0.5);
}

TEST_CASE("harmonic oscillator") {
  const double omega = 1.7;
  const auto g = make_lho(0, omega);
  const double alpha = omega;
  for (double x : {-1.0, 0.0, 0.4})
    CHECK(std::abs(g.eval(x).value.real() - std::pow(alpha / kPi, 0.25) * std::exp(-0.5 * alpha * x * x)) < 1e-15);
  CHECK(std::abs(make_lho(1, omega).eval(0.0).value) == 0.0);
  for (int n = 0; n <= 8; ++n) {
    const auto s = make_lho(n, omega);
    check_normalized(s);
    CHECK(count_nodes(s) == n);
    CHECK(hamiltonian_residual(s) <= 1e-8);
    CHECK(std::abs(s.energy() - (n + 0.5) * omega) < 1e-14);
    check_fd(s, 0.77);
    for (double x : {0.2, 1.1, 2.3}) CHECK(std::abs(std::abs(s.eval(-x).value) - std::abs(s.eval(x).value)) <= 1e-10);
  }
  Units u{0.5, 2.0};
  const auto t = make_lho(3, 0.8, u);
  check_normalized(t);
  CHECK(hamiltonian_residual(t) <= 1e-8);
}

TEST_CASE("poschl-teller") {
  for (double lambda : {1.7, 3.0})
    for (int n = 0; n <= 4; ++n) {
      const double a = 1.3;
      const auto s = make_poschl_teller(n, lambda, a);
      INFO(s.label());
      check_normalized(s, 1e-9);
      CHECK(std::abs(s.eval(kPi / (2.0 * a)).value) == 0.0);
      CHECK(std::abs(s.eval(-kPi / (2.0 * a)).value) == 0.0);
      const double closed = a * a / 2.0 * (n * n + 2.0 * n * lambda + lambda);
      CHECK(std::abs(s.energy() - closed) <= 1e-9 * closed);
      CHECK(hamiltonian_residual(s) <= 1e-7);
      CHECK(count_nodes(s) == n);
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      for (double x : {0.1, 0.5, 1.0})
        CHECK(std::abs(s.eval(-x).value.real() - sign * s.eval(x).value.real()) <= 1e-10);
      check_fd(s, 0.33);
    }
  CHECK_THROWS_AS(make_poschl_teller(0, 1.0, 1.0), DomainError);
}

TEST_CASE("morse") {
  CHECK(morse_bound_state_count(3.2) == 3);
  CHECK(morse_bound_state_count(10.5) == 10);
  CHECK(morse_bound_state_count(4.2) == 4);
  CHECK_THROWS_AS(make_morse(10, 10.5, 1.0, 1.0), NoBoundState);
  CHECK_THROWS_AS(make_morse(3, 3.2, 1.0, 1.0), NoBoundState);
  for (double lambda : {4.2, 10.5})
    for (int n = 0; n < morse_bound_state_count(lambda); ++n) {
      const auto s = make_morse(n, lambda, 1.0, 1.0);
      INFO(s.label());
      CHECK(s.param("s") + 2.0 * n == 2.0 * lambda - 1.0);
      check_normalized(s, 1e-9);
      CHECK(count_nodes(s) == n);
      CHECK(hamiltonian_residual(s) <= 1e-6);
      check_fd(s, 0.13);
    }
  // ground state: r0 * integral of e^{-xi} xi^{s-1} N^2 / beta d xi = 1
  const auto g = make_morse(0, 10.5, 1.0, 1.0);
  const double s = g.param("s");
  CHECK(s == 20.0);
  const double n2 = g.norm_constant() * g.norm_constant();
  CHECK(std::abs(n2 * std::exp(specfun::ln_gamma(s)) - 1.0) < 1e-12);
  // other scales
  const auto t = make_morse(2, 4.2, 0.7, 2.0, Units{1.3, 0.6});
  check_normalized(t, 1e-9);
  CHECK(hamiltonian_residual(t) <= 1e-6);
}

TEST_CASE("hydrogen") {
  const double a0 = 1.0;
  const auto h = make_hydrogen(1, 0, 0, a0);
  for (double r : {0.1, 1.0, 3.0})
    CHECK(std::abs(h.radial.eval(r).value.real() - 2.0 * std::exp(-r / a0)) < 1e-14);
  for (int n = 1; n <= 4; ++n)
    for (int L = 0; L < n; ++L) {
      const auto s = make_hydrogen(n, L, 0, 1.3).radial;
      INFO(s.label());
      check_normalized(s);
      CHECK(count_nodes(s) == n - L - 1);
      CHECK(hamiltonian_residual(s) <= 1e-6);
      check_fd(s, 0.9);
    }
  CHECK(count_nodes(make_hydrogen(2, 1, 1, 1.0).radial) == 0);
  CHECK_THROWS_AS(make_hydrogen(2, 2, 0, 1.0), DomainError);
  CHECK_THROWS_AS(make_hydrogen(2, 1, 2, 1.0), DomainError);
  CHECK_THROWS_AS(h.radial.eval(-0.1), DomainError);
}

TEST_CASE("angular factors") {
  for (int L = 0; L <= 5; ++L)
    for (int M = -L; M <= L; ++M) {
      const auto t = make_angular_theta(L, M);
      check_normalized(t);
      CHECK(hamiltonian_residual(t) <= 1e-8);
      check_fd(t, 0.7);
      if (M > 0) {
        const auto neg = make_angular_theta(L, -M);
        const double sign = M % 2 == 0 ? 1.0 : -1.0;
        CHECK(std::abs(neg.eval(0.9).value.real() - sign * t.eval(0.9).value.real()) < 1e-13);
      }
      CHECK(count_nodes(t) == L - std::abs(M));
    }
  // Y_10 theta factor sqrt(3/2) cos(theta)
  CHECK(std::abs(make_angular_theta(1, 0).eval(0.4).value.real() - std::sqrt(1.5) * std::cos(0.4)) < 1e-15);
  for (int M = -3; M <= 3; ++M) {
    const auto p = make_angular_phi(M);
    check_normalized(p, 1e-12);
    CHECK(p.is_real() == (M == 0));
    CHECK(std::abs(p.eval(0.3).derivative - std::complex<double>(0.0, M) * p.eval(0.3).value) < 1e-15);
  }
}
