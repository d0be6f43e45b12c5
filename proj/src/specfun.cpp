#include "qmexpect/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "qmexpect/errors.hpp"

namespace qmexpect::specfun {

PolyEval hermite(int n, double q) {
  if (n < 0) throw DomainError("hermite: order must be non-negative, got " + std::to_string(n));
  PolyEval out;
  out.value = hermite_value(n, q);
  out.derivative = n == 0 ? 0.0 : 2.0 * n * hermite_value(n - 1, q);
  return out;
}

namespace {

void check_legendre_args(int L, int M, double x) {
  if (L < 0 || std::abs(M) > L)
    throw DomainError("assoc_legendre: need L >= 0 and |M| <= L, got L=" + std::to_string(L) +
                      " M=" + std::to_string(M));
  if (!(std::abs(x) <= 1.0)) throw DomainError("assoc_legendre: |x| > 1");
}

// P_L^m for m >= 0.
double legendre_nonneg(int L, int m, double x) {
  if (m > L) return 0.0;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double w = m == 0 ? 1.0 : std::pow(std::max(0.0, (1.0 - x) * (1.0 + x)), 0.5 * m);
  return sign * w * legendre_reduced_value(L, m, x);
}

// Factor c with P_L^{-m} = c P_L^m.
double negative_order_factor(int L, int m) {
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(ln_gamma(L - m + 1.0) - ln_gamma(L + m + 1.0));
}

}  // namespace

double assoc_legendre_value(int L, int M, double x) {
  check_legendre_args(L, M, x);
  const int m = std::abs(M);
  const double p = legendre_nonneg(L, m, x);
  return M < 0 ? negative_order_factor(L, m) * p : p;
}

PolyEval assoc_legendre_int(int L, int M, double x) {
  check_legendre_args(L, M, x);
  const int m = std::abs(M);
  PolyEval out;
  out.value = legendre_nonneg(L, m, x);
  if (std::abs(x) < 1.0) {
    const double lower = legendre_nonneg(L - 1, m, x);
    out.derivative = (L * x * out.value - (L + m) * lower) / ((x - 1.0) * (x + 1.0));
  } else {
    // Endpoint limits of d/dx [(-1)^m (1-x^2)^{m/2} Q(x)].
    if (m == 0) {
      out.derivative = 0.5 * L * (L + 1.0) * ((L + 1) % 2 == 0 ? 1.0 : x);
    } else if (m == 1) {
      throw DomainError("assoc_legendre_int: derivative is unbounded at |x| = 1 for |M| = 1");
    } else if (m == 2) {
      out.derivative = -2.0 * x * legendre_reduced_value(L, m, x);
    } else {
      out.derivative = 0.0;
    }
  }
  if (M < 0) {
    const double c = negative_order_factor(L, m);
    out.value *= c;
    out.derivative *= c;
  }
  return out;
}

LaguerreSeries::LaguerreSeries(int n, double s) : s_(s) {
  if (!(s > -1.0)) throw DomainError("assoc_laguerre: order s must exceed -1, got " + std::to_string(s));
  if (n < 0) return;
  coeffs_.resize(static_cast<std::size_t>(n) + 1);
  const double top = ln_gamma(n + s + 1.0);
  for (int k = 0; k <= n; ++k) {
    const double mag = std::exp(top - ln_gamma(n - k + 1.0) - ln_gamma(s + k + 1.0) - ln_gamma(k + 1.0));
    coeffs_[static_cast<std::size_t>(k)] = (k % 2 == 0) ? mag : -mag;
  }
}

PolyEval assoc_laguerre(int n, double s, double xi) {
  if (n < 0) throw DomainError("assoc_laguerre: degree must be non-negative");
  if (!(xi >= 0.0)) throw DomainError("assoc_laguerre: argument must be non-negative");
  const LaguerreSeries poly(n, s);
  PolyEval out;
  out.value = poly(xi);
  out.derivative = n == 0 ? 0.0 : -LaguerreSeries(n - 1, s + 1.0)(xi);
  return out;
}

double poschl_teller_constant(int n, double lambda) {
  if (!(lambda > 1.0)) throw DomainError("poschl_teller: lambda must exceed 1");
  if (n < 0) throw DomainError("poschl_teller: n must be non-negative");
  // y -> 1 limit: P_nu^mu(y) ~ 2^mu / Gamma(1 - mu) times the weight, and C_n(1) = Gamma(n + 2 lambda) / (n! Gamma(2 lambda)).
  const double log_k = (0.5 - lambda) * std::log(2.0) + ln_gamma(n + 1.0) + ln_gamma(2.0 * lambda) -
                       ln_gamma(lambda + 0.5) - ln_gamma(n + 2.0 * lambda);
  return std::exp(log_k);
}

PolyEval poschl_teller_poly(int n, double lambda, double y) {
  const double k = poschl_teller_constant(n, lambda);
  if (!(std::abs(y) <= 1.0)) throw DomainError("poschl_teller_poly: |y| > 1");
  const double e = 0.5 * (lambda - 0.5);
  const double one_minus = (1.0 - y) * (1.0 + y);
  const double c = gegenbauer_value(n, lambda, y);
  PolyEval out;
  out.value = k * std::pow(one_minus, e) * c;
  if (std::abs(y) < 1.0) {
    const double dc = n == 0 ? 0.0 : 2.0 * lambda * gegenbauer_value(n - 1, lambda + 1.0, y);
    out.derivative = k * (std::pow(one_minus, e) * dc - 2.0 * e * y * std::pow(one_minus, e - 1.0) * c);
  } else if (e >= 1.0) {
    out.derivative = e == 1.0 ? -2.0 * y * k * c : 0.0;
  } else {
    throw DomainError("poschl_teller_poly: derivative is unbounded at |y| = 1 for lambda <= 5/2");
  }
  return out;
}

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive");
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
  double shift = 0.0;
  while (x < 8.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
  return shift + std::log(x) - 0.5 * inv - tail;
}

}  // namespace qmexpect::specfun
