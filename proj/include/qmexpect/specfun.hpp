#pragma once

// Orthogonal polynomials and gamma-family functions used by the bound-state
// catalog. The generic evaluators are templates so the same recurrences run on
// doubles and on Taylor jets.

#include <vector>

namespace qmexpect::specfun {

/// Polynomial value and its derivative with respect to the polynomial's own argument.
struct PolyEval {
  double value = 0.0;
  double derivative = 0.0;
};

/// Physicists' Hermite polynomial H_n(q). Derivative is 2n H_{n-1}(q).
PolyEval hermite(int n, double q);

/// Associated Legendre function P_L^M(x) of degree L and order M, with the
/// Condon-Shortley phase. The derivative comes from
///   (x^2 - 1) P_L^M'(x) = L x P_L^M(x) - (L + M) P_{L-1}^M(x)
/// and is only available for |x| < 1. Throws DomainError for |x| > 1,
/// |M| > L, or a derivative request at |x| = 1.
PolyEval assoc_legendre_int(int L, int M, double x);

/// Value-only P_L^M(x), defined on the closed interval [-1, 1].
double assoc_legendre_value(int L, int M, double x);

/// Generalized Laguerre polynomial L_n^s(xi) for real s > -1.
/// Derivative is -L_{n-1}^{s+1}(xi). Throws DomainError for s <= -1 or xi < 0.
PolyEval assoc_laguerre(int n, double s, double xi);

/// The Poschl-Teller eigenpolynomial P_nu^mu(y), mu = 1/2 - lambda,
/// nu = n + lambda - 1/2, on [-1, 1]. Evaluated as
///   K(n, lambda) (1 - y^2)^{(lambda - 1/2)/2} C_n^{(lambda)}(y)
/// with C the Gegenbauer polynomial. Derivative with respect to y is only
/// available for |y| < 1. Throws DomainError for lambda <= 1 or |y| > 1.
PolyEval poschl_teller_poly(int n, double lambda, double y);

/// Proportionality constant K(n, lambda) between the Ferrers function and
/// the Gegenbauer form used by poschl_teller_poly.
double poschl_teller_constant(int n, double lambda);

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Digamma Psi(x) = Gamma'(x) / Gamma(x) for x > 0.
double digamma(double x);

// ---------------------------------------------------------------------------
// Generic evaluators.

template <class T>
T hermite_value(int n, const T& q) {
  if (n == 0) return T(1.0);
  T prev(1.0);
  T cur = 2.0 * q;
  for (int k = 1; k < n; ++k) {
    T next = 2.0 * q * cur - (2.0 * k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Gegenbauer C_n^{(lambda)}(y) via n C_n = 2y(n + lambda - 1) C_{n-1} - (n + 2 lambda - 2) C_{n-2}.
template <class T>
T gegenbauer_value(int n, double lambda, const T& y) {
  if (n < 0) return T(0.0);
  if (n == 0) return T(1.0);
  T prev(1.0);
  T cur = (2.0 * lambda) * y;
  for (int k = 2; k <= n; ++k) {
    T next = ((2.0 * (k + lambda - 1.0)) * y * cur - (k + 2.0 * lambda - 2.0) * prev) / static_cast<double>(k);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Polynomial part Q of P_L^m(x) = (-1)^m (1 - x^2)^{m/2} Q(x), m >= 0.
/// Returns zero when m > L.
template <class T>
T legendre_reduced_value(int L, int m, const T& x) {
  if (m > L) return T(0.0);
  double qmm = 1.0;
  for (int k = 1; k <= m; ++k) qmm *= (2.0 * k - 1.0);
  if (L == m) return T(qmm);
  T prev(qmm);
  T cur = ((2.0 * m + 1.0) * qmm) * x;
  for (int l = m + 2; l <= L; ++l) {
    T next = ((2.0 * l - 1.0) * x * cur - (l + m - 1.0) * prev) / static_cast<double>(l - m);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Finite power series of L_n^s with coefficients
/// (-1)^k binom(n + s, n - k) / k!, computed once through ln_gamma.
class LaguerreSeries {
 public:
  LaguerreSeries() = default;
  LaguerreSeries(int n, double s);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double order() const { return s_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  template <class T>
  T operator()(const T& xi) const {
    if (coeffs_.empty()) return T(0.0);
    T acc(coeffs_.back());
    for (int k = degree() - 1; k >= 0; --k) acc = acc * xi + T(coeffs_[static_cast<std::size_t>(k)]);
    return acc;
  }

 private:
  double s_ = 0.0;
  std::vector<double> coeffs_;  // empty means the zero polynomial (n < 0)
};

}  // namespace qmexpect::specfun
