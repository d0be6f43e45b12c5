#pragma once

// Truncated Taylor arithmetic. A Jet holds the Taylor coefficients
// c_k = f^(k)(x0) / k! of a function around a point, so evaluating a formula
// on Jet arguments yields exact derivatives up to order N (to round-off).

#include <array>
#include <cmath>
#include <cstddef>

namespace qmexpect {

template <std::size_t N = 4>
struct Jet {
  std::array<double, N + 1> c{};

  constexpr Jet() = default;
  constexpr Jet(double v) { c[0] = v; }  // NOLINT: implicit constant promotion

  /// The independent variable x0 + t.
  static Jet variable(double x0) {
    Jet j(x0);
    if constexpr (N > 0) j.c[1] = 1.0;
    return j;
  }

  double value() const { return c[0]; }

  /// k-th derivative (k <= N).
  double derivative(std::size_t k) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return c[k] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t i = 0; i <= N; ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t i = 0; i <= N; ++i) c[i] -= o.c[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c) v = -v;
    return a;
  }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t k = 0; k <= N; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= k; ++j) acc += a.c[j] * b.c[k - j];
      r.c[k] = acc;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t k = 0; k <= N; ++k) {
      double acc = a.c[k];
      for (std::size_t j = 1; j <= k; ++j) acc -= b.c[j] * r.c[k - j];
      r.c[k] = acc / b.c[0];
    }
    return r;
  }
  friend Jet operator/(double s, const Jet& b) { return Jet(s) / b; }
};

template <std::size_t N>
Jet<N> exp(const Jet<N>& a) {
  Jet<N> e;
  e.c[0] = std::exp(a.c[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a.c[j] * e.c[k - j];
    e.c[k] = acc / static_cast<double>(k);
  }
  return e;
}

/// Requires a.value() > 0.
template <std::size_t N>
Jet<N> log(const Jet<N>& a) {
  Jet<N> l;
  l.c[0] = std::log(a.c[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    double acc = a.c[k];
    for (std::size_t j = 1; j < k; ++j)
      acc -= static_cast<double>(j) * l.c[j] * a.c[k - j] / static_cast<double>(k);
    l.c[k] = acc / a.c[0];
  }
  return l;
}

/// Real power of a jet with positive value.
template <std::size_t N>
Jet<N> pow(const Jet<N>& a, double p) {
  return exp(log(a) * p);
}

/// Non-negative integer power by repeated multiplication (valid at a = 0).
template <std::size_t N>
Jet<N> ipow(const Jet<N>& a, int p) {
  Jet<N> r(1.0);
  for (int i = 0; i < p; ++i) r *= a;
  return r;
}

template <std::size_t N>
void sincos(const Jet<N>& a, Jet<N>& s, Jet<N>& co) {
  s = Jet<N>();
  co = Jet<N>();
  s.c[0] = std::sin(a.c[0]);
  co.c[0] = std::cos(a.c[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    double as = 0.0;
    double ac = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      const double w = static_cast<double>(j) * a.c[j];
      as += w * co.c[k - j];
      ac -= w * s.c[k - j];
    }
    s.c[k] = as / static_cast<double>(k);
    co.c[k] = ac / static_cast<double>(k);
  }
}

template <std::size_t N>
Jet<N> sin(const Jet<N>& a) {
  Jet<N> s, c;
  sincos(a, s, c);
  return s;
}

template <std::size_t N>
Jet<N> cos(const Jet<N>& a) {
  Jet<N> s, c;
  sincos(a, s, c);
  return c;
}

using Jet4 = Jet<4>;

}  // namespace qmexpect
