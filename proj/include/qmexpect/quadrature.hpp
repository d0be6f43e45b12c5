#pragma once

// Deterministic adaptive Gauss-Kronrod integration over the coordinate
// domains of the bound-state catalog. Infinite domains are truncated to a
// window chosen from the integrand's known decay envelope.

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace qmexpect {

enum class DomainKind { FullLine, HalfLine, FiniteInterval, PeriodicAngle, PolarAngle };
enum class AngularWeight { None, SinTheta };

const char* to_string(DomainKind kind);

/// An integration domain together with its volume measure
///   jacobian * x^measure_exponent * (sin x if angular_weight == SinTheta).
/// For FullLine and HalfLine, [lower, upper] is the truncation window.
struct CoordinateDomain {
  DomainKind kind = DomainKind::FiniteInterval;
  double lower = 0.0;
  double upper = 1.0;
  int measure_exponent = 0;
  AngularWeight angular_weight = AngularWeight::None;
  double jacobian = 1.0;
  /// Interior points where the integrand may have a kink; never evaluated.
  std::vector<double> breakpoints;

  static CoordinateDomain full_line(double lower, double upper);
  static CoordinateDomain full_line(double radius) { return full_line(-radius, radius); }
  static CoordinateDomain half_line(double radius, int measure_exponent = 0);
  static CoordinateDomain finite(double a, double b);
  static CoordinateDomain periodic_angle();
  static CoordinateDomain polar_angle(AngularWeight weight = AngularWeight::SinTheta);

  /// Throws DomainError when the invariants do not hold.
  void validate() const;

  double measure(double x) const;
  bool contains(double x) const { return x >= lower && x <= upper; }
  bool symmetric() const { return lower == -upper; }

  CoordinateDomain with_breakpoints(std::vector<double> points) const;
  CoordinateDomain with_jacobian(double j) const;
  CoordinateDomain without_measure() const;
};

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  std::size_t node_budget = 2'000'000;
};

template <class V>
struct BasicQuadResult {
  V value{};
  double abs_error_estimate = 0.0;
  std::size_t nodes_used = 0;
};

using QuadResult = BasicQuadResult<double>;
using ComplexQuadResult = BasicQuadResult<std::complex<double>>;

using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Integrates f times the domain measure over the domain window.
/// Throws NoConvergence when the node budget runs out before the tolerance
/// max(abs_tol, rel_tol * integral of |f|) (floored at the round-off level) is met.
QuadResult integrate(const RealIntegrand& f, const CoordinateDomain& domain, const QuadOptions& opts = {});
ComplexQuadResult integrate_complex(const ComplexIntegrand& f, const CoordinateDomain& domain,
                                    const QuadOptions& opts = {});

/// Plain integral over [a, b] with no measure.
QuadResult integrate_interval(const RealIntegrand& f, double a, double b, const QuadOptions& opts = {});

/// Integrates an integrand over a domain symmetric about zero exactly as
/// given, so parity claims are measured rather than assumed.
QuadResult integrate_odd_symmetric_check(const RealIntegrand& f, const CoordinateDomain& domain,
                                         const QuadOptions& opts = {});

/// Integral of g(y) (1 - y^2)^{-1/2} over [-1, 1], computed as the integral of
/// g(cos t) over [0, pi].
QuadResult integrate_inverse_sqrt_weight(const RealIntegrand& g, const QuadOptions& opts = {});

/// Walks outward from `start` in steps of `step` until the monotone log-envelope
/// falls below its value at `start` by more than `decades` powers of ten.
double envelope_cutoff(const std::function<double(double)>& log_envelope, double start, double step,
                       double decades = 20.0);

/// Walks outward from `start` in steps of `step` until the monotone log-envelope
/// drops below `log_floor`.
double envelope_cutoff_below(const std::function<double(double)>& log_envelope, double start, double step,
                             double log_floor);

}  // namespace qmexpect
