#include "qmexpect/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "qmexpect/errors.hpp"

namespace qmexpect {

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::FullLine: return "FullLine";
    case DomainKind::HalfLine: return "HalfLine";
    case DomainKind::FiniteInterval: return "FiniteInterval";
    case DomainKind::PeriodicAngle: return "PeriodicAngle";
    case DomainKind::PolarAngle: return "PolarAngle";
  }
  return "?";
}

CoordinateDomain CoordinateDomain::full_line(double lower, double upper) {
  CoordinateDomain d;
  d.kind = DomainKind::FullLine;
  d.lower = lower;
  d.upper = upper;
  d.validate();
  return d;
}

CoordinateDomain CoordinateDomain::half_line(double radius, int measure_exponent) {
  CoordinateDomain d;
  d.kind = DomainKind::HalfLine;
  d.lower = 0.0;
  d.upper = radius;
  d.measure_exponent = measure_exponent;
  d.validate();
  return d;
}

CoordinateDomain CoordinateDomain::finite(double a, double b) {
  CoordinateDomain d;
  d.kind = DomainKind::FiniteInterval;
  d.lower = a;
  d.upper = b;
  d.validate();
  return d;
}

CoordinateDomain CoordinateDomain::periodic_angle() {
  CoordinateDomain d;
  d.kind = DomainKind::PeriodicAngle;
  d.lower = 0.0;
  d.upper = 2.0 * std::numbers::pi;
  return d;
}

CoordinateDomain CoordinateDomain::polar_angle(AngularWeight weight) {
  CoordinateDomain d;
  d.kind = DomainKind::PolarAngle;
  d.lower = 0.0;
  d.upper = std::numbers::pi;
  d.angular_weight = weight;
  return d;
}

void CoordinateDomain::validate() const {
  if (!(lower < upper)) throw DomainError("CoordinateDomain: need lower < upper");
  if (measure_exponent != 0 && measure_exponent != 2)
    throw DomainError("CoordinateDomain: measure exponent must be 0 or 2");
  if (angular_weight == AngularWeight::SinTheta && kind != DomainKind::PolarAngle)
    throw DomainError("CoordinateDomain: sin(theta) weight only applies to the polar angle");
  if (!(jacobian > 0.0)) throw DomainError("CoordinateDomain: jacobian must be positive");
  for (double b : breakpoints)
    if (!(b > lower && b < upper)) throw DomainError("CoordinateDomain: breakpoint outside the window");
}

double CoordinateDomain::measure(double x) const {
  double w = jacobian;
  if (measure_exponent == 2) w *= x * x;
  if (angular_weight == AngularWeight::SinTheta) w *= std::sin(x);
  return w;
}

CoordinateDomain CoordinateDomain::with_breakpoints(std::vector<double> points) const {
  CoordinateDomain d = *this;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  d.breakpoints = std::move(points);
  d.validate();
  return d;
}

CoordinateDomain CoordinateDomain::with_jacobian(double j) const {
  CoordinateDomain d = *this;
  d.jacobian = j;
  d.validate();
  return d;
}

CoordinateDomain CoordinateDomain::without_measure() const {
  CoordinateDomain d = *this;
  d.measure_exponent = 0;
  d.angular_weight = AngularWeight::None;
  d.jacobian = 1.0;
  return d;
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

double magnitude(double v) { return std::abs(v); }
double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class V>
struct Segment {
  double a = 0.0;
  double b = 0.0;
  V value{};
  double error = 0.0;
  double l1 = 0.0;        // integral of |f|
  bool resolved = false;  // cannot be refined further
};

template <class V, class F>
Segment<V> gk15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const V fc = f(center);
  V kronrod = fc * kWgk[7];
  V gauss = fc * kWg[3];
  double resabs = magnitude(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const V f1 = f(center - dx);
    const V f2 = f(center + dx);
    kronrod += (f1 + f2) * kWgk[static_cast<std::size_t>(j)];
    resabs += (magnitude(f1) + magnitude(f2)) * kWgk[static_cast<std::size_t>(j)];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[static_cast<std::size_t>(j / 2)];
  }
  Segment<V> s;
  s.a = a;
  s.b = b;
  s.value = kronrod * half;
  s.l1 = resabs * std::abs(half);
  const double roundoff = 50.0 * kEps * resabs * std::abs(half);
  const double diff = magnitude((kronrod - gauss) * half);
  s.error = std::max(diff, roundoff);
  s.resolved = diff <= roundoff || std::abs(half) <= 4.0 * kEps * std::max(std::abs(center), 1e-300);
  return s;
}

template <class V, class F>
BasicQuadResult<V> adaptive(const F& f, std::vector<double> cuts, const QuadOptions& opts) {
  if (!(opts.abs_tol > 0.0)) throw DomainError("integrate: tolerance must be positive");
  // Heap order: unresolved before resolved, then larger error, then leftmost.
  auto worse = [](const Segment<V>& x, const Segment<V>& y) {
    if (x.resolved != y.resolved) return x.resolved;
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  };
  std::vector<Segment<V>> heap;
  std::size_t nodes = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    heap.push_back(gk15<V>(f, cuts[i], cuts[i + 1]));
    nodes += 15;
  }
  std::make_heap(heap.begin(), heap.end(), worse);

  auto totals = [&heap](V& value, double& error, double& l1) {
    value = V{};
    error = 0.0;
    l1 = 0.0;
    std::vector<const Segment<V>*> ordered;
    ordered.reserve(heap.size());
    for (const auto& s : heap) ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(), [](const auto* x, const auto* y) { return x->a < y->a; });
    for (const auto* s : ordered) {
      value += s->value;
      error += s->error;
      l1 += s->l1;
    }
  };

  V value{};
  double error = 0.0;
  double l1 = 0.0;
  totals(value, error, l1);
  // Running sums drift with many updates, so resync them periodically.
  std::size_t since_sync = 0;
  while (true) {
    // Relative accuracy is measured against the integral of |f|, so cancelling
    // integrands (expected zeros) terminate at their round-off level.
    const double target = std::max(opts.abs_tol, opts.rel_tol * l1);
    if (error <= target) break;
    // Every segment is at its round-off floor: nothing left to refine.
    if (heap.front().resolved) break;
    if (nodes + 30 > opts.node_budget) {
      totals(value, error, l1);
      if (error <= std::max(opts.abs_tol, opts.rel_tol * l1)) break;
      throw NoConvergence("integrate: node budget of " + std::to_string(opts.node_budget) +
                          " evaluations exhausted (error estimate " + std::to_string(error) + ")");
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Segment<V> worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment<V> left = gk15<V>(f, worst.a, mid);
    Segment<V> right = gk15<V>(f, mid, worst.b);
    nodes += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
    if (++since_sync == 64) {
      totals(value, error, l1);
      since_sync = 0;
    }
  }
  totals(value, error, l1);
  return {value, error, nodes};
}

std::vector<double> cuts_for(const CoordinateDomain& d) {
  d.validate();
  std::vector<double> cuts;
  cuts.push_back(d.lower);
  for (double b : d.breakpoints) cuts.push_back(b);
  cuts.push_back(d.upper);
  return cuts;
}

}  // namespace

QuadResult integrate(const RealIntegrand& f, const CoordinateDomain& domain, const QuadOptions& opts) {
  auto g = [&](double x) { return f(x) * domain.measure(x); };
  return adaptive<double>(g, cuts_for(domain), opts);
}

ComplexQuadResult integrate_complex(const ComplexIntegrand& f, const CoordinateDomain& domain,
                                    const QuadOptions& opts) {
  auto g = [&](double x) { return f(x) * domain.measure(x); };
  return adaptive<std::complex<double>>(g, cuts_for(domain), opts);
}

QuadResult integrate_interval(const RealIntegrand& f, double a, double b, const QuadOptions& opts) {
  if (!(a < b)) throw DomainError("integrate_interval: need a < b");
  return adaptive<double>(f, {a, b}, opts);
}

QuadResult integrate_odd_symmetric_check(const RealIntegrand& f, const CoordinateDomain& domain,
                                         const QuadOptions& opts) {
  if (!domain.symmetric()) throw DomainError("integrate_odd_symmetric_check: domain is not symmetric about 0");
  return integrate(f, domain, opts);
}

QuadResult integrate_inverse_sqrt_weight(const RealIntegrand& g, const QuadOptions& opts) {
  return adaptive<double>([&](double t) { return g(std::cos(t)); }, {0.0, std::numbers::pi}, opts);
}

double envelope_cutoff(const std::function<double(double)>& log_envelope, double start, double step,
                       double decades) {
  return envelope_cutoff_below(log_envelope, start, step, log_envelope(start) - decades * std::log(10.0));
}

double envelope_cutoff_below(const std::function<double(double)>& log_envelope, double start, double step,
                             double floor) {
  if (!(step != 0.0)) throw DomainError("envelope_cutoff: step must be nonzero");
  double x = start;
  for (int i = 0; i < 100000; ++i) {
    x += step;
    if (log_envelope(x) < floor) return x;
  }
  throw DomainError("envelope_cutoff: envelope does not decay");
}

}  // namespace qmexpect
