#include "qmexpect/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qmexpect/errors.hpp"
#include "qmexpect/jet.hpp"
#include "qmexpect/specfun.hpp"

namespace qmexpect {

namespace {

const cplx kI(0.0, 1.0);

OperatorCoordinate coordinate_of(Family f) {
  switch (f) {
    case Family::HydrogenRadial: return OperatorCoordinate::Radial;
    case Family::AngularTheta: return OperatorCoordinate::Polar;
    case Family::AngularPhi: return OperatorCoordinate::Azimuthal;
    default: return OperatorCoordinate::Cartesian;
  }
}

const char* coordinate_name(OperatorCoordinate c) {
  switch (c) {
    case OperatorCoordinate::Any: return "any";
    case OperatorCoordinate::Cartesian: return "cartesian";
    case OperatorCoordinate::Radial: return "radial";
    case OperatorCoordinate::Polar: return "polar";
    case OperatorCoordinate::Azimuthal: return "azimuthal";
  }
  return "?";
}

bool is_cartesian(const BoundState& s) { return coordinate_of(s.family()) == OperatorCoordinate::Cartesian; }

void check_applicable(const BoundState& state, const OperatorSpec& op) {
  const auto c = coordinate_of(state.family());
  if (op.coordinate != OperatorCoordinate::Any && op.coordinate != c)
    throw WrongDomain("operator " + op.name + " acts on the " + coordinate_name(op.coordinate) +
                      " coordinate, but " + state.label() + " lives on the " + coordinate_name(c) + " coordinate");
  if (op.origin_singularity > 0 && state.domain().kind == DomainKind::HalfLine) {
    // |u|^2 r^2 r^{-p} ~ r^{2L + 2 - p}: integrable iff 2L + 2 - p > -1.
    const int power = 2 * state.origin_exponent() + state.domain().measure_exponent - op.origin_singularity;
    if (power <= -1)
      throw DivergentMoment("<" + op.name + "> diverges for " + state.label() + ": the integrand behaves like r^" +
                            std::to_string(power) + " at the origin");
  }
}

cplx apply(const OperatorSpec& op, const std::array<cplx, 5>& d, double x, double jac) {
  cplx out = 0.0;
  if (op.c0) out += op.c0(x) * d[0];
  if (op.c1) out += op.c1(x) * d[1] / jac;
  if (op.c2) out += op.c2(x) * d[2] / (jac * jac);
  return out;
}

ExpectationResult from(const ComplexQuadResult& r) { return {r.value, r.abs_error_estimate, r.nodes_used, {}}; }

double log_factorial(double n) { return specfun::ln_gamma(n + 1.0); }

std::vector<Contribution> morse_decomposition(const BoundState& state, const QuadOptions& opts) {
  const int n = state.quantum_numbers().n;
  const double s = state.param("s");
  const double lambda = state.param("lambda");
  const double beta = state.param("beta");
  const specfun::LaguerreSeries poly(n, s);
  const specfun::LaguerreSeries dpoly(n - 1, s + 1.0);
  // Each I_k is an integral over xi in (0, inf); it is taken in x, where
  // d xi = beta xi dx and the state's window already bounds the tails.
  const auto window = state.domain().without_measure();
  const double log2l = std::log(2.0 * lambda);
  auto in_x = [&](auto&& g) {
    return integrate(
        [&](double x) {
          const double log_xi = log2l - beta * x;
          const double xi = std::exp(log_xi);
          return beta * g(xi, log_xi);
        },
        window, opts);
  };
  const auto i1 = in_x([&](double xi, double log_xi) {
    const double l = poly(xi);
    return std::exp(-xi + (s + 1.0) * log_xi) * l * l;
  });
  const auto i2 = in_x([&](double xi, double log_xi) {
    const double l = poly(xi);
    return std::exp(-xi + s * log_xi) * l * l;
  });
  const auto i3 = in_x([&](double xi, double log_xi) {
    return std::exp(-xi + (s + 1.0) * log_xi) * poly(xi) * -dpoly(xi);
  });
  const double c1 = std::exp(specfun::ln_gamma(s + n + 1.0) - log_factorial(n));
  const double c2 = c1 / s;
  std::vector<Contribution> out;
  out.push_back({"I1", i1.value, c1, i1.abs_error_estimate});
  out.push_back({"I2", i2.value, c2, i2.abs_error_estimate});
  out.push_back({"I3", i3.value, 0.0, i3.abs_error_estimate});
  const double bracket = -0.5 * i1.value + 0.5 * s * i2.value + i3.value;
  out.push_back({"bracket", bracket, 0.0,
                 0.5 * i1.abs_error_estimate + 0.5 * s * i2.abs_error_estimate + i3.abs_error_estimate});
  return out;
}

std::vector<Contribution> hydrogen_decomposition(const BoundState& state, const QuadOptions& opts) {
  const auto& qn = state.quantum_numbers();
  const int nr = qn.n - qn.L - 1;
  const double k = 2.0 * qn.L + 1.0;
  const specfun::LaguerreSeries poly(nr, k);
  const specfun::LaguerreSeries lower(nr - 1, k);
  const double scale = 2.0 / (qn.n * state.param("a0"));
  const auto window = CoordinateDomain::half_line(state.domain().upper * scale);
  auto in_rho = [&](auto&& g) {
    return integrate([&](double rho) { return rho > 0.0 ? g(rho) : 0.0; }, window, opts);
  };
  const auto t1 = in_rho([&](double rho) {
    const double l = poly(rho);
    return -0.5 * std::exp(-rho + (k + 1.0) * std::log(rho)) * l * l;
  });
  const auto t2 = in_rho([&](double rho) {
    const double l = poly(rho);
    return (nr + qn.L + 1.0) * std::exp(-rho + k * std::log(rho)) * l * l;
  });
  const auto t3 = in_rho([&](double rho) {
    return -(nr + k) * std::exp(-rho + k * std::log(rho)) * poly(rho) * lower(rho);
  });
  const double moment = std::exp(specfun::ln_gamma(nr + k + 1.0) - log_factorial(nr));
  std::vector<Contribution> out;
  out.push_back({"T1", t1.value, -0.5 * moment * (2.0 * nr + k + 1.0), t1.abs_error_estimate});
  out.push_back({"T2", t2.value, (nr + qn.L + 1.0) * moment, t2.abs_error_estimate});
  out.push_back({"T3", t3.value, 0.0, t3.abs_error_estimate});
  out.push_back({"sum", t1.value + t2.value + t3.value, 0.0,
                 t1.abs_error_estimate + t2.abs_error_estimate + t3.abs_error_estimate});
  return out;
}

}  // namespace

OperatorSpec OperatorSpec::conjugate() const {
  OperatorSpec c = *this;
  c.name = name + "*";
  auto conj = [](const Coefficient& f) -> Coefficient {
    if (!f) return {};
    return [f](double x) { return std::conj(f(x)); };
  };
  c.c0 = conj(c0);
  c.c1 = conj(c1);
  c.c2 = conj(c2);
  return c;
}

namespace ops {

namespace {
OperatorSpec first_order(std::string name, OperatorCoordinate coord, double hbar) {
  OperatorSpec op;
  op.name = std::move(name);
  op.coordinate = coord;
  op.c1 = [hbar](double) { return cplx(0.0, -hbar); };
  return op;
}
}  // namespace

OperatorSpec px(double hbar) { return first_order("px", OperatorCoordinate::Cartesian, hbar); }

OperatorSpec pr_dirac(double hbar) {
  auto op = first_order("pr", OperatorCoordinate::Radial, hbar);
  op.c0 = [hbar](double r) { return cplx(0.0, -hbar / r); };
  op.origin_singularity = 1;
  return op;
}

OperatorSpec pr_naive(double hbar) { return first_order("pr_naive", OperatorCoordinate::Radial, hbar); }

OperatorSpec l_phi(double hbar) { return first_order("l_phi", OperatorCoordinate::Azimuthal, hbar); }

OperatorSpec l_theta(double hbar) {
  auto op = first_order("l_theta", OperatorCoordinate::Polar, hbar);
  op.c0 = [hbar](double th) { return cplx(0.0, -0.5 * hbar * std::cos(th) / std::sin(th)); };
  return op;
}

OperatorSpec l_theta_naive(double hbar) { return first_order("l_theta_naive", OperatorCoordinate::Polar, hbar); }

OperatorSpec position() { return position_power(1); }

OperatorSpec position_power(int k) {
  if (k < 0) throw DomainError("position_power: k must be >= 0; use inv_r for negative powers");
  OperatorSpec op;
  op.name = k == 1 ? "x" : "x^" + std::to_string(k);
  op.c0 = [k](double x) { return cplx(std::pow(x, k), 0.0); };
  return op;
}

OperatorSpec inv_r(int k) {
  if (k < 1) throw DomainError("inv_r: k must be >= 1");
  OperatorSpec op;
  op.name = "inv_r" + std::to_string(k);
  op.coordinate = OperatorCoordinate::Radial;
  op.c0 = [k](double r) { return cplx(std::pow(r, -k), 0.0); };
  op.origin_singularity = k;
  return op;
}

}  // namespace ops

ExpectationResult expectation(const BoundState& state, const OperatorSpec& op, const QuadOptions& opts) {
  check_applicable(state, op);
  const double jac = state.domain().jacobian;
  const auto& model = state.model();
  auto r = from(integrate_complex(
      [&](double x) {
        const auto d = model.derivatives(x);
        return std::conj(d[0]) * apply(op, d, x, jac);
      },
      state.domain(), opts));
  if (state.family() == Family::Morse && op.name == "px")
    r.decomposition = morse_decomposition(state, opts);
  else if (state.family() == Family::HydrogenRadial && op.name == "pr")
    r.decomposition = hydrogen_decomposition(state, opts);
  return r;
}

cplx hermiticity_defect(const BoundState& state, const OperatorSpec& op, const QuadOptions& opts) {
  check_applicable(state, op);
  const double jac = state.domain().jacobian;
  const auto& model = state.model();
  const OperatorSpec conj_op = op.conjugate();
  const auto right = integrate_complex(
      [&](double x) {
        const auto d = model.derivatives(x);
        return std::conj(d[0]) * apply(op, d, x, jac);
      },
      state.domain(), opts);
  const auto left = integrate_complex(
      [&](double x) {
        auto d = model.derivatives(x);
        const cplx u = d[0];
        for (auto& v : d) v = std::conj(v);
        return u * apply(conj_op, d, x, jac);
      },
      state.domain(), opts);
  return right.value - left.value;
}

ExpectationResult momentum_moment(const BoundState& state, int s, const QuadOptions& opts) {
  if (!is_cartesian(state))
    throw WrongDomain("momentum_moment: " + state.label() + " is not a Cartesian state; use the radial or angular operators");
  if (s < 1 || s > 4) throw UnsupportedOrder("momentum_moment: order " + std::to_string(s) + " is outside 1..4");
  if (state.family() == Family::DeltaWell && s >= 3)
    throw UnsupportedOrder("momentum_moment: <p^" + std::to_string(s) +
                           "> on the delta well involves the derivative jump at the origin");
  const double hbar = state.units().hbar;
  const double jac = state.domain().jacobian;
  const auto& model = state.model();
  const cplx factor = std::pow(cplx(0.0, -hbar), s) / std::pow(jac, s);
  // p^s split as symmetric halves: <p^{a} u, p^{b} u> with a + b = s.
  const int a = s / 2;
  const int b = s - a;
  const cplx sign = a % 2 == 0 ? 1.0 : -1.0;  // integrating by parts a times
  auto r = from(integrate_complex(
      [&](double x) {
        const auto d = model.derivatives(x);
        return std::conj(d[static_cast<std::size_t>(a)]) * d[static_cast<std::size_t>(b)];
      },
      state.domain(), opts));
  const cplx f = factor * sign;
  r.value *= f;
  r.abs_error *= std::abs(f);
  return r;
}

ExpectationResult momentum_square_second_form(const BoundState& state, const QuadOptions& opts) {
  if (!is_cartesian(state)) throw WrongDomain("momentum_square_second_form: not a Cartesian state");
  if (state.family() == Family::DeltaWell)
    throw UnsupportedOrder("momentum_square_second_form: u'' carries a delta function at the origin");
  const double hbar = state.units().hbar;
  const double jac = state.domain().jacobian;
  const auto& model = state.model();
  auto r = from(integrate_complex(
      [&](double x) {
        const auto d = model.derivatives(x);
        return std::conj(d[0]) * d[2];
      },
      state.domain(), opts));
  const double f = -hbar * hbar / (jac * jac);
  r.value *= f;
  r.abs_error *= std::abs(f);
  return r;
}

double natural_scale(const BoundState& state, const QuadOptions& opts) {
  const double hbar = state.units().hbar;
  switch (coordinate_of(state.family())) {
    case OperatorCoordinate::Cartesian: return std::sqrt(momentum_moment(state, 2, opts).value.real());
    case OperatorCoordinate::Radial: {
      const auto& model = state.model();
      const auto r = integrate(
          [&](double x) {
            const auto d = model.derivatives(x);
            return std::norm(d[1] + d[0] / x);
          },
          state.domain(), opts);
      return hbar * std::sqrt(r.value);
    }
    default: return hbar;
  }
}

PhiMoments phi_moments(int M, double hbar, const QuadOptions& opts) {
  const auto phi = make_angular_phi(M, Units{hbar, 1.0});
  const auto& d = phi.domain();
  PhiMoments out;
  auto density = [&](double p) { return std::norm(phi.eval(p).value); };
  out.mean_phi = integrate([&](double p) { return p * density(p); }, d, opts).value;
  out.mean_phi_sq = integrate([&](double p) { return p * p * density(p); }, d, opts).value;
  out.delta_phi = std::sqrt(out.mean_phi_sq - out.mean_phi * out.mean_phi);
  const auto lphi = expectation(phi, ops::l_phi(hbar), opts);
  out.mean_Lphi = lphi.value.real();
  // centered second moment: || (L_phi - <L_phi>) Phi ||^2
  const double mean = out.mean_Lphi;
  const auto var = integrate(
      [&](double p) {
        const auto e = phi.eval(p);
        return std::norm(cplx(0.0, -hbar) * e.derivative - mean * e.value);
      },
      d, opts);
  out.delta_Lphi = std::sqrt(std::max(0.0, var.value));
  out.product = out.delta_phi * out.delta_Lphi;
  out.uncertainty_violated = out.product < 0.5 * hbar;
  return out;
}

cplx ladder_matrix_element(int n_prime, int n, double omega, Units units) {
  if (n < 0 || n_prime < 0) throw DomainError("ladder_matrix_element: quantum numbers must be >= 0");
  const double c = std::sqrt(units.mass * units.hbar * omega / 2.0);
  double v = 0.0;
  if (n_prime == n - 1) v = -std::sqrt(static_cast<double>(n));
  if (n_prime == n + 1) v = std::sqrt(n + 1.0);
  return kI * c * v;
}

ExpectationResult ladder_matrix_element_quadrature(int n_prime, int n, double omega, Units units,
                                                   const QuadOptions& opts) {
  const auto bra = make_lho(n_prime, omega, units);
  const auto ket = make_lho(n, omega, units);
  const auto& window = (n_prime > n ? bra : ket).domain();
  const double hbar = units.hbar;
  return from(integrate_complex(
      [&](double x) { return std::conj(bra.eval(x).value) * cplx(0.0, -hbar) * ket.eval(x).derivative; }, window,
      opts));
}

CoherentMomentum coherent_momentum_mean(const CoherentState& cs) {
  if (cs.truncation < 1) throw DomainError("coherent_momentum_mean: truncation must be positive");
  if (!(cs.omega > 0.0 && cs.mass > 0.0 && cs.hbar > 0.0))
    throw DomainError("coherent_momentum_mean: omega, mass and hbar must be positive");
  const double mod = std::abs(cs.alpha);
  const double arg = std::arg(cs.alpha);
  auto coeff = [&](int n) -> cplx {
    if (mod == 0.0) return n == 0 ? 1.0 : 0.0;
    const double log_mag = -0.5 * mod * mod + n * std::log(mod) - 0.5 * log_factorial(n);
    return std::polar(std::exp(log_mag), n * arg);
  };
  // Weight beyond the truncation, summed until the terms stop mattering.
  double tail = 0.0;
  for (int n = cs.truncation;; ++n) {
    const double w = std::norm(coeff(n));
    tail += w;
    if ((n > mod * mod && w < 1e-30 * std::max(tail, 1e-300)) || w == 0.0 || n > cs.truncation + 100000) break;
  }
  if (tail > 1e-14)
    throw TruncationTooSmall("coherent state: truncation " + std::to_string(cs.truncation) + " drops weight " +
                             std::to_string(tail) + " > 1e-14 for |alpha| = " + std::to_string(mod));
  // <a> in the truncated basis; <a^dagger> is its conjugate pairing.
  cplx a = 0.0;
  cplx adag = 0.0;
  for (int n = 1; n < cs.truncation; ++n) {
    const double root = std::sqrt(static_cast<double>(n));
    a += std::conj(coeff(n - 1)) * root * coeff(n);
    adag += std::conj(coeff(n)) * root * coeff(n - 1);
  }
  const double c = std::sqrt(cs.mass * cs.hbar * cs.omega / 2.0);
  CoherentMomentum out;
  out.value = cplx(0.0, -c) * (a - adag);
  out.quoted_constant = c;
  out.tail_weight = tail;
  out.measured_constant =
      cs.alpha.imag() == 0.0 ? std::numeric_limits<double>::quiet_NaN() : out.value.real() / cs.alpha.imag();
  return out;
}

double probability_flux_1d(const BoundState& state, double x) {
  if (!is_cartesian(state))
    throw WrongDomain("probability_flux_1d: the Cartesian flux formula does not hold for " + state.label() +
                      " in curvilinear coordinates");
  const auto p = state.eval(x);
  const auto& u = state.units();
  return u.hbar / u.mass * std::imag(std::conj(p.value) * p.derivative / state.domain().jacobian);
}

QuadResult probability_flux_integral(const BoundState& state, const QuadOptions& opts) {
  if (!is_cartesian(state)) throw WrongDomain("probability_flux_integral: not a Cartesian state");
  return integrate([&](double x) { return probability_flux_1d(state, x); }, state.domain(), opts);
}

double translation_generator_check(const BoundState& state, const std::vector<double>& poly) {
  if (!is_cartesian(state)) throw WrongDomain("translation_generator_check: not a Cartesian state");
  if (poly.size() > 7) throw DomainError("translation_generator_check: F must have degree <= 6");
  const double hbar = state.units().hbar;
  const double jac = state.domain().jacobian;
  const auto& d = state.domain();
  const std::vector<double> cuts = [&] {
    std::vector<double> c{d.lower};
    c.insert(c.end(), d.breakpoints.begin(), d.breakpoints.end());
    c.push_back(d.upper);
    return c;
  }();
  double worst = 0.0;
  const int samples = 257;
  for (int i = 0; i < samples; ++i) {
    double x = d.lower + (d.upper - d.lower) * (i + 0.5) / samples;
    if (std::find(cuts.begin(), cuts.end(), x) != cuts.end()) continue;
    Jet<1> t = Jet<1>::variable(x);
    Jet<1> f(0.0);
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) f = f * t + Jet<1>(*it);
    const auto dv = state.model().derivatives(x);
    const cplx u = dv[0];
    const cplx du = dv[1] / jac;
    const double fv = f.value();
    const double df = f.derivative(1) / jac;
    const cplx p_fu = cplx(0.0, -hbar) * (df * u + fv * du);
    const cplx f_pu = fv * cplx(0.0, -hbar) * du;
    const cplx want = cplx(0.0, -hbar) * df * u;
    worst = std::max(worst, std::abs((p_fu - f_pu) - want));
  }
  return worst;
}

double angular_commutator_norm(int l_max, double hbar, const QuadOptions& opts) {
  if (l_max < 0) throw DomainError("angular_commutator_norm: l_max must be >= 0");
  struct Basis {
    BoundState theta;
    BoundState phi;
  };
  std::vector<Basis> basis;
  const Units units{hbar, 1.0};
  for (int L = 0; L <= l_max; ++L)
    for (int M = -L; M <= L; ++M) basis.push_back({make_angular_theta(L, M, units), make_angular_phi(M, units)});
  const std::size_t n = basis.size();
  const auto lphi = ops::l_phi(hbar);
  const auto ltheta = ops::l_theta(hbar);
  auto overlap = [&](const BoundState& a, const BoundState& b, const OperatorSpec* op) {
    const double jac = b.domain().jacobian;
    return integrate_complex(
               [&](double x) {
                 const auto db = b.model().derivatives(x);
                 const cplx ob = op ? apply(*op, db, x, jac) : db[0];
                 return std::conj(a.model().derivatives(x)[0]) * ob;
               },
               b.domain(), opts)
        .value;
  };
  std::vector<cplx> A(n * n), B(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      A[i * n + j] = overlap(basis[i].phi, basis[j].phi, &lphi) * overlap(basis[i].theta, basis[j].theta, nullptr);
      B[i * n + j] = overlap(basis[i].phi, basis[j].phi, nullptr) * overlap(basis[i].theta, basis[j].theta, &ltheta);
    }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx c = 0.0;
      for (std::size_t k = 0; k < n; ++k) c += A[i * n + k] * B[k * n + j] - B[i * n + k] * A[k * n + j];
      worst = std::max(worst, std::abs(c));
    }
  return worst;
}

ExpectationResult heisenberg_hydrogen_rhs(int n, int L, double a0, Units units, const QuadOptions& opts) {
  if (L == 0)
    throw DivergentMoment("heisenberg_hydrogen_rhs: <1/r^3> diverges for L = 0 (the closed form "
                          "1/(a0^3 n^3 L (L+1/2) (L+1)) has a pole at L = 0)");
  const auto h = make_hydrogen(n, L, 0, a0, units);
  const auto r3 = expectation(h.radial, ops::inv_r(3), opts);
  const auto r2 = expectation(h.radial, ops::inv_r(2), opts);
  const double e2 = h.radial.param("e2");
  const double l2 = units.hbar * units.hbar * L * (L + 1.0);
  const double n3 = static_cast<double>(n) * n * n;
  const double closed_r2 = 1.0 / (n3 * a0 * a0 * (L + 0.5));
  const double closed_r3 = 1.0 / (a0 * a0 * a0 * n3 * L * (L + 0.5) * (L + 1.0));
  ExpectationResult out;
  const cplx centrifugal = l2 / units.mass * r3.value;
  const cplx coulomb = -e2 * r2.value;
  out.value = centrifugal + coulomb;
  out.abs_error = l2 / units.mass * r3.abs_error + e2 * r2.abs_error;
  out.nodes_used = r3.nodes_used + r2.nodes_used;
  out.decomposition.push_back({"inv_r3", r3.value, closed_r3, r3.abs_error});
  out.decomposition.push_back({"inv_r2", r2.value, closed_r2, r2.abs_error});
  out.decomposition.push_back({"L2", l2, l2, 0.0});
  out.decomposition.push_back({"centrifugal", centrifugal, l2 / units.mass * closed_r3, l2 / units.mass * r3.abs_error});
  out.decomposition.push_back({"coulomb", coulomb, -e2 * closed_r2, e2 * r2.abs_error});
  return out;
}

}  // namespace qmexpect
