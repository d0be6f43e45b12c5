#include "qmexpect/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qmexpect/errors.hpp"
#include "qmexpect/jet.hpp"
#include "qmexpect/specfun.hpp"

namespace qmexpect {

using cplx = std::complex<double>;
using detail::StateModel;
constexpr double kPi = std::numbers::pi;

const char* to_string(Family f) {
  switch (f) {
    case Family::InfiniteWell: return "infinite_well";
    case Family::FiniteWell: return "finite_well";
    case Family::DeltaWell: return "delta";
    case Family::HarmonicOscillator: return "lho";
    case Family::PoschlTeller: return "poschl_teller";
    case Family::Morse: return "morse";
    case Family::HydrogenRadial: return "hydrogen";
    case Family::AngularPhi: return "angular_phi";
    case Family::AngularTheta: return "angular_theta";
  }
  return "?";
}

EvalPoint StateModel::eval_one_sided(double x, Side) const { return eval(x); }

namespace {

using std::cos;
using std::exp;
using std::pow;
using std::sin;

[[maybe_unused]] double val(double x) { return x; }
double val(const Jet4& x) { return x.value(); }

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

void check_units(const Units& u) {
  require_positive(u.hbar, "hbar");
  require_positive(u.mass, "mass");
}

// Real 1D state whose higher derivatives come from running `formula` on jets.
template <class Self>
class RealModel : public StateModel {
 public:
  std::array<cplx, 5> derivatives(double x) const override {
    const Jet4 j = static_cast<const Self&>(*this).formula(Jet4::variable(x));
    std::array<cplx, 5> out{};
    for (std::size_t k = 0; k <= 4; ++k) out[k] = j.derivative(k);
    return out;
  }

  // -hbar^2 / (2 m J^2) u'' + V u, where J is the domain jacobian.
  cplx apply_hamiltonian(double x) const override {
    const auto d = derivatives(x);
    const double j = domain.jacobian;
    return -units.hbar * units.hbar / (2.0 * units.mass * j * j) * d[2] +
           static_cast<const Self&>(*this).potential(x) * d[0];
  }
};

// ---------------------------------------------------------------------------

class InfiniteWellModel : public RealModel<InfiniteWellModel> {
 public:
  double k = 0.0;
  double amp = 0.0;
  bool use_sin = true;

  template <class T>
  T formula(const T& x) const {
    return use_sin ? amp * sin(x * k) : amp * cos(x * k);
  }
  double potential(double) const { return 0.0; }

  EvalPoint eval(double x) const override {
    EvalPoint p;
    p.coord = x;
    if (use_sin) {
      p.value = amp * std::sin(k * x);
      p.derivative = amp * k * std::cos(k * x);
    } else {
      p.value = amp * std::cos(k * x);
      p.derivative = -amp * k * std::sin(k * x);
    }
    return p;
  }

  std::string label() const override {
    const bool shifted = domain.lower == 0.0;
    std::string s = "infinite_well(n=" + std::to_string(qn.n);
    if (shifted) return s + ", shifted)";
    return s + (qn.parity == Parity::Odd ? ", odd)" : ", even)");
  }
};

class FiniteWellModel : public RealModel<FiniteWellModel> {
 public:
  double a = 0.0;
  double k = 0.0;
  double kappa = 0.0;
  double amp = 0.0;
  double depth = 0.0;
  bool odd = false;

  template <class T>
  T formula(const T& x) const {
    const double xv = val(x);
    if (std::abs(xv) <= a) return odd ? amp * sin(x * k) : amp * cos(x * k);
    const double edge = odd ? amp * std::sin(k * a) : amp * std::cos(k * a);
    const double sign = (odd && xv < 0.0) ? -1.0 : 1.0;
    const T t = xv > 0.0 ? (x - a) * (-kappa) : (x + a) * kappa;
    return (sign * edge) * exp(t);
  }
  double potential(double x) const { return std::abs(x) < a ? -depth : 0.0; }

  EvalPoint eval(double x) const override {
    EvalPoint p;
    p.coord = x;
    if (std::abs(x) <= a) {
      p.value = odd ? amp * std::sin(k * x) : amp * std::cos(k * x);
      p.derivative = odd ? amp * k * std::cos(k * x) : -amp * k * std::sin(k * x);
    } else {
      const double edge = odd ? amp * std::sin(k * a) : amp * std::cos(k * a);
      const double sign = (odd && x < 0.0) ? -1.0 : 1.0;
      const double v = sign * edge * std::exp(-kappa * (std::abs(x) - a));
      p.value = v;
      p.derivative = x > 0.0 ? -kappa * v : kappa * v;
    }
    return p;
  }

  std::string label() const override {
    return std::string("finite_well(") + (odd ? "odd" : "even") + ", branch=" + std::to_string(qn.branch) + ")";
  }
};

class DeltaModel : public RealModel<DeltaModel> {
 public:
  double kappa = 0.0;

  // Right-hand branch at x = 0.
  template <class T>
  T formula(const T& x) const {
    const double amp = std::sqrt(kappa);
    return val(x) >= 0.0 ? amp * exp(x * (-kappa)) : amp * exp(x * kappa);
  }
  double potential(double) const { return 0.0; }

  EvalPoint side(double x, bool right) const {
    EvalPoint p;
    p.coord = x;
    const double v = std::sqrt(kappa) * std::exp(-kappa * std::abs(x));
    p.value = v;
    p.derivative = right ? -kappa * v : kappa * v;
    p.one_sided = x == 0.0;
    return p;
  }

  EvalPoint eval(double x) const override { return side(x, x >= 0.0); }
  EvalPoint eval_one_sided(double x, Side s) const override {
    if (x != 0.0) return eval(x);
    return side(x, s == Side::Right);
  }

  std::string label() const override { return "delta(V0=" + fmt(params.at("V0")) + ")"; }
};

class LhoModel : public RealModel<LhoModel> {
 public:
  double sqrt_alpha = 0.0;
  double amp = 0.0;
  double omega = 0.0;

  template <class T>
  T formula(const T& x) const {
    const T q = x * sqrt_alpha;
    return amp * exp(q * q * -0.5) * specfun::hermite_value(qn.n, q);
  }
  double potential(double x) const { return 0.5 * units.mass * omega * omega * x * x; }

  EvalPoint eval(double x) const override {
    const double q = sqrt_alpha * x;
    const auto h = specfun::hermite(qn.n, q);
    const double g = amp * std::exp(-0.5 * q * q);
    EvalPoint p;
    p.coord = x;
    p.value = g * h.value;
    p.derivative = sqrt_alpha * g * (h.derivative - q * h.value);
    return p;
  }

  std::string label() const override { return "lho(n=" + std::to_string(qn.n) + ")"; }
};

class PoschlTellerModel : public RealModel<PoschlTellerModel> {
 public:
  double a = 0.0;
  double lambda = 0.0;
  double amp = 0.0;     // N_n
  double k_const = 0.0;  // K(n, lambda)
  double v0 = 0.0;

  template <class T>
  T formula(const T& x) const {
    T s, c;
    if constexpr (std::is_same_v<T, double>) {
      s = std::sin(a * x);
      c = std::cos(a * x);
    } else {
      sincos(x * a, s, c);
    }
    if (!(val(c) > 0.0)) return T(0.0);
    return (amp * k_const) * pow(c, lambda) * specfun::gegenbauer_value(qn.n, lambda, s);
  }
  double potential(double x) const {
    const double t = std::tan(a * x);
    return v0 * t * t;
  }

  EvalPoint eval(double x) const override {
    EvalPoint p;
    p.coord = x;
    const double c = std::cos(a * x);
    const double y = std::sin(a * x);
    if (!(c > 0.0) || std::abs(y) >= 1.0) return p;  // u and u' vanish at the walls for lambda > 1
    const auto pt = specfun::poschl_teller_poly(qn.n, lambda, y);
    const double root = std::sqrt(c);
    p.value = amp * root * pt.value;
    p.derivative = amp * a * (-0.5 * y / root * pt.value + root * c * pt.derivative);
    return p;
  }

  std::string label() const override {
    return "poschl_teller(n=" + std::to_string(qn.n) + ", lambda=" + fmt(lambda) + ")";
  }
};

class MorseModel : public RealModel<MorseModel> {
 public:
  double lambda = 0.0;
  double beta = 0.0;
  double s = 0.0;
  double amp = 0.0;
  double depth = 0.0;
  specfun::LaguerreSeries poly;

  template <class T>
  T formula(const T& x) const {
    const T log_xi = std::log(2.0 * lambda) - x * beta;
    const T xi = exp(log_xi);
    return amp * exp(xi * -0.5 + log_xi * (0.5 * s)) * poly(xi);
  }
  double potential(double x) const {
    const double e = std::exp(-beta * x);
    return depth * (e * e - 2.0 * e);
  }

  EvalPoint eval(double x) const override {
    const double log_xi = std::log(2.0 * lambda) - beta * x;
    const double xi = std::exp(log_xi);
    const double g = amp * std::exp(-0.5 * xi + 0.5 * s * log_xi);
    const auto l = specfun::assoc_laguerre(qn.n, s, xi);
    EvalPoint p;
    p.coord = x;
    p.value = g * l.value;
    // du/dx = du/dxi * (-beta xi)
    p.derivative = -beta * g * ((0.5 * s - 0.5 * xi) * l.value + xi * l.derivative);
    return p;
  }

  std::string label() const override {
    return "morse(n=" + std::to_string(qn.n) + ", lambda=" + fmt(lambda) + ")";
  }
};

class HydrogenRadialModel : public StateModel {
 public:
  double a0 = 0.0;
  double scale = 0.0;  // 2 / (n a0)
  double amp = 0.0;
  double e2 = 0.0;
  specfun::LaguerreSeries poly;

  template <class T>
  T formula(const T& r) const {
    const T rho = r * scale;
    return amp * exp(rho * -0.5) * ipow(rho, qn.L) * poly(rho);
  }
  double formula(double r) const {
    const double rho = r * scale;
    return amp * std::exp(-0.5 * rho) * std::pow(rho, qn.L) * poly(rho);
  }

  std::array<cplx, 5> derivatives(double r) const override {
    const Jet4 j = formula(Jet4::variable(r));
    std::array<cplx, 5> out{};
    for (std::size_t k = 0; k <= 4; ++k) out[k] = j.derivative(k);
    return out;
  }

  cplx apply_hamiltonian(double r) const override {
    const auto d = derivatives(r);
    const double l2 = qn.L * (qn.L + 1.0);
    const double h2m = units.hbar * units.hbar / (2.0 * units.mass);
    return -h2m * (d[2] + 2.0 / r * d[1] - l2 / (r * r) * d[0]) - e2 / r * d[0];
  }

  EvalPoint eval(double r) const override {
    const double rho = scale * r;
    const auto l = specfun::assoc_laguerre(qn.n - qn.L - 1, 2.0 * qn.L + 1.0, rho);
    const double g = amp * std::exp(-0.5 * rho);
    const double pw = std::pow(rho, qn.L);
    const double dpw = qn.L == 0 ? 0.0 : qn.L * std::pow(rho, qn.L - 1);
    EvalPoint p;
    p.coord = r;
    p.value = g * pw * l.value;
    p.derivative = scale * g * ((dpw - 0.5 * pw) * l.value + pw * l.derivative);
    return p;
  }

  std::string label() const override {
    return "hydrogen(n=" + std::to_string(qn.n) + ", L=" + std::to_string(qn.L) + ")";
  }
};

class AngularThetaModel : public StateModel {
 public:
  double amp = 0.0;  // N_theta times the negative-order factor and Condon-Shortley sign

  template <class T>
  T formula(const T& theta) const {
    T s, c;
    if constexpr (std::is_same_v<T, double>) {
      s = std::sin(theta);
      c = std::cos(theta);
    } else {
      sincos(theta, s, c);
    }
    const int m = std::abs(qn.M);
    T w(1.0);
    for (int i = 0; i < m; ++i) w = w * s;
    return amp * w * specfun::legendre_reduced_value(qn.L, m, c);
  }

  std::array<cplx, 5> derivatives(double theta) const override {
    const Jet4 j = formula(Jet4::variable(theta));
    std::array<cplx, 5> out{};
    for (std::size_t k = 0; k <= 4; ++k) out[k] = j.derivative(k);
    return out;
  }

  // L^2 Theta = -hbar^2 (Theta'' + cot Theta' - M^2 Theta / sin^2).
  cplx apply_hamiltonian(double theta) const override {
    const auto d = derivatives(theta);
    const double s = std::sin(theta);
    const double m2 = static_cast<double>(qn.M) * qn.M;
    return -units.hbar * units.hbar * (d[2] + std::cos(theta) / s * d[1] - m2 / (s * s) * d[0]);
  }

  EvalPoint eval(double theta) const override {
    EvalPoint p;
    p.coord = theta;
    const double x = std::cos(theta);
    const double norm = params.at("N_theta");
    if (std::abs(x) < 1.0) {
      const auto pl = specfun::assoc_legendre_int(qn.L, qn.M, x);
      p.value = norm * pl.value;
      p.derivative = -std::sin(theta) * norm * pl.derivative;
    } else {
      const auto d = derivatives(theta);
      p.value = d[0];
      p.derivative = d[1];
    }
    return p;
  }

  std::string label() const override {
    return "angular_theta(L=" + std::to_string(qn.L) + ", M=" + std::to_string(qn.M) + ")";
  }
};

class AngularPhiModel : public StateModel {
 public:
  cplx value_at(double phi) const {
    return std::polar(1.0 / std::sqrt(2.0 * kPi), qn.M * phi);
  }

  std::array<cplx, 5> derivatives(double phi) const override {
    std::array<cplx, 5> out{};
    const cplx im(0.0, static_cast<double>(qn.M));
    cplx f = value_at(phi);
    for (auto& d : out) {
      d = f;
      f *= im;
    }
    return out;
  }

  cplx apply_hamiltonian(double phi) const override {
    return -units.hbar * units.hbar * derivatives(phi)[2];
  }

  EvalPoint eval(double phi) const override {
    EvalPoint p;
    p.coord = phi;
    p.value = value_at(phi);
    p.derivative = cplx(0.0, qn.M) * p.value;
    return p;
  }

  std::string label() const override { return "angular_phi(M=" + std::to_string(qn.M) + ")"; }
};

// log of sum |c_k| t^k, an upper bound on |L(t)| for t >= 0.
double log_abs_series(const specfun::LaguerreSeries& poly, double t) {
  double acc = 0.0;
  const auto& c = poly.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + std::abs(*it);
  return std::log(acc);
}

// Window [lo, hi] outside which the bound exp(log_bound) on the density has
// fallen 22 decades below the density's sampled peak.
std::pair<double, double> density_window(const std::function<double(double)>& log_bound,
                                         const std::function<double(double)>& density, double lo_guess,
                                         double hi_guess, double step, bool clamp_at_zero) {
  double peak = 0.0;
  double x_peak = lo_guess;
  const int samples = 4000;
  for (int i = 0; i <= samples; ++i) {
    const double x = lo_guess + (hi_guess - lo_guess) * i / samples;
    const double v = density(x);
    if (v > peak) {
      peak = v;
      x_peak = x;
    }
  }
  if (!(peak > 0.0)) throw DomainError("density_window: density vanishes on the sampling range");
  const double floor = std::log(peak) - 22.0 * std::log(10.0);
  const double hi = envelope_cutoff_below(log_bound, x_peak, step, floor);
  const double lo = clamp_at_zero ? 0.0 : envelope_cutoff_below(log_bound, x_peak, -step, floor);
  return {lo, hi};
}

template <class M>
BoundState finish(std::shared_ptr<M> m) {
  m->domain.validate();
  return BoundState(std::move(m));
}

// Window radius where |u|^2 ~ exp(-2 kappa d) has dropped by ~20 decades.
constexpr double kExpTail = 23.0;

}  // namespace

// ---------------------------------------------------------------------------
// BoundState

BoundState::BoundState(std::shared_ptr<const detail::StateModel> model) : model_(std::move(model)) {
  if (!model_) throw DomainError("BoundState: null model");
}

Family BoundState::family() const { return model_->family; }
const QuantumNumbers& BoundState::quantum_numbers() const { return model_->qn; }
const std::map<std::string, double>& BoundState::params() const { return model_->params; }
double BoundState::param(const std::string& name) const {
  const auto it = model_->params.find(name);
  if (it == model_->params.end()) throw DomainError("BoundState: no parameter '" + name + "' for " + label());
  return it->second;
}
const CoordinateDomain& BoundState::domain() const { return model_->domain; }
const Units& BoundState::units() const { return model_->units; }
double BoundState::norm_constant() const { return model_->norm; }
double BoundState::energy() const { return model_->energy; }
bool BoundState::is_real() const { return model_->real; }
int BoundState::expected_nodes() const { return model_->nodes; }
int BoundState::origin_exponent() const { return model_->origin_power; }
std::string BoundState::label() const { return model_->label(); }

namespace {

void check_coord(const detail::StateModel& m, double x) {
  if (!std::isfinite(x)) throw DomainError("eval: coordinate is not finite");
  const auto& d = m.domain;
  switch (d.kind) {
    case DomainKind::FullLine: return;
    case DomainKind::HalfLine:
      if (x < 0.0) throw DomainError("eval: r = " + fmt(x) + " is negative");
      return;
    default:
      if (x < d.lower || x > d.upper)
        throw DomainError("eval: coordinate " + fmt(x) + " outside [" + fmt(d.lower) + ", " + fmt(d.upper) + "]");
  }
}

}  // namespace

EvalPoint BoundState::eval(double coord) const {
  check_coord(*model_, coord);
  return model_->eval(coord);
}

EvalPoint BoundState::eval_one_sided(double coord, Side side) const {
  check_coord(*model_, coord);
  return model_->eval_one_sided(coord, side);
}

std::array<cplx, 5> BoundState::derivatives(double coord, int order) const {
  if (order < 0 || order > 4) throw UnsupportedOrder("derivatives: order must be in 0..4");
  check_coord(*model_, coord);
  auto d = model_->derivatives(coord);
  for (int k = order + 1; k <= 4; ++k) d[static_cast<std::size_t>(k)] = 0.0;
  return d;
}

cplx BoundState::apply_hamiltonian(double coord) const {
  check_coord(*model_, coord);
  return model_->apply_hamiltonian(coord);
}

// ---------------------------------------------------------------------------
// Constructors

BoundState make_infinite_well(int n, Parity parity, double width, Units units) {
  check_units(units);
  if (n < 1) throw DomainError("infinite_well: n must be >= 1");
  require_positive(width, "infinite_well: width");
  auto m = std::make_shared<InfiniteWellModel>();
  m->family = Family::InfiniteWell;
  m->qn.n = n;
  m->qn.parity = parity;
  m->units = units;
  m->use_sin = parity == Parity::Odd;
  m->k = parity == Parity::Odd ? 2.0 * n * kPi / width : (2.0 * n - 1.0) * kPi / width;
  m->amp = std::sqrt(2.0 / width);
  m->norm = m->amp;
  m->energy = units.hbar * units.hbar * m->k * m->k / (2.0 * units.mass);
  m->nodes = parity == Parity::Odd ? 2 * n - 1 : 2 * n - 2;
  m->domain = CoordinateDomain::finite(-0.5 * width, 0.5 * width);
  m->params = {{"L_w", width}, {"k", m->k}, {"hbar", units.hbar}, {"mass", units.mass}};
  return finish(m);
}

BoundState make_infinite_well_shifted(int n, double width, Units units) {
  check_units(units);
  if (n < 1) throw DomainError("infinite_well: n must be >= 1");
  require_positive(width, "infinite_well: width");
  auto m = std::make_shared<InfiniteWellModel>();
  m->family = Family::InfiniteWell;
  m->qn.n = n;
  m->qn.parity = n % 2 == 1 ? Parity::Even : Parity::Odd;  // about the well centre
  m->units = units;
  m->use_sin = true;
  m->k = n * kPi / width;
  m->amp = std::sqrt(2.0 / width);
  m->norm = m->amp;
  m->energy = units.hbar * units.hbar * m->k * m->k / (2.0 * units.mass);
  m->nodes = n - 1;
  m->domain = CoordinateDomain::finite(0.0, width);
  m->params = {{"L_w", width}, {"k", m->k}, {"shifted", 1.0}, {"hbar", units.hbar}, {"mass", units.mass}};
  return finish(m);
}

namespace {

// Matching function with a sign fixed so that it rises through its root on the
// bracket of the given branch.
double matching(double z, double z0, Parity parity, int branch) {
  const double w = std::sqrt(std::max(0.0, z0 * z0 - z * z));
  const double sign = branch % 2 == 0 ? 1.0 : -1.0;
  if (parity == Parity::Even) return sign * (z * std::sin(z) - w * std::cos(z));
  return sign * (-z * std::cos(z) - w * std::sin(z));
}

double well_strength(double depth, double half_width, const Units& u) {
  return half_width * std::sqrt(2.0 * u.mass * depth) / u.hbar;
}

}  // namespace

int finite_well_branch_count(double depth, double half_width, Parity parity, Units units) {
  check_units(units);
  require_positive(depth, "finite_well: V0");
  require_positive(half_width, "finite_well: a");
  const double z0 = well_strength(depth, half_width, units);
  const double offset = parity == Parity::Even ? 0.0 : 0.5 * kPi;
  int count = 0;
  while (count * kPi + offset < z0) ++count;
  return count;
}

BoundState make_finite_well(double depth, double half_width, Parity parity, int branch, Units units) {
  const int count = finite_well_branch_count(depth, half_width, parity, units);
  if (branch < 0 || branch >= count)
    throw NoSuchBranch("finite_well: " + std::string(parity == Parity::Even ? "even" : "odd") + " branch " +
                       std::to_string(branch) + " does not exist (" + std::to_string(count) + " available)");
  const double z0 = well_strength(depth, half_width, units);
  const double offset = parity == Parity::Even ? 0.0 : 0.5 * kPi;
  double lo = branch * kPi + offset;
  double hi = std::min(lo + 0.5 * kPi, z0);
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (matching(mid, z0, parity, branch) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double z = 0.5 * (lo + hi);
  const double w = std::sqrt(std::max(0.0, z0 * z0 - z * z));
  if (!(w > 0.0)) throw NoSuchBranch("finite_well: branch sits at the continuum threshold");

  auto m = std::make_shared<FiniteWellModel>();
  m->family = Family::FiniteWell;
  m->qn.parity = parity;
  m->qn.branch = branch;
  m->qn.n = parity == Parity::Even ? 2 * branch : 2 * branch + 1;
  m->units = units;
  m->a = half_width;
  m->depth = depth;
  m->k = z / half_width;
  m->kappa = w / half_width;
  m->odd = parity == Parity::Odd;
  const double ka = m->k * half_width;
  const double edge = m->odd ? std::sin(ka) : std::cos(ka);
  const double inner = m->odd ? half_width - std::sin(2.0 * ka) / (2.0 * m->k)
                              : half_width + std::sin(2.0 * ka) / (2.0 * m->k);
  m->amp = 1.0 / std::sqrt(inner + edge * edge / m->kappa);
  m->norm = m->amp;
  m->energy = -units.hbar * units.hbar * m->kappa * m->kappa / (2.0 * units.mass);
  m->nodes = m->qn.n;
  const double radius = half_width + kExpTail / m->kappa;
  m->domain = CoordinateDomain::full_line(radius).with_breakpoints({-half_width, half_width});
  m->params = {{"V0", depth},     {"a", half_width},        {"k", m->k},          {"kappa", m->kappa},
               {"z0", z0},        {"hbar", units.hbar},     {"mass", units.mass}};
  return finish(m);
}

BoundState make_delta(double strength, Units units) {
  check_units(units);
  require_positive(strength, "delta: V0");
  auto m = std::make_shared<DeltaModel>();
  m->family = Family::DeltaWell;
  m->units = units;
  m->kappa = units.mass * strength / (units.hbar * units.hbar);
  m->norm = std::sqrt(m->kappa);
  m->energy = -units.mass * strength * strength / (2.0 * units.hbar * units.hbar);
  m->nodes = 0;
  m->domain = CoordinateDomain::full_line(kExpTail / m->kappa).with_breakpoints({0.0});
  m->params = {{"V0", strength}, {"kappa", m->kappa}, {"hbar", units.hbar}, {"mass", units.mass}};
  return finish(m);
}

BoundState make_lho(int n, double omega, Units units) {
  check_units(units);
  if (n < 0) throw DomainError("lho: n must be >= 0");
  require_positive(omega, "lho: omega");
  auto m = std::make_shared<LhoModel>();
  m->family = Family::HarmonicOscillator;
  m->qn.n = n;
  m->units = units;
  m->omega = omega;
  const double alpha = units.mass * omega / units.hbar;
  m->sqrt_alpha = std::sqrt(alpha);
  m->amp = std::exp(0.25 * std::log(alpha / kPi) - 0.5 * (n * std::log(2.0) + specfun::ln_gamma(n + 1.0)));
  m->norm = m->amp;
  m->energy = units.hbar * omega * (n + 0.5);
  m->nodes = n;
  const double q_max = std::sqrt(2.0 * n + 1.0) + 7.0;
  m->domain = CoordinateDomain::full_line(q_max / m->sqrt_alpha);
  m->params = {{"omega", omega}, {"alpha", alpha}, {"hbar", units.hbar}, {"mass", units.mass}};
  return finish(m);
}

BoundState make_poschl_teller(int n, double lambda, double a, Units units) {
  check_units(units);
  if (n < 0) throw DomainError("poschl_teller: n must be >= 0");
  if (!(lambda > 1.0)) throw DomainError("poschl_teller: lambda must exceed 1");
  require_positive(a, "poschl_teller: a");
  auto m = std::make_shared<PoschlTellerModel>();
  m->family = Family::PoschlTeller;
  m->qn.n = n;
  m->units = units;
  m->a = a;
  m->lambda = lambda;
  m->amp = std::sqrt(a * (n + lambda) *
                     std::exp(specfun::ln_gamma(n + 2.0 * lambda) - specfun::ln_gamma(n + 1.0)));
  m->k_const = specfun::poschl_teller_constant(n, lambda);
  m->norm = m->amp;
  m->v0 = units.hbar * units.hbar * a * a * lambda * (lambda - 1.0) / (2.0 * units.mass);
  m->nodes = n;
  const double edge = 0.5 * kPi / a;
  m->domain = CoordinateDomain::finite(-edge, edge);
  m->params = {{"lambda", lambda}, {"a", a}, {"V0", m->v0}, {"hbar", units.hbar}, {"mass", units.mass}};

  // Rayleigh quotient <u|H|u> / <u|u> with the kinetic term in first-derivative form.
  const double h2m = units.hbar * units.hbar / (2.0 * units.mass);
  const PoschlTellerModel& model = *m;
  const auto num = integrate_interval(
      [&](double x) {
        const auto p = model.eval(x);
        const double u = p.value.real();
        const double du = p.derivative.real();
        return h2m * du * du + model.potential(x) * u * u;
      },
      -edge, edge);
  const auto den = integrate_interval(
      [&](double x) {
        const double u = model.eval(x).value.real();
        return u * u;
      },
      -edge, edge);
  m->energy = num.value / den.value;
  m->params["E_closed_form"] = h2m * a * a * (n * n + 2.0 * n * lambda + lambda);
  return finish(m);
}

int morse_bound_state_count(double lambda) {
  if (!(lambda > 0.5)) return 0;
  int count = 0;
  while (2.0 * lambda - 2.0 * count - 1.0 > 0.0) ++count;
  return count;
}

BoundState make_morse(int n, double lambda, double beta, double r0, Units units) {
  check_units(units);
  require_positive(lambda, "morse: lambda");
  require_positive(beta, "morse: beta");
  require_positive(r0, "morse: r0");
  if (n < 0) throw DomainError("morse: n must be >= 0");
  const double s = 2.0 * lambda - 2.0 * n - 1.0;
  if (!(s > 0.0))
    throw NoBoundState("morse: n = " + std::to_string(n) + " gives s = 2 lambda - 2n - 1 = " + fmt(s) +
                       " <= 0; lambda = " + fmt(lambda) + " supports " +
                       std::to_string(morse_bound_state_count(lambda)) + " bound states");
  auto m = std::make_shared<MorseModel>();
  m->family = Family::Morse;
  m->qn.n = n;
  m->units = units;
  m->lambda = lambda;
  m->beta = beta;
  m->s = s;
  m->poly = specfun::LaguerreSeries(n, s);
  // N^2 = beta s Gamma(n+1) / (Gamma(2 lambda - n) r0)
  const double log_n2 = std::log(beta * s / r0) + specfun::ln_gamma(n + 1.0) - specfun::ln_gamma(2.0 * lambda - n);
  m->amp = std::exp(0.5 * log_n2);
  m->norm = m->amp;
  const double unit = units.hbar * units.hbar * beta * beta / (2.0 * units.mass * r0 * r0);
  m->depth = lambda * lambda * unit;
  m->energy = -unit * s * s / 4.0;
  m->nodes = n;

  const double log2l = std::log(2.0 * lambda);
  const MorseModel& model = *m;
  auto log_bound = [&](double x) {
    const double log_xi = log2l - beta * x;
    const double xi = std::exp(log_xi);
    return 2.0 * std::log(model.amp) - xi + s * log_xi + 2.0 * log_abs_series(model.poly, xi);
  };
  auto density = [&](double x) { return std::norm(model.eval(x).value); };
  // sample xi over [1e-3, 8 (2n + s + 2)]
  const double x_lo = (log2l - std::log(8.0 * (2.0 * n + s + 2.0))) / beta;
  const double x_hi = (log2l - std::log(1e-3)) / beta;
  const auto [lower, upper] = density_window(log_bound, density, x_lo, x_hi, 0.05 / beta, false);
  m->domain = CoordinateDomain::full_line(lower, upper).with_jacobian(r0);
  m->params = {{"lambda", lambda}, {"beta", beta}, {"r0", r0},        {"s", s},
               {"D", m->depth},    {"N", m->amp},  {"hbar", units.hbar}, {"mass", units.mass}};
  return finish(m);
}

BoundState make_angular_theta(int L, int M, Units units) {
  check_units(units);
  if (L < 0 || std::abs(M) > L) throw DomainError("angular_theta: need L >= 0 and |M| <= L");
  auto m = std::make_shared<AngularThetaModel>();
  m->family = Family::AngularTheta;
  m->qn.L = L;
  m->qn.M = M;
  m->units = units;
  const int am = std::abs(M);
  const double n_theta =
      std::sqrt((2.0 * L + 1.0) / 2.0 * std::exp(specfun::ln_gamma(L - M + 1.0) - specfun::ln_gamma(L + M + 1.0)));
  double amp = n_theta * (am % 2 == 0 ? 1.0 : -1.0);
  if (M < 0)
    amp *= (am % 2 == 0 ? 1.0 : -1.0) *
           std::exp(specfun::ln_gamma(L - am + 1.0) - specfun::ln_gamma(L + am + 1.0));
  m->amp = amp;
  m->norm = n_theta;
  m->energy = units.hbar * units.hbar * L * (L + 1.0);
  m->nodes = L - am;
  m->domain = CoordinateDomain::polar_angle(AngularWeight::SinTheta);
  m->params = {{"N_theta", n_theta}, {"hbar", units.hbar}};
  return finish(m);
}

BoundState make_angular_phi(int M, Units units) {
  check_units(units);
  auto m = std::make_shared<AngularPhiModel>();
  m->family = Family::AngularPhi;
  m->qn.M = M;
  m->units = units;
  m->real = M == 0;
  m->norm = 1.0 / std::sqrt(2.0 * kPi);
  m->energy = units.hbar * units.hbar * M * M;
  m->domain = CoordinateDomain::periodic_angle();
  m->params = {{"hbar", units.hbar}};
  return finish(m);
}

HydrogenState make_hydrogen(int n, int L, int M, double a0, Units units) {
  check_units(units);
  if (n < 1) throw DomainError("hydrogen: n must be >= 1");
  if (L < 0 || L >= n) throw DomainError("hydrogen: need 0 <= L < n");
  if (std::abs(M) > L) throw DomainError("hydrogen: need |M| <= L");
  require_positive(a0, "hydrogen: a0");
  auto m = std::make_shared<HydrogenRadialModel>();
  m->family = Family::HydrogenRadial;
  m->qn.n = n;
  m->qn.L = L;
  m->qn.M = M;
  m->units = units;
  m->a0 = a0;
  m->scale = 2.0 / (n * a0);
  const int nr = n - L - 1;
  m->poly = specfun::LaguerreSeries(nr, 2.0 * L + 1.0);
  // N_r^2 = (2 / n a0)^3 (n - L - 1)! / (2n (n + L)!)
  const double log_n2 = 3.0 * std::log(m->scale) + specfun::ln_gamma(nr + 1.0) - std::log(2.0 * n) -
                        specfun::ln_gamma(n + L + 1.0);
  m->amp = std::exp(0.5 * log_n2);
  m->norm = m->amp;
  m->e2 = units.hbar * units.hbar / (units.mass * a0);
  m->energy = -units.hbar * units.hbar / (2.0 * units.mass * a0 * a0 * n * n);
  m->nodes = nr;
  m->origin_power = L;

  const double scale = m->scale;
  const HydrogenRadialModel& model = *m;
  auto log_bound = [&](double r) {
    const double rho = scale * r;
    return 2.0 * std::log(model.amp * r) - rho + 2.0 * L * std::log(rho) + 2.0 * log_abs_series(model.poly, rho);
  };
  auto density = [&](double r) { return r * r * std::norm(model.eval(r).value); };
  const double rho_hi = 8.0 * (2.0 * n + 2.0);
  const auto window = density_window(log_bound, density, 0.0, rho_hi / scale, 0.05 / scale, true);
  m->domain = CoordinateDomain::half_line(window.second, 2);
  m->params = {{"a0", a0}, {"e2", m->e2}, {"hbar", units.hbar}, {"mass", units.mass}, {"n_r", double(nr)}};
  BoundState radial = finish(m);
  return HydrogenState{radial, make_angular_theta(L, M, units), make_angular_phi(M, units)};
}

// ---------------------------------------------------------------------------
// Integrity helpers

int count_nodes(const BoundState& state, int samples) {
  if (!state.is_real()) throw DomainError("count_nodes: state is complex");
  if (samples < 3) throw DomainError("count_nodes: need at least 3 samples");
  const auto& d = state.domain();
  std::vector<double> values(static_cast<std::size_t>(samples));
  double peak = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = d.lower + (d.upper - d.lower) * (i + 0.5) / samples;
    const double v = state.eval(x).value.real();
    values[static_cast<std::size_t>(i)] = v;
    peak = std::max(peak, std::abs(v));
  }
  const double floor = 1e-9 * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double v : values) {
    if (std::abs(v) <= floor) continue;
    const int sgn = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sgn != last_sign) ++nodes;
    last_sign = sgn;
  }
  return nodes;
}

QuadResult norm_integral(const BoundState& state, const QuadOptions& opts) {
  return integrate([&](double x) { return std::norm(state.eval(x).value); }, state.domain(), opts);
}

double hamiltonian_residual(const BoundState& state, const QuadOptions& opts) {
  const double e = state.energy();
  const auto& d = state.domain();
  const auto r = integrate(
      [&](double x) {
        const auto dv = state.model().derivatives(x);
        return std::norm(state.model().apply_hamiltonian(x) - e * dv[0]);
      },
      d, opts);
  const auto n = norm_integral(state, opts);
  return std::sqrt(std::max(0.0, r.value) / n.value);
}

}  // namespace qmexpect
