#pragma once

// Catalog of exactly solvable bound states. Every state is normalized with
// respect to its domain measure and evaluates analytically, including
// derivatives up to fourth order.

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qmexpect/quadrature.hpp"

namespace qmexpect {

enum class Family {
  InfiniteWell,
  FiniteWell,
  DeltaWell,
  HarmonicOscillator,
  PoschlTeller,
  Morse,
  HydrogenRadial,
  AngularPhi,
  AngularTheta,
};

const char* to_string(Family f);

enum class Parity { Even, Odd };

/// Physical constants carried by every state. Default units: hbar = m = 1.
struct Units {
  double hbar = 1.0;
  double mass = 1.0;
};

struct QuantumNumbers {
  int n = 0;
  Parity parity = Parity::Even;  // wells only
  int branch = 0;                // finite well only
  int L = 0;
  int M = 0;
};

struct EvalPoint {
  double coord = 0.0;
  std::complex<double> value;
  std::complex<double> derivative;
  /// True when the derivative jumps at coord and the right-hand limit is reported.
  bool one_sided = false;
};

enum class Side { Left, Right };

namespace detail {
class StateModel;
}

/// Immutable, cheaply copyable handle to a normalized eigenfunction.
class BoundState {
 public:
  explicit BoundState(std::shared_ptr<const detail::StateModel> model);

  Family family() const;
  const QuantumNumbers& quantum_numbers() const;
  /// Named parameters, including derived ones (k, kappa, s, ...).
  const std::map<std::string, double>& params() const;
  double param(const std::string& name) const;
  const CoordinateDomain& domain() const;
  const Units& units() const;
  double norm_constant() const;
  /// Eigenvalue of the state's own Hamiltonian. For angular factors this is
  /// the eigenvalue of L^2 (theta) or L_phi^2 (phi).
  double energy() const;
  bool is_real() const;
  /// Expected number of interior nodes (real states only).
  int expected_nodes() const;
  /// Leading power p of the state near coord = 0 on a half line, u ~ r^p.
  int origin_exponent() const;
  /// Human readable label such as "lho(n=3)".
  std::string label() const;

  /// Value and first derivative through the specfun recurrences.
  /// Throws DomainError outside the closed domain window.
  EvalPoint eval(double coord) const;
  /// One-sided evaluation at a derivative discontinuity.
  EvalPoint eval_one_sided(double coord, Side side) const;
  /// d^k u / dcoord^k for k = 0..order, order <= 4.
  std::array<std::complex<double>, 5> derivatives(double coord, int order = 4) const;
  /// (H u)(coord) for the state's Hamiltonian.
  std::complex<double> apply_hamiltonian(double coord) const;

  const detail::StateModel& model() const { return *model_; }

 private:
  std::shared_ptr<const detail::StateModel> model_;
};

/// Infinite square well on (-L_w/2, L_w/2). Odd: sqrt(2/L_w) sin(2 n pi x / L_w);
/// even: sqrt(2/L_w) cos((2n - 1) pi x / L_w); n >= 1.
BoundState make_infinite_well(int n, Parity parity, double width, Units units = {});

/// Infinite square well shifted to (0, L_w): sqrt(2/L_w) sin(n pi x / L_w).
BoundState make_infinite_well_shifted(int n, double width, Units units = {});

/// Finite square well of depth V0 and half-width a. `branch` counts states of
/// the requested parity from the bottom. Throws NoSuchBranch if it does not exist.
BoundState make_finite_well(double depth, double half_width, Parity parity, int branch, Units units = {});

/// Number of bound states of the given parity in a finite well.
int finite_well_branch_count(double depth, double half_width, Parity parity, Units units = {});

/// Attractive delta well -V0 delta(x): u = sqrt(kappa) exp(-kappa |x|), kappa = m V0 / hbar^2.
BoundState make_delta(double strength, Units units = {});

/// Harmonic oscillator eigenstate N_n exp(-q^2/2) H_n(q), q = sqrt(m omega / hbar) x.
BoundState make_lho(int n, double omega, Units units = {});

/// Trigonometric Poschl-Teller state for V = V0 tan^2(a x), V0 = hbar^2 a^2 lambda (lambda - 1) / 2m.
/// The energy is the Rayleigh quotient of the constructed eigenfunction.
BoundState make_poschl_teller(int n, double lambda, double a, Units units = {});

/// Morse vibrational state in the scaled coordinate x = r/r0 - 1,
/// normalized so that the integral of |u|^2 dr = r0 dx is one.
/// Throws NoBoundState unless s = 2 lambda - 2n - 1 > 0.
BoundState make_morse(int n, double lambda, double beta, double r0, Units units = {});

/// Number of Morse bound states for a given lambda (count of n with s > 0).
int morse_bound_state_count(double lambda);

struct HydrogenState {
  BoundState radial;
  BoundState theta;
  BoundState phi;
};

/// Hydrogen eigenstate (radial part on a half line with r^2 measure, plus its
/// normalized angular factors). e^2 is fixed by a0 = hbar^2 / (m e^2).
HydrogenState make_hydrogen(int n, int L, int M, double a0, Units units = {});

/// Normalized polar factor N_theta P_L^M(cos theta) with sin(theta) weight.
BoundState make_angular_theta(int L, int M, Units units = {});

/// Azimuthal factor exp(i M phi) / sqrt(2 pi).
BoundState make_angular_phi(int M, Units units = {});

/// Counts sign changes of a real state across its domain window.
int count_nodes(const BoundState& state, int samples = 20001);

/// Integral of |u|^2 over the domain with its measure.
QuadResult norm_integral(const BoundState& state, const QuadOptions& opts = {});

/// ||H u - E u|| / ||u|| by quadrature.
double hamiltonian_residual(const BoundState& state, const QuadOptions& opts = {});

namespace detail {

/// Family-specific implementation behind BoundState.
class StateModel {
 public:
  virtual ~StateModel() = default;

  Family family;
  QuantumNumbers qn;
  std::map<std::string, double> params;
  CoordinateDomain domain;
  Units units;
  double norm = 1.0;
  double energy = 0.0;
  int nodes = 0;
  int origin_power = 0;
  bool real = true;

  virtual EvalPoint eval(double x) const = 0;
  virtual EvalPoint eval_one_sided(double x, Side side) const;
  virtual std::array<std::complex<double>, 5> derivatives(double x) const = 0;
  virtual std::complex<double> apply_hamiltonian(double x) const = 0;
  virtual std::string label() const = 0;
};

}  // namespace detail

}  // namespace qmexpect
