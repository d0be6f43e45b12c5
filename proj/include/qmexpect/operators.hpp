#pragma once

// Coordinate-correct operators and the expectation engine.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmexpect/quadrature.hpp"
#include "qmexpect/states.hpp"

namespace qmexpect {

using cplx = std::complex<double>;
using Coefficient = std::function<cplx(double)>;

/// Which coordinate an operator is written in. Applying an operator to a
/// state on a different coordinate raises WrongDomain.
enum class OperatorCoordinate { Any, Cartesian, Radial, Polar, Azimuthal };

/// Second-order differential operator c0 + c1 d/dq + c2 d^2/dq^2, where q is the
/// physical coordinate (x, r, theta or phi). For a state whose domain carries a
/// jacobian J (Morse), d/dq = J^{-1} d/dcoord.
struct OperatorSpec {
  std::string name;
  OperatorCoordinate coordinate = OperatorCoordinate::Any;
  Coefficient c0;  // empty means zero
  Coefficient c1;
  Coefficient c2;
  /// p when c0 behaves like r^{-p} at the origin (0 if regular).
  int origin_singularity = 0;

  /// The operator with complex-conjugated coefficients.
  OperatorSpec conjugate() const;
};

namespace ops {
OperatorSpec px(double hbar = 1.0);
/// Dirac radial momentum -i hbar (d/dr + 1/r).
OperatorSpec pr_dirac(double hbar = 1.0);
/// -i hbar d/dr, not Hermitian with the r^2 measure.
OperatorSpec pr_naive(double hbar = 1.0);
OperatorSpec l_phi(double hbar = 1.0);
/// -i hbar (d/dtheta + cot(theta) / 2).
OperatorSpec l_theta(double hbar = 1.0);
/// -i hbar d/dtheta.
OperatorSpec l_theta_naive(double hbar = 1.0);
OperatorSpec position();
OperatorSpec position_power(int k);
/// r^{-k}.
OperatorSpec inv_r(int k);
}  // namespace ops

/// A named contribution to an expectation value, with its closed form when one exists.
struct Contribution {
  std::string name;
  cplx value;
  std::optional<double> closed_form;
  double abs_error = 0.0;
};

struct ExpectationResult {
  cplx value;
  double abs_error = 0.0;
  std::size_t nodes_used = 0;
  /// Filled for Morse p_x and Hydrogen radial momentum.
  std::vector<Contribution> decomposition;
};

/// Integral of conj(u) (O u) over the state's domain with its full measure.
/// Throws WrongDomain for a coordinate mismatch and DivergentMoment when an
/// r^{-p} coefficient makes the integral diverge at the origin.
ExpectationResult expectation(const BoundState& state, const OperatorSpec& op, const QuadOptions& opts = {});

/// <O> - conj(<O>), with conj(<O>) computed as the independent integral of
/// u (O* u*) rather than by conjugating the first result.
cplx hermiticity_defect(const BoundState& state, const OperatorSpec& op, const QuadOptions& opts = {});

/// <p^s> for a 1D Cartesian (or Morse) state, 1 <= s <= 4, using symmetric
/// first/second-derivative forms. Throws UnsupportedOrder for s outside 1..4
/// or for s >= 3 on the delta well, WrongDomain for radial or angular states.
ExpectationResult momentum_moment(const BoundState& state, int s, const QuadOptions& opts = {});

/// -hbar^2 times the integral of conj(u) u'' (the second-derivative form of <p^2>).
ExpectationResult momentum_square_second_form(const BoundState& state, const QuadOptions& opts = {});

/// Natural momentum scale of a state: sqrt(<p^2>) for Cartesian states,
/// sqrt(<p_r^2>) (Dirac form) for radial states, hbar for angular factors.
double natural_scale(const BoundState& state, const QuadOptions& opts = {});

struct PhiMoments {
  double mean_phi = 0.0;
  double mean_phi_sq = 0.0;
  double delta_phi = 0.0;
  double mean_Lphi = 0.0;
  double delta_Lphi = 0.0;
  double product = 0.0;
  /// product < hbar / 2
  bool uncertainty_violated = false;
};

PhiMoments phi_moments(int M, double hbar = 1.0, const QuadOptions& opts = {});

/// <n'| p_x |n> from the ladder algebra.
cplx ladder_matrix_element(int n_prime, int n, double omega, Units units = {});

/// The same matrix element by quadrature over the eigenfunctions.
ExpectationResult ladder_matrix_element_quadrature(int n_prime, int n, double omega, Units units = {},
                                                   const QuadOptions& opts = {});

struct CoherentState {
  cplx alpha;
  int truncation = 128;
  double omega = 1.0;
  double mass = 1.0;
  double hbar = 1.0;
};

struct CoherentMomentum {
  cplx value;
  /// value / Im(alpha), or NaN for real alpha.
  double measured_constant = 0.0;
  /// sqrt(m hbar omega / 2), the constant in the quoted closed form.
  double quoted_constant = 0.0;
  double tail_weight = 0.0;
};

/// <alpha| p_x |alpha> in the truncated Fock basis. Throws TruncationTooSmall
/// when the discarded weight exceeds 1e-14.
CoherentMomentum coherent_momentum_mean(const CoherentState& cs);

/// (hbar / m) Im(conj(u) u') at x. Throws WrongDomain for radial or angular states.
double probability_flux_1d(const BoundState& state, double x);

/// Integral of the flux over the state's window.
QuadResult probability_flux_integral(const BoundState& state, const QuadOptions& opts = {});

/// max over 257 interior sample points of |[p, F] u - (-i hbar F' u)| for a
/// polynomial F with coefficients f[0] + f[1] x + ... (degree <= 6).
double translation_generator_check(const BoundState& state, const std::vector<double>& poly);

/// Largest entry of [L_phi, L_theta] over the Y_LM basis with L <= l_max, by quadrature.
double angular_commutator_norm(int l_max, double hbar = 1.0, const QuadOptions& opts = {});

/// hbar^2 L (L+1) / m <1/r^3> - e^2 <1/r^2> for the hydrogen state (n, L).
/// Throws DivergentMoment for L = 0.
ExpectationResult heisenberg_hydrogen_rhs(int n, int L, double a0, Units units = {}, const QuadOptions& opts = {});

}  // namespace qmexpect
