import json
import math
import os
import subprocess

import mpmath as mp
import pytest

import qmexpect as q

mp.mp.dps = 30


def morse_x_oracle(n, lam, beta=1.0):
    s = 2 * lam - 2 * n - 1
    w = lambda xi: xi ** (s - 1) * mp.e ** (-xi) * mp.laguerre(n, s, xi) ** 2
    num = mp.quad(lambda xi: -mp.log(xi / (2 * lam)) / beta * w(xi), [0, 1, 10, mp.inf])
    den = mp.quad(w, [0, 1, 10, mp.inf])
    return float(num / den), s


@pytest.mark.parametrize("lam", [4.2, 10.5])
def test_morse_position_against_mpmath(lam):
    x0, s0 = morse_x_oracle(0, lam)
    assert q.expectation(q.morse(0, lam), "x")["value"].real == pytest.approx(x0, rel=1e-9)
    assert x0 == pytest.approx(float(mp.log(s0 + 1) - mp.digamma(s0)), rel=1e-12)

    x1, s1 = morse_x_oracle(1, lam)
    assert q.expectation(q.morse(1, lam), "x")["value"].real == pytest.approx(x1, rel=1e-9)
    rederived = float(mp.log(s1 + 3) - mp.digamma(s1 + 2) + 1 / s1 + 2 / (s1 + 1))
    quoted = float(mp.log(s1 + 3) - mp.digamma(s1 + 2) + 3 / (s1 + 2))
    assert x1 == pytest.approx(rederived, rel=1e-12)
    assert abs(x1 - quoted) > 1e-3 * abs(x1)


def test_morse_prefactor_depends_on_measure():
    x0, s = morse_x_oracle(0, 10.5)
    # Normalized expectation value is independent of r0.
    assert q.expectation(q.morse(0, 10.5, r0=2.0), "x")["value"].real == pytest.approx(x0, rel=1e-9)


def test_special_functions_against_mpmath():
    for x in [0.3, 1.0, 2.37, 7.9, 15.5]:
        assert q.digamma(x) == pytest.approx(float(mp.digamma(x)), rel=1e-13)
        assert q.ln_gamma(x) == pytest.approx(float(mp.loggamma(x)), rel=1e-13, abs=1e-14)
    for n in range(9):
        assert q.hermite(n, 1.3) == pytest.approx(float(mp.hermite(n, 1.3)), rel=1e-13)
        assert q.assoc_laguerre(n, 2.37, 1.9) == pytest.approx(float(mp.laguerre(n, 2.37, 1.9)), rel=1e-11, abs=1e-12)
    for L in range(6):
        for M in range(0, L + 1):
            assert q.assoc_legendre(L, M, 0.41) == pytest.approx(float(mp.legenp(L, M, 0.41)), rel=1e-12, abs=1e-13)


def test_hydrogen_moments_against_mpmath():
    n, L = 3, 1
    s = q.hydrogen_radial(n, L)
    nr = n - L - 1
    R2 = lambda r: (r ** L * mp.e ** (-r / n) * mp.laguerre(nr, 2 * L + 1, 2 * r / n)) ** 2
    norm = mp.quad(lambda r: R2(r) * r ** 2, [0, mp.inf])
    inv_r2 = mp.quad(R2, [0, mp.inf]) / norm
    assert q.expectation(s, "inv_r2")["value"].real == pytest.approx(float(inv_r2), rel=1e-9)


def test_zero_momentum_and_defects():
    for state in [q.oscillator(3), q.poschl_teller(2, 1.7), q.finite_well(parity="odd"), q.delta_well()]:
        assert abs(q.expectation(state, "px")["value"]) < 1e-10
    d = q.hermiticity_defect(q.hydrogen_radial(1, 0), "pr_naive")
    assert d == pytest.approx(2j, rel=1e-9)


def test_integrity_helpers():
    s = q.morse(4, 10.5)
    assert q.norm(s) == pytest.approx(1.0, abs=1e-9)
    assert q.hamiltonian_residual(s) < 1e-6
    assert q.count_nodes(s) == s.expected_nodes == 4


def test_errors_are_typed():
    with pytest.raises(q.DivergentMoment):
        q.heisenberg_hydrogen_rhs(2, 0)
    with pytest.raises(q.NoBoundState):
        q.morse(3, 3.2)
    with pytest.raises(q.WrongDomain):
        q.expectation(q.oscillator(0), "pr")
    assert issubclass(q.NoSuchBranch, q.Error)


def test_phi_and_coherent():
    m = q.phi_moments(2)
    assert m["mean_phi"] == pytest.approx(math.pi, abs=1e-12)
    assert m["uncertainty_violated"]
    value, constant = q.coherent_momentum(1j)
    assert value.imag == pytest.approx(0.0, abs=1e-12)
    assert constant == pytest.approx(math.sqrt(2.0), rel=1e-12)


def test_suite_report_shape():
    r = q.run_suite("angular", M=1)
    assert list(r) == ["suite", "config", "checks", "all_passed"]
    assert r["all_passed"]
    assert r["config"]["M"] == 1.0
    assert all(c["id"].startswith("angular.") for c in r["checks"])


@pytest.mark.skipif("QMEXPECT_CLI" not in os.environ, reason="command-line binary not provided")
def test_cli_round_trip():
    out = subprocess.run([os.environ["QMEXPECT_CLI"], "suite", "hydrogen", "--format", "json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert list(report) == ["suite", "config", "checks", "all_passed"]
    assert list(report["checks"][0]) == ["id", "claim", "computed", "reference", "tolerance", "passed", "note"]
    assert report["all_passed"]
