import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from ptolemy import qdilog
from ptolemy.qdilog import ConvergenceError, DomainError, Phi_h, dlog_consistency, log_Phi_h, phi_h

mpmath = pytest.importorskip("mpmath")

H_VALUES = (0.2, 1 / math.pi, 0.7)
GRID_H = (0.2, 1 / math.pi, 0.7, 2.0)
zs = st.builds(complex, st.floats(-2, 2), st.floats(-0.5, 0.5))


def mp_phi(z, h, over_t=False):
    """High-precision oracle: the same contour integral by mpmath's tanh-sinh rule."""
    with mpmath.workdps(30):
        d = mpmath.mpf(min(1, 1 / h)) / 2
        z = mpmath.mpc(z)

        def f(s):
            t = s + 1j * d
            v = mpmath.exp(-1j * t * z) / (mpmath.sinh(mpmath.pi * t) * mpmath.sinh(mpmath.pi * h * t))
            return v / t if over_t else v

        val = mpmath.quad(f, [-mpmath.inf, -1, 0, 1, mpmath.inf])
        out = -val / 4 if over_t else -mpmath.pi * h / 2 * val
        return complex(out)


@pytest.mark.parametrize("z,h", [(0.3, 0.7), (-1.2 + 0.4j, 0.2), (1.5 - 0.2j, 2.0), (0, 1.0)])
def test_against_high_precision_oracle(z, h):
    got = phi_h(z, h)
    ref = mp_phi(z, h)
    assert abs(got.value - ref) <= max(got.err, 1e-12) * 1.01
    got = log_Phi_h(z, h)
    assert abs(got.value - mp_phi(z, h, over_t=True)) < 1e-9


def test_phi_at_zero_for_h_one():
    # at h = 1 the integrand is csch², so φ(0) = 1
    r = phi_h(0, 1.0)
    assert abs(r.value - 1) <= r.err


@pytest.mark.parametrize("h", H_VALUES)
def test_phi_odd_part(h):
    assert abs(phi_h(1, h).value - phi_h(-1, h).value - 1) < 1e-6


@pytest.mark.parametrize("h", H_VALUES)
def test_phi_conjugation_and_duality(h):
    z = 0.8 - 0.3j
    assert abs(phi_h(z, h).value.conjugate() - phi_h(z.conjugate(), h).value) < 1e-8
    assert abs(phi_h(z, h).value / h - phi_h(z / h, 1 / h).value) < 1e-6


@pytest.mark.parametrize("h", GRID_H)
def test_Phi_at_zero_and_unimodular_on_reals(h):
    expected = cmath.exp(-1j * math.pi / 12 * (h + 1 / h))
    assert abs(Phi_h(0, h).value ** 2 - expected) < 1e-6
    for x in (-3.0, -0.5, 0.0, 1.2, 4.0):
        assert abs(abs(Phi_h(x, h).value) - 1) < 1e-8


@pytest.mark.parametrize("h", (0.2, 1 / math.pi, 0.7, 1.0))
def test_Phi_tends_to_one_on_the_left(h):
    # decay is like exp(x min(1, 1/h)), so x = -20 is far enough only for h <~ 1.4
    assert abs(Phi_h(-20, h).value - 1) < 1e-6


def test_dlog_consistency_examples():
    assert dlog_consistency(0.5, 0.4, 1e-4)["deviation"] < 1e-4
    devs = [dlog_consistency(0.5, 0.4, s)["deviation"] for s in (0.1, 0.05, 0.025)]
    for a, b in zip(devs, devs[1:]):
        assert 3.5 < a / b < 4.5  # second-order central difference
    out = dlog_consistency(0.7, 0.4, 1e-3)
    # on the real line log Φ is imaginary, so both sides are real
    assert abs(out["finite_difference"][1]) < 1e-10 and abs(out["phi"][1]) < 1e-12


def test_classical_limit():
    assert abs(phi_h(0, 1e-3).value - math.log(2)) < 1e-2
    assert abs(phi_h(-10, 1e-3).value - math.log1p(math.exp(-10))) < 1e-4
    rows = qdilog.classical_limit_check(0, [1e-1, 1e-2, 1e-3])
    assert rows["monotone"]


def test_determinism():
    assert phi_h(0.25, 0.6) == phi_h(0.25, 0.6)
    assert Phi_h(-1 + 0.2j, 2.0) == Phi_h(-1 + 0.2j, 2.0)


def test_domain_errors():
    with pytest.raises(DomainError):
        phi_h(0, 0.0)
    with pytest.raises(DomainError):
        phi_h(7j, 1.0)
    with pytest.raises(DomainError):
        Phi_h(4j, 0.2)  # limit π(1 + h) - margin ≈ 3.72
    phi_h(3.5j, 1.0)  # inside π(1 + 1)


def test_unreachable_tolerance_raises():
    with pytest.raises(ConvergenceError):
        phi_h(0.3, 0.7, tol=1e-20)


def test_precision_from_environment(monkeypatch):
    monkeypatch.setenv("PTK_PRECISION", "1e-4")
    assert qdilog.tolerance() == 1e-4
    loose = phi_h(0.3, 0.7)
    monkeypatch.delenv("PTK_PRECISION")
    assert qdilog.tolerance() == qdilog.DEFAULT_TOL
    assert loose.err > phi_h(0.3, 0.7).err
    assert abs(loose.value - phi_h(0.3, 0.7).value) < 1e-4


@settings(max_examples=25, deadline=None)
@given(zs, st.sampled_from(GRID_H))
def test_grid_identities(z, h):
    p, m = phi_h(z, h).value, phi_h(-z, h).value
    assert abs(p - m - z) < 1e-6
    assert abs(p / h - phi_h(z / h, 1 / h).value) < 1e-6
    P, Pm = Phi_h(z, h).value, Phi_h(-z, h).value
    inv = cmath.exp(z * z / (4j * math.pi * h)) * cmath.exp(-1j * math.pi / 12 * (h + 1 / h))
    assert abs(P * Pm - inv) < 1e-5
    assert abs(P - Phi_h(z / h, 1 / h).value) < 1e-5
