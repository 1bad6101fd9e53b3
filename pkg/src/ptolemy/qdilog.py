"""Quantum logarithm and quantum dilogarithm by quadrature on a shifted contour.

Both functions are integrals of ``exp(-itz) / (sinh(πt) sinh(πht))`` along
the real line pushed up to ``Im t = δ``, ``δ = min(1, 1/h)/2``, which passes
above the pole at 0 and below the poles at ``i`` and ``i/h``.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_TOL = 1e-10
DOMAIN_MARGIN = 0.05
NODES = 20
MAX_REFINE = 4
EPS_MACH = float(np.finfo(float).eps)


class DomainError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class ComplexValue:
    value: complex
    err: float

    @property
    def re(self):
        return self.value.real

    @property
    def im(self):
        return self.value.imag

    def to_json(self):
        return {"re": self.re, "im": self.im, "err_estimate": self.err}


def tolerance() -> float:
    env = os.environ.get("PTK_PRECISION")
    return float(env) if env else DEFAULT_TOL


@lru_cache(maxsize=None)
def _gauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _check_domain(z: complex, h: float):
    if not h > 0:
        raise DomainError("h must be positive")
    limit = math.pi * (1 + min(1.0, h)) - DOMAIN_MARGIN
    if abs(z.imag) >= limit:
        raise DomainError(f"|Im z| = {abs(z.imag)} is outside |Im z| < {limit:.4f}")


def _kernel(s: np.ndarray, z: complex, h: float, delta: float, over_t: bool) -> np.ndarray:
    """Integrand at ``t = s + iδ``, with csch written through decaying exponentials."""
    t = s + 1j * delta
    w1, w2 = math.pi * t, math.pi * h * t
    sg = np.where(s >= 0, 1.0, -1.0)
    # csch(w) = 2 σ e^{-σw} / (1 - e^{-2σw}), σ = sign(Re w)
    log_mag = -1j * t * z - sg * w1 - sg * w2
    den = (1 - np.exp(-2 * sg * w1)) * (1 - np.exp(-2 * sg * w2))
    out = 4 * np.exp(log_mag) / den
    if over_t:
        out = out / t
    return out


def _breakpoints(z: complex, h: float, delta: float, T: float, refine: int) -> np.ndarray:
    pts = [0.0]
    x = delta / 2
    while x < min(1.0, T):
        pts.append(x)
        x *= 2
    width = min(0.5, 4.0 / (abs(z.real) + 1.0)) / 2 ** refine
    x = pts[-1]
    while x < T:
        x = min(T, x + width)
        pts.append(x)
    half = np.array(pts)
    return np.concatenate([-half[:0:-1], half])


def _panel_sum(f, edges: np.ndarray, n: int) -> tuple[complex, float]:
    """Composite Gauss-Legendre sum and the sum of absolute terms."""
    xg, wg = _gauss(n)
    a, b = edges[:-1, None], edges[1:, None]
    mid, rad = (a + b) / 2, (b - a) / 2
    nodes = mid + rad * xg[None, :]
    terms = f(nodes.ravel()).reshape(nodes.shape) * wg[None, :] * rad
    return complex(np.sum(terms)), float(np.sum(np.abs(terms)))


def _contour_integral(z: complex, h: float, over_t: bool, tol: float) -> tuple[complex, float]:
    _check_domain(z, h)
    delta = min(1.0, 1.0 / h) / 2
    rate = math.pi * (1 + h) - abs(z.imag)
    # each tail of |integrand| beyond ±T is at most about 4 e^{δ Re z} e^{-rate T} / rate
    scale = 8 * math.exp(delta * z.real) / rate
    T = max(2.0, math.log(max(scale, 1e-300) / (tol * 1e-2)) / rate) if scale > tol * 1e-2 else 2.0
    tail = scale * math.exp(-rate * T)
    f = lambda s: _kernel(s, z, h, delta, over_t)  # noqa: E731
    for refine in range(MAX_REFINE):
        edges = _breakpoints(z, h, delta, T, refine)
        coarse, _ = _panel_sum(f, edges, NODES)
        fine_edges = np.sort(np.concatenate([edges, (edges[:-1] + edges[1:]) / 2]))
        fine, mass = _panel_sum(f, fine_edges, NODES)
        # the two sums can agree by accident; rounding bounds what is knowable
        err = abs(fine - coarse) + tail + 4 * EPS_MACH * mass
        if err <= tol * max(1.0, abs(fine)):
            return fine, err
    raise ConvergenceError(f"quadrature error {err:.3g} above tolerance {tol:.3g}")


def phi_h(z, h: float, tol: float = None) -> ComplexValue:
    """Quantum logarithm."""
    z = complex(z)
    tol = tol or tolerance()
    val, err = _contour_integral(z, h, False, tol)
    pref = -math.pi * h / 2
    return ComplexValue(pref * val, abs(pref) * err)


def log_Phi_h(z, h: float, tol: float = None) -> ComplexValue:
    """Logarithm of the quantum dilogarithm (the exponent, no branch choice)."""
    z = complex(z)
    tol = tol or tolerance()
    val, err = _contour_integral(z, h, True, tol)
    return ComplexValue(-val / 4, err / 4)


def Phi_h(z, h: float, tol: float = None) -> ComplexValue:
    lv = log_Phi_h(z, h, tol)
    v = cmath.exp(lv.value)
    return ComplexValue(v, abs(v) * lv.err)


def dlog_consistency(z, h: float, step: float = 1e-4) -> dict:
    """Compare ``2πih d/dz log Φ`` (central difference) with ``φ``."""
    z = complex(z)
    up, dn = log_Phi_h(z + step, h).value, log_Phi_h(z - step, h).value
    fd = 2j * math.pi * h * (up - dn) / (2 * step)
    ph = phi_h(z, h).value
    return {"z": [z.real, z.imag], "h": h, "step": step,
            "finite_difference": [fd.real, fd.imag], "phi": [ph.real, ph.imag],
            "deviation": abs(fd - ph)}


def classical_limit_check(z, h_sequence) -> dict:
    z = complex(z)
    target = cmath.log(1 + cmath.exp(z))
    rows = []
    for h in h_sequence:
        v = phi_h(z, h).value
        rows.append({"h": h, "deviation": abs(v - target)})
    devs = [r["deviation"] for r in rows]
    return {"z": [z.real, z.imag], "target": [target.real, target.imag], "rows": rows,
            "monotone": all(a >= b for a, b in zip(devs, devs[1:]))}
