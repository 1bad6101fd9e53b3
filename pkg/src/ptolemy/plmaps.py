"""Dyadic piecewise-affine homeomorphisms of the circle and of the line.

A circle map is stored through its canonical lift ``L`` restricted to
``[0, 1)``: pieces ``(x_i, k_i, b_i)`` mean ``L(x) = 2**k_i * x + b_i`` on
``[x_i, x_{i+1})``, the first piece starts at 0 and ``0 <= L(0) < 1``.
The circle map itself is ``x -> L(x) mod 1``.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .numbers import ONE, ZERO, Dyadic, Rational

DEFAULT_MAX_ORDER = 240


class NotATranslation(ValueError):
    pass


class NotTorsion(ValueError):
    pass


class InvalidMap(ValueError):
    pass


def _law(k: int, b: Dyadic, x: Dyadic) -> Dyadic:
    return x.mul_pow2(k) + b


def _canonical(parts: Iterable[tuple[Dyadic, Dyadic, int, Dyadic]]) -> tuple:
    """Canonical piece tuple from lift pieces ``(start, end, k, b)``.

    The parts must cover a window ``[s, s+1)`` and describe a continuous
    increasing lift.  Parts are cut at integers, translated into ``[0, 1)``
    using ``L(x+1) = L(x) + 1``, merged and shifted so that ``L(0)`` lies in
    ``[0, 1)``.
    """
    pieces = []
    for start, end, k, b in parts:
        if not start < end:
            continue
        n = math.floor(start)
        cuts = [start]
        m = n + 1
        while m < end:
            cuts.append(Dyadic(m))
            m += 1
        cuts.append(end)
        for lo in cuts[:-1]:
            shift = math.floor(lo)
            # L(y) = L(y + shift) - shift for y in [lo - shift, hi - shift)
            bb = b + Dyadic(shift).mul_pow2(k) - shift
            pieces.append((lo - shift, k, bb))
    pieces.sort(key=lambda p: p[0])
    merged = []
    for x, k, b in pieces:
        if merged and merged[-1][1] == k and merged[-1][2] == b:
            continue
        merged.append((x, k, b))
    if not merged or merged[0][0] != ZERO:
        raise InvalidMap("pieces do not cover [0, 1)")
    n0 = math.floor(merged[0][2])
    return tuple((x, k, b - n0) for x, k, b in merged)


@dataclass(frozen=True)
class PLCircleMap:
    pieces: tuple

    def __post_init__(self):
        ps = self.pieces
        if not ps or ps[0][0] != ZERO:
            raise InvalidMap("first piece must start at 0")
        for (x0, k0, b0), (x1, k1, b1) in zip(ps, ps[1:]):
            if not x0 < x1:
                raise InvalidMap("breakpoints must increase")
            if _law(k0, b0, x1) != _law(k1, b1, x1):
                raise InvalidMap(f"discontinuous at {x1}")
            if (k0, b0) == (k1, b1):
                raise InvalidMap("adjacent pieces share an affine law")
        if not (ZERO <= _law(ps[0][1], ps[0][2], ZERO) < ONE):
            raise InvalidMap("lift value at 0 must lie in [0, 1)")
        xl, kl, bl = ps[-1]
        if _law(kl, bl, ONE) != _law(ps[0][1], ps[0][2], ZERO) + 1:
            raise InvalidMap("not a degree one map of the circle")

    @classmethod
    def from_formulas(cls, pieces: Sequence[tuple]) -> "PLCircleMap":
        """Build from circle formulas ``x -> 2**k * x + b`` on ``[x_i, x_{i+1})``.

        Intercepts may differ from the lift by integers; continuity of the lift
        is restored piece by piece.
        """
        ps = [(Dyadic.coerce(x), int(k), Dyadic.coerce(b)) for x, k, b in pieces]
        parts = []
        prev_end = None
        for i, (x, k, b) in enumerate(ps):
            end = ps[i + 1][0] if i + 1 < len(ps) else ONE
            if prev_end is not None:
                gap = prev_end - _law(k, b, x)
                if gap.exponent != 0:
                    raise InvalidMap(f"discontinuous at {x}")
                b = b + gap
            parts.append((x, end, k, b))
            prev_end = _law(k, b, end)
        return cls(_canonical(parts))

    @classmethod
    def identity(cls) -> "PLCircleMap":
        return IDENTITY

    @property
    def breakpoints(self) -> tuple:
        return tuple(p[0] for p in self.pieces)

    def _piece(self, x: Dyadic) -> int:
        return bisect_right(self.breakpoints, x) - 1

    def lift_value(self, x) -> Dyadic:
        """Canonical lift evaluated at any dyadic ``x``."""
        x = Dyadic.coerce(x)
        n = math.floor(x)
        y = x - n
        _, k, b = self.pieces[self._piece(y)]
        return _law(k, b, y) + n

    def __call__(self, x) -> Dyadic:
        return self.lift_value(Dyadic.coerce(x).frac()).frac()

    def log2_slope_right(self, x) -> int:
        return self.pieces[self._piece(Dyadic.coerce(x).frac())][1]

    def log2_slope_left(self, x) -> int:
        x = Dyadic.coerce(x).frac()
        i = self._piece(x)
        if self.pieces[i][0] == x:
            return self.pieces[i - 1][1]  # i == 0 wraps to the last piece
        return self.pieces[i][1]

    def is_identity(self) -> bool:
        return self == IDENTITY

    def to_json(self) -> dict:
        return {"pieces": [{"x": str(x), "k": k, "b": str(b)} for x, k, b in self.pieces]}

    @classmethod
    def from_json(cls, data: dict) -> "PLCircleMap":
        pieces = tuple((Dyadic.parse(p["x"]), int(p["k"]), Dyadic.parse(p["b"]))
                       for p in data["pieces"])
        return cls(pieces)

    def __str__(self):
        return "; ".join(f"[{x}: 2^{k}x+{b}]" for x, k, b in self.pieces)


IDENTITY = PLCircleMap(((ZERO, 0, ZERO),))


def pl_eval(m: PLCircleMap, x) -> Dyadic:
    return m(x)


def pl_compose(f: PLCircleMap, g: PLCircleMap) -> PLCircleMap:
    """``f ∘ g`` (``g`` applied first)."""
    fx = f.breakpoints
    parts = []
    gp = g.pieces
    for i, (x0, k, b) in enumerate(gp):
        x1 = gp[i + 1][0] if i + 1 < len(gp) else ONE
        y0, y1 = _law(k, b, x0), _law(k, b, x1)
        # cut [y0, y1) at the integer translates of f's breakpoints
        cuts = [y0]
        n = math.floor(y0)
        while n < y1:
            for bp in fx:
                c = bp + n
                if y0 < c < y1:
                    cuts.append(c)
            n += 1
        cuts.append(y1)
        for ya, yb in zip(cuts, cuts[1:]):
            n = math.floor(ya)
            _, kf, bf = f.pieces[f._piece(ya - n)]
            # L_f(y) = 2^kf (y - n) + bf + n, y = 2^k x + b
            kk = kf + k
            bb = (b - n).mul_pow2(kf) + bf + n
            xa = (ya - b).mul_pow2(-k)
            xb = (yb - b).mul_pow2(-k)
            parts.append((xa, xb, kk, bb))
    return PLCircleMap(_canonical(parts))


def pl_inverse(f: PLCircleMap) -> PLCircleMap:
    parts = []
    ps = f.pieces
    for i, (x0, k, b) in enumerate(ps):
        x1 = ps[i + 1][0] if i + 1 < len(ps) else ONE
        y0, y1 = _law(k, b, x0), _law(k, b, x1)
        # x = 2^-k y - 2^-k b
        parts.append((y0, y1, -k, (-b).mul_pow2(-k)))
    return PLCircleMap(_canonical(parts))


def pl_equal(f: PLCircleMap, g: PLCircleMap) -> bool:
    return f.pieces == g.pieces


def pl_power(f: PLCircleMap, n: int) -> PLCircleMap:
    if n < 0:
        f, n = pl_inverse(f), -n
    result = IDENTITY
    base = f
    while n:
        if n & 1:
            result = pl_compose(base, result)
        base = pl_compose(base, base)
        n >>= 1
    return result


def second_deriv_jump(f: PLCircleMap, x) -> int:
    """``log2 f'_r(x) - log2 f'_l(x)``; zero away from breakpoints."""
    return f.log2_slope_right(x) - f.log2_slope_left(x)


def jump_support(f: PLCircleMap) -> dict:
    """All nonzero second-derivative jumps, keyed by breakpoint."""
    out = {}
    for x in f.breakpoints:
        j = second_deriv_jump(f, x)
        if j:
            out[x] = j
    return out


@dataclass(frozen=True)
class PLLineMap:
    """A lift of a circle map: ``ℓ(x) = L_base(x) + shift``.

    Every lift differs from the canonical one by an integer, so that integer is
    all the wrap data needed.
    """

    base: PLCircleMap
    shift: int = 0

    def __call__(self, x) -> Dyadic:
        return self.base.lift_value(x) + self.shift

    def compose(self, other: "PLLineMap") -> "PLLineMap":
        # L1(L2(x) + t2) + t1 = L1(L2(x)) + t1 + t2, and L1∘L2 = L_{f1 f2} + c
        c = math.floor(self.base.lift_value(other.base.lift_value(ZERO)))
        return PLLineMap(pl_compose(self.base, other.base), self.shift + other.shift + c)

    def inverse(self) -> "PLLineMap":
        inv = pl_inverse(self.base)
        # ℓ^-1(ℓ(0)) = 0 pins down the integer
        y = self(ZERO)
        return PLLineMap(inv, -math.floor(inv.lift_value(y)))

    def power(self, n: int) -> "PLLineMap":
        base = self if n >= 0 else self.inverse()
        result = PLLineMap(IDENTITY, 0)
        for _ in range(abs(n)):
            result = base.compose(result)
        return result


def canonical_lift(f: PLCircleMap) -> PLLineMap:
    return PLLineMap(f, 0)


def line_translation_part(lm: PLLineMap) -> int:
    if not lm.base.is_identity():
        raise NotATranslation("lift does not cover the identity of the circle")
    return lm.shift


def torsion_order(f: PLCircleMap, max_order: int = DEFAULT_MAX_ORDER):
    g = f
    for k in range(1, max_order + 1):
        if g.is_identity():
            return k
        g = pl_compose(f, g)
    return None


def rotation_number_torsion(f: PLCircleMap, max_order: int = DEFAULT_MAX_ORDER) -> Rational:
    k = torsion_order(f, max_order)
    if k is None:
        raise NotTorsion(f"no order <= {max_order}")
    t = line_translation_part(canonical_lift(f).power(k))
    r = Fraction(t, k)
    return Rational(r.numerator, r.denominator)
