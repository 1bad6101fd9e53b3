"""Seeds, mutations, and the shear and lambda coordinate changes under flips."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .farey import Edge, MarkedTessellation, flip
from .numbers import ccw


class EdgeNotInSupport(KeyError):
    pass


class DegenerateQuadrilateral(ValueError):
    pass


class DoubleTriangle(AssertionError):
    pass


# +1: eps_ef = +1 when f is reached from e by a clockwise turn through their
# common triangle; with vertices in counterclockwise order (a, b, c) that is
# the case f follows e in ab -> bc -> ca.
EPS_SIGN = 1


def eps_from_triangles(triangles: Iterable[tuple], support) -> dict:
    """Sparse skew matrix on ``support`` from counterclockwise vertex triples."""
    support = set(support)
    eps: dict = {}
    for a, b, c in triangles:
        sides = [Edge(a, b), Edge(b, c), Edge(c, a)]
        for i in range(3):
            e, f = sides[i], sides[(i + 1) % 3]
            if e in support and f in support:
                if (e, f) in eps:
                    raise DoubleTriangle(f"{e} and {f} share two triangles")
                eps[(e, f)] = EPS_SIGN
                eps[(f, e)] = -EPS_SIGN
    return eps


def _ccw_triple(a, b, c) -> tuple:
    return (a, b, c) if ccw(a, b, c) else (a, c, b)


def tessellation_triangles(t: MarkedTessellation, edges) -> set:
    tris = set()
    for e in edges:
        for u, v in ((e.a, e.b), (e.b, e.a)):
            w = t.apex(u, v)
            tri = _ccw_triple(u, v, w)
            # rotate to a canonical start so the set dedupes
            k = tri.index(min(tri))
            tris.add(tri[k:] + tri[:k])
    return tris


@dataclass(frozen=True)
class Seed:
    support: frozenset
    eps: tuple  # sorted ((e, f), value) with value != 0
    tess: object = None  # MarkedTessellation or Polygon, for edge renaming

    @classmethod
    def build(cls, support, eps: dict, tess=None) -> "Seed":
        items = tuple(sorted((k, v) for k, v in eps.items() if v))
        return cls(frozenset(support), items, tess)

    @property
    def matrix(self) -> dict:
        return dict(self.eps)

    def get(self, e: Edge, f: Edge) -> int:
        return self.matrix.get((e, f), 0)

    def is_skew(self) -> bool:
        m = self.matrix
        return all(m.get((f, e), 0) == -v and v in (-1, 1) for (e, f), v in m.items())

    def to_json(self) -> dict:
        return {"support": [e.to_json() for e in sorted(self.support)],
                "eps": [[e.to_json(), f.to_json(), v] for (e, f), v in self.eps]}


def epsilon_of(t: MarkedTessellation, support) -> Seed:
    support = frozenset(support)
    for e in support:
        if not t.has_edge(e):
            raise EdgeNotInSupport(f"{e} is not an edge of the tessellation")
    return Seed.build(support, eps_from_triangles(tessellation_triangles(t, support), support), t)


def _flipped_name(s: Seed, e: Edge) -> tuple:
    """New name of ``e`` after its flip, and the flipped underlying object."""
    if s.tess is None:
        return e, None
    if isinstance(s.tess, Polygon):
        poly, new = s.tess.flip(e)
        return new, poly
    t2, rec = flip(s.tess, e)
    return rec.added, t2


def mutate(s: Seed, e: Edge) -> Seed:
    if e not in s.support:
        raise EdgeNotInSupport(str(e))
    m = s.matrix
    new_e, t2 = _flipped_name(s, e)
    ren = lambda x: new_e if x == e else x  # noqa: E731
    out = {}
    sup = sorted(s.support)
    for a in sup:
        for b in sup:
            if a == b:
                continue
            v = m.get((a, b), 0)
            if a == e or b == e:
                w = -v
            else:
                se, et = m.get((a, e), 0), m.get((e, b), 0)
                w = v + abs(se) * et if se * et > 0 else v
            if w:
                out[(ren(a), ren(b))] = w
    return Seed.build(frozenset(ren(x) for x in s.support), out, t2)


def _softplus(y: float) -> float:
    """``log(1 + exp(y))`` without overflow."""
    return max(y, 0.0) + math.log1p(math.exp(-abs(y)))


def shear_flip(x: dict, s: Seed, e: Edge) -> dict:
    """Shear coordinates after the flip at ``e``, keyed by the new edge names."""
    if e not in s.support:
        raise EdgeNotInSupport(str(e))
    new_e, _ = _flipped_name(s, e)
    xe = x.get(e, 0.0)
    out = {}
    for t, xt in x.items():
        if t == e:
            continue
        se = s.get(t, e)
        out[t] = xt - se * _softplus(-math.copysign(1, se) * xe) if se else xt
    out[new_e] = -xe
    return out


def lambda_flip(a: dict, s: Seed, e: Edge) -> dict:
    """Lambda lengths after the flip (the Ptolemy relation in log form)."""
    if e not in s.support:
        raise EdgeNotInSupport(str(e))
    new_e, _ = _flipped_name(s, e)
    pos = neg = 0.0
    for (f, t), v in s.eps:
        if f != e:
            continue
        if v > 0:
            pos += v * a.get(t, 0.0)
        else:
            neg -= v * a.get(t, 0.0)
    big = max(pos, neg)
    val = -a.get(e, 0.0) + big + math.log(math.exp(pos - big) + math.exp(neg - big))
    out = {t: v for t, v in a.items() if t != e}
    out[new_e] = val
    return out


def p_map(a: dict, s: Seed) -> dict:
    """``x_s = sum_t eps_st a_t`` over the support."""
    out = {e: 0.0 for e in s.support}
    for (f, t), v in s.eps:
        out[f] += v * a.get(t, 0.0)
    return out


def cross_ratio_shear(p: float, p0: float, p_1: float, p_inf: float) -> float:
    """Shear along the diagonal ``p0 p_inf`` of the quadrilateral ``p p0 p_1 p_inf``."""
    pts = (p, p0, p_1, p_inf)
    if len(set(pts)) < 4:
        raise DegenerateQuadrilateral("coincident points")
    ratio = ((p0 - p) * (p_1 - p_inf)) / ((p_inf - p) * (p0 - p_1))
    if not ratio > 0:
        raise DegenerateQuadrilateral(f"cross-ratio {ratio} is not positive")
    return math.log(ratio)


def mobius(z: float, a: float, b: float, c: float, d: float) -> float:
    return (a * z + b) / (c * z + d)


# --- finite triangulated polygons with real vertices -----------------------

@dataclass(frozen=True)
class Polygon:
    """A triangulated convex polygon: vertex ``i`` sits at ``points[i]``.

    Points increase, so index order is the counterclockwise boundary order.
    """

    points: tuple
    diagonals: frozenset

    def edges(self):
        n = len(self.points)
        return {Edge(i, (i + 1) % n) for i in range(n)} | set(self.diagonals)

    def _adjacent(self, i, j) -> bool:
        return Edge(i, j) in self.edges()

    def apexes(self, e: Edge) -> list:
        i, j = int(e.a.p), int(e.b.p)
        return [k for k in range(len(self.points))
                if k not in (i, j) and self._adjacent(i, k) and self._adjacent(j, k)]

    def triangles(self) -> set:
        n = len(self.points)
        return {t for t in ((i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n))
                if self._adjacent(t[0], t[1]) and self._adjacent(t[1], t[2]) and self._adjacent(t[0], t[2])}

    def seed(self) -> "Seed":
        sup = frozenset(self.diagonals)
        return Seed.build(sup, eps_from_triangles(self.triangles(), sup), self)

    def flip(self, e: Edge):
        new = Edge(*self.apexes(e))
        return Polygon(self.points, (self.diagonals - {e}) | {new}), new

    def shears(self) -> dict:
        """Cross-ratio shear of every diagonal."""
        out = {}
        for e in self.diagonals:
            i, j = int(e.a.p), int(e.b.p)
            k, l = self.apexes(e)
            if not i < k < j:
                k, l = l, k
            # boundary order i, k, j, l counterclockwise; the quadrilateral
            # p p0 p_1 p_inf is read clockwise, which matches EPS_SIGN = 1
            P = self.points
            out[e] = cross_ratio_shear(P[k], P[i], P[l], P[j])
        return out


def pentagon_check(x: dict, eps12: int = 1, rounds: int = 1) -> dict:
    """Five alternating flips on the two diagonals of a pentagon.

    Slots 0 and 1 hold the diagonal coordinates with ``eps_01 = eps12``; the
    flip at slot ``k`` negates it and shifts the other slot.  One round should
    swap the two coordinates (and negate ``eps``), two rounds return the input.
    """
    slots = [float(x[0]), float(x[1])]
    eps = eps12
    k = 0
    for _ in range(5 * rounds):
        o = 1 - k
        se = eps if o == 0 else -eps  # eps_{o,k}
        xe = slots[k]
        slots[o] = slots[o] - se * _softplus(-math.copysign(1, se) * xe)
        slots[k] = -xe
        eps = -eps
        k = o
    expected = [x[1], x[0]] if rounds % 2 else [x[0], x[1]]
    dev = max(abs(slots[0] - expected[0]), abs(slots[1] - expected[1]))
    return {"result": slots, "expected": expected, "deviation": dev, "eps_final": eps}
