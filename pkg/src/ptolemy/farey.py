"""Farey-type marked tessellations of the disc, flips and the Ptolemy group action.

Vertices are points of Q ∪ {∞} on the boundary circle, ordered
counterclockwise by the usual order of R ∪ {∞}.  A tessellation is stored as
its finite difference from the Farey tessellation together with a
distinguished oriented edge (the doe).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .numbers import INF, Rational, ccw
from .words import ALPHA, BETA, Word, relators, SECOND_COMMUTATOR_ALT


class NotFareyEdge(ValueError):
    pass


class EdgeNotPresent(ValueError):
    pass


class ForbiddenLabel(ValueError):
    pass


class BrokenTessellation(AssertionError):
    pass


@dataclass(frozen=True, order=True)
class Edge:
    a: Rational
    b: Rational

    def __init__(self, a, b):
        a, b = Rational.coerce(a), Rational.coerce(b)
        if a == b:
            raise ValueError("edge endpoints must differ")
        if b < a:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def ends(self):
        return (self.a, self.b)

    def is_farey(self) -> bool:
        return abs(self.a.det(self.b)) == 1

    def crosses(self, other: "Edge") -> bool:
        if set(self.ends) & set(other.ends):
            return False
        return ccw(self.a, other.a, self.b) != ccw(self.a, other.b, self.b)

    def to_json(self):
        return [str(self.a), str(self.b)]

    def __str__(self):
        return f"{{{self.a}, {self.b}}}"


def farey_neighbors(e: Edge) -> tuple[Rational, Rational]:
    """Mediant and comediant: the apexes of the two Farey triangles on ``e``."""
    if not e.is_farey():
        raise NotFareyEdge(str(e))
    (p, q), (r, s) = e.a.vector(), e.b.vector()
    return Rational(p + r, q + s), Rational(p - r, q - s)


def _common_farey_neighbors(u: Rational, v: Rational) -> set:
    # w = (e2*u - e1*v)/D solves det(w,u) = e1, det(w,v) = e2 with D = det(u,v)
    d = u.det(v)
    if d == 0:
        return set()
    (p, q), (r, s) = u.vector(), v.vector()
    out = set()
    for e1 in (1, -1):
        for e2 in (1, -1):
            x, y = e2 * p - e1 * r, e2 * q - e1 * s
            if x % d == 0 and y % d == 0 and (x, y) != (0, 0):
                out.add(Rational(x // d, y // d))
    return out


def _in_closed_arc(x, start, end) -> bool:
    """``x`` on the counterclockwise arc from ``start`` to ``end``."""
    return x == start or x == end or ccw(start, x, end)


@dataclass(frozen=True)
class FlipRecord:
    removed: Edge
    added: Edge
    doe_before: tuple
    doe_after: tuple

    def to_json(self):
        return {"removed": self.removed.to_json(), "added": self.added.to_json(),
                "doe_before": [str(x) for x in self.doe_before],
                "doe_after": [str(x) for x in self.doe_after]}


@dataclass(frozen=True)
class MarkedTessellation:
    removed: frozenset = frozenset()
    added: frozenset = frozenset()
    doe: tuple = (Rational(0), INF)

    @classmethod
    def base(cls) -> "MarkedTessellation":
        return BASE

    def has_edge(self, e: Edge) -> bool:
        if e in self.added:
            return True
        return e.is_farey() and e not in self.removed

    @property
    def doe_edge(self) -> Edge:
        return Edge(*self.doe)

    def apex(self, u: Rational, v: Rational) -> Rational:
        """Third vertex of the triangle to the left of ``u -> v``."""
        cands = _common_farey_neighbors(u, v)
        for e in self.added:
            cands.update(e.ends)
        found = [w for w in cands
                 if ccw(u, v, w) and self.has_edge(Edge(u, w)) and self.has_edge(Edge(v, w))]
        if len(found) != 1:
            raise BrokenTessellation(f"{len(found)} apexes left of {u} -> {v}")
        return found[0]

    def to_json(self) -> dict:
        return {"removed": [e.to_json() for e in sorted(self.removed)],
                "added": [e.to_json() for e in sorted(self.added)],
                "doe": [str(x) for x in self.doe]}

    @classmethod
    def from_json(cls, data: dict) -> "MarkedTessellation":
        edges = lambda key: frozenset(Edge(Rational.parse(a), Rational.parse(b))  # noqa: E731
                                      for a, b in data.get(key, []))
        doe = tuple(Rational.parse(x) for x in data.get("doe", ["0/1", "1/0"]))
        t = cls(edges("removed"), edges("added"), doe)
        t.check()
        return t

    def check(self):
        """Raise ``BrokenTessellation`` unless this is a Farey-type triangulation."""
        for e in self.removed:
            if not e.is_farey():
                raise BrokenTessellation(f"removed edge {e} is not a Farey edge")
        for e in self.added:
            if e.is_farey():
                raise BrokenTessellation(f"added edge {e} is already a Farey edge")
        added = sorted(self.added)
        for i, e in enumerate(added):
            for f in added[i + 1:]:
                if e.crosses(f):
                    raise BrokenTessellation(f"{e} crosses {f}")
        # every removed edge must be crossed by an added one, and every added
        # edge must bound one triangle on each side
        for e in self.removed:
            if not any(e.crosses(f) for f in added):
                raise BrokenTessellation(f"removing {e} leaves a hole")
        for e in added:
            self.apex(e.a, e.b)
            self.apex(e.b, e.a)
        if not self.has_edge(self.doe_edge):
            raise BrokenTessellation("doe is not an edge")
        return True

    def __str__(self):
        return str(self.to_json())


BASE = MarkedTessellation()


def _replace_edge(t: MarkedTessellation, old: Edge, new: Edge):
    removed, added = set(t.removed), set(t.added)
    if old in added:
        added.discard(old)
    else:
        removed.add(old)
    if new in removed:
        removed.discard(new)
    else:
        added.add(new)
    return frozenset(removed), frozenset(added)


def flip(t: MarkedTessellation, e: Edge):
    """Replace ``e`` by the other diagonal of its quadrilateral."""
    if not t.has_edge(e):
        raise EdgeNotPresent(str(e))
    if e == t.doe_edge:
        u, v = t.doe
    else:
        u, v = e.a, e.b
    left, right = t.apex(u, v), t.apex(v, u)
    new = Edge(left, right)
    removed, added = _replace_edge(t, e, new)
    # the new doe turns the frame (old doe, new doe) positively
    doe = (right, left) if e == t.doe_edge else t.doe
    out = MarkedTessellation(removed, added, doe)
    return out, FlipRecord(e, new, t.doe, doe)


# which side of the left triangle the β move walks to; fixed by _calibrate
BETA_FORWARD = None


def _beta(t: MarkedTessellation, forward: bool) -> MarkedTessellation:
    u, v = t.doe
    w = t.apex(u, v)
    return MarkedTessellation(t.removed, t.added, (v, w) if forward else (w, u))


def _alpha(t: MarkedTessellation) -> MarkedTessellation:
    return flip(t, t.doe_edge)[0]


def _act(w: Word, t: MarkedTessellation, forward: bool) -> MarkedTessellation:
    for sym, sign in reversed(w.in_alpha_beta().expand()):
        if sym == ALPHA:
            t = _alpha(t) if sign > 0 else _alpha(_alpha(_alpha(t)))
        elif sym == BETA:
            t = _beta(t, forward) if sign > 0 else _beta(_beta(t, forward), forward)
    return t


def _calibrate() -> bool:
    test = Word.parse("b a") ** 5
    for forward in (True, False):
        if _act(test, BASE, forward) == BASE and _act(Word.parse("b^3"), BASE, forward) == BASE:
            return forward
    raise AssertionError("neither β chirality satisfies (βα)^5 = 1")


BETA_FORWARD = _calibrate()


def act_word(w: Word, t: MarkedTessellation) -> MarkedTessellation:
    """Act by a word; the rightmost letter acts first."""
    return _act(w, t, BETA_FORWARD)


def _label_apex(a: Rational, b: Rational) -> Rational:
    """Farey apex to the left of ``a -> b`` in label space."""
    m, c = farey_neighbors(Edge(a, b))
    return m if ccw(a, b, m) else c


def q_tau(t: MarkedTessellation, q) -> Edge:
    """Edge of ``t`` carrying the label ``q``."""
    q = Rational.coerce(q)
    if q.is_inf or q in (Rational(1), Rational(-1)):
        raise ForbiddenLabel(str(q))
    if q == Rational(0):
        return t.doe_edge
    # walk label space and t in step, keeping the target on the left
    a, b = Rational(0), INF
    A, B = t.doe
    if not ccw(a, b, q):
        a, b, A, B = b, a, B, A
    while True:
        m, M = _label_apex(a, b), t.apex(A, B)
        if m == q:
            return Edge(A, B)
        if ccw(m, q, a):
            b, B = m, M
        else:
            a, A = m, M


def char_label(t: MarkedTessellation, e: Edge) -> Rational:
    """Inverse of ``q_tau``."""
    if not t.has_edge(e):
        raise EdgeNotPresent(str(e))
    if e == t.doe_edge:
        return Rational(0)
    a, b = Rational(0), INF
    A, B = t.doe
    if not (_in_closed_arc(e.a, B, A) and _in_closed_arc(e.b, B, A)):
        a, b, A, B = b, a, B, A
    while True:
        M = t.apex(A, B)
        m = _label_apex(a, b)
        nxt = None
        for (x, X), (y, Y) in (((a, A), (m, M)), ((m, M), (b, B))):
            if _in_closed_arc(e.a, Y, X) and _in_closed_arc(e.b, Y, X):
                nxt = (x, y, X, Y)
        if nxt is None:
            raise BrokenTessellation(f"lost track of {e}")
        a, b, A, B = nxt
        if Edge(A, B) == e:
            return _label_apex(a, b)


def act_rational(q, t: MarkedTessellation) -> MarkedTessellation:
    return flip(t, q_tau(t, q))[0]


def relator_words() -> dict:
    out = dict(relators())
    out["[bab, a2 b a2 bab a2 b2 a2]"] = SECOND_COMMUTATOR_ALT
    return out


def random_tessellation(rng: random.Random, n_moves: int = 15, height: int = 5) -> MarkedTessellation:
    """Random flips at small labels interleaved with doe moves."""
    t = BASE
    for _ in range(n_moves):
        kind = rng.random()
        if kind < 0.2:
            t = act_word(Word.of(BETA), t)
        elif kind < 0.35:
            t = act_word(Word.of(ALPHA), t)
        else:
            while True:
                q = Rational(rng.randint(-height, height), rng.randint(1, height))
                if q not in (Rational(1), Rational(-1)):
                    break
            t = act_rational(q, t)
    return t
