"""Seeded random objects for property suites."""

from __future__ import annotations

import random

from .braids import ArtinWord
from .extensions import ExtensionParams
from .farey import Edge, MarkedTessellation
from .numbers import Rational
from .words import ALPHA, BETA, Word


def random_word(rng: random.Random, max_len: int = 10, min_len: int = 0) -> Word:
    n = rng.randint(min_len, max_len)
    return Word(tuple((rng.choice((ALPHA, BETA)), rng.choice((1, -1))) for _ in range(n)))


def random_artin(rng: random.Random, max_strands: int = 6, max_len: int = 20):
    n = rng.randint(2, max_strands)
    L = rng.randint(0, max_len)
    return ArtinWord(tuple((rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(L))), n


def random_label(rng: random.Random, height: int = 6) -> Rational:
    while True:
        q = Rational(rng.randint(-height, height), rng.randint(1, height))
        if q not in (Rational(1), Rational(-1)):
            return q


def random_params(rng: random.Random, size: int = 6) -> ExtensionParams:
    return ExtensionParams(*(rng.randint(-size, size) for _ in range(3)), 0)


def edge_neighborhood(t: MarkedTessellation, e: Edge, depth: int = 1) -> set:
    """Edges reachable from ``e`` through at most ``depth`` triangles."""
    edges, frontier = {e}, {e}
    for _ in range(depth):
        nxt = set()
        for f in frontier:
            for u, v in ((f.a, f.b), (f.b, f.a)):
                w = t.apex(u, v)
                nxt |= {Edge(u, w), Edge(v, w)}
        nxt -= edges
        edges |= nxt
        frontier = nxt
    return edges
