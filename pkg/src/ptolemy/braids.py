"""Geometric braids as piecewise-linear strands and their winding numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# +1: σ_i turns punctures i and i+1 counterclockwise about their midpoint,
# which makes the winding of σ_i equal to +π.
HANDEDNESS = 1
STEPS_PER_LETTER = 8
COLLISION_EPS = 1e-12


class BadIndex(ValueError):
    pass


class StrandCollision(ValueError):
    pass


class NonIntegralWinding(ValueError):
    pass


@dataclass(frozen=True)
class ArtinWord:
    letters: tuple = ()  # (index, ±1)

    @classmethod
    def parse(cls, text: str) -> "ArtinWord":
        out = []
        for tok in text.replace(",", " ").split():
            k = int(tok)
            if k == 0:
                raise BadIndex("generator index 0")
            out.append((abs(k), 1 if k > 0 else -1))
        return cls(tuple(out))

    @classmethod
    def from_ints(cls, ints) -> "ArtinWord":
        return cls(tuple((abs(k), 1 if k > 0 else -1) for k in ints))

    def __mul__(self, other):
        return ArtinWord(self.letters + other.letters)

    def __invert__(self):
        return ArtinWord(tuple((i, -s) for i, s in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(str(i * s) for i, s in self.letters)


def exponent_sum(w: ArtinWord) -> int:
    return sum(s for _, s in w.letters)


@dataclass(frozen=True, eq=False)
class GeometricBraid:
    """Strand positions ``pos[m, j] = (x, y)`` at grid times ``grid[m]``."""

    grid: np.ndarray
    pos: np.ndarray

    @property
    def n_strands(self) -> int:
        return self.pos.shape[1]

    def to_json(self) -> dict:
        return {"grid": self.grid.tolist(),
                "strands": [self.pos[:, j, :].tolist() for j in range(self.n_strands)]}

    @classmethod
    def from_json(cls, data: dict) -> "GeometricBraid":
        grid = np.asarray(data["grid"], dtype=float)
        strands = np.asarray(data["strands"], dtype=float)  # (n, M+1, 2)
        if strands.ndim != 3 or strands.shape[1] != len(grid) or strands.shape[2] != 2:
            raise ValueError("strands must be n lists of [x, y] per grid time")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("grid times must increase")
        start = sorted(map(tuple, strands[:, 0, :]))
        end = sorted(map(tuple, strands[:, -1, :]))
        if start != end:
            raise ValueError("start and end positions differ")
        return cls(grid, np.transpose(strands, (1, 0, 2)).copy())

    def refine(self, k: int) -> "GeometricBraid":
        """Subdivide every segment into ``k`` equal pieces (same trajectory)."""
        s = np.linspace(0, 1, k + 1)[:-1]
        g0, g1 = self.grid[:-1], self.grid[1:]
        grid = np.concatenate([(g0[:, None] + (g1 - g0)[:, None] * s).ravel(), self.grid[-1:]])
        p0, p1 = self.pos[:-1], self.pos[1:]
        pos = p0[:, None] + (p1 - p0)[:, None] * s[None, :, None, None]
        pos = np.concatenate([pos.reshape(-1, *self.pos.shape[1:]), self.pos[-1:]])
        return GeometricBraid(grid, pos)

    def concat(self, other: "GeometricBraid") -> "GeometricBraid":
        """``self`` followed by ``other``, matching strands by end position."""
        ends = {tuple(np.round(p, 12)): j for j, p in enumerate(self.pos[-1])}
        order = []
        for j in range(other.n_strands):
            key = tuple(np.round(other.pos[0, j], 12))
            if key not in ends:
                raise ValueError("end positions do not match start positions")
            order.append(ends[key])
        # strand order[j] of self continues as strand j of other
        perm = np.argsort(order)
        tail = other.pos[1:, perm, :]
        grid = np.concatenate([self.grid / 2, 0.5 + other.grid[1:] / 2])
        return GeometricBraid(grid, np.concatenate([self.pos, tail]))


def from_artin(w: ArtinWord, n: int) -> GeometricBraid:
    for i, _ in w.letters:
        if not 1 <= i <= n - 1:
            raise BadIndex(f"σ_{i} on {n} strands")
    slots = list(range(n))  # slots[k] = strand sitting at puncture k+1
    cur = np.array([[k + 1.0, 0.0] for k in range(n)])
    frames = [cur.copy()]
    for i, sign in w.letters:
        a, b = slots[i - 1], slots[i]
        mid = (cur[a] + cur[b]) / 2
        ra, rb = cur[a] - mid, cur[b] - mid
        for step in range(1, STEPS_PER_LETTER + 1):
            th = HANDEDNESS * sign * math.pi * step / STEPS_PER_LETTER
            c, s = math.cos(th), math.sin(th)
            rot = np.array([[c, -s], [s, c]])
            nxt = cur.copy()
            nxt[a] = mid + rot @ ra
            nxt[b] = mid + rot @ rb
            frames.append(nxt)
        # land exactly on the punctures
        cur = frames[-1]
        cur[a], cur[b] = mid - ra, mid - rb
        slots[i - 1], slots[i] = b, a
    pos = np.array(frames)
    grid = np.linspace(0.0, 1.0, len(frames))
    return GeometricBraid(grid, pos)


def _swept(d: np.ndarray) -> float:
    d0, d1 = d[:-1], d[1:]
    cross = d0[:, 0] * d1[:, 1] - d0[:, 1] * d1[:, 0]
    dot = np.einsum("ij,ij->i", d0, d1)
    # closest approach of the segment d0 -> d1 to the origin
    seg = d1 - d0
    ll = np.einsum("ij,ij->i", seg, seg)
    with np.errstate(invalid="ignore", divide="ignore"):
        u = np.clip(np.where(ll > 0, -np.einsum("ij,ij->i", d0, seg) / ll, 0.0), 0.0, 1.0)
    closest = np.hypot(*(d0 + u[:, None] * seg).T)
    if np.any(closest < COLLISION_EPS):
        raise StrandCollision("strands meet")
    return float(np.sum(np.arctan2(cross, dot)))


def relative_winding(b: GeometricBraid, j: int, k: int) -> float:
    """Angle swept by ``x_j - x_k``; counterclockwise counts positive."""
    if j == k:
        raise ValueError("need two distinct strands")
    return _swept(b.pos[:, j, :] - b.pos[:, k, :])


def total_winding(b: GeometricBraid) -> float:
    n = b.n_strands
    return sum(relative_winding(b, j, k) for j in range(n) for k in range(j + 1, n))


def abelianize(b: GeometricBraid, tol: float = 1e-6) -> int:
    r = total_winding(b) / math.pi
    k = round(r)
    if abs(r - k) >= tol:
        raise NonIntegralWinding(f"ν/π = {r}")
    return int(k)
