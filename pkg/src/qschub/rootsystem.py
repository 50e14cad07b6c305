"""Cartan data for the classical root systems A_n, B_n, C_n, D_n.

Roots live in ambient (epsilon) coordinates, the orthonormal presentation of
the standard tables (Bourbaki / Humphreys numbering): the branch node of D_n
is alpha_{n-2}, type B_n ends in the short root alpha_n = e_n, type C_n ends
in the long root alpha_n = 2 e_n, and type A_n sits inside R^{n+1}.  The
ambient presentation is the source of truth; simple-root and simple-coroot
coordinates are derived from it, which keeps the B/C/D sign conventions
honest.

Curve degrees (elements of the coroot lattice) are integer vectors in the
simple-coroot basis.  All pairings are exact integers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "CurveDegree",
    "Weight",
    "RootSystem",
    "build_root_system",
    "pairing",
    "two_rho_pairing",
    "max_rank",
]

LIE_TYPES = ("A", "B", "C", "D")

#: Rank ceiling for root-system construction; |W(B_8)| ~ 1e7 is the practical
#: desk-scale bound.  Override with the QSCHUB_MAX_RANK environment variable.
DEFAULT_MAX_RANK = 8

Eps = tuple[int, ...]


def max_rank() -> int:
    return int(os.environ.get("QSCHUB_MAX_RANK", DEFAULT_MAX_RANK))


@dataclass(frozen=True)
class CurveDegree:
    """An element of the coroot lattice, in simple-coroot coordinates."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(a) for a in self.coords))

    @staticmethod
    def zero(rank: int) -> "CurveDegree":
        return CurveDegree((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_effective(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def __add__(self, other: "CurveDegree") -> "CurveDegree":
        return CurveDegree(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __sub__(self, other: "CurveDegree") -> "CurveDegree":
        return CurveDegree(tuple(a - b for a, b in zip(self.coords, other.coords, strict=True)))

    def dominates(self, other: "CurveDegree") -> bool:
        """Componentwise >=."""
        return all(a >= b for a, b in zip(self.coords, other.coords, strict=True))

    def sort_key(self):
        return (2 * sum(self.coords), self.coords)


@dataclass(frozen=True)
class Weight:
    """A weight in the fundamental-weight basis."""

    coords: tuple[int, ...]


def _dot(a: Eps, b: Eps) -> int:
    return sum(x * y for x, y in zip(a, b, strict=True))


def _eps(dim: int, entries: dict[int, int]) -> Eps:
    v = [0] * dim
    for i, c in entries.items():
        v[i] = c
    return tuple(v)


def _solve_integer_combination(basis: list[Eps], target: Eps) -> tuple[int, ...]:
    """Write target as an integer combination of basis vectors (exact)."""
    rows = len(target)
    cols = len(basis)
    aug = [[Fraction(basis[j][i]) for j in range(cols)] + [Fraction(target[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][cols]
    # consistency: rows without pivots must have vanished
    for i in range(r, rows):
        if aug[i][cols] != 0:
            raise ValueError("target not in the span of the basis")
    out = []
    for x in sol:
        if x.denominator != 1:
            raise ValueError("combination is not integral")
        out.append(int(x))
    return tuple(out)


class RootSystem:
    """Immutable Cartan datum for one classical type and rank.

    Construct with :func:`build_root_system`; instances are shared and safe
    to use read-only from concurrent workers.
    """

    def __init__(self, lie_type: str, rank: int):
        if lie_type not in LIE_TYPES:
            raise ValueError(f"unknown Lie type {lie_type!r}")
        ceiling = max_rank()
        if not 1 <= rank <= ceiling:
            raise ValueError(f"rank {rank} out of range for type {lie_type} (ceiling {ceiling})")
        if lie_type == "D" and rank < 3:
            raise ValueError("type D needs rank >= 3")
        self.lie_type = lie_type
        self.rank = rank
        self.ambient_dim = rank + 1 if lie_type == "A" else rank

        self.simple_roots = self._simple_roots()
        self.positive_roots = self._positive_roots()
        self._positive_set = frozenset(self.positive_roots)

        self.simple_coroots = tuple(self._coroot_eps(a) for a in self.simple_roots)
        self.cartan = tuple(
            tuple(self._pair_eps(self.simple_roots[i], j) for j in range(rank)) for i in range(rank)
        )
        self.coroot_coords = {
            g: CurveDegree(_solve_integer_combination(list(self.simple_coroots), self._coroot_eps(g)))
            for g in self.positive_roots
        }
        self.root_coords = {
            g: _solve_integer_combination(list(self.simple_roots), g) for g in self.positive_roots
        }
        #: <2 rho, alpha_j^vee> = 2 for every simple coroot.
        self.rho_pairings = (2,) * rank

        for i in range(rank):
            assert self.cartan[i][i] == 2

    # -- construction -----------------------------------------------------

    def _simple_roots(self) -> tuple[Eps, ...]:
        n, d = self.rank, self.ambient_dim
        t = self.lie_type
        chain = [_eps(d, {i: 1, i + 1: -1}) for i in range(n - 1)]
        if t == "A":
            return tuple(chain + [_eps(d, {n - 1: 1, n: -1})])
        if t == "B":
            return tuple(chain + [_eps(d, {n - 1: 1})])
        if t == "C":
            return tuple(chain + [_eps(d, {n - 1: 2})])
        # D: fork at the end, alpha_n = e_{n-1} + e_n
        return tuple(chain + [_eps(d, {n - 2: 1, n - 1: 1})])

    def _positive_roots(self) -> tuple[Eps, ...]:
        d = self.ambient_dim
        t = self.lie_type
        out: list[Eps] = []
        if t == "A":
            for i in range(d):
                for j in range(i + 1, d):
                    out.append(_eps(d, {i: 1, j: -1}))
        else:
            for i in range(d):
                for j in range(i + 1, d):
                    out.append(_eps(d, {i: 1, j: -1}))
                    out.append(_eps(d, {i: 1, j: 1}))
            if t == "B":
                out.extend(_eps(d, {i: 1}) for i in range(d))
            elif t == "C":
                out.extend(_eps(d, {i: 2}) for i in range(d))
        # deterministic order: (norm, coordinates); only stability matters
        out.sort(key=lambda g: (_dot(g, g), g))
        return tuple(out)

    def _coroot_eps(self, g: Eps) -> Eps:
        nrm = _dot(g, g)
        co = []
        for x in g:
            q, r = divmod(2 * x, nrm)
            if r:
                raise ValueError(f"{g} has a non-integral coroot")
            co.append(q)
        return tuple(co)

    def _pair_eps(self, beta: Eps, j: int) -> int:
        """<beta, alpha_j^vee> for beta in ambient coordinates."""
        return _dot(beta, self.simple_coroots[j])

    # -- queries -----------------------------------------------------------

    def simple_root(self, i: int) -> Eps:
        """The simple root alpha_i (1-indexed)."""
        return self.simple_roots[i - 1]

    def fundamental_weight(self, i: int) -> Weight:
        c = [0] * self.rank
        c[i - 1] = 1
        return Weight(tuple(c))

    def is_root(self, g: Eps) -> bool:
        return g in self._positive_set or tuple(-x for x in g) in self._positive_set

    def is_positive_root(self, g: Eps) -> bool:
        return g in self._positive_set

    def coroot(self, g: Eps) -> CurveDegree:
        """gamma^vee in simple-coroot coordinates, for gamma any root."""
        if g in self.coroot_coords:
            return self.coroot_coords[g]
        neg = tuple(-x for x in g)
        if neg in self.coroot_coords:
            return CurveDegree(tuple(-a for a in self.coroot_coords[neg].coords))
        raise ValueError(f"{g} is not a root")

    def root_coordinates(self, g: Eps) -> tuple[int, ...]:
        """gamma in simple-root coordinates, for gamma any root."""
        if g in self.root_coords:
            return self.root_coords[g]
        neg = tuple(-x for x in g)
        if neg in self.root_coords:
            return tuple(-a for a in self.root_coords[neg])
        raise ValueError(f"{g} is not a root")

    def pairing_with_lambda(self, beta: Eps, lam: CurveDegree) -> int:
        """<beta, lambda> for beta a root (ambient) and lambda in Q^vee."""
        if len(lam.coords) != self.rank:
            raise ValueError("coroot coordinate dimension mismatch")
        return sum(a * self._pair_eps(beta, j) for j, a in enumerate(lam.coords) if a)

    def reflect(self, g: Eps, v: Eps) -> Eps:
        """Image of the ambient vector v under the reflection in the root g."""
        nrm = _dot(g, g)
        num = 2 * _dot(v, g)
        q, r = divmod(num, nrm)
        if r:
            raise ValueError("reflection is not integral on this vector")
        return tuple(x - q * y for x, y in zip(v, g))

    def to_json_dict(self) -> dict:
        return {
            "lie_type": self.lie_type,
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "cartan": [list(row) for row in self.cartan],
            "simple_roots": [list(a) for a in self.simple_roots],
            "simple_coroots": [list(a) for a in self.simple_coroots],
            "positive_roots": [
                {
                    "eps": list(g),
                    "root_coords": list(self.root_coords[g]),
                    "coroot_coords": list(self.coroot_coords[g].coords),
                }
                for g in self.positive_roots
            ],
            "rho_pairings": list(self.rho_pairings),
        }

    def __repr__(self):
        return f"RootSystem({self.lie_type}{self.rank})"


@lru_cache(maxsize=None)
def build_root_system(lie_type: str, rank: int) -> RootSystem:
    """Cartan datum for the given classical type and rank (cached)."""
    return RootSystem(lie_type, rank)


def pairing(rs: RootSystem, beta, lam: CurveDegree) -> int:
    """The natural pairing <beta, lambda>.

    ``beta`` is either a :class:`Weight` (fundamental-weight basis) or a root
    in ambient coordinates; ``lam`` is a curve degree in simple-coroot
    coordinates.  Bilinear, integer valued, and agrees with the Cartan matrix
    on simple pairs.
    """
    if isinstance(beta, Weight):
        if len(beta.coords) != len(lam.coords):
            raise ValueError("weight coordinate dimension mismatch")
        return sum(x * a for x, a in zip(beta.coords, lam.coords))
    return rs.pairing_with_lambda(tuple(beta), lam)


def two_rho_pairing(rs: RootSystem, lam: CurveDegree) -> int:
    """<2 rho, lambda> = twice the coordinate sum of lambda."""
    if len(lam.coords) != rs.rank:
        raise ValueError("coroot coordinate dimension mismatch")
    return 2 * sum(lam.coords)
