"""Weyl group elements as (signed) one-line permutations, plus coset machinery.

One-line windows are the canonical representation: type A_n elements are
permutations of 1..n+1, types B_n/C_n are signed permutations of 1..n (the
hyperoctahedral group, with s_n flipping the sign in the last position), and
type D_n elements carry an even number of signs (s_n acts on the last two
positions by (x, y) -> (-y, -x)).  Reduced words are derived, never stored.

Multiplication composes windows: (v*w)(i) = v(w(i)) with v(-t) = -v(t), so
right multiplication by s_i edits positions and left multiplication edits
values.  Elements act on ambient vectors on the left via w(e_i) = sign * e_j.

:class:`WeylGroup` enumerates a whole group once (BFS over right
multiplication) and precomputes the index tables the quantum product engine
needs; it is only built for ranks where that is a desk-scale object.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

from .rootsystem import CurveDegree, Eps, RootSystem, build_root_system

__all__ = [
    "WeylElement",
    "ParabolicData",
    "identity",
    "simple_reflection",
    "from_word",
    "multiply",
    "length",
    "apply_root",
    "reflection_of",
    "sgn",
    "reduced_word",
    "parabolic_data",
    "min_coset_reps",
    "longest_element",
    "check_longest_characterization",
    "type_a_product_rule",
    "is_min_rep",
    "WeylGroup",
    "weyl_group",
]

# Weyl groups beyond this order are never enumerated (the element-level API
# still works there).
MAX_ENUMERATED_ORDER = 1_100_000


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element in one-line (signed) window notation."""

    lie_type: str
    rank: int
    window: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(int(x) for x in self.window))
        m = self.rank + 1 if self.lie_type == "A" else self.rank
        if len(self.window) != m:
            raise ValueError("window length does not match the rank")
        if sorted(abs(x) for x in self.window) != list(range(1, m + 1)):
            raise ValueError(f"{self.window} is not a signed permutation window")
        if self.lie_type == "A" and any(x < 0 for x in self.window):
            raise ValueError("type A windows are unsigned")
        if self.lie_type == "D" and sum(1 for x in self.window if x < 0) % 2:
            raise ValueError("type D windows need an even number of signs")

    # -- group structure ---------------------------------------------------

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if (self.lie_type, self.rank) != (other.lie_type, other.rank):
            raise ValueError("cannot multiply elements of different groups")
        win = tuple(
            self.window[t - 1] if t > 0 else -self.window[-t - 1] for t in other.window
        )
        return WeylElement(self.lie_type, self.rank, win)

    def inverse(self) -> "WeylElement":
        m = len(self.window)
        inv = [0] * m
        for i, t in enumerate(self.window, start=1):
            if t > 0:
                inv[t - 1] = i
            else:
                inv[-t - 1] = -i
        return WeylElement(self.lie_type, self.rank, tuple(inv))

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, len(self.window) + 1))

    # -- actions -----------------------------------------------------------

    def apply_eps(self, v: Eps) -> Eps:
        """Left action on an ambient vector: w(e_i) = sign(w(i)) e_|w(i)|."""
        out = [0] * len(v)
        for i, c in enumerate(v):
            if c:
                t = self.window[i]
                if t > 0:
                    out[t - 1] += c
                else:
                    out[-t - 1] -= c
        return tuple(out)

    @property
    def root_system(self) -> RootSystem:
        return build_root_system(self.lie_type, self.rank)

    def length(self) -> int:
        return length(self)

    def sort_key(self):
        return (length(self), self.window)

    def __repr__(self):
        return f"W({self.lie_type}{self.rank}){self.window}"


def identity(lie_type: str, rank: int) -> WeylElement:
    m = rank + 1 if lie_type == "A" else rank
    return WeylElement(lie_type, rank, tuple(range(1, m + 1)))


def simple_reflection(lie_type: str, rank: int, i: int) -> WeylElement:
    """The simple reflection s_i, 1-indexed as in the Dynkin diagram."""
    rs = build_root_system(lie_type, rank)
    return reflection_of(rs, rs.simple_root(i))


def reflection_of(rs: RootSystem, gamma: Eps) -> WeylElement:
    """The reflection s_gamma as a group element, for gamma any root."""
    if not rs.is_root(tuple(gamma)):
        raise ValueError(f"{gamma} is not a root of {rs}")
    m = rs.ambient_dim
    win = []
    for i in range(m):
        e_i = tuple(1 if j == i else 0 for j in range(m))
        img = rs.reflect(tuple(gamma), e_i)
        nz = [(j, c) for j, c in enumerate(img) if c]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            raise ValueError(f"reflection in {gamma} does not permute the ambient basis")
        j, c = nz[0]
        win.append((j + 1) * c)
    return WeylElement(rs.lie_type, rs.rank, tuple(win))


def from_word(lie_type: str, rank: int, word: Sequence[int]) -> WeylElement:
    """Product s_{i_1} s_{i_2} ... for a word of simple-reflection indices."""
    w = identity(lie_type, rank)
    for i in word:
        w = w * simple_reflection(lie_type, rank, i)
    return w


def multiply(w1: WeylElement, w2: WeylElement) -> WeylElement:
    return w1 * w2


@lru_cache(maxsize=1 << 18)
def _length_cached(lie_type: str, rank: int, window: tuple[int, ...]) -> int:
    rs = build_root_system(lie_type, rank)
    w = WeylElement(lie_type, rank, window)
    return sum(1 for g in rs.positive_roots if not rs.is_positive_root(w.apply_eps(g)))


def length(w: WeylElement) -> int:
    """Coxeter length = number of positive roots sent to negative roots."""
    return _length_cached(w.lie_type, w.rank, w.window)


def apply_root(w: WeylElement, beta: Eps) -> Eps:
    """The image root w(beta), possibly negative."""
    return w.apply_eps(tuple(beta))


def sgn(i: int, w: WeylElement) -> int:
    """Descent indicator: 1 iff right multiplication by s_{alpha_i} shortens w,
    equivalently iff w(alpha_i) is a negative root."""
    rs = w.root_system
    return 0 if rs.is_positive_root(w.apply_eps(rs.simple_root(i))) else 1


def _left_descent(w: WeylElement) -> Optional[int]:
    """Smallest i with l(s_i w) < l(w), via w^{-1}(alpha_i) < 0."""
    rs = w.root_system
    winv = w.inverse()
    for i in range(1, rs.rank + 1):
        if not rs.is_positive_root(winv.apply_eps(rs.simple_root(i))):
            return i
    return None


def reduced_word(w: WeylElement) -> tuple[int, ...]:
    """A reduced word for w, deterministic (leftmost descent first)."""
    word = []
    cur = w
    while True:
        i = _left_descent(cur)
        if i is None:
            break
        word.append(i)
        cur = simple_reflection(cur.lie_type, cur.rank, i) * cur
    if not cur.is_identity():
        raise AssertionError("descent stripping did not reach the identity")
    return tuple(word)


# -- parabolic quotients ---------------------------------------------------


def is_min_rep(w: WeylElement, delta_p: frozenset[int]) -> bool:
    """True iff w is the minimal-length representative of w W_P, i.e.
    w(alpha) > 0 for every alpha in Delta_P."""
    rs = w.root_system
    return all(rs.is_positive_root(w.apply_eps(rs.simple_root(i))) for i in delta_p)


class ParabolicData:
    """A parabolic subgroup datum: Delta_P, its positive roots, omega_P."""

    def __init__(self, rs: RootSystem, delta_p):
        self.rs = rs
        self.delta_p = frozenset(int(i) for i in delta_p)
        if not self.delta_p <= set(range(1, rs.rank + 1)):
            raise ValueError("Delta_P must be a set of simple-root indices")
        span = {i - 1 for i in self.delta_p}
        self.positive_sub_roots = tuple(
            g
            for g in rs.positive_roots
            if all(c == 0 or j in span for j, c in enumerate(rs.root_coords[g]))
        )
        self.coroot_sublattice = tuple(rs.coroot_coords[rs.simple_root(i)] for i in sorted(self.delta_p))
        self.omega = self._longest()

    def _longest(self) -> WeylElement:
        # grow on the right while some alpha in Delta_P is still sent positive
        rs = self.rs
        w = identity(rs.lie_type, rs.rank)
        while True:
            i = next(
                (i for i in sorted(self.delta_p) if rs.is_positive_root(w.apply_eps(rs.simple_root(i)))),
                None,
            )
            if i is None:
                break
            w = w * simple_reflection(rs.lie_type, rs.rank, i)
        assert length(w) == len(self.positive_sub_roots)
        return w

    def contains(self, w: WeylElement) -> bool:
        """Membership in W_P (every reduced word stays inside Delta_P)."""
        return all(i in self.delta_p for i in reduced_word(w))

    def __repr__(self):
        return f"ParabolicData({self.rs}, {sorted(self.delta_p)})"


@lru_cache(maxsize=None)
def _parabolic_cached(lie_type: str, rank: int, delta_key: frozenset) -> ParabolicData:
    return ParabolicData(build_root_system(lie_type, rank), delta_key)


def parabolic_data(rs: RootSystem, delta_p) -> ParabolicData:
    return _parabolic_cached(rs.lie_type, rs.rank, frozenset(int(i) for i in delta_p))


def longest_element(pd: ParabolicData) -> WeylElement:
    """omega_P, the longest element of W_P."""
    return pd.omega


def min_coset_reps(
    pd: ParabolicData,
    length_filter: Optional[int] = None,
    max_length: Optional[int] = None,
) -> Iterator[WeylElement]:
    """The minimal-length coset representatives W^P, streamed by increasing
    length and in lexicographic window order within a length.

    ``length_filter`` restricts to a single length; ``max_length`` truncates
    the stream.  Every coset appears exactly once: W^P is connected under
    w -> s_i w whenever that stays a minimal representative one step longer.
    """
    rs = pd.rs
    simple = [simple_reflection(rs.lie_type, rs.rank, i) for i in range(1, rs.rank + 1)]
    frontier = {identity(rs.lie_type, rs.rank).window}
    cur_len = 0
    seen = set(frontier)
    while frontier:
        if max_length is not None and cur_len > max_length:
            return
        if length_filter is None or cur_len == length_filter:
            for win in sorted(frontier):
                yield WeylElement(rs.lie_type, rs.rank, win)
        if length_filter is not None and cur_len >= length_filter:
            return
        nxt = set()
        for win in frontier:
            w = WeylElement(rs.lie_type, rs.rank, win)
            for s in simple:
                x = s * w
                if x.window in seen or x.window in nxt:
                    continue
                if length(x) == cur_len + 1 and is_min_rep(x, pd.delta_p):
                    nxt.add(x.window)
        seen |= nxt
        frontier = nxt
        cur_len += 1


def check_longest_characterization(
    wbar: WeylElement, pd: ParabolicData, pd_prime: ParabolicData
) -> bool:
    """True iff wbar in W_P has the length of omega_P omega_P' and sends all
    of Delta_P' to positive roots; when true, wbar equals omega_P omega_P'."""
    if not pd.contains(wbar):
        return False
    target_len = length(pd.omega) - length(pd_prime.omega)
    if length(wbar) != target_len:
        return False
    rs = pd.rs
    return all(rs.is_positive_root(wbar.apply_eps(rs.simple_root(i))) for i in pd_prime.delta_p)


def type_a_product_rule(i: int, j: int, r: int, m: int) -> list[int]:
    """Normal form of (s_i ... s_j)(s_r ... s_m) inside a type-A chain.

    Requires 1 <= i <= j <= m and 1 <= r <= m; returns the rewritten word
    (a list of simple-reflection indices), which multiplies back to the same
    group element.
    """
    if not (1 <= i <= j <= m and 1 <= r <= m):
        raise ValueError("indices must satisfy 1 <= i <= j <= m, 1 <= r <= m")
    up = lambda a, b: list(range(a, b + 1))  # noqa: E731  (empty if a > b)
    if r >= j + 2:
        return up(r, m) + up(i, j)
    if r == j + 1:
        return up(i, m)
    if i <= r <= j:
        return up(r + 1, m) + up(i, j - 1)
    return up(r, m) + up(i - 1, j - 1)


# -- enumerated groups -------------------------------------------------------


class WeylGroup:
    """A fully enumerated Weyl group with the tables the product engine uses.

    Elements are indexed 0..N-1 in (length, window) order; ``levels[l]`` holds
    the indices of the length-l elements and ``pos_in_level`` the position of
    each element inside its level.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        order = _group_order(rs.lie_type, rs.rank)
        if order > MAX_ENUMERATED_ORDER:
            raise ValueError(f"|W| = {order} exceeds the enumeration ceiling")
        self.nsimple = rs.rank
        self.refl_elements = tuple(reflection_of(rs, g) for g in rs.positive_roots)
        self.windows, self.length = self._enumerate()
        self.index = {w: i for i, w in enumerate(self.windows)}
        self.N = len(self.windows)
        assert self.N == order

        self.maxlen = int(self.length.max())
        self.levels = [
            np.flatnonzero(self.length == l).astype(np.int32) for l in range(self.maxlen + 1)
        ]
        self.pos_in_level = np.zeros(self.N, dtype=np.int32)
        for lvl in self.levels:
            self.pos_in_level[lvl] = np.arange(len(lvl), dtype=np.int32)

        self.right_refl = self._right_table(self.refl_elements)
        simple_idx = [
            self.rs.positive_roots.index(self.rs.simple_root(i)) for i in range(1, rs.rank + 1)
        ]
        self.simple_root_pos = tuple(simple_idx)
        self.right_simple = self.right_refl[:, simple_idx]

        # per positive root: coroot data used by the quantum Chevalley formula
        self.coroots = tuple(rs.coroot_coords[g].coords for g in rs.positive_roots)
        self.two_rho = np.array([2 * sum(c) for c in self.coroots], dtype=np.int64)
        self.chi = np.array(self.coroots, dtype=np.int64)  # chi[g][i-1] = <chi_i, g^vee>

    def _enumerate(self):
        rs = self.rs
        gens = [simple_reflection(rs.lie_type, rs.rank, i) for i in range(1, rs.rank + 1)]
        lengths = {identity(rs.lie_type, rs.rank).window: 0}
        frontier = list(lengths)
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for win in frontier:
                w = WeylElement(rs.lie_type, rs.rank, win)
                for s in gens:
                    x = (w * s).window
                    if x not in lengths:
                        lengths[x] = depth
                        nxt.append(x)
            frontier = nxt
        # BFS depth from the identity in the Cayley graph is the Coxeter length
        wins = sorted(lengths, key=lambda win: (lengths[win], win))
        lens = np.array([lengths[w] for w in wins], dtype=np.int64)
        return wins, lens

    def _encode(self, wins: np.ndarray) -> np.ndarray:
        """Mixed-radix int64 code of each signed window row (injective)."""
        m = wins.shape[1]
        digits = (np.abs(wins.astype(np.int64)) - 1) * 2 + (wins < 0)
        base = (2 * m) ** np.arange(m, dtype=np.int64)
        return digits @ base

    def _right_table(self, elements) -> np.ndarray:
        from . import _kernels

        wins = np.array(self.windows, dtype=np.int8)
        codes = self._encode(wins)
        order = np.argsort(codes)
        sorted_codes = codes[order]
        out = np.empty((self.N, len(elements)), dtype=np.int32)
        for r, s in enumerate(elements):
            comp = _kernels.compose_signed(wins, np.array(s.window, dtype=np.int8))
            pos = np.searchsorted(sorted_codes, self._encode(np.asarray(comp)))
            out[:, r] = order[pos]
        return out

    # -- conversions -------------------------------------------------------

    def element(self, idx: int) -> WeylElement:
        return WeylElement(self.rs.lie_type, self.rs.rank, self.windows[idx])

    def idx(self, w: WeylElement) -> int:
        return self.index[w.window]

    def min_rep_indices(self, delta_p: frozenset[int]) -> np.ndarray:
        keep = [
            i
            for i, win in enumerate(self.windows)
            if is_min_rep(WeylElement(self.rs.lie_type, self.rs.rank, win), delta_p)
        ]
        return np.array(keep, dtype=np.int32)

    def __repr__(self):
        return f"WeylGroup({self.rs.lie_type}{self.rs.rank}, N={self.N})"


def _group_order(lie_type: str, rank: int) -> int:
    import math

    n = rank
    if lie_type == "A":
        return math.factorial(n + 1)
    if lie_type in ("B", "C"):
        return math.factorial(n) << n
    return math.factorial(n) << (n - 1)


@lru_cache(maxsize=None)
def weyl_group(lie_type: str, rank: int) -> WeylGroup:
    """The enumerated Weyl group (cached per type and rank)."""
    return WeylGroup(build_root_system(lie_type, rank))
