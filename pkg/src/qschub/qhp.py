"""Quantum cohomology of the Grassmannians G/P via lifting to G/B.

A Grassmannian here is a quotient by a maximal parabolic P of a classical
group: IG(k, 2n) for type C_n, OG(k, 2n+1) for B_n, OG(k, 2n+2) for D_{n+1}
with k <= n-1, and Gr(k, n+1) for A_n.  The even orthogonal maximal case
OG^o(n+1, 2n+2) is projectively the same space as OG(n, 2n+1) and is
normalized to it on construction; OG(n, 2n+2) is a two-node flag variety,
not a Grassmannian, and is rejected.

Every parabolic Gromov-Witten invariant N_{u,v}^{w,d} equals a Borel-level
invariant N_{u,v}^{w * omega_P omega_P', lambda_B}, where lambda_B is the
unique lift of d alpha_k^vee + Q_P^vee pairing into {0, -1} with every
positive root of the Levi, and Delta_P' collects the Levi simples pairing to
zero.  ``pw_lift`` finds the lift by complete search over the sign patterns
on Delta_P (there are at most 2^{rank-1}); the closed-form expressions for
lambda_B are implemented separately so the two routes can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Optional

from .qhb import FlagQuantumRing, flag_ring
from .rootsystem import CurveDegree, RootSystem, build_root_system
from .weyl import (
    ParabolicData,
    WeylElement,
    is_min_rep,
    length,
    min_coset_reps,
    parabolic_data,
    check_longest_characterization,
)

__all__ = [
    "GrassmannianDesc",
    "PWLift",
    "grassmannian",
    "parse_space",
    "pw_lift",
    "lambda_b_closed_form",
    "gw_invariant_parabolic",
    "quantum_multiply_parabolic",
    "psi_lift",
    "ParabolicClass",
]


@dataclass(frozen=True)
class GrassmannianDesc:
    """A Grassmannian of classical type: the group datum (lie_type, n) in the
    convention that type D means the group D_{n+1}, plus the node k."""

    lie_type: str
    n: int
    k: int

    @property
    def rank(self) -> int:
        return self.n + 1 if self.lie_type == "D" else self.n

    @property
    def ambient(self) -> int:
        return {"A": self.n + 1, "B": 2 * self.n + 1, "C": 2 * self.n, "D": 2 * self.n + 2}[
            self.lie_type
        ]

    @property
    def name(self) -> str:
        if self.lie_type == "A":
            return f"Gr({self.k},{self.ambient})"
        prefix = "IG" if self.lie_type == "C" else "OG"
        return f"{prefix}({self.k},{self.ambient})"

    @property
    def deg_t(self) -> int:
        """Cohomological degree of the quantum variable t."""
        n, k = self.n, self.k
        if self.lie_type == "A":
            return n + 1
        if self.lie_type == "C":
            return 2 * n + 1 - k if k < n else n + 1
        if self.lie_type == "B":
            return 2 * n - k if k < n else 2 * n
        return 2 * n + 1 - k  # D, k <= n-1

    @property
    def delta_p(self) -> frozenset[int]:
        return frozenset(i for i in range(1, self.rank + 1) if i != self.k)

    def root_system(self) -> RootSystem:
        return build_root_system(self.lie_type, self.rank)

    def parabolic(self) -> ParabolicData:
        return parabolic_data(self.root_system(), self.delta_p)

    def ring(self) -> FlagQuantumRing:
        return flag_ring(self.lie_type, self.rank)

    def min_reps(self):
        return list(min_coset_reps(self.parabolic()))

    def contains(self, w: WeylElement) -> bool:
        return is_min_rep(w, self.delta_p)

    def dimension(self) -> int:
        return length(_w0(self)) - length(self.parabolic().omega)


def _w0(gd: GrassmannianDesc) -> WeylElement:
    pd = parabolic_data(gd.root_system(), frozenset(range(1, gd.rank + 1)))
    return pd.omega


def grassmannian(family: str, k: int, ambient: int) -> GrassmannianDesc:
    """Build a descriptor from the space family and ambient dimension.

    ``family`` is one of Gr / IG / OGodd / OGeven (OG picks odd/even by the
    ambient).  OGeven with k = n+1 is normalized to OG(n, 2n+1); k = n is not
    a Grassmannian and is rejected.
    """
    family = family.strip()
    if family == "Gr":
        n = ambient - 1
        if not 1 <= k <= n:
            raise ValueError(f"Gr({k},{ambient}) is out of range")
        return GrassmannianDesc("A", n, k)
    if family == "IG":
        if ambient % 2:
            raise ValueError("IG needs an even ambient dimension")
        n = ambient // 2
        if not 1 <= k <= n:
            raise ValueError(f"IG({k},{ambient}) is out of range")
        return GrassmannianDesc("C", n, k)
    if family in ("OG", "OGodd", "OGeven"):
        if ambient % 2:
            n = (ambient - 1) // 2
            if family == "OGeven":
                raise ValueError("OGeven needs an even ambient dimension")
            if not 1 <= k <= n:
                raise ValueError(f"OG({k},{ambient}) is out of range")
            return GrassmannianDesc("B", n, k)
        n = ambient // 2 - 1
        if family == "OGodd":
            raise ValueError("OGodd needs an odd ambient dimension")
        if k == n + 1:  # a connected component, projectively OG(n, 2n+1)
            return GrassmannianDesc("B", n, n)
        if k == n:
            raise ValueError(f"OG({k},{ambient}) is a two-step flag variety, not handled")
        if not 1 <= k <= n - 1 or n + 1 < 3:
            raise ValueError(f"OG({k},{ambient}) is out of range")
        return GrassmannianDesc("D", n, k)
    raise ValueError(f"unknown space family {family!r}")


def parse_space(text: str) -> GrassmannianDesc:
    """Parse ``FAMILY:k:N`` (e.g. IG:2:8, OGodd:2:7, OGeven:2:8, Gr:2:5)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"space {text!r} is not FAMILY:k:N")
    return grassmannian(parts[0], int(parts[1]), int(parts[2]))


# ---------------------------------------------------------------------------
# the comparison lift


@dataclass(frozen=True)
class PWLift:
    """The Borel lift of one parabolic quantum degree."""

    lambda_b: CurveDegree
    delta_p_prime: tuple[int, ...]
    omega_product: WeylElement  # omega_P omega_P'


def _pw_search(rs: RootSystem, delta_p: frozenset[int], base: CurveDegree) -> CurveDegree:
    """The unique representative of base + Q_P^vee pairing into {0,-1} with
    all of R_P^+.  Complete search over sign patterns on the Levi simples."""
    free = sorted(delta_p)
    pd = parabolic_data(rs, delta_p)
    cartan_p = [[rs.cartan[i - 1][j - 1] for j in free] for i in free]
    rhs_base = [rs.pairing_with_lambda(rs.simple_root(i), base) for i in free]
    found = []
    for signs in iproduct((0, -1), repeat=len(free)):
        # row j: sum_i <alpha_j, alpha_i^vee> c_i = signs_j - <alpha_j, base>
        aug = [
            [Fraction(cartan_p[j][i]) for i in range(len(free))] + [Fraction(signs[j] - rhs_base[j])]
            for j in range(len(free))
        ]
        n = len(free)
        ok = True
        for c in range(n):
            piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
            if piv is None:
                ok = False
                break
            aug[c], aug[piv] = aug[piv], aug[c]
            f = aug[c][c]
            aug[c] = [x / f for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c] != 0:
                    fr = aug[r][c]
                    aug[r] = [x - fr * y for x, y in zip(aug[r], aug[c])]
        if not ok:
            continue
        coeffs = [aug[r][n] for r in range(n)]
        if any(x.denominator != 1 for x in coeffs):
            continue
        lam = list(base.coords)
        for idx, c in zip(free, coeffs):
            lam[idx - 1] += int(c)
        cand = CurveDegree(tuple(lam))
        if all(rs.pairing_with_lambda(g, cand) in (0, -1) for g in pd.positive_sub_roots):
            found.append(cand)
    if len(found) != 1:
        raise AssertionError(f"expected a unique lift, found {found}")
    return found[0]


@lru_cache(maxsize=None)
def pw_lift(gd: GrassmannianDesc, d: int) -> PWLift:
    """Lift the parabolic degree d to (lambda_B, Delta_P', omega_P omega_P')."""
    if d < 1:
        raise ValueError("the lift is defined for degrees d >= 1")
    rs = gd.root_system()
    base = CurveDegree(tuple(d if i == gd.k else 0 for i in range(1, gd.rank + 1)))
    lam = _pw_search(rs, gd.delta_p, base)
    delta_prime = tuple(
        sorted(i for i in gd.delta_p if rs.pairing_with_lambda(rs.simple_root(i), lam) == 0)
    )
    pd = gd.parabolic()
    pd_prime = parabolic_data(rs, frozenset(delta_prime))
    omega = pd.omega * pd_prime.omega
    if not check_longest_characterization(omega, pd, pd_prime):
        raise AssertionError("omega_P omega_P' failed its characterization")
    return PWLift(lam, delta_prime, omega)


def lambda_b_closed_form(gd: GrassmannianDesc, d: int) -> CurveDegree:
    """Closed-form lambda_B for the Grassmannian families (one formula per
    type), against which the searched lift is verified."""
    n, k, rank = gd.n, gd.k, gd.rank
    coords = [0] * rank
    if gd.lie_type == "C":
        m, r = divmod(d - 1, k)
        r += 1
        for j in range(1, k):
            coords[j - 1] += m * j
        for j in range(1, r):
            coords[k - r + j - 1] += j
        for j in range(k, n + 1):
            coords[j - 1] += d
        return CurveDegree(tuple(coords))
    if gd.lie_type in ("B", "D"):
        cap_d = d if k < n else 2 * d
        m, r = divmod(cap_d - 1, k)
        r += 1
        for j in range(1, k):
            coords[j - 1] += m * j
        for j in range(1, r):
            coords[k - r + j - 1] += j
        coords[k - 1] += d
        if k < n:
            half = d // 2
            for j in range(k + 1, n):
                coords[j - 1] += 2 * half
            coords[n - 1] += half
            if gd.lie_type == "D":
                coords[n] += half
        return CurveDegree(tuple(coords))
    # type A
    m1, r1 = divmod(d - 1, k)
    r1 += 1
    m2, r2 = divmod(d - 1, n + 1 - k)
    r2 += 1
    for j in range(1, k):
        coords[j - 1] += m1 * j
    for j in range(1, r1):
        coords[k - r1 + j - 1] += j
    coords[k - 1] += d
    for j in range(1, n - k + 1):
        coords[n + 1 - j - 1] += m2 * j
    for j in range(1, r2):
        coords[k + r2 - j - 1] += j
    return CurveDegree(tuple(coords))


def psi_lift(gd: GrassmannianDesc, w: WeylElement, d: int) -> tuple[WeylElement, CurveDegree]:
    """The vector-space embedding of QH*(G/P) into QH*(G/B) on basis labels:
    t^d sigma^w -> q_{lambda_B} sigma^{w omega_P omega_P'}."""
    if d == 0:
        return w, CurveDegree.zero(gd.rank)
    lift = pw_lift(gd, d)
    return w * lift.omega_product, lift.lambda_b


# ---------------------------------------------------------------------------
# parabolic products


@dataclass
class ParabolicClass:
    """A finite sum of t^d sigma^w for one Grassmannian."""

    gd: GrassmannianDesc
    terms: dict  # (WeylElement, d) -> int

    def coeff(self, w: WeylElement, d: int) -> int:
        return self.terms.get((w, d), 0)

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0].sort_key()))

    def max_t_degree(self) -> int:
        return max((d for (_, d) in self.terms), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, ParabolicClass)
            and self.gd == other.gd
            and self.terms == other.terms
        )

    def to_json_list(self):
        return [
            {"w": list(w.window), "d": d, "coeff": c} for (w, d), c in self.items_sorted()
        ]


def _require_min_rep(gd: GrassmannianDesc, w: WeylElement, label: str) -> None:
    if not gd.contains(w):
        raise ValueError(f"{label} = {w.window} is not a minimal coset representative")


def gw_invariant_parabolic(
    gd: GrassmannianDesc, u: WeylElement, v: WeylElement, w: WeylElement, d: int
) -> int:
    """The parabolic invariant N_{u,v}^{w,d} (d = 0 gives the cup product)."""
    for lbl, x in (("u", u), ("v", v), ("w", w)):
        _require_min_rep(gd, x, lbl)
    ring = gd.ring()
    if length(u) + length(v) != length(w) + d * gd.deg_t:
        return 0
    if d == 0:
        return ring.classical_coefficient(u, v, w)
    wt, lam = psi_lift(gd, w, d)
    return ring.gw_invariant(u, v, wt, lam)


def quantum_multiply_parabolic(
    gd: GrassmannianDesc, u: WeylElement, v: WeylElement, t_cap: Optional[int] = None
) -> ParabolicClass:
    """The full quantum product in QH*(G/P), assembled from the Borel lift.

    The t-degree bound comes from the dimension constraint alone:
    d <= (l(u) + l(v)) / deg t; vanishing statements stay independently
    checkable against this product.
    """
    _require_min_rep(gd, u, "u")
    _require_min_rep(gd, v, "v")
    ring = gd.ring()
    lu, lv = length(u), length(v)
    dmax = (lu + lv) // gd.deg_t
    if t_cap is not None:
        dmax = min(dmax, t_cap)
    lifts = {d: pw_lift(gd, d) for d in range(1, dmax + 1)}
    cap = [0] * gd.rank
    for lift in lifts.values():
        cap = [max(a, b) for a, b in zip(cap, lift.lambda_b.coords)]
    left, right = (u, v) if lu <= lv else (v, u)
    full = ring.quantum_multiply(left, right, q_cap=tuple(cap))
    terms: dict = {}
    for (w, lam), c in full.terms.items():
        if lam.is_zero():
            # cup products of pulled-back classes stay pulled back
            assert gd.contains(w), f"classical term outside W^P: {w.window}"
            terms[(w, 0)] = c
    for d in range(1, dmax + 1):
        lift = lifts[d]
        lvl = lu + lv - d * gd.deg_t
        if lvl < 0:
            break
        for w in min_coset_reps(gd.parabolic(), length_filter=lvl):
            c = full.coeff(w * lift.omega_product, lift.lambda_b)
            if c:
                terms[(w, d)] = c
    return ParabolicClass(gd, terms)
