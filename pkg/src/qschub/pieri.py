"""Quantum Pieri formulas for the special Schubert classes, with oracles.

The special classes are the Chern classes of the dual tautological subbundle:
sigma^u with u = s_{k-p+1} ... s_{k-1} s_k (scale factor 2 exactly for the
odd orthogonal maximal case).  Each formula below expresses the quantum part
of sigma^u * sigma^v through classical intersection numbers in G/B, which the
engine computes directly; the independent oracle is the lifted product of
:mod:`qschub.qhp`, and the verification suites compare the two term by term.

Type A uses the quotient-bundle special classes u = s_{k+p-1} ... s_k (the
two routes are equivalent through the duality of Gr(k, n+1) and
Gr(n+1-k, n+1)), with products phrased on partitions in the k x (n+1-k) box.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .qhp import GrassmannianDesc, gw_invariant_parabolic
from .rootsystem import Eps, two_rho_pairing
from .weyl import WeylElement, from_word, length, min_coset_reps, reflection_of

__all__ = [
    "SpecialClass",
    "PieriResult",
    "special_class",
    "gamma_C",
    "pieri_C",
    "check_TFAE",
    "pieri_BD_d1",
    "pieri_BD_d2",
    "pieri_A",
    "degree1_reduction_A",
    "verify_vanishing",
    "sbar_word",
    "interlacing_above",
    "quantum_c_partitions",
]


@dataclass(frozen=True)
class SpecialClass:
    """A Chern class c_p(S*) (or c_p(Q) in type A) as a Schubert class."""

    gd: GrassmannianDesc
    p: int
    element: WeylElement
    scale: int  # c_p = scale * sigma^element


def special_class(gd: GrassmannianDesc, p: int) -> SpecialClass:
    """The degree-p special class of the Grassmannian."""
    t, k = gd.lie_type, gd.k
    if t == "A":
        if not 1 <= p <= gd.n + 1 - k:
            raise ValueError(f"p = {p} out of range for {gd.name}")
        word = list(range(k + p - 1, k - 1, -1))
        return SpecialClass(gd, p, from_word(t, gd.rank, word), 1)
    if not 1 <= p <= k:
        raise ValueError(f"p = {p} out of range for {gd.name}")
    word = list(range(k - p + 1, k + 1))
    scale = 2 if (t == "B" and k == gd.n) else 1
    return SpecialClass(gd, p, from_word(t, gd.rank, word), scale)


@dataclass
class PieriResult:
    """A Pieri product: classical and quantum terms plus a reason trace."""

    classical: list  # (label, coeff)
    quantum: list  # (label, d, coeff)
    provenance: dict = field(default_factory=dict)

    def terms_dict(self) -> dict:
        out = {(lbl, 0): c for lbl, c in self.classical}
        out.update({(lbl, d): c for lbl, d, c in self.quantum})
        return out


# ---------------------------------------------------------------------------
# type C


def gamma_C(gd: GrassmannianDesc) -> tuple[Eps, WeylElement]:
    """The distinguished long-ish positive root of the type-C formula,
    gamma = alpha_n + 2(alpha_k + ... + alpha_{n-1}), and its reflection;
    gamma^vee = alpha_k^vee + ... + alpha_n^vee."""
    if gd.lie_type != "C":
        raise ValueError("gamma_C applies to IG(k,2n) only")
    rs = gd.root_system()
    n, k = gd.n, gd.k
    g = list(rs.simple_root(n))
    for j in range(k, n):
        g = [a + 2 * b for a, b in zip(g, rs.simple_root(j))]
    gamma = tuple(g)
    return gamma, reflection_of(rs, gamma)


def pieri_C(gd: GrassmannianDesc, p: int, v: WeylElement) -> PieriResult:
    """Quantum Pieri product sigma^u * sigma^v in QH*(IG(k,2n)).

    The classical part is the engine's cup product.  The quantum part exists
    exactly when l(v s_gamma) = l(v) - 2n + 2k - 1, in which case it is
    t * sum_w N_{u s_k, v s_gamma}^{w s_1...s_{k-1}, 0} sigma^w; there are
    never t^2 or higher terms.
    """
    if gd.lie_type != "C":
        raise ValueError("pieri_C applies to IG(k,2n) only")
    sp = special_class(gd, p)
    u = sp.element
    n, k = gd.n, gd.k
    classical = _classical_terms(gd, u, v)
    gamma, s_gamma = gamma_C(gd)
    lvg = length(v * s_gamma)
    required = length(v) - 2 * n + 2 * k - 1
    prov = {
        "len_v_s_gamma": lvg,
        "required_length": required,
        "case": "quantum" if lvg == required else "no-quantum",
    }
    quantum = []
    if lvg == required:
        ring = gd.ring()
        left = u * from_word(gd.lie_type, gd.rank, [k])  # u s_k, length p-1
        right = v * s_gamma
        shift = from_word(gd.lie_type, gd.rank, list(range(1, k)))
        lvl = length(u) + length(v) - gd.deg_t
        if lvl >= 0:
            for w in min_coset_reps(gd.parabolic(), length_filter=lvl):
                c = ring.classical_coefficient(left, right, w * shift)
                if c:
                    quantum.append((w, 1, c))
    return PieriResult(classical, quantum, prov)


def check_TFAE(gd: GrassmannianDesc, v: WeylElement) -> tuple[bool, bool, bool]:
    """The three equivalent quantum-term criteria for IG(k,2n):
    (a) l(v s_gamma) = l(v) + 1 - <2 rho, gamma^vee>;
    (b) v s_gamma(alpha_k) is positive;
    (c) v s_gamma is a minimal representative for Delta minus alpha_{k-1}
        (for k = 1 that quotient is a point, so (c) means v s_gamma = id).
    """
    if gd.lie_type != "C":
        raise ValueError("check_TFAE applies to IG(k,2n) only")
    rs = gd.root_system()
    k = gd.k
    gamma, s_gamma = gamma_C(gd)
    vg = v * s_gamma
    drop = two_rho_pairing(rs, rs.coroot(gamma))
    a = length(vg) == length(v) + 1 - drop
    b = rs.is_positive_root(vg.apply_eps(rs.simple_root(k)))
    if k == 1:
        c = vg.is_identity()
    else:
        delta = frozenset(i for i in range(1, gd.rank + 1) if i != k - 1)
        c = all(rs.is_positive_root(vg.apply_eps(rs.simple_root(i))) for i in delta)
    return a, b, c


def _classical_terms(gd: GrassmannianDesc, u: WeylElement, v: WeylElement) -> list:
    ring = gd.ring()
    full = ring.classical_multiply(u, v)
    out = []
    for (w, lam), c in full.items_sorted():
        assert gd.contains(w), "classical Pieri term escaped W^P"
        out.append((w, c))
    return out


# ---------------------------------------------------------------------------
# types B and D


def sbar_word(gd: GrassmannianDesc) -> list[int]:
    """The word of the folded last reflection: [n] in type B, [n, n+1] in D."""
    if gd.lie_type == "B":
        return [gd.n]
    if gd.lie_type == "D":
        return [gd.n, gd.n + 1]
    raise ValueError("sbar_word applies to types B and D only")


def _bd_u1v1w1(gd: GrassmannianDesc, u, v, w):
    n, k = gd.n, gd.k
    t, rank = gd.lie_type, gd.rank
    if k < n:
        word_v = [k] + list(range(k + 1, n)) + sbar_word(gd) + list(range(n - 1, k, -1))
        return (
            u * from_word(t, rank, [k]),
            v * from_word(t, rank, word_v),
            w * from_word(t, rank, list(range(1, k))),
        )
    # k = n happens in type B only (the even maximal case is normalized away)
    word_w = list(range(2, n)) + list(range(1, n - 1)) + [n - 1, n]
    return (u, v * from_word(t, rank, [n, n - 1]), w * from_word(t, rank, word_w))


def pieri_BD_d1(gd: GrassmannianDesc, p: int, v: WeylElement, w: WeylElement) -> int:
    """The t^1 coefficient N_{u,v}^{w,1} of the orthogonal quantum Pieri rule,
    as a classical number N_{u_1,v_1}^{w_1,0}; zero off the dimension match."""
    if gd.lie_type not in ("B", "D"):
        raise ValueError("pieri_BD_d1 applies to OG(k,N) only")
    sp = special_class(gd, p)
    u = sp.element
    if length(u) + length(v) != length(w) + gd.deg_t:
        return 0
    u1, v1, w1 = _bd_u1v1w1(gd, u, v, w)
    return gd.ring().classical_coefficient(u1, v1, w1)


def _bd_v2w2(gd: GrassmannianDesc, v, w):
    n, k = gd.n, gd.k
    t, rank = gd.lie_type, gd.rank
    word_v = list(range(k, n)) + sbar_word(gd) + list(range(n - 1, 0, -1))
    word_w = list(range(1, n)) + sbar_word(gd) + list(range(n - 1, k - 1, -1))
    return v * from_word(t, rank, word_v), w * from_word(t, rank, word_w)


def pieri_BD_d2(gd: GrassmannianDesc, p: int, v: WeylElement, w: WeylElement) -> int:
    """The t^2 coefficient N_{u,v}^{w,2} as a classical number N_{u,v_2}^{w_2,0};
    zero for k = n or off the dimension match.  When nonzero, the side
    conditions v_2 in W^P and l(v_2) = l(v) - l(v^{-1} v_2) are asserted."""
    if gd.lie_type not in ("B", "D"):
        raise ValueError("pieri_BD_d2 applies to OG(k,N) only")
    n, k = gd.n, gd.k
    sp = special_class(gd, p)
    u = sp.element
    if k >= n or length(u) + length(v) != length(w) + 2 * gd.deg_t:
        return 0
    v2, w2 = _bd_v2w2(gd, v, w)
    c = gd.ring().classical_coefficient(u, v2, w2)
    if c:
        assert gd.contains(v2), "nonzero t^2 term with v_2 outside W^P"
        assert length(v2) == length(v) - length(v.inverse() * v2)
    return c


# ---------------------------------------------------------------------------
# type A


def interlacing_above(a: tuple, p: int, width: int):
    """Partitions b with |b| = |a| + p and width >= b_1 >= a_1 >= b_2 >= ...
    >= b_k >= a_k (the classical Pieri summands)."""
    k = len(a)
    target = sum(a) + p

    def rec(i, prefix, remaining):
        if i == k:
            if remaining == 0:
                yield tuple(prefix)
            return
        hi = width if i == 0 else a[i - 1]
        lo = a[i]
        for b in range(min(hi, remaining), lo - 1, -1):
            yield from rec(i + 1, prefix + [b], remaining - b)

    yield from rec(0, [], target)


def quantum_c_partitions(a: tuple, p: int, n: int):
    """Partitions c with |c| = |a| + p - (n+1) and a_1 - 1 >= c_1 >= a_2 - 1
    >= c_2 >= ... >= a_k - 1 >= c_k (the t^1 summands)."""
    k = len(a)
    target = sum(a) + p - (n + 1)
    if target < 0:
        return

    def rec(i, prefix, remaining):
        if i == k:
            if remaining == 0:
                yield tuple(prefix)
            return
        hi = a[i] - 1
        lo = a[i + 1] - 1 if i + 1 < k else 0
        lo = max(lo, 0)
        for c in range(min(hi, remaining), lo - 1, -1):
            yield from rec(i + 1, prefix + [c], remaining - c)

    yield from rec(0, [], target)


def pieri_A(gd: GrassmannianDesc, p: int, a: tuple) -> PieriResult:
    """Quantum Pieri rule for Gr(k, n+1) on partitions: all coefficients are
    one, the classical terms interlace above a, the t terms interlace below
    a shifted by one, and there are no t^2 terms."""
    if gd.lie_type != "A":
        raise ValueError("pieri_A applies to Gr(k,n+1) only")
    n, k = gd.n, gd.k
    a = tuple(int(x) for x in a)
    if len(a) != k or any(a[i] < a[i + 1] for i in range(k - 1)) or a and (a[0] > n + 1 - k or a[-1] < 0):
        raise ValueError(f"{a} is not a partition in the {k} x {n + 1 - k} box")
    if not 1 <= p <= n + 1 - k:
        raise ValueError(f"p = {p} out of range for {gd.name}")
    classical = [(b, 1) for b in interlacing_above(a, p, n + 1 - k)]
    quantum = [(c, 1, 1) for c in quantum_c_partitions(a, p, n)]
    return PieriResult(classical, quantum, {"case": "interlacing"})


def degree1_reduction_A(gd: GrassmannianDesc, p: int, v: WeylElement, w: WeylElement) -> int:
    """The t^1 coefficient of sigma^u * sigma^v on Gr(k,n+1), as the classical
    number N_{u s_k, v s_k s_{k-1} ... s_1}^{w s_n ... s_{k+1}, 0}."""
    if gd.lie_type != "A":
        raise ValueError("degree1_reduction_A applies to Gr(k,n+1) only")
    n, k = gd.n, gd.k
    sp = special_class(gd, p)
    u = sp.element
    if length(w) != length(v) + p - (n + 1):
        return 0
    t, rank = gd.lie_type, gd.rank
    left = u * from_word(t, rank, [k])
    right = v * from_word(t, rank, list(range(k, 0, -1)))
    target = w * from_word(t, rank, list(range(n, k, -1)))
    return gd.ring().classical_coefficient(left, right, target)


# ---------------------------------------------------------------------------
# vanishing sweeps


def verify_vanishing(gd: GrassmannianDesc, p: int, d_min: int) -> dict:
    """Sweep every (v, w) pair meeting the dimension constraint at degrees
    d >= d_min and collect any nonzero invariant (none are expected)."""
    sp = special_class(gd, p)
    u = sp.element
    lu = length(u)
    reps = gd.min_reps()
    checked = 0
    counterexamples = []
    for v in reps:
        dmax = (lu + length(v)) // gd.deg_t
        for d in range(d_min, dmax + 1):
            lvl = lu + length(v) - d * gd.deg_t
            for w in reps:
                if length(w) != lvl:
                    continue
                checked += 1
                c = gw_invariant_parabolic(gd, u, v, w, d)
                if c:
                    counterexamples.append(
                        {"v": v.window, "w": w.window, "d": d, "coeff": c}
                    )
    return {"space": gd.name, "p": p, "d_min": d_min, "checked": checked,
            "counterexamples": counterexamples}
