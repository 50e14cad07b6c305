"""Verification sweeps: every formula against the lifted-product oracle.

Each suite returns a list of JSON-ready records

    {"space": ..., "p": ..., "v": ..., "theorem_case": ..., "matched": bool,
     "lhs": ..., "rhs": ...}

(lhs = formula side, rhs = engine/oracle side), and the CLI exit status is 0
exactly when every record matched.  Sweeps stream per representative, so a
worker pool can fan out over v; records are keyed and sorted before emission,
making the output set independent of scheduling.
"""

from __future__ import annotations

import random
from typing import Optional

from . import pieri, qhb, shapes
from .qhp import (
    GrassmannianDesc,
    lambda_b_closed_form,
    parse_space,
    pw_lift,
    quantum_multiply_parabolic,
)
from .weyl import WeylElement, from_word, length, reduced_word, weyl_group

__all__ = ["run_suite", "SUITES", "suite_names"]


def _rec(space, p, v, case, matched, lhs, rhs) -> dict:
    return {
        "space": space,
        "p": p,
        "v": v,
        "theorem_case": case,
        "matched": bool(matched),
        "lhs": lhs,
        "rhs": rhs,
    }


def _word_str(w: WeylElement) -> str:
    return " ".join(f"s{i}" for i in reduced_word(w)) or "e"


def _terms_json(d: dict) -> list:
    return sorted(
        (list(w.window) if hasattr(w, "window") else list(w), deg, c)
        for (w, deg), c in d.items()
    )


# ---------------------------------------------------------------------------
# Pieri suites


def _suite_pieri_C(gd: GrassmannianDesc, reps=None) -> list[dict]:
    records = []
    reps = gd.min_reps() if reps is None else reps
    for p in range(1, gd.k + 1):
        u = pieri.special_class(gd, p).element
        for v in reps:
            res = pieri.pieri_C(gd, p, v)
            oracle = quantum_multiply_parabolic(gd, u, v)
            lhs, rhs = res.terms_dict(), oracle.terms
            records.append(
                _rec(gd.name, p, _word_str(v), res.provenance["case"],
                     lhs == rhs, _terms_json(lhs), _terms_json(rhs))
            )
            power_ok = all((c & (c - 1)) == 0 for _, _, c in res.quantum)
            records.append(
                _rec(gd.name, p, _word_str(v), "power-of-two-coefficients",
                     power_ok, sorted(c for _, _, c in res.quantum), "powers of 2")
            )
            records.append(
                _rec(gd.name, p, _word_str(v), "t-degree<=1",
                     oracle.max_t_degree() <= 1, oracle.max_t_degree(), "<=1")
            )
    return records


def _suite_pieri_BD(gd: GrassmannianDesc, reps=None) -> list[dict]:
    records = []
    reps = gd.min_reps() if reps is None else reps
    all_reps = gd.min_reps()
    for p in range(1, gd.k + 1):
        u = pieri.special_class(gd, p).element
        lu = length(u)
        for v in reps:
            oracle = quantum_multiply_parabolic(gd, u, v)
            records.append(
                _rec(gd.name, p, _word_str(v), "t-degree<=2",
                     oracle.max_t_degree() <= 2, oracle.max_t_degree(), "<=2")
            )
            for w in all_reps:
                for d in (1, 2):
                    if lu + length(v) != length(w) + d * gd.deg_t:
                        continue
                    formula = (
                        pieri.pieri_BD_d1(gd, p, v, w)
                        if d == 1
                        else pieri.pieri_BD_d2(gd, p, v, w)
                    )
                    got = oracle.coeff(w, d)
                    records.append(
                        _rec(gd.name, p, _word_str(v), f"degree-{d}",
                             formula == got, formula, got)
                    )
    return records


def _suite_pieri_A(gd: GrassmannianDesc, reps=None) -> list[dict]:
    records = []
    reps = gd.min_reps() if reps is None else reps
    n, k = gd.n, gd.k
    for p in range(1, n + 2 - k):
        u = pieri.special_class(gd, p).element
        for v in reps:
            a = shapes.partition_of_element_A(v, k)
            res = pieri.pieri_A(gd, p, a)
            oracle = quantum_multiply_parabolic(gd, u, v)
            want = {
                (shapes.partition_of_element_A(w, k), d): c
                for (w, d), c in oracle.terms.items()
            }
            lhs = res.terms_dict()
            records.append(
                _rec(gd.name, p, list(a), "interlacing",
                     lhs == want, _terms_json(lhs), _terms_json(want))
            )
            records.append(
                _rec(gd.name, p, list(a), "t-degree<=1",
                     oracle.max_t_degree() <= 1, oracle.max_t_degree(), "<=1")
            )
            for (w, d), c in oracle.terms.items():
                if d == 1:
                    red = pieri.degree1_reduction_A(gd, p, v, w)
                    records.append(
                        _rec(gd.name, p, list(a), "degree-1-reduction",
                             red == c, red, c)
                    )
    return records


def _suite_pieri_shapes(gd: GrassmannianDesc, reps=None) -> list[dict]:
    records = []
    n, k = gd.n, gd.k
    fn = shapes.pieri_C_shapes if gd.lie_type == "C" else shapes.pieri_B_shapes
    pool = shapes.all_shapes(n, k) if reps is None else [
        shapes.element_to_shape(v, k) for v in reps
    ]
    for p in range(1, k + 1):
        u = pieri.special_class(gd, p).element
        for a in pool:
            res = fn(gd, p, a)
            got = {(sh, d): c for sh, d, c in res.quantum}
            got.update({(sh, 0): c for sh, c in res.classical})
            oracle = quantum_multiply_parabolic(gd, u, shapes.shape_to_element(gd.lie_type, a))
            want = {
                (shapes.element_to_shape(w, k), d): c for (w, d), c in oracle.terms.items()
            }
            records.append(
                _rec(gd.name, p, a.text(), "shape-rule",
                     got == want,
                     sorted((s.text(), d, c) for (s, d), c in got.items()),
                     sorted((s.text(), d, c) for (s, d), c in want.items()))
            )
    return records


def _suite_vanishing(gd: GrassmannianDesc, reps=None) -> list[dict]:
    d_min = {"A": 2, "C": 2, "B": 3, "D": 3}[gd.lie_type]
    records = []
    pmax = gd.n + 1 - gd.k if gd.lie_type == "A" else gd.k
    for p in range(1, pmax + 1):
        rep = pieri.verify_vanishing(gd, p, d_min)
        records.append(
            _rec(gd.name, p, f"all ({rep['checked']} checked)", f"d>={d_min}-vanishing",
                 not rep["counterexamples"], rep["counterexamples"], [])
        )
    return records


# ---------------------------------------------------------------------------
# structural suites


def _suite_gamma(gd: GrassmannianDesc, reps=None) -> list[dict]:
    if gd.lie_type != "B" or gd.k >= gd.n or gd.k < 2:
        return [_rec(gd.name, None, None, "gamma-chevalley",
                     True, "inapplicable (needs OG(k,2n+1), 2 <= k < n)", None)]
    n, k = gd.n, gd.k
    ring = gd.ring()
    sk = from_word("B", n, [k])
    records = []
    per_reading = {}
    for reading in shapes.GAMMA2_READINGS:
        bad = 0
        for mu in shapes.all_shapes(n, k - 1):
            gs = shapes.gamma_sets(mu, reading)
            wmu = shapes.shape_to_element("B", mu)
            for nu in shapes.shapes_of_weight(n, k - 1, mu.weight - 1):
                c = ring.classical_coefficient(sk, shapes.shape_to_element("B", nu), wmu)
                expect = 1 if nu in gs.gamma1 else (2 if nu in gs.gamma2 else 0)
                if c != expect:
                    bad += 1
        per_reading[reading] = bad
    selected = min(per_reading, key=lambda r: (per_reading[r], r))
    records.append(
        _rec(gd.name, None, "all shape pairs", "gamma-trichotomy",
             per_reading[shapes.DEFAULT_GAMMA2_READING] == 0,
             {"mismatches_per_reading": per_reading,
              "selected_reading": selected,
              "default_reading": shapes.DEFAULT_GAMMA2_READING},
             "0 mismatches under the default reading")
    )
    return records


def _suite_tfae(gd: GrassmannianDesc, reps=None) -> list[dict]:
    if gd.lie_type != "C":
        return [_rec(gd.name, None, None, "tfae", True, "inapplicable (IG only)", None)]
    records = []
    reps = gd.min_reps() if reps is None else reps
    for v in reps:
        a, b, c = pieri.check_TFAE(gd, v)
        records.append(
            _rec(gd.name, None, _word_str(v), "tfae", a == b == c, [a, b, c], "all equal")
        )
    return records


def _suite_pw(gd: GrassmannianDesc, reps=None, d_max: Optional[int] = None) -> list[dict]:
    records = []
    top = d_max if d_max is not None else 3 * gd.k
    for d in range(1, top + 1):
        searched = pw_lift(gd, d).lambda_b
        closed = lambda_b_closed_form(gd, d)
        records.append(
            _rec(gd.name, None, f"d={d}", "lambda_B-closed-form",
                 searched == closed, list(searched.coords), list(closed.coords))
        )
    return records


def _suite_shape_bijection(gd: GrassmannianDesc, reps=None) -> list[dict]:
    if gd.lie_type not in ("B", "C"):
        return [_rec(gd.name, None, None, "shape-bijection", True,
                     "inapplicable (hyperoctahedral only)", None)]
    n, k, t = gd.n, gd.k, gd.lie_type
    records = []
    reps = gd.min_reps() if reps is None else reps
    for v in reps:
        sh = shapes.element_to_shape(v, k)
        back = shapes.shape_to_element(t, sh)
        ok = back == v and sh.weight == length(v)
        records.append(
            _rec(gd.name, None, _word_str(v), "round-trip", ok, sh.text(), _word_str(back))
        )
    return records


def _global_records(name: str, gd: GrassmannianDesc) -> list[dict]:
    """Suite-level records that do not fan out over representatives."""
    if name == "shape-bijection" and gd.lie_type in ("B", "C"):
        n_reps = len(gd.min_reps())
        n_shapes = len(shapes.all_shapes(gd.n, gd.k))
        return [_rec(gd.name, None, "counts", "bijection-count",
                     n_reps == n_shapes, n_reps, n_shapes)]
    return []


def _suite_shape_maps(gd: GrassmannianDesc, reps=None) -> list[dict]:
    """The conditional consistencies between the shape maps and their
    Weyl-side companions (the two s_k-step maps need k < n)."""
    if gd.lie_type not in ("B", "C"):
        return [_rec(gd.name, None, None, "shape-maps", True,
                     "inapplicable (hyperoctahedral only)", None)]
    from .weyl import is_min_rep

    n, k, t = gd.n, gd.k, gd.lie_type
    sgam = from_word(t, n, list(range(k, n)) + [n] + list(range(n - 1, k - 1, -1)))
    sk = from_word(t, n, [k])
    delta_tilde = frozenset(i for i in range(1, n + 1) if i != k - 1)
    records = []
    reps = gd.min_reps() if reps is None else reps

    def rec(v, case, matched, lhs, rhs):
        records.append(_rec(gd.name, None, _word_str(v), case, matched, lhs, rhs))

    for v in reps:
        a = shapes.element_to_shape(v, k)
        ab = a.bottom[0] if a.bottom else None
        at2 = a.top[1] if len(a.top) > 1 else 0
        vg = v * sgam
        cond = length(vg) == length(v) - 2 * n + 2 * k - 1
        sh = shapes.tilde_a(a)
        rec(v, "tilde_a-iff", cond == (sh is not None), cond, sh is not None)
        if cond:
            rec(v, "tilde_a-map", shapes.element_to_shape(vg, k - 1) == sh,
                sh.text(), shapes.element_to_shape(vg, k - 1).text())
        if k < n:
            v1 = vg * sk
            cond_b = length(v1) == length(v) - 2 * n + 2 * k
            shape_b = ab is not None and ab >= at2
            rec(v, "bar_a-iff", cond_b == shape_b, cond_b, shape_b)
            if cond_b and length(vg) == length(v1) + 1:
                shb = shapes.bar_a(a)
                okb = shb is not None and shapes.element_to_shape(v1, k - 1) == shb
                rec(v, "bar_a-map", okb, None if shb is None else shb.text(),
                    shapes.element_to_shape(v1, k - 1).text())
        v2 = v * from_word(t, n, list(range(k, n)) + [n] + list(range(n - 1, 0, -1)))
        if is_min_rep(v2, gd.delta_p) and length(v2) == length(v) - length(v.inverse() * v2):
            sha = shapes.hat_a(a)
            oka = ab == n and sha is not None and shapes.element_to_shape(v2, k) == sha
            rec(v, "hat_a-map", oka, None if sha is None else sha.text(),
                shapes.element_to_shape(v2, k).text())
        if k > 1:
            w1 = v * from_word(t, n, list(range(1, k)))
            in1 = is_min_rep(w1, delta_tilde)
            shc = shapes.tilde_c(a)
            rec(v, "tilde_c-iff", in1 == (shc is not None), in1, shc is not None)
            if in1:
                rec(v, "tilde_c-map", shapes.element_to_shape(w1, k - 1) == shc,
                    shc.text(), shapes.element_to_shape(w1, k - 1).text())
            if k < n:
                w1k = w1 * sk
                in2 = is_min_rep(w1k, delta_tilde)
                shc2 = shapes.bar_c(a)
                rec(v, "bar_c-iff", in2 == (shc2 is not None), in2, shc2 is not None)
                if in2:
                    rec(v, "bar_c-map", shapes.element_to_shape(w1k, k - 1) == shc2,
                        shc2.text(), shapes.element_to_shape(w1k, k - 1).text())
        w2word = list(range(1, n)) + [n] + list(range(n - 1, k - 1, -1))
        w2 = v * from_word(t, n, w2word)
        if is_min_rep(w2, gd.delta_p) and length(w2) == length(v) + len(w2word):
            shd = shapes.hat_d(a)
            db = a.bottom[0] if a.bottom else 0
            okd = db < n and shd is not None and shapes.element_to_shape(w2, k) == shd
            rec(v, "hat_d-map", okd, None if shd is None else shd.text(),
                shapes.element_to_shape(w2, k).text())
    return records


# ---------------------------------------------------------------------------
# Borel-level suites (space argument gives the group)


def _suite_reduction(gd: GrassmannianDesc, reps=None, max_two_rho: int = 8,
                     samples: int = 0, seed: int = 7) -> list[dict]:
    t, rank = gd.lie_type, gd.rank
    ring = qhb.flag_ring(t, rank)
    g = weyl_group(t, rank)
    records = []
    rng = random.Random(seed)
    if samples:
        lams = qhb.effective_degrees(rank, max_two_rho)
        cases = (
            (g.element(rng.randrange(g.N)), g.element(rng.randrange(g.N)),
             g.element(rng.randrange(g.N)), lams[rng.randrange(len(lams))],
             rng.randrange(1, rank + 1))
            for _ in range(samples)
        )
    else:
        lams = qhb.effective_degrees(rank, max_two_rho)
        cases = (
            (g.element(i), g.element(j), g.element(kk), lam, alpha)
            for i in range(g.N)
            for j in range(g.N)
            for kk in range(g.N)
            for lam in lams
            for alpha in range(1, rank + 1)
        )
    checked = bad = 0
    first_bad = []
    for u, v, w, lam, alpha in cases:
        rep = ring.check_reduction_identities(u, v, w, lam, alpha)
        van = ring.check_vanishing_rules(u, v, w, lam, alpha)
        tra = ring.check_descent_transfer(u, v, w, alpha)
        ok = rep.ok() and all(
            c["ok"] is not False for c in van.values()
        ) and tra["ok"] is not False
        checked += 1
        if not ok:
            bad += 1
            if len(first_bad) < 5:
                first_bad.append([list(u.window), list(v.window), list(w.window),
                                  list(lam.coords), alpha])
    records.append(
        _rec(f"{t}{rank}", None, f"{checked} instances", "reduction-identities",
             bad == 0, first_bad, "all hold")
    )
    return records


def _suite_ring_axioms(gd: GrassmannianDesc, reps=None, triples: int = 0,
                       seed: int = 11) -> list[dict]:
    t, rank = gd.lie_type, gd.rank
    ring = qhb.flag_ring(t, rank)
    g = weyl_group(t, rank)
    records = []
    comm_bad = assoc_bad = 0
    if triples == 0:
        for i in range(g.N):
            for j in range(i, g.N):
                a = ring.quantum_multiply(g.element(i), g.element(j))
                b = ring.quantum_multiply(g.element(j), g.element(i))
                if a != b:
                    comm_bad += 1
        for i in range(g.N):
            for j in range(g.N):
                uv = ring.quantum_multiply(g.element(i), g.element(j))
                for kk in range(g.N):
                    lhs = qhb.qclass_multiply(ring, uv, g.element(kk))
                    vw = ring.quantum_multiply(g.element(j), g.element(kk))
                    rhs = qhb.qclass_multiply(ring, vw, g.element(i))
                    if lhs != rhs:
                        assoc_bad += 1
        scope = f"all pairs and triples of W({t}{rank})"
    else:
        rng = random.Random(seed)
        for _ in range(triples):
            i, j, kk = (rng.randrange(g.N) for _ in range(3))
            a = ring.quantum_multiply(g.element(i), g.element(j))
            if a != ring.quantum_multiply(g.element(j), g.element(i)):
                comm_bad += 1
            lhs = qhb.qclass_multiply(ring, a, g.element(kk))
            vw = ring.quantum_multiply(g.element(j), g.element(kk))
            if lhs != qhb.qclass_multiply(ring, vw, g.element(i)):
                assoc_bad += 1
        scope = f"{triples} random triples of W({t}{rank})"
    records.append(_rec(f"{t}{rank}", None, scope, "commutativity", comm_bad == 0, comm_bad, 0))
    records.append(_rec(f"{t}{rank}", None, scope, "associativity", assoc_bad == 0, assoc_bad, 0))
    return records


SUITES = {
    "pieri-C": _suite_pieri_C,
    "pieri-B": _suite_pieri_BD,
    "pieri-D": _suite_pieri_BD,
    "pieri-A": _suite_pieri_A,
    "pieri-shapes": _suite_pieri_shapes,
    "gamma-chevalley": _suite_gamma,
    "tfae": _suite_tfae,
    "pw-lift": _suite_pw,
    "shape-bijection": _suite_shape_bijection,
    "shape-maps": _suite_shape_maps,
    "vanishing": _suite_vanishing,
    "reduction-identities": _suite_reduction,
    "ring-axioms": _suite_ring_axioms,
}

_SWEEP_SUITES = {
    "pieri-C", "pieri-B", "pieri-D", "pieri-A", "pieri-shapes",
    "tfae", "shape-bijection", "shape-maps",
}


def suite_names() -> list[str]:
    return sorted(SUITES)


def _chunk_task(args):
    name, space, idxs = args
    gd = parse_space(space)
    reps = gd.min_reps()
    return SUITES[name](gd, reps=[reps[i] for i in idxs])


def run_suite(name: str, space: str, workers: int = 1, **opts) -> tuple[bool, list[dict]]:
    """Run one verification suite on one space; returns (all matched, records)."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r} (have {', '.join(suite_names())})")
    gd = parse_space(space)
    if workers > 1 and name in _SWEEP_SUITES:
        import multiprocessing as mp

        reps = gd.min_reps()
        idxs = list(range(len(reps)))
        chunks = [idxs[i::workers] for i in range(workers) if idxs[i::workers]]
        with mp.Pool(len(chunks)) as pool:
            parts = pool.map(_chunk_task, [(name, space, ch) for ch in chunks])
        records = [r for part in parts for r in part] + _global_records(name, gd)
    else:
        records = SUITES[name](gd, **opts) + _global_records(name, gd)
    records.sort(key=lambda r: (str(r["space"]), str(r["p"]), str(r["v"]), str(r["theorem_case"])))
    return all(r["matched"] for r in records), records
