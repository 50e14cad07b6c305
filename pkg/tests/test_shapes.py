import pytest

from qschub.pieri import special_class
from qschub.qhp import parse_space, quantum_multiply_parabolic
from qschub.shapes import (
    DEFAULT_GAMMA2_READING,
    Shape,
    all_shapes,
    bar_a,
    bar_c,
    element_of_partition_A,
    element_to_shape,
    gamma_sets,
    hat_a,
    hat_d,
    partition_of_element_A,
    pieri_B_shapes,
    pieri_C_shapes,
    pieri_maps,
    shape_to_element,
    shapes_of_weight,
    special_shape,
    tilde_a,
    tilde_c,
    top_offset_form,
)
from qschub.qhb import flag_ring
from qschub.weyl import from_word, identity, length, reduced_word, simple_reflection


def test_shape_validation():
    Shape(4, 2, (3, 1), ())
    Shape(4, 2, (4, 3), (3, 1))
    with pytest.raises(ValueError):
        Shape(4, 2, (3,), ())  # wrong top length
    with pytest.raises(ValueError):
        Shape(4, 2, (3, 3), ())  # not strict
    with pytest.raises(ValueError):
        Shape(4, 2, (4, 3), (3, 2, 1))  # too many bottom rows
    with pytest.raises(ValueError):
        Shape(4, 2, (3, 1), (2, 1))  # top[-1] < len(bottom) + 1
    with pytest.raises(ValueError):
        Shape(4, 2, (5, 1), ())  # outside the rectangle


def test_weight_and_special_shapes():
    assert special_shape(4, 2, 2) == Shape(4, 2, (4, 1), ())
    assert special_shape(4, 2, 2).weight == 2
    minimal = Shape(4, 2, (2, 1), ())
    assert minimal.weight == 0
    assert shape_to_element("C", minimal).is_identity()
    for n, k in [(3, 1), (4, 2), (4, 4)]:
        for p in range(1, k + 1):
            sh = special_shape(n, k, p)
            gd = parse_space(f"IG:{k}:{2*n}")
            assert shape_to_element("C", sh) == special_class(gd, p).element


def test_special_shape_one_step_down():
    # the left companion u s_k labels the special shape p-1 one quotient down
    for n, k, p in [(4, 2, 2), (4, 3, 2), (4, 3, 3), (3, 2, 2)]:
        u = from_word("C", n, list(range(k - p + 1, k + 1)))
        left = u * simple_reflection("C", n, k)
        assert left == shape_to_element("C", special_shape(n, k - 1, p - 1))


@pytest.mark.parametrize("space", ["IG:1:6", "IG:2:6", "IG:3:6", "IG:2:8", "OGodd:2:7", "OGodd:3:7"])
def test_bijection_round_trip(space):
    gd = parse_space(space)
    n, k, t = gd.n, gd.k, gd.lie_type
    reps = gd.min_reps()
    assert len(reps) == len(all_shapes(n, k))
    for w in reps:
        sh = element_to_shape(w, k)
        assert sh.weight == length(w)
        assert shape_to_element(t, sh) == w
    for sh in all_shapes(n, k):
        assert element_to_shape(shape_to_element(t, sh), k) == sh


def test_canonical_word_is_reduced():
    for sh in all_shapes(4, 2):
        w = shape_to_element("C", sh)
        assert length(w) == sh.weight  # the factory asserts word length too


def barred_decode(w, k):
    """Independent decode via the sign-block recipe: split a reduced word at
    the last-generator occurrences and track which positions get barred."""
    n = w.rank
    word = list(reduced_word(w))
    # split w = u_1 s_n u_2 s_n ... u_j s_n u_{j+1} with u_* in the A_{n-1} part
    blocks, cur = [], []
    for i in word:
        if i == n:
            blocks.append(cur)
            cur = []
        else:
            cur.append(i)
    blocks.append(cur)
    j = len(blocks) - 1
    # a_i = (u_{i+1} ... u_{j+1})^{-1}(n): the position whose entry gets barred
    barred = set()
    for i in range(1, j + 1):
        tail = [idx for blk in blocks[i:] for idx in blk]
        perm = list(range(1, n + 1))
        for idx in tail:  # one-line of u_{i+1} ... u_{j+1}
            perm[idx - 1], perm[idx] = perm[idx], perm[idx - 1]
        barred.add(perm.index(n) + 1)  # the inverse image of n
    plain = [abs(x) for x in w.window]
    signs = {i + 1 for i, x in enumerate(w.window) if x < 0}
    return plain, signs, barred


@pytest.mark.parametrize("space", ["IG:2:6", "IG:2:8", "OGodd:2:7"])
def test_barred_permutation_independent_decode(space):
    gd = parse_space(space)
    for w in gd.min_reps():
        plain, signs, barred = barred_decode(w, gd.k)
        assert signs == barred, (w.window, signs, barred)


def test_pieri_maps_examples():
    a = Shape(4, 2, (4, 3), (4, 1))
    assert tilde_a(a) == Shape(4, 1, (4, 3, 2), (1,))
    assert bar_a(a) is None  # needs a1t > a1b
    assert hat_a(a) == Shape(4, 2, (3, 2), (1,))
    b = Shape(4, 2, (4, 2), (3,))
    assert bar_a(b) == Shape(4, 1, (4, 3, 1), ())
    assert hat_a(b) is None
    d = Shape(4, 2, (3, 2), ())
    assert tilde_c(d) == Shape(4, 1, (4, 3, 2), ())
    assert bar_c(d) is None
    e = Shape(4, 2, (4, 2), ())
    assert bar_c(e) == Shape(4, 1, (4, 3, 2), ())
    assert tilde_c(e) is None
    f = Shape(4, 2, (3, 2), (1,))
    assert hat_d(f) == Shape(4, 2, (4, 3), (4, 1))
    g = Shape(4, 2, (4, 3), (4,))
    assert hat_d(g) is None
    maps = pieri_maps(a, d, f)
    assert maps["tilde_a"] == tilde_a(a) and maps["hat_d"] == hat_d(f)


@pytest.mark.parametrize("space", ["IG:2:6", "IG:2:8", "IG:3:8", "OGodd:2:7", "OGodd:3:9"])
def test_shape_maps_match_weyl_side(space):
    from qschub.verify import run_suite

    ok, records = run_suite("shape-maps", space)
    assert ok, [r for r in records if not r["matched"]][:5]


def test_gamma_sets_basics():
    minimal = Shape(4, 1, (3, 2, 1), ())
    gs = gamma_sets(minimal)
    assert gs.s == frozenset() and gs.gamma1 == frozenset() and gs.gamma2 == frozenset()
    mu = Shape(4, 1, (4, 3, 2), (2,))
    gs = gamma_sets(mu)
    assert gs.gamma2 <= gs.s
    assert gs.gamma1 | gs.gamma2 == gs.s and not (gs.gamma1 & gs.gamma2)
    for nu in gs.s:
        assert nu.weight == mu.weight - 1
    with pytest.raises(ValueError):
        gamma_sets(mu, reading="sideways")


@pytest.mark.parametrize("space,k", [("OGodd:2:7", 2), ("OGodd:2:9", 2), ("OGodd:3:9", 3)])
def test_gamma_trichotomy_against_chevalley(space, k):
    gd = parse_space(space)
    n = gd.n
    ring = flag_ring("B", n)
    sk = from_word("B", n, [k])
    for mu in all_shapes(n, k - 1):
        gs = gamma_sets(mu, DEFAULT_GAMMA2_READING)
        wmu = shape_to_element("B", mu)
        for nu in shapes_of_weight(n, k - 1, mu.weight - 1):
            c = ring.classical_coefficient(sk, shape_to_element("B", nu), wmu)
            expect = 1 if nu in gs.gamma1 else (2 if nu in gs.gamma2 else 0)
            assert c == expect, (space, mu.text(), nu.text())


@pytest.mark.parametrize("space", ["IG:2:6", "IG:2:8"])
def test_pieri_C_shapes_against_oracle(space):
    gd = parse_space(space)
    n, k = gd.n, gd.k
    for p in range(1, k + 1):
        u = special_class(gd, p).element
        for a in all_shapes(n, k):
            res = pieri_C_shapes(gd, p, a)
            got = {(sh, d): c for sh, d, c in res.quantum}
            got.update({(sh, 0): c for sh, c in res.classical})
            oracle = quantum_multiply_parabolic(gd, u, shape_to_element("C", a))
            want = {(element_to_shape(w, k), d): c for (w, d), c in oracle.terms.items()}
            assert got == want
            for _, _, coeff in res.quantum:
                assert coeff & (coeff - 1) == 0  # powers of two


def test_pieri_C_shapes_quantum_gate_and_window():
    gd = parse_space("IG:2:8")
    # tilde_a undefined (bottom empty) kills the quantum part
    a = Shape(4, 2, (4, 2), ())
    res = pieri_C_shapes(gd, 2, a)
    assert not res.provenance["tilde_a_defined"] and res.quantum == []
    # emitted quantum shapes sit in the stated weight window
    b = Shape(4, 2, (4, 3), (4, 2))
    res = pieri_C_shapes(gd, 2, b)
    for sh, d, _ in res.quantum:
        assert sh.weight == b.weight + 2 - 2 * 4 + 2 - 1


@pytest.mark.parametrize("space", ["OGodd:2:7", "OGodd:2:9"])
def test_pieri_B_shapes_against_oracle(space):
    gd = parse_space(space)
    n, k = gd.n, gd.k
    for p in range(1, k + 1):
        u = special_class(gd, p).element
        for a in all_shapes(n, k):
            res = pieri_B_shapes(gd, p, a)
            got = {(sh, d): c for sh, d, c in res.quantum}
            got.update({(sh, 0): c for sh, c in res.classical})
            oracle = quantum_multiply_parabolic(gd, u, shape_to_element("B", a))
            want = {(element_to_shape(w, k), d): c for (w, d), c in oracle.terms.items()}
            assert got == want


def test_pieri_B_shapes_case_labels_and_windows():
    gd = parse_space("OGodd:2:7")
    a = Shape(3, 2, (3,), (2,))
    res = pieri_B_shapes(gd, 2, a)
    assert set(res.provenance["cases"].values()) <= {
        "bar_a/tilde_c", "tilde_a/bar_c", "gamma-combination", "zero"
    }
    for sh, d, _ in res.quantum:
        if d == 1:
            assert sh.weight == a.weight + 2 - gd.deg_t
        else:
            assert sh.weight == a.weight + 2 - 2 * gd.deg_t
    with pytest.raises(ValueError):
        pieri_B_shapes(parse_space("OGodd:3:7"), 1, special_shape(3, 3, 1))


def test_partition_labels_A():
    gd = parse_space("Gr:2:5")
    n, k = 4, 2
    assert partition_of_element_A(identity("A", 4), k) == (0, 0)
    for i in range(1, n):
        u = from_word("A", n, list(range(k + i - 1, k - 1, -1)))
        assert partition_of_element_A(u, k) == (i, 0)
    for i in range(1, k + 1):
        u = from_word("A", n, list(range(k - i + 1, k + 1)))
        assert partition_of_element_A(u, k) == (1,) * i + (0,) * (k - i)
    for v in gd.min_reps():
        a = partition_of_element_A(v, k)
        assert element_of_partition_A(n, k, a) == v
    with pytest.raises(ValueError):
        partition_of_element_A(from_word("A", 4, [1, 2]) * from_word("A", 4, [1]), k)
    with pytest.raises(ValueError):
        element_of_partition_A(4, 2, (1, 2))


def test_top_offset_form():
    sh = Shape(4, 2, (4, 3), (3, 1))
    a, b = top_offset_form(sh)
    assert a == (2, 2) and b == (3, 1)
    assert top_offset_form(Shape(4, 2, (2, 1), ())) == ((0, 0), ())
