"""Tests for the integer lattice toolkit."""

import random

from k3pi1.dynkin import AdeConfig
from k3pi1.lattice import (
    IntegerGram,
    evaluate_form,
    determinant,
    gram_of_config,
    isotropic_search,
    k3_gram,
    mat_mul,
    meyer_gate,
    orthogonal_complement,
    signature,
    smith_normal_form,
)

from oracles import brute_isotropic, det_cofactor, minors_gcd


def _check_snf(a):
    res = smith_normal_form(a)
    m = len(a)
    n = len(a[0]) if m else 0
    # U A V = D
    if m and n:
        assert mat_mul(mat_mul([list(r) for r in res.u], a), [list(r) for r in res.v]) == [
            list(r) for r in res.d
        ]
    assert abs(det_cofactor(res.u)) == 1
    assert abs(det_cofactor(res.v)) == 1
    diag = res.diagonal
    for i in range(m):
        for j in range(n):
            if i != j:
                assert res.d[i][j] == 0
    for x in diag:
        assert x >= 0
    for i in range(len(diag) - 1):
        if diag[i + 1]:
            assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
        # zeros only at the end
        if diag[i] == 0:
            assert diag[i + 1] == 0
    # d1...dk equals the gcd of all k x k minors
    prod = 1
    for k, x in enumerate(diag, start=1):
        prod *= x
        assert abs(prod) == minors_gcd(a, k), (a, k)
    return res


def test_snf_diag_2_3():
    res = _check_snf([[2, 0], [0, 3]])
    assert res.diagonal == (1, 6)


def test_snf_zero_matrix():
    res = _check_snf([[0, 0], [0, 0]])
    assert res.diagonal == (0, 0)


def test_snf_rectangular_and_empty():
    _check_snf([[2, 4, 6]])
    _check_snf([[2], [3], [5]])
    res = smith_normal_form([])
    assert res.diagonal == ()


def test_snf_random_matrices_against_minor_gcd_oracle():
    rng = random.Random(20240811)
    for _ in range(60):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        a = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        _check_snf(a)


def test_determinant_matches_cofactor_oracle():
    rng = random.Random(7)
    for _ in range(120):
        n = rng.randint(0, 5)
        a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert determinant(a) == det_cofactor(a)


def test_gram_of_config():
    assert gram_of_config(AdeConfig.from_labels(["A1"])).rows == ((-2,),)
    g = gram_of_config(AdeConfig.from_labels(["A2"]))
    assert g.rows == ((-2, 1), (1, -2))
    assert determinant(g.rows) == 3
    assert gram_of_config(AdeConfig()).rows == ()


def test_gram_of_config_negative_definite_with_product_det():
    c = AdeConfig.from_labels(["A3", "D5", "E6", "A1"])
    g = gram_of_config(c)
    assert g.dim == c.rank
    assert signature(g) == (0, c.rank, 0)
    expected = 1
    for t in c.entries:
        expected *= t.cartan_det
    assert abs(determinant(g.rows)) == expected


def test_k3_gram():
    g = k3_gram()
    assert g.dim == 22
    assert g.is_even
    assert determinant(g.rows) == -1
    assert signature(g) == (3, 19, 0)


def test_signature_examples():
    assert signature(IntegerGram.from_rows([[0, 1], [1, 0]])) == (1, 1, 0)
    e8_neg = gram_of_config(AdeConfig.from_labels(["E8"]))
    assert signature(e8_neg) == (0, 8, 0)
    assert signature(IntegerGram.from_rows([[0]])) == (0, 0, 1)
    assert signature(IntegerGram.from_rows([])) == (0, 0, 0)


def test_signature_block_sum_is_componentwise():
    rng = random.Random(99)
    for _ in range(25):
        n1 = rng.randint(1, 4)
        n2 = rng.randint(1, 4)
        a = _random_symmetric(rng, n1)
        b = _random_symmetric(rng, n2)
        block = [[0] * (n1 + n2) for _ in range(n1 + n2)]
        for i in range(n1):
            for j in range(n1):
                block[i][j] = a[i][j]
        for i in range(n2):
            for j in range(n2):
                block[n1 + i][n1 + j] = b[i][j]
        sa = signature(IntegerGram.from_rows(a))
        sb = signature(IntegerGram.from_rows(b))
        sc = signature(IntegerGram.from_rows(block))
        assert sc == tuple(x + y for x, y in zip(sa, sb))
        assert sum(sc) == n1 + n2


def test_orthogonal_complement_examples():
    u = IntegerGram.from_rows([[0, 1], [1, 0]])
    assert orthogonal_complement(u, [(1, 0)]) == ((1, 0),)
    diag = IntegerGram.from_rows([[1, 0], [0, -1]])
    assert orthogonal_complement(diag, [(1, 1)]) == ((1, 1),)
    assert orthogonal_complement(u, []) == ((1, 0), (0, 1))


def test_orthogonal_complement_pairs_to_zero_and_saturates():
    rng = random.Random(4242)
    for _ in range(30):
        n = rng.randint(1, 5)
        g = IntegerGram.from_rows(_random_symmetric(rng, n))
        k = rng.randint(0, n)
        vecs = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(k)]
        basis = orthogonal_complement(g, vecs)
        for w in basis:
            for vrow in vecs:
                assert sum(
                    vrow[i] * g.rows[i][j] * w[j] for i in range(n) for j in range(n)
                ) == 0
        # complement of the complement contains the saturation of the span:
        # every input vector already pairs to zero with the whole first
        # complement, so stacking it onto the second must not raise the rank
        double = orthogonal_complement(g, basis)
        stacked = [list(w) for w in double]
        base_rank = smith_normal_form(stacked).rank if stacked else 0
        for vrow in vecs:
            trial = stacked + [list(vrow)]
            assert smith_normal_form(trial).rank == base_rank


def test_isotropic_search_examples():
    u = IntegerGram.from_rows([[0, 1], [1, 0]])
    assert isotropic_search(u, 3) == (0, 1)
    d = IntegerGram.from_rows([[2, 0], [0, -2]])
    assert isotropic_search(d, 1) == (1, 1)
    d13 = IntegerGram.from_rows([[1, 0], [0, -3]])
    assert isotropic_search(d13, 100) is None


def test_isotropic_search_agrees_with_brute_force():
    rng = random.Random(31337)
    for _ in range(40):
        n = rng.randint(1, 4)
        g = IntegerGram.from_rows(_random_symmetric(rng, n))
        bound = rng.randint(1, 5)
        hit = isotropic_search(g, bound)
        brute = brute_isotropic([list(r) for r in g.rows], bound)
        if hit is None:
            assert brute == []
        else:
            assert evaluate_form(g, hit) == 0
            assert max(abs(c) for c in hit) <= bound
            assert hit in brute


def test_isotropic_search_canonical_order():
    # among all solutions, the returned one minimizes the left-to-right
    # (abs value, negative-after-positive) coordinate order
    def key(vec):
        return tuple((abs(c), -c) for c in vec)

    rng = random.Random(2718)
    for _ in range(25):
        n = rng.randint(1, 3)
        g = IntegerGram.from_rows(_random_symmetric(rng, n))
        bound = 4
        hit = isotropic_search(g, bound)
        brute = brute_isotropic([list(r) for r in g.rows], bound)
        if brute:
            assert hit == min(brute, key=key)
        else:
            assert hit is None


def test_meyer_gate():
    g = IntegerGram.from_rows(
        [[1 if i == j else 0 for j in range(5)] for i in range(5)]
    )
    g = IntegerGram.from_rows(
        [[(1 if i == 0 else -1) if i == j else 0 for j in range(5)] for i in range(5)]
    )
    rep = meyer_gate(g, 10)
    assert rep.hypotheses_hold
    assert rep.vector is not None
    assert evaluate_form(g, rep.vector) == 0

    definite = IntegerGram.from_rows([[2, 0], [0, 2]])
    rep = meyer_gate(definite, 20)
    assert not rep.hypotheses_hold
    assert rep.exhausted
    assert not rep.hypotheses_hold_but_exhausted


def test_meyer_gate_random_even_indefinite_diagonals():
    rng = random.Random(515)
    for _ in range(20):
        entries = [rng.choice([2, 4, 6]) * rng.choice([1, -1]) for _ in range(5)]
        if all(e > 0 for e in entries) or all(e < 0 for e in entries):
            entries[0] = -entries[0]
        g = IntegerGram.from_rows(
            [[entries[i] if i == j else 0 for j in range(5)] for i in range(5)]
        )
        rep = meyer_gate(g, 50)
        assert rep.hypotheses_hold
        assert rep.vector is not None, entries
        assert evaluate_form(g, rep.vector) == 0


def _random_symmetric(rng, n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = rng.randint(-5, 5)
    return a
