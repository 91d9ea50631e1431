"""Tests for the Kodaira fiber tables and decorations."""

import pytest

from k3pi1.dynkin import AdeConfig
from k3pi1.kodaira import (
    Decoration,
    EulerSumMismatch,
    FullSupportRemoved,
    KodairaType,
    decoration_outcomes,
    fiber_data,
    validate_decoration,
    validate_k3_fibration,
)

from oracles import mat2_power_order

I = KodairaType.parse


def _small_types(max_n=12):
    types = [I("I1"), I("II"), I("III"), I("IV"), I("IV*"), I("III*"), I("II*")]
    types += [KodairaType("I", n) for n in range(2, max_n + 1)]
    types += [KodairaType("I*", n) for n in range(0, max_n + 1)]
    return types


def test_labels_round_trip():
    for label in ["I1", "I3", "I24", "II", "III", "IV", "I*0", "I*4", "IV*", "III*", "II*"]:
        assert KodairaType.parse(label).label == label


def test_bad_labels():
    for label in ["I0", "I", "I*", "V", "II2", "IV*1", "i3", "I-1", "I*x"]:
        with pytest.raises(ValueError):
            KodairaType.parse(label)
    with pytest.raises(ValueError):
        KodairaType("I", 0)
    with pytest.raises(ValueError):
        KodairaType("II", 2)


def test_euler_numbers():
    assert I("I1").euler == 1
    assert I("I7").euler == 7
    assert I("II").euler == 2
    assert I("III").euler == 3
    assert I("IV").euler == 4
    assert I("I*0").euler == 6
    assert I("I*4").euler == 10
    assert I("IV*").euler == 8
    assert I("III*").euler == 9
    assert I("II*").euler == 10


def test_istar0_table():
    data = fiber_data(I("I*0"))
    assert data.euler == 6
    assert sorted(m for _, m in data.components) == [1, 1, 1, 1, 2]
    assert data.monodromy == ((-1, 0), (0, -1))
    assert mat2_power_order(data.monodromy) == 2


def test_i3_table():
    data = fiber_data(I("I3"))
    assert data.euler == 3
    assert [m for _, m in data.components] == [1, 1, 1]
    assert len(data.dual_graph) == 3
    t = data.monodromy
    assert t == ((1, 3), (0, 1))
    assert t[0][0] + t[1][1] == 2
    assert mat2_power_order(t) is None  # infinite order
    # unipotency: (T - 1)^2 = 0
    u = ((t[0][0] - 1, t[0][1]), (t[1][0], t[1][1] - 1))
    sq = (
        (u[0][0] * u[0][0] + u[0][1] * u[1][0], u[0][0] * u[0][1] + u[0][1] * u[1][1]),
        (u[1][0] * u[0][0] + u[1][1] * u[1][0], u[1][0] * u[0][1] + u[1][1] * u[1][1]),
    )
    assert sq == ((0, 0), (0, 0))


def test_iistar_table():
    data = fiber_data(I("II*"))
    assert data.euler == 10
    assert sorted(m for _, m in data.components) == [1, 2, 2, 3, 3, 4, 4, 5, 6]
    assert data.monodromy[0][0] + data.monodromy[1][1] == 1
    assert mat2_power_order(data.monodromy) == 6


def test_monodromy_determinants_and_orders():
    orders = {"II": 6, "III": 4, "IV": 3, "IV*": 3, "III*": 4, "II*": 6}
    for t in _small_types():
        m = fiber_data(t).monodromy
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        assert det == 1, t.label
        tr = m[0][0] + m[1][1]
        assert (tr == 2) == (t.base == "I"), t.label
        order = mat2_power_order(m)
        if t.base == "I":
            assert order is None
        elif t.base == "I*":
            assert order == (2 if t.n == 0 else None)
        else:
            assert order == orders[t.base], t.label


def test_multiplicity_vector_annihilates_intersection_matrix():
    # intersection matrix: -2 on the diagonal, edge weights off it
    for t in _small_types():
        if t.label in ("I1", "II"):
            continue
        data = fiber_data(t)
        ids = list(data.component_ids)
        idx = {c: i for i, c in enumerate(ids)}
        n = len(ids)
        mat = [[0] * n for _ in range(n)]
        for i in range(n):
            mat[i][i] = -2
        for u, v, w in data.dual_graph:
            mat[idx[u]][idx[v]] += w
            mat[idx[v]][idx[u]] += w
        mult = [data.multiplicity(c) for c in ids]
        for i in range(n):
            assert sum(mat[i][j] * mult[j] for j in range(n)) == 0, t.label


def test_validate_decoration_istar0_tails():
    s = validate_decoration(Decoration(I("I*0"), {"t1", "t2", "t3", "t4"}))
    assert s.m == 2
    assert s.removed_config == AdeConfig.from_labels(["A1"] * 4)


def test_validate_decoration_iistar_keep_c6():
    data = fiber_data(I("II*"))
    removed = set(data.component_ids) - {"c6"}
    s = validate_decoration(Decoration(I("II*"), removed))
    assert s.m == 6
    assert s.removed_config == AdeConfig.from_labels(["A5", "A2", "A1"])


def test_validate_decoration_errors():
    with pytest.raises(FullSupportRemoved):
        validate_decoration(Decoration(I("I1"), {"c0"}))
    with pytest.raises(FullSupportRemoved):
        validate_decoration(Decoration(I("IV"), {"c0", "c1", "c2"}))
    with pytest.raises(ValueError):
        validate_decoration(Decoration(I("I*0"), {"bogus"}))


def test_iv_any_two_removed_gives_a2():
    for pair in [{"c0", "c1"}, {"c0", "c2"}, {"c1", "c2"}]:
        s = validate_decoration(Decoration(I("IV"), pair))
        assert s.removed_config == AdeConfig.from_labels(["A2"])


def test_empty_decoration_has_m_one_everywhere():
    for t in _small_types():
        s = validate_decoration(Decoration(t, frozenset()))
        assert s.m == 1, t.label
        assert s.removed_config.rank == 0


def test_all_proper_removed_sets_classify(per_type_limit=10):
    # every proper nonempty subset of a fiber with <= 10 components is ADE
    for t in _small_types():
        data = fiber_data(t)
        ids = data.component_ids
        if len(ids) > per_type_limit:
            continue
        for mask in range(1, 2 ** len(ids) - 1):
            removed = frozenset(c for k, c in enumerate(ids) if mask >> k & 1)
            s = validate_decoration(Decoration(t, removed))
            assert s.removed_config.rank == len(removed)


def test_validate_k3_fibration_accepts():
    kummer = [Decoration(I("I*0"), {"t1", "t2", "t3", "t4"})] * 4
    summary = validate_k3_fibration(kummer)
    assert summary.euler_total == 24
    assert summary.r == 16
    assert summary.cone_multiplicities == (2, 2, 2, 2)
    assert summary.config == AdeConfig.from_labels(["A1"] * 16)

    nodal = [Decoration(I("I1"))] * 24
    summary = validate_k3_fibration(nodal)
    assert summary.r == 0
    assert summary.cone_multiplicities == ()


def test_validate_k3_fibration_rejects_bad_euler_sum():
    with pytest.raises(EulerSumMismatch) as exc:
        validate_k3_fibration([Decoration(I("II*"))] * 3)
    assert exc.value.actual == 30


def test_decoration_outcomes_match_brute_force_cycle():
    from k3pi1.kodaira import _outcomes_by_subsets, _outcomes_cycle

    for n in range(3, 14):
        t = KodairaType("I", n)
        brute = {(o.m, o.config.entries) for o in _outcomes_by_subsets(t)}
        fast = {(o.m, o.config.entries) for o in _outcomes_cycle(t)}
        assert brute == fast, n


def test_decoration_outcomes_match_brute_force_istar():
    from k3pi1.kodaira import _outcomes_by_subsets, _outcomes_istar

    for n in range(1, 9):
        t = KodairaType("I*", n)
        brute = {(o.m, o.config.entries) for o in _outcomes_by_subsets(t)}
        fast = {(o.m, o.config.entries) for o in _outcomes_istar(t)}
        assert brute == fast, n


def test_decoration_outcomes_representatives_are_valid():
    for t in _small_types(10) + [KodairaType("I", 16), KodairaType("I*", 10)]:
        for o in decoration_outcomes(t):
            s = validate_decoration(Decoration(t, o.removed))
            assert (s.m, s.removed_config) == (o.m, o.config), (t.label, o)
