import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from babyverma import pyramids as pyr
from babyverma.pyramids import (
    build_pyramid,
    centralizer_dims,
    centralizer_oracle,
    chi_pi,
    column_connected,
    column_connected_representative,
    column_strict,
    e_pi,
    lift_column_connected,
    min_dim_classification,
    min_dim_labels_by_modrep,
    row_canonical,
    row_equivalent,
    row_standard,
    rs_shape,
    sigma_check,
    theorem_pipeline,
)

P1224 = build_pyramid((1, 2, 2, 4))
A1224 = (2, 1, 6, 0, 5, 6, 4, 1, 0)


def partitions(n, least=1):
    if n == 0:
        yield ()
        return
    for first in range(least, n + 1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def test_geometry():
    pi = P1224
    assert (pi.row(3), pi.row(5), pi.col(5), pi.col(9)) == (2, 3, 2, 4)
    assert pi.rows == ((1,), (2, 3), (4, 5), (6, 7, 8, 9))
    assert pi.columns == ((1, 2, 4, 6), (3, 5, 7), (8,), (9,))
    assert pi.box(4, 4) == 9 and pi.box(1, 2) is None
    assert sorted(pi.levi_set()) == [2, 4, 6, 7, 8]


def test_e_pi_and_chi():
    e = e_pi(P1224)
    assert {(int(i) + 1, int(j) + 1) for i, j in zip(*np.nonzero(e))} == {(2, 3), (4, 5), (6, 7), (7, 8), (8, 9)}
    assert not e_pi(build_pyramid((1, 1, 1))).any()
    row = e_pi(build_pyramid((4,)))
    assert np.array_equal(row, np.eye(4, k=1, dtype=np.int64))
    assert chi_pi(build_pyramid((3,)), 5).is_standard_levi()


def test_bad_partitions():
    with pytest.raises(ValueError):
        build_pyramid((2, 1))
    with pytest.raises(ValueError):
        build_pyramid((0, 2))


def test_predicates():
    pi = build_pyramid((1, 2))
    assert row_equivalent(pi, (1, 0, 2), (1, 2, 0))
    assert not row_equivalent(pi, (1, 0, 2), (0, 1, 2))
    assert row_equivalent(pi, (1, 0, 2), (4, 5, 3), p=3)
    assert column_strict(pi, (1, 0, 2)) and not column_strict(pi, (0, 1, 2))
    assert row_standard(pi, (1, 0, 2)) and not row_standard(pi, (1, 2, 0))
    assert column_connected(pi, (1, 0, 2)) and column_connected(pi, (0, 2, 1), p=3)
    with pytest.raises(ValueError):
        column_connected(pi, (1, 0))


def test_reference_filling_lift():
    assert column_connected(P1224, A1224, 7)
    lift = lift_column_connected(P1224, A1224, 7)
    assert lift == (2, 1, 6, 0, 5, -1, 4, 8, 14)
    assert all(a % 7 == b for a, b in zip(lift, A1224))
    assert rs_shape(lift) == (4, 2, 2, 1)
    assert sigma_check(P1224, lift)
    with pytest.raises(ValueError):
        lift_column_connected(P1224, (0,) * 9, 7)


def test_rs_shape():
    assert rs_shape((1, 2, 3)) == (3,)
    assert rs_shape((3, 2, 1)) == (1, 1, 1)
    assert rs_shape((2, 1, 3)) == (2, 1)
    with pytest.raises(ValueError):
        rs_shape((1, 1))


def test_centralizer_values():
    d = centralizer_dims(P1224, 7)
    assert (d.gl_centralizer, d.b_centralizer, d.orbit) == (27, 18, 54)
    assert d.min_dim == 7**27
    d = centralizer_dims(build_pyramid((1, 2)), 3)
    assert d.as_dict() == {"dim_gl_centralizer": 5, "dim_b_centralizer": 4, "dim_orbit": 4, "min_dim": 9}
    assert centralizer_dims(build_pyramid((3,)), 3).min_dim == 27
    assert centralizer_dims(build_pyramid((1, 1, 1)), 3).min_dim == 1


@pytest.mark.parametrize("N", range(1, 9))
def test_centralizer_formula_matches_oracle(N):
    for part in partitions(N):
        pi = build_pyramid(part)
        d = centralizer_dims(pi, 5, oracle=False)
        assert (d.gl_centralizer, d.b_centralizer) == centralizer_oracle(pi, 5)
        assert 2 * d.b_centralizer == d.gl_centralizer + N
        assert d.orbit % 2 == 0


def test_sigma_cases():
    pi = build_pyramid((1, 2))
    verdicts = {A: sigma_check(pi, A) for A in itertools.permutations(range(3))}
    assert verdicts[(1, 0, 2)] and verdicts[(0, 1, 2)]
    assert not verdicts[(2, 1, 0)] and not verdicts[(1, 2, 0)]
    with pytest.raises(ValueError):
        sigma_check(pi, (1, 1, 2))


def _canonical_lifts(part, p):
    pi = build_pyramid(part)
    for A in itertools.product(range(p), repeat=pi.N):
        if column_connected(pi, A, p):
            yield pi, A, lift_column_connected(pi, A, p)


def _assert_lift_invariants(pi, A, lift, p):
    assert column_connected(pi, lift)
    assert column_strict(pi, lift)
    assert all(a % p == b % p for a, b in zip(lift, A))
    assert len(set(lift)) == pi.N
    assert sigma_check(pi, lift)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_lift_invariants_exhaustive(p):
    for N in range(1, 5):
        for part in partitions(N):
            if p**N > 2500:
                continue
            for pi, A, lift in _canonical_lifts(part, p):
                _assert_lift_invariants(pi, A, lift, p)


@st.composite
def lift_cases(draw):
    N = draw(st.integers(1, 6))
    part = draw(st.sampled_from(list(partitions(N))))
    p = draw(st.sampled_from([3, 5, 7]))
    pi = build_pyramid(part)
    A = [0] * N
    for col in pi.columns:
        bottom = draw(st.integers(0, p - 1))
        for k, lab in enumerate(reversed(col)):
            A[lab - 1] = (bottom + k) % p
    return pi, tuple(A), p


@settings(max_examples=150, deadline=None)
@given(lift_cases())
def test_lift_invariants_random(case):
    pi, A, p = case
    _assert_lift_invariants(pi, A, lift_column_connected(pi, A, p), p)


def test_classification_counts():
    for p in (3, 5):
        assert len(min_dim_classification(build_pyramid((1, 1)), p)) == p
        assert len(min_dim_classification(build_pyramid((2,)), p)) == p * (p + 1) // 2


def test_classification_keys_and_representatives():
    pi = build_pyramid((1, 2))
    keys = min_dim_classification(pi, 3)
    assert row_canonical(pi, (1, 0, 2), 3) in keys
    assert column_connected_representative(pi, (0, 0, 0), 3) is None
    rep = column_connected_representative(pi, (1, 2, 0), 3)
    assert rep is not None and row_equivalent(pi, rep, (1, 2, 0), 3)


def test_classification_matches_modrep():
    pi = build_pyramid((2,))
    labels, dims = min_dim_labels_by_modrep(pi, 3)
    assert len(labels) == len(min_dim_classification(pi, 3))
    assert set(dims.values()) == {3}


def test_enumeration_limit(monkeypatch):
    monkeypatch.setattr(pyr, "ENUMERATION_LIMIT", 10)
    with pytest.raises(ValueError, match="enumeration"):
        min_dim_classification(build_pyramid((1, 2)), 3)


@pytest.mark.parametrize(
    "part, p, A, dim",
    [((1, 1), 5, (2, 1), 1), ((2,), 3, (2, 1), 3), ((1, 2), 3, (1, 0, 2), 9), ((1, 2), 3, (2, 1, 0), 9)],
)
def test_pipeline(part, p, A, dim):
    rep = theorem_pipeline(build_pyramid(part), p, A)
    assert rep.ok and rep.dim_Lp_chi == dim == rep.dim_target == rep.min_dim
    assert rep.as_json()["part1"] == "not checked"


def test_pipeline_rejects_non_minimal_label():
    with pytest.raises(ValueError, match="minimal"):
        theorem_pipeline(build_pyramid((1, 1)), 5, (3, 1))
