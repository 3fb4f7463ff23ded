from collections import Counter

import numpy as np
import pytest

from babyverma.envelope import ChiForm, lie_algebra
from babyverma.exactlin import rank
from babyverma.modrep import baby_verma_module, composition_factors, tensor
from babyverma.rootdata import weight_key
from babyverma.verma import (
    build_baby_verma,
    height_filtration,
    refined_filtration,
    tensor_basis_change,
    tensor_filtration,
)


def test_build_examples(sl2, sl3, chi_f1):
    Z = build_baby_verma(chi_f1, (2, 0))
    assert Z.dim == 5 and Z.basis == tuple((a,) for a in range(5))
    Z3 = build_baby_verma(ChiForm.zero(sl3, 3), (0, 0, 0))
    assert Z3.dim == 27
    for h in sl3.torals:
        A = Z3.module.actions[h]
        assert not (A - np.diag(np.diag(A))).any()
    gl2 = lie_algebra(2, "gl")
    assert build_baby_verma(ChiForm.regular_nilpotent(gl2, 3), (1, 2)).dim == 3


def test_build_rejects_bad_inputs(sl2):
    gl2 = lie_algebra(2, "gl")
    with pytest.raises(ValueError):
        build_baby_verma(ChiForm.from_dict(gl2, 5, {"e11": 1}), (0, 0))
    with pytest.raises(ValueError):
        build_baby_verma(ChiForm.from_dict(sl2, 5, {"e": 1}), (0, 0))
    with pytest.raises(ValueError):
        build_baby_verma(ChiForm.zero(sl2, 5), (1, 0, 0))


def test_monomial_weights(sl3):
    Z = build_baby_verma(ChiForm.levi(sl3, 3, [2]), (1, 2, 0))
    for a in Z.basis:
        v = Z.vector(a)
        for h in sl3.torals:
            val = sl3.evaluate(Z.weight_of(a), h) % 3
            assert np.array_equal(Z.module.act(h, v), (val * v) % 3)


def test_height_filtration_examples(sl2, sl3):
    chain = height_filtration(build_baby_verma(ChiForm.zero(sl2, 5), (1, 0)))
    assert [V.dim for V in chain] == [1, 2, 3, 4, 5]
    chain3 = height_filtration(build_baby_verma(ChiForm.zero(sl3, 3), (0, 0, 0)))
    assert len(chain3) == 2 * 4 + 1
    assert chain3[0].dim == 1
    assert chain3[2].dim == 7
    assert chain3[-1].dim == 27


def test_refined_filtration_prefixes_are_stable(sl3):
    Z = build_baby_verma(ChiForm.levi(sl3, 3, [1, 2]), (2, 0, 0))
    order = refined_filtration(Z)
    assert order[0] == (0, 0, 0) and len(order) == 27
    pos = {a: k for k, a in enumerate(order)}
    for x in sl3.positives:
        A = Z.module.actions[x]
        for a in Z.basis:
            for r in np.flatnonzero(A[:, Z.index(a)]):
                assert pos[Z.basis[r]] < pos[a]


def test_tensor_examples(sl2, efh, chi_f1):
    _, f, _ = efh
    Zl, Zm = baby_verma_module(chi_f1, (2, 0)), baby_verma_module(-chi_f1, (3, 0))
    T = tensor(Zl, Zm)
    assert T.dim == 25 and T.chi == ChiForm.zero(sl2, 5)
    assert T.check_central()
    doubled = tensor(Zl, Zl)
    assert doubled.chi == chi_f1 + chi_f1
    assert doubled.check_central() and doubled.check_bracket()
    with pytest.raises(ValueError):
        tensor(Zl, baby_verma_module(ChiForm.zero(lie_algebra(3, "sl"), 5), (0, 0, 0)))


def test_tensor_with_trivial_module(sl2, chi_f1):
    from babyverma.modrep import simple_module

    triv = simple_module(ChiForm.zero(sl2, 5), (0, 0))
    assert triv.dim == 1
    Z = baby_verma_module(chi_f1, (2, 0))
    T = tensor(Z, triv)
    assert all(np.array_equal(T.actions[x], Z.actions[x]) for x in sl2.basis)


def test_basis_change_first_columns(chi_f1):
    Zl, Zm = build_baby_verma(chi_f1, (2, 0)), build_baby_verma(-chi_f1, (3, 0))
    bc = tensor_basis_change(Zl, Zm)
    assert bc.invertible
    # column 1 is f(v0 ⊗ w0) = v1 ⊗ w0 + v0 ⊗ w1 (index i*5 + j)
    col = bc.matrix[:, 1]
    assert set(np.flatnonzero(col)) == {5, 1} and col[5] == col[1] == 1


def test_basis_change_sl3_invertible(sl3):
    Zl = build_baby_verma(ChiForm.levi(sl3, 3, [1]), (0, 0, 0))
    Zm = build_baby_verma(ChiForm.zero(sl3, 3), (1, 2, 0))
    bc = tensor_basis_change(Zl, Zm)
    assert bc.matrix.shape == (729, 729) and rank(bc.matrix, 3) == 729


def test_example_filtration(chi_f1):
    rep = tensor_filtration(build_baby_verma(chi_f1, (2, 0)), build_baby_verma(-chi_f1, (3, 0)))
    assert [s.label for s in rep.steps] == [(0,), (3,), (1,), (4,), (2,)]
    assert rep.all_certified and rep.graded
    assert all(s.identity_block for s in rep.steps)


def test_sl3_filtration_with_two_refinements(sl3):
    chi1, chi2 = ChiForm.levi(sl3, 3, [2]), ChiForm.levi(sl3, 3, [1], value=2)
    Zl, Zm = build_baby_verma(chi1, (1, 0, 0)), build_baby_verma(chi2, (2, 2, 0))
    a = tensor_filtration(Zl, Zm, "lex")
    b = tensor_filtration(Zl, Zm, "colex", certify_iso=False)
    assert a.all_certified and b.all_certified
    assert a.quotient_multiset() == b.quotient_multiset()
    assert len(a.steps) == 27


def test_filtration_under_other_root_order():
    alg = lie_algebra(3, "sl", "revlex")
    chi = ChiForm.levi(alg, 3, [1])
    rep = tensor_filtration(build_baby_verma(chi, (0, 1, 0)), build_baby_verma(-chi, (2, 0, 0)), certify_iso=False)
    assert rep.all_certified


def test_comp_factors_two_ways_on_tensor(chi_f1):
    lam, mu = (2, 0), (3, 0)
    rep = tensor_filtration(build_baby_verma(chi_f1, lam), build_baby_verma(-chi_f1, mu))
    via_filtration = Counter()
    for s in rep.steps:
        via_filtration += composition_factors(baby_verma_module(rep.chi_total, s.predicted_weight)).counter()
    direct = composition_factors(tensor(baby_verma_module(chi_f1, lam), baby_verma_module(-chi_f1, mu))).counter()
    assert via_filtration == direct


def test_predicted_weights_cover_every_b(sl2):
    chi = ChiForm.zero(sl2, 7)
    rep = tensor_filtration(build_baby_verma(chi, (3, 0)), build_baby_verma(chi, (5, 0)), certify_iso=False)
    assert sorted(rep.b_tuples()) == [(b,) for b in range(7)]
    want = Counter(weight_key(((3 + 5 - 2 * b) % 7, 0), "sl", 7) for b in range(7))
    assert rep.quotient_multiset() == want
