"""End-to-end acceptance criteria 1-12, exact arithmetic throughout.

Each criterion prints one ``criterion N: PASS|FAIL`` line.  Run directly with
``python3 tests/test_acceptance.py`` or through pytest.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from babyverma.charzero import (
    Lp_chi,
    Mp_chi,
    align_to_baby_verma,
    gl_sl_compare,
    head_surjection_check,
    lambda_tilde,
)
from babyverma.envelope import ChiForm, lie_algebra
from babyverma.modrep import (
    baby_verma_module,
    composition_factors,
    composition_factors_oracle,
    find_isomorphism,
    is_module_hom,
    simple_module,
    tensor,
    twist,
)
from babyverma.pyramids import (
    build_pyramid,
    centralizer_dims,
    centralizer_oracle,
    chi_pi,
    column_connected,
    column_connected_representative,
    lift_column_connected,
    min_dim_classification,
    row_canonical,
    row_standard,
    rs_shape,
    sigma_check,
    simple_label_weight,
    theorem_pipeline,
)
from babyverma.rootdata import weight_key
from babyverma.verma import build_baby_verma, tensor_filtration


def _sl_weights(N: int, p: int):
    """All mod-p sl_N weights, last ε-coordinate 0."""
    for head in itertools.product(range(p), repeat=N - 1):
        yield head + (0,)


def _sl2_forms(p: int):
    alg = lie_algebra(2, "sl")
    return [ChiForm.from_dict(alg, p, {"f": c}) for c in range(p)]


def _random_levi(rng: random.Random, alg, p: int) -> ChiForm:
    """Nilpotent χ of (weak) standard Levi form with random support and values."""
    vals = {}
    for i in range(1, alg.N):
        if rng.random() < 0.5:
            vals[f"e{i + 1}{i}"] = rng.randrange(1, p)
    return ChiForm.from_dict(alg, p, vals)


def _random_rational(rng: random.Random, p: int) -> Fraction:
    while True:
        den = rng.choice([1, 1, 2, 3, 4, 5, 7])
        if den % p:
            return Fraction(rng.randint(-12, 12), den)


def _predicted(alg, lam, mu, p):
    out = Counter()
    for b in itertools.product(range(p), repeat=alg.D):
        shift = alg.monomial_weight_shift(b)
        nu = tuple((x + y + s) % p for x, y, s in zip(lam, mu, shift))
        out[weight_key(nu, alg.kind, p)] += 1
    return out


# ---------------------------------------------------------------- criteria


def criterion_1():
    alg = lie_algebra(2, "sl")
    chi = ChiForm.from_dict(alg, 5, {"f": 1})
    rep = tensor_filtration(build_baby_verma(chi, (2, 0)), build_baby_verma(-chi, (3, 0)))
    assert [s.label for s in rep.steps] == [(0,), (3,), (1,), (4,), (2,)]
    assert rep.block_triangular
    for s in rep.steps:
        assert s.certificate is not None
        assert is_module_hom(s.certificate, *_step_modules(rep, s))


def _step_modules(rep, step):
    """Rebuild the quotient W_i/W_{i-1} and its target to re-verify a certificate."""
    from babyverma.exactlin import inverse, matmul
    from babyverma.modrep import MatrixModule
    from babyverma.verma import tensor_basis_change

    alg, p = rep.chi_total.algebra, rep.chi_total.p
    chi1 = ChiForm.from_dict(alg, p, {"f": 1})
    Zl, Zm = build_baby_verma(chi1, rep.lam), build_baby_verma(-chi1, rep.mu)
    B = tensor_basis_change(Zl, Zm, rep.b_tuples()).matrix
    Binv = inverse(B, p)
    T = tensor(Zl.module, Zm.module)
    q = p**alg.D
    blk = slice((step.index - 1) * q, step.index * q)
    Q = MatrixModule(
        alg, rep.chi_total, {x: matmul(Binv, matmul(T.actions[x], B, p), p)[blk, blk] for x in alg.basis}
    )
    return Q, baby_verma_module(rep.chi_total, step.predicted_weight)


def _check_filtration(chi1, chi2, lam, mu, tiebreaks, certify_iso=True):
    alg, p = chi1.algebra, chi1.p
    expected = _predicted(alg, lam, mu, p)
    all_b = sorted(itertools.product(range(p), repeat=alg.D))
    multisets = []
    for k, tb in enumerate(tiebreaks):
        rep = tensor_filtration(
            build_baby_verma(chi1, lam), build_baby_verma(chi2, mu), tiebreak=tb, certify_iso=certify_iso or k == 0
        )
        assert rep.block_triangular
        assert rep.basis_rank == p ** (2 * alg.D)
        assert all(s.certified for s in rep.steps)
        assert sorted(rep.b_tuples()) == all_b
        assert rep.quotient_multiset() == expected
        multisets.append(rep.quotient_multiset())
    assert all(m == multisets[0] for m in multisets)


def criterion_2():
    rng = random.Random(20240607)
    sl2 = lie_algebra(2, "sl")
    for k in range(200):
        p = (3, 5, 7)[k % 3]
        chi1, chi2 = _random_levi(rng, sl2, p), _random_levi(rng, sl2, p)
        lam, mu = (rng.randrange(p), 0), (rng.randrange(p), 0)
        _check_filtration(chi1, chi2, lam, mu, ("lex",))
    sl3 = lie_algebra(3, "sl")
    for _ in range(20):
        chi1, chi2 = _random_levi(rng, sl3, 3), _random_levi(rng, sl3, 3)
        lam = (rng.randrange(3), rng.randrange(3), 0)
        mu = (rng.randrange(3), rng.randrange(3), 0)
        _check_filtration(chi1, chi2, lam, mu, ("lex", "revlex"), certify_iso=False)


def criterion_3():
    for p in (3, 5, 7):
        for chi in _sl2_forms(p):
            for lam in _sl_weights(2, p):
                Z = baby_verma_module(chi, lam)
                peel = composition_factors(Z)
                assert peel == composition_factors_oracle(Z)
                assert peel.total_dim == p
    alg = lie_algebra(2, "sl")
    chi = ChiForm.from_dict(alg, 5, {"f": 1})
    T = tensor(baby_verma_module(chi, (2, 0)), baby_verma_module(-chi, (3, 0)))
    peel = composition_factors(T)
    assert peel == composition_factors_oracle(T)
    assert peel.total_dim == 25
    # the printed list in the source has dimension sum 21, one L_0(3) short
    printed = Counter({0: 2, 3: 1, 2: 2, 1: 2, 4: 1})
    assert sum(m * (k + 1) for k, m in printed.items()) == 21
    assert peel.multiplicity((3,)) == printed[3] + 1


def criterion_4():
    cases = [(f, 2, p) for p in (3, 5) for f in _sl2_forms(p)]
    sl3 = lie_algebra(3, "sl")
    cases += [(ChiForm.levi(sl3, 3, I), 3, 3) for I in ((), (1,), (2,), (1, 2))]
    for chi, N, p in cases:
        for lam in _sl_weights(N, p):
            Zt = twist(baby_verma_module(chi, lam))
            Zneg = baby_verma_module(-chi, lam)
            assert Zt.chi == -chi
            assert composition_factors(Zt) == composition_factors(Zneg)
            iso = find_isomorphism(Zt, Zneg)
            assert iso is not None and is_module_hom(iso, Zt, Zneg)


def _rhs_multiplicities(chi, lam, mu):
    """Σ [Z_χ(λ):L_χ(σ)][Z_{−χ}(μ):L_{−χ}(τ)][L_χ(σ)⊗L_{−χ}(τ):L_0(κ)]."""
    alg, p = chi.algebra, chi.p
    zl = composition_factors(baby_verma_module(chi, lam)).counter()
    # twist identification: [Z_{−χ}(μ):L_{−χ}(τ)] = [Z_χ(μ):L_χ(τ)]
    zm = composition_factors(baby_verma_module(chi, mu)).counter()
    total = Counter()
    for sigma, m1 in zl.items():
        Ls = simple_module(chi, _weight_of_label(sigma, alg))
        for tau, m2 in zm.items():
            Lt = twist(simple_module(chi, _weight_of_label(tau, alg)))
            for kappa, m3 in composition_factors(tensor(Ls, Lt)).counter().items():
                total[kappa] += m1 * m2 * m3
    return total


def _weight_of_label(label, alg):
    from babyverma.rootdata import weight_from_key

    return weight_from_key(label, alg.kind, alg.N)


def criterion_5():
    for p in (3, 5):
        for chi in _sl2_forms(p):
            for lam in _sl_weights(2, p):
                for mu in _sl_weights(2, p):
                    left = composition_factors(
                        tensor(baby_verma_module(chi, lam), baby_verma_module(-chi, mu))
                    ).counter()
                    right = _rhs_multiplicities(chi, lam, mu)
                    for kappa in _sl_weights(2, p):
                        key = weight_key(kappa, "sl", p)
                        assert left[key] == right[key], (p, chi, lam, mu, kappa)


def _criterion_6_cases():
    rng = random.Random(6)
    out = []
    sl2 = lie_algebra(2, "sl")
    for k in range(20):
        p = (3, 5)[k % 2]
        chi = ChiForm.from_dict(sl2, p, {"f": rng.randrange(p)})
        out.append((chi, (_random_rational(rng, p), Fraction(0))))
    sl3 = lie_algebra(3, "sl")
    for _ in range(5):
        vals = {x: rng.randrange(3) for x in ("e21", "e32", "e31")}
        chi = ChiForm.from_dict(sl3, 3, vals)
        out.append((chi, (_random_rational(rng, 3), _random_rational(rng, 3), Fraction(0))))
    return out


def criterion_6():
    for chi, lam in _criterion_6_cases():
        alg, p = chi.algebra, chi.p
        res = Mp_chi(alg, lam, chi)
        Z = baby_verma_module(chi, lambda_tilde(lam, p))
        aligned = align_to_baby_verma(res, chi)
        assert aligned is not None
        assert all(np.array_equal(aligned.actions[x], Z.actions[x]) for x in alg.basis)
        iso = find_isomorphism(res.module, Z)
        assert iso is not None and is_module_hom(iso, res.module, Z)


def criterion_7():
    nonzero = 0
    for chi, lam in _criterion_6_cases():
        if chi.algebra.N != 2:
            continue
        res = Lp_chi(chi.algebra, lam, chi)
        if res.module.dim == 0:
            continue
        nonzero += 1
        head = head_surjection_check(res, chi, lambda_tilde(lam, chi.p))
        assert head.ok, (chi, lam)
    assert nonzero > 0


def criterion_8():
    rng = random.Random(8)
    gl2 = lie_algebra(2, "gl")
    for k in range(10):
        p = (3, 5)[k % 2]
        chi = ChiForm.from_dict(gl2, p, {"e21": rng.randrange(p)})
        lam = (_random_rational(rng, p), _random_rational(rng, p))
        out = gl_sl_compare(lam, chi)
        assert out["equal"], (lam, chi, out)
        assert out["identity_acts_by_scalar"]


def _partitions(n: int, smallest: int = 1):
    """Weakly increasing partitions of n."""
    if n == 0:
        yield ()
        return
    for first in range(smallest, n + 1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def criterion_9():
    for N in range(1, 9):
        for part in _partitions(N):
            pi = build_pyramid(part)
            dims = centralizer_dims(pi, 3, oracle=False)
            assert centralizer_oracle(pi, 3) == (dims.gl_centralizer, dims.b_centralizer)
            assert dims.orbit == N * N - dims.gl_centralizer
    d = centralizer_dims(build_pyramid((1, 2, 2, 4)), 7)
    assert (d.gl_centralizer, d.b_centralizer, d.orbit) == (27, 18, 54)
    assert d.orbit // 2 == 45 - 18 == 27


def criterion_10():
    pi = build_pyramid((1, 2, 2, 4))
    A = (2, 1, 6, 0, 5, 6, 4, 1, 0)
    assert column_connected(pi, A, 7)
    lift = lift_column_connected(pi, A, 7)
    assert all((x - a) % 7 == 0 for x, a in zip(lift, A))
    assert column_connected(pi, lift) and row_standard(pi, lift)
    assert rs_shape(lift) == (4, 2, 2, 1)
    assert sigma_check(pi, lift)


def criterion_11():
    pi = build_pyramid((1, 2))
    p = 3
    chi = chi_pi(pi, p)
    target = centralizer_dims(pi, p).min_dim
    assert target == 9
    by_dim, by_predicate = set(), set()
    for A in itertools.product(range(p), repeat=3):
        d = simple_module(chi, simple_label_weight(A, p)).dim
        assert d % target == 0
        if d == target:
            by_dim.add(A)
        if column_connected_representative(pi, A, p) is not None:
            by_predicate.add(A)
    assert by_dim == by_predicate
    assert {row_canonical(pi, A, p) for A in by_dim} == min_dim_classification(pi, p)


def criterion_12():
    for part in ((2,), (1, 1)):
        pi = build_pyramid(part)
        for p in (3, 5):
            labels = sorted(min_dim_classification(pi, p))
            assert labels
            for key in labels:
                rep = theorem_pipeline(pi, p, tuple(x for row in key for x in row))
                assert rep.dim_Lp_chi and rep.dim_Lp_chi > 0
                assert rep.surjection
                assert rep.dim_target == rep.min_dim
                assert rep.part1 == rep.part2 == "not checked"


CRITERIA = {
    1: ("tensor filtration of the sl2 example", criterion_1, 1.0),
    2: ("filtration multiset property suite", criterion_2, 300.0),
    3: ("peeling agrees with the spinning oracle", criterion_3, 120.0),
    4: ("twist identifies Z_chi and Z_-chi", criterion_4, 60.0),
    5: ("tensor multiplicity identity", criterion_5, 120.0),
    6: ("windowed M_p^chi equals the baby Verma", criterion_6, 120.0),
    7: ("surjection onto the simple head", criterion_7, 60.0),
    8: ("gl versus sl dimensions", criterion_8, 60.0),
    9: ("centralizer formulas against the kernel oracle", criterion_9, 30.0),
    10: ("lift, RS shape and sigma check", criterion_10, 1.0),
    11: ("minimal-dimension classification", criterion_11, 120.0),
    12: ("end-to-end pipeline at N=2", criterion_12, 120.0),
}


def run_criterion(n: int) -> tuple[bool, float, str]:
    _, func, limit = CRITERIA[n]
    start = time.perf_counter()
    try:
        func()
    except AssertionError as err:
        return False, time.perf_counter() - start, f"assertion failed {err}".strip()
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        return False, elapsed, f"took {elapsed:.2f}s, limit {limit:.0f}s"
    return True, elapsed, ""


def _line(n: int, ok: bool, elapsed: float, why: str) -> str:
    status = "PASS" if ok else "FAIL"
    tail = f" ({why})" if why else ""
    return f"criterion {n}: {status}  {CRITERIA[n][0]}  [{elapsed:.2f}s]{tail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, elapsed, why = run_criterion(n)
    with capsys.disabled():
        print("\n" + _line(n, ok, elapsed, why))
    assert ok, why


if __name__ == "__main__":
    failures = 0
    for n in sorted(CRITERIA):
        ok, elapsed, why = run_criterion(n)
        failures += not ok
        print(_line(n, ok, elapsed, why), flush=True)
    raise SystemExit(1 if failures else 0)
