"""Characteristic-zero highest-weight modules and their reductions mod p.

The infinite-dimensional modules M(λ), L(λ) are handled on a *window*:
all weight spaces λ − ν with ht(ν) ≤ K.  Weight spaces are never cut, so
everything inside the window is exact.

* :func:`verma_char0` gives the windowed Verma module over ℚ.
* :func:`simple_quotient_char0` computes L(λ) = M(λ)/rad weight by weight
  via the Shapovalov form; the image of f^a v in L is the row of the form.
* :func:`base_change_p` picks, per weight, monomials whose rows form a
  ℤ_(p)-basis of the lattice U(g_R)·v̄ and reduces the action mod p.
* :func:`quotient_by_Jchi` divides out J_χ inside the window and returns an
  explicit U_χ-module, or raises :class:`UndecidedError` when the window
  cannot certify the answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .envelope import BasisElement, ChiForm, LieAlgebra, MonomialAction, is_in_lambda_chi, lie_algebra
from .exactlin import PrimeField, RationalMatrix, Subspace, kernel, matmul, rank, solve
from .modrep import (
    MatrixModule,
    _generator_images,
    _is_b_eigenvector,
    baby_verma_module,
    is_module_hom,
    quotient,
    radical_of_baby_verma,
    spin,
    submodule,
)
from .rootdata import rho, simple_coordinates

__all__ = [
    "UndecidedError",
    "TruncatedVerma",
    "LatticeModule",
    "WindowedModule",
    "verma_char0",
    "simple_quotient_char0",
    "base_change_p",
    "quotient_by_Jchi",
    "QuotientResult",
    "Lp_chi",
    "Mp_chi",
    "align_to_baby_verma",
    "HeadSurjection",
    "head_surjection_check",
    "gl_sl_compare",
    "default_depth",
    "verma_is_simple",
    "is_dominant_integral",
    "dominant_reach",
    "shapovalov_matrix",
]


class UndecidedError(RuntimeError):
    """The truncation window is too small to certify the requested answer."""


Monomial = tuple[int, ...]


def _frac_weight(weight: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in weight)


def default_depth(algebra: LieAlgebra, p: int) -> int:
    """Window height: large enough to hold every reduced monomial plus one root layer."""
    if algebra.N == 2:
        return 3 * p
    top = (p - 1) * sum(algebra.roots.heights())
    return max(p * algebra.D, top + p * (algebra.N - 1))


def _window_monomials(algebra: LieAlgebra, K: int) -> list[Monomial]:
    hts = algebra.roots.heights()
    out = []

    def rec(prefix, r, budget):
        if r == len(hts):
            out.append(tuple(prefix))
            return
        for k in range(budget // hts[r] + 1):
            prefix.append(k)
            rec(prefix, r + 1, budget - k * hts[r])
            prefix.pop()

    rec([], 0, K)
    out.sort(key=lambda a: (sum(ar * h for ar, h in zip(a, hts)), a))
    return out


def _coroot_pairings(weight: Sequence[Fraction], N: int) -> list[Fraction]:
    """⟨λ + ρ, α∨⟩ for all positive roots α = ε_i − ε_j."""
    shifted = [w + r for w, r in zip(weight, rho(N))]
    return [shifted[i] - shifted[j] for i, j in itertools.combinations(range(N), 2)]


def verma_is_simple(weight: Sequence, N: int) -> bool:
    """M(λ) is simple iff no ⟨λ+ρ, α∨⟩ is a positive integer."""
    return not any(c.denominator == 1 and c > 0 for c in _coroot_pairings(_frac_weight(weight), N))


def is_dominant_integral(weight: Sequence, N: int) -> bool:
    w = _frac_weight(weight)
    diffs = [w[i] - w[i + 1] for i in range(N - 1)]
    return all(d.denominator == 1 and d >= 0 for d in diffs)


@dataclass(eq=False)
class TruncatedVerma:
    """M(λ) over ℚ restricted to the weight spaces of height ≤ depth."""

    algebra: LieAlgebra
    weight: tuple[Fraction, ...]
    depth: int
    monomials: list[Monomial]
    engine: MonomialAction = field(repr=False)

    @cached_property
    def index(self) -> dict[Monomial, int]:
        return {a: k for k, a in enumerate(self.monomials)}

    def height(self, a: Monomial) -> int:
        return sum(ar * h for ar, h in zip(a, self.algebra.roots.heights()))

    def grade(self, a: Monomial) -> tuple[int, ...]:
        """Simple-root coordinates of Σ a_r γ_r."""
        return tuple(-c for c in simple_coordinates(self.algebra.monomial_weight_shift(a)))

    def act(self, x: BasisElement, a: Monomial) -> dict[Monomial, Fraction]:
        return self.engine.apply(x, a)

    def denominators(self) -> set[int]:
        dens = {w.denominator for w in self.weight if w.denominator != 1}
        for a in self.monomials:
            for x in self.algebra.basis:
                if self.algebra.part(x) == "neg":
                    continue
                dens |= {Fraction(c).denominator for c in self.act(x, a).values() if Fraction(c).denominator != 1}
        return dens


def verma_char0(algebra: LieAlgebra, weight: Sequence, depth: int) -> TruncatedVerma:
    if depth < 1:
        raise ValueError("window depth must be at least 1")
    w = _frac_weight(weight)
    if len(w) != algebra.N:
        raise ValueError(f"weight needs {algebra.N} ε-coordinates")
    return TruncatedVerma(algebra, w, depth, _window_monomials(algebra, depth), MonomialAction(algebra, w))


@dataclass(eq=False)
class LatticeModule:
    """L(λ) on a window: per weight, the monomials and their Shapovalov rows.

    The image of f^a v in L(λ) is identified with ``rows[ν][k]`` where
    ``monomials_by_weight[ν][k] == a``.  ``complete`` means the window
    contains every nonzero weight space of L(λ).
    """

    verma: TruncatedVerma
    monomials_by_weight: dict[tuple[int, ...], list[Monomial]]
    rows: dict[tuple[int, ...], RationalMatrix]
    complete: bool
    is_verma: bool

    @property
    def algebra(self) -> LieAlgebra:
        return self.verma.algebra

    @property
    def weight(self) -> tuple[Fraction, ...]:
        return self.verma.weight

    @property
    def depth(self) -> int:
        return self.verma.depth

    def weight_dims(self) -> dict[tuple[int, ...], int]:
        return {nu: m.rank() for nu, m in self.rows.items()}

    @property
    def dim_in_window(self) -> int:
        return sum(self.weight_dims().values())


def _sigma_word(algebra: LieAlgebra, a: Monomial) -> list[BasisElement]:
    """Word for σ(f^a) = e_{γ_1}^{a_1} ... e_{γ_D}^{a_D} (leftmost first)."""
    word = []
    for r, ar in enumerate(a):
        word.extend([algebra.positives[r]] * ar)
    return word


def shapovalov_matrix(M: TruncatedVerma, mons: list[Monomial]) -> RationalMatrix:
    """Entries: coefficient of v in σ(f^b)·f^a v, with σ the transpose anti-involution."""
    zero = (0,) * M.algebra.D
    rows = []
    for a in mons:
        row = []
        for b in mons:
            img = M.engine.apply_word(_sigma_word(M.algebra, b), a)
            row.append(Fraction(img.get(zero, 0)))
        rows.append(row)
    return RationalMatrix(rows)


def _rational_rref_pivots(rows: list[list[Fraction]]) -> list[int]:
    red, r = RationalMatrix(rows).rref()
    return [next(c for c, x in enumerate(row) if x != 0) for row in red.rows[:r]]


def _radical_rows(M: TruncatedVerma, groups: dict[tuple[int, ...], list[Monomial]]) -> dict:
    """Coordinates of each f^a v in L(λ), weight by weight.

    For ν ≠ 0, m ∈ M_ν lies in the radical iff every simple raising operator
    sends it into the radical, so the image of m in L_ν is faithfully
    recorded by the images of e_i·m in the already computed spaces
    L_{ν−α_i}.  Rows are compressed to a basis of their span by reading them
    at the pivot columns of their reduced echelon form.
    """
    alg = M.algebra
    simple = [BasisElement("e", i, i + 1) for i in range(1, alg.N)]
    rep: dict[Monomial, list[Fraction]] = {}
    dims: dict[tuple[int, ...], int] = {}
    out: dict[tuple[int, ...], RationalMatrix] = {}
    for nu in sorted(groups, key=lambda v: (sum(v), v)):
        mons = groups[nu]
        if not any(nu):
            rep[mons[0]] = [Fraction(1)]
            dims[nu] = 1
            out[nu] = RationalMatrix([[1]])
            continue
        widths = []
        for k in range(len(simple)):
            lower = tuple(c - (t == k) for t, c in enumerate(nu))
            widths.append(dims.get(lower, 0))
        raw = []
        for a in mons:
            row: list[Fraction] = []
            for e, width in zip(simple, widths):
                acc = [Fraction(0)] * width
                for b, cb in M.act(e, a).items():
                    for t, x in enumerate(rep.get(b, ())):
                        acc[t] += Fraction(cb) * x
                row.extend(acc)
            raw.append(row)
        piv = _rational_rref_pivots(raw) if sum(widths) else []
        dims[nu] = len(piv)
        for a, row in zip(mons, raw):
            rep[a] = [row[c] for c in piv]
        out[nu] = RationalMatrix([rep[a] for a in mons])
    return out


def dominant_reach(weight: Sequence, N: int) -> int | None:
    """Height of λ − w₀λ for dominant integral λ (the depth of L(λ)), else None."""
    if not is_dominant_integral(weight, N):
        return None
    w = _frac_weight(weight)
    diff = tuple(a - b for a, b in zip(w, reversed(w)))
    return int(sum(simple_coordinates(diff)))


def simple_quotient_char0(M: TruncatedVerma) -> LatticeModule:
    """Windowed L(λ), exact weight by weight."""
    alg = M.algebra
    groups: dict[tuple[int, ...], list[Monomial]] = {}
    for a in M.monomials:
        groups.setdefault(M.grade(a), []).append(a)
    simple = verma_is_simple(M.weight, alg.N)
    if simple:
        rows = {
            nu: RationalMatrix([[int(i == j) for j in range(len(ms))] for i in range(len(ms))])
            for nu, ms in groups.items()
        }
    else:
        rows = _radical_rows(M, groups)
    reach = dominant_reach(M.weight, alg.N)
    complete = reach is not None and M.depth >= reach + (alg.N - 1)
    return LatticeModule(M, groups, rows, complete, simple)


def _valuation(x: Fraction, p: int) -> int:
    if x == 0:
        return 10**9
    v, n, d = 0, x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _lattice_basis(rows: RationalMatrix, p: int) -> list[int]:
    """Indices of rows forming a ℤ_(p)-basis of the lattice they span.

    Gaussian elimination with minimal-valuation pivots keeps every row
    operation ℤ_(p)-integral, so the chosen rows generate the same lattice.
    """
    a = [row[:] for row in rows.rows]
    live = list(range(len(a)))
    chosen = []
    ncols = rows.shape[1]
    while live:
        best = None
        for i in live:
            for j in range(ncols):
                if a[i][j] != 0:
                    v = _valuation(a[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        _, i0, j0 = best
        chosen.append(i0)
        live.remove(i0)
        piv = a[i0][j0]
        for i in live:
            if a[i][j0] != 0:
                f = a[i][j0] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[i0])]
    return sorted(chosen)


def _rational_coordinates(basis_rows: list[list[Fraction]], target: list[Fraction]) -> list[Fraction]:
    """Coordinates of ``target`` in the span of independent ``basis_rows``."""
    k = len(basis_rows)
    if k == 0:
        if any(target):
            raise ValueError("vector not in span")
        return []
    n = len(target)
    # Solve c · B = target via rref of [Bᵀ | target].
    aug = RationalMatrix([[basis_rows[r][j] for r in range(k)] + [target[j]] for j in range(n)])
    red, _ = aug.rref()
    coords = [Fraction(0)] * k
    for row in red.rows:
        lead = next((c for c in range(k + 1) if row[c] != 0), None)
        if lead is None:
            continue
        if lead == k:
            raise ValueError("vector not in span")
        coords[lead] = row[k]
    return coords


@dataclass(eq=False)
class WindowedModule:
    """L_p(λ) (or M_p(λ)) on a window, with exact columns flagged.

    Column ``k`` of ``actions[x]`` is exact when ``exact[x][k]``; otherwise
    the image leaves the window and the column is left zero.
    """

    algebra: LieAlgebra
    p: int
    weight: tuple[int, ...]
    labels: list[Monomial]
    heights: np.ndarray
    actions: dict[BasisElement, np.ndarray]
    exact: dict[BasisElement, np.ndarray]
    depth: int
    complete: bool
    denominators: frozenset[int]

    @property
    def dim(self) -> int:
        return len(self.labels)


def base_change_p(L: LatticeModule, p: int) -> WindowedModule:
    """Reduce the windowed lattice module mod p."""
    PrimeField(p)
    alg = L.algebra
    bad = {d for d in L.verma.denominators() if d % p == 0}
    for nu, m in L.rows.items():
        bad |= {d for d in m.denominators() if d % p == 0}
    if bad:
        raise ZeroDivisionError(f"p={p} divides structure-constant denominators {sorted(bad)}")
    basis: list[Monomial] = []
    coords: dict[Monomial, tuple[tuple[int, ...], list[Fraction]]] = {}
    offsets: dict[tuple[int, ...], int] = {}
    for nu in sorted(L.rows, key=lambda v: (sum(v), v)):
        m = L.rows[nu]
        mons = L.monomials_by_weight[nu]
        if L.is_verma:
            chosen = list(range(len(mons)))
        else:
            chosen = _lattice_basis(m, p)
        offsets[nu] = len(basis)
        basis.extend(mons[k] for k in chosen)
        brows = [m.rows[k] for k in chosen]
        for k, a in enumerate(mons):
            if L.is_verma:
                c = [Fraction(int(j == k)) for j in range(len(mons))]
            else:
                c = _rational_coordinates(brows, m.rows[k])
            coords[a] = (nu, c)
    dens = set()
    n = len(basis)
    index = {a: k for k, a in enumerate(basis)}
    M = L.verma
    heights = np.array([M.height(a) for a in basis], dtype=np.int64)
    actions, exact = {}, {}
    field_ = PrimeField(p)
    for x in alg.basis:
        mat = np.zeros((n, n), dtype=np.int64)
        ok = np.ones(n, dtype=bool)
        drop = 0
        if alg.part(x) == "neg":
            drop = alg.roots.heights()[alg.neg_index[x]]
        for k, a in enumerate(basis):
            if heights[k] + drop > M.depth:
                ok[k] = False
                continue
            acc: dict[int, Fraction] = {}
            for b, cb in M.act(x, a).items():
                nu, c = coords[b]
                off = offsets[nu]
                for j, cj in enumerate(c):
                    if cj:
                        acc[off + j] = acc.get(off + j, Fraction(0)) + Fraction(cb) * cj
            for j, val in acc.items():
                if val.denominator != 1:
                    dens.add(val.denominator)
                mat[j, k] = field_.reduce(val)
        actions[x], exact[x] = mat, ok
    bad = {d for d in dens if d % p == 0}
    if bad:
        raise ZeroDivisionError(f"p={p} divides structure-constant denominators {sorted(bad)}")
    wt = tuple(field_.reduce(w) for w in L.weight)
    all_dens = frozenset(dens | M.denominators())
    return WindowedModule(alg, p, wt, basis, heights, actions, exact, M.depth, L.complete, all_dens)


@dataclass(eq=False)
class QuotientResult:
    module: MatrixModule
    labels: list[Monomial]
    generator: np.ndarray


def quotient_by_Jchi(Lp: WindowedModule, chi: ChiForm) -> QuotientResult:
    """L_p(λ)/J_χ L_p(λ), computed inside the window.

    J_χ is generated by the central elements z_x = x^p − x^{[p]} − χ(x)^p
    for basis elements x.  Each z_x·u is evaluated when every intermediate
    vector stays inside the window.  The complement of the span prefers
    low-height monomials; it must sit one root layer below the window top,
    otherwise the action on it is not known exactly.
    """
    alg, p, n = Lp.algebra, Lp.p, Lp.dim
    if chi.algebra != alg or chi.p != p:
        raise ValueError("χ does not match the module")
    eye = np.eye(n, dtype=np.int64)
    gens = []
    for x in alg.basis:
        A, ok = Lp.actions[x], Lp.exact[x]
        good = np.ones(n, dtype=bool)
        cur = eye
        for _ in range(p):
            # a column is trustworthy only while its support has exact images
            good &= ~((cur != 0) & ~ok[:, None]).any(axis=0)
            cur = matmul(A, cur, p)
        z = (cur - pow(chi(x), p, p) * eye) % p
        for y, c in alg.p_power(x, p).items():
            z = (z - c * Lp.actions[y]) % p
            good &= Lp.exact[y]
        if Lp.complete:
            good[:] = True
        gens.append(z[:, good].T)
    # Work in coordinates sorted by decreasing height so that pivots (the
    # coordinates eliminated by J) are the highest monomials available.
    order = np.argsort(-Lp.heights, kind="stable")
    J = Subspace.from_vectors(np.vstack(gens)[:, order], p, n)
    comp_sorted = J.complement_indices()
    comp = np.sort(order[comp_sorted])
    margin = max(alg.roots.heights()) if alg.D else 0
    if not Lp.complete and comp.size and Lp.heights[comp].max() + margin > Lp.depth:
        raise UndecidedError(
            f"window depth {Lp.depth} too small: quotient reaches height {int(Lp.heights[comp].max())}"
        )
    actions = {}
    for x in alg.basis:
        images = Lp.actions[x][:, comp].T  # rows: x applied to complement vectors
        coords = J.quotient_coordinates(images[:, order])  # columns follow comp_sorted
        actions[x] = _reorder(coords, order, comp_sorted, comp).T.copy()
    module = MatrixModule(alg, chi, actions)
    labels = [Lp.labels[k] for k in comp]
    gen = np.zeros(len(comp), dtype=np.int64)
    zero = (0,) * alg.D
    if zero in labels:
        gen[labels.index(zero)] = 1
    if gen.any():
        S = spin(module, gen)
        if S.dim < module.dim:
            module = submodule(module, S)
            labels = [labels[k] for k in S.pivots]
            gen = S.coordinates(gen)
    return QuotientResult(module, labels, gen)


def _reorder(coords: np.ndarray, order: np.ndarray, comp_sorted: np.ndarray, comp: np.ndarray) -> np.ndarray:
    """Permute quotient coordinates from sorted-height order to ``comp`` order."""
    where = {int(order[c]): t for t, c in enumerate(comp_sorted)}
    return coords[:, [where[int(k)] for k in comp]]


def align_to_baby_verma(res: QuotientResult, chi: ChiForm) -> MatrixModule | None:
    """Re-index a quotient whose labels are the reduced monomials into Z_χ's basis order."""
    p, D = chi.p, chi.algebra.D
    want = sorted(res.labels)
    if len(want) != p**D or any(x >= p for a in want for x in a):
        return None
    pos = {a: k for k, a in enumerate(res.labels)}
    perm = []
    for a in itertools.product(range(p), repeat=D):
        perm.append(pos[a])
    perm = np.array(perm)
    actions = {x: A[np.ix_(perm, perm)].copy() for x, A in res.module.actions.items()}
    return MatrixModule(res.module.algebra, res.module.chi, actions)


def Mp_chi(algebra: LieAlgebra, weight: Sequence, chi: ChiForm, depth: int | None = None) -> QuotientResult:
    """M_p(λ)/J_χ M_p(λ) on a window (should be Z_χ(λ̃))."""
    depth = depth or default_depth(algebra, chi.p)
    M = verma_char0(algebra, weight, depth)
    groups: dict = {}
    for a in M.monomials:
        groups.setdefault(M.grade(a), []).append(a)
    rows = {nu: RationalMatrix([[int(i == j) for j in range(len(ms))] for i in range(len(ms))]) for nu, ms in groups.items()}
    L = LatticeModule(M, groups, rows, complete=False, is_verma=True)
    return quotient_by_Jchi(base_change_p(L, chi.p), chi)


def Lp_chi(
    algebra: LieAlgebra,
    weight: Sequence,
    chi: ChiForm,
    depth: int | None = None,
    check_stable: bool = True,
) -> QuotientResult:
    """L_p^χ(λ) on a window, optionally re-checked one band higher."""
    depth = depth or default_depth(algebra, chi.p)
    reach = dominant_reach(weight, algebra.N)
    if reach is not None:
        # L(λ) is finite-dimensional: one root layer past its lowest weight suffices
        depth = reach + algebra.N - 1
        check_stable = False

    def run(K):
        L = simple_quotient_char0(verma_char0(algebra, weight, K))
        return quotient_by_Jchi(base_change_p(L, chi.p), chi)

    res = run(depth)
    if check_stable:
        again = run(depth + chi.p)
        if again.module.dim != res.module.dim:
            raise UndecidedError(
                f"dimension changed from {res.module.dim} to {again.module.dim} when widening the window"
            )
    return res


@dataclass(eq=False)
class HeadSurjection:
    map: np.ndarray
    target: MatrixModule
    kernel_in_radical: bool
    equivariant: bool
    surjective: bool

    @property
    def ok(self) -> bool:
        return self.kernel_in_radical and self.equivariant and self.surjective


def head_surjection_check(res: QuotientResult, chi: ChiForm, weight_mod_p: Sequence[int]) -> HeadSurjection:
    """Exhibit L_p^χ(λ) ↠ L_χ(λ̃) explicitly.

    ψ: Z_χ(λ̃) → L_p^χ(λ), f^a z ↦ f^a v̄, is onto; its kernel lies in the
    radical of Z_χ(λ̃), so the projection Z → L_χ(λ̃) factors through ψ.
    """
    M = res.module
    if M.dim == 0:
        raise ValueError("hypothesis L_p^χ(λ) ≠ 0 fails")
    p = chi.p
    v = res.generator
    if not v.any() or not _is_b_eigenvector(M, v):
        raise ValueError("generator is not a highest-weight vector")
    psi = _generator_images(M, v)
    wt = tuple(int(w) % p for w in weight_mod_p)
    Z = baby_verma_module(chi, wt)
    rad = radical_of_baby_verma(chi, wt)
    L = quotient(Z, rad)
    ker = kernel(psi, p)
    inside = rad.contains_subspace(ker)
    # projection Z → L in quotient coordinates: columns are images of unit vectors
    q = rad.quotient_coordinates(np.eye(Z.dim, dtype=np.int64)).T
    phi = None
    if inside and rank(psi, p) == M.dim:
        sol = solve(psi.T, q.T, p)
        phi = sol.T % p if sol is not None else None
    if phi is None:
        return HeadSurjection(np.zeros((L.dim, M.dim), dtype=np.int64), L, inside, False, False)
    return HeadSurjection(phi, L, inside, is_module_hom(phi, M, L), rank(phi, p) == L.dim)


def gl_sl_compare(weight: Sequence, chi: ChiForm, depth: int | None = None) -> dict:
    """Compare dim L_p^χ(λ) for gl_N with dim L_p^{χ'}(λ') for sl_N."""
    gl = chi.algebra
    if gl.kind != "gl":
        raise ValueError("start from a gl_N form")
    p, N = chi.p, gl.N
    if N % p == 0:
        raise ValueError(f"p={p} divides N={N}")
    if sum(chi(BasisElement("h", k, k)) for k in range(1, N + 1)) % p:
        raise ValueError("χ(identity) must vanish")
    res_gl = Lp_chi(gl, weight, chi, depth)
    chi_sl = chi.restrict_to_sl()
    res_sl = Lp_chi(chi_sl.algebra, weight, chi_sl, depth)
    field_ = PrimeField(p)
    ytilde = field_.reduce(sum(_frac_weight(weight)))
    y = sum(res_gl.module.actions[h] for h in gl.torals) % p if res_gl.module.dim else None
    scalar_ok = y is None or np.array_equal(y, (ytilde * np.eye(res_gl.module.dim, dtype=np.int64)) % p)
    return {
        "dim_gl": res_gl.module.dim,
        "dim_sl": res_sl.module.dim,
        "equal": res_gl.module.dim == res_sl.module.dim,
        "identity_scalar": ytilde,
        "identity_acts_by_scalar": bool(scalar_ok),
    }


def lambda_tilde(weight: Sequence, p: int) -> tuple[int, ...]:
    field_ = PrimeField(p)
    return tuple(field_.reduce(Fraction(w)) for w in weight)


def check_lambda_chi(weight: Sequence, chi: ChiForm) -> bool:
    return is_in_lambda_chi(lambda_tilde(weight, chi.p), chi)


__all__ += ["lambda_tilde", "check_lambda_chi", "lie_algebra"]
