"""Explicit U_χ(g)-modules as matrices over F_p.

A :class:`MatrixModule` stores one action matrix per basis element of g
(matrices act on column vectors).  On top of it sit spinning, sub- and
quotient modules, highest-weight vectors, the maximal submodule of a
cyclic highest-weight module, composition factors (by peeling, and by an
exhaustive oracle), isomorphism certificates, the sign twist, and
X(T)/ℤI-grading checks.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .envelope import BasisElement, ChiForm, LieAlgebra, MonomialAction
from .exactlin import Subspace, kernel, matmul, rank, solve
from .rootdata import canonical_label, simple_coordinates, weight_from_key, weight_key

__all__ = [
    "MatrixModule",
    "CompFactorList",
    "GradedTag",
    "monomials",
    "baby_verma_module",
    "spin",
    "submodule",
    "quotient",
    "weight_spaces",
    "highest_weight_vectors",
    "radical_of_baby_verma",
    "max_submodule_of_cyclic_hw",
    "simple_module",
    "composition_factors",
    "composition_factors_oracle",
    "find_isomorphism",
    "is_module_hom",
    "twist",
    "grade_decompose",
    "tensor",
]


def monomials(D: int, p: int) -> list[tuple[int, ...]]:
    """All exponent tuples in [0, p)^D in the fixed basis order."""
    return list(itertools.product(range(p), repeat=D))


@dataclass(frozen=True, eq=False)
class MatrixModule:
    """A finite-dimensional U_χ(g)-module given by action matrices.

    ``degrees``, when present, gives each basis vector its X(T)-degree
    relative to ``base`` as simple-root coordinates; it is what the
    grading bookkeeping uses.
    """

    algebra: LieAlgebra
    chi: ChiForm
    actions: Mapping[BasisElement, np.ndarray]
    degrees: tuple[tuple[int, ...], ...] | None = None
    base: tuple[int, ...] | None = None

    def __post_init__(self):
        dims = {a.shape for a in self.actions.values()}
        if len(dims) != 1:
            raise ValueError("action matrices have inconsistent shapes")
        (shape,) = dims
        if shape[0] != shape[1]:
            raise ValueError("action matrices must be square")
        if set(self.actions) != set(self.algebra.basis):
            raise ValueError("need one action matrix per basis element")
        for a in self.actions.values():
            a.setflags(write=False)

    @property
    def p(self) -> int:
        return self.chi.p

    @property
    def dim(self) -> int:
        return next(iter(self.actions.values())).shape[0]

    def action(self, x: BasisElement) -> np.ndarray:
        return self.actions[x]

    def act(self, x: BasisElement, v: np.ndarray) -> np.ndarray:
        return matmul(self.actions[x], v, self.p)

    def check_bracket(self) -> bool:
        p = self.p
        for x, y in itertools.combinations(self.algebra.basis, 2):
            lhs = (matmul(self.actions[x], self.actions[y], p) - matmul(self.actions[y], self.actions[x], p)) % p
            rhs = np.zeros_like(lhs)
            for z, c in self.algebra.bracket(x, y).items():
                rhs = (rhs + c * self.actions[z]) % p
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def check_central(self) -> bool:
        p, n = self.p, self.dim
        eye = np.eye(n, dtype=np.int64)
        for x in self.algebra.basis:
            power = _matpow(self.actions[x], p, p)
            rhs = (pow(self.chi(x), p, p) * eye) % p
            for z, c in self.algebra.p_power(x, p).items():
                rhs = (rhs + c * self.actions[z]) % p
            if not np.array_equal(power, rhs):
                return False
        return True

    def is_valid(self) -> bool:
        return self.check_bracket() and self.check_central()

    def weight_table(self) -> dict[tuple, Subspace]:
        return weight_spaces(self)

    def with_chi(self, chi: ChiForm) -> "MatrixModule":
        return MatrixModule(self.algebra, chi, dict(self.actions), self.degrees, self.base)


def _matpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while k:
        if k & 1:
            out = matmul(out, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return out


# ---------------------------------------------------------------- construction


@lru_cache(maxsize=512)
def _baby_verma_cached(algebra: LieAlgebra, chi: ChiForm, weight: tuple) -> MatrixModule:
    p = chi.p
    engine = MonomialAction(algebra, weight, chi=chi)
    basis = monomials(algebra.D, p)
    index = {a: k for k, a in enumerate(basis)}
    n = len(basis)
    actions = {}
    for x in algebra.basis:
        mat = np.zeros((n, n), dtype=np.int64)
        for k, a in enumerate(basis):
            for b, c in engine.apply(x, a).items():
                mat[index[b], k] = c
        actions[x] = mat
    degrees = tuple(simple_coordinates(algebra.monomial_weight_shift(a)) for a in basis)
    base = tuple(int(w) for w in weight)
    return MatrixModule(algebra, chi, actions, degrees, base)


def baby_verma_module(chi: ChiForm, weight: Sequence[int]) -> MatrixModule:
    """Z_χ(λ) in the monomial basis (index order of :func:`monomials`)."""
    wt = tuple(int(w) % chi.p for w in weight)
    return _baby_verma_cached(chi.algebra, chi, wt)


def tensor(M: MatrixModule, N: MatrixModule) -> MatrixModule:
    """M ⊗ N as a U_{χ+χ'}-module; v_i ⊗ w_j has index i·dim N + j."""
    if M.algebra != N.algebra or M.p != N.p:
        raise ValueError("tensor factors live over different algebras")
    p = M.p
    eye_m = np.eye(M.dim, dtype=np.int64)
    eye_n = np.eye(N.dim, dtype=np.int64)
    actions = {x: (np.kron(M.actions[x], eye_n) + np.kron(eye_m, N.actions[x])) % p for x in M.algebra.basis}
    degrees = base = None
    if M.degrees is not None and N.degrees is not None:
        degrees = tuple(tuple(a + b for a, b in zip(dm, dn)) for dm in M.degrees for dn in N.degrees)
        base = tuple(a + b for a, b in zip(M.base, N.base))
    return MatrixModule(M.algebra, M.chi + N.chi, actions, degrees, base)


# ---------------------------------------------------------------- subspaces


def _spin_matrices(mats: Sequence[np.ndarray], vectors, p: int, n: int) -> Subspace:
    """Smallest subspace containing ``vectors`` and stable under every matrix."""
    current = Subspace.from_vectors(np.asarray(vectors, dtype=np.int64).reshape(-1, n), p, n)
    frontier = current.basis
    while frontier.shape[0]:
        images = np.vstack([matmul(frontier, m.T, p) for m in mats])
        images = current.reduce(images)
        images = images[images.any(axis=1)]
        if not images.shape[0]:
            break
        new = Subspace.from_vectors(images, p, n)
        current = current + new
        frontier = new.basis
    return current


def spin(M: MatrixModule, vectors) -> Subspace:
    """U_χ(g)-submodule generated by the given vectors (rows or a single vector)."""
    return _spin_matrices(list(M.actions.values()), vectors, M.p, M.dim)


def submodule(M: MatrixModule, S: Subspace) -> MatrixModule:
    """Restriction to an action-stable subspace, in the echelon basis of S."""
    p = M.p
    actions = {}
    for x, a in M.actions.items():
        img = matmul(S.basis, a.T, p)  # rows: images of basis vectors
        if S.dim and S.reduce(img).any():
            raise ValueError("subspace is not a submodule")
        actions[x] = img[:, S.pivots].T.copy() if S.dim else np.zeros((0, 0), dtype=np.int64)
    return MatrixModule(M.algebra, M.chi, actions)


def quotient(M: MatrixModule, S: Subspace) -> MatrixModule:
    """M/S with basis the images of the unit vectors outside S's pivots."""
    p = M.p
    comp = S.complement_indices()
    actions = {}
    for x, a in M.actions.items():
        if S.dim and S.reduce(matmul(S.basis, a.T, p)).any():
            raise ValueError("subspace is not a submodule")
        cols = a[:, comp].T  # images of complement vectors, as rows
        actions[x] = S.quotient_coordinates(cols).T.copy()
    return MatrixModule(M.algebra, M.chi, actions)


# ---------------------------------------------------------------- weights


def weight_spaces(M: MatrixModule) -> dict[tuple, Subspace]:
    """Joint eigenspaces of the torals, keyed by their eigenvalue tuples.

    Keys are ε-values (gl) or h-values (sl), matching
    :func:`babyverma.rootdata.weight_key`.
    """
    p, n = M.p, M.dim
    pieces: list[tuple[tuple, Subspace]] = [((), Subspace.full(n, p))]
    for h in M.algebra.torals:
        a = M.actions[h]
        nxt = []
        for key, W in pieces:
            # restrict h to W and split by eigenvalue
            hw = matmul(W.basis, a.T, p)[:, W.pivots]  # row k = coords of h·w_k
            found = 0
            for c in range(p):
                sub = kernel((hw.T - c * np.eye(W.dim, dtype=np.int64)) % p, p)
                if sub.dim:
                    vecs = matmul(sub.basis, W.basis, p)
                    nxt.append((key + (c,), Subspace.from_vectors(vecs, p, n)))
                    found += sub.dim
            if found != W.dim:
                raise ValueError("torals are not diagonalizable over F_p on this module")
        pieces = nxt
    return dict(pieces)


def highest_weight_vectors(M: MatrixModule) -> list[tuple[tuple, Subspace]]:
    """Per weight, the vectors killed by every simple raising operator."""
    if M.dim == 0:
        return []
    p = M.p
    raising = [BasisElement("e", i, i + 1) for i in range(1, M.algebra.N)]
    stack = np.vstack([M.actions[e] for e in raising]) if raising else np.zeros((0, M.dim), dtype=np.int64)
    out = []
    for key, W in sorted(weight_spaces(M).items()):
        if raising:
            coeffs = kernel(matmul(stack, W.basis.T, p), p)
            if not coeffs.dim:
                continue
            hw = Subspace.from_vectors(matmul(coeffs.basis, W.basis, p), p, M.dim)
        else:
            hw = W
        out.append((key, hw))
    return out


def _weight_of_vector(M: MatrixModule, v: np.ndarray) -> tuple:
    vals = []
    for h in M.algebra.torals:
        hv = M.act(h, v)
        nz = np.flatnonzero(v)
        c = int(hv[nz[0]] * pow(int(v[nz[0]]), -1, M.p) % M.p)
        if not np.array_equal(hv, (c * v) % M.p):
            raise ValueError("not a weight vector")
        vals.append(c)
    return tuple(vals)


def _is_b_eigenvector(M: MatrixModule, v: np.ndarray) -> bool:
    try:
        _weight_of_vector(M, v)
    except ValueError:
        return False
    return all(not M.act(x, v).any() for x in M.algebra.positives)


# ---------------------------------------------------------------- radicals


def _levi_roots(algebra: LieAlgebra, I: Iterable[int]) -> list[int]:
    I = set(I)
    out = []
    for r, (i, j) in enumerate(algebra.roots.positive_roots):
        if all(k in I for k in range(i, j)):
            out.append(r)
    return out


def radical_of_baby_verma(chi: ChiForm, weight: Sequence[int]) -> Subspace:
    """Unique maximal submodule of Z_χ(λ) for χ of standard Levi form.

    Z_χ(λ) is graded by X(T)/ℤI and its degree-0 piece is the span of the
    monomials using only Levi roots, a baby Verma module for the Levi
    subalgebra, which is simple because χ is regular nilpotent there.  So
    the radical is the largest submodule inside the kernel of the
    projection onto that piece, computed by spinning the projection's rows
    under the transposed actions.
    """
    I = chi.levi_set()
    if I is None:
        raise ValueError("maximal submodule computation needs χ of standard Levi form")
    return _radical_cached(chi, tuple(int(w) % chi.p for w in weight))


@lru_cache(maxsize=512)
def _radical_cached(chi: ChiForm, weight: tuple) -> Subspace:
    Z = baby_verma_module(chi, weight)
    p, n = chi.p, Z.dim
    levi = set(_levi_roots(chi.algebra, chi.levi_set()))
    top = [k for k, a in enumerate(monomials(chi.algebra.D, p)) if all(ar == 0 for r, ar in enumerate(a) if r not in levi)]
    rows = np.zeros((len(top), n), dtype=np.int64)
    rows[np.arange(len(top)), top] = 1
    dual = _spin_matrices([a.T for a in Z.actions.values()], rows, p, n)
    return kernel(dual.basis, p)


def _generator_images(M: MatrixModule, v: np.ndarray) -> np.ndarray:
    """Matrix whose columns are f^a v for a in monomial order."""
    alg, p = M.algebra, M.p
    cols = {(0,) * alg.D: v % p}
    # apply e_{-γ_1} first, then e_{-γ_2}, ... as in the monomial convention
    for r in range(alg.D):
        a_neg = M.actions[alg.negatives[r]]
        nxt = {}
        for a, w in cols.items():
            cur = w
            for k in range(p):
                b = list(a)
                b[r] = k
                nxt[tuple(b)] = cur
                if k < p - 1:
                    cur = matmul(a_neg, cur, p)
        cols = nxt
    return np.stack([cols[a] for a in monomials(alg.D, p)], axis=1)


def _vector_weight(M: MatrixModule, v: np.ndarray) -> tuple[int, ...]:
    """ε-coordinates (mod p) of the weight of a weight vector."""
    key = _weight_of_vector(M, v)
    return tuple(x % M.p for x in weight_from_key(key, M.algebra.kind, M.algebra.N))


def max_submodule_of_cyclic_hw(M: MatrixModule, z: np.ndarray) -> Subspace:
    """Unique maximal submodule of the submodule generated by a b-eigenvector z.

    Uses the surjection ψ: Z_χ(μ) → U·z, f^a z_μ ↦ f^a z; the answer is
    ψ(Rad Z_χ(μ)).  Requires χ of standard Levi form.
    """
    z = np.asarray(z, dtype=np.int64) % M.p
    if not z.any() or not _is_b_eigenvector(M, z):
        raise ValueError("generator must be a nonzero highest-weight vector")
    mu = _vector_weight(M, z)
    psi = _generator_images(M, z)
    rad = radical_of_baby_verma(M.chi, mu)
    if not rad.dim:
        return Subspace.zero(M.dim, M.p)
    return Subspace.from_vectors(matmul(rad.basis, psi.T, M.p), M.p, M.dim)


def simple_module(chi: ChiForm, weight: Sequence[int]) -> MatrixModule:
    """L_χ(λ) = Z_χ(λ)/Rad, in the quotient basis (z is basis vector 0)."""
    Z = baby_verma_module(chi, weight)
    return quotient(Z, radical_of_baby_verma(chi, weight))


# ---------------------------------------------------------------- composition factors


@dataclass(frozen=True)
class CompFactorList:
    """Multiset of simple factors: entries (label, multiplicity, dim)."""

    entries: tuple[tuple[tuple, int, int], ...]

    @classmethod
    def from_counter(cls, counter: Mapping[tuple[tuple, int], int]) -> "CompFactorList":
        return cls(tuple(sorted((lab, m, d) for (lab, d), m in counter.items() if m)))

    @property
    def total_dim(self) -> int:
        return sum(m * d for _, m, d in self.entries)

    def multiplicity(self, label: tuple) -> int:
        return sum(m for lab, m, _ in self.entries if lab == label)

    def counter(self) -> Counter:
        return Counter({lab: m for lab, m, _ in self.entries})

    def dims(self) -> dict[tuple, int]:
        return {lab: d for lab, _, d in self.entries}

    def __len__(self) -> int:
        return sum(m for _, m, _ in self.entries)

    def as_json(self) -> list:
        return [{"label": list(lab), "multiplicity": m, "dim": d} for lab, m, d in self.entries]


def factor_label(chi: ChiForm, key: tuple) -> tuple:
    """Canonical label of L_χ(μ) from its weight key."""
    alg = chi.algebra
    I = chi.levi_set()
    if I is None:
        return tuple(key)
    wt = weight_from_key(key, alg.kind, alg.N)
    return canonical_label(wt, I, chi.p, alg.kind)


def composition_factors(M: MatrixModule, rng: np.random.Generator | None = None) -> CompFactorList:
    """Composition factors by peeling off simple heads of cyclic hw submodules.

    With ``rng`` the highest-weight vector is chosen at random at each step
    (the answer must not change; tests rely on that).
    """
    p = M.p
    counter: Counter = Counter()
    stack = [M]
    while stack:
        X = stack.pop()
        if X.dim == 0:
            continue
        hws = highest_weight_vectors(X)
        if rng is None:
            key, H = hws[0]
            v = H.basis[0]
        else:
            key, H = hws[int(rng.integers(len(hws)))]
            v = np.zeros(X.dim, dtype=np.int64)
            while not v.any():
                v = matmul(rng.integers(0, p, H.dim), H.basis, p)
        S = spin(X, v)
        R = max_submodule_of_cyclic_hw(X, v)
        counter[(factor_label(X.chi, key), S.dim - R.dim)] += 1
        if R.dim:
            stack.append(submodule(X, R))
        if S.dim < X.dim:
            stack.append(quotient(X, S))
    return CompFactorList.from_counter(counter)


def _projective_points(W: Subspace) -> Iterable[np.ndarray]:
    """One representative per line of W (leading coefficient 1)."""
    p, d = W.p, W.dim
    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            coeffs = np.zeros(d, dtype=np.int64)
            coeffs[lead] = 1
            coeffs[lead + 1 :] = tail
            yield matmul(coeffs, W.basis, p)


def composition_factors_oracle(M: MatrixModule, max_lines: int = 20000) -> CompFactorList:
    """Independent composition series by exhaustive spinning.

    Every line in every weight space is spun once.  A composition series is
    then grown by always adjoining a smallest submodule of the form
    M_i + U·v; minimality forces each quotient to be simple, because any
    submodule strictly between would contain a weight vector generating
    something smaller.
    """
    p, n = M.p, M.dim
    spaces = weight_spaces(M)
    lines = sum((p ** W.dim - 1) // (p - 1) for W in spaces.values())
    if lines > max_lines:
        raise ValueError(f"oracle would enumerate {lines} lines; refusing")
    spins = []
    seen = set()
    for W in spaces.values():
        for v in _projective_points(W):
            S = spin(M, v)
            if S not in seen:
                seen.add(S)
                spins.append(S)
    counter: Counter = Counter()
    current = Subspace.zero(n, p)
    while current.dim < n:
        best = None
        for S in spins:
            if current.contains_subspace(S):
                continue
            T = current + S
            if best is None or T.dim < best.dim:
                best = T
        layer = quotient(submodule(M, best), _relative(current, best))
        (key, _), *_ = highest_weight_vectors(layer)
        counter[(factor_label(M.chi, key), best.dim - current.dim)] += 1
        current = best
    return CompFactorList.from_counter(counter)


def _relative(inner: Subspace, outer: Subspace) -> Subspace:
    """``inner`` expressed in the echelon coordinates of ``outer``."""
    if not inner.dim:
        return Subspace.zero(outer.dim, outer.p)
    return Subspace.from_vectors(inner.basis[:, outer.pivots], outer.p, outer.dim)


# ---------------------------------------------------------------- isomorphisms


def is_module_hom(psi: np.ndarray, M: MatrixModule, N: MatrixModule) -> bool:
    """Check ψ·A_M(x) = A_N(x)·ψ for every basis element x."""
    p = M.p
    return all(
        np.array_equal(matmul(psi, M.actions[x], p), matmul(N.actions[x], psi, p)) for x in M.algebra.basis
    )


def _word_basis(M: MatrixModule, u: np.ndarray):
    """Spanning tree of U·u: list of (parent index, generator) and the vectors."""
    p, n = M.p, M.dim
    vecs = [u % p]
    tree: list[tuple[int, BasisElement | None]] = [(-1, None)]
    span = Subspace.from_vectors(vecs[0], p, n)
    k = 0
    while k < len(vecs):
        for x in M.algebra.basis:
            w = M.act(x, vecs[k])
            if not span.contains(w):
                vecs.append(w)
                tree.append((k, x))
                span = span + Subspace.from_vectors(w, p, n)
        k += 1
    return tree, np.stack(vecs, axis=1)


def _intertwiner_from(M: MatrixModule, N: MatrixModule, u: np.ndarray, w: np.ndarray) -> np.ndarray | None:
    p = M.p
    tree, basis_m = _word_basis(M, u)
    if basis_m.shape[1] != M.dim:
        return None
    imgs = [w % p]
    for parent, x in tree[1:]:
        imgs.append(N.act(x, imgs[parent]))
    images = np.stack(imgs, axis=1)
    # ψ · basis_m = images  ⇒  ψ = images · basis_m^{-1}
    psi_t = solve(basis_m.T, images.T, p)
    if psi_t is None:
        return None
    psi = psi_t.T % p
    if not is_module_hom(psi, M, N) or rank(psi, p) != N.dim:
        return None
    return psi


def find_isomorphism(
    M: MatrixModule,
    N: MatrixModule,
    source: np.ndarray | None = None,
    target: np.ndarray | None = None,
    tries: int = 16,
    seed: int = 0,
) -> np.ndarray | None:
    """An explicit module isomorphism ψ: M → N, or None.

    Both modules should be cyclic, generated by highest-weight vectors of
    the same weight.  Optional ``source``/``target`` pin the generators.
    Candidates are tried until one yields a verified equivariant bijection.
    """
    if M.algebra != N.algebra or M.chi != N.chi or M.dim != N.dim:
        return None
    if M.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    p = M.p
    rng = np.random.default_rng(seed)

    def candidates(X: MatrixModule, pinned, key=None):
        if pinned is not None:
            yield key, np.asarray(pinned, dtype=np.int64) % p
            return
        for k, H in highest_weight_vectors(X):
            if key is not None and k != key:
                continue
            for row in H.basis:
                yield k, row
            for _ in range(tries if H.dim > 1 else 0):
                v = matmul(rng.integers(0, p, H.dim), H.basis, p)
                if v.any():
                    yield k, v

    for key, w in candidates(N, target):
        if target is not None:
            try:
                key = _weight_of_vector(N, w)
            except ValueError:
                return None
        if spin(N, w).dim != N.dim:
            continue
        for _, u in candidates(M, source, key):
            if source is not None:
                try:
                    if _weight_of_vector(M, u) != key:
                        return None
                except ValueError:
                    return None
            psi = _intertwiner_from(M, N, u, w)
            if psi is not None:
                return psi
        if target is not None:
            break
    return None


# ---------------------------------------------------------------- twist


def twist(M: MatrixModule, signs: Sequence[int] | None = None) -> MatrixModule:
    """Pull back along Ad(t), t = diag(t_1, ..., t_N) with t_i = ±1.

    The default ``t_i = (-1)^{i+1}`` turns a U_χ-module with χ of standard
    Levi form into a U_{-χ}-module.
    """
    p, N = M.p, M.algebra.N
    if p == 2:
        raise ValueError("the twist needs p odd")
    t = list(signs) if signs is not None else [(-1) ** i for i in range(N)]
    actions = {}
    for x, a in M.actions.items():
        s = t[x.i - 1] * t[x.j - 1] if x.kind == "e" else 1
        actions[x] = (s * a) % p
    chi_vals = []
    for x, v in M.chi.values:
        s = t[x.i - 1] * t[x.j - 1] if x.kind == "e" else 1
        chi_vals.append((x, s * v))
    chi = ChiForm(M.algebra, p, tuple(chi_vals))
    return MatrixModule(M.algebra, chi, actions, M.degrees, M.base)


# ---------------------------------------------------------------- grading


@dataclass(frozen=True)
class GradedTag:
    """Coset in X(T)/ℤI of each basis vector, relative to a base weight."""

    levi_set: frozenset[int]
    base: tuple[int, ...]
    cosets: tuple[tuple[int, ...], ...]

    def pieces(self) -> dict[tuple[int, ...], list[int]]:
        out: dict[tuple[int, ...], list[int]] = {}
        for k, c in enumerate(self.cosets):
            out.setdefault(c, []).append(k)
        return out


def _project(coords: Sequence[int], I: frozenset[int]) -> tuple[int, ...]:
    return tuple(c for j, c in enumerate(coords, start=1) if j not in I)


def grade_decompose(M: MatrixModule, I: Iterable[int], base: Sequence[int] | None = None) -> GradedTag:
    """Attach X(T)/ℤI cosets to the basis and verify every action shifts them correctly."""
    if M.degrees is None:
        raise ValueError("module carries no weight-basis degree data")
    I = frozenset(I)
    base = tuple(base) if base is not None else M.base
    cosets = tuple(_project(d, I) for d in M.degrees)
    p = M.p
    for x, a in M.actions.items():
        shift = _project(M.algebra.shift(x), I)
        rows, cols = np.nonzero(a % p)
        for r, c in zip(rows, cols):
            expected = tuple(s + t for s, t in zip(cosets[c], shift))
            if cosets[r] != expected:
                raise ValueError(f"action of {x} violates the X(T)/ℤI grading")
    return GradedTag(I, base, cosets)
