"""Pyramids, fillings and the minimal-dimension machinery for gl_N.

A partition ``p_1 <= ... <= p_r`` gives a left-justified pyramid whose rows
are listed top-down, shortest first.  Boxes are labelled ``1..N`` row by
row, left to right.  A filling is a tuple of values indexed by label.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .charzero import UndecidedError, head_surjection_check, lambda_tilde, Lp_chi
from .envelope import ChiForm, lie_algebra
from .exactlin import kernel
from .modrep import simple_module
from .rootdata import WeylElement, rho

__all__ = [
    "Pyramid",
    "build_pyramid",
    "e_pi",
    "chi_pi",
    "row_equivalent",
    "column_strict",
    "row_standard",
    "column_connected",
    "lift_column_connected",
    "rs_shape",
    "CentralizerDims",
    "centralizer_dims",
    "centralizer_oracle",
    "sigma_permutation",
    "sigma_check",
    "row_canonical",
    "column_connected_representative",
    "min_dim_classification",
    "min_dim_labels_by_modrep",
    "simple_label_weight",
    "PipelineReport",
    "theorem_pipeline",
    "ENUMERATION_LIMIT",
]

ENUMERATION_LIMIT = 200_000


@dataclass(frozen=True)
class Pyramid:
    partition: tuple[int, ...]

    def __post_init__(self):
        part = tuple(int(x) for x in self.partition)
        if not part or any(x <= 0 for x in part):
            raise ValueError(f"{self.partition} is not a partition")
        if list(part) != sorted(part):
            raise ValueError("row lengths must be weakly increasing top-down")
        object.__setattr__(self, "partition", part)

    @property
    def N(self) -> int:
        return sum(self.partition)

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        out, label = [], 1
        for length in self.partition:
            out.append(tuple(range(label, label + length)))
            label += length
        return tuple(out)

    @cached_property
    def _position(self) -> dict[int, tuple[int, int]]:
        return {lab: (r, c) for r, row in enumerate(self.rows, 1) for c, lab in enumerate(row, 1)}

    def row(self, i: int) -> int:
        return self._position[i][0]

    def col(self, i: int) -> int:
        return self._position[i][1]

    def box(self, r: int, c: int) -> int | None:
        if 1 <= r <= len(self.rows) and 1 <= c <= len(self.rows[r - 1]):
            return self.rows[r - 1][c - 1]
        return None

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        """Labels of each column, top to bottom."""
        width = max(self.partition)
        return tuple(
            tuple(row[c] for row in self.rows if len(row) > c) for c in range(width)
        )

    def vertical_pairs(self) -> list[tuple[int, int]]:
        """(i, j) with box i directly above box j."""
        return [(col[k], col[k + 1]) for col in self.columns for k in range(len(col) - 1)]

    def horizontal_pairs(self) -> list[tuple[int, int]]:
        """(i, i+1) for horizontally adjacent boxes."""
        return [(row[k], row[k + 1]) for row in self.rows for k in range(len(row) - 1)]

    def levi_set(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.horizontal_pairs())

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.partition)) + ")"


def build_pyramid(partition: Iterable[int]) -> Pyramid:
    return Pyramid(tuple(partition))


def e_pi(pi: Pyramid) -> np.ndarray:
    e = np.zeros((pi.N, pi.N), dtype=np.int64)
    for i, j in pi.horizontal_pairs():
        e[i - 1, j - 1] = 1
    return e


def chi_pi(pi: Pyramid, p: int, kind: str = "gl") -> ChiForm:
    """Trace-form image of e_π: χ(e_{i+1,i}) = 1 for adjacent boxes i, i+1."""
    chi = ChiForm.levi(lie_algebra(pi.N, kind), p, sorted(pi.levi_set()))
    if not chi.is_standard_levi():
        raise AssertionError("χ_π must have standard Levi form")
    return chi


def _check_len(pi: Pyramid, A: Sequence) -> None:
    if len(A) != pi.N:
        raise ValueError(f"filling needs {pi.N} values, got {len(A)}")


def row_equivalent(pi: Pyramid, A: Sequence, B: Sequence, p: int | None = None) -> bool:
    _check_len(pi, A)
    _check_len(pi, B)
    red = (lambda x: x % p) if p else (lambda x: x)
    return all(
        sorted(red(A[i - 1]) for i in row) == sorted(red(B[i - 1]) for i in row) for row in pi.rows
    )


def column_strict(pi: Pyramid, A: Sequence) -> bool:
    """Entries strictly increase going up each column."""
    _check_len(pi, A)
    return all(A[i - 1] > A[j - 1] for i, j in pi.vertical_pairs())


def row_standard(pi: Pyramid, A: Sequence) -> bool:
    _check_len(pi, A)
    return all(A[i - 1] <= A[j - 1] for i, j in pi.horizontal_pairs())


def column_connected(pi: Pyramid, A: Sequence, p: int | None = None) -> bool:
    """Each box holds one more than the box directly below it (mod p if given)."""
    _check_len(pi, A)
    for i, j in pi.vertical_pairs():
        d = A[i - 1] - A[j - 1] - 1
        if (d % p if p else d) != 0:
            return False
    return True


def lift_column_connected(pi: Pyramid, A: Sequence[int], p: int) -> tuple[int, ...]:
    """Canonical integer lift of a column-connected 𝔽_p filling.

    The first column is anchored at the least nonnegative residue of its top
    entry; each later column is the least lift whose bottom entry exceeds
    every entry of the previous column.
    """
    _check_len(pi, A)
    if not column_connected(pi, A, p):
        raise ValueError("filling is not column-connected")
    out = [0] * pi.N
    prev_max = None
    for col in pi.columns:
        top = col[0]
        if prev_max is None:
            base = A[top - 1] % p
            vals = [base - k for k in range(len(col))]
        else:
            bottom_res = A[col[-1] - 1] % p
            x = prev_max + 1 + ((bottom_res - prev_max - 1) % p)
            vals = [x + len(col) - 1 - k for k in range(len(col))]
        for lab, v in zip(col, vals):
            out[lab - 1] = v
        prev_max = max(vals)
    return tuple(out)


def rs_shape(word: Sequence[int]) -> tuple[int, ...]:
    """Shape of the Robinson–Schensted insertion tableau, longest row first."""
    if len(set(word)) != len(word):
        raise ValueError("RS insertion needs distinct entries")
    rows: list[list[int]] = []
    for x in word:
        for row in rows:
            k = bisect.bisect_right(row, x)
            if k == len(row):
                row.append(x)
                break
            row[k], x = x, row[k]
        else:
            rows.append([x])
    return tuple(len(r) for r in rows)


@dataclass(frozen=True)
class CentralizerDims:
    gl_centralizer: int
    b_centralizer: int
    orbit: int
    min_dim: int

    def as_dict(self) -> dict[str, int]:
        return {
            "dim_gl_centralizer": self.gl_centralizer,
            "dim_b_centralizer": self.b_centralizer,
            "dim_orbit": self.orbit,
            "min_dim": self.min_dim,
        }


def centralizer_oracle(pi: Pyramid, p: int) -> tuple[int, int]:
    """dim of {Z : [Z, e_π] = 0} over 𝔽_p, in gl_N and in upper triangular matrices."""
    N = pi.N
    e = e_pi(pi)
    # column k of the system is [E_k, e_π] for the k-th matrix unit
    cols = []
    for a in range(N):
        for b in range(N):
            Z = np.zeros((N, N), dtype=np.int64)
            Z[a, b] = 1
            cols.append((Z @ e - e @ Z).ravel())
    system = np.array(cols, dtype=np.int64).T % p
    gl = kernel(system, p).dim
    upper = [a * N + b for a in range(N) for b in range(a, N)]
    b = kernel(system[:, upper], p).dim
    return gl, b


def centralizer_dims(pi: Pyramid, p: int, oracle: bool | None = None) -> CentralizerDims:
    part = pi.partition
    gl = sum(min(x, y) for x in part for y in part)
    b = sum(min(part[i], part[j]) for i in range(len(part)) for j in range(i + 1))
    orbit = pi.N**2 - gl
    if orbit % 2 or 2 * b != gl + pi.N:
        raise AssertionError(f"centralizer formula inconsistent for {pi}")
    if oracle is None:
        oracle = pi.N <= 9
    if oracle:
        o_gl, o_b = centralizer_oracle(pi, p)
        if (o_gl, o_b) != (gl, b):
            raise AssertionError(f"formula ({gl}, {b}) disagrees with kernel oracle ({o_gl}, {o_b})")
    return CentralizerDims(gl, b, orbit, p ** (orbit // 2))


def sigma_permutation(A_hat: Sequence[int]) -> WeylElement:
    """σ = w₀w⁻¹ where w⁻¹(j) is the rank of â_j in decreasing order."""
    if len(set(A_hat)) != len(A_hat):
        raise ValueError("lifted filling must have distinct entries")
    N = len(A_hat)
    decreasing = sorted(A_hat, reverse=True)
    w_inv = WeylElement(tuple(decreasing.index(a) + 1 for a in A_hat))
    return WeylElement.longest(N) * w_inv


def sigma_check(pi: Pyramid, A_hat: Sequence[int]) -> bool:
    """Ad(σ̇)e_π is strictly upper triangular (checked on indices and on the matrix)."""
    _check_len(pi, A_hat)
    sigma = sigma_permutation(A_hat)
    by_index = all(sigma(i) < sigma(j) for i, j in pi.horizontal_pairs())
    S = np.zeros((pi.N, pi.N), dtype=np.int64)
    for j in range(1, pi.N + 1):
        S[sigma(j) - 1, j - 1] = 1
    conj = S @ e_pi(pi) @ S.T
    by_matrix = not np.tril(conj).any()
    if by_index != by_matrix:
        raise AssertionError("index and matrix forms of the σ-check disagree")
    return by_index


def row_canonical(pi: Pyramid, A: Sequence[int], p: int) -> tuple[tuple[int, ...], ...]:
    """Row-equivalence class key: each row's residues sorted."""
    _check_len(pi, A)
    return tuple(tuple(sorted(A[i - 1] % p for i in row)) for row in pi.rows)


def column_connected_representative(pi: Pyramid, A: Sequence[int], p: int) -> tuple[int, ...] | None:
    """A row permutation of A that is column-connected mod p, if any."""
    _check_len(pi, A)
    rows = [[A[i - 1] % p for i in row] for row in pi.rows]
    for choice in itertools.product(*(sorted(set(itertools.permutations(r))) for r in rows)):
        B = tuple(x for r in choice for x in r)
        if column_connected(pi, B, p):
            return B
    return None


def _all_fillings(pi: Pyramid, p: int):
    if p**pi.N > ENUMERATION_LIMIT:
        raise ValueError(f"p^N = {p}^{pi.N} exceeds the enumeration bound {ENUMERATION_LIMIT}")
    return itertools.product(range(p), repeat=pi.N)


def min_dim_classification(pi: Pyramid, p: int) -> frozenset[tuple[tuple[int, ...], ...]]:
    """Row-equivalence classes of fillings with a column-connected row permutation."""
    out = set()
    for A in _all_fillings(pi, p):
        key = row_canonical(pi, A, p)
        if key not in out and column_connected_representative(pi, A, p) is not None:
            out.add(key)
    return frozenset(out)


def simple_label_weight(A: Sequence[int], p: int) -> tuple[int, ...]:
    """The mod-p weight λ_A − ρ labelling the simple module attached to A."""
    r = rho(len(A))
    return tuple((a - x) % p for a, x in zip(A, r))


def min_dim_labels_by_modrep(pi: Pyramid, p: int) -> tuple[frozenset, dict[tuple[int, ...], int]]:
    """Classes whose simple module L_{χ_π}(λ_A − ρ) has the minimal dimension.

    Also returns dim L for every filling so callers can check divisibility.
    """
    chi = chi_pi(pi, p)
    target = centralizer_dims(pi, p).min_dim
    dims: dict[tuple[int, ...], int] = {}
    cache: dict[tuple[int, ...], int] = {}
    for A in _all_fillings(pi, p):
        wt = simple_label_weight(A, p)
        if wt not in cache:
            cache[wt] = simple_module(chi, wt).dim
        dims[A] = cache[wt]
    labels = frozenset(row_canonical(pi, A, p) for A, d in dims.items() if d == target)
    return labels, dims


@dataclass(frozen=True)
class PipelineReport:
    partition: tuple[int, ...]
    p: int
    label: tuple[int, ...]
    lift: tuple[int, ...]
    weight: tuple[int, ...]
    dim_Lp_chi: int | None
    dim_target: int | None
    min_dim: int
    surjection: bool
    undecided: str | None = None
    part1: str = "not checked"
    part2: str = "not checked"

    @property
    def ok(self) -> bool:
        return self.undecided is None and bool(self.dim_Lp_chi) and self.surjection

    def as_json(self) -> dict:
        return {
            "partition": list(self.partition),
            "p": self.p,
            "label": list(self.label),
            "lift": list(self.lift),
            "weight": list(self.weight),
            "dim_Lp_chi": self.dim_Lp_chi,
            "dim_target": self.dim_target,
            "min_dim": self.min_dim,
            "surjection": self.surjection,
            "undecided": self.undecided,
            "part1": self.part1,
            "part2": self.part2,
            "ok": self.ok,
        }


def theorem_pipeline(pi: Pyramid, p: int, A: Sequence[int], depth: int | None = None) -> PipelineReport:
    """Lift A, build L_p^{χ_π}(λ_Â − ρ) on gl_N and exhibit its surjection onto L_{χ_π}(A)."""
    rep = column_connected_representative(pi, A, p)
    if rep is None:
        raise ValueError(f"{tuple(A)} is not a minimal label for {pi} at p={p}")
    A_hat = lift_column_connected(pi, rep, p)
    weight = tuple(a - r for a, r in zip(A_hat, rho(pi.N)))
    chi = chi_pi(pi, p)
    min_dim = centralizer_dims(pi, p).min_dim
    common = dict(partition=pi.partition, p=p, label=tuple(rep), lift=A_hat, weight=weight, min_dim=min_dim)
    try:
        res = Lp_chi(chi.algebra, weight, chi, depth)
    except UndecidedError as err:
        return PipelineReport(**common, dim_Lp_chi=None, dim_target=None, surjection=False, undecided=str(err))
    if res.module.dim == 0:
        return PipelineReport(**common, dim_Lp_chi=0, dim_target=None, surjection=False)
    head = head_surjection_check(res, chi, lambda_tilde(weight, p))
    return PipelineReport(
        **common, dim_Lp_chi=res.module.dim, dim_target=head.target.dim, surjection=head.ok
    )
