"""Type-A roots, weights and the (dot) action of the symmetric group.

Weights are tuples of ε-coordinates.  For ``sl`` two weights are the same
when all consecutive differences agree; :func:`weight_key` produces the
canonical comparison key for either kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

__all__ = [
    "RootDatumA",
    "root_datum",
    "height",
    "rho",
    "WeylElement",
    "dot_action",
    "weight_key",
    "weight_from_key",
    "levi_blocks",
    "levi_reflections",
    "linkage_orbit",
    "canonical_label",
    "simple_coordinates",
]

TIEBREAKS: dict[str, Callable[[tuple[int, int]], tuple]] = {
    "lex": lambda r: (r[1] - r[0], r[0], r[1]),
    "revlex": lambda r: (r[1] - r[0], -r[0], -r[1]),
}


def height(root: tuple[int, int]) -> int:
    i, j = root
    if i >= j:
        raise ValueError(f"{root} is not a positive root")
    return j - i


@dataclass(frozen=True)
class RootDatumA:
    N: int
    kind: str
    positive_roots: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.kind not in ("gl", "sl"):
            raise ValueError(f"kind must be 'gl' or 'sl', not {self.kind!r}")
        if self.N < 1:
            raise ValueError("N must be positive")
        hts = [height(r) for r in self.positive_roots]
        if hts != sorted(hts) or len(self.positive_roots) != self.D:
            raise ValueError("positive roots must be a height-monotone list of all pairs i<j")

    @property
    def D(self) -> int:
        return self.N * (self.N - 1) // 2

    @property
    def simple_roots(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, i + 1) for i in range(1, self.N))

    def heights(self) -> tuple[int, ...]:
        return tuple(height(r) for r in self.positive_roots)

    def root_vector(self, root: tuple[int, int]) -> tuple[int, ...]:
        i, j = root
        v = [0] * self.N
        v[i - 1] += 1
        v[j - 1] -= 1
        return tuple(v)


def root_datum(N: int, kind: str = "sl", tiebreak: str = "lex") -> RootDatumA:
    """Positive roots ordered by height; ``tiebreak`` refines equal heights."""
    key = TIEBREAKS[tiebreak]
    roots = sorted(combinations(range(1, N + 1), 2), key=key)
    return RootDatumA(N, kind, tuple(roots))


def rho(N: int) -> tuple[int, ...]:
    return tuple(-k for k in range(1, N + 1))


@dataclass(frozen=True)
class WeylElement:
    """Permutation of ``1..N`` stored as the tuple ``(w(1), ..., w(N))``."""

    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError(f"{self.perm} is not a permutation")

    @classmethod
    def identity(cls, N: int) -> "WeylElement":
        return cls(tuple(range(1, N + 1)))

    @classmethod
    def transposition(cls, N: int, i: int, j: int) -> "WeylElement":
        perm = list(range(1, N + 1))
        perm[i - 1], perm[j - 1] = j, i
        return cls(tuple(perm))

    @classmethod
    def longest(cls, N: int) -> "WeylElement":
        return cls(tuple(range(N, 0, -1)))

    @property
    def N(self) -> int:
        return len(self.perm)

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(tuple(self(other(i)) for i in range(1, self.N + 1)))

    def inverse(self) -> "WeylElement":
        inv = [0] * self.N
        for i, wi in enumerate(self.perm, start=1):
            inv[wi - 1] = i
        return WeylElement(tuple(inv))

    def act(self, weight: Sequence) -> tuple:
        """Linear action: the coefficient of ε_i moves to ε_{w(i)}."""
        out = [0] * self.N
        for i, c in enumerate(weight, start=1):
            out[self(i) - 1] = c
        return tuple(out)


def dot_action(w: WeylElement, weight: Sequence, p: int | None = None) -> tuple:
    r = rho(len(weight))
    shifted = w.act([x + y for x, y in zip(weight, r)])
    out = tuple(x - y for x, y in zip(shifted, r))
    return tuple(x % p for x in out) if p is not None else out


def _residue(x, p: int) -> int:
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"{x} is not {p}-integral")
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


def weight_key(weight: Sequence, kind: str, p: int | None = None) -> tuple:
    """Canonical comparison key: ε-coordinates for gl, consecutive differences for sl."""
    vals = [_residue(x, p) for x in weight] if p is not None else list(weight)
    if kind == "sl":
        diffs = [a - b for a, b in zip(vals, vals[1:])]
        return tuple(d % p for d in diffs) if p is not None else tuple(diffs)
    return tuple(vals)


def weight_from_key(key: Sequence, kind: str, N: int) -> tuple:
    """A representative weight (ε-coordinates) for a key; for sl the last coordinate is 0."""
    if kind == "gl":
        return tuple(key)
    if len(key) != N - 1:
        raise ValueError(f"sl key must have {N - 1} entries")
    vals = [0] * N
    for k in range(N - 2, -1, -1):
        vals[k] = vals[k + 1] + key[k]
    return tuple(vals)


def simple_coordinates(vec: Sequence[int]) -> tuple[int, ...]:
    """Express a root-lattice element (ε-coordinates summing to 0) in simple roots."""
    if sum(vec) != 0:
        raise ValueError(f"{tuple(vec)} is not in the root lattice")
    out, acc = [], 0
    for x in vec[:-1]:
        acc += x
        out.append(acc)
    return tuple(out)


def levi_blocks(N: int, I: Iterable[int]) -> list[list[int]]:
    """Partition of ``1..N`` into the blocks joined by simple roots in ``I``."""
    I = set(I)
    if not I <= set(range(1, N)):
        raise ValueError(f"I={sorted(I)} is not a subset of 1..{N - 1}")
    blocks, cur = [], [1]
    for i in range(1, N):
        if i in I:
            cur.append(i + 1)
        else:
            blocks.append(cur)
            cur = [i + 1]
    blocks.append(cur)
    return blocks


def levi_reflections(N: int, I: Iterable[int]) -> list[WeylElement]:
    """Reflections s_α for the positive roots α in ℤI."""
    out = []
    for block in levi_blocks(N, I):
        for i, j in combinations(block, 2):
            out.append(WeylElement.transposition(N, i, j))
    return out


def linkage_orbit(weight: Sequence, I: Iterable[int], p: int, kind: str = "gl") -> set[tuple]:
    """The W_I dot-orbit of a mod-p weight, as a set of comparison keys."""
    N = len(weight)
    gens = levi_reflections(N, I)
    start = tuple(_residue(x, p) for x in weight)
    seen = {start}
    todo = [start]
    while todo:
        lam = todo.pop()
        for s in gens:
            mu = dot_action(s, lam, p)
            if mu not in seen:
                seen.add(mu)
                todo.append(mu)
    return {weight_key(w, kind, p) for w in seen}


def canonical_label(weight: Sequence, I: Iterable[int], p: int, kind: str = "gl") -> tuple:
    """Least key in the linkage orbit; labels simple modules up to isomorphism."""
    return min(linkage_orbit(weight, I, p, kind))
