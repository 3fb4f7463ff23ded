"""Matrix-unit realization of gl_N / sl_N, χ-forms, and PBW straightening.

Two straightening engines live here:

* :func:`straighten` rewrites arbitrary words in U(g) or U_χ(g) into PBW
  order (negatives, then torals, then positives).
* :class:`MonomialAction` computes the action of a basis element on the
  monomial basis ``e_{-γ_D}^{a_D} ... e_{-γ_1}^{a_1} v`` of an induced
  module, either the baby Verma module (exponents reduced below p) or the
  ordinary Verma module (no reduction).  This is what every module
  construction downstream uses.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .rootdata import RootDatumA, root_datum, simple_coordinates

__all__ = [
    "BasisElement",
    "LieAlgebra",
    "lie_algebra",
    "ChiForm",
    "is_in_lambda_chi",
    "central_scalar",
    "straighten",
    "format_element",
    "MonomialAction",
]


class BasisElement(NamedTuple):
    kind: str  # "e" for matrix units e_ij (i != j), "h" for torals
    i: int
    j: int

    def __str__(self) -> str:
        if self.kind == "h":
            return f"h{self.i}"
        sep = "" if self.i < 10 and self.j < 10 else "_"
        return f"e{self.i}{sep}{self.j}"

    @classmethod
    def parse(cls, text: str, N: int) -> "BasisElement":
        text = text.strip()
        if N == 2 and text in ("e", "f", "h"):
            return {"e": cls("e", 1, 2), "f": cls("e", 2, 1), "h": cls("h", 1, 1)}[text]
        head, body = text[0], text[1:]
        if head == "h":
            k = int(body)
            return cls("h", k, k)
        if head != "e":
            raise ValueError(f"cannot parse basis element {text!r}")
        if "_" in body:
            i, j = (int(x) for x in body.split("_"))
        elif len(body) == 2:
            i, j = int(body[0]), int(body[1])
        else:
            raise ValueError(f"ambiguous basis element {text!r}; use e<i>_<j>")
        if i == j:
            return cls("h", i, i)
        return cls("e", i, j)


class LieAlgebra:
    """gl_N or sl_N with a fixed ordering of positive roots.

    Basis: e_ij (i != j) plus torals, ``e_ii`` for gl and
    ``e_kk - e_{k+1,k+1}`` for sl.  Brackets are matrix commutators.
    """

    def __init__(self, N: int, kind: str = "sl", tiebreak: str = "lex"):
        self.N = N
        self.kind = kind
        self.tiebreak = tiebreak
        self.roots: RootDatumA = root_datum(N, kind, tiebreak)
        self.D = self.roots.D
        self.negatives = tuple(BasisElement("e", j, i) for (i, j) in self.roots.positive_roots)
        self.positives = tuple(BasisElement("e", i, j) for (i, j) in self.roots.positive_roots)
        if kind == "gl":
            self.torals = tuple(BasisElement("h", k, k) for k in range(1, N + 1))
        else:
            self.torals = tuple(BasisElement("h", k, k) for k in range(1, N))
        self.basis = self.negatives + self.torals + self.positives
        self.neg_index = {x: r for r, x in enumerate(self.negatives)}
        self.pos_index = {x: r for r, x in enumerate(self.positives)}
        self._bracket_cache: dict = {}

    def __repr__(self) -> str:
        return f"{self.kind}{self.N}"

    @property
    def name(self) -> str:
        return f"{self.kind}{self.N}"

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and (self.N, self.kind, self.tiebreak) == (
            other.N,
            other.kind,
            other.tiebreak,
        )

    def __hash__(self) -> int:
        return hash((self.N, self.kind, self.tiebreak))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def part(self, x: BasisElement) -> str:
        if x.kind == "h":
            return "tor"
        return "pos" if x.i < x.j else "neg"

    def matrix(self, x: BasisElement) -> np.ndarray:
        m = np.zeros((self.N, self.N), dtype=np.int64)
        if x.kind == "e":
            m[x.i - 1, x.j - 1] = 1
        elif self.kind == "gl":
            m[x.i - 1, x.i - 1] = 1
        else:
            m[x.i - 1, x.i - 1] = 1
            m[x.i, x.i] = -1
        return m

    def decompose(self, m: np.ndarray) -> dict[BasisElement, int]:
        """Coordinates of an integer matrix in the basis (must lie in the algebra)."""
        out: dict[BasisElement, int] = {}
        N = self.N
        for i in range(N):
            for j in range(N):
                if i != j and m[i, j]:
                    out[BasisElement("e", i + 1, j + 1)] = int(m[i, j])
        diag = [int(m[k, k]) for k in range(N)]
        if self.kind == "gl":
            for k, d in enumerate(diag, start=1):
                if d:
                    out[BasisElement("h", k, k)] = d
        else:
            if sum(diag) != 0:
                raise ValueError("matrix has nonzero trace; not in sl")
            acc = 0
            for k in range(1, N):
                acc += diag[k - 1]
                if acc:
                    out[BasisElement("h", k, k)] = acc
        return out

    def bracket(self, x: BasisElement, y: BasisElement) -> dict[BasisElement, int]:
        key = (x, y)
        cached = self._bracket_cache.get(key)
        if cached is None:
            a, b = self.matrix(x), self.matrix(y)
            cached = self.decompose(a @ b - b @ a)
            self._bracket_cache[key] = cached
        return cached

    def p_power(self, x: BasisElement, p: int) -> dict[BasisElement, int]:
        """x^{[p]} as the p-th matrix power, decomposed in the basis."""
        m = np.linalg.matrix_power(self.matrix(x), p)
        return self.decompose(m)

    def root_of(self, x: BasisElement) -> tuple[int, ...]:
        """ε-coordinates of the weight of x under the adjoint torus action."""
        v = [0] * self.N
        if x.kind == "e":
            v[x.i - 1] += 1
            v[x.j - 1] -= 1
        return tuple(v)

    def toral_diagonal(self, h: BasisElement) -> tuple[int, ...]:
        return tuple(int(d) for d in np.diag(self.matrix(h)))

    def evaluate(self, weight: Sequence, h: BasisElement):
        """λ(h) for a toral basis element, λ given in ε-coordinates."""
        return sum(d * w for d, w in zip(self.toral_diagonal(h), weight) if d)

    def shift(self, x: BasisElement) -> tuple[int, ...]:
        """Simple-root coordinates of the root of x (zero for torals)."""
        return simple_coordinates(self.root_of(x))

    def monomial_weight_shift(self, a: Sequence[int]) -> tuple[int, ...]:
        """ε-coordinates of −Σ a_r γ_r."""
        v = [0] * self.N
        for r, ar in enumerate(a):
            if ar:
                i, j = self.roots.positive_roots[r]
                v[i - 1] -= ar
                v[j - 1] += ar
        return tuple(v)


@lru_cache(maxsize=None)
def lie_algebra(N: int, kind: str = "sl", tiebreak: str = "lex") -> LieAlgebra:
    """Shared instance per (N, kind, tiebreak) so bracket caches are reused."""
    return LieAlgebra(N, kind, tiebreak)


@dataclass(frozen=True)
class ChiForm:
    """A linear functional χ on g, stored by its nonzero values on the basis."""

    algebra: LieAlgebra
    p: int
    values: tuple[tuple[BasisElement, int], ...] = ()

    def __post_init__(self):
        clean = {}
        basis = set(self.algebra.basis)
        for x, v in self.values:
            if x not in basis:
                raise ValueError(f"{x} is not a basis element of {self.algebra}")
            v = int(v) % self.p
            if v:
                clean[x] = v
        order = {x: k for k, x in enumerate(self.algebra.basis)}
        object.__setattr__(self, "values", tuple(sorted(clean.items(), key=lambda kv: order[kv[0]])))

    @classmethod
    def from_dict(cls, algebra: LieAlgebra, p: int, values: Mapping) -> "ChiForm":
        items = []
        for k, v in values.items():
            x = BasisElement.parse(k, algebra.N) if isinstance(k, str) else k
            items.append((x, v))
        return cls(algebra, p, tuple(items))

    @classmethod
    def zero(cls, algebra: LieAlgebra, p: int) -> "ChiForm":
        return cls(algebra, p)

    @classmethod
    def levi(cls, algebra: LieAlgebra, p: int, I: Iterable[int], value: int = 1) -> "ChiForm":
        """Standard Levi form with χ(e_{i+1,i}) = value for i in I."""
        return cls(algebra, p, tuple((BasisElement("e", i + 1, i), value) for i in I))

    @classmethod
    def regular_nilpotent(cls, algebra: LieAlgebra, p: int) -> "ChiForm":
        return cls.levi(algebra, p, range(1, algebra.N))

    def __call__(self, x: BasisElement) -> int:
        for y, v in self.values:
            if y == x:
                return v
        return 0

    def as_dict(self) -> dict[str, int]:
        return {str(x): v for x, v in self.values}

    def __add__(self, other: "ChiForm") -> "ChiForm":
        if other.algebra != self.algebra or other.p != self.p:
            raise ValueError("χ-forms on different algebras")
        acc = defaultdict(int)
        for x, v in self.values + other.values:
            acc[x] += v
        return ChiForm(self.algebra, self.p, tuple(acc.items()))

    def __neg__(self) -> "ChiForm":
        return ChiForm(self.algebra, self.p, tuple((x, -v) for x, v in self.values))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ChiForm)
            and self.algebra == other.algebra
            and self.p == other.p
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.algebra, self.p, self.values))

    def vanishes_on_b(self) -> bool:
        return all(self.algebra.part(x) == "neg" for x, _ in self.values)

    def levi_set(self) -> frozenset[int] | None:
        """The set I if χ has (weak) standard Levi form, otherwise None."""
        if not self.vanishes_on_b():
            return None
        I = set()
        for x, _ in self.values:
            if x.i != x.j + 1:
                return None
            I.add(x.j)
        return frozenset(I)

    def is_standard_levi(self) -> bool:
        return self.levi_set() is not None

    def with_algebra(self, algebra: LieAlgebra) -> "ChiForm":
        """Same values viewed on an algebra with a different root ordering."""
        return ChiForm(algebra, self.p, self.values)

    def restrict_to_sl(self) -> "ChiForm":
        """Restriction of a gl-form to sl_N (torals h_k = e_kk − e_{k+1,k+1})."""
        if self.algebra.kind != "gl":
            raise ValueError("restriction starts from gl")
        sl = lie_algebra(self.algebra.N, "sl", self.algebra.tiebreak)
        vals = [(x, v) for x, v in self.values if x.kind == "e"]
        for k in range(1, sl.N):
            d = self(BasisElement("h", k, k)) - self(BasisElement("h", k + 1, k + 1))
            vals.append((BasisElement("h", k, k), d))
        return ChiForm(sl, self.p, tuple(vals))

    def __repr__(self) -> str:
        body = ", ".join(f"{x}={v}" for x, v in self.values) or "0"
        return f"ChiForm({self.algebra}, p={self.p}: {body})"


def _residue(x, p: int) -> int:
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"{x} is not {p}-integral")
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


def is_in_lambda_chi(weight: Sequence, chi: ChiForm) -> bool:
    """Check λ(h)^p − λ(h^{[p]}) = χ(h)^p on every toral basis element."""
    alg, p = chi.algebra, chi.p
    lam = [_residue(x, p) for x in weight]
    for h in alg.torals:
        lhs = pow(alg.evaluate(lam, h) % p, p, p)
        hp = alg.p_power(h, p)
        lhs -= sum(c * alg.evaluate(lam, y) for y, c in hp.items())
        if (lhs - pow(chi(h), p, p)) % p:
            return False
    return True


def central_scalar(x: BasisElement, chi: ChiForm) -> int:
    """χ(x)^p, the scalar by which x^p − x^{[p]} acts on U_χ-modules."""
    return pow(chi(x), chi.p, chi.p)


# ---------------------------------------------------------------- straighten


def _pbw_rank(alg: LieAlgebra) -> dict[BasisElement, int]:
    rank = {}
    D = alg.D
    for r, x in enumerate(alg.negatives):
        rank[x] = D - 1 - r
    for k, h in enumerate(alg.torals):
        rank[h] = D + k
    for r, x in enumerate(alg.positives):
        rank[x] = D + len(alg.torals) + r
    return rank


Word = tuple[BasisElement, ...]


def _expand_word(word) -> Word:
    out: list[BasisElement] = []
    for item in word:
        if isinstance(item, BasisElement):
            out.append(item)
        else:
            x, k = item
            out.extend([x] * k)
    return tuple(out)


def straighten(
    word,
    algebra: LieAlgebra,
    chi: ChiForm | None = None,
    p: int | None = None,
) -> dict[Word, int]:
    """Rewrite a product of basis elements into PBW order.

    ``word`` is a sequence of basis elements or ``(element, power)`` pairs,
    or a dict mapping such words to coefficients.  With ``chi`` the result
    lives in U_χ(g): any power x^p is replaced by x^{[p]} + χ(x)^p.  With
    only ``p`` coefficients are reduced mod p but powers are left alone.
    """
    if chi is not None:
        p = chi.p
    rank = _pbw_rank(algebra)
    if isinstance(word, dict):
        todo = defaultdict(int)
        for w, c in word.items():
            todo[_expand_word(w)] += c
    else:
        todo = defaultdict(int, {_expand_word(word): 1})
    result: dict[Word, int] = defaultdict(int)

    def norm(c):
        return c % p if p is not None else c

    while todo:
        w, c = todo.popitem()
        c = norm(c)
        if not c:
            continue
        k = next((t for t in range(len(w) - 1) if rank[w[t]] > rank[w[t + 1]]), None)
        if k is not None:
            x, y = w[k], w[k + 1]
            todo[w[:k] + (y, x) + w[k + 2 :]] += c
            for z, cz in algebra.bracket(x, y).items():
                todo[w[:k] + (z,) + w[k + 2 :]] += c * cz
            continue
        if chi is not None:
            run = _find_run(w, p)
            if run is not None:
                x = w[run]
                head, tail = w[:run], w[run + p :]
                for z, cz in algebra.p_power(x, p).items():
                    todo[head + (z,) + tail] += c * cz
                s = central_scalar(x, chi)
                if s:
                    todo[head + tail] += c * s
                continue
        result[w] = norm(result[w] + c)
    return {w: c for w, c in result.items() if c}


def _find_run(w: Word, p: int) -> int | None:
    start = 0
    for t in range(1, len(w) + 1):
        if t == len(w) or w[t] != w[start]:
            if t - start >= p:
                return start
            start = t
    return None


def format_element(elem: Mapping[Word, int]) -> str:
    """Human-readable PBW combination, e.g. ``f^2 e + 2 f h - 2 f`` style."""
    if not elem:
        return "0"
    parts = []
    for w, c in sorted(elem.items(), key=lambda kv: (-len(kv[0]), [str(x) for x in kv[0]])):
        mono, t = [], 0
        while t < len(w):
            u = t
            while u < len(w) and w[u] == w[t]:
                u += 1
            mono.append(str(w[t]) + (f"^{u - t}" if u - t > 1 else ""))
            t = u
        body = " ".join(mono) or "1"
        mag = abs(c)
        term = body if mag == 1 and mono else (f"{mag}" if not mono else f"{mag} {body}")
        sign = "-" if c < 0 else "+"
        parts.append(term if not parts and c > 0 else (f"-{term}" if not parts else f"{sign} {term}"))
    return " ".join(parts)


# ---------------------------------------------------------------- monomial action


Monomial = tuple[int, ...]


class MonomialAction:
    """Action of g on the monomial basis of an induced highest-weight module.

    ``weight`` is the highest weight in ε-coordinates.  If ``p`` is given
    the coefficients are residues mod p (and the weight must be p-integral);
    otherwise they are exact rationals.  If ``chi`` is given, exponents are
    reduced below p using e_{-γ}^p = χ(e_{-γ})^p, which is valid because
    e_{-γ}^p is central; this yields the baby Verma module Z_χ(λ).
    """

    def __init__(
        self,
        algebra: LieAlgebra,
        weight: Sequence,
        p: int | None = None,
        chi: ChiForm | None = None,
    ):
        if chi is not None:
            if chi.algebra != algebra:
                raise ValueError("χ lives on a different algebra")
            if not chi.vanishes_on_b():
                raise ValueError("induced modules need χ(b) = 0")
            p = chi.p
        self.algebra = algebra
        self.p = p
        self.chi = chi
        if p is not None:
            self.weight = tuple(_residue(x, p) for x in weight)
        else:
            self.weight = tuple(Fraction(x) for x in weight)
        self._memo: dict[tuple[BasisElement, Monomial], dict[Monomial, object]] = {}
        self._toral_cache: dict[tuple[BasisElement, Monomial], object] = {}
        # γ_r(h) for every toral h, used to evaluate weights of monomials.
        self._gamma_on = {
            h: [algebra.evaluate(algebra.roots.root_vector(g), h) for g in algebra.roots.positive_roots]
            for h in algebra.torals
        }
        self._lam_on = {h: algebra.evaluate(self.weight, h) for h in algebra.torals}
        self._chi_neg = [chi(x) if chi is not None else 0 for x in algebra.negatives]

    def _norm(self, c):
        return c % self.p if self.p is not None else c

    def toral_value(self, h: BasisElement, a: Monomial):
        val = self._lam_on[h] - sum(g * ar for g, ar in zip(self._gamma_on[h], a) if ar)
        return self._norm(val)

    def _raise(self, a: Monomial, r: int) -> dict[Monomial, object]:
        b = list(a)
        b[r] += 1
        if self.chi is not None and b[r] == self.p:
            b[r] = 0
            c = pow(self._chi_neg[r], self.p, self.p)
            return {tuple(b): c} if c else {}
        return {tuple(b): 1}

    def apply(self, x: BasisElement, a: Monomial) -> dict[Monomial, object]:
        """x · (monomial a) as a dict monomial -> coefficient (no zero entries)."""
        key = (x, a)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        part = self.algebra.part(x)
        if part == "tor":
            c = self.toral_value(x, a)
            res = {a: c} if c else {}
            self._memo[key] = res
            return res
        l = max((r for r, ar in enumerate(a) if ar), default=-1)
        if part == "neg":
            r = self.algebra.neg_index[x]
            if r >= l:
                res = self._raise(a, r)
                self._memo[key] = res
                return res
        elif l < 0:
            self._memo[key] = {}
            return {}
        # x · y · rest = y · (x · rest) + [x, y] · rest, with y = e_{-γ_l}.
        rest = list(a)
        rest[l] -= 1
        rest = tuple(rest)
        y = self.algebra.negatives[l]
        acc: dict[Monomial, object] = defaultdict(int)
        for b, cb in self.apply(x, rest).items():
            for b2, c2 in self.apply(y, b).items():
                acc[b2] += cb * c2
        for z, cz in self.algebra.bracket(x, y).items():
            for b, cb in self.apply(z, rest).items():
                acc[b] += cz * cb
        res = {}
        for b, c in acc.items():
            c = self._norm(c)
            if c:
                res[b] = c
        self._memo[key] = res
        return res

    def apply_word(self, word: Sequence[BasisElement], a: Monomial) -> dict[Monomial, object]:
        """Apply the rightmost element first, as for a product acting on a vector."""
        vec: dict[Monomial, object] = {a: 1}
        for x in reversed(word):
            nxt: dict[Monomial, object] = defaultdict(int)
            for b, cb in vec.items():
                for b2, c2 in self.apply(x, b).items():
                    nxt[b2] += cb * c2
            vec = {b: self._norm(c) for b, c in nxt.items() if self._norm(c)}
        return vec
