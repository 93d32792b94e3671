"""Bounded complexes over a presented category and their Hom complexes.

Conventions: ``[1]`` moves term ``i+1`` to degree ``i`` and negates the
differential; ``{1}`` raises every internal shift by one; the Tate twist is
``<n> = {-n}[n]``.  ``Hom(A, B<n>[i])`` in the homotopy category is the
cohomology of the total Hom complex ``Hom^*(A, B{-n})`` in degree ``n + i``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from ..errors import CategoryError
from .category import Coeff, GradedObject, Morphism, PresentedCategory, Vector, _axpy

__all__ = [
    "ChainMap",
    "ComplexObj",
    "RHom",
    "ch",
    "cone",
    "e_plus",
    "hom_complex",
    "minimalize",
    "single",
]


class ComplexObj:
    """``... -> A^i --d^i--> A^{i+1} -> ...`` with ``d o d = 0`` checked on construction."""

    def __init__(self, category: PresentedCategory, terms: Mapping[int, GradedObject],
                 diffs: Mapping[int, Morphism] | None = None, check: bool = True):
        self.category = category
        self.terms = {i: X for i, X in sorted(terms.items()) if len(X)}
        self.diffs: dict[int, Morphism] = {}
        for i, d in (diffs or {}).items():
            if d.source != self.term(i) or d.target != self.term(i + 1):
                raise CategoryError(f"d^{i} has wrong source or target")
            if not d.is_zero():
                category._check_morphism(d)
                self.diffs[i] = d
        if check:
            for i in self.diffs:
                if i + 1 in self.diffs:
                    dd = category.compose_morphisms(self.diffs[i + 1], self.diffs[i])
                    if not dd.is_zero():
                        raise CategoryError(f"d^{i + 1} o d^{i} != 0")

    def term(self, i: int) -> GradedObject:
        return self.terms.get(i, GradedObject())

    def d(self, i: int) -> Morphism:
        got = self.diffs.get(i)
        if got is None:
            got = Morphism(self.term(i), self.term(i + 1), {})
        return got

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return "  ->  ".join(f"[{i}] {X!r}" for i, X in self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexObj):
            return NotImplemented
        return (self.category is other.category and self.terms == other.terms
                and {i: d.entries for i, d in self.diffs.items()}
                == {i: d.entries for i, d in other.diffs.items()})

    # -- shifts -----------------------------------------------------------

    def shift(self, k: int = 1) -> ComplexObj:
        """``[k]``"""
        sign = -1 if k % 2 else 1
        return ComplexObj(self.category, {i - k: X for i, X in self.terms.items()},
                          {i - k: d.scale(sign) for i, d in self.diffs.items()}, check=False)

    def internal_shift(self, m: int = 1) -> ComplexObj:
        """``{m}``"""
        terms = {i: X.shift(m) for i, X in self.terms.items()}
        diffs = {i: Morphism(terms[i], terms[i + 1], d.entries) for i, d in self.diffs.items()}
        return ComplexObj(self.category, terms, diffs, check=False)

    def twist(self, n: int = 1) -> ComplexObj:
        """``<n> = {-n}[n]``"""
        return self.internal_shift(-n).shift(n)

    def direct_sum(self, other: ComplexObj) -> ComplexObj:
        _same(self, other)
        terms, diffs = {}, {}
        for i in set(self.terms) | set(other.terms):
            terms[i] = self.term(i) + other.term(i)
        for i in set(self.diffs) | set(other.diffs):
            a, b = self.d(i), other.d(i)
            na, nb = len(a.target), len(a.source)
            entries = dict(a.entries)
            entries.update({(r + na, c + nb): v for (r, c), v in b.entries.items()})
            diffs[i] = Morphism(terms.get(i, GradedObject()),
                                terms.get(i + 1, GradedObject()), entries)
        return ComplexObj(self.category, terms, diffs, check=False)

    __add__ = direct_sum

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        return {
            "terms": {str(i): [list(s) for s in X] for i, X in self.terms.items()},
            "differentials": {str(i): d.to_json() for i, d in sorted(self.diffs.items())},
        }

    @classmethod
    def from_json(cls, category: PresentedCategory, data: Mapping[str, Any]) -> ComplexObj:
        try:
            terms = {int(i): GradedObject.of(*[(a, m) for a, m in X])
                     for i, X in data["terms"].items()}
            diffs = {}
            for i, d in data.get("differentials", {}).items():
                i = int(i)
                diffs[i] = Morphism.from_json(terms.get(i, GradedObject()),
                                              terms.get(i + 1, GradedObject()), d)
        except (KeyError, TypeError, ValueError) as exc:
            raise CategoryError(f"malformed complex: {exc}") from None
        return cls(category, terms, diffs)


def _same(A: ComplexObj, B: ComplexObj) -> None:
    if A.category is not B.category:
        raise CategoryError("complexes over different presented categories")


def single(category: PresentedCategory, label: str, shift: int = 0, degree: int = 0) -> ComplexObj:
    """``E_label{shift}`` placed in homological degree ``degree``."""
    if label not in category.generators:
        raise CategoryError(f"unknown generator {label!r}")
    return ComplexObj(category, {degree: GradedObject.of((label, shift))})


@dataclass(frozen=True)
class ChainMap:
    source: ComplexObj
    target: ComplexObj
    components: Mapping[int, Morphism]

    def __post_init__(self):
        _same(self.source, self.target)
        cat = self.source.category
        for i in set(self.source.terms) | set(self.target.terms):
            left = cat.compose_morphisms(self.target.d(i), self.f(i))
            right = cat.compose_morphisms(self.f(i + 1), self.source.d(i))
            if (left + (-right)).entries:
                raise CategoryError(f"not a chain map at degree {i}")

    def f(self, i: int) -> Morphism:
        got = self.components.get(i)
        if got is None:
            got = Morphism(self.source.term(i), self.target.term(i), {})
        return got

    @classmethod
    def identity(cls, A: ComplexObj) -> ChainMap:
        return cls(A, A, {i: A.category.identity(X) for i, X in A.terms.items()})


def cone(f: ChainMap) -> ComplexObj:
    """``Cone^i = A^{i+1} + B^i`` with ``d = [[-d_A, 0], [f, d_B]]``."""
    A, B = f.source, f.target
    degs = {i - 1 for i in A.terms} | set(B.terms)
    terms = {i: A.term(i + 1) + B.term(i) for i in degs}
    diffs = {}
    for i in degs:
        src, tgt = terms[i], terms.get(i + 1, A.term(i + 2) + B.term(i + 1))
        na_src, na_tgt = len(A.term(i + 1)), len(A.term(i + 2))
        entries: dict[tuple[int, int], Vector] = {}
        for (r, c), v in A.d(i + 1).entries.items():
            entries[(r, c)] = {k: -x for k, x in v.items()}
        for (r, c), v in f.f(i + 1).entries.items():
            entries[(na_tgt + r, c)] = dict(v)
        for (r, c), v in B.d(i).entries.items():
            entries[(na_tgt + r, na_src + c)] = dict(v)
        diffs[i] = Morphism(src, tgt, entries)
    return ComplexObj(A.category, terms, diffs)


# -- Gaussian elimination -------------------------------------------------

def _find_iso(C: ComplexObj) -> tuple[int, int, int, Coeff] | None:
    for i, d in sorted(C.diffs.items()):
        for (r, c), v in sorted(d.entries.items()):
            if d.source[c] == d.target[r] and list(v) == [0]:
                return i, r, c, v[0]
    return None


def minimalize(A: ComplexObj) -> ComplexObj:
    """Strip contractible summands ``X --iso--> X`` until no differential component is invertible."""
    cat = A.category
    terms = dict(A.terms)
    diffs = {i: d.entries for i, d in A.diffs.items()}
    C = A
    while (hit := _find_iso(C)) is not None:
        i, y, x, c = hit
        d = diffs[i]
        X, Y = terms[i], terms[i + 1]
        inv = Fraction(1) / c
        new: dict[tuple[int, int], Vector] = {}
        col_x = {r: v for (r, cc), v in d.items() if cc == x and r != y}
        row_y = {cc: v for (r, cc), v in d.items() if r == y and cc != x}
        for (r, cc), v in d.items():
            if r != y and cc != x:
                new[(r, cc)] = dict(v)
        # d' = delta - gamma phi^-1 beta
        for r, gv in col_x.items():
            for cc, bv in row_y.items():
                a, b, t = X[cc][0], X[x][0], Y[r][0]
                comp = cat.compose(a, b, t, X[x][1] - X[cc][1], Y[r][1] - X[x][1], gv, bv)
                _axpy(new.setdefault((r, cc), {}), -inv, comp)
        diffs[i] = _reindex(new, y, x)
        if i - 1 in diffs:
            diffs[i - 1] = _reindex(diffs[i - 1], x, None)
        if i + 1 in diffs:
            diffs[i + 1] = _reindex(diffs[i + 1], None, y)
        terms[i] = X.without(x)
        terms[i + 1] = Y.without(y)
        C = _assemble(cat, terms, diffs)
        terms = dict(C.terms)
        diffs = {k: m.entries for k, m in C.diffs.items()}
    return C


def _reindex(entries: Mapping[tuple[int, int], Vector], drop_row: int | None,
             drop_col: int | None) -> dict[tuple[int, int], Vector]:
    out = {}
    for (r, c), v in entries.items():
        if r == drop_row or c == drop_col:
            continue
        r2 = r - 1 if drop_row is not None and r > drop_row else r
        c2 = c - 1 if drop_col is not None and c > drop_col else c
        out[(r2, c2)] = v
    return out


def _assemble(cat: PresentedCategory, terms: Mapping[int, GradedObject],
              diffs: Mapping[int, Mapping[tuple[int, int], Vector]]) -> ComplexObj:
    live = {i: X for i, X in terms.items() if len(X)}
    ds = {i: Morphism(live.get(i, GradedObject()), live.get(i + 1, GradedObject()), e)
          for i, e in diffs.items() if e}
    return ComplexObj(cat, live, ds, check=False)


# -- Hom complexes --------------------------------------------------------

def _rank(rows: list[dict[int, Coeff]], ncols: int, characteristic: int) -> int:
    if not rows or not ncols:
        return 0
    if characteristic:
        K = GF(characteristic)

        def conv(x):
            x = Fraction(x)
            return K(x.numerator) / K(x.denominator)
    else:
        K = QQ

        def conv(x):
            x = Fraction(x)
            return QQ(x.numerator, x.denominator)
    dense = [[K.zero] * ncols for _ in rows]
    for r, row in enumerate(rows):
        for c, x in row.items():
            dense[r][c] = conv(x)
    return DomainMatrix(dense, (len(rows), ncols), K).rank()


@dataclass(frozen=True)
class HomComplex:
    """``Hom^*(A, B{m})`` for one internal shift ``m``: dimensions and ranks of ``d^k``."""

    m: int
    dims: Mapping[int, int]
    ranks: Mapping[int, int]

    def cohomology(self, k: int) -> int:
        return self.dims.get(k, 0) - self.ranks.get(k, 0) - self.ranks.get(k - 1, 0)

    def cohomology_dims(self) -> dict[int, int]:
        return {k: h for k in sorted(self.dims) if (h := self.cohomology(k))}


class RHom:
    """The total Hom complex between two complexes, graded by internal shift."""

    def __init__(self, A: ComplexObj, B: ComplexObj, characteristic: int = 0):
        _same(A, B)
        self.A, self.B = A, B
        self.category = A.category
        self.characteristic = characteristic
        self._cache: dict[int, HomComplex] = {}

    def internal_degrees(self) -> list[int]:
        """Shifts ``m`` for which some ``Hom(A^i, B^j{m})`` is nonzero."""
        cat = self.category
        out = set()
        for X in self.A.terms.values():
            for a, p in X:
                for Y in self.B.terms.values():
                    for b, q in Y:
                        out.update(deg - q + p for deg in cat.degrees(a, b))
        return sorted(out)

    def _basis(self, k: int, m: int) -> list[tuple[int, int, int, int]]:
        cat = self.category
        out = []
        for i, X in self.A.terms.items():
            Y = self.B.terms.get(i + k)
            if Y is None:
                continue
            for r, (b, q) in enumerate(Y):
                for c, (a, p) in enumerate(X):
                    for idx in range(cat.hom_dim(a, b, q + m - p)):
                        out.append((i, r, c, idx))
        return out

    def complex(self, m: int) -> HomComplex:
        got = self._cache.get(m)
        if got is not None:
            return got
        A, B, cat = self.A, self.B, self.category
        if not A.terms or not B.terms:
            got = HomComplex(m, {}, {})
            self._cache[m] = got
            return got
        lo = min(B.terms) - max(A.terms)
        hi = max(B.terms) - min(A.terms)
        bases = {k: self._basis(k, m) for k in range(lo - 1, hi + 2)}
        dims = {k: len(b) for k, b in bases.items() if b}
        ranks = {}
        for k in range(lo, hi + 1):
            src, tgt = bases[k], bases[k + 1]
            if not src or not tgt:
                continue
            index = {key: n for n, key in enumerate(tgt)}
            cols = [self._d(k, m, f, index) for f in src]
            # rank of the transpose equals rank
            ranks[k] = _rank(cols, len(tgt), self.characteristic)
        got = HomComplex(m, dims, {k: r for k, r in ranks.items() if r})
        self._cache[m] = got
        return got

    def _d(self, k: int, m: int, f: tuple[int, int, int, int],
           index: Mapping[tuple[int, int, int, int], int]) -> dict[int, Coeff]:
        """``d f = d_B o f - (-1)^k f o d_A`` in coordinates of ``Hom^{k+1}``."""
        A, B, cat = self.A, self.B, self.category
        i, r, c, idx = f
        j = i + k
        a, p = A.terms[i][c]
        b, q = B.terms[j][r]
        fv = {idx: 1}
        out: dict[int, Coeff] = {}
        dB = B.d(j)
        for (r2, rr), gv in dB.entries.items():
            if rr != r:
                continue
            b2, q2 = dB.target[r2]
            comp = cat.compose(a, b, b2, q + m - p, q2 - q, gv, fv)
            for n, x in comp.items():
                out[index[(i, r2, c, n)]] = out.get(index[(i, r2, c, n)], 0) + x
        sign = -1 if k % 2 == 0 else 1
        dA = A.d(i - 1)
        for (cc, c2), hv in dA.entries.items():
            if cc != c:
                continue
            a2, p2 = dA.source[c2]
            comp = cat.compose(a2, a, b, p - p2, q + m - p, fv, hv)
            for n, x in comp.items():
                key = index[(i - 1, r, c2, n)]
                out[key] = out.get(key, 0) + sign * x
        return {n: x for n, x in out.items() if x}

    def cohomology(self, m: int, k: int) -> int:
        """``dim H^k Hom^*(A, B{m})``"""
        return self.complex(m).cohomology(k)

    def hom(self, n: int = 0, i: int = 0) -> int:
        """``dim Hom(A, B<n>[i])`` in the homotopy category."""
        return self.cohomology(-n, n + i)

    def table(self, window: Iterable[int]) -> dict[tuple[int, int], int]:
        w = list(window)
        return {(n, i): self.hom(n, i) for n in w for i in w}


def hom_complex(A: ComplexObj, B: ComplexObj, characteristic: int = 0) -> RHom:
    return RHom(A, B, characteristic)


# -- recollement and characters -------------------------------------------

def e_plus(category: PresentedCategory, t: str) -> ComplexObj:
    """``E_t -> i_* i^* E_t`` in degrees 0 and 1, from the closed-stratum data."""
    if category.closed is None:
        raise CategoryError("presentation has no closed-stratum data")
    if t == category.closed:
        raise CategoryError(f"{t!r} is the closed generator")
    unit = category.units.get(t)
    if unit is None:
        raise CategoryError(f"no adjunction unit recorded for {t!r}")
    return ComplexObj(category, {0: unit.source, 1: unit.target}, {0: unit})


def ch(A: ComplexObj, ctx):
    """``sum_i (-1)^i sum_{(a, m) in A^i} (-v^-1)^m [E_a]`` as a class in ``ctx``."""
    from ..ring import LaurentPoly

    words = A.category.weyl_words
    total = ctx.zero()
    for i, X in A.terms.items():
        for a, m in X:
            if a not in words:
                raise CategoryError(f"generator {a!r} has no Weyl group label")
            scalar = LaurentPoly.monomial(-m, -1 if (m + i) % 2 else 1)
            total = total + ctx.parity_class(words[a]).scale(scalar)
    return total
