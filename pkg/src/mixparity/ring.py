"""Exact Laurent polynomials in one variable with integer coefficients.

A :class:`LaurentPoly` is an immutable sparse map ``exponent -> coefficient``
with no zero coefficients stored.  Three ring symmetries are provided:

* :func:`bar`            v -> v^-1
* :func:`sigma`          v -> -v^-1
* :func:`subst_neg_inv`  v -> -t^-1, returning a polynomial in ``t``

>>> v = LaurentPoly.gen()
>>> p = 1 + v**2
>>> bar(p) == 1 + v**-2
True
>>> sigma(v) == -v**-1
True
>>> subst_neg_inv(1 + v**-2)
1 + t^2
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from typing import Union

__all__ = ["LaurentPoly", "bar", "sigma", "subst_neg_inv", "as_poly"]

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Integer Laurent polynomial stored as ``{exponent: coefficient}``."""

    __slots__ = ("_c", "var", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] | None = None,
                 var: str = "v"):
        c: dict[int, int] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
            for k, a in items:
                if not isinstance(a, int) or isinstance(a, bool):
                    raise TypeError(f"coefficient must be int, got {type(a).__name__}")
                k = int(k)
                s = c.get(k, 0) + a
                if s:
                    c[k] = s
                else:
                    c.pop(k, None)
        self._c = c
        self.var = var
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int], var: str = "v") -> LaurentPoly:
        # trusted constructor: c must already be free of zeros
        p = cls.__new__(cls)
        p._c = c
        p.var = var
        p._hash = None
        return p

    @classmethod
    def gen(cls, var: str = "v") -> LaurentPoly:
        return cls._raw({1: 1}, var)

    @classmethod
    def monomial(cls, k: int, c: int = 1, var: str = "v") -> LaurentPoly:
        return cls._raw({k: c} if c else {}, var)

    @classmethod
    def const(cls, c: int, var: str = "v") -> LaurentPoly:
        return cls.monomial(0, c, var)

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def __getitem__(self, k: int) -> int:
        return self._c.get(k, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def is_bar_invariant(self) -> bool:
        return all(self._c.get(-k) == a for k, a in self._c.items())

    def is_nonnegative(self) -> bool:
        return all(a > 0 for a in self._c.values())

    def evaluate(self, x: int = 1) -> int:
        """Value at an integer point; ``x`` must be +-1 unless exponents are >= 0."""
        if x in (1, -1):
            return sum(a * (x if k % 2 else 1) for k, a in self._c.items())
        if self._c and min(self._c) < 0:
            raise ValueError("negative exponents at a non-unit point")
        return sum(a * x**k for k, a in self._c.items())

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentPoly._raw({0: other} if other else {}, self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        c = dict(self._c)
        for k, a in o._c.items():
            s = c.get(k, 0) + a
            if s:
                c[k] = s
            else:
                del c[k]
        return LaurentPoly._raw(c, self.var)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({k: -a for k, a in self._c.items()}, self.var)

    def __pos__(self) -> LaurentPoly:
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if not other:
                return LaurentPoly._raw({}, self.var)
            return LaurentPoly._raw({k: a * other for k, a in self._c.items()}, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: dict[int, int] = {}
        for k, a in self._c.items():
            for l, b in other._c.items():
                c[k + l] = c.get(k + l, 0) + a * b
        return LaurentPoly._raw({k: a for k, a in c.items() if a}, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if not isinstance(n, int):
            return NotImplemented
        if len(self._c) == 1:
            (k, a), = self._c.items()
            if n < 0 and a not in (1, -1):
                raise ValueError("only monomials with unit coefficient are invertible")
            return LaurentPoly._raw({k * n: a ** abs(n)}, self.var)
        if n < 0:
            raise ValueError("only monomials with unit coefficient are invertible")
        out = LaurentPoly.const(1, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, n: int) -> LaurentPoly:
        """Multiply by v^n."""
        return LaurentPoly._raw({k + n: a for k, a in self._c.items()}, self.var)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c and (self.var == other.var or not self._c)
        if isinstance(other, int) and not isinstance(other, bool):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- formatting -------------------------------------------------------

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, a in sorted(self._c.items()):
            if k == 0:
                mono = str(abs(a))
            else:
                x = self.var if k == 1 else f"{self.var}^{k}"
                mono = x if abs(a) == 1 else f"{abs(a)}*{x}"
            sign = "-" if a < 0 else "+"
            parts.append((sign, mono))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            s += f" {sign} {mono}"
        return s

    def to_json(self) -> dict[str, int]:
        return {str(k): a for k, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int], var: str = "v") -> LaurentPoly:
        out = {}
        for k, a in data.items():
            try:
                e = int(k)
            except (TypeError, ValueError):
                raise ValueError(f"bad exponent key {k!r}") from None
            if not isinstance(a, int) or isinstance(a, bool):
                raise ValueError(f"bad coefficient {a!r} at exponent {k}")
            out[e] = a
        return cls(out, var)

    def to_csv_cell(self) -> str:
        """``c*v^k`` terms joined by ``+``, exponents ascending; ``0`` for zero."""
        if not self._c:
            return "0"
        return "+".join(f"{a}*{self.var}^{k}" for k, a in sorted(self._c.items()))


def as_poly(x: Scalar) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return LaurentPoly.const(x)
    raise TypeError(f"not a scalar: {x!r}")


def bar(p: LaurentPoly) -> LaurentPoly:
    """v -> v^-1."""
    return LaurentPoly._raw({-k: a for k, a in p._c.items()}, p.var)


def sigma(p: LaurentPoly) -> LaurentPoly:
    """v -> -v^-1."""
    return LaurentPoly._raw({-k: (-a if k % 2 else a) for k, a in p._c.items()}, p.var)


def subst_neg_inv(p: LaurentPoly, var: str = "t") -> LaurentPoly:
    """v -> -t^-1, as a polynomial in ``t``."""
    return LaurentPoly._raw({-k: (-a if k % 2 else a) for k, a in p._c.items()}, var)
