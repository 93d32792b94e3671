"""Hecke algebra of a finite Weyl group over Z[v, v^-1].

Normalization: ``H_s^2 = H_e + (v^-1 - v) H_s``, so that right multiplication
by a simple generator reads

    H_w H_s = H_ws                         if ws > w
    H_w H_s = H_ws + (v^-1 - v) H_w        if ws < w

and the Kazhdan-Lusztig basis is ``b_w = H_w + sum_{y<w} h_{y,w} H_y`` with
``h_{y,w}`` in ``v Z[v]``.

>>> from mixparity.coxeter import CoxeterSystem
>>> W = CoxeterSystem.get("A1")
>>> Hs = std(W.s(1))
>>> Hs * Hs
H_e + (v^-1 - v)*H_s1
>>> kl_basis(W.s(1))
v*H_e + H_s1
"""

from __future__ import annotations

import json
import os
import threading
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from .coxeter import CoxeterSystem, WeylElement, parse_type
from .errors import (
    MissingEntryError,
    SystemMismatchError,
    TableParseError,
    TableValidationError,
)
from .ring import LaurentPoly, as_poly
from .ring import bar as bar_poly

__all__ = [
    "HeckeAlgebra",
    "HeckeElement",
    "PCanTable",
    "bar_involution",
    "euler_pairing",
    "kl_basis",
    "kl_table",
    "load_pcan",
    "mul",
    "std",
]

_V = LaurentPoly.gen()
_Q = LaurentPoly({-1: 1, 1: -1})      # v^-1 - v
_BAR_Q = LaurentPoly({1: 1, -1: -1})  # v - v^-1
_ONE = LaurentPoly.const(1)

Coeffs = dict[int, LaurentPoly]


def _acc(out: Coeffs, k: int, a: LaurentPoly) -> None:
    s = out.get(k)
    s = a if s is None else s + a
    if s:
        out[k] = s
    else:
        out.pop(k, None)


def _axpy(out: Coeffs, scalar: LaurentPoly, x: Coeffs) -> None:
    for k, a in x.items():
        _acc(out, k, scalar * a)


class HeckeAlgebra:
    """Structure constants and memo tables for one Coxeter system."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self._bar_std: dict[int, Coeffs] = {0: {0: _ONE}}
        self._kl: dict[int, Coeffs] = {0: {0: _ONE}}
        self._lock = threading.RLock()

    @staticmethod
    def of(system: CoxeterSystem) -> HeckeAlgebra:
        return _algebra(system.cartan_type)

    def __repr__(self) -> str:
        return f"HeckeAlgebra({self.system.cartan_type!r})"

    # -- constructors -----------------------------------------------------

    def element(self, coeffs: Mapping[WeylElement, Any] | None = None) -> HeckeElement:
        out: Coeffs = {}
        for w, a in (coeffs or {}).items():
            if w.system != self.system:
                raise SystemMismatchError(f"{w!r} is not in {self.system.cartan_type}")
            _acc(out, w.index, as_poly(a))
        return HeckeElement(self, out)

    def std(self, w: WeylElement) -> HeckeElement:
        if w.system != self.system:
            raise SystemMismatchError(f"{w!r} is not in {self.system.cartan_type}")
        return HeckeElement(self, {w.index: _ONE})

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def one(self) -> HeckeElement:
        return HeckeElement(self, {0: _ONE})

    # -- kernels on index-keyed coefficient dicts --------------------------

    def _rmul_gen(self, c: Coeffs, s: int) -> Coeffs:
        """``c * H_s`` for the generator with 0-based index ``s``."""
        col = self.system._rmul[s]
        length = self.system._length
        out: Coeffs = {}
        for x, a in c.items():
            xs = col[x]
            _acc(out, xs, a)
            if length[xs] < length[x]:
                _acc(out, x, a * _Q)
        return out

    def _mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        words = self.system._words
        rmul = self.system._rmul
        memo: dict[int, Coeffs] = {0: a}

        def times_std(y: int) -> Coeffs:
            got = memo.get(y)
            if got is None:
                s = words[y][-1] - 1
                got = memo[y] = self._rmul_gen(times_std(rmul[s][y]), s)
            return got

        out: Coeffs = {}
        for y in sorted(b):
            _axpy(out, b[y], times_std(y))
        return out

    def _bar_of_std(self, w: int) -> Coeffs:
        got = self._bar_std.get(w)
        if got is not None:
            return got
        s = self.system._words[w][-1] - 1
        prev = self._bar_of_std(self.system._rmul[s][w])
        # bar(H_w) = bar(H_ws) * (H_s + (v - v^-1))
        out = self._rmul_gen(prev, s)
        _axpy(out, _BAR_Q, prev)
        with self._lock:
            self._bar_std[w] = out
        return out

    def _bar(self, c: Coeffs) -> Coeffs:
        out: Coeffs = {}
        for w, a in c.items():
            _axpy(out, bar_poly(a), self._bar_of_std(w))
        return out

    def _kl_of(self, w: int) -> Coeffs:
        got = self._kl.get(w)
        if got is not None:
            return got
        with self._lock:
            got = self._kl.get(w)
            if got is not None:
                return got
            s = self.system._words[w][-1] - 1
            prev = self._kl_of(self.system._rmul[s][w])
            # b_{ws} b_s, then strip lower terms whose coefficient reaches degree <= 0
            c = self._rmul_gen(prev, s)
            _axpy(c, _V, prev)
            for z in range(w - 1, -1, -1):
                a = c.get(z)
                if a is None or a.min_exp() > 0:
                    continue
                p = {k: n for k, n in a.coeffs.items() if k <= 0}
                p.update({-k: n for k, n in p.items() if k < 0})
                _axpy(c, -LaurentPoly(p), self._kl_of(z))
            self._kl[w] = c
            return c

    def seed_kl(self, table: Mapping[WeylElement, HeckeElement]) -> None:
        """Install precomputed KL basis elements (e.g. from a disk cache)."""
        with self._lock:
            for w, h in table.items():
                if h.algebra is not self:
                    raise SystemMismatchError("KL seed from another system")
                self._kl.setdefault(w.index, dict(h._c))

    # -- public operations ------------------------------------------------

    def mul(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        self._own(a)
        self._own(b)
        return HeckeElement(self, self._mul(a._c, b._c))

    def bar(self, a: HeckeElement) -> HeckeElement:
        self._own(a)
        return HeckeElement(self, self._bar(a._c))

    def kl(self, w: WeylElement) -> HeckeElement:
        if w.system != self.system:
            raise SystemMismatchError(f"{w!r} is not in {self.system.cartan_type}")
        return HeckeElement(self, dict(self._kl_of(w.index)))

    def kl_expansion(self, a: HeckeElement) -> dict[WeylElement, LaurentPoly]:
        """Coordinates of ``a`` in the KL basis."""
        self._own(a)
        rem = dict(a._c)
        out = {}
        while rem:
            z = max(rem)
            m = rem[z]
            out[self.system.elements[z]] = m
            _axpy(rem, -m, self._kl_of(z))
        return dict(sorted(out.items(), key=lambda kv: kv[0].index))

    def euler_pairing(self, a: HeckeElement, b: HeckeElement) -> LaurentPoly:
        self._own(a)
        self._own(b)
        bb = self._bar(b._c)
        total = LaurentPoly()
        for w, x in a._c.items():
            y = bb.get(w)
            if y is not None:
                total = total + x * y
        return total

    def _own(self, a: HeckeElement) -> None:
        if not isinstance(a, HeckeElement):
            raise TypeError(f"expected HeckeElement, got {type(a).__name__}")
        if a.algebra.system != self.system:
            raise SystemMismatchError(
                f"{a.algebra.system.cartan_type} element used in {self.system.cartan_type}")


@lru_cache(maxsize=None)
def _algebra(label: str) -> HeckeAlgebra:
    return HeckeAlgebra(CoxeterSystem.get(label))


class HeckeElement:
    """Finitely supported ``W -> Z[v, v^-1]``, read in the standard basis."""

    __slots__ = ("algebra", "_c")

    def __init__(self, algebra: HeckeAlgebra, coeffs: Coeffs):
        self.algebra = algebra
        self._c = coeffs

    @property
    def system(self) -> CoxeterSystem:
        return self.algebra.system

    def coeff(self, w: WeylElement) -> LaurentPoly:
        if w.system != self.system:
            raise SystemMismatchError(f"{w!r} is not in {self.system.cartan_type}")
        return self._c.get(w.index, LaurentPoly())

    __getitem__ = coeff

    def items(self) -> Iterator[tuple[WeylElement, LaurentPoly]]:
        els = self.system.elements
        for k in sorted(self._c):
            yield els[k], self._c[k]

    def support(self) -> list[WeylElement]:
        return [w for w, _ in self.items()]

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def map_coeffs(self, f: Callable[[LaurentPoly], LaurentPoly]) -> HeckeElement:
        out: Coeffs = {}
        for k, a in self._c.items():
            b = f(a)
            if b:
                out[k] = b
        return HeckeElement(self.algebra, out)

    def bar(self) -> HeckeElement:
        return self.algebra.bar(self)

    def evaluate(self, x: int = 1) -> dict[WeylElement, int]:
        els = self.system.elements
        out = {els[k]: a.evaluate(x) for k, a in sorted(self._c.items())}
        return {w: n for w, n in out.items() if n}

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        self.algebra._own(other)
        out = dict(self._c)
        for k, a in other._c.items():
            _acc(out, k, a)
        return HeckeElement(self.algebra, out)

    def __neg__(self) -> HeckeElement:
        return HeckeElement(self.algebra, {k: -a for k, a in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> HeckeElement:
        c = as_poly(c)
        if not c:
            return HeckeElement(self.algebra, {})
        return HeckeElement(self.algebra, {k: c * a for k, a in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.algebra.mul(self, other)
        if isinstance(other, (int, LaurentPoly)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.system == other.system and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.system.cartan_type, frozenset(self._c.items())))

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for w, a in self.items():
            name = f"H_{w!r}"
            if a == 1:
                parts.append(name)
            elif len(a) == 1:
                parts.append(f"{a}*{name}")
            else:
                parts.append(f"({a})*{name}")
        return " + ".join(parts)

    # -- serialization ----------------------------------------------------

    def to_expansion(self) -> list[dict[str, Any]]:
        """``[{"y": word, "coeffs": {...}}, ...]`` in ShortLex order."""
        return [{"y": list(w.word), "coeffs": a.to_json()} for w, a in self.items()]

    def to_json(self) -> dict[str, Any]:
        return {"basis": "standard",
                "coeffs": {word_key(w): a.to_json() for w, a in self.items()}}

    @classmethod
    def from_json(cls, system: CoxeterSystem, data: Mapping[str, Any]) -> HeckeElement:
        if data.get("basis", "standard") != "standard":
            raise ValueError(f"unsupported basis {data.get('basis')!r}")
        alg = HeckeAlgebra.of(system)
        out = {}
        for key, coeffs in data["coeffs"].items():
            out[system.element(parse_word_key(key))] = LaurentPoly.from_json(coeffs)
        return alg.element(out)


def word_key(w: WeylElement) -> str:
    return ",".join(map(str, w.word)) or "e"


def parse_word_key(key: str) -> tuple[int, ...]:
    key = key.strip()
    if key in ("", "e"):
        return ()
    return tuple(int(x) for x in key.split(","))


# -- functional API -------------------------------------------------------

def std(w: WeylElement) -> HeckeElement:
    """Standard basis element ``H_w``."""
    return HeckeAlgebra.of(w.system).std(w)


def mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a.algebra.mul(a, b)


def bar_involution(a: HeckeElement) -> HeckeElement:
    return a.algebra.bar(a)


def kl_basis(w: WeylElement) -> HeckeElement:
    return HeckeAlgebra.of(w.system).kl(w)


def euler_pairing(a: HeckeElement, b: HeckeElement) -> LaurentPoly:
    """``sum_w a_w * bar(b)_w``: linear in ``a``, bar-semilinear in ``b``."""
    return a.algebra.euler_pairing(a, b)


# -- p-canonical tables ---------------------------------------------------

CHECK_TRIANGULAR = "triangularity"
CHECK_BAR = "bar-invariance"
CHECK_POSITIVE = "KL-expansion nonnegativity"
CHECK_CHAR0 = "characteristic-0 KL agreement"


@dataclass(frozen=True)
class PCanTable:
    """Standard-basis expansions of a (p-)canonical basis, one per element."""

    system: CoxeterSystem
    characteristic: int
    entries: Mapping[WeylElement, HeckeElement] = field(repr=False)

    @property
    def cartan_type(self) -> str:
        return self.system.cartan_type

    def entry(self, w: WeylElement) -> HeckeElement:
        if w.system != self.system:
            raise SystemMismatchError(f"{w!r} is not in {self.cartan_type}")
        try:
            return self.entries[w]
        except KeyError:
            raise MissingEntryError(
                f"missing table entry for w={list(w.word)} in {self.cartan_type}") from None

    def covers(self) -> bool:
        return len(self.entries) == self.system.order

    def validate(self) -> None:
        """Raise :class:`TableValidationError` naming the first bad ``w`` and check."""
        if self.characteristic < 0:
            raise TableValidationError("characteristic", None, f"{self.characteristic} < 0")
        system = self.system
        alg = HeckeAlgebra.of(system)
        for w in system.sorted_elements(self.entries):
            h = self.entries[w]
            if h.system != system:
                raise TableValidationError(CHECK_TRIANGULAR, w.word, "entry from another system")
            if h.coeff(w) != 1:
                raise TableValidationError(CHECK_TRIANGULAR, w.word,
                                           f"coefficient of H_w is {h.coeff(w)}, expected 1")
            below = system.bruhat_ideal(w)
            stray = [y for y in h.support() if y.index not in below]
            if stray:
                raise TableValidationError(CHECK_TRIANGULAR, w.word,
                                           f"support contains y={list(stray[0].word)} not <= w")
            if alg.bar(h) != h:
                raise TableValidationError(CHECK_BAR, w.word)
            for y, m in alg.kl_expansion(h).items():
                if not (m.is_bar_invariant() and m.is_nonnegative()):
                    raise TableValidationError(CHECK_POSITIVE, w.word,
                                               f"coefficient of b_y, y={list(y.word)}, is {m}")
            if self.characteristic == 0 and h != alg.kl(w):
                raise TableValidationError(CHECK_CHAR0, w.word)

    def to_json(self) -> dict[str, Any]:
        rows = [{"w": list(w.word), "expansion": self.entries[w].to_expansion()}
                for w in self.system.sorted_elements(self.entries)]
        return {"cartan_type": self.cartan_type, "characteristic": self.characteristic,
                "entries": rows}

    @classmethod
    def from_json(cls, data: Mapping[str, Any], validate: bool = True) -> PCanTable:
        try:
            ctype = data["cartan_type"]
            char = data["characteristic"]
            rows = data["entries"]
        except (KeyError, TypeError) as exc:
            raise TableParseError(f"missing field {exc}") from None
        try:
            system = CoxeterSystem.get(str(ctype))
        except ValueError as exc:
            raise TableParseError(str(exc)) from None
        if not isinstance(char, int) or isinstance(char, bool):
            raise TableParseError(f"characteristic must be an integer, got {char!r}")
        if not isinstance(rows, list):
            raise TableParseError("entries must be a list")
        alg = HeckeAlgebra.of(system)
        entries: dict[WeylElement, HeckeElement] = {}
        for row in rows:
            try:
                w = _parse_reduced(system, row["w"])
                terms = {}
                for term in row["expansion"]:
                    y = _parse_reduced(system, term["y"])
                    if y in terms:
                        raise TableParseError(f"duplicate y={term['y']} in entry w={row['w']}")
                    terms[y] = LaurentPoly.from_json(term["coeffs"])
            except TableParseError:
                raise
            except (KeyError, TypeError, ValueError) as exc:
                raise TableParseError(f"malformed entry {row!r}: {exc}") from None
            if w in entries:
                raise TableParseError(f"duplicate entry w={row['w']}")
            entries[w] = alg.element(terms)
        table = cls(system, char, entries)
        if validate:
            table.validate()
        return table


def _parse_reduced(system: CoxeterSystem, word: Any) -> WeylElement:
    if not isinstance(word, list) or not all(isinstance(i, int) for i in word):
        raise TableParseError(f"word must be a list of integers, got {word!r}")
    w = system.element(word)
    if w.length != len(word):
        raise TableParseError(f"word {word} is not reduced")
    return w


def kl_table(system: CoxeterSystem | str) -> PCanTable:
    """The characteristic-0 table: the KL basis on every element."""
    if isinstance(system, str):
        system = CoxeterSystem.get(system)
    alg = HeckeAlgebra.of(system)
    return PCanTable(system, 0, {w: alg.kl(w) for w in system})


def load_pcan(source: str | os.PathLike | Mapping[str, Any] | None = None, *,
              cartan_type: str | None = None, characteristic: int | None = None) -> PCanTable:
    """Load and validate a table; with no source and characteristic 0, synthesize it."""
    if source is None:
        if characteristic != 0 or cartan_type is None:
            raise TableParseError("a table source is required unless characteristic is 0")
        return kl_table(cartan_type)
    if isinstance(source, Mapping):
        data = source
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise TableParseError(f"cannot read {os.fspath(source)}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise TableParseError(f"{os.fspath(source)}: invalid JSON ({exc})") from None
    table = PCanTable.from_json(data)
    if cartan_type is not None and parse_type(cartan_type) != (table.system.family,
                                                               table.system.rank):
        raise TableParseError(f"table is for {table.cartan_type}, expected {cartan_type}")
    if characteristic is not None and table.characteristic != characteristic:
        raise TableParseError(
            f"table has characteristic {table.characteristic}, expected {characteristic}")
    return table

