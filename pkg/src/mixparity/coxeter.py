"""Finite Weyl groups: normal forms, length, Bruhat order, parabolic cosets.

Elements are enumerated once per system by letting ``W`` act on the
regular weight rho (all fundamental-weight coordinates equal to 1).  A
coordinate ``c_i`` of ``w(rho)`` is negative exactly when ``s_i`` is a left
descent of ``w``, which gives both lengths and ShortLex normal forms without
any floating point.

Generators are numbered from 1, as in serialized words.

>>> W = CoxeterSystem.get("A2")
>>> W.order
6
>>> W.element([1, 2, 1]) == W.element([2, 1, 2])
True
>>> W.longest.word
(1, 2, 1)
"""

from __future__ import annotations

import re
import threading
from collections.abc import Iterable, Sequence
from functools import lru_cache
from math import factorial

from .errors import SystemMismatchError

__all__ = [
    "CoxeterSystem",
    "WeylElement",
    "cartan_matrix",
    "dual_system",
    "weyl_order",
]

_TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


def parse_type(cartan_type: str) -> tuple[str, int]:
    m = _TYPE_RE.match(cartan_type)
    if not m:
        raise ValueError(f"bad Cartan type {cartan_type!r}")
    family, rank = m.group(1).upper(), int(m.group(2))
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[family]
    if not ok:
        raise ValueError(f"no Weyl group of type {family}{rank}")
    return family, rank


def weyl_order(family: str, rank: int) -> int:
    n = rank
    if family == "A":
        return factorial(n + 1)
    if family in "BC":
        return 2**n * factorial(n)
    if family == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(family, n)]


def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Bourbaki labelling, ``A[i][j] = <alpha_i^vee, alpha_j>``."""
    n = rank
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        A[i][j], A[j][i] = aij, aji

    if family in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if family == "B":
            A[n - 1][n - 2] = -2
        elif family == "C":
            A[n - 2][n - 1] = -2
    elif family == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif family == "G":
        link(0, 1, -3, -1)
    return tuple(tuple(r) for r in A)


def _coxeter_entry(aij: int, aji: int) -> int:
    return {0: 2, 1: 3, 2: 4, 3: 6}[aij * aji]


class CoxeterSystem:
    """A finite Weyl group with all elements enumerated in ShortLex order."""

    def __init__(self, cartan_type: str):
        family, rank = parse_type(cartan_type)
        self.family = family
        self.rank = rank
        self.cartan_type = f"{family}{rank}"
        self.cartan = cartan_matrix(family, rank)
        self.coxeter_matrix = tuple(
            tuple(1 if i == j else _coxeter_entry(self.cartan[i][j], self.cartan[j][i])
                  for j in range(rank))
            for i in range(rank)
        )
        # column i of the Cartan matrix = alpha_i in fundamental-weight coordinates
        self._cols = tuple(tuple(self.cartan[j][i] for j in range(rank)) for i in range(rank))
        self._bruhat: dict[int, frozenset[int]] = {}
        self._lock = threading.Lock()
        self._enumerate()

    @staticmethod
    def get(cartan_type: str) -> CoxeterSystem:
        """Shared instance per Cartan type."""
        family, rank = parse_type(cartan_type)
        return _system(f"{family}{rank}")

    # -- enumeration ------------------------------------------------------

    def _reflect(self, c: tuple[int, ...], i: int) -> tuple[int, ...]:
        ci = c[i]
        if not ci:
            return c
        return tuple(cj - ci * a for cj, a in zip(c, self._cols[i]))

    def _act(self, word: Sequence[int], c: tuple[int, ...]) -> tuple[int, ...]:
        for letter in reversed(word):
            c = self._reflect(c, letter - 1)
        return c

    def _enumerate(self) -> None:
        r = self.rank
        expected = weyl_order(self.family, r)
        rho = (1,) * r
        words: dict[tuple[int, ...], tuple[int, ...]] = {rho: ()}
        frontier = [rho]
        while frontier:
            nxt = []
            for c in frontier:
                for i in range(r):
                    if c[i] > 0:  # s_i w is longer than w
                        d = self._reflect(c, i)
                        if d not in words:
                            # normal form: smallest left descent first
                            j = next(k for k in range(r) if d[k] < 0)
                            words[d] = (j + 1,) + words[self._reflect(d, j)]
                            nxt.append(d)
            if len(words) > expected:
                raise RuntimeError(f"{self.cartan_type}: enumeration exceeded |W|={expected}")
            frontier = nxt
        if len(words) != expected:
            raise RuntimeError(f"{self.cartan_type}: enumerated {len(words)} != {expected}")

        order = sorted(words, key=lambda c: (len(words[c]), words[c]))
        self._vecs = order
        self._words = [words[c] for c in order]
        self._lookup = {c: k for k, c in enumerate(order)}
        self._length = [len(w) for w in self._words]
        self._lmul = [[self._lookup[self._reflect(c, i)] for c in order] for i in range(r)]
        self._rmul = [
            [self._lookup[self._act(w, self._reflect(rho, i))] for w in self._words]
            for i in range(r)
        ]
        self._inv = [self._lookup[self._act(tuple(reversed(w)), rho)] for w in self._words]
        self.elements = tuple(WeylElement(self, k) for k in range(len(order)))

    # -- basic data -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._words)

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    @property
    def generators(self) -> tuple[WeylElement, ...]:
        return tuple(self.s(i) for i in range(1, self.rank + 1))

    def s(self, i: int) -> WeylElement:
        self._check_gen(i)
        return self.elements[self._lmul[i - 1][0]]

    def _check_gen(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise ValueError(f"{i!r} is not a generator of {self.cartan_type}")

    @property
    def longest(self) -> WeylElement:
        return self.elements[-1]

    def element(self, word: Iterable[int]) -> WeylElement:
        """Element represented by an arbitrary (not necessarily reduced) word."""
        word = tuple(word)
        for i in word:
            self._check_gen(i)
        return self.elements[self._lookup[self._act(word, (1,) * self.rank)]]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self._words)

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.cartan_type!r})"

    # equality by type label: one system per label via get()
    def __eq__(self, other) -> bool:
        return isinstance(other, CoxeterSystem) and self.cartan_type == other.cartan_type

    def __hash__(self) -> int:
        return hash(self.cartan_type)

    # -- operations -------------------------------------------------------

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        self._own(a)
        self._own(b)
        return self.elements[self._lookup[self._act(self._words[a.index], self._vecs[b.index])]]

    def _own(self, x: WeylElement) -> None:
        if x.system != self:
            raise SystemMismatchError(f"{x!r} is not in {self.cartan_type}")

    def bruhat_ideal(self, b: WeylElement) -> frozenset[int]:
        """Indices of all ``a <= b``: products of subwords of the normal form of ``b``."""
        self._own(b)
        got = self._bruhat.get(b.index)
        if got is not None:
            return got
        below = {0}
        for letter in self._words[b.index]:
            col = self._rmul[letter - 1]
            below |= {col[u] for u in below}
        out = frozenset(below)
        with self._lock:
            self._bruhat[b.index] = out
        return out

    def bruhat_leq(self, a: WeylElement, b: WeylElement) -> bool:
        self._own(a)
        self._own(b)
        if self._length[a.index] > self._length[b.index]:
            return False
        return a.index in self.bruhat_ideal(b)

    def _subset(self, I: Iterable[int] | None) -> tuple[int, ...]:
        if I is None:
            return tuple(range(1, self.rank + 1))
        out = []
        for i in I:
            if isinstance(i, WeylElement):
                if i.length != 1:
                    raise ValueError(f"{i!r} is not a simple reflection")
                i = i.word[0]
            self._check_gen(i)
            out.append(i)
        return tuple(sorted(set(out)))

    def longest_element(self, I: Iterable[int] | None = None) -> WeylElement:
        """Longest element of the parabolic subgroup generated by ``I`` (all of S by default)."""
        gens = self._subset(I)
        w = 0
        grown = True
        while grown:
            grown = False
            for i in gens:
                ws = self._rmul[i - 1][w]
                if self._length[ws] > self._length[w]:
                    w, grown = ws, True
        return self.elements[w]

    def parabolic_elements(self, I: Iterable[int] | None) -> tuple[WeylElement, ...]:
        gens = self._subset(I)
        seen = {0}
        frontier = [0]
        while frontier:
            frontier = [self._rmul[i - 1][w] for w in frontier for i in gens]
            frontier = [w for w in set(frontier) if w not in seen]
            seen.update(frontier)
        return tuple(self.elements[k] for k in sorted(seen))

    def min_coset_rep(self, w: WeylElement, I: Iterable[int] | None) -> WeylElement:
        """Minimal-length element of the coset ``w W_I``."""
        self._own(w)
        gens = self._subset(I)
        x = w.index
        shrunk = True
        while shrunk:
            shrunk = False
            for i in gens:
                xs = self._rmul[i - 1][x]
                if self._length[xs] < self._length[x]:
                    x, shrunk = xs, True
        return self.elements[x]

    def max_coset_rep(self, w: WeylElement, I: Iterable[int] | None) -> WeylElement:
        return self.min_coset_rep(w, I) * self.longest_element(I)

    def sorted_elements(self, elems: Iterable[WeylElement]) -> list[WeylElement]:
        """Length, then ShortLex (this is the enumeration order)."""
        return sorted(elems, key=lambda x: x.index)


class WeylElement:
    """An element of a :class:`CoxeterSystem`, identified by its ShortLex position."""

    __slots__ = ("system", "index")

    def __init__(self, system: CoxeterSystem, index: int):
        self.system = system
        self.index = index

    @property
    def word(self) -> tuple[int, ...]:
        return self.system._words[self.index]

    @property
    def length(self) -> int:
        return self.system._length[self.index]

    def __len__(self) -> int:
        return self.length

    def __mul__(self, other: WeylElement) -> WeylElement:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.system.multiply(self, other)

    def inverse(self) -> WeylElement:
        return self.system.elements[self.system._inv[self.index]]

    def right_mul(self, i: int) -> WeylElement:
        """``w s_i``"""
        self.system._check_gen(i)
        return self.system.elements[self.system._rmul[i - 1][self.index]]

    def left_mul(self, i: int) -> WeylElement:
        """``s_i w``"""
        self.system._check_gen(i)
        return self.system.elements[self.system._lmul[i - 1][self.index]]

    def has_right_descent(self, i: int) -> bool:
        return self.right_mul(i).length < self.length

    def has_left_descent(self, i: int) -> bool:
        return self.left_mul(i).length < self.length

    def right_descents(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.system.rank + 1) if self.has_right_descent(i))

    def left_descents(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.system.rank + 1) if self.has_left_descent(i))

    def bruhat_leq(self, other: WeylElement) -> bool:
        return self.system.bruhat_leq(self, other)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.length, self.word)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.index == other.index and self.system == other.system

    def __hash__(self) -> int:
        return hash((self.system.cartan_type, self.index))

    def __repr__(self) -> str:
        return "e" if not self.word else "".join(f"s{i}" for i in self.word)

    def to_json(self) -> list[int]:
        return list(self.word)


@lru_cache(maxsize=None)
def _system(label: str) -> CoxeterSystem:
    return CoxeterSystem(label)


def dual_system(system: CoxeterSystem) -> CoxeterSystem:
    """Langlands dual: B_n and C_n swap, every other type is its own dual.

    The Coxeter matrix and the numbering of generators are unchanged.
    """
    swap = {"B": "C", "C": "B"}
    return CoxeterSystem.get(f"{swap.get(system.family, system.family)}{system.rank}")
