"""Presented graded additive categories.

A presentation lists generators ``E_a`` (each with the dimension of its
stratum), the dimension of ``Hom(E_a, E_b{m})`` for every internal degree
``m``, and structure constants for composing basis morphisms.  Basis
morphisms are named ``(a, b, m, i)``; index 0 of ``(a, a, 0)`` is the
identity and is never listed explicitly.  Composites not listed are zero.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

from ..errors import CategoryError

Coeff = Union[int, Fraction]
Vector = dict[int, Coeff]            # basis index -> coefficient
Basis = tuple[str, str, int, int]    # (source, target, degree, index)


def _clean(v: Mapping[int, Coeff]) -> Vector:
    return {k: c for k, c in v.items() if c}


def _axpy(out: Vector, c: Coeff, v: Mapping[int, Coeff]) -> None:
    for k, x in v.items():
        s = out.get(k, 0) + c * x
        if s:
            out[k] = s
        else:
            out.pop(k, None)


@dataclass(frozen=True)
class GradedObject:
    """A formal direct sum of shifted generators ``E_a{m}``."""

    summands: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, *summands: tuple[str, int]) -> GradedObject:
        return cls(tuple((str(a), int(m)) for a, m in summands))

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.summands)

    def __getitem__(self, k: int) -> tuple[str, int]:
        return self.summands[k]

    def __add__(self, other: GradedObject) -> GradedObject:
        return GradedObject(self.summands + other.summands)

    def shift(self, m: int) -> GradedObject:
        return GradedObject(tuple((a, k + m) for a, k in self.summands))

    def without(self, k: int) -> GradedObject:
        return GradedObject(self.summands[:k] + self.summands[k + 1:])

    def __repr__(self) -> str:
        if not self.summands:
            return "0"
        return " + ".join(f"E_{a}{{{m}}}" if m else f"E_{a}" for a, m in self.summands)


@dataclass(frozen=True)
class Morphism:
    """A degree-0 map ``source -> target``.

    ``entries[(r, c)]`` is the component from summand ``c`` of the source to
    summand ``r`` of the target, a vector in ``Hom(E_a, E_b{m_r - m_c})``.
    """

    source: GradedObject
    target: GradedObject
    entries: Mapping[tuple[int, int], Vector] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < len(self.target) and 0 <= c < len(self.source)):
                raise CategoryError(f"entry ({r},{c}) out of range for {self.source} -> {self.target}")
            v = _clean(v)
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    def entry(self, r: int, c: int) -> Vector:
        return self.entries.get((r, c), {})

    def is_zero(self) -> bool:
        return not self.entries

    def degree(self, r: int, c: int) -> int:
        return self.target[r][1] - self.source[c][1]

    def scale(self, a: Coeff) -> Morphism:
        return Morphism(self.source, self.target,
                        {k: {i: a * x for i, x in v.items()} for k, v in self.entries.items()})

    def __add__(self, other: Morphism) -> Morphism:
        if (self.source, self.target) != (other.source, other.target):
            raise CategoryError("adding morphisms with different source or target")
        out = {k: dict(v) for k, v in self.entries.items()}
        for k, v in other.entries.items():
            _axpy(out.setdefault(k, {}), 1, v)
        return Morphism(self.source, self.target, out)

    def __neg__(self) -> Morphism:
        return self.scale(-1)

    def to_json(self) -> list[dict[str, Any]]:
        return [{"row": r, "col": c, "coeffs": {str(i): _num_json(x) for i, x in sorted(v.items())}}
                for (r, c), v in sorted(self.entries.items())]

    @classmethod
    def from_json(cls, source: GradedObject, target: GradedObject,
                  data: Sequence[Mapping[str, Any]]) -> Morphism:
        entries = {}
        for item in data:
            entries[(int(item["row"]), int(item["col"]))] = {
                int(i): _num_parse(x) for i, x in item["coeffs"].items()}
        return cls(source, target, entries)


def _num_json(x: Coeff) -> int | str:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def _num_parse(x: Any) -> Coeff:
    if isinstance(x, bool):
        raise CategoryError(f"bad coefficient {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    raise CategoryError(f"bad coefficient {x!r}")


@dataclass(frozen=True, eq=False)
class PresentedCategory:
    """Generators, graded hom dimensions and composition constants."""

    generators: Mapping[str, int]
    hom_dims: Mapping[tuple[str, str, int], int]
    composition: Mapping[tuple[Basis, Basis], Vector] = field(default_factory=dict)
    weyl_words: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    cartan_type: str | None = None
    closed: str | None = None
    units: Mapping[str, Morphism] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "hom_dims", {k: n for k, n in self.hom_dims.items() if n})
        self.validate()

    def __repr__(self) -> str:
        return f"PresentedCategory({self.name or list(self.generators)})"

    # -- lookups ----------------------------------------------------------

    def hom_dim(self, a: str, b: str, m: int) -> int:
        return self.hom_dims.get((a, b, m), 0)

    def degrees(self, a: str, b: str) -> list[int]:
        return sorted(m for (x, y, m) in self.hom_dims if (x, y) == (a, b))

    def basis(self) -> Iterator[Basis]:
        for (a, b, m), n in sorted(self.hom_dims.items()):
            for i in range(n):
                yield (a, b, m, i)

    def is_identity(self, f: Basis) -> bool:
        a, b, m, i = f
        return a == b and m == 0 and i == 0

    def compose_basis(self, g: Basis, f: Basis) -> Vector:
        """``g o f`` for basis morphisms ``f: a -> b{m1}`` and ``g: b -> c{m2}``."""
        if f[1] != g[0]:
            raise CategoryError(f"cannot compose {g} after {f}")
        if self.is_identity(f):
            return {g[3]: 1}
        if self.is_identity(g):
            return {f[3]: 1}
        return dict(self.composition.get((f, g), {}))

    def compose(self, a: str, b: str, c: str, m1: int, m2: int,
                g: Mapping[int, Coeff], f: Mapping[int, Coeff]) -> Vector:
        """Bilinear composite of ``f in Hom(a, b{m1})`` and ``g in Hom(b, c{m2})``."""
        out: Vector = {}
        for i, x in f.items():
            for j, y in g.items():
                _axpy(out, x * y, self.compose_basis((b, c, m2, j), (a, b, m1, i)))
        return out

    def compose_morphisms(self, g: Morphism, f: Morphism) -> Morphism:
        if g.source != f.target:
            raise CategoryError(f"cannot compose: {f.target} != {g.source}")
        X, Y, Z = f.source, f.target, g.target
        out: dict[tuple[int, int], Vector] = {}
        by_col: dict[int, list[tuple[int, Vector]]] = {}
        for (r, c), v in g.entries.items():
            by_col.setdefault(c, []).append((r, v))
        for (y, x), fv in f.entries.items():
            for z, gv in by_col.get(y, ()):
                a, b, c = X[x][0], Y[y][0], Z[z][0]
                comp = self.compose(a, b, c, Y[y][1] - X[x][1], Z[z][1] - Y[y][1], gv, fv)
                _axpy(out.setdefault((z, x), {}), 1, comp)
        return Morphism(X, Z, out)

    def identity(self, X: GradedObject) -> Morphism:
        return Morphism(X, X, {(k, k): {0: 1} for k in range(len(X))})

    def zero_map(self, X: GradedObject, Y: GradedObject) -> Morphism:
        return Morphism(X, Y, {})

    # -- validation -------------------------------------------------------

    def validate(self) -> None:
        gens = self.generators
        for (a, b, m), n in self.hom_dims.items():
            if a not in gens or b not in gens:
                raise CategoryError(f"hom_dims names unknown generator in {(a, b, m)}")
            if not isinstance(n, int) or n < 0:
                raise CategoryError(f"bad dimension {n!r} for {(a, b, m)}")
            if (m - gens[a] - gens[b]) % 2:
                raise CategoryError(f"parity vanishing violated: Hom({a},{b}{{{m}}}) != 0")
        for a in gens:
            if self.hom_dim(a, a, 0) < 1:
                raise CategoryError(f"no identity morphism for {a}")
        for (f, g), v in self.composition.items():
            for h in (f, g):
                if not (0 <= h[3] < self.hom_dim(h[0], h[1], h[2])):
                    raise CategoryError(f"composition names missing basis element {h}")
            if f[1] != g[0]:
                raise CategoryError(f"composition pair {f}, {g} is not composable")
            if self.is_identity(f) or self.is_identity(g):
                raise CategoryError("composites with identities are implicit")
            n = self.hom_dim(f[0], g[1], f[2] + g[2])
            if any(not 0 <= k < n for k in v):
                raise CategoryError(f"composite of {f}, {g} lies outside Hom({f[0]},{g[1]})")
        if self.closed is not None and self.closed not in gens:
            raise CategoryError(f"closed generator {self.closed!r} unknown")
        for t, u in self.units.items():
            if t not in gens or t == self.closed:
                raise CategoryError(f"unit given for {t!r}")
            if u.source != GradedObject.of((t, 0)):
                raise CategoryError(f"unit for {t!r} must start at E_{t}")
            if any(a != self.closed for a, _ in u.target):
                raise CategoryError(f"unit for {t!r} must land on the closed generator")
            self._check_morphism(u)
        self._check_associative()

    def _check_morphism(self, f: Morphism) -> None:
        for (r, c), v in f.entries.items():
            a, b = f.source[c][0], f.target[r][0]
            n = self.hom_dim(a, b, f.degree(r, c))
            if any(not 0 <= i < n for i in v):
                raise CategoryError(
                    f"component ({r},{c}) not in Hom({a},{b}{{{f.degree(r, c)}}})")

    def _check_associative(self) -> None:
        by_source: dict[str, list[Basis]] = {}
        for b in self.basis():
            by_source.setdefault(b[0], []).append(b)
        for f in self.basis():
            for g in by_source.get(f[1], ()):
                gf = self.compose_basis(g, f)
                for h in by_source.get(g[1], ()):
                    hg = self.compose_basis(h, g)
                    left = self.compose(f[0], g[1], h[1], f[2] + g[2], h[2], {h[3]: 1}, gf)
                    right = self.compose(f[0], f[1], h[1], f[2], g[2] + h[2], hg, {f[3]: 1})
                    if left != right:
                        raise CategoryError(f"composition not associative on {f}, {g}, {h}")

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "name": self.name,
            "cartan_type": self.cartan_type,
            "generators": [{"label": a, "dim": d, "w": list(self.weyl_words.get(a, ()))}
                           for a, d in self.generators.items()],
            "hom_dims": [{"source": a, "target": b, "degree": m, "dim": n}
                         for (a, b, m), n in sorted(self.hom_dims.items())],
            "composition": [{"first": list(f), "second": list(g),
                             "result": {str(i): _num_json(x) for i, x in sorted(v.items())}}
                            for (f, g), v in sorted(self.composition.items())],
        }
        if self.closed is not None:
            data["closed_stratum"] = {
                "generator": self.closed,
                "units": {t: {"target": [list(s) for s in u.target], "components": u.to_json()}
                          for t, u in sorted(self.units.items())},
            }
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> PresentedCategory:
        try:
            gens = {g["label"]: int(g["dim"]) for g in data["generators"]}
            words = {g["label"]: tuple(g["w"]) for g in data["generators"] if "w" in g}
            dims = {(h["source"], h["target"], int(h["degree"])): int(h["dim"])
                    for h in data["hom_dims"]}
            comp = {}
            for item in data.get("composition", ()):
                f, g = _basis(item["first"]), _basis(item["second"])
                comp[(f, g)] = {int(i): _num_parse(x) for i, x in item["result"].items()}
            closed, units = None, {}
            if data.get("closed_stratum"):
                cs = data["closed_stratum"]
                closed = cs["generator"]
                for t, u in cs.get("units", {}).items():
                    target = GradedObject.of(*[(a, m) for a, m in u["target"]])
                    units[t] = Morphism.from_json(GradedObject.of((t, 0)), target,
                                                  u["components"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CategoryError(f"malformed presentation: {exc}") from None
        return cls(gens, dims, comp, words, data.get("cartan_type"), closed, units,
                   data.get("name", ""))


def _basis(x: Sequence[Any]) -> Basis:
    a, b, m, i = x
    return (str(a), str(b), int(m), int(i))

