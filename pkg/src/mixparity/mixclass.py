"""Character classes of mixed objects on a flag variety, and the operators acting on them.

Every object ``F`` gets a class ``ch(F)`` in the Hecke algebra, read in the
standard basis.  The conventions are fixed once and used throughout:

====================  ===============================
object or operation   effect on classes
====================  ===============================
standard ``D_w``      ``H_w``
costandard ``N_w``    ``bar(H_w)``
Tate twist ``<1>``    multiply by ``v``
shift ``[1]``         multiply by ``-1``
internal ``{1}``      multiply by ``-v^-1``
Verdier duality       ``bar``
====================  ===============================

Since ``<1> = {-1}[1]``, the last two rows are forced once the first three
are chosen.  Parity classes are the table entries pushed through
``sigma: v -> -v^-1``, which on ``P^1`` reproduces ``E_s = H_s - v^-1 H_e``.

Dual-group objects live in ``ctx.dual()``, a context over the Langlands
dual system with the two tables swapped.

>>> ctx = MixedContext.characteristic_zero("A1")
>>> s = ctx.system.s(1)
>>> ctx.parity_class(s)
-v^-1*H_e + H_s1
>>> ctx.tilting_class(s)
v*H_e + H_s1
>>> ctx.hom_hilbert(s, s)
1 + t^2
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Union

from .coxeter import CoxeterSystem, WeylElement, dual_system
from .errors import SingularSystemError, SystemMismatchError
from .hecke import HeckeAlgebra, HeckeElement, PCanTable, kl_table, word_key
from .ring import LaurentPoly, as_poly, bar, sigma, subst_neg_inv

__all__ = [
    "BigradedSeries",
    "GroupRingElement",
    "MixedContext",
    "ObjectClass",
    "ParabolicClass",
    "PerversityResult",
    "convolve",
    "degrade",
    "kappa",
    "ringel",
    "ringel_inv",
]

ElementLike = Union[WeylElement, Sequence[int]]

_NEG_VINV = LaurentPoly.monomial(-1, -1)  # the class of {1}
_V = LaurentPoly.gen()


@dataclass(frozen=True, eq=False)
class MixedContext:
    """A Weyl group with parity tables for it and for its Langlands dual."""

    system: CoxeterSystem
    pcan: PCanTable = field(repr=False)
    pcan_dual: PCanTable = field(repr=False)
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.pcan.system != self.system:
            raise SystemMismatchError(
                f"table is for {self.pcan.cartan_type}, system is {self.system.cartan_type}")
        dual = dual_system(self.system)
        if self.pcan_dual.system != dual:
            raise SystemMismatchError(
                f"dual table is for {self.pcan_dual.cartan_type}, expected {dual.cartan_type}")
        if self.pcan.characteristic != self.pcan_dual.characteristic:
            raise ValueError("tables have different characteristics "
                             f"({self.pcan.characteristic} vs {self.pcan_dual.characteristic})")

    @classmethod
    def characteristic_zero(cls, system: CoxeterSystem | str) -> MixedContext:
        if isinstance(system, str):
            system = CoxeterSystem.get(system)
        return cls(system, kl_table(system), kl_table(dual_system(system)))

    @property
    def characteristic(self) -> int:
        return self.pcan.characteristic

    @property
    def algebra(self) -> HeckeAlgebra:
        return HeckeAlgebra.of(self.system)

    def dual(self) -> MixedContext:
        d = self._memo.get("dual")
        if d is None:
            d = MixedContext(dual_system(self.system), self.pcan_dual, self.pcan)
            d._memo["dual"] = self
            self._memo["dual"] = d
        return d

    def __repr__(self) -> str:
        return f"MixedContext({self.system.cartan_type}, char={self.characteristic})"

    # -- helpers ----------------------------------------------------------

    def element(self, w: ElementLike) -> WeylElement:
        if isinstance(w, WeylElement):
            if w.system != self.system:
                raise SystemMismatchError(f"{w!r} is not in {self.system.cartan_type}")
            return w
        return self.system.element(w)

    def wrap(self, h: HeckeElement) -> ObjectClass:
        if h.system != self.system:
            raise SystemMismatchError(f"{h.system.cartan_type} class in {self!r}")
        return ObjectClass(h, self)

    def zero(self) -> ObjectClass:
        return self.wrap(self.algebra.zero())

    # -- the object families ----------------------------------------------

    def std_class(self, w: ElementLike) -> ObjectClass:
        return self.wrap(self.algebra.std(self.element(w)))

    def costd_class(self, w: ElementLike) -> ObjectClass:
        return self.wrap(self.algebra.std(self.element(w)).bar())

    def parity_class(self, w: ElementLike) -> ObjectClass:
        return self.wrap(self.pcan.entry(self.element(w)).map_coeffs(sigma))

    def tilting_class(self, w: ElementLike) -> ObjectClass:
        """``sum_y h_{y,w^-1}(v) H_{y^-1}`` with ``h`` read from the dual table."""
        w = self.element(w)
        dsys = self.pcan_dual.system
        entry = self.pcan_dual.entry(dsys.element(w.inverse().word))
        out = {self.system.element(y.word).inverse(): a for y, a in entry.items()}
        return self.wrap(self.algebra.element(out))

    def projective_class(self, w: ElementLike) -> ObjectClass:
        w = self.element(w)
        return ringel(self.tilting_class(w * self.system.longest))

    def simple_class(self, w: ElementLike) -> ObjectClass:
        return self._simples()[self.element(w)]

    def _simples(self) -> dict[WeylElement, ObjectClass]:
        got = self._memo.get("simples")
        if got is not None:
            return got
        els = self.system.elements
        proj = {s: self.projective_class(s).hecke for s in els}
        simples: dict[WeylElement, ObjectClass] = {}
        # costd(t) = sum_s bar((P_s : D_t)) L_s, unitriangular in ShortLex order
        for t in els:
            acc = self.costd_class(t).hecke
            for s in els:
                m = bar(proj[s].coeff(t))
                if not m:
                    continue
                if s == t:
                    if m != 1:
                        raise SingularSystemError(
                            f"diagonal multiplicity at w={list(t.word)} is {m}, expected 1")
                    continue
                if s.index > t.index:
                    raise SingularSystemError(
                        f"(P_{list(s.word)} : D_{list(t.word)}) = {m} breaks triangularity")
                acc = acc - simples[s].hecke.scale(m)
            if proj[t].coeff(t) != 1:
                raise SingularSystemError(
                    f"diagonal multiplicity at w={list(t.word)} is {proj[t].coeff(t)}, expected 1")
            simples[t] = self.wrap(acc)
        self._memo["simples"] = simples
        return simples

    # -- partial flag varieties (one simple reflection) ---------------------

    def pi_push_std(self, w: ElementLike, s: int, variant: str = "dagger"
                    ) -> tuple[WeylElement, LaurentPoly]:
        """Coset label (minimal representative) and scalar for the pushforward of ``D_w``.

        ``variant`` picks the internal shift applied after the plain pushforward:
        ``dagger`` is ``{1}``, ``ddagger`` is ``{-1}``, ``star`` is none.
        """
        w = self.element(w)
        self.system._check_gen(s)
        try:
            extra = {"dagger": 1, "ddagger": -1, "star": 0}[variant]
        except KeyError:
            raise ValueError(f"unknown variant {variant!r}") from None
        rep = self.system.min_coset_rep(w, [s])
        # f_* D_x = D_t {dim Y_t - dim X_x}
        shift = rep.length - w.length + extra
        return rep, _NEG_VINV ** shift

    def pi_push(self, c: ObjectClass, s: int, variant: str = "dagger") -> ParabolicClass:
        self._own(c)
        out: dict[WeylElement, LaurentPoly] = {}
        for w, a in c.hecke.items():
            rep, k = self.pi_push_std(w, s, variant)
            out[rep] = out.get(rep, LaurentPoly()) + a * k
        return ParabolicClass(self, s, {r: a for r, a in out.items() if a})

    def pi_pull_std(self, wbar: ElementLike, s: int) -> ObjectClass:
        """``H_w - v^-1 H_ws`` for the maximal representative ``w`` of the coset of ``wbar``."""
        self.system._check_gen(s)
        w = self.system.max_coset_rep(self.element(wbar), [s])
        ws = w.right_mul(s)
        return self.wrap(self.algebra.element({w: 1, ws: _NEG_VINV}))

    def pi_pull(self, p: ParabolicClass) -> ObjectClass:
        out = self.zero()
        for rep, a in p.coeffs.items():
            out = out + self.pi_pull_std(rep, p.s).scale(a)
        return out

    # -- criteria and series ----------------------------------------------

    def is_parity_perverse(self, w: ElementLike) -> PerversityResult:
        """Perverse iff the dual tilting class of ``w^-1`` has no ``N_u<n>``, ``n > 0``."""
        w = self.element(w)
        d = self.dual()
        t = d.tilting_class(d.system.element(w.inverse().word))
        # t = sum_u c_u bar(H_u), so bar(t) has coordinates bar(c_u)
        cert = []
        for u, a in t.hecke.bar().items():
            for n, k in bar(a).items():
                if n > 0:
                    cert.append((u, n, k))
        return PerversityResult(w, not cert, tuple(cert))

    def hom_hilbert(self, x: ElementLike, y: ElementLike) -> LaurentPoly:
        """Graded dimension of ``Hom(E_x, E_y{m})`` as a polynomial in ``t``."""
        p = self.algebra.euler_pairing(self.parity_class(x).hecke, self.parity_class(y).hecke)
        return subst_neg_inv(p)

    def ext_algebra_hilbert(self, ws: Iterable[ElementLike]) -> BigradedSeries:
        els = sorted({self.element(w) for w in ws}, key=lambda e: e.index)
        dims: dict[int, int] = {}
        for x in els:
            for y in els:
                for j, k in self.hom_hilbert(x, y).items():
                    dims[j] = dims.get(j, 0) + k
        return BigradedSeries({(j, j): k for j, k in sorted(dims.items()) if k})

    def _own(self, c: ObjectClass) -> None:
        if c.hecke.system != self.system:
            raise SystemMismatchError(f"{c.hecke.system.cartan_type} class in {self!r}")


@dataclass(frozen=True)
class ObjectClass:
    """The class of a mixed object, with its context."""

    hecke: HeckeElement
    context: MixedContext = field(compare=False, repr=False)

    def __repr__(self) -> str:
        return repr(self.hecke)

    def coeff(self, w: ElementLike) -> LaurentPoly:
        return self.hecke.coeff(self.context.element(w))

    def items(self):
        return self.hecke.items()

    def is_zero(self) -> bool:
        return self.hecke.is_zero()

    def _same(self, other: ObjectClass) -> None:
        if not isinstance(other, ObjectClass):
            raise TypeError(f"expected ObjectClass, got {type(other).__name__}")
        a, b = self.context, other.context
        if a.system != b.system or a.characteristic != b.characteristic:
            raise SystemMismatchError(f"mismatched contexts {a!r} and {b!r}")

    def __add__(self, other: ObjectClass) -> ObjectClass:
        self._same(other)
        return ObjectClass(self.hecke + other.hecke, self.context)

    def __sub__(self, other: ObjectClass) -> ObjectClass:
        self._same(other)
        return ObjectClass(self.hecke - other.hecke, self.context)

    def __neg__(self) -> ObjectClass:
        return ObjectClass(-self.hecke, self.context)

    def scale(self, c) -> ObjectClass:
        return ObjectClass(self.hecke.scale(c), self.context)

    def __mul__(self, c):
        if isinstance(c, ObjectClass):
            return convolve(self, c)
        if isinstance(c, (int, LaurentPoly)) and not isinstance(c, bool):
            return self.scale(c)
        return NotImplemented

    def __rmul__(self, c):
        if isinstance(c, (int, LaurentPoly)) and not isinstance(c, bool):
            return self.scale(c)
        return NotImplemented

    def twist(self, n: int = 1) -> ObjectClass:
        """``<n>``"""
        return self.scale(_V**n)

    def shift(self, n: int = 1) -> ObjectClass:
        """``[n]``"""
        return self.scale(-1 if n % 2 else 1)

    def internal_shift(self, n: int = 1) -> ObjectClass:
        """``{n}``"""
        return self.scale(_NEG_VINV**n)

    def verdier(self) -> ObjectClass:
        return ObjectClass(self.hecke.bar(), self.context)

    def to_json(self) -> dict[str, Any]:
        return self.hecke.to_json()


def kappa(c: ObjectClass) -> ObjectClass:
    """``sum a_w H_w -> sum sigma(a_w) H_{w^-1}`` into the dual context."""
    d = c.context.dual()
    out = {d.system.element(w.inverse().word): sigma(a) for w, a in c.hecke.items()}
    return d.wrap(d.algebra.element(out))


def ringel(c: ObjectClass) -> ObjectClass:
    """Convolution with the standard object of ``w0``."""
    ctx = c.context
    return ObjectClass(c.hecke * ctx.algebra.std(ctx.system.longest), ctx)


def ringel_inv(c: ObjectClass) -> ObjectClass:
    ctx = c.context
    return ObjectClass(c.hecke * ctx.algebra.std(ctx.system.longest).bar(), ctx)


def convolve(a: ObjectClass, b: ObjectClass) -> ObjectClass:
    a._same(b)
    return ObjectClass(a.hecke * b.hecke, a.context)


@dataclass(frozen=True)
class ParabolicClass:
    """A class on the partial flag variety for one simple reflection ``s``.

    Keys are minimal coset representatives.
    """

    context: MixedContext = field(compare=False, repr=False)
    s: int
    coeffs: Mapping[WeylElement, LaurentPoly]


@dataclass(frozen=True)
class PerversityResult:
    """Outcome of the parity-perversity test.  ``certificate`` lists ``(u, n, mult)``
    with ``n > 0`` and ``mult`` the multiplicity of the costandard ``N_u<n>``."""

    w: WeylElement
    perverse: bool
    certificate: tuple[tuple[WeylElement, int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.perverse


@dataclass(frozen=True)
class BigradedSeries:
    """Nonzero entries ``(i, j) -> dim`` of a bigraded vector space."""

    entries: Mapping[tuple[int, int], int]

    def dim(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.entries)

    def total(self) -> LaurentPoly:
        out: dict[int, int] = {}
        for (_, j), k in self.entries.items():
            out[j] = out.get(j, 0) + k
        return LaurentPoly(out, var="t")


class GroupRingElement:
    """An element of ``Z[W]``, the specialization ``v = 1``."""

    __slots__ = ("system", "coeffs")

    def __init__(self, system: CoxeterSystem, coeffs: Mapping[WeylElement, int]):
        self.system = system
        self.coeffs = {w: n for w, n in coeffs.items() if n}

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.system == other.system and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.system.cartan_type, frozenset(self.coeffs.items())))

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        out = dict(self.coeffs)
        for w, n in other.coeffs.items():
            out[w] = out.get(w, 0) + n
        return GroupRingElement(self.system, out)

    def __mul__(self, other: GroupRingElement) -> GroupRingElement:
        out: dict[WeylElement, int] = {}
        for x, a in self.coeffs.items():
            for y, b in other.coeffs.items():
                xy = x * y
                out[xy] = out.get(xy, 0) + a * b
        return GroupRingElement(self.system, out)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = sorted(self.coeffs.items(), key=lambda kv: kv[0].index)
        return " + ".join(f"{n}*[{w!r}]" for w, n in terms)


def degrade(c: ObjectClass) -> GroupRingElement:
    """Forget the grading: evaluate every coefficient at ``v = 1``."""
    return GroupRingElement(c.context.system, c.hecke.evaluate(1))


def as_class(ctx: MixedContext, coeffs: Mapping[ElementLike, Any]) -> ObjectClass:
    return ctx.wrap(ctx.algebra.element({ctx.element(w): as_poly(a) for w, a in coeffs.items()}))
