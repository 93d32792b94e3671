"""Named check suites run by the command line: identities, perversity, calibration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .hecke import HeckeAlgebra
from .mixclass import MixedContext, kappa, ringel, ringel_inv
from .ring import LaurentPoly

__all__ = ["Check", "SUITES", "run_suite"]

_V = LaurentPoly.gen()


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _first_failure(items, pred: Callable[[Any], bool]) -> str:
    for x in items:
        if not pred(x):
            return f"fails at {x!r}"
    return ""


def _check(name: str, items, pred) -> Check:
    detail = _first_failure(items, pred)
    return Check(name, not detail, detail)


def identities(ctx: MixedContext) -> list[Check]:
    W = ctx.system
    alg = HeckeAlgebra.of(W)
    els = W.elements
    w0 = W.longest
    pairs = [(y, w) for y in els for w in els]
    d = ctx.dual()
    out = [
        _check("convolution of standards with additive lengths",
               [(y, w) for y, w in pairs if (y * w).length == y.length + w.length],
               lambda p: alg.std(p[0]) * alg.std(p[1]) == alg.std(p[0] * p[1])),
        _check("standard convolved with costandard of the inverse is the unit",
               els, lambda w: (ctx.std_class(w) * ctx.costd_class(w.inverse())).hecke == alg.one()),
        _check("standard/costandard orthogonality", pairs,
               lambda p: alg.euler_pairing(alg.std(p[0]), alg.std(p[1]).bar())
               == (1 if p[0] == p[1] else 0)),
        _check("bar is an involution on the standard basis", els,
               lambda w: alg.std(w).bar().bar() == alg.std(w)),
        _check("KL basis bar-invariant with coefficients in vN[v]", els,
               lambda w: _kl_ok(alg, w)),
        _check("kappa is an involution", els,
               lambda w: kappa(kappa(ctx.parity_class(w))) == ctx.parity_class(w)),
        _check("kappa sends standards to dual standards of the inverse", els,
               lambda w: kappa(ctx.std_class(w)) == d.std_class(w.inverse().word)),
        _check("kappa sends parity classes to dual tilting classes of the inverse", els,
               lambda w: kappa(ctx.parity_class(w)) == d.tilting_class(w.inverse().word)),
        _check("Ringel duality sends costandards to standards", els,
               lambda w: ringel(ctx.costd_class(w)) == ctx.std_class(w * w0)),
        _check("Ringel duality is invertible", els,
               lambda w: ringel_inv(ringel(ctx.parity_class(w))) == ctx.parity_class(w)),
        _check("tilting exponents have the parity of the length difference", els,
               lambda w: all((k - w.length + t.length) % 2 == 0
                             for t, a in ctx.tilting_class(w).items() for k, _ in a.items())),
        _check("projective classes have nonnegative standard multiplicities", els,
               lambda w: all(a.is_nonnegative() for _, a in ctx.projective_class(w).items())),
        _check("hom_hilbert nonnegative with the parity of the lengths", pairs,
               lambda p: all(c > 0 and (k - p[0].length - p[1].length) % 2 == 0
                             for k, c in ctx.hom_hilbert(*p).items())),
    ]
    try:
        simples = {w: ctx.simple_class(w) for w in els}
        out.append(Check("BGG reciprocity system is unitriangular", True))
        if ctx.characteristic == 0:
            out.append(_check("simple classes equal parity classes in characteristic 0", els,
                              lambda w: simples[w] == ctx.parity_class(w)))
    except ArithmeticError as exc:
        out.append(Check("BGG reciprocity system is unitriangular", False, str(exc)))
    return out


def _kl_ok(alg: HeckeAlgebra, w) -> bool:
    b = alg.kl(w)
    if b.bar() != b or b.coeff(w) != 1:
        return False
    return all(a.min_exp() >= 1 and a.is_nonnegative() for y, a in b.items() if y != w)


def perversity(ctx: MixedContext) -> list[Check]:
    out = []
    for w in ctx.system:
        r = ctx.is_parity_perverse(w)
        detail = "; ".join(f"u={list(u.word)} n={n} mult={k}" for u, n, k in r.certificate)
        out.append(Check(f"parity sheaf w={list(w.word)} is perverse", r.perverse, detail))
    return out


def calibration(ctx: MixedContext | None = None) -> list[Check]:
    """Rank-one checks that pin the sign conventions; independent of the requested type."""
    from .homotopy import (ch, e_plus, hom_complex, sl2_costandard, sl2_parity,
                           sl2_presentation, sl2_standard)

    a1 = MixedContext.characteristic_zero("A1")
    e, s = a1.system.identity, a1.system.s(1)
    t = LaurentPoly.gen("t")
    cat = sl2_presentation()
    window = range(-3, 4)
    out = [
        Check("parity class of s is H_s - v^-1 H_e",
              a1.parity_class(s) == a1.std_class(s) - a1.std_class(e).scale(_V**-1)),
        Check("hom_hilbert(s, s) = 1 + t^2", a1.hom_hilbert(s, s) == 1 + t**2),
        Check("hom_hilbert(e, s) = t", a1.hom_hilbert(e, s) == t),
        Check("ext algebra series of {e, s} totals 2 + 2t + t^2",
              a1.ext_algebra_hilbert([e, s]).total() == 2 + 2 * t + t**2),
        Check("tilting class of s is H_s + v H_e",
              a1.tilting_class(s) == a1.std_class(s) + a1.std_class(e).scale(_V)),
    ]
    dims_ok = True
    for x in "es":
        for y in "es":
            R = hom_complex(sl2_parity(x), sl2_parity(y))
            got = {m: R.cohomology(m, 0) for m in range(-4, 5) if R.cohomology(m, 0)}
            want = dict(a1.hom_hilbert([] if x == "e" else [1], [] if y == "e" else [1]).items())
            dims_ok &= got == want
    out.append(Check("homotopy Hom dimensions match hom_hilbert", dims_ok))
    tab = hom_complex(sl2_standard("s"), sl2_costandard("s")).table(window)
    out.append(Check("Hom(D_s, N_s<n>[i]) is one-dimensional exactly at n = i = 0",
                     tab == {(n, i): int(n == i == 0) for n in window for i in window}))
    van = hom_complex(e_plus(cat, "s"), sl2_parity("e"))
    out.append(Check("e_plus(s) has no maps to the closed generator",
                     all(van.cohomology(m, k) == 0 for m in window for k in window)))
    out.append(Check("ch of the standard complex of s is H_s",
                     ch(sl2_standard("s"), a1) == a1.std_class(s)))
    return out


SUITES: dict[str, Callable[[MixedContext], list[Check]]] = {
    "identities": identities,
    "perversity": perversity,
    "calibration": calibration,
}


def run_suite(name: str, ctx: MixedContext) -> list[Check]:
    return SUITES[name](ctx)
