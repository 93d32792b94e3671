"""The bundled presentation for ``SL_2``: parity sheaves on ``P^1``.

Two generators, the skyscraper ``E_e`` at the closed point (dimension 0) and
the shifted constant sheaf ``E_s`` (dimension 1).  Graded homs come from the
cohomology of a point and of ``P^1``:

* ``Hom(E_e, E_e{m})``: ``m = 0``
* ``Hom(E_s, E_s{m})``: ``m = 0, 2`` (identity and the fundamental class ``x``)
* ``Hom(E_e, E_s{m})``: ``m = 1`` (``i``, the Gysin map)
* ``Hom(E_s, E_e{m})``: ``m = 1`` (``p``, restriction to the point)

``i{1} o p = x`` and ``p{1} o i = 0``.  The adjunction unit
``E_s -> i_* i^* E_s = E_e{1}`` is ``p``.
"""

from __future__ import annotations

from .category import GradedObject, Morphism, PresentedCategory
from .complexes import ComplexObj, single

__all__ = ["sl2_presentation", "sl2_standard", "sl2_costandard", "sl2_parity"]

P = ("s", "e", 1, 0)   # restriction   E_s -> E_e{1}
I = ("e", "s", 1, 0)   # Gysin         E_e -> E_s{1}
X = ("s", "s", 2, 0)   # fundamental class


def _build() -> PresentedCategory:
    return PresentedCategory(
        generators={"e": 0, "s": 1},
        hom_dims={("e", "e", 0): 1, ("s", "s", 0): 1, ("s", "s", 2): 1,
                  ("e", "s", 1): 1, ("s", "e", 1): 1},
        composition={(P, I): {0: 1}},
        weyl_words={"e": (), "s": (1,)},
        cartan_type="A1",
        closed="e",
        units={"s": Morphism(GradedObject.of(("s", 0)), GradedObject.of(("e", 1)),
                             {(0, 0): {0: 1}})},
        name="SL2",
    )


_SL2 = _build()


def sl2_presentation() -> PresentedCategory:
    return _SL2


def sl2_parity(label: str) -> ComplexObj:
    return single(_SL2, label)


def sl2_standard(label: str) -> ComplexObj:
    """``D_e = E_e``; ``D_s = [E_s -> E_e{1}]`` in degrees 0, 1."""
    if label == "e":
        return single(_SL2, "e")
    if label == "s":
        src, tgt = GradedObject.of(("s", 0)), GradedObject.of(("e", 1))
        return ComplexObj(_SL2, {0: src, 1: tgt}, {0: Morphism(src, tgt, {(0, 0): {0: 1}})})
    raise ValueError(f"unknown label {label!r}")


def sl2_costandard(label: str) -> ComplexObj:
    """``N_e = E_e``; ``N_s = [E_e{-1} -> E_s]`` in degrees -1, 0."""
    if label == "e":
        return single(_SL2, "e")
    if label == "s":
        src, tgt = GradedObject.of(("e", -1)), GradedObject.of(("s", 0))
        return ComplexObj(_SL2, {-1: src, 0: tgt}, {-1: Morphism(src, tgt, {(0, 0): {0: 1}})})
    raise ValueError(f"unknown label {label!r}")
