import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys
from oracles import group, kl_polynomials, soergel_h
from mixparity.coxeter import CoxeterSystem
from mixparity.errors import MissingEntryError, SystemMismatchError, TableParseError, \
    TableValidationError
from mixparity.hecke import HeckeAlgebra, HeckeElement, PCanTable, bar_involution, \
    euler_pairing, kl_basis, kl_table, load_pcan, mul, parse_word_key, std, word_key
from mixparity.ring import LaurentPoly, bar

v = LaurentPoly.gen()
A1, A2, B2 = (CoxeterSystem.get(x) for x in ("A1", "A2", "B2"))


def H(W, *word):
    return std(W.element(word))


def test_quadratic_relation_and_products():
    s = A1.s(1)
    assert std(s) * std(s) == std(A1.identity) + std(s).scale(v**-1 - v)
    assert mul(H(A2, 1), H(A2, 2)) == H(A2, 1, 2)
    assert (H(A2, 1) * H(A2, 2)) * H(A2, 1) == H(A2, 1) * (H(A2, 2) * H(A2, 1))
    assert H(A2, 1, 2, 1) == H(A2, 1) * H(A2, 2) * H(A2, 1) == H(A2, 2) * H(A2, 1) * H(A2, 2)


def test_bar_examples():
    e, s = A1.identity, A1.s(1)
    assert bar_involution(std(e)) == std(e)
    assert std(s).bar() == std(s) + std(e).scale(v - v**-1)
    assert H(A2, 1, 2).bar().bar() == H(A2, 1, 2)
    assert std(s).bar() * std(s) == std(e)


def test_kl_examples():
    e, s = A1.identity, A1.s(1)
    assert kl_basis(e) == std(e)
    assert kl_basis(s) == std(s) + std(e).scale(v)
    w0 = A2.longest
    want = sum((std(y).scale(v ** (3 - y.length)) for y in A2), HeckeAlgebra.of(A2).zero())
    assert kl_basis(w0) == want


def test_known_nontrivial_kl_polynomial():
    A3 = CoxeterSystem.get("A3")
    b = kl_basis(A3.element([2, 1, 3, 2]))
    assert b.coeff(A3.element([2])) == v + v**3
    assert b.coeff(A3.identity) == v**4 + v**2


@pytest.mark.parametrize("family, n", [("A", 3), ("B", 3)])
def test_kl_against_r_polynomial_oracle(family, n):
    W = CoxeterSystem.get(f"{family}{n}")
    G = group(family, n)
    P = kl_polynomials(G)
    for w in W:
        b = kl_basis(w)
        gw = G.of_word(w.word)
        for y in W:
            gy = G.of_word(y.word)
            want = LaurentPoly(soergel_h(G, P, gy, gw)) if (gy, gw) in P else LaurentPoly()
            assert b.coeff(y) == want, (y, w)


@pytest.mark.parametrize("label", ["A3", "B3", "G2"])
def test_kl_basis_properties(label):
    W = CoxeterSystem.get(label)
    for w in W:
        b = kl_basis(w)
        assert b.bar() == b
        assert b.coeff(w) == 1
        for y, a in b.items():
            assert y.bruhat_leq(w)
            if y != w:
                assert a.min_exp() >= 1 and a.is_nonnegative()


def _elements(label):
    W = CoxeterSystem.get(label)
    alg = HeckeAlgebra.of(W)
    return st.dictionaries(st.sampled_from(W.elements), polys(max_terms=2, lo=-2, hi=2, coeff=2),
                           max_size=3).map(alg.element)


@pytest.mark.parametrize("label", ["A3", "B3"])
@given(data=st.data())
def test_ring_structure(label, data):
    x, y, z = (data.draw(_elements(label)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).bar() == x.bar() * y.bar()
    assert x.bar().bar() == x
    one = HeckeAlgebra.of(x.system).one()
    assert one * x == x == x * one


@given(data=st.data())
def test_euler_pairing_semilinear(data):
    x, y = data.draw(_elements("B2")), data.draw(_elements("B2"))
    p = data.draw(polys(max_terms=3))
    assert euler_pairing(x.scale(p), y) == p * euler_pairing(x, y)
    assert euler_pairing(x, y.scale(p)) == bar(p) * euler_pairing(x, y)


def test_euler_pairing_examples():
    e, s = A1.identity, A1.s(1)
    for x in A2:
        for y in A2:
            assert euler_pairing(std(x), std(y).bar()) == (1 if x == y else 0)
    par = std(s) - std(e).scale(v**-1)
    assert euler_pairing(par, par) == 1 + v**-2
    assert euler_pairing(std(e), std(e)) == 1


def test_expansion_and_json_roundtrip():
    b = kl_basis(B2.longest)
    assert HeckeElement.from_json(B2, b.to_json()) == b
    assert json.loads(json.dumps(b.to_expansion()))[0] == {"y": [], "coeffs": {"4": 1}}
    assert word_key(B2.identity) == "e" and parse_word_key("e") == ()
    assert parse_word_key(word_key(B2.longest)) == B2.longest.word
    alg = HeckeAlgebra.of(B2)
    assert alg.kl_expansion(b + kl_basis(B2.s(1)).scale(v + v**-1)) == {
        B2.s(1): v + v**-1, B2.longest: LaurentPoly.const(1)}
    assert repr(kl_basis(A1.s(1))) == "v*H_e + H_s1"


def test_mixing_systems_rejected():
    with pytest.raises(SystemMismatchError):
        H(A2, 1) * H(B2, 1)
    with pytest.raises(SystemMismatchError):
        euler_pairing(H(A2, 1), H(B2, 1))


# -- tables -----------------------------------------------------------------

def test_char0_table_is_kl_basis():
    table = load_pcan(cartan_type="B2", characteristic=0)
    assert table.covers() and len(table.entries) == 8
    for w in B2:
        assert table.entry(w) == kl_basis(w)
    table.validate()


def _relabel(table, char, entries=None):
    return PCanTable(table.system, char, dict(table.entries if entries is None else entries))


def test_validator_accepts_positive_perturbation():
    t = kl_table("A2")
    y, w = A2.s(1), A2.element([1, 2])
    entries = dict(t.entries)
    entries[w] = kl_basis(w) + kl_basis(y)
    _relabel(t, 2, entries).validate()


@pytest.mark.parametrize("kind, check", [
    ("not-bar-invariant", "bar-invariance"),
    ("negative", "KL-expansion nonnegativity"),
    ("not-triangular", "triangularity"),
    ("char0-mismatch", "characteristic-0 KL agreement"),
])
def test_validator_rejections(kind, check):
    t = kl_table("A2")
    w, y = A2.element([1, 2]), A2.s(1)
    entries, char = dict(t.entries), 2
    if kind == "not-bar-invariant":
        entries[w] = kl_basis(w) + std(y).scale(v)
    elif kind == "negative":
        entries[w] = kl_basis(w) - kl_basis(y)
    elif kind == "not-triangular":
        entries[w] = kl_basis(w) + kl_basis(A2.element([2, 1]))
    else:
        entries[w] = kl_basis(w) + kl_basis(y)
        char = 0
    with pytest.raises(TableValidationError) as exc:
        _relabel(t, char, entries).validate()
    assert exc.value.check == check
    assert check in str(exc.value) and "w=[1, 2]" in str(exc.value)


def test_table_json_roundtrip(tmp_path):
    t = kl_table("B2")
    path = tmp_path / "b2.json"
    path.write_text(json.dumps(t.to_json()))
    back = load_pcan(path, cartan_type="B2", characteristic=0)
    assert back.entries == t.entries


def test_table_parse_errors(tmp_path):
    good = kl_table("A2").to_json()
    with pytest.raises(TableParseError):
        load_pcan(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(TableParseError):
        load_pcan(bad)
    with pytest.raises(TableParseError):
        load_pcan({"cartan_type": "A2"})
    with pytest.raises(TableParseError):
        load_pcan(dict(good, cartan_type="Q9"))
    with pytest.raises(TableParseError):
        load_pcan(dict(good, entries=good["entries"] + good["entries"][:1]))
    unreduced = json.loads(json.dumps(good))
    unreduced["entries"][1]["w"] = [1, 1, 1]
    with pytest.raises(TableParseError):
        load_pcan(unreduced)
    with pytest.raises(TableParseError):
        load_pcan(good, cartan_type="B2")
    with pytest.raises(TableParseError):
        load_pcan(good, characteristic=3)
    with pytest.raises(TableParseError):
        load_pcan(cartan_type="A2", characteristic=2)


def test_missing_entry():
    t = kl_table("A2")
    partial = PCanTable(A2, 2, {w: t.entry(w) for w in A2 if w.length < 3})
    assert not partial.covers()
    with pytest.raises(MissingEntryError):
        partial.entry(A2.longest)
