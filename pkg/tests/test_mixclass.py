import pytest

from corrupt import corrupted_context
from mixparity.coxeter import CoxeterSystem
from mixparity.errors import SingularSystemError, SystemMismatchError
from mixparity.hecke import PCanTable, kl_table
from mixparity.mixclass import GroupRingElement, MixedContext, as_class, convolve, degrade, \
    kappa, ringel, ringel_inv
from mixparity.ring import LaurentPoly, sigma

v = LaurentPoly.gen()
t = LaurentPoly.gen("t")


@pytest.fixture(scope="module")
def a1():
    return MixedContext.characteristic_zero("A1")


@pytest.fixture(scope="module")
def a2():
    return MixedContext.characteristic_zero("A2")


@pytest.fixture(scope="module")
def b2():
    return MixedContext.characteristic_zero("B2")


def test_std_and_costd(a1, b2):
    e, s = (), (1,)
    assert a1.std_class(e) == a1.costd_class(e) == as_class(a1, {e: 1})
    assert a1.costd_class(s) == as_class(a1, {s: 1, e: v - v**-1})
    alg = b2.algebra
    for x in b2.system:
        for y in b2.system:
            want = 1 if x == y else 0
            assert alg.euler_pairing(b2.std_class(x).hecke, b2.costd_class(y).hecke) == want


def test_parity_classes(a1, a2):
    assert a1.parity_class([1]) == as_class(a1, {(1,): 1, (): -v**-1})
    assert a1.parity_class([]) == a1.std_class([])
    w0 = a2.system.longest
    want = as_class(a2, {y: (-v**-1) ** (3 - y.length) for y in a2.system})
    assert a2.parity_class(w0) == want


def test_tilting_classes(a1, a2):
    assert a1.tilting_class([]) == a1.std_class([])
    assert a1.tilting_class([1]) == as_class(a1, {(1,): 1, (): v})
    w0 = a2.system.longest
    assert a2.tilting_class(w0) == as_class(a2, {y: v ** (3 - y.length) for y in a2.system})


def test_kappa(a2, b2):
    assert kappa(a2.std_class([]).scale(v)) == a2.dual().std_class([]).scale(-v**-1)
    for ctx in (a2, b2):
        d = ctx.dual()
        for w in ctx.system:
            assert kappa(ctx.std_class(w)) == d.std_class(w.inverse().word)
            assert kappa(ctx.parity_class(w)) == d.tilting_class(w.inverse().word)
            assert kappa(kappa(ctx.parity_class(w))) == ctx.parity_class(w)
            assert kappa(ctx.costd_class(w)) == d.costd_class(w.inverse().word)


def test_ringel(a1, a2, b2):
    assert ringel(a1.costd_class([1])) == a1.std_class([])
    for ctx in (a2, b2):
        w0 = ctx.system.longest
        for w in ctx.system:
            assert ringel(ctx.costd_class(w)) == ctx.std_class(w * w0)
            assert ringel_inv(ringel(ctx.parity_class(w))) == ctx.parity_class(w)
            assert ringel(ctx.tilting_class(w)) == ctx.projective_class(w * w0)


def test_projectives(a1, a2):
    assert a1.projective_class([]) == as_class(a1, {(): 1, (1,): v**-1})
    assert a1.projective_class([1]) == a1.std_class([1])
    w0 = a2.system.longest
    assert a2.projective_class(w0) == a2.std_class(w0)
    for w in a2.system:
        p = a2.projective_class(w)
        assert p.coeff(w) == 1
        for y, a in p.items():
            assert a.is_nonnegative()
            assert w.bruhat_leq(y)


def test_simples(a1, a2, b2):
    assert a1.simple_class([]) == a1.std_class([])
    assert a1.simple_class([1]) == as_class(a1, {(1,): 1, (): -v**-1})
    for ctx in (a2, b2):
        for w in ctx.system:
            assert ctx.simple_class(w) == ctx.parity_class(w)


def test_convolution(a2, b2):
    for w in b2.system:
        assert convolve(b2.std_class(w), b2.costd_class(w.inverse())) == b2.std_class([])
    c = a2.parity_class([1, 2])
    assert convolve(a2.std_class([]), c) == c
    for y in a2.system:
        for w in a2.system:
            if (y * w).length == y.length + w.length:
                assert a2.std_class(y) * a2.std_class(w) == a2.std_class(y * w)


def test_shift_operators(a1):
    c = a1.parity_class([1])
    assert c.twist(1) == c.scale(v)
    assert c.shift(1) == -c and c.shift(2) == c
    assert c.internal_shift(1) == c.scale(-v**-1)
    assert c.twist(1) == c.internal_shift(-1).shift(1)
    assert c.verdier() == c


def test_parabolic_pushforward_and_pullback(a1, a2):
    s, e = [1], []
    assert a1.pi_pull_std(e, 1) == a1.parity_class(s)
    rep, k = a2.pi_push_std([1, 2, 1], 1)
    assert rep == a2.element([1, 2])
    W = a2.system
    for w in W:
        for i in (1, 2):
            rep, k = a2.pi_push_std(w, i)
            if w.has_right_descent(i):
                assert (rep, k) == (w.right_mul(i), 1)
            else:
                assert (rep, k) == (w, -v**-1)
            star_rep, star = a2.pi_push_std(w, i, "star")
            _, dd = a2.pi_push_std(w, i, "ddagger")
            assert star_rep == rep == W.min_coset_rep(w, [i])
            assert star == -k * v and dd == -star * v
            if not w.has_right_descent(i):
                ws = w.right_mul(i)
                got = a2.std_class(w) * a2.parity_class([i])
                assert got == as_class(a2, {ws: 1, w: -v**-1})
                assert got == a2.pi_pull_std(w, i)


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_convolution_with_parity_s_factors_through_partial_flags(label):
    ctx = MixedContext.characteristic_zero(label)
    for w in ctx.system:
        for i in (1, 2):
            c = ctx.parity_class(w)
            pushed = ctx.pi_push(c, i, "ddagger")
            assert ctx.pi_pull(pushed).internal_shift(1) == c * ctx.parity_class([i])


def test_pi_push_bad_variant(a2):
    with pytest.raises(ValueError):
        a2.pi_push_std([1], 1, "sharp")
    with pytest.raises(ValueError):
        a2.pi_push_std([1], 3)


def test_perversity(a1, a2, b2):
    assert a1.is_parity_perverse([1])
    assert a1.is_parity_perverse([])
    for ctx in (a2, b2):
        assert all(ctx.is_parity_perverse(w) for w in ctx.system)


def test_perversity_certificate_on_corrupted_table():
    ctx = corrupted_context("A2", (1, 2), (1,))
    r = ctx.is_parity_perverse([1, 2])
    assert not r
    assert r.certificate == ((ctx.element([1]), 1, 1),)
    assert all(ctx.is_parity_perverse(w) for w in ctx.system if w.word != (1, 2))


def test_hom_hilbert(a1, a2):
    assert a1.hom_hilbert([1], [1]) == 1 + t**2
    assert a1.hom_hilbert([], []) == 1
    assert a1.hom_hilbert([], [1]) == t == a1.hom_hilbert([1], [])
    assert a1.ext_algebra_hilbert([[], [1]]).total() == 2 + 2 * t + t**2
    assert a1.ext_algebra_hilbert([[]]).total() == 1
    series = a2.ext_algebra_hilbert(a2.system)
    assert series.is_diagonal()
    assert series.total()[0] == 6 == series.dim(0, 0)


def test_hom_hilbert_is_nonnegative_with_length_parity():
    ctx = MixedContext.characteristic_zero("B3")
    for x in ctx.system.elements[::5]:
        for y in ctx.system:
            for m, k in ctx.hom_hilbert(x, y).items():
                assert k > 0 and (m - x.length - y.length) % 2 == 0


def test_degrade(a1, a2):
    for w in a2.system:
        assert degrade(a2.std_class(w)) == GroupRingElement(a2.system, {w: 1})
    assert degrade(a2.std_class([]).scale(v**5)) == degrade(a2.std_class([]))
    e, s = a1.system.identity, a1.system.s(1)
    assert degrade(a1.tilting_class([1])) == GroupRingElement(a1.system, {s: 1, e: 1})
    sq = degrade(a1.std_class([1])) * degrade(a1.std_class([1]))
    assert sq == GroupRingElement(a1.system, {e: 1})


def test_context_checks(a2, b2):
    with pytest.raises(SystemMismatchError):
        MixedContext(a2.system, kl_table("B2"), kl_table("A2"))
    with pytest.raises(SystemMismatchError):
        MixedContext(CoxeterSystem.get("B3"), kl_table("B3"), kl_table("B3"))
    t = kl_table("A2")
    with pytest.raises(ValueError):
        MixedContext(a2.system, t, PCanTable(t.system, 2, dict(t.entries)))
    with pytest.raises(SystemMismatchError):
        a2.std_class([1]) + b2.std_class([1])
    with pytest.raises(SystemMismatchError):
        a2.std_class(b2.system.s(1))
    assert a2.dual().dual() is a2
    assert MixedContext.characteristic_zero("B3").dual().system.cartan_type == "C3"


def test_singular_reciprocity_system_is_reported():
    W = CoxeterSystem.get("A1")
    t = kl_table("A1")
    alg = t.entries[W.s(1)].algebra
    # a dual table whose entry at s has a zero diagonal makes P_e lose its H_e term
    broken = dict(t.entries)
    broken[W.s(1)] = alg.element({W.s(1): 2, W.identity: v})
    ctx = MixedContext(W, t, PCanTable(W, 0, broken))
    with pytest.raises(SingularSystemError):
        ctx.simple_class([1])


def test_sigma_of_kl_basis_is_parity_class_in_char0(b2):
    for w in b2.system:
        assert b2.parity_class(w).hecke == b2.algebra.kl(w).map_coeffs(sigma)
