import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supertrace.algebra import ExtensionField, PrimeField, Poly, fp2, gcd, invmod, mulmod, powmod, xgcd
from supertrace.algebra.factor import factor, is_irreducible, roots, smallest_factor, squarefree_decomposition
from supertrace.algebra.fields import field_from_tower, tower_moduli
from supertrace.algebra.residue import ResidueRing
from supertrace.curves import Curve
from supertrace.errors import BothZero, NotInvertible, ZeroInverse

F7 = PrimeField(7)
X7 = Poly.x(F7)


def P7(*coeffs):
    return Poly(F7, coeffs)


def schoolbook_mod(f, g, h):
    """Product and long division written out coefficient by coefficient."""
    F = f.field
    prod = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            prod[i + j] = F.add(prod[i + j], F.mul(a, b))
    hc = list(h.coeffs)
    inv = F.inv(hc[-1])
    for k in range(len(prod) - 1, len(hc) - 2, -1):
        c = F.mul(prod[k], inv)
        for i, b in enumerate(hc):
            prod[k - len(hc) + 1 + i] = F.sub(prod[k - len(hc) + 1 + i], F.mul(c, b))
    return Poly(F, prod[: len(hc) - 1], raw=True)


def random_poly(F, deg, rng):
    return Poly(F, [F.random(rng) for _ in range(deg)] + [F.one], raw=True)


# --- fields -----------------------------------------------------------------
def test_inverse_small():
    assert F7.inv(3) == 5
    assert F7.inv(1) == 1
    with pytest.raises(ZeroInverse):
        F7.inv(0)


def test_sqrt_small():
    assert F7.sqrt(2) == 3
    assert F7.sqrt(0) == 0
    assert F7.sqrt(3) is None


def test_fp2_modulus_choice():
    assert tower_moduli(fp2(431))[0] == [1, 0, 1]
    # 13 = 1 mod 4; 2 is the least non-residue, so x^2 - 2
    assert tower_moduli(fp2(13))[0] == [11, 0, 1]


def test_small_characteristic_rejected():
    with pytest.raises(ValueError):
        PrimeField(15)


@pytest.mark.parametrize("p", [7, 13, 431, 65537, (1 << 61) - 1])
def test_field_axioms_fp2(p, rng):
    F = fp2(p)
    for _ in range(50):
        a, b, c = F.random(rng), F.random(rng), F.random(rng)
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        if a != F.zero:
            assert F.mul(a, F.inv(a)) == F.one
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(a) == F.pow(a, p)


@pytest.mark.parametrize("p", [7, 13, 431, 1000003])
def test_sqrt_fp2(p, rng):
    F = fp2(p)
    for _ in range(60):
        a = F.random(rng)
        r = F.sqrt(a)
        if r is None:
            assert F.pow(a, (F.order - 1) // 2) != F.one
        else:
            assert F.sqr(r) == a
            assert F.key(r) <= F.key(F.neg(r))


def test_extension_tower(rng):
    F = fp2(431)
    f = smallest_factor(random_poly(F, 6, rng) * random_poly(F, 5, rng))
    while f.degree < 2:
        f = smallest_factor(random_poly(F, 3, rng) * random_poly(F, 3, rng) + Poly.x(F))
    K = ExtensionField(F, list(f.coeffs))
    g = K.generator()
    assert Poly(F, f.coeffs).evaluate_in(K, g) == K.zero
    for _ in range(20):
        a = K.random(rng)
        if a != K.zero:
            assert K.mul(a, K.inv(a)) == K.one
        assert K.pow(a, K.order) == a
    assert field_from_tower(431, tower_moduli(K)) == K


# --- polynomials ------------------------------------------------------------
def test_xgcd_small():
    d, s, t = xgcd(X7 ** 2 - 1, X7 - 1)
    assert d == X7 - 1
    assert s * (X7 ** 2 - 1) + t * (X7 - 1) == d


def test_xgcd_with_zero():
    f = P7(2, 0, 3)
    d, s, t = xgcd(f, Poly(F7))
    assert d == f.monic()
    with pytest.raises(BothZero):
        xgcd(Poly(F7), Poly(F7))


def test_xgcd_bezout_random(rng):
    F = fp2(431)
    for _ in range(1000):
        f = Poly(F, [F.random(rng) for _ in range(rng.randint(0, 6))])
        g = Poly(F, [F.random(rng) for _ in range(rng.randint(1, 6))])
        if f.is_zero() and g.is_zero():
            continue
        d, s, t = xgcd(f, g)
        assert s * f + t * g == d
        assert d.lc() == F.one
        assert (f % d).is_zero() and (g % d).is_zero()


def test_invmod_small():
    h = X7 ** 2 + 1
    assert invmod(X7, h) == P7(0, 6)
    assert invmod(P7(1), h) == P7(1)
    with pytest.raises(NotInvertible) as exc:
        invmod(X7 - 1, X7 ** 2 - 1)
    assert exc.value.gcd == X7 - 1


def test_mulmod_small():
    h = X7 ** 2 + 1
    assert mulmod(X7, X7, h) == P7(6)
    f = P7(3, 4, 5, 6)
    assert mulmod(f, P7(1), h) == f % h


@pytest.mark.parametrize("p,deg", [(431, 5), (431, 40), (9777403, 130), (9777403, 300), ((1 << 61) - 1, 60)])
def test_mulmod_matches_long_division(p, deg, rng):
    F = fp2(p)
    h = random_poly(F, deg, rng)
    for _ in range(3):
        f = random_poly(F, deg + rng.randint(-3, 3), rng)
        g = random_poly(F, deg - 1, rng)
        assert mulmod(f, g, h) == schoolbook_mod(f, g, h)
        R = ResidueRing(h)
        assert R.to_poly(R.mul(R.from_poly(f), R.from_poly(g))) == schoolbook_mod(f, g, h)


def test_residue_ring_inverse_and_pow(rng):
    F = fp2(1000003)
    h = random_poly(F, 90, rng)
    R = ResidueRing(h)
    a = R.from_poly(random_poly(F, 89, rng))
    try:
        ai = R.inv(a)
    except NotInvertible as exc:
        assert exc.gcd.degree > 0
    else:
        assert R.equal(R.mul(a, ai), R.one())
    e = rng.getrandbits(40)
    naive = Poly.constant(F, F.one)
    base = R.to_poly(a)
    for bit in bin(e)[2:]:
        naive = (naive * naive) % h
        if bit == "1":
            naive = (naive * base) % h
    assert R.to_poly(R.pow(a, e)) == naive == powmod(base, e, h)


def test_dense_gcd_matches_euclid(rng):
    F = fp2(1000003)
    common = random_poly(F, 20, rng)
    f = common * random_poly(F, 60, rng)
    g = common * random_poly(F, 55, rng)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    assert gcd(f, g) == a.monic()
    assert (gcd(f, g) % common.monic()).is_zero()


def test_zero_polynomial_degree():
    assert Poly(F7).degree == float("-inf")
    assert (P7(1, 2) * P7(3, 0, 1)).degree == 3


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 430), min_size=1, max_size=12), st.lists(st.integers(0, 430), min_size=1, max_size=12))
def test_degree_additive(a, b):
    F = PrimeField(431)
    f, g = Poly(F, a), Poly(F, b)
    if f.is_zero() or g.is_zero():
        assert (f * g).is_zero()
    else:
        assert (f * g).degree == f.degree + g.degree
    d = g if not g.is_zero() else Poly.constant(F, 1)
    q, r = divmod(f * g + f, d)
    assert q * d + r == f * g + f
    assert r.degree < d.degree


# --- factoring --------------------------------------------------------------
def test_factor_small():
    assert dict(factor(X7 ** 2 - 1)) == {X7 - 1: 1, X7 + 1: 1}
    assert factor(X7 ** 2 + 1) == [(X7 ** 2 + 1, 1)]
    assert is_irreducible(X7 ** 2 + 1)


def test_factor_psi3(curve431):
    psi = curve431.division_polynomial(3)
    assert psi.degree == 4
    parts = factor(psi)
    prod = Poly.constant(psi.field, psi.lc())
    for f, m in parts:
        assert is_irreducible(f)
        prod = prod * f ** m
    assert prod == psi


def test_factor_reconstructs_with_multiplicity(rng):
    F = fp2(431)
    a, b, c = random_poly(F, 1, rng), random_poly(F, 2, rng), random_poly(F, 3, rng)
    f = a ** 3 * b ** 2 * c
    prod = Poly.constant(F, F.one)
    for g, m in factor(f, seed=5):
        assert is_irreducible(g)
        prod = prod * g ** m
    assert prod == f
    assert factor(f, seed=5) == factor(f, seed=5)
    sq = squarefree_decomposition(f)
    assert all(g.is_squarefree() for g, _ in sq)


def test_squarefree_in_characteristic_p():
    F = PrimeField(7)
    x = Poly.x(F)
    f = x ** 14 + x ** 7 + Poly.constant(F, 1)
    prod = Poly.constant(F, 1)
    for g, m in factor(f):
        prod = prod * g ** m
    assert prod == f


def test_roots_sorted():
    F = fp2(431)
    x = Poly.x(F)
    rs = [F.coerce(5), F.coerce(17), (3, 9)]
    f = Poly.constant(F, F.one)
    for r in rs:
        f = f * (x - Poly.constant(F, r))
    assert roots(f) == sorted(rs, key=F.key)


def test_irreducible_vs_frobenius_orbit(rng):
    F = PrimeField(431)
    x = Poly.x(F)
    for _ in range(10):
        f = random_poly(F, rng.randint(2, 6), rng)
        d = f.degree
        fixed = [k for k in range(1, d + 1) if (powmod(x, 431 ** k, f) - x).is_zero()]
        assert is_irreducible(f) == (fixed == [d])


def test_curve_rhs_factor_sample():
    E = Curve(fp2(431), 1, 0)
    assert len(roots(E.f)) == 3
