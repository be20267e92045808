import random

import pytest

from supertrace.algebra import PrimeField, Poly, QuadraticExtension, fp2
from supertrace.curves import (
    INFINITY,
    Curve,
    apply_isomorphism,
    group_exponent,
    group_order_supersingular,
    is_supersingular,
    isomorphism_u,
    map_point_isomorphism,
)
from supertrace.errors import FieldMismatch, JInvariantMismatch, SingularCurve, Undecided, UnsupportedPrime
from supertrace.kernels import kernel_generator

from conftest import supersingular


def brute_force_order(E):
    F = E.field
    elements = [F.from_coordinates(c) for c in _coords(F)]
    squares = {}
    for y in elements:
        squares[F.sqr(y)] = squares.get(F.sqr(y), 0) + 1
    return 1 + sum(squares.get(E.rhs(x), 0) for x in elements)


def _coords(F):
    p, k = F.p, F.absolute_degree
    for n in range(p ** k):
        yield [(n // p ** i) % p for i in range(k)]


def test_curve_validation():
    F7 = PrimeField(7)
    Curve(F7, 1, 0)
    with pytest.raises(SingularCurve):
        Curve(F7, 0, 0)
    with pytest.raises(SingularCurve):
        Curve(F7, -3 % 7, 2)
    with pytest.raises(UnsupportedPrime):
        Curve(PrimeField(3), 1, 1)


def test_j_invariant_special_values():
    F = fp2(431)
    assert Curve(F, 5, 0).j_invariant() == F.from_int(1728)
    assert Curve(F, 0, 5).j_invariant() == F.zero


def test_j_invariant_formula_f11():
    F = PrimeField(11)
    expected = 1728 * 4 * pow(31, -1, 11) % 11
    assert Curve(F, 1, 1).j_invariant() == expected


def test_group_law(curve431, rng):
    E = curve431
    P = E.random_point(rng)
    assert E.mul(0, P) is INFINITY
    assert E.mul(1, P) == P
    assert E.add(P, E.neg(P)) is INFINITY
    for _ in range(100):
        P = E.random_point(rng)
        m, n = rng.randint(-500, 500), rng.randint(-500, 500)
        assert E.mul(m + n, P) == E.add(E.mul(m, P), E.mul(n, P))
        assert E.contains(E.mul(m, P))


def test_mixed_fields_rejected(curve431, rng):
    E = curve431
    F = E.field
    K = QuadraticExtension(F, F._nonresidue)
    P = E.random_point(rng)
    Q = E.random_point(rng, K)
    with pytest.raises(FieldMismatch):
        E.add(P, Q)


def test_division_polynomial_degrees(curve431):
    E = curve431
    assert E.division_polynomial(3).degree == 4
    assert E.division_polynomial(5).degree == 12
    assert E.division_polynomial(7).degree == 24


def test_psi3_closed_form(curve431):
    E = curve431
    F = E.field
    x = Poly.x(F)
    A, B = Poly.constant(F, E.A), Poly.constant(F, E.B)
    expected = 3 * x ** 4 + 6 * A * x ** 2 + 12 * B * x - A * A
    assert E.division_polynomial(3) == expected


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_division_polynomial_vanishes_on_torsion(curve431, ell):
    E = curve431
    psi = E.division_polynomial(ell)
    for seed in range(3):
        P = kernel_generator(E, psi.monic(), seed)
        assert E.mul(ell, P) is INFINITY and not P.is_infinity
        K = P.field
        assert psi.evaluate_in(K, P.x) == K.zero
        other = 3 if ell != 3 else 5
        Q = kernel_generator(E, E.division_polynomial(other).monic(), seed)
        assert psi.evaluate_in(Q.field, Q.x) != Q.field.zero


def test_group_order_and_supersingularity(rng):
    for p in (431, 1019, 50051):
        E = supersingular(p, 1)
        assert is_supersingular(E)
        N = group_order_supersingular(E)
        assert N in ((p + 1) ** 2, (p - 1) ** 2)
        n = group_exponent(E)
        for _ in range(10):
            assert E.mul(N, E.random_point(rng)) is INFINITY
            assert E.mul(n, E.random_point(rng)) is INFINITY


def test_both_order_cases_appear():
    # (p-1)^2 curves are quadratic twists of (p+1)^2 ones: scale by a non-square
    p = 431
    E = supersingular(p, 2)
    F = E.field
    d = F._nonresidue
    twist = Curve(F, F.mul(F.sqr(d), E.A), F.mul(F.mul(F.sqr(d), d), E.B))
    orders = {group_order_supersingular(E), group_order_supersingular(twist)}
    assert orders == {(p + 1) ** 2, (p - 1) ** 2}


def test_ordinary_curve_detected():
    F = fp2(5)
    E = Curve(F, 1, 1)
    order = brute_force_order(E)
    # supersingular over GF(25) would mean order 25 + 1 - t with t = 0 mod 5
    assert (26 - order) % 5 != 0
    assert not is_supersingular(E)
    with pytest.raises(Undecided):
        group_order_supersingular(E)


def test_isomorphism_u(curve431, rng):
    E = curve431
    F = E.field
    assert isomorphism_u(E, E) in (F.one, F.neg(F.one))
    assert isomorphism_u(E, E) == min(F.one, F.neg(F.one), key=F.key)
    for _ in range(10):
        c = F.nonzero_random(rng)
        E2 = apply_isomorphism(E, c)
        u = isomorphism_u(E, E2)
        assert u in (c, F.neg(c))
        assert E2.j_invariant() == E.j_invariant()
        P = E.random_point(rng)
        assert E2.contains(map_point_isomorphism(P, u, F))


def test_isomorphism_twist_and_mismatch(curve431):
    E = curve431
    F = E.field
    d = F._nonresidue
    twist = Curve(F, F.mul(F.sqr(d), E.A), F.mul(F.mul(F.sqr(d), d), E.B))
    assert twist.j_invariant() == E.j_invariant()
    assert isomorphism_u(E, twist) is None
    with pytest.raises(JInvariantMismatch):
        isomorphism_u(E, Curve(F, 1, 0))


def test_isomorphism_special_j():
    F = fp2(431)
    E = Curve(F, 1, 0)
    c = (3, 4)
    assert isomorphism_u(E, apply_isomorphism(E, c)) in (c, F.neg(c))
    E0 = Curve(F, 0, 1)
    u = isomorphism_u(E0, apply_isomorphism(E0, c))
    assert apply_isomorphism(E0, u) == apply_isomorphism(E0, c)
