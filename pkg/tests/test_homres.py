import pytest

from supertrace.algebra import Poly
from supertrace.algebra.factor import roots
from supertrace.errors import NonUnitDenominator, NonUnitSlope, RingMismatch, UnsupportedPrime
from supertrace.homres import (
    QuotientRing,
    RestrictedPoint,
    evaluate_step,
    identity,
    restrict_chain,
    restricted_add,
    restricted_double,
    restricted_neg,
    restricted_scalar_mul,
    zero,
)
from supertrace.isogenies import Chain, velu_from_kernel
from supertrace.kernels import kernel_generator, kernel_polynomials

from conftest import cycle, supersingular

P431 = 431


def ring(ell, index=0, p=P431, seed=0):
    E = supersingular(p, seed)
    h = kernel_polynomials(E, ell, index + 1)[index]
    return QuotientRing(E, h, ell), kernel_generator(E, h)


def scalar(R, m):
    return restricted_scalar_mul(m, identity(R))


def iterated(R, m):
    acc = zero(R)
    for _ in range(m):
        acc = restricted_add(acc, identity(R))
    return acc


def test_identity_interpolates():
    R, P = ring(5)
    I = identity(R)
    x, b = I.polys()
    assert x.degree == 1 and b.degree == 0
    assert I.at(P) == P


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_ell_times_identity_is_zero(ell):
    R, _ = ring(ell)
    assert scalar(R, ell).is_zero
    assert iterated(R, ell).is_zero


def test_add_zero_and_inverse():
    R, _ = ring(7)
    I = identity(R)
    assert restricted_add(I, zero(R)) == I
    assert restricted_add(zero(R), I) == I
    assert restricted_add(I, restricted_neg(I)).is_zero
    assert restricted_neg(zero(R)).is_zero


def test_two_plus_three_is_five():
    R, _ = ring(7)
    assert restricted_add(scalar(R, 2), scalar(R, 3)) == scalar(R, 5)


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_scalar_additivity(ell):
    R, P = ring(ell)
    E = R.curve
    mults = [scalar(R, m) for m in range(ell)]
    for m in range(ell):
        assert mults[m].at(P) == E.mul(m, P)
        for n in range(ell):
            assert restricted_add(mults[m], mults[n]) == mults[(m + n) % ell]


def test_scalar_matches_iterated_addition():
    R, P = ring(11, seed=1)
    for c in range(11):
        assert scalar(R, c) == iterated(R, c)
    assert restricted_double(identity(R)) == scalar(R, 2)


def test_b_is_a_unit():
    R, _ = ring(7)
    for m in range(1, 7):
        Q = scalar(R, m)
        R.inv(Q.b)


def test_evaluate_step_identity_and_zero():
    ch = cycle(P431, 6, 0)
    E = ch.curve
    h = kernel_polynomials(E, 5, 1)[0]
    R = QuotientRing(E, h, 5)
    P = kernel_generator(E, h)
    step = ch.steps[0]
    assert evaluate_step(step, zero(R)).is_zero
    img = evaluate_step(step, identity(R))
    assert img.target == step.codomain
    assert img.at(P) == step.evaluate(P)
    two = evaluate_step(ch.steps[1], img)
    assert two == restrict_chain(ch.prefix(2), R)
    assert restrict_chain(Chain(E), R) == identity(R)
    assert restrict_chain(ch.prefix(1), R) == img


def test_restrict_chain_matches_fold():
    ch = cycle(P431, 20, 1)
    E = ch.curve
    for ell in (3, 5):
        for h in kernel_polynomials(E, ell, 2):
            R = QuotientRing(E, h, ell)
            acc = identity(R)
            for st in ch.steps:
                acc = evaluate_step(st, acc)
            assert restrict_chain(ch, R) == acc
            P = kernel_generator(E, h)
            assert acc.at(P) == ch.evaluate(P)


def test_restrict_chain_start_point():
    ch = cycle(P431, 10, 2)
    E = ch.curve
    h = kernel_polynomials(E, 7, 1)[0]
    R = QuotientRing(E, h, 7)
    alpha = restrict_chain(ch, R)
    alpha2 = restrict_chain(ch, R, start=alpha)
    P = kernel_generator(E, h)
    assert alpha2.at(P) == ch.evaluate(ch.evaluate(P))


def test_kernel_of_step_gives_zero():
    E = supersingular(P431, 0)
    h = kernel_polynomials(E, 5, 1)[0]
    step = velu_from_kernel(E, h)
    R = QuotientRing(E, h, 5)
    assert evaluate_step(step, identity(R)).is_zero
    assert restrict_chain(Chain(E, [step]), R).is_zero


def test_partial_kernel_raises():
    E = supersingular(P431, 0)
    h1, h2 = kernel_polynomials(E, 5, 2)
    step = velu_from_kernel(E, h1)
    R = QuotientRing(E, h1 * h2)
    with pytest.raises(NonUnitDenominator) as exc:
        evaluate_step(step, identity(R))
    assert exc.value.gcd == h1.monic()
    with pytest.raises(NonUnitDenominator):
        restrict_chain(Chain(E, [step]), R)


def test_mismatch_errors():
    R3, _ = ring(3)
    R5, _ = ring(5)
    with pytest.raises(RingMismatch):
        restricted_add(identity(R3), identity(R5))
    ch = cycle(P431, 6, 0)
    with pytest.raises(RingMismatch):
        evaluate_step(ch.steps[1], identity(R3))


def test_two_rejected_and_two_torsion_rejected():
    E = supersingular(P431, 0)
    h = kernel_polynomials(E, 3, 1)[0]
    with pytest.raises(UnsupportedPrime):
        QuotientRing(E, h, 2)
    F = E.field
    with pytest.raises(ValueError):
        QuotientRing(E, Poly(F, (F.neg(roots(E.f)[0]), F.one), raw=True), 3)


def test_partial_zero_divisor_raises():
    # a modulus mixing two different subgroups makes the chord slope a zero divisor
    E = supersingular(P431, 0)
    h1, h2 = kernel_polynomials(E, 5, 2)
    R = QuotientRing(E, h1 * h2)
    I = identity(R)
    x1 = R.from_poly(h1)
    # a point agreeing with I above h2 but not above h1
    fake = RestrictedPoint(R, E, R.add(I.a, x1), I.b)
    with pytest.raises(NonUnitSlope) as exc:
        restricted_add(I, fake)
    assert exc.value.gcd.degree == h2.degree
