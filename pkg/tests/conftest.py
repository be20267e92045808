import functools
import random

import pytest

from supertrace.algebra import fp2
from supertrace.algebra.factor import roots
from supertrace.curves import Curve, isomorphism_u
from supertrace.endgen import random_cycle, random_prime, random_supersingular_curve
from supertrace.isogenies import Chain, complementary_two_isogeny, two_isogeny, velu_from_kernel
from supertrace.kernels import kernel_from_point, kernel_generator, kernel_polynomials


@functools.lru_cache(maxsize=None)
def supersingular(p: int, seed: int = 0) -> Curve:
    return random_supersingular_curve(p, seed)


@functools.lru_cache(maxsize=None)
def cycle(p: int, length: int, seed: int = 0) -> Chain:
    return random_cycle(supersingular(p, seed), length, seed)


@functools.lru_cache(maxsize=None)
def prime(bits: int, seed: int = 0) -> int:
    return random_prime(bits, seed)


def times_two_chain(E: Curve) -> Chain:
    """A 2-isogeny followed by the step whose kernel is the image of another
    2-torsion point; the composite is [2] up to an automorphism."""
    r = roots(E.f)
    first = two_isogeny(E, r[0])
    back = complementary_two_isogeny(first, r[1])
    u = isomorphism_u(back.codomain, E)
    return Chain(E, [first, back.post_compose(u)])


def times_ell_chain(E: Curve, ell: int) -> Chain:
    """Two l-isogenies whose composite kills all of E[l]: [+-l] up to an automorphism."""
    h1, h2 = kernel_polynomials(E, ell, 2)
    first = velu_from_kernel(E, h1)
    image = first.evaluate(kernel_generator(E, h2))
    second = velu_from_kernel(first.codomain, kernel_from_point(first.codomain, image, ell))
    u = isomorphism_u(second.codomain, E)
    return Chain(E, [first, second.post_compose(u)])


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def curve431():
    return supersingular(431, 0)


@pytest.fixture(scope="session")
def f431():
    return fp2(431)
