"""Kernel polynomials of odd prime degree and explicit kernel generators.

``kernel_polynomials`` extracts factors of the division polynomial that
cut out a single cyclic subgroup. Rather than factoring ``psi_l`` into
irreducibles, it computes ``sigma = sum_{i=1}^{(l-1)/2} x([i]P)`` in
``F_q[x]/(psi_l)``. This function is constant on each subgroup and
takes values in ``F_q``, so quadratic-character splitting on
``sigma + c`` separates subgroups with exponent ``(q-1)/2`` regardless
of the degree of the field the torsion points live in.
"""

from __future__ import annotations

import heapq
import itertools
import random

import gmpy2

from .algebra.factor import smallest_factor
from .algebra.fields import ExtensionField, QuadraticExtension
from .algebra.poly import Poly
from .algebra.residue import ResidueRing
from .curves import Curve, Point
from .errors import InvalidKernel, UnsupportedPrime


def check_prime(E: Curve, ell: int):
    if ell == 2 or ell < 2 or not gmpy2.is_prime(ell):
        raise UnsupportedPrime(f"{ell} is not an odd prime")
    if ell == E.p:
        raise UnsupportedPrime("l equals the characteristic")


def kernel_generator(E: Curve, h: Poly, seed: int = 0) -> Point:
    """A point of ``E`` over an extension whose abscissa is a root of ``h``."""
    F = E.field
    f = smallest_factor(h, seed)
    if f.degree == 1:
        K = F
        x0 = F.neg(f[0])
    else:
        K = ExtensionField(F, list(f.coeffs))
        x0 = K.generator()
    rhs = E.rhs(x0, K)
    y = K.sqrt(rhs, seed)
    if y is None:
        K2 = QuadraticExtension(K, rhs)
        return Point(K2, K2.embed(x0, K), K2.generator())
    return Point(K, x0, y)


def kernel_from_point(E: Curve, P: Point, ell: int) -> Poly:
    """``prod (x - x([i]P))`` over ``i = 1..(l-1)/2``, brought down to ``F_q``."""
    K = P.field
    h = Poly.constant(K, K.one)
    Q = P
    for i in range(1, (ell - 1) // 2 + 1):
        if Q.is_infinity:
            raise InvalidKernel("point order is smaller than l")
        h = h * Poly(K, (K.neg(Q.x), K.one), raw=True)
        Q = E.add(Q, P)
    return h.restrict_field(E.field)


def _sigma(E: Curve, ell: int, psi: Poly):
    from .homres import QuotientRing, _Jac

    R = QuotientRing(E, psi, ell)
    jac = _Jac(R, E)
    base = (R.mul(R.x(), R.f), R.f2, R.one())
    affine = (base[0], base[1])
    N, D = R.zero(), R.one()
    acc = base
    for i in range(1, (ell - 1) // 2 + 1):
        if i == 2:
            acc = jac.double(base)
        elif i > 2:
            acc = jac.add_affine(acc, affine)
        X, _, Z = acc
        ZZ = R.sqr(Z)
        N = R.add(R.mul(N, ZZ), R.mul(X, D))
        D = R.mul(D, ZZ)
    return R.to_poly(R.mul(N, R.inv(R.mul(D, R.f))))


def _split_pieces(E: Curve, ell: int, psi: Poly, rng: random.Random):
    """Yield subgroup kernel polynomials, smallest pieces first."""
    F = E.field
    d = (ell - 1) // 2
    exponent = (F.order - 1) // 2
    sigma = _sigma(E, ell, psi)
    counter = itertools.count()
    heap = [(psi.degree, next(counter), psi, sigma)]
    while heap:
        deg, _, g, sg = heapq.heappop(heap)
        if deg == d:
            yield g
            continue
        R = ResidueRing(g)
        S = R.from_poly(sg)
        g1 = None
        for _ in range(40):
            c = F.random(rng)
            w = R.sub(R.pow(R.add(S, R.constant(c)), exponent), R.one())
            cand = R.gcd_with_modulus(w)
            if 0 < cand.degree < g.degree:
                g1 = cand
                break
        if g1 is None:
            # sigma takes one value on several subgroups: split by explicit points
            yield from _split_by_points(E, ell, g, rng)
            continue
        g2 = g.exact_div(g1)
        for part in (g1, g2):
            if part.degree % d:
                raise InvalidKernel("division polynomial piece is not a union of subgroups")
            heapq.heappush(heap, (part.degree, next(counter), part, sg % part))


def _split_by_points(E: Curve, ell: int, g: Poly, rng: random.Random):
    d = (ell - 1) // 2
    while g.degree >= d:
        P = kernel_generator(E, g, rng.randrange(1 << 30))
        h = kernel_from_point(E, P, ell)
        yield h
        g = g.exact_div(h)


def iter_kernel_polynomials(E: Curve, ell: int, seed: int = 0):
    check_prime(E, ell)
    psi = E.division_polynomial(ell).monic()
    return _split_pieces(E, ell, psi, random.Random(seed))


def kernel_polynomials(E: Curve, ell: int, count: int = 1, seed: int = 0) -> list[Poly]:
    """``count`` distinct monic kernel polynomials of degree ``(l-1)/2``."""
    return list(itertools.islice(iter_kernel_polynomials(E, ell, seed), count))
