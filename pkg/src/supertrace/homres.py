"""Isogeny chains restricted to the points killed by a polynomial ``h``.

Work happens in ``R = F_q[x]/(h)`` where ``x`` is the generic point of
``E`` above the roots of ``h``. A morphism ``E -> E'`` restricts to a
pair ``(a, b)`` in ``R`` meaning the point ``(a(x), b(x) * y)`` of
``E'(R[y])``.

Internally such a pair is moved to the curve twisted by
``f = x^3 + A x + B`` through ``(a, b) -> (a f, b f^2)``. There every
coordinate lives in ``R`` and ordinary Jacobian formulas apply without
inversions; only the final conversion back inverts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra.poly import Poly, gcd
from .algebra.residue import ResidueRing
from .curves import Curve, Point
from .errors import (
    NonUnitDenominator,
    NonUnitSlope,
    NotInvertible,
    RingMismatch,
    UnsupportedPrime,
)
from .isogenies import Chain, IsogenyStep


class QuotientRing(ResidueRing):
    """``F_q[x]/(h)`` attached to the curve ``E`` whose points it describes."""

    def __init__(self, curve: Curve, h: Poly, ell: int | None = None):
        if ell == 2:
            raise UnsupportedPrime("restriction to 2-torsion is not supported")
        if h.field != curve.field:
            h = h.change_field(curve.field)
        if gcd(h, curve.f).degree > 0:
            raise ValueError("h shares a root with x^3 + Ax + B")
        super().__init__(h)
        self.curve = curve
        self.ell = ell
        self.f = self.from_poly(curve.f)
        self.f2 = self.sqr(self.f)
        self._f_inv = None

    @property
    def f_inv(self):
        if self._f_inv is None:
            self._f_inv = self.inv(self.f)
        return self._f_inv

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.curve == other.curve and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.curve, self.modulus))

    def __repr__(self):
        return f"QuotientRing(h of degree {self.n}, l={self.ell})"


@dataclass(frozen=True, eq=False)
class RestrictedPoint:
    """``(a(x), b(x) * y)`` on ``target``; ``a is None`` is the zero morphism."""

    ring: QuotientRing
    target: Curve
    a: np.ndarray | None = None
    b: np.ndarray | None = None

    @property
    def is_zero(self) -> bool:
        return self.a is None

    def __eq__(self, other):
        if not isinstance(other, RestrictedPoint):
            return NotImplemented
        if self.ring != other.ring or self.target != other.target:
            return False
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b)

    __hash__ = None

    def polys(self) -> tuple[Poly, Poly] | None:
        if self.is_zero:
            return None
        return self.ring.to_poly(self.a), self.ring.to_poly(self.b)

    def at(self, P: Point) -> Point:
        """Specialize at a point ``P`` of ``E`` whose abscissa is a root of ``h``."""
        from .curves import INFINITY
        if self.is_zero:
            return INFINITY
        a, b = self.polys()
        K = P.field
        return Point(K, a.evaluate_in(K, P.x), K.mul(b.evaluate_in(K, P.x), P.y))


def zero(ring: QuotientRing, target: Curve | None = None) -> RestrictedPoint:
    return RestrictedPoint(ring, target or ring.curve)


def identity(ring: QuotientRing) -> RestrictedPoint:
    return RestrictedPoint(ring, ring.curve, ring.x(), ring.one())


def _check(P: RestrictedPoint, Q: RestrictedPoint):
    if P.ring != Q.ring or P.target != Q.target:
        raise RingMismatch("restricted points live in different hom-sets")


def restricted_neg(P: RestrictedPoint) -> RestrictedPoint:
    if P.is_zero:
        return P
    return RestrictedPoint(P.ring, P.target, P.a, P.ring.neg(P.b))


def _inv_or_raise(R: QuotientRing, A, exc):
    try:
        return R.inv(A)
    except NotInvertible as e:
        raise exc(e.gcd) from None


def restricted_add(P: RestrictedPoint, Q: RestrictedPoint) -> RestrictedPoint:
    """Chord-and-tangent law in ``E'(R)``.

    Raises :class:`NonUnitSlope` when the two points agree at some but not
    all points above ``h``; the carried gcd splits ``h`` accordingly.
    """
    _check(P, Q)
    if P.is_zero:
        return Q
    if Q.is_zero:
        return P
    R = P.ring
    Ap = P.target.A
    dx = R.sub(P.a, Q.a)
    if R.is_zero(dx):
        if R.equal(P.b, Q.b):
            num = R.add(R.scale(R.field.from_int(3), R.sqr(P.a)), R.constant(Ap))
            den = R.mul(R.add(P.b, P.b), R.f)
            m = R.mul(num, _inv_or_raise(R, den, NonUnitSlope))
        elif R.is_zero(R.add(P.b, Q.b)):
            return zero(R, P.target)
        else:
            raise NonUnitSlope(R.gcd_with_modulus(R.sub(P.b, Q.b)))
    else:
        m = R.mul(R.sub(P.b, Q.b), _inv_or_raise(R, dx, NonUnitSlope))
    x3 = R.sub(R.sub(R.mul(R.sqr(m), R.f), P.a), Q.a)
    y3 = R.sub(R.mul(m, R.sub(P.a, x3)), P.b)
    return RestrictedPoint(R, P.target, x3, y3)


def restricted_double(P: RestrictedPoint) -> RestrictedPoint:
    return restricted_add(P, P)


# --- Jacobian arithmetic on the twisted curve --------------------------------
class _Jac:
    """Jacobian points on ``Y^2 = X^3 + a X + b`` over a ring (``a = A' f^2``)."""

    def __init__(self, R: QuotientRing, target: Curve):
        self.R = R
        self.a = R.scale(target.A, R.f2)

    def from_affine(self, P: RestrictedPoint):
        R = self.R
        return (R.mul(P.a, R.f), R.mul(P.b, R.f2), R.one())

    def double(self, P):
        R = self.R
        X, Y, Z = P
        XX, YY, ZZ = R.sqr(X), R.sqr(Y), R.sqr(Z)
        YYYY = R.sqr(YY)
        S = R.sub(R.sqr(R.add(X, YY)), R.add(XX, YYYY))
        S = R.add(S, S)
        M = R.add(R.scale(R.field.from_int(3), XX), R.mul(self.a, R.sqr(ZZ)))
        X3 = R.sub(R.sqr(M), R.add(S, S))
        Y3 = R.sub(R.mul(M, R.sub(S, X3)), R.scale(R.field.from_int(8), YYYY))
        Z3 = R.sub(R.sqr(R.add(Y, Z)), R.add(YY, ZZ))
        return (X3, Y3, Z3)

    def add_affine(self, P, Q2):
        """``P + Q`` with ``Q = (X2, Y2, 1)``; requires ``P != +-Q`` everywhere."""
        R = self.R
        X1, Y1, Z1 = P
        X2, Y2 = Q2
        Z1Z1 = R.sqr(Z1)
        U2 = R.mul(X2, Z1Z1)
        S2 = R.mul(Y2, R.mul(Z1, Z1Z1))
        H = R.sub(U2, X1)
        HH = R.sqr(H)
        I = R.scale(R.field.from_int(4), HH)
        J = R.mul(H, I)
        r = R.sub(S2, Y1)
        r = R.add(r, r)
        V = R.mul(X1, I)
        X3 = R.sub(R.sub(R.sqr(r), J), R.add(V, V))
        YJ = R.mul(Y1, J)
        Y3 = R.sub(R.mul(r, R.sub(V, X3)), R.add(YJ, YJ))
        Z3 = R.sub(R.sqr(R.add(Z1, H)), R.add(Z1Z1, HH))
        return (X3, Y3, Z3)

    def multiple(self, k: int, base):
        """``[k] base`` for ``0 < k < l`` (ladder never meets a degenerate case)."""
        Q2 = (base[0], base[1])
        acc = base
        for bit in bin(k)[3:]:
            acc = self.double(acc)
            if bit == "1":
                acc = self.add_affine(acc, Q2)
        return acc

    def to_affine(self, P, target: Curve) -> RestrictedPoint:
        R = self.R
        X, Y, Z = P
        try:
            zi = R.inv(Z)
        except NotInvertible as e:
            if e.gcd == R.modulus:
                return zero(R, target)
            raise NonUnitDenominator(e.gcd) from None
        zi2 = R.sqr(zi)
        a = R.mul(R.mul(X, zi2), R.f_inv)
        fi2 = R.sqr(R.f_inv)
        b = R.mul(R.mul(Y, R.mul(zi2, zi)), fi2)
        return RestrictedPoint(R, target, a, b)


def restricted_scalar_mul(c: int, P: RestrictedPoint) -> RestrictedPoint:
    """``[c] P`` by double-and-add in projective coordinates, one inversion at the end."""
    R = P.ring
    if R.ell is not None:
        c %= R.ell
    if P.is_zero or c == 0:
        return zero(R, P.target)
    if c < 0:
        c, P = -c, restricted_neg(P)
    jac = _Jac(R, P.target)
    return jac.to_affine(jac.multiple(c, jac.from_affine(P)), P.target)


# --- applying isogenies -----------------------------------------------------------
def evaluate_step(step: IsogenyStep, P: RestrictedPoint) -> RestrictedPoint:
    """Apply one step to a restricted point (affine, two inversions)."""
    if P.target != step.domain:
        raise RingMismatch("step domain differs from the point's curve")
    R = P.ring
    if P.is_zero:
        return zero(R, step.codomain)
    va = R.evaluate(step.v, P.a)
    if R.is_zero(va):
        return zero(R, step.codomain)
    a2 = R.mul(R.evaluate(step.u, P.a), _inv_or_raise(R, va, NonUnitDenominator))
    ta = R.evaluate(step.t, P.a)
    ratio = R.mul(R.evaluate(step.s, P.a), _inv_or_raise(R, ta, NonUnitDenominator))
    b2 = R.scale(step.c, R.mul(ratio, P.b))
    return RestrictedPoint(R, step.codomain, a2, b2)


def _homogeneous_basis(R: QuotientRing, X, Z, degree: int, xp: list, zp: list):
    """Monomials ``X^k Z^(degree-k)`` for ``k = 0..degree``, extending power caches."""
    while len(xp) <= degree:
        xp.append(R.mul(xp[-1], X))
        zp.append(R.mul(zp[-1], Z))
    out = []
    for k in range(degree + 1):
        if k == 0:
            out.append(zp[degree])
        elif k == degree:
            out.append(xp[degree])
        else:
            out.append(R.mul(xp[k], zp[degree - k]))
    return out


def _combine(R: QuotientRing, poly: Poly, basis: list):
    acc = R.zero()
    zero_c = R.field.zero
    for k, c in enumerate(poly.coeffs):
        if c != zero_c:
            acc = R.add(acc, R.scale(c, basis[k]))
    return acc


def restrict_chain(chain: Chain, ring: QuotientRing, start: RestrictedPoint | None = None) -> RestrictedPoint:
    """Restriction of ``chain`` (applied after ``start``, default the identity).

    Each step is evaluated on homogenized numerators and denominators; the
    two inversions happen once at the end.
    """
    R = ring
    if start is None:
        if chain.curve != R.curve:
            raise RingMismatch("chain does not start on the ring's curve")
        start = identity(R)
    elif start.ring != R or start.target != chain.curve:
        raise RingMismatch("start point does not match the chain")
    if start.is_zero:
        return zero(R, chain.codomain)
    an, ad, bn, bd = start.a, R.one(), start.b, R.one()
    for st in chain.steps:
        du, e = st.u.degree, st.t.degree
        xp, zp = [R.one()], [R.one()]
        basis_u = _homogeneous_basis(R, an, ad, du, xp, zp)
        U = _combine(R, st.u, basis_u)
        V = _combine(R, st.v, basis_u)
        basis_t = basis_u if e == du else _homogeneous_basis(R, an, ad, e, xp, zp)
        S = _combine(R, st.s, basis_t)
        T = _combine(R, st.t, basis_t)
        an, ad = U, V
        bn = R.scale(st.c, R.mul(S, bn))
        bd = R.mul(T, bd)
    try:
        adi = R.inv(ad)
    except NotInvertible as e:
        if e.gcd == R.modulus:
            return zero(R, chain.codomain)
        raise NonUnitDenominator(e.gcd) from None
    bdi = _inv_or_raise(R, bd, NonUnitDenominator)
    return RestrictedPoint(R, chain.codomain, R.mul(an, adi), R.mul(bn, bdi))
