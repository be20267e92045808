"""Short Weierstrass curves, their points, and division polynomials."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .algebra.fields import Field, FieldElement, PrimeField
from .algebra.poly import Poly
from .errors import FieldMismatch, JInvariantMismatch, SingularCurve, Undecided, UnsupportedPrime


@dataclass(frozen=True)
class Point:
    """An affine point with raw coordinates in ``field``; ``x is None`` marks infinity."""

    field: Field | None
    x: object = None
    y: object = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = Point(None)


class Curve:
    """``y^2 = x^3 + A x + B`` over ``field`` (``A``, ``B`` raw values)."""

    def __init__(self, field: Field, A, B):
        if field.p <= 3:
            raise UnsupportedPrime(f"characteristic {field.p} is not supported")
        A = field.coerce(A.raw if isinstance(A, FieldElement) else A)
        B = field.coerce(B.raw if isinstance(B, FieldElement) else B)
        F = field
        disc = F.add(F.mul(F.from_int(4), F.mul(A, F.sqr(A))), F.mul(F.from_int(27), F.sqr(B)))
        if disc == F.zero:
            raise SingularCurve("4A^3 + 27B^2 = 0")
        self.field = field
        self.A = A
        self.B = B
        self._lifted: dict = {}

    def __eq__(self, other):
        return isinstance(other, Curve) and (self.field, self.A, self.B) == (other.field, other.A, other.B)

    def __hash__(self):
        return hash((self.field, self.A, self.B))

    def __repr__(self):
        return f"Curve(A={self.A}, B={self.B} over {self.field!r})"

    @property
    def p(self) -> int:
        return self.field.p

    @cached_property
    def f(self) -> Poly:
        F = self.field
        return Poly(F, (self.B, self.A, F.zero, F.one), raw=True)

    def j_invariant(self):
        F = self.field
        a3 = F.mul(F.from_int(4), F.mul(self.A, F.sqr(self.A)))
        return F.div(F.mul(F.from_int(1728), a3), F.add(a3, F.mul(F.from_int(27), F.sqr(self.B))))

    def coefficients_in(self, field: Field):
        if field == self.field:
            return self.A, self.B
        if field not in self._lifted:
            self._lifted[field] = (field.embed(self.A, self.field), field.embed(self.B, self.field))
        return self._lifted[field]

    def rhs(self, x, field: Field | None = None):
        F = field or self.field
        A, B = self.coefficients_in(F)
        return F.add(F.mul(F.add(F.sqr(x), A), x), B)

    # --- points ---------------------------------------------------------------
    def point(self, x, y, field: Field | None = None) -> Point:
        F = field or self.field
        P = Point(F, F.coerce(x), F.coerce(y))
        if not self.contains(P):
            raise ValueError(f"{P} is not on {self}")
        return P

    def contains(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        return P.field.sqr(P.y) == self.rhs(P.x, P.field)

    def lift_x(self, x, field: Field | None = None, seed: int = 0) -> Point | None:
        F = field or self.field
        y = F.sqrt(self.rhs(x, F), seed)
        return None if y is None else Point(F, x, y)

    def random_point(self, rng: random.Random, field: Field | None = None) -> Point:
        F = field or self.field
        while True:
            P = self.lift_x(F.random(rng), F)
            if P is not None:
                return P if rng.random() < 0.5 else self.neg(P)

    def neg(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        return Point(P.field, P.x, P.field.neg(P.y))

    def add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.field != Q.field:
            raise FieldMismatch("points over different fields")
        F = P.field
        if P.x == Q.x:
            if P.y != Q.y or P.y == F.zero:
                return INFINITY
            A, _ = self.coefficients_in(F)
            num = F.add(F.mul(F.from_int(3), F.sqr(P.x)), A)
            m = F.div(num, F.add(P.y, P.y))
        else:
            m = F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x))
        x3 = F.sub(F.sub(F.sqr(m), P.x), Q.x)
        y3 = F.sub(F.mul(m, F.sub(P.x, x3)), P.y)
        return Point(F, x3, y3)

    def double(self, P: Point) -> Point:
        return self.add(P, P)

    def sub(self, P: Point, Q: Point) -> Point:
        return self.add(P, self.neg(Q))

    def mul(self, k: int, P: Point) -> Point:
        if k < 0:
            k, P = -k, self.neg(P)
        R = INFINITY
        for bit in bin(k)[2:]:
            R = self.add(R, R)
            if bit == "1":
                R = self.add(R, P)
        return R

    def order_divides(self, P: Point, n: int) -> bool:
        return self.mul(n, P).is_infinity

    # --- division polynomials -----------------------------------------------
    def division_polynomial(self, n: int) -> Poly:
        """Univariate ``psi_n`` for odd ``n``; for even ``n`` the factor ``psi_n / (2y)``."""
        return _division_polynomials(self, n)


def _division_polynomials(E: Curve, n: int) -> Poly:
    if n < 0:
        raise ValueError("negative index")
    F = E.field
    A, B = E.A, E.B
    c = F.from_int
    memo: dict[int, Poly] = {
        0: Poly(F),
        1: Poly.constant(F, F.one),
        2: Poly.constant(F, F.one),
        3: Poly(F, (F.neg(F.sqr(A)), F.mul(c(12), B), F.mul(c(6), A), F.zero, c(3)), raw=True),
        4: Poly(
            F,
            (
                F.mul(c(-2), F.add(F.mul(c(8), F.sqr(B)), F.mul(A, F.sqr(A)))),
                F.mul(c(-8), F.mul(A, B)),
                F.mul(c(-10), F.sqr(A)),
                F.mul(c(40), B),
                F.mul(c(10), A),
                F.zero,
                c(2),
            ),
            raw=True,
        ),
    }
    f2 = E.f * E.f
    sixteen_f2 = f2.scale(c(16))

    def g(k: int) -> Poly:
        if k in memo:
            return memo[k]
        m = k // 2
        if k % 2:
            if m % 2 == 0:
                r = sixteen_f2 * g(m + 2) * g(m) ** 3 - g(m - 1) * g(m + 1) ** 3
            else:
                r = g(m + 2) * g(m) ** 3 - sixteen_f2 * g(m - 1) * g(m + 1) ** 3
        else:
            r = g(m) * (g(m + 2) * g(m - 1) ** 2 - g(m - 2) * g(m + 1) ** 2)
        memo[k] = r
        return r

    return g(n)


def division_polynomial(E: Curve, n: int) -> Poly:
    return E.division_polynomial(n)


# --- isomorphisms -------------------------------------------------------------
def isomorphism_u(E: Curve, E2: Curve):
    """``u`` with ``(x, y) -> (u^-2 x, u^-3 y)`` mapping ``E`` onto ``E2``, or ``None``.

    ``None`` means the curves share a j-invariant but are quadratic twists.
    Of the two valid scalars ``+-u`` the canonically smaller is returned.
    """
    F = E.field
    if E.j_invariant() != E2.j_invariant():
        raise JInvariantMismatch("curves are not isomorphic")
    zero = F.zero
    if E.A == zero or E.B == zero:
        candidates = _isomorphism_u_special(E, E2)
    else:
        u2 = F.div(F.mul(E.B, E2.A), F.mul(E2.B, E.A))
        r = F.sqrt(u2)
        candidates = [] if r is None else [r]
    for u in candidates:
        if apply_isomorphism(E, u) == E2:
            return min(u, F.neg(u), key=F.key)
    return None


def _isomorphism_u_special(E: Curve, E2: Curve):
    F = E.field
    if E.A == F.zero:
        # u^6 = B / B2
        target, e = F.div(E.B, E2.B), 6
    else:
        target, e = F.div(E.A, E2.A), 4
    out = []
    from .algebra.factor import roots
    x = Poly.x(F)
    for r in roots(x ** e - Poly.constant(F, target)):
        out.append(r)
    return out


def apply_isomorphism(E: Curve, u) -> Curve:
    F = E.field
    ui2 = F.inv(F.sqr(u))
    return Curve(F, F.mul(F.sqr(ui2), E.A), F.mul(F.mul(F.sqr(ui2), ui2), E.B))


def map_point_isomorphism(P: Point, u, base: Field) -> Point:
    if P.is_infinity:
        return P
    F = P.field
    uu = F.embed(u, base)
    ui = F.inv(uu)
    ui2 = F.sqr(ui)
    return Point(F, F.mul(ui2, P.x), F.mul(F.mul(ui2, ui), P.y))


# --- supersingularity -------------------------------------------------------------
def _candidate_exponents(p: int, field: Field) -> list[int]:
    if isinstance(field, PrimeField):
        return [p + 1]
    if field.absolute_degree != 2:
        raise ValueError("supersingularity test needs a curve over GF(p) or GF(p^2)")
    return [p + 1, p - 1, p * p + 1, p * p + p + 1, p * p - p + 1]


def _killing_exponent(E: Curve, seed: int, samples: int) -> int | None:
    """The candidate group exponent annihilating every sampled point, if any."""
    rng = random.Random(seed)
    alive = _candidate_exponents(E.p, E.field)
    for _ in range(samples):
        P = E.random_point(rng)
        alive = [n for n in alive if E.order_divides(P, n)]
        if not alive:
            return None
    return alive[0] if len(alive) == 1 else None


def is_supersingular(E: Curve, seed: int = 0, samples: int = 8) -> bool:
    return _killing_exponent(E, seed, samples) is not None


def group_order_supersingular(E: Curve, seed: int = 0) -> int:
    """``#E(GF(p^2))``, which is ``(p+1)^2`` or ``(p-1)^2`` away from j = 0, 1728."""
    p = E.p
    n = _killing_exponent(E, seed, 12)
    if n is None:
        raise Undecided("point orders do not identify a supersingular group")
    if n in (p + 1, p - 1) and E.field.absolute_degree == 2:
        return n * n
    if isinstance(E.field, PrimeField):
        return p + 1
    return n


def group_exponent(E: Curve, seed: int = 0) -> int:
    """``p + 1`` or ``p - 1``: the group is ``(Z/n)^2`` for this ``n``."""
    p = E.p
    order = group_order_supersingular(E, seed)
    for n in (p + 1, p - 1):
        if order == n * n:
            return n
    raise Undecided("group is not of the form (Z/n)^2")
