"""Isogenies in standard rational form and chains of them.

A step ``E -> E'`` of degree ``l`` is stored as the rational map

    (x, y) -> (u(x)/v(x), c * y * s(x)/t(x))

where ``v`` is monic, ``s/t`` is the reduced derivative of ``u/v`` with
``t`` monic, and ``c`` is a constant. Steps produced from a kernel
polynomial are normalized (``c = 1``); composing with an isomorphism
changes ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra.poly import Poly, gcd
from .curves import INFINITY, Curve, Point, apply_isomorphism
from .errors import BrokenChain, InvalidKernel, NotEndomorphism, SingularCurve


@dataclass(frozen=True, eq=False)
class IsogenyStep:
    domain: Curve
    codomain: Curve
    u: Poly
    v: Poly
    s: Poly
    t: Poly
    c: object

    @property
    def degree(self) -> int:
        return self.u.degree

    @cached_property
    def kernel(self) -> Poly:
        """Monic polynomial vanishing exactly on the kernel x-coordinates."""
        return self.v.exact_div(gcd(self.v, self.v.derivative()))

    def __eq__(self, other):
        return isinstance(other, IsogenyStep) and (
            self.domain, self.codomain, self.u, self.v, self.s, self.t, self.c
        ) == (other.domain, other.codomain, other.u, other.v, other.s, other.t, other.c)

    def __hash__(self):
        return hash((self.codomain, self.u, self.v, self.c))

    def normalization_constant(self):
        F = self.domain.field
        return F.div(F.mul(self.c, self.s.lc()), self.u.lc())

    def evaluate(self, P: Point) -> Point:
        if P.is_infinity:
            return INFINITY
        K = P.field
        vx = self.v.evaluate_in(K, P.x)
        if vx == K.zero:
            return INFINITY
        X = K.div(self.u.evaluate_in(K, P.x), vx)
        ratio = K.div(self.s.evaluate_in(K, P.x), self.t.evaluate_in(K, P.x))
        Y = K.mul(K.mul(K.embed(self.c, self.domain.field), P.y), ratio)
        return Point(K, X, Y)

    def check(self) -> list[str]:
        """Names of violated identities (empty when the step is consistent)."""
        problems = []
        E, E2 = self.domain, self.codomain
        F = E.field
        u, v, s, t = self.u, self.v, self.s, self.t
        if v.lc() != F.one or t.lc() != F.one:
            problems.append("monic")
        if gcd(u, v).degree != 0 or gcd(s, t).degree != 0:
            problems.append("coprime")
        if s * v * v != t * (u.derivative() * v - u * v.derivative()):
            problems.append("derivative")
        lhs = (s * s * E.f).scale(F.sqr(self.c)) * v ** 3
        rhs = t * t * (u ** 3 + (u * v * v).scale(E2.A) + (v ** 3).scale(E2.B))
        if lhs != rhs:
            problems.append("curve-equation")
        return problems

    def post_compose(self, w) -> "IsogenyStep":
        """Follow the step by the isomorphism ``(x, y) -> (w^-2 x, w^-3 y)``."""
        F = self.domain.field
        wi = F.inv(w)
        wi2 = F.sqr(wi)
        return IsogenyStep(
            self.domain,
            apply_isomorphism(self.codomain, w),
            self.u.scale(wi2),
            self.v,
            self.s.scale(wi2),
            self.t,
            F.mul(self.c, wi),
        )


def normalization_constant(step: IsogenyStep):
    return step.normalization_constant()


def _reduced_derivative(u: Poly, v: Poly):
    num = u.derivative() * v - u * v.derivative()
    den = v * v
    g = gcd(num, den)
    s, t = num.exact_div(g), den.exact_div(g)
    lt = t.lc()
    F = u.field
    if lt != F.one:
        inv = F.inv(lt)
        s, t = s.scale(inv), t.scale(inv)
    return s, t


def _power_sums(h: Poly):
    """First three power sums of the roots of monic ``h``."""
    F = h.field
    d = h.degree
    e1 = F.neg(h[d - 1])
    e2 = h[d - 2] if d >= 2 else F.zero
    e3 = F.neg(h[d - 3]) if d >= 3 else F.zero
    p1 = e1
    p2 = F.sub(F.sqr(e1), F.add(e2, e2))
    p3 = F.add(F.sub(F.mul(e1, F.sqr(e1)), F.mul(F.from_int(3), F.mul(e1, e2))), F.mul(F.from_int(3), e3))
    return p1, p2, p3


def velu_from_kernel(E: Curve, h: Poly, check: bool = True) -> IsogenyStep:
    """The normalized isogeny with kernel polynomial ``h``.

    ``h`` is either a linear factor of ``x^3 + Ax + B`` (a 2-isogeny) or
    the squarefree polynomial of degree ``(l-1)/2`` vanishing on the
    x-coordinates of a cyclic subgroup of odd prime order ``l``.
    """
    F = E.field
    if h.field != F:
        h = h.restrict_field(F)
    if h.degree < 1:
        raise InvalidKernel("kernel polynomial must be non-constant")
    h = h.monic()
    A, B = E.A, E.B
    c = F.from_int
    common = gcd(E.f, h)
    if common.degree > 0:
        if h.degree != 1 or common != h:
            raise InvalidKernel("kernel meets the 2-torsion in a non-subgroup")
        v = h
        x0 = F.neg(h[0])
        t0 = F.add(F.mul(c(3), F.sqr(x0)), A)
        A2 = F.sub(A, F.mul(c(5), t0))
        B2 = F.sub(B, F.mul(c(7), F.mul(x0, t0)))
    else:
        if not h.is_squarefree():
            raise InvalidKernel("kernel polynomial is not squarefree")
        d = h.degree
        v = h * h
        p1, p2, p3 = _power_sums(h)
        vsum = F.add(F.mul(c(6), p2), F.mul(c(2 * d), A))
        wsum = F.add(F.add(F.mul(c(10), p3), F.mul(c(6), F.mul(A, p1))), F.mul(c(4 * d), B))
        A2 = F.sub(A, F.mul(c(5), vsum))
        B2 = F.sub(B, F.mul(c(7), wsum))
    ell = v.degree + 1
    sigma = F.neg(v[ell - 2])
    x = Poly.x(F)
    fE = E.f
    dv = v.derivative()
    tail = (fE * (dv.derivative() * v - dv * dv)).scale(c(2))
    q, r = divmod(tail, v)
    if r:
        raise InvalidKernel("kernel polynomial does not define a subgroup")
    u = (x.scale(c(ell)) - sigma) * v - fE.derivative() * dv - q
    try:
        E2 = Curve(F, A2, B2)
    except SingularCurve as exc:
        raise InvalidKernel(f"singular codomain: {exc}") from exc
    s, t = _reduced_derivative(u, v)
    step = IsogenyStep(E, E2, u, v, s, t, F.one)
    if check and step.check():
        raise InvalidKernel(f"kernel fails the isogeny identities: {step.check()}")
    return step


def two_isogeny(E: Curve, x0) -> IsogenyStep:
    F = E.field
    return velu_from_kernel(E, Poly(F, (F.neg(x0), F.one), raw=True))


def complementary_two_isogeny(step: IsogenyStep, x1) -> IsogenyStep:
    """For a 2-isogeny ``E -> E'`` and another 2-torsion abscissa ``x1`` of
    ``E``, the 2-isogeny out of ``E'`` whose kernel is the image of ``x1``."""
    F = step.domain.field
    x_img = F.div(step.u(x1), step.v(x1))
    return two_isogeny(step.codomain, x_img)


@dataclass(frozen=True)
class Chain:
    """Composition of steps starting at ``curve``; empty means the identity."""

    curve: Curve
    steps: tuple = dc_field(default=())

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def codomain(self) -> Curve:
        return self.steps[-1].codomain if self.steps else self.curve

    @property
    def degree(self) -> int:
        d = 1
        for st in self.steps:
            d *= st.degree
        return d

    def __len__(self):
        return len(self.steps)

    def prefix(self, k: int) -> "Chain":
        return Chain(self.curve, self.steps[:k])

    def validate(self, endomorphism: bool = True) -> "Chain":
        prev = self.curve
        for i, st in enumerate(self.steps):
            if st.domain != prev:
                raise BrokenChain(i)
            prev = st.codomain
        if endomorphism and prev != self.curve:
            raise NotEndomorphism("chain does not return to its starting curve")
        return self

    def is_endomorphism(self) -> bool:
        return self.codomain == self.curve

    def evaluate(self, P: Point) -> Point:
        for st in self.steps:
            P = st.evaluate(P)
        return P

    def then(self, other: "Chain") -> "Chain":
        return Chain(self.curve, self.steps + other.steps)
