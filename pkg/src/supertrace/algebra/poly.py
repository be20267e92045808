"""Univariate polynomials over any field of the tower."""

from __future__ import annotations

import math

from ..errors import BothZero, NotInvertible
from .fast import kron_for, supports_dense
from .fields import Field, FieldElement

KRON_THRESHOLD = 12
KARATSUBA_THRESHOLD = 32
DENSE_DIVISION_THRESHOLD = 48

NEG_INF = -math.inf


class Poly:
    """Immutable polynomial: a field plus a tuple of raw coefficients, low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=(), *, raw: bool = False):
        if not raw:
            coeffs = [field.coerce(c.raw if isinstance(c, FieldElement) else c) for c in coeffs]
        else:
            coeffs = list(coeffs)
        zero = field.zero
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    # --- constructors ---------------------------------------------------------
    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (field.zero, field.one), raw=True)

    @classmethod
    def constant(cls, field: Field, c) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: Field, k: int, c=None) -> "Poly":
        c = field.one if c is None else field.coerce(c)
        return cls(field, (field.zero,) * k + (c,), raw=True)

    def _new(self, coeffs) -> "Poly":
        return Poly(self.field, coeffs, raw=True)

    # --- basic properties -------------------------------------------------------
    @property
    def degree(self):
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def monic(self) -> "Poly":
        if not self.coeffs or self.lc() == self.field.one:
            return self
        return self.scale(self.field.inv(self.lc()))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == Poly.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == self.field.zero:
                continue
            cs = "" if c == self.field.one and k else f"{c}"
            terms.append(cs + ("*" if cs and k else "") + ("x" if k == 1 else f"x^{k}" if k else ""))
        return " + ".join(terms)

    # --- ring operations ----------------------------------------------------------
    def _coerce_other(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                from ..errors import FieldMismatch
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, FieldElement):
            return Poly.constant(self.field, other.raw)
        return Poly.constant(self.field, other)

    def __add__(self, other):
        other = self._coerce_other(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return self._new([f.add(x, y) for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return self._new([f.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return self._coerce_other(other) - self

    def scale(self, c) -> "Poly":
        f = self.field
        if c == f.zero:
            return self._new(())
        return self._new([f.mul(c, x) for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = self._coerce_other(other)
            if len(other.coeffs) <= 1:
                return self.scale(other.coeffs[0] if other.coeffs else self.field.zero)
        other = self._coerce_other(other)
        return self._new(_mul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly.constant(self.field, self.field.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce_other(other)
        if not other.coeffs:
            from ..errors import ZeroInverse
            raise ZeroInverse("polynomial division by zero")
        q, r = _divmod(self.field, self.coeffs, other.coeffs)
        return self._new(q), self._new(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        return not (other % self)

    # --- calculus and evaluation ---------------------------------------------
    def derivative(self) -> "Poly":
        f = self.field
        return self._new([f.mul(f.from_int(k), c) for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Evaluate at a raw value or element of ``self.field``."""
        if isinstance(x, FieldElement):
            return FieldElement(self.field, self(x.raw))
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def evaluate_in(self, field: Field, x):
        """Evaluate at a raw value of an extension ``field`` of ``self.field``."""
        if field == self.field:
            return self(x)
        acc = field.zero
        src = self.field
        for c in reversed(self.coeffs):
            acc = field.add(field.mul(acc, x), field.embed(c, src))
        return acc

    def compose(self, g: "Poly") -> "Poly":
        acc = Poly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * g + Poly.constant(self.field, c)
        return acc

    def change_field(self, field: Field) -> "Poly":
        return Poly(field, [field.embed(c, self.field) for c in self.coeffs], raw=True)

    def restrict_field(self, field: Field) -> "Poly":
        out = []
        for c in self.coeffs:
            d = self.field.project(c, field)
            if d is None:
                from ..errors import CoefficientLeak
                raise CoefficientLeak(f"coefficient {c} is not in {field}")
            out.append(d)
        return Poly(field, out, raw=True)

    # --- gcd family ------------------------------------------------------------
    def gcd(self, other: "Poly") -> "Poly":
        return gcd(self, other)

    def is_squarefree(self) -> bool:
        return self.degree <= 0 or gcd(self, self.derivative()).degree == 0


# --- coefficient-list kernels -------------------------------------------------
def _mul(field: Field, a, b) -> list:
    if not a or not b:
        return []
    if supports_dense(field) and min(len(a), len(b)) >= KRON_THRESHOLD:
        kr = kron_for(field)
        return kr.to_coeffs(kr.mul(kr.from_coeffs(list(a)), kr.from_coeffs(list(b))))
    if min(len(a), len(b)) >= KARATSUBA_THRESHOLD:
        return _karatsuba(field, list(a), list(b))
    return _schoolbook(field, a, b)


def _schoolbook(field, a, b) -> list:
    zero = field.zero
    out = [zero] * (len(a) + len(b) - 1)
    add, mul = field.add, field.mul
    for i, x in enumerate(a):
        if x == zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = add(out[i + j], mul(x, y))
    return out


def _karatsuba(field, a, b) -> list:
    n = max(len(a), len(b))
    if min(len(a), len(b)) < KARATSUBA_THRESHOLD:
        return _schoolbook(field, a, b)
    zero = field.zero
    a = a + [zero] * (n - len(a))
    b = b + [zero] * (n - len(b))
    m = n // 2
    a0, a1, b0, b1 = a[:m], a[m:], b[:m], b[m:]
    z0 = _karatsuba(field, a0, b0)
    z2 = _karatsuba(field, a1, b1)
    sa = [field.add(x, y) for x, y in _pad_zip(a0, a1, zero)]
    sb = [field.add(x, y) for x, y in _pad_zip(b0, b1, zero)]
    z1 = _karatsuba(field, sa, sb)
    out = [zero] * (2 * n - 1)
    for i, c in enumerate(z0):
        out[i] = field.add(out[i], c)
        z1[i] = field.sub(z1[i], c)
    for i, c in enumerate(z2):
        out[i + 2 * m] = field.add(out[i + 2 * m], c)
        z1[i] = field.sub(z1[i], c)
    for i, c in enumerate(z1):
        out[i + m] = field.add(out[i + m], c)
    return out


def _pad_zip(a, b, zero):
    n = max(len(a), len(b))
    return zip(a + [zero] * (n - len(a)), b + [zero] * (n - len(b)))


def _divmod(field: Field, a, b):
    if len(a) < len(b):
        return [], list(a)
    if supports_dense(field) and len(b) > DENSE_DIVISION_THRESHOLD:
        return _dense_divmod(field, a, b)
    zero = field.zero
    r = list(a)
    lb = len(b)
    inv_lc = field.inv(b[-1])
    monic = b[-1] == field.one
    q = [zero] * (len(a) - lb + 1)
    sub, mul = field.sub, field.mul
    for k in range(len(a) - lb, -1, -1):
        c = r[k + lb - 1]
        if c == zero:
            continue
        if not monic:
            c = mul(c, inv_lc)
        q[k] = c
        for i in range(lb - 1):
            if b[i] != zero:
                r[k + i] = sub(r[k + i], mul(c, b[i]))
        r[k + lb - 1] = zero
    return q, r[:lb - 1]


def _dense_divmod(field, a, b):
    kr = kron_for(field)
    p = field.p
    A = kr.from_coeffs(list(a))
    B = kr.from_coeffs(list(b))
    lb = len(b)
    inv_lc = kr.scalar_inv(b[-1])
    Q = kr.zeros(len(a) - lb + 1)
    for k in range(len(a) - lb, -1, -1):
        c = kr.column(A, k + lb - 1)
        if c == field.zero:
            continue
        c = kr.scalar_mul(c, inv_lc)
        if kr.k == 1:
            Q[0, k] = c
        else:
            Q[:, k] = c
        A[:, k:k + lb] = (A[:, k:k + lb] - kr.scale(c, B)) % p
    return kr.to_coeffs(Q), kr.to_coeffs(A[:, :lb - 1])


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    field = f.field
    if not f.coeffs:
        return g.monic()
    if not g.coeffs:
        return f.monic()
    if supports_dense(field) and max(len(f), len(g)) > DENSE_DIVISION_THRESHOLD:
        if len(f) < len(g):
            f, g = g, f
        kr = kron_for(field)
        d, _ = kr.xgcd(kr.from_coeffs(list(g.coeffs)), kr.from_coeffs(list(f.coeffs)), want_cofactor=False)
        return Poly(field, kr.to_coeffs(d), raw=True)
    a, b = f, g
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def xgcd(f: Poly, g: Poly):
    """``(d, s, t)`` with ``s*f + t*g = d`` and ``d`` the monic gcd."""
    field = f.field
    if not f.coeffs and not g.coeffs:
        raise BothZero("gcd of two zero polynomials")
    zero = Poly(field)
    one = Poly.constant(field, field.one)
    r0, r1, s0, s1, t0, t1 = f, g, one, zero, zero, one
    while r1.coeffs:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0.coeffs:
        return zero, zero, zero
    c = field.inv(r0.lc())
    return r0.scale(c), s0.scale(c), t0.scale(c)


def invmod(f: Poly, h: Poly) -> Poly:
    """Inverse of ``f`` modulo ``h``; raises :class:`NotInvertible` with the gcd."""
    f = f % h
    if supports_dense(f.field) and h.degree > DENSE_DIVISION_THRESHOLD:
        kr = kron_for(f.field)
        g, s = kr.xgcd(kr.from_coeffs(list(f.coeffs)), kr.from_coeffs(list(h.coeffs)))
        if g.shape[1] != 1:
            raise NotInvertible(Poly(f.field, kr.to_coeffs(g), raw=True))
        return Poly(f.field, kr.to_coeffs(s), raw=True)
    d, s, _ = xgcd(f, h)
    if d.degree != 0:
        raise NotInvertible(d if d.coeffs else h.monic())
    return s % h


def mulmod(f: Poly, g: Poly, h: Poly) -> Poly:
    return (f * g) % h


def powmod(f: Poly, e: int, h: Poly) -> Poly:
    if supports_dense(f.field) and h.degree > 1:
        from .residue import ResidueRing
        R = ResidueRing(h)
        return R.to_poly(R.pow(R.from_poly(f), e))
    result = Poly.constant(f.field, f.field.one) % h
    base = f % h
    if e < 0:
        base, e = invmod(base, h), -e
    while e:
        if e & 1:
            result = (result * base) % h
        e >>= 1
        if e:
            base = (base * base) % h
    return result
