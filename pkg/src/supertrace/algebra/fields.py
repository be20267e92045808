"""Finite fields as arithmetic contexts.

A field object owns the arithmetic; elements are plain Python values
("raw" values): ``int`` for a prime field, tuples of base-field raws for
extensions. :class:`FieldElement` wraps a raw value for interactive use.
"""

from __future__ import annotations

import random as _random
from functools import cached_property

import gmpy2

from ..errors import FieldMismatch, ZeroInverse


class Field:
    p: int
    order: int
    degree: int
    base: "Field | None"
    zero: object
    one: object

    # --- derived operations, shared by all fields -----------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                return FieldElement(self, self.embed(value.raw, value.field))
            return value
        return FieldElement(self, self.coerce(value))

    def __eq__(self, other):
        return isinstance(other, Field) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    @property
    def absolute_degree(self) -> int:
        return self.degree * (self.base.absolute_degree if self.base else 1)

    @property
    def level(self) -> int:
        return self.absolute_degree

    def coerce(self, value):
        if isinstance(value, int):
            return self.from_int(value)
        return value

    def is_zero(self, a) -> bool:
        return a == self.zero

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        for bit in bin(e)[2:]:
            result = self.sqr(result)
            if bit == "1":
                result = self.mul(result, a)
        return result

    def is_square(self, a) -> bool:
        return a == self.zero or self.pow(a, (self.order - 1) // 2) == self.one

    def frobenius(self, a):
        return self.pow(a, self.p)

    def key(self, a):
        return a

    def random(self, rng: _random.Random):
        return self.from_coordinates([rng.randrange(self.p) for _ in range(self.absolute_degree)])

    def nonzero_random(self, rng: _random.Random):
        while True:
            a = self.random(rng)
            if a != self.zero:
                return a

    @cached_property
    def _nonresidue(self):
        rng = _random.Random(0)
        while True:
            z = self.nonzero_random(rng)
            if not self.is_square(z):
                return z

    def sqrt(self, a, seed: int = 0):
        """Square root by Tonelli-Shanks; the canonically smaller root, or None."""
        if a == self.zero:
            return self.zero
        q = self.order
        if self.pow(a, (q - 1) // 2) != self.one:
            return None
        m, s = q - 1, 0
        while m % 2 == 0:
            m //= 2
            s += 1
        z = self._nonresidue
        c = self.pow(z, m)
        x = self.pow(a, (m + 1) // 2)
        t = self.pow(a, m)
        while t != self.one:
            i, t2 = 0, t
            while t2 != self.one:
                t2 = self.sqr(t2)
                i += 1
            b = c
            for _ in range(s - i - 1):
                b = self.sqr(b)
            x = self.mul(x, b)
            c = self.sqr(b)
            t = self.mul(t, c)
            s = i
        return min(x, self.neg(x), key=self.key)

    def embed(self, raw, source: "Field"):
        """Map ``raw`` from a subfield of the tower into this field."""
        if source == self:
            return raw
        if self.base is None:
            raise FieldMismatch(f"{source} is not a subfield of {self}")
        return self._from_base(self.base.embed(raw, source))

    def project(self, raw, target: "Field"):
        """Inverse of :meth:`embed`; ``None`` if ``raw`` is not in ``target``."""
        if target == self:
            return raw
        if self.base is None:
            raise FieldMismatch(f"{target} is not a subfield of {self}")
        down = self._to_base(raw)
        return None if down is None else self.base.project(down, target)

    def tower(self) -> list["Field"]:
        chain, f = [], self
        while f is not None:
            chain.append(f)
            f = f.base
        return chain[::-1]

    def __repr__(self):
        return f"{type(self).__name__}(p={self.p}, degree={self.absolute_degree})"


class PrimeField(Field):
    degree = 1
    base = None
    zero = 0
    one = 1

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = self.order = p

    @cached_property
    def descriptor(self):
        return ("Fp", self.p)

    def from_int(self, n: int) -> int:
        return n % self.p

    def coerce(self, value):
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def sqr(self, a):
        return a * a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroInverse("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_square(self, a):
        return a == 0 or pow(a, (self.p - 1) // 2, self.p) == 1

    def frobenius(self, a):
        return a

    @cached_property
    def _nonresidue(self):
        z = 2
        while self.is_square(z):
            z += 1
        return z

    def sqrt(self, a, seed: int = 0):
        a %= self.p
        if self.p == 2 or a == 0:
            return a
        if self.p % 4 == 3:
            if not self.is_square(a):
                return None
            x = pow(a, (self.p + 1) // 4, self.p)
            return min(x, self.p - x)
        return super().sqrt(a, seed)

    def random(self, rng):
        return rng.randrange(self.p)

    def coordinates(self, a) -> list[int]:
        return [a]

    def from_coordinates(self, coords) -> int:
        (a,) = coords
        return int(a) % self.p

    def __repr__(self):
        return f"GF({self.p})"


def _lp_trim(a, zero):
    while a and a[-1] == zero:
        a.pop()
    return a


class QuadraticExtension(Field):
    """``base[x] / (x^2 - nonresidue)``."""

    degree = 2

    def __init__(self, base: Field, nonresidue):
        if base.is_square(nonresidue):
            raise ValueError("x^2 - n is reducible: n is a square")
        self.base = base
        self.n = nonresidue
        self.p = base.p
        self.order = base.order ** 2
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)

    @cached_property
    def descriptor(self):
        return ("quad", self.base.descriptor, tuple(self.base.coordinates(self.n)))

    def modulus(self) -> list:
        b = self.base
        return [b.neg(self.n), b.zero, b.one]

    def generator(self):
        return (self.base.zero, self.base.one)

    def from_int(self, n):
        return (self.base.from_int(n), self.base.zero)

    def _from_base(self, a):
        return (a, self.base.zero)

    def _to_base(self, a):
        return a[0] if a[1] == self.base.zero else None

    def add(self, a, b):
        f = self.base
        return (f.add(a[0], b[0]), f.add(a[1], b[1]))

    def sub(self, a, b):
        f = self.base
        return (f.sub(a[0], b[0]), f.sub(a[1], b[1]))

    def neg(self, a):
        f = self.base
        return (f.neg(a[0]), f.neg(a[1]))

    def mul(self, a, b):
        f = self.base
        a0b0 = f.mul(a[0], b[0])
        a1b1 = f.mul(a[1], b[1])
        cross = f.sub(f.mul(f.add(a[0], a[1]), f.add(b[0], b[1])), f.add(a0b0, a1b1))
        return (f.add(a0b0, f.mul(self.n, a1b1)), cross)

    def sqr(self, a):
        return self.mul(a, a)

    def inv(self, a):
        f = self.base
        norm = f.sub(f.sqr(a[0]), f.mul(self.n, f.sqr(a[1])))
        if norm == f.zero:
            raise ZeroInverse("inverse of zero")
        ni = f.inv(norm)
        return (f.mul(a[0], ni), f.neg(f.mul(a[1], ni)))

    def coordinates(self, a):
        return self.base.coordinates(a[0]) + self.base.coordinates(a[1])

    def from_coordinates(self, coords):
        coords = list(coords)
        half = len(coords) // 2
        return (self.base.from_coordinates(coords[:half]), self.base.from_coordinates(coords[half:]))


class Fp2(QuadraticExtension):
    """Quadratic extension of a prime field with inlined integer arithmetic."""

    def __init__(self, base: PrimeField, nonresidue: int):
        super().__init__(base, nonresidue % base.p)
        self.zero = (0, 0)
        self.one = (1, 0)

    def from_int(self, n):
        return (n % self.p, 0)

    def coerce(self, value):
        if isinstance(value, int):
            return (value % self.p, 0)
        a, b = value
        return (int(a) % self.p, int(b) % self.p)

    def add(self, a, b):
        p = self.p
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def sub(self, a, b):
        p = self.p
        return ((a[0] - b[0]) % p, (a[1] - b[1]) % p)

    def neg(self, a):
        p = self.p
        return (-a[0] % p, -a[1] % p)

    def mul(self, a, b):
        p = self.p
        a0, a1 = a
        b0, b1 = b
        return ((a0 * b0 + self.n * a1 * b1) % p, (a0 * b1 + a1 * b0) % p)

    def sqr(self, a):
        p = self.p
        a0, a1 = a
        return ((a0 * a0 + self.n * a1 * a1) % p, 2 * a0 * a1 % p)

    def inv(self, a):
        p = self.p
        a0, a1 = a
        norm = (a0 * a0 - self.n * a1 * a1) % p
        if norm == 0:
            raise ZeroInverse("inverse of zero")
        ni = pow(norm, -1, p)
        return (a0 * ni % p, -a1 * ni % p)

    def scale(self, a, k: int):
        return (a[0] * k % self.p, a[1] * k % self.p)

    def frobenius(self, a):
        return (a[0], -a[1] % self.p)

    def norm(self, a) -> int:
        return (a[0] * a[0] - self.n * a[1] * a[1]) % self.p

    def random(self, rng):
        return (rng.randrange(self.p), rng.randrange(self.p))


class ExtensionField(Field):
    """``base[t] / (modulus)`` for a monic irreducible ``modulus`` (list of base raws)."""

    def __init__(self, base: Field, modulus):
        modulus = list(modulus)
        if len(modulus) < 3 or modulus[-1] != base.one:
            raise ValueError("modulus must be monic of degree >= 2")
        self.base = base
        self.mod = modulus
        self.degree = len(modulus) - 1
        self.p = base.p
        self.order = base.order ** self.degree
        self.zero = (base.zero,) * self.degree
        self.one = (base.one,) + (base.zero,) * (self.degree - 1)

    @cached_property
    def descriptor(self):
        return ("ext", self.base.descriptor, tuple(tuple(self.base.coordinates(c)) for c in self.mod))

    def modulus(self) -> list:
        return list(self.mod)

    def generator(self):
        b = self.base
        return (b.zero, b.one) + (b.zero,) * (self.degree - 2)

    def from_int(self, n):
        return (self.base.from_int(n),) + (self.base.zero,) * (self.degree - 1)

    def _from_base(self, a):
        return (a,) + (self.base.zero,) * (self.degree - 1)

    def _to_base(self, a):
        z = self.base.zero
        return a[0] if all(c == z for c in a[1:]) else None

    def _pad(self, coeffs):
        coeffs = list(coeffs)
        return tuple(coeffs + [self.base.zero] * (self.degree - len(coeffs)))

    def add(self, a, b):
        f = self.base
        return tuple(f.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        f = self.base
        return tuple(f.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        f, m = self.base, self.degree
        prod = [f.zero] * (2 * m - 1)
        for i, x in enumerate(a):
            if x == f.zero:
                continue
            for j, y in enumerate(b):
                prod[i + j] = f.add(prod[i + j], f.mul(x, y))
        mod = self.mod
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c != f.zero:
                for i in range(m):
                    prod[k - m + i] = f.sub(prod[k - m + i], f.mul(c, mod[i]))
        return tuple(prod[:m])

    def sqr(self, a):
        return self.mul(a, a)

    def inv(self, a):
        f = self.base
        if all(x == f.zero for x in a):
            raise ZeroInverse("inverse of zero")
        # extended Euclid on coefficient lists: track s with s*a = r mod modulus
        r0, r1 = list(self.mod), _lp_trim(list(a), f.zero)
        s0, s1 = [], [f.one]
        while len(r1) > 1:
            inv_lc = f.inv(r1[-1])
            q = [f.zero] * (len(r0) - len(r1) + 1)
            r = list(r0)
            for k in range(len(r) - len(r1), -1, -1):
                c = f.mul(r[k + len(r1) - 1], inv_lc)
                q[k] = c
                for i, y in enumerate(r1):
                    r[k + i] = f.sub(r[k + i], f.mul(c, y))
            r = _lp_trim(r, f.zero)
            qs = [f.zero] * (len(q) + len(s1))
            for i, x in enumerate(q):
                for j, y in enumerate(s1):
                    qs[i + j] = f.add(qs[i + j], f.mul(x, y))
            s = [f.sub(x, y) for x, y in _zip_pad(s0, qs, f.zero)]
            r0, r1, s0, s1 = r1, r, s1, _lp_trim(s, f.zero)
        c = f.inv(r1[0])
        return self._pad(f.mul(x, c) for x in s1)

    def coordinates(self, a):
        out = []
        for c in a:
            out.extend(self.base.coordinates(c))
        return out

    def from_coordinates(self, coords):
        coords = list(coords)
        w = len(coords) // self.degree
        return tuple(self.base.from_coordinates(coords[i * w:(i + 1) * w]) for i in range(self.degree))


def _zip_pad(a, b, zero):
    n = max(len(a), len(b))
    return zip(list(a) + [zero] * (n - len(a)), list(b) + [zero] * (n - len(b)))


def fp2(p: int) -> Fp2:
    """The quadratic extension of GF(p) with the package's fixed modulus.

    ``x^2 + 1`` when ``p = 3 mod 4``; otherwise ``x^2 - n`` for the least
    quadratic non-residue ``n``.
    """
    base = PrimeField(p)
    if p == 2:
        raise ValueError("characteristic 2 is not supported")
    if p % 4 == 3:
        return Fp2(base, p - 1)
    return Fp2(base, base._nonresidue)


def field_from_tower(p: int, tower) -> Field:
    """Rebuild a field from ``p`` and the list of level moduli (base raws, low first)."""
    field: Field = PrimeField(p)
    for modulus in tower:
        modulus = list(modulus)
        if len(modulus) == 3 and modulus[1] == field.zero and modulus[2] == field.one:
            n = field.neg(modulus[0])
            field = Fp2(field, n) if isinstance(field, PrimeField) else QuadraticExtension(field, n)
        else:
            field = ExtensionField(field, modulus)
    return field


def tower_moduli(field: Field) -> list[list]:
    return [f.modulus() for f in field.tower()[1:]]


class FieldElement:
    """A raw value bound to its field, with operator overloading."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw):
        self.field = field
        self.raw = raw

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.raw
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, raw):
        return FieldElement(self.field, raw)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.raw, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.raw))

    def __neg__(self):
        return self._wrap(self.field.neg(self.raw))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.raw, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.raw == other.raw
        if isinstance(other, int):
            return self.raw == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __bool__(self):
        return self.raw != self.field.zero

    def inverse(self):
        return self._wrap(self.field.inv(self.raw))

    def is_square(self) -> bool:
        return self.field.is_square(self.raw)

    def sqrt(self, seed: int = 0):
        r = self.field.sqrt(self.raw, seed)
        return None if r is None else self._wrap(r)

    def frobenius(self):
        return self._wrap(self.field.frobenius(self.raw))

    def coordinates(self) -> list[int]:
        return self.field.coordinates(self.raw)

    def __repr__(self):
        return f"{self.raw!r} in {self.field!r}"
