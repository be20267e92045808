"""Factorization of polynomials over finite fields of odd characteristic."""

from __future__ import annotations

import random

from .fast import supports_dense
from .poly import Poly, gcd, powmod


def _key(f: Poly):
    return (f.degree, tuple(f.field.key(c) for c in f.coeffs))


class _Frob:
    """Powers ``g^e mod f`` with the dense ring when available."""

    def __init__(self, f: Poly):
        self.f = f
        self.ring = None
        if supports_dense(f.field) and f.degree > 1:
            from .residue import ResidueRing
            self.ring = ResidueRing(f)

    def pow(self, g: Poly, e: int) -> Poly:
        if self.ring is None:
            return powmod(g, e, self.f)
        R = self.ring
        return R.to_poly(R.pow(R.from_poly(g), e))


def _pth_root(f: Poly) -> Poly:
    field = f.field
    p, q = field.p, field.order
    coeffs = [field.pow(f.coeffs[k], q // p) for k in range(0, len(f.coeffs), p)]
    return Poly(field, coeffs, raw=True)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs ``(g, m)`` of squarefree coprime monic factors with ``f = lc * prod g^m``."""
    f = f.monic()
    if f.degree <= 0:
        return []
    out = []
    c = gcd(f, f.derivative())
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c.exact_div(y)
    if c.degree > 0:
        p = f.field.p
        out.extend((g, m * p) for g, m in squarefree_decomposition(_pth_root(c)))
    return out


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a squarefree monic ``f`` into products of irreducibles of equal degree."""
    out = []
    q = f.field.order
    x = Poly.x(f.field)
    rest = f
    h = x
    d = 0
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = _Frob(rest).pow(h % rest, q)
        g = gcd(rest, h - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest.exact_div(g)
            h = h % rest if rest.degree > 0 else h
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of degree-``d`` irreducibles."""
    if f.degree == d:
        return [f]
    field = f.field
    exponent = (field.order ** d - 1) // 2
    frob = _Frob(f)
    while True:
        a = Poly(field, [field.random(rng) for _ in range(f.degree)], raw=True)
        if a.degree <= 0:
            continue
        g = gcd(f, a)
        if 0 < g.degree < f.degree:
            break
        g = gcd(f, frob.pow(a, exponent) - 1)
        if 0 < g.degree < f.degree:
            break
    return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def factor(f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, in a canonical order."""
    rng = random.Random(seed)
    out = []
    for g, m in squarefree_decomposition(f):
        for part, d in distinct_degree(g):
            out.extend((h, m) for h in equal_degree(part, d, rng))
    return sorted(out, key=lambda t: _key(t[0]))


def smallest_factor(f: Poly, seed: int = 0) -> Poly:
    """An irreducible factor of least degree (canonically smallest among those)."""
    rng = random.Random(seed)
    g = squarefree_decomposition(f)
    best = None
    for part, _ in g:
        dd = distinct_degree(part)
        d = min(dd, key=lambda t: t[1])
        if best is None or d[1] < best[1]:
            best = d
    part, d = best
    return min(equal_degree(part, d, rng), key=_key)


def roots(f: Poly, seed: int = 0) -> list:
    """Distinct roots of ``f`` in its coefficient field, canonically sorted."""
    f = f.monic()
    if f.degree <= 0:
        return []
    field = f.field
    x = Poly.x(field)
    linear = gcd(f, _Frob(f).pow(x, field.order) - x) if f.degree > 1 else f
    if linear.degree <= 0:
        return []
    found = [field.neg(h.coeffs[0]) for h in equal_degree(linear, 1, random.Random(seed))]
    return sorted(found, key=field.key)


def is_irreducible(f: Poly) -> bool:
    """Rabin's test."""
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    f = f.monic()
    field = f.field
    q = field.order
    x = Poly.x(field)
    frob = _Frob(f)
    primes = [r for r in range(2, n + 1) if n % r == 0 and all(r % s for s in range(2, r))]
    for r in primes:
        h = x
        for _ in range(n // r):
            h = frob.pow(h, q)
        if gcd(f, h - x).degree != 0:
            return False
    h = x
    for _ in range(n):
        h = frob.pow(h, q)
    return h == x % f
