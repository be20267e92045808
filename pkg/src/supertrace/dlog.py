"""Discrete logarithms in cyclic groups of prime-power order."""

from __future__ import annotations

from math import isqrt

from .curves import INFINITY, Curve, Point
from .errors import DlogFailure


def bsgs(E: Curve, base: Point, target: Point, order: int) -> int:
    """``k`` in ``[0, order)`` with ``[k] base = target``."""
    m = isqrt(order - 1) + 1
    table = {}
    P = INFINITY
    for j in range(m):
        table.setdefault(P, j)
        P = E.add(P, base)
    giant = E.neg(E.mul(m, base))
    Q = target
    for i in range(m + 1):
        j = table.get(Q)
        if j is not None:
            k = (i * m + j) % order
            if E.mul(k, base) == target:
                return k
        Q = E.add(Q, giant)
    raise DlogFailure("target is not in the subgroup generated by base")


def point_order_power(E: Curve, P: Point, ell: int, max_exp: int) -> int:
    """``e`` with ``P`` of exact order ``l^e`` (``P`` known to be killed by ``l^max_exp``)."""
    e = 0
    while not P.is_infinity:
        P = E.mul(ell, P)
        e += 1
        if e > max_exp:
            raise DlogFailure("point order exceeds the expected power")
    return e


def pohlig_hellman(E: Curve, base: Point, target: Point, ell: int, e: int) -> int:
    """``k mod l^e`` with ``[k] base = target`` for ``base`` of exact order ``l^e``."""
    gamma = E.mul(ell ** (e - 1), base)
    k = 0
    for i in range(e):
        h = E.mul(ell ** (e - 1 - i), E.sub(target, E.mul(k, base)))
        k += bsgs(E, gamma, h, ell) * ell ** i
    if E.mul(k, base) != target:
        raise DlogFailure("Pohlig-Hellman reconstruction failed")
    return k
