"""Trace of an endomorphism given as an isogeny chain.

Four ways of gathering residues are combined by CRT:

* ``schoof``: restriction to the full ``l``-torsion ``F_q[x]/(psi_l)``,
  splitting the ring whenever a zero divisor shows up;
* ``sea``: restriction to one kernel subgroup ``F_q[x]/(h)``;
* ``sea_p``: additionally the residue mod ``p`` read off the constants
  of the chain (the pullback of the invariant differential);
* ``sea_p_points``: additionally discrete logarithms in ``E(F_{p^2})``
  for the primes dividing its exponent ``p -+ 1``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

import gmpy2

from .curves import INFINITY, Curve, group_exponent
from .dlog import bsgs, pohlig_hellman, point_order_power
from .errors import DlogFailure, InconsistentResidues, NoMatch, NotInvertible, WrongOrderStructure
from .homres import QuotientRing, _Jac, identity, restrict_chain, restricted_add, restricted_scalar_mul
from .isogenies import Chain
from .kernels import check_prime, iter_kernel_polynomials, kernel_from_point, kernel_generator

METHODS = ("schoof", "sea", "sea_p", "sea_p_points")


# --- residues modulo small primes -------------------------------------------
def _scan(alpha, T, ell: int) -> int:
    """The ``c`` with ``T = [c] alpha`` (``alpha`` nonzero of order ``l`` everywhere)."""
    if T.is_zero:
        return 0
    R = alpha.ring
    jac = _Jac(R, alpha.target)
    base = jac.from_affine(alpha)
    affine = (base[0], base[1])
    tX = R.mul(T.a, R.f)
    tY = R.mul(T.b, R.f2)
    acc = base
    for c in range(1, (ell - 1) // 2 + 1):
        if c == 2:
            acc = jac.double(base)
        elif c > 2:
            acc = jac.add_affine(acc, affine)
        X, Y, Z = acc
        ZZ = R.sqr(Z)
        if R.equal(X, R.mul(tX, ZZ)):
            tYZ = R.mul(tY, R.mul(ZZ, Z))
            if R.equal(Y, tYZ):
                return c
            if R.equal(Y, R.neg(tYZ)):
                return ell - c
            break
    raise NoMatch(f"no multiple of the restricted chain matches mod {ell}")


def _trace_on_ring(chain: Chain, R: QuotientRing, ell: int) -> int | None:
    """Residue from one ring; ``None`` when the chain vanishes on it."""
    alpha = restrict_chain(chain, R)
    if alpha.is_zero:
        return None
    alpha2 = restrict_chain(chain, R, start=alpha)
    deg_term = restricted_scalar_mul(chain.degree % ell, identity(R))
    return _scan(alpha, restricted_add(alpha2, deg_term), ell)


def trace_mod_ell(chain: Chain, ell: int, seed: int = 0) -> int:
    """``tr(alpha) mod l`` through the restriction to a kernel subgroup."""
    chain.validate()
    check_prime(chain.curve, ell)
    for i, h in enumerate(iter_kernel_polynomials(chain.curve, ell, seed)):
        r = _trace_on_ring(chain, QuotientRing(chain.curve, h, ell), ell)
        if r is not None:
            return r
        if i == 1:
            break
    return 0


def trace_schoof_mod_ell(chain: Chain, ell: int) -> int:
    """``tr(alpha) mod l`` through the restriction to all of ``E[l]``."""
    chain.validate()
    E = chain.curve
    check_prime(E, ell)
    pieces = [E.division_polynomial(ell).monic()]
    found = set()
    while pieces:
        g = pieces.pop()
        try:
            r = _trace_on_ring(chain, QuotientRing(E, g, ell), ell)
        except NotInvertible as exc:
            g1 = exc.gcd.monic()
            if not 0 < g1.degree < g.degree:
                raise
            pieces += [g1, g.exact_div(g1)]
            continue
        if r is not None:
            found.add(r)
    if len(found) > 1:
        raise InconsistentResidues(f"pieces of E[{ell}] disagree: {sorted(found)}")
    return found.pop() if found else 0


# --- residue modulo p ---------------------------------------------------------
@dataclass(frozen=True)
class ModPWitness:
    scalar: object
    residue: int


def pullback_scalar(chain: Chain):
    """``a`` with ``alpha^* omega = a * omega`` for the invariant differential."""
    F = chain.curve.field
    a = F.one
    for st in chain.steps:
        a = F.div(a, st.normalization_constant())
    return a


def mod_p_witness(chain: Chain) -> ModPWitness:
    F = chain.curve.field
    a = pullback_scalar(chain)
    s = F.add(a, F.frobenius(a))
    base = F.tower()[0]
    r = F.project(s, base)
    if r is None:
        raise InconsistentResidues("a + a^p is not in the prime field")
    return ModPWitness(a, int(r))


def trace_mod_p(chain: Chain) -> int:
    chain.validate()
    return mod_p_witness(chain).residue


# --- residues from points -----------------------------------------------------------
def _multiplicity(n: int, ell: int) -> int:
    e = 0
    while n % ell == 0:
        n //= ell
        e += 1
    return e


def odd_prime_factors(n: int, bound: int = 1 << 16) -> list[int]:
    """Odd prime factors of ``n`` found by trial division up to ``bound``;
    a prime cofactor left over is included."""
    out = []
    while n % 2 == 0:
        n //= 2
    d = 3
    while d * d <= n and d <= bound:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2
    if n > 1 and gmpy2.is_prime(n):
        out.append(n)
    return out


def trace_points_mod(chain: Chain, ell: int, seed: int = 0) -> tuple[int, int]:
    """``(r, l^e)`` with ``tr(alpha) = r mod l^e`` from a discrete logarithm in ``E(F_{p^2})``."""
    chain.validate()
    E = chain.curve
    n = group_exponent(E, seed)
    e = _multiplicity(n, ell)
    if ell == 2 or e == 0:
        raise WrongOrderStructure(f"{ell} does not divide the odd part of the group exponent")
    cofactor = n // ell ** e
    rng = random.Random(seed)
    D = chain.degree
    killed = []
    for _ in range(64):
        P = E.mul(cofactor, E.random_point(rng))
        if P.is_infinity or point_order_power(E, P, ell, e) != e:
            continue
        Q = chain.evaluate(P)
        if Q.is_infinity:
            T = E.mul(ell ** (e - 1), P)
            if any(_independent(E, T, S, ell) for S in killed):
                return 0, ell
            killed.append(T)
            continue
        target = E.add(chain.evaluate(Q), E.mul(D % ell ** e, P))
        eq = point_order_power(E, Q, ell, e)
        return pohlig_hellman(E, Q, target, ell, eq), ell ** eq
    raise DlogFailure(f"no usable point of order {ell}^{e}")


def _independent(E: Curve, T, S, ell: int) -> bool:
    try:
        bsgs(E, S, T, ell)
    except DlogFailure:
        return True
    return False


# --- oracle ---------------------------------------------------------------------
def trace_oracle_bruteforce(chain: Chain, ell: int, seed: int = 0) -> int:
    """``tr(alpha) mod l`` by evaluating the chain on explicit ``l``-torsion points."""
    chain.validate()
    E = chain.curve
    check_prime(E, ell)
    psi = E.division_polynomial(ell).monic()
    P = kernel_generator(E, psi, seed)
    r = _oracle_at(chain, P, ell)
    if r is not None:
        return r
    rest = psi.exact_div(kernel_from_point(E, P, ell))
    P2 = kernel_generator(E, rest, seed)
    r = _oracle_at(chain, P2, ell)
    return 0 if r is None else r


def _oracle_at(chain: Chain, P, ell: int) -> int | None:
    E = chain.curve
    Q = chain.evaluate(P)
    if Q.is_infinity:
        return None
    target = E.add(chain.evaluate(Q), E.mul(chain.degree % ell, P))
    acc = INFINITY
    for c in range(ell):
        if acc == target:
            return c
        acc = E.add(acc, Q)
    raise NoMatch("characteristic equation fails at an explicit torsion point")


# --- reconstruction ----------------------------------------------------------------
def crt_symmetric(residues, degree: int) -> int:
    """Combine ``(modulus, residue)`` pairs and lift into ``|t| <= 2 sqrt(degree)``."""
    r, N = 0, 1
    for m, a in residues:
        inv = pow(N, -1, m)
        r = (r + N * ((a - r) * inv % m)) % (N * m)
        N *= m
    if N * N <= 16 * degree:
        raise ValueError("modulus too small to determine the trace")
    t = r if 2 * r <= N else r - N
    if t * t > 4 * degree:
        raise InconsistentResidues(f"lift {t} violates the Hasse bound for degree {degree}")
    return t


@dataclass
class ResidueRecord:
    modulus: int
    residue: int
    source: str
    seconds: float


@dataclass
class TraceResult:
    trace: int
    degree: int
    method: str
    residues: list = field(default_factory=list)

    @property
    def modulus(self) -> int:
        N = 1
        for r in self.residues:
            N *= r.modulus
        return N


def _odd_primes(skip):
    ell = 3
    while True:
        if ell not in skip and gmpy2.is_prime(ell):
            yield ell
        ell += 2


def compute_trace(chain: Chain, method: str = "sea_p_points", seed: int = 0) -> TraceResult:
    method = method.replace("+", "_")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    chain.validate()
    E = chain.curve
    p = E.p
    D = chain.degree
    records: list[ResidueRecord] = []
    N = 1
    covered = {p}

    def add(modulus, residue, source, t0):
        nonlocal N
        records.append(ResidueRecord(modulus, residue % modulus, source, time.perf_counter() - t0))
        N *= modulus

    def enough():
        return N * N > 16 * D

    if method in ("sea_p", "sea_p_points"):
        t0 = time.perf_counter()
        add(p, trace_mod_p(chain), "mod-p", t0)
    if method == "sea_p_points" and not enough():
        n = group_exponent(E, seed)
        primes = sorted(odd_prime_factors(n), key=lambda l: -l ** _multiplicity(n, l))
        for ell in primes:
            if enough():
                break
            t0 = time.perf_counter()
            r, m = trace_points_mod(chain, ell, seed)
            add(m, r, "points", t0)
            covered.add(ell)
    for ell in _odd_primes(covered):
        if enough():
            break
        t0 = time.perf_counter()
        if method == "schoof":
            add(ell, trace_schoof_mod_ell(chain, ell), "schoof", t0)
        else:
            add(ell, trace_mod_ell(chain, ell, seed), "sea", t0)
    records.sort(key=lambda r: r.modulus)
    t = crt_symmetric([(r.modulus, r.residue) for r in records], D)
    return TraceResult(t, D, method, records)


def check_characteristic_equation(chain: Chain, t: int, points: int = 10, seed: int = 0) -> bool:
    """``alpha^2 - [t] alpha + [deg] = 0`` on random points of ``E(F_{p^2})``."""
    E = chain.curve
    rng = random.Random(seed)
    D = chain.degree
    for _ in range(points):
        P = E.random_point(rng)
        Q = chain.evaluate(P)
        lhs = E.add(E.sub(chain.evaluate(Q), E.mul(t, Q)), E.mul(D, P))
        if not lhs.is_infinity:
            return False
    return True
