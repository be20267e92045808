"""Random endomorphisms as cycles in the supersingular 2-isogeny graph.

A cycle is a non-backtracking random walk out of ``E`` followed by a
bridge back to ``E``. The bridge is found by growing exact-depth trees
from both ends and matching j-invariants, which needs about
``sqrt(p)`` vertices instead of the ``p / 12`` steps a blind walk would
take to stumble back onto ``E``. The final step is composed with the
isomorphism onto ``E`` so that the chain is a genuine endomorphism.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import gmpy2

from .algebra.factor import roots
from .algebra.fields import fp2
from .curves import Curve, isomorphism_u
from .errors import GiveUp, UnsupportedPrime
from .isogenies import Chain, two_isogeny

MAX_TREE_NODES = 1 << 17


@dataclass(frozen=True)
class Edge:
    """The 2-isogeny out of ``curve`` with kernel abscissa ``root``."""

    curve: Curve
    root: object


@dataclass
class Node:
    curve: Curve
    back: object  # kernel abscissa of the edge leading back, None at a root
    parent: int = -1
    edge_root: object = None
    j: object = None

    def __post_init__(self):
        if self.j is None:
            self.j = self.curve.j_invariant()


@dataclass
class WalkState:
    """Current vertex of a walk plus the edges taken so far."""

    curve: Curve
    back: object = None
    edges: list = field(default_factory=list)

    def step(self, rng: random.Random):
        options = neighbours(self.curve, self.back)
        root, target, back = options[rng.randrange(len(options))]
        self.edges.append(Edge(self.curve, root))
        self.curve, self.back = target, back


def two_torsion_roots(E: Curve, known=None) -> list:
    """Abscissas of the rational 2-torsion; ``known`` (one root) speeds things up."""
    F = E.field
    if known is None:
        return roots(E.f)
    # x^3 + Ax + B = (x - known)(x^2 + known x + known^2 + A)
    disc = F.sub(F.neg(F.mul(F.from_int(3), F.sqr(known))), F.mul(F.from_int(4), E.A))
    s = F.sqrt(disc)
    if s is None:
        return [known]
    half = F.inv(F.from_int(2))
    r1 = F.mul(F.add(F.neg(known), s), half)
    r2 = F.mul(F.sub(F.neg(known), s), half)
    return [known] + sorted({r1, r2}, key=F.key)


def neighbours(E: Curve, back=None) -> list[tuple]:
    """``(root, codomain, back_root)`` for each 2-isogeny other than the one back."""
    F = E.field
    rs = two_torsion_roots(E, back)
    out = []
    for x0 in rs:
        if back is not None and x0 == back:
            continue
        t0 = F.add(F.mul(F.from_int(3), F.sqr(x0)), E.A)
        target = Curve(F, F.sub(E.A, F.mul(F.from_int(5), t0)), F.sub(E.B, F.mul(F.from_int(7), F.mul(x0, t0))))
        x1 = next(r for r in rs if r != x0)
        num = F.add(F.sub(F.sqr(x1), F.mul(x0, x1)), t0)
        out.append((x0, target, F.div(num, F.sub(x1, x0))))
    return out


def _grow(levels: list[list[Node]], depth: int):
    while len(levels) <= depth:
        prev = levels[-1]
        nxt = []
        for i, node in enumerate(prev):
            for root, target, back in neighbours(node.curve, node.back):
                nxt.append(Node(target, back, i, root))
        levels.append(nxt)
        if sum(len(lv) for lv in levels) > MAX_TREE_NODES:
            raise GiveUp("bridge search trees exceeded the node budget")


def _path_edges(levels: list[list[Node]], depth: int, index: int) -> list[Edge]:
    edges = []
    while depth > 0:
        node = levels[depth][index]
        parent = levels[depth - 1][node.parent]
        edges.append(Edge(parent.curve, node.edge_root))
        index = node.parent
        depth -= 1
    return edges[::-1]


def _follow_js(curve: Curve, back, targets: list) -> tuple[list[Edge], Curve] | None:
    """Walk from ``curve`` through vertices with the given j-invariants."""
    edges = []
    for j in targets:
        for root, nxt, nback in neighbours(curve, back):
            if nxt.j_invariant() == j:
                edges.append(Edge(curve, root))
                curve, back = nxt, nback
                break
        else:
            return None
    return edges, curve


def _bridge(E: Curve, end: Node, lengths: range):
    """Edges from ``end`` back to a curve isomorphic to ``E``, and the isomorphism."""
    near = [[Node(E, None)]]
    far = [[end]]
    for b in lengths:
        d1 = (b + 1) // 2
        d2 = b - d1
        _grow(near, d1)
        _grow(far, d2)
        by_j: dict = {}
        for i, node in enumerate(near[d1]):
            by_j.setdefault(node.j, []).append(i)
        for k, meet in enumerate(far[d2]):
            for i in by_j.get(meet.j, ()):
                e_path = _path_edges(near, d1, i)
                js = [ed.curve.j_invariant() for ed in reversed(e_path)]
                walked = _follow_js(meet.curve, meet.back, js)
                if walked is None:
                    continue
                back_edges, last = walked
                u = isomorphism_u(last, E)
                if u is None:
                    continue
                return _path_edges(far, d2, k) + back_edges, u
    return None


def bridge_length_guess(p: int) -> int:
    return max(1, math.ceil(math.log2(max(p / 12, 2))) + 1)


def random_cycle(E: Curve, L: int, seed: int = 0, attempts: int = 64) -> Chain:
    """A random endomorphism of ``E`` of degree ``2^L'`` with ``L <= L' <= L + 16``.

    For ``L`` below the bridge length needed at this ``p``, ``L'`` may
    exceed ``L + 16``; it never falls below ``L``.
    """
    if L < 1:
        raise ValueError("cycle length must be positive")
    rng = random.Random(seed)
    b0 = bridge_length_guess(E.p)
    walk_len = max(1, L - b0)
    for _ in range(attempts):
        state = WalkState(E)
        for _ in range(walk_len):
            state.step(rng)
        lo = max(1, L - walk_len)
        hi = max(lo, L + 16 - walk_len)
        end = Node(state.curve, state.back)
        try:
            found = _bridge(E, end, range(lo, hi + 1))
        except GiveUp:
            found = None
        if found is None:
            continue
        bridge, u = found
        steps = [two_isogeny(ed.curve, ed.root) for ed in state.edges + bridge]
        steps[-1] = steps[-1].post_compose(u)
        return Chain(E, steps).validate()
    raise GiveUp(f"no cycle of length {L}..{L + 16} found after {attempts} walks")


def random_supersingular_curve(p: int, seed: int = 0) -> Curve:
    """A supersingular curve over ``GF(p^2)`` reached by a short random walk,
    with j-invariant away from 0 and 1728."""
    F = fp2(p)
    if p % 4 == 3:
        E = Curve(F, 1, 0)
    elif p % 3 == 2:
        E = Curve(F, 0, 1)
    else:
        raise UnsupportedPrime("need p = 3 mod 4 or p = 2 mod 3 for a known supersingular start")
    rng = random.Random(seed)
    state = WalkState(E)
    for _ in range(rng.randint(5, 10)):
        state.step(rng)
    special = {F.zero, F.from_int(1728)}
    for _ in range(1000):
        if state.curve.j_invariant() not in special:
            return state.curve
        state.step(rng)
    raise GiveUp("walk never left j = 0, 1728")


def random_prime(bits: int, seed: int = 0, residue: tuple[int, int] = (3, 4)) -> int:
    """A ``bits``-bit prime ``p`` with ``p = residue[0] mod residue[1]``."""
    if bits < 3:
        raise ValueError("need at least 3 bits")
    rng = random.Random(seed)
    r, m = residue
    for _ in range(100000):
        n = rng.getrandbits(bits) | (1 << (bits - 1))
        n -= (n - r) % m
        if n.bit_length() == bits and gmpy2.is_prime(n):
            return n
    raise GiveUp(f"no {bits}-bit prime found")


def default_length(p: int) -> int:
    return 4 * math.ceil(math.log2(p))
