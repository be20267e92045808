"""The quotient ring GF(q)[x] / (h) with dense array elements."""

from __future__ import annotations

import numpy as np

from ..errors import NotInvertible
from .fast import CONVOLVE_MAX, kron_for
from .poly import Poly


class ResidueRing:
    """Elements are ``(k, n)`` arrays of reduced residues, ``n = deg h``.

    Multiplication reduces with a precomputed reciprocal of the reversed
    modulus, so a product costs three Kronecker multiplications.
    """

    def __init__(self, h: Poly):
        if h.degree < 1:
            raise ValueError("modulus must have positive degree")
        self.field = h.field
        self.modulus = h.monic()
        self.kr = kron_for(self.field)
        self.n = n = h.degree
        self.p = self.field.p
        H = self.kr.from_coeffs(list(self.modulus.coeffs))
        self.H = H
        self._low = H[:, :n]
        if n > 1:
            rev = H[:, ::-1]
            hinv = self.kr.series_inverse(rev, n - 1)
            self._small = n <= CONVOLVE_MAX and n <= self.kr._conv_len
            self._hinv = hinv
            self._wb = self.kr.slot_bytes(n + 1)
            self._hinv_packed = self.kr.pack_all(hinv, self._wb)
            self._h_packed = self.kr.pack_all(H, self._wb)

    def __eq__(self, other):
        return isinstance(other, ResidueRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    # --- construction -------------------------------------------------------
    def zero(self) -> np.ndarray:
        return self.kr.zeros(self.n)

    def one(self) -> np.ndarray:
        return self.constant(self.field.one)

    def constant(self, c) -> np.ndarray:
        out = self.zero()
        if self.kr.k == 1:
            out[0, 0] = c
        else:
            out[:, 0] = c
        return out

    def x(self) -> np.ndarray:
        return self.from_poly(Poly.x(self.field))

    def from_poly(self, f: Poly) -> np.ndarray:
        if f.field != self.field:
            f = f.change_field(self.field)
        return self.reduce(self.kr.from_coeffs(list(f.coeffs)))

    def to_poly(self, A: np.ndarray) -> Poly:
        return Poly(self.field, self.kr.to_coeffs(A))

    # --- reduction ----------------------------------------------------------
    def reduce(self, P: np.ndarray) -> np.ndarray:
        n = self.n
        L = P.shape[1]
        if L <= n:
            out = self.zero()
            out[:, :L] = P
            return out
        if n == 1:
            # evaluate at the root of the linear modulus
            root = self.field.neg(self.kr.column(self.H, 0))
            return self.constant(self.to_poly(P)(root))
        window = 2 * n - 1
        P = P.copy()
        while L > window:
            lo = L - window
            P = np.concatenate([P[:, :lo], self._barrett(P[:, lo:L])], axis=1)
            L = P.shape[1]
        if L < window:
            P = np.concatenate([P, self.kr.zeros(window - L)], axis=1)
        return self._barrett(P)

    def _barrett(self, P: np.ndarray) -> np.ndarray:
        """Reduce a length ``2n - 1`` array."""
        n, kr, wb = self.n, self.kr, self._wb
        top = P[:, n:][:, ::-1]
        if self._small:
            q = kr._convolve(top, self._hinv, n - 1)[:, ::-1]
            return (P[:, :n] - kr._convolve(q, self.H, n)) % self.p
        qrev = kr.mul_packed(kr.pack_all(top, wb), self._hinv_packed, n - 1, wb)
        q = qrev[:, ::-1]
        qh = kr.mul_packed(kr.pack_all(q, wb), self._h_packed, n, wb)
        return (P[:, :n] - qh) % self.p

    # --- arithmetic -----------------------------------------------------------
    def add(self, A, B):
        return (A + B) % self.p

    def sub(self, A, B):
        return (A - B) % self.p

    def neg(self, A):
        return (-A) % self.p

    def scale(self, c, A):
        return self.kr.scale(c, A)

    def mul(self, A, B):
        if self.n == 1:
            return self.constant(self.kr.scalar_mul(self.kr.column(A, 0), self.kr.column(B, 0)))
        wb = self._wb
        kr = self.kr
        if self._small:
            return self._barrett(kr._convolve(A, B, 2 * self.n - 1))
        P = kr.mul_packed(kr.pack_all(A, wb), kr.pack_all(B, wb), 2 * self.n - 1, wb)
        return self._barrett(P)

    def sqr(self, A):
        return self.mul(A, A)

    def pow(self, A, e: int):
        if e < 0:
            A, e = self.inv(A), -e
        result = self.one()
        for bit in bin(e)[2:]:
            result = self.sqr(result)
            if bit == "1":
                result = self.mul(result, A)
        return result

    def is_zero(self, A) -> bool:
        return not A.any()

    def equal(self, A, B) -> bool:
        return np.array_equal(A, B)

    def gcd_with_modulus(self, A) -> Poly:
        g, _ = self.kr.xgcd(A, self.H, want_cofactor=False)
        return Poly(self.field, self.kr.to_coeffs(g))

    def inv(self, A):
        """Inverse of ``A``; raises :class:`NotInvertible` carrying ``gcd(A, h)``."""
        if self.n == 1:
            c = self.kr.column(A, 0)
            if c == self.field.zero:
                raise NotInvertible(self.modulus)
            return self.constant(self.kr.scalar_inv(c))
        g, s = self.kr.xgcd(A, self.H)
        if g.shape[1] != 1:
            raise NotInvertible(Poly(self.field, self.kr.to_coeffs(g)))
        out = self.zero()
        out[:, :s.shape[1]] = s
        return out

    def evaluate(self, f: Poly, A):
        """``f(A) mod h`` by Horner's rule."""
        acc = self.zero()
        for c in reversed(f.coeffs):
            acc = self.mul(acc, A)
            acc = self.add(acc, self.constant(c))
        return acc

    def __repr__(self):
        return f"ResidueRing({self.modulus!r})"
