"""Dense polynomial kernels over GF(p) and GF(p^2) on numpy arrays.

A polynomial is a ``(k, n)`` array: ``k = 1`` for GF(p), ``k = 2`` for
GF(p^2) = GF(p)[i]/(i^2 - nres) (row 0 real part, row 1 ``i`` part).
Columns are coefficients, low degree first. Arrays are ``int64`` when
``p < 2^31`` and ``object`` (Python ints) otherwise.

Multiplication packs rows into big integers (Kronecker substitution) and
lets GMP do the work; GF(p^2) products use three big multiplications.
"""

from __future__ import annotations

import numpy as np
import gmpy2

from .fields import Field, Fp2, PrimeField

INT64_LIMIT = 1 << 31
# below this operand length a direct int64 convolution beats packing
CONVOLVE_MAX = 160
_mpz_from_bytes = gmpy2.mpz.from_bytes


def dtype_for(p: int):
    return np.int64 if p < INT64_LIMIT else object


def supports_dense(field: Field) -> bool:
    return isinstance(field, (PrimeField, Fp2))


def kron_for(field: Field) -> "Kron":
    if isinstance(field, PrimeField):
        return Kron(field.p, None)
    if isinstance(field, Fp2):
        return Kron(field.p, field.n)
    raise TypeError(f"no dense kernel for {field!r}")


class Kron:
    """Packing parameters and arithmetic for one coefficient field."""

    def __init__(self, p: int, nres: int | None):
        self.p = p
        self.nres = nres
        self.k = 1 if nres is None else 2
        self.dtype = dtype_for(p)
        self._two64 = (1 << 64) % p
        # longest operand whose convolution sums stay below 2^63
        self._conv_len = (1 << 63) // max((p - 1) ** 2, 1) if self.dtype is np.int64 else 0

    # --- conversion ------------------------------------------------------
    def from_coeffs(self, coeffs, length=None) -> np.ndarray:
        n = len(coeffs) if length is None else length
        out = np.zeros((self.k, n), dtype=self.dtype)
        if coeffs:
            if self.k == 1:
                out[0, :len(coeffs)] = coeffs
            else:
                out[:, :len(coeffs)] = np.array(coeffs, dtype=self.dtype).T
        return out

    def to_coeffs(self, arr: np.ndarray) -> list:
        if self.k == 1:
            return [int(c) for c in arr[0].tolist()]
        return list(zip(map(int, arr[0].tolist()), map(int, arr[1].tolist())))

    def zeros(self, n: int) -> np.ndarray:
        return np.zeros((self.k, n), dtype=self.dtype)

    # --- big-integer packing ---------------------------------------------
    def slot_bytes(self, min_len: int) -> int:
        bits = 2 * self.p.bit_length() + max(min_len, 1).bit_length() + 3
        return (bits + 7) // 8

    def pack(self, row: np.ndarray, wb: int):
        if self.dtype is np.int64:
            if wb == 8:
                return _mpz_from_bytes(row.astype("<u8").tobytes(), "little")
            b8 = row.astype("<u8").view(np.uint8).reshape(-1, 8)
            if wb < 8:
                return _mpz_from_bytes(np.ascontiguousarray(b8[:, :wb]).tobytes(), "little")
            buf = np.zeros((len(row), wb), dtype=np.uint8)
            buf[:, :8] = b8
            return _mpz_from_bytes(buf.tobytes(), "little")
        return _mpz_from_bytes(b"".join(int(c).to_bytes(wb, "little") for c in row), "little")

    def unpack(self, z, count: int, wb: int) -> np.ndarray:
        p = self.p
        if z < 0:
            raise ArithmeticError("negative slot in Kronecker unpack")
        nbytes = count * wb
        if z.bit_length() > 8 * nbytes:
            z = z & ((gmpy2.mpz(1) << (8 * nbytes)) - 1)
        buf = z.to_bytes(nbytes, "little")
        if self.dtype is np.int64:
            if wb == 8:
                return (np.frombuffer(buf, dtype="<u8") % np.uint64(p)).astype(np.int64)
            raw = np.frombuffer(buf, dtype=np.uint8).reshape(count, wb)
            if wb < 8:
                padded = np.zeros((count, 8), dtype=np.uint8)
                padded[:, :wb] = raw
                return (padded.view("<u8").ravel() % np.uint64(p)).astype(np.int64)
            lo = raw[:, :8].copy().view("<u8").ravel() % np.uint64(p)
            hi_bytes = np.zeros((count, 8), dtype=np.uint8)
            hi_bytes[:, :wb - 8] = raw[:, 8:]
            hi = hi_bytes.view("<u8").ravel() % np.uint64(p)
            return ((hi * np.uint64(self._two64) + lo) % np.uint64(p)).astype(np.int64)
        out = np.empty(count, dtype=object)
        for i in range(count):
            out[i] = int.from_bytes(buf[i * wb:(i + 1) * wb], "little") % p
        return out

    def pack_all(self, A: np.ndarray, wb: int) -> tuple:
        if self.k == 1:
            return (self.pack(A[0], wb),)
        z0, z1 = self.pack(A[0], wb), self.pack(A[1], wb)
        return (z0, z1, z0 + z1)

    # --- products ----------------------------------------------------------
    def mul_packed(self, pa: tuple, pb: tuple, count: int, wb: int) -> np.ndarray:
        """Product of packed operands, first ``count`` coefficients."""
        if self.k == 1:
            return self.unpack(pa[0] * pb[0], count, wb)[None, :]
        z00 = pa[0] * pb[0]
        z11 = pa[1] * pb[1]
        zc = pa[2] * pb[2] - z00 - z11
        r00 = self.unpack(z00, count, wb)
        r11 = self.unpack(z11, count, wb)
        out = np.empty((2, count), dtype=self.dtype)
        out[0] = (r00 + self.nres * r11) % self.p
        out[1] = self.unpack(zc, count, wb)
        return out

    def mul(self, A: np.ndarray, B: np.ndarray, count: int | None = None) -> np.ndarray:
        la, lb = A.shape[1], B.shape[1]
        if la == 0 or lb == 0:
            return self.zeros(0 if count is None else count)
        full = la + lb - 1
        count = full if count is None else count
        short = min(la, lb)
        if short <= CONVOLVE_MAX and short <= self._conv_len:
            out = self._convolve(A, B, min(count, full))
        else:
            wb = self.slot_bytes(short)
            out = self.mul_packed(self.pack_all(A, wb), self.pack_all(B, wb), min(count, full), wb)
        if count > full:
            out = np.concatenate([out, self.zeros(count - full)], axis=1)
        return out

    def _convolve(self, A, B, count):
        p = self.p
        if self.k == 1:
            return (np.convolve(A[0], B[0])[:count] % p)[None, :]
        r00 = np.convolve(A[0], B[0])[:count] % p
        r11 = np.convolve(A[1], B[1])[:count] % p
        r01 = np.convolve(A[0], B[1])[:count] % p
        r10 = np.convolve(A[1], B[0])[:count] % p
        out = np.empty((2, count), dtype=np.int64)
        out[0] = (r00 + self.nres * r11) % p
        out[1] = (r01 + r10) % p
        return out

    # --- vector helpers ----------------------------------------------------
    def scale(self, c, V: np.ndarray) -> np.ndarray:
        p = self.p
        if self.k == 1:
            return (c * V) % p
        c0, c1 = c
        out = np.empty_like(V)
        out[0] = (c0 * V[0] + self.nres * ((c1 * V[1]) % p)) % p
        out[1] = (c0 * V[1] + c1 * V[0]) % p
        return out

    def scalar_inv(self, c):
        p = self.p
        if self.k == 1:
            return pow(int(c), -1, p)
        c0, c1 = int(c[0]), int(c[1])
        norm = (c0 * c0 - self.nres * c1 * c1) % p
        ni = pow(norm, -1, p)
        return (c0 * ni % p, -c1 * ni % p)

    def scalar_mul(self, a, b):
        p = self.p
        if self.k == 1:
            return a * b % p
        return ((a[0] * b[0] + self.nres * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def column(self, A: np.ndarray, j: int):
        if self.k == 1:
            return int(A[0, j])
        return (int(A[0, j]), int(A[1, j]))

    def degree(self, A: np.ndarray, hint: int | None = None) -> int:
        """Index of the last nonzero column, -1 for zero."""
        j = A.shape[1] - 1 if hint is None else hint
        while j >= 0 and not A[:, j].any():
            j -= 1
        return j

    def series_inverse(self, F: np.ndarray, prec: int) -> np.ndarray:
        """``F^-1 mod x^prec`` by Newton iteration (requires ``F[0]`` a unit)."""
        p = self.p
        G = self.zeros(1)
        c0 = self.scalar_inv(self.column(F, 0))
        if self.k == 1:
            G[0, 0] = c0
        else:
            G[:, 0] = c0
        k = 1
        while k < prec:
            k = min(2 * k, prec)
            FG = self.mul(F[:, :k], G, k)
            FG = (-FG) % p
            FG[0, 0] = (FG[0, 0] + 2) % p
            G = self.mul(G, FG, k)
        return G

    def xgcd(self, F: np.ndarray, H: np.ndarray, want_cofactor=True):
        """Euclid on ``(F, H)``; returns ``(g, s)`` with ``s*F = g mod H``, ``g`` monic.

        ``g`` and ``s`` are arrays trimmed to their degree + 1.
        """
        p = self.p
        n = H.shape[1]
        r0 = (H % p).copy()
        r1 = np.zeros_like(r0)
        r1[:, :F.shape[1]] = F % p
        d0 = self.degree(r0)
        d1 = self.degree(r1)
        s0 = self.zeros(n)
        s1 = self.zeros(n)
        if self.k == 1:
            s1[0, 0] = 1
        else:
            s1[:, 0] = (1, 0)
        e0, e1 = -1, 0  # degrees of s0, s1
        while d1 >= 0:
            inv_lc = self.scalar_inv(self.column(r1, d1))
            while d0 >= d1:
                c = self.scalar_mul(self.column(r0, d0), inv_lc)
                shift = d0 - d1
                r0[:, shift:d0 + 1] = (r0[:, shift:d0 + 1] - self.scale(c, r1[:, :d1 + 1])) % p
                if want_cofactor and e1 >= 0:
                    top = min(shift + e1 + 1, n)
                    s0[:, shift:top] = (s0[:, shift:top] - self.scale(c, s1[:, :top - shift])) % p
                    e0 = max(e0, top - 1)
                d0 = self.degree(r0, d0 - 1)
            r0, r1, d0, d1 = r1, r0, d1, d0
            s0, s1, e0, e1 = s1, s0, e1, e0
            if want_cofactor:
                e1 = self.degree(s1, e1)
        # r0 holds the gcd, s0 its cofactor
        inv_lc = self.scalar_inv(self.column(r0, d0))
        g = self.scale(inv_lc, r0[:, :d0 + 1])
        s = self.scale(inv_lc, s0[:, :max(e0, 0) + 1]) if want_cofactor else None
        return g, s
