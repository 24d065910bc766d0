"""Batched arithmetic on arrays of group elements.

A batch is a 2-D integer array with one element per row: image arrays for
permutations, row-major field-element indices for matrices.  Every kernel
offers products against a fixed element on either side, elementwise
products of two batches, inverses, and an injective packing into sortable
codes.
"""

from __future__ import annotations

import numpy as np

from .groups import GroupElement, GroupSpec, Matrix, Permutation, ProjectiveMatrix

CHUNK = 1 << 16


def _bits(m: int) -> int:
    return max(1, (m - 1).bit_length())


def _row_dtype(m: int):
    return np.uint8 if m <= 256 else np.uint16


class Kernel:
    width: int
    radix: int

    def __init__(self, width: int, radix: int):
        self.width = width
        self.radix = radix
        self.bits = _bits(radix)
        self.dtype = _row_dtype(radix)
        self.packed = self.bits * width <= 64
        self._shifts = np.arange(width, dtype=np.uint64) * np.uint64(self.bits)

    # codes -------------------------------------------------------------------

    @property
    def code_dtype(self):
        if self.packed:
            return np.dtype(np.uint64)
        return np.dtype((np.void, self.width * np.dtype(self.dtype).itemsize))

    def encode(self, rows) -> np.ndarray:
        rows = np.asarray(rows)
        if self.packed:
            return (rows.astype(np.uint64) << self._shifts).sum(axis=1, dtype=np.uint64)
        # big-endian storage keeps the byte order lexicographic in the entries
        r = np.ascontiguousarray(rows.astype(np.dtype(self.dtype).newbyteorder(">")))
        return r.view(self.code_dtype).ravel()

    def decode(self, codes) -> np.ndarray:
        codes = np.asarray(codes)
        if self.packed:
            mask = np.uint64((1 << self.bits) - 1)
            out = (codes[:, None] >> self._shifts) & mask
            return out.astype(self.dtype)
        big = np.dtype(self.dtype).newbyteorder(">")
        return np.frombuffer(codes.tobytes(), dtype=big).reshape(-1, self.width).astype(self.dtype)

    # elements <-> rows -------------------------------------------------------

    def row(self, g: GroupElement) -> np.ndarray:
        raise NotImplementedError

    def element(self, row) -> GroupElement:
        raise NotImplementedError

    def rows(self, elems) -> np.ndarray:
        return np.array([self.row(g) for g in elems], dtype=self.dtype).reshape(-1, self.width)

    # arithmetic, implemented by subclasses on int64 arrays ------------------

    def _rmul(self, a, g):
        raise NotImplementedError

    def _lmul(self, g, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _chunked(self, fn, a, *rest):
        a = np.asarray(a)
        out = np.empty((len(a), self.width), dtype=self.dtype)
        for s in range(0, len(a), CHUNK):
            parts = [x[s:s + CHUNK] for x in rest]
            out[s:s + CHUNK] = fn(a[s:s + CHUNK].astype(np.int64), *parts)
        return out

    def rmul(self, a, g: GroupElement) -> np.ndarray:
        """Rows of ``x * g`` for every row ``x`` of ``a``."""
        gr = self.row(g)
        return self._chunked(lambda x: self._rmul(x, gr), a)

    def lmul(self, g: GroupElement, a) -> np.ndarray:
        """Rows of ``g * x``."""
        gr = self.row(g)
        return self._chunked(lambda x: self._lmul(gr, x), a)

    def mul(self, a, b) -> np.ndarray:
        """Rowwise products ``a[i] * b[i]``."""
        b = np.asarray(b)
        return self._chunked(lambda x, y: self._mul(x, y.astype(np.int64)), a, b)

    def power(self, a, m: int) -> np.ndarray:
        if m < 0:
            raise ValueError("use inverse() for negative powers")
        a = np.asarray(a, dtype=self.dtype)
        out = np.repeat(self.identity_row()[None, :], len(a), axis=0)
        base = a
        while m:
            if m & 1:
                out = self.mul(out, base)
            m >>= 1
            if m:
                base = self.mul(base, base)
        return out

    def identity_row(self) -> np.ndarray:
        raise NotImplementedError

    def inverse(self, a, exponent: int) -> np.ndarray:
        """Rowwise inverses; ``exponent`` is any multiple of every element order."""
        return self.power(a, exponent - 1)


class PermKernel(Kernel):
    """Rows are image arrays; ``(x*y)[i] = y[x[i]]``."""

    def __init__(self, degree: int):
        super().__init__(degree, degree)
        self.degree = degree

    def row(self, g):
        return np.array(g.images, dtype=np.int64)

    def element(self, row):
        return Permutation(tuple(int(i) for i in row))

    def identity_row(self):
        return np.arange(self.degree, dtype=self.dtype)

    def _rmul(self, a, g):
        return g[a]

    def _lmul(self, g, a):
        return a[:, g]

    def _mul(self, a, b):
        return np.take_along_axis(b, a, axis=1)

    def inverse(self, a, exponent=None):
        a = np.asarray(a)
        return np.argsort(a, axis=1, kind="stable").astype(self.dtype)


class MatKernel(Kernel):
    """Rows are ``n*n`` field indices.  Products with a fixed matrix act
    linearly on the base-p digit expansion, so they reduce to one integer
    matrix product mod p."""

    def __init__(self, field, n: int, projective: bool = False):
        super().__init__(n * n, field.q)
        self.field = field
        self.n = n
        self.projective = projective
        self._maps: dict = {}

    def row(self, g):
        return np.array(g.entries, dtype=np.int64)

    def element(self, row):
        cls = ProjectiveMatrix if self.projective else Matrix
        return cls(self.field, self.n, tuple(int(x) for x in row))

    def identity_row(self):
        return np.eye(self.n, dtype=self.dtype).ravel()

    def _digit_map(self, g_row, side):
        key = (side, g_row.tobytes())
        hit = self._maps.get(key)
        if hit is not None:
            return hit
        F, n, k = self.field, self.n, self.field.k
        g = g_row.reshape(n, n)
        M = np.zeros((n * n * k, n * n * k), dtype=np.float64)
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    if side == "r":  # Y[i,j] += X[i,l] g[l,j]
                        src, c = i * n + l, int(g[l, j])
                    else:  # Y[i,j] += g[i,l] X[l,j]
                        src, c = l * n + j, int(g[i, l])
                    if c:
                        dst = i * n + j
                        M[src * k:(src + 1) * k, dst * k:(dst + 1) * k] += F.mul_matrix(c)
        if len(self._maps) > 4096:
            self._maps.clear()
        self._maps[key] = M
        return M

    def _apply(self, a, M):
        F = self.field
        if F.k == 1:
            y = (a.astype(np.float64) @ M).astype(np.int64) % F.p
        else:
            d = F.digits[a].reshape(len(a), -1).astype(np.float64)
            yd = (d @ M).astype(np.int64) % F.p
            y = yd.reshape(len(a), self.width, F.k) @ F.weights
        return self._canon(y)

    def _canon(self, y):
        if not self.projective:
            return y
        F = self.field
        lead_pos = np.argmax(y != 0, axis=1)
        lead = y[np.arange(len(y)), lead_pos]
        return F.vmul(y, F.vinv(lead)[:, None])

    def _rmul(self, a, g):
        return self._apply(a, self._digit_map(g, "r"))

    def _lmul(self, g, a):
        return self._apply(a, self._digit_map(g, "l"))

    def _mul(self, a, b):
        F, n = self.field, self.n
        A = a.reshape(-1, n, n)
        B = b.reshape(-1, n, n)
        if F.k == 1:
            y = np.matmul(A, B) % F.p
        else:
            prod = F.vmul(A[:, :, :, None], B[:, None, :, :])
            y = F.vsum(prod, axis=2)
        return self._canon(y.reshape(len(a), -1))


def make_kernel(spec: GroupSpec) -> Kernel:
    if spec.kind == "perm":
        return PermKernel(spec.degree)
    return MatKernel(spec.field, spec.degree, projective=(spec.kind == "projmat"))


def code_bytes(kernel: Kernel) -> int:
    return kernel.code_dtype.itemsize + kernel.width * np.dtype(kernel.dtype).itemsize

