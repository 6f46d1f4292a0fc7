"""Exact integer linear algebra: Smith normal form over Z and over Z/p^k.

Two flavours are provided.  ``smith`` works over the integers with Python
ints and returns explicit unimodular transforms; it is meant for the small
relation matrices that come up when assembling finite abelian groups.
``LocalSmith`` works modulo a prime power and only tracks column
transforms, which is all that is needed to describe the kernel of a large,
very redundant linear system (the cocycle equations).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith(A: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form of an integer matrix.

    Returns ``(diag, P, Pinv, Q)`` with ``P @ A @ Q`` diagonal, the diagonal
    ``diag`` non-negative and each entry dividing the next (zeros last).
    ``P`` and ``Q`` are unimodular and ``Pinv`` is the inverse of ``P``.
    """
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    P = _identity(m)
    Pinv = _identity(m)
    Q = _identity(n)

    def row_add(i: int, j: int, c: int) -> None:
        # row_i += c * row_j
        if c == 0:
            return
        Mi, Mj = M[i], M[j]
        for t in range(n):
            Mi[t] += c * Mj[t]
        Pi, Pj = P[i], P[j]
        for t in range(m):
            Pi[t] += c * Pj[t]
        # Pinv picks up the inverse column operation: col_j -= c * col_i
        for row in Pinv:
            row[j] -= c * row[i]

    def row_swap(i: int, j: int) -> None:
        if i == j:
            return
        M[i], M[j] = M[j], M[i]
        P[i], P[j] = P[j], P[i]
        for row in Pinv:
            row[i], row[j] = row[j], row[i]

    def row_neg(i: int) -> None:
        M[i] = [-x for x in M[i]]
        P[i] = [-x for x in P[i]]
        for row in Pinv:
            row[i] = -row[i]

    def col_add(i: int, j: int, c: int) -> None:
        # col_i += c * col_j
        if c == 0:
            return
        for row in M:
            row[i] += c * row[j]
        for row in Q:
            row[i] += c * row[j]

    def col_swap(i: int, j: int) -> None:
        if i == j:
            return
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    diag: list[int] = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    row_add(i, t, -(M[i][t] // M[t][t]))
                    if M[i][t]:
                        done = False
                        if abs(M[i][t]) < abs(M[t][t]):
                            row_swap(i, t)
            for j in range(t + 1, n):
                if M[t][j]:
                    col_add(j, t, -(M[t][j] // M[t][t]))
                    if M[t][j]:
                        done = False
                        if abs(M[t][j]) < abs(M[t][t]):
                            col_swap(j, t)
            if not done:
                continue
            # divisibility of the remaining block by the pivot
            piv = M[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % piv),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if M[t][t] < 0:
            row_neg(t)
        diag.append(M[t][t])
    diag.extend([0] * (min(m, n) - len(diag)))
    return diag, P, Pinv, Q


def valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization (n is small throughout this package)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _dtype_for(q: int):
    return np.int64 if q < 2**31 else object


def _np_valuation(col: np.ndarray, p: int, k: int) -> np.ndarray:
    """p-adic valuation of entries mod p^k, with 0 mapped to k."""
    v = np.full(col.shape, k, dtype=np.int64)
    nz = col != 0
    x = col[nz].copy()
    vals = np.zeros(x.shape, dtype=np.int64)
    for _ in range(k):
        div = x % p == 0
        if not div.any():
            break
        vals += div
        x = np.where(div, x // p, x)
    v[nz] = vals
    return v


def _reduce_rows(M: np.ndarray, p: int, k: int) -> np.ndarray:
    """Row-reduce over Z/p^k and drop rows that became zero.

    The surviving rows generate the same row module; there are at most
    ``ncols`` of them.
    """
    q = p**k
    M = M % q
    rows, ncols = M.shape
    top = 0
    for c in range(ncols):
        if top >= rows:
            break
        col = M[top:, c]
        if not col.any():
            continue
        vals = _np_valuation(col, p, k)
        i = int(np.argmin(vals)) + top
        e = int(vals[i - top])
        if i != top:
            M[[top, i]] = M[[i, top]]
        unit = int(M[top, c]) // p**e
        M[top] = (M[top] * pow(unit, -1, q)) % q
        below = M[top + 1 :, c]
        nz = np.nonzero(below)[0]
        if nz.size:
            factors = (below[nz] // p**e).reshape(-1, 1)
            M[top + 1 + nz] = (M[top + 1 + nz] - factors * M[top]) % q
        top += 1
    return M[:top]


@dataclass
class LocalSmith:
    """Column-transform part of a Smith form of an integer matrix mod p^k.

    ``exps[i]`` is the valuation of the i-th diagonal entry (``k`` when the
    entry is zero), and ``Q``/``Qinv`` are the column transform and its
    inverse, so that ``C @ Q`` has, up to invertible row operations,
    diagonal ``p**exps``.
    """

    p: int
    k: int
    exps: list[int]
    Q: np.ndarray
    Qinv: np.ndarray

    @property
    def modulus(self) -> int:
        return self.p**self.k

    @classmethod
    def of(cls, C: np.ndarray, p: int, k: int, chunk: int | None = None) -> "LocalSmith":
        ncols = C.shape[1]
        chunk = chunk or max(4 * ncols, 256)
        return cls.from_blocks((C[s : s + chunk] for s in range(0, C.shape[0], chunk)), ncols, p, k)

    @classmethod
    def from_blocks(cls, blocks: Iterable[np.ndarray], ncols: int, p: int, k: int) -> "LocalSmith":
        """Same as :meth:`of` for a matrix supplied as a stream of row blocks."""
        q = p**k
        dt = _dtype_for(q)
        R = np.zeros((0, ncols), dtype=dt)
        for block in blocks:
            block = np.asarray(block).astype(dt) % q
            R = _reduce_rows(np.vstack([R, block]), p, k)
        return cls._square(R, p, k, ncols)

    @classmethod
    def _square(cls, R: np.ndarray, p: int, k: int, ncols: int) -> "LocalSmith":
        q = p**k
        dt = _dtype_for(q)
        M = R.copy()
        rows = M.shape[0]
        Q = np.eye(ncols, dtype=dt)
        Qinv = np.eye(ncols, dtype=dt)
        exps = [k] * ncols
        for t in range(min(rows, ncols)):
            sub = M[t:, t:]
            if not sub.any():
                break
            vals = _np_valuation(sub, p, k)
            i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
            i += t
            j += t
            e = int(vals[i - t, j - t])
            if i != t:
                M[[t, i]] = M[[i, t]]
            if j != t:
                M[:, [t, j]] = M[:, [j, t]]
                Q[:, [t, j]] = Q[:, [j, t]]
                Qinv[[t, j]] = Qinv[[j, t]]
            pe = p**e
            unit = int(M[t, t]) // pe
            M[t] = (M[t] * pow(unit, -1, q)) % q
            # clear column t below the pivot
            below = M[t + 1 :, t]
            nz = np.nonzero(below)[0]
            if nz.size:
                f = (below[nz] // pe).reshape(-1, 1)
                M[t + 1 + nz] = (M[t + 1 + nz] - f * M[t]) % q
            # clear row t right of the pivot with column operations
            right = M[t, t + 1 :]
            nz = np.nonzero(right)[0]
            if nz.size:
                f = right[nz] // pe
                cols = t + 1 + nz
                M[:, cols] = (M[:, cols] - np.outer(M[:, t], f)) % q
                Q[:, cols] = (Q[:, cols] - np.outer(Q[:, t], f)) % q
                # inverse: row_t of Qinv += f * rows_cols
                Qinv[t] = (Qinv[t] + f @ Qinv[cols]) % q
            exps[t] = e
        return cls(p, k, exps, Q % q, Qinv % q)

    def kernel(self) -> tuple[list[int], np.ndarray]:
        """Kernel of the matrix mod p^k as a sum of cyclic groups.

        Returns ``(orders, gens)``: ``gens[:, i]`` generates a cyclic summand
        of order ``orders[i]``; only summands with order > 1 are listed.
        """
        q = self.modulus
        orders, cols = [], []
        for i, e in enumerate(self.exps):
            if e == 0:
                continue
            orders.append(self.p**e)
            cols.append((self.Q[:, i] * self.p ** (self.k - e)) % q)
        gens = np.array(cols, dtype=self.Q.dtype).T if cols else np.zeros((self.Q.shape[0], 0), dtype=self.Q.dtype)
        return orders, gens

    def kernel_coords(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of a kernel vector ``x`` in the basis of :meth:`kernel`."""
        q = self.modulus
        y = (self.Qinv @ (np.asarray(x).astype(self.Qinv.dtype) % q)) % q
        out = []
        for i, e in enumerate(self.exps):
            if e == 0:
                continue
            step = self.p ** (self.k - e)
            if int(y[i]) % step:
                raise ValueError("vector is not in the kernel")
            out.append((int(y[i]) // step) % self.p**e)
        return np.array(out, dtype=object)
