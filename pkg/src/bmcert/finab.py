"""Finite abelian groups presented as products of cyclic groups."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import gcd, prod
from typing import Iterable, Sequence

import numpy as np

from .linalg import smith


@dataclass(frozen=True)
class FinAb:
    """The group Z/m_1 x ... x Z/m_r; elements are integer vectors."""

    moduli: tuple[int, ...]

    def __init__(self, moduli: Iterable[int] = ()):
        moduli = tuple(int(m) for m in moduli)
        if any(m < 2 for m in moduli):
            raise ValueError(f"moduli must be >= 2, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    def __repr__(self) -> str:
        if not self.moduli:
            return "0"
        return " x ".join(f"Z/{m}" for m in self.moduli)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), self.moduli, 1)

    def is_trivial(self) -> bool:
        return not self.moduli

    def zero(self) -> np.ndarray:
        return np.zeros(self.rank, dtype=np.int64)

    def reduce(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if not self.moduli:
            return x.reshape(x.shape[:-1] + (0,)) if x.ndim else np.zeros(0, dtype=np.int64)
        return x % np.array(self.moduli, dtype=np.int64)

    def elements(self) -> list[tuple[int, ...]]:
        """All elements in mixed-radix order (last coordinate fastest)."""
        return list(product(*(range(m) for m in self.moduli)))

    def index(self, x) -> int:
        i = 0
        for xi, m in zip(self.reduce(x).tolist(), self.moduli):
            i = i * m + int(xi)
        return i

    def element_order(self, x) -> int:
        x = self.reduce(x)
        return reduce(
            lambda a, b: a * b // gcd(a, b),
            (m // gcd(int(xi), m) for xi, m in zip(x.tolist(), self.moduli)),
            1,
        )

    def invariant_factors(self) -> "FinAb":
        return invariant_form(self.moduli)[0]

    def is_isomorphic(self, other: "FinAb") -> bool:
        return self.invariant_factors().moduli == other.invariant_factors().moduli

    def quotient(self, gens: Sequence[Sequence[int]]) -> tuple["FinAb", np.ndarray]:
        """Quotient by the subgroup generated by ``gens``.

        Returns the quotient in invariant-factor form and the integer matrix
        of the projection in those coordinates.
        """
        r = self.rank
        cols = [[int(v) for v in self.reduce(g).tolist()] for g in gens]
        rel = [[0] * (r + len(cols)) for _ in range(r)]
        for i, m in enumerate(self.moduli):
            rel[i][i] = m
            for j, c in enumerate(cols):
                rel[i][r + j] = c[i]
        return _cokernel(rel, r)

    def mod(self, n: int) -> "FinAb":
        """The group G/nG."""
        return FinAb(g for g in (gcd(m, n) for m in self.moduli) if g > 1).invariant_factors()

    def torsion(self, n: int) -> "FinAb":
        """The n-torsion subgroup G[n]."""
        return self.mod(n)

    def to_json(self) -> list[int]:
        return list(self.moduli)


def _cokernel(rel: list[list[int]], r: int) -> tuple[FinAb, np.ndarray]:
    if r == 0:
        return FinAb(), np.zeros((0, 0), dtype=object)
    diag, P, _, _ = smith(rel)
    keep = [i for i, d in enumerate(diag) if d != 1]
    if any(diag[i] == 0 for i in keep):
        raise ValueError("relations do not define a finite group")
    proj = np.array([P[i] for i in keep], dtype=object).reshape(len(keep), r)
    return FinAb(diag[i] for i in keep), proj


def invariant_form(orders: Sequence[int]) -> tuple[FinAb, np.ndarray, np.ndarray]:
    """Invariant-factor form of a product of cyclic groups of the given orders.

    Returns ``(G, P, Pinv)``: ``x -> P @ x`` maps the input coordinates to
    invariant-factor coordinates; column ``j`` of ``Pinv`` expresses the j-th
    invariant generator in input coordinates.
    """
    r = len(orders)
    if r == 0:
        return FinAb(), np.zeros((0, 0), dtype=object), np.zeros((0, 0), dtype=object)
    rel = [[int(orders[i]) if i == j else 0 for j in range(r)] for i in range(r)]
    diag, P, Pinv, _ = smith(rel)
    keep = [i for i, d in enumerate(diag) if d != 1]
    G = FinAb(diag[i] for i in keep)
    Pm = np.array([P[i] for i in keep], dtype=object).reshape(len(keep), r)
    Pinvm = np.array([[row[i] for i in keep] for row in Pinv], dtype=object).reshape(r, len(keep))
    return G, Pm, Pinvm


@dataclass(frozen=True)
class FinAbHom:
    """Homomorphism A -> B given by an integer matrix (rows: B, cols: A)."""

    source: FinAb
    target: FinAb
    matrix: tuple[tuple[int, ...], ...]

    def __init__(self, source: FinAb, target: FinAb, matrix):
        M = np.asarray(matrix, dtype=np.int64).reshape(target.rank, source.rank)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", tuple(tuple(int(v) for v in row) for row in M))
        for j, m in enumerate(source.moduli):
            if target.reduce(m * M[:, j]).any():
                raise ValueError(f"generator {j} of order {m} is not mapped to an element of order dividing {m}")

    @property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(self.target.rank, self.source.rank)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return self.target.reduce(x @ self.array.T)

    @classmethod
    def identity(cls, A: FinAb) -> "FinAbHom":
        return cls(A, A, np.eye(A.rank, dtype=np.int64))

    @classmethod
    def zero(cls, A: FinAb, B: FinAb) -> "FinAbHom":
        return cls(A, B, np.zeros((B.rank, A.rank), dtype=np.int64))

    @classmethod
    def cyclic(cls, m: int, n: int, image: int) -> "FinAbHom":
        """Z/m -> Z/n sending 1 to ``image``."""
        return cls(FinAb([m]), FinAb([n]), [[image]])


def cyclic(m: int) -> FinAb:
    return FinAb([m]) if m > 1 else FinAb()
