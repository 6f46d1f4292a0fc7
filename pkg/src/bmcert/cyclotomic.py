"""Exact arithmetic in Z[zeta_m] and matrices over it.

Elements are coefficient vectors in the power basis 1, z, ..., z^(phi(m)-1)
of a primitive m-th root of unity z, reduced modulo the m-th cyclotomic
polynomial.  Everything is integer arithmetic; there is no floating point.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Sequence


class ConductorMismatch(ValueError):
    pass


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic polynomial (coefficients low to high)."""
    num = list(num)
    d = len(den) - 1
    if len(num) <= d:
        return [0], num
    quot = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            quot[i - d] = c
            for j in range(d + 1):
                num[i - d + j] -= c * den[j]
    return quot, num[:d]


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_poly(d)))
            if any(rem):
                raise ArithmeticError("cyclotomic division is not exact")
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def _reduce(coeffs: Sequence[int], m: int) -> tuple[int, ...]:
    phi = cyclotomic_poly(m)
    d = len(phi) - 1
    c = list(coeffs) + [0] * max(0, d - len(coeffs))
    if len(c) > d:
        _, c = _poly_divmod(c, list(phi))
    return tuple(c[:d])


@lru_cache(maxsize=1 << 16)
def _mul_coeffs(m: int, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # memoized: matrices here have few distinct entries (mostly roots of unity)
    return _reduce(_poly_mul(a, b), m)


@lru_cache(maxsize=None)
def _zeta_power(m: int, j: int) -> tuple[int, ...]:
    j %= m
    return _reduce([0] * j + [1], m)


class CycInt:
    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Sequence[int]):
        self.m = m
        self.coeffs = _reduce([int(c) for c in coeffs], m)

    @classmethod
    def _raw(cls, m: int, coeffs: tuple[int, ...]) -> "CycInt":
        obj = object.__new__(cls)
        obj.m = m
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zeta(cls, m: int, j: int = 1) -> "CycInt":
        return cls._raw(m, _zeta_power(m, j))

    @classmethod
    def integer(cls, m: int, n: int) -> "CycInt":
        d = euler_phi(m)
        return cls._raw(m, (int(n),) + (0,) * (d - 1))

    def _check(self, other: "CycInt") -> None:
        if other.m != self.m:
            raise ConductorMismatch(f"conductors {self.m} and {other.m} differ")

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt.integer(self.m, other)
        self._check(other)
        return other

    def __add__(self, other) -> "CycInt":
        other = self._coerce(other)
        return CycInt._raw(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycInt":
        return CycInt._raw(self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "CycInt":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycInt":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt._raw(self.m, tuple(a * other for a in self.coeffs))
        self._check(other)
        if self.is_zero() or other.is_zero():
            return CycInt._raw(self.m, (0,) * len(self.coeffs))
        return CycInt._raw(self.m, _mul_coeffs(self.m, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycInt.integer(self.m, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.m}^{i}")
        return " + ".join(terms) if terms else "0"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def __pow__(self, k: int) -> "CycInt":
        if k < 0:
            raise ValueError("negative powers are not ring elements in general")
        out = CycInt.integer(self.m, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, k: int) -> "CycInt":
        """Image under zeta -> zeta^k (gcd(k, m) = 1)."""
        if gcd(k, self.m) != 1:
            raise ValueError("k must be a unit mod m")
        out = [0] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, z in enumerate(_zeta_power(self.m, i * k)):
                    out[j] += c * z
        return CycInt._raw(self.m, tuple(out))

    def norm(self) -> int:
        """Field norm down to Q (an integer)."""
        out = self
        for k in range(2, self.m + 1):
            if gcd(k, self.m) == 1 and k % self.m != 1:
                out = out * self.galois(k)
        if any(out.coeffs[1:]):
            raise ArithmeticError("norm is not rational")
        return out.coeffs[0]

    def exact_div(self, other: "CycInt") -> "CycInt":
        """self / other, assuming the quotient lies in Z[zeta_m]."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if not any(other.coeffs[1:]):
            N = other.coeffs[0]
            if any(c % N for c in self.coeffs):
                raise ArithmeticError("quotient is not integral")
            return CycInt._raw(self.m, tuple(c // N for c in self.coeffs))
        j = other.root_of_unity_exponent()
        if j is not None:
            return self * CycInt.zeta(self.m, -j)
        conj = CycInt.integer(self.m, 1)
        for k in range(2, self.m + 1):
            if gcd(k, self.m) == 1 and k % self.m != 1:
                conj = conj * other.galois(k)
        N = (other * conj).coeffs[0]
        num = self * conj
        if any(c % N for c in num.coeffs):
            raise ArithmeticError("quotient is not integral")
        return CycInt._raw(self.m, tuple(c // N for c in num.coeffs))

    def root_of_unity_exponent(self) -> int | None:
        """j with self == zeta^j, or None."""
        for j in range(self.m):
            if _zeta_power(self.m, j) == self.coeffs:
                return j
        return None

    def lift(self, n: int) -> "CycInt":
        """The same element in Z[zeta_n] for a multiple n of the conductor."""
        if n % self.m:
            raise ConductorMismatch(f"{n} is not a multiple of {self.m}")
        step = n // self.m
        out = CycInt.integer(n, 0)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + CycInt.zeta(n, i * step) * c
        return out

    def to_json(self) -> list[int]:
        return list(self.coeffs)


Matrix = list[list[CycInt]]


def identity(d: int, m: int) -> Matrix:
    one, zero = CycInt.integer(m, 1), CycInt.integer(m, 0)
    return [[one if i == j else zero for j in range(d)] for i in range(d)]


SparseMatrix = list[dict[int, tuple[int, ...]]]


def sparse(A: Matrix) -> SparseMatrix:
    """Row-wise {column: coefficients} of the nonzero entries."""
    return [{j: a.coeffs for j, a in enumerate(row) if not a.is_zero()} for row in A]


def sparse_mul(A: SparseMatrix, B: SparseMatrix, m: int) -> SparseMatrix:
    out = []
    for row_a in A:
        acc: dict[int, tuple[int, ...]] = {}
        for t, a in row_a.items():
            for j, b in B[t].items():
                prod_ = _mul_coeffs(m, a, b)
                if j in acc:
                    prod_ = tuple(x + y for x, y in zip(acc[j], prod_))
                acc[j] = prod_
        out.append({j: c for j, c in acc.items() if any(c)})
    return out


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    """Matrix product, skipping zero entries (cheap for monomial matrices)."""
    m = A[0][0].m
    if B[0][0].m != m:
        raise ConductorMismatch(f"conductors {m} and {B[0][0].m} differ")
    e = len(B[0])
    zero = CycInt.integer(m, 0)
    rows = sparse_mul(sparse(A), sparse(B), m)
    return [[CycInt._raw(m, row[j]) if j in row else zero for j in range(e)] for row in rows]


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def is_identity(A: Matrix) -> bool:
    return all((a.is_one() if i == j else a.is_zero()) for i, row in enumerate(A) for j, a in enumerate(row))


def scalar_value(A: Matrix) -> CycInt | None:
    """The scalar c if A = c*I, else None."""
    c = A[0][0]
    for i, row in enumerate(A):
        for j, a in enumerate(row):
            if (i == j and a != c) or (i != j and not a.is_zero()):
                return None
    return c


def det(A: Matrix) -> CycInt:
    """Determinant by fraction-free (Bareiss) elimination with exact division."""
    d = len(A)
    m = A[0][0].m
    M = [row[:] for row in A]
    sign = 1
    prev = CycInt.integer(m, 1)
    for k in range(d - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, d) if not M[i][k].is_zero()), None)
            if swap is None:
                return CycInt.integer(m, 0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        piv = M[k][k]
        for i in range(k + 1, d):
            for j in range(k + 1, d):
                num = M[i][j] * piv - M[i][k] * M[k][j]
                M[i][j] = num if prev.is_one() else num.exact_div(prev)
            M[i][k] = CycInt.integer(m, 0)
        prev = piv
    out = M[d - 1][d - 1]
    return out if sign == 1 else -out


def det_cofactor(A: Matrix) -> CycInt:
    """Laplace expansion along the first row (exponential; small d only)."""
    d = len(A)
    if d == 1:
        return A[0][0]
    m = A[0][0].m
    total = CycInt.integer(m, 0)
    for j in range(d):
        a = A[0][j]
        if a.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in A[1:]]
        term = a * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def monomial_det(A: Matrix) -> CycInt:
    """sign(permutation) * product of entries, for a monomial matrix."""
    d = len(A)
    m = A[0][0].m
    perm = []
    prod_ = CycInt.integer(m, 1)
    for row in A:
        nz = [j for j, a in enumerate(row) if not a.is_zero()]
        if len(nz) != 1:
            raise ValueError("matrix is not monomial")
        perm.append(nz[0])
        prod_ = prod_ * row[nz[0]]
    if sorted(perm) != list(range(d)):
        raise ValueError("matrix is not monomial")
    sign = 1
    seen = [False] * d
    for i in range(d):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return prod_ if sign == 1 else -prod_


def matrix_to_json(A: Matrix) -> list[list[list[int]]]:
    return [[a.to_json() for a in row] for row in A]


def matrix_from_json(data, m: int) -> Matrix:
    return [[CycInt(m, c) for c in row] for row in data]
