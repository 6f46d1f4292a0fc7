"""Arithmetic hypotheses: imaginary quadratic class groups, S-class groups,
irregular primes and the cokernel diagram for Pic mod d versus Pic mod m.

Ideal classes of the imaginary quadratic order of discriminant D < 0 are
represented by reduced primitive positive definite forms (a, b, c) with
b^2 - 4ac = D; the group law is composition followed by reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, isqrt

import numpy as np

from .finab import FinAb
from .groups import FiniteGroup, abelian_structure


class NotFundamental(ValueError):
    pass


class NotImaginary(ValueError):
    pass


class InertPrime(ValueError):
    pass


class BadDegree(ValueError):
    pass


# ---- binary quadratic forms ------------------------------------------------


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.discriminant >= 0:
            raise ValueError(f"{self} is not positive definite")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 if (abs(b) == a or a == c) else True

    def reduce(self) -> "QuadForm":
        a, b, c = self.a, self.b, self.c
        while True:
            if not -a < b <= a:
                # translate b into (-a, a]
                k = (a - b) // (2 * a)
                c = a * k * k + b * k + c
                b = b + 2 * a * k
            if a > c:
                a, b, c = c, -b, a
                continue
            if a == c and b < 0:
                b = -b
            return QuadForm(a, b, c)

    def inverse(self) -> "QuadForm":
        return QuadForm(self.a, -self.b, self.c).reduce()

    def evaluate(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def compose(self, other: "QuadForm") -> "QuadForm":
        return compose(self, other)

    def to_json(self) -> list[int]:
        return [self.a, self.b, self.c]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def compose(f1: QuadForm, f2: QuadForm) -> QuadForm:
    """Composition of primitive forms of the same discriminant, reduced.

    Classical united-form construction: with e = gcd(a1, a2, (b1+b2)/2) the
    composite has leading coefficient a1 a2 / e^2 and a middle coefficient
    B solving B = b1 mod 2a1/e, B = b2 mod 2a2/e, B^2 = D mod 4 a1 a2/e^2,
    written explicitly through a Bezout relation e = u a1 + v a2 + w beta.
    """
    D = f1.discriminant
    if f2.discriminant != D:
        raise ValueError("forms of different discriminants")
    if not (f1.is_primitive() and f2.is_primitive()):
        raise ValueError("composition is defined here for primitive forms only")
    a1, b1 = f1.a, f1.b
    a2, b2 = f2.a, f2.b
    beta = (b1 + b2) // 2
    g, x, y = _xgcd(a1, a2)
    e, t, w = _xgcd(g, beta)
    u, v = x * t, y * t  # e = u a1 + v a2 + w beta
    a3 = a1 * a2 // (e * e)
    num = u * a1 * b2 + v * a2 * b1 + w * ((b1 * b2 + D) // 2)
    if num % e:
        raise ArithmeticError("composition failed")
    b3 = (num // e) % (2 * a3)
    rest = b3 * b3 - D
    if rest % (4 * a3):
        raise ArithmeticError("composition failed")
    return QuadForm(a3, b3, rest // (4 * a3)).reduce()


def is_fundamental(D: int) -> bool:
    if D % 4 == 1:
        return _squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def _squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def reduced_forms(D: int) -> list[QuadForm]:
    """All reduced primitive forms of discriminant D < 0, sorted."""
    out = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            f = QuadForm(a, b, c)
            if c >= a and f.is_reduced() and f.is_primitive():
                out.append(f)
    return sorted(out)


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D / n) for n > 0."""
    if n <= 0:
        raise ValueError("n must be positive")
    out = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            out = -out
    # Jacobi symbol (D / n) for odd n
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                out = -out
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            out = -out
        a %= n
    return out if n == 1 else 0


def class_number_analytic(D: int) -> int:
    """Dirichlet's formula h = -(w / 2|D|) sum_{a=1}^{|D|-1} (D/a) a."""
    w = {-3: 6, -4: 4}.get(D, 2)
    s = sum(kronecker(D, a) * a for a in range(1, -D))
    h = Fraction(-w * s, 2 * (-D))
    if h.denominator != 1:
        raise ArithmeticError("non-integral class number")
    return int(h)


@dataclass(eq=False)
class ClassGroup:
    discriminant: int
    forms: list[QuadForm]
    table: np.ndarray = field(repr=False)
    structure: FinAb
    coords: np.ndarray = field(repr=False)

    @property
    def h(self) -> int:
        return len(self.forms)

    def index(self, f: QuadForm) -> int:
        return self.forms.index(f.reduce())

    def compose(self, f: QuadForm, g: QuadForm) -> QuadForm:
        return self.forms[int(self.table[self.index(f), self.index(g)])]

    def element_order(self, f: QuadForm) -> int:
        return int(self.group.element_orders[self.index(f)])

    @property
    def group(self) -> FiniteGroup:
        return FiniteGroup(self.table, check=False)

    def to_json(self) -> dict:
        return {
            "discriminant": self.discriminant,
            "h": self.h,
            "structure": self.structure.to_json(),
            "forms": [f.to_json() for f in self.forms],
        }


def class_group(D: int) -> ClassGroup:
    if D >= 0:
        raise NotImaginary(f"D = {D} is not negative")
    if not is_fundamental(D):
        raise NotFundamental(f"D = {D} is not a fundamental discriminant")
    forms = reduced_forms(D)
    principal = QuadForm(1, D % 2, (D % 2 - D) // 4)
    # identity first
    forms.remove(principal)
    forms.insert(0, principal)
    pos = {f: i for i, f in enumerate(forms)}
    table = np.array([[pos[compose(f, g)] for g in forms] for f in forms], dtype=np.int64)
    G = FiniteGroup(table, name=f"Cl({D})", check=len(forms) <= 256)
    structure, coords = abelian_structure(G)
    return ClassGroup(D, forms, table, structure, coords)


def prime_form(D: int, q: int) -> QuadForm | None:
    """A form (q, b, c) of discriminant D, i.e. a prime ideal above q; None if inert."""
    if kronecker(D, q) < 0:
        return None
    for b in range(q + 1):
        if (b * b - D) % (4 * q) == 0:
            return QuadForm(q, b, (b * b - D) // (4 * q))
    raise ArithmeticError(f"no form with leading coefficient {q}")


def prime_class(D: int, q: int) -> QuadForm | None:
    """Reduced representative of the class of a prime above q (None if inert)."""
    f = prime_form(D, q)
    return None if f is None else f.reduce()


@dataclass(eq=False)
class SClassGroup:
    base: ClassGroup
    primes: list[int]
    removed_classes: list[QuadForm]
    structure: FinAb
    removed_subgroup_order: int

    def mod(self, p: int) -> FinAb:
        return self.structure.mod(p)

    def mod_p_nonzero(self, p: int) -> bool:
        return not self.mod(p).is_trivial()

    def to_json(self) -> dict:
        return {
            "discriminant": self.base.discriminant,
            "primes": self.primes,
            "removed_classes": [f.to_json() for f in self.removed_classes],
            "structure": self.structure.to_json(),
        }


def s_class_group(C: ClassGroup, S_primes) -> SClassGroup:
    removed = []
    for q in S_primes:
        f = prime_class(C.discriminant, q)
        if f is None:
            raise InertPrime(f"{q} is inert in the field of discriminant {C.discriminant}")
        removed.append(f)
    gens = [C.coords[C.index(f)] for f in removed]
    Q, _ = C.structure.quotient(gens)
    sub = C.group.closure(C.index(f) for f in removed)
    return SClassGroup(C, list(S_primes), removed, Q, len(sub))


# ---- Bernoulli numbers and irregular primes -------------------------------


def bernoulli_mod_p(p: int) -> dict[int, int]:
    """B_k mod p for even 2 <= k <= p - 3.

    Uses the congruence sum_{a=1}^{p-1} a^k = p B_k (mod p^2), valid for
    these k; the power sums are evaluated for all k at once modulo p^2.
    """
    q = p * p
    a = np.arange(1, p, dtype=np.int64)
    a2 = a * a % q
    cur = a2.copy()
    out = {}
    for k in range(2, p - 2, 2):
        s = int(cur.sum() % q)
        if s % p:
            raise ArithmeticError("power sum is not divisible by p")
        out[k] = s // p
        cur = cur * a2 % q
    return out


def is_irregular(p: int) -> tuple[bool, list[int]]:
    if p < 3 or p % 2 == 0 or any(p % d == 0 for d in range(3, isqrt(p) + 1, 2)):
        raise ValueError(f"{p} is not an odd prime")
    if p > 10**4:
        raise ValueError("p is limited to 10^4")
    idx = [k for k, b in bernoulli_mod_p(p).items() if b == 0]
    return bool(idx), idx


def irregularity_json(p: int) -> dict:
    irr, idx = is_irregular(p)
    return {"p": p, "irregular": irr, "indices": idx}


def bernoulli_exact(n: int) -> list[Fraction]:
    """B_0, ..., B_n as exact rationals (B_1 = -1/2)."""
    B = [Fraction(0)] * (n + 1)
    B[0] = Fraction(1)
    for m in range(1, n + 1):
        B[m] = -sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1)
    return B


def irregular_indices_exact(p: int) -> list[int]:
    """Even k <= p - 3 with p dividing the numerator of B_k (exact rationals)."""
    B = bernoulli_exact(max(p - 3, 0))
    return [k for k in range(2, p - 2, 2) if B[k].numerator % p == 0]


# ---- cokernel diagram ------------------------------------------------------


@dataclass
class CokerReport:
    pic: FinAb
    p: int
    d: int
    pic_mod_d: FinAb
    pic_mod_m: FinAb

    @property
    def m(self) -> int:
        return self.d // self.p

    @property
    def i_star_surjective(self) -> bool:
        return self.pic_mod_m.is_trivial()

    def to_json(self) -> dict:
        return {
            "pic": self.pic.to_json(),
            "p": self.p,
            "d": self.d,
            "m": self.m,
            "pic_mod_d": self.pic_mod_d.to_json(),
            "pic_mod_m": self.pic_mod_m.to_json(),
            "i_star_surjective": self.i_star_surjective,
        }


def coker_diagram(Pic: FinAb, p: int, d: int) -> CokerReport:
    """Pic/d and Pic/m for d = p m; i* fails to be surjective iff Pic/m != 0."""
    if d % p or d // p <= 1:
        raise BadDegree(f"need d = p m with m > 1 (p = {p}, d = {d})")
    return CokerReport(Pic, p, d, Pic.mod(d), Pic.mod(d // p))
