"""Monomial induced representations with exact cyclotomic matrices.

A faithful linear character chi of a central cyclic subgroup Z = <z> of
order m (chi(z) = zeta_m^k) is induced to H.  With left coset
representatives t_1 < ... < t_d (smallest element of each coset gZ) the
matrix of g has a single entry chi(z') in position (i, j) where
g t_j = t_i z'.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

import numpy as np

from .cohomo import homs_to_cyclic
from .cyclotomic import (
    CycInt,
    Matrix,
    det,
    is_identity,
    matrix_to_json,
    scalar_value,
    sparse,
    sparse_mul,
)
from .groups import FiniteGroup, GroupError, Subgroup, prime_power


class NotCyclic(GroupError):
    pass


class NotFaithfulCharacter(GroupError):
    pass


class NotCentral(GroupError):
    pass


@dataclass(eq=False)
class Representation:
    group: FiniteGroup
    conductor: int
    matrices: list[Matrix] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.matrices[0])

    def __call__(self, g: int) -> Matrix:
        return self.matrices[g]

    def trace(self, g: int) -> CycInt:
        M = self.matrices[g]
        out = CycInt.integer(self.conductor, 0)
        for i in range(len(M)):
            out = out + M[i][i]
        return out

    def is_homomorphism(self) -> bool:
        n = self.group.order
        if not is_identity(self.matrices[0]):
            return False
        t = self.group.table
        sp = [sparse(M) for M in self.matrices]
        return all(
            sparse_mul(sp[g], sp[h], self.conductor) == sp[int(t[g, h])]
            for g in range(n)
            for h in range(n)
        )

    def kernel(self) -> list[int]:
        return [g for g, M in enumerate(self.matrices) if is_identity(M)]

    def lift(self, n: int) -> "Representation":
        """The same matrices over Z[zeta_n] for a multiple n of the conductor."""
        mats = [[[a.lift(n) for a in row] for row in M] for M in self.matrices]
        return Representation(self.group, n, mats)

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "dim": self.dim,
            "matrices": {str(g): matrix_to_json(M) for g, M in enumerate(self.matrices)},
        }


def transversal(H: FiniteGroup, Z: Subgroup) -> list[int]:
    """Smallest element of each left coset gZ, in increasing order."""
    seen = np.zeros(H.order, dtype=bool)
    reps = []
    zs = np.array(Z.members)
    for g in range(H.order):
        if not seen[g]:
            reps.append(g)
            seen[H.table[g, zs]] = True
    return reps


def induce_character(H: FiniteGroup, Z: Subgroup, k: int = 1) -> Representation:
    if Z.parent is not H:
        raise GroupError("subgroup of a different group")
    z = Z.cyclic_generator()
    if z is None:
        raise NotCyclic("Z is not cyclic")
    m = Z.order
    if gcd(k, m) != 1:
        raise NotFaithfulCharacter(f"k = {k} is not a unit mod {m}")
    if not Z.is_central():
        raise NotCentral("Z is not central")
    log = {}
    cur = 0
    for a in range(m):
        log[cur] = a
        cur = H.mul(cur, z)
    reps = transversal(H, Z)
    d = len(reps)
    pos = {}
    for i, t in enumerate(reps):
        for w, a in log.items():
            pos[H.mul(t, w)] = (i, a)
    zero = CycInt.integer(m, 0)
    chi = [CycInt.zeta(m, k * a) for a in range(m)]
    mats = []
    for g in range(H.order):
        M = [[zero] * d for _ in range(d)]
        for j, t in enumerate(reps):
            i, a = pos[H.mul(g, t)]
            M[i][j] = chi[a]
        mats.append(M)
    return Representation(H, m, mats)


def regular_representation(G: FiniteGroup) -> Representation:
    """Left regular representation by permutation matrices over Z."""
    n = G.order
    zero, one = CycInt.integer(1, 0), CycInt.integer(1, 1)
    mats = []
    for g in range(n):
        M = [[zero] * n for _ in range(n)]
        for h in range(n):
            M[G.mul(g, h)][h] = one
        mats.append(M)
    return Representation(G, 1, mats)


@dataclass
class SLReport:
    homomorphism: bool
    faithful: bool
    center_scalar: bool
    determinant_one: bool
    dim_power_of_p: bool
    dim: int
    determinants: list[list[int]] = field(repr=False)

    @property
    def passed(self) -> bool:
        return all(self.checks().values())

    def checks(self) -> dict[str, bool]:
        return {
            "homomorphism": self.homomorphism,
            "faithful": self.faithful,
            "center_scalar": self.center_scalar,
            "determinant_one": self.determinant_one,
            "dim_power_of_p": self.dim_power_of_p,
        }

    def to_json(self) -> dict:
        return {**self.checks(), "dim": self.dim, "determinants": self.determinants}


def verify_sl_faithful(rho: Representation, Z: Subgroup, p: int) -> SLReport:
    dets = [det(M) for M in rho.matrices]
    d = rho.dim
    pp = prime_power(d)
    return SLReport(
        homomorphism=rho.is_homomorphism(),
        faithful=rho.kernel() == [0],
        center_scalar=all(scalar_value(rho(z)) is not None for z in Z.members),
        determinant_one=all(x.is_one() for x in dets),
        dim_power_of_p=d == 1 or (pp is not None and pp[0] == p),
        dim=d,
        determinants=[x.to_json() for x in dets],
    )


@dataclass
class TwistResult:
    """Outcome of making a representation special by a linear twist.

    ``det_character[g]`` is the exponent e with det(rho(g)) = zeta_N^e;
    ``twist[g]`` the exponent of the twisting character psi (or None when
    no psi with psi^d = det^-1 exists), and ``representation`` is rho ⊗ psi.
    """

    conductor: int
    det_character: list[int]
    twist: list[int] | None
    representation: Representation | None = field(repr=False)

    @property
    def special(self) -> bool:
        return self.representation is not None

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "det_character": self.det_character, "twist": self.twist}


def determinant_twist(rho: Representation) -> TwistResult:
    """Tensor rho with a linear character psi so that det(rho ⊗ psi) = 1.

    Determinants of monomial matrices with root-of-unity entries are
    roots of unity of order dividing 2m.  Characters psi with values in
    mu_N, N = 2 m d exp(H), are searched for psi^d = det^-1.  If det is
    already trivial the twist is trivial.
    """
    H = rho.group
    d = rho.dim
    exp_h = int(np.lcm.reduce(H.element_orders))
    N = 2 * rho.conductor * d * exp_h
    lifted = rho.lift(N)
    dets = []
    for M in lifted.matrices:
        e = det(M).root_of_unity_exponent()
        if e is None:
            raise ArithmeticError("determinant is not a root of unity")
        dets.append(e)
    if not any(dets):
        return TwistResult(N, dets, [0] * H.order, lifted)
    target = np.array([(-e) % N for e in dets], dtype=np.int64)
    gens = homs_to_cyclic(H, N)
    for coeffs in product(*(range(N // gcd(N, int(np.gcd.reduce(g))) if g.any() else 1) for g in gens)):
        psi = np.zeros(H.order, dtype=np.int64)
        for c, g in zip(coeffs, gens):
            psi = (psi + c * g) % N
        if np.array_equal((d * psi) % N, target):
            mats = [
                [[a * CycInt.zeta(N, int(psi[g])) for a in row] for row in M]
                for g, M in enumerate(lifted.matrices)
            ]
            return TwistResult(N, dets, psi.tolist(), Representation(H, N, mats))
    return TwistResult(N, dets, None, None)
