"""Second cohomology of finite groups with trivial action on finite abelian groups.

Cocycles are stored densely on G x G.  To compute H^2(G, Z/q) for a prime
power q we use the normal form coming from a spanning tree of the Cayley
graph: every class has a unique-up-to-gauge representative that vanishes on
tree edges, so a class is described by its values on the remaining edges
(one unknown per non-tree edge instead of one per pair of elements).  The
cocycle identity then only has to be imposed on triples (g, x, s) with s a
generator.  The resulting system is solved with a Smith form over Z/q.

Sign conventions: the coboundary of a 1-cochain c is
``(dc)(g, h) = c(g) + c(h) - c(gh)``, and the extension attached to f
multiplies as ``(a, g)(b, h) = (a + b + f(g, h), gh)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .finab import FinAb, FinAbHom, invariant_form
from .groups import FiniteGroup, GroupHom, Subgroup, abelian_structure, derived_subgroup, quotient
from .linalg import LocalSmith, factorize, smith


@dataclass(eq=False)
class Cocycle2:
    """A normalized 2-cochain G x G -> A, stored as an ``(n, n, rank A)`` array."""

    group: FiniteGroup
    coeffs: FinAb
    values: np.ndarray

    def __post_init__(self):
        n = self.group.order
        v = np.asarray(self.values, dtype=np.int64)
        if v.ndim == 2 and self.coeffs.rank == 1:
            v = v[:, :, None]
        if v.shape != (n, n, self.coeffs.rank):
            raise ValueError(f"cocycle values must have shape {(n, n, self.coeffs.rank)}, got {v.shape}")
        self.values = self.coeffs.reduce(v) if self.coeffs.rank else v

    @classmethod
    def zero(cls, G: FiniteGroup, A: FinAb) -> "Cocycle2":
        return cls(G, A, np.zeros((G.order, G.order, A.rank), dtype=np.int64))

    @classmethod
    def coboundary(cls, G: FiniteGroup, A: FinAb, c) -> "Cocycle2":
        """Coboundary of the 1-cochain ``c`` (shape ``(n, rank A)``, c[0] = 0)."""
        c = np.asarray(c, dtype=np.int64).reshape(G.order, A.rank)
        c = c - c[0]
        vals = c[:, None, :] + c[None, :, :] - c[G.table.astype(np.int64)]
        return cls(G, A, vals)

    def is_normalized(self) -> bool:
        return not (self.values[0].any() or self.values[:, 0].any())

    def is_cocycle(self) -> bool:
        """f(g,h) + f(gh,k) = f(h,k) + f(g,hk) for all triples."""
        if not self.coeffs.rank:
            return True
        t = self.group.table.astype(np.int64)
        f = self.values
        mod = np.array(self.coeffs.moduli)
        for g in range(self.group.order):
            lhs = f[g][:, None, :] + f[t[g]]
            rhs = f + f[g][t]
            if ((lhs - rhs) % mod).any():
                return False
        return True

    def is_valid(self) -> bool:
        return self.is_normalized() and self.is_cocycle()

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        self._check_compatible(other)
        return Cocycle2(self.group, self.coeffs, self.values + other.values)

    def __sub__(self, other: "Cocycle2") -> "Cocycle2":
        self._check_compatible(other)
        return Cocycle2(self.group, self.coeffs, self.values - other.values)

    def __neg__(self) -> "Cocycle2":
        return Cocycle2(self.group, self.coeffs, -self.values)

    def scale(self, k: int) -> "Cocycle2":
        return Cocycle2(self.group, self.coeffs, k * self.values)

    def _check_compatible(self, other: "Cocycle2") -> None:
        if other.group is not self.group or other.coeffs != self.coeffs:
            raise ValueError("cocycles live on different groups or coefficients")

    def pullback(self, hom: GroupHom) -> "Cocycle2":
        """f(hom(g), hom(h)) on the source of ``hom``."""
        if hom.target is not self.group:
            raise ValueError("homomorphism does not land in the cocycle's group")
        im = hom.images
        return Cocycle2(hom.source, self.coeffs, self.values[np.ix_(im, im)])

    def pushforward(self, phi: FinAbHom) -> "Cocycle2":
        if phi.source != self.coeffs:
            raise ValueError("coefficient map has the wrong source")
        return Cocycle2(self.group, phi.target, self.values @ phi.array.T)

    def is_zero(self) -> bool:
        return not self.values.any()

    def to_json(self, include_group: bool = True) -> dict:
        vals = self.values[:, :, 0] if self.coeffs.rank == 1 else self.values
        out = {"coeffs": self.coeffs.to_json(), "values": vals.tolist()}
        if include_group:
            out = {"group": self.group.to_json(), **out}
        return out

    @classmethod
    def from_json(cls, data: dict, group: FiniteGroup | None = None) -> "Cocycle2":
        if group is None:
            group = FiniteGroup(data["group"]["table"], names=data["group"].get("names"))
        return cls(group, FinAb(data["coeffs"]), np.array(data["values"], dtype=np.int64))


class _CyclicH2:
    """H^2(G, Z/p^k) in Cayley-tree normal form."""

    def __init__(self, G: FiniteGroup, p: int, k: int):
        self.G = G
        self.p, self.k, self.q = p, k, p**k
        tree = G.cayley_tree
        self.tree = tree
        n, r = G.order, len(tree.gens)
        t = G.table.astype(np.int64)
        gens = np.array(tree.gens, dtype=np.int64)

        is_tree = np.zeros((n, r), dtype=bool)
        for g in tree.order[1:]:
            is_tree[tree.parent[g], tree.pgen[g]] = True
        edge = np.full((n, r), -1, dtype=np.int64)
        ex, ej = np.nonzero(~is_tree)
        U = len(ex)
        edge[ex, ej] = np.arange(U)
        self.edge, self.ex, self.ej, self.U = edge, ex, ej, U

        if U == 0:
            self.orders: list[int] = []
            self.P = np.zeros((0, 0), dtype=object)
            self.reps: list[np.ndarray] = []
            return

        # paths[g, x] = coefficient vector of f(g, x) in terms of edge values
        pdt = np.int16 if n < 2**15 else np.int32
        paths = np.zeros((n, n, U), dtype=pdt)
        rows = np.arange(n)
        for x in tree.order[1:]:
            par, j = int(tree.parent[x]), int(tree.pgen[x])
            paths[:, x] = paths[:, par]
            e = edge[t[:, par], j]
            hit = e >= 0
            paths[rows[hit], x, e[hit]] += 1

        exs = t[ex, gens[ej]]

        def blocks() -> Iterator[np.ndarray]:
            step = max(1, 4_000_000 // max(1, U * U))
            for start in range(1, n, step):
                hs = np.arange(start, min(n, start + step))
                b = len(hs)
                M = paths[hs][:, ex, :].astype(np.int64) - paths[hs][:, exs, :]
                M = M.reshape(b * U, U)
                rr = np.arange(b * U)
                hx = t[hs[:, None], ex[None, :]]
                e = edge[hx, ej[None, :]].ravel()
                hit = e >= 0
                M[rr[hit], e[hit]] += 1
                M[rr, np.tile(np.arange(U), b)] -= 1
                yield M

        ls = LocalSmith.from_blocks(blocks(), U, p, k)
        z_orders, z_gens = ls.kernel()
        self._ls = ls

        # gauge: changing the lift of generator j by 1
        wc = tree.letter_counts
        gauge = [
            (ej == j).astype(np.int64) + wc[ex, j] - wc[exs, j] for j in range(r)
        ]
        zr = len(z_orders)
        T = [ls.kernel_coords(b) for b in gauge]
        rel = [[0] * (zr + r) for _ in range(zr)]
        for i in range(zr):
            rel[i][i] = z_orders[i]
            for j in range(r):
                rel[i][zr + j] = int(T[j][i])
        if zr:
            diag, P, Pinv, _ = smith(rel)
        else:
            diag, P, Pinv = [], [], []
        keep = [i for i, d in enumerate(diag) if d != 1]
        self.orders = [int(diag[i]) for i in keep]
        self.P = np.array([P[i] for i in keep], dtype=object).reshape(len(keep), zr)
        q = self.q
        self.reps = []
        for i in keep:
            tvec = np.array([Pinv[a][i] for a in range(zr)], dtype=object)
            x = np.array(((z_gens.astype(object) @ tvec) % q).tolist(), dtype=np.int64)
            dense = np.tensordot(paths, x, axes=([2], [0])) % q
            self.reps.append(dense.astype(np.int64))

    def class_of(self, f: np.ndarray) -> np.ndarray:
        """Class coordinates of a dense normalized cocycle with values mod q."""
        if not self.orders:
            return np.zeros(0, dtype=np.int64)
        q = self.q
        tree = self.tree
        t = self.G.table.astype(np.int64)
        f = np.asarray(f, dtype=np.int64) % q
        gens = np.array(tree.gens, dtype=np.int64)
        psi = np.zeros(self.G.order, dtype=np.int64)
        for g in tree.order[1:]:
            par = tree.parent[g]
            psi[g] = (psi[par] + f[par, gens[tree.pgen[g]]]) % q
        s = gens[self.ej]
        F = (psi[self.ex] + f[self.ex, s] - psi[t[self.ex, s]]) % q
        tcoords = self._ls.kernel_coords(F)
        c = (self.P @ tcoords) if len(tcoords) else np.zeros(len(self.orders), dtype=object)
        return np.array([int(v) % d for v, d in zip(c.tolist(), self.orders)], dtype=np.int64)


def _local_solver(G: FiniteGroup, p: int, k: int) -> _CyclicH2:
    cache = G.__dict__.setdefault("_h2_cache", {})
    key = (p, k)
    if key not in cache:
        cache[key] = _CyclicH2(G, p, k)
    return cache[key]


class H2Group:
    """H^2(G, A) for trivial action, with representatives and a class map.

    ``structure`` is in invariant-factor form; ``basis[i]`` is a normalized
    cocycle whose class is the i-th standard generator; ``class_of`` sends
    any normalized cocycle to its coordinates in ``structure``.
    """

    def __init__(self, G: FiniteGroup, A: FinAb):
        self.group = G
        self.coeffs = A
        blocks = []  # (component index, q, solver, idempotent)
        for i, m in enumerate(A.moduli):
            for p, k in sorted(factorize(m).items()):
                q = p**k
                cof = m // q
                idem = (cof * pow(cof, -1, q)) % m if cof > 1 else 1
                blocks.append((i, q, _local_solver(G, p, k), idem))
        self._blocks = blocks
        raw_orders = [d for (_, _, s, _) in blocks for d in s.orders]
        self.structure, self._P, Pinv = invariant_form(raw_orders)
        raw_reps = []
        n = G.order
        for i, q, s, idem in blocks:
            for rep in s.reps:
                v = np.zeros((n, n, A.rank), dtype=np.int64)
                v[:, :, i] = (rep * idem) % A.moduli[i]
                raw_reps.append(v)
        self.basis: list[Cocycle2] = []
        for col in range(self.structure.rank):
            v = np.zeros((n, n, A.rank), dtype=object)
            for j, rep in enumerate(raw_reps):
                c = int(Pinv[j, col])
                if c:
                    v = v + c * rep.astype(object)
            v = v % np.array(A.moduli, dtype=object)
            self.basis.append(Cocycle2(G, A, v.astype(np.int64)))

    @property
    def order(self) -> int:
        return self.structure.order

    def __repr__(self) -> str:
        return f"H2({self.group!r}, {self.coeffs!r}) = {self.structure!r}"

    def class_of(self, f: Cocycle2) -> np.ndarray:
        if f.group is not self.group:
            raise ValueError("cocycle lives on a different group")
        if f.coeffs != self.coeffs:
            raise ValueError("cocycle has different coefficients")
        raw = []
        for i, q, s, _ in self._blocks:
            raw.extend(s.class_of(f.values[:, :, i] % q).tolist())
        if not self.structure.rank:
            return np.zeros(0, dtype=np.int64)
        c = self._P @ np.array(raw, dtype=object)
        return self.structure.reduce(np.array([int(v) for v in c], dtype=np.int64))

    def cocycle(self, coords) -> Cocycle2:
        """A representative cocycle of the class with the given coordinates."""
        coords = self.structure.reduce(coords) if self.structure.rank else np.zeros(0, dtype=np.int64)
        out = Cocycle2.zero(self.group, self.coeffs)
        for c, b in zip(coords.tolist(), self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def classes(self) -> list[tuple[int, ...]]:
        """All class coordinate vectors, zero first."""
        return self.structure.elements()

    def is_zero_class(self, f: Cocycle2) -> bool:
        return not self.class_of(f).any()

    def to_json(self) -> dict:
        return {
            "invariant_factors": self.structure.to_json(),
            "basis": [b.to_json(include_group=False) for b in self.basis],
        }


def h2(G: FiniteGroup, A: FinAb) -> H2Group:
    """H^2(G, A) with G acting trivially on A."""
    cache = G.__dict__.setdefault("_h2_groups", {})
    if A not in cache:
        cache[A] = H2Group(G, A)
    return cache[A]


@dataclass
class H2Map:
    """Homomorphism between H^2 groups; ``matrix[:, i]`` is the image of basis class i."""

    source: H2Group
    target: H2Group
    matrix: np.ndarray
    pull: object = field(default=None, repr=False)

    def __call__(self, coords) -> np.ndarray:
        if not self.target.structure.rank:
            return np.zeros(0, dtype=np.int64)
        c = np.asarray(coords, dtype=np.int64).reshape(-1)
        return self.target.structure.reduce(self.matrix @ c)

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def image_of_cocycle(self, f: Cocycle2) -> Cocycle2:
        """The transported cocycle (no passage through classes)."""
        return self.pull(f)

    def to_json(self) -> dict:
        return {
            "source": self.source.structure.to_json(),
            "target": self.target.structure.to_json(),
            "matrix": self.matrix.tolist(),
        }


def _induced(source: H2Group, target: H2Group, transport) -> H2Map:
    cols = [target.class_of(transport(b)) for b in source.basis]
    M = np.array(cols, dtype=np.int64).T.reshape(target.structure.rank, source.structure.rank)
    return H2Map(source, target, M, transport)


def restriction(h2G: H2Group, K: Subgroup) -> H2Map:
    """H^2(G, A) -> H^2(K, A) for a subgroup K of G."""
    if K.parent is not h2G.group:
        raise ValueError("subgroup of a different group")
    Kg, incl = K.as_group()
    return _induced(h2G, h2(Kg, h2G.coeffs), lambda f: f.pullback(incl))


def inflation(h2Q: H2Group, proj: GroupHom, h2G: H2Group | None = None) -> H2Map:
    """H^2(G/N, A) -> H^2(G, A) along a surjection ``proj: G -> G/N``."""
    if proj.target is not h2Q.group:
        raise ValueError("projection does not land in the quotient of h2Q")
    target = h2G if h2G is not None else h2(proj.source, h2Q.coeffs)
    return _induced(h2Q, target, lambda f: f.pullback(proj))


def pushforward_coefficients(h2G: H2Group, phi: FinAbHom) -> H2Map:
    """H^2(G, A) -> H^2(G, B) induced by a coefficient map A -> B."""
    return _induced(h2G, h2(h2G.group, phi.target), lambda f: f.pushforward(phi))


def cyclic_trivialization(f: Cocycle2, z: int) -> np.ndarray | None:
    """A 1-cochain c with f = delta c on the cyclic group generated by z.

    Requires f.group = <z> and cyclic coefficients Z/M.  Fixing c(z) = t,
    the relation c(xz) = c(x) + c(z) - f(x, z) determines c on all powers
    of z; closing the cycle at z^m = 1 gives m t = sum_k f(z^k, z) mod M.
    Returns None when that congruence has no solution or the resulting
    cochain fails to trivialize f (then the class of f is non-zero).
    """
    G, A = f.group, f.coeffs
    if A.rank != 1 or G.element_orders[z] != G.order:
        raise ValueError("need a cyclic group with generator z and cyclic coefficients")
    M, m = A.moduli[0], G.order
    vals = f.values[:, :, 0]
    powers = [0]
    for _ in range(m - 1):
        powers.append(int(G.table[powers[-1], z]))
    s = sum(int(vals[x, z]) for x in powers) % M
    g = gcd(m, M)
    if s % g:
        return None
    t = (s // g) * pow(m // g, -1, M // g) % (M // g) if M // g > 1 else 0
    c = np.zeros(m, dtype=np.int64)
    for k in range(1, m):
        c[powers[k]] = (c[powers[k - 1]] + t - vals[powers[k - 1], z]) % M
    if not np.array_equal(Cocycle2.coboundary(G, A, c[:, None]).values, f.values):
        return None
    return c


def bockstein_cocycle(G: FiniteGroup, chi: Sequence[int], e: int) -> Cocycle2:
    """Connecting map of 0 -> Z/e -> Z/e^2 -> Z/e -> 0 applied to a hom G -> Z/e."""
    c = np.asarray(chi, dtype=np.int64) % e
    t = G.table.astype(np.int64)
    d = c[:, None] + c[None, :] - c[t]
    if (d % e).any():
        raise ValueError("chi is not a homomorphism")
    return Cocycle2(G, FinAb([e]), (d // e)[:, :, None])


def homs_to_cyclic(G: FiniteGroup, e: int) -> list[np.ndarray]:
    """Generators of Hom(G, Z/e), as value arrays on all elements."""
    D = derived_subgroup(G)
    Q, proj = quotient(G, D)
    if Q.order == 1:
        return []
    Aab, coords = abelian_structure(Q)
    out = []
    for i, a in enumerate(Aab.moduli):
        g = np.gcd(a, e)
        out.append((coords[proj.images, i] * (e // g)) % e)
    return out


def h2_divisible(G: FiniteGroup) -> FinAb:
    """H^2(G, Q/Z), computed as the cokernel of the Bockstein into H^2(G, Z/|G|)."""
    e = G.order
    if e == 1:
        return FinAb()
    H = h2(G, FinAb([e]))
    images = [H.class_of(bockstein_cocycle(G, chi, e)) for chi in homs_to_cyclic(G, e)]
    Q, _ = H.structure.quotient(images)
    return Q


# ---- brute force oracle -----------------------------------------------------


def enumerate_cocycles(G: FiniteGroup, m: int) -> np.ndarray:
    """All normalized 2-cocycles G x G -> Z/m, as an array of shape (N, n, n).

    Exhaustive over all m^((n-1)^2) normalized functions; only for tiny cases.
    """
    n = G.order
    k = (n - 1) ** 2
    if m**k > 5_000_000:
        raise ValueError("too many cochains to enumerate")
    t = G.table.astype(np.int64)
    idx = np.arange(m**k, dtype=np.int64)
    digits = np.stack([(idx // m**i) % m for i in range(k)], axis=1) if k else np.zeros((1, 0), dtype=np.int64)
    F = np.zeros((m**k, n, n), dtype=np.int64)
    if k:
        F[:, 1:, 1:] = digits.reshape(-1, n - 1, n - 1)
    ok = np.ones(m**k, dtype=bool)
    for g, h, l in product(range(1, n), repeat=3):
        lhs = F[:, g, h] + F[:, t[g, h], l]
        rhs = F[:, h, l] + F[:, g, t[h, l]]
        ok &= (lhs - rhs) % m == 0
    return F[ok]


def enumerate_coboundaries(G: FiniteGroup, m: int) -> np.ndarray:
    n = G.order
    t = G.table.astype(np.int64)
    out = []
    for c in product(range(m), repeat=n - 1):
        c = np.array((0,) + c, dtype=np.int64)
        out.append((c[:, None] + c[None, :] - c[t]) % m)
    return np.unique(np.array(out).reshape(len(out), n, n), axis=0)
