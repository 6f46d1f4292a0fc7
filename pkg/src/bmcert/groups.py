"""Finite groups as dense multiplication tables.

Elements are the integers ``0..order-1`` with the identity at ``0``.  All
algorithms are table driven; ties are always broken towards the smallest
element index so that outputs are deterministic.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .finab import FinAb
from .linalg import factorize, smith

ASSOC_CHECK_LIMIT = 256


class GroupError(ValueError):
    pass


class NotNormal(GroupError):
    pass


class NotPGroup(GroupError):
    pass


class AbelianInput(GroupError):
    pass


class NoneFound(GroupError):
    pass


def _table_dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[g, h]`` is the index of ``g*h``.  Validation (closure, identity at
    0, inverses and, for orders up to 256, associativity) runs on
    construction unless ``check=False``; internal constructions that are
    correct by design skip it.
    """

    def __init__(self, table, names: Sequence[str] | None = None, name: str = "", check: bool = True):
        t = np.asarray(table)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupError("table must be a non-empty square array")
        n = t.shape[0]
        self.table = t.astype(_table_dtype(n))
        self.table.setflags(write=False)
        self.names = tuple(names) if names is not None else None
        if self.names is not None and len(self.names) != n:
            raise GroupError("names must have one entry per element")
        self.name = name
        if check:
            self.validate()

    def validate(self) -> None:
        t = self.table
        n = self.order
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table is not closed")
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise GroupError("element 0 is not a two-sided identity")
        for axis in (0, 1):
            if not np.all(np.sort(t, axis=axis) == (ar[:, None] if axis == 0 else ar[None, :])):
                raise GroupError("table is not a Latin square (missing inverses)")
        if n <= ASSOC_CHECK_LIMIT:
            ti = t.astype(np.int64)
            for a in range(n):
                # (a*b)*c == a*(b*c) for all b, c
                lhs = ti[ti[a]]
                rhs = ti[a][ti]
                if not np.array_equal(lhs, rhs):
                    raise GroupError(f"associativity fails for a={a}")

    # ---- basic structure -------------------------------------------------

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} of order {self.order}>"

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    @cached_property
    def inverses(self) -> np.ndarray:
        r, c = np.nonzero(self.table == 0)
        inv = np.empty(self.order, dtype=np.int64)
        inv[r] = c
        return inv

    def inv(self, g: int) -> int:
        return int(self.inverses[g])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        out = 0
        for _ in range(k % self.element_orders[g]):
            out = self.mul(out, g)
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        ar = np.arange(n)
        for k in range(1, n + 1):
            cur = self.table[cur, ar] if k > 1 else cur
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
        return orders

    def commutator(self, g: int, h: int) -> int:
        """[g, h] = g^-1 h^-1 g h."""
        t = self.table
        return int(t[t[t[self.inv(g), self.inv(h)], g], h])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def elements_name(self, g: int) -> str:
        return self.names[g] if self.names else str(g)

    # ---- subgroups -------------------------------------------------------

    def closure(self, gens: Iterable[int]) -> list[int]:
        """Sorted elements of the subgroup generated by ``gens``."""
        gens = sorted({int(g) for g in gens} - {0})
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        frontier = [0]
        t = self.table
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(t[x, s])
                    if not seen[y]:
                        seen[y] = True
                        nxt.append(y)
            frontier = nxt
        return [int(i) for i in np.nonzero(seen)[0]]

    def subgroup(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(self.closure(gens)))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set chosen greedily.

        At each step the element that enlarges the generated subgroup the
        most is added (smallest index on ties).
        """
        gens: list[int] = []
        current = {0}
        n = self.order
        while len(current) < n:
            best, best_size = None, -1
            for g in range(n):
                if g in current:
                    continue
                size = len(self.closure(gens + [g]))
                if size > best_size:
                    best, best_size = g, size
                if best_size == n:
                    break
            gens.append(best)
            current = set(self.closure(gens))
        return tuple(gens)

    @cached_property
    def cayley_tree(self) -> "CayleyTree":
        return CayleyTree.build(self, self.generators)

    def to_json(self) -> dict:
        out = {"order": self.order, "table": self.table.tolist()}
        if self.names:
            out["names"] = list(self.names)
        return out


@dataclass(frozen=True)
class CayleyTree:
    """BFS spanning tree of the right Cayley graph for a generating set.

    ``parent[g]`` and ``pgen[g]`` describe the tree edge ``parent[g] * gens[pgen[g]] = g``;
    ``order`` lists elements in BFS order, and ``words[g]`` is the tree word
    as a tuple of generator positions.
    """

    gens: tuple[int, ...]
    parent: np.ndarray
    pgen: np.ndarray
    order: tuple[int, ...]

    @classmethod
    def build(cls, G: FiniteGroup, gens: Sequence[int]) -> "CayleyTree":
        n = G.order
        parent = np.full(n, -1, dtype=np.int64)
        pgen = np.full(n, -1, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        order = [0]
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for j, s in enumerate(gens):
                y = int(G.table[x, s])
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    pgen[y] = j
                    order.append(y)
                    queue.append(y)
        if len(order) != n:
            raise GroupError("generators do not generate the group")
        return cls(tuple(int(s) for s in gens), parent, pgen, tuple(order))

    def word(self, g: int) -> tuple[int, ...]:
        out = []
        while g != 0:
            out.append(int(self.pgen[g]))
            g = int(self.parent[g])
        return tuple(reversed(out))

    @cached_property
    def letter_counts(self) -> np.ndarray:
        """``letter_counts[g, j]``: occurrences of generator j in the tree word of g."""
        n = len(self.parent)
        wc = np.zeros((n, len(self.gens)), dtype=np.int64)
        for g in self.order[1:]:
            wc[g] = wc[self.parent[g]]
            wc[g, self.pgen[g]] += 1
        return wc


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        m = tuple(sorted(int(x) for x in self.members))
        object.__setattr__(self, "members", m)
        if not m or m[0] != 0:
            raise GroupError("subgroup must contain the identity")
        s = set(m)
        t = self.parent.table
        idx = np.array(m)
        if not set(t[np.ix_(idx, idx)].ravel().tolist()) <= s:
            raise GroupError("members are not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g: int) -> bool:
        return int(g) in self.memberset

    @cached_property
    def memberset(self) -> frozenset[int]:
        return frozenset(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        return self.memberset <= other.memberset

    def is_normal(self) -> bool:
        G = self.parent
        t = G.table
        idx = np.array(self.members)
        for g in range(G.order):
            conj = t[t[G.inv(g), idx], g]
            if not set(conj.tolist()) <= self.memberset:
                return False
        return True

    def is_cyclic(self) -> bool:
        return self.cyclic_generator() is not None

    def cyclic_generator(self) -> int | None:
        orders = self.parent.element_orders
        for g in self.members:
            if orders[g] == self.order:
                return g
        return None

    def is_central(self) -> bool:
        return self <= center(self.parent)

    def intersect(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, tuple(sorted(self.memberset & other.memberset)))

    def as_group(self) -> tuple[FiniteGroup, "GroupHom"]:
        """The subgroup as a group in its own right, with its inclusion."""
        idx = np.array(self.members)
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[idx] = np.arange(len(idx))
        table = pos[self.parent.table[np.ix_(idx, idx)]]
        names = [self.parent.names[i] for i in self.members] if self.parent.names else None
        K = FiniteGroup(table, names=names, check=False)
        return K, GroupHom(K, self.parent, idx)


class GroupHom:
    """A homomorphism given by the image of every source element."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images, check: bool = False):
        self.source = source
        self.target = target
        self.images = np.asarray(images, dtype=np.int64)
        if self.images.shape != (source.order,):
            raise GroupError("images must list one target element per source element")
        if check and not self.is_homomorphism():
            raise GroupError("map is not a homomorphism")

    def __call__(self, g: int) -> int:
        return int(self.images[g])

    def __repr__(self) -> str:
        return f"<GroupHom {self.source!r} -> {self.target!r}>"

    def is_homomorphism(self) -> bool:
        im = self.images
        if im[0] != 0:
            return False
        lhs = im[self.source.table]
        rhs = self.target.table[np.ix_(im, im)]
        return bool(np.array_equal(lhs, rhs))

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, tuple(int(g) for g in np.nonzero(self.images == 0)[0]))

    def image(self) -> Subgroup:
        return Subgroup(self.target, tuple(sorted(set(self.images.tolist()))))

    def is_injective(self) -> bool:
        return len(set(self.images.tolist())) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.images.tolist())) == self.target.order

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``self o other``."""
        return GroupHom(other.source, self.target, self.images[other.images])

    def inverse(self) -> "GroupHom":
        if not (self.is_injective() and self.is_surjective()):
            raise GroupError("map is not bijective")
        inv = np.empty(self.target.order, dtype=np.int64)
        inv[self.images] = np.arange(self.source.order)
        return GroupHom(self.target, self.source, inv)

    @classmethod
    def identity(cls, G: FiniteGroup) -> "GroupHom":
        return cls(G, G, np.arange(G.order))

    def to_json(self) -> list[int]:
        return self.images.tolist()


# ---- structural subgroups ---------------------------------------------------


def center(G: FiniteGroup) -> Subgroup:
    t = G.table
    z = [g for g in range(G.order) if np.array_equal(t[g], t[:, g])]
    return Subgroup(G, tuple(z))


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    t = G.table
    inv = G.inverses
    # [g, h] = g^-1 h^-1 g h for all pairs at once
    gi_hi = t[np.ix_(inv, inv)]
    comm = t[t[gi_hi, np.arange(G.order)[:, None]], np.arange(G.order)[None, :]]
    return G.subgroup(set(comm.ravel().tolist()))


def derived_series(G: FiniteGroup) -> list[int]:
    """Orders along the derived series, stopping when it stabilises."""
    sizes = [G.order]
    H = G
    while True:
        D = derived_subgroup(H)
        if D.order == H.order:
            return sizes
        sizes.append(D.order)
        if D.order == 1:
            return sizes
        H, _ = D.as_group()


def prime_power(n: int) -> tuple[int, int] | None:
    f = factorize(n)
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k


def find_central_derived_cyclic(G: FiniteGroup, p: int) -> Subgroup:
    """Cyclic subgroup of order p inside Z(G) ∩ D(G) for a non-abelian p-group.

    The subgroup generated by the smallest eligible element is returned.
    """
    pp = prime_power(G.order)
    if G.order == 1 or pp is None or pp[0] != p:
        raise NotPGroup(f"group of order {G.order} is not a non-trivial {p}-group")
    if G.is_abelian():
        raise AbelianInput("group is abelian")
    both = center(G).intersect(derived_subgroup(G))
    orders = G.element_orders
    for z in both.members:
        if orders[z] == p:
            return G.subgroup([z])
    raise NoneFound("no element of order p in Z(G) ∩ D(G)")


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """G/N with cosets labelled by their smallest element, in increasing order."""
    if N.parent is not G:
        raise GroupError("subgroup belongs to a different group")
    if not N.is_normal():
        raise NotNormal("subgroup is not normal")
    t = G.table
    idx = np.array(N.members)
    rep = t[:, idx].min(axis=1)
    reps = np.unique(rep)
    label = np.full(G.order, -1, dtype=np.int64)
    label[reps] = np.arange(len(reps))
    proj = label[rep]
    table = proj[t[np.ix_(reps, reps)]]
    Q = FiniteGroup(table, check=False)
    return Q, GroupHom(G, Q, proj)


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> FiniteGroup:
    """G x H with (g, h) stored at index g * |H| + h."""
    n, m = G.order, H.order
    tg = G.table.astype(np.int64)
    th = H.table.astype(np.int64)
    table = (tg[:, None, :, None] * m + th[None, :, None, :]).reshape(n * m, n * m)
    names = None
    if G.names or H.names:
        names = [f"({G.elements_name(g)},{H.elements_name(h)})" for g in range(n) for h in range(m)]
    return FiniteGroup(table, names=names, name=name or f"{G.name}x{H.name}", check=False)


# ---- abelian structure ------------------------------------------------------


def abelian_invariants_by_orders(G: FiniteGroup) -> FinAb:
    """Invariant factors of an abelian group from counts of p^j-torsion.

    For each prime p the number of elements killed by p^j determines the
    partition of the p-part; the invariant factors are assembled from the
    partitions.
    """
    if not G.is_abelian():
        raise GroupError("group is not abelian")
    orders = G.element_orders
    cyclic = []
    for p, k in factorize(G.order).items():
        logs = [0]
        for j in range(1, k + 1):
            cnt = int(np.sum(np.gcd(orders, p**j) == orders))
            e = 0
            while cnt > 1:
                cnt //= p
                e += 1
            logs.append(e)
        # parts >= j: logs[j] - logs[j-1]
        ge = [logs[j] - logs[j - 1] for j in range(1, k + 1)] + [0]
        for j in range(1, k + 1):
            cyclic += [p**j] * (ge[j - 1] - ge[j])
    return FinAb(cyclic).invariant_factors()


def abelian_structure(G: FiniteGroup) -> tuple[FinAb, np.ndarray]:
    """Invariant factors of an abelian group and coordinates of every element.

    Returns ``(A, coords)`` where ``coords[g]`` is the image of ``g`` under an
    isomorphism ``G -> A``.
    """
    if not G.is_abelian():
        raise GroupError("group is not abelian")
    n = G.order
    t = G.table
    gens = list(G.generators)
    r = len(gens)
    # expr[g]: exponent vector over gens reaching g; filled as the subgroup grows
    expr: dict[int, tuple[int, ...]] = {0: (0,) * r}
    relations: list[list[int]] = []
    for j, s in enumerate(gens):
        # smallest k with s^k in the current subgroup
        k, x = 1, s
        while x not in expr:
            x = int(t[x, s])
            k += 1
        rel = [-c for c in expr[x]]
        rel[j] += k
        relations.append(rel)
        old = list(expr.items())
        y = 0
        for e in range(1, k):
            y = int(t[y, s])
            for g, v in old:
                w = list(v)
                w[j] += e
                expr[int(t[g, y])] = tuple(w)
    assert len(expr) == n
    # Z^r / relations ≅ G; columns of rel matrix are relations
    rel = [[relations[c][i] for c in range(r)] for i in range(r)]
    diag, P, _, _ = smith(rel)
    keep = [i for i, d in enumerate(diag) if d != 1]
    A = FinAb(diag[i] for i in keep)
    Pk = np.array([P[i] for i in keep], dtype=object).reshape(len(keep), r)
    coords = np.zeros((n, len(keep)), dtype=np.int64)
    for g, v in expr.items():
        coords[g] = A.reduce(np.array((Pk @ np.array(v, dtype=object)).tolist(), dtype=np.int64))
    return A, coords


def abelianization(G: FiniteGroup) -> FinAb:
    Q, _ = quotient(G, derived_subgroup(G))
    return abelian_structure(Q)[0]


# ---- isomorphism ------------------------------------------------------------


def _profile(G: FiniteGroup) -> Counter:
    """Multiset of (element order, centralizer size) pairs."""
    t = G.table
    cent = (t == t.T).sum(axis=0)
    return Counter(zip(G.element_orders.tolist(), cent.tolist()))


def _invariants(G: FiniteGroup):
    return (
        G.order,
        sorted(_profile(G).items()),
        center(G).order,
        tuple(derived_series(G)),
        abelianization(G).moduli,
    )


def _extend(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]) -> np.ndarray | None:
    """Extend generator images to the generated subgroup; None on conflict."""
    phi = np.full(G.order, -1, dtype=np.int64)
    phi[0] = 0
    tg, th = G.table, H.table
    used = np.zeros(H.order, dtype=bool)
    used[0] = True
    queue = deque([0])
    while queue:
        x = queue.popleft()
        fx = phi[x]
        for s, fs in zip(gens, imgs):
            y = int(tg[x, s])
            fy = int(th[fx, fs])
            if phi[y] == -1:
                if used[fy]:
                    return None
                phi[y] = fy
                used[fy] = True
                queue.append(y)
            elif phi[y] != fy:
                return None
    return phi


def isomorphic(G1: FiniteGroup, G2: FiniteGroup) -> GroupHom | None:
    """An isomorphism G1 -> G2, or None.

    Cheap invariants are compared first; then images of a generating set of
    G1 are searched by backtracking, restricted to elements with the same
    order and centralizer size and checked on each partial subgroup.
    """
    if G1.order != G2.order:
        return None
    if G1.table.shape == G2.table.shape and np.array_equal(G1.table, G2.table):
        return GroupHom.identity(G1) if G1 is G2 else GroupHom(G1, G2, np.arange(G1.order))
    if _invariants(G1) != _invariants(G2):
        return None
    gens = list(G1.generators)
    t1, t2 = G1.table, G2.table
    cent1 = (t1 == t1.T).sum(axis=0)
    cent2 = (t2 == t2.T).sum(axis=0)
    o1, o2 = G1.element_orders, G2.element_orders
    cands = [
        [h for h in range(G2.order) if o2[h] == o1[s] and cent2[h] == cent1[s]]
        for s in gens
    ]

    def search(i: int, imgs: list[int]) -> np.ndarray | None:
        if i == len(gens):
            phi = _extend(G1, G2, gens, imgs)
            if phi is not None and (phi >= 0).all():
                return phi
            return None
        for h in cands[i]:
            trial = imgs + [h]
            if _extend(G1, G2, gens[: i + 1], trial) is None:
                continue
            out = search(i + 1, trial)
            if out is not None:
                return out
        return None

    phi = search(0, [])
    if phi is None:
        return None
    return GroupHom(G1, G2, phi)
