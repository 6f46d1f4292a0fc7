"""Central extensions as explicit groups.

An extension 1 -> A -> E -> H -> 1 is stored with its total group E as a
dense table, the embedding of A (itself tabulated as a group) and the
projection onto H.  Extensions built from a cocycle remember it, so the
group-level constructions here can be compared against the cohomology
classes computed in :mod:`bmcert.cohomo`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .cohomo import Cocycle2, H2Group, h2
from .finab import FinAb, FinAbHom
from .groups import (
    FiniteGroup,
    GroupError,
    GroupHom,
    Subgroup,
    _extend,
    center,
    derived_subgroup,
    isomorphic,
)


@lru_cache(maxsize=None)
def finab_group(A: FinAb) -> FiniteGroup:
    """A as a FiniteGroup; element i is the i-th vector of ``A.elements()``."""
    els = np.array(A.elements(), dtype=np.int64).reshape(A.order, A.rank)
    if A.rank == 0:
        return FiniteGroup(np.zeros((1, 1), dtype=np.int64), name="0", check=False)
    s = A.reduce(els[:, None, :] + els[None, :, :])
    table = _mixed_index(A, s)
    return FiniteGroup(table, name=repr(A), check=False)


def _mixed_index(A: FinAb, x: np.ndarray) -> np.ndarray:
    idx = np.zeros(x.shape[:-1], dtype=np.int64)
    for i, m in enumerate(A.moduli):
        idx = idx * m + x[..., i]
    return idx


def _elements(A: FinAb) -> np.ndarray:
    return np.array(A.elements(), dtype=np.int64).reshape(A.order, A.rank)


@dataclass(eq=False)
class CentralExtension:
    total: FiniteGroup
    kernel_embed: GroupHom
    proj: GroupHom
    coeffs: FinAb
    cocycle: Cocycle2 | None = field(default=None, repr=False)

    @property
    def base(self) -> FiniteGroup:
        return self.proj.target

    def kernel(self) -> Subgroup:
        return self.kernel_embed.image()

    def validate(self) -> None:
        if not self.kernel_embed.is_homomorphism() or not self.kernel_embed.is_injective():
            raise GroupError("kernel embedding is not an injective homomorphism")
        if not self.kernel() <= center(self.total):
            raise GroupError("kernel is not central")
        if not self.proj.is_homomorphism() or not self.proj.is_surjective():
            raise GroupError("projection is not a surjective homomorphism")
        if self.proj.kernel().members != self.kernel().members:
            raise GroupError("kernel of the projection is not the embedded coefficient group")
        if self.total.order != self.coeffs.order * self.base.order:
            raise GroupError("|E| != |A| |H|")

    def section_cocycle(self, section: np.ndarray | None = None) -> Cocycle2:
        """Cocycle of a set-theoretic section s (s(1) = 1).

        f(g, h) is the kernel element s(g) s(h) s(gh)^-1.  Without a given
        section, the smallest element of each fibre is used.
        """
        H = self.base
        E = self.total
        if section is None:
            section = np.full(H.order, -1, dtype=np.int64)
            for e in range(E.order - 1, -1, -1):
                section[self.proj.images[e]] = e
        s = np.asarray(section, dtype=np.int64)
        if s[0] != 0:
            s = s.copy()
            s[0] = 0
        t = E.table.astype(np.int64)
        prod_ = t[s[:, None], s[None, :]]
        sgh = s[H.table.astype(np.int64)]
        k = t[prod_, E.inverses[sgh]]
        kinv = np.full(E.order, -1, dtype=np.int64)
        kinv[self.kernel_embed.images] = np.arange(len(self.kernel_embed.images))
        a_idx = kinv[k]
        if (a_idx < 0).any():
            raise GroupError("section does not lie over the base")
        vals = _elements(self.coeffs)[a_idx]
        return Cocycle2(H, self.coeffs, vals)

    def to_json(self, h2group: H2Group | None = None) -> dict:
        out = {
            "total": self.total.to_json(),
            "kernel": self.kernel_embed.images.tolist(),
            "proj": self.proj.images.tolist(),
            "coeffs": self.coeffs.to_json(),
        }
        if h2group is not None:
            f = self.cocycle if self.cocycle is not None else self.section_cocycle()
            out["class"] = h2group.class_of(f).tolist()
        return out


def build_extension(H: FiniteGroup, A: FinAb, f: Cocycle2, check: bool = False) -> CentralExtension:
    """Total group on pairs (a, h), multiplied by (a,h)(b,k) = (a+b+f(h,k), hk).

    The pair (a, h) is stored at index ``h * |A| + index(a)``.
    """
    if f.group is not H or f.coeffs != A:
        raise ValueError("cocycle does not match (H, A)")
    if check and not f.is_valid():
        raise ValueError("not a normalized cocycle")
    n, m = H.order, A.order
    els = _elements(A)
    th = H.table.astype(np.int64)
    ta = finab_group(A).table.astype(np.int64)
    fidx = _mixed_index(A, f.values) if A.rank else np.zeros((n, n), dtype=np.int64)
    # indices run over (h1, a1, h2, a2); product is (a1 + a2 + f(h1, h2), h1 h2)
    af = ta[np.arange(m)[None, :, None], fidx[:, None, :]]
    a = ta[af[..., None], np.arange(m)[None, None, None, :]]
    h = th[:, None, :, None]
    table = (h * m + a).reshape(n * m, n * m)
    name = f"{A!r}.{H.name}" if H.name else ""
    E = FiniteGroup(table, name=name, check=check and n * m <= 256)
    emb = GroupHom(finab_group(A), E, np.arange(m))
    proj = GroupHom(E, H, np.repeat(np.arange(n), m))
    ext = CentralExtension(E, emb, proj, A, f)
    if check:
        ext.validate()
    return ext


def pullback_extension(E: CentralExtension, K: Subgroup) -> CentralExtension:
    """The extension proj^-1(K) of K by the same kernel."""
    if K.parent is not E.base:
        raise ValueError("subgroup of a different base group")
    members = tuple(int(e) for e in np.nonzero(np.isin(E.proj.images, K.members))[0])
    P, incl = Subgroup(E.total, members).as_group()
    Kg, kincl = K.as_group()
    kpos = np.full(E.base.order, -1, dtype=np.int64)
    kpos[kincl.images] = np.arange(Kg.order)
    ppos = np.full(E.total.order, -1, dtype=np.int64)
    ppos[incl.images] = np.arange(P.order)
    proj = GroupHom(P, Kg, kpos[E.proj.images[incl.images]])
    emb = GroupHom(E.kernel_embed.source, P, ppos[E.kernel_embed.images])
    f = E.cocycle.pullback(kincl) if E.cocycle is not None else None
    return CentralExtension(P, emb, proj, E.coeffs, f)


def pushforward_extension(E: CentralExtension, phi: FinAbHom) -> CentralExtension:
    """(B x E) / {(-phi(a), a) : a in A}, an extension of the same base by B."""
    if phi.source != E.coeffs:
        raise ValueError("coefficient map has the wrong source")
    B = phi.target
    GB = finab_group(B)
    T = E.total
    nb, ne = B.order, T.order
    tb = GB.table.astype(np.int64)
    te = T.table.astype(np.int64)
    A_els = _elements(E.coeffs)
    phi_idx = np.array([B.index(phi(a)) for a in A_els], dtype=np.int64).reshape(-1)
    neg_phi = GB.inverses[phi_idx]
    iota = E.kernel_embed.images
    bs = np.arange(nb)[:, None]
    es = np.arange(ne)[None, :]
    # canonical representative: smallest flat index b * |E| + e in the coset
    canon = np.full((nb, ne), np.iinfo(np.int64).max, dtype=np.int64)
    for a in range(len(A_els)):
        cand = tb[bs, neg_phi[a]] * ne + te[es, iota[a]]
        np.minimum(canon, cand, out=canon)
    reps = np.unique(canon)
    label = np.full(nb * ne, -1, dtype=np.int64)
    label[reps] = np.arange(len(reps))
    rb, re_ = reps // ne, reps % ne
    pb = tb[rb[:, None], rb[None, :]]
    pe = te[re_[:, None], re_[None, :]]
    table = label[canon[pb, pe]]
    total = FiniteGroup(table, check=False)
    emb = GroupHom(GB, total, label[canon[np.arange(nb), 0]])
    proj = GroupHom(total, E.base, E.proj.images[re_])
    f = E.cocycle.pushforward(phi) if E.cocycle is not None else None
    return CentralExtension(total, emb, proj, B, f)


def is_split(E: CentralExtension) -> GroupHom | None:
    """A homomorphic section of the projection, or None.

    Lifts of a generating set of the base are searched by backtracking over
    kernel translates, pruning as soon as a partial assignment fails to
    extend consistently.
    """
    H = E.base
    if H.order == 1:
        return GroupHom(H, E.total, np.zeros(1, dtype=np.int64))
    gens = list(H.generators)
    fibres = [np.nonzero(E.proj.images == h)[0].tolist() for h in gens]

    def search(i: int, imgs: list[int]) -> np.ndarray | None:
        if i == len(gens):
            return _extend(H, E.total, gens, imgs)
        for e in fibres[i]:
            trial = imgs + [e]
            phi = _extend(H, E.total, gens[: i + 1], trial)
            if phi is None:
                continue
            if i + 1 == len(gens):
                return phi
            out = search(i + 1, trial)
            if out is not None:
                return out
        return None

    phi = search(0, [])
    if phi is None:
        return None
    return GroupHom(H, E.total, phi)


def rigidity_check(E: CentralExtension, Z: Subgroup) -> bool:
    """proj^-1(Z) is inside the subgroup generated by D(E) and the kernel."""
    if Z.parent is not E.base:
        raise ValueError("subgroup of a different base group")
    pre = np.nonzero(np.isin(E.proj.images, Z.members))[0]
    gens = set(derived_subgroup(E.total).members) | set(E.kernel_embed.images.tolist())
    S = set(E.total.closure(gens))
    return set(pre.tolist()) <= S


def rigidity_check_base(H: FiniteGroup, Z: Subgroup) -> bool:
    """Table-free form of :func:`rigidity_check` for any central extension of H.

    The subgroup generated by D(E) and the kernel contains the kernel, so it
    is the full preimage of its image, and that image is D(H).  The check
    therefore reduces to Z being contained in D(H), which needs no table of E.
    """
    if Z.parent is not H:
        raise ValueError("subgroup of a different base group")
    return set(Z.members) <= set(derived_subgroup(H).members)


@dataclass
class ExtensionType:
    """One isomorphism type of total group and the H^2 classes realising it."""

    total: FiniteGroup
    classes: list[tuple[int, ...]]
    extension: CentralExtension = field(repr=False)

    @property
    def split(self) -> bool:
        return any(not any(c) for c in self.classes)


def classify_extensions(H: FiniteGroup, A: FinAb) -> list[ExtensionType]:
    """Partition H^2(H, A) by isomorphism type of the total group.

    Equivalence classes of extensions are the elements of H^2; the returned
    list groups them by the isomorphism type of E, in order of the first
    class realising each type (the zero class comes first).
    """
    H2 = h2(H, A)
    types: list[ExtensionType] = []
    for c in H2.classes():
        ext = build_extension(H, A, H2.cocycle(c))
        for ty in types:
            if isomorphic(ty.total, ext.total) is not None:
                ty.classes.append(tuple(c))
                break
        else:
            types.append(ExtensionType(ext.total, [tuple(c)], ext))
    return types
