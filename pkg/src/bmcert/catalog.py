"""Built-in groups.

Names: ``Z<n>`` (cyclic, n <= 32), ``V4``, ``D<n>`` (dihedral of order 2n,
n in {4, 8, 16, 32}), ``Q8``, ``Q16``, ``Q32``, ``Q64`` (generalized
quaternion), ``M16``, ``M32``, ``M64`` (modular 2-groups), ``Heis<p>``
(unitriangular 3x3 over F_p, order p^3) and ``Ext<p>`` (the non-abelian group of order p^3 and
exponent p^2, i.e. Z/p^2 ⋊ Z/p) for p in {2, 3, 5}.
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from itertools import product
from pathlib import Path

import numpy as np

from .groups import FiniteGroup, GroupError, direct_product
from .presentation import from_presentation


def _from_elements(elements, mul, name: str, names=None) -> FiniteGroup:
    """Tabulate a group from a list of hashable elements (identity first)."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.array([[index[mul(a, b)] for b in elements] for a in elements], dtype=np.int64)
    return FiniteGroup(table, names=names, name=name)


def cyclic(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, name=f"Z{n}", check=False)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n: pairs (k, s) meaning r^k f^s."""
    els = [(k, s) for s in range(2) for k in range(n)]

    def mul(a, b):
        k1, s1 = a
        k2, s2 = b
        return ((k1 + (-k2 if s1 else k2)) % n, s1 ^ s2)

    names = [("r%d" % k if k else "1") if not s else ("r%df" % k if k else "f") for k, s in els]
    return _from_elements(els, mul, f"D{n}", names)


def dicyclic(n: int) -> FiniteGroup:
    """Generalized quaternion / dicyclic group of order 4n: <x, y | x^2n, y^2 = x^n, y^-1 x y = x^-1>."""
    els = [(k, s) for s in range(2) for k in range(2 * n)]

    def mul(a, b):
        k1, s1 = a
        k2, s2 = b
        if not s1:
            return ((k1 + k2) % (2 * n), s2)
        # x^k1 y x^k2 y^s2 = x^(k1-k2) y^(1+s2)
        k = k1 - k2
        if s2:
            k += n
        return (k % (2 * n), (1 + s2) % 2)

    return _from_elements(els, mul, f"Q{4 * n}")


def quaternion() -> FiniteGroup:
    """Q8 with elements labelled 1, -1, i, -i, j, -j, k, -k."""
    # unit quaternions as (sign, axis) with axis 0 = real part
    els = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    # multiplication of basis units: 1, i, j, k
    basis = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(a, b):
        s, ax = basis[(a[1], b[1])]
        return (a[0] * b[0] * s, ax)

    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return _from_elements(els, mul, "Q8", names)


def heisenberg(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over F_p, stored as (a, b, c)."""
    els = [(a, b, c) for c in range(p) for a in range(p) for b in range(p)]
    els.sort(key=lambda e: (e != (0, 0, 0),))

    def mul(x, y):
        a1, b1, c1 = x
        a2, b2, c2 = y
        return ((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p)

    return _from_elements(els, mul, f"Heis{p}")


def exponent_p2(p: int) -> FiniteGroup:
    """Z/p^2 ⋊ Z/p with the generator of Z/p acting by x -> (1+p)x."""
    q = p * p
    els = [(x, s) for s in range(p) for x in range(q)]

    def mul(a, b):
        x1, s1 = a
        x2, s2 = b
        return ((x1 + pow(1 + p, s1, q) * x2) % q, (s1 + s2) % p)

    return _from_elements(els, mul, f"Ext{p}")


def modular(n: int) -> FiniteGroup:
    """M_{2^n}: <a, b | a^(2^(n-1)), b^2, b a b = a^(1 + 2^(n-2))>."""
    m = 2 ** (n - 1)
    e = 1 + 2 ** (n - 2)
    els = [(x, s) for s in range(2) for x in range(m)]

    def mul(a, b):
        x1, s1 = a
        x2, s2 = b
        return ((x1 + pow(e, s1, m) * x2) % m, s1 ^ s2)

    return _from_elements(els, mul, f"M{2 ** n}")


def klein() -> FiniteGroup:
    G = direct_product(cyclic(2), cyclic(2), name="V4")
    return G


_BUILDERS = {
    "V4": klein,
    "D4": lambda: dihedral(4),
    "D8": lambda: dihedral(8),
    "D16": lambda: dihedral(16),
    "D32": lambda: dihedral(32),
    "Q8": quaternion,
    "Q16": lambda: dicyclic(4),
    "Q32": lambda: dicyclic(8),
    "Q64": lambda: dicyclic(16),
    "M16": lambda: modular(4),
    "M32": lambda: modular(5),
    "M64": lambda: modular(6),
    "Heis2": lambda: heisenberg(2),
    "Heis3": lambda: heisenberg(3),
    "Heis5": lambda: heisenberg(5),
    "Ext2": lambda: exponent_p2(2),
    "Ext3": lambda: exponent_p2(3),
    "Ext5": lambda: exponent_p2(5),
}


@lru_cache(maxsize=None)
def get(name: str) -> FiniteGroup:
    m = re.fullmatch(r"Z(\d+)", name)
    if m:
        n = int(m.group(1))
        if not 1 <= n <= 32:
            raise GroupError("cyclic catalog groups have order 1..32")
        return cyclic(n)
    if name == "1":
        return cyclic(1)
    if name not in _BUILDERS:
        raise GroupError(f"unknown catalog group {name!r}")
    G = _BUILDERS[name]()
    G.name = name
    return G


def names() -> list[str]:
    return [f"Z{n}" for n in range(1, 33)] + list(_BUILDERS)


def p_groups(max_order: int = 64, nonabelian: bool = True) -> list[FiniteGroup]:
    """Catalog groups of prime-power order (non-abelian by default)."""
    from .groups import prime_power

    out = []
    for name in _BUILDERS:
        G = get(name)
        if G.order <= max_order and prime_power(G.order) and (not nonabelian or not G.is_abelian()):
            out.append(G)
    return out


def load(spec: str) -> FiniteGroup:
    """Resolve a catalog name or a JSON file (table or presentation)."""
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        data = json.loads(path.read_text())
        return from_json(data, name=path.stem)
    return get(spec)


def from_json(data: dict, name: str = "") -> FiniteGroup:
    if "catalog" in data:
        return get(data["catalog"])
    if "presentation" in data:
        pres = data["presentation"]
        G = from_presentation(pres["generators"], pres["relators"], pres.get("order_bound", 512))
        G.name = name
        return G
    if "table" in data:
        G = FiniteGroup(data["table"], names=data.get("names"), name=name)
        if "order" in data and data["order"] != G.order:
            raise GroupError("declared order does not match the table")
        return G
    raise GroupError("group JSON needs 'table', 'presentation' or 'catalog'")
