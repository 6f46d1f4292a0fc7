"""Relator parsing and Todd-Coxeter (HLT) coset enumeration."""

from __future__ import annotations

import re
from collections import deque
from typing import Sequence

import numpy as np

from .groups import FiniteGroup, GroupError

MAX_COSETS = 20_000
MAX_ORDER = 512


class EnumerationOverflow(GroupError):
    pass


class WordSyntaxError(GroupError):
    pass


# A word is a list of letters; letter 2*i is generator i, 2*i+1 its inverse.
Word = list[int]


def _inv_letter(x: int) -> int:
    return x ^ 1


def invert(w: Sequence[int]) -> Word:
    return [_inv_letter(x) for x in reversed(w)]


def _power(w: Word, e: int) -> Word:
    if e < 0:
        w, e = invert(w), -e
    return w * e


def parse_word(text: str, ngens: int) -> Word:
    """Parse a relator such as ``"a16"``, ``"[a,b]b-2"`` or ``"ABab"``.

    Lowercase letters are generators (``a`` is generator 0), uppercase their
    inverses, ``[u,v]`` is the commutator ``u^-1 v^-1 u v``; any factor may
    carry an integer exponent, optionally written ``^e``.
    """
    s = text.replace(" ", "").replace("*", "")
    pos = 0

    def exponent() -> int:
        nonlocal pos
        m = re.match(r"\^?(-?\d+)", s[pos:])
        if not m:
            return 1
        pos += m.end()
        return int(m.group(1))

    def letter(ch: str) -> Word:
        i = ord(ch.lower()) - ord("a")
        if not 0 <= i < ngens:
            raise WordSyntaxError(f"unknown generator {ch!r} in {text!r}")
        return [2 * i + (1 if ch.isupper() else 0)]

    def sequence(stop: str) -> Word:
        nonlocal pos
        out: Word = []
        while pos < len(s) and s[pos] not in stop:
            ch = s[pos]
            if ch == "[":
                pos += 1
                u = sequence(",")
                if pos >= len(s) or s[pos] != ",":
                    raise WordSyntaxError(f"expected ',' in {text!r}")
                pos += 1
                v = sequence("]")
                if pos >= len(s) or s[pos] != "]":
                    raise WordSyntaxError(f"expected ']' in {text!r}")
                pos += 1
                factor = invert(u) + invert(v) + u + v
            elif ch == "(":
                pos += 1
                factor = sequence(")")
                if pos >= len(s) or s[pos] != ")":
                    raise WordSyntaxError(f"expected ')' in {text!r}")
                pos += 1
            elif ch.isalpha():
                pos += 1
                factor = letter(ch)
            else:
                raise WordSyntaxError(f"unexpected {ch!r} in {text!r}")
            out += _power(factor, exponent())
        return out

    w = sequence("")
    if pos != len(s):
        raise WordSyntaxError(f"trailing input in {text!r}")
    return _free_reduce(w)


def _free_reduce(w: Word) -> Word:
    out: Word = []
    for x in w:
        if out and out[-1] == _inv_letter(x):
            out.pop()
        else:
            out.append(x)
    return out


class _CosetTable:
    """Coset table with coincidence handling, after Holt-Eick-O'Brien."""

    def __init__(self, ngens: int, limit: int):
        self.ncols = 2 * ngens
        self.limit = limit
        self.rows: list[list[int]] = [[-1] * self.ncols]
        self.p: list[int] = [0]

    def define(self, c: int, x: int) -> None:
        if len(self.rows) >= self.limit:
            raise EnumerationOverflow(f"more than {self.limit} cosets defined")
        d = len(self.rows)
        self.rows.append([-1] * self.ncols)
        self.p.append(d)
        self.rows[c][x] = d
        self.rows[d][_inv_letter(x)] = c

    def rep(self, c: int) -> int:
        root = c
        while self.p[root] != root:
            root = self.p[root]
        while self.p[c] != root:
            self.p[c], c = root, self.p[c]
        return root

    def _merge(self, k: int, l: int, q: deque) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        mu, nu = min(k, l), max(k, l)
        self.p[nu] = mu
        q.append(nu)

    def coincidence(self, a: int, b: int) -> None:
        q: deque = deque()
        self._merge(a, b, q)
        while q:
            g = q.popleft()
            for x in range(self.ncols):
                d = self.rows[g][x]
                if d < 0:
                    continue
                xi = _inv_letter(x)
                self.rows[d][xi] = -1
                mu, nu = self.rep(g), self.rep(d)
                if self.rows[mu][x] >= 0:
                    self._merge(nu, self.rows[mu][x], q)
                elif self.rows[nu][xi] >= 0:
                    self._merge(mu, self.rows[nu][xi], q)
                else:
                    self.rows[mu][x] = nu
                    self.rows[nu][xi] = mu

    def live(self, c: int) -> bool:
        return self.p[c] == c

    def scan_and_fill(self, a: int, w: Word) -> None:
        rows = self.rows
        f, b = a, a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and rows[f][w[i]] >= 0:
                f = rows[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and rows[b][_inv_letter(w[j])] >= 0:
                b = rows[b][_inv_letter(w[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][w[i]] = b
                rows[b][_inv_letter(w[i])] = f
                return
            self.define(f, w[i])

    def enumerate(self, relators: Sequence[Word]) -> None:
        a = 0
        while a < len(self.rows):
            if self.live(a):
                for w in relators:
                    if not self.live(a):
                        break
                    self.scan_and_fill(a, w)
                if self.live(a):
                    for x in range(self.ncols):
                        if self.rows[a][x] < 0:
                            self.define(a, x)
            a += 1

    def compact(self) -> np.ndarray:
        """Live cosets renumbered in BFS order from coset 0."""
        live = [c for c in range(len(self.rows)) if self.live(c)]
        label = {0: 0}
        order = [0]
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for x in range(self.ncols):
                d = self.rep(self.rows[c][x])
                if d not in label:
                    label[d] = len(order)
                    order.append(d)
                    queue.append(d)
        if len(order) != len(live):
            raise GroupError("coset table is disconnected")
        return np.array([[label[self.rep(self.rows[c][x])] for x in range(self.ncols)] for c in order], dtype=np.int64)


def from_presentation(generators: int | Sequence[str], relators: Sequence[str | Word], order_bound: int = MAX_ORDER,
                      names: Sequence[str] | None = None) -> FiniteGroup:
    """Realise ``<generators | relators>`` as a multiplication table.

    Cosets of the trivial subgroup are enumerated (HLT strategy, at most
    20 000 cosets); element ``i`` is the coset reached by the BFS word of
    ``i``, so the identity is element 0.  ``generators`` is a count or a
    list of names (letters are always a, b, c, ... in order).
    """
    if not isinstance(generators, int):
        generators = len(generators)
    if order_bound > MAX_ORDER:
        raise ValueError(f"order_bound must be <= {MAX_ORDER}")
    words = [parse_word(r, generators) if isinstance(r, str) else _free_reduce(list(r)) for r in relators]
    words = [w for w in words if w]
    if generators == 0:
        return FiniteGroup(np.zeros((1, 1), dtype=np.int64), name="1")
    ct = _CosetTable(generators, MAX_COSETS)
    ct.enumerate(words)
    action = ct.compact()
    n = action.shape[0]
    if n > order_bound:
        raise EnumerationOverflow(f"group has order {n} > bound {order_bound}")
    # BFS words: element j is 0 * word[j]
    parent = [-1] * n
    letter = [-1] * n
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    bfs = [0]
    while queue:
        c = queue.popleft()
        for x in range(action.shape[1]):
            d = int(action[c, x])
            if not seen[d]:
                seen[d] = True
                parent[d], letter[d] = c, x
                bfs.append(d)
                queue.append(d)
    table = np.zeros((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for j in bfs[1:]:
        table[:, j] = action[table[:, parent[j]], letter[j]]
    return FiniteGroup(table, names=names, check=n <= 256)
