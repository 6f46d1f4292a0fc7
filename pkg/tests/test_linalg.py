import itertools

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from bmcert.finab import FinAb, FinAbHom, invariant_form
from bmcert.linalg import LocalSmith, factorize, smith


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@given(matrices)
def test_smith_is_a_diagonalisation_with_divisibility(A):
    diag, P, Pinv, Q = smith(A)
    D = matmul(matmul(P, A), Q)
    m, n = len(A), len(A[0])
    for i in range(m):
        for j in range(n):
            assert D[i][j] == (diag[i] if i == j else 0)
    assert matmul(P, Pinv) == [[int(i == j) for j in range(m)] for i in range(m)]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))


@given(matrices)
def test_smith_determinantal_divisors(A):
    # product of the first k invariant factors is the gcd of k x k minors
    diag, *_ = smith(A)
    m, n = len(A), len(A[0])
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                M = np.array([[A[r][c] for c in cols] for r in rows], dtype=object)
                g = np.gcd(g, int(round(np.linalg.det(M.astype(float))))) if k <= 3 else g
        if k <= 3:
            assert int(np.prod(diag[:k], dtype=object)) == g


def brute_kernel(C, q):
    n = C.shape[1]
    return {v for v in itertools.product(range(q), repeat=n) if not (C @ np.array(v) % q).any()}


@given(st.sampled_from([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)]), st.data())
def test_local_smith_kernel_matches_enumeration(pk, data):
    p, k = pk
    q = p**k
    rows = data.draw(st.integers(1, 4))
    cols = data.draw(st.integers(1, 3))
    C = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows)))
    ls = LocalSmith.of(C, p, k, chunk=2)
    orders, gens = ls.kernel()
    kern = brute_kernel(C, q)
    assert int(np.prod(orders)) == len(kern)
    span = set()
    for coeffs in itertools.product(*(range(o) for o in orders)):
        v = tuple(int(x) for x in (gens @ np.array(coeffs, dtype=np.int64)) % q) if orders else (0,) * cols
        span.add(v)
    assert span == kern
    for v in list(kern)[:10]:
        c = ls.kernel_coords(np.array(v))
        back = (gens @ c.astype(np.int64)) % q if orders else np.zeros(cols, dtype=np.int64)
        assert tuple(int(x) for x in back) == v


def test_factorize():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(97) == {97: 1}


@given(st.lists(st.integers(2, 40), max_size=4))
def test_invariant_form_preserves_order_and_divides(orders):
    G, P, Pinv = invariant_form(orders)
    assert G.order == int(np.prod(orders, dtype=object)) if orders else G.order == 1
    m = G.moduli
    assert all(b % a == 0 for a, b in zip(m, m[1:]))


def test_finab_quotient_and_mod():
    A = FinAb([2, 4])
    Q, proj = A.quotient([[0, 2]])
    assert Q.moduli == (2, 2)
    assert A.mod(2).moduli == (2, 2)
    assert FinAb([3]).mod(2).is_trivial()
    assert FinAb([4, 6]).invariant_factors().moduli == (2, 12)


def test_finab_hom_cyclic():
    phi = FinAbHom.cyclic(8, 16, 2)
    assert phi([3]).tolist() == [6]
    assert phi([8]).tolist() == [0]
