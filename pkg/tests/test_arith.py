import itertools
import time

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from bmcert.arith import (
    BadDegree,
    InertPrime,
    NotFundamental,
    NotImaginary,
    QuadForm,
    bernoulli_exact,
    bernoulli_mod_p,
    class_group,
    class_number_analytic,
    coker_diagram,
    compose,
    irregular_indices_exact,
    is_fundamental,
    is_irregular,
    irregularity_json,
    kronecker,
    prime_class,
    reduced_forms,
    s_class_group,
)
from bmcert.finab import FinAb

FUNDAMENTAL = [D for D in range(-3, -501, -1) if is_fundamental(D)]


def test_fundamental_discriminants():
    assert FUNDAMENTAL[:8] == [-3, -4, -7, -8, -11, -15, -19, -20]
    assert not is_fundamental(-12) and not is_fundamental(-16) and not is_fundamental(-1)


@pytest.mark.parametrize("D", FUNDAMENTAL)
def test_class_number_matches_analytic_formula(D):
    assert len(reduced_forms(D)) == class_number_analytic(D)


def test_kronecker_matches_sympy_jacobi_for_odd_moduli():
    for D in FUNDAMENTAL[:60]:
        for n in range(1, 80, 2):
            assert kronecker(D, n) == sympy.jacobi_symbol(D % n, n) if n > 1 else kronecker(D, n) == 1


@pytest.mark.parametrize("D", [D for D in FUNDAMENTAL if D > -300])
def test_composition_group_axioms(D):
    C = class_group(D)
    forms = C.forms
    e = forms[0]
    for f in forms:
        assert f.is_reduced() and f.is_primitive() and f.discriminant == D
        assert compose(e, f) == f
        assert compose(f, f.inverse()) == e
    for f, g in itertools.product(forms, repeat=2):
        assert compose(f, g) == compose(g, f)
    for f, g, k in itertools.product(forms[:6], repeat=3):
        assert compose(compose(f, g), k) == compose(f, compose(g, k))


def _represented(f, bound=6):
    return {f.evaluate(x, y) for x in range(-bound, bound + 1) for y in range(-bound, bound + 1)} - {0}


@pytest.mark.parametrize("D", [-23, -56, -84, -231, -420])
def test_composition_multiplies_represented_values(D):
    forms = class_group(D).forms
    for f, g in itertools.product(forms, repeat=2):
        h = compose(f, g)
        prods = {a * b for a in _represented(f, 3) for b in _represented(g, 3)}
        small = {n for n in prods if n < 200}
        assert small <= _represented(h, 20)


def test_q_sqrt_minus_21():
    t = time.perf_counter()
    C = class_group(-84)
    assert C.h == 4
    assert C.structure.to_json() == [2, 2]
    assert set(map(tuple, (f.to_json() for f in C.forms))) == {(1, 0, 21), (2, 2, 11), (3, 0, 7), (5, 4, 5)}
    S = s_class_group(C, [2])
    assert S.structure.to_json() == [2]
    assert S.mod_p_nonzero(2)
    assert prime_class(-84, 2) == QuadForm(2, 2, 11)
    assert time.perf_counter() - t < 1.0


def test_known_class_groups():
    assert class_group(-23).structure.to_json() == [3]
    assert class_group(-4).h == 1
    assert class_group(-3299).structure.to_json() == [3, 9]
    with pytest.raises(NotFundamental):
        class_group(-5)  # -5 is not 0 or 1 mod 4


def test_prime_classes_and_errors():
    assert prime_class(-84, 5) == QuadForm(5, 4, 5)
    assert prime_class(-84, 11) == QuadForm(2, 2, 11)  # 11 splits and lies in the class of (2,2,11)
    assert kronecker(-84, 13) == -1
    assert prime_class(-84, 13) is None
    with pytest.raises(InertPrime):
        s_class_group(class_group(-84), [13])
    with pytest.raises(NotFundamental):
        class_group(-12)
    with pytest.raises(NotImaginary):
        class_group(5)


def test_s_class_group_trivial_cases():
    C = class_group(-4)
    assert not s_class_group(C, []).mod_p_nonzero(2)
    C = class_group(-23)
    assert s_class_group(C, []).mod_p_nonzero(3)
    assert not s_class_group(C, [2]).mod_p_nonzero(3)  # primes above 2 are non-principal


def test_bernoulli_exact_small_values():
    B = bernoulli_exact(12)
    assert B[1] == sympy.Rational(-1, 2)
    assert [B[k] for k in (2, 4, 6, 12)] == [sympy.Rational(1, 6), sympy.Rational(-1, 30), sympy.Rational(1, 42), sympy.Rational(-691, 2730)]


@pytest.mark.parametrize("p", list(sympy.primerange(5, 101)))
def test_bernoulli_mod_p_dual_algorithms(p):
    modular = bernoulli_mod_p(p)
    for k, b in modular.items():
        exact = sympy.bernoulli(k)
        assert (exact.p - b * exact.q) % p == 0
    assert [k for k, b in modular.items() if b == 0] == irregular_indices_exact(p)


def test_irregular_primes_below_163():
    irr = [p for p in sympy.primerange(3, 163) if is_irregular(p)[0]]
    assert irr == [37, 59, 67, 101, 103, 131, 149, 157]
    assert is_irregular(37) == (True, [32])
    assert is_irregular(691)[1] == [12, 200]
    assert irregularity_json(3) == {"p": 3, "irregular": False, "indices": []}


def test_irregular_input_errors():
    for bad in (2, 9, 1, 10007):
        with pytest.raises(ValueError):
            is_irregular(bad)


def test_coker_diagram():
    assert not coker_diagram(FinAb([2]), 2, 4).i_star_surjective
    assert coker_diagram(FinAb([]), 2, 4).i_star_surjective
    assert coker_diagram(FinAb([3]), 2, 4).i_star_surjective
    assert not coker_diagram(FinAb([2, 4]), 2, 8).i_star_surjective
    with pytest.raises(BadDegree):
        coker_diagram(FinAb([2]), 2, 2)
    with pytest.raises(BadDegree):
        coker_diagram(FinAb([2]), 3, 4)


@given(st.sampled_from(FUNDAMENTAL[:80]), st.integers(1, 10), st.integers(-10, 10), st.integers(-10, 10))
def test_reduction_preserves_represented_values(D, a, x, y):
    f = reduced_forms(D)[a % len(reduced_forms(D))]
    # an equivalent non-reduced form via the substitution (x, y) -> (x + t y, y)
    t = a
    g = QuadForm(f.a, f.b + 2 * f.a * t, f.evaluate(t, 1))
    assert g.discriminant == D
    assert g.reduce() == f
    assert g.evaluate(x, y) == f.evaluate(x + t * y, y)
