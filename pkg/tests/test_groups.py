import numpy as np
import pytest

from bmcert import catalog
from bmcert.groups import (
    AbelianInput,
    GroupError,
    NotPGroup,
    abelian_invariants_by_orders,
    abelian_structure,
    abelianization,
    center,
    derived_subgroup,
    direct_product,
    find_central_derived_cyclic,
    isomorphic,
    prime_power,
    quotient,
    FiniteGroup,
)
from bmcert.presentation import EnumerationOverflow, WordSyntaxError, from_presentation, parse_word


@pytest.mark.parametrize("name", catalog.names())
def test_catalog_groups_are_groups(name):
    G = catalog.get(name)
    G.validate() if G.order <= 64 else None
    assert G.table[0].tolist() == list(range(G.order))


def test_catalog_orders():
    expected = {"V4": 4, "D4": 8, "D8": 16, "D16": 32, "D32": 64, "Q8": 8, "Q16": 16, "Q32": 32, "Q64": 64,
                "M16": 16, "M32": 32, "M64": 64, "Heis2": 8, "Heis3": 27, "Heis5": 125, "Ext2": 8, "Ext3": 27, "Ext5": 125}
    for name, n in expected.items():
        assert catalog.get(name).order == n


def test_invalid_table_rejected():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])


def test_q8_basic_structure():
    Q = catalog.get("Q8")
    assert center(Q).order == 2
    assert derived_subgroup(Q).members == center(Q).members
    assert sorted(Q.element_orders.tolist()) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert abelianization(Q).moduli == (2, 2)
    assert Q.names[1] == "-1" and Q.mul(2, 2) == 1


def test_known_isomorphisms():
    assert isomorphic(catalog.get("Heis2"), catalog.get("D4")) is not None
    assert isomorphic(catalog.get("Ext2"), catalog.get("Q8")) is None
    assert isomorphic(catalog.get("Ext2"), catalog.get("D4")) is not None
    assert isomorphic(catalog.get("Q8"), catalog.get("D4")) is None
    assert isomorphic(catalog.get("Heis3"), catalog.get("Ext3")) is None


def test_isomorphism_witness_is_iso():
    G = catalog.get("D8")
    rng = np.random.default_rng(0)
    perm = np.concatenate([[0], 1 + rng.permutation(G.order - 1)])
    inv = np.argsort(perm)
    table = perm[G.table[np.ix_(inv, inv)]]
    H = FiniteGroup(table)
    phi = isomorphic(G, H)
    assert phi is not None and phi.is_homomorphism() and phi.is_injective()


def test_find_central_derived_cyclic():
    for G in catalog.p_groups(125):
        p = prime_power(G.order)[0]
        Z = find_central_derived_cyclic(G, p)
        assert Z.order == p and Z.is_central() and Z <= derived_subgroup(G)
    with pytest.raises(AbelianInput):
        find_central_derived_cyclic(catalog.get("Z8"), 2)
    with pytest.raises(NotPGroup):
        find_central_derived_cyclic(catalog.get("Q8"), 3)


def test_quotient_and_product():
    Q = catalog.get("Q8")
    R, proj = quotient(Q, center(Q))
    assert R.order == 4 and R.is_abelian() and proj.is_homomorphism()
    P = direct_product(catalog.get("Z2"), catalog.get("Z4"))
    assert abelian_structure(P)[0].moduli == (2, 4)


@pytest.mark.parametrize("name", ["Z12", "V4", "Z30"])
def test_abelian_structure_agrees_with_order_counting(name):
    G = catalog.get(name)
    A, coords = abelian_structure(G)
    assert A.is_isomorphic(abelian_invariants_by_orders(G))
    # coords is a homomorphism onto A and a bijection
    t = G.table
    for g in range(G.order):
        for h in range(G.order):
            assert (A.reduce(coords[g] + coords[h]) == coords[t[g, h]]).all()
    assert len({tuple(c) for c in coords.tolist()}) == G.order


def test_presentation_parse_and_enumerate():
    assert parse_word("a2B", 2) == parse_word("aab^-1", 2)
    assert parse_word("[a,b]", 2) == parse_word("ABab", 2)
    with pytest.raises(WordSyntaxError):
        parse_word("c", 2)
    G = from_presentation(2, ["a4", "a2B2", "Baba"])
    assert isomorphic(G, catalog.get("Q8")) is not None
    P = from_presentation(["a", "b"], ["a16", "b4", "[a,b]b-2"])
    assert P.order == 64
    assert from_presentation(1, ["a7"]).order == 7
    with pytest.raises(EnumerationOverflow):
        from_presentation(2, ["a2", "b3"], order_bound=100)


def test_load_from_json(tmp_path):
    f = tmp_path / "g.json"
    f.write_text('{"presentation": {"generators": ["a", "b"], "relators": ["a4", "a2B2", "Baba"]}}')
    G = catalog.load(str(f))
    assert G.order == 8
