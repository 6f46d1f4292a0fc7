import copy
import json

import pytest

from bmcert import catalog
from bmcert.certify import (
    Certificate,
    FieldSpecError,
    UnresolvableGroup,
    certify_integral_hasse,
    certify_strong_approx,
    replay,
    resolve_group,
    verify_q8_proposition,
)

SA_CHECKS = ["order_nonabelian", "central_derived_cyclic", "pushed_restriction_split", "rigidity", "roots_of_unity"]
HASSE_CHECKS = SA_CHECKS + ["sl_representation", "field_hypothesis", "p_unit", "cokernel"]


@pytest.fixture(scope="module")
def q8_hasse():
    return certify_integral_hasse("Q8", 2, 3, {"quadratic": -84}, [2])


def _consistent(cert):
    return all(r == p for r, p in replay(json.loads(cert.dumps())).values())


def test_q8_proposition():
    cert = verify_q8_proposition()
    assert cert.verdict
    assert [c.name for c in cert.checks] == [
        "h2_order",
        "two_types",
        "split_type_direct_product",
        "nonsplit_type_presentation",
        "center_pullback_split",
        "rigidity",
    ]
    assert all(c.status == "pass" and c.computed for c in cert.checks)
    assert _consistent(cert)


def test_strong_approx_q8_and_z8():
    cert = certify_strong_approx("Q8", 2, 3)
    assert cert.verdict and [c.name for c in cert.checks] == SA_CHECKS
    assert cert.check("roots_of_unity").status == "declared"
    assert not cert.check("roots_of_unity").computed
    assert _consistent(cert)
    bad = certify_strong_approx("Z8", 2, 3)
    assert not bad.verdict
    assert bad.check("order_nonabelian").status == "fail"
    assert _consistent(bad)


def test_strong_approx_wrong_order_fails():
    assert not certify_strong_approx("Q8", 2, 4).verdict
    assert not certify_strong_approx("Q8", 3, 2).verdict


@pytest.mark.slow
def test_strong_approx_heisenberg():
    cert = certify_strong_approx("Heis3", 3, 3)
    assert cert.verdict
    assert _consistent(cert)


def test_class_level_only_mode():
    cert = certify_strong_approx("D8", 2, 4, group_level=False)
    assert cert.verdict
    assert _consistent(cert)


def test_integral_hasse_quadratic(q8_hasse):
    cert = q8_hasse
    assert cert.verdict and [c.name for c in cert.checks] == HASSE_CHECKS
    assert all(c.status == "pass" for c in cert.checks if c.computed)
    assert cert.check("p_unit").status == "declared"
    assert cert.check("field_hypothesis").witness["s_class_group"]["structure"] == [2]
    assert _consistent(cert)


@pytest.mark.parametrize(
    "args, failing",
    [
        (("Q8", 2, 3, {"quadratic": -4}, []), "field_hypothesis"),
        (("Q8", 2, 3, {"quadratic": -84}, []), "p_unit"),
        (("Z8", 2, 3, {"quadratic": -84}, [2]), "order_nonabelian"),
        (("Q32", 2, 5, {"cyclotomic": 64}, [2]), "field_hypothesis"),
    ],
)
def test_integral_hasse_mutations(args, failing):
    cert = certify_integral_hasse(*args)
    assert not cert.verdict
    assert cert.check(failing).status == "fail"
    assert _consistent(cert)


def test_cyclotomic_irregular_prime_path():
    # 37 is irregular; a non-abelian group of order 37^n is not in the catalog,
    # so the field check is exercised on its own: the group check fails but the
    # field hypothesis is computed and passes.
    cert = certify_integral_hasse("Q8", 37, 3, {"cyclotomic": 37 * 37}, [37])
    assert cert.check("field_hypothesis").status == "pass"
    assert cert.check("field_hypothesis").witness["indices"] == [32]
    assert not cert.verdict


def test_errors():
    with pytest.raises(UnresolvableGroup):
        resolve_group("NoSuchGroup")
    with pytest.raises(FieldSpecError):
        certify_integral_hasse("Q8", 2, 3, {"real": 5}, [2])
    with pytest.raises(FieldSpecError):
        certify_integral_hasse("Q8", 2, 3, {"quadratic": 5}, [2])


def test_json_round_trip_and_stability(q8_hasse):
    data = json.loads(q8_hasse.dumps())
    again = Certificate.from_json(data)
    assert again.dumps() == q8_hasse.dumps()
    other = certify_integral_hasse("Q8", 2, 3, {"quadratic": -84}, [2])
    a, b = q8_hasse.to_json(), other.to_json()
    a.pop("timestamp"), b.pop("timestamp")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    for c in data["checks"]:
        assert c["anchor"] and c["statement"]


def test_replay_detects_tampering(q8_hasse):
    data = json.loads(q8_hasse.dumps())
    bad = copy.deepcopy(data)
    rec = next(c for c in bad["checks"] if c["name"] == "pushed_restriction_split")
    cochain = rec["witness"]["classes"][-1]["cochain"]
    cochain[1] = (cochain[1] + 1) % 16
    result = replay(bad)
    assert result["pushed_restriction_split"] == (True, False)
    bad = copy.deepcopy(data)
    rec = next(c for c in bad["checks"] if c["name"] == "sl_representation")
    mats = rec["witness"]["representation"]["matrices"]
    mats["1"], mats["2"] = mats["2"], mats["1"]
    assert replay(bad)["sl_representation"] == (True, False)


def test_group_from_table_file(tmp_path):
    Q = catalog.get("Q8")
    path = tmp_path / "q8.json"
    path.write_text(json.dumps({"table": Q.table.tolist()}))
    cert = certify_strong_approx(str(path), 2, 3)
    assert cert.verdict
