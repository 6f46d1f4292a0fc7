import json
import subprocess
import sys

import pytest

from bmcert.cli import EXIT_FALSE, EXIT_OK, EXIT_USAGE, main


def test_verify_q8_writes_certificate(tmp_path, capsys):
    out = tmp_path / "q8.json"
    assert main(["verify-q8", "--json", str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert data["verdict"] is True and len(data["checks"]) == 6
    assert main(["replay", str(out)]) == EXIT_OK
    assert "MISMATCH" not in capsys.readouterr().out


def test_replay_flags_a_forged_verdict(tmp_path, capsys):
    out = tmp_path / "z8.json"
    assert main(["certify-af", "--group", "Z8", "-p", "2", "-n", "3", "--json", str(out)]) == EXIT_FALSE
    data = json.loads(out.read_text())
    data["checks"][0]["status"] = "pass"
    out.write_text(json.dumps(data))
    assert main(["replay", str(out)]) == EXIT_FALSE
    assert "MISMATCH order_nonabelian" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv, code",
    [
        (["certify-hasse", "--group", "Q8", "-p", "2", "-n", "3", "--quadratic", "-84", "--s-primes", "2"], EXIT_OK),
        (["certify-hasse", "--group", "Q8", "-p", "2", "-n", "3", "--quadratic", "-4"], EXIT_FALSE),
        (["certify-hasse", "--group", "Z8", "-p", "2", "-n", "3", "--quadratic", "-84", "--s-primes", "2"], EXIT_FALSE),
        (["certify-hasse", "--group", "Q32", "-p", "2", "-n", "5", "--cyclotomic", "64", "--s-primes", "2"], EXIT_FALSE),
        (["certify-hasse", "--group", "Q8", "-p", "2", "-n", "3"], EXIT_USAGE),
        (["certify-hasse", "--group", "Q8", "-p", "2", "-n", "3", "--quadratic", "-12"], EXIT_USAGE),
        (["certify-af", "--group", "Q8", "-p", "2", "-n", "3"], EXIT_OK),
        (["certify-af", "--group", "NoSuchGroup", "-p", "2", "-n", "3"], EXIT_USAGE),
        (["h2", "--group", "Q8", "--coeffs", "8"], EXIT_OK),
        (["h2", "--group", "Q8"], EXIT_USAGE),
        (["extensions", "--group", "Q8", "-p", "2", "-n", "3"], EXIT_OK),
        (["restrict", "--group", "Q8"], EXIT_OK),
        (["induce", "--group", "Q8", "--quiet"], EXIT_OK),
        (["induce", "--group", "Q8", "-k", "2"], EXIT_USAGE),
        (["classgroup", "--disc", "-84", "--s-primes", "2", "-p", "2"], EXIT_OK),
        (["classgroup", "--disc", "7"], EXIT_USAGE),
        (["irregular", "-p", "37"], EXIT_OK),
        (["irregular", "--below", "60"], EXIT_OK),
        (["irregular", "-p", "4"], EXIT_USAGE),
        (["irregular"], EXIT_USAGE),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_json_outputs(tmp_path, capsys):
    p = tmp_path / "x.json"
    main(["h2", "--group", "Q8", "--coeffs", "8", "--json", str(p)])
    assert json.loads(p.read_text())["order"] == 4
    main(["classgroup", "--disc", "-84", "--json", str(p)])
    data = json.loads(p.read_text())
    assert data["h"] == 4 and data["forms"] == [[1, 0, 21], [2, 2, 11], [3, 0, 7], [5, 4, 5]]
    main(["irregular", "-p", "691", "--json", str(p)])
    assert json.loads(p.read_text()) == {"p": 691, "irregular": True, "indices": [12, 200]}
    main(["irregular", "--below", "163", "--json", str(p)])
    assert json.loads(p.read_text())["irregular"] == [37, 59, 67, 101, 103, 131, 149, 157]
    main(["extensions", "--group", "Q8", "--coeffs", "8", "--json", str(p)])
    assert len(json.loads(p.read_text())["types"]) == 2


def test_argparse_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == EXIT_USAGE


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "bmcert", "verify-q8"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "verdict PASS" in r.stdout
