import io
import json
import subprocess
import sys

import pytest

import wronskforms.cli as cli
from wronskforms.errors import IdentityFails


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv(cli.CACHE_ENV, raising=False)


def test_char_json_round_trip():
    code, text = run("char", "affine", "--level", "1", "--index", "1", "--terms", "5")
    assert code == 0
    payload = json.loads(text)
    assert cli.dumps(payload) + "\n" == text
    assert payload["c"] == "1" and payload["h"] == "0"
    assert payload["terms"][0] == [-1, "1"] and payload["lattice_den"] == 24


def test_char_monic_flag():
    _, text = run("char", "affine", "--level", "2", "--index", "3", "--terms", "3", "--monic")
    assert json.loads(text)["terms"][0][1] == "1"
    _, text = run("char", "virasoro", "--p", "2", "--pp", "5", "--r", "1", "--s", "2", "--terms", "3")
    assert json.loads(text)["h"] == "-1/5"


def test_fv_vanishing():
    code, text = run("fv", "affine", "--level", "6", "--terms", "20")
    assert code == 0 and json.loads(text)["vanishes"] is True
    code, text = run("fv", "affine", "--level", "6", "--terms", "20", "--format", "plain")
    assert "vanishes: True" in text


def test_fv_decompose_and_zeros():
    code, text = run("fv", "affine", "--level", "8", "--decompose", "--zeros", "--terms", "30")
    payload = json.loads(text)
    assert payload["decomposition"]["G"]["coeffs"] == ["-8696400/20119", "1"]
    assert payload["zeros"]["roots"][0]["approx"] == "432.2481237"


def test_wronskian_verify_eta():
    code, text = run("wronskian", "virasoro", "--p", "2", "--pp", "5", "--terms", "10", "--verify-eta")
    payload = json.loads(text)
    assert code == 0 and payload["eta_closed_form"] is True
    assert payload["weight"] == 4


def test_identity_commands():
    code, text = run("identity", "affine", "--i", "2", "--terms", "30")
    assert code == 0 and json.loads(text)["reading"] == "i(2j+1)"
    code, text = run("identity", "virasoro", "--pt", "1", "--ppt", "3", "--terms", "30")
    assert code == 0 and json.loads(text)["constant"] == "1"


def test_failed_identity_exit_code(monkeypatch):
    def boom(i, order):
        raise IdentityFails("forced", (0, 1))

    monkeypatch.setattr(cli, "verify_affine_identity", boom)
    code, text = run("identity", "affine", "--i", "2")
    assert code == 1 and json.loads(text)["holds"] is False


def test_congruence_command():
    code, text = run("congruence", "--level", "2", "--hasse", "--mod-p2-probe", "--terms", "30")
    payload = json.loads(text)
    assert code == 0
    assert payload["p"] == 7
    assert payload["reports"]["hasse"]["kind"] == "evidence"
    assert set(payload["reports"]) == {"theta", "jacobi_moment", "f_integrality", "hasse", "mod_p2_probe"}


def test_usage_errors():
    assert run("nope")[0] == 2
    assert run("char", "affine", "--level", "1")[0] == 2
    assert run("char", "affine", "--level", "1", "--index", "9")[0] == 2
    assert run("congruence", "--level", "3")[0] == 2
    assert run("fv", "virasoro", "--p", "4", "--pp", "6")[0] == 2
    assert run("table", "--terms", "0")[0] == 2


def test_table_markdown():
    code, text = run("table", "--kmax", "11", "--format", "markdown", "--jobs", "3")
    assert code == 0
    for g in ["j - 1302528/1075", "j - 787021824/587489", "j - 8696400/20119",
              "j - 956352/2021",
              "j^2 - 20462710947840/13928908741*j + 1908473415598080/13928908741"]:
        assert g in text
    assert "| 6 | 14 | 0 | 2 | 1 | 0 |" in text
    assert text.startswith("| k | weight | t | delta | epsilon |")


def test_cache_hits_are_identical(tmp_path, monkeypatch):
    args = ("wronskian", "affine", "--level", "3", "--terms", "15")
    cold = run(*args, "--cache-dir", str(tmp_path))
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and not files[0].name.endswith(".tmp")
    warm = run(*args, "--cache-dir", str(tmp_path))
    assert cold == warm
    assert run(*args) == cold
    # environment override
    env_dir = tmp_path / "env"
    monkeypatch.setenv(cli.CACHE_ENV, str(env_dir))
    assert run(*args) == cold
    assert len(list(env_dir.iterdir())) == 1


def test_cache_key_includes_terms(tmp_path):
    run("fv", "affine", "--level", "2", "--terms", "5", "--cache-dir", str(tmp_path))
    run("fv", "affine", "--level", "2", "--terms", "6", "--cache-dir", str(tmp_path))
    assert len(list(tmp_path.iterdir())) == 2


def test_suite_subset():
    code, text = run("suite", "--only", "8", "--format", "plain")
    assert code == 0
    assert text.strip() == "[PASS] criterion 8 (assertion): quasimodular E_{2m,3}"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wronskforms", "char", "affine", "--level", "2",
                           "--index", "1", "--terms", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["spec"] == {"i": 1, "k": 2}
