import json
import pathlib

import adestar
import pytest

jsonschema = pytest.importorskip("jsonschema")

SCHEMAS = pathlib.Path(__file__).resolve().parents[2] / "docs" / "schemas"


def check(name, doc):
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.validate(doc, schema)


def cli(*args):
    code, out, err = adestar.run(*args)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("artifacts")
    system, gauge = d / "system.json", d / "gauge.json"
    assert adestar.run("synth", "--preset", "D4", "--out", system)[0] == 0
    assert adestar.run("trivialize", "--system", system, "--h", "0.1", "--out", gauge)[0] == 0
    return str(system), str(gauge)


def test_group_artifacts():
    check("group", cli("group", "--kind", "BT"))
    check("irreps", cli("irreps", "--kind", "BO"))
    check("mckay", cli("mckay", "--kind", "BI"))
    check("orbits", cli("orbits", "--kind", "BI"))
    check("domain", cli("domain", "--kind", "BT", "--h", "0.2"))
    check("blocks", cli("blocks", "--kind", "BT", "--irrep", "3", "--point", "0,0,1"))
    check("exceptional", cli("exceptional", "--kind", "BO"))


def test_system_artifacts(files):
    system, gauge = files
    check("system", json.loads(pathlib.Path(system).read_text()))
    check("gauge", json.loads(pathlib.Path(gauge).read_text()))
    check("representation", cli("rep-at", "--system", system, "--point", "0.6,0,0.8"))
    check("catalog", cli("classify", "--system", system))
    check("report", cli("verify", "--system", system, "--gauge", gauge))
    check("transport", cli("apply-gauge", "--system", system, "--gauge", gauge, "--samples"))
