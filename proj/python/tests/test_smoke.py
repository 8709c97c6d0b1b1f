import adestar
import pytest


def test_group_and_mckay():
    g = adestar.group("BI")
    assert g["order"] == 120
    graph = adestar.mckay("BD", 2)
    assert graph["type"] == "D~4"
    assert graph["lambda"] == [1, 1, 1, 1, -2]


def test_orbits_and_exceptional():
    assert len(adestar.orbits("BT")) == 3
    e = adestar.exceptional("BO")
    assert sum(x["dim"] > 1 for x in e["exceptional"]) == 1
    assert [l["norm_squared"] for l in e["labelings"]] == [4.0, 8.0]


def test_unknown_kind_raises():
    with pytest.raises(adestar.AdestarError):
        adestar.group("XX")


def test_d4_pipeline():
    assert "D4" in adestar.preset_names()
    system = adestar.synthesize("D4", seed=3)
    assert adestar.verify(system)["worst"] <= 1e-6
    rep = adestar.rep_at(system, [0.6, 0.0, 0.8])
    assert len(rep["matrices"]) == 4
    catalog = adestar.classify(system)
    assert catalog["generic"]["dim"] == 2
    gauge = adestar.trivialize(system, 0.1)
    assert gauge["report"]["worst"] <= 1e-6


def test_run_matches_library():
    code, out, _ = adestar.run("mckay", "--kind", "BT")
    assert code == 0
    assert '"E~6"' in out
    assert adestar.run("nonsense")[0] == 1
