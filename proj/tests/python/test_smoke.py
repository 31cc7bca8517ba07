import json

import pytest

import weil


def test_names_and_version():
    assert "weil-fourfold" in weil.fixture_names()
    assert weil.__version__


@pytest.mark.parametrize(
    "name,overall",
    [
        ("weil-fourfold", "Exceptional"),
        ("type1-surface", "Decomposable"),
        ("product-odd", "Exceptional"),
        ("remark-v", "Exceptional"),
    ],
)
def test_examples_classify(name, overall):
    doc = weil.example(name)
    assert weil.validate(doc) == []
    assert weil.classify(doc)["report"]["overall"] == overall


def test_report_is_deterministic():
    doc = weil.example("product-odd")
    assert weil.classify(doc, raw=True) == weil.classify(doc, threads=4, raw=True)
    text = json.dumps(doc)
    assert weil.classify(text)["input_sha256"] == weil.sha256(text)


def test_oracles():
    weil4 = weil.example("weil-fourfold")
    assert weil.oracle("wedge", weil4)["dim_w_f"] == 2
    comps = weil.oracle("hodge-type", weil4)["components"]
    assert [(c["p"], c["q"]) for c in comps] == [(2, 2), (2, 2)]
    assert weil.oracle("witness", weil4)["found"] is False
    assert weil.oracle("witness", weil.example("type1-surface"))["found"] is True
    report = weil.classify(weil4, oracle=True)
    assert report["oracle"]["hodge_type"]["agrees"] is True


def test_hodge_test():
    assert weil.hodge_test([2, 2], [1, 0]) == (True, None)
    assert weil.hodge_test([1, 0], [1, 0]) == (False, 0)


def test_errors():
    with pytest.raises(weil.WeilError):
        weil.example("unknown")
    doc = weil.example("weil-fourfold")
    doc["multiplicities"]["X"] = [3, 2]
    violations = weil.validate(doc)
    assert violations and violations[0][0] == "multiplicities.X[0]"
    doc["factors"][0]["albert_type"] = "V"
    with pytest.raises(weil.WeilError, match=r"factors\[0\]\.albert_type"):
        weil.classify(doc)
