import json
from pathlib import Path

import numpy as np

from bivmoments import decompose, moments_report, preset, synthesize_scenario

GOLDEN = Path(__file__).resolve().parent.parent / "docs" / "golden_report.json"


def fresh_report():
    record, _ = synthesize_scenario(preset("paper-like", samples=240, seed=1))
    return moments_report(decompose(record))


def write_golden():
    GOLDEN.write_text(json.dumps(fresh_report(), indent=1) + "\n", encoding="utf-8")


def compare(a, b, path="report"):
    if isinstance(b, dict):
        assert isinstance(a, dict) and set(a) == set(b), f"{path}: keys {sorted(a)} != {sorted(b)}"
        for k in b:
            compare(a[k], b[k], f"{path}.{k}")
    elif isinstance(b, list):
        assert isinstance(a, list) and len(a) == len(b), path
        if b and all(isinstance(v, (bool, str)) for v in b):
            assert a == b, path
            return
        none_a = [v is None for v in a]
        assert none_a == [v is None for v in b], f"{path}: undefined entries moved"
        fa = np.array([0.0 if v is None else v for v in a])
        fb = np.array([0.0 if v is None else v for v in b])
        np.testing.assert_allclose(fa, fb, rtol=1e-8, atol=1e-12, err_msg=path)
    elif isinstance(b, float):
        assert np.isclose(a, b, rtol=1e-8, atol=1e-12), f"{path}: {a} != {b}"
    else:
        assert a == b, f"{path}: {a!r} != {b!r}"


def test_report_matches_golden():
    golden = json.loads(GOLDEN.read_text(encoding="utf-8"))
    # a JSON roundtrip puts the fresh report in the same types as the file
    compare(json.loads(json.dumps(fresh_report())), golden)


def test_golden_documents_every_key():
    doc = (GOLDEN.parent / "report_schema.md").read_text(encoding="utf-8")
    golden = json.loads(GOLDEN.read_text(encoding="utf-8"))
    for key in golden:
        assert f"`{key}" in doc
    for key in golden["series"]:
        assert f"`series.{key}`" in doc
    for key in golden["global"]:
        assert f"`global.{key}`" in doc
