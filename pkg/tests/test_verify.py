import json

from h4matroid.verify import ACCEPTANCE_IDS, CLAIM_IDS, Verifier, tampered_columns


def test_claim_registry():
    assert len(ACCEPTANCE_IDS) == 21
    assert len(CLAIM_IDS) == len(set(CLAIM_IDS)) >= 25
    assert CLAIM_IDS[:21] == ACCEPTANCE_IDS


def test_report_is_deterministic():
    only = ["ground_set", "orthoframes", "reflections"]
    a = Verifier().run(only=only).to_json(timings=False)
    b = Verifier().run(only=only).to_json(timings=False)
    assert a == b
    doc = json.loads(a)
    assert [c["id"] for c in doc["claims"]] == only
    assert set(doc["claims"][0]) == {"id", "anchor", "expected", "computed", "status"}


def test_tampering_is_detected():
    report = Verifier(tampered_columns(10, 3)).run(only=["ground_set", "line_census", "plane_census", "orthoframes"])
    assert not report.passed
    assert report.summary()["failed"] >= 1


def test_errors_become_failures():
    # a table of three columns cannot support the later claims; they must fail, not raise
    cols = tampered_columns(0, 0)[:3]
    report = Verifier(cols).run(only=["ground_set", "plane_census", "group_orders"])
    assert [c.passed for c in report.claims] == [False, False, False]
