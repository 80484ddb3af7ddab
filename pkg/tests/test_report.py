import json

from smallres.algebra import Ring
from smallres.report import FAIL, PARTIAL, PASS, SKIPPED, VerificationReport


def test_status_ordering():
    rep = VerificationReport("r")
    assert rep.status == SKIPPED
    rep.add("a", "claim", True)
    rep.add("b", "claim", SKIPPED)
    assert rep.status == PASS
    rep.add("c", "claim", PARTIAL)
    assert rep.status == PARTIAL
    rep.add("d", "claim", False, ok=1)
    assert rep.status == FAIL and [c.name for c in rep.failures()] == ["c", "d"]


def test_json_is_stable(tmp_path):
    R = Ring.of("x")
    rep = VerificationReport("r", seed=3)
    rep.add("a", "x^2 = x*x", True, poly=R.parse("x^2 + i"), value=float("inf"), z=1j)
    path = rep.write(tmp_path / "r.json")
    data = json.loads(path.read_text())
    assert data["checks"][0]["witness"] == {"poly": "x^2 + i", "value": "inf", "z": {"re": 0.0, "im": 1.0}}
    assert rep.to_json() == VerificationReport("r", checks=list(rep.checks), seed=3).to_json()


def test_extend_prefixes():
    a, b = VerificationReport("a"), VerificationReport("b")
    b.add("x", "claim", True)
    a.extend(b, "b")
    assert "b.x" in a and a["b.x"].passed
