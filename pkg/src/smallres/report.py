"""Machine-readable verification records.

A :class:`VerificationReport` groups :class:`Check` results.  Each check
names the claim it certifies (as a formula), a status, and the witness data
backing it: polynomials, points, Groebner certificates or numeric errors.
Reports serialise to JSON with a stable key order.
"""

from __future__ import annotations

import json
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

PASS = "pass"
FAIL = "fail"
PARTIAL = "partial"
SKIPPED = "skipped"

_RANK = {PASS: 0, SKIPPED: 1, PARTIAL: 2, FAIL: 3}


def _jsonable(value: Any) -> Any:
    from .algebra.poly import Poly
    from .algebra.scalars import GaussRational, format_scalar

    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Poly):
        return str(value)
    if isinstance(value, GaussRational):
        return format_scalar(value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    try:
        from gmpy2 import mpq

        if isinstance(value, mpq):
            return format_scalar(value)
    except ImportError:  # pragma: no cover
        pass
    return str(value)


@dataclass
class Check:
    name: str
    claim: str
    status: str
    witness: Dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "claim": self.claim,
            "status": self.status,
            "seconds": round(self.seconds, 4),
            "witness": _jsonable(self.witness),
        }


@dataclass
class VerificationReport:
    name: str
    checks: List[Check] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    seed: Optional[int] = None
    budget: Optional[int] = None

    def add(self, name: str, claim: str, ok: bool | str, /, **witness) -> Check:
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        chk = Check(name, claim, status, dict(witness))
        self.checks.append(chk)
        return chk

    @contextmanager
    def timed(self) -> Iterator[None]:
        """Attribute elapsed time to the checks added inside the block."""
        start = time.perf_counter()
        first = len(self.checks)
        yield
        elapsed = time.perf_counter() - start
        new = self.checks[first:]
        for chk in new:
            chk.seconds = elapsed / len(new)

    def extend(self, other: "VerificationReport", prefix: str | None = None) -> None:
        for chk in other.checks:
            name = f"{prefix}.{chk.name}" if prefix else chk.name
            self.checks.append(Check(name, chk.claim, chk.status, chk.witness, chk.seconds))
        self.notes.extend(other.notes)

    def __getitem__(self, name: str) -> Check:
        for chk in self.checks:
            if chk.name == name:
                return chk
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(chk.name == name for chk in self.checks)

    @property
    def status(self) -> str:
        if not self.checks:
            return SKIPPED
        worst = max(self.checks, key=lambda c: _RANK[c.status]).status
        return PASS if worst == SKIPPED else worst

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.status in (FAIL, PARTIAL)]

    def to_dict(self) -> dict:
        return {
            "report": self.name,
            "status": self.status,
            "seed": self.seed,
            "budget": self.budget,
            "notes": list(self.notes),
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def write(self, path: Path | str) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json() + "\n")
        return path

    def summary_lines(self) -> List[str]:
        return [f"[{c.status.upper():7}] {c.name}" for c in self.checks]
