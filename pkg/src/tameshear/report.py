"""Verification reports (JSON-serialisable)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .scalar import is_exact


def _json_scalar(x):
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if is_exact(x):
        return str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if hasattr(x, "imag") and hasattr(x, "real"):
        return [float(x.real), float(x.imag)]
    return str(x)


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return _json_scalar(obj)


@dataclass
class CaseRecord:
    index: int
    input: dict
    residual: object
    passed: bool
    detail: str = ""
    trace: list = field(default_factory=list, repr=False)
    extra: dict = field(default_factory=dict)

    def residual_value(self) -> float:
        return 0.0 if self.residual == 0 else float(self.residual)

    def to_dict(self):
        res = self.residual
        if res == 0 and (is_exact(res) or res is None or isinstance(res, int)):
            res = "0"
        elif isinstance(res, float) and math.isinf(res):
            res = "inf"
        else:
            res = float(res)
        out = {"index": self.index, "input": _jsonify(self.input), "residual": res,
               "pass": bool(self.passed), "trace_summary": {"points": len(self.trace)}}
        if self.detail:
            out["detail"] = self.detail
        if self.extra:
            out["extra"] = _jsonify(self.extra)
        return out


def _known_defect(cert) -> bool:
    return bool(getattr(cert, "data", {}).get("known_defect"))


class Report:
    def __init__(self, task: str, backend=None, config: dict | None = None):
        self.task = task
        self.backend = backend
        self.config = dict(config or {})
        self.cases: list[CaseRecord] = []
        self.certificates: list = []
        self.attachments: dict = {}
        self.wall_time = 0.0

    def add(self, case: CaseRecord):
        self.cases.append(case)

    def extend(self, cases):
        for c in cases:
            self.add(c)

    def certify(self, cert):
        """Attach a Certificate; a failed certificate fails the whole report."""
        self.certificates.append(cert)
        return cert

    @property
    def passed(self) -> bool:
        """Known defects (certificates flagged ``known_defect``) are reported but do not count."""
        return all(c.passed for c in self.cases) and all(
            c.passed for c in self.certificates if not _known_defect(c))

    def known_defects(self):
        return [c for c in self.certificates if _known_defect(c)]

    def __bool__(self):
        return self.passed

    def failures(self):
        return [c for c in self.cases if not c.passed] + [
            c for c in self.certificates if not c.passed and not _known_defect(c)]

    def max_residual(self) -> float:
        return max((c.residual_value() for c in self.cases), default=0.0)

    def summary(self):
        res = self.max_residual()
        return {"total": len(self.cases), "passed": sum(c.passed for c in self.cases),
                "certificates": len(self.certificates),
                "certificates_passed": sum(c.passed for c in self.certificates),
                "known_defects": [c.name for c in self.known_defects()],
                "max_residual": res if math.isfinite(res) else "inf",
                "wall_time": self.wall_time}

    def to_dict(self):
        cases = sorted(self.cases, key=lambda c: c.index)
        return {"task": self.task, "config": _jsonify(self.config),
                "cases": [c.to_dict() for c in cases],
                "certificates": [c.to_dict() for c in self.certificates],
                "attachments": _jsonify(self.attachments),
                "summary": self.summary()}

    def __repr__(self):
        s = self.summary()
        return f"Report({self.task!r}, {s['passed']}/{s['total']} passed)"
