"""Check and report records shared by the verification layers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


def _plain(x):
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)


@dataclass
class Check:
    name: str
    expected: object
    computed: object
    passed: bool
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = {
            "name": self.name,
            "expected": _plain(self.expected),
            "computed": _plain(self.computed),
            "pass": bool(self.passed),
        }
        if self.params:
            d["params"] = _plain(self.params)
        return d


def check_eq(name, expected, computed, **params) -> Check:
    return Check(name, expected, computed, expected == computed, params)


@dataclass
class Report:
    suite: str
    params: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    seed: int | None = None
    runtime_ms: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks):
        self.checks.extend(checks)

    def to_json(self) -> dict:
        d = {
            "suite": self.suite,
            "params": _plain(self.params),
            "checks": [c.to_json() for c in self.checks],
            "seed": self.seed,
            "runtime_ms": round(self.runtime_ms, 3),
            "pass": self.passed,
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def dumps(self, indent=None) -> str:
        return json.dumps(self.to_json(), indent=indent)

    def summary(self, max_rows: int = 40) -> str:
        n_ok = sum(c.passed for c in self.checks)
        lines = [f"suite {self.suite}: {n_ok}/{len(self.checks)} checks passed in {self.runtime_ms / 1000:.2f} s"]
        rows = self.failures[:max_rows] if self.failures else self.checks[:max_rows]
        width = max((len(c.name) for c in rows), default=0)
        for c in rows:
            flag = "ok  " if c.passed else "FAIL"
            lines.append(f"  {flag} {c.name:<{width}}  expected={_short(c.expected)} computed={_short(c.computed)}")
        hidden = (len(self.failures) if self.failures else len(self.checks)) - len(rows)
        if hidden > 0:
            lines.append(f"  ... {hidden} more")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def _short(x, width: int = 60) -> str:
    s = str(x)
    return s if len(s) <= width else s[: width - 3] + "..."


def merge(suite: str, reports, params=None, seed=None) -> Report:
    out = Report(suite, params or {}, seed=seed)
    for r in reports:
        for c in r.checks:
            c.params = {**r.params, **c.params}
            out.checks.append(c)
        out.runtime_ms += r.runtime_ms
        out.notes.extend(r.notes)
    return out
