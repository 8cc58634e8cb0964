"""Check results and their JSON / Markdown serialization."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


def _clean(obj):
    """Make floats JSON-safe (infinities become strings) and sets sorted lists."""
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_clean(v) for v in obj)
    return obj


@dataclass
class CheckResult:
    id: str
    tested: int
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def to_dict(self) -> dict:
        ws = sorted((_clean(w) for w in self.witnesses),
                    key=lambda w: json.dumps(w, sort_keys=True))
        return {"id": self.id, "tested": self.tested, "passed": self.passed, "witnesses": ws}


@dataclass
class StabilityReport:
    pair: dict
    checks: list[CheckResult]
    offsets: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failing(self) -> list[str]:
        return [c.id for c in self.checks if not c.passed]

    def check(self, cid: str) -> CheckResult:
        for c in self.checks:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def to_dict(self) -> dict:
        return {
            "pair": _clean(self.pair),
            "checks": [c.to_dict() for c in self.checks],
            "offsets": _clean(self.offsets),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_markdown(self) -> str:
        d = self.to_dict()
        out = ["# Stability report", ""]
        for key, val in d["pair"].items():
            out.append(f"- **{key}**: {json.dumps(val)}")
        out += ["", "| check | tested | passed | witnesses |", "|---|---|---|---|"]
        for c in d["checks"]:
            out.append(f"| {c['id']} | {c['tested']} | {'yes' if c['passed'] else 'NO'} | {len(c['witnesses'])} |")
        for c in d["checks"]:
            if c["witnesses"]:
                out += ["", f"## {c['id']} witnesses", ""]
                out += [f"- `{json.dumps(w, sort_keys=True)}`" for w in c["witnesses"]]
        out += ["", "## Shift offsets", "", "| space | birth | members | shifted birth | offset |",
                "|---|---|---|---|---|"]
        for o in d["offsets"]:
            out.append(f"| {o['space']} | {o['birth']!r} | {o['members']} | {o['shifted']!r} | {o['offset']!r} |")
        return "\n".join(out) + "\n"
