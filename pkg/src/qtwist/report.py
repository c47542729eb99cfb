"""Verification result records shared by the checking modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "PASS"
FAIL = "FAIL"


class CapOverflow(RuntimeError):
    """A requested coefficient lies outside the window where it is known exactly."""


@dataclass
class RelationReport:
    relation: str
    params: dict = field(default_factory=dict)
    window: dict = field(default_factory=dict)
    status: str = PASS
    witness: dict | None = None
    elapsed: float = 0.0
    counts: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def fail(self, **witness: Any) -> "RelationReport":
        self.status = FAIL
        self.witness = {k: _plain(x) for k, x in witness.items()}
        return self

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "relation": self.relation,
            "params": _plain(self.params),
            "window": _plain(self.window),
            "status": self.status,
            "witness": self.witness,
            "counts": _plain(self.counts),
            "notes": _plain(self.notes),
        }
        if timing:
            d["elapsed_s"] = round(self.elapsed, 4)
        return d

    def line(self) -> str:
        p = ", ".join("%s=%s" % (k, _plain(x)) for k, x in self.params.items())
        s = "%s %s(%s)" % (self.status, self.relation, p)
        if self.witness:
            s += " witness=%s" % self.witness
        return s


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(y) for k, y in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)
