"""Machine-readable verification reports (shared JSON schema, version 1).

A report is deterministic for a fixed seed up to the runtime_ms field,
which is wall-clock by nature; consumers comparing reports byte-for-byte
should strip it first.  Checks are ordered by name.
"""

from __future__ import annotations

import json
import time

SCHEMA_VERSION = 1


class VerificationReport:
    def __init__(self, suite: str, checks, seed: int, runtime_ms: int):
        self.suite = suite
        self.checks = sorted(checks, key=lambda c: c["name"])
        self.seed = seed
        self.runtime_ms = runtime_ms

    @property
    def passed(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def counts(self):
        out = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            out[c["status"]] = out.get(c["status"], 0) + 1
        return out

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "runtime_ms": self.runtime_ms,
            "checks": self.checks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_tsv(self) -> str:
        lines = ["name\tstatus\tpaper_anchor\twitness"]
        for c in self.checks:
            lines.append("\t".join([
                c["name"], c["status"], c.get("paper_anchor", ""),
                str(c.get("witness", "")).replace("\t", " "),
            ]))
        return "\n".join(lines)

    def to_text(self) -> str:
        lines = [f"suite {self.suite} (seed {self.seed})"]
        for c in self.checks:
            mark = {"pass": "ok  ", "fail": "FAIL", "skip": "skip"}[c["status"]]
            line = f"  [{mark}] {c['name']}"
            if c["status"] != "pass" and "witness" in c:
                line += f"  -- {c['witness']}"
            lines.append(line)
        counts = self.counts()
        lines.append(f"  {counts['pass']} passed, {counts['fail']} failed, "
                     f"{counts['skip']} skipped")
        return "\n".join(lines)


class timed:
    """Context manager measuring wall time in milliseconds."""

    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.ms = int((time.monotonic() - self.t0) * 1000)
        return False
