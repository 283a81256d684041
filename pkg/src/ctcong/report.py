"""Verdict object shared by all congruence sweeps."""


class CongruenceReport:
    """Outcome of a congruence sweep.

    verdict is "pass", "fail", or "inapplicable".  A counterexample is
    present exactly when the verdict is "fail" and is the
    lexicographically smallest violating tuple, as a dict with the
    indices plus expected/actual residues.  reason is set for
    "inapplicable" verdicts.
    """

    def __init__(self, kind, params, verdict, counterexample=None, reason=None):
        if verdict not in ("pass", "fail", "inapplicable"):
            raise ValueError(f"bad verdict {verdict!r}")
        if (counterexample is not None) != (verdict == "fail"):
            raise ValueError("counterexample present iff verdict is fail")
        self.kind = kind
        self.params = dict(params)
        self.verdict = verdict
        self.counterexample = counterexample
        self.reason = reason

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_dict(self):
        out = {"kind": self.kind, "params": self.params, "verdict": self.verdict}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.reason is not None:
            out["reason"] = self.reason
        return out

    def __repr__(self):
        extra = ""
        if self.counterexample is not None:
            extra = f", counterexample={self.counterexample}"
        if self.reason is not None:
            extra += f", reason={self.reason!r}"
        return f"CongruenceReport({self.kind!r}, {self.verdict!r}{extra})"
