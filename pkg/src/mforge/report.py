"""Check reports shared by the verification suites and the CLI.

A report is a list of lines, one per checked law.  Reports are fully
determined by (inputs, seed); wall time is kept out of the serialized form
so reruns are byte-identical.
"""

from __future__ import annotations

import json


class CheckLine:
    __slots__ = ("rule", "samples", "passed", "counterexample", "note")

    def __init__(self, rule, samples, passed, counterexample=None, note=None):
        self.rule = rule
        self.samples = samples
        self.passed = passed
        self.counterexample = counterexample
        self.note = note

    def as_dict(self):
        d = {"rule": self.rule, "samples": self.samples, "passed": self.passed}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.note is not None:
            d["note"] = self.note
        return d

    def __repr__(self):
        status = "pass" if self.passed else "FAIL"
        extra = "" if self.counterexample is None else "  cex=%s" % (self.counterexample,)
        note = "" if self.note is None else "  (%s)" % self.note
        return "[%s] %-42s n=%-6d%s%s" % (status, self.rule, self.samples, extra, note)


class Report:
    """Outcome of one suite: named lines plus run metadata."""

    def __init__(self, suite, seed=None, subject=None):
        self.suite = suite
        self.seed = seed
        self.subject = subject
        self.lines = []

    def add(self, rule, samples, passed, counterexample=None, note=None):
        self.lines.append(CheckLine(rule, samples, passed, counterexample, note))
        return self.lines[-1]

    def extend(self, other):
        self.lines.extend(other.lines)

    @property
    def passed(self):
        return all(line.passed for line in self.lines)

    def line(self, rule):
        for ln in self.lines:
            if ln.rule == rule:
                return ln
        raise KeyError(rule)

    def as_dict(self):
        d = {"suite": self.suite, "passed": self.passed,
             "lines": [ln.as_dict() for ln in self.lines]}
        if self.seed is not None:
            d["seed"] = self.seed
        if self.subject is not None:
            d["subject"] = self.subject
        return d

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))

    def __repr__(self):
        head = "suite %s%s" % (self.suite,
                               "" if self.subject is None else " on %s" % self.subject)
        return "\n".join([head] + ["  %r" % ln for ln in self.lines])


def fmt(value):
    """Stable string form for counterexamples in reports."""
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(fmt(v) for v in value) + ")"
    return repr(value)
