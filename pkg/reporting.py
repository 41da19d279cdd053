"""
检查结果与控制台输出
库函数只返回 CheckReport, 横幅与进度统一在这里打印到 stderr
"""

import sys
from dataclasses import dataclass, field

import pandas as pd

THEOREM = "theorem"
CONJECTURE = "conjecture"
CHARACTERISTIC = "characteristic"
OBSERVATION = "observation"

REPORT_KINDS = (THEOREM, CONJECTURE, CHARACTERISTIC, OBSERVATION)


@dataclass
class CheckReport:
    """一项检查的结论; witness 为第一个反例"""

    name: str
    kind: str
    passed: bool
    witness: object = None
    details: list = field(default_factory=list)
    note: str = ""

    def __post_init__(self):
        if self.kind not in REPORT_KINDS:
            raise ValueError(f"未知的检查类别: {self.kind}")

    @property
    def status(self):
        if self.kind == CONJECTURE:
            return "confirmed" if self.passed else "refuted"
        if self.kind == OBSERVATION:
            return "reported"
        return "pass" if self.passed else "FAIL"

    def to_row(self):
        return {
            "check": self.name,
            "kind": self.kind,
            "status": self.status,
            "witness": "" if self.witness is None else str(self.witness),
            "note": self.note,
        }

    def details_frame(self):
        return pd.DataFrame(self.details)


def summary_frame(reports):
    rows = [r.to_row() for r in reports]
    return pd.DataFrame(rows, columns=["check", "kind", "status", "witness", "note"])


class Reporter:
    """人读的横幅输出; quiet 时全部静默"""

    WIDTH = 80

    def __init__(self, quiet=False, stream=None):
        self.quiet = quiet
        self.stream = stream if stream is not None else sys.stderr

    def _print(self, text=""):
        if not self.quiet:
            print(text, file=self.stream)

    def banner(self, title):
        self._print("\n" + "=" * self.WIDTH)
        self._print(title)
        self._print("=" * self.WIDTH)

    def line(self, text):
        self._print(f"  {text}")

    def keyvalues(self, pairs):
        for key, value in pairs:
            self._print(f"  {key}: {value}")

    def report(self, check):
        mark = {"pass": "✅", "confirmed": "✅", "reported": "ℹ️", "FAIL": "❌", "refuted": "⚠️"}[check.status]
        suffix = f"  (反例: {check.witness})" if check.witness is not None and not check.passed else ""
        self._print(f"  {mark} [{check.kind}] {check.name}: {check.status}{suffix}")
