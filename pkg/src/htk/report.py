"""Check results with basis-index witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


def _scalar(x) -> str | None:
    return None if x is None else str(x)


@dataclass(frozen=True)
class Witness:
    """Where two maps disagree: input basis multi-index, output multi-index, values."""

    input: tuple[int, ...]
    output: tuple[int, ...] = ()
    lhs: object = None
    rhs: object = None

    def to_dict(self) -> dict:
        return {
            "input": list(self.input),
            "output": list(self.output),
            "lhs": _scalar(self.lhs),
            "rhs": _scalar(self.rhs),
        }

    def __str__(self):
        s = f"input {self.input}"
        if self.output:
            s += f", output {self.output}: {self.lhs} != {self.rhs}"
        return s


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    label: str = ""
    witness: Witness | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "label": self.label,
            "passed": self.passed,
            "witness": self.witness.to_dict() if self.witness else None,
            "detail": self.detail,
        }

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        label = f"{self.label:>14} " if self.label else " " * 15
        s = f"{tag} {label}{self.name}"
        if self.detail:
            s += f"  [{self.detail}]"
        if self.witness is not None and not self.passed:
            s += f"  witness: {self.witness}"
        return s


class Report:
    """An ordered collection of verdicts; passes iff every verdict passes."""

    def __init__(self, title: str = "", verdicts: Iterable[Verdict] = ()):
        self.title = title
        self.verdicts: list[Verdict] = list(verdicts)

    def add(self, verdict: Verdict) -> Verdict:
        self.verdicts.append(verdict)
        return verdict

    def extend(self, other: Report | Iterable[Verdict]) -> Report:
        self.verdicts.extend(other.verdicts if isinstance(other, Report) else other)
        return self

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.passed]

    def __getitem__(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(v.name == name for v in self.verdicts)

    def __iter__(self) -> Iterator[Verdict]:
        return iter(self.verdicts)

    def __len__(self):
        return len(self.verdicts)

    def to_dict(self) -> dict:
        return {"title": self.title, "passed": self.passed, "verdicts": [v.to_dict() for v in self.verdicts]}

    def format_text(self) -> str:
        lines = [self.title] if self.title else []
        lines += [v.line() for v in self.verdicts]
        n_fail = len(self.failures())
        lines.append(f"{'PASSED' if not n_fail else 'FAILED'}: {len(self) - n_fail}/{len(self)} checks")
        return "\n".join(lines)

    def __repr__(self):
        return f"Report({self.title!r}, {len(self)} verdicts, passed={self.passed})"
