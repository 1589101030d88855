from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    path: str
    rule: str
    detail: str

    def __str__(self):
        return f"{self.path}: [{self.rule}] {self.detail}"


@dataclass
class LintReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def merge(self, other: LintReport) -> LintReport:
        return LintReport(self.violations + other.violations)

    def render(self) -> str:
        if self.ok:
            return "ok"
        lines = [f"{len(self.violations)} violation(s)"]
        lines.extend(f"  {v}" for v in self.violations)
        return "\n".join(lines)


class Path:
    """Cons-list breadcrumb; rendered only when a violation is recorded."""

    __slots__ = ("parent", "seg")

    def __init__(self, parent: Path | None, seg: str):
        self.parent = parent
        self.seg = seg

    def __truediv__(self, seg: str) -> Path:
        return Path(self, seg)

    def render(self) -> str:
        segs = []
        p: Path | None = self
        while p is not None:
            segs.append(p.seg)
            p = p.parent
        return "/".join(reversed(segs))


class Collector:
    def __init__(self):
        self.violations: list[Violation] = []

    def fail(self, path: Path, rule: str, detail: str) -> bool:
        self.violations.append(Violation(path.render(), rule, detail))
        return False

    def report(self) -> LintReport:
        return LintReport(self.violations)
