"""pass@k estimation and the syntactic/logical/semantic outcome taxonomy."""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence


class DomainError(ValueError):
    pass


CATEGORIES = ("pass", "syntactic", "logical", "semantic")


@dataclass(frozen=True)
class SampleOutcome:
    category: str
    detail: str = ""

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown outcome category: {self.category!r}")

    @classmethod
    def passed(cls) -> "SampleOutcome":
        return cls("pass")

    @classmethod
    def syntactic(cls, detail: str) -> "SampleOutcome":
        return cls("syntactic", detail)

    @classmethod
    def logical(cls, detail: str) -> "SampleOutcome":
        return cls("logical", detail)

    @classmethod
    def semantic(cls, detail: str) -> "SampleOutcome":
        return cls("semantic", detail)


@dataclass(frozen=True)
class ProblemResult:
    problem_id: str
    n: int
    c: int
    outcomes: tuple[SampleOutcome, ...]

    def __post_init__(self) -> None:
        if len(self.outcomes) != self.n:
            raise ValueError(f"expected {self.n} outcomes, got {len(self.outcomes)}")
        passed = sum(1 for o in self.outcomes if o.category == "pass")
        if passed != self.c:
            raise ValueError(f"c={self.c} but {passed} outcomes are pass")

    @classmethod
    def from_outcomes(
        cls, problem_id: str, outcomes: Sequence[SampleOutcome]
    ) -> "ProblemResult":
        outcomes = tuple(outcomes)
        c = sum(1 for o in outcomes if o.category == "pass")
        return cls(problem_id, len(outcomes), c, outcomes)


@dataclass(frozen=True)
class StageTrace:
    """What happened to one sample on its way through the pipeline."""

    parse_error: str | None = None   # bracket parse / source parse failure
    expand_error: str | None = None  # tree-shape (cAST expansion) failure
    exec_status: str | None = None   # ok | exception | assertion_failure | timeout
    detail: str = ""


def pass_at_k(n: int, c: int, k: int) -> float:
    """Unbiased estimator 1 - C(n-c, k)/C(n, k), as an overflow-free product."""
    if n < 0 or c < 0 or k < 0:
        raise DomainError("n, c, k must be non-negative")
    if not 1 <= k <= n:
        raise DomainError(f"k must satisfy 1 <= k <= n (n={n}, k={k})")
    if c > n:
        raise DomainError(f"c must satisfy 0 <= c <= n (n={n}, c={c})")
    if n - c < k:
        return 1.0
    prod = 1.0
    for j in range(k):
        prod *= (n - c - j) / (n - j)
    return 1.0 - prod


def mean_pass_at_k(
    results: Sequence[ProblemResult], k: int
) -> tuple[float, float]:
    """Mean and sample (n-1) standard deviation of per-problem pass@k."""
    if not results:
        raise DomainError("no problems to aggregate")
    for r in results:
        if r.n < k:
            raise DomainError(f"problem {r.problem_id}: n={r.n} < k={k}")
    values = [pass_at_k(r.n, r.c, k) for r in results]
    mean = statistics.fmean(values)
    std = statistics.stdev(values) if len(values) > 1 else 0.0
    return mean, std


def classify_sample(trace: StageTrace) -> SampleOutcome:
    if trace.parse_error is not None:
        return SampleOutcome.syntactic(trace.parse_error)
    if trace.expand_error is not None:
        return SampleOutcome.syntactic(trace.expand_error)
    if trace.exec_status in ("exception", "timeout"):
        return SampleOutcome.logical(trace.detail or trace.exec_status)
    if trace.exec_status == "assertion_failure":
        return SampleOutcome.semantic(trace.detail or "assertion failed")
    return SampleOutcome.passed()


def summarize(results: Iterable[ProblemResult]) -> dict:
    """Per-category counts and fractions over every sample of every problem."""
    counts = {cat: 0 for cat in CATEGORIES}
    for result in results:
        for outcome in result.outcomes:
            counts[outcome.category] += 1
    total = sum(counts.values())
    fractions = {
        cat: (counts[cat] / total if total else 0.0) for cat in CATEGORIES
    }
    return {"counts": counts, "fractions": fractions, "total": total}


def results_document(
    results: Sequence[ProblemResult], k_values: Sequence[int]
) -> dict:
    """The results JSON document (problems plus summary blocks)."""
    problems = [
        {
            "id": r.problem_id,
            "n": r.n,
            "c": r.c,
            "outcomes": [o.category for o in r.outcomes],
            "pass_at": {str(k): pass_at_k(r.n, r.c, k) for k in k_values},
        }
        for r in sorted(results, key=lambda r: r.problem_id)
    ]
    pass_at = {}
    for k in k_values:
        mean, std = mean_pass_at_k(results, k)
        pass_at[str(k)] = {"mean": mean, "std": std}
    summary = summarize(results)
    return {
        "problems": problems,
        "summary": {
            "pass_at": pass_at,
            "categories": {
                cat: {
                    "count": summary["counts"][cat],
                    "fraction": summary["fractions"][cat],
                }
                for cat in CATEGORIES
            },
        },
    }


def canonical_json(value: object, indent: int = 0) -> str:
    """Deterministic JSON: sorted keys, floats rendered with 6 decimals."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = []
        for key in sorted(value):
            if not isinstance(key, str):
                raise TypeError(f"non-string key: {key!r}")
            rendered = canonical_json(value[key], indent + 1)
            items.append(f'{inner}"{_escape(key)}": {rendered}')
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [inner + canonical_json(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return f'"{_escape(value)}"'
    if value is None:
        return "null"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _escape(text: str) -> str:
    out = text.replace("\\", "\\\\").replace('"', '\\"')
    out = out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")
    return "".join(
        ch if ch >= " " else f"\\u{ord(ch):04x}" for ch in out
    )
