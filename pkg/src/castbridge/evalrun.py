"""End-to-end sample evaluation: syntactic gate, harness run, classification.

The harness is any executable speaking the child-process protocol: one JSON
request ``{"scenario": ..., "code": ..., "timeout_s": ...}`` on stdin, one
JSON reply ``{"status": "ok"|"exception"|"assertion_failure"|"timeout",
"detail": ..., "mutations": ...}`` on stdout, one process per sample.
A missing or unlaunchable harness aborts the run (HarnessUnavailable); a
harness that crashes or answers garbage on one sample costs that sample a
logical error and the run continues.
"""

from __future__ import annotations

import json
import shlex
import subprocess
from dataclasses import dataclass
from pathlib import Path

from . import cast, syntax
from .brackets import BracketError, parse_bracket
from .cast import CAST_LABELS, MalformedCast
from .metrics import (
    DomainError, ProblemResult, StageTrace, classify_sample, results_document,
)

DEFAULT_TIMEOUT_S = 10.0
_HARNESS_STATUSES = ("ok", "exception", "assertion_failure", "timeout")


class HarnessUnavailable(RuntimeError):
    pass


@dataclass(frozen=True)
class ProblemSpec:
    problem_id: str
    samples_path: Path
    scenario_path: Path | None
    mode: str  # cast | code


@dataclass(frozen=True)
class EvalManifest:
    problems: tuple[ProblemSpec, ...]
    k_values: tuple[int, ...]
    harness_endpoint: str  # command line, or "none"
    timeout_s: float = DEFAULT_TIMEOUT_S


def load_manifest(path: Path) -> EvalManifest:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DomainError(f"manifest is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DomainError("manifest must be a JSON object")
    raw_problems = data.get("problems")
    if not raw_problems:
        raise DomainError("manifest lists no problems")
    base = path.parent
    problems = []
    seen = set()
    for entry in raw_problems:
        problem_id = entry.get("id")
        if not problem_id or not isinstance(problem_id, str):
            raise DomainError("every problem needs a string id")
        if problem_id in seen:
            raise DomainError(f"duplicate problem id: {problem_id}")
        seen.add(problem_id)
        mode = entry.get("mode")
        if mode not in ("cast", "code"):
            raise DomainError(f"problem {problem_id}: mode must be cast or code")
        samples_path = entry.get("samples_path")
        if not samples_path:
            raise DomainError(f"problem {problem_id}: samples_path required")
        scenario_path = entry.get("scenario_path")
        problems.append(
            ProblemSpec(
                problem_id,
                _resolve(base, samples_path),
                _resolve(base, scenario_path) if scenario_path else None,
            mode,
            )
        )
    k_values = data.get("k_values") or [1]
    if not all(isinstance(k, int) and k >= 1 for k in k_values):
        raise DomainError("k_values must be positive integers")
    harness = data.get("harness_endpoint", "none")
    if not isinstance(harness, str) or not harness:
        raise DomainError("harness_endpoint must be a command string or 'none'")
    timeout_s = float(data.get("timeout_s", DEFAULT_TIMEOUT_S))
    if timeout_s <= 0:
        raise DomainError("timeout_s must be positive")
    return EvalManifest(tuple(problems), tuple(k_values), harness, timeout_s)


def _resolve(base: Path, rel: str) -> Path:
    p = Path(rel)
    return p if p.is_absolute() else base / p


def list_samples(samples_path: Path) -> list[Path]:
    """Sample files of one problem: every regular file, sorted by name."""
    if not samples_path.is_dir():
        raise DomainError(f"samples_path is not a directory: {samples_path}")
    files = sorted(p for p in samples_path.iterdir() if p.is_file())
    if not files:
        raise DomainError(f"no sample files under {samples_path}")
    return files


def syntactic_gate(text: str, mode: str) -> tuple[str | None, StageTrace | None]:
    """Parse (and for cast mode expand) a sample; code text or a failed trace."""
    if mode == "cast":
        try:
            tree = parse_bracket(text, CAST_LABELS)
        except BracketError as exc:
            return None, StageTrace(parse_error=str(exc))
        try:
            program = cast.expand(tree)
        except MalformedCast as exc:
            return None, StageTrace(expand_error=str(exc))
        return syntax.unparse(program), None
    try:
        program = syntax.parse_program(text)
    except (SyntaxError, syntax.UnsupportedConstruct) as exc:
        return None, StageTrace(parse_error=str(exc))
    return syntax.unparse(program), None


def run_harness(
    command: str, scenario: object, code: str, timeout_s: float
) -> dict:
    """One child process, one sample; protocol errors reported as statuses."""
    request = json.dumps(
        {"scenario": scenario, "code": code, "timeout_s": timeout_s}
    )
    argv = shlex.split(command)
    if not argv:
        raise HarnessUnavailable("empty harness command")
    try:
        proc = subprocess.run(
            argv,
            input=request.encode("utf-8"),
            capture_output=True,
            timeout=timeout_s + 10.0,  # grace: the child enforces timeout_s itself
        )
    except FileNotFoundError as exc:
        raise HarnessUnavailable(f"harness not found: {argv[0]}") from exc
    except subprocess.TimeoutExpired:
        return {"status": "timeout", "detail": "harness wall-clock limit"}
    if proc.returncode != 0:
        detail = proc.stderr.decode("utf-8", "replace").strip()
        return {
            "status": "exception",
            "detail": f"harness exited with {proc.returncode}: {detail[:500]}",
        }
    try:
        reply = json.loads(proc.stdout.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        return {"status": "exception", "detail": f"unreadable harness reply: {exc}"}
    if not isinstance(reply, dict) or reply.get("status") not in _HARNESS_STATUSES:
        return {"status": "exception", "detail": f"malformed harness reply: {reply!r}"}
    return reply


def evaluate_sample(
    text: str,
    mode: str,
    scenario: object,
    harness_endpoint: str,
    timeout_s: float,
) -> StageTrace:
    code, failed = syntactic_gate(text, mode)
    if failed is not None:
        return failed
    if scenario is None or harness_endpoint == "none":
        return StageTrace()
    assert code is not None
    reply = run_harness(harness_endpoint, scenario, code, timeout_s)
    return StageTrace(
        exec_status=reply["status"], detail=str(reply.get("detail", ""))
    )


def run_eval(manifest: EvalManifest) -> dict:
    """Evaluate every problem in the manifest; returns the results document."""
    needs_harness = any(p.scenario_path is not None for p in manifest.problems)
    if needs_harness and manifest.harness_endpoint == "none":
        raise HarnessUnavailable(
            "manifest has scenarios but harness_endpoint is 'none'"
        )
    results = []
    for problem in sorted(manifest.problems, key=lambda p: p.problem_id):
        scenario = None
        if problem.scenario_path is not None:
            scenario = json.loads(problem.scenario_path.read_text(encoding="utf-8"))
        outcomes = []
        for sample_file in list_samples(problem.samples_path):
            text = sample_file.read_text(encoding="utf-8")
            trace = evaluate_sample(
                text, problem.mode, scenario,
                manifest.harness_endpoint, manifest.timeout_s,
            )
            outcomes.append(classify_sample(trace))
        results.append(ProblemResult.from_outcomes(problem.problem_id, outcomes))
    for k in manifest.k_values:
        for r in results:
            if k > r.n:
                raise DomainError(
                    f"k={k} exceeds sample count n={r.n} of problem {r.problem_id}"
                )
    return results_document(results, manifest.k_values)
