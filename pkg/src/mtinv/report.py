"""Text and JSON rendering of task results.  Output depends only on the results."""

from __future__ import annotations

import json

from .runner import TaskResult


def render_text(results: list[TaskResult], title: str | None = None) -> str:
    lines = []
    if title is not None:
        lines.append(f"== {title}")
    for r in results:
        head = f"[{r.index}] {r.op} {r.module}"
        if r.modulus is not None:
            head += f" n={r.modulus}"
        lines.append(head)
        if r.theorem is not None:
            lines.append(f"  theorem: {r.theorem}")
        if r.value is not None:
            lines.append(f"  value: {r.value}")
        if r.divisible_rank is not None:
            lines.append(f"  divisible_rank: {r.divisible_rank}")
            lines.append(f"  finite_part: {r.finite_part}")
        for k, v in r.witnesses:
            lines.append(f"  witness {k}: {v}")
        for k, ok in r.checks:
            lines.append(f"  check {k}: {'PASS' if ok else 'FAIL'}")
        if r.error is not None:
            lines.append(f"  error: {r.error}")
        lines.append(f"  status: {r.status}")
    counts = {s: sum(1 for r in results if r.status == s) for s in ("PASS", "FAIL", "ERROR")}
    lines.append(f"summary: {counts['PASS']} pass, {counts['FAIL']} fail, {counts['ERROR']} error")
    return "\n".join(lines) + "\n"


def render_json(sections: list[tuple[str | None, list[TaskResult]]]) -> str:
    out = []
    for title, results in sections:
        entry = {"results": [r.to_json() for r in results]}
        if title is not None:
            entry = {"source": title, **entry}
        out.append(entry)
    return json.dumps(out, indent=2, sort_keys=False) + "\n"
