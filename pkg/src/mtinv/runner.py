"""Executes problem-file tasks and collects plain, serialisable results."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bruteforce import ENUMERATION_LIMIT, h0_by_enumeration
from .errors import CrossCheckFailure, ExactnessFailure, MtinvError
from .invariants import (
    Backend,
    DEFAULT,
    InvariantReport,
    inv0_torus_mod_n,
    inv0_torus_qz,
    inv1_mod_n,
    inv1_qz,
    pic_torus,
    verify_cor52,
)
from .lattice import FinAbGroup
from .modules import GammaModule, h0, h1_oracle, mod_n
from .multtype import MultTypeGroup, resolve_by_tori
from .problem import OPS_WITH_MODULUS, ProblemFile, Task

VERIFY_MODULI = (1, 2, 3, 4, 6, 12)


def _oracle_h0(m: GammaModule) -> FinAbGroup:
    u = m.underlying
    if u.is_finite and u.order <= ENUMERATION_LIMIT:
        return h0_by_enumeration(m)
    return h0(m)


ORACLE = Backend(h0=_oracle_h0, h1=h1_oracle)


@dataclass
class TaskResult:
    index: int
    op: str
    module: str
    modulus: int | None
    status: str = "PASS"                  # PASS, FAIL or ERROR
    theorem: str | None = None
    value: str | None = None
    divisible_rank: int | None = None
    finite_part: str | None = None
    witnesses: list[tuple[str, str]] = field(default_factory=list)
    checks: list[tuple[str, bool]] = field(default_factory=list)
    error: str | None = None

    def to_json(self) -> dict:
        out = {"index": self.index, "op": self.op, "module": self.module}
        if self.modulus is not None:
            out["modulus"] = self.modulus
        if self.theorem is not None:
            out["theorem"] = self.theorem
        if self.value is not None:
            out["value"] = self.value
        if self.divisible_rank is not None:
            out["divisible_rank"] = self.divisible_rank
            out["finite_part"] = self.finite_part
        out["witnesses"] = [{"name": k, "group": v} for k, v in self.witnesses]
        out["checks"] = [{"name": k, "passed": ok} for k, ok in self.checks]
        out["status"] = self.status
        if self.error is not None:
            out["error"] = self.error
        return out


def _from_report(res: TaskResult, rep: InvariantReport) -> None:
    res.theorem = rep.theorem
    res.value = rep.value_string()
    if rep.divisible_rank is not None:
        res.divisible_rank = rep.divisible_rank
        res.finite_part = str(rep.group)
    res.witnesses = [(k, str(v)) for k, v in rep.witnesses]
    res.checks = list(rep.checks)


def _run(res: TaskResult, g: MultTypeGroup, n: int | None, backend: Backend) -> None:
    op = res.op
    if op == "h0":
        res.value = str(backend.h0(g.chars))
    elif op == "h1":
        res.value = str(backend.h1(g.chars))
    elif op == "h1_oracle":
        res.value = str(h1_oracle(g.chars))
    elif op == "mod_n_h0":
        res.value = str(backend.h0(mod_n(g.chars, n)))
    elif op == "resolve":
        r = resolve_by_tori(g)
        r.check()  # raises ExactnessFailure, reported as FAIL
        res.value = f"0 -> S -> W -> chars -> 0 with rank W = {r.W.rank}, rank S = {r.S.rank}"
        res.witnesses = [("W", str(FinAbGroup(r.W.rank, ()))), ("S", str(FinAbGroup(r.S.rank, ())))]
        res.checks = [("W is a permutation lattice", r.W.is_permutation), ("sequence exact", True)]
    elif op == "verify_cor52":
        rec = verify_cor52(g, n)
        res.value = str(rec.kernel)
        res.witnesses = [
            ("H0(chars[n])", str(rec.h0_torsion)),
            ("H0(S/n)", str(rec.h0_S)),
            ("H0(W/n)", str(rec.h0_W)),
            ("ker(H0(S/n) -> H0(W/n))", str(rec.kernel)),
        ]
        res.checks = [("H0(chars[n]) -> H0(S/n) injective", rec.injective), ("exact at H0(S/n)", rec.exact)]
    elif op == "inv1_mod_n":
        _from_report(res, inv1_mod_n(g, n, backend=backend))
    elif op == "inv1_qz":
        _from_report(res, inv1_qz(g, backend=backend))
    elif op == "inv0_torus_mod_n":
        _from_report(res, inv0_torus_mod_n(g, n, backend=backend))
    elif op == "inv0_torus_qz":
        _from_report(res, inv0_torus_qz(g, backend=backend))
    elif op == "pic_torus":
        _from_report(res, pic_torus(g, backend=backend))
    else:  # parse_problem rejects unknown ops
        raise ValueError(f"unknown op {op!r}")


def execute_task(
    problem: ProblemFile, index: int, task: Task, modulus: int | None = None, backend: Backend = DEFAULT
) -> TaskResult:
    """Run one task.  Failures are recorded in the result, never raised."""
    n = modulus if modulus is not None and task.op in OPS_WITH_MODULUS else task.modulus
    res = TaskResult(index, task.op, task.module, n if task.op in OPS_WITH_MODULUS else None)
    if task.op in OPS_WITH_MODULUS and n is None:
        res.status, res.error = "ERROR", f"op {task.op} needs a modulus"
        return res
    g = MultTypeGroup(problem.modules[task.module], task.module)
    try:
        _run(res, g, n, backend)
    except (CrossCheckFailure, ExactnessFailure) as exc:
        res.status, res.error = "FAIL", f"{type(exc).__name__}: {exc}"
        return res
    except MtinvError as exc:
        res.status, res.error = "ERROR", f"{type(exc).__name__}: {exc}"
        return res
    if not all(ok for _, ok in res.checks):
        res.status = "FAIL"
    return res


def run_problem(
    problem: ProblemFile, modulus: int | None = None, backend: Backend = DEFAULT
) -> list[TaskResult]:
    return [execute_task(problem, i, t, modulus, backend) for i, t in enumerate(problem.tasks)]


def verification_tasks(problem: ProblemFile, modulus: int | None = None) -> list[Task]:
    """Exactness checks for every module: the fixed-point sequence and the inv1 cross-check."""
    moduli = VERIFY_MODULI if modulus is None else (modulus,)
    out = []
    for name in problem.modules:
        out.append(Task("resolve", name))
        for n in moduli:
            out += [Task("verify_cor52", name, n), Task("inv1_mod_n", name, n)]
    return out


def run_verification(problem: ProblemFile, modulus: int | None = None) -> list[TaskResult]:
    tasks = verification_tasks(problem, modulus)
    return [execute_task(problem, i, t) for i, t in enumerate(tasks)]


def exit_status(results: list[TaskResult]) -> int:
    """1 if any cross-check or exactness check failed, else 0.  Per-task errors do not count."""
    return 1 if any(r.status == "FAIL" for r in results) else 0
