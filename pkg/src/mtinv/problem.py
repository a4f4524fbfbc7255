"""JSON problem files: one finite group, named modules over it, and a task list.

Example::

    {
      "group": {"name": "C2", "order": 2, "generators": [[1, 0]]},
      "modules": {"sign": {"rank": 1, "action": [[[-1]]]}},
      "tasks": [{"op": "pic_torus", "module": "sign"}]
    }

A group is given either by permutation generators (as above) or by a
full multiplication table, in which case ``generators`` lists element
indices.  ``action`` holds one matrix per generator; ``relations`` is an
optional ``rank x k`` matrix whose columns are killed.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from .errors import InvariantViolation, ParseError, RelationViolation, SchemaError, ValidationError
from .groups import FiniteGroup
from .lattice import IntMatrix
from .modules import GammaLattice, GammaModule

OPS_WITH_MODULUS = ("inv1_mod_n", "inv0_torus_mod_n", "verify_cor52", "mod_n_h0")
OPS = OPS_WITH_MODULUS + ("h0", "h1", "h1_oracle", "resolve", "inv1_qz", "inv0_torus_qz", "pic_torus")

_GROUP_KEYS = {"name", "order", "generators", "table", "identity", "element_names"}
_MODULE_KEYS = {"rank", "action", "relations"}
_TASK_KEYS = {"op", "module", "modulus"}


@dataclass(frozen=True)
class Task:
    op: str
    module: str
    modulus: int | None = None


@dataclass(frozen=True)
class ProblemFile:
    group: FiniteGroup
    modules: dict[str, GammaModule]
    tasks: tuple[Task, ...]


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _keys(obj, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object")
    extra = set(obj) - allowed
    if extra:
        raise SchemaError(f"{where}: unexpected field(s) {sorted(extra)}")
    missing = required - set(obj)
    if missing:
        raise SchemaError(f"{where}: missing field(s) {sorted(missing)}")


def _matrix(obj, rows: int, cols: int | None, where: str) -> IntMatrix:
    if not isinstance(obj, list) or any(not isinstance(r, list) for r in obj):
        raise SchemaError(f"{where} must be an array of arrays of integers")
    if len(obj) != rows:
        raise SchemaError(f"{where} must have {rows} rows, got {len(obj)}")
    if cols is None:
        cols = len(obj[0]) if obj else 0
    for r in obj:
        if len(r) != cols:
            raise SchemaError(f"{where} must have {cols} columns in every row")
        if any(not _is_int(x) for x in r):
            raise SchemaError(f"{where} has a non-integer entry")
    return IntMatrix.from_rows(obj, cols)


def _parse_group(obj) -> FiniteGroup:
    _keys(obj, _GROUP_KEYS, {"order", "generators"}, "group")
    order, gens = obj["order"], obj["generators"]
    name = obj.get("name")
    if not _is_int(order) or order < 1:
        raise SchemaError("group.order must be a positive integer")
    if not isinstance(gens, list):
        raise SchemaError("group.generators must be an array")
    if name is not None and not isinstance(name, str):
        raise SchemaError("group.name must be a string")
    try:
        if "table" in obj:
            table = _matrix(obj["table"], order, order, "group.table").to_rows()
            if any(not _is_int(g) for g in gens):
                raise SchemaError("with a table, group.generators must be element indices")
            ident = obj.get("identity")
            if ident is None:
                ident = next((e for e in range(order) if table[e] == list(range(order))), 0)
            elif not _is_int(ident):
                raise SchemaError("group.identity must be an integer")
            names = obj.get("element_names")
            if names is not None and (
                not isinstance(names, list) or any(not isinstance(s, str) for s in names)
            ):
                raise SchemaError("group.element_names must be an array of strings")
            return FiniteGroup(order, table, ident, tuple(gens), names, name)
        for k in ("identity", "element_names"):
            if k in obj:
                raise SchemaError(f"group.{k} is only allowed together with a table")
        if any(not isinstance(p, list) or any(not _is_int(x) for x in p) for p in gens):
            raise SchemaError("without a table, group.generators must be permutations")
        group = FiniteGroup.from_permutations(gens, name)
    except RelationViolation as exc:
        raise ValidationError(f"group: {exc}") from exc
    if group.order != order:
        raise ValidationError(f"group: generators produce a group of order {group.order}, not {order}")
    return group


def _parse_module(name: str, obj, group: FiniteGroup) -> GammaModule:
    where = f"modules.{name}"
    _keys(obj, _MODULE_KEYS, {"rank", "action"}, where)
    rank = obj["rank"]
    if not _is_int(rank) or rank < 0:
        raise SchemaError(f"{where}.rank must be a non-negative integer")
    action = obj["action"]
    if not isinstance(action, list) or len(action) != len(group.generators):
        raise SchemaError(f"{where}.action needs one matrix per group generator ({len(group.generators)})")
    mats = [_matrix(a, rank, rank, f"{where}.action[{i}]") for i, a in enumerate(action)]
    relations = IntMatrix.zeros(rank, 0)
    if "relations" in obj:
        relations = _matrix(obj["relations"], rank, None, f"{where}.relations")
    try:
        if mats:
            for i, (s, m) in enumerate(zip(group.generators, mats)):
                if abs(m.det()) != 1:
                    raise ValidationError(
                        f"{where}: action of generator {group.label(s)} has determinant {m.det()}, not +-1"
                    )
            lattice = GammaLattice.from_generators(group, mats)
        else:
            lattice = GammaLattice.trivial(group, rank)
        return GammaModule(lattice, relations)
    except RelationViolation as exc:
        detail = f" (pair {exc.pair})" if exc.pair is not None else ""
        raise ValidationError(f"{where}: {exc}{detail}") from exc
    except InvariantViolation as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _parse_task(i: int, obj, modules) -> Task:
    where = f"tasks[{i}]"
    _keys(obj, _TASK_KEYS, {"op", "module"}, where)
    op, mod, n = obj["op"], obj["module"], obj.get("modulus")
    if op not in OPS:
        raise SchemaError(f"{where}: unknown op {op!r}")
    if mod not in modules:
        raise SchemaError(f"{where}: unknown module {mod!r}")
    if n is not None and (not _is_int(n) or n < 1):
        raise SchemaError(f"{where}.modulus must be a positive integer")
    return Task(op, mod, n)


def parse_problem(data: bytes | str) -> ProblemFile:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from exc
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    _keys(obj, {"group", "modules", "tasks"}, {"group", "modules", "tasks"}, "problem")
    group = _parse_group(obj["group"])
    if not isinstance(obj["modules"], dict):
        raise SchemaError("modules must be an object keyed by name")
    modules = {name: _parse_module(name, m, group) for name, m in obj["modules"].items()}
    if not isinstance(obj["tasks"], list):
        raise SchemaError("tasks must be an array")
    tasks = tuple(_parse_task(i, t, modules) for i, t in enumerate(obj["tasks"]))
    return ProblemFile(group, modules, tasks)


# ---------------------------------------------------------------------------
# serialisation


def group_to_json(group: FiniteGroup) -> dict[str, Any]:
    out: dict[str, Any] = {}
    if group.name:
        out["name"] = group.name
    out["order"] = group.order
    out["table"] = [list(r) for r in group.mul]
    out["identity"] = group.identity
    out["generators"] = list(group.generators)
    if group.element_names:
        out["element_names"] = list(group.element_names)
    return out


def module_to_json(m: GammaModule) -> dict[str, Any]:
    out: dict[str, Any] = {"rank": m.rank, "action": [a.to_rows() for a in m.ambient.generator_matrices()]}
    if m.relations.cols:
        out["relations"] = m.relations.to_rows()
    return out


def task_to_json(t: Task) -> dict[str, Any]:
    out: dict[str, Any] = {"op": t.op, "module": t.module}
    if t.modulus is not None:
        out["modulus"] = t.modulus
    return out


def problem_to_json(group: FiniteGroup, modules: dict[str, GammaModule], tasks) -> dict[str, Any]:
    return {
        "group": group_to_json(group),
        "modules": {name: module_to_json(m) for name, m in modules.items()},
        "tasks": [task_to_json(t) for t in tasks],
    }


def dumps(obj) -> str:
    """Stable JSON text with integer arrays kept on one line."""
    text = json.dumps(obj, indent=2)
    return re.sub(r"\[[\s\d,\-]*\]", lambda m: re.sub(r"\s+", " ", m.group(0)).replace("[ ", "[").replace(" ]", "]"), text) + "\n"
