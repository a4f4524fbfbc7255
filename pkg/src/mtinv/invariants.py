"""Degree-one Milnor K-invariant groups, computed on the character side.

Every entry point returns an :class:`InvariantReport`.  Where two
independent routes to the same group exist, both are computed and the
function refuses to return if they disagree.

Type-one invariants with values in K1/n are G*[n], where G* is the
Gamma-fixed part of the character module.  They are computed directly
and through the fixed points of ``0 -> chars[n] -> S/n -> W/n`` for a
resolution by tori.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import CrossCheckFailure, ExactnessFailure, NotATorus
from .lattice import FinAbGroup, n_torsion, torsion_part
from .modules import (
    GammaModule,
    compose,
    h0,
    h0_sub,
    h1,
    kernel_map,
    mod_n,
    same_submodule,
)
from .multtype import MultTypeGroup, ToriResolution, character_sequence_mod_n, resolve_by_tori

THEOREM_TAGS = ("T1_mod_n", "T1_QZ_finite_part", "T0_torus_mod_n", "T0_torus_QZ", "Pic")

QZ_LADDER = (1, 2, 6, 12, 60)


@dataclass(frozen=True)
class InvariantReport:
    group: FinAbGroup
    theorem: str
    name: str = ""
    modulus: int | None = None
    divisible_rank: int | None = None
    witnesses: tuple[tuple[str, FinAbGroup], ...] = ()
    checks: tuple[tuple[str, bool], ...] = ()

    def __post_init__(self):
        if self.theorem not in THEOREM_TAGS:
            raise ValueError(f"unknown theorem tag {self.theorem!r}")
        if (self.divisible_rank is not None) != (self.theorem == "T0_torus_QZ"):
            raise ValueError("divisible_rank is present exactly for T0_torus_QZ")

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def value_string(self) -> str:
        """The represented group; Q/Z summands are printed in front of the finite part."""
        if self.divisible_rank is None:
            return str(self.group)
        terms = []
        if self.divisible_rank == 1:
            terms.append("Q/Z")
        elif self.divisible_rank > 1:
            terms.append(f"(Q/Z)^{self.divisible_rank}")
        if not self.group.is_trivial:
            terms.append(str(self.group))
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class FixedSequenceRecord:
    """Fixed points of ``0 -> chars[n] -> S/n -> W/n`` for one resolution."""

    name: str
    modulus: int
    h0_torsion: FinAbGroup
    h0_S: FinAbGroup
    h0_W: FinAbGroup
    kernel: FinAbGroup
    injective: bool
    exact: bool

    @property
    def passed(self) -> bool:
        return self.injective and self.exact


@dataclass(frozen=True)
class Backend:
    """Which H^0 / H^1 routines the invariant functions call."""

    h0: Callable[[GammaModule], FinAbGroup] = h0
    h1: Callable[[GammaModule], FinAbGroup] = h1


DEFAULT = Backend()


def _label(g: MultTypeGroup) -> str:
    return g.name or ""


def _require_torus(t: MultTypeGroup) -> None:
    if not t.is_torus:
        raise NotATorus(f"{_label(t) or 'group'} has torsion characters {t.chars.underlying}")


def _fixed_sequence(res: ToriResolution, n: int):
    """Maps H0(chars[n]) -> S/n and H0(S/n) -> W/n, plus H0 inclusions."""
    seq = character_sequence_mod_n(res, n)
    tors_fixed = h0_sub(seq.snake.source)
    s_fixed = h0_sub(seq.incl_mod_n.source)
    w_fixed = h0_sub(seq.incl_mod_n.target)
    first = compose(seq.snake, tors_fixed)          # H0(chars[n]) -> S/n
    second = compose(seq.incl_mod_n, s_fixed)       # H0(S/n) -> W/n
    return seq, tors_fixed, s_fixed, w_fixed, first, second


def verify_cor52(g: MultTypeGroup, n: int, res: ToriResolution | None = None) -> FixedSequenceRecord:
    """Check exactness of ``1 -> H0(chars[n]) -> H0(S/n) -> H0(W/n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    res = resolve_by_tori(g) if res is None else res
    seq, tors_fixed, s_fixed, w_fixed, first, second = _fixed_sequence(res, n)
    injective = kernel_map(first).source.underlying.is_trivial
    ker = kernel_map(second)                                # inside H0(S/n)
    ker_in_s = compose(s_fixed, ker)
    exact = same_submodule(ker_in_s, first)
    record = FixedSequenceRecord(
        name=_label(g),
        modulus=n,
        h0_torsion=tors_fixed.source.underlying,
        h0_S=s_fixed.source.underlying,
        h0_W=w_fixed.source.underlying,
        kernel=ker.source.underlying,
        injective=injective,
        exact=exact,
    )
    if not injective:
        raise ExactnessFailure(f"H0(chars[{n}]) -> H0(S/{n}) is not injective for {record.name}")
    if not exact:
        raise ExactnessFailure(f"kernel of H0(S/{n}) -> H0(W/{n}) is not the image of H0(chars[{n}])")
    return record


def inv1_mod_n(
    g: MultTypeGroup, n: int, res: ToriResolution | None = None, backend: Backend = DEFAULT
) -> InvariantReport:
    """Homomorphic invariants of G with values in K1/n, i.e. G*[n]."""
    if n < 1:
        raise ValueError("n must be positive")
    fixed = backend.h0(g.chars)
    direct = n_torsion(fixed, n)
    record = verify_cor52(g, n, res)
    via_resolution = record.kernel
    ok = direct == via_resolution
    if not ok:
        raise CrossCheckFailure(
            f"G*[{n}] = {direct} directly but {via_resolution} through the resolution"
        )
    return InvariantReport(
        group=direct,
        theorem="T1_mod_n",
        name=_label(g),
        modulus=n,
        witnesses=(
            ("H0(chars)", fixed),
            ("H0(chars)[n]", direct),
            ("ker(H0(S/n) -> H0(W/n))", via_resolution),
            ("H0(S/n)", record.h0_S),
            ("H0(W/n)", record.h0_W),
        ),
        checks=(("direct == resolution", ok), ("fixed-point sequence exact", record.passed)),
    )


def inv1_qz(g: MultTypeGroup, res: ToriResolution | None = None, backend: Backend = DEFAULT) -> InvariantReport:
    """Homomorphic invariants with values in K1 tensor Q/Z, i.e. the torsion of G*."""
    fixed = backend.h0(g.chars)
    tors = torsion_part(fixed)
    e = tors.exponent
    stable = inv1_mod_n(g, e, res, backend)
    ok = stable.group == tors
    if not ok:
        raise CrossCheckFailure(f"G*_tors = {tors} but G*[{e}] = {stable.group}")
    return InvariantReport(
        group=tors,
        theorem="T1_QZ_finite_part",
        name=_label(g),
        witnesses=(("H0(chars)", fixed), (f"G*[{e}]", stable.group)),
        checks=((f"stabilised at n = {e}", ok),) + stable.checks,
    )


def inv0_torus_mod_n(t: MultTypeGroup, n: int, backend: Backend = DEFAULT) -> InvariantReport:
    """Type-zero homomorphic invariants of a torus with values in K1/n: H0(T*/n)."""
    if n < 1:
        raise ValueError("n must be positive")
    _require_torus(t)
    grp = backend.h0(mod_n(t.chars, n))
    return InvariantReport(
        group=grp,
        theorem="T0_torus_mod_n",
        name=_label(t),
        modulus=n,
        witnesses=(("H0(T*/n)", grp),),
    )


def qz_ladder_holds(divisible_rank: int, finite: FinAbGroup, fixed_mod_n: FinAbGroup, n: int) -> bool:
    return fixed_mod_n.order == n ** divisible_rank * n_torsion(finite, n).order


def inv0_torus_qz(t: MultTypeGroup, ladder=QZ_LADDER, backend: Backend = DEFAULT) -> InvariantReport:
    """Type-zero invariants of a torus with values in K1 tensor Q/Z.

    H0(T* tensor Q/Z) is (Q/Z)^r + H1(T*) with r the rank of the fixed
    lattice; the finite part is stored as ``group``.  The closed form is
    checked against H0(T*/n) along ``ladder``.
    """
    _require_torus(t)
    fixed = backend.h0(t.chars)
    r = fixed.free_rank
    finite = backend.h1(t.chars)
    checks = []
    witnesses = [("H0(chars)", fixed), ("H1(chars)", finite)]
    for n in ladder:
        grp = backend.h0(mod_n(t.chars, n))
        ok = qz_ladder_holds(r, finite, grp, n)
        witnesses.append((f"H0(chars/{n})", grp))
        checks.append((f"|H0(chars/{n})| == {n}^{r} * |H1[{n}]|", ok))
        if not ok:
            raise CrossCheckFailure(
                f"|H0(chars/{n})| = {grp.order} but (Z/{n})^{r} + H1[{n}] has order "
                f"{n ** r * n_torsion(finite, n).order}"
            )
    return InvariantReport(
        group=finite,
        theorem="T0_torus_QZ",
        name=_label(t),
        divisible_rank=r,
        witnesses=tuple(witnesses),
        checks=tuple(checks),
    )


def pic_torus(t: MultTypeGroup, backend: Backend = DEFAULT) -> InvariantReport:
    """Picard group of a torus, as H1 of its character lattice."""
    _require_torus(t)
    grp = backend.h1(t.chars)
    return InvariantReport(group=grp, theorem="Pic", name=_label(t), witnesses=(("H1(chars)", grp),))
