"""Groups of multiplicative type, handled entirely through their character modules.

A resolution by tori of G is a short exact sequence of Gamma-modules
``0 -> S -> W -> chars -> 0`` with W a permutation lattice.  Dually it is
``1 -> G -> P -> T -> 1`` with P quasisplit, which is where the
type-one invariants are computed from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import ExactnessFailure, InvalidSubgroup, UnknownConstruction
from .groups import FiniteGroup
from .lattice import FinAbGroup, IntMatrix, Sublattice, hstack, snf, solve_linear
from .modules import (
    GammaLattice,
    GammaMap,
    GammaModule,
    coset_lattice,
    kernel_map,
    mod_n,
    regular_lattice,
    same_submodule,
    torsion_module,
)


@dataclass(frozen=True)
class MultTypeGroup:
    chars: GammaModule
    name: str | None = None

    @property
    def group(self) -> FiniteGroup:
        return self.chars.group

    @property
    def is_torus(self) -> bool:
        return self.chars.is_torsion_free

    def __str__(self):
        return self.name or f"<group of multiplicative type, chars {self.chars.underlying}>"


@dataclass(frozen=True)
class ToriResolution:
    g: MultTypeGroup
    W: GammaLattice
    S: GammaLattice
    surj: GammaMap
    incl: GammaMap
    generators: tuple[tuple[int, ...], ...]

    def check(self) -> None:
        """Raise ExactnessFailure unless 0 -> S -> W -> chars -> 0 is exact."""
        if not self.W.is_permutation:
            raise ExactnessFailure("W is not a permutation lattice")
        if not self.surj.is_surjective():
            raise ExactnessFailure("W -> chars is not surjective")
        if self.incl.matrix.cols and Sublattice(self.incl.matrix).rank != self.incl.matrix.cols:
            raise ExactnessFailure("S -> W is not injective")
        if not self.g.chars.relation_lattice.contains_all(self.surj.matrix @ self.incl.matrix):
            raise ExactnessFailure("composite S -> W -> chars is not zero")
        ker = kernel_map(self.surj)
        if not same_submodule(ker, self.incl):
            raise ExactnessFailure("image of S differs from the kernel of W -> chars")


def smith_generators(m: GammaModule) -> list[tuple[int, ...]]:
    """Lifts to the ambient lattice of the Smith-basis generators of m's underlying group."""
    dec = snf(m.relations)
    diag = dec.diagonal
    uinv_cols = []
    # columns of U^-1: solve U x = e_i
    for i in range(m.rank):
        d = diag[i] if i < len(diag) else 0
        if d == 1:
            continue
        e = [0] * m.rank
        e[i] = 1
        x = solve_linear(dec.U, e)
        assert x is not None
        uinv_cols.append(x)
    return uinv_cols


def resolve_by_tori(g: MultTypeGroup, generators: Sequence[Sequence[int]] | None = None) -> ToriResolution:
    """Present g.chars as a quotient of a sum of regular blocks Z[Gamma].

    One block per generator; the block's basis vector e_h maps to h applied
    to the generator.  With no explicit generators the Smith-basis
    generators are used.
    """
    chars = g.chars
    G = chars.group
    gens = [tuple(v) for v in (smith_generators(chars) if generators is None else generators)]
    for v in gens:
        if len(v) != chars.rank:
            raise ValueError(f"generator {v} has wrong length for rank {chars.rank}")
    reg = regular_lattice(G)
    # regular_lattice numbers cosets of {e} in element order, so basis i <-> element i
    W = GammaLattice.trivial(G, 0)
    for _ in gens:
        W = W.direct_sum(reg)
    cols = [chars.action(h).apply(v) for v in gens for h in G.elements()]
    surj_matrix = IntMatrix.from_columns(cols, chars.rank)
    W_mod = GammaModule.lattice(W)
    surj = GammaMap(W_mod, chars, surj_matrix)
    ker = kernel_map(surj)
    S_mod = ker.source
    res = ToriResolution(
        g=g,
        W=W,
        S=S_mod.ambient,
        surj=surj,
        incl=GammaMap(GammaModule.lattice(S_mod.ambient), W_mod, ker.matrix),
        generators=tuple(gens),
    )
    res.check()
    return res


def perturbed_generators(g: MultTypeGroup) -> list[tuple[int, ...]]:
    """A second generating set: Smith generators reversed, with their sum appended."""
    gens = smith_generators(g.chars)
    if not gens:
        return [tuple([0] * g.chars.rank)]
    total = tuple(sum(c) for c in zip(*gens))
    return list(reversed(gens)) + [total]


# ---------------------------------------------------------------------------
# named constructions


def _trivial_group(group: FiniteGroup | None) -> FiniteGroup:
    return FiniteGroup.trivial() if group is None else group


def _check_subgroup(group: FiniteGroup, subgroup: Sequence[int] | None) -> list[int]:
    sub = [group.identity] if subgroup is None else list(subgroup)
    if not group.is_subgroup(sub):
        raise InvalidSubgroup(f"{sorted(sub)} is not a subgroup of {group}")
    return sub


def mu_n(n: int, group: FiniteGroup | None = None) -> MultTypeGroup:
    if n < 1:
        raise ValueError("n must be positive")
    G = _trivial_group(group)
    lat = GammaLattice.trivial(G, 1)
    return MultTypeGroup(GammaModule(lat, IntMatrix.from_rows([[n]])), f"mu_{n}")


def split_torus(r: int, group: FiniteGroup | None = None) -> MultTypeGroup:
    G = _trivial_group(group)
    name = "G_m" if r == 1 else f"G_m^{r}"
    return MultTypeGroup(GammaModule.lattice(GammaLattice.trivial(G, r)), name)


def weil_restriction_gm(group: FiniteGroup, subgroup: Sequence[int] | None = None) -> MultTypeGroup:
    sub = _check_subgroup(group, subgroup)
    lat = coset_lattice(group, sub)
    return MultTypeGroup(GammaModule.lattice(lat), f"R({group.name or group.order}/{len(sub)})")


def norm_one_torus(group: FiniteGroup, subgroup: Sequence[int] | None = None) -> MultTypeGroup:
    """Characters fit in 0 -> Z -> Z[Gamma/H] -> chars -> 0, the first map hitting the sum of the basis."""
    sub = _check_subgroup(group, subgroup)
    lat = coset_lattice(group, sub)
    ones = IntMatrix.from_columns([[1] * lat.rank], lat.rank)
    chars = GammaModule(lat, ones).as_lattice()
    return MultTypeGroup(chars, f"R1({group.name or group.order}/{len(sub)})")


def quotient_of_lattice(lattice: GammaLattice, relations: IntMatrix, name: str | None = None) -> MultTypeGroup:
    return MultTypeGroup(GammaModule(lattice, relations), name)


CONSTRUCTIONS = {
    "mu_n": mu_n,
    "split_torus": split_torus,
    "weil_restriction_gm": weil_restriction_gm,
    "norm_one_torus": norm_one_torus,
    "quotient_of_lattice": quotient_of_lattice,
}


def named_construction(kind: str, *args, **kwargs) -> MultTypeGroup:
    try:
        builder = CONSTRUCTIONS[kind]
    except KeyError:
        raise UnknownConstruction(f"unknown construction {kind!r}") from None
    return builder(*args, **kwargs)


# ---------------------------------------------------------------------------
# the snake lemma, mod n


class CharacterSequence(NamedTuple):
    """``0 -> chars[n] -> S/n -> W/n`` together with H^0 of the first term."""

    incl_mod_n: GammaMap
    snake: GammaMap
    h0_torsion: FinAbGroup


def snake_map(res: ToriResolution, n: int) -> GammaMap:
    """Connecting map chars[n] -> S/n.

    For x with n x = 0 lift x to w in W; then n w lies in S and its class
    mod n is the image of x.
    """
    chars = res.g.chars
    tors = torsion_module(chars, n)
    lift_system = hstack(res.surj.matrix, chars.relations)
    s_lat = Sublattice(res.incl.matrix)
    cols = []
    for b in tors.matrix.columns():
        sol = solve_linear(lift_system, b)
        if sol is None:
            raise ExactnessFailure("W -> chars is not surjective")
        w = sol[: res.W.rank]
        s = s_lat.coordinates([n * x for x in w])
        if s is None:
            raise ExactnessFailure("n times a lift of an n-torsion character is not in S")
        cols.append(s)
    S_n = mod_n(GammaModule.lattice(res.S), n)
    return GammaMap(tors.source, S_n, IntMatrix.from_columns(cols, res.S.rank))


def character_sequence_mod_n(res: ToriResolution, n: int) -> CharacterSequence:
    from .modules import h0

    if n < 1:
        raise ValueError("n must be positive")
    S_n = mod_n(GammaModule.lattice(res.S), n)
    W_n = mod_n(GammaModule.lattice(res.W), n)
    incl_n = GammaMap(S_n, W_n, res.incl.matrix)
    delta = snake_map(res, n)
    if not delta.is_injective():
        raise ExactnessFailure(f"chars[{n}] -> S/{n} is not injective")
    if not same_submodule(delta, kernel_map(incl_n)):
        raise ExactnessFailure(f"image of chars[{n}] differs from ker(S/{n} -> W/{n})")
    return CharacterSequence(incl_n, delta, h0(delta.source))
