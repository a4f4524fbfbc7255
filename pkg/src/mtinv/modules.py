"""Gamma-lattices, finitely generated Gamma-modules and their cohomology.

A module is presented as ``L0 / image(relations)`` where ``L0`` is a
Gamma-lattice (``Z^rank`` with an honest matrix action) and the column
lattice of ``relations`` is Gamma-stable.  Maps are integer matrices
between the ambient lattices; they are compared modulo the target
relations, which is the only meaningful notion of equality on quotients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import CompositionMismatch, InvariantViolation, RelationViolation, SizeGuard
from .groups import FiniteGroup
from .lattice import (
    FinAbGroup,
    IntMatrix,
    Sublattice,
    block_diagonal,
    cokernel,
    hstack,
    kernel_projection,
    vstack,
)

H1_ORACLE_LIMIT = 64


@dataclass(frozen=True)
class GammaLattice:
    group: FiniteGroup
    rank: int
    action: tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(self.action))
        G, n = self.group, self.rank
        if len(self.action) != G.order:
            raise RelationViolation(f"need {G.order} action matrices, got {len(self.action)}")
        for a in self.action:
            if a.shape != (n, n):
                raise RelationViolation(f"action matrix of shape {a.shape}, expected {(n, n)}")
        if self.action[G.identity] != IntMatrix.identity(n):
            raise RelationViolation("identity element does not act trivially")
        for s in G.generators:
            if abs(self.action[s].det()) != 1:
                raise RelationViolation(f"action of generator {G.label(s)} is not invertible over Z")
        # rho(g s) == rho(g) rho(s) along every generator edge implies the
        # full homomorphism property by induction on word length
        for g in G.elements():
            ag = self.action[g]
            for s in G.generators:
                if ag @ self.action[s] != self.action[G.mul[g][s]]:
                    raise RelationViolation(
                        f"action fails rho({G.label(g)})rho({G.label(s)}) == rho({G.label(G.mul[g][s])})",
                        (g, s),
                    )

    @classmethod
    def from_generators(cls, group: FiniteGroup, matrices: Sequence[IntMatrix]) -> GammaLattice:
        """Extend matrices for ``group.generators`` to the whole group, then validate."""
        if len(matrices) != len(group.generators):
            raise RelationViolation(
                f"need {len(group.generators)} generator matrices, got {len(matrices)}"
            )
        if matrices:
            n = matrices[0].rows
        else:
            raise RelationViolation("rank cannot be inferred without generators; use trivial()")
        for m in matrices:
            if m.shape != (n, n):
                raise RelationViolation(f"generator matrix of shape {m.shape}, expected {(n, n)}")
        action: list[IntMatrix | None] = [None] * group.order
        action[group.identity] = IntMatrix.identity(n)
        for parent, j, child in group.spanning_tree():
            action[child] = action[parent] @ matrices[j]
        for j, s in enumerate(group.generators):
            if action[s] != matrices[j]:
                raise RelationViolation(
                    f"generator {group.label(s)} is reached by a word whose action differs from its matrix",
                    (group.identity, s),
                )
        return cls(group, n, tuple(action))

    @classmethod
    def trivial(cls, group: FiniteGroup, rank: int) -> GammaLattice:
        return cls(group, rank, (IntMatrix.identity(rank),) * group.order)

    def of(self, g: int) -> IntMatrix:
        return self.action[g]

    def generator_matrices(self) -> list[IntMatrix]:
        return [self.action[s] for s in self.group.generators]

    def verify_exhaustive(self) -> None:
        """Check rho(g) rho(h) == rho(gh) over the whole multiplication table."""
        G = self.group
        for g in G.elements():
            for h in G.elements():
                if self.action[g] @ self.action[h] != self.action[G.mul[g][h]]:
                    raise RelationViolation(f"action fails at {(g, h)}", (g, h))

    @property
    def is_permutation(self) -> bool:
        for a in self.action:
            if any(x not in (0, 1) for x in a.entries):
                return False
            if any(sum(r) != 1 for r in a.to_rows()) or any(sum(c) != 1 for c in a.columns()):
                return False
        return True

    def direct_sum(self, other: GammaLattice) -> GammaLattice:
        if self.group != other.group:
            raise CompositionMismatch("direct sum of lattices over different groups")
        return GammaLattice(
            self.group,
            self.rank + other.rank,
            tuple(block_diagonal(a, b) for a, b in zip(self.action, other.action)),
        )


def permutation_lattice(group: FiniteGroup, perms: Sequence[Sequence[int]]) -> GammaLattice:
    """Z[X] for a Gamma-set X given by one permutation per generator.

    ``perms[j][i]`` is the image of point ``i`` under ``group.generators[j]``.
    """
    mats = []
    for p in perms:
        d = len(p)
        if sorted(p) != list(range(d)):
            raise RelationViolation(f"{list(p)} is not a permutation")
        rows = [[0] * d for _ in range(d)]
        for i, pi in enumerate(p):
            rows[pi][i] = 1
        mats.append(IntMatrix.from_rows(rows, d))
    if not group.generators:
        return GammaLattice.trivial(group, len(perms[0]) if perms else 1)
    if len({m.rows for m in mats}) != 1:
        raise RelationViolation("generator permutations act on sets of different sizes")
    return GammaLattice.from_generators(group, mats)


def coset_lattice(group: FiniteGroup, subgroup: Sequence[int]) -> GammaLattice:
    """Z[Gamma/H]."""
    perms = group.coset_action(subgroup)
    if not perms:
        return GammaLattice.trivial(group, len(group.left_cosets(subgroup)))
    return permutation_lattice(group, perms)


def regular_lattice(group: FiniteGroup) -> GammaLattice:
    return coset_lattice(group, [group.identity])


@dataclass(frozen=True)
class GammaModule:
    ambient: GammaLattice
    relations: IntMatrix
    underlying: FinAbGroup = field(init=False, compare=False)

    def __post_init__(self):
        if self.relations.rows != self.ambient.rank:
            raise InvariantViolation(
                f"relation matrix has {self.relations.rows} rows, ambient rank is {self.ambient.rank}"
            )
        rel = self.relation_lattice
        for s in self.group.generators:
            if not rel.contains_all(self.ambient.action[s] @ self.relations):
                raise InvariantViolation(
                    f"relation lattice is not stable under generator {self.group.label(s)}"
                )
        object.__setattr__(self, "underlying", cokernel(self.relations))

    @classmethod
    def lattice(cls, ambient: GammaLattice) -> GammaModule:
        return cls(ambient, IntMatrix.zeros(ambient.rank, 0))

    @property
    def relation_lattice(self) -> Sublattice:
        cached = self.__dict__.get("_relation_lattice")
        if cached is None:
            cached = Sublattice(self.relations)
            object.__setattr__(self, "_relation_lattice", cached)
        return cached

    @property
    def group(self) -> FiniteGroup:
        return self.ambient.group

    @property
    def rank(self) -> int:
        return self.ambient.rank

    def action(self, g: int) -> IntMatrix:
        return self.ambient.action[g]

    @property
    def is_torsion_free(self) -> bool:
        return not self.underlying.torsion

    def is_zero_vector(self, vec: Sequence[int]) -> bool:
        return self.relation_lattice.contains(vec)

    def as_lattice(self) -> GammaModule:
        """Re-present a torsion-free module on a lattice with no relations."""
        if not self.is_torsion_free:
            raise InvariantViolation("module has torsion; it is not a lattice")
        if self.relations.cols == 0:
            return self
        from .lattice import snf

        dec = snf(self.relations)
        r = dec.rank
        proj = dec.U.submatrix(range(r, self.rank), range(self.rank))
        uinv = _unimodular_inverse(dec.U)
        lift = uinv.select_columns(range(r, self.rank))
        mats = [proj @ a @ lift for a in self.ambient.generator_matrices()]
        if self.group.generators:
            lat = GammaLattice.from_generators(self.group, mats)
        else:
            lat = GammaLattice.trivial(self.group, self.rank - r)
        return GammaModule.lattice(lat)

    def direct_sum(self, other: GammaModule) -> GammaModule:
        return GammaModule(
            self.ambient.direct_sum(other.ambient),
            block_diagonal(self.relations, other.relations),
        )


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    from .lattice import solve_linear

    n = u.rows
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        x = solve_linear(u, e)
        assert x is not None
        cols.append(x)
    return IntMatrix.from_columns(cols, n)


@dataclass(frozen=True)
class GammaMap:
    source: GammaModule
    target: GammaModule
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise CompositionMismatch(
                f"matrix shape {self.matrix.shape} does not match "
                f"{self.source.rank} -> {self.target.rank}"
            )
        if self.source.group != self.target.group:
            raise CompositionMismatch("source and target carry different groups")
        rel = self.target.relation_lattice
        if not rel.contains_all(self.matrix @ self.source.relations):
            raise InvariantViolation("map does not carry source relations into target relations")
        for s in self.source.group.generators:
            diff = self.matrix @ self.source.action(s) - self.target.action(s) @ self.matrix
            if not rel.contains_all(diff):
                raise InvariantViolation(
                    f"map is not equivariant for generator {self.source.group.label(s)}"
                )

    def image_lattice(self) -> Sublattice:
        """Image plus target relations, as a sublattice of the target ambient."""
        return Sublattice(hstack(self.matrix, self.target.relations))

    def is_injective(self) -> bool:
        return kernel_map(self).source.underlying.is_trivial

    def is_surjective(self) -> bool:
        return cokernel(hstack(self.matrix, self.target.relations)).is_trivial

    def is_zero(self) -> bool:
        return self.target.relation_lattice.contains_all(self.matrix)


def identity_map(m: GammaModule) -> GammaMap:
    return GammaMap(m, m, IntMatrix.identity(m.rank))


def multiplication_map(m: GammaModule, n: int) -> GammaMap:
    return GammaMap(m, m, IntMatrix.scalar(m.rank, n))


def compose(g: GammaMap, f: GammaMap) -> GammaMap:
    """``g o f``."""
    if f.target != g.source:
        raise CompositionMismatch("target of the first map is not the source of the second")
    return GammaMap(f.source, g.target, g.matrix @ f.matrix)


def _restrict_action(ambient: GammaLattice, basis: Sublattice) -> GammaLattice:
    """Action on a Gamma-stable sublattice, in the coordinates of its basis."""
    G = ambient.group
    if not G.generators:
        return GammaLattice.trivial(G, basis.rank)
    mats = [basis.coordinate_matrix(ambient.action[s] @ basis.basis) for s in G.generators]
    return GammaLattice.from_generators(G, mats)


def submodule_from_lattice(m: GammaModule, gens: IntMatrix) -> GammaMap:
    """Inclusion of the submodule (L + relations)/relations for a Gamma-stable lattice L.

    ``gens`` spans L; it need not contain the relations.
    """
    lat = Sublattice(hstack(gens, m.relations))
    ambient = _restrict_action(m.ambient, lat)
    sub = GammaModule(ambient, lat.coordinate_matrix(m.relations))
    return GammaMap(sub, m, lat.basis)


def kernel_map(f: GammaMap) -> GammaMap:
    """Inclusion of ker(f) into f.source, with the induced action."""
    src, tgt = f.source, f.target
    stacked = hstack(f.matrix, -tgt.relations)
    gens = kernel_projection(stacked, src.rank)
    return submodule_from_lattice(src, gens)


def cokernel_map(f: GammaMap) -> GammaMap:
    """Projection from f.target onto coker(f)."""
    tgt = f.target
    quot = GammaModule(tgt.ambient, hstack(tgt.relations, f.matrix))
    return GammaMap(tgt, quot, IntMatrix.identity(tgt.rank))


def image_map(f: GammaMap) -> GammaMap:
    """Inclusion of im(f) into f.target."""
    return submodule_from_lattice(f.target, f.matrix)


def mod_n(m: GammaModule, n: int) -> GammaModule:
    """``m / n m`` with the inherited action."""
    if n < 1:
        raise ValueError("n must be positive")
    return GammaModule(m.ambient, hstack(m.relations, IntMatrix.scalar(m.rank, n)))


def torsion_module(m: GammaModule, n: int) -> GammaMap:
    """Inclusion of the n-torsion submodule ``m[n]``."""
    if n < 1:
        raise ValueError("n must be positive")
    return kernel_map(multiplication_map(m, n))


def same_submodule(f: GammaMap, g: GammaMap) -> bool:
    """Do two maps into the same module have the same image?"""
    if f.target != g.target:
        raise CompositionMismatch("maps have different targets")
    return f.image_lattice() == g.image_lattice()


# ---------------------------------------------------------------------------
# cohomology


def fixed_lattice(m: GammaModule) -> IntMatrix:
    """Generators of {x in L0 : g x - x in relations for every generator g}."""
    G = m.group
    r = m.rank
    if not G.generators:
        return IntMatrix.identity(r)
    k = len(G.generators)
    top = vstack(*(m.action(s) - IntMatrix.identity(r) for s in G.generators))
    rel = block_diagonal(*([m.relations] * k))
    return kernel_projection(hstack(top, -rel), r)


def h0(m: GammaModule) -> FinAbGroup:
    """The Gamma-fixed subgroup of m."""
    lat = Sublattice(hstack(fixed_lattice(m), m.relations))
    return lat.quotient(m.relations)


def h0_sub(m: GammaModule) -> GammaMap:
    """Inclusion of the fixed points, as a module with trivial action."""
    lat = Sublattice(hstack(fixed_lattice(m), m.relations))
    fixed = GammaModule(GammaLattice.trivial(m.group, lat.rank), lat.coordinate_matrix(m.relations))
    return GammaMap(fixed, m, lat.basis)


def _cocycle_quotient(m: GammaModule, constraint: IntMatrix, n_blocks: int, coboundary: IntMatrix) -> FinAbGroup:
    """Z1 / B1 where Z1 = {u in L0^n_blocks : constraint u in relations^rows}."""
    r = m.rank
    n_cons = constraint.rows // r if r else 0
    rel_big = block_diagonal(*([m.relations] * n_cons)) if n_cons else IntMatrix.zeros(0, 0)
    if constraint.rows:
        z1_gens = kernel_projection(hstack(constraint, -rel_big), r * n_blocks)
    else:
        z1_gens = IntMatrix.identity(r * n_blocks)
    rel_blocks = block_diagonal(*([m.relations] * n_blocks)) if n_blocks else IntMatrix.zeros(0, 0)
    z1 = Sublattice(hstack(z1_gens, rel_blocks))
    return z1.quotient(hstack(coboundary, rel_blocks))


def h1(m: GammaModule) -> FinAbGroup:
    """First cohomology from cocycle values on the generators.

    A cocycle is determined by c(s) for the generators s.  Extending along
    a BFS tree of the Cayley graph defines c on every element; the cocycle
    identity then only has to be imposed on the non-tree edges.
    """
    G = m.group
    gens = G.generators
    k, r = len(gens), m.rank
    if k == 0 or r == 0:
        return FinAbGroup()
    # c(g) = P[g] @ u, u = (c(s_1), ..., c(s_k))
    blocks = []
    for j in range(k):
        sel = [[0] * (r * k) for _ in range(r)]
        for i in range(r):
            sel[i][j * r + i] = 1
        blocks.append(IntMatrix.from_rows(sel, r * k))
    P: list[IntMatrix | None] = [None] * G.order
    P[G.identity] = IntMatrix.zeros(r, r * k)
    tree = set()
    for parent, j, child in G.spanning_tree():
        P[child] = P[parent] + m.action(parent) @ blocks[j]
        tree.add((parent, j))
    rows = []
    for g in G.elements():
        for j, s in enumerate(gens):
            if (g, j) not in tree:
                rows.append(P[g] + m.action(g) @ blocks[j] - P[G.mul[g][s]])
    constraint = vstack(*rows, cols=r * k)
    coboundary = vstack(*(m.action(s) - IntMatrix.identity(r) for s in gens))
    return _cocycle_quotient(m, constraint, k, coboundary)


def h1_oracle(m: GammaModule) -> FinAbGroup:
    """First cohomology with an unknown c(g) for every element and every pair (g, h) imposed."""
    G = m.group
    n, r = G.order, m.rank
    if n * r > H1_ORACLE_LIMIT:
        raise SizeGuard(f"|Gamma| * rank = {n * r} exceeds {H1_ORACLE_LIMIT}")
    if r == 0:
        return FinAbGroup()
    width = n * r
    rows = []
    for g in range(n):
        ag = m.action(g)
        for h in range(n):
            gh = G.mul[g][h]
            # c(gh) - c(g) - g c(h)
            blk = [[0] * width for _ in range(r)]
            for i in range(r):
                blk[i][gh * r + i] += 1
                blk[i][g * r + i] -= 1
                for t in range(r):
                    blk[i][h * r + t] -= ag[i, t]
            rows.append(IntMatrix.from_rows(blk, width))
    constraint = vstack(*rows)
    coboundary = vstack(*(m.action(g) - IntMatrix.identity(r) for g in range(n)))
    return _cocycle_quotient(m, constraint, n, coboundary)
