"""Finite groups given by a multiplication table.

Elements are the indices ``0 .. order-1``.  ``mul[a][b]`` is the index of
``a * b``.  The Galois group of the build always enters through one of
these finite quotients.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations as _all_permutations
from typing import Sequence

from .errors import InvalidSubgroup, RelationViolation


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    generators: tuple[int, ...]
    element_names: tuple[str, ...] | None = None
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mul", tuple(tuple(r) for r in self.mul))
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.element_names is not None:
            object.__setattr__(self, "element_names", tuple(self.element_names))
        self._validate()

    def _validate(self):
        n = self.order
        if n < 1:
            raise RelationViolation("group order must be positive")
        if len(self.mul) != n or any(len(r) != n for r in self.mul):
            raise RelationViolation(f"multiplication table must be {n}x{n}")
        if any(not 0 <= x < n for r in self.mul for x in r):
            raise RelationViolation("multiplication table entry out of range")
        e = self.identity
        if not 0 <= e < n:
            raise RelationViolation("identity index out of range")
        for a in range(n):
            if self.mul[e][a] != a or self.mul[a][e] != a:
                raise RelationViolation(f"{e} is not a two-sided identity (fails at {a})", (e, a))
            if e not in self.mul[a]:
                raise RelationViolation(f"element {a} has no inverse")
        m = self.mul
        for a in range(n):
            ma = m[a]
            for b in range(n):
                ab = ma[b]
                mab, mb = m[ab], m[b]
                for c in range(n):
                    if mab[c] != ma[mb[c]]:
                        raise RelationViolation(f"multiplication is not associative at {(a, b, c)}", (a, b))
        if any(not 0 <= g < n for g in self.generators):
            raise RelationViolation("generator index out of range")
        if len(self.closure(self.generators)) != n:
            raise RelationViolation("generators do not generate the group")
        if self.element_names is not None and len(self.element_names) != n:
            raise RelationViolation("need one name per element")

    # -- basic operations -------------------------------------------------

    def elements(self) -> range:
        return range(self.order)

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.mul[a].index(self.identity)

    def closure(self, gens) -> frozenset[int]:
        seen = {self.identity}
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def is_subgroup(self, elems) -> bool:
        s = set(elems)
        if self.identity not in s:
            return False
        return all(self.mul[a][b] in s for a in s for b in s)

    def spanning_tree(self) -> list[tuple[int, int, int]]:
        """BFS tree of the right Cayley graph.

        Returns ``(parent, generator_position, child)`` triples in BFS order,
        with ``child == parent * generators[generator_position]``.
        """
        seen = {self.identity}
        queue = deque([self.identity])
        tree = []
        while queue:
            g = queue.popleft()
            for j, s in enumerate(self.generators):
                h = self.mul[g][s]
                if h not in seen:
                    seen.add(h)
                    tree.append((g, j, h))
                    queue.append(h)
        return tree

    def left_cosets(self, subgroup: Sequence[int]) -> list[tuple[int, ...]]:
        """Left cosets gH in order of first appearance; each sorted."""
        if not self.is_subgroup(subgroup):
            raise InvalidSubgroup(f"{sorted(subgroup)} is not a subgroup")
        cosets, seen = [], set()
        for g in range(self.order):
            if g in seen:
                continue
            c = tuple(sorted(self.mul[g][h] for h in subgroup))
            seen.update(c)
            cosets.append(c)
        return cosets

    def coset_action(self, subgroup: Sequence[int]) -> list[tuple[int, ...]]:
        """Permutation of the left cosets of ``subgroup`` induced by each generator."""
        cosets = self.left_cosets(subgroup)
        where = {x: i for i, c in enumerate(cosets) for x in c}
        return [tuple(where[self.mul[s][c[0]]] for c in cosets) for s in self.generators]

    def label(self, a: int) -> str:
        return self.element_names[a] if self.element_names else str(a)

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]], name: str | None = None) -> FiniteGroup:
        """Group generated by permutations of ``0..d-1``.

        Elements are numbered in BFS order from the identity; ``p*q`` means
        apply ``q`` first.
        """
        perms = [tuple(p) for p in perms]
        if not perms:
            return cls.trivial()
        d = len(perms[0])
        for p in perms:
            if len(p) != d or sorted(p) != list(range(d)):
                raise RelationViolation(f"{list(p)} is not a permutation of 0..{d - 1}")
        ident = tuple(range(d))
        elems = [ident]
        index = {ident: 0}
        i = 0
        while i < len(elems):
            x = elems[i]
            for p in perms:
                y = tuple(x[p[k]] for k in range(d))
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
            i += 1
        mul = [[index[tuple(a[b[k]] for k in range(d))] for b in elems] for a in elems]
        return cls(len(elems), mul, 0, tuple(index[p] for p in perms), None, name)

    @classmethod
    def trivial(cls) -> FiniteGroup:
        return cls(1, ((0,),), 0, (), None, "1")

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        mul = [[(a + b) % n for b in range(n)] for a in range(n)]
        return cls(n, mul, 0, (1 % n,) if n > 1 else (), None, f"C{n}")

    @classmethod
    def klein_four(cls) -> FiniteGroup:
        mul = [[a ^ b for b in range(4)] for a in range(4)]
        return cls(4, mul, 0, (1, 2), None, "V4")

    @classmethod
    def symmetric(cls, k: int) -> FiniteGroup:
        """S_k on ``k`` points, generated by a transposition and a k-cycle."""
        if k < 2:
            return cls.trivial()
        elems = sorted(_all_permutations(range(k)))
        index = {p: i for i, p in enumerate(elems)}
        mul = [[index[tuple(a[b[t]] for t in range(k))] for b in elems] for a in elems]
        swap = tuple([1, 0] + list(range(2, k)))
        cycle = tuple(list(range(1, k)) + [0])
        gens = (index[swap],) if k == 2 else (index[swap], index[cycle])
        return cls(len(elems), mul, 0, gens, None, f"S{k}")
