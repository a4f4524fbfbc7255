"""Enumeration-based oracles.

These deliberately avoid the Smith-form machinery where they can, so
they can be used to check it.  Everything here is exponential; callers
keep inputs small.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Callable, Iterable, Sequence

from .errors import SizeGuard
from .lattice import FinAbGroup, IntMatrix

ENUMERATION_LIMIT = 10_000


def minor_gcd_invariants(m: IntMatrix) -> list[int]:
    """Invariant factors from gcds of k x k minors (determinantal divisors)."""
    out = []
    prev = 1
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for rows in combinations(range(m.rows), k):
            for cols in combinations(range(m.cols), k):
                g = gcd(g, m.submatrix(rows, cols).det())
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def rational_rank(m: IntMatrix) -> int:
    a = [[Fraction(x) for x in r] for r in m.to_rows()]
    rank = 0
    for c in range(m.cols):
        piv = next((i for i in range(rank, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(m.rows):
            if i != rank and a[i][c]:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def closure(gens: Iterable[tuple], add: Callable, zero: tuple, limit: int = ENUMERATION_LIMIT) -> set:
    """Subgroup generated by ``gens`` inside a finite group, by BFS."""
    gens = list(gens)
    seen = {zero}
    queue = deque([zero])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = add(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    raise SizeGuard(f"enumeration exceeded {limit} elements")
                queue.append(y)
    return seen


def cokernel_order(m: IntMatrix) -> int:
    """|Z^rows / image(m)| for a matrix of full row rank, by counting residues.

    The image contains D Z^rows with D = |some nonzero maximal minor|, so
    the quotient is (Z/D)^rows modulo the image of m reduced mod D.
    """
    r = m.rows
    D = 0
    for cols in combinations(range(m.cols), r):
        D = gcd(D, m.submatrix(range(r), cols).det())
    if D == 0:
        raise ValueError("matrix does not have full row rank")
    if D ** r > 50 * ENUMERATION_LIMIT:
        raise SizeGuard("fundamental domain too large")
    gens = [tuple(x % D for x in c) for c in m.columns()]
    gens += [tuple(D if i == j else 0 for i in range(r)) for j in range(r)]
    add = lambda a, b: tuple((x + y) % D for x, y in zip(a, b))
    image = closure(gens, add, (0,) * r, limit=D ** r)
    return D ** r // len(image)


def structure_from_counts(size: int, count_killed_by: Callable[[int], int]) -> FinAbGroup:
    """Finite abelian group from |A| and the function k -> |A[k]|.

    For each prime p, the number of cyclic p-factors of order >= p^j is
    log_p |A[p^j]| - log_p |A[p^(j-1)]|.
    """
    orders = []
    n = size
    p = 2
    primes = []
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    for p in primes:
        logs = [0]
        j = 1
        while True:
            c = count_killed_by(p ** j)
            e = 0
            while c % p == 0 and c > 1:
                c //= p
                e += 1
            logs.append(e)
            if logs[-1] == logs[-2]:
                break
            j += 1
        at_least = [logs[i] - logs[i - 1] for i in range(1, len(logs))]
        for j, cnt in enumerate(at_least, start=1):
            nxt = at_least[j] if j < len(at_least) else 0
            orders += [p ** j] * (cnt - nxt)
    return FinAbGroup.from_cyclic_orders(orders)


def group_elements(g: FinAbGroup) -> list[tuple[int, ...]]:
    if not g.is_finite:
        raise ValueError("cannot enumerate an infinite group")
    if g.order > ENUMERATION_LIMIT:
        raise SizeGuard(f"group of order {g.order} is too large to enumerate")
    return list(product(*(range(d) for d in g.torsion)))


def subgroup_structure(elements: Sequence[tuple[int, ...]], moduli: Sequence[int]) -> FinAbGroup:
    """Structure of a subgroup of prod Z/moduli given as its full element list."""
    elems = list(elements)

    def killed(k):
        return sum(1 for x in elems if all((k * a) % d == 0 for a, d in zip(x, moduli)))

    return structure_from_counts(len(elems), killed)


def n_torsion_by_enumeration(g: FinAbGroup, n: int) -> FinAbGroup:
    els = [x for x in group_elements(g) if all((n * a) % d == 0 for a, d in zip(x, g.torsion))]
    return subgroup_structure(els, g.torsion)


def torsion_by_enumeration(g: FinAbGroup) -> FinAbGroup:
    """Torsion subgroup of Z^r + finite part, by element orders (free part never has torsion)."""
    return subgroup_structure(group_elements(FinAbGroup(0, g.torsion)), g.torsion)


# ---------------------------------------------------------------------------
# finite Gamma-modules


class FiniteModuleModel:
    """Elements of a finite Gamma-module as residue tuples, with the action tabulated.

    Coordinates come from one Smith decomposition of the relations; after
    that everything is plain enumeration.
    """

    def __init__(self, module):
        from .lattice import snf, solve_linear

        if not module.underlying.is_finite:
            raise ValueError("module is infinite")
        if module.underlying.order > ENUMERATION_LIMIT:
            raise SizeGuard("module too large to enumerate")
        self.module = module
        dec = snf(module.relations)
        diag = list(dec.diagonal) + [0] * (module.rank - len(dec.diagonal))
        keep = [i for i, d in enumerate(diag) if d != 1]
        self.moduli = tuple(diag[i] for i in keep)
        proj = dec.U.submatrix(keep, range(module.rank))
        lift_cols = []
        for i in keep:
            e = [0] * module.rank
            e[i] = 1
            lift_cols.append(solve_linear(dec.U, e))
        lift = IntMatrix.from_columns(lift_cols, module.rank)
        self.elements = list(product(*(range(d) for d in self.moduli)))
        self.zero = tuple(0 for _ in self.moduli)
        self.index = {x: i for i, x in enumerate(self.elements)}
        G = module.group
        self._act = []
        for g in G.elements():
            a = proj @ module.action(g) @ lift
            self._act.append([self.reduce(a.apply(x)) for x in self.elements])

    def reduce(self, x) -> tuple[int, ...]:
        return tuple(v % d for v, d in zip(x, self.moduli))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.moduli))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.moduli))

    def act(self, g: int, x) -> tuple[int, ...]:
        return self._act[g][self.index[x]]

    def fixed_points(self) -> list[tuple[int, ...]]:
        G = self.module.group
        return [x for x in self.elements if all(self.act(g, x) == x for g in G.elements())]


def h0_by_enumeration(module) -> FinAbGroup:
    model = FiniteModuleModel(module)
    return subgroup_structure(model.fixed_points(), model.moduli)


def h1_by_enumeration(module) -> FinAbGroup:
    """H1 of a finite module from all functions on the generators.

    Each assignment of values to the generators is extended along words;
    it is a cocycle iff the extension is consistent and satisfies the
    cocycle identity for every pair.
    """
    model = FiniteModuleModel(module)
    G = module.group
    gens = G.generators
    if len(model.elements) ** max(len(gens), 1) > 50 * ENUMERATION_LIMIT:
        raise SizeGuard("too many candidate cocycles")
    tree = G.spanning_tree()
    cocycles = []
    for values in product(model.elements, repeat=len(gens)):
        c = {G.identity: model.zero}
        for parent, j, child in tree:
            c[child] = model.add(c[parent], model.act(parent, values[j]))
        if all(c[s] == values[j] for j, s in enumerate(gens)) and all(
            c[G.mul[g][h]] == model.add(c[g], model.act(g, c[h]))
            for g in G.elements()
            for h in G.elements()
        ):
            cocycles.append(tuple(c[g] for g in G.elements()))
    coboundaries = {
        tuple(model.add(model.act(g, x), model.neg(x)) for g in G.elements()) for x in model.elements
    }

    def scale(k, z):
        return tuple(tuple((k * a) % d for a, d in zip(v, model.moduli)) for v in z)

    def killed(k):
        return sum(1 for z in cocycles if scale(k, z) in coboundaries) // len(coboundaries)

    return structure_from_counts(len(cocycles) // len(coboundaries), killed)


def h1_lattice_order(module) -> int:
    """|H1(Gamma, L)| for a lattice L, via |H0(L/N)| / N^rank(L^Gamma) with N = |Gamma|.

    Uses 0 -> L -> L -> L/N -> 0 and the fact that N kills H1.
    """
    from .modules import mod_n

    G = module.group
    N = G.order
    r = module.rank
    stacked = [module.action(g) - IntMatrix.identity(r) for g in G.elements()]
    rows = [row for m in stacked for row in m.to_rows()]
    fixed_rank = r - rational_rank(IntMatrix.from_rows(rows, r)) if rows else r
    quotient = FiniteModuleModel(mod_n(module, N))
    return len(quotient.fixed_points()) // N ** fixed_rank
