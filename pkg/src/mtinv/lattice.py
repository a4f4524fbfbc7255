"""Exact integer linear algebra.

Everything here works on Python ints, so no intermediate result can
overflow.  Matrices are small and dense; the algorithms favour clarity
and determinism over asymptotic speed.

>>> m = IntMatrix.from_rows([[2, 4], [6, 8]])
>>> str(cokernel(m))
'Z/2 + Z/4'
>>> kernel_basis(IntMatrix.from_rows([[2, 4]])).to_rows()
[[-2], [1]]
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major.

    Instances are immutable; every operation returns a new matrix.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        if not all(type(x) is int for x in self.entries):
            bad = next(x for x in self.entries if type(x) is not int)
            raise TypeError(f"matrix entries must be int, got {type(bad).__name__}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length does not match row count")
        return cls(rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.scalar(n, 1)

    @classmethod
    def scalar(cls, n: int, c: int) -> IntMatrix:
        return cls(n, n, tuple(c if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols)

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_rows(self.columns(), self.rows)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> IntMatrix:
        rows, cols = list(rows), list(cols)
        return IntMatrix.from_rows([[self[i, j] for j in cols] for i in rows], len(cols))

    def select_columns(self, cols: Iterable[int]) -> IntMatrix:
        return self.submatrix(range(self.rows), cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- arithmetic -----------------------------------------------------------

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        oc = other.cols
        orows = [other.entries[k * oc:(k + 1) * oc] for k in range(other.rows)]
        out = []
        # accumulate rows of `other`; skipping zeros pays off on permutation blocks
        for i in range(self.rows):
            acc = [0] * oc
            for k, a in enumerate(self.row(i)):
                if a == 1:
                    acc = [x + y for x, y in zip(acc, orows[k])]
                elif a:
                    acc = [x + a * y for x, y in zip(acc, orows[k])]
            out.extend(acc)
        return IntMatrix(self.rows, oc, tuple(out))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(self.row(i), vec) if a) for i in range(self.rows))

    def _zip_with(self, other: IntMatrix, op) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntMatrix(self.rows, self.cols, tuple(op(a, b) for a, b in zip(self.entries, other.entries)))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return self._zip_with(other, lambda a, b: a + b)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self._zip_with(other, lambda a, b: a - b)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __rmul__(self, c: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __str__(self) -> str:
        return "[" + ", ".join(str(r) for r in self.to_rows()) + "]"


def hstack(*blocks: IntMatrix, rows: int | None = None) -> IntMatrix:
    """Concatenate matrices side by side.  ``rows`` fixes the height when no block is given."""
    if not blocks:
        return IntMatrix.zeros(rows or 0, 0)
    n = blocks[0].rows
    if any(b.rows != n for b in blocks):
        raise ValueError("hstack needs equal row counts")
    out = []
    for i in range(n):
        for b in blocks:
            out.extend(b.row(i))
    return IntMatrix(n, sum(b.cols for b in blocks), tuple(out))


def vstack(*blocks: IntMatrix, cols: int | None = None) -> IntMatrix:
    if not blocks:
        return IntMatrix.zeros(0, cols or 0)
    n = blocks[0].cols
    if any(b.cols != n for b in blocks):
        raise ValueError("vstack needs equal column counts")
    return IntMatrix(sum(b.rows for b in blocks), n, tuple(x for b in blocks for x in b.entries))


def block_diagonal(*blocks: IntMatrix) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0:c0 + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    return IntMatrix.from_rows(out, cols)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ of @ V == D`` with U, V unimodular and D in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    of: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _smith(a: list[list[int]], nrows: int, ncols: int, want_u: bool = True, want_v: bool = True):
    """Diagonalise ``a`` in place.  Returns (a, U, V) with U or V None if not wanted.

    Pivot rule: least nonzero absolute value in the active block, ties
    broken by lowest row-major index.
    """
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if want_u else None
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if want_v else None

    def swap_rows(i, k):
        if i != k:
            a[i], a[k] = a[k], a[i]
            if U is not None:
                U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        if j != k:
            for r in a:
                r[j], r[k] = r[k], r[j]
            if V is not None:
                for r in V:
                    r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q, start):
        # row[dst] += q * row[src]
        rd, rs = a[dst], a[src]
        for j in range(start, ncols):
            if rs[j]:
                rd[j] += q * rs[j]
        if U is not None:
            ud, us = U[dst], U[src]
            for j in range(nrows):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q, start):
        for i in range(start, nrows):
            r = a[i]
            if r[src]:
                r[dst] += q * r[src]
        if V is not None:
            for r in V:
                if r[src]:
                    r[dst] += q * r[src]

    for t in range(min(nrows, ncols)):
        best, bi, bj = 0, -1, -1
        for i in range(t, nrows):
            r = a[i]
            for j in range(t, ncols):
                v = r[j]
                if v and (best == 0 or abs(v) < best):
                    best, bi, bj = abs(v), i, j
                    if best == 1:
                        break
            if best == 1:
                break
        if best == 0:
            break
        swap_rows(t, bi)
        swap_cols(t, bj)
        while True:
            p = a[t][t]
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p), t)
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p), t)
            # remainders are now smaller than |p|; move the least one to the pivot
            best, bi, bj = abs(p), t, t
            for i in range(t + 1, nrows):
                v = a[i][t]
                if v and abs(v) < best:
                    best, bi, bj = abs(v), i, t
            for j in range(t + 1, ncols):
                v = a[t][j]
                if v and abs(v) < best:
                    best, bi, bj = abs(v), t, j
            if (bi, bj) != (t, t):
                swap_rows(t, bi)
                swap_cols(t, bj)
                continue
            if any(a[i][t] for i in range(t + 1, nrows)) or any(a[t][j] for j in range(t + 1, ncols)):
                continue
            # row and column are clear; enforce divisibility on the rest
            bad = next(
                (i for i in range(t + 1, nrows) if any(a[i][j] % p for j in range(t + 1, ncols))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1, t)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
    return a, U, V


def snf(m: IntMatrix) -> SmithDecomposition:
    a, U, V = _smith(m.to_rows(), m.rows, m.cols)
    return SmithDecomposition(
        U=IntMatrix.from_rows(U, m.rows),
        D=IntMatrix.from_rows(a, m.cols),
        V=IntMatrix.from_rows(V, m.cols),
        of=m,
    )


def smith_diagonal(m: IntMatrix) -> tuple[int, ...]:
    a, _, _ = _smith(m.to_rows(), m.rows, m.cols, want_u=False, want_v=False)
    return tuple(a[i][i] for i in range(min(m.rows, m.cols)))


def rank(m: IntMatrix) -> int:
    return sum(1 for d in smith_diagonal(m) if d)


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


@dataclass(frozen=True)
class FinAbGroup:
    """``Z^free_rank + Z/d1 + ... + Z/dk`` with d1 | d2 | ... | dk, all di >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {d}")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(f"invariant factors {self.torsion} are not a divisibility chain")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> FinAbGroup:
        """Canonical form of a direct sum of cyclic groups; order 0 means Z."""
        orders = [abs(d) for d in orders]
        return cokernel(IntMatrix.diagonal(orders))

    @classmethod
    def trivial(cls) -> FinAbGroup:
        return cls()

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        if self.free_rank:
            raise ValueError(f"{self} is infinite")
        return prod(self.torsion)

    @property
    def exponent(self) -> int:
        if self.free_rank:
            raise ValueError(f"{self} is infinite")
        return self.torsion[-1] if self.torsion else 1

    def direct_sum(self, other: FinAbGroup) -> FinAbGroup:
        return FinAbGroup.from_cyclic_orders(
            [0] * (self.free_rank + other.free_rank) + list(self.torsion) + list(other.torsion)
        )

    def __str__(self) -> str:
        terms = []
        if self.free_rank == 1:
            terms.append("Z")
        elif self.free_rank > 1:
            terms.append(f"Z^{self.free_rank}")
        terms.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(terms) if terms else "0"

    @classmethod
    def parse(cls, text: str) -> FinAbGroup:
        """Inverse of ``str``."""
        text = text.strip()
        if text == "0":
            return cls()
        free, tors = 0, []
        for term in text.split("+"):
            term = term.strip()
            if term == "Z":
                free += 1
            elif term.startswith("Z^"):
                free += int(term[2:])
            elif term.startswith("Z/"):
                tors.append(int(term[2:]))
            else:
                raise ValueError(f"cannot parse group term {term!r}")
        return cls(free, tuple(tors))


def cokernel(m: IntMatrix) -> FinAbGroup:
    """``Z^rows / image(m)`` in canonical form."""
    diag = smith_diagonal(m)
    nonzero = [d for d in diag if d]
    return FinAbGroup(m.rows - len(nonzero), tuple(d for d in nonzero if d != 1))


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel of ``m``.

    The basis is the trailing columns of the right Smith transform, so it
    spans a saturated sublattice of ``Z^cols``.
    """
    a, _, V = _smith(m.to_rows(), m.rows, m.cols, want_u=False)
    r = sum(1 for i in range(min(m.rows, m.cols)) if a[i][i])
    return IntMatrix.from_rows([row[r:] for row in V], m.cols - r)


def n_torsion(g: FinAbGroup, n: int) -> FinAbGroup:
    if n < 1:
        raise ValueError("n must be positive")
    # gcd preserves the divisibility chain
    return FinAbGroup(0, tuple(e for e in (gcd(d, n) for d in g.torsion) if e > 1))


def torsion_part(g: FinAbGroup) -> FinAbGroup:
    return FinAbGroup(0, g.torsion)


def solve_linear(m: IntMatrix, target: Sequence[int]) -> tuple[int, ...] | None:
    """Some integer x with ``m @ x == target``, or None if there is none."""
    if len(target) != m.rows:
        raise ValueError("target length does not match row count")
    dec = snf(m)
    y = dec.U.apply(target)
    diag = dec.diagonal
    sol = [0] * m.cols
    for i, v in enumerate(y):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if v:
                return None
        elif v % d:
            return None
        else:
            sol[i] = v // d
    return dec.V.apply(sol)


class Sublattice:
    """The sublattice of ``Z^ambient`` spanned by the columns of a matrix.

    Computes one Smith decomposition up front, after which membership and
    coordinate queries are a matrix-vector product.
    """

    def __init__(self, generators: IntMatrix):
        self.generators = generators
        self.ambient = generators.rows
        dec = snf(generators)
        self._U = dec.U
        self._diag = dec.diagonal
        self.rank = dec.rank
        full = generators @ dec.V
        self.basis = full.select_columns(range(self.rank))

    def contains(self, vec: Sequence[int]) -> bool:
        return self.coordinates(vec) is not None

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        """Coordinates of ``vec`` in ``self.basis``, or None if outside the lattice."""
        y = self._U.apply(vec)
        out = []
        for i, v in enumerate(y):
            if i < self.rank:
                d = self._diag[i]
                if v % d:
                    return None
                out.append(v // d)
            elif v:
                return None
        return tuple(out)

    def contains_all(self, m: IntMatrix) -> bool:
        return all(self.contains(c) for c in m.columns())

    def coordinate_matrix(self, m: IntMatrix) -> IntMatrix:
        """Coordinates of each column of ``m``; raises if a column lies outside."""
        cols = []
        for c in m.columns():
            x = self.coordinates(c)
            if x is None:
                raise ValueError(f"vector {c} is not in the lattice")
            cols.append(x)
        return IntMatrix.from_columns(cols, self.rank)

    def quotient(self, sub: IntMatrix) -> FinAbGroup:
        """This lattice modulo the lattice spanned by ``sub`` (which must lie inside)."""
        return cokernel(self.coordinate_matrix(sub))

    def __eq__(self, other):
        if not isinstance(other, Sublattice):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.rank == other.rank
            and self.contains_all(other.basis)
            and other.contains_all(self.basis)
        )

    __hash__ = None


def kernel_projection(m: IntMatrix, keep: int) -> IntMatrix:
    """Generators of the projection of ker(m) onto its first ``keep`` coordinates."""
    k = kernel_basis(m)
    return k.submatrix(range(keep), range(k.cols))
