"""Exact linear algebra over the rationals.

Everything here is elementary Gaussian elimination and Fourier-Motzkin
elimination with `Fraction` scalars; there is no floating point anywhere.
Matrices are stored sparsely but the algorithms work on dense row lists,
which is the right trade at the sizes this package meets (tens of rows).

`positive_integer_kernel` answers the question the weight solver needs:
does the kernel of an integer matrix meet the open positive orthant, and
if so, which coprime positive integer vector does the deterministic
elimination order produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .rationals import coprime_integer_vector

Vector = tuple[Fraction, ...]


class QMatrix:
    """Immutable sparse rational matrix.

    Entries live in a map (row, col) -> Fraction with zeros absent.  The
    class is a value type: operations return new matrices.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: dict[tuple[int, int], Fraction]):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        clean = {}
        for (i, j), v in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i},{j}) outside {rows}x{cols}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        self.rows = rows
        self.cols = cols
        self._entries = clean

    @classmethod
    def from_rows(cls, rows: list[list]) -> "QMatrix":
        ncols = max((len(r) for r in rows), default=0)
        entries = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                v = Fraction(v)
                if v:
                    entries[(i, j)] = v
        return cls(len(rows), ncols, entries)

    def entry(self, i: int, j: int) -> Fraction:
        return self._entries.get((i, j), Fraction(0))

    def dense_rows(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def row(self, i: int) -> Vector:
        return tuple(self.entry(i, j) for j in range(self.cols))

    def apply(self, v: Vector) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        out = [Fraction(0)] * self.rows
        for (i, j), a in self._entries.items():
            out[i] += a * v[j]
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._entries == other._entries
        )

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols}, {sorted(self._entries.items())})"


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of dense rows, in place; returns pivot columns."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(m: QMatrix) -> tuple[QMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the tuple of pivot columns.

    Pivot entries are 1 and are alone in their column; the row order is the
    pivot-column order, so the result is canonical for the row space.
    """
    rows, pivots = _rref_rows(m.dense_rows(), m.cols)
    entries = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                entries[(i, j)] = v
    return QMatrix(m.rows, m.cols, entries), tuple(pivots)


def rank(m: QMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: QMatrix) -> list[Vector]:
    """Basis of the right kernel, one vector per free column.

    The standard parametrization: the vector for free column f carries a 1
    in slot f and minus the reduced column entries in the pivot slots.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced.entry(r, f)
        basis.append(tuple(v))
    return basis


def solve(m: QMatrix, b: Vector) -> Vector | None:
    """One exact solution of m x = b, free variables set to zero.

    Returns None when the system is inconsistent; inconsistency is a value
    here, not an error.
    """
    if len(b) != m.rows:
        raise ValueError("length mismatch")
    rows = m.dense_rows()
    for i, row in enumerate(rows):
        row.append(Fraction(b[i]))
    rows, pivots = _rref_rows(rows, m.cols + 1)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = rows[r][m.cols]
    return tuple(x)


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of a positive-kernel search.

    Exactly one of `solution` and `witness` is set.  `solution` is a
    coprime strictly positive integer vector in the kernel.  `witness` is a
    subset of row indices of the input matrix that is already infeasible on
    its own; removing any witness row makes the remainder feasible.
    """

    solution: tuple[int, ...] | None
    witness: tuple[int, ...] | None

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def _normalize_direction(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """Scale an inequality row by a positive rational to a canonical form."""
    nums = [abs(c.numerator) for c in coeffs if c]
    if not nums:
        return coeffs
    dens = [c.denominator for c in coeffs if c]
    g = gcd(*nums)
    l = 1
    for d in dens:
        l = l * d // gcd(l, d)
    scale = Fraction(l, g)
    return tuple(c * scale for c in coeffs)


def _fourier_motzkin(rows: list[tuple[Fraction, ...]], nvars: int) -> list[Fraction] | None:
    """Solve the strict homogeneous system {r . c > 0} by elimination.

    Variables are eliminated left to right; at each step duplicate
    inequalities (up to positive scaling) are dropped.  Returns one exact
    solution vector, or None when some combination collapses to 0 > 0.
    """
    system = [tuple(r) for r in rows]
    # (var, lower rows, upper rows) stacks for back-substitution; rows are
    # kept in full length with the eliminated variable's coefficient intact.
    stages: list[tuple[int, list[tuple[Fraction, ...]], list[tuple[Fraction, ...]]]] = []
    for var in range(nvars):
        seen: set[tuple[Fraction, ...]] = set()
        zero, lower, upper = [], [], []
        for r in system:
            key = _normalize_direction(r)
            if key in seen:
                continue
            seen.add(key)
            c = r[var]
            if c > 0:
                lower.append(r)
            elif c < 0:
                upper.append(r)
            else:
                zero.append(r)
        combined = list(zero)
        for p in lower:
            for n in upper:
                new = tuple(p[var] * nv + (-n[var]) * pv for pv, nv in zip(p, n))
                if not any(new):
                    return None
                combined.append(new)
        stages.append((var, lower, upper))
        system = combined
    if any(not any(r) for r in system):
        # all-zero rows present before any variable existed to eliminate
        return None
    values = [Fraction(0)] * nvars

    def tail(r: tuple[Fraction, ...], var: int) -> Fraction:
        return sum((r[j] * values[j] for j in range(var + 1, nvars)), Fraction(0))

    for var, lower, upper in reversed(stages):
        lo = [(-tail(r, var)) / r[var] for r in lower]
        hi = [(-tail(r, var)) / r[var] for r in upper]
        if lo and hi:
            lmax, hmin = max(lo), min(hi)
            values[var] = (lmax + hmin) / 2
        elif lo:
            values[var] = max(lo) + 1
        elif hi:
            values[var] = min(hi) - 1
        else:
            values[var] = Fraction(1)
    return values


def _positive_kernel_point(m: QMatrix) -> list[Fraction] | None:
    """A strictly positive rational kernel vector of m, or None."""
    basis = kernel_basis(m)
    if m.cols == 0:
        return []
    if not basis:
        return None
    coord_rows = [tuple(v[j] for v in basis) for j in range(m.cols)]
    for r in coord_rows:
        if not any(r):
            return None
    combo = _fourier_motzkin(coord_rows, len(basis))
    if combo is None:
        return None
    point = [sum(v[j] * combo[k] for k, v in enumerate(basis)) for j in range(m.cols)]
    assert all(x > 0 for x in point)
    return point


def positive_integer_kernel(m: QMatrix) -> FeasibilityResult:
    """Decide whether ker(m) meets the open positive orthant.

    Feasible: returns the coprime positive integer vector reached by the
    deterministic elimination order (kernel coordinates in column order).
    Infeasible: returns a witness, a minimal subset of rows of m that is
    infeasible by itself, found by greedy row removal.
    """
    point = _positive_kernel_point(m)
    if point is not None:
        solution = coprime_integer_vector(point)
        assert all(x == 0 for x in m.apply(tuple(map(Fraction, solution))))
        return FeasibilityResult(solution=solution, witness=None)

    kept = list(range(m.rows))
    dense = m.dense_rows()

    def feasible_with(indices: list[int]) -> bool:
        entries = {}
        for r, i in enumerate(indices):
            for j, v in enumerate(dense[i]):
                if v:
                    entries[(r, j)] = v
        return _positive_kernel_point(QMatrix(len(indices), m.cols, entries)) is not None

    for i in list(kept):
        trial = [j for j in kept if j != i]
        if not feasible_with(trial):
            kept = trial
    return FeasibilityResult(solution=None, witness=tuple(kept))
