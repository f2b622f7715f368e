"""Positive weight systems for a Sullivan presentation.

A weight assignment gives every generator a positive integer n_i; a
monomial weighs the exponent-weighted sum of its factors.  The assignment
is valid when every differential image is weight-homogeneous of the weight
of its source generator, i.e. each differential monomial m of d(x) yields
the linear condition weight(m) - n_x = 0.  Validity is what makes
x_i -> t^{n_i} x_i a family of automorphisms commuting with d.

Detection is per presentation: a "no" here means no positive weights for
this generating set and differential, not for every quasi-isomorphic one.
Re-running detection after transporting the presentation along an algebra
automorphism (families.transport_presentation) probes other bases.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Monomial
from .errors import ToolkitError
from .model import SullivanPresentation, Violation
from .qlinalg import QMatrix, positive_integer_kernel


@dataclass(frozen=True)
class ConstraintRow:
    """One homogeneity condition: sum of exponent * n_factor - n_source = 0."""

    source: str
    monomial_name: str
    coefficients: tuple[int, ...]

    @property
    def label(self) -> str:
        return f"d({self.source}): {self.monomial_name}"


@dataclass(frozen=True)
class WeightConstraintSystem:
    generator_names: tuple[str, ...]
    rows: tuple[ConstraintRow, ...]

    def matrix(self) -> QMatrix:
        return QMatrix.from_rows([list(r.coefficients) for r in self.rows])


@dataclass(frozen=True)
class WeightAssignment:
    """Positive integer weight per generator name."""

    weights: dict[str, int]

    def __post_init__(self):
        for name, n in self.weights.items():
            if not isinstance(n, int) or n < 1:
                raise ToolkitError(f"weight of {name!r} must be a positive integer")

    def __getitem__(self, name: str) -> int:
        return self.weights[name]

    def monomial_weight(self, p: SullivanPresentation, mono: Monomial) -> int:
        return sum(self.weights[p.generators[g].name] * e for g, e in mono)


@dataclass(frozen=True)
class WeightReport:
    """find_weights outcome: an assignment or a witness of infeasibility.

    `witness_rows` lists a minimal subset of constraint rows that is
    already infeasible on its own.
    """

    feasible: bool
    assignment: WeightAssignment | None
    witness_rows: tuple[ConstraintRow, ...]
    system: WeightConstraintSystem

    def to_json_dict(self) -> dict:
        doc: dict = {"feasible": self.feasible}
        if self.feasible:
            doc["weights"] = dict(sorted(self.assignment.weights.items()))
            doc["witness_rows"] = []
        else:
            doc["weights"] = {}
            doc["witness_rows"] = [r.label for r in self.witness_rows]
        return doc


def extract_constraints(p: SullivanPresentation) -> WeightConstraintSystem:
    """One row per (source generator, differential monomial) pair.

    Row order follows generator order, then the canonical monomial order of
    the image; column order is generator order.  The row for monomial m of
    d(x) holds the exponents of m, with the slot of x decremented by one.
    """
    names = tuple(g.name for g in p.generators)
    rows: list[ConstraintRow] = []
    for gid in sorted(p.differential):
        img = p.differential[gid]
        alg = p.algebra
        for mono in sorted(img.terms, key=lambda m: tuple((alg._rank[g], e) for g, e in m)):
            coeffs = [0] * len(names)
            for g, e in mono:
                coeffs[g] += e
            coeffs[gid] -= 1
            rows.append(
                ConstraintRow(
                    source=p.generators[gid].name,
                    monomial_name=alg.monomial_name(mono),
                    coefficients=tuple(coeffs),
                )
            )
    return WeightConstraintSystem(generator_names=names, rows=tuple(rows))


def find_weights(p: SullivanPresentation) -> WeightReport:
    """Decide feasibility and produce the canonical assignment.

    Generators touched by no constraint receive weight 1; the constrained
    block is solved exactly and normalized to coprime positive integers.
    The outcome is deterministic in the presentation alone.
    """
    system = extract_constraints(p)
    n = len(system.generator_names)
    constrained = sorted(
        {j for row in system.rows for j in range(n) if row.coefficients[j]}
    )
    col_of = {j: k for k, j in enumerate(constrained)}
    sub_rows = [[row.coefficients[j] for j in constrained] for row in system.rows]
    sub = QMatrix.from_rows(sub_rows) if sub_rows else QMatrix(0, len(constrained), {})
    if sub.cols != len(constrained):
        sub = QMatrix(
            sub.rows,
            len(constrained),
            {(i, j): sub.entry(i, j) for i in range(sub.rows) for j in range(sub.cols)},
        )
    result = positive_integer_kernel(sub)
    if not result.feasible:
        witness = tuple(system.rows[i] for i in result.witness)
        return WeightReport(False, None, witness, system)
    weights = {}
    for j, name in enumerate(system.generator_names):
        if j in col_of:
            weights[name] = result.solution[col_of[j]]
        else:
            weights[name] = 1
    return WeightReport(True, WeightAssignment(weights), (), system)


def check_weights(p: SullivanPresentation, w: WeightAssignment) -> list[Violation]:
    """All homogeneity failures of the assignment, empty when valid."""
    out: list[Violation] = []
    for name in (g.name for g in p.generators):
        if name not in w.weights:
            out.append(Violation("weights", name, "no weight assigned"))
    if out:
        return out
    system = extract_constraints(p)
    for row in system.rows:
        total = sum(
            c * w.weights[gname]
            for c, gname in zip(row.coefficients, system.generator_names)
        )
        if total != 0:
            source_w = w.weights[row.source]
            out.append(
                Violation(
                    "weights",
                    row.source,
                    f"monomial {row.monomial_name} of d({row.source}) has weight "
                    f"{total + source_w}, the source has weight {source_w}",
                )
            )
    return out
