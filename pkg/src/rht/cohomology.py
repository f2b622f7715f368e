"""Cohomology of truncated presentations and induced family actions.

Everything is exact.  Each degree n gets its monomial basis, the matrix
of the differential into degree n + 1, a cocycle basis, a coboundary
basis, and chosen representatives whose classes span the quotient.  A
one-time rational transform per degree rewrites any cocycle in terms of
representatives plus coboundaries; applying it entrywise to vectors with
Laurent coefficients gives induced actions without ever dividing in the
Laurent ring.

Degrees at and above the truncation degree are unavailable, not zero:
asking for them raises DegreeRangeError.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Element, LAURENT, RATIONAL
from .errors import DegreeRangeError, FamilyError, HomogeneityError, ToolkitError
from .families import OneParameterFamily, verify_family
from .model import SullivanPresentation, element_to_terms
from .qlinalg import QMatrix, _rref_rows, kernel_basis, rank
from .scalars import Laurent
from .weights import WeightAssignment, check_weights


class CochainComplex:
    """Per-degree bases and differential matrices of a presentation.

    Degree n is certified only for n <= truncation_degree - 1; the
    accessor methods enforce that bound.
    """

    def __init__(self, p: SullivanPresentation):
        self.presentation = p
        self._basis: dict[int, list] = {}
        self._dmat: dict[int, QMatrix] = {}
        self._quotient: dict[int, tuple] = {}

    @property
    def certified_through(self) -> int:
        return self.presentation.truncation_degree - 1

    def check_degree(self, n: int):
        if n < 0:
            raise DegreeRangeError(f"degree {n} is negative")
        if n > self.certified_through:
            raise DegreeRangeError(
                f"degree {n} is not certified: truncation degree "
                f"{self.presentation.truncation_degree} only covers degrees "
                f"through {self.certified_through}"
            )

    def basis(self, n: int) -> list:
        if n not in self._basis:
            self._basis[n] = self.presentation.algebra.monomial_basis(n)
        return self._basis[n]

    def basis_index(self, n: int) -> dict:
        return {m: i for i, m in enumerate(self.basis(n))}

    def d_matrix(self, n: int) -> QMatrix:
        """Matrix of the differential from degree n to degree n + 1,
        columns indexed by the degree-n monomial basis."""
        if n in self._dmat:
            return self._dmat[n]
        src = self.basis(n)
        dst_index = self.basis_index(n + 1)
        d = self.presentation.d
        alg = self.presentation.algebra
        entries = {}
        for j, mono in enumerate(src):
            img = d(Element(alg, RATIONAL, {mono: Fraction(1)}))
            for m, c in img.terms.items():
                entries[(dst_index[m], j)] = c
        mat = QMatrix(len(self.basis(n + 1)), len(src), entries)
        self._dmat[n] = mat
        return mat

    def quotient_data(self, n: int):
        """Representatives and the class-coordinate transform in degree n.

        Returns (reps, bound_dim, T, K): reps is a list of cocycle
        vectors whose classes form a basis, bound_dim the coboundary
        rank, T the rational rows sending a cocycle vector to its
        (class, coboundary) coordinates, and K the rows that vanish
        exactly on cocycle vectors lying in the certified span.
        """
        self.check_degree(n)
        if n in self._quotient:
            return self._quotient[n]
        m = len(self.basis(n))
        d_in = self.d_matrix(n - 1) if n >= 1 else QMatrix(m, 0, {})
        d_out = self.d_matrix(n)
        bound_cols = []
        if d_in.cols:
            _, pivots = _rref_rows(
                [list(row) for row in d_in.dense_rows()], d_in.cols
            )
            for j in pivots:
                bound_cols.append(tuple(d_in.entry(i, j) for i in range(m)))
        reps: list[tuple[Fraction, ...]] = []
        span_rows = [list(v) for v in bound_cols]
        if span_rows:
            span_rows, _ = _rref_rows(span_rows, m)
        for v in kernel_basis(d_out):
            trial = span_rows + [list(v)]
            reduced, _ = _rref_rows([r[:] for r in trial], m)
            if len([r for r in reduced if any(r)]) > len(span_rows):
                reps.append(v)
                span_rows = [r for r in reduced if any(r)]
        columns = reps + bound_cols
        p_count = len(columns)
        aug = []
        for i in range(m):
            row = [columns[j][i] for j in range(p_count)]
            row += [Fraction(1) if k == i else Fraction(0) for k in range(m)]
            aug.append(row)
        aug, pivots = _rref_rows(aug, p_count + m)
        if tuple(pivots[:p_count]) != tuple(range(p_count)):
            raise AssertionError("quotient basis columns are not independent")
        t_rows = [tuple(aug[i][p_count:]) for i in range(p_count)]
        k_rows = [tuple(aug[i][p_count:]) for i in range(p_count, m)]
        data = (reps, len(bound_cols), t_rows, k_rows)
        self._quotient[n] = data
        return data

    def betti(self, n: int) -> int:
        self.check_degree(n)
        reps, _, _, _ = self.quotient_data(n)
        return len(reps)

    def representatives(self, n: int) -> list[Element]:
        reps, _, _, _ = self.quotient_data(n)
        alg = self.presentation.algebra
        basis = self.basis(n)
        out = []
        for v in reps:
            out.append(
                Element(alg, RATIONAL, {basis[i]: c for i, c in enumerate(v) if c})
            )
        return out

    def element_vector(self, x: Element, n: int) -> list:
        """Coordinates of a homogeneous element in the degree-n basis."""
        index = self.basis_index(n)
        zero = Laurent.zero() if x.kind == LAURENT else Fraction(0)
        vec = [zero] * len(index)
        for m, c in x.terms.items():
            vec[index[m]] = c
        return vec

    def class_coordinates(self, x: Element, n: int) -> list:
        """Coordinates of a degree-n cocycle's class in the representative
        basis.  Raises ToolkitError when the element is not a cocycle in
        the span the transform certifies.
        """
        if not x.is_homogeneous(n):
            raise HomogeneityError(f"element is not homogeneous of degree {n}")
        reps, _, t_rows, k_rows = self.quotient_data(n)
        vec = self.element_vector(x, n)
        for row in k_rows:
            if _dot(row, vec):
                raise ToolkitError(
                    f"element of degree {n} is not a certified cocycle"
                )
        return [_dot(row, vec) for row in t_rows[: len(reps)]]


def _dot(rational_row, vec):
    acc = None
    for c, v in zip(rational_row, vec):
        if not c:
            continue
        term = v * c
        acc = term if acc is None else acc + term
    if acc is None:
        return vec[0] * 0 if vec else Fraction(0)
    return acc


_CACHE_ATTR = "_cochain_complex_cache"


def complex_for(p: SullivanPresentation) -> CochainComplex:
    cached = getattr(p, _CACHE_ATTR, None)
    if cached is None:
        cached = CochainComplex(p)
        setattr(p, _CACHE_ATTR, cached)
    return cached


@dataclass
class CohomologyReport:
    presentation_name: str
    truncation_degree: int
    max_degree: int
    betti: dict[int, int]
    representatives: dict[int, list[Element]]

    def betti_list(self) -> list[int]:
        return [self.betti[n] for n in range(self.max_degree + 1)]

    def to_json_dict(self) -> dict:
        return {
            "name": self.presentation_name,
            "truncation_degree": self.truncation_degree,
            "certified_through": self.max_degree,
            "betti": {str(n): self.betti[n] for n in sorted(self.betti)},
            "representatives": {
                str(n): [element_to_terms(x) for x in xs]
                for n, xs in sorted(self.representatives.items())
            },
        }


def cohomology(p: SullivanPresentation, max_degree: int | None = None) -> CohomologyReport:
    """Betti numbers and representative cocycles through max_degree.

    The default and the largest allowed max_degree is one below the
    truncation degree; beyond that the answer would depend on truncated
    data, so the request is refused rather than padded with zeros.
    """
    cx = complex_for(p)
    if max_degree is None:
        max_degree = cx.certified_through
    cx.check_degree(max_degree)
    betti = {}
    reps = {}
    for n in range(max_degree + 1):
        betti[n] = cx.betti(n)
        reps[n] = cx.representatives(n)
    return CohomologyReport(
        presentation_name=p.name,
        truncation_degree=p.truncation_degree,
        max_degree=max_degree,
        betti=betti,
        representatives=reps,
    )


@dataclass
class WeightDecompositionReport:
    presentation_name: str
    max_degree: int
    dimensions: dict[int, dict[int, int]]
    representatives: dict[int, dict[int, list[Element]]]

    def to_json_dict(self) -> dict:
        return {
            "name": self.presentation_name,
            "certified_through": self.max_degree,
            "betti_by_weight": {
                str(n): {str(w): dim for w, dim in sorted(by_w.items())}
                for n, by_w in sorted(self.dimensions.items())
            },
            "representatives": {
                str(n): {
                    str(w): [element_to_terms(x) for x in xs]
                    for w, xs in sorted(by_w.items())
                }
                for n, by_w in sorted(self.representatives.items())
            },
        }


def weight_decomposition(
    p: SullivanPresentation, w: WeightAssignment, max_degree: int | None = None
) -> WeightDecompositionReport:
    """Split each cohomology group by the weight of its representatives.

    The assignment must make the differential weight-homogeneous; each
    weight stratum is then a subcomplex and is eliminated on its own.
    The per-weight dimensions always sum to the plain Betti number.
    """
    problems = check_weights(p, w)
    if problems:
        raise HomogeneityError(
            "assignment does not make the differential weight-homogeneous: "
            + "; ".join(str(v) for v in problems)
        )
    cx = complex_for(p)
    if max_degree is None:
        max_degree = cx.certified_through
    cx.check_degree(max_degree)
    alg = p.algebra

    def stratum(n: int, weight: int) -> list[int]:
        return [
            i
            for i, mono in enumerate(cx.basis(n))
            if w.monomial_weight(p, mono) == weight
        ]

    def weights_present(n: int) -> list[int]:
        return sorted({w.monomial_weight(p, mono) for mono in cx.basis(n)})

    dims: dict[int, dict[int, int]] = {}
    reps: dict[int, dict[int, list[Element]]] = {}
    for n in range(max_degree + 1):
        dims[n] = {}
        reps[n] = {}
        basis = cx.basis(n)
        for weight in weights_present(n):
            rows_in = stratum(n + 1, weight)
            cols = stratum(n, weight)
            col_pos = {j: a for a, j in enumerate(cols)}
            d_out = cx.d_matrix(n)
            row_pos = {i: a for a, i in enumerate(rows_in)}
            sub_out = QMatrix(
                len(rows_in),
                len(cols),
                {
                    (row_pos[i], col_pos[j]): d_out.entry(i, j)
                    for i in rows_in
                    for j in cols
                    if d_out.entry(i, j)
                },
            )
            if n >= 1:
                cols_in = stratum(n - 1, weight)
                d_in = cx.d_matrix(n - 1)
                sub_in = QMatrix(
                    len(cols),
                    len(cols_in),
                    {
                        (col_pos[i], a): d_in.entry(i, j)
                        for i in cols
                        for a, j in enumerate(cols_in)
                        if d_in.entry(i, j)
                    },
                )
                bound_rank = rank(sub_in)
                bound_cols = _independent_columns(sub_in)
            else:
                bound_rank = 0
                bound_cols = []
            span_rows = [list(v) for v in bound_cols]
            if span_rows:
                span_rows, _ = _rref_rows(span_rows, len(cols))
            chosen = []
            for v in kernel_basis(sub_out):
                trial = span_rows + [list(v)]
                reduced, _ = _rref_rows([r[:] for r in trial], len(cols))
                nonzero = [r for r in reduced if any(r)]
                if len(nonzero) > len(span_rows):
                    chosen.append(v)
                    span_rows = nonzero
            h_dim = len(chosen)
            if h_dim:
                dims[n][weight] = h_dim
                reps[n][weight] = [
                    Element(
                        alg,
                        RATIONAL,
                        {basis[cols[i]]: c for i, c in enumerate(v) if c},
                    )
                    for v in chosen
                ]
        total = sum(dims[n].values())
        if total != cx.betti(n):
            raise AssertionError(
                f"weight strata in degree {n} sum to {total}, not {cx.betti(n)}"
            )
    return WeightDecompositionReport(
        presentation_name=p.name,
        max_degree=max_degree,
        dimensions=dims,
        representatives=reps,
    )


def _independent_columns(m: QMatrix) -> list[tuple]:
    if not m.cols:
        return []
    _, pivots = _rref_rows([list(r) for r in m.dense_rows()], m.cols)
    return [tuple(m.entry(i, j) for i in range(m.rows)) for j in pivots]


@dataclass
class ActionReport:
    """Matrix of an induced map on (co)homology in a representative basis.

    Columns hold images: the matrix of a composition is the product of
    the matrices in the same order.
    """

    presentation_name: str
    degree: int
    variance: str
    basis: list[Element]
    matrix: list[list[Laurent]]

    def dimension(self) -> int:
        return len(self.basis)

    def to_json_dict(self) -> dict:
        return {
            "name": self.presentation_name,
            "degree": self.degree,
            "variance": self.variance,
            "basis": [str(x) for x in self.basis],
            "matrix": [[str(c) for c in row] for row in self.matrix],
        }


def induced_action(
    p: SullivanPresentation,
    fam: OneParameterFamily,
    n: int,
    representatives: list[Element] | None = None,
) -> ActionReport:
    """Matrix of the family's action on degree-n cohomology.

    The family is verified first; a family that fails its laws has no
    well-defined action and the call raises FamilyError.  A custom
    representative basis (for instance a weight-homogeneous one) may be
    supplied; its classes must be a basis of the quotient.
    """
    if fam.presentation != p:
        raise FamilyError("family belongs to a different presentation")
    problems = verify_family(fam)
    if problems:
        raise FamilyError(
            "family fails verification: " + "; ".join(str(v) for v in problems)
        )
    cx = complex_for(p)
    cx.check_degree(n)
    if representatives is None:
        reps = cx.representatives(n)
        transform = cx.quotient_data(n)
    else:
        reps = list(representatives)
        if len(reps) != cx.betti(n):
            raise ToolkitError(
                f"{len(reps)} representatives supplied for a quotient of "
                f"dimension {cx.betti(n)}"
            )
        transform = _transform_for_representatives(cx, reps, n)
    columns = []
    for rep in reps:
        image = fam.apply(rep.with_laurent_scalars())
        columns.append(_laurent_class_coordinates(cx, transform, image, n))
    dim = len(reps)
    matrix = [[columns[j][i] for j in range(dim)] for i in range(dim)]
    return ActionReport(
        presentation_name=p.name,
        degree=n,
        variance="cohomology",
        basis=reps,
        matrix=matrix,
    )


def _transform_for_representatives(cx: CochainComplex, reps: list[Element], n: int):
    """Quotient transform for a caller-chosen representative basis."""
    _, bound_dim, _, _ = cx.quotient_data(n)
    m = len(cx.basis(n))
    d_in = cx.d_matrix(n - 1) if n >= 1 else QMatrix(m, 0, {})
    bound_cols = _independent_columns(d_in)
    vectors = []
    for x in reps:
        if not x.is_homogeneous(n):
            raise HomogeneityError(
                f"representative is not homogeneous of degree {n}"
            )
        vectors.append(tuple(cx.element_vector(x, n)))
    columns = vectors + bound_cols
    p_count = len(columns)
    aug = []
    for i in range(m):
        row = [columns[j][i] for j in range(p_count)]
        row += [Fraction(1) if k == i else Fraction(0) for k in range(m)]
        aug.append(row)
    aug, pivots = _rref_rows(aug, p_count + m)
    if tuple(pivots[:p_count]) != tuple(range(p_count)):
        raise ToolkitError(
            "supplied representatives do not project to a basis of the quotient"
        )
    t_rows = [tuple(aug[i][p_count:]) for i in range(p_count)]
    k_rows = [tuple(aug[i][p_count:]) for i in range(p_count, m)]
    return (vectors, bound_dim, t_rows, k_rows)


def _laurent_class_coordinates(cx, transform, x: Element, n: int) -> list[Laurent]:
    reps, _, t_rows, k_rows = transform
    vec = cx.element_vector(x.with_laurent_scalars(), n)
    for row in k_rows:
        if _dot(row, vec):
            raise ToolkitError(f"image in degree {n} is not a certified cocycle")
    out = []
    for row in t_rows[: len(reps)]:
        acc = _dot(row, vec)
        out.append(acc if isinstance(acc, Laurent) else Laurent.from_rational(acc))
    return out


def homology_action(
    p: SullivanPresentation, fam: OneParameterFamily, n: int
) -> ActionReport:
    """Transpose of the degree-n cohomology action: the induced map on
    the dual space, in the dual basis of the same representatives."""
    action = induced_action(p, fam, n)
    dim = action.dimension()
    return ActionReport(
        presentation_name=action.presentation_name,
        degree=action.degree,
        variance="homology",
        basis=list(action.basis),
        matrix=[[action.matrix[j][i] for j in range(dim)] for i in range(dim)],
    )


# ---- diagonalizability certificate -----------------------------------


@dataclass(frozen=True)
class DiagonalizationCertificate:
    diagonalizable: bool
    eigenvalue_powers: dict[int, int] | None
    reason: str = ""

    def to_json_dict(self) -> dict:
        doc: dict = {"diagonalizable": self.diagonalizable}
        if self.eigenvalue_powers is not None:
            doc["eigenvalue_powers"] = {
                str(w): m for w, m in sorted(self.eigenvalue_powers.items())
            }
        if self.reason:
            doc["reason"] = self.reason
        return doc


def _mat_mul(a: list[list[Laurent]], b: list[list[Laurent]]) -> list[list[Laurent]]:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Laurent.zero()
            for k in range(n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def _mat_minus_scalar(m: list[list[Laurent]], c: Laurent) -> list[list[Laurent]]:
    n = len(m)
    return [
        [m[i][j] - c if i == j else m[i][j] for j in range(n)] for i in range(n)
    ]


def _trace(m: list[list[Laurent]]) -> Laurent:
    acc = Laurent.zero()
    for i in range(len(m)):
        acc = acc + m[i][i]
    return acc


def characteristic_polynomial(m: list[list[Laurent]]) -> list[Laurent]:
    """Coefficients [c_n, ..., c_1, c_0] of det(X I - M), leading first.

    Exact over the Laurent coefficient ring; the only divisions are by
    the integers 1..n.
    """
    n = len(m)
    coeffs = [Laurent.one()]
    mk = [row[:] for row in m]
    for k in range(1, n + 1):
        ck = _trace(mk) * Fraction(-1, k)
        coeffs.append(ck)
        if k < n:
            shifted = [
                [mk[i][j] + ck if i == j else mk[i][j] for j in range(n)]
                for i in range(n)
            ]
            mk = _mat_mul(m, shifted)
    return coeffs


def diagonalization_certificate(action: ActionReport) -> DiagonalizationCertificate:
    """Decide whether the action matrix is conjugate to a diagonal matrix
    with entries t^w, and with which exponent multiset.

    The candidate multiset comes from the trace; the matrix must then be
    annihilated by the squarefree product of (M - t^w I) over distinct
    candidates, and its characteristic polynomial must match the
    candidate multiset exactly.
    """
    m = action.matrix
    n = len(m)
    if n == 0:
        return DiagonalizationCertificate(True, {})
    tr = _trace(m)
    candidate: dict[int, int] = {}
    total = 0
    for (pt, ps), coeff in tr.items():
        if ps != 0:
            return DiagonalizationCertificate(False, None, "trace uses s")
        if coeff.denominator != 1 or coeff <= 0:
            return DiagonalizationCertificate(
                False, None, f"trace coefficient {coeff} at t^{pt} is not a positive integer"
            )
        candidate[pt] = int(coeff)
        total += int(coeff)
    if total != n:
        return DiagonalizationCertificate(
            False, None, f"trace accounts for {total} of {n} eigenvalues"
        )
    product = None
    for w in sorted(candidate):
        factor = _mat_minus_scalar(m, Laurent.t(w))
        product = factor if product is None else _mat_mul(product, factor)
    if any(any(c for c in row) for row in product):
        return DiagonalizationCertificate(
            False, None, "matrix is not annihilated by its candidate eigenvalues"
        )
    char = characteristic_polynomial(m)
    target = [Laurent.one()]
    for w in sorted(candidate):
        for _ in range(candidate[w]):
            target = _poly_mul_linear(target, Laurent.t(w))
    if char != target:
        return DiagonalizationCertificate(
            False, None, "characteristic polynomial does not match the candidate multiset"
        )
    return DiagonalizationCertificate(True, candidate)


def _poly_mul_linear(coeffs: list[Laurent], root: Laurent) -> list[Laurent]:
    """Multiply a monic polynomial, leading coefficient first, by (X - root)."""
    out = coeffs + [Laurent.zero()]
    for i in range(len(coeffs)):
        out[i + 1] = out[i + 1] - coeffs[i] * root
    return out


# ---- flexibility ------------------------------------------------------


@dataclass
class FlexibilityReport:
    presentation_name: str
    formal_dimension: int
    top_weight: int
    action_entry: Laurent

    def to_json_dict(self) -> dict:
        return {
            "name": self.presentation_name,
            "formal_dimension": self.formal_dimension,
            "top_weight": self.top_weight,
            "action_entry": str(self.action_entry),
        }


def flexibility_report(
    p: SullivanPresentation, fam: OneParameterFamily
) -> FlexibilityReport:
    """Exponent of the family's action on the one-dimensional top group.

    Needs a declared formal dimension D with D certified and b_D = 1;
    the verified family then scales H^D by a single power of t, and that
    power is the reported top weight.
    """
    d_top = p.formal_dimension
    if d_top is None:
        raise DegreeRangeError(
            f"presentation {p.name} declares no formal dimension"
        )
    cx = complex_for(p)
    cx.check_degree(d_top)
    b = cx.betti(d_top)
    if b != 1:
        raise ToolkitError(
            f"top cohomology of {p.name} has dimension {b}, not 1"
        )
    act = induced_action(p, fam, d_top)
    entry = act.matrix[0][0]
    power = entry.monomial_t_power()
    if power is None:
        raise FamilyError(
            f"action on the top group is {entry}, not a single power of t"
        )
    return FlexibilityReport(
        presentation_name=p.name,
        formal_dimension=d_top,
        top_weight=power,
        action_entry=entry,
    )
