"""One-parameter automorphism families and model automorphisms.

A valid positive weight assignment n turns into the family
x_i -> t^{n_i} x_i, an automorphism of the presentation for every t != 0.
Families are stored as generator assignments with Laurent coefficients in
t; the reserve variable s never appears in stored data, it exists so the
group law (family at s) o (family at t) = family at s*t can be compared
symbolically.

Model automorphisms have rational coefficients and commute with the
differential.  Inversion works by degree induction: invert the linear
part, then correct by the already-inverted lower degrees applied to the
decomposable part.  Conjugation transports a family along an automorphism
without losing exactness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Element, LAURENT, RATIONAL, extend_algebra_map, extend_derivation
from .errors import FamilyError, SchemaError, SingularMapError
from .model import (
    SullivanPresentation,
    Violation,
    _expect_str,
    _parse_monomial,
)
from .qlinalg import QMatrix, rank, solve
from .scalars import Laurent
from .weights import WeightAssignment, check_weights


class ModelMap:
    """Degree-0 algebra endomorphism of a presentation's algebra, given on
    generators with rational coefficients.  Not necessarily a chain map."""

    def __init__(self, p: SullivanPresentation, images: dict[int, Element]):
        self.presentation = p
        alg = p.algebra
        full: dict[int, Element] = {}
        for g in p.generators:
            img = images.get(g.gid, alg.gen(g.gid))
            if img.kind != RATIONAL:
                raise FamilyError(f"image of {g.name} must have rational coefficients")
            if img.algebra != alg:
                raise FamilyError(f"image of {g.name} lives in a different algebra")
            if not img.is_homogeneous(g.degree):
                raise FamilyError(
                    f"image of {g.name} must be homogeneous of degree {g.degree}"
                )
            full[g.gid] = img
        self.images = full
        self._apply_rational = extend_algebra_map(alg, full, kind=RATIONAL)
        self._apply_laurent = None
        self._inverse: "ModelMap" | None = None

    def image_of(self, gid: int) -> Element:
        return self.images[gid]

    def apply(self, x: Element) -> Element:
        """Apply the extension; Laurent input widens the scalars."""
        if x.kind == LAURENT:
            if self._apply_laurent is None:
                self._apply_laurent = extend_algebra_map(
                    self.presentation.algebra, self.images, kind=LAURENT
                )
            return self._apply_laurent(x)
        return self._apply_rational(x)

    def compose(self, other: "ModelMap") -> "ModelMap":
        """self after other."""
        return ModelMap(
            self.presentation,
            {gid: self.apply(img) for gid, img in other.images.items()},
        )

    def is_identity(self) -> bool:
        alg = self.presentation.algebra
        return all(self.images[g.gid] == alg.gen(g.gid) for g in self.presentation.generators)

    def is_chain_map(self) -> bool:
        d = self.presentation.d
        return all(
            self.apply(d(self.presentation.algebra.gen(g.gid))) == d(self.apply(self.presentation.algebra.gen(g.gid)))
            for g in self.presentation.generators
        )

    def linear_part(self, degree: int) -> tuple[list[int], QMatrix]:
        """Generator ids of the given degree and the matrix of the linear
        term, columns indexed by source generator."""
        gids = [g.gid for g in self.presentation.generators if g.degree == degree]
        entries = {}
        for col, gid in enumerate(gids):
            img = self.images[gid]
            for row, hid in enumerate(gids):
                c = img.coefficient(((hid, 1),))
                if c:
                    entries[(row, col)] = c
        return gids, QMatrix(len(gids), len(gids), entries)

    def inverse(self) -> "ModelMap":
        """Two-sided inverse, by degree and word-length induction.

        Raises SingularMapError when some linear part is not invertible.
        """
        if self._inverse is not None:
            return self._inverse
        p = self.presentation
        alg = p.algebra
        degrees = sorted({g.degree for g in p.generators})
        inv_images: dict[int, Element] = {}
        for deg in degrees:
            gids, lin = self.linear_part(deg)
            k = len(gids)
            columns: list[tuple[Fraction, ...]] = []
            for j in range(k):
                rhs = tuple(Fraction(1) if i == j else Fraction(0) for i in range(k))
                col = solve(lin, rhs)
                if col is None:
                    raise SingularMapError(
                        f"linear part in degree {deg} is singular"
                    )
                columns.append(col)
            psi_lower = extend_algebra_map(alg, dict(inv_images), kind=RATIONAL)
            residues: list[Element] = []
            for gid in gids:
                decomposable = Element(
                    alg,
                    RATIONAL,
                    {m: c for m, c in self.images[gid].terms.items() if alg.word_length(m) >= 2},
                )
                residues.append(alg.gen(gid) - psi_lower(decomposable))
            # columns[j] is the j-th column of inv(L); the images solve
            # L^T (psi(h))_h = (residue(x))_x, so psi(h) = sum_x inv(L)[x, h] residue(x)
            for row, hid in enumerate(gids):
                acc = alg.zero()
                for x_index in range(k):
                    c = columns[row][x_index]
                    if c:
                        acc = acc + residues[x_index].scale(c)
                inv_images[hid] = acc
        result = ModelMap(p, inv_images)
        # both compositions must fix every generator exactly
        for g in p.generators:
            if result.apply(self.images[g.gid]) != alg.gen(g.gid):
                raise SingularMapError(f"inversion failed on generator {g.name}")
            if self.apply(result.images[g.gid]) != alg.gen(g.gid):
                raise SingularMapError(f"inversion failed on generator {g.name}")
        result._inverse = self
        self._inverse = result
        return result

    def __eq__(self, other):
        return (
            isinstance(other, ModelMap)
            and self.presentation == other.presentation
            and self.images == other.images
        )

    def __repr__(self):
        parts = ", ".join(
            f"{g.name} -> {self.images[g.gid]}" for g in self.presentation.generators
        )
        return f"ModelMap({parts})"


class ModelAutomorphism(ModelMap):
    """A ModelMap that commutes with the differential and is invertible."""

    def __init__(self, p: SullivanPresentation, images: dict[int, Element]):
        super().__init__(p, images)
        if not self.is_chain_map():
            raise FamilyError("automorphism must commute with the differential")
        self.inverse()  # raises SingularMapError when not invertible


class OneParameterFamily:
    """Generator assignment with Laurent coefficients in the parameter t."""

    def __init__(self, p: SullivanPresentation, images: dict[int, Element]):
        self.presentation = p
        alg = p.algebra
        full: dict[int, Element] = {}
        for g in p.generators:
            img = images.get(g.gid)
            if img is None:
                raise FamilyError(f"no image for generator {g.name}")
            img = img.with_laurent_scalars()
            if img.algebra != alg:
                raise FamilyError(f"image of {g.name} lives in a different algebra")
            if not img.is_homogeneous(g.degree):
                raise FamilyError(
                    f"image of {g.name} must be homogeneous of degree {g.degree}"
                )
            for c in img.terms.values():
                if c.uses_s():
                    raise FamilyError(
                        f"image of {g.name} uses the reserve variable s"
                    )
            full[g.gid] = img
        self.images = full
        self._apply = extend_algebra_map(alg, full, kind=LAURENT)
        self._verified: list[Violation] | None = None

    def image_of(self, gid: int) -> Element:
        return self.images[gid]

    def apply(self, x: Element) -> Element:
        return self._apply(x)

    def __eq__(self, other):
        return (
            isinstance(other, OneParameterFamily)
            and self.presentation == other.presentation
            and self.images == other.images
        )

    def __repr__(self):
        parts = ", ".join(
            f"{g.name} -> {self.images[g.gid]}" for g in self.presentation.generators
        )
        return f"OneParameterFamily({parts})"


@dataclass(frozen=True)
class EvaluatedFamily:
    """A family specialized at a rational parameter value.

    At t = 0 the result is still returned but flagged: the assignment is
    then an endomorphism, not an automorphism.
    """

    map: ModelMap
    parameter: Fraction
    invertible: bool


def diagonal_family(p: SullivanPresentation, w: WeightAssignment) -> OneParameterFamily:
    """The family x_i -> t^{n_i} x_i for a valid weight assignment."""
    problems = check_weights(p, w)
    if problems:
        raise FamilyError(
            "weight assignment is not valid for this presentation: "
            + "; ".join(str(v) for v in problems)
        )
    alg = p.algebra
    images = {
        g.gid: alg.gen(g.gid).with_laurent_scalars().scale(Laurent.t(w[g.name]))
        for g in p.generators
    }
    return OneParameterFamily(p, images)


def verify_family(fam: OneParameterFamily) -> list[Violation]:
    """Check the three family laws symbolically; empty list means verified.

    Identity at t = 1, commutation with the differential, and the group
    law: the assignment with parameter renamed to s, composed with the
    assignment in t, must equal the assignment with t replaced by s*t.
    """
    if fam._verified is not None:
        return fam._verified
    p = fam.presentation
    alg = p.algebra
    out: list[Violation] = []
    for g in p.generators:
        at_one = fam.images[g.gid].map_scalars(lambda c: c.eval_t(Fraction(1)))
        if at_one != alg.gen(g.gid).with_laurent_scalars():
            out.append(
                Violation("identity", g.name, f"image at t = 1 is {at_one}, not {g.name}")
            )
    d_laurent = extend_derivation(alg, p.differential, kind=LAURENT)
    for g in p.generators:
        lhs = fam.apply(p.d_of(g.gid).with_laurent_scalars())
        rhs = d_laurent(fam.images[g.gid])
        if lhs != rhs:
            out.append(
                Violation(
                    "chain",
                    g.name,
                    f"family(d({g.name})) = {lhs} but d(family({g.name})) = {rhs}",
                )
            )
    s_images = {
        gid: img.map_scalars(lambda c: c.subs_t_with_s())
        for gid, img in fam.images.items()
    }
    apply_s = extend_algebra_map(alg, s_images, kind=LAURENT)
    for g in p.generators:
        composed = apply_s(fam.images[g.gid])
        expected = fam.images[g.gid].map_scalars(lambda c: c.subs_t_with_st())
        if composed != expected:
            out.append(
                Violation(
                    "group",
                    g.name,
                    f"composition gives {composed}, substitution gives {expected}",
                )
            )
    fam._verified = out
    return out


def evaluate(fam: OneParameterFamily, t0: Fraction) -> EvaluatedFamily:
    """Substitute a rational parameter value into the family."""
    t0 = Fraction(t0)
    p = fam.presentation
    images = {gid: img.eval_t(t0) for gid, img in fam.images.items()}
    mm = ModelMap(p, images)
    invertible = True
    for deg in sorted({g.degree for g in p.generators}):
        gids, lin = mm.linear_part(deg)
        if rank(lin) != len(gids):
            invertible = False
            break
    return EvaluatedFamily(map=mm, parameter=t0, invertible=invertible)


def compose_families(f: OneParameterFamily, g: OneParameterFamily) -> OneParameterFamily:
    """Pointwise composition (f at t) o (g at t), sharing the parameter."""
    if f.presentation != g.presentation:
        raise FamilyError("families live on different presentations")
    return OneParameterFamily(
        f.presentation, {gid: f.apply(img) for gid, img in g.images.items()}
    )


def conjugate(fam: OneParameterFamily, phi: ModelAutomorphism) -> OneParameterFamily:
    """The family phi^-1 o (fam at t) o phi."""
    if phi.presentation != fam.presentation:
        raise FamilyError("automorphism lives on a different presentation")
    inv = phi.inverse()
    images = {}
    for g in fam.presentation.generators:
        images[g.gid] = inv.apply(fam.apply(phi.images[g.gid].with_laurent_scalars()))
    return OneParameterFamily(fam.presentation, images)


def transport_presentation(p: SullivanPresentation, phi: ModelMap) -> SullivanPresentation:
    """Conjugate the differential by an invertible algebra map.

    The result presents the same isomorphism type with differential
    phi^-1 o d o phi; running weight detection on it probes a different
    generating basis of the same model.
    """
    inv = phi.inverse()
    d = p.d
    new_diff = {}
    for g in p.generators:
        img = inv.apply(d(phi.images[g.gid]))
        if not img.is_zero():
            new_diff[g.gid] = img
    return SullivanPresentation(
        p.name,
        list(p.generators),
        new_diff,
        p.truncation_degree,
        p.formal_dimension,
    )


# ---- JSON -------------------------------------------------------------


def family_to_dict(fam: OneParameterFamily) -> dict:
    alg = fam.presentation.algebra
    doc = {}
    for g in fam.presentation.generators:
        img = fam.images[g.gid]
        terms = []
        for m in sorted(img.terms, key=lambda m: tuple((alg._rank[h], e) for h, e in m)):
            terms.append(
                {
                    "coeff": str(img.terms[m]),
                    "monomial": [[alg.generators[h].name, e] for h, e in m],
                }
            )
        doc[g.name] = terms
    return doc


def serialize_family(fam: OneParameterFamily) -> str:
    return json.dumps(family_to_dict(fam), indent=2, sort_keys=True) + "\n"


def family_from_dict(p: SullivanPresentation, doc, path: str = "") -> OneParameterFamily:
    images = _assignment_from_dict(p, doc, path, allow_t=True)
    return OneParameterFamily(p, images)


def parse_family(p: SullivanPresentation, text: str) -> OneParameterFamily:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return family_from_dict(p, doc)


def load_family(p: SullivanPresentation, path) -> OneParameterFamily:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_family(p, fh.read())


def automorphism_to_dict(phi: ModelMap) -> dict:
    from .rationals import format_rational

    alg = phi.presentation.algebra
    doc = {}
    for g in phi.presentation.generators:
        img = phi.images[g.gid]
        terms = []
        for m in sorted(img.terms, key=lambda m: tuple((alg._rank[h], e) for h, e in m)):
            terms.append(
                {
                    "coeff": format_rational(img.terms[m]),
                    "monomial": [[alg.generators[h].name, e] for h, e in m],
                }
            )
        doc[g.name] = terms
    return doc


def serialize_automorphism(phi: ModelMap) -> str:
    return json.dumps(automorphism_to_dict(phi), indent=2, sort_keys=True) + "\n"


def automorphism_from_dict(p: SullivanPresentation, doc, path: str = "") -> ModelAutomorphism:
    images = _assignment_from_dict(p, doc, path, allow_t=False)
    rational = {
        gid: Element(p.algebra, RATIONAL, {m: c.as_rational() for m, c in img.terms.items()})
        for gid, img in images.items()
    }
    return ModelAutomorphism(p, rational)


def parse_automorphism(p: SullivanPresentation, text: str) -> ModelAutomorphism:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return automorphism_from_dict(p, doc)


def load_automorphism(p: SullivanPresentation, path) -> ModelAutomorphism:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_automorphism(p, fh.read())


def _assignment_from_dict(
    p: SullivanPresentation, doc, path: str, allow_t: bool
) -> dict[int, Element]:
    if not isinstance(doc, dict):
        raise SchemaError("assignment must be a JSON object", path)
    alg = p.algebra
    known = {g.name for g in p.generators}
    extra = set(doc) - known
    if extra:
        raise SchemaError(f"unknown generators {sorted(extra)}", path)
    missing = known - set(doc)
    if missing:
        raise SchemaError(f"missing generators {sorted(missing)}", path)
    images: dict[int, Element] = {}
    for gname, terms in doc.items():
        gpath = f"{path}.{gname}" if path else gname
        if not isinstance(terms, list):
            raise SchemaError("expected a list of terms", gpath)
        total = alg.zero(LAURENT)
        for i, term in enumerate(terms):
            tpath = f"{gpath}[{i}]"
            if not isinstance(term, dict) or set(term) != {"coeff", "monomial"}:
                raise SchemaError("term must have exactly 'coeff' and 'monomial'", tpath)
            coeff = Laurent.parse(
                _expect_str(term["coeff"], f"{tpath}.coeff"), f"{tpath}.coeff"
            )
            if coeff.uses_s():
                raise SchemaError("the variable s is reserved", f"{tpath}.coeff")
            if not allow_t and not coeff.is_rational():
                raise SchemaError(
                    "automorphism coefficients must be rational", f"{tpath}.coeff"
                )
            sign, mono = _parse_monomial(alg, term["monomial"], f"{tpath}.monomial")
            if sign < 0:
                coeff = -coeff
            total = total + Element(alg, LAURENT, {mono: coeff})
        images[alg.by_name[gname].gid] = total
    return images
