"""Free graded-commutative algebra over the rationals.

The ambient object is Lambda(V) on a finite list of generators, each with
an integer degree >= 2, so the algebra is simply connected.  Monomials are
words in canonical order: factors sorted by (degree, generator id), odd
generators with exponent exactly 1, even generators with any positive
exponent.  Reordering a word picks up the Koszul sign, minus one for every
transposition of two odd factors; a repeated odd generator kills the word.

Elements carry one of two scalar kinds, plain rationals or Laurent scalars
in (t, s).  The kinds share the representation but never mix in
arithmetic; rational elements embed into Laurent ones explicitly via
`with_laurent_scalars`.  Derivations and algebra maps are defined on
generators and extended: a derivation by the graded Leibniz rule, an
algebra map multiplicatively.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import AmbientMismatchError, HomogeneityError, ScalarKindError
from .scalars import Laurent

RATIONAL = "rational"
LAURENT = "laurent"

# A monomial is a tuple of (generator id, exponent) pairs in canonical
# order; the empty tuple is the unit.
Monomial = tuple[tuple[int, int], ...]
UNIT: Monomial = ()


@dataclass(frozen=True, order=True)
class Generator:
    gid: int
    name: str
    degree: int


class FreeGCA:
    """Ambient free graded-commutative algebra on an ordered generator list.

    Generator ids are their positions in the defining list; the canonical
    order used for words is (degree, id).
    """

    def __init__(self, generators: Iterable[Generator]):
        gens = tuple(generators)
        for i, g in enumerate(gens):
            if g.gid != i:
                raise ValueError(f"generator {g.name!r} has id {g.gid}, expected {i}")
            # degree-1 generators are admitted here so that validation can
            # report the simple-connectivity violation instead of crashing
            if g.degree < 1:
                raise ValueError(f"generator {g.name!r} has degree {g.degree} < 1")
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.generators = gens
        self.by_name = {g.name: g for g in gens}
        self._order = sorted(range(len(gens)), key=lambda i: (gens[i].degree, i))
        self._rank = {gid: r for r, gid in enumerate(self._order)}

    # ---- monomials ----------------------------------------------------

    def degree_of(self, mono: Monomial) -> int:
        return sum(self.generators[g].degree * e for g, e in mono)

    def word_length(self, mono: Monomial) -> int:
        return sum(e for _, e in mono)

    def monomial_name(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        parts = []
        for g, e in mono:
            n = self.generators[g].name
            parts.append(n if e == 1 else f"{n}^{e}")
        return "*".join(parts)

    def normalize_word(self, word: Iterable[int]) -> tuple[int, Monomial] | None:
        """Sort a word of generator ids into canonical order.

        Returns (sign, monomial), or None when the word vanishes because an
        odd generator repeats.  The sign counts odd-odd transpositions.
        """
        items = list(word)
        sign = 1
        # insertion sort, counting crossings of odd factors
        for i in range(1, len(items)):
            j = i
            while j > 0 and self._rank[items[j - 1]] > self._rank[items[j]]:
                moved, other = items[j], items[j - 1]
                if self.generators[moved].degree % 2 and self.generators[other].degree % 2:
                    sign = -sign
                items[j - 1], items[j] = moved, other
                j -= 1
        factors: list[tuple[int, int]] = []
        for g in items:
            if factors and factors[-1][0] == g:
                if self.generators[g].degree % 2:
                    return None
                factors[-1] = (g, factors[-1][1] + 1)
            else:
                factors.append((g, 1))
        return sign, tuple(factors)

    def multiply_monomials(self, a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
        """Merge two canonical monomials; None when an odd square appears."""
        if not a:
            return 1, b
        if not b:
            return 1, a
        sign = 1
        out: list[tuple[int, int]] = []
        ia, ib = 0, 0
        # odd factors remaining in the suffix of a, for the crossing count
        odd_tail = [0] * (len(a) + 1)
        for i in range(len(a) - 1, -1, -1):
            g, e = a[i]
            odd_tail[i] = odd_tail[i + 1] + (e if self.generators[g].degree % 2 else 0)
        while ia < len(a) and ib < len(b):
            ga, ea = a[ia]
            gb, eb = b[ib]
            if self._rank[ga] < self._rank[gb]:
                out.append((ga, ea))
                ia += 1
            elif self._rank[ga] > self._rank[gb]:
                if self.generators[gb].degree % 2:
                    if eb > 1:
                        return None
                    if odd_tail[ia] % 2:
                        sign = -sign
                out.append((gb, eb))
                ib += 1
            else:
                if self.generators[ga].degree % 2:
                    return None
                out.append((ga, ea + eb))
                ia += 1
                ib += 1
        out.extend(a[ia:])
        out.extend(b[ib:])
        return sign, tuple(out)

    def monomial_basis(self, degree: int) -> list[Monomial]:
        """All canonical monomials of the given degree, in deterministic
        order (lexicographic in the canonical generator order)."""
        if degree < 0:
            return []
        if degree == 0:
            return [UNIT]
        order = self._order
        out: list[Monomial] = []

        def walk(pos: int, remaining: int, acc: list[tuple[int, int]]):
            if remaining == 0:
                out.append(tuple(acc))
                return
            if pos == len(order):
                return
            gid = order[pos]
            d = self.generators[gid].degree
            walk(pos + 1, remaining, acc)
            if d % 2:
                if d <= remaining:
                    acc.append((gid, 1))
                    walk(pos + 1, remaining - d, acc)
                    acc.pop()
            else:
                e = 1
                while e * d <= remaining:
                    acc.append((gid, e))
                    walk(pos + 1, remaining - e * d, acc)
                    acc.pop()
                    e += 1

        walk(0, degree, [])
        out.sort(key=lambda m: tuple((self._rank[g], e) for g, e in m))
        return out

    # ---- elements -----------------------------------------------------

    def zero(self, kind: str = RATIONAL) -> "Element":
        return Element(self, kind, {})

    def one(self, kind: str = RATIONAL) -> "Element":
        return Element(self, kind, {UNIT: _one_of(kind)})

    def gen(self, name_or_gid) -> "Element":
        g = self.by_name[name_or_gid] if isinstance(name_or_gid, str) else self.generators[name_or_gid]
        return Element(self, RATIONAL, {((g.gid, 1),): Fraction(1)})

    def element(self, terms: dict[Monomial, object], kind: str = RATIONAL) -> "Element":
        return Element(self, kind, dict(terms))

    def __eq__(self, other):
        return isinstance(other, FreeGCA) and self.generators == other.generators

    def __repr__(self):
        return "FreeGCA(" + ", ".join(f"{g.name}:{g.degree}" for g in self.generators) + ")"


def _one_of(kind: str):
    return Fraction(1) if kind == RATIONAL else Laurent.one()


def _zero_of(kind: str):
    return Fraction(0) if kind == RATIONAL else Laurent.zero()


class Element:
    """Element of a FreeGCA with scalars of a single kind."""

    __slots__ = ("algebra", "kind", "terms")

    def __init__(self, algebra: FreeGCA, kind: str, terms: dict[Monomial, object]):
        if kind not in (RATIONAL, LAURENT):
            raise ValueError(f"unknown scalar kind {kind!r}")
        clean = {}
        for m, c in terms.items():
            if kind == RATIONAL:
                if isinstance(c, Laurent):
                    raise ScalarKindError("Laurent scalar in rational element")
                c = Fraction(c)
            else:
                if not isinstance(c, Laurent):
                    c = Laurent.from_rational(c)
            if c:
                clean[m] = c
        self.algebra = algebra
        self.kind = kind
        self.terms = clean

    # ---- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """The common degree of all terms, None for 0, error if mixed."""
        degs = {self.algebra.degree_of(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise HomogeneityError(f"mixed degrees {sorted(degs)} in {self}")
        return degs.pop()

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {self.algebra.degree_of(m) for m in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs.pop() == degree

    # ---- arithmetic ---------------------------------------------------

    def _check(self, other: "Element"):
        if self.algebra != other.algebra:
            raise AmbientMismatchError("elements from different ambient algebras")
        if self.kind != other.kind:
            raise ScalarKindError(f"cannot mix {self.kind} and {other.kind} elements")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m)
            terms[m] = c if acc is None else acc + c
        return Element(self.algebra, self.kind, terms)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.algebra, self.kind, {m: -c for m, c in self.terms.items()})

    def scale(self, scalar) -> "Element":
        if self.kind == RATIONAL and isinstance(scalar, Laurent):
            raise ScalarKindError("Laurent scalar on rational element")
        return Element(self.algebra, self.kind, {m: c * scalar for m, c in self.terms.items()})

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        alg = self.algebra
        terms: dict[Monomial, object] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                merged = alg.multiply_monomials(ma, mb)
                if merged is None:
                    continue
                sign, m = merged
                c = ca * cb
                if sign < 0:
                    c = -c
                acc = terms.get(m)
                terms[m] = c if acc is None else acc + c
        return Element(alg, self.kind, terms)

    def power(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative element power")
        out = self.algebra.one(self.kind)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.kind == other.kind and self.terms == other.terms

    def coefficient(self, mono: Monomial):
        return self.terms.get(mono, _zero_of(self.kind))

    def with_laurent_scalars(self) -> "Element":
        """Embed a rational element into the Laurent kind."""
        if self.kind == LAURENT:
            return self
        return Element(self.algebra, LAURENT, {m: Laurent.from_rational(c) for m, c in self.terms.items()})

    def eval_t(self, value: Fraction) -> "Element":
        """Substitute a rational for t in every coefficient, landing in the
        rational kind.  Errors if any coefficient still involves s."""
        if self.kind == RATIONAL:
            return self
        terms = {}
        for m, c in self.terms.items():
            ev = c.eval_t(value)
            terms[m] = ev.as_rational()
        return Element(self.algebra, RATIONAL, terms)

    def map_scalars(self, fn: Callable) -> "Element":
        return Element(self.algebra, self.kind, {m: fn(c) for m, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            name = self.algebra.monomial_name(m)
            if isinstance(c, Laurent):
                text = str(c)
                coeff = text if c.term_count() <= 1 else f"({text})"
            else:
                coeff = str(c)
            if m == UNIT:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(name)
            elif coeff == "-1":
                parts.append(f"-{name}")
            else:
                parts.append(f"{coeff}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


# ---- extensions -------------------------------------------------------


def extend_derivation(
    algebra: FreeGCA, images: dict[int, Element], kind: str = RATIONAL
) -> Callable[[Element], Element]:
    """Extend generator images to the degree +1 derivation d.

    `images` maps generator ids to homogeneous elements of degree
    deg(g) + 1; absent generators map to zero.  The extension obeys the
    graded Leibniz rule d(ab) = d(a) b + (-1)^{deg a} a d(b).
    """
    for gid, img in images.items():
        g = algebra.generators[gid]
        if img.algebra != algebra:
            raise AmbientMismatchError(f"image of {g.name} lives in a different algebra")
        if not img.is_homogeneous(g.degree + 1):
            raise HomogeneityError(
                f"image of {g.name} must be homogeneous of degree {g.degree + 1}"
            )

    zero = algebra.zero(kind)
    img_of = {
        gid: (img.with_laurent_scalars() if kind == LAURENT else img)
        for gid, img in images.items()
        if not img.is_zero()
    }
    cache: dict[Monomial, Element] = {UNIT: zero}

    def d_mono(mono: Monomial) -> Element:
        hit = cache.get(mono)
        if hit is not None:
            return hit
        gid, e = mono[0]
        rest = mono[1:]
        g = algebra.generators[gid]
        head_img = img_of.get(gid)
        # d(g^e * rest) = e g^(e-1) dg * rest + (-1)^(deg g^e) g^e * d(rest)
        total = zero
        if head_img is not None:
            head_pow: Monomial = ((gid, e - 1),) if e > 1 else UNIT
            lead = Element(algebra, kind, {head_pow: _one_of(kind)})
            if e > 1:
                lead = lead.scale(Fraction(e))
            total = total + lead * head_img * Element(algebra, kind, {rest: _one_of(kind)})
        if rest:
            tail = d_mono(rest)
            if not tail.is_zero():
                head = Element(algebra, kind, {((gid, e),): _one_of(kind)})
                if (g.degree * e) % 2:
                    tail = -tail
                total = total + head * tail
        cache[mono] = total
        return total

    def derivation(x: Element) -> Element:
        if x.algebra != algebra:
            raise AmbientMismatchError("element from a different ambient algebra")
        if kind == LAURENT:
            x = x.with_laurent_scalars()
        elif x.kind != RATIONAL:
            raise ScalarKindError("rational derivation applied to Laurent element")
        out = algebra.zero(kind)
        for m, c in x.terms.items():
            part = d_mono(m)
            if not part.is_zero():
                out = out + part.scale(c)
        return out

    return derivation


def extend_algebra_map(
    algebra: FreeGCA,
    images: dict[int, Element],
    kind: str = RATIONAL,
    target: FreeGCA | None = None,
) -> Callable[[Element], Element]:
    """Extend generator images to the degree-0 algebra map.

    `images` maps generator ids to homogeneous elements of the same degree
    in the target algebra (default: the source).  Absent generators map to
    themselves, so partial assignments describe maps fixing the rest.
    """
    tgt = target or algebra
    for gid, img in images.items():
        g = algebra.generators[gid]
        if img.algebra != tgt:
            raise AmbientMismatchError(f"image of {g.name} lives outside the target algebra")
        if not img.is_homogeneous(g.degree):
            raise HomogeneityError(f"image of {g.name} must be homogeneous of degree {g.degree}")

    img_of: dict[int, Element] = {}
    for gid, img in images.items():
        img_of[gid] = img.with_laurent_scalars() if kind == LAURENT else img
    cache: dict[Monomial, Element] = {UNIT: tgt.one(kind)}

    def image_of_gen(gid: int) -> Element:
        img = img_of.get(gid)
        if img is None:
            if tgt != algebra:
                raise HomogeneityError(
                    f"no image for generator {algebra.generators[gid].name!r}"
                )
            img = Element(tgt, kind, {((gid, 1),): _one_of(kind)})
            img_of[gid] = img
        return img

    def phi_mono(mono: Monomial) -> Element:
        hit = cache.get(mono)
        if hit is not None:
            return hit
        out = tgt.one(kind)
        for gid, e in mono:
            out = out * image_of_gen(gid).power(e)
        cache[mono] = out
        return out

    def phi(x: Element) -> Element:
        if x.algebra != algebra:
            raise AmbientMismatchError("element from a different ambient algebra")
        if kind == LAURENT:
            x = x.with_laurent_scalars()
        elif x.kind != RATIONAL:
            raise ScalarKindError("rational map applied to Laurent element")
        out = tgt.zero(kind)
        for m, c in x.terms.items():
            part = phi_mono(m)
            if not part.is_zero():
                out = out + part.scale(c)
        return out

    return phi
