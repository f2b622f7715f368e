"""Laurent-polynomial scalars in the family parameter t and a reserve
variable s.

A one-parameter rescaling family has images with coefficients in Q[t, 1/t].
The second variable s exists for exactly one purpose: composing a family
with an independent copy of itself to check the group law symbolically.
Scalars are dicts (t-power, s-power) -> Fraction with zeros never stored,
so equality is structural.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import SchemaError
from .rationals import format_rational, parse_rational

class Laurent:
    """Bivariate Laurent polynomial over the rationals, in t and s."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[tuple[int, int], Fraction] | None = None):
        clean = {}
        if terms:
            for k, v in terms.items():
                v = Fraction(v)
                if v:
                    clean[k] = v
        self._terms = clean

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Laurent":
        return cls()

    @classmethod
    def one(cls) -> "Laurent":
        return cls({(0, 0): Fraction(1)})

    @classmethod
    def from_rational(cls, q) -> "Laurent":
        return cls({(0, 0): Fraction(q)})

    @classmethod
    def t(cls, power: int = 1) -> "Laurent":
        return cls({(power, 0): Fraction(1)})

    @classmethod
    def s(cls, power: int = 1) -> "Laurent":
        return cls({(0, power): Fraction(1)})

    # ---- structure ----------------------------------------------------

    def items(self):
        return sorted(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Laurent):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Laurent.from_rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def is_rational(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    def term_count(self) -> int:
        return len(self._terms)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not a constant: {self}")
        return self._terms.get((0, 0), Fraction(0))

    def uses_s(self) -> bool:
        return any(ps for _, ps in self._terms)

    def monomial_t_power(self) -> int | None:
        """The exponent w when self is exactly one term c*t^w with c = 1;
        otherwise None."""
        if len(self._terms) != 1:
            return None
        ((pt, ps), c), = self._terms.items()
        if ps == 0 and c == 1:
            return pt
        return None

    # ---- arithmetic ---------------------------------------------------

    def __add__(self, other) -> "Laurent":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for k, v in other._terms.items():
            terms[k] = terms.get(k, Fraction(0)) + v
        return Laurent(terms)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> "Laurent":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Laurent":
        return _coerce(other) - self

    def __mul__(self, other) -> "Laurent":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[tuple[int, int], Fraction] = {}
        for (pt1, ps1), c1 in self._terms.items():
            for (pt2, ps2), c2 in other._terms.items():
                k = (pt1 + pt2, ps1 + ps2)
                terms[k] = terms.get(k, Fraction(0)) + c1 * c2
        return Laurent(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers only of single terms")
            ((pt, ps), c), = self._terms.items()
            return Laurent({(pt * n, ps * n): Fraction(1) / c ** (-n)})
        out = Laurent.one()
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # ---- substitutions ------------------------------------------------

    def subs_t_with_s(self) -> "Laurent":
        """Rename the parameter: t^a s^b -> s^(a+b).  Defined for t-only scalars."""
        terms: dict[tuple[int, int], Fraction] = {}
        for (pt, ps), c in self._terms.items():
            k = (0, pt + ps)
            terms[k] = terms.get(k, Fraction(0)) + c
        return Laurent(terms)

    def subs_t_with_st(self) -> "Laurent":
        """Substitute t -> s*t, the group-law comparison target."""
        terms: dict[tuple[int, int], Fraction] = {}
        for (pt, ps), c in self._terms.items():
            k = (pt, ps + pt)
            terms[k] = terms.get(k, Fraction(0)) + c
        return Laurent(terms)

    def eval_t(self, value: Fraction) -> "Laurent":
        """Substitute a rational value for t; s survives."""
        value = Fraction(value)
        terms: dict[tuple[int, int], Fraction] = {}
        for (pt, ps), c in self._terms.items():
            if pt < 0 and value == 0:
                raise ZeroDivisionError("t^-1 at t = 0")
            scaled = c * value**pt
            k = (0, ps)
            terms[k] = terms.get(k, Fraction(0)) + scaled
        return Laurent(terms)

    # ---- text form ----------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (pt, ps), c in sorted(self._terms.items(), reverse=True):
            vars_part = []
            if pt:
                vars_part.append("t" if pt == 1 else f"t^{pt}")
            if ps:
                vars_part.append("s" if ps == 1 else f"s^{ps}")
            if not vars_part:
                body = format_rational(abs(c))
            elif abs(c) == 1:
                body = "*".join(vars_part)
            else:
                body = "*".join([format_rational(abs(c))] + vars_part)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str, path: str = "") -> "Laurent":
        """Parse the canonical form, e.g. "1/2*t^2 - t" or "t^-1*s + 3"."""
        src = text.strip()
        if not src:
            raise SchemaError("empty scalar literal", path)
        if src == "0":
            return cls.zero()
        # split into signed chunks at top level
        chunks: list[tuple[int, str]] = []
        sign, buf = 1, []
        first = True
        i = 0
        while i < len(src):
            ch = src[i]
            if ch in "+-" and (first or (buf and src[i - 1] == " ")):
                if buf and "".join(buf).strip():
                    chunks.append((sign, "".join(buf).strip()))
                sign = -1 if ch == "-" else 1
                buf = []
            else:
                buf.append(ch)
            first = False
            i += 1
        if "".join(buf).strip():
            chunks.append((sign, "".join(buf).strip()))
        terms: dict[tuple[int, int], Fraction] = {}
        for sgn, chunk in chunks:
            coeff, powers = _parse_term(chunk, path)
            k = powers
            terms[k] = terms.get(k, Fraction(0)) + sgn * coeff
        return cls(terms)


def _parse_term(chunk: str, path: str) -> tuple[Fraction, tuple[int, int]]:
    factors = chunk.split("*")
    coeff = Fraction(1)
    pt = ps = 0
    saw_var = False
    saw_coeff = False
    for f in factors:
        f = f.strip()
        if not f:
            raise SchemaError(f"malformed scalar term {chunk!r}", path)
        if f[0] in "ts":
            m = re.fullmatch(r"([ts])(?:\^(-?\d+))?", f)
            if not m:
                raise SchemaError(f"malformed scalar term {chunk!r}", path)
            exp = int(m.group(2)) if m.group(2) else 1
            if m.group(1) == "t":
                pt += exp
            else:
                ps += exp
            saw_var = True
        else:
            if saw_coeff or saw_var:
                raise SchemaError(f"malformed scalar term {chunk!r}", path)
            coeff = parse_rational(f, path)
            saw_coeff = True
    return coeff, (pt, ps)


def _coerce(value) -> "Laurent":
    if isinstance(value, Laurent):
        return value
    if isinstance(value, (int, Fraction)):
        return Laurent.from_rational(value)
    return NotImplemented
