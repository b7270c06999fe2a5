"""Integer Laurent polynomials with fractional exponent units.

Exponents are stored pre-scaled by a fixed unit denominator, so a poly in
t^{1/2} keeps integer keys meaning k/2.  Mixing variables or units is an
error, never a silent rescale.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InexactDivision, MalformedSyntax, UnitMismatch, ZeroPolynomial


class LaurentPoly:
    """Laurent polynomial with integer coefficients.

    ``coeffs`` maps scaled exponent k to a nonzero integer coefficient; the
    true exponent is k / unit.  ``var`` is only a display / compatibility tag.
    """

    __slots__ = ("var", "unit", "coeffs")

    def __init__(self, coeffs=None, var="q", unit=1):
        if unit not in (1, 2, 4):
            raise ValueError("unit denominator must be 1, 2 or 4")
        self.var = var
        self.unit = unit
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c != 0}

    # --- constructors ---

    @classmethod
    def zero(cls, var="q", unit=1):
        return cls({}, var, unit)

    @classmethod
    def one(cls, var="q", unit=1):
        return cls({0: 1}, var, unit)

    @classmethod
    def monomial(cls, coeff, scaled_exp, var="q", unit=1):
        return cls({scaled_exp: coeff}, var, unit)

    # --- basics ---

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _check_compatible(self, other):
        if self.var != other.var or self.unit != other.unit:
            raise UnitMismatch(
                f"cannot combine {self.var}^(k/{self.unit}) with "
                f"{other.var}^(k/{other.unit})"
            )

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var, self.unit)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.var == other.var and self.unit == other.unit
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.var, self.unit, frozenset(self.coeffs.items())))

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()},
                           self.var, self.unit)

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var, self.unit)
        self._check_compatible(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var, self.unit)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()},
                               self.var, self.unit)
        self._check_compatible(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out, self.var, self.unit)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined here")
        result = LaurentPoly.one(self.var, self.unit)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # --- degree data ---

    def mdeg(self):
        """Maximal exponent with nonzero coefficient, as an exact Fraction."""
        if not self.coeffs:
            raise ZeroPolynomial("mdeg of the zero polynomial")
        return Fraction(max(self.coeffs), self.unit)

    def mindeg(self):
        if not self.coeffs:
            raise ZeroPolynomial("mindeg of the zero polynomial")
        return Fraction(min(self.coeffs), self.unit)

    # --- rendering / parsing ---

    def __repr__(self):
        return f"LaurentPoly({self.render()!r}, var={self.var!r}, unit={self.unit})"

    def render(self):
        """Canonical text form, descending exponents: `t^(-1) + t^(-3) - t^(-4)`."""
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                exp = Fraction(e, self.unit)
                if exp == 1:
                    pw = self.var
                else:
                    pw = f"{self.var}^({exp})"
                body = pw if mag == 1 else f"{mag}*{pw}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    _TERM_RE = re.compile(
        r"^(?:(?P<coeff>\d+)\*?)?"
        r"(?:(?P<var>[A-Za-z]+)(?:\^\((?P<exp>-?\d+(?:/\d+)?)\)|\^(?P<iexp>-?\d+))?)?$"
    )

    @classmethod
    def parse(cls, text, var="q", unit=1):
        """Parse the canonical rendering back into a polynomial."""
        text = text.strip()
        if text in ("0", ""):
            return cls.zero(var, unit)
        # split into signed terms; separators are spaced so that signs
        # inside exponents like q^(-1) survive
        tokens = re.split(r"\s([+-])\s", text)
        head = tokens[0]
        head_sign = "+"
        if head.startswith(("-", "+")):
            head_sign, head = head[0], head[1:].lstrip()
        terms = [(head_sign, head)]
        terms.extend(zip(tokens[1::2], tokens[2::2]))
        coeffs = {}
        for sign, term in terms:
            m = cls._TERM_RE.match(term)
            if not m or (m.group("coeff") is None and m.group("var") is None):
                raise MalformedSyntax(f"bad term {term!r} in {text!r}")
            coeff = int(m.group("coeff") or 1)
            if sign == "-":
                coeff = -coeff
            if m.group("var") is None:
                exp = Fraction(0)
            else:
                if m.group("var") != var:
                    raise UnitMismatch(
                        f"expected variable {var!r}, found {m.group('var')!r}")
                raw = m.group("exp") or m.group("iexp")
                exp = Fraction(raw) if raw is not None else Fraction(1)
            scaled = exp * unit
            if scaled.denominator != 1:
                raise UnitMismatch(
                    f"exponent {exp} is not a multiple of 1/{unit}")
            key = int(scaled)
            coeffs[key] = coeffs.get(key, 0) + coeff
        return cls(coeffs, var, unit)


def exact_divide(num, den):
    """Exact Laurent division; raises InexactDivision on any remainder."""
    num._check_compatible(den)
    if den.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero(num.var, num.unit)
    lead_den = max(den.coeffs)
    low_den = min(den.coeffs)
    # exponents of an exact quotient cannot drop below this
    low_quot = min(num.coeffs) - low_den
    rem = dict(num.coeffs)
    quot = {}
    while rem:
        lead_rem = max(rem)
        e = lead_rem - lead_den
        if e < low_quot:
            raise InexactDivision(
                f"{num.render()} is not divisible by {den.render()}")
        c_rem = rem[lead_rem]
        c_den = den.coeffs[lead_den]
        if c_rem % c_den != 0:
            raise InexactDivision(
                f"{num.render()} is not divisible by {den.render()}")
        c = c_rem // c_den
        quot[e] = c
        for ed, cd in den.coeffs.items():
            k = e + ed
            v = rem.get(k, 0) - c * cd
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPoly(quot, num.var, num.unit)


def substitute(poly, rule):
    """Apply a named exponent substitution.

    Rules:
      "A->t^(-1/4)":  A-exponent e becomes t-exponent -e/4 (quarter units).
      "q->-t^(1/2)":  q-exponent j becomes t-exponent j/2 with sign (-1)^j.
    """
    if rule == "A->t^(-1/4)":
        if poly.var != "A" or poly.unit != 1:
            raise UnitMismatch("rule A->t^(-1/4) needs an integer-exponent A-polynomial")
        return LaurentPoly({-e: c for e, c in poly.coeffs.items()}, "t", 4)
    if rule == "q->-t^(1/2)":
        if poly.var != "q" or poly.unit != 1:
            raise UnitMismatch("rule q->-t^(1/2) needs an integer-exponent q-polynomial")
        out = {}
        for j, c in poly.coeffs.items():
            out[j] = out.get(j, 0) + (c if j % 2 == 0 else -c)
        return LaurentPoly(out, "t", 2)
    raise ValueError(f"unknown substitution rule {rule!r}")


def to_half_units(poly):
    """Reinterpret a quarter-unit polynomial whose exponents are all even
    as a half-unit polynomial (used after the Kauffman A -> t^(-1/4) step)."""
    if poly.unit != 4:
        raise UnitMismatch("to_half_units expects a quarter-unit polynomial")
    out = {}
    for e, c in poly.coeffs.items():
        if e % 2 != 0:
            raise UnitMismatch(f"exponent {Fraction(e, 4)} is not a half-integer")
        out[e // 2] = c
    return LaurentPoly(out, poly.var, 2)
