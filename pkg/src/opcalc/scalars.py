"""Exact scalar coefficients: complex rationals and Laurent polynomials in
formal central symbols (hbar, c, masses, couplings, ...).

Everything downstream certifies identities by exact zero tests, so nothing
in this module may round.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

# A monomial is a sorted tuple of (symbol, exponent) pairs; exponents are
# nonzero integers (negative allowed: the symbols are invertible parameters).
Monomial = tuple[tuple[str, int], ...]

_EMPTY: Monomial = ()


class ExactDivisionError(ArithmeticError):
    """A requested division has no exact result inside the ring."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class CRat:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("CRat is immutable")

    def _coerce(self, other):
        if isinstance(other, CRat):
            return other
        if isinstance(other, (int, Fraction)):
            return CRat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRat(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRat(self.re * o.re - self.im * o.im,
                    self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero CRat")
        return CRat((self.re * o.re + self.im * o.im) / den,
                    (self.im * o.re - self.re * o.im) / den)

    def __neg__(self):
        return CRat(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return CRat(self.re, -self.im)

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"CRat({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


CR_ZERO = CRat(0)
CR_ONE = CRat(1)
CR_I = CRat(0, 1)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for sym, e in m2:
        new = exps.get(sym, 0) + e
        if new:
            exps[sym] = new
        else:
            exps.pop(sym, None)
    return tuple(sorted(exps.items()))


def monomial_label(mono: Monomial) -> str:
    """Human/JSON label, e.g. 'c^2*hbar'; the empty monomial is '1'."""
    if not mono:
        return "1"
    parts = []
    for sym, e in mono:
        parts.append(sym if e == 1 else f"{sym}^{e}")
    return "*".join(parts)


class ScalarPoly:
    """Laurent polynomial in formal symbols over exact complex rationals.

    Immutable; terms map monomials to nonzero CRat coefficients. Symbols
    commute with everything (they model central c-numbers).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, CRat] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if not isinstance(coeff, CRat):
                    coeff = CRat(coeff)
                if coeff:
                    clean[mono] = coeff
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "ScalarPoly":
        return cls()

    @classmethod
    def one(cls) -> "ScalarPoly":
        return cls({_EMPTY: CR_ONE})

    @classmethod
    def i(cls) -> "ScalarPoly":
        """The imaginary unit as a constant polynomial."""
        return cls({_EMPTY: CR_I})

    @classmethod
    def number(cls, value) -> "ScalarPoly":
        """Constant polynomial from int, Fraction or CRat."""
        if isinstance(value, ScalarPoly):
            return value
        if isinstance(value, CRat):
            return cls({_EMPTY: value})
        return cls({_EMPTY: CRat(value)})

    @classmethod
    def rational(cls, num: int, den: int = 1) -> "ScalarPoly":
        return cls({_EMPTY: CRat(Fraction(num, den))})

    @classmethod
    def symbol(cls, name: str, exponent: int = 1) -> "ScalarPoly":
        if exponent == 0:
            return cls.one()
        return cls({((name, exponent),): CR_ONE})

    # -- inspection --------------------------------------------------------

    def terms(self) -> list[tuple[Monomial, CRat]]:
        """Terms in deterministic (sorted-monomial) order."""
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _EMPTY in self._terms)

    def constant_value(self) -> CRat:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self._terms.get(_EMPTY, CR_ZERO)

    def symbols(self) -> set[str]:
        return {sym for mono in self._terms for sym, _ in mono}

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ScalarPoly):
            return other
        if isinstance(other, (int, Fraction, CRat)):
            return ScalarPoly.number(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coeff in o._terms.items():
            new = terms.get(mono, CR_ZERO) + coeff
            if new:
                terms[mono] = new
            else:
                terms.pop(mono, None)
        out = ScalarPoly.__new__(ScalarPoly)
        object.__setattr__(out, "_terms", terms)
        object.__setattr__(out, "_hash", None)
        return out

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        out = ScalarPoly.__new__(ScalarPoly)
        object.__setattr__(out, "_terms", {m: -c for m, c in self._terms.items()})
        object.__setattr__(out, "_hash", None)
        return out

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict[Monomial, CRat] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                mono = _mono_mul(m1, m2)
                new = terms.get(mono, CR_ZERO) + c1 * c2
                if new:
                    terms[mono] = new
                else:
                    terms.pop(mono, None)
        out = ScalarPoly.__new__(ScalarPoly)
        object.__setattr__(out, "_terms", terms)
        object.__setattr__(out, "_hash", None)
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ScalarPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "ScalarPoly":
        """Exact inverse; only single-term polynomials are invertible here."""
        if len(self._terms) != 1:
            raise ExactDivisionError("only monomials are invertible")
        (mono, coeff), = self._terms.items()
        inv_mono = tuple((sym, -e) for sym, e in mono)
        return ScalarPoly({tuple(sorted(inv_mono)): CR_ONE / coeff})

    def div_exact(self, divisor: "ScalarPoly") -> "ScalarPoly":
        """Divide by a monomial without introducing new negative exponents.

        Raises ExactDivisionError when some term is not divisible, which is
        the signal used to reject non-standard commutators downstream.
        """
        divisor = ScalarPoly.number(divisor)
        if len(divisor._terms) != 1:
            raise ExactDivisionError("divisor must be a single monomial")
        (dmono, dcoeff), = divisor._terms.items()
        out: dict[Monomial, CRat] = {}
        for mono, coeff in self._terms.items():
            exps = dict(mono)
            for sym, e in dmono:
                if e > 0 and exps.get(sym, 0) < e:
                    raise ExactDivisionError(
                        f"term {monomial_label(mono)} not divisible by {monomial_label(dmono)}")
                new = exps.get(sym, 0) - e
                if new:
                    exps[sym] = new
                else:
                    exps.pop(sym, None)
            out[tuple(sorted(exps.items()))] = coeff / dcoeff
        return ScalarPoly(out)

    # -- queries and conversions -------------------------------------------

    def coefficient_of(self, name: str, power: int) -> "ScalarPoly":
        """Collect terms with the given exponent of `name`, dropping that factor."""
        out: dict[Monomial, CRat] = {}
        for mono, coeff in self._terms.items():
            exps = dict(mono)
            if exps.get(name, 0) != power:
                continue
            exps.pop(name, None)
            out[tuple(sorted(exps.items()))] = coeff
        return ScalarPoly(out)

    def evaluate(self, bindings: Mapping[str, complex]) -> complex:
        """Instantiate numerically; every symbol present must be bound."""
        total = 0j
        for mono, coeff in self._terms.items():
            value = coeff.to_complex()
            for sym, e in mono:
                if sym not in bindings:
                    raise KeyError(f"unbound symbol {sym!r}")
                value *= complex(bindings[sym]) ** e
            total += value
        return total

    def to_json_obj(self) -> dict[str, list[int]]:
        """{monomial-label: [re_num, re_den, im_num, im_den]} with sorted keys."""
        return {
            monomial_label(mono): [coeff.re.numerator, coeff.re.denominator,
                                   coeff.im.numerator, coeff.im.denominator]
            for mono, coeff in self.terms()
        }

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"ScalarPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in self.terms():
            label = monomial_label(mono)
            if label == "1":
                parts.append(str(coeff))
            elif coeff == CR_ONE:
                parts.append(label)
            else:
                parts.append(f"{coeff}*{label}")
        return " + ".join(parts)


def i_times(name: str = "hbar") -> ScalarPoly:
    """The standard central commutator i*<symbol> (defaults to i*hbar)."""
    return ScalarPoly.i() * ScalarPoly.symbol(name)
