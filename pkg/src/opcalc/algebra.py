"""Normal-ordered non-commutative polynomials over canonical operator pairs.

A system holds N pairs (A_i, B_i) with central commutators [A_i, B_i] = c_i;
generators of distinct pairs commute. Every polynomial is stored in the
canonical word order A_1^a1 B_1^b1 ... A_N^aN B_N^bN, which makes equality a
plain term-map comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .scalars import CRat, ScalarPoly, i_times

Word = tuple[int, ...]


class SystemMismatchError(ValueError):
    """Operands belong to different canonical systems."""


@dataclass(frozen=True)
class CanonicalSystem:
    """N canonical pairs with central pairwise commutators.

    pair_names[i] = (position-like name, momentum-like name); commutators[i]
    is the central scalar c_i with [A_i, B_j] = c_i delta_ij and all other
    basic commutators zero.
    """

    pair_names: tuple[tuple[str, str], ...]
    commutators: tuple[ScalarPoly, ...]

    def __post_init__(self):
        if len(self.pair_names) != len(self.commutators):
            raise ValueError("one commutator per pair required")
        if not self.pair_names:
            raise ValueError("at least one pair required")
        flat = [n for pair in self.pair_names for n in pair]
        if len(set(flat)) != len(flat):
            raise ValueError("generator names must be unique")

    @property
    def n_pairs(self) -> int:
        return len(self.pair_names)

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(n for pair in self.pair_names for n in pair)

    def position_of(self, name: str) -> int:
        """Slot of a generator in the canonical word (0..2N-1)."""
        try:
            return self.generator_names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def commutator_scalar(self, pair: int) -> ScalarPoly:
        return self.commutators[pair]

    @classmethod
    def standard(cls, n_pairs: int = 1, hbar: str = "hbar",
                 names: Sequence[tuple[str, str]] | None = None) -> "CanonicalSystem":
        """All commutators equal to i*hbar (standard canonical relations)."""
        return cls(_default_names(n_pairs, names),
                   tuple(i_times(hbar) for _ in range(n_pairs)))

    @classmethod
    def formal(cls, n_pairs: int = 1,
               names: Sequence[tuple[str, str]] | None = None) -> "CanonicalSystem":
        """Distinct formal central commutators c (N=1) or c1..cN."""
        if n_pairs == 1:
            cs = (ScalarPoly.symbol("c"),)
        else:
            cs = tuple(ScalarPoly.symbol(f"c{i + 1}") for i in range(n_pairs))
        return cls(_default_names(n_pairs, names), cs)

    @classmethod
    def classical(cls, n_pairs: int = 1,
                  names: Sequence[tuple[str, str]] | None = None) -> "CanonicalSystem":
        """All commutators zero: fully commutative limit."""
        return cls(_default_names(n_pairs, names),
                   tuple(ScalarPoly.zero() for _ in range(n_pairs)))


def _default_names(n_pairs, names):
    if names is not None:
        return tuple((a, b) for a, b in names)
    if n_pairs == 1:
        return (("x", "p"),)
    return tuple((f"x{i + 1}", f"p{i + 1}") for i in range(n_pairs))


@lru_cache(maxsize=None)
def _reorder_coeffs(b: int, a: int) -> tuple[tuple[int, int], ...]:
    """Integer data for B^b A^a = sum_k k! C(b,k) C(a,k) (-c)^k A^(a-k) B^(b-k)."""
    return tuple((k, math.factorial(k) * math.comb(b, k) * math.comb(a, k))
                 for k in range(min(a, b) + 1))


@lru_cache(maxsize=None)
def _neg_c_power(system: CanonicalSystem, pair: int, k: int) -> ScalarPoly:
    return (-system.commutators[pair]) ** k


class NCPoly:
    """Polynomial in canonical operators, kept in normal order.

    Immutable. Coefficients are exact ScalarPoly values; no zero terms are
    stored, so equality of term maps is equality of operators.
    """

    __slots__ = ("system", "_terms")

    def __init__(self, system: CanonicalSystem,
                 terms: Mapping[Word, ScalarPoly] | None = None):
        clean: dict[Word, ScalarPoly] = {}
        width = 2 * system.n_pairs
        if terms:
            for word, coeff in terms.items():
                if len(word) != width or any(e < 0 for e in word):
                    raise ValueError(f"bad word {word!r} for {width} slots")
                coeff = ScalarPoly.number(coeff)
                if coeff:
                    clean[tuple(word)] = coeff
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NCPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, system: CanonicalSystem) -> "NCPoly":
        return cls(system)

    @classmethod
    def scalar(cls, system: CanonicalSystem, value) -> "NCPoly":
        zero_word = (0,) * (2 * system.n_pairs)
        return cls(system, {zero_word: ScalarPoly.number(value)})

    @classmethod
    def one(cls, system: CanonicalSystem) -> "NCPoly":
        return cls.scalar(system, 1)

    @classmethod
    def gen(cls, system: CanonicalSystem, name: str, power: int = 1) -> "NCPoly":
        if power < 0:
            raise ValueError("generator powers must be non-negative")
        word = [0] * (2 * system.n_pairs)
        word[system.position_of(name)] = power
        return cls(system, {tuple(word): ScalarPoly.one()})

    @classmethod
    def from_factors(cls, system: CanonicalSystem,
                     factors: Iterable[tuple[str, int]]) -> "NCPoly":
        """Left-to-right product of generator powers in any order.

        Mixed-order words such as A^l B^m A^n B^o are normal-ordered here.
        """
        result = cls.one(system)
        for name, power in factors:
            result = result * cls.gen(system, name, power)
        return result

    # -- inspection --------------------------------------------------------

    def terms(self) -> list[tuple[Word, ScalarPoly]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def n_terms(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(w) for w in self._terms)

    def coefficient(self, word: Word) -> ScalarPoly:
        return self._terms.get(tuple(word), ScalarPoly.zero())

    def coefficient_of_symbol(self, name: str, power: int) -> "NCPoly":
        """Termwise ScalarPoly.coefficient_of; used for series extraction."""
        out = {}
        for word, coeff in self._terms.items():
            part = coeff.coefficient_of(name, power)
            if part:
                out[word] = part
        return NCPoly(self.system, out)

    def depends_only_on(self, name: str) -> bool:
        pos = self.system.position_of(name)
        for word in self._terms:
            for i, e in enumerate(word):
                if e and i != pos:
                    return False
        return True

    # -- ring operations ---------------------------------------------------

    def _check_system(self, other: "NCPoly"):
        if self.system != other.system:
            raise SystemMismatchError("operands from different canonical systems")

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            return other
        if isinstance(other, (int, ScalarPoly, CRat)):
            return NCPoly.scalar(self.system, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        self._check_system(o)
        terms = dict(self._terms)
        for word, coeff in o._terms.items():
            new = terms.get(word, ScalarPoly.zero()) + coeff
            if new:
                terms[word] = new
            else:
                terms.pop(word, None)
        return self._wrap(terms)

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
        return self._wrap({w: -c for w, c in self._terms.items()})

    def _wrap(self, terms: dict[Word, ScalarPoly]) -> "NCPoly":
        out = NCPoly.__new__(NCPoly)
        object.__setattr__(out, "system", self.system)
        object.__setattr__(out, "_terms", terms)
        return out

    def scale(self, value) -> "NCPoly":
        s = ScalarPoly.number(value)
        if not s:
            return self._wrap({})
        return self._wrap({w: c * s for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, ScalarPoly, CRat)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check_system(other)
        system = self.system
        terms: dict[Word, ScalarPoly] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                base = c1 * c2
                for word, factor in _word_product(system, w1, w2):
                    new = terms.get(word, ScalarPoly.zero()) + base * factor
                    if new:
                        terms[word] = new
                    else:
                        terms.pop(word, None)
        return self._wrap(terms)

    def __rmul__(self, other):
        if isinstance(other, (int, ScalarPoly, CRat)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = NCPoly.one(self.system)
        for _ in range(n):
            result = result * self
        return result

    def div_exact(self, divisor: ScalarPoly) -> "NCPoly":
        """Termwise exact scalar division; see ScalarPoly.div_exact."""
        return self._wrap({w: c.div_exact(divisor) for w, c in self._terms.items()})

    # -- comparisons and output ---------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.system == o.system and self._terms == o._terms

    def __hash__(self):
        return hash((self.system, frozenset(self._terms.items())))

    def to_json_obj(self) -> list[dict]:
        """Canonical serialization: word-sorted list of {word, coeff}."""
        return [{"word": list(word), "coeff": coeff.to_json_obj()}
                for word, coeff in self.terms()]

    def __repr__(self):
        return f"NCPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = self.system.generator_names
        parts = []
        for word, coeff in self.terms():
            factors = [names[i] if e == 1 else f"{names[i]}^{e}"
                       for i, e in enumerate(word) if e]
            body = "*".join(factors) if factors else "1"
            cs = str(coeff)
            if cs == "1" and factors:
                parts.append(body)
            elif factors:
                parts.append(f"({cs})*{body}")
            else:
                parts.append(f"({cs})")
        return " + ".join(parts)


def _word_product(system: CanonicalSystem, w1: Word, w2: Word):
    """Normal-order the concatenation of two canonical words.

    Yields (word, scalar) pairs. Works pair by pair: generators of distinct
    pairs commute, and within a pair the swap rule BA = AB - c telescopes to
    the closed form in _reorder_coeffs.
    """
    partial: list[tuple[tuple[int, ...], ScalarPoly]] = [((), ScalarPoly.one())]
    one = ScalarPoly.one()
    for i in range(system.n_pairs):
        a1, b1 = w1[2 * i], w1[2 * i + 1]
        a2, b2 = w2[2 * i], w2[2 * i + 1]
        # A^a1 B^b1 A^a2 B^b2 with the middle block reordered
        options = []
        if b1 == 0 or a2 == 0:
            options.append(((a1 + a2, b1 + b2), one))
        else:
            for k, n in _reorder_coeffs(b1, a2):
                factor = _neg_c_power(system, i, k)
                if k and not factor:
                    continue
                coeff = factor if n == 1 else factor * ScalarPoly.number(n)
                options.append((((a1 + a2 - k), (b1 + b2 - k)), coeff))
        partial = [(head + exts, c0 * c1)
                   for head, c0 in partial
                   for exts, c1 in options
                   if c1]
    for word, coeff in partial:
        yield word, coeff


def commutator(f: NCPoly, g: NCPoly) -> NCPoly:
    """[f, g] = f g - g f."""
    return f * g - g * f


def delta(x: NCPoly, y: NCPoly) -> NCPoly:
    """The inner derivation delta_x y = [x, y]."""
    return commutator(x, y)


def delta_power(x: NCPoly, y: NCPoly, order: int) -> NCPoly:
    """Repeated inner derivation delta_x^order y."""
    if order < 0:
        raise ValueError("order must be non-negative")
    result = y
    for _ in range(order):
        result = commutator(x, result)
    return result
