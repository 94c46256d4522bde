"""Exact sparse Laurent polynomials in two variables ``z`` and ``a``.

Coefficients are Python integers, so there is no overflow however large the
resolving tree gets.  Values are immutable; every operation returns a new
polynomial in canonical form (no zero coefficients are ever stored).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple

__all__ = ["Laurent2", "AExtremes", "a_extremes", "delta_power", "DELTA"]

Exponent = Tuple[int, int]  # (z_power, a_power)


class Laurent2:
    """Integer Laurent polynomial in ``z`` and ``a``.

    Terms are stored as ``{(z_power, a_power): coeff}``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[Tuple[Exponent, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Exponent, int] = {}
        for (i, j), c in items:
            key = (int(i), int(j))
            acc[key] = acc.get(key, 0) + int(c)
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, terms: Dict[Exponent, int]) -> "Laurent2":
        # caller guarantees canonical form and gives up ownership of the dict
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, coeff: int = 1, z_power: int = 0, a_power: int = 0) -> "Laurent2":
        return cls._wrap({(z_power, a_power): coeff} if coeff else {})

    @classmethod
    def zero(cls) -> "Laurent2":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "Laurent2":
        return cls._wrap({(0, 0): 1})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, z_power: int, a_power: int) -> int:
        return self._terms.get((z_power, a_power), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Laurent2.monomial(other)
        if not isinstance(other, Laurent2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Laurent2") -> "Laurent2":
        if isinstance(other, int):
            other = Laurent2.monomial(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return Laurent2._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "Laurent2":
        return Laurent2._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "Laurent2") -> "Laurent2":
        if isinstance(other, int):
            other = Laurent2.monomial(other)
        return self + (-other)

    def __mul__(self, other: "Laurent2") -> "Laurent2":
        if isinstance(other, int):
            return self.mul_monomial(other, 0, 0) if other else Laurent2.zero()
        out: Dict[Exponent, int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return Laurent2._wrap({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent2":
        if n < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = Laurent2.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_monomial(self, coeff: int, z_power: int, a_power: int) -> "Laurent2":
        """Multiply by ``coeff * z**z_power * a**a_power``; ``coeff`` must be nonzero."""
        if coeff == 0:
            raise ValueError("monomial coefficient must be nonzero")
        return Laurent2._wrap(
            {(i + z_power, j + a_power): c * coeff for (i, j), c in self._terms.items()}
        )

    def mirror_substitute(self) -> "Laurent2":
        """Substitute ``a -> -1/a``: ``c z^i a^j`` becomes ``c (-1)^j z^i a^-j``."""
        return Laurent2._wrap(
            {(i, -j): (-c if j & 1 else c) for (i, j), c in self._terms.items()}
        )

    # -- degrees ----------------------------------------------------------

    def a_degrees(self) -> Tuple[int, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no degrees")
        pows = [j for _, j in self._terms]
        return max(pows), min(pows)

    def z_coefficient_at_a(self, a_power: int) -> "Laurent2":
        """The Laurent polynomial in ``z`` multiplying ``a**a_power``."""
        return Laurent2._wrap({(i, 0): c for (i, j), c in self._terms.items() if j == a_power})

    # -- text form --------------------------------------------------------

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def to_string(self) -> str:
        """Deterministic text: ``"c z^i a^j"`` terms joined by ``" + "``."""
        if not self._terms:
            return "0"
        return " + ".join(f"{c} z^{i} a^{j}" for (i, j), c in self.sorted_terms())

    _TERM = re.compile(r"^\s*(-?\d+)\s+z\^(-?\d+)\s+a\^(-?\d+)\s*$")

    @classmethod
    def from_string(cls, text: str) -> "Laurent2":
        text = text.strip()
        if text == "0":
            return cls.zero()
        terms = []
        for chunk in text.split(" + "):
            m = cls._TERM.match(chunk)
            if not m:
                raise ValueError(f"malformed term {chunk!r}")
            c, i, j = map(int, m.groups())
            terms.append(((i, j), c))
        return cls(terms)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Laurent2({self.to_string()!r})"


def delta_power(n: int) -> Laurent2:
    """``((a - a^-1) z^-1) ** n``: the value of the ``(n+1)``-component unlink."""
    return DELTA ** n


DELTA = Laurent2({(-1, 1): 1, (-1, -1): -1})


@dataclass(frozen=True)
class AExtremes:
    """Extreme ``a``-degrees of a polynomial and their ``z`` coefficients."""

    E: int
    e: int
    p_h: Laurent2
    p_l: Laurent2
    p0_h: Tuple[int, int]  # (coeff, z-degree) of the top z-term of p_h
    p0_l: Tuple[int, int]

    @property
    def span(self) -> int:
        return self.E - self.e


def _top_z_term(p: Laurent2) -> Tuple[int, int]:
    deg = max(i for i, _ in p.terms)
    return p.coeff(deg, 0), deg


def a_extremes(p: Laurent2) -> AExtremes:
    if p.is_zero():
        raise ValueError("a_extremes of the zero polynomial is undefined")
    E, e = p.a_degrees()
    p_h = p.z_coefficient_at_a(E)
    p_l = p.z_coefficient_at_a(e)
    return AExtremes(E, e, p_h, p_l, _top_z_term(p_h), _top_z_term(p_l))
