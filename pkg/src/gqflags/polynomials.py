"""Exact integer-coefficient polynomials in the two quadrangle parameters s and t.

Just enough arithmetic for the closed-form intersection-number tables:
ring operations, substitution, evaluation, and a canonical text rendering.
No floating point anywhere.
"""

from __future__ import annotations


class BivariatePoly:
    """Polynomial with integer coefficients, keyed by (deg_s, deg_t).

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for (a, b), c in dict(coeffs).items():
                c = int(c)
                if c != 0:
                    clean[(int(a), int(b))] = c
        self._coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "BivariatePoly":
        return cls({(0, 0): c})

    @classmethod
    def var_s(cls) -> "BivariatePoly":
        return cls({(1, 0): 1})

    @classmethod
    def var_t(cls) -> "BivariatePoly":
        return cls({(0, 1): 1})

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, BivariatePoly):
            return other
        if isinstance(other, int):
            return cls.const(other)
        return NotImplemented

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for key, c in other._coeffs.items():
            out[key] = out.get(key, 0) + c
        return BivariatePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly({key: -c for key, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for (a1, b1), c1 in self._coeffs.items():
            for (a2, b2), c2 in other._coeffs.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if exp < 0:
            raise ValueError("negative exponent")
        out = BivariatePoly.const(1)
        for _ in range(exp):
            out = out * self
        return out

    # -- queries -----------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficients(self):
        """Sorted ((deg_s, deg_t), coeff) items."""
        return sorted(self._coeffs.items())

    def evaluate(self, s: int, t: int) -> int:
        return sum(c * s**a * t**b for (a, b), c in self._coeffs.items())

    # -- substitutions -----------------------------------------------------

    def swap_vars(self) -> "BivariatePoly":
        """Interchange s and t."""
        return BivariatePoly({(b, a): c for (a, b), c in self._coeffs.items()})

    def subs_t_to_s(self) -> "BivariatePoly":
        """Identify t with s, producing a polynomial in s alone."""
        out = {}
        for (a, b), c in self._coeffs.items():
            key = (a + b, 0)
            out[key] = out.get(key, 0) + c
        return BivariatePoly(out)

    def subs_s(self, value: int) -> "BivariatePoly":
        out = {}
        for (a, b), c in self._coeffs.items():
            key = (0, b)
            out[key] = out.get(key, 0) + c * value**a
        return BivariatePoly(out)

    def subs_t(self, value: int) -> "BivariatePoly":
        out = {}
        for (a, b), c in self._coeffs.items():
            key = (a, 0)
            out[key] = out.get(key, 0) + c * value**b
        return BivariatePoly(out)

    # -- rendering ---------------------------------------------------------

    def to_text(self) -> str:
        """Canonical form ``c*s^a*t^b + ...``, terms sorted by (a, b) descending."""
        if not self._coeffs:
            return "0"
        parts = []
        for (a, b), c in sorted(self._coeffs.items(), reverse=True):
            factors = []
            if a == 1:
                factors.append("s")
            elif a > 1:
                factors.append(f"s^{a}")
            if b == 1:
                factors.append("t")
            elif b > 1:
                factors.append(f"t^{b}")
            if not factors:
                term = str(abs(c))
            elif abs(c) == 1:
                term = "*".join(factors)
            else:
                term = "*".join([str(abs(c))] + factors)
            parts.append(("- " if c < 0 else "+ ") + term)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"BivariatePoly({self.to_text()})"


S = BivariatePoly.var_s()
T = BivariatePoly.var_t()
ONE = BivariatePoly.const(1)
ZERO = BivariatePoly()
