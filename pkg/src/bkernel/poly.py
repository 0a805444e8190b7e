"""Sparse exact-rational Laurent polynomials in two variables.

Coefficients are fractions.Fraction, exponents are (possibly negative) int
pairs, and zero coefficients are never stored, so equality of values is
equality of term maps.

    >>> p = BiLaurentPoly({(0, 1): 1, (2, 0): -1})   # t2 - t1**2
    >>> (p * p).sorted_terms()
    [((0, 2), Fraction(1, 1)), ((2, 1), Fraction(-2, 1)), ((4, 0), Fraction(1, 1))]
"""

from __future__ import annotations

from fractions import Fraction


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) or isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"coefficient must be exact (int, str or Fraction), got {value!r}")


class BiLaurentPoly:
    """Finite sum of c * t1**e1 * t2**e2 terms with exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for (e1, e2), c in dict(terms).items():
                c = _as_fraction(c)
                if c:
                    data[(int(e1), int(e2))] = c
        self._terms = data

    @classmethod
    def zero(cls) -> "BiLaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "BiLaurentPoly":
        return cls({(0, 0): 1})

    @classmethod
    def term(cls, coeff, e1: int, e2: int) -> "BiLaurentPoly":
        return cls({(e1, e2): coeff})

    def sorted_terms(self) -> list[tuple[tuple[int, int], Fraction]]:
        """Terms in lexicographic exponent order; the canonical ordering."""
        return sorted(self._terms.items())

    def coefficient(self, e1: int, e2: int) -> Fraction:
        return self._terms.get((e1, e2), Fraction(0))

    def support(self) -> list[tuple[int, int]]:
        return sorted(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiLaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self) -> "BiLaurentPoly":
        return BiLaurentPoly({e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> "BiLaurentPoly":
        if not isinstance(other, BiLaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        result = BiLaurentPoly()
        result._terms = out
        return result

    def __sub__(self, other) -> "BiLaurentPoly":
        if not isinstance(other, BiLaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "BiLaurentPoly":
        if isinstance(other, BiLaurentPoly):
            out = {}
            for (a1, a2), ca in self._terms.items():
                for (b1, b2), cb in other._terms.items():
                    e = (a1 + b1, a2 + b2)
                    s = out.get(e, Fraction(0)) + ca * cb
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
            result = BiLaurentPoly()
            result._terms = out
            return result
        c = _as_fraction(other)
        return BiLaurentPoly({e: c * v for e, v in self._terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiLaurentPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"polynomial power must be a nonnegative int, got {n!r}")
        result = BiLaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def eval(self, t1: complex, t2: complex) -> complex:
        """Evaluate at (t1, t2), summing terms in lexicographic order.

        The fixed order makes repeated evaluations bit-identical.  Negative
        exponents at a zero argument raise ZeroDivisionError.
        """
        return self._eval_parts(t1, t2)[0]

    def eval_with_magnitude(self, t1: complex, t2: complex) -> tuple[complex, float]:
        """Evaluate and also return the sum of term magnitudes.

        The magnitude gives the natural scale for deciding whether the value
        is zero up to rounding, used by the kernel evaluator's pole guard.
        """
        return self._eval_parts(t1, t2)

    def _eval_parts(self, t1, t2):
        total = complex(0.0)
        magnitude = 0.0
        for (e1, e2), c in self.sorted_terms():
            term = float(c) * _int_power(t1, e1) * _int_power(t2, e2)
            total += term
            magnitude += abs(term)
        return total, magnitude

    def to_json_terms(self) -> list:
        """JSON form: [e1, e2, "num/den"] triples in lexicographic order."""
        return [[e1, e2, str(c)] for (e1, e2), c in self.sorted_terms()]

    @classmethod
    def from_json_terms(cls, triples) -> "BiLaurentPoly":
        return cls({(int(e1), int(e2)): Fraction(c) for e1, e2, c in triples})

    def _display_terms(self):
        # Positive coefficients first so a binomial reads "t1 - t2^3" rather
        # than "-t2^3 + t1"; lexicographic within each sign group.
        terms = self.sorted_terms()
        return [tc for tc in terms if tc[1] > 0] + [tc for tc in terms if tc[1] < 0]

    def text(self, var1: str = "t1", var2: str = "t2") -> str:
        """Readable one line form, e.g. 't1 - t2^3' or 't2 + 4*t1*t2 + t1^2'."""
        if not self._terms:
            return "0"
        pieces = []
        for (e1, e2), c in self._display_terms():
            mono = "*".join(_text_power(v, e) for v, e in ((var1, e1), (var2, e2)) if e != 0)
            body = _coeff_text(abs(c), mono)
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(pieces)

    def latex(self, var1: str = "t_1", var2: str = "t_2") -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (e1, e2), c in self._display_terms():
            mono = " ".join(_latex_power(v, e) for v, e in ((var1, e1), (var2, e2)) if e != 0)
            body = _coeff_latex(abs(c), mono)
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"BiLaurentPoly({self.text()})"


def _int_power(t: complex, e: int) -> complex:
    if e == 0:
        return 1.0 + 0.0j
    if t == 0 and e < 0:
        raise ZeroDivisionError(f"negative exponent {e} at zero argument")
    return complex(t) ** e


def _coeff_text(c: Fraction, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    return f"{c}*{mono}"


def _coeff_latex(c: Fraction, mono: str) -> str:
    if not mono:
        return _frac_latex(c)
    if c == 1:
        return mono
    return f"{_frac_latex(c)} {mono}"


def _frac_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\tfrac{{{c.numerator}}}{{{c.denominator}}}"


def _text_power(var: str, e: int) -> str:
    return var if e == 1 else f"{var}^{e}"


def _latex_power(var: str, e: int) -> str:
    return var if e == 1 else f"{var}^{{{e}}}"


def squared_geometric_sum(k: int) -> BiLaurentPoly:
    """Expansion of ((1 - x**k) / (1 - x))**2 as a polynomial in t1.

    The quotient is computed by exact univariate long division and then
    squared, deliberately avoiding the closed form for its coefficients so
    this can serve as an independent cross-check of that closed form.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    numerator = [Fraction(0)] * (k + 1)
    numerator[0] = Fraction(1)
    numerator[k] = Fraction(-1)
    quotient = _divide_exactly(numerator, [Fraction(1), Fraction(-1)])
    squared = _convolve(quotient, quotient)
    return BiLaurentPoly({(i, 0): c for i, c in enumerate(squared) if c})


def _divide_exactly(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    """Long division of dense coefficient lists (index = degree); the
    remainder must come out zero."""
    while den and den[-1] == 0:
        den = den[:-1]
    rem = list(num)
    quot = [Fraction(0)] * (len(rem) - len(den) + 1)
    lead = den[-1]
    for i in range(len(quot) - 1, -1, -1):
        c = rem[i + len(den) - 1] / lead
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                rem[i + j] -= c * dj
    assert all(r == 0 for r in rem), "division was not exact"
    return quot


def _convolve(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out
