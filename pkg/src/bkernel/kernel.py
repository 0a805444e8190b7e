"""Closed-form Bergman kernels of bounded monomial polyhedra.

The kernel of such a domain is a rational function of the pairings
t_j = z_j * conj(w_j).  Its denominator is a pair of squared binomials read
off the reduced exponent matrix, its scale is 1/(n * pi**2) with n the
reduced determinant, and its numerator is an integer polynomial whose
coefficient at each exponent pair is a product of two evaluations of a
triangular ramp sequence at affine indices.  Everything here is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionViolated, SingularEvaluation
from .intmat import IntMatrix2, check_bounded, reduced_adjugate
from .poly import BiLaurentPoly

# Relative threshold below which a denominator factor counts as vanishing.
POLE_GUARD = 1e-14


def triangle_coeff(k: int, r: int) -> int:
    """Coefficient of x**r in ((1 - x**k) / (1 - x))**2.

    A symmetric ramp: 1, 2, ..., k, ..., 2, 1 on r = 0 .. 2k-2 and zero
    elsewhere.  The poly module recomputes the same numbers by long division
    and squaring, which the tests use to cross-check this closed form.
    """
    if k < 1:
        raise PreconditionViolated(f"k must be a positive integer, got {k}")
    if 0 <= r <= k - 1:
        return 1 + r
    if k <= r <= 2 * k - 2:
        return 2 * k - (1 + r)
    return 0


def permanent(matrix: IntMatrix2) -> int:
    """Permanent of a 2x2 matrix: the determinant with the minus sign flipped."""
    return matrix.m11 * matrix.m22 + matrix.m12 * matrix.m21


def support_index(matrix: IntMatrix2, gamma: tuple[int, int]) -> int:
    """Affine index fed to the triangle ramp for the numerator coefficient.

    The first column (a, c) of the matrix weights the exponent pair, and the
    constant part combines the column product, the permanent and the absolute
    determinant:  a*g1 + c*g2 - 2*a*c + a + c - 1 - perm + |det|.
    """
    g1, g2 = gamma
    a, c = matrix.column(1)
    return (
        a * g1 + c * g2 - 2 * a * c + a + c - 1
        - permanent(matrix) + abs(matrix.det())
    )


@dataclass(frozen=True)
class KernelFormula:
    """Exact closed form of a Bergman kernel.

    Value at (z, w):  numerator(t1, t2) / (det * pi**2 * product of
    denom_factors each raised to its power), with t_j = z_j * conj(w_j).
    matrix is the defining matrix (normalised), reduced the primitive-column
    exponent matrix it reduces to, det the reduced determinant.
    """

    matrix: IntMatrix2
    reduced: IntMatrix2
    det: int
    numerator: BiLaurentPoly
    denom_factors: tuple[tuple[BiLaurentPoly, int], ...]
    pi_exponent: int = field(default=-2)

    def to_json_dict(self) -> dict:
        return {
            "B": [list(r) for r in self.matrix.rows()],
            "A": [list(r) for r in self.reduced.rows()],
            "detA": self.det,
            "scale": {"num": 1, "den": self.det, "pi_exp": self.pi_exponent},
            "numerator": self.numerator.to_json_terms(),
            "denominator": [
                {"terms": f.to_json_terms(), "power": p} for f, p in self.denom_factors
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "KernelFormula":
        det = int(data["detA"])
        scale = data.get("scale", {})
        if scale and (scale.get("num") != 1 or scale.get("den") != det):
            raise PreconditionViolated(f"inconsistent scale block {scale!r}")
        return cls(
            matrix=IntMatrix2.from_rows(data["B"]),
            reduced=IntMatrix2.from_rows(data["A"]),
            det=det,
            numerator=BiLaurentPoly.from_json_terms(data["numerator"]),
            denom_factors=tuple(
                (BiLaurentPoly.from_json_terms(d["terms"]), int(d["power"]))
                for d in data["denominator"]
            ),
            pi_exponent=int(scale.get("pi_exp", -2)),
        )

    def text(self) -> str:
        factors = " * ".join(f"({f.text()})^{p}" for f, p in self.denom_factors)
        lines = [
            f"domain matrix: {self.matrix}",
            f"reduced matrix: {self.reduced} (determinant {self.det})",
            "kernel at t_j = z_j * conj(w_j):",
            f"  K = g(t1, t2) / ({self.det} * pi^2 * {factors})",
            f"  g = {self.numerator.text()}",
        ]
        return "\n".join(lines)

    def latex(self) -> str:
        factors = "".join(
            f"\\left({f.latex()}\\right)^{{{p}}}" for f, p in self.denom_factors
        )
        return (
            f"\\frac{{1}}{{{self.det}\\pi^{{2}}}}\\cdot"
            f"\\frac{{{self.numerator.latex()}}}{{{factors}}}"
        )


def _numerator_box(reduced: IntMatrix2) -> tuple[int, int]:
    # exponent box: e1 up to twice the second row sum minus 2, e2 likewise
    # for the first row; all numerator support lives inside it.
    return (
        2 * reduced.m21 + 2 * reduced.m22 - 2,
        2 * reduced.m11 + 2 * reduced.m12 - 2,
    )


def support_bounds(reduced: IntMatrix2) -> tuple[tuple[tuple[int, int], tuple[int, int]], tuple[tuple[int, int, int], ...]]:
    """Box and parallelogram constraints on the numerator support.

    Returns (box, rows) where box = ((0, e1max), (0, e2max)) and rows holds
    four integer triples (c1, c2, c0), each asserting c1*e1 + c2*e2 + c0 >= 0.
    The four rows pair up into the two-sided bounds 0 <= index <= 2*det - 2
    for the affine index of the reduced matrix and of its column swap.
    """
    e1max, e2max = _numerator_box(reduced)
    det = reduced.det()
    rows = []
    for m in (reduced, reduced.swap_cols()):
        a, c = m.column(1)
        c0 = support_index(m, (0, 0))
        rows.append((a, c, c0))
        rows.append((-a, -c, 2 * det - 2 - c0))
    return ((0, e1max), (0, e2max)), tuple(rows)


def _numerator_from(reduced: IntMatrix2) -> BiLaurentPoly:
    det = reduced.det()
    swapped = reduced.swap_cols()
    e1max, e2max = _numerator_box(reduced)
    terms = {}
    for g1 in range(e1max + 1):
        for g2 in range(e2max + 1):
            c = triangle_coeff(det, support_index(reduced, (g1, g2))) * triangle_coeff(
                det, support_index(swapped, (g1, g2))
            )
            if c:
                terms[(g1, g2)] = Fraction(c)
    return BiLaurentPoly(terms)


def _denominator_from(reduced: IntMatrix2) -> tuple[tuple[BiLaurentPoly, int], ...]:
    first = BiLaurentPoly({(0, reduced.m12): 1, (reduced.m22, 0): -1})
    second = BiLaurentPoly({(reduced.m21, 0): 1, (0, reduced.m11): -1})
    return ((first, 2), (second, 2))


def general_kernel(matrix: IntMatrix2) -> KernelFormula:
    """Closed-form kernel of the bounded domain defined by the matrix.

    The denominator factors are t2**row1col2 - t1**row2col2 and
    t1**row2col1 - t2**row1col1 of the reduced matrix, both squared.
    """
    normalised = check_bounded(matrix)
    reduced = reduced_adjugate(normalised)
    return KernelFormula(
        matrix=normalised,
        reduced=reduced,
        det=reduced.det(),
        numerator=_numerator_from(reduced),
        denom_factors=_denominator_from(reduced),
    )


def hartogs_kernel(k1: int, k2: int) -> KernelFormula:
    """Kernel of the model domain |z1|**k1 < |z2|**k2, |z2| < 1.

    Requires k1 >= 1, k2 >= 0 and gcd(k1, k2) == 1 (so k2 == 0 only with
    k1 == 1, which is the bidisc; k1 == k2 == 1 is the classical Hartogs
    triangle).  The numerator enumerates a box and filters through the same
    triangle ramp; the result agrees term for term with general_kernel of
    the matrix [[k1, -k2], [0, 1]].
    """
    if k1 < 1 or k2 < 0 or math.gcd(k1, k2) != 1:
        raise PreconditionViolated(
            f"need k1 >= 1 and k2 >= 0 with gcd(k1, k2) == 1, got k1={k1}, k2={k2}"
        )
    terms = {}
    for b1 in range(0, 2 * k1 - 1):
        for b2 in range(0, 2 * k2 + 1):
            c = triangle_coeff(k1, b1) * triangle_coeff(
                k1, k1 * b2 + k2 * b1 + k1 + k2 - 1 - 2 * k1 * k2
            )
            if c:
                terms[(b1, b2)] = Fraction(c)
    reduced = IntMatrix2(1, k2, 0, k1)
    return KernelFormula(
        matrix=IntMatrix2(k1, -k2, 0, 1),
        reduced=reduced,
        det=k1,
        numerator=BiLaurentPoly(terms),
        denom_factors=_denominator_from(reduced),
    )


def eval_kernel(formula: KernelFormula, z: tuple[complex, complex], w: tuple[complex, complex]) -> complex:
    """Evaluate the closed form at (z, w) through t_j = z_j * conj(w_j).

    Raises SingularEvaluation when a denominator factor vanishes to within
    POLE_GUARD relative to the magnitude of its evaluated terms.
    """
    t1 = complex(z[0]) * complex(w[0]).conjugate()
    t2 = complex(z[1]) * complex(w[1]).conjugate()
    denominator = complex(formula.det * math.pi ** 2)
    for factor, power in formula.denom_factors:
        value, magnitude = factor.eval_with_magnitude(t1, t2)
        # relative cancellation test; magnitude 0 means every term vanished
        if abs(value) <= POLE_GUARD * magnitude:
            raise SingularEvaluation(
                f"denominator factor {factor.text()} vanishes at t=({t1}, {t2})"
            )
        denominator *= value ** power
    return formula.numerator.eval(t1, t2) / denominator
