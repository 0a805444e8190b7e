"""Exact 2x2 integer matrix arithmetic for monomial polyhedra.

A bounded two-dimensional monomial polyhedron is cut out by two Laurent
monomial inequalities |z1|**m11 * |z2|**m12 < 1 and |z1|**m21 * |z2|**m22 < 1,
so the whole domain is encoded by one integer matrix whose rows are the
defining exponent vectors.  This module holds that matrix type plus the exact
reduction steps every other module builds on: orientation normalisation,
the boundedness test, the gcd-reduced adjugate, and the unimodular
triangularisation used to transport kernels off model domains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PreconditionViolated, SingularMatrix, UnboundedDomain


@dataclass(frozen=True)
class IntMatrix2:
    """Immutable 2x2 integer matrix [[m11, m12], [m21, m22]].

    Entries are named m<row><col> and kept as arbitrary precision ints.
    Row i is the exponent vector of the i-th defining monomial when the
    matrix describes a domain.
    """

    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self):
        for name in ("m11", "m12", "m21", "m22"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise PreconditionViolated(f"matrix entry {name} must be an int, got {value!r}")

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix2":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.m11, self.m12), (self.m21, self.m22))

    def column(self, j: int) -> tuple[int, int]:
        if j == 1:
            return (self.m11, self.m21)
        if j == 2:
            return (self.m12, self.m22)
        raise PreconditionViolated(f"column index must be 1 or 2, got {j}")

    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def adjugate(self) -> "IntMatrix2":
        """Adjugate, so self @ adjugate == det * identity exactly."""
        return IntMatrix2(self.m22, -self.m12, -self.m21, self.m11)

    def swap_rows(self) -> "IntMatrix2":
        return IntMatrix2(self.m21, self.m22, self.m11, self.m12)

    def swap_cols(self) -> "IntMatrix2":
        return IntMatrix2(self.m12, self.m11, self.m22, self.m21)

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def __str__(self) -> str:
        return f"[[{self.m11}, {self.m12}], [{self.m21}, {self.m22}]]"


def normalize(matrix: IntMatrix2) -> IntMatrix2:
    """Return the matrix with rows ordered so the determinant is positive.

    Swapping the two defining inequalities does not change the domain, so a
    negative determinant is repaired by a row swap.  Determinant zero means
    the two monomials are multiplicatively dependent and the domain is not
    of the kind handled here.
    """
    d = matrix.det()
    if d == 0:
        raise SingularMatrix(f"matrix {matrix} has determinant zero")
    return matrix if d > 0 else matrix.swap_rows()


def check_bounded(matrix: IntMatrix2) -> IntMatrix2:
    """Normalise the matrix and verify the domain it defines is bounded.

    After normalisation the domain is bounded exactly when every entry of the
    adjugate is nonnegative: the log-radius shadow is then spanned by rays
    with nonpositive components, which pins all moduli below 1.  The sampling
    checks in the oracle tests back this criterion up empirically.
    """
    m = normalize(matrix)
    adj = m.adjugate()
    if min(adj.m11, adj.m12, adj.m21, adj.m22) < 0:
        raise UnboundedDomain(
            f"matrix {matrix} defines an unbounded domain (adjugate {adj} has a negative entry)"
        )
    return m


def reduced_adjugate(matrix: IntMatrix2) -> IntMatrix2:
    """Adjugate of a normalised bounded matrix with each column made primitive.

    Dividing each adjugate column by its gcd leaves the domain's kernel
    unchanged and yields the canonical exponent matrix with coprime columns
    that all closed-form machinery is stated for.
    """
    m = check_bounded(matrix)
    adj = m.adjugate()
    g1 = math.gcd(adj.m11, adj.m21)
    g2 = math.gcd(adj.m12, adj.m22)
    return IntMatrix2(adj.m11 // g1, adj.m12 // g2, adj.m21 // g1, adj.m22 // g2)


def column_gcds(matrix: IntMatrix2) -> tuple[int, int]:
    """Gcds of the adjugate columns of a normalised bounded matrix."""
    m = check_bounded(matrix)
    adj = m.adjugate()
    return (math.gcd(adj.m11, adj.m21), math.gcd(adj.m12, adj.m22))


def extended_gcd(a: int, c: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, c) >= 0 and x*a + y*c == g.

    Plain iterative Euclid carrying the Bezout coefficients along.  Any valid
    pair works downstream; the triangularisation below quotients the ambiguity
    away.
    """
    if a == 0 and c == 0:
        raise PreconditionViolated("extended_gcd(0, 0) is undefined")
    old_r, r = a, c
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


@dataclass(frozen=True)
class HermiteDecomposition:
    """Unimodular row transform bringing an exponent matrix to upper
    triangular form [[1, shift], [0, det]] with 0 <= shift < det.

    transform has determinant 1, transform @ source == triangular, and
    gcd(shift, det) == 1.  The decomposition is unique, so equal domains give
    equal data regardless of which Bezout pair the construction used.
    """

    transform: IntMatrix2
    triangular: IntMatrix2

    @property
    def shift(self) -> int:
        return self.triangular.m12

    @property
    def det(self) -> int:
        return self.triangular.m22


def hermite(matrix: IntMatrix2) -> HermiteDecomposition:
    """Triangularise a matrix with positive determinant and primitive columns.

    Writing the columns as (a, c) and (b, d): a Bezout pair x*a + y*c == 1
    gives a candidate top row; dividing its second slot by the determinant
    shifts the candidate into the canonical residue window, which also makes
    the result independent of the Bezout pair.
    """
    a, c = matrix.column(1)
    b, d = matrix.column(2)
    det = matrix.det()
    if det <= 0:
        raise PreconditionViolated(f"matrix {matrix} must have positive determinant, got {det}")
    if math.gcd(a, c) != 1 or math.gcd(b, d) != 1:
        raise PreconditionViolated(f"matrix {matrix} must have coprime columns")
    _, x, y = extended_gcd(a, c)
    raw = x * b + y * d
    q, shift = divmod(raw, det)
    top1 = x + q * c
    top2 = y - q * a
    transform = IntMatrix2(top1, top2, -c, a)
    triangular = transform @ matrix
    assert transform.det() == 1
    assert triangular.rows() == ((1, shift), (0, det))
    assert math.gcd(shift, det) == 1
    return HermiteDecomposition(transform=transform, triangular=triangular)
