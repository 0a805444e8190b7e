"""Tests for the exact matrix layer: reduction, boundedness, triangularisation."""

import math
import random

import pytest

from bkernel import (
    IntMatrix2,
    PreconditionViolated,
    SingularMatrix,
    UnboundedDomain,
    check_bounded,
    column_gcds,
    extended_gcd,
    hermite,
    normalize,
    reduced_adjugate,
)


def test_entries_must_be_plain_ints():
    with pytest.raises(PreconditionViolated):
        IntMatrix2(1, 0, 0, 1.0)
    with pytest.raises(PreconditionViolated):
        IntMatrix2(True, 0, 0, 1)
    with pytest.raises(PreconditionViolated):
        IntMatrix2("1", 0, 0, 1)


def test_basic_accessors():
    m = IntMatrix2(4, -1, -1, 3)
    assert m.rows() == ((4, -1), (-1, 3))
    assert m.column(1) == (4, -1)
    assert m.column(2) == (-1, 3)
    assert m.det() == 11
    assert str(m) == "[[4, -1], [-1, 3]]"
    assert IntMatrix2.from_rows([(4, -1), (-1, 3)]) == m
    assert IntMatrix2.identity() == IntMatrix2(1, 0, 0, 1)
    with pytest.raises(PreconditionViolated):
        m.column(0)


def test_swaps_and_matmul():
    m = IntMatrix2(1, 2, 3, 4)
    assert m.swap_rows() == IntMatrix2(3, 4, 1, 2)
    assert m.swap_cols() == IntMatrix2(2, 1, 4, 3)
    assert m @ IntMatrix2.identity() == m
    assert IntMatrix2(0, 1, 1, 0) @ m == m.swap_rows()
    assert m @ IntMatrix2(0, 1, 1, 0) == m.swap_cols()


def test_adjugate_inverts_up_to_det():
    rng = random.Random(1)
    for _ in range(200):
        m = IntMatrix2(*(rng.randint(-9, 9) for _ in range(4)))
        d = m.det()
        assert m @ m.adjugate() == IntMatrix2(d, 0, 0, d)
        assert m.adjugate() @ m == IntMatrix2(d, 0, 0, d)
    assert IntMatrix2(4, -1, -1, 3).adjugate() == IntMatrix2(3, 1, 1, 4)


def test_normalize():
    m = IntMatrix2(4, -1, -1, 3)
    assert normalize(m) == m
    assert normalize(m.swap_rows()) == m
    with pytest.raises(SingularMatrix):
        normalize(IntMatrix2(2, 4, 1, 2))


def test_check_bounded_accepts():
    for m in (
        IntMatrix2.identity(),
        IntMatrix2(1, -1, 0, 1),
        IntMatrix2(4, -1, -1, 3),
        IntMatrix2(1, -2, -1, 4),
    ):
        assert check_bounded(m) == m
    # row order does not matter for the domain, only for the normal form
    assert check_bounded(IntMatrix2(0, 1, 1, 0)) == IntMatrix2.identity()


def test_check_bounded_rejects():
    # |z1 z2| < 1, |z2| < 1 allows z1 to blow up
    with pytest.raises(UnboundedDomain):
        check_bounded(IntMatrix2(1, 1, 0, 1))
    # |z1|^2 < |z2| with |z1 z2| < 1 allows z2 to blow up
    with pytest.raises(UnboundedDomain):
        check_bounded(IntMatrix2(2, -1, 1, 1))
    with pytest.raises(SingularMatrix):
        check_bounded(IntMatrix2(1, 1, 1, 1))


def test_reduced_adjugate_goldens():
    assert reduced_adjugate(IntMatrix2(4, -1, -1, 3)) == IntMatrix2(3, 1, 1, 4)
    assert reduced_adjugate(IntMatrix2(1, -2, -1, 4)) == IntMatrix2(4, 2, 1, 1)
    assert reduced_adjugate(IntMatrix2(1, -1, 0, 1)) == IntMatrix2(1, 1, 0, 1)
    assert reduced_adjugate(IntMatrix2(2, -2, -1, 2)) == IntMatrix2(2, 1, 1, 1)
    assert column_gcds(IntMatrix2(2, -2, -1, 2)) == (1, 2)


def _random_bounded(rng):
    while True:
        m = IntMatrix2(
            rng.randint(1, 9), -rng.randint(0, 9), -rng.randint(0, 9), rng.randint(1, 9)
        )
        if m.det() > 0:
            return m


def test_reduced_adjugate_properties():
    rng = random.Random(7)
    for _ in range(300):
        m = _random_bounded(rng)
        reduced = reduced_adjugate(m)
        g1, g2 = column_gcds(m)
        # scaling the columns back recovers the adjugate
        assert reduced @ IntMatrix2(g1, 0, 0, g2) == m.adjugate()
        assert math.gcd(*reduced.column(1)) == 1
        assert math.gcd(*reduced.column(2)) == 1
        assert reduced.det() * g1 * g2 == m.det()
        # boundedness keeps every reduced entry nonnegative
        assert min(reduced.m11, reduced.m12, reduced.m21, reduced.m22) >= 0


def test_extended_gcd_goldens():
    assert extended_gcd(3, 1) == (1, 0, 1)
    assert extended_gcd(5, 0) == (5, 1, 0)
    g, x, y = extended_gcd(4, 6)
    assert g == 2 and 4 * x + 6 * y == 2


def test_extended_gcd_identity():
    rng = random.Random(2)
    for _ in range(500):
        a = rng.randint(-60, 60)
        c = rng.randint(-60, 60)
        if a == 0 and c == 0:
            continue
        g, x, y = extended_gcd(a, c)
        assert g == math.gcd(a, c)
        assert x * a + y * c == g
    with pytest.raises(PreconditionViolated):
        extended_gcd(0, 0)


def test_hermite_worked_examples():
    dec = hermite(IntMatrix2(3, 1, 1, 4))
    assert dec.transform == IntMatrix2(0, 1, -1, 3)
    assert dec.triangular == IntMatrix2(1, 4, 0, 11)
    assert dec.shift == 4 and dec.det == 11

    dec = hermite(IntMatrix2(4, 2, 1, 1))
    assert dec.transform == IntMatrix2(0, 1, -1, 4)
    assert dec.triangular == IntMatrix2(1, 1, 0, 2)

    dec = hermite(IntMatrix2.identity())
    assert dec.transform == IntMatrix2.identity()
    assert dec.shift == 0 and dec.det == 1

    # already triangular but with an out-of-window corner entry
    dec = hermite(IntMatrix2(1, 3, 0, 1))
    assert dec.transform == IntMatrix2(1, -3, 0, 1)
    assert dec.shift == 0 and dec.det == 1


def test_hermite_preconditions():
    with pytest.raises(PreconditionViolated):
        hermite(IntMatrix2(1, 0, 0, -1))
    with pytest.raises(PreconditionViolated):
        hermite(IntMatrix2(2, 1, 2, 3))  # first column gcd 2
    with pytest.raises(PreconditionViolated):
        hermite(IntMatrix2(1, 2, 1, 2))  # singular


def test_hermite_invariants_random():
    rng = random.Random(3)
    produced = 0
    while produced < 300:
        m = IntMatrix2(*(rng.randint(-30, 30) for _ in range(4)))
        if m.det() <= 0:
            continue
        if math.gcd(*m.column(1)) != 1 or math.gcd(*m.column(2)) != 1:
            continue
        dec = hermite(m)
        assert dec.transform @ m == dec.triangular
        assert dec.transform.det() == 1
        assert dec.triangular.m11 == 1 and dec.triangular.m21 == 0
        assert 0 <= dec.shift < dec.det == m.det()
        assert math.gcd(dec.shift, dec.det) == 1
        produced += 1
