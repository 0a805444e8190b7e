"""Independent numerical oracles for the closed-form kernels.

Two routes that never touch the combinatorial numerator machinery:

* a truncated Laurent series built from exact monomial norms, which come
  from a two-dimensional cone integral evaluated in closed form (and
  cross-checked here by adaptive quadrature over the shadow);
* the transformation law for proper maps, summing over the inverse branches
  of the monomial quotient map that uniformises the domain over a model
  Hartogs domain.

Both are compared pointwise against the closed form by verify().
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    NoConvergence,
    NotSquareIntegrable,
    PreconditionViolated,
    SamplingExhausted,
    SingularEvaluation,
)
from .intmat import HermiteDecomposition, IntMatrix2, check_bounded, hermite, reduced_adjugate
from .kernel import eval_kernel, general_kernel

PI_SQUARED = math.pi ** 2

# Series truncation: half-widths double from this start until the partial sum
# stabilises, never exceeding the cap (overridable per call).
SERIES_START = 40
SERIES_CAP = 640

MAX_SAMPLE_REJECTIONS = 10 ** 6


@dataclass(frozen=True)
class DomainSpec:
    """A bounded monomial polyhedron with its derived exact data."""

    matrix: IntMatrix2
    adjugate: IntMatrix2
    reduced: IntMatrix2
    hermite: HermiteDecomposition

    @classmethod
    def from_matrix(cls, matrix: IntMatrix2) -> "DomainSpec":
        m = check_bounded(matrix)
        reduced = reduced_adjugate(m)
        return cls(
            matrix=m,
            adjugate=m.adjugate(),
            reduced=reduced,
            hermite=hermite(reduced),
        )

    @property
    def det(self) -> int:
        return self.matrix.det()

    @property
    def reduced_det(self) -> int:
        return self.reduced.det()


def membership(spec: DomainSpec, z: tuple[complex, complex]) -> bool:
    """Whether z lies in the open domain: both defining monomials < 1.

    Moduli conventions at zero coordinates: 0**0 counts as 1, while a zero
    coordinate raised to a negative exponent fails the constraint.
    """
    r1 = abs(complex(z[0]))
    r2 = abs(complex(z[1]))
    for p, q in spec.matrix.rows():
        if (r1 == 0.0 and p < 0) or (r2 == 0.0 and q < 0):
            return False
        value = (r1 ** p if p else 1.0) * (r2 ** q if q else 1.0)
        if not value < 1.0:
            return False
    return True


def monomial_norm(spec: DomainSpec, alpha: tuple[int, int]) -> Fraction:
    """Squared Bergman-space norm of z1**a1 * z2**a2, in units of pi**2.

    In log-radius coordinates the norm integral becomes an exponential
    integral over the cone spanned by the negated adjugate columns, which
    evaluates to det / (d1 * d2) with d_j the pairing of (2*alpha + 2)
    against adjugate column j; the polar angles contribute (2*pi)**2.
    Finite exactly when both pairings are positive.
    """
    v1 = 2 * alpha[0] + 2
    v2 = 2 * alpha[1] + 2
    d1 = v1 * spec.adjugate.m11 + v2 * spec.adjugate.m21
    d2 = v1 * spec.adjugate.m12 + v2 * spec.adjugate.m22
    if d1 <= 0 or d2 <= 0:
        raise NotSquareIntegrable(
            f"monomial with exponents {alpha} is not square integrable (pairings {d1}, {d2})"
        )
    return Fraction(4 * spec.det, d1 * d2)


def integrability_pairings(spec: DomainSpec, alpha: tuple[int, int]) -> tuple[int, int]:
    """The two pairings whose positivity decides square integrability."""
    v1 = 2 * alpha[0] + 2
    v2 = 2 * alpha[1] + 2
    return (
        v1 * spec.adjugate.m11 + v2 * spec.adjugate.m21,
        v1 * spec.adjugate.m12 + v2 * spec.adjugate.m22,
    )


# ---------------------------------------------------------------------------
# quadrature cross-check of the norm formula


def _truncated_shadow_integral(spec: DomainSpec, alpha: tuple[int, int], cutoff: float) -> float:
    """Integral of r1**(2a1+1) * r2**(2a2+1) over the shadow, in log-radius
    coordinates, with the region truncated at log-radius >= -cutoff.

    Written as dblquad of exp(v . x) over the truncated log shadow, where
    the section bounds in x2 are exact lines; only unbounded directions are
    truncated.
    """
    from scipy import integrate

    v1 = 2 * alpha[0] + 2
    v2 = 2 * alpha[1] + 2
    (m11, m12), (m21, m22) = spec.matrix.rows()
    slope_hi = -m21 / m22

    if m12 < 0:
        slope_lo = m11 / (-m12)

        def lower(x1):
            return max(slope_lo * x1, -cutoff)

    else:
        # row one forces x1 < 0 only; truncate the x2 direction where the
        # integrand itself decays (v2 > 0 whenever this branch is reachable)
        if v2 <= 0:
            raise PreconditionViolated("integral diverges in the free x2 direction")
        depth = 45.0 / v2

        def lower(x1):
            return slope_hi * x1 - depth

    def upper(x1):
        return slope_hi * x1

    def integrand(x2, x1):
        return math.exp(v1 * x1 + v2 * x2)

    def lower_clamped(x1):
        lo = lower(x1)
        hi = upper(x1)
        return lo if lo < hi else hi

    value, _ = integrate.dblquad(
        integrand, -cutoff, 0.0, lower_clamped, upper, epsabs=1e-14, epsrel=1e-11
    )
    return value


def norm_by_quadrature(spec: DomainSpec, alpha: tuple[int, int], rel_tol: float = 1e-10) -> float:
    """Norm of the monomial (pi**2 units) by 2D adaptive quadrature.

    The truncation is doubled until two successive values agree to rel_tol,
    so the result is independent of the closed-form evaluation and suitable
    as a cross-check for it.
    """
    d1, d2 = integrability_pairings(spec, alpha)
    if d1 <= 0 or d2 <= 0:
        raise NotSquareIntegrable(f"exponents {alpha} give a divergent norm integral")
    cutoff = 20.0 + 40.0 * spec.det / min(d1, d2)
    previous = None
    for _ in range(12):
        value = 4.0 * _truncated_shadow_integral(spec, alpha, cutoff)
        if previous is not None and abs(value - previous) <= rel_tol * abs(value):
            return value
        previous = value
        cutoff *= 2.0
    raise NoConvergence(f"shadow quadrature did not stabilise for alpha={alpha}")


def norm_quadrature_levels(spec: DomainSpec, alpha: tuple[int, int], levels: int = 6) -> list[float]:
    """Truncated norm integrals at geometrically growing cutoffs.

    For a divergent monomial the values keep growing level over level, which
    is how the tests detect divergence without trusting the pairing sign
    criterion they are checking.
    """
    return [
        4.0 * _truncated_shadow_integral(spec, alpha, 5.0 * 2.0 ** level)
        for level in range(levels)
    ]


# ---------------------------------------------------------------------------
# series oracle


@lru_cache(maxsize=64)
def _lattice_weights(spec: DomainSpec, half_width: int):
    """Valid Laurent exponents in the centred box of the given half-width,
    with their norm reciprocal weights d1*d2 / (4*det)."""
    rng = np.arange(-half_width, half_width + 1, dtype=np.int64)
    e1, e2 = np.meshgrid(rng, rng, indexing="ij")
    v1 = 2 * e1 + 2
    v2 = 2 * e2 + 2
    adj = spec.adjugate
    d1 = v1 * adj.m11 + v2 * adj.m21
    d2 = v1 * adj.m12 + v2 * adj.m22
    keep = (d1 > 0) & (d2 > 0)
    weights = (d1[keep] * d2[keep]).astype(np.float64) / (4.0 * spec.det)
    return e1[keep], e2[keep], weights


def _power_array(t: complex, exponents) -> np.ndarray:
    t = complex(t)
    if t == 0:
        if np.any(exponents < 0):
            raise ZeroDivisionError("negative exponent at zero pairing")
        out = np.zeros(exponents.shape, dtype=np.complex128)
        out[exponents == 0] = 1.0
        return out
    return np.exp(exponents * cmath.log(t))


def _series_partial(spec: DomainSpec, t1: complex, t2: complex, half_width: int) -> complex:
    e1, e2, weights = _lattice_weights(spec, half_width)
    values = _power_array(t1, e1) * _power_array(t2, e2)
    return complex(np.sum(values * weights)) / PI_SQUARED


def series_kernel(
    spec: DomainSpec,
    z: tuple[complex, complex],
    w: tuple[complex, complex],
    tol: float = 1e-6,
    cap: int = SERIES_CAP,
) -> tuple[complex, int]:
    """Bergman kernel by summing the normalised monomial series.

    Every square integrable Laurent monomial contributes t1**a1 * t2**a2
    divided by its exact norm.  The truncation half-width doubles from
    SERIES_START until the partial sum moves by less than tol/10 relatively;
    returns (value, half-width used).
    """
    t1 = complex(z[0]) * complex(w[0]).conjugate()
    t2 = complex(z[1]) * complex(w[1]).conjugate()
    previous = None
    half_width = SERIES_START
    while half_width <= cap:
        value = _series_partial(spec, t1, t2, half_width)
        if previous is not None and abs(value - previous) <= (tol / 10.0) * abs(value):
            return value, half_width
        previous = value
        half_width *= 2
    raise NoConvergence(f"series did not stabilise within half-width cap {cap}")


# ---------------------------------------------------------------------------
# branch sum oracle


def _root_power(k: int, m: int) -> complex:
    """exp(2*pi*i*m/k) with the exponent reduced mod k (exactly 1 at m == 0)."""
    m %= k
    if m == 0:
        return complex(1.0)
    return cmath.exp(2j * math.pi * m / k)


def _check_model_params(k1: int, k2: int) -> None:
    if k1 < 1 or k2 < 0 or math.gcd(k1, k2) != 1:
        raise PreconditionViolated(
            f"need k1 >= 1 and k2 >= 0 with gcd(k1, k2) == 1, got k1={k1}, k2={k2}"
        )


def hartogs_kernel_by_branches(
    k1: int, k2: int, p: tuple[complex, complex], q: tuple[complex, complex]
) -> complex:
    """Kernel of the model domain |z1|**k1 < |z2|**k2, |z2| < 1 evaluated at
    (phi(p), q), where phi(p) = (p1 * p2**k2, p2**k1) covers the model domain
    from the bidisc with p2 nonzero.

    The transformation law for the proper map phi turns the bidisc kernel
    into a sum over the k1 inverse branches; no series and no numerator
    combinatorics are involved.  Fractional powers use principal branches,
    which is safe because the branch sum is invariant under the choice.
    """
    _check_model_params(k1, k2)
    p1, p2 = complex(p[0]), complex(p[1])
    q1, q2 = complex(q[0]), complex(q[1])
    if p2 == 0 or q2 == 0:
        raise PreconditionViolated("second coordinates must be nonzero")
    qc1 = q1.conjugate()
    qc2 = q2.conjugate()
    factor1 = p1 * qc1 * qc2 ** (-k2 / k1)
    factor2 = p2 * qc2 ** (1.0 / k1)
    total = 0j
    for j in range(k1):
        den1 = 1.0 - factor1 * _root_power(k1, j * k2)
        den2 = 1.0 - factor2 * _root_power(k1, -j)
        if min(abs(den1), abs(den2)) <= 1e-13:
            raise SingularEvaluation(f"branch {j} denominator vanishes")
        total += _root_power(k1, -j * (1 - k2)) / (den1 * den1 * den2 * den2)
    lead = qc2 ** ((1 - k1 - k2) / k1) / (PI_SQUARED * k1 ** 2 * p2 ** (k1 + k2 - 1))
    return lead * total


def transported_kernel(
    spec: DomainSpec,
    p: tuple[complex, complex],
    q: tuple[complex, complex],
    branch: int = 0,
) -> complex:
    """Kernel of the domain by transport from its model Hartogs domain.

    The unimodular transform from the Hermite decomposition induces a
    biholomorphism onto the model domain with parameters (reduced
    determinant, shift); the kernel pulls back through it with the monomial
    Jacobian factor.  All coordinates must be nonzero.  Any branch index
    gives the same value, which the tests exercise.
    """
    p1, p2 = complex(p[0]), complex(p[1])
    q1, q2 = complex(q[0]), complex(q[1])
    if 0 in (p1, p2, q1, q2):
        raise PreconditionViolated("transport needs nonzero coordinates")
    dec = spec.hermite
    k1 = dec.det
    k2 = dec.shift
    top1 = dec.transform.m11
    top2 = dec.transform.m12
    low1 = spec.reduced.m21
    low2 = spec.reduced.m11

    def to_model(x1: complex, x2: complex) -> tuple[complex, complex]:
        return (x1 ** top1 * x2 ** top2, x1 ** (-low1) * x2 ** low2)

    zv = to_model(p1, p2)
    wv = to_model(q1, q2)
    pre = (
        zv[0] * zv[1] ** (-k2 / k1) * _root_power(k1, -branch * k2),
        zv[1] ** (1.0 / k1) * _root_power(k1, branch),
    )
    model_value = hartogs_kernel_by_branches(k1, k2, pre, wv)
    jac1 = (p1 * q1.conjugate()) ** (top1 - low1 - 1)
    jac2 = (p2 * q2.conjugate()) ** (top2 + low2 - 1)
    return jac1 * jac2 * model_value


def branch_sum_symmetry_defect(k1: int, k2: int, a: complex, b: complex) -> float:
    """Relative defect of the rotation identity of the branch sum.

    The sum h(a, b) over the k1 roots of unity satisfies
    h(zeta**k2 * a, zeta**-1 * b) == zeta**(1 - k2) * h(a, b)  with
    zeta = exp(2*pi*i/k1); returns the relative deviation at (a, b).
    """
    _check_model_params(k1, k2)
    base = _branch_sum(k1, k2, a, b)
    twisted = _branch_sum(k1, k2, _root_power(k1, k2) * a, _root_power(k1, -1) * b)
    return abs(twisted - _root_power(k1, 1 - k2) * base) / abs(base)


def _branch_sum(k1: int, k2: int, a: complex, b: complex) -> complex:
    a = complex(a)
    b = complex(b)
    top_a = 1.0 - a ** k1
    top_b = 1.0 - b ** k1
    total = 0j
    for j in range(k1):
        ra = top_a / (1.0 - a * _root_power(k1, j * k2))
        rb = top_b / (1.0 - b * _root_power(k1, -j))
        total += ra * ra * rb * rb * _root_power(k1, -j * (1 - k2))
    return total


# ---------------------------------------------------------------------------
# sampling and verification


def sample_points(
    spec: DomainSpec, count: int, seed: int
) -> list[tuple[tuple[complex, complex], tuple[complex, complex]]]:
    """Deterministic interior point pairs for verification.

    Moduli are drawn uniformly in (0.05, 0.95) with uniform angles; a draw is
    accepted when both defining monomials stay below 0.9 (margin against the
    boundary) and both moduli stay at least 0.05 (margin against the axes).
    """
    rng = random.Random(seed)
    rejections = 0
    pairs = []
    points: list[tuple[complex, complex]] = []
    while len(pairs) < count:
        r1 = rng.uniform(0.05, 0.95)
        r2 = rng.uniform(0.05, 0.95)
        th1 = rng.uniform(0.0, 2.0 * math.pi)
        th2 = rng.uniform(0.0, 2.0 * math.pi)
        ok = min(r1, r2) >= 0.05
        for p, q in spec.matrix.rows():
            ok = ok and r1 ** p * r2 ** q < 0.9
        if not ok:
            rejections += 1
            if rejections > MAX_SAMPLE_REJECTIONS:
                raise SamplingExhausted(
                    f"no interior samples with margins for {spec.matrix} after {rejections} draws"
                )
            continue
        points.append((r1 * cmath.exp(1j * th1), r2 * cmath.exp(1j * th2)))
        if len(points) == 2:
            pairs.append((points[0], points[1]))
            points = []
    return pairs


@dataclass(frozen=True)
class PointCheck:
    z: tuple[complex, complex]
    w: tuple[complex, complex]
    closed: complex
    oracle: complex | None
    rel_err: float | None
    truncation: int | None


@dataclass(frozen=True)
class VerificationReport:
    matrix: IntMatrix2
    oracle_kind: str
    tol: float
    seed: int
    points: tuple[PointCheck, ...]
    max_rel_err: float
    truncation_used: int | None
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "matrix": [list(r) for r in self.matrix.rows()],
            "oracle": self.oracle_kind,
            "tol": self.tol,
            "seed": self.seed,
            "points": [
                {
                    "z": [[pt.z[0].real, pt.z[0].imag], [pt.z[1].real, pt.z[1].imag]],
                    "w": [[pt.w[0].real, pt.w[0].imag], [pt.w[1].real, pt.w[1].imag]],
                    "closed": [pt.closed.real, pt.closed.imag],
                    "oracle": None if pt.oracle is None else [pt.oracle.real, pt.oracle.imag],
                    "rel_err": pt.rel_err,
                }
                for pt in self.points
            ],
            "max_rel_err": self.max_rel_err if math.isfinite(self.max_rel_err) else None,
            "passed": self.passed,
        }


DEFAULT_TOLS = {"series": 1e-6, "bell": 1e-9}


def verify(
    spec: DomainSpec,
    oracle_kind: str,
    n_points: int = 20,
    tol: float | None = None,
    seed: int = 0,
    trunc_cap: int = SERIES_CAP,
) -> VerificationReport:
    """Compare the closed form against one oracle at sampled interior pairs.

    oracle_kind is "series" or "bell".  A point where the series fails to
    stabilise is recorded with a null oracle value and fails the report.
    """
    if oracle_kind not in DEFAULT_TOLS:
        raise PreconditionViolated(f"unknown oracle kind {oracle_kind!r}")
    if tol is None:
        tol = DEFAULT_TOLS[oracle_kind]
    formula = general_kernel(spec.matrix)
    checks = []
    max_rel = 0.0
    truncation_used = None
    all_converged = True
    for z, w in sample_points(spec, n_points, seed):
        closed = eval_kernel(formula, z, w)
        truncation = None
        try:
            if oracle_kind == "series":
                reference, truncation = series_kernel(spec, z, w, tol=tol, cap=trunc_cap)
                truncation_used = max(truncation_used or 0, truncation)
            else:
                reference = transported_kernel(spec, z, w)
        except NoConvergence:
            checks.append(PointCheck(z, w, closed, None, None, None))
            all_converged = False
            continue
        denom = abs(reference) if reference != 0 else 1.0
        rel = abs(closed - reference) / denom
        max_rel = max(max_rel, rel)
        checks.append(PointCheck(z, w, closed, reference, rel, truncation))
    if not all_converged:
        max_rel = math.inf
    return VerificationReport(
        matrix=spec.matrix,
        oracle_kind=oracle_kind,
        tol=tol,
        seed=seed,
        points=tuple(checks),
        max_rel_err=max_rel,
        truncation_used=truncation_used if oracle_kind == "series" else None,
        passed=all_converged and max_rel <= tol,
    )


# ---------------------------------------------------------------------------
# shadow geometry


def shadow_boundary_samples(
    matrix: IntMatrix2, samples: int = 400
) -> list[tuple[float, float, int]]:
    """Points on the two defining curves inside the unit square of moduli.

    Each defining monomial equals 1 along its curve; rows are returned as
    (r1, r2, constraint) with constraint 1 or 2 for the matrix row.
    """
    m = check_bounded(matrix)
    out = []
    for index, (p, q) in enumerate(m.rows(), start=1):
        if q != 0:
            exponent = -p / q
            for r1 in np.linspace(0.0, 1.0, samples):
                r2 = float(r1) ** exponent
                if r2 <= 1.0:
                    out.append((float(r1), float(r2), index))
        else:
            # the curve r1**p == 1 is the vertical segment r1 == 1
            for r2 in np.linspace(0.0, 1.0, samples):
                out.append((1.0, float(r2), index))
    return out
