"""Point counts, closed points, and Frobenius orbit structure.

Counts over extension fields come from the exact integer determinant
N_n = det(F^n - I) (positive because the eigenvalues pair off the unit
circle), closed-point counts by Mobius inversion of the divisor-sum identity
sum_{d|n} d a_d = N_n, and the group of points of degree dividing n from the
Smith normal form of F^n - I. Orbit counts of primitive period nu coincide
with a_nu; that identity is asserted on every access, not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    CorrespondenceFailure,
    CrossCheckFailure,
    InsufficientCountRange,
    NonIntegralInversion,
)
from .intlinalg import identity, mat_mul, mat_sub, det_bareiss, smith_normal_form
from .weil import FrobeniusModel


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius undefined for n < 1")
    count = 0
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            count += 1
        p += 1
    if m > 1:
        count += 1
    return -1 if count % 2 else 1


@dataclass(frozen=True)
class CountTable:
    q: int
    g: int
    n_max: int
    counts: tuple[int, ...]  # N_1 .. N_{n_max}
    closed_points: tuple[int, ...]  # a_1 .. a_{n_max}

    def count(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise InsufficientCountRange(
                "N_%d requested but table covers 1..%d" % (n, self.n_max)
            )
        return self.counts[n - 1]


@dataclass(frozen=True)
class FixedPointGroup:
    n: int
    order: int
    divisors: tuple[int, ...]  # SNF diagonal d_1 | d_2 | ... , all positive


@dataclass(frozen=True)
class OrbitTable:
    q: int
    n_max: int
    counts: tuple[int, ...]  # orbits of primitive period nu = 1 ..
    lengths: tuple[float, ...]  # nu * log q


def point_count(model: FrobeniusModel, n: int) -> int:
    """N_n = det(F^n - I), exact; positivity asserted."""
    if n < 1:
        raise ValueError("n must be >= 1")
    f = [list(row) for row in model.matrix]
    size = len(f)
    fn = f
    for _ in range(n - 1):
        fn = mat_mul(fn, f)
    det = det_bareiss(mat_sub(fn, identity(size)))
    if det <= 0:
        raise CrossCheckFailure("det(F^%d - I) = %d is not positive" % (n, det))
    return det


def build_count_table(model: FrobeniusModel, n_max: int) -> CountTable:
    """N_n and a_d for 1 <= n <= n_max with exact cross-checks.

    The float route prod(mu^n - 1) from the polished roots must agree with
    each exact N_n to 1e-6 relative for n <= 20; the divisor-sum identity
    sum_{d|n} d a_d = N_n is re-verified exactly after the inversion.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    f = [list(row) for row in model.matrix]
    size = len(f)
    counts: list[int] = []
    fn = identity(size)
    for n in range(1, n_max + 1):
        fn = mat_mul(fn, f)
        det = det_bareiss(mat_sub(fn, identity(size)))
        if det <= 0:
            raise CrossCheckFailure("det(F^%d - I) = %d is not positive" % (n, det))
        if n <= 20:
            approx = complex(1.0)
            for mu in model.roots:
                approx *= mu**n - 1
            if abs(approx - det) > 1e-6 * det:
                raise CrossCheckFailure(
                    "N_%d float route %s vs exact %d" % (n, approx, det)
                )
        counts.append(det)

    closed: list[int] = []
    for d in range(1, n_max + 1):
        total = sum(mobius(d // e) * counts[e - 1] for e in range(1, d + 1) if d % e == 0)
        if total % d:
            raise NonIntegralInversion(
                "Mobius inversion at d = %d gave %d, not divisible by %d"
                % (d, total, d)
            )
        a = total // d
        if a < 0:
            raise NonIntegralInversion("a_%d = %d is negative" % (d, a))
        closed.append(a)

    for n in range(1, n_max + 1):
        check = sum(d * closed[d - 1] for d in range(1, n + 1) if n % d == 0)
        if check != counts[n - 1]:
            raise CrossCheckFailure(
                "divisor-sum identity fails at n = %d: %d vs N_n = %d"
                % (n, check, counts[n - 1])
            )

    return CountTable(
        q=model.datum.q,
        g=model.datum.g,
        n_max=n_max,
        counts=tuple(counts),
        closed_points=tuple(closed),
    )


def closed_point_count(table: CountTable, d: int) -> int:
    """a_d: closed points of degree d (orbits of size d on geometric points)."""
    if not 1 <= d <= table.n_max:
        raise InsufficientCountRange(
            "a_%d requested but table covers 1..%d" % (d, table.n_max)
        )
    return table.closed_points[d - 1]


def fixed_point_group(model: FrobeniusModel, n: int) -> FixedPointGroup:
    """Structure of the fixed points of F^n: SNF divisors of F^n - I.

    The group is a direct sum of Z/d_i with d_1 | d_2 | ...; its order is
    asserted equal to the determinant count N_n.
    """
    f = [list(row) for row in model.matrix]
    size = len(f)
    fn = f
    for _ in range(n - 1):
        fn = mat_mul(fn, f)
    mat = mat_sub(fn, identity(size))
    divisors = smith_normal_form(mat)
    if any(d == 0 for d in divisors):
        raise CrossCheckFailure("F^%d - I is singular" % n)
    order = math.prod(divisors)
    expected = abs(det_bareiss(mat))
    if order != expected:
        raise CrossCheckFailure(
            "SNF order %d differs from |det| = %d at n = %d" % (order, expected, n)
        )
    return FixedPointGroup(n=n, order=order, divisors=tuple(divisors))


def primitive_orbit_count(table: CountTable, nu: int) -> int:
    """Orbits of primitive period nu under F on geometric points.

    Computed by Mobius inversion over points of period dividing nu; must
    equal the closed-point count a_nu (degree-nu points of the scheme are
    exactly the length-nu orbits). Inequality is an implementation bug, so
    it raises instead of warning.
    """
    if not 1 <= nu <= table.n_max:
        raise InsufficientCountRange(
            "orbit count for nu = %d but table covers 1..%d" % (nu, table.n_max)
        )
    total = sum(
        mobius(nu // d) * table.counts[d - 1]
        for d in range(1, nu + 1)
        if nu % d == 0
    )
    if total % nu:
        raise NonIntegralInversion(
            "orbit inversion at nu = %d gave %d, not divisible" % (nu, total)
        )
    b = total // nu
    if b != table.closed_points[nu - 1]:
        raise CorrespondenceFailure(
            "b_%d = %d but a_%d = %d" % (nu, b, nu, table.closed_points[nu - 1])
        )
    return b


def orbit_table(table: CountTable) -> OrbitTable:
    """All primitive orbit counts in range, with lengths nu * log q."""
    logq = math.log(table.q)
    counts = tuple(primitive_orbit_count(table, nu) for nu in range(1, table.n_max + 1))
    lengths = tuple(nu * logq for nu in range(1, table.n_max + 1))
    return OrbitTable(q=table.q, n_max=table.n_max, counts=counts, lengths=lengths)
