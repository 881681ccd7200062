"""Tropical Riemann theta function: exact lattice minimization of a
quadratic-plus-linear form.

Theta(Z; Xi) = min over integer n of n.(Xi n/2 + Z) for a symmetric positive
definite Xi.  The minimum is found by scanning sup-norm shells outward; the
scan stops once a rational lower bound on the smallest eigenvalue proves that
no further shell can beat the incumbent.  All arithmetic is exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from boxball.intmat import det_fraction


@dataclass(frozen=True)
class PeriodMatrix:
    """Symmetric positive definite rational matrix defining a tropical torus."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = len(self.rows)
        if any(len(r) != g for r in self.rows):
            raise ValueError("matrix must be square")
        if any(self.rows[i][j] != self.rows[j][i] for i in range(g) for j in range(g)):
            raise ValueError("matrix must be symmetric")
        for k in range(1, g + 1):
            minor = [[Fraction(self.rows[i][j]) for j in range(k)] for i in range(k)]
            if det_fraction(minor) <= 0:
                raise ValueError("matrix must be positive definite")

    @property
    def g(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, rows) -> "PeriodMatrix":
        return cls(tuple(tuple(Fraction(x) for x in r) for r in rows))

    def mul(self, v: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        return tuple(sum(r[j] * v[j] for j in range(self.g)) for r in self.rows)

    def eigen_lower_bound(self) -> Fraction:
        """Positive rational lower bound on the smallest eigenvalue.

        max(Gershgorin bound, det/trace^{g-1}); the latter is always positive
        for a positive definite matrix.
        """
        g = self.g
        if g == 1:
            return Fraction(self.rows[0][0])
        gersh = min(
            self.rows[i][i] - sum(abs(self.rows[i][j]) for j in range(g) if j != i)
            for i in range(g)
        )
        trace = sum(self.rows[i][i] for i in range(g))
        dt = det_fraction([[Fraction(x) for x in r] for r in self.rows])
        bound = dt / trace ** (g - 1)
        return max(gersh, bound) if gersh > 0 else bound


def _objective(n, Xi_rows, Z):
    # n.(Xi n / 2 + Z), assembled as (n.Xi n + 2 n.Z)/2
    quad = sum(n[i] * sum(Xi_rows[i][j] * n[j] for j in range(len(n))) for i in range(len(n)))
    lin = sum(ni * zi for ni, zi in zip(n, Z))
    return Fraction(quad, 2) + lin


def _solve(Xi_rows, b):
    """Exact solution of Xi x = b (Xi nonsingular) by Gaussian elimination."""
    g = len(b)
    a = [[Fraction(Xi_rows[i][j]) for j in range(g)] + [Fraction(b[i])] for i in range(g)]
    for k in range(g):
        piv = next(i for i in range(k, g) if a[i][k] != 0)
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(g):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return tuple(a[i][g] for i in range(g))


def theta_argmin(Z, Xi: PeriodMatrix) -> tuple[Fraction, tuple[int, ...]]:
    """Tropical theta with a minimizer.

    The search is recentered at the rounded real minimizer n0 of the
    quadratic, which leaves a residual argument of bounded size; sup-norm
    shells around n0 are then scanned until the eigenvalue lower bound proves
    no further shell can beat the incumbent.
    """
    Z = tuple(Fraction(z) for z in Z)
    g = Xi.g
    n0 = tuple(
        int((x.numerator * 2 + x.denominator) // (2 * x.denominator))
        for x in _solve(Xi.rows, tuple(-z for z in Z))
    )
    base = _objective(n0, Xi.rows, Z)
    Xin0 = Xi.mul(tuple(Fraction(c) for c in n0))
    Zp = tuple(z + w for z, w in zip(Z, Xin0))  # residual, bounded by Xi alone
    lam = Xi.eigen_lower_bound()
    z1 = sum(abs(z) for z in Zp)
    # theta(Z) = base + min_m (m.(Xi m/2 + Zp)); incumbent m = 0
    best = Fraction(0)
    best_m = (0,) * g
    r = 1
    while True:
        # any m on shell r has objective >= lam r^2/2 - z1 r, increasing past the vertex
        if r * lam >= z1 and lam * r * r / 2 - z1 * r > best:
            break
        for m in _shell(g, r):
            v = _objective(m, Xi.rows, Zp)
            if v < best:
                best, best_m = v, m
        r += 1
    value = base + best
    n_star = tuple(a + b for a, b in zip(n0, best_m))
    assert value <= 0, "minimum must not exceed the n=0 value"
    return value, n_star


def _shell(g, r):
    """Integer points with sup-norm exactly r."""
    for n in itertools.product(range(-r, r + 1), repeat=g):
        if max(abs(c) for c in n) == r:
            yield n


_cache: dict = {}


def theta(Z, Xi: PeriodMatrix) -> Fraction:
    """Tropical Riemann theta Theta(Z; Xi), exactly (memoized)."""
    key = (tuple(Fraction(z) for z in Z), Xi.rows)
    hit = _cache.get(key)
    if hit is None:
        if len(_cache) > 200_000:
            _cache.clear()
        hit = _cache[key] = theta_argmin(Z, Xi)[0]
    return hit


def check_quasi_periodicity(
    Xi: PeriodMatrix, trials: int = 20, rng: random.Random | None = None
) -> bool:
    """Randomized check of Theta(Z + Xi m) = -m.(Xi m/2 + Z) + Theta(Z)."""
    rng = rng or random.Random(0)
    g = Xi.g
    for _ in range(trials):
        Z = tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 4)) for _ in range(g))
        m = tuple(rng.randint(-3, 3) for _ in range(g))
        Xim = Xi.mul(tuple(Fraction(x) for x in m))
        lhs = theta(tuple(z + w for z, w in zip(Z, Xim)), Xi)
        rhs = -_objective(m, Xi.rows, Z) + theta(Z, Xi)
        if lhs != rhs:
            return False
    return True
