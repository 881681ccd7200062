"""Periodic sl2 box-ball system: carrier evolution, action-angle variables,
theta-function states, fundamental periods and the isolevel-set torus
decomposition.

States are length-L words over {1,2} with a distinguished origin (rotations
are genuinely different states; T_1 is the cyclic right shift).  The carrier
for T_l is found by the two-pass construction: one pass of the vacant carrier
yields the periodic fixed point, a second pass with it produces the evolved
state and the energy.

Angle variables live on quasi-periodic extensions of riggings modulo the
slide group; with I = {i_1 < ... < i_g} and multiplicities m_i, a slide on
color k rotates that window by one and adds 2 min(i,k) everywhere, so the
orbit of a window tuple is parametrized by a rotation vector r and a lattice
shift F s (F the Bethe-type period matrix).  Canonical forms, class equality
and the inverse scattering search all come down to this parametrization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, comb, floor, gcd

from boxball.intmat import (
    det_int,
    divisors,
    in_lattice,
    lcm_of_fractions,
    moebius,
    reduce_mod_lattice,
)
from boxball.kkr import RiggedConfiguration, is_highest, kkr_phi, kkr_phi_inv
from boxball.theta import PeriodMatrix, theta


@dataclass(frozen=True)
class PeriodicState:
    """Cyclic word over {1,2} with a distinguished origin cell."""

    cells: tuple[int, ...]

    def __post_init__(self):
        if not self.cells:
            raise ValueError("empty state")
        if any(c not in (1, 2) for c in self.cells):
            raise ValueError("cells must be 1 or 2")
        if 2 * self.balls > len(self.cells):
            raise ValueError("more than L/2 balls; not a box-ball phase space point")

    @property
    def L(self) -> int:
        return len(self.cells)

    @property
    def balls(self) -> int:
        return sum(1 for c in self.cells if c == 2)

    @classmethod
    def parse(cls, text: str) -> "PeriodicState":
        return cls(tuple(1 if ch in "1." else 2 for ch in text))

    def render(self) -> str:
        return "".join("." if c == 1 else "2" for c in self.cells)

    def __str__(self):
        return self.render()

    def shifted(self, d: int) -> "PeriodicState":
        """T_1^d: rotate right by d cells."""
        d %= self.L
        return PeriodicState(self.cells[-d:] + self.cells[:-d]) if d else self

    def word(self) -> str:
        return "".join(str(c) for c in self.cells)


def evolve_periodic(p: PeriodicState, l: int | None = None) -> tuple[PeriodicState, int]:
    """T_l (l = None means l >= max amplitude, realized as l = ball count).

    Two carrier passes: the vacant carrier's exit load is the periodic fixed
    point; rerunning with it yields T_l(p) and the energy E_l (number of
    loading events).  The fixed point is guaranteed for M < L/2 and verified
    by assertion in all cases.
    """
    M = p.balls
    if M == 0:
        return p, 0
    l_eff = l if l is not None else M

    def carrier_pass(load: int) -> tuple[int, list[int], int]:
        out = []
        energy = 0
        c = load
        for b in p.cells:
            if b == 2:
                if c < l_eff:
                    c += 1
                    out.append(1)
                    energy += 1  # loading scores 1 - H = 1
                else:
                    out.append(2)
            else:
                if c > 0:
                    c -= 1
                    out.append(2)
                else:
                    out.append(1)
        return c, out, energy

    v, _, _ = carrier_pass(0)
    v2, out, energy = carrier_pass(v)
    assert v2 == v, "carrier fixed point failed to close up"
    return PeriodicState(tuple(out)), energy


@dataclass(frozen=True)
class ActionVariable:
    """Conserved partition of soliton amplitudes with its vacancy data."""

    L: int
    parts: tuple[int, ...]  # weakly decreasing

    def __post_init__(self):
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise ValueError("parts must be weakly decreasing")
        if 2 * sum(self.parts) > self.L:
            raise ValueError("|mu| must be at most L/2")

    @property
    def I(self) -> tuple[int, ...]:
        """Distinct part sizes, ascending."""
        return tuple(sorted(set(self.parts)))

    @property
    def g(self) -> int:
        return len(self.I)

    def m(self, i: int) -> int:
        return sum(1 for x in self.parts if x == i)

    def vacancy(self, j: int) -> int:
        return self.L - 2 * sum(min(j, i) for i in self.parts)

    def F(self) -> list[list[int]]:
        """Period matrix F_ij = delta_ij p_i + 2 min(i,j) m_j over I x I."""
        I = self.I
        return [
            [(self.vacancy(i) if i == j else 0) + 2 * min(i, j) * self.m(j) for j in I]
            for i in I
        ]

    def h(self, l: int | None) -> tuple[int, ...]:
        """Velocity vector of T_l: (min(i, l))_i, with l = None meaning infinity."""
        return tuple(min(i, l) if l is not None else i for i in self.I)


def action_variable(p: PeriodicState) -> ActionVariable:
    """Conserved soliton-amplitude partition, via any highest cyclic rotation."""
    d, p_plus = _some_highest_rotation(p)
    rc = kkr_phi(p_plus.word(), rank=1)
    return ActionVariable(p.L, rc.mu(1))


def _some_highest_rotation(p: PeriodicState) -> tuple[int, PeriodicState]:
    """(d, p_+) with p = T_1^d(p_+) and p_+ highest; smallest such d >= 0."""
    for d in range(p.L):
        cand = p.shifted(-d)
        if is_highest(cand.cells, 1):
            return d, cand
    raise ValueError("no highest rotation exists (more balls than boxes?)")


def all_highest_rotations(p: PeriodicState):
    for d in range(p.L):
        cand = p.shifted(-d)
        if is_highest(cand.cells, 1):
            yield d, cand


@dataclass(frozen=True)
class AngleVariable:
    """One window of the quasi-periodic extended rigging, per part size.

    windows[i] is the weakly increasing tuple (J_{i,1}, ..., J_{i,m_i}); the
    extension J_{i,a+m_i} = J_{i,a} + p_i is implicit.  Instances compare by
    their stored windows; class (mod slides) equality goes through
    canonicalize().
    """

    mu: ActionVariable
    windows: tuple[tuple[int, ...], ...]  # aligned with mu.I

    def __post_init__(self):
        I = self.mu.I
        if len(self.windows) != len(I):
            raise ValueError("need one window per distinct part size")
        for i, w in zip(I, self.windows):
            if len(w) != self.mu.m(i):
                raise ValueError(f"window for size {i} must have m_{i} entries")
            if list(w) != sorted(w):
                raise ValueError("windows must be weakly increasing")
            p = self.mu.vacancy(i)
            if any(w[a + 1] - w[a] > p for a in range(len(w) - 1)):
                # within one quasi-period the spread cannot exceed p_i
                raise ValueError("window spread exceeds the quasi-period")

    def window(self, i: int) -> tuple[int, ...]:
        return self.windows[self.mu.I.index(i)]

    def uniform_shift(self, d: int) -> "AngleVariable":
        return AngleVariable(self.mu, tuple(tuple(x + d for x in w) for w in self.windows))


def _rotated_window(w: tuple[int, ...], p: int, r: int) -> tuple[int, ...]:
    """Slide the window start forward by r within the extended sequence."""
    m = len(w)
    r %= m
    return tuple(list(w[r:]) + [x + p for x in w[:r]]) if r else w


def _orbit_candidates(J: AngleVariable):
    """All window-aligned representatives of the slide orbit of J.

    sigma^n acts on color i by rotating its window n_i steps and adding
    2 sum_k min(i, i_k) n_k; splitting n_i = r_i + m_i s_i this is
    rotation by r plus the additive vector 2 M r + F s with M = (min(i,k)).
    """
    mu = J.mu
    I = mu.I
    g = len(I)
    F_cols = [[mu.F()[i][j] for i in range(g)] for j in range(g)]
    for r in product(*(range(mu.m(i)) for i in I)):
        Mr = [2 * sum(min(I[i], I[k]) * r[k] for k in range(g)) for i in range(g)]
        rotated = [
            tuple(x + Mr[i] for x in _rotated_window(J.windows[i], mu.vacancy(I[i]), r[i]))
            for i in range(g)
        ]
        yield r, rotated, F_cols


def canonicalize(J: AngleVariable) -> AngleVariable:
    """Unique representative of the slide-group class of J.

    For each window rotation the additive freedom is exactly the F-lattice;
    the base vector is reduced to its canonical residue, and the smallest
    resulting window tuple is taken.
    """
    best = None
    for _, rotated, F_cols in _orbit_candidates(J):
        base = [w[0] for w in rotated]
        residue = reduce_mod_lattice(base, F_cols)
        adjusted = tuple(
            tuple(x - (b - rr) for x in w) for w, b, rr in zip(rotated, base, residue)
        )
        if best is None or adjusted < best:
            best = adjusted
    return AngleVariable(J.mu, best)


def angle_equal(A: AngleVariable, B: AngleVariable) -> bool:
    """Equality of slide-group classes."""
    if A.mu != B.mu:
        return False
    return canonicalize(A) == canonicalize(B)


def direct_scattering(p: PeriodicState) -> AngleVariable:
    """Phi: angle variable of p, canonical; independent of the rotation used."""
    d, p_plus = _some_highest_rotation(p)
    rc = kkr_phi(p_plus.word(), rank=1)
    mu = ActionVariable(p.L, rc.mu(1))
    windows = []
    for i in mu.I:
        riggings = sorted(r for j, r in rc.color(1) if j == i)
        windows.append(tuple(r + d for r in riggings))
    return canonicalize(AngleVariable(mu, tuple(windows)))


def evolve_angle(J: AngleVariable, l: int | None, steps: int = 1) -> AngleVariable:
    """T_l^steps on angle variables: add steps*min(i,l) to every window entry."""
    h = J.mu.h(l)
    return AngleVariable(
        J.mu,
        tuple(tuple(x + steps * h[k] for x in w) for k, w in enumerate(J.windows)),
    )


def inverse_scattering(J: AngleVariable) -> PeriodicState:
    """Phi^{-1}: the unique state with angle variable J.

    Searches the slide orbit for a representative of the form (rigged
    configuration) + e with e in 0..L-1, then applies the KKR inverse and
    shifts.  Existence and uniqueness hold on the image of Phi.
    """
    mu = J.mu
    L = mu.L
    I = mu.I
    g = len(I)
    vac = [mu.vacancy(i) for i in I]
    for r, rotated, F_cols in _orbit_candidates(J):
        spans = [w[-1] - w[0] for w in rotated]
        if any(spans[i] > vac[i] for i in range(g)):
            continue
        bases = [w[0] for w in rotated]
        for e in range(L):
            # need integer s with 0 <= bases + (F s) - e and window top <= vacancy
            target_lo = [e - bases[i] for i in range(g)]
            target_hi = [e - bases[i] + vac[i] - spans[i] for i in range(g)]
            for s in _lattice_points_in_box(F_cols, target_lo, target_hi):
                adj = [bases[i] + sum(F_cols[k][i] * s[k] for k in range(g)) - e for i in range(g)]
                windows = tuple(
                    tuple(x - bases[i] + adj[i] for x in rotated[i]) for i in range(g)
                )
                rc = RiggedConfiguration.make(L, 1, [
                    [(i, x) for i, w in zip(I, windows) for x in w]
                ])
                if not rc.is_valid():
                    continue
                word = kkr_phi_inv(rc)
                return PeriodicState.parse(word).shifted(e)
    raise ValueError("no rigged-configuration representative found; invalid angle data")


def _lattice_points_in_box(F_cols, lo, hi):
    """Integer s with lo <= (F s)_i <= hi componentwise (F positive definite)."""
    g = len(lo)
    if any(l > h for l, h in zip(lo, hi)):
        return
    # bound s by solving F s = corner over the rationals for all corners
    corners = []
    for corner in product(*zip(lo, hi)):
        corners.append(_solve_int_matrix(F_cols, corner))
    los = [min(c[i] for c in corners) for i in range(g)]
    his = [max(c[i] for c in corners) for i in range(g)]
    ranges = [range(ceil(a) - 1, floor(b) + 2) for a, b in zip(los, his)]
    for s in product(*ranges):
        img = [sum(F_cols[k][i] * s[k] for k in range(g)) for i in range(g)]
        if all(lo[i] <= img[i] <= hi[i] for i in range(g)):
            yield s


def _solve_int_matrix(F_cols, b):
    """Solve F s = b over the rationals (F given by columns)."""
    g = len(b)
    a = [[Fraction(F_cols[j][i]) for j in range(g)] + [Fraction(b[i])] for i in range(g)]
    for k in range(g):
        piv = next(i for i in range(k, g) if a[i][k] != 0)
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(g):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [a[i][g] for i in range(g)]


def theta_state(Jvec, mu: ActionVariable, L: int | None = None) -> PeriodicState:
    """State from the tropical theta formula (multiplicity-free mu only).

    b_k is a difference of four thetas with period matrix F, argument
    J - p/2 - k h_1 (+ h_inf); invariant under J -> J + F Z^g.
    """
    if any(mu.m(i) != 1 for i in mu.I):
        raise ValueError("theta formula requires all multiplicities 1")
    L = mu.L if L is None else L
    g = mu.g
    Xi = PeriodMatrix.from_rows([[Fraction(x) for x in row] for row in mu.F()])
    pvec = [Fraction(mu.vacancy(i)) for i in mu.I]
    h1 = [Fraction(x) for x in mu.h(1)]
    hinf = [Fraction(x) for x in mu.h(None)]
    Jv = [Fraction(x) for x in Jvec]

    def th(k: int, plus_inf: bool) -> Fraction:
        Z = [
            Jv[i] - pvec[i] / 2 - k * h1[i] + (hinf[i] if plus_inf else 0)
            for i in range(g)
        ]
        return theta(Z, Xi)

    cells = []
    for k in range(1, L + 1):
        b = 1 - th(k, False) + th(k - 1, False) + th(k, True) - th(k - 1, True)
        if b not in (1, 2):
            raise ValueError(f"theta formula produced letter {b} at cell {k}")
        cells.append(int(b))
    return PeriodicState(tuple(cells))


def internal_symmetry(p: PeriodicState) -> tuple[int, ...]:
    """Per part size i: the largest divisor gamma of gcd(m_i, p_i) with
    J_{i, a + m_i/gamma} = J_{i, a} + p_i/gamma on the extended rigging."""
    d, p_plus = _some_highest_rotation(p)
    rc = kkr_phi(p_plus.word(), rank=1)
    mu = ActionVariable(p.L, rc.mu(1))
    out = []
    for i in mu.I:
        w = sorted(r for j, r in rc.color(1) if j == i)
        m = len(w)
        pi = mu.vacancy(i)
        gam = 1
        for cand in sorted(divisors(gcd(m, pi) if pi else m), reverse=True):
            step = m // cand
            inc = pi // cand
            ext = lambda a: w[a % m] + (a // m) * pi
            if all(ext(a + step) == ext(a) + inc for a in range(m)):
                gam = cand
                break
        out.append(gam)
    return tuple(out)


def fundamental_period(p: PeriodicState, l: int | None) -> int:
    """Smallest N with T_l^N(p) = p, from determinant ratios of F."""
    mu = action_variable(p)
    gamma = internal_symmetry(p)
    F = mu.F()
    g = mu.g
    h = list(mu.h(l))
    detF = det_int(F)
    ratios = []
    for j in range(g):
        Fj = [row[:] for row in F]
        for i in range(g):
            Fj[i][j] = h[i]
        dj = det_int(Fj)
        if dj == 0:
            continue
        ratios.append(Fraction(detF, gamma[j] * dj))
    assert ratios, "velocity vector cannot be trivial"
    return lcm_of_fractions(ratios)


def isolevel_cardinality(mu: ActionVariable) -> int:
    """|P_L(mu)| by the determinant form; the product form is asserted equal."""
    I = mu.I
    detF = det_int(mu.F())
    a = detF
    for i in I:
        m, pi = mu.m(i), mu.vacancy(i)
        term = Fraction(comb(pi + m - 1, m - 1), m)
        a = Fraction(a) * term
    # second closed form: L/p_{i_g} prod binom(p_i + m_i - 1, m_i), regularized
    # through binom(p+m, m)/(p+m) for the largest size so p_{i_g} = 0 is allowed
    ig = I[-1]
    m_g, p_g = mu.m(ig), mu.vacancy(ig)
    b = Fraction(mu.L) * Fraction(comb(p_g + m_g, m_g), p_g + m_g)
    for i in I[:-1]:
        b *= comb(mu.vacancy(i) + mu.m(i) - 1, mu.m(i))
    assert a == b, "the two closed forms disagree"
    assert a.denominator == 1
    return int(a)


def _C_gamma(m: int, p: int, gamma: int) -> int:
    """Moebius-counted window classes with exact symmetry gamma."""
    total = 0
    common = [b for b in divisors(gcd(m, p) if p else m) if b % gamma == 0]
    for beta in common:
        total += moebius(beta // gamma) * comb((p + m) // beta - 1, m // beta - 1)
    return total


def torus_decomposition(mu: ActionVariable) -> list[tuple[tuple[int, ...], int, list[list[int]]]]:
    """[(gamma, multiplicity, F_gamma)] over all internal symmetries.

    F_gamma divides the columns of F by gamma; the multiplicities satisfy
    sum mult(gamma) det F_gamma = |P_L(mu)| (asserted).
    """
    I = mu.I
    F = mu.F()
    out = []
    gamma_ranges = [
        divisors(gcd(mu.m(i), mu.vacancy(i)) if mu.vacancy(i) else mu.m(i)) for i in I
    ]
    total = 0
    for gamma in product(*gamma_ranges):
        mult = Fraction(1)
        for k, i in enumerate(I):
            mult *= Fraction(gamma[k] * _C_gamma(mu.m(i), mu.vacancy(i), gamma[k]), mu.m(i))
        assert mult.denominator == 1
        mult = int(mult)
        if mult == 0:
            continue
        Fg = [[F[i][j] // gamma[j] for j in range(len(I))] for i in range(len(I))]
        assert all(F[i][j] % gamma[j] == 0 for i in range(len(I)) for j in range(len(I)))
        out.append((gamma, mult, Fg))
        total += mult * det_int(Fg)
    assert total == isolevel_cardinality(mu), "multiplicities do not add up"
    return out


def enumerate_isolevel(mu: ActionVariable) -> list[PeriodicState]:
    """All states with the given action variable (brute force, L <= 20)."""
    L = mu.L
    if L > 20:
        raise ValueError("enumeration capped at L = 20")
    M = sum(mu.parts)
    out = []
    for balls in combinations(range(L), M):
        cells = [1] * L
        for b in balls:
            cells[b] = 2
        p = PeriodicState(tuple(cells))
        if action_variable(p).parts == mu.parts:
            out.append(p)
    return out
