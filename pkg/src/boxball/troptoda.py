"""Tropical periodic Toda lattice: evolution, conserved tropical polynomials,
spectral data, theta-function solution and the periodic box-ball embedding.

States are cyclic vectors (Q_j, W_j) of exact rationals with sum(Q) < sum(W).
Integer states stay integer under evolution (checked where relied on).  The
intermediate conserved quantities H_k interpolate the displayed H_1, H_2, H_N
as minima over k-element subsets avoiding the pairs {W_j, Q_j} and
{W_j, Q_{j+1}} (cyclically); invariance is enforced in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from boxball.theta import PeriodMatrix, theta


@dataclass(frozen=True)
class TodaState:
    Q: tuple[Fraction, ...]
    W: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.Q) != len(self.W) or not self.Q:
            raise ValueError("Q and W must have equal positive length")
        if sum(self.Q) >= sum(self.W):
            raise ValueError("phase space requires sum(Q) < sum(W)")

    @property
    def N(self) -> int:
        return len(self.Q)

    @classmethod
    def make(cls, Q, W) -> "TodaState":
        return cls(tuple(Fraction(q) for q in Q), tuple(Fraction(w) for w in W))

    @classmethod
    def from_flat(cls, flat) -> "TodaState":
        """(Q_1, W_1, Q_2, W_2, ...) -> state."""
        if len(flat) % 2:
            raise ValueError("flat vector must have even length")
        return cls.make(flat[0::2], flat[1::2])

    def flat(self) -> tuple[Fraction, ...]:
        out = []
        for q, w in zip(self.Q, self.W):
            out.extend((q, w))
        return tuple(out)


def evolve_toda(s: TodaState) -> TodaState:
    """One time step: Q'_j = min(W_j, Q_j - X_j), W'_j = Q_{j+1} + W_j - Q'_j,
    with X_j the minimum of the partial sums of W - Q read backwards from j."""
    N = s.N
    Qn, Wn = [], []
    for j in range(N):
        acc = Fraction(0)
        X = Fraction(0)
        for k in range(1, N):
            acc += s.W[(j - k) % N] - s.Q[(j - k) % N]
            if acc < X:
                X = acc
        Qn.append(min(s.W[j], s.Q[j] - X))
    for j in range(N):
        Wn.append(s.Q[(j + 1) % N] + s.W[j] - Qn[j])
    return TodaState(tuple(Qn), tuple(Wn))


def _allowed(N: int, subset) -> bool:
    chosen_q = {i for kind, i in subset if kind == 0}
    for kind, j in subset:
        if kind == 1 and (j in chosen_q or (j + 1) % N in chosen_q):
            return False
    return True


def conserved(s: TodaState, k: int) -> Fraction:
    """Conserved quantity H_k, 1 <= k <= N+1.

    H_k for k <= N is the minimum of sum over k-element subsets of
    {Q_1..Q_N, W_1..W_N} containing no pair {W_j, Q_j} or {W_j, Q_{j+1}};
    H_{N+1} = sum(Q) + sum(W).
    """
    N = s.N
    if not 1 <= k <= N + 1:
        raise ValueError("k out of range")
    if k == N + 1:
        return sum(s.Q) + sum(s.W)
    items = [(0, i) for i in range(N)] + [(1, i) for i in range(N)]

    def val(it):
        kind, i = it
        return s.Q[i] if kind == 0 else s.W[i]

    best = None
    for subset in combinations(items, k):
        if not _allowed(N, subset):
            continue
        v = sum(val(it) for it in subset)
        if best is None or v < best:
            best = v
    assert best is not None
    return best


def conserved_all(s: TodaState) -> tuple[Fraction, ...]:
    """C = (H_1, ..., H_{N+1})."""
    return tuple(conserved(s, k) for k in range(1, s.N + 2))


def shift_s(s: TodaState) -> TodaState:
    """Cyclic pair rotation (Q_1,W_1,...) -> (Q_2,W_2,...,Q_1,W_1); s^N = id."""
    return TodaState(s.Q[1:] + s.Q[:1], s.W[1:] + s.W[:1])


def s_equivalent(a: TodaState, b: TodaState) -> bool:
    """True iff b is a power of the pair-rotation applied to a."""
    if a.N != b.N:
        return False
    cur = a
    for _ in range(a.N):
        if cur == b:
            return True
        cur = shift_s(cur)
    return False


@dataclass(frozen=True)
class SpectralData:
    C: tuple[Fraction, ...]
    L: Fraction
    lam: tuple[Fraction, ...]  # lambda_0 = 0, lambda_1, ..., lambda_{N-1}
    eta: tuple[Fraction, ...]  # eta_0 = L, eta_1, ..., eta_{N-1}
    Omega: tuple[tuple[Fraction, ...], ...] | None
    smooth: bool


def spectral_data(C) -> SpectralData:
    """Spectral data of the tropical curve for conserved values C = (C_1..C_{N+1}).

    lambda_k = C_{k+1} - C_k; eta_k = L - 2 sum_j min(lambda_k, lambda_j);
    the curve is smooth iff the lambdas are strictly increasing and every
    eta_k is positive, in which case the (N-1)x(N-1) period matrix is the
    tridiagonal Omega below.
    """
    C = tuple(Fraction(c) for c in C)
    N = len(C) - 1
    if N < 1:
        raise ValueError("need at least C_1, C_2")
    L = C[N] - 2 * (N - 1) * C[0]
    lam = [Fraction(0)] + [C[k] - C[k - 1] for k in range(1, N)]
    eta = [L] + [
        L - 2 * sum(min(lam[k], lam[j]) for j in range(1, N)) for k in range(1, N)
    ]
    smooth = all(lam[k] < lam[k + 1] for k in range(N - 1)) and all(
        e > 0 for e in eta[1:]
    )
    g = N - 1
    Omega = None
    if smooth and g >= 1:
        rows = [[Fraction(0)] * g for _ in range(g)]
        for i in range(1, g + 1):
            rows[i - 1][i - 1] = eta[i - 1] + eta[i] + 2 * (lam[i] - lam[i - 1])
            if i + 1 <= g:
                rows[i - 1][i] = -eta[i]
                rows[i][i - 1] = -eta[i]
        Omega = tuple(tuple(r) for r in rows)
    return SpectralData(C, L, tuple(lam), tuple(eta), Omega, smooth)


def theta_solution(Z0, C, t: int, n: int) -> tuple[Fraction, Fraction]:
    """(Q_n^t, W_n^t) of the theta-function general solution.

    T_n^t = Theta(Z0 + velocity*t - L e_1 n) with velocity
    (lambda_1, lambda_2 - lambda_1, ...); requires a smooth spectral curve.
    """
    sd = spectral_data(C)
    if not sd.smooth or sd.Omega is None:
        raise ValueError("spectral curve is not smooth")
    g = len(C) - 2
    Xi = PeriodMatrix.from_rows(sd.Omega)
    vel = tuple(sd.lam[i + 1] - sd.lam[i] for i in range(g))
    Z0 = tuple(Fraction(z) for z in Z0)

    def T(tt: int, nn: int) -> Fraction:
        Z = tuple(
            Z0[i] + vel[i] * tt - (sd.L * nn if i == 0 else 0) for i in range(g)
        )
        return theta(Z, Xi)

    C1 = sd.C[0]
    Q = T(t, n - 1) + T(t + 1, n) - T(t + 1, n - 1) - T(t, n) + C1
    W = T(t + 1, n - 1) + T(t, n + 1) - T(t, n) - T(t + 1, n) + sd.L + C1
    return Q, W


def theta_state(Z0, C, t: int) -> TodaState:
    """Full state at time t from the theta solution."""
    N = len(C) - 1
    pairs = [theta_solution(Z0, C, t, n) for n in range(1, N + 1)]
    return TodaState.make([q for q, _ in pairs], [w for _, w in pairs])


def embed_pbbs(word, leftmost: int = 0) -> TodaState:
    """Embed a periodic sl2 box-ball state into Toda coordinates.

    word: cyclic sequence over {1, 2} ('.' = 1 accepted); leftmost selects the
    distinguished box.  Runs are read from that box: Q_1 is the leading ball
    run (0 if the box is empty), then alternating empty/ball run lengths; the
    result always has Q_1 = 0 or W_N = 0.
    """
    from boxball.pbbs import PeriodicState

    if isinstance(word, PeriodicState):
        cells = word.cells
    elif isinstance(word, str):
        cells = tuple(1 if ch in "1." else 2 for ch in word)
    else:
        cells = tuple(word)
    L = len(cells)
    cells = cells[leftmost:] + cells[:leftmost]
    runs = []
    i = 0
    while i < L:
        j = i
        while j < L and cells[j] == cells[i]:
            j += 1
        runs.append((cells[i], j - i))
        i = j
    # N = 1 + number of cyclic ball runs (= 1 + soliton count of the isolevel set);
    # a ball run wrapping the distinguished box splits linearly into Q_1 and Q_N
    cyclic_runs = sum(
        1 for i in range(L) if cells[i] == 1 and cells[(i + 1) % L] == 2
    )
    if cyclic_runs == 0 and any(c == 2 for c in cells):
        raise ValueError("state has no empty box; not embeddable")
    N = cyclic_runs + 1
    Q = [Fraction(0)] * N
    W = [Fraction(0)] * N
    if runs and runs[0][0] == 2:
        qi, wi = 0, 0
        for v, ln in runs:
            if v == 2:
                Q[qi] = Fraction(ln)
                qi += 1
            else:
                W[wi] = Fraction(ln)
                wi += 1
    else:
        qi, wi = 1, 0
        for v, ln in runs:
            if v == 2:
                Q[qi] = Fraction(ln)
                qi += 1
            else:
                W[wi] = Fraction(ln)
                wi += 1
    if qi > N or wi > N:
        raise ValueError("more runs than the embedding dimension allows")
    return TodaState(tuple(Q), tuple(W))
