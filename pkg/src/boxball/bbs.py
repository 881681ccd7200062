"""Infinite sl(n+1) box-ball system: states, carrier evolutions, conserved
energies, soliton content, scattering and the conserved P-symbol.

A state is a finite window of letters inside an infinite sea of 1s (empty
boxes).  Windows are padded automatically before an evolution so that the
boundary is never touched; energies are summed over the window, the tail
terms vanishing because a vacant carrier scores nothing against empty boxes.
"""

from __future__ import annotations

from dataclasses import dataclass

from boxball.crystal import CrystalElement, comb_R


@dataclass(frozen=True)
class BBSState:
    """Window of letters 1..n+1 with its left-edge coordinate; 1s outside."""

    rank: int
    cells: tuple[int, ...]
    origin: int = 0

    def __post_init__(self):
        if any(not 1 <= c <= self.rank + 1 for c in self.cells):
            raise ValueError("cells must be letters in 1..rank+1")

    @classmethod
    def parse(cls, text: str, rank: int | None = None, origin: int = 0) -> "BBSState":
        cells = tuple(1 if ch == "." else int(ch) for ch in text)
        if rank is None:
            rank = max(max(cells, default=1), 2) - 1
        return cls(rank, cells, origin).trimmed()

    def render(self, left: int | None = None, right: int | None = None) -> str:
        """Dot notation over [left, right); defaults to the support window."""
        if left is None:
            left = self.origin
        if right is None:
            right = self.origin + len(self.cells)
        out = []
        for pos in range(left, right):
            c = self.cell(pos)
            out.append("." if c == 1 else str(c))
        return "".join(out)

    def cell(self, pos: int) -> int:
        i = pos - self.origin
        if 0 <= i < len(self.cells):
            return self.cells[i]
        return 1

    def trimmed(self) -> "BBSState":
        """Shrink the window to the support (all-vacuum states keep one cell)."""
        cells, origin = self.cells, self.origin
        lo = 0
        while lo < len(cells) and cells[lo] == 1:
            lo += 1
        if lo == len(cells):
            return BBSState(self.rank, (), origin)
        hi = len(cells)
        while cells[hi - 1] == 1:
            hi -= 1
        return BBSState(self.rank, cells[lo:hi], origin + lo)

    def balls(self) -> int:
        return sum(1 for c in self.cells if c > 1)

    def support(self) -> tuple[int, int]:
        """[leftmost, rightmost] ball positions; (origin, origin) when vacuum."""
        s = self.trimmed()
        if not s.cells:
            return (s.origin, s.origin)
        return (s.origin, s.origin + len(s.cells) - 1)


def _carrier_step(carrier: list[int], b: int, rank: int) -> tuple[int, int]:
    """One R-step of a carrier (count vector, mutated) against a single box.

    Returns (emitted letter, energy H).  The carrier exchanges its largest
    letter strictly below b when one exists (unwinding, H=0), otherwise its
    largest letter overall (winding, H=1).
    """
    pick = 0
    for a in range(b - 1, 0, -1):
        if carrier[a - 1] > 0:
            pick = a
            break
    if pick:
        h = 0
    else:
        h = 1
        for a in range(rank + 1, 0, -1):
            if carrier[a - 1] > 0:
                pick = a
                break
    carrier[pick - 1] -= 1
    carrier[b - 1] += 1
    return pick, h


def evolve(state: BBSState, l: int | None = None) -> tuple[BBSState, int]:
    """Apply T_l (T_infinity when l is None) and return (new state, E_l)."""
    n = state.rank
    s = state.trimmed()
    balls = s.balls()
    if balls == 0:
        return s, 0
    l_eff = l if l is not None else max(balls, 1)
    pad = l_eff + balls + 2
    cells = list(s.cells) + [1] * pad
    carrier = [l_eff] + [0] * n
    out = []
    energy = 0
    for b in cells:
        emitted, h = _carrier_step(carrier, b, n)
        out.append(emitted)
        energy += 1 - h
    assert carrier[0] == l_eff and all(c == 0 for c in carrier[1:]), (
        "carrier failed to empty; padding too small"
    )
    return BBSState(n, tuple(out), s.origin).trimmed(), energy


def evolve_takahashi(state: BBSState) -> BBSState:
    """T_infinity by the ball-moving algorithm: K_{n+1}, ..., K_2 in turn.

    K_a moves every letter-a ball, leftmost first, to its nearest empty box
    on the right, each exactly once.
    """
    s = state.trimmed()
    if s.balls() == 0:
        return s
    pad = s.balls() + 2
    cells = list(s.cells) + [1] * pad
    for a in range(s.rank + 1, 1, -1):
        positions = [i for i, c in enumerate(cells) if c == a]
        for i in positions:
            j = i + 1
            while cells[j] != 1:
                j += 1
                if j == len(cells):
                    cells.append(1)
            cells[i] = 1
            cells[j] = a
    return BBSState(s.rank, tuple(cells), s.origin).trimmed()


def energies(state: BBSState, l_max: int) -> list[int]:
    """[E_1, ..., E_l_max]; weakly increasing, stabilizing at the ball count."""
    return [evolve(state, l)[1] for l in range(1, l_max + 1)]


def soliton_content(state: BBSState) -> dict[int, int]:
    """Multiset of soliton amplitudes: m_l = -E_{l-1} + 2E_l - E_{l+1}."""
    balls = state.balls()
    if balls == 0:
        return {}
    E = [0] + energies(state, balls + 1)
    out = {}
    for l in range(1, balls + 1):
        m = -E[l - 1] + 2 * E[l] - E[l + 1]
        assert m >= 0
        if m:
            out[l] = m
    assert sum(l * m for l, m in out.items()) == balls
    return out


def solitons(state: BBSState) -> list[tuple[int, str]]:
    """(position, label) of each soliton, left to right.

    Defined only when every maximal nontrivial run is weakly decreasing and
    the vacuum gap after a run exceeds that run's length (the asymptotic
    regime); raises ValueError otherwise.
    """
    s = state.trimmed()
    runs = []
    i = 0
    cells = s.cells
    while i < len(cells):
        if cells[i] == 1:
            i += 1
            continue
        j = i
        while j < len(cells) and cells[j] != 1:
            j += 1
        runs.append((i, cells[i:j]))
        i = j
    out = []
    for k, (start, run) in enumerate(runs):
        if any(run[t] < run[t + 1] for t in range(len(run) - 1)):
            raise ValueError("run is not weakly decreasing; no canonical solitons")
        if k + 1 < len(runs):
            gap = runs[k + 1][0] - (start + len(run))
            if gap <= len(run):
                raise ValueError("solitons too close; no canonical decomposition")
        out.append((s.origin + start, "".join(str(c) for c in run)))
    return out


def scatter_two(big: str, small: str) -> tuple[str, str, int]:
    """Two-body scattering (R-matrix rule): returns (small', big', delta).

    Labels are weakly decreasing words over letters >= 2; the exchange is the
    combinatorial R one rank down (letters shifted by one), and the phase
    shift is delta = H + len(small).
    """
    for w in (big, small):
        if not w or any(ch < "2" for ch in w):
            raise ValueError(f"invalid soliton label {w!r}")
        if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
            raise ValueError(f"label must be weakly decreasing: {w!r}")
    if len(big) <= len(small):
        raise ValueError("need len(big) > len(small)")
    rank = max(int(c) for c in big + small) - 2
    rank = max(rank, 1)
    x = CrystalElement.from_word("".join(str(int(c) - 1) for c in reversed(big)), rank)
    y = CrystalElement.from_word("".join(str(int(c) - 1) for c in reversed(small)), rank)
    out = comb_R(x, y)
    delta = out.energy + len(small)

    def label(e: CrystalElement) -> str:
        return "".join(str(int(c) + 1) for c in reversed(e.word()))

    return label(out.left_out), label(out.right_out), delta


def scatter_two_simulated(big: str, small: str) -> tuple[str, str, int]:
    """Two-body scattering read off a full lattice simulation under T_infinity.

    The solitons start with a conservative gap and run until separated again;
    delta is the offset of the big soliton from its free trajectory.
    """
    l, lp = len(big), len(small)
    gap = 3 * (l + lp)
    x0 = 0
    y0 = l + gap
    word = big + "." * gap + small
    state = BBSState.parse(word, origin=x0)
    t = 0
    while True:
        t += 1
        state = evolve(state, None)[0]
        try:
            sol = solitons(state)
        except ValueError:
            continue
        if len(sol) == 2 and sol[1][0] - (sol[0][0] + len(sol[0][1])) >= 2 * (l + lp):
            small_out, big_out = sol[0][1], sol[1][1]
            if len(small_out) == lp:  # small soliton has been overtaken
                delta = sol[1][0] - (x0 + l * t)
                delta_small = (y0 + lp * t) - sol[0][0]
                assert delta == delta_small, "phase shifts disagree between solitons"
                return small_out, big_out, delta
        assert t < 100 * (l + lp), "scattering simulation did not separate"


def toda_coords(state: BBSState) -> tuple[list[int], list[int]]:
    """sl2 soliton coordinates: ball-run lengths Q and the gaps W between them."""
    if state.rank != 1:
        raise ValueError("Toda coordinates are defined for sl2 states only")
    s = state.trimmed()
    i = 0
    runs = []
    while i < len(s.cells):
        if s.cells[i] == 1:
            i += 1
            continue
        j = i
        while j < len(s.cells) and s.cells[j] == 2:
            j += 1
        runs.append((i, j))
        i = j
    Q = [j - i for i, j in runs]
    W = [runs[k + 1][0] - runs[k][1] for k in range(len(runs) - 1)]
    return Q, W


def toda_evolve(Q: list[int], W: list[int]) -> tuple[list[int], list[int]]:
    """One T_infinity step in soliton coordinates (W_0 = W_N = infinity)."""
    N = len(Q)
    if len(W) != N - 1:
        raise ValueError("need len(W) == len(Q) - 1")
    Qn: list[int] = []
    for j in range(N):
        acc = sum(Q[: j + 1]) - sum(Qn)
        Qn.append(min(acc, W[j]) if j < N - 1 else acc)
    Wn = [Q[j + 1] + W[j] - Qn[j] for j in range(N - 1)]
    return Qn, Wn


def _row_insert(rows: list[list[int]], a: int) -> None:
    for row in rows:
        for i, b in enumerate(row):
            if b > a:
                row[i], a = a, b
                break
        else:
            row.append(a)
            return
    rows.append([a])


def p_symbol(state: BBSState) -> list[tuple[int, ...]]:
    """Conserved P-symbol: RSK row insertion of the reversed ball word."""
    word = [c for c in state.cells if c > 1]
    rows: list[list[int]] = []
    for a in reversed(word):
        _row_insert(rows, a)
    return [tuple(r) for r in rows]
