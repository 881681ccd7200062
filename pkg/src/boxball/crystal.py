"""Affine sl(n+1) crystals B_l, tensor products, Kashiwara operators and the
combinatorial R.

An element of B_l is a vector of letter counts (x_1,...,x_{n+1}) summing to l;
the one-row tableau word is only an I/O presentation.  All letter indices are
cyclic mod n+1, with color 0 acting between letters n+1 and 1.  The crystal 0
is represented by None throughout.

Two independent implementations of the combinatorial R are provided: the
piecewise-linear max-plus formula and the winding/unwinding pairing algorithm.
They agree on all inputs (tested), and the pairing algorithm also yields the
energy as the number of winding pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass


class RankMismatch(ValueError):
    pass


def _cyc(i: int, m: int) -> int:
    """Reduce a 1-based letter index cyclically into 1..m."""
    return (i - 1) % m + 1


@dataclass(frozen=True)
class CrystalElement:
    """Element of B_l for affine sl(n+1): letter counts summing to the capacity l."""

    rank: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if len(self.counts) != self.rank + 1:
            raise ValueError("counts must have length rank+1")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")

    @property
    def capacity(self) -> int:
        return sum(self.counts)

    def count(self, i: int) -> int:
        """x_i with cyclic indexing (x_0 = x_{n+1} etc.)."""
        return self.counts[_cyc(i, self.rank + 1) - 1]

    @classmethod
    def from_word(cls, word: str, rank: int | None = None) -> "CrystalElement":
        """Parse a weakly increasing tableau word, e.g. "13347" or "1,3,3,4,7"."""
        if "," in word:
            letters = [int(t) for t in word.split(",") if t]
        else:
            letters = [int(ch) for ch in word]
        if any(a < 1 for a in letters):
            raise ValueError(f"letters must be >= 1: {word!r}")
        if rank is None:
            rank = max(letters) - 1 if letters else 1
            rank = max(rank, 1)
        counts = [0] * (rank + 1)
        for a in letters:
            if a > rank + 1:
                raise ValueError(f"letter {a} exceeds rank+1={rank + 1}")
            counts[a - 1] += 1
        return cls(rank, tuple(counts))

    def word(self) -> str:
        letters = []
        for a, c in enumerate(self.counts, start=1):
            letters.extend([a] * c)
        if self.rank + 1 <= 9:
            return "".join(str(a) for a in letters)
        return ",".join(str(a) for a in letters)

    def __str__(self):
        return self.word()


def u_vac(rank: int, l: int) -> CrystalElement:
    """The vacant carrier u_l: all l letters equal to 1."""
    return CrystalElement(rank, (l,) + (0,) * rank)


def eps_phi(x: CrystalElement, i: int) -> tuple[int, int]:
    """(eps_i, phi_i) of x: how far the raising/lowering operators act."""
    if not 0 <= i <= x.rank:
        raise ValueError(f"color index {i} out of range 0..{x.rank}")
    return x.count(i + 1), x.count(i)


def kashiwara(x: CrystalElement, i: int, dir: str) -> CrystalElement | None:
    """Apply e~_i (dir='raise') or f~_i (dir='lower'); None is the crystal 0."""
    if not 0 <= i <= x.rank:
        raise ValueError(f"color index {i} out of range 0..{x.rank}")
    m = x.rank + 1
    lo, hi = _cyc(i, m) - 1, _cyc(i + 1, m) - 1
    counts = list(x.counts)
    if dir == "raise":
        counts[lo] += 1
        counts[hi] -= 1
    elif dir == "lower":
        counts[lo] -= 1
        counts[hi] += 1
    else:
        raise ValueError("dir must be 'raise' or 'lower'")
    if counts[lo] < 0 or counts[hi] < 0:
        return None
    return CrystalElement(x.rank, tuple(counts))


@dataclass(frozen=True)
class TensorElement:
    """Ordered tensor product of crystal elements of a common rank."""

    factors: tuple[CrystalElement, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("tensor must be nonempty")
        r = self.factors[0].rank
        if any(f.rank != r for f in self.factors):
            raise RankMismatch("tensor factors must share the rank")

    @property
    def rank(self) -> int:
        return self.factors[0].rank

    @classmethod
    def from_word(cls, text: str, rank: int | None = None) -> "TensorElement":
        parts = text.split("*")
        if rank is None:
            rank = max(
                max((int(t) for t in p.replace(",", " ").split()), default=1)
                if "," in p
                else max((int(c) for c in p), default=1)
                for p in parts
            ) - 1
            rank = max(rank, 1)
        return cls(tuple(CrystalElement.from_word(p, rank) for p in parts))

    def word(self) -> str:
        return "*".join(f.word() for f in self.factors)

    def __str__(self):
        return self.word()


def tensor_eps_phi(p: TensorElement | CrystalElement, i: int) -> tuple[int, int]:
    """(eps_i, phi_i) on a tensor product, by the left-to-right pairwise rule."""
    if isinstance(p, CrystalElement):
        return eps_phi(p, i)
    eps, phi = eps_phi(p.factors[0], i)
    for f in p.factors[1:]:
        e2, p2 = eps_phi(f, i)
        eps = eps + max(e2 - phi, 0)
        phi = p2 + max(phi - e2, 0)
    return eps, phi


def tensor_kashiwara(p: TensorElement, i: int, dir: str) -> TensorElement | None:
    """Route e~_i / f~_i to the unique factor given by the signature rule."""
    factors = list(p.factors)

    def rec(lo: int, hi: int) -> bool:
        # act on factors[lo:hi]; returns False if the result is 0
        if hi - lo == 1:
            out = kashiwara(factors[lo], i, dir)
            if out is None:
                return False
            factors[lo] = out
            return True
        phi_head = eps_phi(factors[lo], i)[1]
        eps_tail = tensor_eps_phi(TensorElement(tuple(factors[lo + 1 : hi])), i)[0]
        if dir == "raise":
            head = phi_head >= eps_tail
        else:
            head = phi_head > eps_tail
        if head:
            return rec(lo, lo + 1)
        return rec(lo + 1, hi)

    if not rec(0, len(factors)):
        return None
    return TensorElement(tuple(factors))


@dataclass(frozen=True)
class RResult:
    """Output of the combinatorial R on B_l (x) B_l': the swapped pair and the energy."""

    left_out: CrystalElement
    right_out: CrystalElement
    energy: int


def _P(x: CrystalElement, y: CrystalElement, i: int) -> int:
    m = x.rank + 1
    return max(
        sum(x.count(i + j) for j in range(k, m + 1)) + sum(y.count(i + j) for j in range(1, k + 1))
        for k in range(1, m + 1)
    )


def comb_R(x: CrystalElement, y: CrystalElement) -> RResult:
    """Combinatorial R by the piecewise-linear (max-plus) formula."""
    if x.rank != y.rank:
        raise RankMismatch("R needs equal ranks")
    m = x.rank + 1
    P = [_P(x, y, i) for i in range(m)]  # P[i] for i = 0..n, cyclic
    xt, yt = [], []
    for i in range(1, m + 1):
        pi, pim1 = P[i % m], P[(i - 1) % m]
        xt.append(x.count(i) - pi + pim1)
        yt.append(y.count(i) + pi - pim1)
    return RResult(
        left_out=CrystalElement(x.rank, tuple(yt)),
        right_out=CrystalElement(x.rank, tuple(xt)),
        energy=P[0] - max(x.capacity, y.capacity),
    )


def energy_H(x: CrystalElement, y: CrystalElement) -> int:
    """Energy of x (x) y: P_0(x,y) - max(l,l')."""
    if x.rank != y.rank:
        raise RankMismatch("H needs equal ranks")
    return _P(x, y, 0) - max(x.capacity, y.capacity)


def _dots(x: CrystalElement) -> list[int]:
    """Box positions (letters) of the dots of x, top to bottom."""
    out = []
    for a, c in enumerate(x.counts, start=1):
        out.extend([a] * c)
    return out


def comb_R_ny(
    x: CrystalElement, y: CrystalElement, rng: random.Random | None = None
) -> RResult:
    """Combinatorial R by the winding/unwinding pairing algorithm.

    Dots of the larger-capacity pile are matched from the smaller one; the
    energy is the number of winding (wrap-around) pairs.  The pairing is
    choice-independent; pass rng to randomize the processing order (used by
    tests to check exactly that).
    """
    if x.rank != y.rank:
        raise RankMismatch("R needs equal ranks")
    n1 = x.rank + 1
    if x.capacity >= y.capacity:
        left, right = _dots(x), _dots(y)
        order = list(range(len(right)))
        if rng is not None:
            rng.shuffle(order)
        free = list(left)
        partners, winding = [], 0
        for k in order:
            b = right[k]
            above = [a for a in free if a < b]
            if above:
                pick = max(above)  # lowest position still above b
            else:
                pick = max(free)  # winding: lowest position overall
                winding += 1
            free.remove(pick)
            partners.append(pick)
        new_left = partners
        new_right = right + free
    else:
        left, right = _dots(x), _dots(y)
        order = list(range(len(left)))
        if rng is not None:
            rng.shuffle(order)
        free = list(right)
        partners, winding = [], 0
        for k in order:
            a = left[k]
            below = [b for b in free if b > a]
            if below:
                pick = min(below)  # highest position still below a
            else:
                pick = min(free)  # winding: highest position overall
                winding += 1
            free.remove(pick)
            partners.append(pick)
        new_left = left + free
        new_right = partners

    def pack(dots: list[int]) -> CrystalElement:
        counts = [0] * n1
        for a in dots:
            counts[a - 1] += 1
        return CrystalElement(x.rank, tuple(counts))

    return RResult(left_out=pack(new_left), right_out=pack(new_right), energy=winding)
