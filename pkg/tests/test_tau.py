import random

import pytest

from boxball.bbs import BBSState
from boxball.kkr import highest_paths, kkr_phi, kkr_phi_inv
from boxball.tau import (
    StringSet,
    check_hirota,
    cocharge,
    path_from_tau,
    rho,
    tau,
    tau_table,
)

THREE_BODY_T0 = "........2222.....332..43.................................."


def _S(word, rank=None):
    rank = rank or max(max(int(c) for c in word if c != "."), 2) - 1
    return StringSet.from_rc(kkr_phi(word.replace(".", "1"), rank))


def test_cocharge_empty_and_single():
    assert cocharge([]) == 0
    for a, l, J in [(1, 3, 2), (2, 1, 0), (1, 5, 7)]:
        assert cocharge([(a, l, J)]) == l + J


def test_cocharge_two_strings_same_color():
    # c = xi_1 + xi_2 + A_{1,2} with A = C_{aa} min = 2 min(l1, l2)
    assert cocharge([(1, 2, 1), (1, 3, 0)]) == (2 + 1) + (3 + 0) + 2 * 2
    # adjacent colors interact with C = -1
    assert cocharge([(1, 2, 1), (2, 3, 0)]) == (2 + 1) + (3 + 0) - min(2, 3)


def test_tau_empty_set():
    s = StringSet(2, 5, ())
    for k in range(6):
        for a in range(4):
            expected = -k if a == 0 else 0
            assert tau(s, k, a) == expected


def test_tau_single_string_at_k0():
    s = StringSet(1, 6, ((1, 2, 1),))
    # tau_{0,n+1} = -min(0, l+J) = 0 for nonnegative riggings
    assert tau(s, 0, 2) == 0


def test_tau_nonnegative():
    rng = random.Random(41)
    for _ in range(30):
        n = rng.randint(1, 3)
        L = rng.randint(4, 10)
        strings = tuple(
            (rng.randint(1, n), rng.randint(1, 3), rng.randint(0, 3)) for _ in range(rng.randint(0, 5))
        )
        s = StringSet(n, L, strings)
        for k in range(L + 1):
            for a in range(1, n + 2):
                assert tau(s, k, a) >= 0


def test_subset_cap(monkeypatch):
    monkeypatch.setenv("BOXBALL_SUBSET_CAP", "3")
    import boxball.tau as tau_mod

    tau_mod._tables.clear()
    s = StringSet(1, 8, tuple((1, 1, 0) for _ in range(4)))
    with pytest.raises(ValueError):
        tau(s, 0, 1)
    tau_mod._tables.clear()


def test_tau_equals_rho_worked_example():
    word = "11112221322433"
    s = _S(word)
    for k in range(1, len(word) + 1):
        for a in range(1, s.rank + 2):
            assert tau(s, k, a) == rho(word, k, a, 0)


def test_tau_equals_rho_exhaustive_small():
    for rank, L in [(1, 7), (2, 6)]:
        for word in highest_paths(L, rank):
            s = _S(word, rank)
            for k in range(1, L + 1):
                for a in range(1, rank + 2):
                    assert tau(s, k, a) == rho(word, k, a, 0, rank=rank), (word, k, a)


def test_rho_vacuum():
    assert rho("...", 2, 1, 0) == 0


def test_rho_recursion_identities():
    # rho_{k,n+1}^{t+1} = rho_{k,1}^t and the second difference recovers x
    word = THREE_BODY_T0
    state = BBSState.parse(word, origin=1)
    n = state.rank
    for k in range(3, 30, 5):
        for t in (0, 1):
            assert rho(state, k, n + 1, t + 1) == rho(state, k, 1, t)
    for k in range(9, 26):
        for a in range(1, n + 2):
            x = (
                rho(state, k, a, 0)
                - rho(state, k - 1, a, 0)
                - rho(state, k, a - 1, 0)
                + rho(state, k - 1, a - 1, 0)
            )
            assert x == (1 if state.cell(k) == a else 0)


def test_rho_bilinear_relation():
    state = BBSState.parse(THREE_BODY_T0, origin=1)
    n = state.rank
    for t in (0, 1, 2):
        for k in range(8, 30, 3):
            for a in range(2, n + 2):
                lhs = rho(state, k, a - 1, t + 1) + rho(state, k - 1, a, t)
                rhs = max(
                    rho(state, k, a, t + 1) + rho(state, k - 1, a - 1, t),
                    rho(state, k - 1, a - 1, t + 1) + rho(state, k, a, t) - 1,
                )
                assert lhs == rhs


def test_path_from_tau_fixtures():
    assert path_from_tau(_S("112212", 1)) == "112212"
    assert path_from_tau(StringSet(1, 5, ())) == "11111"
    assert path_from_tau(_S("11112221322433", 3)) == "11112221322433"


def test_path_from_tau_equals_phi_inv_exhaustive():
    for rank, L in [(1, 8), (2, 6)]:
        for word in highest_paths(L, rank):
            s = _S(word, rank)
            assert path_from_tau(s) == word
            assert kkr_phi_inv(s.to_rc()) == word


def test_tau_first_color_equals_evolved_last():
    # tau_{k,1}(S) = taubar_{k,n+1}: the analogue of rho_{k,n+1}^{t+1} = rho_{k,1}^t
    for word in ("112212", "11112221322433"):
        s = _S(word)
        sbar = s.evolved(None)
        for k in range(s.L + 1):
            assert tau(s, k, 1) == tau(sbar, k, s.rank + 1)


def test_hirota_fixtures():
    assert check_hirota(StringSet(2, 4, ()))
    assert check_hirota(_S(THREE_BODY_T0))


def test_hirota_random_small():
    rng = random.Random(42)
    pool = list(highest_paths(8, 1)) + list(highest_paths(6, 2))
    for word in rng.sample(pool, 30):
        assert check_hirota(_S(word, None if "3" in word else 1))


def test_tau_table_shape():
    s = _S("112212", 1)
    table = tau_table(s)
    assert len(table) == 7 and all(len(r) == 3 for r in table)
