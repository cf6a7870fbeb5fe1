import pytest

from helpers import reachable_states
from zeckgame.engine import is_terminal, state_value
from zeckgame.sequence import (
    UINT64_MAX,
    GameParams,
    SequenceOverflowError,
    decompose_greedy,
    generate_terms,
    terms_through_index,
)


def test_fibonacci_terms():
    assert generate_terms(GameParams(1, 1), 13).terms == (1, 2, 3, 5, 8, 13, 21)


def test_tribonacci_terms():
    assert generate_terms(GameParams(1, 2), 13).terms == (1, 2, 4, 7, 13, 24)


def test_c2_k1_terms():
    # hand evaluation: S_2 = 2*1+1 = 3, S_3 = 2*(3+1) = 8, S_4 = 2*(8+3) = 22
    assert 2 * 1 + 1 == 3 and 2 * (3 + 1) == 8 and 2 * (8 + 3) == 22
    assert generate_terms(GameParams(2, 1), 25).terms == (1, 3, 8, 22, 60)


def test_params_validation():
    with pytest.raises(ValueError):
        GameParams(0, 1)
    with pytest.raises(ValueError):
        GameParams(1, 0)


def test_bound_includes_first_overshoot():
    for c in (1, 2, 3):
        for k in (1, 2):
            for bound in (1, 5, 30):
                terms = generate_terms(GameParams(c, k), bound).terms
                assert terms[-1] > bound
                assert all(t <= bound for t in terms[:-1])
                assert terms[0] == 1


def test_bound_must_be_positive():
    with pytest.raises(ValueError):
        generate_terms(GameParams(1, 1), 0)


@pytest.mark.parametrize("c", [1, 2, 3, 4])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_recurrence_sweep(c, k):
    """Re-evaluate both branch formulas for the first ten terms."""
    terms = terms_through_index(GameParams(c, k), 10)
    assert terms[0] == 1
    for i in range(1, 10):  # checking S_{i+1}, 1-based i
        if i < k + 1:
            assert terms[i] == c * sum(terms[:i]) + 1
        else:
            assert terms[i] == c * sum(terms[i - k - 1:i])
    assert all(a < b for a, b in zip(terms, terms[1:]))


def test_sequence_term_accessor():
    seq = generate_terms(GameParams(1, 1), 13)
    assert seq.term(1) == 1 and seq.term(5) == 8
    with pytest.raises(IndexError):
        seq.term(0)
    with pytest.raises(IndexError):
        seq.term(len(seq.terms) + 1)


def test_overflow_is_loud():
    with pytest.raises(SequenceOverflowError):
        generate_terms(GameParams(2**40, 1), UINT64_MAX)
    with pytest.raises(SequenceOverflowError):
        terms_through_index(GameParams(3, 3), 200)


def test_decompose_fib_10():
    state = decompose_greedy(GameParams(1, 1), 10)
    assert state.entries == ((2, 1), (5, 1))  # 8 + 2
    assert is_terminal(GameParams(1, 1), state)


def test_decompose_trib_10():
    state = decompose_greedy(GameParams(1, 2), 10)
    assert state.entries == ((1, 1), (2, 1), (4, 1))  # 7 + 2 + 1
    assert is_terminal(GameParams(1, 2), state)


@pytest.mark.parametrize("c,k", [(1, 1), (1, 3), (2, 2), (3, 1)])
def test_decompose_one_token(c, k):
    assert decompose_greedy(GameParams(c, k), 1).entries == ((1, 1),)


def test_decompose_value_and_terminal_sweep():
    for c in (1, 2, 3):
        for k in (1, 2, 3):
            params = GameParams(c, k)
            for n in range(1, 501):
                state = decompose_greedy(params, n)
                assert state_value(params, state) == n
                assert is_terminal(params, state)


def test_unique_terminal_matches_greedy():
    """Exhaustively: the only moveless state reachable from n ones is the
    greedy decomposition."""
    for c in (1, 2):
        for k in (1, 2):
            params = GameParams(c, k)
            for n in range(1, 61):
                terminals = [s for s in reachable_states(params, n)
                             if is_terminal(params, s)]
                assert terminals == [decompose_greedy(params, n)], (c, k, n)
