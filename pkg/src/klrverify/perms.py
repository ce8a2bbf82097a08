"""Permutations acting on sequences, canonical reduced words and braid-move paths.

A permutation ``w`` is stored as the tuple ``w . (0, 1, ..., n-1)``, so that
``(w . nu)[p] == nu[w[p]]``. Generators are 0-based: ``s_k`` swaps positions
``k`` and ``k + 1``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def act(w: Sequence[int], seq: Sequence) -> tuple:
    return tuple(seq[p] for p in w)


def swap_positions(seq: Sequence, k: int) -> tuple:
    l = list(seq)
    l[k], l[k + 1] = l[k + 1], l[k]
    return tuple(l)


def from_word(word: Sequence[int], n: int) -> tuple[int, ...]:
    """Permutation of tau_{word[0]} ... tau_{word[-1]} (rightmost applied first)."""
    w = identity(n)
    for k in reversed(word):
        w = swap_positions(w, k)
    return w


def length(w: Sequence[int]) -> int:
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def is_left_descent(w: Sequence[int], k: int) -> bool:
    return w[k] > w[k + 1]


@lru_cache(maxsize=None)
def canonical_word(w: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically smallest reduced word of w."""
    for k in range(len(w) - 1):
        if w[k] > w[k + 1]:
            return (k,) + canonical_word(swap_positions(w, k))
    return ()


def is_reduced(word: Sequence[int], n: int) -> bool:
    return length(from_word(word, n)) == len(word)


def compose(w: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """Permutation of tau_w tau_v, i.e. v applied first."""
    return tuple(v[p] for p in w)


def inverse(w: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(w)
    for p, q in enumerate(w):
        out[q] = p
    return tuple(out)


def all_perms(n: int) -> list[tuple[int, ...]]:
    from itertools import permutations
    return sorted(permutations(range(n)))


# A move is (position, old_letters, new_letters); lengths 2 (commutation) or 3 (braid).
Move = tuple


def _moves_to_front(word: tuple[int, ...], k: int, n: int) -> list[Move]:
    """Moves turning the reduced word into one starting with the left descent k."""
    if not word:
        raise ValueError("empty word has no descents")
    a = word[0]
    if a == k:
        return []
    tail = word[1:]
    if abs(a - k) >= 2:
        moves = _shift(_moves_to_front(tail, k, n), 1)
        return moves + [(0, (a, k), (k, a))]
    moves = _shift(_moves_to_front(tail, k, n), 1)
    cur = apply_moves(word, moves)
    rest = cur[2:]
    moves2 = _shift(_moves_to_front(rest, a, n), 2)
    return moves + moves2 + [(0, (a, k, a), (k, a, k))]


def _shift(moves: list[Move], by: int) -> list[Move]:
    return [(p + by, old, new) for p, old, new in moves]


def apply_moves(word: Sequence[int], moves: list[Move]) -> tuple[int, ...]:
    cur = list(word)
    for p, old, new in moves:
        if tuple(cur[p:p + len(old)]) != tuple(old):
            raise AssertionError("move does not match word")
        cur[p:p + len(old)] = new
    return tuple(cur)


@lru_cache(maxsize=None)
def moves_to_canonical(word: tuple[int, ...], n: int) -> tuple[Move, ...]:
    """Commutation/braid moves from a reduced word to the canonical word."""
    w = from_word(word, n)
    canon = canonical_word(w)
    if word == canon:
        return ()
    k = canon[0]
    moves = _moves_to_front(word, k, n)
    cur = apply_moves(word, moves)
    moves += _shift(list(moves_to_canonical(cur[1:], n)), 1)
    return tuple(moves)
