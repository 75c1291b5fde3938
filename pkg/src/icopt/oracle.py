"""Brute-force ground truth for small problems (n <= 5).

Feasibility of a linear code depends only on its span, so the search runs over
subspaces and expands bases only for the spans that pass.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .gf2 import Subspace, enumerate_subspaces, rank_of_words
from .problem import IndexCodingProblem
from .solver import IndexCode

MAX_N = 5


class OracleLimitError(ValueError):
    pass


def _check(p: IndexCodingProblem) -> None:
    if p.n > MAX_N:
        raise OracleLimitError(f"oracle handles n <= {MAX_N}, got n = {p.n}")


def is_decodable(code: Iterable[int], p: IndexCodingProblem) -> bool:
    """Every receiver's wanted unit vector lies in span(code + its side info)."""
    words = list(code)
    for i in range(1, p.n + 1):
        side = [1 << (k - 1) for k in p.receivers[i - 1].knows]
        base = rank_of_words(words + side)
        if rank_of_words(words + side + [1 << (i - 1)]) != base:
            return False
    return True


def _decodable_spaces(p: IndexCodingProblem, c: int) -> list[Subspace]:
    return [s for s in enumerate_subspaces(p.n, c) if is_decodable(s.basis, p)]


def brute_optimal_length(p: IndexCodingProblem) -> int:
    _check(p)
    for c in range(1, p.n + 1):
        if _decodable_spaces(p, c):
            return c
    raise AssertionError("the full space is always decodable")


def brute_enumerate_codes(p: IndexCodingProblem, c: int) -> set[IndexCode]:
    _check(p)
    codes = set()
    for space in _decodable_spaces(p, c):
        nonzero = [w for w in space.elements() if w]
        for combo in itertools.combinations(nonzero, c):
            if rank_of_words(combo) == c:
                codes.add(IndexCode(combo, p.n))
    return codes
