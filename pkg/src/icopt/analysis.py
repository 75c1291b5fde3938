"""Min-max decoding cost of optimal codes.

Only broadcast transmissions count toward a receiver's cost; side information
is local and free.  Among equal-length codes the preferred one minimizes the
largest number of transmissions any receiver has to combine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gf2 import bits_of
from .problem import IndexCodingProblem
from .solver import IndexCode, enumerate_optimal_codes


class UndecodableError(ValueError):
    pass


@dataclass(frozen=True)
class DecodingPlan:
    receiver: int
    used_transmissions: tuple[int, ...]  # 1-based codeword positions in canonical order
    used_side_info: tuple[int, ...]  # 1-based message indices


@dataclass(frozen=True)
class CodeCost:
    per_receiver: tuple[int, ...]
    max_used: int


def plan_residual(code: IndexCode, plan: DecodingPlan) -> int:
    """XOR of the planned codewords and side-info unit vectors, as a bitset."""
    acc = 0
    for pos in plan.used_transmissions:
        acc ^= code.codewords[pos - 1]
    for k in plan.used_side_info:
        acc ^= 1 << (k - 1)
    return acc


def min_transmissions(code: IndexCode, p: IndexCodingProblem, receiver: int) -> tuple[int, DecodingPlan]:
    want = 1 << (receiver - 1)
    known = p.known_mask(receiver)
    best = None
    for coeffs in itertools.product((0, 1), repeat=code.length):
        acc = 0
        for a, g in zip(coeffs, code.codewords):
            if a:
                acc ^= g
        leftover = acc ^ want
        if leftover & ~known:
            continue
        key = (sum(coeffs), coeffs)
        if best is None or key < best[0]:
            best = (key, leftover)
    if best is None:
        raise UndecodableError(f"receiver {receiver} cannot decode x{receiver} from {code.render()}")
    (count, coeffs), leftover = best
    plan = DecodingPlan(
        receiver,
        tuple(i + 1 for i, a in enumerate(coeffs) if a),
        tuple(k + 1 for k in bits_of(leftover)),
    )
    return count, plan


def code_cost(code: IndexCode, p: IndexCodingProblem) -> CodeCost:
    counts = tuple(min_transmissions(code, p, i)[0] for i in range(1, p.n + 1))
    return CodeCost(counts, max(counts))


def select_best_codes(p: IndexCodingProblem) -> tuple[int, list[IndexCode]]:
    value, winners, _ = cost_table(p)
    return value, winners


def cost_table(p: IndexCodingProblem) -> tuple[int, list[IndexCode], list[tuple[IndexCode, CodeCost]]]:
    table = [(code, code_cost(code, p)) for code in enumerate_optimal_codes(p)]
    value = min(cost.max_used for _, cost in table)
    winners = [code for code, cost in table if cost.max_used == value]
    return value, winners, table


def analysis_json(p: IndexCodingProblem) -> dict:
    value, winners, table = cost_table(p)
    winner_set = set(winners)
    return {
        "optimal_length": table[0][0].length,
        "minmax": value,
        "codes": [
            {
                "code": code.render(),
                "per_receiver": list(cost.per_receiver),
                "max_used": cost.max_used,
                "winner": code in winner_set,
            }
            for code, cost in table
        ],
        "winners": [code.render() for code in winners],
    }
