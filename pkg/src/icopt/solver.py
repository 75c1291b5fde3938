"""Optimal linear index codes over GF(2).

The main path is min-rank over fitting matrices: the optimal length is the
smallest rank among them, and every optimal code is a basis of the column
space of some minimum-rank fitting matrix.

The right-inverse machinery (``S'(c)``, the column-group criterion, lambda)
is a much more expensive second route to the same answers and is used only
for verification.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import netcode
from .gf2 import (
    BitMatrix,
    BitVector,
    Subspace,
    bits_of,
    count_bases,
    enumerate_bases,
    rank_of_words,
    solve_affine,
)
from .problem import IndexCodingProblem, side_info_total

DEFAULT_BUDGET_BITS = 24
OPTIMAL = "optimal"
SUBOPTIMAL = "feasible-but-suboptimal"
INFEASIBLE = "infeasible"


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, bits: int, limit: int):
        super().__init__(
            f"{what} needs 2^{bits} = {1 << bits} items, over the budget of 2^{limit}"
            " (raise ICOPT_BUDGET_BITS to allow it)"
        )
        self.bits = bits
        self.limit = limit


class NotAMember(ValueError):
    """The candidate does not factor as a valid (B, F) pair."""


def budget_bits() -> int:
    raw = os.environ.get("ICOPT_BUDGET_BITS")
    if raw is None:
        return DEFAULT_BUDGET_BITS
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"ICOPT_BUDGET_BITS must be an integer, got {raw!r}") from None


def _check_budget(what: str, bits: int) -> None:
    limit = budget_bits()
    if bits > limit:
        raise BudgetExceeded(what, bits, limit)


# codes


def render_codeword(word: int) -> str:
    return "+".join(f"x{k + 1}" for k in bits_of(word)) or "0"


def parse_codeword(text: str) -> int:
    word = 0
    for term in text.replace("⊕", "+").split("+"):
        term = term.strip()
        if not term.startswith("x") or not term[1:].isdigit():
            raise ValueError(f"bad codeword term {term!r}")
        word ^= 1 << (int(term[1:]) - 1)
    return word


@dataclass(frozen=True, order=True)
class IndexCode:
    """An unordered set of independent codewords, kept sorted by integer value."""

    codewords: tuple[int, ...]
    n: int = field(compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "codewords", tuple(sorted(self.codewords)))
        if any(w >> self.n for w in self.codewords):
            raise ValueError("codeword wider than the message count")
        if rank_of_words(self.codewords) != len(self.codewords):
            raise ValueError("codewords are not linearly independent")

    @classmethod
    def from_strings(cls, words: Sequence[str], n: int) -> IndexCode:
        return cls(tuple(parse_codeword(w) for w in words), n)

    @property
    def length(self) -> int:
        return len(self.codewords)

    def render(self) -> list[str]:
        return [render_codeword(w) for w in self.codewords]

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.n, w) for w in self.codewords]


# fitting matrices


def fitting_slots(p: IndexCodingProblem) -> list[tuple[int, int]]:
    """Free (row, column) positions, 0-based: row k-1, column j-1 for x_k in K_j."""
    return [(k - 1, j - 1) for j, k in p.side_info_slots()]


def fitting_columns(p: IndexCodingProblem, assignment: int) -> list[int]:
    cols = [1 << j for j in range(p.n)]
    for t, (row, col) in enumerate(fitting_slots(p)):
        if (assignment >> t) & 1:
            cols[col] |= 1 << row
    return cols


def fitting_matrix(p: IndexCodingProblem, assignment: int) -> BitMatrix:
    """Fitting matrix whose free entry ``t`` (slot order) is bit ``t`` of ``assignment``."""
    return BitMatrix.from_columns(fitting_columns(p, assignment), p.n)


def enumerate_fitting_matrices(
    p: IndexCodingProblem, start: int = 0, stop: int | None = None
) -> Iterator[BitMatrix]:
    """All fitting matrices, or the slice ``[start, stop)`` of the assignment range."""
    s = side_info_total(p)
    _check_budget("fitting-matrix enumeration", s)
    stop = 1 << s if stop is None else min(stop, 1 << s)
    for assignment in range(start, stop):
        yield fitting_matrix(p, assignment)


def _fitting_ranks(p: IndexCodingProblem) -> Iterator[tuple[int, list[int]]]:
    s = side_info_total(p)
    _check_budget("fitting-matrix enumeration", s)
    for assignment in range(1 << s):
        cols = fitting_columns(p, assignment)
        yield rank_of_words(cols), cols


def optimal_length(p: IndexCodingProblem) -> int:
    return min(r for r, _ in _fitting_ranks(p))


def optimal_column_spaces(p: IndexCodingProblem) -> tuple[int, list[Subspace]]:
    best = p.n + 1
    spaces: set[Subspace] = set()
    for r, cols in _fitting_ranks(p):
        if r < best:
            best, spaces = r, set()
        if r == best:
            spaces.add(Subspace.span(cols, p.n))
    return best, sorted(spaces, key=lambda s: s.basis)


def _codes_spanning(spaces: Sequence[Subspace], n: int) -> list[IndexCode]:
    return sorted(
        IndexCode(tuple(v.bits for v in basis), n)
        for space in spaces
        for basis in enumerate_bases(space)
    )


def enumerate_optimal_codes(p: IndexCodingProblem) -> Iterator[IndexCode]:
    _, spaces = optimal_column_spaces(p)
    yield from _codes_spanning(spaces, p.n)


def theorem2_lower_bound(c: int) -> int:
    """Number of unordered bases of a c-dimensional space: prod(2^c - 2^i) / c!."""
    if c < 1:
        raise ValueError("c must be positive")
    return count_bases(c)


@dataclass(frozen=True)
class OptimalityReport:
    optimal_length: int
    mu: int
    code_count: int
    lower_bound: int
    codes: tuple[IndexCode, ...]

    def to_json(self) -> dict:
        return {
            "optimal_length": self.optimal_length,
            "mu": self.mu,
            "lower_bound": self.lower_bound,
            "code_count": self.code_count,
            "codes": [code.render() for code in self.codes],
        }


def full_report(p: IndexCodingProblem) -> OptimalityReport:
    c, spaces = optimal_column_spaces(p)
    codes = tuple(_codes_spanning(spaces, p.n))
    bound = theorem2_lower_bound(c)
    report = OptimalityReport(c, len(spaces), len(codes), bound, codes)
    assert report.code_count == report.mu * report.lower_bound
    return report


def corollary2_check(p: IndexCodingProblem) -> bool:
    """True when the code count meets the lower bound with equality (mu = 1)."""
    report = full_report(p)
    return report.mu == 1 and report.code_count == report.lower_bound


# right inverses of A^T


@dataclass(frozen=True)
class CandidateT:
    """A right inverse ``T`` of ``A^T`` respecting the side-information zero pattern.

    ``t`` has ``n*c + sum|K_i|`` rows and ``n`` columns; its row ``r`` is the
    r-th column of ``T^T``, indexed by receiver.
    """

    t: BitMatrix
    c: int

    @property
    def n(self) -> int:
        return self.t.ncols


def column_groups(n: int, c: int) -> list[list[int]]:
    """Row indices of T belonging to each transmission slot l_i."""
    return [[k * c + i for k in range(n)] for i in range(c)]


def s_prime_space(p: IndexCodingProblem, c: int) -> tuple[list[int], list[list[int]]]:
    """``S'(c)`` as an affine space of T row tuples: (base rows, generators).

    Each column of ``T`` is solved independently from ``A^T t = e_j`` with the
    side-information rows of other receivers pinned to zero.
    """
    n = p.n
    a_t = netcode.build_A(p, c).transpose()
    size = a_t.ncols
    slots = p.side_info_slots()
    base = [0] * size
    generators: list[list[int]] = []
    for j in range(n):
        forced = [n * c + t for t, (recv, _) in enumerate(slots) if recv != j + 1]
        sol = solve_affine(a_t, BitVector.unit(n, j), forced)
        for r in bits_of(sol.particular.bits):
            base[r] |= 1 << j
        for v in sol.nullspace:
            gen = [0] * size
            for r in bits_of(v.bits):
                gen[r] = 1 << j
            generators.append(gen)
    return base, generators


def s_prime_bits(p: IndexCodingProblem, c: int) -> int:
    n = p.n
    return n * n * c - n * n + side_info_total(p)


def is_s_prime_member(t: BitMatrix, p: IndexCodingProblem, c: int) -> bool:
    """``A^T t = I`` and side-information row (j, k) is nonzero only in column j."""
    n = p.n
    if t.shape != (n * c + side_info_total(p), n):
        return False
    if netcode.build_A(p, c).transpose() @ t != BitMatrix.identity(n):
        return False
    return all(
        not t.rows[n * c + idx] & ~(1 << (recv - 1))
        for idx, (recv, _) in enumerate(p.side_info_slots())
    )


def enumerate_S_prime(p: IndexCodingProblem, c: int) -> Iterator[CandidateT]:
    if c < 1:
        raise ValueError("c must be positive")
    _check_budget(f"S'({c}) enumeration", s_prime_bits(p, c))
    base, gens = s_prime_space(p, c)
    assert len(gens) == s_prime_bits(p, c)
    rows = list(base)
    n = p.n
    yield CandidateT(BitMatrix.from_words(rows, n), c)
    for step in range(1, 1 << len(gens)):
        gen = gens[(step & -step).bit_length() - 1]
        for r, w in enumerate(gen):
            if w:
                rows[r] ^= w
        yield CandidateT(BitMatrix.from_words(rows, n), c)


def _groups(t: CandidateT) -> list[list[int]]:
    return [[t.t.rows[r] for r in group] for group in column_groups(t.n, t.c)]


def lemma1_membership(t: CandidateT) -> bool:
    """Every column group of T_B spans a space of dimension at most one."""
    return all(rank_of_words(g) <= 1 for g in _groups(t))


def lambda_of(t: CandidateT) -> int:
    """Number of column groups of T_B that are entirely zero."""
    return sum(1 for g in _groups(t) if not any(g))


def count_bf_pairs(n: int, lam: int) -> int:
    return ((1 << (n + 1)) - 1) ** lam


def recover_decomposition(t: CandidateT, p: IndexCodingProblem) -> netcode.TransferDecomposition:
    """Canonical (beta, eps, sigma) with ``B F = T^T``; zero groups get beta = eps = 0."""
    if not lemma1_membership(t):
        raise NotAMember("a column group spans more than one dimension")
    n, c = t.n, t.c
    beta_rows, eps_rows = [], []
    for group in _groups(t):
        direction = max(group)
        eps_rows.append(direction)
        beta_rows.append(sum(1 << k for k, v in enumerate(group) if v) if direction else 0)
    sigma = [0] * n
    counters = [0] * n
    for t_idx, (recv, _) in enumerate(p.side_info_slots()):
        j = recv - 1
        if (t.t.rows[n * c + t_idx] >> j) & 1:
            sigma[j] |= 1 << counters[j]
        counters[j] += 1
    return netcode.TransferDecomposition(
        BitMatrix.from_words(beta_rows, n),
        BitMatrix.from_words(eps_rows, n),
        tuple(sigma),
    )


@dataclass
class Theorem1Result:
    c: int
    verdict: str
    s_prime_size: int
    s_size: int
    lambda_histogram: dict[int, int]
    witness: CandidateT | None
    min_rank_length: int

    @property
    def expected_verdict(self) -> str:
        if self.c < self.min_rank_length:
            return INFEASIBLE
        return OPTIMAL if self.c == self.min_rank_length else SUBOPTIMAL

    @property
    def agrees(self) -> bool:
        return self.verdict == self.expected_verdict


def _verdict(s_size: int, histogram: dict[int, int]) -> str:
    if s_size == 0:
        return INFEASIBLE
    if any(lam > 0 for lam in histogram):
        return SUBOPTIMAL
    return OPTIMAL


def _classify_batch(
    rows: np.ndarray, p: IndexCodingProblem, c: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized criterion check over a batch of T row tuples.

    Returns (member, lam, realizes_identity) arrays.  ``realizes_identity``
    rebuilds M from the recovered (beta, eps, sigma) and compares it with I.
    """
    n = p.n
    batch = rows.shape[0]
    member = np.ones(batch, dtype=bool)
    lam = np.zeros(batch, dtype=np.int64)
    codeword = []
    direction = []
    for group in column_groups(n, c):
        g = rows[:, group]
        d = g.max(axis=1)
        member &= np.all((g == 0) | (g == d[:, None]), axis=1)
        lam += d == 0
        weights = (np.uint32(1) << np.arange(n, dtype=np.uint32))[None, :]
        codeword.append(((g != 0).astype(np.uint32) * weights).sum(axis=1, dtype=np.uint32))
        direction.append(d)
    realizes = np.ones(batch, dtype=bool)
    slots = p.side_info_slots()
    for j in range(n):
        m_row = np.zeros(batch, dtype=np.uint32)
        for d, g in zip(direction, codeword):
            m_row ^= ((d >> np.uint32(j)) & np.uint32(1)) * g
        for t_idx, (recv, k) in enumerate(slots):
            if recv == j + 1:
                used = (rows[:, n * c + t_idx] >> np.uint32(j)) & np.uint32(1)
                m_row ^= used * np.uint32(1 << (k - 1))
        realizes &= m_row == np.uint32(1 << j)
    return member, lam, realizes


def theorem1_verify(p: IndexCodingProblem, c: int, batch_bits: int = 16) -> Theorem1Result:
    """Classify length ``c`` by enumerating ``S'(c)`` and inspecting lambda over ``S(c)``."""
    if c < 1:
        raise ValueError("c must be positive")
    bits = s_prime_bits(p, c)
    _check_budget(f"S'({c}) enumeration", bits)
    base, gens = s_prime_space(p, c)
    gen_arr = np.array(gens, dtype=np.uint32).reshape(len(gens), len(base))
    low = min(batch_bits, len(gens))
    idx = np.arange(1 << low, dtype=np.uint64)
    table = np.zeros((1 << low, len(base)), dtype=np.uint32)
    for b in range(low):
        sel = ((idx >> np.uint64(b)) & np.uint64(1)).astype(np.uint32)
        table ^= sel[:, None] * gen_arr[b][None, :]

    histogram: Counter[int] = Counter()
    s_size = 0
    witness_index = None
    for high in range(1 << (len(gens) - low)):
        offset = np.array(base, dtype=np.uint32)
        for b in bits_of(high):
            offset ^= gen_arr[low + b]
        rows = table ^ offset[None, :]
        member, lam, realizes = _classify_batch(rows, p, c)
        if np.any(member & ~realizes):
            raise AssertionError("a column-group member failed to reproduce M = I")
        s_lam = lam[member]
        s_size += int(member.sum())
        for value, count in zip(*np.unique(s_lam, return_counts=True)):
            histogram[int(value)] += int(count)
        if witness_index is None:
            hits = np.nonzero(member & (lam > 0))[0]
            if hits.size:
                witness_index = (high << low) | int(hits[0])

    witness = None
    if witness_index is not None:
        rows = list(base)
        for b in bits_of(witness_index):
            rows = [r ^ g for r, g in zip(rows, gens[b])]
        witness = CandidateT(BitMatrix.from_words(rows, p.n), c)
    hist = dict(sorted(histogram.items()))
    return Theorem1Result(
        c=c,
        verdict=_verdict(s_size, hist),
        s_prime_size=1 << bits,
        s_size=s_size,
        lambda_histogram=hist,
        witness=witness,
        min_rank_length=optimal_length(p),
    )


def theorem1_verify_slow(p: IndexCodingProblem, c: int) -> Theorem1Result:
    """Per-candidate reference path built on the explicit B, F, A matrices."""
    histogram: Counter[int] = Counter()
    s_prime = s_size = 0
    witness = None
    for t in enumerate_S_prime(p, c):
        s_prime += 1
        if not lemma1_membership(t):
            continue
        if not netcode.is_solution(p, c, recover_decomposition(t, p)):
            raise AssertionError("a column-group member failed to reproduce M = I")
        s_size += 1
        lam = lambda_of(t)
        histogram[lam] += 1
        if lam and witness is None:
            witness = t
    hist = dict(sorted(histogram.items()))
    return Theorem1Result(c, _verdict(s_size, hist), s_prime, s_size, hist, witness, optimal_length(p))
