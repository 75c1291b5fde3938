"""Index-coding problem model, JSON ingestion and unicast normalization.

Message and receiver indices are 1-based everywhere outside bit positions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Sequence


class ProblemError(ValueError):
    """Base class for problems that cannot be loaded."""


class ProblemSyntaxError(ProblemError):
    pass


class ProblemValidationError(ProblemError):
    pass


@dataclass(frozen=True)
class Receiver:
    wants: int
    knows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.wants in self.knows:
            raise ProblemValidationError(f"receiver wanting x{self.wants} already knows it")
        if len(set(self.knows)) != len(self.knows):
            raise ProblemValidationError(f"duplicate entries in known set {list(self.knows)}")


@dataclass(frozen=True)
class IndexCodingProblem:
    """Single-unicast problem: receiver ``i`` wants ``x_i``."""

    n: int
    receivers: tuple[Receiver, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ProblemValidationError("need at least one message")
        if len(self.receivers) != self.n:
            raise ProblemValidationError(f"expected {self.n} receivers, got {len(self.receivers)}")
        for i, r in enumerate(self.receivers, start=1):
            if r.wants != i:
                raise ProblemValidationError(f"receiver {i} must want x{i}, wants x{r.wants}")
            for k in r.knows:
                if not 1 <= k <= self.n:
                    raise ProblemValidationError(f"receiver {i} knows x{k}, out of range 1..{self.n}")

    @classmethod
    def from_known(cls, known: Sequence[Sequence[int]]) -> IndexCodingProblem:
        """Build from the list of known sets K_1..K_n."""
        return cls(len(known), tuple(Receiver(i, tuple(k)) for i, k in enumerate(known, start=1)))

    @property
    def known(self) -> list[tuple[int, ...]]:
        return [r.knows for r in self.receivers]

    def known_mask(self, i: int) -> int:
        """Bitset of messages known to receiver ``i`` (1-based)."""
        mask = 0
        for k in self.receivers[i - 1].knows:
            mask |= 1 << (k - 1)
        return mask

    def side_info_slots(self) -> list[tuple[int, int]]:
        """(receiver, known message) pairs in side-information edge order."""
        return [(i, k) for i, r in enumerate(self.receivers, start=1) for k in r.knows]

    def is_single_uniprior(self) -> bool:
        known = self.known
        return all(len(k) == 1 for k in known) and len({k[0] for k in known}) == self.n


@dataclass(frozen=True)
class GeneralUnicastProblem:
    n: int
    receivers: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ProblemValidationError("need at least one message")
        seen: dict[int, int] = {}
        for idx, (wants, knows) in enumerate(self.receivers, start=1):
            if not wants:
                raise ProblemValidationError(f"receiver {idx} wants nothing")
            for k in (*wants, *knows):
                if not 1 <= k <= self.n:
                    raise ProblemValidationError(f"receiver {idx}: message index {k} out of range 1..{self.n}")
            if len(set(wants)) != len(wants) or len(set(knows)) != len(knows):
                raise ProblemValidationError(f"receiver {idx}: duplicate message indices")
            overlap = set(wants) & set(knows)
            if overlap:
                raise ProblemValidationError(
                    f"receiver {idx} both wants and knows {sorted(overlap)}"
                )
            for w in wants:
                if w in seen:
                    raise ProblemValidationError(
                        f"message {w} wanted by receivers {seen[w]} and {idx}; wanted sets must be disjoint"
                    )
                seen[w] = idx


def _index_list(value: Any, where: str, allow_scalar: bool = False) -> tuple[int, ...]:
    if allow_scalar and isinstance(value, int) and not isinstance(value, bool):
        return (value,)
    if not isinstance(value, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in value
    ):
        raise ProblemSyntaxError(f"{where} must be a list of integers")
    return tuple(value)


def parse_problem(text: str) -> GeneralUnicastProblem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemSyntaxError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "n" not in data or "receivers" not in data:
        raise ProblemSyntaxError('expected an object with keys "n" and "receivers"')
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ProblemSyntaxError('"n" must be an integer')
    if not isinstance(data["receivers"], list):
        raise ProblemSyntaxError('"receivers" must be a list')
    receivers = []
    for idx, entry in enumerate(data["receivers"], start=1):
        if not isinstance(entry, dict) or "wants" not in entry:
            raise ProblemSyntaxError(f'receiver {idx} must be an object with a "wants" key')
        wants = _index_list(entry["wants"], f"receiver {idx} wants", allow_scalar=True)
        knows = _index_list(entry.get("knows", []), f"receiver {idx} knows")
        receivers.append((wants, knows))
    return GeneralUnicastProblem(n, tuple(receivers))


def dump_problem(p: GeneralUnicastProblem | IndexCodingProblem) -> str:
    if isinstance(p, IndexCodingProblem):
        recs = [{"wants": r.wants, "knows": list(r.knows)} for r in p.receivers]
    else:
        recs = [{"wants": list(w), "knows": list(k)} for w, k in p.receivers]
    return json.dumps({"n": p.n, "receivers": recs}, indent=2) + "\n"


def to_single_unicast(p: GeneralUnicastProblem) -> IndexCodingProblem:
    """Replicate multi-message receivers, then order receivers by wanted message."""
    by_message: dict[int, tuple[int, ...]] = {}
    for wants, knows in p.receivers:
        for w in wants:
            by_message[w] = knows
    missing = [k for k in range(1, p.n + 1) if k not in by_message]
    if missing:
        names = ", ".join(f"x{k}" for k in missing)
        raise ProblemValidationError(
            f"uncovered message(s) {names}: no receiver wants them; remove them and renumber"
        )
    return IndexCodingProblem(
        p.n, tuple(Receiver(k, by_message[k]) for k in range(1, p.n + 1))
    )


def load_problem(text: str) -> IndexCodingProblem:
    return to_single_unicast(parse_problem(text))


def side_info_total(p: IndexCodingProblem) -> int:
    return sum(len(r.knows) for r in p.receivers)


def cyclic_uniprior(n: int) -> IndexCodingProblem:
    """Receiver i wants x_i and knows x_{i+1} (indices mod n)."""
    return IndexCodingProblem.from_known([[i % n + 1] for i in range(1, n + 1)])


def no_side_info(n: int) -> IndexCodingProblem:
    return IndexCodingProblem.from_known([[] for _ in range(n)])


def example_problems() -> dict[str, IndexCodingProblem]:
    """The four small worked instances, keyed by file stem."""
    return {
        "example1": cyclic_uniprior(3),
        "example2": IndexCodingProblem.from_known([[2, 3], [3], [1]]),
        "example3": IndexCodingProblem.from_known([[2], [3], [4, 1], [1]]),
        "example4": cyclic_uniprior(4),
    }
