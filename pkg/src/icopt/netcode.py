"""Equivalent network code of a single-unicast index-coding problem.

Edge orderings used for the matrices:

* source side ``Y``: (x_1,l_1) .. (x_1,l_c), (x_2,l_1) .. (x_n,l_c), then the
  side-information edges grouped by receiver in known-set order;
* receiver side ``Y'``: (l'_1,R_1) .. (l'_1,R_n), (l'_2,R_1) .. (l'_c,R_n),
  then the same side-information tail.

``A`` maps messages to ``Y``, ``F`` maps ``Y`` to ``Y'`` and ``B`` maps ``Y'`` to
the decoded outputs, so ``M = B F A``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .gf2 import BitMatrix, Subspace, bits_of
from .problem import IndexCodingProblem, side_info_total

SOURCE = "source"
BROADCAST = "broadcast"
DELIVERY = "delivery"
SIDE_INFO = "side_info"


@dataclass(frozen=True)
class Edge:
    tail: str
    head: str
    kind: str


@dataclass(frozen=True)
class NetworkGraph:
    n: int
    c: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class TransferDecomposition:
    """Coefficients fixing ``F`` and ``B`` for one length-``c`` code.

    ``beta`` is c x n: row ``i`` holds beta_(x_k, l_i) at bit ``k - 1``, i.e. the
    i-th transmitted codeword.  ``eps`` is c x n: row ``i`` holds eps_(l_i, R_j)
    at bit ``j - 1``.  ``sigma[j - 1]`` is a bitmask over the positions of
    ``K_j`` saying which known messages receiver ``j`` adds in.
    """

    beta: BitMatrix
    eps: BitMatrix
    sigma: tuple[int, ...]

    @property
    def c(self) -> int:
        return self.beta.nrows


def edge_count(p: IndexCodingProblem, c: int) -> int:
    return (2 * p.n + 1) * c + side_info_total(p)


def build_graph(p: IndexCodingProblem, c: int) -> NetworkGraph:
    if c < 1:
        raise ValueError("length must be at least 1")
    n = p.n
    xs = [f"x{k}" for k in range(1, n + 1)]
    ls = [f"l{i}" for i in range(1, c + 1)]
    lps = [f"l'{i}" for i in range(1, c + 1)]
    rs = [f"R{j}" for j in range(1, n + 1)]
    edges = [Edge(x, l, SOURCE) for x in xs for l in ls]
    edges += [Edge(l, lp, BROADCAST) for l, lp in zip(ls, lps)]
    edges += [Edge(lp, r, DELIVERY) for lp in lps for r in rs]
    edges += [Edge(f"x{k}", f"R{j}", SIDE_INFO) for j, k in p.side_info_slots()]
    return NetworkGraph(n, c, tuple(xs + ls + lps + rs), tuple(edges))


def _dot_id(name: str) -> str:
    return '"' + name.replace('"', '\\"') + '"'


def export_dot(g: NetworkGraph) -> str:
    lines = ["digraph index_code {", "  rankdir=TB;"]
    for v in g.vertices:
        shape = "box" if v.startswith("R") else "circle"
        lines.append(f"  {_dot_id(v)} [shape={shape}];")
    for e in g.edges:
        attrs = ' [style=dashed]' if e.kind == SIDE_INFO else ""
        lines.append(f"  {_dot_id(e.tail)} -> {_dot_id(e.head)}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def build_A(p: IndexCodingProblem, c: int) -> BitMatrix:
    rows = [1 << k for k in range(p.n) for _ in range(c)]
    rows += [1 << (k - 1) for _, k in p.side_info_slots()]
    return BitMatrix.from_words(rows, p.n)


def build_F_B(p: IndexCodingProblem, beta: BitMatrix) -> BitMatrix:
    n, c = p.n, beta.nrows
    if beta.ncols != n:
        raise ValueError("beta must be c x n")
    rows = []
    for i in range(c):
        word = 0
        for k in bits_of(beta.rows[i]):
            word |= 1 << (k * c + i)
        rows.extend([word] * n)
    return BitMatrix.from_words(rows, n * c)


def build_F(p: IndexCodingProblem, c: int, beta: BitMatrix) -> BitMatrix:
    if beta.shape != (c, p.n):
        raise ValueError(f"beta must be {c} x {p.n}")
    return build_F_B(p, beta).block_diag(BitMatrix.identity(side_info_total(p)))


def build_B(p: IndexCodingProblem, c: int, eps: BitMatrix, sigma: Sequence[int]) -> BitMatrix:
    n = p.n
    if eps.shape != (c, n):
        raise ValueError(f"eps must be {c} x {n}")
    if len(sigma) != n:
        raise ValueError("need one side-information mask per receiver")
    offset = n * c
    rows = []
    for j in range(n):
        word = 0
        for i in range(c):
            if (eps.rows[i] >> j) & 1:
                word |= 1 << (i * n + j)
        width = len(p.receivers[j].knows)
        if sigma[j] >> width:
            raise ValueError(f"sigma for receiver {j + 1} exceeds its known set")
        word |= sigma[j] << offset
        offset += width
        rows.append(word)
    return BitMatrix.from_words(rows, n * c + side_info_total(p))


def matrices(p: IndexCodingProblem, d: TransferDecomposition) -> tuple[BitMatrix, BitMatrix, BitMatrix]:
    c = d.c
    return build_A(p, c), build_F(p, c, d.beta), build_B(p, c, d.eps, d.sigma)


def transfer_matrix(p: IndexCodingProblem, c: int, d: TransferDecomposition) -> BitMatrix:
    if d.c != c:
        raise ValueError("decomposition length does not match c")
    a, f, b = matrices(p, d)
    return b @ f @ a


def is_solution(p: IndexCodingProblem, c: int, d: TransferDecomposition) -> bool:
    return transfer_matrix(p, c, d) == BitMatrix.identity(p.n)


def encoding_of(d: TransferDecomposition) -> list[int]:
    """Codewords as message bitsets: bit k-1 set iff x_k is in the XOR."""
    return list(d.beta.rows)


def beta_from_F_B(f_b: BitMatrix, n: int, c: int) -> BitMatrix:
    """Read the beta coefficients back out of an ``F_B`` block."""
    rows = []
    for i in range(c):
        word = f_b.rows[i * n]
        rows.append(sum(1 << k for k in range(n) if (word >> (k * c + i)) & 1))
    return BitMatrix.from_words(rows, n)


def decomposition_for_code(p: IndexCodingProblem, codewords: Sequence[int]) -> TransferDecomposition:
    """Pick eps/sigma so the given codewords decode at every receiver.

    For each receiver the lexicographically smallest sigma (known-set order) that
    admits a decoding is used; eps is then the lexicographically smallest
    combination of codewords completing it.
    """
    n, c = p.n, len(codewords)
    span = Subspace.span(codewords, n)
    eps_rows = [0] * c
    sigma = []
    for j, r in enumerate(p.receivers):
        width = len(r.knows)
        target_eps = None
        for flags in itertools.product((0, 1), repeat=width):
            side = sum(1 << (k - 1) for k, f in zip(r.knows, flags) if f)
            target = (1 << j) ^ side
            if target not in span:
                continue
            for coeffs in itertools.product((0, 1), repeat=c):
                acc = 0
                for a, g in zip(coeffs, codewords):
                    if a:
                        acc ^= g
                if acc == target:
                    target_eps = coeffs
                    break
            sigma.append(sum(f << t for t, f in enumerate(flags)))
            break
        if target_eps is None:
            raise ValueError(f"receiver {j + 1} cannot decode x{j + 1} from this code")
        for i, a in enumerate(target_eps):
            if a:
                eps_rows[i] |= 1 << j
    return TransferDecomposition(
        BitMatrix.from_words(codewords, n),
        BitMatrix.from_words(eps_rows, n),
        tuple(sigma),
    )
