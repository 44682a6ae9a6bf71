"""Exact enumeration kernels.

Two families of kernels live here:

* colorings (legal neighborhood colorings, homomorphisms, existence
  homomorphisms) use backtracking over vertices in index order, testing
  each vertex's constraint as soon as its last relevant vertex is colored;
* subset statistics (dominating, strong dominating, minimal dominating,
  independent and maximal independent sets) scan all 2^n vertex masks in
  numpy blocks with word-parallel neighborhood unions.

Every count is an exact Python ``int``; weighted totals are ``Fraction``.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import caps
from .conditions import Activation, ColoringCondition
from .errors import ConditionError, GraphError
from .graph import Graph, cycle, members

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))

MODES = ("open", "closed")


@dataclass(frozen=True)
class ImageGraph:
    """Symmetric target graph on q <= 16 vertices; loops allowed."""

    q: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.q <= 16:
            raise GraphError(f"image graph needs 1..16 vertices, got {self.q}")
        if len(self.adj) != self.q:
            raise GraphError("adjacency length does not match q")
        for v, nb in enumerate(self.adj):
            if nb >> self.q:
                raise GraphError(f"image vertex {v} has a neighbor outside 0..{self.q - 1}")
            for u in members(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"image adjacency not symmetric between {v} and {u}")

    @classmethod
    def from_edges(cls, q: int, edges: Iterable[Sequence[int]]) -> ImageGraph:
        adj = [0] * q
        for u, v in edges:
            if not (0 <= u < q and 0 <= v < q):
                raise GraphError(f"image edge ({u}, {v}) out of range for q={q}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(q, tuple(adj))

    @classmethod
    def from_graph(cls, G: Graph) -> ImageGraph:
        return cls(G.n, G.adj)

    @classmethod
    def h_ind(cls) -> ImageGraph:
        """Vertex 0 unlooped, vertex 1 looped, edge 01."""
        return cls.from_edges(2, [(0, 1), (1, 1)])

    @classmethod
    def looped_empty(cls, q: int) -> ImageGraph:
        """E_q: a loop at every vertex and no other edges."""
        return cls.from_edges(q, [(v, v) for v in range(q)])

    @classmethod
    def complete(cls, q: int) -> ImageGraph:
        return cls.from_edges(q, [(u, v) for u in range(q) for v in range(u + 1, q)])

    @classmethod
    def load(cls, path: str | Path) -> ImageGraph:
        """From JSON ``{"q": 2, "edges": [[0, 1], [1, 1]]}``."""
        try:
            data = json.loads(Path(path).read_text())
            return cls.from_edges(int(data["q"]), data["edges"])
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise GraphError(f"cannot load image graph from {path}: {exc}") from None

    @property
    def full(self) -> int:
        return (1 << self.q) - 1

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def matrix(self) -> np.ndarray:
        return np.array([[self.adj[a] >> b & 1 for b in range(self.q)] for a in range(self.q)], dtype=bool)


class Polynomial:
    """Integer polynomial in one variable, coefficients indexed by degree."""

    def __init__(self, coefficients: Iterable[int]):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: tuple[int, ...] = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0 if not isinstance(x, Fraction) else Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: Polynomial) -> Polynomial:
        m = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(self[k] + other[k] for k in range(m))

    def __mul__(self, other: Polynomial) -> Polynomial:
        out = [0] * (len(self.coefficients) + len(other.coefficients))
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Polynomial(out)

    def __pow__(self, e: int) -> Polynomial:
        out = Polynomial([1])
        for _ in range(e):
            out = out * self
        return out

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coefficients)})"

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            coef = "" if c == 1 and k else str(c)
            var = "" if k == 0 else ("μ" if k == 1 else f"μ^{k}")
            terms.append(f"{coef}{var}")
        return " + ".join(terms) or "0"


# -- coloring kernels ----------------------------------------------------------


def _weights(lam: Activation | None, k: int):
    """(denominator, integer weights) so weighted sums stay in integers."""
    if lam is None:
        return 1, None
    if len(lam) != k:
        raise ConditionError(f"activation has {len(lam)} weights for {k} colors")
    return lam.scaled_integers()


def _finish(total: int, denom: int, n: int, weighted: bool):
    return Fraction(total, denom**n) if weighted else total


def _neighborhoods(G: Graph, mode: str) -> list[int]:
    if mode not in MODES:
        raise ValueError(f"mode must be 'open' or 'closed', got {mode!r}")
    if mode == "closed":
        return [G.adj[v] | 1 << v for v in range(G.n)]
    return list(G.adj)


def _checkpoints(hoods: list[int], n: int) -> list[list[list[int]]]:
    """Distinct nonempty neighborhoods grouped by their highest vertex."""
    checks: list[list[list[int]]] = [[] for _ in range(n)]
    for h in sorted(set(hoods)):
        if h:
            checks[h.bit_length() - 1].append(members(h))
    return checks


def count_legal_colorings(
    G: Graph,
    cond: ColoringCondition,
    mode: str = "closed",
    lam: Activation | None = None,
    cap_bits: int | None = None,
):
    """Number (or total weight) of L-legal (closed) neighborhood colorings.

    Returns an ``int`` when ``lam`` is None, otherwise a ``Fraction``.
    """
    k, n = cond.k, G.n
    hoods = _neighborhoods(G, mode)
    if k == 0:
        raise ConditionError("cannot color a nonempty graph with zero colors")
    caps.check_space(k, n, cap_bits, caps.COLORING_CAP_BITS, "legal colorings")
    denom, ints = _weights(lam, k)
    weighted = ints is not None

    checks = _checkpoints(hoods, n)
    if 0 in hoods and not cond.accepts((0,) * k):
        return _finish(0, denom, n, weighted)

    colors = [0] * n
    verdicts: dict[tuple[int, ...], bool] = {}

    def legal(hood: list[int]) -> bool:
        counts = [0] * k
        for w in hood:
            counts[colors[w]] += 1
        key = tuple(counts)
        ok = verdicts.get(key)
        if ok is None:
            ok = verdicts[key] = cond.accepts(key)
        return ok

    def extend(i: int) -> int:
        if i == n:
            return 1
        total = 0
        here = checks[i]
        for c in range(k):
            colors[i] = c
            if all(legal(h) for h in here):
                sub = extend(i + 1)
                if sub:
                    total += sub * ints[c] if weighted else sub
        return total

    return _finish(extend(0), denom, n, weighted)


def legal_colorings(G: Graph, cond: ColoringCondition, mode: str = "closed", cap_bits: int | None = None):
    """Yield every L-legal (closed) neighborhood coloring as a tuple of colors."""
    k, n = cond.k, G.n
    hoods = _neighborhoods(G, mode)
    if k == 0:
        raise ConditionError("cannot color a nonempty graph with zero colors")
    caps.check_space(k, n, cap_bits, caps.COLORING_CAP_BITS, "legal colorings")
    checks = _checkpoints(hoods, n)
    if 0 in hoods and not cond.accepts((0,) * k):
        return
    colors = [0] * n

    def legal(hood):
        counts = [0] * k
        for w in hood:
            counts[colors[w]] += 1
        return cond.accepts(counts)

    def extend(i):
        if i == n:
            yield tuple(colors)
            return
        for c in range(k):
            colors[i] = c
            if all(legal(h) for h in checks[i]):
                yield from extend(i + 1)

    yield from extend(0)


def hom_count(G: Graph, H: ImageGraph, lam: Activation | None = None, cap_bits: int | None = None):
    """hom(G, H), or Z^lam(G, H) when an activation over V(H) is given."""
    n = G.n
    caps.check_space(H.q, n, cap_bits, caps.COLORING_CAP_BITS, "homomorphisms")
    denom, ints = _weights(lam, H.q)
    weighted = ints is not None
    earlier = [members(G.adj[v] & ((1 << v) - 1)) for v in range(n)]
    colors = [0] * n

    def extend(i: int) -> int:
        if i == n:
            return 1
        cand = H.full
        for u in earlier[i]:
            cand &= H.adj[colors[u]]
        total = 0
        for c in members(cand):
            colors[i] = c
            sub = extend(i + 1)
            if sub:
                total += sub * ints[c] if weighted else sub
        return total

    return _finish(extend(0), denom, n, weighted)


def xhom_count(G: Graph, H: ImageGraph, cap_bits: int | None = None) -> int:
    """Number of maps where every vertex has a neighbor witnessing an H-edge."""
    n = G.n
    caps.check_space(H.q, n, cap_bits, caps.COLORING_CAP_BITS, "existence homomorphisms")
    if G.isolated():
        return 0
    checks: list[list[tuple[int, list[int]]]] = [[] for _ in range(n)]
    for v in range(n):
        last = max(v, G.adj[v].bit_length() - 1)
        checks[last].append((v, members(G.adj[v])))
    colors = [0] * n

    def witnessed(v: int, nbrs: list[int]) -> bool:
        row = H.adj[colors[v]]
        return any(row >> colors[w] & 1 for w in nbrs)

    def extend(i: int) -> int:
        if i == n:
            return 1
        total = 0
        here = checks[i]
        for c in range(H.q):
            colors[i] = c
            if all(witnessed(v, nbrs) for v, nbrs in here):
                total += extend(i + 1)
        return total

    return extend(0)


def identity_count(G: Graph, cap_bits: int | None = None) -> int:
    """id(G) = xhom(G, E_2)."""
    return xhom_count(G, ImageGraph.looped_empty(2), cap_bits=cap_bits)


def _all_maps(q: int, n: int) -> np.ndarray:
    """Every map [n] -> [q] as rows of a (q^n, n) array, vertex 0 fastest."""
    idx = np.arange(q**n, dtype=np.int64)
    return np.stack([(idx // q**v) % q for v in range(n)], axis=1)


def xhom_count_batch(graphs: Sequence[Graph], H: ImageGraph, cap_bits: int | None = None) -> list[int]:
    """xhom(G, H) for many graphs on the same vertex count at once.

    Brute force over all q^n maps, vectorized across maps and graphs.
    """
    if not graphs:
        return []
    n = graphs[0].n
    if any(g.n != n for g in graphs):
        raise GraphError("batched graphs must share a vertex count")
    caps.check_space(H.q, n, cap_bits, min(caps.COLORING_CAP_BITS, 20), "batched existence homomorphisms")
    maps = _all_maps(H.q, n)
    hm = H.matrix()
    # witness[u][m, w]: map m sends edge uw to an H-edge
    witness = [hm[maps[:, [u]], maps].astype(np.float32) for u in range(n)]
    out: list[int] = []
    chunk = max(1, (1 << 22) // max(1, len(maps)))
    for start in range(0, len(graphs), chunk):
        block = graphs[start : start + chunk]
        A = np.array(
            [[[g.adj[u] >> w & 1 for w in range(n)] for u in range(n)] for g in block],
            dtype=np.float32,
        )
        ok = np.ones((len(block), len(maps)), dtype=bool)
        for u in range(n):
            ok &= (A[:, u, :] @ witness[u].T) > 0
        out.extend(int(c) for c in ok.sum(axis=1))
    return out


# -- subset kernels ------------------------------------------------------------

_BLOCK_BITS = 16


def _subset_blocks(G: Graph, cap_bits: int | None, what: str):
    """Yield (high_mask, sets, open_unions) covering all 2^n subsets.

    ``sets`` holds the subsets of one block as uint64 masks, and
    ``open_unions[i]`` is N(sets[i]).
    """
    n = G.n
    caps.check_space(2, n, cap_bits, caps.SUBSET_CAP_BITS, what)
    low_bits = min(n, _BLOCK_BITS)
    low_sets = np.arange(1 << low_bits, dtype=np.uint64)
    low_open = np.zeros(1 << low_bits, dtype=np.uint64)
    for v in range(low_bits):
        low_open[1 << v : 2 << v] = low_open[: 1 << v] | np.uint64(G.adj[v])
    for h in range(1 << (n - low_bits)):
        hi = h << low_bits
        hi_open = 0
        for v in members(hi):
            hi_open |= G.adj[v]
        yield hi, low_sets | np.uint64(hi), low_open | np.uint64(hi_open), low_open


def _dominated(sets, opens, full, strong: bool):
    union = opens if strong else opens | sets
    return union == full


def dominating_polynomial(G: Graph, strong: bool = False, cap_bits: int | None = None) -> Polynomial:
    """D_G(mu) (or the strong version D^s_G(mu)) by subset enumeration."""
    full = np.uint64(G.full)
    coeffs = np.zeros(G.n + 1, dtype=np.int64)
    for _, sets, opens, _low in _subset_blocks(G, cap_bits, "dominating polynomial"):
        good = sets[_dominated(sets, opens, full, strong)]
        coeffs += np.bincount(np.bitwise_count(good), minlength=G.n + 1)
    return Polynomial(int(c) for c in coeffs)


def count_dominating_sets(G: Graph, strong: bool = False, cap_bits: int | None = None) -> int:
    return dominating_polynomial(G, strong, cap_bits)(1)


def dominating_family(G: Graph, strong: bool = False, cap_bits: int | None = None) -> np.ndarray:
    """All (strong) dominating sets as a sorted uint64 mask array."""
    full = np.uint64(G.full)
    parts = [
        sets[_dominated(sets, opens, full, strong)]
        for _, sets, opens, _low in _subset_blocks(G, cap_bits, "dominating sets")
    ]
    return np.concatenate(parts)


def count_minimal_dominating_sets(G: Graph, cap_bits: int | None = None) -> int:
    n, full = G.n, np.uint64(G.full)
    low_bits = min(n, _BLOCK_BITS)
    index = np.arange(1 << low_bits, dtype=np.int64)
    total = 0
    for hi, sets, opens, low_open in _subset_blocks(G, cap_bits, "minimal dominating sets"):
        minimal = (opens | sets) == full
        hi_members = members(hi)
        # N(S - v) for low v: low part changes, high part fixed
        hi_open = 0
        for u in hi_members:
            hi_open |= G.adj[u]
        hi_open = np.uint64(hi_open)
        for v in range(low_bits):
            bit = np.uint64(1 << v)
            has = (sets & bit) != 0
            without = (low_open[index ^ (1 << v)] | hi_open) | (sets ^ bit)
            minimal &= ~has | (without != full)
        for v in hi_members:
            bit = 1 << v
            rest = 0
            for u in hi_members:
                if u != v:
                    rest |= G.adj[u]
            without = (low_open | np.uint64(rest)) | (sets ^ np.uint64(bit))
            minimal &= without != full
        total += int(np.count_nonzero(minimal))
    return total


def count_independent_sets(G: Graph, cap_bits: int | None = None) -> int:
    total = 0
    for _, sets, opens, _low in _subset_blocks(G, cap_bits, "independent sets"):
        total += int(np.count_nonzero((sets & opens) == 0))
    return total


def count_maximal_independent_sets(G: Graph, cap_bits: int | None = None) -> int:
    full = np.uint64(G.full)
    total = 0
    for _, sets, opens, _low in _subset_blocks(G, cap_bits, "maximal independent sets"):
        total += int(np.count_nonzero(((sets & opens) == 0) & ((sets | opens) == full)))
    return total


STRUCTURES = {
    "ds": lambda G, cap_bits=None: count_dominating_sets(G, False, cap_bits),
    "sds": lambda G, cap_bits=None: count_dominating_sets(G, True, cap_bits),
    "minimal-ds": count_minimal_dominating_sets,
    "mis": count_maximal_independent_sets,
    "is": count_independent_sets,
}


# -- closed forms ---------------------------------------------------------------


def fibonacci(m: int) -> int:
    """F_m with F_0 = F_1 = 1."""
    if m < 0:
        raise ValueError("Fibonacci index must be nonnegative")
    a, b = 1, 1
    for _ in range(m):
        a, b = b, a + b
    return a


def path_id_closed_form(n: int) -> int:
    """id(P_n) = 2 F_{n-2}."""
    if n < 2:
        raise GraphError(f"path closed form needs n >= 2, got {n}")
    return 2 * fibonacci(n - 2)


@lru_cache(maxsize=None)
def _cycle_base(n: int) -> int:
    return identity_count(cycle(n))


def cycle_xhom_closed_form(n: int) -> int:
    """c_n = xhom(C_n, E_2): brute-forced for n <= 6, then c_n = 2c_{n-1} - c_{n-2} + c_{n-4}."""
    if n < 3:
        raise GraphError(f"cycle closed form needs n >= 3, got {n}")
    c = {m: _cycle_base(m) for m in range(3, 7)}
    for m in range(7, n + 1):
        c[m] = 2 * c[m - 1] - c[m - 2] + c[m - 4]
    return c[n]


__all__ = [
    "ImageGraph",
    "Polynomial",
    "count_legal_colorings",
    "legal_colorings",
    "hom_count",
    "xhom_count",
    "xhom_count_batch",
    "identity_count",
    "dominating_polynomial",
    "count_dominating_sets",
    "dominating_family",
    "count_minimal_dominating_sets",
    "count_independent_sets",
    "count_maximal_independent_sets",
    "path_id_closed_form",
    "cycle_xhom_closed_form",
    "fibonacci",
    "STRUCTURES",
]
