"""Bitset graphs, neighborhoods, graph6 I/O and small labeled catalogs.

A vertex set is a plain ``int`` bitmask: bit ``v`` is set iff vertex ``v``
belongs to the set. Graphs hold one such mask per vertex, so every set
operation in the counting kernels is a single word operation.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import caps
from .errors import CapExceededError, GraphError

MAX_VERTICES = 64


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    """Vertices of a bitmask in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the bitmask of neighbors of ``v``.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency masks, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has a neighbor outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in members(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if not 1 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in members(self.adj[v]) if u < v]

    def num_edges(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def degree(self, v: int) -> int:
        _check_vertex(self, v)
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [nb.bit_count() for nb in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees())

    def max_degree(self) -> int:
        return max(self.degrees())

    def isolated(self) -> int:
        return mask_of(v for v in range(self.n) if not self.adj[v])

    def components(self) -> list[int]:
        """Connected components as vertex masks, ordered by least vertex."""
        seen = 0
        comps = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            comp = frontier = 1 << start
            while frontier:
                reach = 0
                for v in members(frontier):
                    reach |= self.adj[v]
                frontier = reach & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def induced(self, mask: int) -> Graph:
        """Induced subgraph on ``mask``, relabeled in increasing order."""
        verts = members(mask & self.full)
        if not verts:
            raise GraphError("induced subgraph on an empty vertex set")
        index = {v: i for i, v in enumerate(verts)}
        adj = tuple(mask_of(index[u] for u in members(self.adj[v] & mask)) for v in verts)
        return Graph(len(verts), adj)

    def is_bipartite(self) -> bool:
        side = [-1] * self.n
        for start in range(self.n):
            if side[start] >= 0:
                continue
            side[start] = 0
            stack = [start]
            while stack:
                v = stack.pop()
                for u in members(self.adj[v]):
                    if side[u] < 0:
                        side[u] = 1 - side[v]
                        stack.append(u)
                    elif side[u] == side[v]:
                        return False
        return True

    def to_graph6(self) -> str:
        return write_graph6(self)

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[int, ...]

    def __post_init__(self):
        for e in self.edges:
            if not e:
                raise GraphError("hypergraph edges must be nonempty")
            if e >> self.n:
                raise GraphError("hypergraph edge uses a vertex outside 0..n-1")

    def is_uniform(self, size: int) -> bool:
        return all(e.bit_count() == size for e in self.edges)


def _check_vertex(G: Graph, v: int) -> None:
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range for n={G.n}")


def open_neighborhood(G: Graph, v: int) -> int:
    _check_vertex(G, v)
    return G.adj[v]


def closed_neighborhood(G: Graph, v: int) -> int:
    _check_vertex(G, v)
    return G.adj[v] | 1 << v


def set_neighborhood(G: Graph, S: int, closed: bool = False) -> int:
    """N(S) or N[S] for a vertex mask ``S``."""
    if S & ~G.full:
        raise GraphError("vertex set uses a vertex outside the graph")
    out = S if closed else 0
    for v in members(S):
        out |= G.adj[v]
    return out


def regular_degree(G: Graph) -> int | None:
    degs = set(G.degrees())
    return degs.pop() if len(degs) == 1 else None


def bipartite_double_cover(G: Graph) -> Graph:
    """G x K_2: vertex (v, layer) is ``v + layer * n``."""
    n = G.n
    if 2 * n > MAX_VERTICES:
        raise GraphError(f"double cover would have {2 * n} > {MAX_VERTICES} vertices")
    adj = [G.adj[v] << n for v in range(n)] + [G.adj[v] for v in range(n)]
    return Graph(2 * n, tuple(adj))


def neighborhood_hypergraph(G: Graph, closed: bool = False) -> Hypergraph:
    if closed:
        return Hypergraph(G.n, tuple(G.adj[v] | 1 << v for v in range(G.n)))
    if G.isolated():
        raise GraphError("open neighborhood hypergraph of a graph with isolated vertices")
    return Hypergraph(G.n, G.adj)


# -- families ---------------------------------------------------------------


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise GraphError("part sizes must be nonnegative")
    return Graph.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star(k: int) -> Graph:
    """K_{1,k} with center 0."""
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def hypercube(d: int) -> Graph:
    if not 0 <= d <= 6:
        raise GraphError(f"hypercube dimension must be in 0..6, got {d}")
    n = 1 << d
    return Graph.from_edges(n, ((v, v ^ 1 << i) for v in range(n) for i in range(d) if v < v ^ 1 << i))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def disjoint_union(*graphs: Graph) -> Graph:
    if not graphs:
        raise GraphError("disjoint union of no graphs")
    n = sum(g.n for g in graphs)
    if n > MAX_VERTICES:
        raise GraphError(f"disjoint union has {n} > {MAX_VERTICES} vertices")
    adj: list[int] = []
    shift = 0
    for g in graphs:
        adj.extend(nb << shift for nb in g.adj)
        shift += g.n
    return Graph(n, tuple(adj))


FAMILIES = {
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "path": path,
    "cycle": cycle,
    "star": star,
    "petersen": petersen,
    "hypercube": hypercube,
    "disjoint_union": disjoint_union,
    "empty": empty,
    "e_loopless": empty,
}


def make_family(family: str, *params) -> Graph:
    """Build a named graph family, e.g. ``make_family("cycle", 4)``."""
    name = family.replace("-", "_")
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise GraphError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    try:
        return builder(*params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {family}: {params!r}") from exc


# -- graph6 -----------------------------------------------------------------


def _pairs(n: int) -> Iterator[tuple[int, int]]:
    # graph6 bit order: x(0,1), x(0,2), x(1,2), x(0,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def write_graph6(G: Graph) -> str:
    n = G.n
    if n <= 62:
        header = chr(63 + n)
    else:
        header = "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    bits = [G.adj[j] >> i & 1 for i, j in _pairs(n)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return header + body


def parse_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphError("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise GraphError(f"graph6 string contains characters outside '?'..'~': {s!r}")
    if s[0] != "~":
        n, body = ord(s[0]) - 63, s[1:]
    elif len(s) >= 2 and s[1] == "~":
        raise GraphError("graph6 eight-byte size header implies n > 64")
    else:
        if len(s) < 4:
            raise GraphError("truncated graph6 size header")
        n = 0
        for c in s[1:4]:
            n = n << 6 | (ord(c) - 63)
        body = s[4:]
    if n > MAX_VERTICES:
        raise GraphError(f"graph6 graph has {n} > {MAX_VERTICES} vertices")
    if n == 0:
        raise GraphError("graph6 graph with zero vertices")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    value = 0
    for c in body:
        value = value << 6 | (ord(c) - 63)
    pad = 6 * len(body) - nbits
    if value & ((1 << pad) - 1):
        raise GraphError("graph6 padding bits are not zero")
    value >>= pad
    adj = [0] * n
    for k, (i, j) in enumerate(_pairs(n)):
        if value >> (nbits - 1 - k) & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return Graph(n, tuple(adj))


# -- labeled catalogs ---------------------------------------------------------


def _check_cap(n: int, limit: int | None, default: int, what: str) -> None:
    cap = default if limit is None else limit
    if n > cap:
        raise CapExceededError(f"{what}: n={n} exceeds cap {cap} (pass max_n to override)")


def enumerate_labeled_graphs(n: int, max_n: int | None = None) -> Iterator[Graph]:
    """All 2^(n choose 2) labeled graphs on n vertices, in graph6 bit order."""
    _check_cap(n, max_n, caps.MAX_LABELED_GRAPH_N, "labeled graphs")
    pairs = list(_pairs(n))
    for code in range(1 << len(pairs)):
        adj = [0] * n
        for k, (i, j) in enumerate(pairs):
            if code >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        yield Graph(n, tuple(adj))


def prufer_decode(seq: Sequence[int], n: int) -> Graph:
    """Labeled tree on n >= 2 vertices from its Prüfer sequence of length n-2."""
    if n < 2 or len(seq) != n - 2:
        raise GraphError(f"Prüfer sequence for n={n} must have length {n - 2}")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph.from_edges(n, edges)


def enumerate_labeled_trees(n: int, max_n: int | None = None) -> Iterator[Graph]:
    """All n^(n-2) labeled trees, by Prüfer decoding in lexicographic order."""
    _check_cap(n, max_n, caps.MAX_LABELED_TREE_N, "labeled trees")
    if n == 1:
        yield Graph(1, (0,))
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield prufer_decode(seq, n)


def enumerate_labeled_regular(n: int, r: int, max_n: int | None = None) -> Iterator[Graph]:
    """All labeled r-regular graphs on n vertices, each exactly once.

    Vertices are completed in index order: vertex v picks its missing
    neighbors among higher vertices that still have spare degree.
    """
    _check_cap(n, max_n, caps.MAX_LABELED_REGULAR_N, "labeled regular graphs")
    if r < 0 or r >= max(n, 1) or (n * r) % 2:
        return
    adj = [0] * n

    def extend(v: int) -> Iterator[Graph]:
        if v == n:
            yield Graph(n, tuple(adj))
            return
        need = r - adj[v].bit_count()
        spare = [u for u in range(v + 1, n) if adj[u].bit_count() < r]
        if need > len(spare):
            return
        for chosen in itertools.combinations(spare, need):
            for u in chosen:
                adj[v] |= 1 << u
                adj[u] |= 1 << v
            yield from extend(v + 1)
            for u in chosen:
                adj[v] &= ~(1 << u)
                adj[u] &= ~(1 << v)

    yield from extend(0)
