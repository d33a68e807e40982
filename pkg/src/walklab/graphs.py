"""Simple undirected graphs, basic constructors, random models and I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import Graph6ParseError, PreconditionError


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "nbrs", "_sets", "_m")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 1:
            raise PreconditionError("a graph needs at least one vertex")
        sets = [set() for _ in range(n)]
        m = 0
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            if v in sets[u]:
                raise PreconditionError(f"repeated edge ({u}, {v})")
            sets[u].add(v)
            sets[v].add(u)
            m += 1
        self.n = n
        self._sets = tuple(frozenset(s) for s in sets)
        self.nbrs = tuple(tuple(sorted(s)) for s in sets)
        self._m = m

    @classmethod
    def from_adjacency(cls, A) -> "Graph":
        A = np.asarray(A)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise PreconditionError("adjacency matrix must be square")
        iu, ju = np.nonzero(np.triu(A, 1))
        if not np.array_equal(A.astype(bool), A.T.astype(bool)):
            raise PreconditionError("adjacency matrix must be symmetric")
        if np.any(np.diag(A)):
            raise PreconditionError("adjacency matrix has loops")
        return cls(A.shape[0], zip(iu.tolist(), ju.tolist()))

    # -- queries ----------------------------------------------------------

    @property
    def m(self) -> int:
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def neighbor_set(self, v: int) -> frozenset:
        return self._sets[v]

    def degree(self, v: int) -> int:
        return len(self.nbrs[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.nbrs]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.nbrs[u] if u < v]

    def adjacency_matrix(self) -> list[list[int]]:
        A = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges():
            A[u][v] = A[v][u] = 1
        return A

    def adjacency_array(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges():
            A[u, v] = A[v, u] = 1
        return A

    def distances_from(self, s: int) -> list[int]:
        """BFS distances; -1 for unreachable vertices."""
        dist = [-1] * self.n
        dist[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.nbrs[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.nbrs[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return all(d >= 0 for d in self.distances_from(0))

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    def is_tree(self) -> bool:
        return self.m == self.n - 1 and self.is_connected()

    # -- derived graphs ---------------------------------------------------

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph, vertices renumbered in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u in vertices for v in self.nbrs[u]
                 if v in index and index[u] < index[v]]
        return Graph(len(vertices), edges), index

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def with_edges(self, extra: Iterable[Sequence[int]], n: int | None = None) -> "Graph":
        return Graph(self.n if n is None else n, list(self.edges()) + [tuple(e) for e in extra])

    def check_invariants(self) -> None:
        for u in range(self.n):
            if u in self._sets[u]:
                raise AssertionError(f"loop at {u}")
            for v in self._sets[u]:
                if u not in self._sets[v]:
                    raise AssertionError(f"asymmetric edge {u}-{v}")
        if sum(len(s) for s in self._sets) != 2 * self._m:
            raise AssertionError("edge count mismatch")

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._sets == other._sets

    def __hash__(self) -> int:
        return hash((self.n, self._sets))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    root: int

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise PreconditionError(f"root {self.root} not a vertex of {self.graph!r}")


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    marked: Mapping[str, int] = field(default_factory=dict)
    extra: Mapping[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for label, v in self.marked.items():
            if not 0 <= v < self.graph.n:
                raise PreconditionError(f"marked vertex {label}={v} out of range")

    def rooted(self, label: str) -> RootedGraph:
        return RootedGraph(self.graph, self.marked[label])


# ---------------------------------------------------------------------------
# Elementary constructors
# ---------------------------------------------------------------------------

def path(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("complete graph needs n >= 1")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def vertex_deleted(G: Graph, v: int) -> Graph:
    """G minus ``v``; surviving vertices keep their relative order."""
    if not 0 <= v < G.n:
        raise PreconditionError(f"vertex {v} not in graph")
    if G.n == 1:
        raise PreconditionError("cannot delete the only vertex")
    keep = [u for u in range(G.n) if u != v]
    return G.induced(keep)[0]


def shift_down(u: int, v: int) -> int:
    """Index of ``u`` after deleting ``v``."""
    return u - 1 if u > v else u


def disjoint_union(G: Graph, H: Graph) -> Graph:
    return Graph(G.n + H.n, G.edges() + [(u + G.n, v + G.n) for u, v in H.edges()])


def coalescence(G: RootedGraph, H: RootedGraph) -> RootedGraph:
    """Identify the roots of G and H. G keeps its numbering; H's other
    vertices follow in order."""
    g, h = G.graph, H.graph
    index = {}
    nxt = g.n
    for u in range(h.n):
        if u == H.root:
            index[u] = G.root
        else:
            index[u] = nxt
            nxt += 1
    edges = g.edges() + [(index[u], index[v]) for u, v in h.edges()]
    return RootedGraph(Graph(g.n + h.n - 1, edges), G.root)


def coalescence_map(G: RootedGraph, H: RootedGraph) -> dict[int, int]:
    """Where each vertex of H lands inside ``coalescence(G, H)``."""
    out, nxt = {}, G.graph.n
    for u in range(H.graph.n):
        if u == H.root:
            out[u] = G.root
        else:
            out[u] = nxt
            nxt += 1
    return out


def graftage(G: RootedGraph, H: RootedGraph) -> RootedGraph:
    """Join the roots of disjoint copies of G and H to a new vertex, the new root.

    G occupies ``0..|G|-1``, H the next ``|H|`` indices, the new vertex is last.
    """
    g, h = G.graph, H.graph
    w = g.n + h.n
    edges = (g.edges() + [(u + g.n, v + g.n) for u, v in h.edges()]
             + [(G.root, w), (H.root + g.n, w)])
    return RootedGraph(Graph(w + 1, edges), w)


def join_by_edge(G: Graph, v: int, H: Graph, u: int) -> Graph:
    """Disjoint union plus the edge {v, u + |G|}."""
    return Graph(G.n + H.n, G.edges() + [(a + G.n, b + G.n) for a, b in H.edges()]
                 + [(v, u + G.n)])


def y_graph(n: int) -> Fixture:
    """P_{n-2} with two extra leaves on one end; ``u`` is the far end."""
    if n < 4:
        raise PreconditionError("Y_n needs n >= 4")
    edges = [(i, i + 1) for i in range(n - 3)] + [(n - 3, n - 2), (n - 3, n - 1)]
    return Fixture(f"y{n}", Graph(n, edges), {"u": 0})


def path_fixture(n: int) -> Fixture:
    return Fixture(f"p{n}", path(n), {"v": 0})


def tadpole(cycle_len: int = 6, s: int = 1) -> Graph:
    """Cycle 0..cycle_len-1 with a pendant path of ``s`` vertices hung at vertex 0.

    The path vertex adjacent to the cycle comes last, so ``cycle_len`` is the
    free end.
    """
    if s < 1:
        raise PreconditionError("tadpole tail needs s >= 1")
    if cycle_len < 3:
        raise PreconditionError("tadpole cycle needs length >= 3")
    c = cycle_len
    edges = [(i, (i + 1) % c) for i in range(c)]
    edges += [(c + i, c + i + 1) for i in range(s - 1)]
    edges.append((c + s - 1, 0))
    return Graph(c + s, edges)


def pad_with_pendants(pair: tuple[Fixture, Fixture], target_n: int,
                      labels: tuple[str, str] = ("v", "u")) -> tuple[Fixture, Fixture]:
    """Hang ``target_n - n`` new leaves on the marked root of each fixture."""
    out = []
    for fx, label in zip(pair, labels):
        g = fx.graph
        extra = target_n - g.n
        if extra < 0:
            raise PreconditionError(f"target {target_n} below current size {g.n}")
        root = fx.marked[label]
        g2 = g.with_edges([(root, g.n + i) for i in range(extra)], n=target_n)
        out.append(Fixture(fx.name if extra == 0 else f"{fx.name}+{extra}", g2,
                           dict(fx.marked), dict(fx.extra)))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# Randomness
# ---------------------------------------------------------------------------

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Per-task sub-seed: splitmix64 applied to the seed, then mixed with the index."""
    return splitmix64(splitmix64(seed & _MASK64) ^ (index & _MASK64))


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed & _MASK64)


def prufer_decode(code: Sequence[int], n: int) -> Graph:
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    degree = [1] * n
    for c in code:
        degree[c] += 1
    import heapq
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for c in code:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, c))
        degree[c] -= 1
        if degree[c] == 1:
            heapq.heappush(leaves, c)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Graph(n, edges)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labeled tree via a uniform Pruefer code."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if n <= 2:
        return prufer_decode((), n)
    code = _rng(seed).integers(0, n, size=n - 2).tolist()
    return prufer_decode(code, n)


def random_gnp_matrix(n: int, p: float, seed: int) -> np.ndarray:
    if not 0.0 <= p <= 1.0:
        raise PreconditionError("p must lie in [0, 1]")
    upper = np.triu(_rng(seed).random((n, n)) < p, 1)
    A = (upper | upper.T).astype(np.int64)
    return A


def random_gnp(n: int, p: float, seed: int) -> Graph:
    return Graph.from_adjacency(random_gnp_matrix(n, p, seed))


def random_connected_graph(n: int, seed: int, p: float = 0.4) -> Graph:
    """Random spanning tree plus independent extra edges; always connected."""
    rng = _rng(seed)
    t = random_tree(n, int(rng.integers(0, 2 ** 63)))
    extra = [(i, j) for i in range(n) for j in range(i + 1, n)
             if not t.has_edge(i, j) and rng.random() < p]
    return t.with_edges(extra)


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError("graph6 supports at most 258047 vertices here")


def to_graph6(G: Graph) -> str:
    bits = [1 if G.has_edge(i, j) else 0 for j in range(1, G.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(63 + int("".join(map(str, bits[k:k + 6])), 2))
                   for k in range(0, len(bits), 6))
    return _encode_n(G.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
        base = 10
    else:
        base = 0
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6ParseError(f"invalid graph6 character {ch!r}", base + i)
    if not s:
        raise Graph6ParseError("empty graph6 string", base)
    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    else:
        if len(s) < 4:
            raise Graph6ParseError("truncated vertex count", base + len(s))
        if s[1] == "~":
            raise Graph6ParseError("graphs above 258047 vertices unsupported", base + 1)
        n = ((ord(s[1]) - 63) << 12) | ((ord(s[2]) - 63) << 6) | (ord(s[3]) - 63)
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(s) - pos != need:
        raise Graph6ParseError(
            f"expected {need} data bytes for n={n}, found {len(s) - pos}",
            base + min(len(s), pos + need))
    if n == 0:
        raise Graph6ParseError("graph with zero vertices", base)
    edges = []
    k = 0
    vals = [ord(ch) - 63 for ch in s[pos:]]
    for j in range(1, n):
        for i in range(j):
            if (vals[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# JSON graph schema: {"n": int, "edges": [[u, v], ...], "marks": {...}}
# ---------------------------------------------------------------------------

def graph_to_dict(G: Graph, marks: Mapping[str, int] | None = None) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.edges()], "marks": dict(marks or {})}


def graph_from_dict(d: Mapping) -> tuple[Graph, dict[str, int]]:
    if "n" not in d or "edges" not in d:
        raise PreconditionError("graph JSON needs 'n' and 'edges'")
    G = Graph(int(d["n"]), [tuple(e) for e in d["edges"]])
    marks = {str(k): int(v) for k, v in (d.get("marks") or {}).items()}
    for k, v in marks.items():
        if not 0 <= v < G.n:
            raise PreconditionError(f"mark {k}={v} out of range")
    return G, marks


def graph_to_json(G: Graph, marks: Mapping[str, int] | None = None) -> str:
    return json.dumps(graph_to_dict(G, marks), sort_keys=True)


def graph_from_json(text: str) -> tuple[Graph, dict[str, int]]:
    return graph_from_dict(json.loads(text))
