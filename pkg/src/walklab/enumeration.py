"""Exhaustive generation of trees and small connected graphs, and the
censuses built on top of them (identifiability, ambivalent vertices,
cross-size matches, spectral determination)."""

from __future__ import annotations

import hashlib
from bisect import bisect_right
import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .algebra import Irreducible, adjacency_char_poly, irreducibility_certificate
from .canon import canonical_form, rooted_tree_code, tree_code
from .equivalence import DECISIVE, Universe, vertex_verdict
from .errors import BudgetExceeded, PreconditionError, TheoremViolation
from .graphs import Graph, to_graph6
from .walks import closed_rows, walk_rows

# Known free-tree counts (OEIS A000055) and connected-graph counts (A001349).
TREE_COUNTS = (1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320,
               48629, 123867, 317955)
CONNECTED_COUNTS = (1, 1, 1, 2, 6, 21, 112, 853)


@dataclass(frozen=True)
class EnumerationLimits:
    """Desk-scale ceilings; raise them deliberately, not by accident."""
    max_tree_n: int = 18
    max_graph_n: int = 7
    identifiability_n: int = 16


LIMITS = EnumerationLimits()


# ---------------------------------------------------------------------------
# rooted-tree catalog
# ---------------------------------------------------------------------------
# Every rooted tree gets an integer id; a tree is (size, height, children ids)
# with children listed in non-increasing id order, so each isomorphism class
# of rooted trees is produced exactly once.

class _Catalog:
    def __init__(self):
        self.trees: list[tuple[int, int, tuple[int, ...]]] = [(1, 0, ())]
        self.by_sh: dict[tuple[int, int], list[int]] = {(1, 0): [0]}

    def _ids(self, max_size: int, max_height: int) -> list[int]:
        out = []
        for h in range(max_height + 1):
            for s in range(1, max_size + 1):
                out.extend(self.get(s, h))
        return sorted(out)

    def get(self, size: int, height: int) -> list[int]:
        key = (size, height)
        if key in self.by_sh:
            return self.by_sh[key]
        if height == 0 or size <= height:
            self.by_sh[key] = []
            return []
        found = []
        for kids in child_multisets(self, size - 1, height - 1, min_tall=1):
            self.trees.append((size, height, kids))
            found.append(len(self.trees) - 1)
        self.by_sh[key] = found
        return found


def child_multisets(cat: _Catalog, total: int, max_height: int, min_tall: int):
    """Tuples of rooted-tree ids with heights <= max_height, sizes summing to
    ``total`` and at least ``min_tall`` of height exactly max_height.

    Items are ordered by (size, id) and emitted in non-increasing order, so
    each multiset appears once; candidates that fit form a prefix.
    """
    ids = sorted(cat._ids(total, max_height), key=lambda i: (cat.trees[i][0], i))
    sizes = [cat.trees[i][0] for i in ids]
    tall = [cat.trees[i][1] == max_height for i in ids]

    def go(rem, hi, acc, ntall):
        if rem == 0:
            if ntall >= min_tall:
                yield tuple(acc)
            return
        for j in range(min(hi, bisect_right(sizes, rem) - 1), -1, -1):
            acc.append(ids[j])
            yield from go(rem - sizes[j], j, acc, ntall + tall[j])
            acc.pop()

    yield from go(total, len(ids) - 1, [], 0)


@lru_cache(maxsize=1)
def _catalog() -> _Catalog:
    return _Catalog()


def _build(cat: _Catalog, roots: list[int]) -> Graph:
    """Graph from catalog trees; the roots in ``roots`` are joined in a path
    (one root: a rooted tree; two roots: a bicentral tree)."""
    edges = []
    count = 0

    def place(tid):
        nonlocal count
        me = count
        count += 1
        for c in cat.trees[tid][2]:
            edges.append((me, place(c)))
        return me

    placed = [place(r) for r in roots]
    edges += list(zip(placed, placed[1:]))
    return Graph(count, edges)


def _unicentral(cat: _Catalog, n: int, h: int) -> Iterator[Graph]:
    for kids in child_multisets(cat, n - 1, h - 1, min_tall=2):
        edges, count = [], 1

        def place(tid):
            nonlocal count
            me = count
            count += 1
            for c in cat.trees[tid][2]:
                edges.append((me, place(c)))
            return me

        for k in kids:
            edges.append((0, place(k)))
        yield Graph(n, edges)


def enumerate_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class on n vertices, generated around the
    center: unicentral trees as a root with at least two children of maximal
    height, bicentral trees as an unordered pair of equal-height halves."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if n > LIMITS.max_tree_n:
        raise BudgetExceeded(f"tree enumeration capped at n = {LIMITS.max_tree_n}")
    cat = _catalog()
    if n == 1:
        yield Graph(1, [])
        return
    # bicentral: both halves have the same height h and sizes summing to n
    for h in range(0, n // 2):
        for s in range(h + 1, n - h):
            if s > n - s:
                break
            left = cat.get(s, h)
            right = cat.get(n - s, h)
            for a in left:
                for b in right:
                    if s == n - s and b < a:
                        continue
                    yield _build(cat, [a, b])
    # unicentral with radius h >= 1
    for h in range(1, (n - 1) // 2 + 1):
        yield from _unicentral(cat, n, h)


def count_trees(n: int) -> int:
    return sum(1 for _ in enumerate_trees(n))


def trees_by_leaf_augmentation(n: int) -> list[str]:
    """Independent oracle: canonical codes of all trees on n vertices, grown
    by attaching a leaf anywhere in every tree on n-1 vertices."""
    codes = {tree_code(Graph(1, []))}
    graphs = [Graph(1, [])]
    for size in range(2, n + 1):
        nxt: dict[str, Graph] = {}
        for g in graphs:
            for v in range(g.n):
                h = g.with_edges([(v, g.n)], g.n + 1)
                nxt.setdefault(tree_code(h), h)
        codes = set(nxt)
        graphs = list(nxt.values())
    return sorted(codes)


def trees_by_prufer(n: int) -> list[str]:
    """Independent oracle: dedup every Pruefer code of length n-2."""
    from itertools import product
    from .graphs import prufer_decode
    if n <= 2:
        return [tree_code(Graph(n, [] if n == 1 else [(0, 1)]))]
    return sorted({tree_code(prufer_decode(c, n)) for c in product(range(n), repeat=n - 2)})


# ---------------------------------------------------------------------------
# connected graphs
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _connected(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, []),)
    seen: dict[tuple, Graph] = {}
    for g in _connected(n - 1):
        for r in range(1, n):
            for nb in combinations(range(n - 1), r):
                h = g.with_edges([(u, n - 1) for u in nb], n)
                cert = canonical_form(h).certificate
                if cert not in seen:
                    seen[cert] = h
    return tuple(seen[c] for c in sorted(seen))


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """One connected graph per isomorphism class on n vertices.

    Built by adding a vertex joined to a nonempty subset of a smaller
    connected graph (every connected graph has a non-cut vertex), then
    deduplicated by canonical certificate.
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if n > LIMITS.max_graph_n:
        raise BudgetExceeded(f"connected-graph enumeration capped at n = {LIMITS.max_graph_n}")
    yield from _connected(n)


def connected_graphs_by_masks(n: int) -> list[tuple]:
    """Independent oracle: sweep all edge masks, keep connected ones,
    dedup by canonical certificate."""
    pairs = list(combinations(range(n), 2))
    certs = set()
    for mask in range(1 << len(pairs)):
        g = Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        if g.is_connected():
            certs.add(canonical_form(g).certificate)
    return sorted(certs)


# ---------------------------------------------------------------------------
# census records and keys
# ---------------------------------------------------------------------------

def digest_rows(rows) -> str:
    """Hash of a big-integer matrix serialised as decimal strings. Used only
    as an index; every match is re-verified exactly."""
    h = hashlib.blake2b(digest_size=16)
    for row in rows:
        h.update(",".join(map(str, row)).encode())
        h.update(b";")
    return h.hexdigest()


@dataclass(frozen=True)
class CensusRecord:
    graph: Graph
    profile_key: str
    census_id: tuple[str, int, int]

    def to_json(self) -> str:
        return json.dumps({"graph6": to_graph6(self.graph), "profile_key": self.profile_key,
                           "census_id": list(self.census_id)}, sort_keys=True)


def census_records(kind: str, n: int) -> Iterator[CensusRecord]:
    gen = enumerate_trees if kind == "trees" else enumerate_connected_graphs
    for i, g in enumerate(gen(n)):
        yield CensusRecord(g, digest_rows(sorted(walk_rows(g))), (kind, n, i))


@dataclass
class IdentifiabilityReport:
    n_max: int
    counts: dict = field(default_factory=dict)
    collisions: list = field(default_factory=list)  # (n, [graph6, ...])

    @property
    def all_identifiable(self) -> bool:
        return not self.collisions


def walk_identifiability_census(n_max: int, n_min: int = 1, kind: str = "trees") -> IdentifiabilityReport:
    """Group graphs of each order by the multiset of their walk rows
    (k < 2n). A class with two members is a pair of non-isomorphic
    walk-equivalent graphs."""
    rep = IdentifiabilityReport(n_max)
    for n in range(n_min, n_max + 1):
        groups: dict[str, list[Graph]] = {}
        total = 0
        for rec in census_records(kind, n):
            groups.setdefault(rec.profile_key, []).append(rec.graph)
            total += 1
        rep.counts[n] = total
        for key in sorted(groups):
            members = groups[key]
            if len(members) < 2:
                continue
            # exact re-check of the hashed key
            exact: dict[tuple, list[Graph]] = {}
            for g in members:
                exact.setdefault(tuple(sorted(walk_rows(g))), []).append(g)
            for cls in exact.values():
                if len(cls) > 1:
                    rep.collisions.append((n, [to_graph6(g) for g in cls]))
    return rep


# ---------------------------------------------------------------------------
# ambivalent vertices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexMatch:
    """Two rooted trees with equal walk profiles."""
    n_t: int
    t: str       # graph6
    x: int
    n_s: int
    s: str
    y: int
    walk_eq: bool
    closed_eq: bool

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class AmbivalenceReport:
    n: int
    pairs: list = field(default_factory=list)          # cross-tree matches
    within: list = field(default_factory=list)         # non-similar matches inside one tree

    @property
    def strong_pairs(self) -> list:
        return [p for p in self.pairs if p.walk_eq and p.closed_eq]

    def tree_pairs(self) -> list[tuple[str, str]]:
        return tree_pairs(self.pairs)


def tree_pairs(matches) -> list[tuple[str, str]]:
    """Distinct unordered pairs of trees among vertex matches; one pair of
    trees usually carries several matched vertex orbits."""
    return sorted({tuple(sorted((m.t, m.s))) for m in matches})


def _orbit_reps(T: Graph) -> list[int]:
    seen: dict[str, int] = {}
    for v in range(T.n):
        seen.setdefault(rooted_tree_code(T, v), v)
    return sorted(seen.values())


def _vertex_entries(trees: list[Graph], K: int):
    """(tree index, vertex, W row, R row) for one vertex per orbit."""
    for i, T in enumerate(trees):
        W = walk_rows(T, K)
        R = closed_rows(T, K)
        for v in _orbit_reps(T):
            yield i, v, W[v], R[v]


def _match_groups(entries, key_of):
    groups: dict[str, list] = {}
    for e in entries:
        groups.setdefault(key_of(e), []).append(e)
    for key in sorted(groups):
        if len(groups[key]) > 1:
            yield groups[key]


def ambivalent_vertex_census(n: int, key: str = "walk") -> AmbivalenceReport:
    """Index every (tree, vertex orbit) on n vertices by its walk row
    (``key="walk"``), closed-walk row (``"closed"``) or both (``"strong"``)
    truncated at k < 2n, and report every match."""
    trees = list(enumerate_trees(n))
    K = 2 * n - 1
    entries = list(_vertex_entries(trees, K))
    pick = {"walk": lambda e: digest_rows([e[2]]),
            "closed": lambda e: digest_rows([e[3]]),
            "strong": lambda e: digest_rows([e[2], e[3]])}[key]
    rep = AmbivalenceReport(n)
    for grp in _match_groups(entries, pick):
        for a, b in combinations(grp, 2):
            weq, ceq = a[2] == b[2], a[3] == b[3]
            if not {"walk": weq, "closed": ceq, "strong": weq and ceq}[key]:
                continue  # hash collision, discarded after exact comparison
            m = VertexMatch(n, to_graph6(trees[a[0]]), a[1], n, to_graph6(trees[b[0]]), b[1], weq, ceq)
            (rep.pairs if a[0] != b[0] else rep.within).append(m)
    return rep


def cross_size_census(n_max: int, mode: str = "walk", n_min: int = 1) -> list[VertexMatch]:
    """Matches between vertices of trees of different orders a < b <= n_max,
    with profiles compared for k < a + b. ``mode`` is walk, closed or strong."""
    if mode not in ("walk", "closed", "strong"):
        raise PreconditionError(f"unknown mode {mode!r}")
    K = 2 * n_max - 1
    by_size = {}
    for a in range(n_min, n_max + 1):
        trees = list(enumerate_trees(a))
        by_size[a] = (trees, list(_vertex_entries(trees, K)))
    out = []
    for b in range(n_min, n_max + 1):
        for a in range(n_min, b):
            L = a + b
            index: dict[tuple, list] = {}
            for e in by_size[a][1]:
                k = (e[2][:L] if mode != "closed" else ()) + (e[3][:L] if mode != "walk" else ())
                index.setdefault(k, []).append(e)
            for e in by_size[b][1]:
                k = (e[2][:L] if mode != "closed" else ()) + (e[3][:L] if mode != "walk" else ())
                for f in index.get(k, []):
                    out.append(VertexMatch(a, to_graph6(by_size[a][0][f[0]]), f[1],
                                           b, to_graph6(by_size[b][0][e[0]]), e[1],
                                           f[2][:L] == e[2][:L], f[3][:L] == e[3][:L]))
    return out


# ---------------------------------------------------------------------------
# spectral determination and decisiveness
# ---------------------------------------------------------------------------

def determined_by_spectrum(G: Graph, universe: Universe) -> bool:
    """No non-isomorphic member of ``universe`` shares P_G."""
    P = adjacency_char_poly(G.adjacency_matrix())
    key = canonical_form(G).certificate
    for H in universe.graphs:
        if adjacency_char_poly(H.adjacency_matrix()) == P and canonical_form(H).certificate != key:
            return False
    return True


@dataclass
class DecisiveRow:
    n: int
    graphs: int = 0
    ds: int = 0
    irreducible: int = 0
    both: int = 0
    vertices_checked: int = 0
    violations: list = field(default_factory=list)


def decisive_census(n_max: int, n_min: int = 1, strict: bool = True) -> list[DecisiveRow]:
    """For every connected graph that is determined by spectrum and has a
    certified irreducible characteristic polynomial, check that every vertex
    is decisive. Any failure raises TheoremViolation."""
    rows = []
    for n in range(n_min, n_max + 1):
        graphs = list(enumerate_connected_graphs(n))
        uni = Universe(graphs, f"connected graphs on {n} vertices")
        polys = [adjacency_char_poly(g.adjacency_matrix()) for g in graphs]
        row = DecisiveRow(n, graphs=len(graphs))
        for i, g in enumerate(graphs):
            ds = sum(1 for p in polys if p == polys[i]) == 1
            irr = polys[i].degree >= 1 and isinstance(irreducibility_certificate(polys[i]), Irreducible)
            row.ds += ds
            row.irreducible += irr
            if not (ds and irr):
                continue
            row.both += 1
            for v in range(n):
                row.vertices_checked += 1
                verdict = vertex_verdict(g, v, uni, within_graph=strict)
                if verdict.status != DECISIVE:
                    row.violations.append((to_graph6(g), v, verdict.status))
        if row.violations:
            raise TheoremViolation(f"non-decisive vertices under the hypothesis: {row.violations}")
        rows.append(row)
    return rows


def tree_universe(n: int) -> Universe:
    return Universe(enumerate_trees(n), f"trees on {n} vertices")


def graph_universe(n: int) -> Universe:
    return Universe(enumerate_connected_graphs(n), f"connected graphs on {n} vertices")


def records_to_jsonl(records) -> str:
    return "".join(r.to_json() + "\n" for r in records)

