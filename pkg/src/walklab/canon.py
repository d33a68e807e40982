"""Canonical forms: AHU codes for trees and forests, colour refinement with
individualisation for small general graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BudgetExceeded, PreconditionError
from .graphs import Graph

GENERAL_MAX_N = 16
DEFAULT_LEAF_BUDGET = 200_000


# ---------------------------------------------------------------------------
# trees
# ---------------------------------------------------------------------------

def tree_centers(G: Graph, vertices: Optional[Sequence[int]] = None) -> list[int]:
    """Centers of the tree spanned by ``vertices`` (default: all of G)."""
    verts = list(range(G.n)) if vertices is None else list(vertices)
    alive = set(verts)
    if len(alive) <= 2:
        return sorted(alive)
    deg = {v: sum(1 for w in G.nbrs[v] if w in alive) for v in verts}
    layer = [v for v in verts if deg[v] <= 1]
    remaining = len(alive)
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            alive.discard(v)
            for w in G.nbrs[v]:
                if w in alive:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(alive)


def rooted_tree_code(G: Graph, root: int, blocked: int = -1) -> str:
    """AHU code of the tree component containing ``root``, rooted there.

    ``blocked`` is a vertex treated as deleted (used for edge-rooted codes).
    """
    order = [root]
    parent = {root: -1}
    for v in order:
        for w in G.nbrs[v]:
            if w != parent[v] and w != blocked:
                if w in parent:
                    raise PreconditionError("graph component is not a tree")
                parent[w] = v
                order.append(w)
    kids: dict[int, list[str]] = {v: [] for v in order}
    code = {}
    for v in reversed(order):
        c = "(" + "".join(sorted(kids[v])) + ")"
        code[v] = c
        if parent[v] >= 0:
            kids[parent[v]].append(c)
    return code[root]


def tree_code(G: Graph, vertices: Optional[Sequence[int]] = None) -> str:
    """Canonical code of a free tree: minimum rooted code over its centers."""
    verts = list(range(G.n)) if vertices is None else list(vertices)
    return min(rooted_tree_code(G, c) for c in tree_centers(G, verts))


def forest_code(G: Graph) -> tuple[str, ...]:
    if not G.is_forest():
        raise PreconditionError("graph is not a forest")
    return tuple(sorted(tree_code(G, comp) for comp in G.components()))


def _match_rooted(G: Graph, gr: int, H: Graph, hr: int) -> dict[int, int]:
    """Isomorphism between rooted trees with equal codes, built top-down."""
    mapping = {gr: hr}
    stack = [(gr, -1, hr, -1)]
    while stack:
        g, gp, h, hp = stack.pop()
        gk = sorted(((rooted_subtree_code(G, w, g), w) for w in G.nbrs[g] if w != gp))
        hk = sorted(((rooted_subtree_code(H, w, h), w) for w in H.nbrs[h] if w != hp))
        for (cg, wg), (ch, wh) in zip(gk, hk):
            if cg != ch:
                raise PreconditionError("rooted codes disagree")
            mapping[wg] = wh
            stack.append((wg, g, wh, h))
    return mapping


def rooted_subtree_code(G: Graph, v: int, parent: int) -> str:
    return rooted_tree_code(G, v, blocked=parent)


def tree_isomorphism(G: Graph, H: Graph) -> Optional[dict[int, int]]:
    if G.n != H.n or not (G.is_tree() and H.is_tree()):
        return None
    if tree_code(G) != tree_code(H):
        return None
    cg = min(tree_centers(G), key=lambda c: rooted_tree_code(G, c))
    code = rooted_tree_code(G, cg)
    ch = next(c for c in tree_centers(H) if rooted_tree_code(H, c) == code)
    return _match_rooted(G, cg, H, ch)


# ---------------------------------------------------------------------------
# general graphs
# ---------------------------------------------------------------------------

def refine(G: Graph, colors: Sequence[int]) -> list[int]:
    """Colour refinement to the coarsest stable partition.

    New colours are ranks of (old colour, sorted neighbour colours), so the
    result is label-invariant and the old order of classes is preserved.
    """
    cols = list(colors)
    ncls = len(set(cols))
    while True:
        sig = [(cols[v], tuple(sorted(cols[w] for w in G.nbrs[v]))) for v in range(G.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == ncls:
            return new
        cols, ncls = new, len(ranks)


def _individualize(cols: list[int], w: int) -> list[int]:
    return [2 * c + (0 if v == w else 1) if c == cols[w] else 2 * c for v, c in enumerate(cols)]


@dataclass(frozen=True)
class Canon:
    """Canonical certificate plus the labeling that achieves it."""
    certificate: tuple
    labeling: tuple[int, ...]  # vertex -> canonical position


def canonical_form(G: Graph, root: Optional[int] = None,
                   budget: int = DEFAULT_LEAF_BUDGET) -> Canon:
    """Minimum edge-list certificate over the individualisation-refinement
    search tree, pruned by discovered automorphisms."""
    if G.n > GENERAL_MAX_N:
        raise BudgetExceeded(f"general canonical form limited to n <= {GENERAL_MAX_N}")
    init = [0 if v == root else 1 for v in range(G.n)] if root is not None else [0] * G.n
    best: list = [None, None]
    autos: list[list[int]] = []
    leaves = 0

    def cert(labels):
        return tuple(sorted((min(labels[u], labels[v]), max(labels[u], labels[v]))
                            for u, v in G.edges()))

    def search(cols, prefix):
        nonlocal leaves
        if len(set(cols)) == G.n:
            leaves += 1
            if leaves > budget:
                raise BudgetExceeded(f"canonical search exceeded {budget} leaves")
            c = cert(cols)
            if best[0] is None or c < best[0]:
                best[0], best[1] = c, cols
            elif c == best[0]:
                inv = {p: v for v, p in enumerate(best[1])}
                autos.append([inv[cols[v]] for v in range(G.n)])
            return
        counts: dict[int, int] = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        target = min((c for c in counts if counts[c] > 1), key=lambda c: (counts[c], c))
        cell = [v for v in range(G.n) if cols[v] == target]
        done: list[int] = []
        for w in cell:
            stab = [g for g in autos if all(g[p] == p for p in prefix)]
            if done and _explored_in_orbit(w, stab, done):
                continue
            done.append(w)
            search(refine(G, _individualize(cols, w)), prefix + [w])

    search(refine(G, init), [])
    return Canon((G.n,) + best[0], tuple(best[1]))


def _explored_in_orbit(w, gens, done):
    """Already explored vertices lying in the orbit of ``w``."""
    orbit = {w}
    frontier = [w]
    while frontier:
        v = frontier.pop()
        for g in gens:
            u = g[v]
            if u not in orbit:
                orbit.add(u)
                frontier.append(u)
    return [d for d in done if d in orbit]


def graph_certificate(G: Graph, root: Optional[int] = None) -> tuple:
    """Isomorphism-invariant key; trees use AHU codes, other graphs the
    general canonical form."""
    if G.is_tree():
        return ("T", root is not None, G.n, tree_code(G) if root is None else rooted_tree_code(G, root))
    if G.is_forest() and root is None:
        return ("F", G.n, forest_code(G))
    return ("G", root is not None) + canonical_form(G, root).certificate


def isomorphism(G: Graph, H: Graph) -> Optional[dict[int, int]]:
    """A witness bijection V(G) -> V(H), or None."""
    if G.n != H.n or G.m != H.m or sorted(G.degrees()) != sorted(H.degrees()):
        return None
    if G.is_tree() and H.is_tree():
        return tree_isomorphism(G, H)
    cg, ch = canonical_form(G), canonical_form(H)
    if cg.certificate != ch.certificate:
        return None
    inv = {p: v for v, p in enumerate(ch.labeling)}
    return {v: inv[cg.labeling[v]] for v in range(G.n)}


def rooted_isomorphic(G: Graph, x: int, H: Graph, y: int) -> bool:
    if G.n != H.n or G.m != H.m or G.degree(x) != H.degree(y):
        return False
    if G.is_tree() and H.is_tree():
        return rooted_tree_code(G, x) == rooted_tree_code(H, y)
    return canonical_form(G, x).certificate == canonical_form(H, y).certificate


def backtrack_isomorphic(G: Graph, H: Graph) -> bool:
    """Plain degree-pruned backtracking; an independent check for tests."""
    if G.n != H.n or G.m != H.m:
        return False
    dg, dh = G.degrees(), H.degrees()
    if sorted(dg) != sorted(dh):
        return False
    order = sorted(range(G.n), key=lambda v: -dg[v])
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def go(i):
        if i == G.n:
            return True
        v = order[i]
        for u in range(H.n):
            if u in used or dh[u] != dg[v]:
                continue
            if all(G.has_edge(v, a) == H.has_edge(u, b) for a, b in mapping.items()):
                mapping[v] = u
                used.add(u)
                if go(i + 1):
                    return True
                del mapping[v]
                used.discard(u)
        return False

    return go(0)
