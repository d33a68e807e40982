"""Named graphs: drawn fixtures, the Harary-Palmer construction, the
Krebs-Verbitsky families G_{s,t} / H_{s,t}."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .graphs import Fixture, Graph, path, random_tree, vertex_deleted, shift_down, y_graph

FIXTURE_NAMES = ("hp", "schwenk", "amb12_T", "amb12_S", "sporadic13_T", "sporadic13_S",
                 "walkonly14", "diststrong_T11", "diststrong_S10", "p7", "y5",
                 "dist_T8", "dist_S11", "e6")
AUXILIARY_FIXTURES = ("hp_unicyclic", "kv_G_3_3", "kv_H_3_3")


@lru_cache(maxsize=1)
def _fixture_table() -> dict:
    text = resources.files("walklab").joinpath("data/fixtures.json").read_text()
    return json.loads(text)["fixtures"]


def fixture(name: str) -> Fixture:
    table = _fixture_table()
    if name not in table:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(table))}")
    d = table[name]
    G = Graph(d["n"], [tuple(e) for e in d["edges"]])
    return Fixture(name, G, dict(d["marks"]), {"labels": d.get("labels"), "note": d.get("note")})


def fixture_names(include_auxiliary: bool = False) -> tuple[str, ...]:
    return FIXTURE_NAMES + (AUXILIARY_FIXTURES if include_auxiliary else ())


def harary_palmer() -> Fixture:
    return fixture("hp")


def schwenk_graph() -> Fixture:
    return fixture("schwenk")


def hp_unicyclic() -> tuple[Graph, list[int], int]:
    """The unicyclic graph U of the Harary-Palmer figure, its order-3
    rotation and the removed cycle vertex."""
    fx = fixture("hp_unicyclic")
    # x1..x9 -> 0..8 rotate by -3; pendants y3, y6, y9 -> 9, 10, 11 follow their hosts
    alpha = [(i - 3) % 9 for i in range(9)] + [11, 9, 10]
    return fx.graph, alpha, fx.marked["v"]


# ---------------------------------------------------------------------------
# Harary-Palmer construction
# ---------------------------------------------------------------------------

def cycle_vertices(U: Graph) -> set[int]:
    """Vertices on cycles: what survives repeated leaf stripping."""
    deg = U.degrees()
    alive = [True] * U.n
    stack = [v for v in range(U.n) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in U.nbrs[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return {v for v in range(U.n) if alive[v]}


def is_automorphism(G: Graph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(G.n)):
        return False
    return all(G.has_edge(perm[u], perm[v]) for u, v in G.edges())


def hp_construct(U: Graph, alpha: Sequence[int], v: int) -> Fixture:
    """Delete cycle vertex ``v`` from unicyclic ``U``; ``alpha(v)`` and
    ``alpha^2(v)`` become removal-similar (marked ``x`` and ``y``)."""
    if not U.is_connected() or U.m != U.n:
        raise PreconditionError("U must be connected and unicyclic")
    if not is_automorphism(U, alpha):
        raise PreconditionError("alpha is not an automorphism of U")
    ident = list(range(U.n))
    a2 = [alpha[alpha[i]] for i in ident]
    a3 = [alpha[a2[i]] for i in ident]
    if list(alpha) == ident or a3 != ident:
        raise PreconditionError("alpha must have order 3")
    if v not in cycle_vertices(U):
        raise PreconditionError(f"vertex {v} is not on the cycle of U")
    if U.degree(v) != 2:
        raise PreconditionError(f"vertex {v} has degree {U.degree(v)}, expected 2")
    T = vertex_deleted(U, v)
    return Fixture("hp_construct", T, {"x": shift_down(alpha[v], v), "y": shift_down(a2[v], v)})


def random_hp_input(seed: int, max_n: int = 15) -> tuple[Graph, list[int], int]:
    """A random valid (U, alpha, v): a 3m-cycle with identical rooted trees
    hung at positions j, j+m, j+2m and at least one bare cycle vertex."""
    rng = np.random.default_rng(seed)
    while True:
        m = int(rng.integers(1, max_n // 3 + 1))
        sizes = [1] * m
        budget = max_n - 3 * m
        for j in rng.permutation(m)[: max(m - 1, 0)].tolist():
            extra = int(rng.integers(0, budget // 3 + 1))
            sizes[j] += extra
            budget -= 3 * extra
        if 1 in sizes:
            break
    c = 3 * m
    edges = [(i, (i + 1) % c) for i in range(c)] if c > 2 else []
    if c == 3:
        edges = [(0, 1), (1, 2), (0, 2)]
    alpha = [(i + m) % c for i in range(c)]
    nxt = c
    copies: list[list[list[int]]] = []  # per position j: three lists of vertex ids
    for j, size in enumerate(sizes):
        if size == 1:
            continue
        tree = random_tree(size, int(rng.integers(0, 2 ** 62)))
        ids_per_copy = []
        for k in range(3):
            ids = [j + k * m] + list(range(nxt, nxt + size - 1))
            nxt += size - 1
            edges += [(ids[a], ids[b]) for a, b in tree.edges()]
            ids_per_copy.append(ids)
        copies.append(ids_per_copy)
    alpha += [0] * (nxt - c)
    for ids_per_copy in copies:
        for k in range(3):
            src, dst = ids_per_copy[k], ids_per_copy[(k + 1) % 3]
            for a, b in zip(src[1:], dst[1:]):
                alpha[a] = b
    U = Graph(nxt, edges)
    bare = [j + k * m for j in range(m) if sizes[j] == 1 for k in range(3)]
    v = bare[int(rng.integers(0, len(bare)))]
    return U, alpha, v


# ---------------------------------------------------------------------------
# Krebs-Verbitsky families
# ---------------------------------------------------------------------------

def _path_color(i: int, s: int) -> str:
    return f"p{min(i, s - 1 - i)}"


def krebs_verbitsky(s: int, t: int) -> tuple[Fixture, Fixture]:
    """The graphs G_{s,t} and H_{s,t}, each with t(s+6)+s+3 vertices.

    Both start with t-1 identical tadpole blocks (C_6 with a pendant path of
    s vertices, the path hanging down towards the root ``v``/``u``). Block
    layout, offset ``base``: path ``base..base+s-1`` (bottom first), then the
    cycle A, B1, B2, C1, C2, T with A joined to the path and T the top.

    G continues with one more tadpole block followed by a path of s vertices
    and a triangle. In H the last block loses its top T: C1 and C2 go to new
    vertices AL and AR, which are joined both by a path of s vertices and by
    the path AL - BL - BR - AR.

    ``extra["colors"]`` holds the auxiliary colouring (path positions folded
    from both ends, class ``a`` for the cycle attachment/top vertices, class
    ``b`` for the rest) and the marks name the vertices used in the claims.
    """
    if s < 1 or t < 2:
        raise PreconditionError("need s >= 1 and t >= 2")
    bs = s + 6

    def tail_blocks(count):
        edges, colors = [], {}
        for i in range(count):
            base = i * bs
            p = list(range(base, base + s))
            A, B1, B2, C1, C2, T = range(base + s, base + s + 6)
            edges += [(p[j], p[j + 1]) for j in range(s - 1)]
            edges += [(p[-1], A), (A, B1), (A, B2), (B1, C1), (B2, C2), (C1, T), (C2, T)]
            if i:
                edges.append((p[0], base - 1))
            for j, x in enumerate(p):
                colors[x] = _path_color(j, s)
            colors.update({A: "a", T: "a", B1: "b", B2: "b", C1: "b", C2: "b"})
        return edges, colors

    # G
    g_edges, g_colors = tail_blocks(t)
    base = t * bs
    q = list(range(base, base + s))
    Z, Y1, Y2 = base + s, base + s + 1, base + s + 2
    g_edges += [(q[j], q[j + 1]) for j in range(s - 1)]
    g_edges += [(q[0], base - 1), (q[-1], Z), (Z, Y1), (Z, Y2), (Y1, Y2)]
    for j, x in enumerate(q):
        g_colors[x] = _path_color(j, s)
    g_colors.update({Z: "a", Y1: "b", Y2: "b"})
    n = t * bs + s + 3
    last = (t - 1) * bs
    G = Graph(n, g_edges)
    g_marks = {"v": 0, "a": last + s + 3, "b": last + s + 4, "c": last + s + 5, "g": q[0]}

    # H
    h_edges, h_colors = tail_blocks(t - 1)
    base = (t - 1) * bs
    p = list(range(base, base + s))
    A, B1, B2, C1, C2 = range(base + s, base + s + 5)
    AL, AR = base + s + 5, base + s + 6
    r = list(range(base + s + 7, base + 2 * s + 7))
    BL, BR = base + 2 * s + 7, base + 2 * s + 8
    h_edges += [(p[j], p[j + 1]) for j in range(s - 1)]
    h_edges += [(p[0], base - 1), (p[-1], A), (A, B1), (A, B2), (B1, C1), (B2, C2),
                (C1, AL), (C2, AR), (AL, r[0]), (r[-1], AR), (AL, BL), (AR, BR), (BL, BR)]
    h_edges += [(r[j], r[j + 1]) for j in range(s - 1)]
    for j, x in enumerate(p):
        h_colors[x] = _path_color(j, s)
    for j, x in enumerate(r):
        h_colors[x] = _path_color(j, s)
    h_colors.update({A: "a", AL: "a", AR: "a", B1: "b", B2: "b", C1: "b", C2: "b",
                     BL: "b", BR: "b"})
    H = Graph(n, h_edges)
    h_marks = {"u": 0, "a'": C1, "b'": C2, "c'": AL, "c''": AR, "g'": r[0], "b''": BL}
    if s % 2 == 1:
        h_marks["y'"] = r[s // 2]
    level = t * (s + 4) - 2
    info = {"s": s, "t": t, "level": level}
    return (Fixture(f"G_{s},{t}", G, g_marks, {**info, "colors": g_colors}),
            Fixture(f"H_{s},{t}", H, h_marks, {**info, "colors": h_colors}))


def kv_size(s: int, t: int) -> int:
    return t * (s + 6) + s + 3


# ---------------------------------------------------------------------------
# P_n / Y_n
# ---------------------------------------------------------------------------

def pn_yn(n: int) -> tuple[Fixture, Fixture]:
    """P_n rooted at an end (``v``) and Y_n rooted at its long end (``u``)."""
    if n < 4:
        raise PreconditionError("need n >= 4")
    return Fixture(f"P{n}", path(n), {"v": 0}), y_graph(n)
