"""Vertex-pair classification and decisive/ambivalent verdicts.

Profile comparisons always run to length n+m (k = 0..n+m-1), which decides
equality of the infinite sequences for connected graphs of orders n and m.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

from .algebra import Poly, adjacency_char_poly
from .canon import graph_certificate, isomorphism, rooted_isomorphic
from .errors import IntegrityError, PreconditionError
from .graphs import Graph, RootedGraph, to_graph6, vertex_deleted
from .walks import closed_triple, closed_walk_counts, walk_counts

DECISIVE = "Decisive"
AMBIVALENT = "Ambivalent"
NEITHER = "NeitherDetermined"


def threshold(G: Graph, H: Graph) -> int:
    return G.n + H.n


def _require_connected(*graphs: Graph):
    for g in graphs:
        if not g.is_connected():
            raise PreconditionError(f"{g!r} is disconnected; the length threshold needs connectivity")


def walk_equivalent(G: Graph, v: int, H: Graph, u: int) -> bool:
    _require_connected(G, H)
    K = threshold(G, H) - 1
    return walk_counts(G, v, K).counts == walk_counts(H, u, K).counts


def closed_walk_equivalent(G: Graph, v: int, H: Graph, u: int) -> bool:
    _require_connected(G, H)
    K = threshold(G, H) - 1
    return closed_walk_counts(G, v, K).counts == closed_walk_counts(H, u, K).counts


def strongly(G: Graph, v: int, H: Graph, u: int) -> bool:
    return walk_equivalent(G, v, H, u) and closed_walk_equivalent(G, v, H, u)


# ---------------------------------------------------------------------------
# structural relations
# ---------------------------------------------------------------------------

def isomorphic(G: Graph, H: Graph) -> Optional[dict[int, int]]:
    return isomorphism(G, H)


def similar(G: Graph, x: int, y: int) -> bool:
    """Some automorphism of G maps x to y."""
    return x == y or rooted_isomorphic(G, x, G, y)


def _deletion_key(G: Graph, v: int):
    return graph_certificate(vertex_deleted(G, v))


def removal_similar(G: Graph, x: int, y: int) -> bool:
    if x == y:
        return True
    return _deletion_key(G, x) == _deletion_key(G, y)


def pseudosimilar(G: Graph, x: int, y: int) -> bool:
    return removal_similar(G, x, y) and not similar(G, x, y)


def _char_poly(G: Graph) -> Poly:
    return adjacency_char_poly(G.adjacency_matrix())


def cospectral_vertices(G: Graph, x: int, y: int) -> bool:
    """P(G - x) == P(G - y), computed from characteristic polynomials."""
    if G.n < 2:
        raise PreconditionError("need n >= 2")
    return _char_poly(vertex_deleted(G, x)) == _char_poly(vertex_deleted(G, y))


def cospectral_across(G: Graph, x: int, H: Graph, y: int) -> bool:
    """P(G - x)/P(G) == P(H - y)/P(H); reduces to the above when H is G.

    The ratio is the generating function of closed walks at the vertex, so
    this is the spectral side of closed-walk equivalence for any two graphs.
    """
    if G is H or G == H:
        return cospectral_vertices(G, x, y)
    if G.n < 2 or H.n < 2:
        return G.n == H.n
    return _char_poly(vertex_deleted(G, x)) * _char_poly(H) == \
        _char_poly(vertex_deleted(H, y)) * _char_poly(G)


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairVerdict:
    walk_eq: bool
    closed_walk_eq: bool
    removal_similar: bool
    similar: bool
    cospectral: bool

    def __post_init__(self):
        bad = []
        if self.similar and not self.removal_similar:
            bad.append("similar without removal-similar")
        if self.removal_similar and not self.walk_eq:
            bad.append("removal-similar without walk equivalence")
        if self.removal_similar and not self.cospectral:
            bad.append("removal-similar without cospectrality")
        if self.cospectral != self.closed_walk_eq:
            bad.append("cospectral and closed-walk equivalence disagree")
        if bad:
            raise IntegrityError("; ".join(bad) + f" in {self!r}")

    @property
    def strongly(self) -> bool:
        return self.walk_eq and self.closed_walk_eq

    @property
    def pseudosimilar(self) -> bool:
        return self.removal_similar and not self.similar

    def as_dict(self) -> dict:
        d = asdict(self)
        d.update(strongly=self.strongly, pseudosimilar=self.pseudosimilar)
        return d


def classify_pair(G: Graph, x: int, H: Graph, y: int) -> PairVerdict:
    """Fill every relation for (G, x) versus (H, y).

    Across two graphs, (removal-)similarity means: H is isomorphic to G and
    the relation holds for x and the image of y in G.
    """
    _require_connected(G, H)
    w = walk_equivalent(G, x, H, y)
    c = closed_walk_equivalent(G, x, H, y)
    if G == H:
        rs, sim = removal_similar(G, x, y), similar(G, x, y)
    else:
        phi = isomorphism(H, G)
        if phi is None:
            rs = sim = False
        else:
            y2 = phi[y]
            rs, sim = removal_similar(G, x, y2), similar(G, x, y2)
    return PairVerdict(w, c, rs, sim, cospectral_across(G, x, H, y))


class Universe:
    """An explicit list of connected n-vertex graphs, indexed by profile."""

    def __init__(self, graphs: Iterable[Graph], descriptor: str = ""):
        self.graphs = list(graphs)
        self.descriptor = descriptor
        self.n = self.graphs[0].n if self.graphs else 0
        self._keys = [graph_certificate(g) for g in self.graphs]
        self.by_walk: dict[tuple, list[tuple[int, int]]] = {}
        self.by_closed: dict[tuple, list[tuple[int, int]]] = {}
        for i, g in enumerate(self.graphs):
            if g.n != self.n:
                raise PreconditionError("universe graphs must share one order")
            K = 2 * g.n - 1
            for u in range(g.n):
                self.by_walk.setdefault(walk_counts(g, u, K).counts, []).append((i, u))
                self.by_closed.setdefault(closed_walk_counts(g, u, K).counts, []).append((i, u))

    def __len__(self):
        return len(self.graphs)

    def key(self, i: int):
        return self._keys[i]


@dataclass(frozen=True)
class VertexVerdict:
    status: str
    universe_descriptor: str
    w_decisive: bool
    r_decisive: bool
    witness: Optional[RootedGraph] = None
    within_graph_matches: tuple[int, ...] = field(default=())

    def as_dict(self, G: Graph, v: int) -> dict:
        return {
            "graph": to_graph6(G),
            "vertex": v,
            "status": self.status,
            "witness_graph6": to_graph6(self.witness.graph) if self.witness else None,
            "witness_vertex": self.witness.root if self.witness else None,
        }

    def to_json(self, G: Graph, v: int) -> str:
        return json.dumps(self.as_dict(G, v), sort_keys=True)


def vertex_verdict(G: Graph, v: int, universe: Universe, within_graph: bool = False) -> VertexVerdict:
    """Decisive / ambivalent status of v relative to ``universe``.

    Matches in graphs isomorphic to G only count against decisiveness when
    ``within_graph`` is set; they are always listed in
    ``within_graph_matches`` (as vertices of the universe copy of G).
    """
    if G.n == 1:
        return VertexVerdict(DECISIVE, universe.descriptor, True, True)
    if G.n != universe.n:
        raise PreconditionError("universe order differs from the graph order")
    K = 2 * G.n - 1
    wkey = walk_counts(G, v, K).counts
    rkey = closed_walk_counts(G, v, K).counts
    gkey = graph_certificate(G)
    within: set[int] = set()

    def foreign(matches):
        out = set()
        for i, u in matches:
            H = universe.graphs[i]
            if universe.key(i) != gkey:
                out.add((i, u))
            elif not rooted_isomorphic(G, v, H, u):
                within.add(u)
                if within_graph:
                    out.add((i, u))
        return out

    w_bad = foreign(universe.by_walk.get(wkey, []))
    r_bad = foreign(universe.by_closed.get(rkey, []))
    wd, rd = not w_bad, not r_bad
    both = sorted((i, u) for i, u in w_bad & r_bad if universe.key(i) != gkey)
    witness = RootedGraph(universe.graphs[both[0][0]], both[0][1]) if both else None
    status = DECISIVE if wd and rd else AMBIVALENT if witness else NEITHER
    return VertexVerdict(status, universe.descriptor, wd, rd, witness, tuple(sorted(within)))


# ---------------------------------------------------------------------------
# random-graph labeling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TripleLabeling:
    triples: dict
    collisions: tuple[tuple[int, ...], ...]

    @property
    def canonical(self) -> bool:
        return not self.collisions


def canonical_triple_labeling(G: Graph) -> TripleLabeling:
    triples = {v: closed_triple(G, v) for v in range(G.n)}
    classes: dict[tuple, list[int]] = {}
    for v, t in triples.items():
        classes.setdefault(t, []).append(v)
    coll = tuple(sorted(tuple(c) for c in classes.values() if len(c) > 1))
    return TripleLabeling(triples, coll)


def walk_classes(G: Graph, closed: bool = False) -> list[list[int]]:
    """Vertices grouped by W (or R) at the single-graph threshold 2n."""
    K = 2 * G.n - 1
    groups: dict[tuple, list[int]] = {}
    for v in range(G.n):
        key = (closed_walk_counts if closed else walk_counts)(G, v, K).counts
        groups.setdefault(key, []).append(v)
    return sorted(groups.values())


def pair_labels(pair: str) -> tuple[str, str]:
    a, sep, b = pair.partition(",")
    if not sep or not a or not b:
        raise PreconditionError(f"expected a pair like x,y; got {pair!r}")
    return a.strip(), b.strip()


def equivalent_pairs(G: Graph) -> list[tuple[int, int, PairVerdict]]:
    """Every pair x < y that is walk- or closed-walk-equivalent, classified."""
    out = []
    for cls_closed in (False, True):
        for cls in walk_classes(G, cls_closed):
            for i, x in enumerate(cls):
                for y in cls[i + 1:]:
                    out.append((x, y))
    seen = sorted(set(out))
    return [(x, y, classify_pair(G, x, G, y)) for x, y in seen]

