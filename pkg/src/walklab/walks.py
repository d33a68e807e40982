"""Walk counting.

All counts are exact Python integers obtained by repeated sparse
matrix-vector products, never by forming matrix powers. The brute-force
enumerators at the bottom are deliberately naive; tests use them as the
independent oracle.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import ExactMatrix, Poly, solve_exact
from .errors import BudgetExceeded, IntegrityError, PreconditionError
from .graphs import Graph, vertex_deleted


def default_length(n: int) -> int:
    """Largest walk length stored by default: profiles cover k = 0..2n-1."""
    return 2 * n - 1


@dataclass(frozen=True)
class WalkProfile:
    counts: tuple[int, ...]

    def __post_init__(self):
        c = self.counts
        if not c or c[0] != 1 or any(x < 0 for x in c):
            raise IntegrityError(f"invalid walk profile {c[:4]}...")

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, k):
        return self.counts[k]


@dataclass(frozen=True)
class ClosedWalkProfile:
    counts: tuple[int, ...]

    def __post_init__(self):
        c = self.counts
        if not c or c[0] != 1 or (len(c) > 1 and c[1] != 0) or any(x < 0 for x in c):
            raise IntegrityError(f"invalid closed-walk profile {c[:4]}...")

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, k):
        return self.counts[k]


def _step(nbrs, x):
    return [sum(x[u] for u in nb) for nb in nbrs]


def _check_vertex(G: Graph, v: int):
    if not 0 <= v < G.n:
        raise PreconditionError(f"vertex {v} not in graph with n={G.n}")


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------

def walk_vectors(G: Graph, K: int, start: Sequence[int] | None = None) -> list[list[int]]:
    """[x, Ax, A^2 x, ..., A^K x] with x the all-ones vector by default."""
    x = [1] * G.n if start is None else list(start)
    out = [x]
    for _ in range(K):
        x = _step(G.nbrs, x)
        out.append(x)
    return out


def walk_rows(G: Graph, K: int | None = None) -> list[tuple[int, ...]]:
    """Row v is (w^0(v), ..., w^K(v)); the matrix used for census keys."""
    K = default_length(G.n) if K is None else K
    vecs = walk_vectors(G, K)
    return [tuple(vec[v] for vec in vecs) for v in range(G.n)]


def walk_counts(G: Graph, v: int, K: int | None = None) -> WalkProfile:
    _check_vertex(G, v)
    K = default_length(G.n) if K is None else K
    return WalkProfile(tuple(vec[v] for vec in walk_vectors(G, K)))


def walk_counts_between(G: Graph, x: int, z: int, K: int) -> list[int]:
    """Entry k is the number of k-walks from x to z, i.e. (A^k)_{x,z}."""
    _check_vertex(G, x)
    _check_vertex(G, z)
    e = [0] * G.n
    e[z] = 1
    return [vec[x] for vec in walk_vectors(G, K, e)]


def closed_walk_counts(G: Graph, v: int, K: int | None = None) -> ClosedWalkProfile:
    _check_vertex(G, v)
    K = default_length(G.n) if K is None else K
    return ClosedWalkProfile(tuple(walk_counts_between(G, v, v, K)))


def closed_rows(G: Graph, K: int | None = None) -> list[tuple[int, ...]]:
    K = default_length(G.n) if K is None else K
    return [tuple(walk_counts_between(G, v, v, K)) for v in range(G.n)]


def total_walks(G: Graph | None, K: int) -> list[int]:
    """W_k(G) for k = 0..K; ``None`` stands for the empty graph."""
    if G is None:
        return [0] * (K + 1)
    return [sum(vec) for vec in walk_vectors(G, K)]


def total_closed_walks(G: Graph, K: int) -> list[int]:
    rows = closed_rows(G, K)
    return [sum(r[k] for r in rows) for k in range(K + 1)]


# ---------------------------------------------------------------------------
# Closed walks of length 2, 3, 4 from neighbourhood structure
# ---------------------------------------------------------------------------

def closed_triple(G: Graph, v: int) -> tuple[int, int, int]:
    """(r^2, r^3, r^4) of ``v`` from neighbourhood counts alone:
    degree, twice the edges inside N(v), and the sum over all w of
    |N(w) & N(v)|^2."""
    _check_vertex(G, v)
    Nv = G.neighbor_set(v)
    r2 = len(Nv)
    r3 = sum(len(G.neighbor_set(w) & Nv) for w in Nv)
    r4 = sum(len(G.neighbor_set(w) & Nv) ** 2 for w in range(G.n))
    return r2, r3, r4


def closed_triples_array(A: np.ndarray) -> np.ndarray:
    """All (r^2, r^3, r^4) rows at once from a 0/1 adjacency array.

    ``C[v, w] = |N(v) & N(w)|`` is counted with one matrix product (float64 is
    exact: every entry is at most n). Row v is then (deg v, sum of C over
    neighbours of v, sum of squares of row v of C).
    """
    Af = np.asarray(A, dtype=np.float64)
    C = Af @ Af
    r2 = Af.sum(axis=1)
    r3 = (C * Af).sum(axis=1)
    r4 = (C * C).sum(axis=1)
    return np.rint(np.stack([r2, r3, r4], axis=1)).astype(np.int64)


def closed_triples(G: Graph) -> list[tuple[int, int, int]]:
    return [tuple(int(x) for x in row) for row in closed_triples_array(G.adjacency_array())]


# ---------------------------------------------------------------------------
# First-return / never-return decompositions
# ---------------------------------------------------------------------------

def _profile_counts(R) -> list[int]:
    return list(R.counts if hasattr(R, "counts") else R)


def first_return_counts(R) -> list[int]:
    """Closed walks returning to v for the first time at their end.

    Solves r^k = sum_{s=2}^k rbar^s r^{k-s} (k >= 2) for rbar, with rbar^0 =
    rbar^1 = 0.
    """
    r = _profile_counts(R)
    if not r or r[0] != 1 or (len(r) > 1 and r[1] != 0):
        raise IntegrityError("closed-walk profile must start 1, 0")
    rbar = [0] * len(r)
    for k in range(2, len(r)):
        val = r[k] - sum(rbar[s] * r[k - s] for s in range(2, k))
        if val < 0:
            raise IntegrityError(f"negative first-return count at k={k}")
        rbar[k] = val
    return rbar


def never_return_from_profiles(W, R) -> list[int]:
    """Solve w^k = sum_{s=0}^k r^s wbar^{k-s} for wbar."""
    w, r = _profile_counts(W), _profile_counts(R)
    if len(w) != len(r):
        raise PreconditionError("profiles must have equal length")
    if r[0] != 1:
        raise IntegrityError("closed-walk profile must start with 1")
    wbar = []
    for k in range(len(w)):
        val = w[k] - sum(r[s] * wbar[k - s] for s in range(1, k + 1))
        if val < 0:
            raise IntegrityError(f"negative never-return count at k={k}")
        wbar.append(val)
    return wbar


def never_return_counts(G: Graph, v: int, K: int) -> list[int]:
    """Walks from v of each length that never revisit v."""
    return never_return_from_profiles(walk_counts(G, v, K), closed_walk_counts(G, v, K))


def reaches_counts(G: Graph, v: int, K: int) -> list[int]:
    """Walks of each length in G that visit v at least once: W_k(G) - W_k(G - v)."""
    _check_vertex(G, v)
    rest = vertex_deleted(G, v) if G.n > 1 else None
    return [a - b for a, b in zip(total_walks(G, K), total_walks(rest, K))]


def reaches_from_decomposition(wbar: Sequence[int], r: Sequence[int]) -> list[int]:
    """Visiting walks rebuilt from wbar and r: a walk through v splits at its
    first and last visit into (reversed) never-return, closed, never-return
    pieces."""
    K = len(wbar) - 1
    out = []
    for k in range(K + 1):
        out.append(sum(wbar[s] * r[k - s - t] * wbar[t]
                       for s in range(k + 1) for t in range(k - s + 1)))
    return out


# ---------------------------------------------------------------------------
# Walk matrix and main polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WalkMatrix:
    subset: frozenset
    columns: tuple[tuple[int, ...], ...]  # column k = A^k j_S

    @property
    def n(self) -> int:
        return len(self.columns)

    def as_matrix(self) -> ExactMatrix:
        n = len(self.columns[0])
        return ExactMatrix.from_rows([[col[x] for col in self.columns] for x in range(n)])

    def row(self, x: int) -> tuple[int, ...]:
        return tuple(col[x] for col in self.columns)


def _char_vector(n: int, S: Iterable[int]) -> list[int]:
    S = set(S)
    if not S:
        raise PreconditionError("S must be non-empty")
    if any(not 0 <= x < n for x in S):
        raise PreconditionError("S contains a non-vertex")
    return [1 if x in S else 0 for x in range(n)]


def walk_matrix(G: Graph, S: Iterable[int] | None = None) -> WalkMatrix:
    S = range(G.n) if S is None else S
    j = _char_vector(G.n, S)
    cols = walk_vectors(G, G.n - 1, j)
    return WalkMatrix(frozenset(x for x in range(G.n) if j[x]), tuple(tuple(c) for c in cols))


def main_polynomial(G: Graph, S: Iterable[int] | None = None) -> Poly:
    """Monic polynomial of the first linear dependency among j_S, A j_S, ...

    Finds the least r with A^r j_S in the span of the earlier columns, solves
    for the coefficients and returns z^r - a_1 z^{r-1} - ... - a_r. For
    S = V(G) this is the main polynomial; its coefficients must be integers.
    """
    S = range(G.n) if S is None else S
    cols = [_char_vector(G.n, S)]
    while True:
        nxt = _step(G.nbrs, cols[-1])
        r = len(cols)
        sol = solve_exact([[c[x] for c in cols] for x in range(G.n)], nxt)
        if sol is not None:
            # nxt = sum_i sol[i] * A^i j_S
            poly = Poly([-c for c in sol] + [1])
            if not poly.is_integral():
                raise IntegrityError(f"non-integral main polynomial {poly}")
            return poly
        cols.append(nxt)
        if r > G.n:
            raise IntegrityError("no dependency among n+1 walk-matrix columns")


# ---------------------------------------------------------------------------
# Modular fast path (candidate search only; matches are re-verified exactly)
# ---------------------------------------------------------------------------

HASH_PRIMES = (67108859, 67108837)  # below 2^26: n * p stays under 2^53 for n < 2^27


def profile_residues(G: Graph, K: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """(W mod p, R mod p) as n x (K+1) arrays, via modular matrix powers.

    Products run in float64 (BLAS) while n * p < 2^53, which keeps every
    partial sum an exactly representable integer; otherwise int64.
    """
    n = G.n
    dtype = np.float64 if n * p < 2 ** 53 else np.int64
    A = G.adjacency_array().astype(dtype)
    P = np.eye(n, dtype=dtype)
    W = np.empty((n, K + 1), dtype=np.int64)
    R = np.empty((n, K + 1), dtype=np.int64)
    for k in range(K + 1):
        W[:, k] = np.fmod(P.sum(axis=1), p)
        R[:, k] = np.diagonal(P)
        P = np.fmod(A @ P, p)
    return W, R


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

BRUTE_MAX_PATHS = 6_000_000  # admits every graph with n <= 8 at k <= 8


def brute_force_profiles(G: Graph, v: int, K: int) -> tuple[list[int], list[int]]:
    """(w^0..w^K, r^0..r^K) at v by explicit depth-first enumeration of
    every walk of length <= K. Exponential; an oracle for tests."""
    _check_vertex(G, v)
    dmax = max(G.degrees(), default=0)
    if dmax ** K > BRUTE_MAX_PATHS:
        raise BudgetExceeded(f"brute force would explore {dmax}^{K} walks (cap {BRUTE_MAX_PATHS})")
    W = [0] * (K + 1)
    R = [0] * (K + 1)
    stack = [(v, 0)]
    while stack:
        u, depth = stack.pop()
        W[depth] += 1
        if u == v:
            R[depth] += 1
        if depth < K:
            for w in G.nbrs[u]:
                stack.append((w, depth + 1))
    return W, R


def brute_force_walks(G: Graph, v: int, k: int) -> int:
    return brute_force_profiles(G, v, k)[0][k]


def brute_force_closed(G: Graph, v: int, k: int) -> int:
    return brute_force_profiles(G, v, k)[1][k]


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------

def profiles_to_csv(rows: Sequence[Sequence[int]], vertices: Sequence[int] | None = None) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["vertex", "k", "count"])
    vertices = range(len(rows)) if vertices is None else vertices
    for v, row in zip(vertices, rows):
        for k, c in enumerate(row):
            wr.writerow([v, k, str(c)])
    return buf.getvalue()


def profiles_to_json(rows: Sequence[Sequence[int]], vertices: Sequence[int] | None = None) -> str:
    vertices = range(len(rows)) if vertices is None else vertices
    return json.dumps({str(v): [str(c) for c in row] for v, row in zip(vertices, rows)},
                      sort_keys=True)
