"""Explicit small-graph construction and brute-force verification.

Graphs are stored as tuples of adjacency bitsets (one int per vertex),
which keeps BFS layer arithmetic and neighborhood counting exact and
fast enough for a few thousand vertices.  Subspace vertices carry their
reduced GF(2) basis as the canonical label.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from .geometric import geometric_candidate, gram_data
from .params import IntersectionArray, complete_array
from .spectral import multiplicity, spectrum, standard_sequence

MAX_VERTICES = 5000


# ---------------------------------------------------------------------------
# GF(2) linear algebra on int bitsets


def gf2_rref(rows) -> tuple[int, ...]:
    """Canonical reduced row-echelon basis of the span of the given rows."""
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            lead = v.bit_length() - 1
            if lead in pivots:
                v ^= pivots[lead]
            else:
                pivots[lead] = v
                break
    for lead in sorted(pivots, reverse=True):
        for other in pivots:
            if other > lead and (pivots[other] >> lead) & 1:
                pivots[other] ^= pivots[lead]
    return tuple(sorted(pivots.values(), reverse=True))


def gf2_span(basis) -> frozenset[int]:
    """All vectors in the span (including zero)."""
    out = {0}
    for b in basis:
        out |= {x ^ b for x in out}
    return frozenset(out)


def gf2_nullspace(rows, nbits: int) -> tuple[int, ...]:
    """Basis of {x : <x, r> = 0 over GF(2) for every row r}."""
    rr = gf2_rref(rows)
    pivot_bits = {r.bit_length() - 1 for r in rr}
    free_bits = [b for b in range(nbits) if b not in pivot_bits]
    basis = []
    for fb in free_bits:
        # e_fb plus whatever pivot coordinates the constraints force
        v = 1 << fb
        for r in rr:
            if (v & r).bit_count() & 1:
                v ^= 1 << (r.bit_length() - 1)
        basis.append(v)
    return tuple(basis)


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    name: str
    n: int
    adj: tuple[int, ...]
    labels: tuple

    def degree(self, x: int) -> int:
        return self.adj[x].bit_count()

    def edges(self):
        for x in range(self.n):
            row = self.adj[x] >> (x + 1)
            y = x + 1
            while row:
                if row & 1:
                    yield (x, y)
                row >>= 1
                y += 1

    def to_adjacency_lines(self) -> list[str]:
        return [
            f"{x}: " + " ".join(str(y) for y in _bits(self.adj[x]))
            for x in range(self.n)
        ]

    def to_edge_list_lines(self) -> list[str]:
        return [f"{x} {y}" for x, y in self.edges()]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _graph_from_labels(name, labels, adjacent) -> Graph:
    labels = sorted(labels)
    n = len(labels)
    if n > MAX_VERTICES:
        raise ValueError(f"size limit exceeded: {n} > {MAX_VERTICES} vertices")
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if adjacent(labels[i], labels[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(name=name, n=n, adj=tuple(adj), labels=tuple(labels))


def build_hamming(D: int, q: int) -> Graph:
    words = list(product(range(q), repeat=D))
    return _graph_from_labels(
        f"hamming({D},{q})", words,
        lambda u, w: sum(1 for a, b in zip(u, w) if a != b) == 1)


def build_johnson(n: int, d: int) -> Graph:
    if n < 2 * d:
        raise ValueError("need n >= 2d")
    sets = list(combinations(range(n), d))
    return _graph_from_labels(
        f"johnson({n},{d})", sets,
        lambda u, w: len(set(u) & set(w)) == d - 1)


def build_odd(k: int) -> Graph:
    sets = list(combinations(range(2 * k - 1), k - 1))
    return _graph_from_labels(
        f"odd({k})", sets,
        lambda u, w: not set(u) & set(w))


def build_folded_cube(m: int) -> Graph:
    if m % 2 == 0 or m < 5:
        raise ValueError("need odd m >= 5")
    # representatives: words with top bit 0; classes {v, ~v}
    reps = list(range(1 << (m - 1)))
    return _graph_from_labels(
        f"folded_cube({m})", reps,
        lambda u, w: (u ^ w).bit_count() in (1, m - 1))


def build_symplectic_dual_polar(D: int) -> Graph:
    """Maximal totally isotropic subspaces of a 2D-dim symplectic GF(2) space,
    adjacent when the intersection has dimension D-1."""
    if not 1 <= D <= 4:
        raise ValueError("size limit exceeded: symplectic construction supports D <= 4")
    nbits = 2 * D
    even = sum(1 << i for i in range(0, nbits, 2))
    odd = sum(1 << i for i in range(1, nbits, 2))

    def partner(v: int) -> int:
        # swap the two coordinates of each hyperbolic pair
        return ((v & even) << 1) | ((v & odd) >> 1)

    level = {(v,) for v in range(1, 1 << nbits)}
    for _ in range(2, D + 1):
        nxt = set()
        for basis in level:
            perp = gf2_nullspace([partner(b) for b in basis], nbits)
            span = gf2_span(basis)
            for w in gf2_span(perp):
                if w and w not in span:
                    nxt.add(gf2_rref(basis + (w,)))
        level = nxt
    expected = math.prod(2 ** i + 1 for i in range(1, D + 1))
    if len(level) != expected:
        raise RuntimeError(f"isotropic enumeration found {len(level)}, expected {expected}")

    labels = sorted(level)
    pivot_dicts = [{r.bit_length() - 1: r for r in basis} for basis in labels]

    def union_rank(i: int, j: int) -> int:
        piv = dict(pivot_dicts[i])
        for r in labels[j]:
            while r:
                lead = r.bit_length() - 1
                p = piv.get(lead)
                if p is None:
                    piv[lead] = r
                    break
                r ^= p
        return len(piv)

    n = len(labels)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if union_rank(i, j) == D + 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(name=f"symplectic_dual_polar({D})", n=n, adj=tuple(adj), labels=tuple(labels))


_BUILDERS = {
    "hamming": build_hamming,
    "johnson": build_johnson,
    "odd": build_odd,
    "folded_cube": build_folded_cube,
    "symplectic_dual_polar": build_symplectic_dual_polar,
}


def build(family: str, **params) -> Graph:
    """Construct a named family graph, e.g. build("hamming", D=3, q=3)."""
    if family not in _BUILDERS:
        raise ValueError(f"unknown buildable family {family!r}; known: {sorted(_BUILDERS)}")
    return _BUILDERS[family](**params)


def remove_edge(g: Graph, x: int, y: int) -> Graph:
    """Copy of the graph with one edge deleted (for failure-witness tests)."""
    adj = list(g.adj)
    adj[x] &= ~(1 << y)
    adj[y] &= ~(1 << x)
    return Graph(name=g.name + f"-edge({x},{y})", n=g.n, adj=tuple(adj), labels=g.labels)


# ---------------------------------------------------------------------------
# BFS layers and distance-regularity certification


@functools.lru_cache(maxsize=8)
def bfs_layers_all(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Per-vertex BFS layers as bitsets; raises on a disconnected graph."""
    full = (1 << g.n) - 1
    out = []
    for x in range(g.n):
        layers = [1 << x]
        seen = 1 << x
        while True:
            nxt = 0
            frontier = layers[-1]
            while frontier:
                low = frontier & -frontier
                nxt |= g.adj[low.bit_length() - 1]
                frontier ^= low
            nxt &= ~seen
            if not nxt:
                break
            layers.append(nxt)
            seen |= nxt
        if seen != full:
            raise ValueError(f"graph {g.name} is disconnected from vertex {x}")
        out.append(tuple(layers))
    return tuple(out)


@functools.lru_cache(maxsize=8)
def distance_matrix(g: Graph) -> tuple[bytes, ...]:
    layers = bfs_layers_all(g)
    rows = []
    for x in range(g.n):
        row = bytearray(g.n)
        for i, layer in enumerate(layers[x]):
            for y in _bits(layer):
                row[y] = i
        rows.append(bytes(row))
    return tuple(rows)


@dataclass(frozen=True)
class DistanceProfile:
    """BFS data underlying a certification: layers per vertex, the empirical
    p^h_{ij} table when tabulated, and the first failure witness if any."""

    diameter: int
    layer_sizes: tuple[int, ...]
    p_numbers: tuple | None
    witness: tuple | None


@dataclass(frozen=True)
class CertifyResult:
    ok: bool
    array: IntersectionArray | None
    profile: DistanceProfile

    @property
    def witness(self):
        return self.profile.witness


def certify_drg(g: Graph, p_table_cap: int = 300) -> CertifyResult:
    """Full-BFS certification that the graph is distance-regular.

    Checks that the c/a/b counts are constant over all ordered vertex
    pairs, that layer sizes match the k_i product formula, and (for
    graphs up to ``p_table_cap`` vertices) tabulates the empirical
    p^h_{ij} numbers, verifying they only depend on h = d(x,y).
    """
    try:
        layers = bfs_layers_all(g)
    except ValueError as exc:
        return CertifyResult(False, None, DistanceProfile(0, (), None, ("connectivity", str(exc))))
    D = len(layers[0]) - 1

    def fail(witness):
        sizes = tuple(l.bit_count() for l in layers[0])
        return CertifyResult(False, None, DistanceProfile(D, sizes, None, witness))

    # candidate intersection numbers from an arbitrary base pair per distance
    b_cand = [0] * (D + 1)
    c_cand = [0] * (D + 1)
    a_cand = [0] * (D + 1)
    for i, layer in enumerate(layers[0]):
        y = next(_bits(layer))
        below = layers[0][i - 1] if i > 0 else 0
        above = layers[0][i + 1] if i < D else 0
        c_cand[i] = (g.adj[y] & below).bit_count()
        b_cand[i] = (g.adj[y] & above).bit_count()
        a_cand[i] = (g.adj[y] & layer).bit_count()

    for x in range(g.n):
        lx = layers[x]
        if len(lx) - 1 != D:
            return fail(("eccentricity", x, len(lx) - 1, D))
        for i, layer in enumerate(lx):
            below = lx[i - 1] if i > 0 else 0
            above = lx[i + 1] if i < D else 0
            for y in _bits(layer):
                c = (g.adj[y] & below).bit_count()
                if c != c_cand[i]:
                    return fail((x, y, i, "c", c, c_cand[i]))
                b = (g.adj[y] & above).bit_count()
                if b != b_cand[i]:
                    return fail((x, y, i, "b", b, b_cand[i]))
                a = (g.adj[y] & layer).bit_count()
                if a != a_cand[i]:
                    return fail((x, y, i, "a", a, a_cand[i]))

    arr = complete_array(b_cand[:D], c_cand[1:])
    sizes = tuple(l.bit_count() for l in layers[0])
    for i, size in enumerate(sizes):
        if arr.k_seq[i] != size:
            return fail(("k_i formula", i, size, arr.k_seq[i]))
    if arr.v != g.n:
        return fail(("vertex count", g.n, arr.v))

    p_numbers = None
    if g.n <= p_table_cap:
        p_numbers = _tabulate_p_numbers(g, layers, D)
        if isinstance(p_numbers, CertifyResult):
            return p_numbers

    return CertifyResult(True, arr, DistanceProfile(D, sizes, p_numbers, None))


def _tabulate_p_numbers(g: Graph, layers, D: int):
    """Empirical p^h_{ij} over all pairs; constancy in (x, y) enforced."""
    p = [[[None] * (D + 1) for _ in range(D + 1)] for _ in range(D + 1)]
    for x in range(g.n):
        for h, layer in enumerate(layers[x]):
            for y in _bits(layer):
                for i in range(D + 1):
                    for j in range(D + 1):
                        cnt = (layers[x][i] & layers[y][j]).bit_count()
                        if p[h][i][j] is None:
                            p[h][i][j] = cnt
                        elif p[h][i][j] != cnt:
                            sizes = tuple(l.bit_count() for l in layers[0])
                            return CertifyResult(
                                False, None,
                                DistanceProfile(D, sizes, None, (x, y, (h, i, j), cnt, p[h][i][j])))
    return tuple(tuple(tuple(row) for row in plane) for plane in p)


# ---------------------------------------------------------------------------
# Delsarte clique audit


@dataclass(frozen=True)
class CliqueAudit:
    ok: bool
    n_cliques: int
    gamma: tuple[int, ...] | None
    violation: tuple | None


def delsarte_clique_audit(g: Graph, arr: IntersectionArray) -> CliqueAudit:
    """Census of the (a_1+2)-cliques plus complete-regularity verification.

    Each edge must lie in exactly one clique; around every clique the
    distance partition must be equitable with covering radius D-1, the
    empirical gamma values constant per distance class and satisfying
    gamma_i*u_i + (a_1+2-gamma_i)*u_{i+1} = 0 for the theta_min sequence.
    """
    profile = geometric_candidate(arr)
    size = profile.clique_size
    a1 = profile.a1
    u = standard_sequence(arr, profile.theta_min).u

    cliques = set()
    for x, y in g.edges():
        common = g.adj[x] & g.adj[y]
        if common.bit_count() != a1:
            return CliqueAudit(False, 0, None, ("lambda", x, y, common.bit_count(), a1))
        members = frozenset({x, y} | set(_bits(common)))
        for u1, u2 in combinations(sorted(members), 2):
            if not (g.adj[u1] >> u2) & 1:
                return CliqueAudit(False, 0, None, ("not a clique", x, y, (u1, u2)))
        cliques.add(members)

    edge_cover = {}
    for cl in cliques:
        for e in combinations(sorted(cl), 2):
            edge_cover[e] = edge_cover.get(e, 0) + 1
    for x, y in g.edges():
        if edge_cover.get((x, y), 0) != 1:
            return CliqueAudit(False, len(cliques), None,
                               ("edge cover", x, y, edge_cover.get((x, y), 0)))

    layers = bfs_layers_all(g)
    D = len(layers[0]) - 1
    gamma_seen: list[int | None] = [None] * D
    for cl in sorted(cliques, key=sorted):
        members = sorted(cl)
        cl_mask = 0
        for m in members:
            cl_mask |= 1 << m
        # distance partition around the clique
        parts = [cl_mask]
        covered = cl_mask
        while covered != (1 << g.n) - 1:
            nxt = 0
            for z in _bits(parts[-1]):
                nxt |= g.adj[z]
            nxt &= ~covered
            if not nxt:
                return CliqueAudit(False, len(cliques), None, ("clique partition disconnected",))
            parts.append(nxt)
            covered |= nxt
        if len(parts) - 1 != D - 1:
            return CliqueAudit(False, len(cliques), None,
                               ("covering radius", members, len(parts) - 1, D - 1))
        # equitability of the partition
        for i, part in enumerate(parts):
            counts = None
            for z in _bits(part):
                row = tuple((g.adj[z] & pj).bit_count() for pj in parts)
                if counts is None:
                    counts = row
                elif counts != row:
                    return CliqueAudit(False, len(cliques), None,
                                       ("not equitable", members, i, z, row, counts))
        # empirical gamma: members of the clique at distance i from a vertex at
        # distance i of the clique
        for i, part in enumerate(parts):
            for z in _bits(part):
                gcount = sum(1 for m in members if (layers[z][i] >> m) & 1)
                if gamma_seen[i] is None:
                    gamma_seen[i] = gcount
                elif gamma_seen[i] != gcount:
                    return CliqueAudit(False, len(cliques), None,
                                       ("gamma not constant", members, i, z, gcount, gamma_seen[i]))

    gamma = tuple(int(x) for x in gamma_seen)
    for i in range(D):
        if gamma[i] * u[i] + (size - gamma[i]) * u[i + 1] != 0:
            return CliqueAudit(False, len(cliques), gamma, ("gamma identity", i))
    return CliqueAudit(True, len(cliques), gamma, None)


# ---------------------------------------------------------------------------
# strongly closed subgraphs


@dataclass(frozen=True)
class ClosureResult:
    vertices: tuple[int, ...]
    subgraph: Graph
    certify: CertifyResult


def strongly_closed_closure(g: Graph, x: int, y: int) -> ClosureResult:
    """Least vertex set containing x, y closed under geodesics-plus-one,
    with the induced subgraph and its certification."""
    dist = distance_matrix(g)
    members = {x, y}
    grew = True
    while grew:
        grew = False
        current = sorted(members)
        for u1 in current:
            du = dist[u1]
            for u2 in current:
                if u2 < u1:
                    continue
                dv = dist[u2]
                limit = du[u2] + 1
                for z in range(g.n):
                    if z not in members and du[z] + dv[z] <= limit:
                        members.add(z)
                        grew = True
    verts = sorted(members)
    index = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for i, v in enumerate(verts):
        row = g.adj[v]
        for w in _bits(row):
            if w in index:
                adj[i] |= 1 << index[w]
    sub = Graph(name=f"{g.name}|closure({x},{y})", n=len(verts), adj=tuple(adj),
                labels=tuple(g.labels[v] for v in verts))
    return ClosureResult(vertices=tuple(verts), subgraph=sub, certify=certify_drg(sub))


# ---------------------------------------------------------------------------
# numeric spectral audit


@dataclass(frozen=True)
class SpectralAudit:
    ok: bool
    eigen_dims: tuple[tuple[float, int], ...]
    mult_match: bool
    max_gram_error: float
    dependency_checks: tuple
    failures: tuple


def empirical_spectrum_and_gram(g: Graph, arr: IntersectionArray | None = None,
                                n_pairs: int = 200, seed: int = 0,
                                tol: float = 1e-6) -> SpectralAudit:
    """Numeric eigendecomposition cross-checks against the exact formulas.

    Verifies eigenspace dimensions against the standard-sequence
    multiplicities, samples normalized-representation inner products
    <x^, y^> = u_{d(x,y)}, and, for geometric arrays at a j in {3, 4}
    where the discriminant S vanishes, checks the vector dependency
    C_j = t_j F_j inside the theta_min eigenspace.
    """
    if arr is None:
        cert = certify_drg(g)
        if not cert.ok:
            raise ValueError(f"graph is not distance-regular: {cert.witness}")
        arr = cert.array
    failures = []

    A = np.zeros((g.n, g.n))
    for v in range(g.n):
        for w in _bits(g.adj[v]):
            A[v, w] = 1.0
    evals, evecs = np.linalg.eigh(A)

    # cluster numerically equal eigenvalues
    clusters = []
    start = 0
    for i in range(1, g.n + 1):
        if i == g.n or evals[i] - evals[i - 1] > 1e-7:
            clusters.append((float(np.mean(evals[start:i])), start, i))
            start = i
    clusters.reverse()  # decreasing
    eigen_dims = tuple((val, hi - lo) for val, lo, hi in clusters)

    exact = spectrum(arr)
    mult_match = len(exact) == len(clusters)
    if mult_match:
        for entry, (val, lo, hi) in zip(exact, clusters):
            mid = float(entry.lo + entry.hi) / 2
            if abs(mid - val) > 1e-5 or entry.mult_lo > hi - lo or entry.mult_hi < hi - lo:
                mult_match = False
                failures.append(("multiplicity", val, hi - lo, entry.value_str(), entry.mult_str()))
    else:
        failures.append(("eigenvalue count", len(clusters), len(exact)))

    dist = distance_matrix(g)
    rng = random.Random(seed)
    max_err = 0.0
    for val, lo, hi in clusters:
        dim = hi - lo
        U = evecs[:, lo:hi]
        scale = g.n / dim
        theta = Fraction(round(val)) if abs(val - round(val)) < 1e-7 else None
        if theta is None:
            continue
        seq = standard_sequence(arr, theta)
        if not seq.is_eigenvalue:
            failures.append(("terminal identity", val))
            continue
        for _ in range(n_pairs):
            xv = rng.randrange(g.n)
            yv = rng.randrange(g.n)
            entry = float(U[xv] @ U[yv]) * scale
            err = abs(entry - float(seq.u[dist[xv][yv]]))
            max_err = max(max_err, err)
            if err > tol:
                failures.append(("gram", val, xv, yv, err))

    dependency = tuple(_dependency_checks(g, arr, clusters, evecs, dist, tol))
    for item in dependency:
        if not item[-1]:
            failures.append(("dependency",) + item)

    return SpectralAudit(ok=not failures, eigen_dims=eigen_dims, mult_match=mult_match,
                         max_gram_error=max_err, dependency_checks=dependency,
                         failures=tuple(failures))


def _dependency_checks(g, arr, clusters, evecs, dist, tol):
    """Check C_j = t_j F_j in the theta_min eigenspace at S = 0 cases."""
    from .geometric import NotGeometric
    try:
        geometric_candidate(arr)
    except NotGeometric:
        return
    for j in (3, 4):
        if not 3 <= j <= arr.D:
            continue
        gd = gram_data(arr, j)
        if gd.S != 0 or gd.t_j is None:
            continue
        # theta_min eigenspace projection vectors
        val, lo, hi = min(clusters, key=lambda c: c[0])
        U = evecs[:, lo:hi] * math.sqrt(g.n / (hi - lo))
        pair = None
        for xv in range(g.n):
            for yv in range(g.n):
                if dist[xv][yv] == j:
                    pair = (xv, yv)
                    break
            if pair:
                break
        if pair is None:
            continue
        xv, yv = pair
        F = U[xv] - U[yv]
        C = np.zeros_like(F)
        for z in range(g.n):
            if dist[xv][z] == 1 and dist[yv][z] == j - 1:
                C += U[z]
            elif dist[xv][z] == j - 1 and dist[yv][z] == 1:
                C -= U[z]
        err = float(np.max(np.abs(C - float(gd.t_j) * F)))
        yield (j, (xv, yv), err, err <= tol)
