"""Finite relational structures and the combinatorics on top of them.

Uniform hypergraphs (graphs when the arity is 2), tournaments, bipartite
graphs and parameterized equivalence structures, together with clique
freeness checks, the independence parameter alpha_s, seeded generators,
induced-embedding search, reduct transforms and extension-axiom probes.

Vertices are 0-based integers.  Every structure is immutable after
construction and all operations are pure functions; randomized operations
take an explicit seed and are deterministic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Mapping, Optional, Sequence, Union


class FreenessViolation(Exception):
    """An operation would create a complete r-graph on s vertices."""

    def __init__(self, witness: Sequence[int]):
        self.witness = tuple(sorted(witness))
        super().__init__(f"complete subgraph on vertices {self.witness}")


def _canonical_edge(edge: Iterable[int], r: int, n: int) -> tuple[int, ...]:
    vs = tuple(sorted(edge))
    if len(vs) != r or len(set(vs)) != r:
        raise ValueError(f"edge {vs} does not have {r} distinct vertices")
    if vs and (vs[0] < 0 or vs[-1] >= n):
        raise ValueError(f"edge {vs} out of range for {n} vertices")
    return vs


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertices 0..n-1.

    Edges are stored as sorted tuples of r distinct vertices, so the
    relation is irreflexive and symmetric by representation.
    """

    r: int
    n: int
    edges: frozenset[tuple[int, ...]]

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("arity must be at least 2")
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = frozenset(_canonical_edge(e, self.r, self.n) for e in self.edges)
        object.__setattr__(self, "edges", canon)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        vs = tuple(sorted(vertices))
        return len(set(vs)) == self.r and vs in self.edges

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Per-vertex neighbour bitsets; graphs (r = 2) only."""
        if self.r != 2:
            raise ValueError("adjacency bitsets are only defined for r = 2")
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def subedge_masks(self) -> dict[tuple[int, ...], int]:
        """Map each (r-1)-subset of an edge to the bitset of its extensions."""
        masks: dict[tuple[int, ...], int] = {}
        for e in self.edges:
            for i in range(self.r):
                key = e[:i] + e[i + 1:]
                masks[key] = masks.get(key, 0) | (1 << e[i])
        return masks


@dataclass(frozen=True)
class Tournament:
    """A complete orientation of the edges of K_n; arcs are (winner, loser)."""

    n: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        seen = set()
        for u, v in arcs:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"invalid arc ({u},{v})")
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise ValueError(f"pair {pair} oriented twice")
            seen.add(pair)
        if len(seen) != comb(self.n, 2):
            raise ValueError("every vertex pair needs exactly one orientation")

    def beats(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs


@dataclass(frozen=True)
class BipartiteGraph:
    """Vertices 0..n-1 split into two parts; edges only cross the parts."""

    n: int
    left: frozenset[int]
    right: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        left = frozenset(self.left)
        right = frozenset(self.right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        if left & right or left | right != frozenset(range(self.n)):
            raise ValueError("parts must partition the vertex set")
        canon = set()
        for e in self.edges:
            u, v = sorted(e)
            if u == v:
                raise ValueError("loops are not allowed")
            if not ((u in left) != (v in left)):
                raise ValueError(f"edge ({u},{v}) does not cross the parts")
            canon.add((u, v))
        object.__setattr__(self, "edges", frozenset(canon))

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)


@dataclass(frozen=True)
class Feq2Structure:
    """Indexed objects plus, for each parameter, a partition of the objects
    into blocks of size two (one flagged singleton when the count is odd)."""

    objects: int
    parameters: int
    classes: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if len(self.classes) != self.parameters:
            raise ValueError("one partition per parameter required")
        canon = []
        for z, blocks in enumerate(self.classes):
            blocks = tuple(sorted(tuple(sorted(b)) for b in blocks))
            covered: set[int] = set()
            singletons = 0
            for b in blocks:
                if len(b) == 1:
                    singletons += 1
                elif len(b) != 2:
                    raise ValueError(f"parameter {z}: block {b} has size {len(b)}")
                if covered & set(b):
                    raise ValueError(f"parameter {z}: blocks overlap on {b}")
                covered.update(b)
            if covered != set(range(self.objects)):
                raise ValueError(f"parameter {z}: blocks do not cover the objects")
            if singletons != self.objects % 2:
                raise ValueError(f"parameter {z}: wrong number of singleton blocks")
            canon.append(blocks)
        object.__setattr__(self, "classes", tuple(canon))

    @cached_property
    def _block_of(self) -> tuple[dict[int, tuple[int, ...]], ...]:
        maps = []
        for blocks in self.classes:
            m: dict[int, tuple[int, ...]] = {}
            for b in blocks:
                for x in b:
                    m[x] = b
            maps.append(m)
        return tuple(maps)

    def same_class(self, z: int, x: int, y: int) -> bool:
        return self._block_of[z][x] is self._block_of[z][y]

    def classmate(self, z: int, x: int) -> Optional[int]:
        block = self._block_of[z][x]
        if len(block) == 1:
            return None
        return block[0] if block[1] == x else block[1]


Structure = Union[Hypergraph, Tournament, Feq2Structure, BipartiteGraph]


# ---------------------------------------------------------------------------
# Clique machinery
# ---------------------------------------------------------------------------

def _extend_clique(masks: Mapping[tuple[int, ...], int], prefix: list[int],
                   common: int, need: int, r: int) -> Optional[list[int]]:
    # prefix is a partial clique; common holds the vertices completing every
    # (r-1)-subset of prefix, already restricted above the newest vertex.
    if need == 0:
        return prefix
    if common.bit_count() < need:
        return None
    for v in _bits(common):
        new_common = common & ~((1 << (v + 1)) - 1)
        ok = True
        for rho in itertools.combinations(prefix, r - 2):
            key = tuple(sorted(rho + (v,)))
            new_common &= masks.get(key, 0)
            if new_common == 0 and need > 1:
                ok = False
                break
        if ok or need == 1:
            found = _extend_clique(masks, prefix + [v], new_common, need - 1, r)
            if found is not None:
                return found
    return None


def find_clique(h: Hypergraph, s: int) -> Optional[tuple[int, ...]]:
    """Return an s-set whose r-subsets are all edges, or None."""
    if s <= h.r:
        raise ValueError("clique size must exceed the arity")
    if h.n < s:
        return None
    need_deg = comb(s - 1, h.r - 1)
    keep = {v for v in range(h.n) if h.degrees[v] >= need_deg}
    if len(keep) < s:
        return None
    masks: dict[tuple[int, ...], int] = {}
    for e in h.edges:
        if not set(e) <= keep:
            continue
        for i in range(h.r):
            key = e[:i] + e[i + 1:]
            masks[key] = masks.get(key, 0) | (1 << e[i])
    for base in sorted(masks):
        common = masks[base] & ~((1 << (base[-1] + 1)) - 1)
        found = _extend_clique(masks, list(base), common, s - (h.r - 1), h.r)
        if found is not None:
            return tuple(found)
    return None


def is_free(h: Hypergraph, s: int) -> bool:
    """True iff no s vertices span a complete sub-r-graph."""
    return find_clique(h, s) is None


class _FreeBuilder:
    """Incremental edge insertion with on-line checks that no complete
    s-set appears.  Used by the generators and the maximality test."""

    def __init__(self, n: int, r: int, s: int,
                 edges: Iterable[tuple[int, ...]] = ()):
        if not (s > r >= 2):
            raise ValueError("need s > r >= 2")
        self.n = n
        self.r = r
        self.s = s
        self.edges: set[tuple[int, ...]] = set()
        self.masks: dict[tuple[int, ...], int] = {}
        for e in edges:
            self.add(e)

    def add(self, edge: tuple[int, ...]) -> None:
        self.edges.add(edge)
        for i in range(self.r):
            key = edge[:i] + edge[i + 1:]
            self.masks[key] = self.masks.get(key, 0) | (1 << edge[i])

    def creates_clique(self, edge: tuple[int, ...]) -> bool:
        """Would adding edge complete an s-clique?  The new clique must
        contain all of edge, since the current edge set is clique-free."""
        common = -1
        for tau in itertools.combinations(edge, self.r - 1):
            common &= self.masks.get(tau, 0)
            if common == 0:
                return False
        for v in edge:
            common &= ~(1 << v)
        found = _extend_clique(self.masks, list(edge), common,
                               self.s - self.r, self.r)
        return found is not None


def add_vertex_with_links(h: Hypergraph, links: Iterable[Iterable[int]],
                          s: int) -> Hypergraph:
    """Extend h by a fresh vertex attached through the given (r-1)-subsets.

    The result is checked to stay free of complete s-sets; a violation
    raises FreenessViolation carrying the offending vertex set.
    """
    links = [tuple(sorted(x)) for x in links]
    for sigma in links:
        if len(sigma) != h.r - 1 or len(set(sigma)) != h.r - 1:
            raise ValueError(f"link {sigma} is not an (r-1)-subset")
        if sigma and (sigma[0] < 0 or sigma[-1] >= h.n):
            raise ValueError(f"link {sigma} mentions unknown vertices")
    star = h.n
    new_edges = set(h.edges) | {tuple(sorted(sigma + (star,))) for sigma in links}
    extended = Hypergraph(h.r, h.n + 1, frozenset(new_edges))
    witness = find_clique(extended, s)
    if witness is not None:
        raise FreenessViolation(witness)
    return extended


def random_maximal_free(n: int, r: int, s: int, seed: int) -> Hypergraph:
    """Greedy random construction of a maximal K^r_s-free r-graph.

    Candidate edges are visited in a seeded random order and kept whenever
    they do not complete an s-clique, so the result is maximal and
    deterministic for a given seed.
    """
    if not (s > r >= 2):
        raise ValueError("need s > r >= 2")
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    rng = random.Random(seed)
    candidates = list(itertools.combinations(range(n), r))
    rng.shuffle(candidates)
    builder = _FreeBuilder(n, r, s)
    for e in candidates:
        if not builder.creates_clique(e):
            builder.add(e)
    return Hypergraph(r, n, frozenset(builder.edges))


def is_maximal_free(h: Hypergraph, s: int) -> bool:
    """True iff h is K^r_s-free and every absent edge would break that."""
    if not is_free(h, s):
        return False
    builder = _FreeBuilder(h.n, h.r, s, sorted(h.edges))
    for e in itertools.combinations(range(h.n), h.r):
        if e not in h.edges and not builder.creates_clique(e):
            return False
    return True


def cyclic_graph(n: int, connections: Iterable[int]) -> Hypergraph:
    """Circulant graph: i ~ j iff their circular distance lies in connections."""
    conns = sorted(set(int(d) for d in connections))
    for d in conns:
        if not 1 <= d <= n // 2:
            raise ValueError(f"connection {d} outside 1..{n // 2}")
    edges = set()
    for i in range(n):
        for d in conns:
            edges.add(tuple(sorted((i, (i + d) % n))))
    return Hypergraph(2, n, frozenset(edges))


# ---------------------------------------------------------------------------
# alpha_s: largest subset inducing a K_{s-1}-free subgraph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlphaResult:
    """Outcome of an alpha_s computation.

    value is exact when exact is True, otherwise the best lower bound
    reached before the node budget ran out.
    """

    value: int
    exact: bool
    witness: tuple[int, ...]
    nodes: int


def _color_sort(cand: int, adj: Sequence[int]) -> list[tuple[int, int]]:
    # Greedy colouring of the candidate set; the colour number bounds the
    # size of any clique inside the class prefix.
    classes: list[int] = []
    order: list[tuple[int, int]] = []
    for v in _bits(cand):
        for c, cls in enumerate(classes):
            if cls & adj[v] == 0:
                classes[c] |= 1 << v
                break
        else:
            classes.append(1 << v)
    for c, cls in enumerate(classes, start=1):
        for v in _bits(cls):
            order.append((v, c))
    return order


def _max_clique(adj: Sequence[int], n: int, budget: Optional[int]):
    best = 0
    best_set: tuple[int, ...] = ()
    nodes = 0
    exhausted = False

    def expand(cand: int, current: list[int]) -> None:
        nonlocal best, best_set, nodes, exhausted
        nodes += 1
        if budget is not None and nodes > budget:
            exhausted = True
            return
        for v, bound in reversed(_color_sort(cand, adj)):
            if exhausted:
                return
            if len(current) + bound <= best:
                return
            current.append(v)
            if len(current) > best:
                best = len(current)
                best_set = tuple(current)
            sub = cand & adj[v]
            if sub:
                expand(sub, current)
            current.pop()
            cand &= ~(1 << v)

    if n > 0:
        expand((1 << n) - 1, [])
    return best, best_set, not exhausted, nodes


def _has_clique_mask(adj: Sequence[int], cand: int, size: int) -> bool:
    if size == 0:
        return True
    if cand.bit_count() < size:
        return False
    for v in _bits(cand):
        if _has_clique_mask(adj, cand & adj[v] & ~((1 << (v + 1)) - 1), size - 1):
            return True
    return False


def alpha_s(g: Hypergraph, s: int, budget: Optional[int] = None) -> AlphaResult:
    """Size of the largest vertex subset inducing a K_{s-1}-free subgraph.

    For s = 3 this is the independence number, computed by branch and
    bound with a greedy colouring bound on the complement graph; for
    s > 3 a subset search with plain size pruning is used.  A spent node
    budget yields an inexact result carrying the best subset found.
    """
    if g.r != 2:
        raise ValueError("alpha_s is defined for graphs (r = 2)")
    if s < 3:
        raise ValueError("s must be at least 3")
    n = g.n
    if n == 0:
        return AlphaResult(0, True, (), 0)
    adj = g.adjacency
    if s == 3:
        full = (1 << n) - 1
        comp = [full & ~adj[v] & ~(1 << v) for v in range(n)]
        value, witness, exact, nodes = _max_clique(comp, n, budget)
        return AlphaResult(value, exact, tuple(sorted(witness)), nodes)

    best = 0
    best_set: tuple[int, ...] = ()
    nodes = 0
    exhausted = False

    def rec(idx: int, chosen: list[int], chosen_mask: int) -> None:
        nonlocal best, best_set, nodes, exhausted
        nodes += 1
        if budget is not None and nodes > budget:
            exhausted = True
            return
        if idx == n or len(chosen) + (n - idx) <= best:
            return
        v = idx
        # including v is allowed unless it completes a K_{s-1} inside chosen
        if not _has_clique_mask(adj, adj[v] & chosen_mask, s - 2):
            chosen.append(v)
            if len(chosen) > best:
                best = len(chosen)
                best_set = tuple(chosen)
            rec(idx + 1, chosen, chosen_mask | (1 << v))
            chosen.pop()
            if exhausted:
                return
        rec(idx + 1, chosen, chosen_mask)

    rec(0, [], 0)
    return AlphaResult(best, not exhausted, best_set, nodes)


# ---------------------------------------------------------------------------
# Search for graphs with small alpha_s
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    """Best K_s-free graph found; found is True when alpha <= target."""

    found: bool
    graph: Optional[Hypergraph]
    alpha: int
    evaluations: int


def search_small_alpha(n: int, s: int, target: int,
                       budget: int = 400, seed: int = 0) -> SearchResult:
    """Seeded search for a K_s-free graph on n vertices with small alpha_s.

    Circulant connection sets are swept first (the known extremal graphs
    at this scale are circulant), then random maximal free graphs with
    freeness-preserving edge flips.  The budget counts alpha evaluations;
    a miss returns the best graph reached, never a silent failure.
    """
    if s < 3:
        raise ValueError("s must be at least 3")
    rng = random.Random(seed)
    best_graph: Optional[Hypergraph] = None
    best_alpha = n + 1
    evals = 0

    def consider(g: Hypergraph) -> Optional[SearchResult]:
        nonlocal best_graph, best_alpha, evals
        evals += 1
        a = alpha_s(g, s)
        if a.value < best_alpha:
            best_graph, best_alpha = g, a.value
        if a.value <= target:
            return SearchResult(True, g, a.value, evals)
        return None

    half = n // 2
    for size in range(0, min(3, half) + 1):
        for conns in itertools.combinations(range(1, half + 1), size):
            if evals >= budget:
                return SearchResult(False, best_graph, best_alpha, evals)
            g = cyclic_graph(n, conns)
            if not is_free(g, s):
                continue
            hit = consider(g)
            if hit is not None:
                return hit

    while evals < budget:
        g = random_maximal_free(n, 2, s, rng.randrange(2 ** 63))
        hit = consider(g)
        if hit is not None:
            return hit
        for _ in range(3 * n):
            if evals >= budget:
                break
            edges = sorted(g.edges)
            if not edges:
                break
            dropped = edges[rng.randrange(len(edges))]
            remaining = set(edges)
            remaining.discard(dropped)
            builder = _FreeBuilder(n, 2, s, sorted(remaining))
            non_edges = [e for e in itertools.combinations(range(n), 2)
                         if e not in remaining and e != dropped
                         and not builder.creates_clique(e)]
            if not non_edges:
                continue
            added = non_edges[rng.randrange(len(non_edges))]
            builder.add(added)
            candidate = Hypergraph(2, n, frozenset(builder.edges))
            hit = consider(candidate)
            if hit is not None:
                return hit
            if alpha_s(candidate, s).value <= best_alpha:
                g = candidate
    return SearchResult(False, best_graph, best_alpha, evals)


# ---------------------------------------------------------------------------
# Induced embeddings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmbedResult:
    """mapping[i] is the host image of pattern vertex i when found.

    proven_absent distinguishes an exhausted search from a completed one.
    """

    mapping: Optional[tuple[int, ...]]
    exhausted: bool
    nodes: int

    @property
    def proven_absent(self) -> bool:
        return self.mapping is None and not self.exhausted


def _embed_order(g: Hypergraph) -> list[int]:
    # most-connected-first keeps the candidate sets small early
    remaining = set(range(g.n))
    order: list[int] = []
    placed: set[int] = set()
    while remaining:
        def contact(v: int) -> tuple[int, int, int]:
            touching = sum(1 for e in g.edges if v in e and placed & set(e))
            return (touching, g.degrees[v], -v)
        v = max(remaining, key=contact)
        order.append(v)
        placed.add(v)
        remaining.remove(v)
    return order


def embed_search(g: Hypergraph, h: Hypergraph,
                 budget: Optional[int] = None) -> EmbedResult:
    """Backtracking search for an induced embedding of g into h."""
    if g.r != h.r:
        raise ValueError("pattern and host must have the same arity")
    if g.n == 0:
        return EmbedResult((), False, 0)
    if g.n > h.n:
        return EmbedResult(None, False, 0)
    order = _embed_order(g)
    image = [-1] * g.n
    nodes = 0
    exhausted = False
    full = (1 << h.n) - 1
    h_adj = h.adjacency if h.r == 2 else None
    g_adj = g.adjacency if g.r == 2 else None

    def candidates(pos: int, used: int) -> Iterable[int]:
        u = order[pos]
        if h_adj is not None:
            mask = full & ~used
            for w in order[:pos]:
                x = image[w]
                if g_adj[u] >> w & 1:
                    mask &= h_adj[x]
                else:
                    mask &= ~h_adj[x]
                if not mask:
                    return
            yield from _bits(mask)
        else:
            placed = order[:pos]
            for v in range(h.n):
                if used >> v & 1:
                    continue
                ok = True
                for tau in itertools.combinations(placed, g.r - 1):
                    pattern_edge = g.has_edge(tau + (u,))
                    host_edge = h.has_edge(tuple(image[w] for w in tau) + (v,))
                    if pattern_edge != host_edge:
                        ok = False
                        break
                if ok:
                    yield v

    def place(pos: int, used: int) -> bool:
        nonlocal nodes, exhausted
        if pos == g.n:
            return True
        for v in candidates(pos, used):
            nodes += 1
            if budget is not None and nodes > budget:
                exhausted = True
                return False
            image[order[pos]] = v
            if place(pos + 1, used | (1 << v)):
                return True
            if exhausted:
                return False
        image[order[pos]] = -1
        return False

    if place(0, 0):
        return EmbedResult(tuple(image), False, nodes)
    return EmbedResult(None, exhausted, nodes)


def is_induced_embedding(g: Hypergraph, h: Hypergraph,
                         mapping: Sequence[int]) -> bool:
    """Check a candidate map: injective and edge set preserved both ways."""
    if g.r != h.r or len(mapping) != g.n:
        return False
    if len(set(mapping)) != g.n:
        return False
    if any(not 0 <= v < h.n for v in mapping):
        return False
    for combo in itertools.combinations(range(g.n), g.r):
        if g.has_edge(combo) != h.has_edge(tuple(mapping[v] for v in combo)):
            return False
    return True


# ---------------------------------------------------------------------------
# Reduct transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductResult:
    """Derived structure plus the provenance of every new vertex.

    provenance[i] is a (sort, original_index) pair with sort "v" for plain
    vertices, "o" for objects and "p" for parameters.
    """

    structure: Union[Hypergraph, BipartiteGraph]
    provenance: tuple[tuple[str, int], ...]


def reduct_transform(kind: str, structure: Structure,
                     anchor: Sequence[int]) -> ReductResult:
    """Definable reducts used to transfer triviality arguments.

    hyper_to_graph fixes r-2 vertices c and keeps x ~ y iff {x,y} + c is
    an edge; tournament_to_bipartite splits the out/in neighbourhood of an
    apex with the arc relation across; feq_to_bipartite relates an object
    b to a parameter c when b is the anchor's classmate under c.
    """
    if kind == "hyper_to_graph":
        if not isinstance(structure, Hypergraph):
            raise ValueError("hyper_to_graph expects a hypergraph")
        anchor = tuple(int(a) for a in anchor)
        if len(anchor) != structure.r - 2 or len(set(anchor)) != len(anchor):
            raise ValueError(f"anchor must list {structure.r - 2} distinct vertices")
        if any(not 0 <= a < structure.n for a in anchor):
            raise ValueError("anchor vertices out of range")
        remaining = [v for v in range(structure.n) if v not in set(anchor)]
        index = {v: i for i, v in enumerate(remaining)}
        edges = set()
        for x, y in itertools.combinations(remaining, 2):
            if structure.has_edge((x, y) + anchor):
                edges.add((index[x], index[y]))
        graph = Hypergraph(2, len(remaining), frozenset(edges))
        return ReductResult(graph, tuple(("v", v) for v in remaining))

    if kind == "tournament_to_bipartite":
        if not isinstance(structure, Tournament):
            raise ValueError("tournament_to_bipartite expects a tournament")
        (apex,) = (int(a) for a in anchor)
        if not 0 <= apex < structure.n:
            raise ValueError("apex out of range")
        out = sorted(v for v in range(structure.n) if structure.beats(apex, v))
        into = sorted(v for v in range(structure.n) if structure.beats(v, apex))
        new_of = {v: i for i, v in enumerate(out + into)}
        edges = set()
        for p in out:
            for q in into:
                if structure.beats(p, q):
                    edges.add(tuple(sorted((new_of[p], new_of[q]))))
        graph = BipartiteGraph(
            len(out) + len(into),
            frozenset(range(len(out))),
            frozenset(range(len(out), len(out) + len(into))),
            frozenset(edges),
        )
        return ReductResult(graph, tuple(("v", v) for v in out + into))

    if kind == "feq_to_bipartite":
        if not isinstance(structure, Feq2Structure):
            raise ValueError("feq_to_bipartite expects a parameterized equivalence")
        (apex,) = (int(a) for a in anchor)
        if not 0 <= apex < structure.objects:
            raise ValueError("apex out of range")
        objs = [o for o in range(structure.objects) if o != apex]
        obj_of = {o: i for i, o in enumerate(objs)}
        base = len(objs)
        edges = set()
        for z in range(structure.parameters):
            mate = structure.classmate(z, apex)
            if mate is not None:
                edges.add((obj_of[mate], base + z))
        graph = BipartiteGraph(
            base + structure.parameters,
            frozenset(range(base)),
            frozenset(range(base, base + structure.parameters)),
            frozenset(edges),
        )
        provenance = tuple(("o", o) for o in objs) + tuple(
            ("p", z) for z in range(structure.parameters))
        return ReductResult(graph, provenance)

    raise ValueError(f"unknown reduct kind {kind!r}")


# ---------------------------------------------------------------------------
# Grid structure over parameterized equivalences
# ---------------------------------------------------------------------------

def grid_object(k: int, row: int, col: int) -> int:
    """Index of the row-major grid cell (row, col) in a k-grid structure."""
    return row * k + col


def grid_target(k: int, row: int) -> int:
    """Index of the row target object in a k-grid structure."""
    return k * k + row


def build_tp2_grid(k: int) -> Feq2Structure:
    """Structure with a k-by-k object grid, one target per row, and one
    parameter per path pairing each row's chosen cell with its target.

    Objects 0..k*k-1 are the grid cells (row-major); objects
    k*k..k*k+k-1 are the row targets.  Leftover objects under each
    parameter are paired in ascending index order.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k ** k > 10 ** 5:
        raise ValueError(f"k = {k} would need {k ** k} parameters")
    objects = k * k + k
    classes = []
    for path in itertools.product(range(k), repeat=k):
        blocks = [(grid_object(k, i, path[i]), grid_target(k, i))
                  for i in range(k)]
        used = {x for b in blocks for x in b}
        rest = [x for x in range(objects) if x not in used]
        blocks.extend((rest[i], rest[i + 1]) for i in range(0, len(rest), 2))
        classes.append(tuple(tuple(sorted(b)) for b in blocks))
    return Feq2Structure(objects, len(classes), tuple(classes))


def extension_probe(structure: Union[Hypergraph, BipartiteGraph],
                    positives: Iterable[int],
                    negatives: Iterable[int]) -> Optional[int]:
    """Scan for a vertex adjacent to all positives and none of the negatives.

    A miss is an ordinary finite-scale outcome: the corresponding extension
    axiom only holds in sufficiently saturated hosts.
    """
    pos = sorted(set(int(v) for v in positives))
    neg = sorted(set(int(v) for v in negatives))
    if set(pos) & set(neg):
        raise ValueError("positive and negative sets must be disjoint")
    if isinstance(structure, Hypergraph) and structure.r != 2:
        raise ValueError("extension_probe needs a graph or bipartite graph")
    for v in pos + neg:
        if not 0 <= v < structure.n:
            raise ValueError(f"vertex {v} out of range")
    adjacent = (structure.has_edge if isinstance(structure, Hypergraph)
                else structure.adjacent)
    banned = set(pos) | set(neg)
    for c in range(structure.n):
        if c in banned:
            continue
        if all(adjacent((m, c)) if isinstance(structure, Hypergraph)
               else adjacent(m, c) for m in pos) and \
           not any(adjacent((m, c)) if isinstance(structure, Hypergraph)
                   else adjacent(m, c) for m in neg):
            return c
    return None
