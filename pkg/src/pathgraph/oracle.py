"""Brute-force ground truth for small graphs.

Everything here is deliberately naive: exhaustive labelled-tree
enumeration for clique path trees, seed-scanning for minimal holes, and
subset enumeration for pairwise minimal separators.  The value of the
module is its independence from the fast paths it cross-checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .graph import Graph, bit_count, bits, components, induced_subgraph, lowest_bit, mask_of


@dataclass(frozen=True)
class OracleBudget:
    """Size limits; exceeding them yields explicit over-budget outcomes."""

    max_cliques: int = 8
    max_vertices: int = 12

    def __post_init__(self) -> None:
        if self.max_cliques <= 0 or self.max_vertices <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = OracleBudget()


@dataclass(frozen=True)
class CptVerdict:
    """Outcome of the exhaustive clique-path-tree search.

    Exactly one of the three states holds: a tree was found, no tree
    exists ('none', possibly with a hole when the input is not chordal),
    or the instance exceeded the budget.
    """

    status: str  # "tree" | "none" | "over-budget"
    edges: Optional[tuple[tuple[int, int], ...]] = None
    cliques: Optional[tuple[int, ...]] = None
    hole: Optional[list[int]] = None

    @property
    def is_tree(self) -> bool:
        return self.status == "tree"

    @property
    def is_none(self) -> bool:
        return self.status == "none"

    @property
    def over_budget(self) -> bool:
        return self.status == "over-budget"


def bron_kerbosch_cliques(g: Graph) -> list[int]:
    """All maximal cliques by pivoted Bron-Kerbosch, as bitmasks.

    Independent of the PEO-based enumeration in the chordal module; works
    on any graph.
    """
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = lowest_bit(pivot_pool)
        best = -1
        for u in bits(pivot_pool):
            c = bit_count(p & g.adj[u])
            if c > best:
                best = c
                pivot = u
        for v in bits(p & ~g.adj[pivot]):
            expand(r | 1 << v, p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand(0, g.vertex_mask, 0)
    out.sort()
    return out


def hole_search_bruteforce(g: Graph) -> Optional[list[int]]:
    """Smallest hole by length, then lexicographic vertex sequence.

    Scans every vertex with a non-adjacent neighbour pair and takes a
    shortest connecting path avoiding the closed neighbourhood; every hole
    is found this way, so a None answer certifies chordality.
    """
    best: Optional[list[int]] = None
    for v in range(g.n):
        nbrs = list(bits(g.adj[v]))
        for x, y in itertools.combinations(nbrs, 2):
            if g.has_edge(x, y):
                continue
            path = _lex_shortest_path(g, x, y, (g.adj[v] | 1 << v) & ~(1 << x) & ~(1 << y))
            if path is None:
                continue
            cycle = _canonical_cycle([v] + path)
            if best is None or (len(cycle), cycle) < (len(best), best):
                best = cycle
    return best


def _lex_shortest_path(g: Graph, x: int, y: int, blocked: int) -> Optional[list[int]]:
    """Lexicographically smallest shortest x..y path avoiding ``blocked``."""
    allowed = g.vertex_mask & ~blocked
    parent: dict[int, int] = {x: -1}
    frontier = [x]
    while frontier and y not in parent:
        nxt = []
        for u in frontier:  # frontier kept sorted: BFS yields lex-min parents
            for w in sorted(bits(g.adj[u] & allowed)):
                if w not in parent:
                    parent[w] = u
                    nxt.append(w)
        frontier = sorted(nxt)
    if y not in parent:
        return None
    path = [y]
    while path[-1] != x:
        path.append(parent[path[-1]])
    return list(reversed(path))


def _canonical_cycle(cycle: list[int]) -> list[int]:
    """Rotate/reflect a cycle to its lexicographically smallest sequence."""
    k = len(cycle)
    best = None
    for seq in (cycle, list(reversed(cycle))):
        for s in range(k):
            cand = seq[s:] + seq[:s]
            if best is None or cand < best:
                best = cand
    return list(best)


def pairwise_minimal_separators_bruteforce(
        g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> dict[int, tuple[int, int]]:
    """All minimal {u,v}-separators by subset enumeration, deduplicated.

    Each separator is returned with one witness pair.  Works on any graph
    within the vertex budget.
    """
    if g.n > budget.max_vertices:
        raise ValueError(f"graph exceeds the {budget.max_vertices}-vertex budget")
    found: dict[int, tuple[int, int]] = {}
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.has_edge(u, v):
                continue
            others = [w for w in range(g.n) if w != u and w != v]
            for r in range(len(others) + 1):
                for combo in itertools.combinations(others, r):
                    s = mask_of(combo)
                    if not _separates(g, u, v, s):
                        continue
                    minimal = all(
                        _separates(g, u, v, s & ~(1 << w)) is False for w in combo)
                    if minimal and s not in found:
                        found[s] = (u, v)
    return found


def _separates(g: Graph, u: int, v: int, s: int) -> bool:
    from .graph import connected_mask
    reach = connected_mask(g, 1 << u, g.vertex_mask & ~s)
    return not reach >> v & 1


def cpt_exists_bruteforce(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> CptVerdict:
    """Exhaustive clique-path-tree existence over all labelled trees.

    Enumerates the q^(q-2) labelled trees on the maximal cliques through
    Pruefer sequences and accepts the first one that is coherent with
    every vertex's clique set inducing a path.  Disconnected graphs are
    handled per component.  Non-chordal input short-circuits to 'none'
    with a hole attached; over-budget is reported, never guessed.
    """
    hole = hole_search_bruteforce(g)
    if hole is not None:
        return CptVerdict("none", hole=hole)
    comps = components(g)
    if len(comps) > 1:
        all_cliques: list[int] = []
        all_edges: list[tuple[int, int]] = []
        for comp in comps:
            sub, remap = induced_subgraph(g, comp)
            back = {new: old for old, new in remap.items()}
            verdict = cpt_exists_bruteforce(sub, budget)
            if not verdict.is_tree:
                return verdict
            offset = len(all_cliques)
            for c in verdict.cliques:
                all_cliques.append(mask_of(back[v] for v in bits(c)))
            for a, b in verdict.edges:
                all_edges.append((a + offset, b + offset))
        return CptVerdict("tree", tuple(all_edges), tuple(all_cliques))

    cliques = bron_kerbosch_cliques(g)
    q = len(cliques)
    if q > budget.max_cliques:
        return CptVerdict("over-budget")
    if q == 0:
        return CptVerdict("tree", (), ())
    if q == 1:
        return CptVerdict("tree", (), (cliques[0],))

    # In a connected chordal graph every clique-tree edge label is a
    # nonempty separator, so trees using a disjoint clique pair can be
    # rejected as soon as that pair appears.
    ok_pair = [[bool(cliques[i] & cliques[j]) for j in range(q)] for i in range(q)]
    vertex_nodes = [mask_of(i for i in range(q) if cliques[i] >> v & 1)
                    for v in range(g.n)]

    for edges in _pruefer_trees(q, ok_pair):
        if _edges_give_cpt(q, edges, vertex_nodes):
            return CptVerdict("tree", tuple(edges), tuple(cliques))
    return CptVerdict("none")


def _pruefer_trees(q: int, ok_pair: list[list[bool]]):
    """Yield edge lists of labelled trees on q nodes, in Pruefer order.

    Trees containing a forbidden pair are skipped; the decode aborts at
    the first bad edge, which prunes most sequences cheaply.
    """
    if q == 2:
        if ok_pair[0][1]:
            yield [(0, 1)]
        return
    seq = [0] * (q - 2)
    while True:
        # Classical linear-time decode with a moving pointer, aborting at
        # the first forbidden edge.
        degree = [1] * q
        for x in seq:
            degree[x] += 1
        edges_buf: list[tuple[int, int]] = []
        ptr = 0
        while degree[ptr] != 1:
            ptr += 1
        leaf = ptr
        ok = True
        for x in seq:
            if not ok_pair[leaf][x]:
                ok = False
                break
            edges_buf.append((leaf, x))
            degree[x] -= 1
            if degree[x] == 1 and x < ptr:
                leaf = x
            else:
                ptr += 1
                while degree[ptr] != 1:
                    ptr += 1
                leaf = ptr
        if ok and ok_pair[leaf][q - 1]:
            edges_buf.append((leaf, q - 1))
            yield edges_buf
        # Odometer increment over the Pruefer alphabet.
        i = q - 3
        while i >= 0 and seq[i] == q - 1:
            seq[i] = 0
            i -= 1
        if i < 0:
            return
        seq[i] += 1


def _edges_give_cpt(q: int, edges: list[tuple[int, int]], vertex_nodes: list[int]) -> bool:
    """Check coherence plus the path property on an edge list over cliques."""
    adj_sets = [0] * q
    for a, b in edges:
        adj_sets[a] |= 1 << b
        adj_sets[b] |= 1 << a
    for nodes in vertex_nodes:
        k = bit_count(nodes)
        if k <= 1:
            continue
        # Path property: within the induced node set, degrees <= 2 and
        # exactly k - 1 induced edges (connectedness then follows).
        induced_edges = 0
        for i in bits(nodes):
            d = bit_count(adj_sets[i] & nodes)
            if d > 2:
                return False
            induced_edges += d
        if induced_edges != 2 * (k - 1):
            return False
    return True
