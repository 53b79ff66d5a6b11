"""Chordality, maximal cliques, clique trees, and minimal separators.

The clique tree is built as a maximum-weight spanning forest of the clique
intersection graph, which is a clique tree exactly when the input is
chordal.  Edge labels (clique intersections) of any clique tree are the
minimal vertex separators of the graph, with multiplicities that do not
depend on the chosen tree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import Graph, bit_count, bits, components, connected_mask, lowest_bit


class NotChordalError(ValueError):
    """Raised when an operation requires a chordal graph.

    Carries the offending hole (a chordless cycle of length >= 4) when one
    has been computed.
    """

    def __init__(self, message: str, hole: Optional[list[int]] = None):
        super().__init__(message)
        self.hole = hole


def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic BFS visit order; ties broken by smallest vertex index.

    The reverse of the returned order is a perfect elimination order iff
    the graph is chordal.
    """
    n = g.n
    labels: list[tuple[int, ...]] = [() for _ in range(n)]
    visited = 0
    order = []
    for _ in range(n):
        best = -1
        for v in range(n):
            if visited >> v & 1:
                continue
            if best < 0 or _label_less(labels[v], labels[best]):
                best = v
        order.append(best)
        visited |= 1 << best
        t = len(order) - 1
        for w in bits(g.adj[best] & ~visited):
            labels[w] = labels[w] + (t,)
    return order


def _label_less(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    # Earlier visit times are stronger; a longer label with a matching
    # prefix beats a shorter one.
    for x, y in zip(a, b):
        if x != y:
            return x < y
    return len(a) > len(b)


@dataclass(frozen=True)
class PeoCheck:
    """Outcome of a perfect-elimination-order check."""

    valid: bool
    hole: Optional[list[int]] = None


def check_peo(g: Graph, order: Sequence[int]) -> PeoCheck:
    """Check that ``order`` is a perfect elimination order of ``g``.

    On failure returns a hole extracted from the first violating vertex:
    the violation exposes two non-adjacent later neighbours, and a
    shortest path between them avoiding the rest of the closed
    neighbourhood closes into a chordless cycle.
    """
    if sorted(order) != list(range(g.n)):
        raise ValueError("order is not a permutation of the vertices")
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    for v in order:
        later = [w for w in bits(g.adj[v]) if pos[w] > pos[v]]
        if len(later) < 2:
            continue
        w0 = min(later, key=lambda w: pos[w])
        for w in later:
            if w != w0 and not g.has_edge(w0, w):
                hole = _expand_hole(g, v, w0, w)
                if hole is not None:
                    return PeoCheck(False, hole)
                # The violating triple did not close into a hole directly;
                # fall back to a full scan, which succeeds on any
                # non-chordal graph.
                return PeoCheck(False, find_hole(g))
    return PeoCheck(True, None)


def _expand_hole(g: Graph, v: int, x: int, y: int) -> Optional[list[int]]:
    """Hole through v given non-adjacent x, y in N(v), if one exists.

    Searches for a shortest x-y path avoiding N[v] - {x, y}; prepending v
    yields a chordless cycle because interior path vertices are not
    neighbours of v and the path itself is shortest.
    """
    blocked = (g.adj[v] | 1 << v) & ~(1 << x) & ~(1 << y)
    allowed = g.vertex_mask & ~blocked
    parent = {x: -1}
    frontier = [x]
    while frontier and y not in parent:
        nxt = []
        for u in frontier:
            for w in bits(g.adj[u] & allowed):
                if w not in parent:
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
    if y not in parent:
        return None
    path = [y]
    while path[-1] != x:
        path.append(parent[path[-1]])
    path.append(v)
    return list(reversed(path))


def find_hole(g: Graph) -> Optional[list[int]]:
    """Some hole of ``g`` or None; scans all (v, x, y) seeds.

    Every hole contains such a seed (a vertex with its two cycle
    neighbours), so the scan is exact.  Used as the safety net behind the
    PEO-based chordality test; the oracle module has its own minimal-hole
    search.
    """
    for v in range(g.n):
        nbrs = list(bits(g.adj[v]))
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                if g.has_edge(x, y):
                    continue
                hole = _expand_hole(g, v, x, y)
                if hole is not None:
                    return hole
    return None


def is_chordal(g: Graph) -> bool:
    return check_peo(g, list(reversed(lex_bfs(g)))).valid


def require_chordal(g: Graph) -> None:
    res = check_peo(g, list(reversed(lex_bfs(g))))
    if not res.valid:
        raise NotChordalError("graph is not chordal", res.hole)


def maximal_cliques(g: Graph, peo: Optional[Sequence[int]] = None) -> list[int]:
    """Maximal cliques of a chordal graph, as bitmasks.

    ``peo`` is an elimination order (earliest eliminated first); when
    omitted it is recomputed.  Raises NotChordalError on invalid input.
    The result is ordered by discovery and has no duplicates.
    """
    if peo is None:
        peo = list(reversed(lex_bfs(g)))
    res = check_peo(g, peo)
    if not res.valid:
        raise NotChordalError("not a perfect elimination order", res.hole)
    pos = [0] * g.n
    for i, v in enumerate(peo):
        pos[v] = i
    candidates = []
    for v in peo:
        later = 0
        for w in bits(g.adj[v]):
            if pos[w] > pos[v]:
                later |= 1 << w
        candidates.append(later | 1 << v)
    out = []
    for c in candidates:
        if not any(c != d and c & ~d == 0 for d in candidates):
            if c not in out:
                out.append(c)
    return out


@dataclass(frozen=True)
class CliqueTree:
    """Tree (or forest) over the maximal cliques of a chordal graph.

    ``cliques`` are vertex bitmasks, ``edges`` index into them, and
    ``labels[i]`` is the intersection of the endpoints of ``edges[i]``.
    """

    cliques: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...]

    @property
    def node_count(self) -> int:
        return len(self.cliques)

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return out

    def tree_path(self, a: int, b: int) -> list[int]:
        """Node path from clique index a to clique index b."""
        parent = {a: -1}
        frontier = [a]
        while frontier and b not in parent:
            nxt = []
            for u in frontier:
                for w in self.neighbors(u):
                    if w not in parent:
                        parent[w] = u
                        nxt.append(w)
            frontier = nxt
        if b not in parent:
            raise ValueError("clique nodes lie in different trees")
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        return list(reversed(path))

    def subtree_of_vertex(self, v: int) -> list[int]:
        return [i for i, c in enumerate(self.cliques) if c >> v & 1]

    def to_json(self) -> str:
        return json.dumps({
            "cliques": [sorted(bits(c)) for c in self.cliques],
            "edges": [list(e) for e in self.edges],
            "labels": [sorted(bits(l)) for l in self.labels],
        })

    def to_dot(self, g: Optional[Graph] = None) -> str:
        def caption(c: int) -> str:
            if g is not None:
                return "{" + ",".join(g.name_of(v) for v in bits(c)) + "}"
            return "{" + ",".join(str(v) for v in bits(c)) + "}"

        lines = ["graph cliquetree {"]
        for i, c in enumerate(self.cliques):
            lines.append(f'  n{i} [label="{caption(c)}"];')
        for (a, b), lab in zip(self.edges, self.labels):
            lines.append(f'  n{a} -- n{b} [label="{caption(lab)}"];')
        lines.append("}")
        return "\n".join(lines)


def clique_tree_from_json(text: str) -> CliqueTree:
    data = json.loads(text)
    from .graph import mask_of
    return CliqueTree(
        tuple(mask_of(c) for c in data["cliques"]),
        tuple((int(a), int(b)) for a, b in data["edges"]),
        tuple(mask_of(l) for l in data["labels"]),
    )


def build_clique_tree(g: Graph) -> CliqueTree:
    """Clique tree of a chordal graph (forest if disconnected).

    Maximum-weight spanning forest of the clique intersection graph with
    weights |Qi & Qj|; ties broken by the lexicographically smallest
    clique index pair, so the construction is deterministic.
    """
    require_chordal(g)
    cliques = maximal_cliques(g)
    return _spanning_clique_tree(cliques)


def _spanning_clique_tree(cliques: list[int]) -> CliqueTree:
    q = len(cliques)
    weighted = []
    for i in range(q):
        for j in range(i + 1, q):
            w = bit_count(cliques[i] & cliques[j])
            if w > 0:
                weighted.append((-w, i, j))
    weighted.sort()
    parent = list(range(q))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    labels = []
    for _negw, i, j in weighted:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j))
            labels.append(cliques[i] & cliques[j])
    return CliqueTree(tuple(cliques), tuple(edges), tuple(labels))


def verify_clique_tree(g: Graph, tree: CliqueTree, require_paths: bool = False) -> bool:
    """Independent validity check: tree/forest shape, coherence, labels.

    With ``require_paths`` additionally checks the clique-path-tree
    property (the cliques containing any one vertex induce a path).
    """
    q = tree.node_count
    if sorted(tree.cliques) != sorted(maximal_cliques(g)):
        return False
    # Forest shape (acyclic) with one tree per graph component.
    comp = list(range(q))

    def find(x: int) -> int:
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for (a, b), lab in zip(tree.edges, tree.labels):
        if not (0 <= a < q and 0 <= b < q):
            return False
        if lab != tree.cliques[a] & tree.cliques[b]:
            return False
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        comp[ra] = rb
    if q - len(tree.edges) != len(components(g)):
        return False
    # Coherence and, if requested, the path property.
    adj_nodes: list[list[int]] = [[] for _ in range(q)]
    for a, b in tree.edges:
        adj_nodes[a].append(b)
        adj_nodes[b].append(a)
    for v in range(g.n):
        nodes = [i for i in range(q) if tree.cliques[i] >> v & 1]
        if not nodes:
            return False
        seen = {nodes[0]}
        stack = [nodes[0]]
        node_set = set(nodes)
        while stack:
            u = stack.pop()
            for w in adj_nodes[u]:
                if w in node_set and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(nodes):
            return False
        if require_paths:
            degs = [sum(1 for w in adj_nodes[i] if w in node_set) for i in nodes]
            if any(d > 2 for d in degs):
                return False
    return True


def minimal_separators(g: Graph) -> dict[int, tuple[int, int]]:
    """Minimal vertex separators of a chordal graph.

    Returns each separator bitmask with one witness pair (u, v) it
    separates.  The separators are exactly the distinct clique-tree edge
    labels; for a disconnected graph the components are handled
    independently (the empty set is never reported).
    """
    require_chordal(g)
    tree = build_clique_tree(g)
    out: dict[int, tuple[int, int]] = {}
    for (a, b), lab in zip(tree.edges, tree.labels):
        if lab == 0 or lab in out:
            continue
        u = lowest_bit(tree.cliques[a] & ~lab)
        v = lowest_bit(tree.cliques[b] & ~lab)
        out[lab] = (u, v)
    return out


def separator_multiplicity(g: Graph, sep: int) -> int:
    """Number of clique-tree edges labelled ``sep`` in any clique tree.

    Equals c - 1 where c counts the components of G - sep containing a
    vertex complete to sep.  Raises if ``sep`` is not a separator.
    """
    if sep not in minimal_separators(g):
        raise ValueError("set is not a minimal separator of the graph")
    c = 0
    for comp in components(g, sep):
        for v in bits(comp):
            if g.adj[v] & sep == sep:
                c += 1
                break
    return c - 1
