"""Simplicial, special, and co-special vertices; asteroidal triples.

A simplicial vertex v has Q_v = N[v] as its unique maximal clique and
S_v = Q_v & N(V - Q_v) as the boundary of that clique.  v is special when
S_v is an inclusion-maximal minimal separator, and co-special when S_v is
a separator whose removal leaves exactly two components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chordal import (CliqueTree, NotChordalError, build_clique_tree,
                      maximal_cliques, minimal_separators, require_chordal)
from .graph import Graph, bit_count, bits, connected_mask, components, lowest_bit


def is_simplicial(g: Graph, v: int) -> bool:
    """True iff the neighbourhood of v is a clique (any graph)."""
    return g.is_clique_mask(g.adj[v])


def closed_neighborhood(g: Graph, v: int) -> int:
    return g.adj[v] | 1 << v


def boundary_of_simplicial(g: Graph, v: int) -> int:
    """S_v: the vertices of Q_v = N[v] with neighbours outside Q_v."""
    q_v = closed_neighborhood(g, v)
    s = 0
    for u in bits(q_v):
        if g.adj[u] & ~q_v:
            s |= 1 << u
    return s


@dataclass(frozen=True)
class SimplicialProfile:
    vertex: int
    q_v: int
    s_v: int
    is_simplicial: bool
    is_special: bool
    is_co_special: bool


def simplicial_profile(g: Graph, v: int) -> SimplicialProfile:
    """Full profile of one vertex; requires a chordal graph.

    The special flag asserts actual membership of S_v in the separator
    set, not just maximality against it.
    """
    require_chordal(g)
    if not is_simplicial(g, v):
        return SimplicialProfile(v, closed_neighborhood(g, v), 0, False, False, False)
    q_v = closed_neighborhood(g, v)
    s_v = boundary_of_simplicial(g, v)
    seps = minimal_separators(g)
    special = s_v in seps and not any(s != s_v and s & s_v == s_v for s in seps)
    co_special = s_v in seps and len(components(g, s_v)) == 2
    return SimplicialProfile(v, q_v, s_v, True, special, co_special)


def special_simplicial_vertices(g: Graph) -> list[int]:
    """All special simplicial vertices, by direct test."""
    return [v for v in range(g.n)
            if is_simplicial(g, v) and simplicial_profile(g, v).is_special]


class NoSeparatorError(ValueError):
    """Raised by find_special_pair when the graph is a clique."""


def find_special_pair(g: Graph) -> tuple[int, int]:
    """Two non-adjacent special simplicial vertices of a connected chordal
    non-clique graph, computed by recursion on clique subtrees.

    With a single inclusion-maximal separator S, any two cliques meeting
    in S provide one vertex each.  With two distinct maximal separators
    the search recurses into the two subtrees obtained by cutting the
    clique tree just past an edge labelled by each separator; the vertex
    found inside a subtree stays special in the whole graph.  All choices
    are lexicographic, so the result is deterministic.
    """
    require_chordal(g)
    if not g.is_connected():
        raise ValueError("graph must be connected")
    cliques = maximal_cliques(g)
    if len(cliques) < 2:
        raise NoSeparatorError("no separator exists: graph is a clique")
    v, w = _special_pair_rec(g)
    assert not g.has_edge(v, w)
    return (v, w) if v < w else (w, v)


def _sep_sort_key(s: int) -> tuple:
    return tuple(sorted(bits(s)))


def _special_pair_rec(g: Graph) -> tuple[int, int]:
    tree = build_clique_tree(g)
    cliques = list(tree.cliques)
    seps = minimal_separators(g)
    maximal = [s for s in seps
               if not any(t != s and t & s == s for t in seps)]
    maximal.sort(key=_sep_sort_key)

    if len(maximal) == 1:
        s = maximal[0]
        for i in range(len(cliques)):
            for j in range(i + 1, len(cliques)):
                if cliques[i] & cliques[j] == s:
                    v = lowest_bit(cliques[i] & ~cliques[j])
                    w = lowest_bit(cliques[j] & ~cliques[i])
                    return v, w
        raise AssertionError("maximal separator is not a clique intersection")

    s, s2 = maximal[0], maximal[1]
    e1 = _smallest_edge_with_label(tree, s)
    e2 = _smallest_edge_with_label(tree, s2)
    v = _subtree_vertex(g, tree, e1, e2)
    w = _subtree_vertex(g, tree, e2, e1)
    return v, w


def _smallest_edge_with_label(tree: CliqueTree, label: int) -> tuple[int, int]:
    cand = [e for e, lab in zip(tree.edges, tree.labels) if lab == label]
    if not cand:
        raise AssertionError("separator missing from clique tree labels")
    return min(cand)


def _subtree_vertex(g: Graph, tree: CliqueTree, edge: tuple[int, int],
                    other: tuple[int, int]) -> int:
    """Recurse into the subtree hanging off ``edge`` away from ``other``.

    ``edge`` carries a maximal separator; the subtree keeps both of its
    endpoints but none of ``other``'s far side, so the subproblem is a
    strictly smaller chordal non-clique graph.
    """
    a, b = edge
    # q1 is the endpoint of ``edge`` nearer to ``other``; the subtree hangs
    # off q1 on the q2 side, so it excludes other's far side entirely.
    if b in tree.tree_path(a, other[0]):
        q1, q2 = b, a
    else:
        q1, q2 = a, b
    keep = _component_nodes(tree, q2, removed=q1) | {q1}
    vertex_mask = 0
    for i in keep:
        vertex_mask |= tree.cliques[i]
    from .graph import induced_subgraph
    sub, remap = induced_subgraph(g, vertex_mask)
    back = {new: old for old, new in remap.items()}
    vv, ww = _special_pair_rec(sub)
    q1_new = _remask(tree.cliques[q1], remap)
    pick = vv if not q1_new >> vv & 1 else ww
    assert not q1_new >> pick & 1, "both recursive vertices lie in the cut clique"
    return back[pick]


def _remask(mask: int, remap: dict[int, int]) -> int:
    out = 0
    for v in bits(mask):
        if v in remap:
            out |= 1 << remap[v]
    return out


def _component_nodes(tree: CliqueTree, seed: int, removed: int) -> set[int]:
    seen = {seed}
    stack = [seed]
    while stack:
        u = stack.pop()
        for w in tree.neighbors(u):
            if w != removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_asteroidal_triple(g: Graph, a: int, b: int, c: int) -> bool:
    """True iff a, b, c are pairwise non-adjacent and each pair is joined
    by a path avoiding the closed neighbourhood of the third."""
    if len({a, b, c}) != 3:
        return False
    if g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c):
        return False
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        allowed = g.vertex_mask & ~closed_neighborhood(g, z)
        if not connected_mask(g, 1 << x, allowed) >> y & 1:
            return False
    return True


def find_asteroidal_triple(g: Graph) -> Optional[tuple[int, int, int]]:
    """First asteroidal triple in lexicographic order, or None."""
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if g.has_edge(a, b):
                continue
            for c in range(b + 1, g.n):
                if is_asteroidal_triple(g, a, b, c):
                    return (a, b, c)
    return None


def neighborhood_at_free(g: Graph) -> Optional[tuple[int, tuple[int, int, int]]]:
    """First vertex whose neighbourhood contains an asteroidal triple.

    Returns (vertex, triple) or None when every neighbourhood is AT-free,
    which is a necessary condition for having a clique path tree.
    """
    from .graph import induced_subgraph
    for u in range(g.n):
        if bit_count(g.adj[u]) < 3:
            continue
        sub, remap = induced_subgraph(g, g.adj[u])
        trip = find_asteroidal_triple(sub)
        if trip is not None:
            back = {new: old for old, new in remap.items()}
            return u, tuple(back[t] for t in trip)
    return None


def is_middle_paths(g: Graph, a: int, b: int, c: int) -> bool:
    """Path form: every b..c path meets N(a).  False on adjacent inputs."""
    if g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c) or len({a, b, c}) != 3:
        return False
    allowed = g.vertex_mask & ~g.adj[a] & ~(1 << a)
    return not connected_mask(g, 1 << b, allowed) >> c & 1


def is_middle(g: Graph, tree: CliqueTree, a: int, b: int, c: int) -> bool:
    """Clique-tree form of the middle test.

    a is the middle of b, c iff every tree path between a clique holding b
    and a clique holding c crosses an edge whose label lies inside N(a).
    Agrees with :func:`is_middle_paths` on chordal graphs; returns False
    on adjacent inputs.
    """
    if g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c) or len({a, b, c}) != 3:
        return False
    b_nodes = tree.subtree_of_vertex(b)
    c_nodes = tree.subtree_of_vertex(c)
    edge_index = {}
    for k, (x, y) in enumerate(tree.edges):
        edge_index[(x, y)] = k
        edge_index[(y, x)] = k
    for qb in b_nodes:
        for qc in c_nodes:
            path = tree.tree_path(qb, qc)
            found = False
            for x, y in zip(path, path[1:]):
                lab = tree.labels[edge_index[(x, y)]]
                if lab and lab & ~g.adj[a] == 0:
                    found = True
                    break
            if not found:
                return False
    return True
