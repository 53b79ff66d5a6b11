"""The seventeen minimal non path graph families F0..F16.

F0(n) is the chordless n-cycle.  F1..F5 add a universal vertex to a
minimal non-interval graph (the classical Lekkerkerker-Boland list
[Lekkerkerker & Boland 1962]); the coned bases are exactly the ones that
are themselves path graphs, which is what makes the cone minimal.  F6..F9
are fixed sporadic graphs, F10..F16 are parameterized families built
around a central clique covered by degree-2 simplicial vertices.

Every construction in this module is validated by
:func:`verify_minimal_non_path`: no clique path tree exists for the
generated graph, while every single-vertex deletion has one.  That check
is the authority for the adjacency encoded here.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import Graph, bits, induced_subgraph, mask_of
from .oracle import DEFAULT_BUDGET, OracleBudget, cpt_exists_bruteforce


class ParameterError(ValueError):
    """Parameter outside a family's domain; the message states the domain."""


class UnverifiableError(RuntimeError):
    """Minimality verification exceeded the oracle budget."""


# index -> (needs parameter, domain description, validator)
_DOMAINS: dict[int, tuple[bool, str]] = {
    0: (True, "n >= 4"),
    1: (False, "no parameter (8 vertices)"),
    2: (False, "no parameter (7 vertices)"),
    3: (False, "no parameter (8 vertices)"),
    4: (False, "no parameter (8 vertices)"),
    5: (True, "n >= 7"),
    6: (False, "no parameter (8 vertices)"),
    7: (False, "no parameter (9 vertices)"),
    8: (False, "no parameter (8 vertices)"),
    9: (False, "no parameter (8 vertices)"),
    10: (True, "n >= 8"),
    11: (True, "n = 4k, k >= 2"),
    12: (True, "n = 4k, k >= 2"),
    13: (True, "n = 4k+1, k >= 2"),
    14: (True, "n = 4k+1, k >= 2"),
    15: (True, "n = 4k+2, k >= 2"),
    16: (True, "n = 4k+3, k >= 2"),
}

_FIXED_SIZES = {1: 8, 2: 7, 3: 8, 4: 8, 6: 8, 7: 9, 8: 8, 9: 8}


def _param_ok(index: int, n: int) -> bool:
    if index == 0:
        return n >= 4
    if index == 5:
        return n >= 7
    if index == 10:
        return n >= 8
    if index in (11, 12):
        return n >= 8 and n % 4 == 0
    if index in (13, 14):
        return n >= 9 and n % 4 == 1
    if index == 15:
        return n >= 10 and n % 4 == 2
    if index == 16:
        return n >= 11 and n % 4 == 3
    return False


@dataclass(frozen=True, order=True)
class FamilyId:
    """A forbidden family member: index 0..16 plus parameter where needed."""

    index: int
    parameter: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0 <= self.index <= 16:
            raise ParameterError("family index must be in 0..16")
        needs, domain = _DOMAINS[self.index]
        if needs:
            if self.parameter is None:
                raise ParameterError(f"F{self.index} requires a parameter ({domain})")
            if not _param_ok(self.index, self.parameter):
                raise ParameterError(
                    f"F{self.index} parameter {self.parameter} invalid; domain: {domain}")
        elif self.parameter is not None and self.parameter != _FIXED_SIZES[self.index]:
            raise ParameterError(f"F{self.index} takes no parameter ({domain})")

    @property
    def order(self) -> int:
        """Vertex count of the generated graph."""
        return self.parameter if self.parameter is not None else _FIXED_SIZES[self.index]

    def label(self) -> str:
        if _DOMAINS[self.index][0]:
            return f"F{self.index}({self.parameter})"
        return f"F{self.index}"

    @staticmethod
    def parse(text: str, parameter: Optional[int] = None) -> "FamilyId":
        m = re.fullmatch(r"[Ff](\d{1,2})(?:\((\d+)\))?", text.strip())
        if not m:
            raise ParameterError(f"cannot parse family name {text!r}")
        idx = int(m.group(1))
        if not 0 <= idx <= 16:
            raise ParameterError("family index must be in 0..16")
        par = int(m.group(2)) if m.group(2) else parameter
        return FamilyId(idx, par if _DOMAINS[idx][0] else None)


def _named(n: int, edges: Iterable[tuple[int, int]], names: Sequence[str]) -> Graph:
    return Graph.from_edges(n, edges, names=names)


def _cone(base: Graph, apex_name: str = "u") -> Graph:
    rows = [r | 1 << base.n for r in base.adj] + [(1 << base.n) - 1]
    names = tuple(base.names) + (apex_name,) if base.names else None
    return Graph(base.n + 1, tuple(rows), names)


def net_family(m: int) -> Graph:
    """Minimal non-interval graph: hub over the interior of a path.

    Path v0-x1-..-xr-w plus a hub y adjacent to every interior xi and a
    pendant q on the hub; m = r + 4 >= 6.  The m = 6 member is the net.
    This is a path graph, so its cone is a minimal non path graph.
    """
    if m < 6:
        raise ParameterError("net family needs m >= 6")
    r = m - 4
    v0, w, y, q = 0, r + 1, r + 2, r + 3
    xs = list(range(1, r + 1))
    edges = [(v0, xs[0]), (w, xs[-1]), (q, y)]
    edges += [(xs[i], xs[i + 1]) for i in range(r - 1)]
    edges += [(y, x) for x in xs]
    names = ["v0"] + [f"x{i}" for i in range(1, r + 1)] + ["w", "y", "q"]
    return _named(m, edges, names)


def tent_family(m: int) -> Graph:
    """Minimal non-interval graph: adjacent hub pair over a path.

    Hubs s, t are adjacent, both complete to the path x1-..-xr, with
    q adjacent to both hubs, v to (s, x1) and w to (t, xr); m = r + 5 >= 6.
    The m = 6 member is the tent (3-sun).  Members with m >= 8 are not
    path graphs and form the F10 family themselves.
    """
    if m < 6:
        raise ParameterError("tent family needs m >= 6")
    r = m - 5
    q, s, t, v, w = 0, 1, 2, 3, 4
    xs = list(range(5, 5 + r))
    edges = [(q, s), (q, t), (s, t), (v, s), (v, xs[0]), (w, t), (w, xs[-1])]
    edges += [(x, s) for x in xs] + [(x, t) for x in xs]
    edges += [(xs[i], xs[i + 1]) for i in range(r - 1)]
    names = ["q", "s", "t", "v", "w"] + [f"x{i}" for i in range(1, r + 1)]
    return _named(m, edges, names)


def bipartite_claw() -> Graph:
    """The three-leg spider: a claw with every edge subdivided once."""
    edges = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]
    names = ["c", "a1", "a2", "a3", "b1", "b2", "b3"]
    return _named(7, edges, names)


def umbrella() -> Graph:
    """The sporadic 7-vertex minimal non-interval graph.

    Two adjacent hubs h1, h2 with triangles h1-h2-a and h1-h2-b, tips
    a' on (h2, a) and b' on (h2, b), and a pendant p on h1.
    """
    h1, h2, p, a, b, a2, b2 = range(7)
    edges = [(h1, h2), (h1, p), (h1, a), (h1, b), (h2, a), (h2, b),
             (h2, a2), (h2, b2), (a, a2), (b, b2)]
    names = ["h1", "h2", "p", "a", "b", "a'", "b'"]
    return _named(7, edges, names)


def _f0(n: int) -> Graph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    return _named(n, edges, [f"c{i}" for i in range(n)])


def _f6() -> Graph:
    q, u, x, sq, su, sx, a, b = range(8)
    edges = [(q, sq), (q, b), (sq, b), (sq, a), (su, u), (su, a), (su, b),
             (sx, x), (sx, a), (sx, b), (a, u), (a, x), (a, b)]
    return _named(8, edges, ["q", "u", "x", "sQ", "sU", "sX", "a", "b"])


def _f7() -> Graph:
    q, u, x, sq, su, sx, a, c, d = range(9)
    edges = [(q, sq), (q, c), (sq, c), (sq, a), (sq, d), (su, u), (su, a),
             (su, d), (su, c), (sx, x), (sx, a), (sx, d), (sx, c),
             (a, u), (a, c), (a, d), (c, d), (d, x)]
    return _named(9, edges, ["q", "u", "x", "sQ", "sU", "sX", "a", "c", "d"])


def _f8() -> Graph:
    q, b, c, u, su, x1, sq, w = range(8)
    edges = [(q, b), (q, x1), (q, sq), (sq, b), (sq, x1), (sq, c),
             (su, u), (su, c), (su, x1), (su, b), (u, x1), (u, c),
             (x1, c), (x1, b), (c, b), (c, w), (b, w)]
    return _named(8, edges, ["q", "b", "c", "u", "sU", "x1", "sQ", "w"])


def _f9() -> Graph:
    # F8 without the q-x1 edge: the connector is complete to the boundary
    # clique but no longer adjacent to the apex.
    q, b, c, u, su, x1, sq, w = range(8)
    edges = [(q, b), (q, sq), (sq, b), (sq, x1), (sq, c),
             (su, u), (su, c), (su, x1), (su, b), (u, x1), (u, c),
             (x1, c), (x1, b), (c, b), (c, w), (b, w)]
    return _named(8, edges, ["q", "b", "c", "u", "sU", "x1", "sQ", "w"])


def _f11(n: int) -> Graph:
    # Central clique v1..v{2k-1} with a and b complete to it and not to
    # each other; peripheral uj adjacent to v{j-1}, vj cyclically.
    k = n // 4
    m = 2 * k - 1
    us = list(range(m))
    vs = list(range(m, 2 * m))
    a, b = 2 * m, 2 * m + 1
    edges = [(vs[i], vs[j]) for i in range(m) for j in range(i + 1, m)]
    edges += [(a, v) for v in vs] + [(b, v) for v in vs]
    for i in range(m):
        edges += [(us[i], vs[(i - 1) % m]), (us[i], vs[i])]
    names = [f"u{i + 1}" for i in range(m)] + [f"v{i + 1}" for i in range(m)] + ["a", "b"]
    return _named(n, edges, names)


def _f12(n: int) -> Graph:
    g = _f11(n)
    m = 2 * (n // 4) - 1
    rows = list(g.adj)
    u1, b = 0, 2 * m + 1
    rows[u1] |= 1 << b
    rows[b] |= 1 << u1
    return Graph(n, tuple(rows), g.names)


def _f13(n: int) -> Graph:
    # Central clique {s0', s1..sp, x1}; q complete to it except x1;
    # v0 complete to it except s0'; the remaining vi cover consecutive
    # pairs along s0', s1, ..., sp, x1.
    p = (n - 5) // 2
    q = 0
    vs = list(range(1, p + 3))
    s0p = p + 3
    ss = list(range(p + 4, 2 * p + 4))
    x1 = 2 * p + 4
    cliq = [s0p] + ss + [x1]
    edges = [(a, b) for i, a in enumerate(cliq) for b in cliq[i + 1:]]
    edges += [(q, s0p)] + [(q, s) for s in ss]
    edges += [(vs[0], s) for s in ss] + [(vs[0], x1)]
    edges += [(vs[1], s0p), (vs[1], ss[0])]
    for i in range(2, p + 1):
        edges += [(vs[i], ss[i - 2]), (vs[i], ss[i - 1])]
    edges += [(vs[p + 1], ss[-1]), (vs[p + 1], x1)]
    names = (["q"] + [f"v{i}" for i in range(p + 2)] + ["s0'"]
             + [f"s{i + 1}" for i in range(p)] + ["x1"])
    return _named(n, edges, names)


def _f14(n: int) -> Graph:
    # Central clique {s0..sp, x1}; q complete to the s's only; the vi
    # cover all consecutive pairs of the cycle x1, s0, ..., sp, x1.
    p = (n - 5) // 2
    q = 0
    vs = list(range(1, p + 3))
    ss = list(range(p + 3, 2 * p + 4))
    x1 = 2 * p + 4
    cliq = ss + [x1]
    edges = [(a, b) for i, a in enumerate(cliq) for b in cliq[i + 1:]]
    edges += [(q, s) for s in ss]
    edges += [(vs[0], ss[0]), (vs[0], x1)]
    for i in range(1, p + 1):
        edges += [(vs[i], ss[i - 1]), (vs[i], ss[i])]
    edges += [(vs[p + 1], ss[p]), (vs[p + 1], x1)]
    names = (["q"] + [f"v{i}" for i in range(p + 2)]
             + [f"s{i}" for i in range(p + 1)] + ["x1"])
    return _named(n, edges, names)


def _f15(n: int) -> Graph:
    # Like F14 but with a two-vertex connector x1, x2; the pair (x1, x2)
    # is the one uncovered consecutive pair of the central clique.
    p = (n - 6) // 2
    q = 0
    vs = list(range(1, p + 3))
    ss = list(range(p + 3, 2 * p + 4))
    x1, x2 = 2 * p + 4, 2 * p + 5
    cliq = ss + [x1, x2]
    edges = [(a, b) for i, a in enumerate(cliq) for b in cliq[i + 1:]]
    edges += [(q, s) for s in ss]
    edges += [(vs[0], ss[0]), (vs[0], x1)]
    for i in range(1, p + 1):
        edges += [(vs[i], ss[i - 1]), (vs[i], ss[i])]
    edges += [(vs[p + 1], ss[p]), (vs[p + 1], x2)]
    names = (["q"] + [f"v{i}" for i in range(p + 2)]
             + [f"s{i}" for i in range(p + 1)] + ["x1", "x2"])
    return _named(n, edges, names)


def _f16(n: int) -> Graph:
    # Inner vertices sQ, x0..xr, sU (r = 2k-1) pairwise adjacent except
    # for the one missing pair (sU, sQ); peripheral simplicial vertices
    # q, v0, u1, v1, u2, ..., uk cover the consecutive inner pairs.
    k = (n - 3) // 4
    ni = 2 * k + 2
    cs = list(range(ni))
    ps = list(range(ni, ni + 2 * k + 1))
    edges = []
    for i in range(ni):
        for j in range(i + 1, ni):
            if i == 0 and j == ni - 1:
                continue
            edges.append((cs[i], cs[j]))
    for j in range(2 * k + 1):
        edges += [(ps[j], cs[j]), (ps[j], cs[j + 1])]
    inner_names = ["sQ"] + [f"x{i}" for i in range(2 * k)] + ["sU"]
    # periphery order along the inner sequence: q, v0, u1, v1, u2, ...
    peri_names = ["q"]
    for i in range(1, 2 * k + 1):
        peri_names.append(f"v{(i - 1) // 2}" if i % 2 == 1 else f"u{i // 2}")
    return _named(n, edges, inner_names + peri_names)


def generate(family: FamilyId) -> Graph:
    """The graph of a family member, with its construction's vertex names."""
    idx, n = family.index, family.order
    if idx == 0:
        return _f0(n)
    if idx == 1:
        return _cone(bipartite_claw())
    if idx == 2:
        return _cone(tent_family(6))
    if idx == 3:
        return _cone(tent_family(7))
    if idx == 4:
        return _cone(umbrella())
    if idx == 5:
        return _cone(net_family(n - 1))
    if idx == 6:
        return _f6()
    if idx == 7:
        return _f7()
    if idx == 8:
        return _f8()
    if idx == 9:
        return _f9()
    if idx == 10:
        return tent_family(n)
    if idx == 11:
        return _f11(n)
    if idx == 12:
        return _f12(n)
    if idx == 13:
        return _f13(n)
    if idx == 14:
        return _f14(n)
    if idx == 15:
        return _f15(n)
    return _f16(n)


@dataclass(frozen=True)
class Certificate:
    """Non-membership witness: a family member embedded into a host graph.

    ``witness[i]`` is the host vertex playing the role of generated-graph
    vertex i.
    """

    family: FamilyId
    witness: tuple[int, ...]

    def witness_mask(self) -> int:
        return mask_of(self.witness)

    def to_json(self, host: Optional[Graph] = None) -> str:
        pattern = generate(self.family)
        data = {
            "family": f"F{self.family.index}",
            "parameter": self.family.parameter,
            "witness": {pattern.name_of(i): v for i, v in enumerate(self.witness)},
        }
        return json.dumps(data)


def certificate_from_json(text: str) -> Certificate:
    data = json.loads(text)
    fam = FamilyId.parse(data["family"], data.get("parameter"))
    pattern = generate(fam)
    name_index = {pattern.name_of(i): i for i in range(pattern.n)}
    witness = [0] * pattern.n
    for name, host in data["witness"].items():
        witness[name_index[name]] = int(host)
    return Certificate(fam, tuple(witness))


def validate_certificate(g: Graph, cert: Certificate) -> bool:
    """Check injectivity and exact induced-subgraph match of the witness."""
    pattern = generate(cert.family)
    w = cert.witness
    if len(w) != pattern.n or len(set(w)) != pattern.n:
        return False
    if any(not 0 <= v < g.n for v in w):
        raise ValueError("witness vertex out of range of the host graph")
    for i in range(pattern.n):
        for j in range(i + 1, pattern.n):
            if pattern.has_edge(i, j) != g.has_edge(w[i], w[j]):
                return False
    return True


def verify_minimal_non_path(family: FamilyId,
                            budget: Optional[OracleBudget] = None) -> bool:
    """Oracle check that a family member is a minimal non path graph.

    True iff the generated graph has no clique path tree while every
    one-vertex deletion has one.  Raises UnverifiableError instead of
    guessing when the oracle budget is exceeded.
    """
    budget = budget or OracleBudget(max_cliques=10, max_vertices=24)
    g = generate(family)
    whole = cpt_exists_bruteforce(g, budget)
    if whole.over_budget:
        raise UnverifiableError(f"{family.label()} exceeds the oracle budget")
    if not whole.is_none:
        return False
    for v in range(g.n):
        sub, _ = induced_subgraph(g, g.vertex_mask & ~(1 << v))
        verdict = cpt_exists_bruteforce(sub, budget)
        if verdict.over_budget:
            raise UnverifiableError(
                f"{family.label()} minus vertex {v} exceeds the oracle budget")
        if not verdict.is_tree:
            return False
    return True


def feasible_families(max_order: int) -> list[FamilyId]:
    """All family members on at most ``max_order`` vertices, smallest first."""
    out = []
    for idx in range(17):
        needs, _ = _DOMAINS[idx]
        if not needs:
            if _FIXED_SIZES[idx] <= max_order:
                out.append(FamilyId(idx))
        else:
            start = {0: 4, 5: 7, 10: 8, 11: 8, 12: 8, 13: 9, 14: 9, 15: 10, 16: 11}[idx]
            step = 1 if idx in (0, 5, 10) else 4
            n = start
            while n <= max_order:
                out.append(FamilyId(idx, n))
                n += step
    out.sort(key=lambda f: (f.order, f.index))
    return out


@dataclass(frozen=True)
class BoundedSearch:
    """Result of find_forbidden_bounded; ``complete`` is False when the
    instance exceeded the budget and nothing was searched."""

    certificate: Optional[Certificate]
    complete: bool


def find_forbidden_bounded(g: Graph,
                           hull: Optional[int] = None,
                           budget: OracleBudget = DEFAULT_BUDGET,
                           prefer: Sequence[FamilyId] = (),
                           ) -> BoundedSearch:
    """Exhaustive induced-subgraph search for any family member.

    Restricting to a ``hull`` bitmask searches only inside that vertex
    set.  ``prefer`` lists family members to try first (extraction
    candidates).  Within budget the answer is exact: a validated
    certificate, or None meaning no family member occurs.
    """
    mask = hull if hull is not None else g.vertex_mask
    size = len(list(bits(mask)))
    if size > budget.max_vertices:
        return BoundedSearch(None, False)
    sub, remap = induced_subgraph(g, mask)
    back = {new: old for old, new in remap.items()}
    candidates = list(prefer) + [f for f in feasible_families(sub.n) if f not in prefer]
    for fam in candidates:
        if fam.order > sub.n:
            continue
        emb = _find_induced_embedding(generate(fam), sub)
        if emb is not None:
            witness = tuple(back[emb[i]] for i in range(len(emb)))
            cert = Certificate(fam, witness)
            if validate_certificate(g, cert):
                return BoundedSearch(cert, True)
    return BoundedSearch(None, True)


def _find_induced_embedding(pattern: Graph, host: Graph) -> Optional[list[int]]:
    """Injective role map with exact edge/non-edge preservation, or None."""
    if pattern.n > host.n:
        return None
    # Place pattern vertices in an order that keeps each new vertex
    # attached to the already-placed ones where possible.
    order: list[int] = []
    placed = 0
    degs = [pattern.degree(v) for v in range(pattern.n)]
    while len(order) < pattern.n:
        best, best_key = -1, None
        for v in range(pattern.n):
            if placed >> v & 1:
                continue
            attach = len([w for w in bits(pattern.adj[v]) if placed >> w & 1])
            key = (-attach, -degs[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        order.append(best)
        placed |= 1 << best
    host_degs = [host.degree(v) for v in range(host.n)]
    assignment = [-1] * pattern.n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        v = order[i]
        for h in range(host.n):
            if used >> h & 1 or host_degs[h] < degs[v]:
                continue
            ok = True
            for w in order[:i]:
                if pattern.has_edge(v, w) != host.has_edge(h, assignment[w]):
                    ok = False
                    break
            if not ok:
                continue
            assignment[v] = h
            used |= 1 << h
            if extend(i + 1):
                return True
            assignment[v] = -1
            used &= ~(1 << h)
        return False

    return assignment if extend(0) else None
