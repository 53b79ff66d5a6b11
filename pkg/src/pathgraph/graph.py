"""Small immutable graphs over integer vertices with bitset adjacency.

Vertices are the integers ``0..n-1``.  Adjacency rows are Python ints used
as bitsets, which makes the set-intersection heavy algorithms in the rest
of the package cheap.  An optional name table maps indices to display
names for I/O; the algorithmic core never looks at it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence


class GraphParseError(ValueError):
    """Raised for malformed edge-list or graph6 input."""


def bits(mask: int) -> Iterator[int]:
    """Iterate over the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_count(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def lowest_bit(mask: int) -> int:
    """Index of the lowest set bit; mask must be nonzero."""
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph.

    ``adj[u]`` is a bitmask of the neighbours of ``u``.  Instances are
    immutable after construction and safe to share between threads.
    """

    n: int
    adj: tuple[int, ...]
    names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(self.adj) != self.n:
            raise ValueError("adjacency table length does not match n")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency row {u} mentions out-of-range vertices")
            if row >> u & 1:
                raise ValueError(f"self-loop at vertex {u}")
        for u in range(self.n):
            for v in bits(self.adj[u]):
                if not self.adj[v] >> u & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")
        if self.names is not None:
            if len(self.names) != self.n:
                raise ValueError("name table length does not match n")
            if len(set(self.names)) != self.n:
                raise ValueError("vertex names must be distinct")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]],
                   names: Optional[Sequence[str]] = None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows), tuple(names) if names is not None else None)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, u: int) -> int:
        return bit_count(self.adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                out.append((u, v))
        return out

    def edge_count(self) -> int:
        return sum(bit_count(row) for row in self.adj) // 2

    def name_of(self, u: int) -> str:
        return self.names[u] if self.names is not None else str(u)

    def is_clique_mask(self, mask: int) -> bool:
        """True iff the vertices of ``mask`` are pairwise adjacent."""
        rest = mask
        while rest:
            v = lowest_bit(rest)
            rest ^= 1 << v
            if rest & ~self.adj[v]:
                return False
        return True

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(components(self, 0)) == 1


def parse_edge_list(text: str) -> Graph:
    """Parse the ``"n m"`` header + ``"u v"`` lines edge-list format.

    Duplicate edges are deduplicated; self-loops and out-of-range indices
    are errors that name the offending line.
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise GraphParseError("line 1: missing 'n m' header")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphParseError("line 1: header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphParseError("line 1: header must contain two integers") from None
    if n < 0 or m < 0:
        raise GraphParseError("line 1: n and m must be non-negative")
    if len(lines) - 1 != m:
        raise GraphParseError(f"expected {m} edge lines, found {len(lines) - 1}")
    rows = [0] * n
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {i}: edge line must be 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {i}: edge endpoints must be integers") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"line {i}: vertex out of range 0..{n - 1}")
        if u == v:
            raise GraphParseError(f"line {i}: self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def to_edge_list(g: Graph, use_names: bool = False) -> str:
    """Serialize in the format accepted by :func:`parse_edge_list`.

    With ``use_names`` the vertex name table is appended as ``# i name``
    comment-free trailer lines are avoided; names go on the edge lines.
    """
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    for u, v in edges:
        lines.append(f"{u} {v}")
    if use_names and g.names is not None:
        return "\n".join(lines) + "\n" + "\n".join(
            f"# {i} {g.names[i]}" for i in range(g.n)) + "\n"
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Graph:
    """Decode a graph6 string (McKay's format, optional '>>graph6<<' header)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):].strip()
    if not s:
        raise GraphParseError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    for i, x in enumerate(data):
        if not 0 <= x < 64:
            raise GraphParseError(f"invalid graph6 byte at position {i}")
    if data[0] < 63:
        n = data[0]
        body = data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        raise GraphParseError("graph6 sizes above 2^18 are not supported")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphParseError(
            f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    rows = [0] * n
    k = 0
    for v in range(1, n):
        for u in range(v):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            k += 1
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    """Encode as graph6; round-trips with :func:`parse_graph6`."""
    if g.n > (1 << 18) - 1:
        raise ValueError("graph too large for the supported graph6 sizes")
    if g.n < 63:
        head = [g.n]
    else:
        head = [63, g.n >> 12 & 63, g.n >> 6 & 63, g.n & 63]
    nbits = g.n * (g.n - 1) // 2
    body = [0] * ((nbits + 5) // 6)
    k = 0
    for v in range(1, g.n):
        for u in range(v):
            if g.has_edge(u, v):
                body[k // 6] |= 1 << (5 - k % 6)
            k += 1
    return "".join(chr(63 + x) for x in head + body)


def induced_subgraph(g: Graph, vertices: int | Iterable[int]
                     ) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on a vertex set (bitmask or iterable).

    Returns the subgraph together with the old->new index mapping; new
    indices follow the increasing order of the old ones.
    """
    mask = vertices if isinstance(vertices, int) else mask_of(vertices)
    if mask & ~g.vertex_mask:
        raise ValueError("vertex set out of range")
    old = list(bits(mask))
    remap = {v: i for i, v in enumerate(old)}
    rows = []
    for v in old:
        row = 0
        for w in bits(g.adj[v] & mask):
            row |= 1 << remap[w]
        rows.append(row)
    names = tuple(g.names[v] for v in old) if g.names is not None else None
    return Graph(len(old), tuple(rows), names), remap


def components(g: Graph, removed: int = 0) -> list[int]:
    """Connected components of ``G - removed`` as bitmasks.

    Components are ordered by their smallest vertex.
    """
    todo = g.vertex_mask & ~removed
    out = []
    while todo:
        seed = 1 << lowest_bit(todo)
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= todo & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        todo &= ~comp
    return out


def connected_mask(g: Graph, seed_mask: int, allowed: int) -> int:
    """Vertices of ``allowed`` reachable from ``seed_mask`` inside ``allowed``."""
    comp = seed_mask & allowed
    frontier = comp
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= allowed & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def find_isomorphism(g: Graph, h: Graph) -> Optional[dict[int, int]]:
    """An edge- and non-edge-preserving bijection g -> h, or None.

    Backtracking with degree-sequence and neighbour-degree pruning; meant
    for the small graphs that appear in certificates, not for general use.
    """
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    gdeg = [g.degree(u) for u in range(g.n)]
    hdeg = [h.degree(u) for u in range(h.n)]
    if sorted(gdeg) != sorted(hdeg):
        return None

    def profile(graph: Graph, deg: list[int], u: int) -> tuple:
        return (deg[u], tuple(sorted(deg[v] for v in bits(graph.adj[u]))))

    gprof = [profile(g, gdeg, u) for u in range(g.n)]
    hprof = [profile(h, hdeg, u) for u in range(h.n)]
    if sorted(gprof) != sorted(hprof):
        return None

    # Assign high-degree vertices first; they are the most constrained.
    order = sorted(range(g.n), key=lambda u: (-gdeg[u], u))
    mapping: dict[int, int] = {}
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        u = order[i]
        for v in range(h.n):
            if used >> v & 1 or hprof[v] != gprof[u]:
                continue
            ok = True
            for w, img in mapping.items():
                if g.has_edge(u, w) != h.has_edge(v, img):
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = v
            used |= 1 << v
            if extend(i + 1):
                return True
            del mapping[u]
            used &= ~(1 << v)
        return False

    return dict(mapping) if extend(0) else None
