"""Simple undirected graphs and the classifiers used on order divisor graphs.

Adjacency is a tuple of Python ints used as bitsets: bit ``u`` of ``adj[v]``
is set iff ``u ~ v``.  Vertices are ``0..n-1``; optional annotations carry a
display label and an integer ``order_tag`` per vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .groups import CapExceeded

CHROMATIC_CAP = 128
BACKTRACK_ISO_CAP = 16
QUOTIENT_ISO_CAP = 64


class Annotation(NamedTuple):
    label: str
    order_tag: int


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adj: tuple[int, ...]
    annotations: tuple[Annotation, ...] | None = field(default=None, compare=True)

    def __post_init__(self):
        n = self.vertex_count
        if len(self.adj) != n:
            raise ValueError("adjacency length does not match vertex_count")
        full = (1 << n) - 1
        for v, m in enumerate(self.adj):
            if m & ~full:
                raise ValueError(f"vertex {v} has a neighbor out of range")
            if m >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in _bits(m):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
        if self.annotations is not None:
            if len(self.annotations) != n:
                raise ValueError("annotations must cover every vertex")
            object.__setattr__(self, "annotations", tuple(Annotation(*a) for a in self.annotations))

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"

    @property
    def full_mask(self) -> int:
        return (1 << self.vertex_count) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(v, u) for v in range(self.vertex_count) for u in _bits(self.adj[v] >> (v + 1) << (v + 1))]

    def order_tags(self) -> list[int] | None:
        return None if self.annotations is None else [a.order_tag for a in self.annotations]

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph(self.vertex_count, tuple(full & ~m & ~(1 << v) for v, m in enumerate(self.adj)),
                     self.annotations)

    def induced(self, vertices: list[int]) -> Graph:
        pos = {v: k for k, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            m = 0
            for u in _bits(self.adj[v]):
                if u in pos:
                    m |= 1 << pos[u]
            adj.append(m)
        ann = None if self.annotations is None else tuple(self.annotations[v] for v in vertices)
        return Graph(len(vertices), tuple(adj), ann)

    def permuted(self, perm: list[int]) -> Graph:
        """Relabel vertex ``v`` as ``perm[v]``."""
        n = self.vertex_count
        adj = [0] * n
        for v in range(n):
            m = 0
            for u in _bits(self.adj[v]):
                m |= 1 << perm[u]
            adj[perm[v]] = m
        ann = None
        if self.annotations is not None:
            ann = [None] * n
            for v in range(n):
                ann[perm[v]] = self.annotations[v]
        return Graph(n, tuple(adj), None if ann is None else tuple(ann))


def from_edges(n: int, edges: Iterable[tuple[int, int]], annotations=None) -> Graph:
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
        if u == v:
            raise ValueError(f"self-loop at {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), None if annotations is None else tuple(annotations))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


# ---------------------------------------------------------------- distances

def _bfs_layers(g: Graph, src: int) -> tuple[int, int]:
    """(eccentricity, reached-mask) from ``src``."""
    seen = frontier = 1 << src
    ecc = 0
    while True:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        nxt &= ~seen
        if not nxt:
            return ecc, seen
        seen |= nxt
        frontier = nxt
        ecc += 1


def is_connected(g: Graph) -> bool:
    if g.vertex_count == 0:
        return True
    return _bfs_layers(g, 0)[1] == g.full_mask


def diameter(g: Graph) -> float:
    """Largest eccentricity; ``math.inf`` when disconnected."""
    if g.vertex_count == 0:
        raise ValueError("diameter of the empty graph is undefined")
    full = g.full_mask
    best = 0
    for v in range(g.vertex_count):
        ecc, seen = _bfs_layers(g, v)
        if seen != full:
            return math.inf
        best = max(best, ecc)
    return best


def is_complete(g: Graph) -> bool:
    return g.edge_count == g.vertex_count * (g.vertex_count - 1) // 2


def is_cycle(g: Graph) -> bool:
    n = g.vertex_count
    return n >= 3 and all(d == 2 for d in g.degrees()) and is_connected(g)


# ---------------------------------------------------------------- shape classifiers

def is_star(g: Graph) -> int | None:
    """Centre of a star K_{1,m-1} on m vertices, else None.

    A single vertex is a degenerate star centred on itself.  For K_2 the
    lower-indexed vertex is reported.
    """
    n = g.vertex_count
    if n == 0:
        return None
    if n == 1:
        return 0
    full = g.full_mask
    for c in range(n):
        if g.adj[c] | (1 << c) == full:
            if all(g.adj[v] == 1 << c for v in range(n) if v != c):
                return c
            return None
    return None


@dataclass(frozen=True)
class PartitionReport:
    parts: tuple[tuple[int, ...], ...]
    kind: str   # "star" | "complete_multipartite" | "other"

    @property
    def part_sizes(self) -> list[int]:
        return sorted(len(p) for p in self.parts)


def open_twin_classes(g: Graph) -> list[tuple[int, ...]]:
    groups: dict[int, list[int]] = {}
    for v, m in enumerate(g.adj):
        groups.setdefault(m, []).append(v)
    return sorted((tuple(vs) for vs in groups.values()), key=lambda p: p[0])


def closed_twin_classes(g: Graph) -> list[tuple[int, ...]]:
    groups: dict[int, list[int]] = {}
    for v, m in enumerate(g.adj):
        groups.setdefault(m | 1 << v, []).append(v)
    return sorted((tuple(vs) for vs in groups.values()), key=lambda p: p[0])


def twin_classes(g: Graph) -> dict[str, list[tuple[int, ...]]]:
    return {"closed": closed_twin_classes(g), "open": open_twin_classes(g)}


def complete_multipartite_parts(g: Graph) -> PartitionReport | None:
    """Parts of g if it is complete multipartite (complement = disjoint cliques), else None.

    The parts are exactly the open-twin classes: each must be independent and
    every vertex must see everything outside its own class.
    """
    if g.vertex_count == 0:
        return None
    full = g.full_mask
    parts = open_twin_classes(g)
    for part in parts:
        pmask = sum(1 << v for v in part)
        if g.adj[part[0]] != full & ~pmask:
            return None
    kind = "star" if is_star(g) is not None else "complete_multipartite"
    return PartitionReport(tuple(parts), kind)


def classify(g: Graph) -> PartitionReport:
    rep = complete_multipartite_parts(g)
    if rep is not None:
        return rep
    return PartitionReport(tuple(open_twin_classes(g)), "other")


# ---------------------------------------------------------------- coloring

def _greedy_clique(g: Graph) -> list[int]:
    best: list[int] = []
    for start in range(g.vertex_count):
        clique, cand = [start], g.adj[start]
        while cand:
            v = max(_bits(cand), key=lambda u: (g.adj[u] & cand).bit_count())
            clique.append(v)
            cand &= g.adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _tag_chain_clique(g: Graph) -> list[int]:
    """One vertex per tag along a longest divisibility chain of tags, if that is a clique."""
    tags = g.order_tags()
    if not tags or min(tags) < 1:
        return []
    rep: dict[int, int] = {}
    for v, t in enumerate(tags):
        rep.setdefault(t, v)
    values = sorted(rep)
    best_len = {d: 1 for d in values}
    prev: dict[int, int | None] = {d: None for d in values}
    for i, d in enumerate(values):
        for c in values[:i]:
            if d % c == 0 and best_len[c] + 1 > best_len[d]:
                best_len[d], prev[d] = best_len[c] + 1, c
    top = max(values, key=lambda d: best_len[d])
    chain = []
    while top is not None:
        chain.append(rep[top])
        top = prev[top]
    if all(g.has_edge(u, v) for i, u in enumerate(chain) for v in chain[i + 1:]):
        return chain
    return []


def _dsatur(g: Graph) -> list[int]:
    n = g.vertex_count
    colors = [-1] * n
    sat = [set() for _ in range(n)]
    deg = g.degrees()
    for _ in range(n):
        v = max((u for u in range(n) if colors[u] < 0), key=lambda u: (len(sat[u]), deg[u], -u))
        c = 0
        while c in sat[v]:
            c += 1
        colors[v] = c
        for u in _bits(g.adj[v]):
            sat[u].add(c)
    return colors


def _k_colorable(g: Graph, k: int, seed: list[int]) -> bool:
    n = g.vertex_count
    colors = [-1] * n
    # pre-colour a clique; breaks colour symmetry
    for c, v in enumerate(seed):
        colors[v] = c
    deg = g.degrees()

    def pick():
        best, best_key = -1, None
        for u in range(n):
            if colors[u] >= 0:
                continue
            used = {colors[w] for w in _bits(g.adj[u]) if colors[w] >= 0}
            key = (len(used), deg[u])
            if best_key is None or key > best_key:
                best, best_key = u, key
        return best

    def rec(remaining: int, used_max: int) -> bool:
        if remaining == 0:
            return True
        v = pick()
        forbidden = {colors[w] for w in _bits(g.adj[v]) if colors[w] >= 0}
        for c in range(min(k, used_max + 2)):
            if c in forbidden:
                continue
            colors[v] = c
            if rec(remaining - 1, max(used_max, c)):
                return True
        colors[v] = -1
        return False

    return rec(n - len(seed), len(seed) - 1)


def chromatic_number(g: Graph, cap: int = CHROMATIC_CAP) -> int:
    """Exact chromatic number by branch and bound; refuses graphs above ``cap`` vertices."""
    n = g.vertex_count
    if n > cap:
        raise CapExceeded(f"chromatic_number: {n} vertices exceeds exactness cap {cap}")
    if n == 0:
        return 0
    if g.edge_count == 0:
        return 1
    clique = _tag_chain_clique(g)
    greedy = _greedy_clique(g)
    if len(greedy) > len(clique):
        clique = greedy
    lower = len(clique)
    upper = max(_dsatur(g)) + 1
    for k in range(lower, upper):
        if _k_colorable(g, k, clique):
            return k
    return upper


# ---------------------------------------------------------------- reduction

def reduced_graph(g: Graph) -> Graph:
    """Quotient of g by twin vertices.

    Two vertices merge when their closed neighbourhoods agree or their open
    neighbourhoods agree.  On annotated graphs a merge additionally requires
    equal ``order_tag``; this keeps distinct element orders apart in OD graphs
    (in OD(Z_15) the order-3 and order-5 elements are open twins, and in
    OD(Z_2) the two vertices are closed twins).  Each merged vertex keeps the
    annotation of its smallest member.
    """
    n = g.vertex_count
    tags = g.order_tags()
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for classes in (closed_twin_classes(g), open_twin_classes(g)):
        for cls in classes:
            by_tag: dict[object, int] = {}
            for v in cls:
                key = None if tags is None else tags[v]
                if key in by_tag:
                    a, b = find(by_tag[key]), find(v)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
                else:
                    by_tag[key] = v
    roots = sorted({find(v) for v in range(n)})
    pos = {r: k for k, r in enumerate(roots)}
    adj = [0] * len(roots)
    for v in range(n):
        rv = pos[find(v)]
        for u in _bits(g.adj[v]):
            ru = pos[find(u)]
            if ru != rv:
                adj[rv] |= 1 << ru
    ann = None if g.annotations is None else tuple(g.annotations[r] for r in roots)
    return Graph(len(roots), tuple(adj), ann)


# ---------------------------------------------------------------- joins

def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    s = g1.vertex_count
    adj = g1.adj + tuple(m << s for m in g2.adj)
    ann = None
    if g1.annotations is not None and g2.annotations is not None:
        ann = g1.annotations + g2.annotations
    return Graph(s + g2.vertex_count, adj, ann)


def join(g1: Graph, g2: Graph) -> Graph:
    s, t = g1.vertex_count, g2.vertex_count
    left = (1 << s) - 1
    right = ((1 << t) - 1) << s
    u = disjoint_union(g1, g2)
    adj = tuple(m | right if v < s else m | left for v, m in enumerate(u.adj))
    return Graph(s + t, adj, u.annotations)


def sequential_join(graphs: list[Graph]) -> Graph:
    """G_1 ⋄ G_2 ⋄ ... ⋄ G_k: disjoint union plus all edges between consecutive graphs."""
    if not graphs:
        return empty_graph(0)
    offsets, total = [], 0
    for h in graphs:
        offsets.append(total)
        total += h.vertex_count
    adj = [0] * total
    for i, h in enumerate(graphs):
        off = offsets[i]
        block = lambda j: ((1 << graphs[j].vertex_count) - 1) << offsets[j]
        extra = 0
        if i > 0:
            extra |= block(i - 1)
        if i + 1 < len(graphs):
            extra |= block(i + 1)
        for v, m in enumerate(h.adj):
            adj[off + v] = (m << off) | extra
    ann = None
    if all(h.annotations is not None for h in graphs):
        ann = tuple(a for h in graphs for a in h.annotations)
    return Graph(total, tuple(adj), ann)


def block_graph(sizes: list[int], block_edges: Iterable[tuple[int, int]], annotations=None) -> Graph:
    """Independent blocks of the given sizes, fully joined along ``block_edges``."""
    offsets, total = [], 0
    for s in sizes:
        offsets.append(total)
        total += s
    masks = [((1 << s) - 1) << o for s, o in zip(sizes, offsets)]
    nbr = [0] * len(sizes)
    for a, b in block_edges:
        if a == b:
            raise ValueError("a block cannot be joined to itself")
        nbr[a] |= masks[b]
        nbr[b] |= masks[a]
    adj = []
    for i, s in enumerate(sizes):
        adj.extend([nbr[i]] * s)
    return Graph(total, tuple(adj), annotations)


# ---------------------------------------------------------------- isomorphism

def _canon(values: list) -> list[int]:
    index = {x: k for k, x in enumerate(sorted(set(values)))}
    return [index[x] for x in values]


def _refine(g: Graph, init: list) -> list[int]:
    """1-dimensional colour refinement, relabelled to ints each round."""
    colors = _canon(init)
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in _bits(g.adj[v]))))
                for v in range(g.vertex_count)]
        new = _canon(sigs)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _find_mapping(g1: Graph, g2: Graph, w1: list[int], w2: list[int]) -> dict[int, int] | None:
    n = g1.vertex_count
    if n != g2.vertex_count or g1.edge_count != g2.edge_count:
        return None
    if sorted(w1) != sorted(w2):
        return None
    # refine both graphs jointly so colours are comparable
    union = disjoint_union(Graph(n, g1.adj), Graph(n, g2.adj))
    deg = union.degrees()
    init = [(w, d) for w, d in zip(w1 + w2, deg)]
    colors = _refine(union, init)
    c1, c2 = colors[:n], colors[n:]
    if sorted(c1) != sorted(c2):
        return None
    by_color: dict = {}
    for v in range(n):
        by_color.setdefault(c2[v], []).append(v)
    order = sorted(range(n), key=lambda v: (len(by_color[c1[v]]), -deg[v]))
    mapping: dict[int, int] = {}
    used = [False] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for u in by_color[c1[v]]:
            if used[u]:
                continue
            if all(g1.has_edge(v, x) == g2.has_edge(u, y) for x, y in mapping.items()):
                mapping[v] = u
                used[u] = True
                if rec(i + 1):
                    return True
                del mapping[v]
                used[u] = False
        return False

    return dict(mapping) if rec(0) else None


def find_isomorphism_backtracking(g1: Graph, g2: Graph, cap: int = BACKTRACK_ISO_CAP) -> dict[int, int] | None:
    n = max(g1.vertex_count, g2.vertex_count)
    if n > cap:
        raise CapExceeded(f"backtracking isomorphism limited to {cap} vertices, got {n}")
    return _find_mapping(g1, g2, [1] * g1.vertex_count, [1] * g2.vertex_count)


def twin_quotient(g: Graph) -> tuple[Graph, list[tuple[int, ...]]]:
    """Quotient by open-twin classes (always independent sets) plus the classes."""
    classes = open_twin_classes(g)
    where = {}
    for k, cls in enumerate(classes):
        for v in cls:
            where[v] = k
    adj = [0] * len(classes)
    for k, cls in enumerate(classes):
        for u in _bits(g.adj[cls[0]]):
            adj[k] |= 1 << where[u]
    return Graph(len(classes), tuple(adj)), classes


def find_isomorphism_quotient(g1: Graph, g2: Graph, cap: int = QUOTIENT_ISO_CAP) -> dict[int, int] | None:
    """Isomorphism via open-twin quotients with class sizes as weights.

    Open twins are never adjacent, so a size-preserving isomorphism of the
    quotients lifts to the graphs by matching class members in order.
    """
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return None
    q1, cls1 = twin_quotient(g1)
    q2, cls2 = twin_quotient(g2)
    for cls, g in ((cls1, g1), (cls2, g2)):
        for c in cls:
            if any(g.has_edge(a, b) for i, a in enumerate(c) for b in c[i + 1:]):
                raise AssertionError("open-twin class is not independent")
    if q1.vertex_count != q2.vertex_count:
        return None
    if q1.vertex_count > cap:
        raise CapExceeded(f"twin quotient has {q1.vertex_count} vertices, cap {cap}")
    qmap = _find_mapping(q1, q2, [len(c) for c in cls1], [len(c) for c in cls2])
    if qmap is None:
        return None
    mapping = {}
    for a, b in qmap.items():
        for x, y in zip(cls1[a], cls2[b]):
            mapping[x] = y
    return mapping


def find_isomorphism(g1: Graph, g2: Graph, strategy: str = "auto") -> dict[int, int] | None:
    """Mapping g1 -> g2 or None.  ``auto`` tries the twin quotient first and
    falls back to plain backtracking for small graphs."""
    if strategy == "backtrack":
        return find_isomorphism_backtracking(g1, g2)
    if strategy in ("auto", "quotient"):
        try:
            return find_isomorphism_quotient(g1, g2)
        except CapExceeded:
            if strategy == "quotient" or max(g1.vertex_count, g2.vertex_count) > BACKTRACK_ISO_CAP:
                raise
            return find_isomorphism_backtracking(g1, g2)
    raise ValueError(f"unknown isomorphism strategy {strategy!r}")


def is_isomorphic(g1: Graph, g2: Graph, strategy: str = "auto") -> bool:
    return find_isomorphism(g1, g2, strategy) is not None


def is_isomorphism(g1: Graph, g2: Graph, mapping: dict[int, int]) -> bool:
    n = g1.vertex_count
    if n != g2.vertex_count or sorted(mapping) != list(range(n)) or sorted(mapping.values()) != list(range(n)):
        return False
    return all(g1.has_edge(u, v) == g2.has_edge(mapping[u], mapping[v])
               for u in range(n) for v in range(u + 1, n))
