"""Order divisor graphs and the divisor-lattice graphs they are compared with."""

from __future__ import annotations

from dataclasses import dataclass

from . import graphs as gr
from .graphs import Annotation, Graph
from .groups import FiniteGroup, cyclic_group, is_cyclic_algebraic, order_partition
from .numtheory import divisors, euler_phi, is_prime


@dataclass(frozen=True)
class DivisorLattice:
    n: int
    divisors: tuple[int, ...]

    @classmethod
    def of(cls, n: int) -> DivisorLattice:
        return cls(n, tuple(divisors(n)))

    @property
    def bottom(self) -> int:
        return 1

    @property
    def top(self) -> int:
        return self.n

    @staticmethod
    def leq(a: int, b: int) -> bool:
        return b % a == 0

    def meet(self, a: int, b: int) -> int:
        return max(d for d in self.divisors if a % d == 0 and b % d == 0)

    def join(self, a: int, b: int) -> int:
        return min(d for d in self.divisors if d % a == 0 and d % b == 0)


@dataclass(frozen=True)
class ODGraph:
    group: FiniteGroup
    graph: Graph
    partition: dict[int, tuple[int, ...]]

    @property
    def identity(self) -> int:
        return self.group.identity


def _comparable(a: int, b: int) -> bool:
    return a != b and (a % b == 0 or b % a == 0)


def _class_graph(order_of: list[int], labels: list[str]) -> Graph:
    """Vertices tagged by order; u ~ v iff tags differ and one divides the other."""
    masks: dict[int, int] = {}
    for v, d in enumerate(order_of):
        masks[d] = masks.get(d, 0) | 1 << v
    nbr = {d: 0 for d in masks}
    for d in masks:
        for e in masks:
            if _comparable(d, e):
                nbr[d] |= masks[e]
    adj = tuple(nbr[d] for d in order_of)
    ann = tuple(Annotation(lab, d) for lab, d in zip(labels, order_of))
    return Graph(len(order_of), adj, ann)


def od_graph(g: FiniteGroup) -> ODGraph:
    """OD(G): one vertex per element, distinct orders adjacent when one divides the other."""
    graph = _class_graph(list(g.orders), list(g.labels))
    return ODGraph(g, graph, order_partition(g))


def comparability_graph(n: int) -> Graph:
    """G_n: divisors of n, adjacent when distinct and comparable under divisibility."""
    ds = divisors(n)
    return _class_graph(ds, [str(d) for d in ds])


def extended_graph(n: int) -> Graph:
    """E(G_n): each divisor d replaced by euler_phi(d) pairwise non-adjacent copies."""
    order_of, labels = [], []
    for d in divisors(n):
        k = euler_phi(d)
        order_of.extend([d] * k)
        labels.extend([f"{d}" if k == 1 else f"{d}#{i}" for i in range(k)])
    return _class_graph(order_of, labels)


def reduced_od_graph(g: FiniteGroup) -> Graph:
    return gr.reduced_graph(od_graph(g).graph)


def _blocks(sizes: list[int], block_edges, tags: list[int]) -> Graph:
    ann = []
    for s, t in zip(sizes, tags):
        ann.extend(Annotation(f"{t}" if s == 1 else f"{t}#{i}", t) for i in range(s))
    return gr.block_graph(sizes, block_edges, tuple(ann))


def _independent(k: int, tag: int) -> Graph:
    return Graph(k, (0,) * k, tuple(Annotation(f"{tag}#{i}", tag) for i in range(k)))


def theorem5_shape(p1: int, p2: int) -> Graph:
    """((p1-1)K_1 ⋄ (p1-1)(p2-1)K_1 ⋄ (p2-1)K_1) ⋄ K_1, built from joins."""
    if not (is_prime(p1) and is_prime(p2)) or p1 == p2:
        raise ValueError(f"need two distinct primes, got {p1}, {p2}")
    g1 = _independent(p1 - 1, p1)
    g2 = _independent((p1 - 1) * (p2 - 1), p1 * p2)
    g3 = _independent(p2 - 1, p2)
    k1 = Graph(1, (0,), (Annotation("1", 1),))
    return gr.join(gr.sequential_join([g1, g2, g3]), k1)


def theorem7_shape(p1: int, p2: int, p3: int) -> Graph:
    """The six outer blocks joined in a 6-cycle G1-G12-G2-G23-G3-G13-G1,
    all of them joined to G123, and everything joined to K_1.

    Blocks are shared between the pairwise joins, so the vertex count is
    p1*p2*p3.
    """
    ps = (p1, p2, p3)
    if not all(is_prime(p) for p in ps) or len(set(ps)) != 3:
        raise ValueError(f"need three distinct primes, got {ps}")
    tags = [p1, p1 * p2, p2, p2 * p3, p3, p1 * p3, p1 * p2 * p3]
    sizes = [euler_phi(t) for t in tags]
    ring = [(i, (i + 1) % 6) for i in range(6)]
    outer = _blocks(sizes[:6], ring, tags[:6])
    inner = _blocks(sizes[6:], [], tags[6:])
    k1 = Graph(1, (0,), (Annotation("1", 1),))
    return gr.join(gr.join(outer, inner), k1)


def is_cyclic_via_od(g: FiniteGroup) -> tuple[bool, bool]:
    """(E(G_n) ≅ OD(G), G_n ≅ R(OD(G))) for n = |G|."""
    n = g.order
    od = od_graph(g).graph
    b = gr.is_isomorphic(extended_graph(n), od)
    c = gr.is_isomorphic(comparability_graph(n), gr.reduced_graph(od))
    return b, c


def cyclic_equivalents(g: FiniteGroup) -> tuple[bool, bool, bool]:
    b, c = is_cyclic_via_od(g)
    return is_cyclic_algebraic(g), b, c


def cyclic_od_graph(n: int) -> Graph:
    return od_graph(cyclic_group(n)).graph
