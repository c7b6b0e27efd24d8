"""Exhaustive checks of every claim about order divisor graphs.

Each check runs over a deterministic corpus and records all failures, not
just the first.  "If and only if" statements are tested in both directions
over the whole range.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable

from . import graphs as gr
from .graphs import Graph
from .groups import (
    FiniteGroup,
    all_nonidentity_prime_order,
    commutator_subgroup,
    cyclic_group,
    dihedral_group,
    exponent,
    fitting_subgroup,
    is_abelian,
    is_cyclic_algebraic,
    is_elementary_abelian,
    is_p_group,
    order_partition,
    parse_spec,
)
from .numtheory import divisors, euler_phi, factorize, is_prime, primes_upto
from .odgraph import comparability_graph, extended_graph, od_graph, theorem5_shape, theorem7_shape

THEOREM_IDS = ("R2i", "R2ii", "R2iii", "R2iv", "T9", "C13", "C11", "C12",
               "C10", "T4", "T2", "C3", "C6", "T5", "T7", "T8")

CYCLIC_P_POWERS = ((2, 6), (3, 4), (5, 3), (7, 2))
NONCYCLIC_P_GROUPS = ("D:4", "Z:2xZ:2", "EA:2^3", "Z:3xZ:3")
DEFAULT_PRODUCTS = ("Z:2xZ:4", "Z:3xZ:3", "Z:2xZ:6", "Z:3xZ:5", "Z:4xZ:4", "Z:2xZ:2xZ:3",
                    "Z:2xD:4", "Z:3xS:3", "Z:2xA:4")
DEFAULT_TRIPLES = ((2, 3, 5), (2, 3, 7), (3, 5, 7))


class UnknownTheorem(KeyError):
    pass


@dataclass(frozen=True)
class Bounds:
    # corpus
    max_cyclic: int = 60
    max_dihedral: int = 20
    max_units: int = 60
    max_elementary: int = 64
    max_symmetric: int = 5
    products: tuple[str, ...] = DEFAULT_PRODUCTS
    # sweeps
    max_n: int = 200                 # C11, C12
    max_dihedral_sweep: int = 50     # T4
    max_pair_product: int = 150      # T5
    max_prime: int | None = None     # T5: optional cap on each prime
    triples: tuple[tuple[int, int, int], ...] = DEFAULT_TRIPLES
    max_order: int = 512

    @classmethod
    def minimal(cls) -> Bounds:
        return cls(max_cyclic=8, max_dihedral=4, max_units=8, max_elementary=8, max_symmetric=3,
                   products=("Z:2xZ:4",), max_n=30, max_dihedral_sweep=10, max_pair_product=15,
                   triples=((2, 3, 5),))

    def check(self) -> None:
        if self.max_symmetric > 6:
            raise ValueError("symmetric groups only up to S_6")
        for limit in (self.max_cyclic, self.max_units, self.max_elementary, self.max_n):
            if limit > self.max_order:
                raise ValueError(f"bound {limit} exceeds order cap {self.max_order}")
        if 2 * max(self.max_dihedral, self.max_dihedral_sweep) > self.max_order:
            raise ValueError("dihedral bound exceeds order cap")


@dataclass
class Failure:
    case: str
    expected: str
    got: str


@dataclass
class VerificationReport:
    theorem_id: str
    cases_run: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0
    cases: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def record(self, case: str, ok: bool, expected: str = "", got: str = "") -> None:
        self.cases_run += 1
        self.cases.append(case)
        if not ok:
            self.failures.append(Failure(case, expected, got))

    def to_dict(self, timing: bool = True) -> dict:
        failed = {f.case for f in self.failures}
        doc = {
            "theorem_id": self.theorem_id,
            "status": self.status,
            "cases_run": self.cases_run,
            "failures": [asdict(f) for f in self.failures],
            "cases": [{"case": c, "ok": c not in failed} for c in self.cases],
        }
        if timing:
            doc["elapsed"] = round(self.elapsed, 6)
        return doc

    def to_lines(self, timing: bool = True) -> list[str]:
        head = f"{self.theorem_id}\t{self.status}\tcases={self.cases_run}\tfailures={len(self.failures)}"
        if timing:
            head += f"\telapsed={self.elapsed:.3f}s"
        lines = [head]
        for f in self.failures:
            lines.append(f"  FAIL {f.case}: expected {f.expected}; got {f.got}")
        return lines


ODBuilder = Callable[[FiniteGroup], Graph]


def default_od(g: FiniteGroup) -> Graph:
    return od_graph(g).graph


# ---------------------------------------------------------------- corpus

def build_corpus(bounds: Bounds | None = None) -> list[FiniteGroup]:
    """Deterministic, spec-deduplicated list of groups to sweep."""
    b = bounds or Bounds()
    b.check()
    specs = [f"Z:{n}" for n in range(1, b.max_cyclic + 1)]
    specs += [f"D:{n}" for n in range(3, b.max_dihedral + 1)]
    specs += [f"U:{n}" for n in range(1, b.max_units + 1)]
    for p in primes_upto(b.max_elementary):
        k = 1
        while p**k <= b.max_elementary:
            specs.append(f"EA:{p}^{k}")
            k += 1
    specs += [f"S:{n}" for n in range(3, b.max_symmetric + 1)]
    specs += ["A:4", "A:5"]
    specs += list(b.products)
    seen, out = set(), []
    for s in specs:
        if s in seen:
            continue
        seen.add(s)
        out.append(parse_spec(s, max_order=b.max_order))
    return out


# ---------------------------------------------------------------- helpers

def _orders_adjacent(a: int, b: int) -> bool:
    return a != b and (a % b == 0 or b % a == 0)


def _star(od: Graph) -> bool:
    return gr.is_star(od) is not None


def _yn(flag: bool, yes: str, no: str) -> str:
    return yes if flag else no


# ---------------------------------------------------------------- Remark 2

def check_R2i(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("R2i")
    for g in build_corpus(bounds):
        graph = od(g)
        orders = g.orders
        ok = graph.vertex_count == g.order
        ok = ok and all(not graph.has_edge(v, v) for v in range(g.order))
        ok = ok and all(graph.has_edge(u, v) == graph.has_edge(v, u) == _orders_adjacent(orders[u], orders[v])
                        for u in range(g.order) for v in range(u + 1, g.order))
        rep.record(g.spec, ok, "simple graph matching the order-divisibility rule", "mismatch")
    return rep


def check_R2ii(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("R2ii")
    for g in build_corpus(bounds):
        graph = od(g)
        e = g.identity
        universal = graph.adj[e] | (1 << e) == graph.full_mask
        want = 0 if g.order == 1 else (1 if g.order == 2 else 2)
        d = gr.diameter(graph)
        ok = universal and gr.is_connected(graph) and d == want
        rep.record(g.spec, ok, f"connected, identity universal, diameter {want}",
                   f"universal={universal}, connected={gr.is_connected(graph)}, diameter={d}")
    return rep


def check_R2iii(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("R2iii")
    for g in build_corpus(bounds):
        if g.order < 3:
            continue
        cyc = gr.is_cycle(od(g))
        rep.record(g.spec, not cyc, "not a cycle", "cycle")
    return rep


def check_R2iv(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("R2iv")
    for g in build_corpus(bounds):
        sizes = {d: len(xs) for d, xs in order_partition(g).items()}
        bad = {d: s for d, s in sizes.items() if s % euler_phi(d) or g.order % d}
        complete = gr.is_complete(od(g))
        ok = not bad and not (g.order > 2 and complete)
        rep.record(g.spec, ok, "class sizes multiples of phi(d); not complete when |G| > 2",
                   f"bad classes={bad}, complete={complete}")
    return rep


# ---------------------------------------------------------------- star theorems

def check_T9(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("T9")
    for g in build_corpus(bounds):
        graph = od(g)
        centre = gr.is_star(graph)
        prime = all_nonidentity_prime_order(g)
        ok = (centre is not None) == prime and (centre is None or centre == g.identity or g.order == 2)
        rep.record(g.spec, ok, _yn(prime, "star centred at identity", "not a star"),
                   _yn(centre is not None, f"star centred at {centre}", "not a star"))
    return rep


def check_C13(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("C13")
    for g in build_corpus(bounds):
        if not is_abelian(g):
            continue
        star = _star(od(g))
        ea = is_elementary_abelian(g)
        rep.record(g.spec, star == ea, _yn(ea, "star", "not a star"), _yn(star, "star", "not a star"))
    return rep


def check_C11(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    from .groups import units_group
    rep = VerificationReport("C11")
    for n in range(1, bounds.max_n + 1):
        g = units_group(n, max_order=bounds.max_order)
        graph = od(g)
        star = _star(graph)
        want = 24 % n == 0
        ok = star == want and (not star or graph.vertex_count == euler_phi(n))
        rep.record(g.spec, ok, _yn(want, f"star on {euler_phi(n)} vertices", "not a star"),
                   _yn(star, f"star on {graph.vertex_count} vertices", "not a star"))
    return rep


def check_C12(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("C12")
    for n in range(1, bounds.max_n + 1):
        g = cyclic_group(n, max_order=bounds.max_order)
        star = _star(od(g))
        want = is_prime(n)
        rep.record(g.spec, star == want, _yn(want, "star", "not a star"),
                   _yn(star, "star" + (" (one-vertex graph)" if n == 1 else ""), "not a star"))
    return rep


def check_T4(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("T4")
    for n in range(3, bounds.max_dihedral_sweep + 1):
        g = dihedral_group(n, max_order=bounds.max_order)
        graph = od(g)
        star = _star(graph)
        want = is_prime(n)
        ok = star == want and (not star or graph.vertex_count == 2 * n)
        rep.record(g.spec, ok, _yn(want, f"star on {2 * n} vertices", "not a star"),
                   _yn(star, f"star on {graph.vertex_count} vertices", "not a star"))
    return rep


# ---------------------------------------------------------------- the classification of star OD groups

@dataclass(frozen=True)
class C10Data:
    order: int
    fitting: int
    derived: int
    fitting_elementary_abelian: bool
    exponent: int
    all_prime: bool


def c10_data(g: FiniteGroup) -> C10Data:
    f = fitting_subgroup(g)
    return C10Data(g.order, len(f), len(commutator_subgroup(g)),
                   is_elementary_abelian(f.as_group()), exponent(g), all_nonidentity_prime_order(g))


def c10_cases(g: FiniteGroup, data: C10Data | None = None) -> list[str]:
    """Cases of the star classification whose numerical conditions ``g`` meets.

    Case "3" (G ≅ A_5) is approximated by: order 60 with all element orders prime.
    """
    d = data or c10_data(g)
    n = d.order
    out = []
    p = is_p_group(g)
    if n == 1 or (p is not None and d.exponent == p):
        out.append("1")
    fac = factorize(n) if n > 1 else []
    if len(fac) == 2:
        (r, x), (s, y) = fac
        index = n // d.derived
        for (p, a), (q, b) in (((r, x), (s, y)), ((s, y), (r, x))):
            if b != 1:
                continue
            # |G| = p^a q
            if 3 <= p < q and a >= 3 and d.fitting == p ** (a - 1) and index == p:
                out.append("2a")
            if 3 <= p < q and a >= 1 and d.fitting == d.derived == p**a:
                out.append("2b")
            if p == 2 and q >= 3 and a >= 2 and d.fitting == d.derived == 2**a:
                out.append("2c")
        if (r, x) == (2, 1) and s >= 3 and d.fitting == d.derived == s**y and d.fitting_elementary_abelian:
            out.append("2d")
    if n == 60 and d.all_prime:
        out.append("3")
    return out


C10_WITNESSES = (("A:4", "2c"), ("D:3", "2d"), ("D:5", "2d"), ("A:5", "3"))
C10_NON_WITNESSES = ("Z:4", "D:4", "Z:6")


def check_C10(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("C10")
    corpus = build_corpus(bounds)
    for g in corpus:
        if is_elementary_abelian(g) and g.order > 1:
            star = _star(od(g))
            cases = c10_cases(g)
            rep.record(f"{g.spec} (case 1)", star and "1" in cases, "star, case 1",
                       f"star={star}, cases={cases}")
    for spec, case in C10_WITNESSES:
        g = parse_spec(spec)
        star = _star(od(g))
        cases = c10_cases(g)
        rep.record(f"{spec} (case {case})", star and case in cases, f"star, case {case}",
                   f"star={star}, cases={cases}")
    for spec in C10_NON_WITNESSES:
        star = _star(od(parse_spec(spec)))
        rep.record(f"{spec} (non-witness)", not star, "not a star", "star")
    # converse over the corpus only
    for g in corpus:
        if _star(od(g)):
            cases = c10_cases(g)
            rep.record(f"{g.spec} (converse)", bool(cases), "some listed case", "no case matches")
    return rep


# ---------------------------------------------------------------- multipartite / colouring

def _p_power_cases(bounds: Bounds):
    for p, top in CYCLIC_P_POWERS:
        for k in range(1, top + 1):
            if p**k <= bounds.max_order:
                yield p, k


def check_T2(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("T2")
    groups = [g for g in build_corpus(bounds) if is_p_group(g) is not None]
    groups += [cyclic_group(p**k) for p, k in _p_power_cases(bounds)]
    groups += [parse_spec(s) for s in NONCYCLIC_P_GROUPS]
    seen = set()
    for g in groups:
        if g.spec in seen:
            continue
        seen.add(g.spec)
        rpt = gr.complete_multipartite_parts(od(g))
        classes = sorted(order_partition(g).values())
        ok = rpt is not None and sorted(rpt.parts) == classes
        rep.record(g.spec, ok, "complete multipartite with the order classes as parts",
                   "not complete multipartite" if rpt is None else f"parts {rpt.part_sizes}")
    return rep


def check_C3(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("C3")
    for p, k in _p_power_cases(bounds):
        g = cyclic_group(p**k)
        rpt = gr.complete_multipartite_parts(od(g))
        want = sorted([1] + [p**i * (p - 1) for i in range(k)])
        got = None if rpt is None else rpt.part_sizes
        rep.record(g.spec, got == want, f"parts {want}", f"parts {got}")
    return rep


def check_C6(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("C6")
    for p, k in _p_power_cases(bounds):
        g = cyclic_group(p**k)
        chi = gr.chromatic_number(od(g))
        rep.record(g.spec, chi == k + 1, f"chi={k + 1}", f"chi={chi}")
    return rep


# ---------------------------------------------------------------- join shapes and lattice graphs

def check_T5(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("T5")
    top = bounds.max_pair_product // 2
    if bounds.max_prime is not None:
        top = min(top, bounds.max_prime)
    ps = primes_upto(top)
    for p1, p2 in itertools.combinations(ps, 2):
        if p1 * p2 > bounds.max_pair_product:
            continue
        shape = theorem5_shape(p1, p2)
        ok = gr.is_isomorphic(shape, od(cyclic_group(p1 * p2)))
        rep.record(f"theorem5_shape({p1},{p2}) vs Z:{p1 * p2}", ok, "isomorphic", "not isomorphic")
    return rep


def check_T7(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("T7")
    for p1, p2, p3 in bounds.triples:
        n = p1 * p2 * p3
        shape = theorem7_shape(p1, p2, p3)
        iso = gr.is_isomorphic(shape, od(cyclic_group(n, max_order=bounds.max_order)))
        sizes = sorted(euler_phi(d) for d in divisors(n))
        got_blocks = sorted(_block_sizes(shape))
        ok = iso and got_blocks == sizes
        rep.record(f"theorem7_shape({p1},{p2},{p3}) vs Z:{n}", ok, f"isomorphic, block sizes {sizes}",
                   f"isomorphic={iso}, block sizes {got_blocks}")
    return rep


def _block_sizes(g: Graph) -> list[int]:
    tags: dict[int, int] = {}
    for t in g.order_tags() or []:
        tags[t] = tags.get(t, 0) + 1
    return list(tags.values())


def check_T8(bounds: Bounds, od: ODBuilder) -> VerificationReport:
    rep = VerificationReport("T8")
    for g in build_corpus(bounds):
        graph = od(g)
        n = g.order
        a = is_cyclic_algebraic(g)
        b = gr.is_isomorphic(extended_graph(n), graph)
        c = gr.is_isomorphic(comparability_graph(n), gr.reduced_graph(graph))
        rep.record(g.spec, a == b == c, "cyclic == E(G_n)~OD(G) == G_n~R(OD(G))",
                   f"cyclic={a}, E~OD={b}, G_n~R={c}")
    return rep


_CHECKS = {tid: globals()[f"check_{tid}"] for tid in THEOREM_IDS}


def verify(theorem_id: str, bounds: Bounds | None = None, od: ODBuilder = default_od) -> VerificationReport:
    """Run one registered check; ``od`` lets tests inject a faulty graph builder."""
    if theorem_id not in _CHECKS:
        raise UnknownTheorem(theorem_id)
    b = bounds or Bounds()
    b.check()
    t0 = time.perf_counter()
    rep = _CHECKS[theorem_id](b, od)
    rep.elapsed = time.perf_counter() - t0
    return rep


def verify_c10_witnesses() -> VerificationReport:
    return verify("C10", Bounds())


def _verify_star(args):
    return verify(*args)


def verify_all(bounds: Bounds | None = None, ids=THEOREM_IDS, jobs: int = 1) -> list[VerificationReport]:
    """Run several checks, optionally across processes; results keep ``ids`` order."""
    b = bounds or Bounds()
    if jobs <= 1:
        return [verify(t, b) for t in ids]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_star, [(t, b) for t in ids]))


def reports_to_json(reports: list[VerificationReport], timing: bool = True) -> str:
    doc = {
        "format_version": "1",
        "passed": sum(r.passed for r in reports),
        "total": len(reports),
        "reports": [r.to_dict(timing) for r in reports],
    }
    return json.dumps(doc, indent=2)


def with_bounds(bounds: Bounds, **changes) -> Bounds:
    return replace(bounds, **{k: v for k, v in changes.items() if v is not None})
