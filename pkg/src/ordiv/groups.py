"""Finite groups stored as dense multiplication tables.

Every element is an index into ``range(order)``; ``table[i, j]`` is the index
of the product ``i * j``.  Labels are cosmetic.  Constructors document their
element ordering because graph exports depend on it.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd

import numpy as np

from .numtheory import euler_phi, factorize, is_prime, lcm, prime_power

DEFAULT_MAX_ORDER = 512
# associativity is checked exhaustively up to this order, sampled above it
EXHAUSTIVE_ASSOC_LIMIT = 512
ASSOC_SAMPLES = 200_000


class GroupError(ValueError):
    """Malformed multiplication table or invalid constructor argument."""


class CapExceeded(RuntimeError):
    """A construction or search would exceed a configured size cap."""


class SpecError(ValueError):
    """A group spec string does not parse."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    table: np.ndarray
    identity: int
    labels: tuple[str, ...]
    spec: str = ""

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int32)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "labels", tuple(self.labels))
        _validate(self)

    def __repr__(self):
        return f"FiniteGroup({self.spec or '?'}, order={self.order})"

    def __len__(self):
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        rows, cols = np.nonzero(self.table == self.identity)
        inv = [0] * self.order
        for r, c in zip(rows.tolist(), cols.tolist()):
            inv[r] = c
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        result = self.identity
        for _ in range(k % self.orders[a]):
            result = self.mul(result, a)
        return result

    @cached_property
    def orders(self) -> tuple[int, ...]:
        n = self.order
        idx = np.arange(n)
        cur = idx.copy()
        out = np.zeros(n, dtype=np.int64)
        for k in range(1, n + 1):
            hit = (cur == self.identity) & (out == 0)
            out[hit] = k
            if out.all():
                break
            cur = self.table[cur, idx]
        return tuple(int(x) for x in out)

    def element_order(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise IndexError(f"element index {x} out of range for order {self.order}")
        return self.orders[x]


def _validate(g: FiniteGroup) -> None:
    n, t = g.order, g.table
    if n < 1:
        raise GroupError("a group needs at least one element")
    if t.shape != (n, n):
        raise GroupError(f"table shape {t.shape} does not match order {n}")
    if len(g.labels) != n:
        raise GroupError("need exactly one label per element")
    if t.min() < 0 or t.max() >= n:
        raise GroupError("table entry out of range")
    e = g.identity
    idx = np.arange(n)
    if not (np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx)):
        raise GroupError(f"index {e} is not a two-sided identity")
    srt = np.sort(t, axis=1)
    if not (np.array_equal(srt, np.broadcast_to(idx, (n, n)))
            and np.array_equal(np.sort(t, axis=0), np.broadcast_to(idx[:, None], (n, n)))):
        raise GroupError("rows and columns must be permutations (missing inverses)")
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        # (i*j)*k == i*(j*k), in chunks of i to bound memory
        if n <= 32767:
            t = t.astype(np.int16)
        chunk = max(1, 16_000_000 // (n * n))
        for lo in range(0, n, chunk):
            rows = t[lo:lo + chunk]                      # i*j for i in chunk
            left = t[rows]                               # (i*j)*k
            right = rows[:, t]                           # i*(j*k)
            if not np.array_equal(left, right):
                raise GroupError("table is not associative")
    else:
        rng = np.random.default_rng(0)
        i, j, k = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
        if not np.array_equal(t[t[i, j], k], t[i, t[j, k]]):
            raise GroupError("table is not associative (sampled)")


def _cap(n: int, max_order: int | None) -> None:
    cap = DEFAULT_MAX_ORDER if max_order is None else max_order
    if n > cap:
        raise CapExceeded(f"group order {n} exceeds cap {cap}")


# ---------------------------------------------------------------- constructors

def cyclic_group(n: int, max_order: int | None = None) -> FiniteGroup:
    """Z_n; element k is the residue k."""
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    _cap(n, max_order)
    i = np.arange(n)
    table = (i[:, None] + i[None, :]) % n
    return FiniteGroup(n, table, 0, [str(k) for k in range(n)], f"Z:{n}")


def _dihedral_label(i: int, refl: bool) -> str:
    rot = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
    if not refl:
        return rot or "e"
    return f"{rot} b" if rot else "b"


def dihedral_group(n: int, max_order: int | None = None) -> FiniteGroup:
    """D_n of order 2n: indices 0..n-1 are a^i, indices n..2n-1 are a^i b."""
    if n < 3:
        raise GroupError("dihedral group needs n >= 3")
    _cap(2 * n, max_order)
    table = np.empty((2 * n, 2 * n), dtype=np.int32)
    for x in range(2 * n):
        i, s = x % n, x // n
        for y in range(2 * n):
            j, u = y % n, y // n
            # b a^j = a^-j b
            k = (i + j) % n if s == 0 else (i - j) % n
            table[x, y] = k + n * (s ^ u)
    labels = [_dihedral_label(i, False) for i in range(n)] + [_dihedral_label(i, True) for i in range(n)]
    return FiniteGroup(2 * n, table, 0, labels, f"D:{n}")


def units_group(n: int, max_order: int | None = None) -> FiniteGroup:
    """U(Z_n); residues coprime to n in increasing order (U(Z_1) = {0})."""
    if n < 1:
        raise GroupError("units group needs n >= 1")
    _cap(euler_phi(n), max_order)
    elems = [x for x in range(n) if gcd(x, n) == 1]
    pos = {x: k for k, x in enumerate(elems)}
    e = np.array(elems, dtype=np.int64)
    prod = (e[:, None] * e[None, :]) % n
    table = np.vectorize(pos.__getitem__, otypes=[np.int32])(prod)
    return FiniteGroup(len(elems), table, pos[1 % n], [str(x) for x in elems], f"U:{n}")


def cycle_notation(perm: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) or "()"


def _parity(perm: tuple[int, ...]) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j]) % 2


def _permutation_group(perms: list[tuple[int, ...]], spec: str) -> FiniteGroup:
    # product p*q means "apply q, then p"
    pos = {p: k for k, p in enumerate(perms)}
    m = len(perms)
    table = np.empty((m, m), dtype=np.int32)
    for a, p in enumerate(perms):
        for b, q in enumerate(perms):
            table[a, b] = pos[tuple(p[x] for x in q)]
    ident = pos[tuple(range(len(perms[0])))]
    return FiniteGroup(m, table, ident, [cycle_notation(p) for p in perms], spec)


def symmetric_group(n: int, max_order: int | None = None) -> FiniteGroup:
    """S_n for 1 <= n <= 6; permutations of {1..n} in lexicographic order."""
    if not 1 <= n <= 6:
        raise GroupError("symmetric group supported for 1 <= n <= 6")
    perms = list(itertools.permutations(range(n)))
    _cap(len(perms), max_order)
    return _permutation_group(perms, f"S:{n}")


def alternating_group(n: int, max_order: int | None = None) -> FiniteGroup:
    """A_n for 3 <= n <= 6; even permutations in lexicographic order."""
    if not 3 <= n <= 6:
        raise GroupError("alternating group supported for 3 <= n <= 6")
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    _cap(len(perms), max_order)
    return _permutation_group(perms, f"A:{n}")


def elementary_abelian(p: int, k: int, max_order: int | None = None) -> FiniteGroup:
    """Z_p^k; vectors in lexicographic order, added componentwise mod p."""
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")
    if k < 1:
        raise GroupError("need k >= 1")
    n = p**k
    _cap(n, max_order)
    vecs = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64).reshape(n, k)
    weights = p ** np.arange(k - 1, -1, -1)
    s = (vecs[:, None, :] + vecs[None, :, :]) % p
    table = s @ weights
    labels = ["(" + ",".join(map(str, v)) + ")" for v in vecs.tolist()]
    return FiniteGroup(n, table, 0, labels, f"EA:{p}^{k}")


def direct_product(g: FiniteGroup, h: FiniteGroup, max_order: int | None = None) -> FiniteGroup:
    """G x H; pair (a, b) has index a*|H| + b."""
    m, n = g.order, h.order
    _cap(m * n, max_order)
    table = (g.table[:, None, :, None] * n + h.table[None, :, None, :]).reshape(m * n, m * n)
    labels = [f"({a},{b})" for a in g.labels for b in h.labels]
    spec = f"{g.spec}x{h.spec}" if g.spec and h.spec else ""
    return FiniteGroup(m * n, table, g.identity * n + h.identity, labels, spec)


_SPEC_RE = re.compile(r"^(Z|D|U|S|A):(\d+)$|^EA:(\d+)\^(\d+)$")


def parse_spec(spec: str, max_order: int | None = None) -> FiniteGroup:
    """Build a group from ``Z:n``, ``D:n``, ``U:n``, ``S:n``, ``A:n``, ``EA:p^k`` or ``x``-products."""
    parts = spec.strip().split("x")
    if not parts or any(not p for p in parts):
        raise SpecError(f"cannot parse group spec {spec!r}")
    factors = []
    for part in parts:
        m = _SPEC_RE.match(part.strip())
        if not m:
            raise SpecError(f"cannot parse group spec component {part!r}")
        try:
            if m.group(1):
                kind, n = m.group(1), int(m.group(2))
                ctor = {"Z": cyclic_group, "D": dihedral_group, "U": units_group,
                        "S": symmetric_group, "A": alternating_group}[kind]
                factors.append(ctor(n, max_order=max_order))
            else:
                factors.append(elementary_abelian(int(m.group(3)), int(m.group(4)), max_order=max_order))
        except GroupError as exc:
            raise SpecError(str(exc)) from exc
    return reduce(lambda a, b: direct_product(a, b, max_order=max_order), factors)


# ---------------------------------------------------------------- order data

def element_order(g: FiniteGroup, x: int) -> int:
    return g.element_order(x)


def order_partition(g: FiniteGroup) -> dict[int, tuple[int, ...]]:
    """Map each realized element order to the sorted indices having it."""
    classes: dict[int, list[int]] = {}
    for x, o in enumerate(g.orders):
        classes.setdefault(o, []).append(x)
    return {d: tuple(classes[d]) for d in sorted(classes)}


def order_profile(g: FiniteGroup) -> dict[int, int]:
    return {d: len(xs) for d, xs in order_partition(g).items()}


def exponent(g: FiniteGroup) -> int:
    return reduce(lcm, g.orders, 1)


def is_abelian(g: FiniteGroup) -> bool:
    return bool(np.array_equal(g.table, g.table.T))


def is_cyclic_algebraic(g: FiniteGroup) -> bool:
    return g.order in g.orders


def is_p_group(g: FiniteGroup) -> int | None:
    pp = prime_power(g.order)
    return pp[0] if pp else None


def is_elementary_abelian(g: FiniteGroup) -> bool:
    if g.order == 1:
        return True
    return is_abelian(g) and is_prime(exponent(g))


def all_nonidentity_prime_order(g: FiniteGroup) -> bool:
    return all(is_prime(o) for o in g.orders if o != 1)


# ---------------------------------------------------------------- subgroups

@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    @property
    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def is_normal(self) -> bool:
        g = self.parent
        return all(g.mul(g.mul(g.inv(x), h), x) in self.members for x in range(g.order) for h in self.members)

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group, elements in increasing parent-index order."""
        g = self.parent
        elems = self.sorted_members
        pos = {x: k for k, x in enumerate(elems)}
        table = [[pos[g.mul(a, b)] for b in elems] for a in elems]
        return FiniteGroup(len(elems), table, pos[g.identity], [g.labels[x] for x in elems],
                           f"sub({g.spec})" if g.spec else "")


def generate(g: FiniteGroup, gens) -> Subgroup:
    """Subgroup generated by ``gens`` (closure under multiplication suffices in a finite group)."""
    gens = sorted(set(gens))
    members = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(g.table[x, s])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(g, members)


def is_subgroup(g: FiniteGroup, members) -> bool:
    s = set(members)
    return g.identity in s and all(int(g.table[a, b]) in s for a in s for b in s)


def conjugate(sub: Subgroup, x: int) -> Subgroup:
    g = sub.parent
    xi = g.inv(x)
    return Subgroup(g, {g.mul(g.mul(xi, h), x) for h in sub.members})


def normalizer(sub: Subgroup) -> Subgroup:
    g = sub.parent
    return Subgroup(g, {x for x in range(g.order) if conjugate(sub, x).members == sub.members})


def commutator(g: FiniteGroup, a: int, b: int) -> int:
    return g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b))


def commutator_subgroup(g: FiniteGroup) -> Subgroup:
    comms = {commutator(g, a, b) for a in range(g.order) for b in range(g.order)}
    return generate(g, comms)


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _is_p_power(n: int, p: int) -> bool:
    return _p_part(n, p) == n


def sylow_subgroup(g: FiniteGroup, p: int) -> Subgroup:
    """One Sylow p-subgroup, grown greedily inside successive normalizers."""
    if not is_prime(p) or g.order % p:
        raise GroupError(f"{p} is not a prime divisor of |G| = {g.order}")
    target = _p_part(g.order, p)
    p_elems = [x for x in range(g.order) if x != g.identity and _is_p_power(g.orders[x], p)]
    sub = generate(g, [p_elems[0]])
    while len(sub) < target:
        norm = normalizer(sub)
        # P is normal in N(P), so <P, y> is a p-group for any p-element y of N(P)
        y = next(x for x in sorted(norm.members) if x not in sub and _is_p_power(g.orders[x], p))
        sub = generate(g, set(sub.members) | {y})
    return sub


def sylow_subgroups(g: FiniteGroup, p: int) -> list[Subgroup]:
    """All Sylow p-subgroups, as the conjugates of one of them."""
    base = sylow_subgroup(g, p)
    seen, out = set(), []
    for x in range(g.order):
        c = conjugate(base, x)
        if c.members not in seen:
            seen.add(c.members)
            out.append(c)
    return sorted(out, key=lambda s: s.sorted_members)


def p_core(g: FiniteGroup, p: int) -> Subgroup:
    members = frozenset(range(g.order))
    for s in sylow_subgroups(g, p):
        members &= s.members
    return Subgroup(g, members)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)] if n > 1 else []


def fitting_subgroup(g: FiniteGroup) -> Subgroup:
    gens = set()
    for p in prime_divisors(g.order):
        gens |= p_core(g, p).members
    return generate(g, gens)


def is_nilpotent(g: FiniteGroup) -> bool:
    return all(sylow_subgroup(g, p).is_normal() for p in prime_divisors(g.order))


def random_relabel(g: FiniteGroup, seed: int = 0) -> FiniteGroup:
    """Same group with element indices shuffled; used to test index-independence."""
    rng = random.Random(seed)
    perm = list(range(g.order))
    rng.shuffle(perm)
    inv = [0] * g.order
    for old, new in enumerate(perm):
        inv[new] = old
    table = [[perm[g.mul(inv[a], inv[b])] for b in range(g.order)] for a in range(g.order)]
    return FiniteGroup(g.order, table, perm[g.identity], [g.labels[inv[k]] for k in range(g.order)], g.spec)
