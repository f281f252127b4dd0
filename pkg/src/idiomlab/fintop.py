"""Finite topological spaces with opens stored as bitsets over point positions."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from . import limits
from .errors import SearchSpaceExceeded


def _members(bits: int) -> List[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _saturate(family, full: int) -> frozenset:
    """Close a family of subsets under finite unions and intersections."""
    opens = {0, full} | set(family)
    changed = True
    while changed:
        changed = False
        cur = list(opens)
        for i, a in enumerate(cur):
            for b in cur[i + 1:]:
                for c in (a | b, a & b):
                    if c not in opens:
                        opens.add(c)
                        changed = True
    return frozenset(opens)


class FinTopSpace:
    """Points are opaque ids; opens are bitsets over positions in ``points``."""

    def __init__(self, points: Sequence, opens, labels: Optional[Sequence[str]] = None,
                 saturate: bool = True):
        self.points = list(points)
        self.n = len(self.points)
        self.full = (1 << self.n) - 1
        self.opens = _saturate(opens, self.full) if saturate else frozenset(opens)
        self.labels = list(labels) if labels is not None else [str(p) for p in self.points]
        self.pos = {p: i for i, p in enumerate(self.points)}
        self._nbhd = None

    @property
    def closed(self) -> frozenset:
        return frozenset(self.full & ~u for u in self.opens)

    def minimal_open(self, i: int) -> int:
        """The smallest open set containing point i."""
        if self._nbhd is None:
            self._nbhd = []
            for k in range(self.n):
                u = self.full
                for o in self.opens:
                    if (o >> k) & 1:
                        u &= o
                self._nbhd.append(u)
        return self._nbhd[i]

    def closure(self, bits: int) -> int:
        out = self.full
        for c in self.closed:
            if bits & ~c == 0:
                out &= c
        return out

    def interior(self, bits: int) -> int:
        out = 0
        for o in self.opens:
            if o & ~bits == 0:
                out |= o
        return out

    def subspace(self, positions: Sequence[int]) -> "FinTopSpace":
        positions = list(positions)
        opens = set()
        for o in self.opens:
            opens.add(sum(1 << k for k, i in enumerate(positions) if (o >> i) & 1))
        return FinTopSpace([self.points[i] for i in positions], opens,
                           [self.labels[i] for i in positions], saturate=False)

    def describe(self, bits: int) -> List[str]:
        return [self.labels[i] for i in _members(bits)]

    def __repr__(self) -> str:
        return f"FinTopSpace({self.n} points, {len(self.opens)} opens)"


def space_from_closed_basis(points: Sequence, closed_basis, labels=None) -> FinTopSpace:
    n = len(points)
    full = (1 << n) - 1
    return FinTopSpace(points, [full & ~c for c in closed_basis], labels)


def is_hausdorff(S: FinTopSpace) -> Tuple[bool, Optional[tuple]]:
    for i in range(S.n):
        for j in range(i + 1, S.n):
            if not any(S.minimal_open(i) & o == 0 for o in S.opens if (o >> j) & 1):
                return False, (S.points[i], S.points[j])
    return True, None


def is_normal_space(S: FinTopSpace) -> Tuple[bool, Optional[tuple]]:
    """Disjoint closed sets have disjoint open neighbourhoods (no T1 assumed)."""
    closed = sorted(S.closed)
    opens = sorted(S.opens)
    for a in range(len(closed)):
        K = closed[a]
        nk = [o for o in opens if K & ~o == 0]
        for b in range(a + 1, len(closed)):
            L = closed[b]
            if K & L:
                continue
            if not any(u & v == 0 for u in nk for v in opens if L & ~v == 0):
                return False, (S.describe(K), S.describe(L))
    return True, None


def is_compact(S: FinTopSpace) -> bool:
    """Every open cover has a finite subcover.

    The cover consisting of all opens is finite, so the check reduces to
    that cover reaching every point; finite spaces always pass.
    """
    cover = 0
    for o in S.opens:
        cover |= o
    return cover == S.full


class CMap:
    """A map of finite spaces given as a list of target positions."""

    def __init__(self, source: FinTopSpace, target: FinTopSpace, table: Sequence[int]):
        self.source = source
        self.target = target
        self.table = list(table)

    def preimage(self, bits: int) -> int:
        return sum(1 << i for i, t in enumerate(self.table) if (bits >> t) & 1)

    def image(self, bits: int) -> int:
        out = 0
        for i in _members(bits):
            out |= 1 << self.table[i]
        return out

    def is_continuous(self) -> bool:
        return all(self.preimage(o) in self.source.opens for o in self.target.opens)

    def is_closed(self) -> bool:
        tc = self.target.closed
        return all(self.image(c) in tc for c in self.source.closed)

    def is_open(self) -> bool:
        return all(self.image(o) in self.target.opens for o in self.source.opens)


def map_predicates(f: CMap) -> Dict[str, bool]:
    hit = set(f.table)
    return {
        "continuous": f.is_continuous(),
        "closed": f.is_closed(),
        "open": f.is_open(),
        "surjective": len(hit) == f.target.n,
        "injective": len(hit) == len(f.table),
    }


def verify_retraction(S: FinTopSpace, A: Sequence[int], table: Sequence[int]) -> bool:
    """``table`` sends positions of S into positions of S lying in A."""
    A = list(A)
    if any(table[a] != a for a in A) or any(t not in A for t in table):
        return False
    sub = S.subspace(A)
    where = {a: k for k, a in enumerate(A)}
    return CMap(S, sub, [where[t] for t in table]).is_continuous()


def find_retraction(S: FinTopSpace, A: Sequence[int],
                    cap: Optional[int] = None) -> Optional[List[int]]:
    """First continuous retraction of S onto A in lexicographic order, else None.

    Continuity of maps between finite spaces is monotonicity for the
    specialisation order, which prunes partial assignments.
    """
    cap = limits.RETRACTION_SPACE if cap is None else cap
    A = sorted(A)
    rest = [i for i in range(S.n) if i not in set(A)]
    if len(A) ** len(rest) > cap and rest:
        raise SearchSpaceExceeded(f"{len(A)}^{len(rest)} candidate retractions exceed {cap}")
    if not A:
        return [] if S.n == 0 else None
    sub = S.subspace(A)
    where = {a: k for k, a in enumerate(A)}
    table = list(range(S.n))

    def ok(i: int, assigned: List[int]) -> bool:
        # x in U_y forces f(x) in U_f(y), both ways round
        for j in assigned:
            fi, fj = where[table[i]], where[table[j]]
            if (S.minimal_open(j) >> i) & 1 and not (sub.minimal_open(fj) >> fi) & 1:
                return False
            if (S.minimal_open(i) >> j) & 1 and not (sub.minimal_open(fi) >> fj) & 1:
                return False
        return True

    order = list(A) + rest

    def dfs(k: int) -> bool:
        if k == len(order):
            return True
        i = order[k]
        choices = [i] if i in where else A
        for c in choices:
            table[i] = c
            if ok(i, order[:k]) and dfs(k + 1):
                return True
        return False

    if dfs(0) and verify_retraction(S, A, table):
        return table
    return None


def open_set_frame(S: FinTopSpace):
    from .ptfree import FiniteLattice, FrameView

    opens = sorted(S.opens, key=lambda o: (bin(o).count("1"), o))
    L = FiniteLattice.from_order(opens, lambda a, b: a & ~b == 0,
                                 labels=["{" + ",".join(S.describe(o)) + "}" for o in opens])
    return FrameView(L.down, L.labels, L.keys)


def _join_irreducibles(L) -> List[int]:
    out = []
    for i in range(L.n):
        if i == L.bottom:
            continue
        below = L.down[i] & ~(1 << i)
        if L.join_all(_members(below)) != i:
            out.append(i)
    return out


def frames_isomorphic(F1, F2, cap: Optional[int] = None) -> Tuple[bool, Optional[List[int]]]:
    """Lattice isomorphism search by matching join-irreducibles.

    Returns (True, table F1-index -> F2-index) or (False, None).
    """
    cap = limits.RETRACTION_SPACE if cap is None else cap
    if F1.n != F2.n:
        return False, None
    j1, j2 = _join_irreducibles(F1), _join_irreducibles(F2)
    if len(j1) != len(j2):
        return False, None

    def sig(L, i):
        return (bin(L.down[i]).count("1"), bin(L.up[i]).count("1"))

    s1 = sorted(sig(F1, i) for i in range(F1.n))
    s2 = sorted(sig(F2, i) for i in range(F2.n))
    if s1 != s2:
        return False, None
    assign: Dict[int, int] = {}
    used = set()
    steps = [0]

    def extend() -> Optional[List[int]]:
        table = []
        for x in range(F1.n):
            table.append(F2.join_all(assign[j] for j in j1 if F1.leq(j, x)))
        if len(set(table)) != F1.n:
            return None
        for x in range(F1.n):
            for y in range(F1.n):
                if F1.leq(x, y) != F2.leq(table[x], table[y]):
                    return None
        return table

    def dfs(k: int) -> Optional[List[int]]:
        steps[0] += 1
        if steps[0] > cap:
            raise SearchSpaceExceeded("lattice isomorphism search exceeded its cap")
        if k == len(j1):
            return extend()
        a = j1[k]
        for b in j2:
            if b in used or sig(F1, a) != sig(F2, b):
                continue
            if any(F1.leq(a, c) != F2.leq(b, assign[c]) or F1.leq(c, a) != F2.leq(assign[c], b)
                   for c in assign):
                continue
            assign[a] = b
            used.add(b)
            got = dfs(k + 1)
            if got is not None:
                return got
            del assign[a]
            used.discard(b)
        return None

    table = dfs(0)
    return (table is not None), table


def are_homeomorphic(S1: FinTopSpace, S2: FinTopSpace,
                     cap: Optional[int] = None) -> Tuple[bool, Optional[List[int]]]:
    """Bijection search preserving minimal open neighbourhoods."""
    cap = limits.RETRACTION_SPACE if cap is None else cap
    if S1.n != S2.n or len(S1.opens) != len(S2.opens):
        return False, None

    def prof(S, i):
        return (bin(S.minimal_open(i)).count("1"), bin(S.closure(1 << i)).count("1"))

    if sorted(prof(S1, i) for i in range(S1.n)) != sorted(prof(S2, i) for i in range(S2.n)):
        return False, None
    table = [-1] * S1.n
    used = set()
    steps = [0]

    def dfs(i: int) -> bool:
        steps[0] += 1
        if steps[0] > cap:
            raise SearchSpaceExceeded("homeomorphism search exceeded its cap")
        if i == S1.n:
            return True
        for c in range(S2.n):
            if c in used or prof(S1, i) != prof(S2, c):
                continue
            if any(((S1.minimal_open(j) >> i) & 1) != ((S2.minimal_open(table[j]) >> c) & 1)
                   or ((S1.minimal_open(i) >> j) & 1) != ((S2.minimal_open(c) >> table[j]) & 1)
                   for j in range(i)):
                continue
            table[i] = c
            used.add(c)
            if dfs(i + 1):
                return True
            used.discard(c)
        table[i] = -1
        return False

    if not dfs(0):
        return False, None
    f = CMap(S1, S2, table)
    if f.is_continuous() and f.is_open():
        return True, table
    return False, None
