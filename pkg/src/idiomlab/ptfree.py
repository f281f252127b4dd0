"""Point-free layer over finite lattices.

Lattice elements are indices ``0..n-1`` listed along a linear extension of
the order, so the join of two elements is the lowest-indexed common upper
bound and the meet the highest-indexed common lower bound.  On top of that
sit quasi-quantale views (a lattice with a product), relative spectra,
hull-kernel nuclei, their fixed-point frames, and lattice predicates.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import NotAFrame, StarConditionViolated


def _low(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


def _bits(idx: Iterable[int]) -> int:
    out = 0
    for i in idx:
        out |= 1 << i
    return out


def _members(bits: int) -> List[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


class FiniteLattice:
    """A finite bounded lattice given by the down-sets of its elements."""

    def __init__(self, down: Sequence[int], labels: Optional[Sequence[str]] = None,
                 keys: Optional[Sequence] = None):
        self.n = len(down)
        self.down = list(down)
        self.up = [0] * self.n
        for i, d in enumerate(self.down):
            for j in _members(d):
                self.up[j] |= 1 << i
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.n)]
        self.keys = list(keys) if keys is not None else list(range(self.n))
        self.bottom = 0
        self.top = self.n - 1
        self._jt = None
        self._mt = None

    @classmethod
    def from_order(cls, keys: Sequence, leq: Callable, labels=None) -> "FiniteLattice":
        """Build from keys listed along a linear extension of ``leq``."""
        n = len(keys)
        down = [_bits(j for j in range(i + 1) if leq(keys[j], keys[i])) for i in range(n)]
        return cls(down, labels=labels, keys=keys)

    def leq(self, i: int, j: int) -> bool:
        return bool((self.down[j] >> i) & 1)

    def join(self, i: int, j: int) -> int:
        return _low(self.up[i] & self.up[j])

    def meet(self, i: int, j: int) -> int:
        return (self.down[i] & self.down[j]).bit_length() - 1

    def join_all(self, items: Iterable[int]) -> int:
        out = self.bottom
        for i in items:
            out = self.join(out, i)
        return out

    def meet_all(self, items: Iterable[int]) -> int:
        out = self.top
        for i in items:
            out = self.meet(out, i)
        return out

    def join_table(self) -> np.ndarray:
        if self._jt is None:
            self._jt = np.array([[self.join(i, j) for j in range(self.n)] for i in range(self.n)],
                                dtype=np.int32)
        return self._jt

    def meet_table(self) -> np.ndarray:
        if self._mt is None:
            self._mt = np.array([[self.meet(i, j) for j in range(self.n)] for i in range(self.n)],
                                dtype=np.int32)
        return self._mt

    def is_lattice(self) -> bool:
        """Checks that the index-order shortcuts really give joins and meets."""
        if self.n == 0 or self.down[self.top] != (1 << self.n) - 1 or self.up[self.bottom] != (1 << self.n) - 1:
            return False
        for i in range(self.n):
            if not (self.down[i] >> i) & 1:
                return False
            for j in range(i + 1, self.n):
                common = self.up[i] & self.up[j]
                if not common or common & ~self.up[_low(common)]:
                    return False
                low = self.down[i] & self.down[j]
                if not low or low & ~self.down[low.bit_length() - 1]:
                    return False
        return True

    def coatoms(self) -> List[int]:
        if self.n == 1:
            return []
        return [i for i in range(self.n) if i != self.top
                and (self.up[i] & ~(1 << i)) == 1 << self.top]

    def atoms(self) -> List[int]:
        return [i for i in range(self.n) if i != self.bottom
                and (self.down[i] & ~(1 << i)) == 1 << self.bottom]

    def is_coatomic(self) -> bool:
        co = _bits(self.coatoms())
        return all(i == self.top or self.up[i] & co for i in range(self.n))

    def is_modular(self) -> Tuple[bool, Optional[tuple]]:
        """a <= c implies a v (b ^ c) = (a v b) ^ c, checked on all triples."""
        J, Mt = self.join_table(), self.meet_table()
        for a in range(self.n):
            cs = np.array(_members(self.up[a]), dtype=np.int64)
            lhs = J[a][Mt[:, cs]]
            rhs = Mt[J[a]][:, cs]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = bad[0]
                return False, (a, int(b), int(cs[c]))
        return True, None

    def is_distributive(self) -> Tuple[bool, Optional[tuple]]:
        """a ^ (b v c) = (a ^ b) v (a ^ c) on all triples."""
        J, Mt = self.join_table(), self.meet_table()
        for a in range(self.n):
            lhs = Mt[a][J]
            rhs = J[Mt[a][:, None], Mt[a][None, :]]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = bad[0]
                return False, (a, int(b), int(c))
        return True, None

    def sub(self, indices: Sequence[int]) -> "FiniteLattice":
        pos = {x: i for i, x in enumerate(indices)}
        down = [_bits(pos[j] for j in _members(self.down[x]) if j in pos) for x in indices]
        out = FiniteLattice(down, [self.labels[i] for i in indices], [self.keys[i] for i in indices])
        out.parent = list(indices)
        return out

    def __len__(self) -> int:
        return self.n


class MultLattice(FiniteLattice):
    """A finite lattice with a product (quasi-quantale view).

    ``prod_fn(i, j)`` returns the index of the product; results are memoised.
    """

    def __init__(self, down, prod_fn: Optional[Callable[[int, int], int]] = None,
                 labels=None, keys=None):
        super().__init__(down, labels, keys)
        self._prod_fn = prod_fn if prod_fn is not None else self.meet
        self._prod: Dict[Tuple[int, int], int] = {}

    @classmethod
    def from_table(cls, down, table, labels=None, keys=None) -> "MultLattice":
        return cls(down, lambda i, j: table[i][j], labels, keys)

    def prod(self, i: int, j: int) -> int:
        key = (i, j)
        v = self._prod.get(key)
        if v is None:
            v = self._prod_fn(i, j)
            self._prod[key] = v
        return v

    def product_table(self) -> np.ndarray:
        return np.array([[self.prod(i, j) for j in range(self.n)] for i in range(self.n)],
                        dtype=np.int32)

    def is_associative(self) -> Tuple[bool, Optional[tuple]]:
        P = self.product_table()
        for a in range(self.n):
            lhs = P[P[a]]          # (ab)c
            rhs = P[a][P]          # a(bc)
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = bad[0]
                return False, (a, int(b), int(c))
        return True, None


class SubLatticeView:
    """The elements of ``ambient`` flagged as members of B."""

    def __init__(self, ambient: MultLattice, indices: Sequence[int]):
        self.ambient = ambient
        self.indices = list(indices)
        self.flags = _bits(self.indices)
        pos = {x: i for i, x in enumerate(self.indices)}
        sub = ambient.sub(self.indices)

        def prod_fn(i, j):
            return pos[ambient.prod(self.indices[i], self.indices[j])]

        self.lattice = MultLattice(sub.down, prod_fn, sub.labels, sub.keys)
        self.lattice.parent = self.indices
        self.pos = pos

    def __contains__(self, i: int) -> bool:
        return bool((self.flags >> i) & 1)

    def closed_under_joins(self) -> bool:
        A = self.ambient
        return all(A.join(a, b) in self for a in self.indices for b in self.indices)

    def closed_under_product(self) -> bool:
        A = self.ambient
        return all(A.prod(a, b) in self for a in self.indices for b in self.indices)


def full_view(A: MultLattice) -> SubLatticeView:
    return SubLatticeView(A, range(A.n))


# -- relative spectra ----------------------------------------------------------

def star_condition(A: MultLattice, B: SubLatticeView) -> Tuple[bool, Optional[int]]:
    """0, 1 in B and 1b, b1 <= b for all b in B; witness is an ambient index."""
    if A.bottom not in B:
        return False, A.bottom
    if A.top not in B:
        return False, A.top
    for b in B.indices:
        if not (A.leq(A.prod(A.top, b), b) and A.leq(A.prod(b, A.top), b)):
            return False, b
    return True, None


def is_prime_rel(p: int, A: MultLattice, B: SubLatticeView) -> bool:
    if p == A.top:
        raise ValueError("the top element is never prime")
    outside = [b for b in B.indices if not A.leq(b, p)]
    for a in outside:
        for b in outside:
            if A.leq(A.prod(a, b), p):
                return False
    return True


def spec_rel(A: MultLattice, B: SubLatticeView) -> List[int]:
    return [p for p in range(A.n) if p != A.top and is_prime_rel(p, A, B)]


def p_condition(A: MultLattice, B: SubLatticeView, spec: Sequence[int]) -> Tuple[bool, Optional[int]]:
    primes = _bits(spec)
    for b in B.indices:
        if b != A.top and not (A.up[b] & primes):
            return False, b
    return True, None


def cover_test(A: MultLattice, B: SubLatticeView, spec: Sequence[int]) -> bool:
    """Every basic open cover of the spectrum comes from a cover of 1 in B.

    Since U(x) v U(y) = U(x v y), it suffices that U(b) = everything forces
    b = 1.
    """
    for b in B.indices:
        whole = all(not A.leq(b, p) for p in spec)
        if whole and b != A.top:
            return False
    return True


def closed_set(A: MultLattice, b: int, S: Sequence[int]) -> int:
    """V(b) inside S, as a bitset over positions in S."""
    return _bits(i for i, p in enumerate(S) if A.leq(b, p))


def open_set(A: MultLattice, b: int, S: Sequence[int]) -> int:
    return _bits(i for i, p in enumerate(S) if not A.leq(b, p))


def hk_topology(A: MultLattice, B: SubLatticeView, S: Sequence[int], check_star: bool = True):
    """Hull-kernel topology on the subspace S of Spec_B(A)."""
    from .fintop import space_from_closed_basis

    if check_star:
        ok, w = star_condition(A, B)
        if not ok:
            raise StarConditionViolated("B does not satisfy the star condition", witness=w)
    closed = [closed_set(A, b, S) for b in B.indices]
    return space_from_closed_basis(list(S), closed, labels=[A.labels[p] for p in S])


# -- nuclei --------------------------------------------------------------------

class NucleusMap:
    """A closure operator on a MultLattice, as a table of indices."""

    def __init__(self, domain: MultLattice, table: Sequence[int], name: str = "j"):
        self.domain = domain
        self.table = list(table)
        self.name = name

    def __call__(self, i: int) -> int:
        return self.table[i]

    def fixed(self) -> List[int]:
        return [i for i, v in enumerate(self.table) if v == i]


def nucleus_from_subspace(A: MultLattice, B: SubLatticeView, S: Sequence[int],
                          check_star: bool = True, name: str = "tau") -> NucleusMap:
    """tau(b) = the largest element of B below the meet of {p in S : b <= p}."""
    if check_star:
        ok, w = star_condition(A, B)
        if not ok:
            raise StarConditionViolated("B does not satisfy the star condition", witness=w)
    L = B.lattice
    table = []
    for b in B.indices:
        m = A.meet_all(p for p in S if A.leq(b, p))
        below = [i for i, c in enumerate(B.indices) if A.leq(c, m)]
        table.append(L.join_all(below))
    return NucleusMap(L, table, name)


def check_nucleus_laws(j: NucleusMap, multiplicative: bool = True) -> Dict[str, bool]:
    L, t = j.domain, j.table
    rng = range(L.n)
    laws = {
        "inflatory": all(L.leq(x, t[x]) for x in rng),
        "monotone": all(L.leq(t[x], t[y]) for x in rng for y in rng if L.leq(x, y)),
        "idempotent": all(t[t[x]] == t[x] for x in rng),
        "meet_preserving": all(t[L.meet(x, y)] == L.meet(t[x], t[y]) for x in rng for y in rng),
        "fixes_coatoms": all(t[c] == c for c in L.coatoms()),
    }
    if multiplicative and isinstance(L, MultLattice):
        laws["multiplicative"] = all(L.leq(L.prod(t[x], t[y]), t[L.prod(x, y)])
                                     for x in rng for y in rng)
    return laws


class FrameView(FiniteLattice):
    """A finite lattice meant to be a frame; ``prod`` defaults to meet."""

    def __init__(self, down, labels=None, keys=None, prod_fn=None, zero: Optional[int] = None):
        super().__init__(down, labels, keys)
        self._pf = prod_fn
        self.zero = self.bottom if zero is None else zero

    def prod(self, i: int, j: int) -> int:
        return self.meet(i, j) if self._pf is None else self._pf(i, j)

    def is_frame(self) -> bool:
        return self.is_distributive()[0]


def frame_from_lattice(L: FiniteLattice, indices: Optional[Sequence[int]] = None) -> FrameView:
    sub = L.sub(indices) if indices is not None else L
    out = FrameView(sub.down, sub.labels, sub.keys)
    out.parent = getattr(sub, "parent", list(range(sub.n)))
    return out


def fixed_points(j: NucleusMap) -> FrameView:
    """B_j with join j(x v y), ambient meet and product j(xy)."""
    L = j.domain
    fixed = j.fixed()
    pos = {x: i for i, x in enumerate(fixed)}
    sub = L.sub(fixed)

    def prod_fn(a, b):
        if isinstance(L, MultLattice):
            return pos[j(L.prod(fixed[a], fixed[b]))]
        return pos[L.meet(fixed[a], fixed[b])]

    F = FrameView(sub.down, sub.labels, sub.keys, prod_fn=prod_fn, zero=pos[j(L.bottom)])
    F.parent = fixed
    F.nucleus = j
    return F


def nucleus_join(j: NucleusMap, a: int, b: int) -> int:
    """join_j on ambient indices of two fixed points."""
    return j(j.domain.join(a, b))


# -- points and lattice predicates ----------------------------------------------

def points_of_frame(F: FiniteLattice) -> List[int]:
    ok, w = F.is_distributive()
    if not ok:
        raise NotAFrame("lattice is not distributive", witness=w)
    pts = []
    for p in range(F.n):
        if p == F.top:
            continue
        outside = [a for a in range(F.n) if not F.leq(a, p)]
        if all(not F.leq(F.meet(a, b), p) for a in outside for b in outside):
            pts.append(p)
    return pts


def pt_space(F: FiniteLattice):
    """pt(F) with opens U(a) = {p : a not <= p}; also returns the spatial flag."""
    from .fintop import FinTopSpace

    pts = points_of_frame(F)
    opens = {_bits(i for i, p in enumerate(pts) if not F.leq(a, p)) for a in range(F.n)}
    space = FinTopSpace(pts, opens, labels=[F.labels[p] for p in pts])
    return space


def is_spatial(F: FiniteLattice) -> bool:
    """Every element is the meet of the points above it (U is injective)."""
    pts = points_of_frame(F)
    return all(F.meet_all(p for p in pts if F.leq(a, p)) == a for a in range(F.n))


def is_normal_lattice(L: FiniteLattice, prod: Optional[Callable[[int, int], int]] = None,
                      zero: Optional[int] = None, one: Optional[int] = None,
                      join: Optional[Callable[[int, int], int]] = None) -> Tuple[bool, Optional[tuple]]:
    """a v b = 1 implies a v b' = 1 = a' v b for some a', b' with a'b' <= 0."""
    if prod is None:
        prod = getattr(L, "prod", L.meet)
    zero = getattr(L, "zero", L.bottom) if zero is None else zero
    one = L.top if one is None else one
    join = L.join if join is None else join
    n = L.n
    cover = [_bits(b for b in range(n) if join(a, b) == one) for a in range(n)]
    kills = [_bits(b for b in range(n) if L.leq(prod(a, b), zero)) for a in range(n)]
    for a in range(n):
        for b in _members(cover[a]):
            # ordered pairs: the product need not be commutative
            if not any(kills[a2] & cover[a] for a2 in _members(cover[b])):
                return False, (a, b)
    return True, None


def pseudocomplement(F: FiniteLattice, b: int) -> int:
    return F.join_all(c for c in range(F.n) if F.meet(c, b) == F.bottom)


def is_regular_frame(F: FiniteLattice) -> Tuple[bool, Optional[int]]:
    """a = join of {b : b* v a = 1} for every a."""
    ok, w = F.is_distributive()
    if not ok:
        raise NotAFrame("lattice is not distributive", witness=w)
    star = [pseudocomplement(F, b) for b in range(F.n)]
    for a in range(F.n):
        below = [b for b in range(F.n) if F.join(star[b], a) == F.top]
        if F.join_all(below) != a:
            return False, a
    return True, None


# -- small synthetic lattices used by tests and selftest -------------------------

def chain(n: int, prod: str = "meet") -> MultLattice:
    down = [(1 << (i + 1)) - 1 for i in range(n)]
    if prod == "zero":
        return MultLattice(down, lambda i, j: 0)
    return MultLattice(down)


def boolean_lattice(k: int) -> MultLattice:
    """Subsets of a k-set ordered by size then value (a linear extension)."""
    keys = sorted(range(1 << k), key=lambda s: (bin(s).count("1"), s))
    L = FiniteLattice.from_order(keys, lambda a, b: a & ~b == 0)
    return MultLattice(L.down, None, [format(s, f"0{k}b") for s in keys], keys)
