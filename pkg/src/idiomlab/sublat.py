"""Submodule lattices, the product N_M L and the operators built on it."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import limits
from .errors import NoGreatestAnnihilator, SizeLimitExceeded
from .finalg import FiniteModule, hom_generators, iter_bits, popcount
from .ptfree import MultLattice, SubLatticeView, _bits, star_condition

FULL = "full"
FULLY_INVARIANT = "fully_invariant"


def _order_key(bits: int):
    # cardinality, then the bitset as an integer
    return (popcount(bits), bits)


def quick_generators(M: FiniteModule, bits: int) -> List[int]:
    """A (not necessarily minimal) generating list of the submodule ``bits``."""
    cache = M.__dict__.setdefault("_subgens", {})
    hit = cache.get(bits)
    if hit is not None:
        return hit
    gens, cur = [], 1 << M.zero
    for x in iter_bits(bits):
        if not (cur >> x) & 1:
            gens.append(x)
            cur = M.sum(cur, M.cyclic(x))
            if cur == bits:
                break
    cache[bits] = gens
    return gens


def product(M: FiniteModule, N: int, L: int) -> int:
    """N_M L: the submodule generated by f(N) for f in Hom(M, L)."""
    cache = M.__dict__.setdefault("_products", {})
    key = (N, L)
    hit = cache.get(key)
    if hit is not None:
        return hit
    gens = quick_generators(M, N)
    imgs = {t[n] for t in hom_generators(M, M, L) for n in gens}
    out = M.span(sorted(imgs))
    cache[key] = out
    return out


class SubmoduleLattice(MultLattice):
    """Λ(M) or Λ^fi(M); elements are submodule bitsets in (size, elements) order."""

    def __init__(self, M: FiniteModule, members: Sequence[int], kind: str = FULL):
        members = sorted(set(members), key=_order_key)
        self.module = M
        self.kind = kind
        self.members = members
        self.index: Dict[int, int] = {b: i for i, b in enumerate(members)}
        down = []
        for i, b in enumerate(members):
            down.append(_bits(j for j in range(i + 1) if members[j] & ~b == 0))
        labels = [submodule_label(M, b) for b in members]
        super().__init__(down, self._member_product, labels, members)

    def _member_product(self, i: int, j: int) -> int:
        return self.index[product(self.module, self.members[i], self.members[j])]

    def __contains__(self, bits: int) -> bool:
        return bits in self.index

    def view_of(self, sub: "SubmoduleLattice") -> SubLatticeView:
        return SubLatticeView(self, [self.index[b] for b in sub.members])


def _to_bits(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def submodule_label(M: FiniteModule, bits: int) -> str:
    if bits == M.full:
        return "M"
    if bits == 1 << M.zero:
        return "0"
    return "{" + ",".join(M.labels[x] for x in iter_bits(bits)) + "}"


def enumerate_submodules(M: FiniteModule, cap: Optional[int] = None,
                         member_cap: Optional[int] = None) -> SubmoduleLattice:
    """Λ(M) by closing {0} under adding cyclic submodules."""
    hit = M.__dict__.get("_lattice")
    if hit is not None:
        if member_cap is not None and hit.n > member_cap:
            raise SizeLimitExceeded(f"{M.name} has more than {member_cap} submodules")
        return hit
    cap = limits.analysis_size() if cap is None else cap
    if M.size > cap:
        raise SizeLimitExceeded(f"module of size {M.size} exceeds analysis cap {cap}")
    cyclics = sorted({M.cyclic(x) for x in range(M.size)}, key=_order_key)
    # work on boolean arrays: translating a set is one fancy-indexing step
    add = np.asarray(M.add, dtype=np.int64)
    cyc = [np.fromiter(iter_bits(C), dtype=np.int64) for C in cyclics]
    start = np.zeros(M.size, dtype=bool)
    start[M.zero] = True
    found = {start.tobytes(): start}
    frontier = [start]
    while frontier:
        S = frontier.pop()
        s_idx = np.flatnonzero(S)
        for C in cyc:
            if S[C].all():
                continue
            T = S.copy()
            for c in C:
                if not T[c]:
                    T[add[c, s_idx]] = True
            key = T.tobytes()
            if key not in found:
                found[key] = T
                frontier.append(T)
                if member_cap is not None and len(found) > member_cap:
                    raise SizeLimitExceeded(
                        f"{M.name} has more than {member_cap} submodules")
    found = [_to_bits(T) for T in found.values()]
    lat = SubmoduleLattice(M, found, FULL)
    M._lattice = lat
    return lat


def is_fully_invariant(M: FiniteModule, N: int) -> bool:
    gens = quick_generators(M, N)
    return all((N >> t[g]) & 1 for t in hom_generators(M, M) for g in gens)


def enumerate_fi(M: FiniteModule, lat: Optional[SubmoduleLattice] = None) -> SubmoduleLattice:
    hit = M.__dict__.get("_fi_lattice")
    if hit is not None:
        return hit
    lat = enumerate_submodules(M) if lat is None else lat
    fi = SubmoduleLattice(M, [b for b in lat.members if is_fully_invariant(M, b)], FULLY_INVARIANT)
    M._fi_lattice = fi
    return fi


def check_product_associative(lat: SubmoduleLattice) -> Tuple[bool, Optional[tuple]]:
    """(N L) K = N (L K) on all triples; witness is a triple of bitsets."""
    ok, w = lat.is_associative()
    if ok:
        return True, None
    return False, tuple(lat.members[i] for i in w)


def check_left_distributive(lat: SubmoduleLattice) -> Tuple[bool, Optional[tuple]]:
    """(N + K) L = N L + K L on all pairs."""
    n = lat.n
    for a in range(n):
        for b in range(a + 1, n):
            ab = lat.join(a, b)
            for c in range(n):
                if lat.prod(ab, c) != lat.join(lat.prod(a, c), lat.prod(b, c)):
                    return False, (lat.members[a], lat.members[b], lat.members[c])
    return True, None


def check_star_condition(A: SubmoduleLattice, B: SubmoduleLattice) -> Tuple[bool, Optional[int]]:
    """Condition (⋆) for B inside A; the witness is a submodule bitset."""
    missing = [b for b in B.members if b not in A]
    if missing:
        raise ValueError("B is not contained in A")
    ok, w = star_condition(A, A.view_of(B))
    return ok, (None if ok else A.members[w])


def ann_left(M: FiniteModule, N: int) -> int:
    """The intersection of the kernels of all f: M -> N."""
    out = M.full
    for t in hom_generators(M, M, N):
        out &= _bits(x for x in range(M.size) if t[x] == M.zero)
    return out


def ann_right(M: FiniteModule, N: int, lat: Optional[SubmoduleLattice] = None) -> int:
    """Greatest K with N_M K = 0, or NoGreatestAnnihilator."""
    lat = enumerate_submodules(M) if lat is None else lat
    zero = 1 << M.zero
    S = zero
    for L in lat.members:
        if product(M, N, L) == zero:
            S = M.sum(S, L)
    if product(M, N, S) != zero:
        raise NoGreatestAnnihilator("the sum of right annihilators does not annihilate",
                                    candidate=S)
    return S


def fi_closure(M: FiniteModule, N: int) -> int:
    """Least fully invariant submodule containing N."""
    gens = hom_generators(M, M)
    cur = N
    while True:
        imgs = {t[x] for t in gens for x in quick_generators(M, cur)}
        nxt = M.span(sorted(imgs), base=cur)
        if nxt == cur:
            return cur
        cur = nxt


def eta(M: FiniteModule, N: int) -> int:
    """Intersection of f^{-1}(N) over End(M): the largest fi submodule inside N."""
    out = N
    for t in hom_generators(M, M):
        out &= _bits(x for x in range(M.size) if (N >> t[x]) & 1)
    return out


def is_self_generator(lat: SubmoduleLattice) -> Tuple[bool, Optional[int]]:
    M = lat.module
    for N in lat.members:
        if product(M, M.full, N) != N:
            return False, N
    return True, None


def coatoms(lat: SubmoduleLattice) -> List[int]:
    return [lat.members[i] for i in lat.coatoms()]


def is_coatomic(lat: SubmoduleLattice) -> bool:
    return lat.is_coatomic()


def is_modular(lat: SubmoduleLattice) -> Tuple[bool, Optional[tuple]]:
    ok, w = lat.is_modular()
    return ok, (None if ok else tuple(lat.members[i] for i in w))
