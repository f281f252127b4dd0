"""Brute-force reference computations that use only the raw module tables.

Nothing here calls into the library beyond reading ``M.add``, ``M.act``,
``M.zero`` and ``M.size``; the point is to be independent of the
generator-based search the package uses.
"""

from __future__ import annotations

from itertools import combinations
from typing import List


def members(bits: int) -> List[int]:
    return [i for i in range(bits.bit_length()) if (bits >> i) & 1]


def to_bits(xs) -> int:
    out = 0
    for x in xs:
        out |= 1 << x
    return out


def full(M) -> int:
    return (1 << M.size) - 1


def closed(M, S: set) -> bool:
    if M.zero not in S:
        return False
    for a in S:
        for b in S:
            if M.add[a][b] not in S:
                return False
        for r in range(len(M.act)):
            if M.act[r][a] not in S:
                return False
    return True


def span(M, xs) -> int:
    S = {M.zero} | set(xs)
    while True:
        new = {M.add[a][b] for a in S for b in S} | {M.act[r][a] for r in range(len(M.act)) for a in S}
        if new <= S:
            return to_bits(S)
        S |= new


def submodules(M) -> List[int]:
    """Every subset that is closed, by exhaustive subset enumeration."""
    others = [x for x in range(M.size) if x != M.zero]
    out = []
    for k in range(len(others) + 1):
        for combo in combinations(others, k):
            S = set(combo) | {M.zero}
            if closed(M, S):
                out.append(to_bits(S))
    return out


def endomorphisms(M) -> List[tuple]:
    """All R-linear maps M -> M by element-by-element backtracking."""
    n, R = M.size, len(M.act)
    f = [-1] * n
    out = []

    def consistent(x: int) -> bool:
        for y in range(x + 1):
            if f[y] < 0:
                continue
            s = M.add[x][y]
            if f[s] >= 0 and f[s] != M.add[f[x]][f[y]]:
                return False
        for r in range(R):
            t = M.act[r][x]
            if f[t] >= 0 and f[t] != M.act[r][f[x]]:
                return False
            for y in range(n):
                if f[y] >= 0 and M.act[r][y] == x and f[x] != M.act[r][f[y]]:
                    return False
        for y in range(n):
            for z in range(n):
                if f[y] >= 0 and f[z] >= 0 and M.add[y][z] == x and f[x] != M.add[f[y]][f[z]]:
                    return False
        return True

    def dfs(x: int) -> None:
        if x == n:
            out.append(tuple(f))
            return
        for v in range(n):
            f[x] = v
            if consistent(x):
                dfs(x + 1)
        f[x] = -1

    dfs(0)
    return out


def fully_invariant(M, subs=None, ends=None) -> List[int]:
    subs = submodules(M) if subs is None else subs
    ends = endomorphisms(M) if ends is None else ends
    return [N for N in subs if all(all((N >> f[x]) & 1 for x in members(N)) for f in ends)]


def product(M, ends, N: int, L: int) -> int:
    """Span of f(N) over endomorphisms with image inside L."""
    imgs = set()
    for f in ends:
        if all((L >> v) & 1 for v in f):
            imgs.update(f[x] for x in members(N))
    return span(M, imgs)


def ann_left(M, ends, K: int) -> int:
    """Intersection of kernels of the maps M -> K."""
    out = full(M)
    for f in ends:
        if all((K >> v) & 1 for v in f):
            out &= to_bits(x for x in range(M.size) if f[x] == M.zero)
    return out


def sum_sub(M, A: int, B: int) -> int:
    return span(M, members(A) + members(B))


def ler_elements(M, ends, N: int) -> int:
    out = 0
    for m in range(M.size):
        if sum_sub(M, N, ann_left(M, ends, span(M, [m]))) == full(M):
            out |= 1 << m
    return out


def primes(M, fi: List[int], ends) -> List[int]:
    out = []
    for P in fi:
        if P == full(M):
            continue
        if all((A & ~P == 0) or (B & ~P == 0)
               for A in fi for B in fi if product(M, ends, A, B) & ~P == 0):
            out.append(P)
    return out
