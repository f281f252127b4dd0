"""Finite rings, finite left modules and the homomorphisms between them.

Elements are always integer indices ``0..size-1``.  Subsets of a module,
in particular submodules, are Python ints used as bitsets.
"""

from __future__ import annotations

import itertools
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import limits
from .errors import IncompatibleRing, InvalidAction, InvalidTables, SizeLimitExceeded


def iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def bits_of(elems) -> int:
    out = 0
    for x in elems:
        out |= 1 << x
    return out


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def _check_group(add: np.ndarray, zero: int, what: str) -> None:
    n = add.shape[0]
    if add.shape != (n, n) or add.min() < 0 or add.max() >= n:
        raise InvalidTables(f"{what}: addition table has wrong shape or range")
    if not (add == add.T).all():
        raise InvalidTables(f"{what}: addition is not commutative")
    idx = np.arange(n)
    if not (add[zero] == idx).all():
        raise InvalidTables(f"{what}: {zero} is not an additive identity")
    if not (add == zero).any(axis=1).all():
        raise InvalidTables(f"{what}: some element has no additive inverse")
    for i in range(n):
        if not (add[add[i]] == add[i][add]).all():
            raise InvalidTables(f"{what}: addition is not associative")


def _mixed_index(digits: Sequence[int], radix: Sequence[int]) -> int:
    out = 0
    for d, r in zip(digits, radix):
        out = out * r + d
    return out


class FiniteRing:
    """Associative unital ring given by its addition and multiplication tables."""

    def __init__(self, add, mul, zero: int, one: int, name: str = "",
                 labels: Optional[List[str]] = None, modulus: Optional[int] = None,
                 validate: bool = True):
        self.add = [list(row) for row in add]
        self.mul = [list(row) for row in mul]
        self.size = len(self.add)
        self.zero = zero
        self.one = one
        self.name = name or f"R{self.size}"
        self.labels = labels or [str(i) for i in range(self.size)]
        # set for Zn(n): lets abelian groups of exponent dividing n act on it
        self.modulus = modulus
        if self.size > limits.CONSTRUCT_SIZE:
            raise SizeLimitExceeded(f"ring of size {self.size} exceeds cap {limits.CONSTRUCT_SIZE}")
        if validate:
            self.validate()
        self.neg = [self.add[x].index(self.zero) for x in range(self.size)]
        self._add_gens: Optional[List[int]] = None

    def validate(self) -> None:
        n = self.size
        if n < 1:
            raise InvalidTables("ring must have at least one element")
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise InvalidTables("zero/one out of range")
        if n == 1 and self.zero != self.one:
            raise InvalidTables("zero ring must have zero = one")
        add = np.array(self.add, dtype=np.int64)
        mul = np.array(self.mul, dtype=np.int64)
        _check_group(add, self.zero, self.name)
        if mul.shape != (n, n) or mul.min() < 0 or mul.max() >= n:
            raise InvalidTables(f"{self.name}: multiplication table has wrong shape or range")
        idx = np.arange(n)
        if not ((mul[self.one] == idx).all() and (mul[:, self.one] == idx).all()):
            raise InvalidTables(f"{self.name}: {self.one} is not a two-sided identity")
        for i in range(n):
            if not (mul[mul[i]] == mul[i][mul]).all():
                raise InvalidTables(f"{self.name}: multiplication is not associative")
            # i*(j+k) == i*j + i*k and (j+k)*i == j*i + k*i
            if not (mul[i][add] == add[mul[i][:, None], mul[i][None, :]]).all():
                raise InvalidTables(f"{self.name}: left distributivity fails")
            if not (mul[:, i][add] == add[mul[:, i][:, None], mul[:, i][None, :]]).all():
                raise InvalidTables(f"{self.name}: right distributivity fails")

    def additive_generators(self) -> List[int]:
        """A small generating set of (R, +); used to impose R-linearity."""
        if self._add_gens is None:
            gens: List[int] = []
            span = {self.zero}
            for x in range(self.size):
                if x in span:
                    continue
                gens.append(x)
                frontier = list(span)
                while frontier:
                    y = frontier.pop()
                    for g in gens:
                        z = self.add[y][g]
                        if z not in span:
                            span.add(z)
                            frontier.append(z)
            self._add_gens = gens
        return self._add_gens

    def __repr__(self) -> str:
        return f"FiniteRing({self.name}, size={self.size})"


def zn(n: int) -> FiniteRing:
    if n < 1:
        raise InvalidTables("Zn needs n >= 1")
    add = [[(i + j) % n for j in range(n)] for i in range(n)]
    mul = [[(i * j) % n for j in range(n)] for i in range(n)]
    return FiniteRing(add, mul, 0, 1 % n, name=f"Z{n}", modulus=n, validate=False)


def _tuple_ring(elems: List[tuple], add_fn, mul_fn, zero, one, name, label_fn) -> FiniteRing:
    index = {e: i for i, e in enumerate(elems)}
    if len(elems) > limits.CONSTRUCT_SIZE:
        raise SizeLimitExceeded(f"ring of size {len(elems)} exceeds cap {limits.CONSTRUCT_SIZE}")
    add = [[index[add_fn(a, b)] for b in elems] for a in elems]
    mul = [[index[mul_fn(a, b)] for b in elems] for a in elems]
    labels = [label_fn(e) for e in elems]
    return FiniteRing(add, mul, index[zero], index[one], name=name, labels=labels)


def matrix_ring(base: FiniteRing, k: int, upper: bool = False) -> FiniteRing:
    """Full (or upper triangular) k x k matrices over ``base``."""
    if k < 1:
        raise InvalidTables("matrix size must be >= 1")
    positions = [(i, j) for i in range(k) for j in range(k) if not upper or j >= i]
    total = base.size ** len(positions)
    if total > limits.CONSTRUCT_SIZE:
        raise SizeLimitExceeded(f"matrix ring of size {total} exceeds cap {limits.CONSTRUCT_SIZE}")
    pos_index = {p: t for t, p in enumerate(positions)}
    elems = list(itertools.product(range(base.size), repeat=len(positions)))
    ba, bm, z = base.add, base.mul, base.zero

    def entry(e, i, j):
        t = pos_index.get((i, j))
        return z if t is None else e[t]

    def add_fn(a, b):
        return tuple(ba[x][y] for x, y in zip(a, b))

    def mul_fn(a, b):
        out = []
        for i, j in positions:
            acc = z
            for m in range(k):
                acc = ba[acc][bm[entry(a, i, m)][entry(b, m, j)]]
            out.append(acc)
        return tuple(out)

    one = tuple(base.one if i == j else z for i, j in positions)
    zero = tuple(z for _ in positions)

    def label(e):
        rows = []
        for i in range(k):
            rows.append("[" + ",".join(base.labels[entry(e, i, j)] for j in range(k)) + "]")
        return "[" + ",".join(rows) + "]"

    kind = "T" if upper else "M"
    return _tuple_ring(elems, add_fn, mul_fn, zero, one, f"{kind}{k}({base.name})", label)


def upper_triangular(base: FiniteRing, k: int) -> FiniteRing:
    return matrix_ring(base, k, upper=True)


def product_ring(rings: Sequence[FiniteRing]) -> FiniteRing:
    if not rings:
        raise InvalidTables("product of an empty list of rings")
    total = math.prod(r.size for r in rings)
    if total > limits.CONSTRUCT_SIZE:
        raise SizeLimitExceeded(f"product ring of size {total} exceeds cap {limits.CONSTRUCT_SIZE}")
    elems = list(itertools.product(*[range(r.size) for r in rings]))

    def add_fn(a, b):
        return tuple(r.add[x][y] for r, x, y in zip(rings, a, b))

    def mul_fn(a, b):
        return tuple(r.mul[x][y] for r, x, y in zip(rings, a, b))

    zero = tuple(r.zero for r in rings)
    one = tuple(r.one for r in rings)
    name = "x".join(r.name for r in rings)

    def label(e):
        return "(" + ",".join(r.labels[x] for r, x in zip(rings, e)) + ")"

    return _tuple_ring(elems, add_fn, mul_fn, zero, one, name, label)


def same_ring(R: FiniteRing, S: FiniteRing) -> bool:
    return R is S or (R.zero == S.zero and R.one == S.one and R.add == S.add and R.mul == S.mul)


class FiniteModule:
    """Finite unital left module over a FiniteRing.

    ``act[r][x]`` is the index of r.x.  Hom caches live on the source module;
    they are filled before any parallel phase and only read afterwards.
    """

    def __init__(self, ring: FiniteRing, add, zero: int, act, name: str = "",
                 labels: Optional[List[str]] = None, validate: bool = True):
        self.ring = ring
        self.add = [list(row) for row in add]
        self.act = [list(row) for row in act]
        self.size = len(self.add)
        self.zero = zero
        self.name = name or f"M{self.size}"
        self.labels = labels or [str(i) for i in range(self.size)]
        if self.size > limits.CONSTRUCT_SIZE:
            raise SizeLimitExceeded(f"module of size {self.size} exceeds cap {limits.CONSTRUCT_SIZE}")
        if validate:
            self.validate()
        self.neg = [self.add[x].index(self.zero) for x in range(self.size)]
        self.full = (1 << self.size) - 1
        self._cyclic: Dict[int, int] = {}
        self._homs: Dict[tuple, tuple] = {}
        self._hom_groups: Dict[tuple, tuple] = {}
        self._primary = None

    def validate(self) -> None:
        R = self.ring
        n = self.size
        if n < 1 or not 0 <= self.zero < n:
            raise InvalidTables("module needs at least the zero element")
        add = np.array(self.add, dtype=np.int64)
        _check_group(add, self.zero, self.name)
        act = np.array(self.act, dtype=np.int64)
        if act.shape != (R.size, n) or act.min() < 0 or act.max() >= n:
            raise InvalidAction(f"{self.name}: action table must be ring.size x size")
        if not (act[R.one] == np.arange(n)).all():
            raise InvalidAction(f"{self.name}: 1.x != x")
        radd = np.array(R.add, dtype=np.int64)
        rmul = np.array(R.mul, dtype=np.int64)
        for r in range(R.size):
            ar = act[r]
            if not (ar[act] == act[rmul[r]]).all():
                raise InvalidAction(f"{self.name}: r.(s.x) != (rs).x for r={r}")
            if not (ar[add] == add[ar[:, None], ar[None, :]]).all():
                raise InvalidAction(f"{self.name}: r.(x+y) != r.x + r.y for r={r}")
            if not (act[radd[r]] == add[ar[None, :], act]).all():
                raise InvalidAction(f"{self.name}: (r+s).x != r.x + s.x for r={r}")

    # -- subsets and spans --------------------------------------------------

    def cyclic(self, x: int) -> int:
        """Bitset of Rx (closed under + because R is unital)."""
        c = self._cyclic.get(x)
        if c is None:
            c = 0
            for r in range(self.ring.size):
                c |= 1 << self.act[r][x]
            self._cyclic[x] = c
        return c

    def translate(self, bits: int, y: int) -> int:
        out = 0
        row = self.add[y]
        for x in iter_bits(bits):
            out |= 1 << row[x]
        return out

    def sum(self, a: int, b: int) -> int:
        """Bitset of a + b for submodules a, b."""
        if a & b == b:
            return a
        if a & b == a:
            return b
        out = a
        for y in iter_bits(b):
            if not (out >> y) & 1:
                out |= self.translate(a, y)
        return out

    def span(self, elems, base: Optional[int] = None) -> int:
        out = (1 << self.zero) if base is None else base
        for x in elems:
            if not (out >> x) & 1:
                out = self.sum(out, self.cyclic(x))
        return out

    def is_submodule(self, bits: int) -> bool:
        if not (bits >> self.zero) & 1:
            return False
        members = list(iter_bits(bits))
        for x in members:
            row = self.add[x]
            for y in members:
                if not (bits >> row[y]) & 1:
                    return False
            if self.cyclic(x) & ~bits:
                return False
        return True

    def generators_of(self, bits: int) -> List[int]:
        """Greedy small generating set of the submodule ``bits``."""
        gens: List[int] = []
        cur = 1 << self.zero
        while cur != bits:
            best, best_size = -1, -1
            for x in iter_bits(bits & ~cur):
                s = bin(self.sum(cur, self.cyclic(x))).count("1")
                if s > best_size:
                    best, best_size = x, s
            gens.append(best)
            cur = self.sum(cur, self.cyclic(best))
        return gens

    def multiple(self, k: int, x: int) -> int:
        """k.x for a non-negative integer k (double and add)."""
        out, base = self.zero, x
        while k:
            if k & 1:
                out = self.add[out][base]
            base = self.add[base][base]
            k >>= 1
        return out

    def order(self, x: int) -> int:
        k, y = 1, x
        while y != self.zero:
            y = self.add[y][x]
            k += 1
        return k

    def exponent(self) -> int:
        e = 1
        for x in range(self.size):
            e = math.lcm(e, self.order(x))
        return e

    def label_set(self, bits: int) -> List[str]:
        return [self.labels[x] for x in iter_bits(bits)]

    def __repr__(self) -> str:
        return f"FiniteModule({self.name}, size={self.size}, ring={self.ring.name})"


def regular_module(R: FiniteRing) -> FiniteModule:
    return FiniteModule(R, R.add, R.zero, R.mul, name=R.name, labels=list(R.labels), validate=False)


def abelian_module(R: FiniteRing, invariants: Sequence[int]) -> FiniteModule:
    """Z_{d1} + ... + Z_{dk} as a module over Zn(L) with every d_i | L."""
    if R.modulus is None:
        raise IncompatibleRing("abelian modules need a ring built as Zn(L)")
    invariants = list(invariants)
    if not invariants or any(d < 1 for d in invariants):
        raise InvalidAction("invariant factors must be positive integers")
    for d in invariants:
        if R.modulus % d:
            raise IncompatibleRing(f"Z{d} is not a module over Z{R.modulus}")
    total = math.prod(invariants)
    if total > limits.CONSTRUCT_SIZE:
        raise SizeLimitExceeded(f"module of size {total} exceeds cap {limits.CONSTRUCT_SIZE}")
    # first coordinate varies fastest, so Z_{d1} + 0 occupies the lowest indices
    elems = [t[::-1] for t in itertools.product(*[range(d) for d in reversed(invariants)])]
    index = {e: i for i, e in enumerate(elems)}
    add = [[index[tuple((a + b) % d for a, b, d in zip(x, y, invariants))] for y in elems] for x in elems]
    act = [[index[tuple((r * a) % d for a, d in zip(x, invariants))] for x in elems]
           for r in range(R.size)]
    labels = ["(" + ",".join(map(str, e)) + ")" if len(e) > 1 else str(e[0]) for e in elems]
    name = "+".join(f"Z{d}" for d in invariants)
    return FiniteModule(R, add, index[tuple(0 for _ in invariants)], act, name=name, labels=labels,
                        validate=False)


def direct_sum(M: FiniteModule, copies: int) -> FiniteModule:
    """M^(n); elements are tuples of M-indices in lexicographic order."""
    if copies < 1:
        raise InvalidAction("direct sum needs at least one copy")
    total = M.size ** copies
    if total > limits.CONSTRUCT_SIZE:
        raise SizeLimitExceeded(f"module of size {total} exceeds cap {limits.CONSTRUCT_SIZE}")
    radix = [M.size] * copies
    elems = list(itertools.product(range(M.size), repeat=copies))
    add = [[_mixed_index([M.add[a][b] for a, b in zip(x, y)], radix) for y in elems] for x in elems]
    act = [[_mixed_index([M.act[r][a] for a in x], radix) for x in elems] for r in range(M.ring.size)]
    labels = ["(" + ",".join(M.labels[a] for a in e) + ")" for e in elems]
    return FiniteModule(M.ring, add, _mixed_index([M.zero] * copies, radix), act,
                        name=f"({M.name})^{copies}", labels=labels, validate=False)


def module_from_tables(R: FiniteRing, add, zero: int, act, name: str = "") -> FiniteModule:
    return FiniteModule(R, add, zero, act, name=name)


class ModuleMap:
    """An R-linear map given by its table source index -> target index."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source: FiniteModule, target: FiniteModule, table: Sequence[int]):
        self.source = source
        self.target = target
        self.table = tuple(table)

    def is_homomorphism(self) -> bool:
        S, T, f = self.source, self.target, self.table
        if not same_ring(S.ring, T.ring) or len(f) != S.size:
            return False
        for x in range(S.size):
            for y in range(S.size):
                if f[S.add[x][y]] != T.add[f[x]][f[y]]:
                    return False
            for r in range(S.ring.size):
                if f[S.act[r][x]] != T.act[r][f[x]]:
                    return False
        return True

    def image(self, bits: int) -> int:
        return map_image(self.table, bits)

    def preimage(self, bits: int) -> int:
        return map_preimage(self.table, bits)

    def kernel(self) -> int:
        return map_preimage(self.table, 1 << self.target.zero)

    def __eq__(self, other):
        return isinstance(other, ModuleMap) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self) -> str:
        return f"ModuleMap({self.source.name}->{self.target.name})"


def map_image(table: Sequence[int], bits: int) -> int:
    out = 0
    for x in iter_bits(bits):
        out |= 1 << table[x]
    return out


def map_preimage(table: Sequence[int], bits: int) -> int:
    out = 0
    for x, y in enumerate(table):
        if (bits >> y) & 1:
            out |= 1 << x
    return out


def quotient_with_projection(M: FiniteModule, N: int) -> Tuple[FiniteModule, ModuleMap]:
    """M/N with cosets indexed in order of their least representative."""
    cls = [-1] * M.size
    reps: List[int] = []
    for x in range(M.size):
        if cls[x] < 0:
            c = len(reps)
            reps.append(x)
            for y in iter_bits(M.translate(N, x)):
                cls[y] = c
    add = [[cls[M.add[a][b]] for b in reps] for a in reps]
    act = [[cls[M.act[r][a]] for a in reps] for r in range(M.ring.size)]
    labels = [M.labels[a] + "+N" for a in reps]
    Q = FiniteModule(M.ring, add, cls[M.zero], act, name=f"{M.name}/N", labels=labels, validate=False)
    return Q, ModuleMap(M, Q, cls)


def quotient(M: FiniteModule, generators: Sequence[int]) -> FiniteModule:
    return quotient_with_projection(M, M.span(generators))[0]


def submodule_as_module(M: FiniteModule, bits: int) -> Tuple[FiniteModule, List[int]]:
    """The submodule ``bits`` as a module of its own plus its inclusion table."""
    elems = list(iter_bits(bits))
    index = {x: i for i, x in enumerate(elems)}
    add = [[index[M.add[a][b]] for b in elems] for a in elems]
    act = [[index[M.act[r][a]] for a in elems] for r in range(M.ring.size)]
    N = FiniteModule(M.ring, add, index[M.zero], act, name=f"sub({M.name})",
                     labels=[M.labels[a] for a in elems], validate=False)
    return N, elems


# -- Hom enumeration by generator images ------------------------------------

def generating_sequence(M: FiniteModule) -> List[int]:
    return M.generators_of(M.full)


def enumerate_homs(M: FiniteModule, N: FiniteModule,
                   cap: Optional[int] = None) -> List[ModuleMap]:
    """All R-linear maps M -> N, in lexicographic order of their tables.

    Images of a greedy generating sequence are assigned one generator at a
    time; each partial assignment is propagated along every edge
    x -> x + r.g and rejected on the first conflict.
    """
    if not same_ring(M.ring, N.ring):
        raise IncompatibleRing("modules over different rings")
    key = ("all", id(N))
    hit = M._homs.get(key)
    if hit is not None:
        return hit[1]
    gens = generating_sequence(M)
    cap = limits.HOM_CANDIDATES if cap is None else cap
    if N.size ** len(gens) > cap:
        raise SizeLimitExceeded(f"Hom search space {N.size}^{len(gens)} exceeds {cap}")
    R = M.ring
    steps = []  # per generator: list of (translation element, ring element)
    for g in gens:
        seen: Dict[int, int] = {}
        for r in range(R.size):
            t = M.act[r][g]
            if t not in seen:
                seen[t] = r
        steps.append(sorted(seen.items()))
    tables: List[tuple] = []
    f = [-1] * M.size
    f[M.zero] = N.zero
    images: List[int] = []

    def extend(level: int) -> Tuple[bool, List[int]]:
        # propagate along the edges of generators 0..level from every known element
        queue = [x for x in range(M.size) if f[x] >= 0]
        added: List[int] = []
        while queue:
            x = queue.pop()
            fx = f[x]
            for j in range(level + 1):
                y = images[j]
                for t, r in steps[j]:
                    z = M.add[x][t]
                    val = N.add[fx][N.act[r][y]]
                    if f[z] < 0:
                        f[z] = val
                        added.append(z)
                        queue.append(z)
                    elif f[z] != val:
                        return False, added
        return True, added

    def dfs(level: int) -> None:
        if level == len(gens):
            tables.append(tuple(f))
            return
        for y in range(N.size):
            images.append(y)
            ok, added = extend(level)
            if ok:
                dfs(level + 1)
            for z in added:
                f[z] = -1
            images.pop()

    dfs(0)
    tables.sort()
    maps = [ModuleMap(M, N, t) for t in tables]
    M._homs[key] = (N, maps)
    return maps


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    return ModuleMap(f.source, g.target, [g.table[x] for x in f.table])


# -- additive generators of Hom via primary decomposition ---------------------

def _factor(n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class _Part:
    """The p-primary component of a module."""

    def __init__(self, M: FiniteModule, p: int, a: int, e: int):
        self.p, self.a = p, a
        q = p ** a
        rest = e // q
        u = 1 if rest == 1 else (rest * pow(rest, -1, q)) % e
        self.proj = [M.multiple(u, x) for x in range(M.size)]
        self.bits = bits_of(set(self.proj))
        self.elementary = a == 1
        if self.elementary:
            basis: List[int] = []
            coords: Dict[int, tuple] = {M.zero: ()}
            for x in iter_bits(self.bits):
                if len(coords) == popcount(self.bits):
                    break
                if x in coords:
                    continue
                # extend every known vector by multiples of the new basis element
                new: Dict[int, tuple] = {}
                mults = [M.zero]
                for _ in range(p - 1):
                    mults.append(M.add[mults[-1]][x])
                for y, v in coords.items():
                    for c, m in enumerate(mults):
                        new[M.add[y][m]] = v + (c,)
                coords = new
                basis.append(x)
            self.basis = basis
            self.coords = coords
            self.elem = {v: x for x, v in coords.items()}
            self.dim = len(basis)


def _parts(M: FiniteModule) -> Dict[int, _Part]:
    if M._primary is None:
        e = M.exponent()
        M._primary = {p: _Part(M, p, a, e) for p, a in sorted(_factor(e).items())}
    return M._primary


def _nullspace_mod_p(rows: List[List[int]], ncols: int, p: int) -> List[List[int]]:
    mat = [[v % p for v in row] for row in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [(v * inv) % p for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                k = mat[i][c]
                mat[i] = [(a - k * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-mat[i][fc]) % p
        basis.append(v)
    return basis


def _matrix_of(M: FiniteModule, part: _Part, r: int) -> List[List[int]]:
    cols = [part.coords[M.act[r][b]] for b in part.basis]
    return [[cols[j][i] for j in range(part.dim)] for i in range(part.dim)]


def _reduce_generators(tables: List[tuple], N: FiniteModule) -> Tuple[List[tuple], int]:
    """Greedy additive generating subset and the order of the group."""
    group = {tuple([N.zero] * (len(tables[0]) if tables else 0))}
    gens: List[tuple] = []
    for t in tables:
        if t in group:
            continue
        gens.append(t)
        frontier = list(group)
        while frontier:
            s = frontier.pop()
            z = tuple(N.add[a][b] for a, b in zip(s, t))
            if z not in group:
                group.add(z)
                frontier.append(z)
    return gens, len(group)


def hom_group(M: FiniteModule, N: FiniteModule, into: Optional[int] = None) -> Tuple[List[tuple], int]:
    """Additive generators of Hom(M, L) for the submodule L = ``into`` of N.

    Returns (generator tables M -> N, order of the group).  The group
    splits over primes; elementary components are solved as F_p-linear
    systems X A_r = B_r X, the rest by exhaustive enumeration.
    """
    if not same_ring(M.ring, N.ring):
        raise IncompatibleRing("modules over different rings")
    into = N.full if into is None else into
    key = (id(N), into)
    hit = M._hom_groups.get(key)
    if hit is not None:
        return hit[1]
    pm, pn = _parts(M), _parts(N)
    R = M.ring
    gens: List[tuple] = []
    order = 1
    for p, mp in pm.items():
        np_ = pn.get(p)
        if np_ is None:
            continue
        target = into & np_.bits
        if target == 1 << N.zero:
            continue
        if mp.elementary and np_.elementary:
            dm, dn = mp.dim, np_.dim
            nvar = dn * dm
            rows: List[List[int]] = []
            for r in R.additive_generators():
                A = _matrix_of(M, mp, r)
                B = _matrix_of(N, np_, r)
                for i in range(dn):
                    for j in range(dm):
                        row = [0] * nvar
                        for k in range(dm):
                            row[i * dm + k] += A[k][j]
                        for k in range(dn):
                            row[k * dm + j] -= B[i][k]
                        rows.append(row)
            if target != np_.bits:
                lvecs = [list(np_.coords[x]) for x in iter_bits(target)]
                for phi in _nullspace_mod_p(lvecs, dn, p):
                    for j in range(dm):
                        row = [0] * nvar
                        for i in range(dn):
                            row[i * dm + j] = phi[i]
                        rows.append(row)
            null = _nullspace_mod_p(rows, nvar, p)
            order *= p ** len(null)
            for v in null:
                table = []
                for x in range(M.size):
                    c = mp.coords[mp.proj[x]]
                    w = tuple(sum(v[i * dm + j] * c[j] for j in range(dm)) % p for i in range(dn))
                    table.append(np_.elem[w])
                gens.append(tuple(table))
        else:
            Mp, inc_m = submodule_as_module(M, mp.bits)
            Lp, inc_l = submodule_as_module(N, target)
            pos = {x: i for i, x in enumerate(inc_m)}
            tables = []
            for h in enumerate_homs(Mp, Lp):
                tables.append(tuple(inc_l[h.table[pos[mp.proj[x]]]] for x in range(M.size)))
            part_gens, part_order = _reduce_generators(tables, N)
            gens.extend(part_gens)
            order *= part_order
    result = (gens, order)
    M._hom_groups[key] = (N, result)
    return result


def hom_generators(M: FiniteModule, N: FiniteModule, into: Optional[int] = None) -> List[tuple]:
    return hom_group(M, N, into)[0]


def hom_order(M: FiniteModule, N: FiniteModule, into: Optional[int] = None) -> int:
    return hom_group(M, N, into)[1]


def check_quasi_projective(M: FiniteModule):
    """(True, None) or (False, (K, alpha)) with alpha: M -> M/K not liftable.

    Lifts exist for all alpha iff the image of End(M) under composition
    with the projection is all of Hom(M, M/K), i.e. iff
    |End(M)| = |Hom(M, K)| * |Hom(M, M/K)|.
    """
    from .sublat import enumerate_submodules  # local import: sublat builds on finalg

    end = hom_order(M, M)
    for K in enumerate_submodules(M).members:
        Q, pi = quotient_with_projection(M, K)
        if hom_order(M, M, K) * hom_order(M, Q) != end:
            lifted = {tuple(pi.table[y] for y in f.table) for f in enumerate_homs(M, M)}
            for alpha in enumerate_homs(M, Q):
                if alpha.table not in lifted:
                    return False, (K, alpha)
            raise AssertionError("hom counts disagree but every map lifts")
    return True, None
