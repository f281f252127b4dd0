"""Property-based checks over randomly generated small structures."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles as O
from idiomlab.finalg import abelian_module, quotient_with_projection, zn
from idiomlab.fintop import FinTopSpace, are_homeomorphic, is_normal_space, open_set_frame
from idiomlab.ptfree import (FiniteLattice, MultLattice, boolean_lattice, check_nucleus_laws,
                             full_view, nucleus_from_subspace, pt_space, spec_rel)
from idiomlab.sublat import enumerate_fi, enumerate_submodules, eta, is_modular, product
from idiomlab.theory import ModuleAnalysis, ler, sp_oracles, spm_oracles

SETTINGS = settings(max_examples=40, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])

EXPONENTS = [2, 3, 4, 6, 8, 9, 12]


@st.composite
def abelian_modules(draw, max_size=24):
    n = draw(st.sampled_from(EXPONENTS))
    divisors = [d for d in range(2, n + 1) if n % d == 0]
    inv = draw(st.lists(st.sampled_from(divisors), min_size=1, max_size=3))
    size = 1
    for d in inv:
        size *= d
    if size > max_size:
        inv = inv[:1]
    return abelian_module(zn(n), inv)


@st.composite
def quotient_modules(draw):
    M = draw(abelian_modules(max_size=24))
    subs = enumerate_submodules(M).members
    N = draw(st.sampled_from(subs[:-1]))
    return quotient_with_projection(M, N)[0]


modules = st.one_of(abelian_modules(), quotient_modules())


@SETTINGS
@given(modules)
def test_submodule_lattice_laws(M):
    lat = enumerate_submodules(M)
    assert is_modular(lat)[0]
    members = set(lat.members)
    for a in lat.members:
        for b in lat.members:
            assert (a & b) in members
            assert M.sum(a, b) in members
            i, j = lat.index[a], lat.index[b]
            assert lat.members[lat.meet(i, j)] == a & b
            assert lat.members[lat.join(i, j)] == M.sum(a, b)


@SETTINGS
@given(abelian_modules(max_size=12))
def test_submodules_match_subset_search(M):
    assert sorted(enumerate_submodules(M).members) == sorted(O.submodules(M))


@SETTINGS
@given(modules)
def test_product_monotone_and_bounded(M):
    lat = enumerate_submodules(M)
    for N in lat.members:
        for L in lat.members:
            P = product(M, N, L)
            assert P & ~L == 0
            for N2 in lat.members:
                if N & ~N2 == 0:
                    assert P & ~product(M, N2, L) == 0


@SETTINGS
@given(modules)
def test_eta_is_fi_and_below(M):
    lat = enumerate_submodules(M)
    fi = enumerate_fi(M, lat)
    for N in lat.members:
        e = eta(M, N)
        assert e & ~N == 0 and e in fi
        assert all(K & ~e == 0 for K in fi.members if K & ~N == 0)


@SETTINGS
@given(modules)
def test_nuclei_and_oracles(M):
    an = ModuleAnalysis(M)
    for j in an.nuclei.values():
        laws = check_nucleus_laws(j)
        assert all(laws[k] for k in ("inflatory", "monotone", "idempotent", "meet_preserving")), laws
    assert sp_oracles(an)[0] == sp_oracles(an)[1]
    assert spm_oracles(an)[0] == spm_oracles(an)[1]


@SETTINGS
@given(modules)
def test_ler_invariants(M):
    an = ModuleAnalysis(M)
    fi = an.fi
    assert ler(M, M.full) == M.full
    for N in an.psi:
        assert an.ler_table[N] == N
    for a in fi.members:
        for b in fi.members:
            la, lb = an.ler_table[a], an.ler_table[b]
            if a & ~b == 0 and la is not None and lb is not None:
                assert la & ~lb == 0


@SETTINGS
@given(modules)
def test_ler_below_maximal_under_strong_harmonicity(M):
    an = ModuleAnalysis(M)
    if not (an.strongly_harmonic[0] and an.self_progenerator_proxy):
        return
    for m in an.mx_fi:
        lm = an.ler_table[m]
        for N in an.fi.members:
            if N != M.full and lm & ~N == 0:
                assert N & ~m == 0


# -- lattices, nuclei and spaces --------------------------------------------------------

@st.composite
def preorder_spaces(draw, max_points=5):
    n = draw(st.integers(1, max_points))
    rel = [[i == j or draw(st.booleans()) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                rel[i][j] = rel[i][j] or (rel[i][k] and rel[k][j])
    # opens are up-sets of the preorder
    opens = [sum(1 << j for j in range(n) if rel[i][j]) for i in range(n)]
    return FinTopSpace(range(n), opens + [0])


@SETTINGS
@given(preorder_spaces())
def test_space_closure_interior_duality(S):
    for b in range(S.full + 1):
        assert S.closure(b) == S.full & ~S.interior(S.full & ~b)
        assert S.interior(b) & ~b == 0 and b & ~S.closure(b) == 0


@SETTINGS
@given(preorder_spaces())
def test_open_frame_is_distributive_and_sober_points(S):
    F = open_set_frame(S)
    assert F.is_distributive()[0]
    T0 = all(S.minimal_open(i) != S.minimal_open(j) for i in range(S.n) for j in range(i))
    if T0:
        # finite T0 spaces are sober, so pt(O(S)) recovers S
        assert are_homeomorphic(pt_space(F), S)[0]


@SETTINGS
@given(preorder_spaces(max_points=4))
def test_normality_matches_definition(S):
    opens = sorted(S.opens)
    closed = [S.full & ~o for o in opens]
    brute = all(any(K & ~U == 0 and L & ~V == 0 and U & V == 0 for U in opens for V in opens)
                for K in closed for L in closed if not K & L)
    assert is_normal_space(S)[0] == brute


@SETTINGS
@given(st.integers(1, 3), st.data())
def test_hull_kernel_nucleus_on_boolean(k, data):
    A = boolean_lattice(k)
    B = full_view(A)
    spec = spec_rel(A, B)
    S = data.draw(st.lists(st.sampled_from(spec), unique=True)) if spec else []
    j = nucleus_from_subspace(A, B, sorted(S))
    laws = check_nucleus_laws(j)
    assert all(laws[x] for x in ("inflatory", "monotone", "idempotent", "meet_preserving"))


@SETTINGS
@given(st.integers(2, 4), st.integers(2, 4))
def test_product_of_chains_is_distributive(a, b):
    keys = [(i, j) for i in range(a) for j in range(b)]
    keys.sort(key=lambda t: (t[0] + t[1], t))
    L = FiniteLattice.from_order(keys, lambda x, y: x[0] <= y[0] and x[1] <= y[1])
    assert L.is_lattice() and L.is_distributive()[0] and L.is_modular()[0]
    assert MultLattice(L.down).is_associative()[0]
