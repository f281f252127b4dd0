"""Module-level point-free theory: spectra, nuclei, SP/SPm, Ler and Ψ, classifiers.

All submodules are bitsets over the elements of the module.  ``ModuleAnalysis``
stages the computation (lattices, spectra, nuclei, frames) and keeps every
intermediate object for the theorem audit and the reports.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from . import limits
from .errors import IdiomLabError, NotAFrame, NotASubmodule
from .finalg import FiniteModule, check_quasi_projective, iter_bits
from .fintop import (CMap, FinTopSpace, are_homeomorphic, find_retraction, frames_isomorphic,
                     is_hausdorff, is_normal_space, map_predicates, open_set_frame,
                     verify_retraction)
from .ptfree import (FrameView, frame_from_lattice, fixed_points, full_view, hk_topology,
                     is_normal_lattice, is_regular_frame, nucleus_from_subspace, p_condition,
                     points_of_frame, pt_space, spec_rel)
from .sublat import (SubmoduleLattice, ann_left, check_product_associative, coatoms, enumerate_fi,
                     enumerate_submodules, eta, is_self_generator, product)


# -- element-level annihilators and Ler -------------------------------------------

def cyclic_annihilator(M: FiniteModule, m: int) -> int:
    """Ann_M(Rm), the intersection of kernels of all maps M -> Rm."""
    cache = M.__dict__.setdefault("_cyc_ann", {})
    c = M.cyclic(m)
    hit = cache.get(c)
    if hit is None:
        hit = ann_left(M, c)
        cache[c] = hit
    return hit


def ler_elements(M: FiniteModule, N: int) -> int:
    """{m : N + Ann_M(Rm) = M} as a bitset, without closure checks."""
    cache = M.__dict__.setdefault("_ler", {})
    hit = cache.get(N)
    if hit is None:
        hit = 0
        for m in range(M.size):
            if M.sum(N, cyclic_annihilator(M, m)) == M.full:
                hit |= 1 << m
        cache[N] = hit
    return hit


def ler(M: FiniteModule, N: int) -> int:
    """Ler(N); raises NotASubmodule when the element set is not closed."""
    out = ler_elements(M, N)
    if not M.is_submodule(out):
        raise NotASubmodule("Ler element set is not a submodule", witness=out)
    return out


def ler_sum_form(M: FiniteModule, fi: SubmoduleLattice, N: int) -> int:
    """Sum of all K in Λ^fi(M) with N + Ann_M(K) = M."""
    out = 1 << M.zero
    for K in fi.members:
        if M.sum(N, ann_left(M, K)) == M.full:
            out = M.sum(out, K)
    return out


def psi_members(M: FiniteModule, fi: SubmoduleLattice) -> List[int]:
    """N in Λ^fi(M) with N + Ann_M(Rn) = M for every n in N."""
    return [N for N in fi.members if N & ~ler_elements(M, N) == 0]


# -- classifiers ---------------------------------------------------------------------

def _separated(M: FiniteModule, maximals: List[int], pool: List[int]):
    """Every ordered pair N != L of ``maximals`` has L' not<= L, N' not<= N in the
    pool with L'_M N' = 0.  Returns (flag, first failing pair)."""
    zero = 1 << M.zero
    for N in maximals:
        for L in maximals:
            if N == L:
                continue
            lefts = [X for X in pool if X & ~L]
            rights = [Y for Y in pool if Y & ~N]
            if not any(product(M, X, Y) == zero for X in lefts for Y in rights):
                return False, (N, L)
    return True, None


def _separated_by_elements(M: FiniteModule, maximals: List[int], symmetric: bool):
    """a not in N, b not in L with a in Ann(Rb) (and b in Ann(Ra) when symmetric)."""
    ann = [cyclic_annihilator(M, x) for x in range(M.size)]
    for N in maximals:
        for L in maximals:
            if N == L:
                continue
            found = False
            for b in range(M.size):
                if (L >> b) & 1:
                    continue
                cands = ann[b] & ~N
                if symmetric:
                    cands = sum(1 << a for a in iter_bits(cands) if (ann[a] >> b) & 1)
                if cands:
                    found = True
                    break
            if not found:
                return False, (N, L)
    return True, None


def is_strongly_harmonic(M: FiniteModule, fi: Optional[SubmoduleLattice] = None):
    fi = enumerate_fi(M) if fi is None else fi
    return _separated(M, coatoms(fi), fi.members)


def is_gelfand(M: FiniteModule, lat: Optional[SubmoduleLattice] = None,
               fi: Optional[SubmoduleLattice] = None):
    lat = enumerate_submodules(M) if lat is None else lat
    fi = enumerate_fi(M, lat) if fi is None else fi
    return _separated(M, coatoms(lat), fi.members)


def is_quasi_duo(M: FiniteModule, lat: Optional[SubmoduleLattice] = None,
                 fi: Optional[SubmoduleLattice] = None):
    lat = enumerate_submodules(M) if lat is None else lat
    fi = enumerate_fi(M, lat) if fi is None else fi
    for N in coatoms(lat):
        if N not in fi:
            return False, N
    return True, None


def is_pm_module(M: FiniteModule, spec: List[int], maximals: List[int]):
    """Every prime lies under exactly one maximal submodule."""
    for P in spec:
        above = [N for N in maximals if P & ~N == 0]
        if len(above) != 1:
            return False, (P, len(above))
    return True, None


def semiprimes(M: FiniteModule, fi: SubmoduleLattice) -> List[int]:
    """Proper N in Λ^fi with L_M L <= N  =>  L <= N, for L in Λ^fi."""
    out = []
    for N in fi.members:
        if N == M.full:
            continue
        if all(L & ~N == 0 for L in fi.members if product(M, L, L) & ~N == 0):
            out.append(N)
    return out


def maximal_intersections(M: FiniteModule, maximals: List[int]) -> List[int]:
    """η of every intersection of maximal submodules, together with M."""
    meets = {M.full}
    frontier = list(maximals)
    meets.update(maximals)
    while frontier:
        nxt = []
        for a in frontier:
            for b in maximals:
                c = a & b
                if c not in meets:
                    meets.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted({eta(M, x) for x in meets})


# -- the staged analysis -------------------------------------------------------------

class ModuleAnalysis:
    """Lattices, spectra, nuclei, frames, Ler/Ψ and classifiers of one module.

    With ``light=True`` only the lattices and the four classifiers are built;
    this is what the audit uses for derived modules such as M^(2).
    """

    def __init__(self, M: FiniteModule, light: bool = False, member_cap: Optional[int] = None,
                 cap: Optional[int] = None):
        self.M = M
        self.light = light
        self.zero = 1 << M.zero
        self.full = M.full
        self.lat = enumerate_submodules(M, cap=cap, member_cap=member_cap)
        self.fi = enumerate_fi(M, self.lat)
        self.mx = coatoms(self.lat)
        self.mx_fi = coatoms(self.fi)
        self.strongly_harmonic = is_strongly_harmonic(M, self.fi)
        self.gelfand = is_gelfand(M, self.lat, self.fi)
        self.quasi_duo = is_quasi_duo(M, self.lat, self.fi)
        if not light:
            self._build()

    # structure ------------------------------------------------------------------

    def _build(self) -> None:
        M, lat, fi = self.M, self.lat, self.fi
        self.quasi_projective = check_quasi_projective(M)
        self.associative = check_product_associative(lat)
        self.fi_associative = check_product_associative(fi)
        self.self_generator = is_self_generator(lat)
        self.fi_view = lat.view_of(fi)
        self.fi_self = full_view(fi)
        self.fi_coatomic = fi.is_coatomic()

        self.spec = [fi.members[i] for i in spec_rel(fi, self.fi_self)]
        self.lgspec = [lat.members[i] for i in spec_rel(lat, self.fi_view)]
        self.pm = is_pm_module(M, self.spec, self.mx)

        self.subspaces = {
            "Spec": (fi, self.fi_self, self._idx(fi, self.spec)),
            "mx": (lat, self.fi_view, self._idx(lat, self.mx)),
            "mx_fi": (fi, self.fi_self, self._idx(fi, self.mx_fi)),
            "LgSpec": (lat, self.fi_view, self._idx(lat, self.lgspec)),
        }
        self.spaces: Dict[str, FinTopSpace] = {}
        self.nuclei = {}
        self.fixed: Dict[str, FrameView] = {}
        for name, (A, B, S) in self.subspaces.items():
            self.spaces[name] = hk_topology(A, B, S)
            j = nucleus_from_subspace(A, B, S, name=f"tau[{name}]")
            self.nuclei[name] = j
            self.fixed[name] = fixed_points(j)
        self.mu = self.nuclei["Spec"]
        self.tau = self.nuclei["mx"]
        self.sp = self.fixed["Spec"]
        self.spm = self.fixed["mx"]

        self.ler_table: Dict[int, Optional[int]] = {}
        self.ler_failures: Dict[int, int] = {}
        for N in fi.members:
            try:
                self.ler_table[N] = ler(M, N)
            except NotASubmodule as exc:
                self.ler_table[N] = None
                self.ler_failures[N] = exc.witness
        self.psi = psi_members(M, fi)
        try:
            self.psi_frame = self._poset_frame(self.psi)
        except NotAFrame:
            self.psi_frame = None

    @staticmethod
    def _idx(L: SubmoduleLattice, bits_list: List[int]) -> List[int]:
        return [L.index[b] for b in bits_list]

    def _poset_frame(self, members: List[int]) -> FrameView:
        fi = self.fi
        F = frame_from_lattice(fi, [fi.index[b] for b in sorted(members, key=fi.index.get)])
        if not F.is_lattice():
            raise NotAFrame("members do not form a lattice")
        return F

    # hypothesis flags ------------------------------------------------------------

    @property
    def sigma_projective_proxy(self) -> bool:
        return self.quasi_projective[0] and self.associative[0]

    @property
    def self_progenerator_proxy(self) -> bool:
        return self.sigma_projective_proxy and self.self_generator[0]

    def meet_of(self, bits_list: List[int]) -> int:
        out = self.full
        for b in bits_list:
            out &= b
        return out

    # convenience --------------------------------------------------------------------

    def label(self, bits: int) -> str:
        return self.lat.labels[self.lat.index[bits]] if bits in self.lat.index else hex(bits)

    def labels(self, bits_list) -> List[str]:
        return [self.label(b) for b in bits_list]

    def ler_of(self, N: int) -> Optional[int]:
        if N in self.ler_table:
            return self.ler_table[N]
        try:
            return ler(self.M, N)
        except NotASubmodule:
            return None


def analyze(M: FiniteModule, light: bool = False) -> ModuleAnalysis:
    return ModuleAnalysis(M, light=light)


# -- two-oracle helpers ----------------------------------------------------------------

def sp_oracles(an: ModuleAnalysis) -> Tuple[List[int], List[int]]:
    """(μ fixed points, semiprimes ∪ {M}) as sorted bitset lists."""
    via_mu = sorted(an.fi.members[i] for i in an.mu.fixed())
    direct = sorted(semiprimes(an.M, an.fi) + [an.full])
    return via_mu, direct


def spm_oracles(an: ModuleAnalysis) -> Tuple[List[int], List[int]]:
    via_tau = sorted(an.fi.members[i] for i in an.tau.fixed())
    return via_tau, maximal_intersections(an.M, an.mx)


def ler_oracles(an: ModuleAnalysis) -> Dict[int, Tuple[Optional[int], int]]:
    return {N: (an.ler_table[N], ler_sum_form(an.M, an.fi, N)) for N in an.fi.members}


def r_operator_regular(an: ModuleAnalysis) -> Tuple[bool, Optional[int]]:
    """N <= r(N) for all N in Ψ, with r(N) = Σ{K in Ψ : N + K^r = M} and
    K^r = Σ{L in Ψ : L_M K = 0}, using module sums and products."""
    M, psi = an.M, an.psi
    kr = {}
    for K in psi:
        s = an.zero
        for L in psi:
            if product(M, L, K) == an.zero:
                s = M.sum(s, L)
        kr[K] = s
    for N in psi:
        r = an.zero
        for K in psi:
            if M.sum(N, kr[K]) == an.full:
                r = M.sum(r, K)
        if N & ~r:
            return False, N
    return True, None


def psi_regular(an: ModuleAnalysis) -> Tuple[Optional[bool], Optional[int]]:
    if an.psi_frame is None:
        return None, None
    try:
        ok, w = is_regular_frame(an.psi_frame)
    except NotAFrame:
        return None, None
    return ok, (None if ok else an.psi_frame.keys[w])


# -- verification records ----------------------------------------------------------------

def theta_homeomorphism(an: ModuleAnalysis) -> dict:
    """Θ(𝓜) = Ler(𝓜) from mx^fi(M) to pt(Ψ(M))."""
    rec = {"well_defined": False, "injective": False, "surjective": False,
           "continuous": False, "open": False, "homeomorphism": False, "map": {}}
    F = an.psi_frame
    if F is None:
        rec["note"] = "Ψ(M) is not a lattice"
        return rec
    try:
        pts = points_of_frame(F)
    except NotAFrame:
        rec["note"] = "Ψ(M) is not distributive"
        return rec
    space = pt_space(F)
    pt_bits = [F.keys[p] for p in pts]
    images = [an.ler_of(m) for m in an.mx_fi]
    rec["map"] = {an.label(m): (an.label(t) if t is not None else None)
                  for m, t in zip(an.mx_fi, images)}
    rec["well_defined"] = all(t in pt_bits for t in images)
    if not rec["well_defined"]:
        return rec
    table = [pt_bits.index(t) for t in images]
    f = CMap(an.spaces["mx_fi"], space, table)
    preds = map_predicates(f)
    rec.update(injective=preds["injective"], surjective=preds["surjective"],
               continuous=preds["continuous"], open=preds["open"])
    rec["homeomorphism"] = all(preds[k] for k in ("injective", "surjective", "continuous", "open"))
    rec["spaces_homeomorphic"] = are_homeomorphic(an.spaces["mx_fi"], space)[0]
    return rec


def psi_spm_isomorphism(an: ModuleAnalysis) -> dict:
    """Ler and τ as mutually inverse frame maps between Ψ(M) and SPm(M)."""
    fi, tau = an.fi, an.tau
    rec = {}
    lers = {N: an.ler_of(N) for N in fi.members}
    if any(v is None for v in lers.values()):
        rec["note"] = "Ler is not defined on all of Λ^fi(M)"
        rec["isomorphism"] = False
        return rec
    t = {N: fi.members[tau(fi.index[N])] for N in fi.members}
    rec["galois"] = all((lers[N] & ~L == 0) == (N & ~t[L] == 0)
                        for N in fi.members for L in fi.members)
    spm = [fi.members[i] for i in tau.fixed()]
    psi = an.psi
    rec["ler_tau_identity_on_psi"] = all(lers[t[N]] == N for N in psi)
    rec["tau_ler_identity_on_spm"] = all(t[lers[L]] == L for L in spm)
    rec["ler_maps_spm_into_psi"] = all(lers[L] in psi for L in spm)
    rec["tau_maps_psi_into_spm"] = all(t[N] in spm for N in psi)
    rec["meets"] = all(lers[a & b] == lers[a] & lers[b] for a in spm for b in spm) and \
        all(t[a & b] == t[a] & t[b] for a in psi for b in psi)
    rec["joins"] = all(lers[t[an.M.sum(a, b)]] == _psi_join(an, lers[a], lers[b])
                       for a in spm for b in spm)
    F = an.psi_frame
    iso = frames_isomorphic(F, an.spm)[0] if F is not None else False
    rec["frames_isomorphic"] = iso
    rec["isomorphism"] = all(rec[k] for k in ("galois", "ler_tau_identity_on_psi",
                                              "tau_ler_identity_on_spm", "ler_maps_spm_into_psi",
                                              "tau_maps_psi_into_spm", "meets", "joins"))
    return rec


def _psi_join(an: ModuleAnalysis, a: int, b: int) -> Optional[int]:
    F = an.psi_frame
    if F is None or a not in F.keys or b not in F.keys:
        return None
    return F.keys[F.join(F.keys.index(a), F.keys.index(b))]


def gamma_retraction(an: ModuleAnalysis) -> dict:
    """γ(P) = Σ{N in Λ^fi : N + P < M} on Spec(M), and the pm form P -> its maximal."""
    M, fi = an.M, an.fi
    spec_space = an.spaces["Spec"]
    rec = {}
    sum_form = []
    for P in an.spec:
        g = an.zero
        for N in fi.members:
            if M.sum(N, P) != an.full:
                g = M.sum(g, N)
        sum_form.append(g)
    rec["sum_form"] = {an.label(P): an.label(g) for P, g in zip(an.spec, sum_form)}
    rec["sum_form_into_mx_fi"] = all(g in an.mx_fi for g in sum_form)
    rec["sum_form_fixes_mx_fi"] = all(g == P for P, g in zip(an.spec, sum_form) if P in an.mx_fi)
    targets = [an.spec.index(m) for m in an.mx_fi if m in an.spec]
    rec["sum_form_retraction"] = False
    if rec["sum_form_into_mx_fi"] and len(targets) == len(an.mx_fi):
        table = [an.spec.index(g) for g in sum_form]
        rec["sum_form_retraction"] = verify_retraction(spec_space, targets, table)
    rec["search_mx_fi"] = find_retraction(spec_space, targets) is not None \
        if len(targets) == len(an.mx_fi) else False
    # pm form onto mx(M), only meaningful when the maximals are points of Spec
    rec["pm_form_retraction"] = None
    if an.pm[0] and all(m in an.spec for m in an.mx):
        table = []
        for P in an.spec:
            above = [m for m in an.mx if P & ~m == 0]
            table.append(an.spec.index(above[0]))
        mx_pos = [an.spec.index(m) for m in an.mx]
        rec["pm_form_retraction"] = verify_retraction(spec_space, mx_pos, table)
        rec["search_mx"] = find_retraction(spec_space, mx_pos) is not None
    return rec


def eta_spectral_map(an: ModuleAnalysis) -> dict:
    """η: LgSpec(M) -> Spec(M), Q -> η(M, Q)."""
    M, fi = an.M, an.fi
    images = [eta(M, Q) for Q in an.lgspec]
    rec = {"lands_in_spec": all(e in an.spec for e in images)}
    if not rec["lands_in_spec"]:
        return rec
    f = CMap(an.spaces["LgSpec"], an.spaces["Spec"], [an.spec.index(e) for e in images])
    rec.update(map_predicates(f))
    pre_ok = img_ok = True
    for N in fi.members:
        v_lg = sum(1 << i for i, Q in enumerate(an.lgspec) if N & ~Q == 0)
        v_sp = sum(1 << i for i, P in enumerate(an.spec) if N & ~P == 0)
        pre_ok &= f.preimage(v_sp) == v_lg
        img_ok &= f.image(v_lg) == v_sp
    rec["preimage_of_V"] = pre_ok
    rec["image_of_V"] = img_ok
    return rec


def induced_frame_morphism(src: ModuleAnalysis, dst: ModuleAnalysis, rho: List[int]) -> dict:
    """Checks for an epimorphism ρ: M -> N given by its table."""
    M, N = src.M, dst.M

    def image(bits):
        out = 0
        for x in iter_bits(bits):
            out |= 1 << rho[x]
        return out

    rec = {}
    roler = True
    for L in src.fi.members:
        lhs = image(ler_elements(M, L))
        rhs = ler_elements(N, image(L))
        roler &= lhs & ~rhs == 0
    rec["roler"] = roler
    lr = {L: ler_elements(N, image(L)) for L in src.fi.members}
    rec["ler_rho_sums"] = all(lr[M.sum(a, b)] == N.sum(lr[a], lr[b])
                              for a in src.fi.members for b in src.fi.members
                              if N.is_submodule(lr[a]) and N.is_submodule(lr[b]))
    rec["ler_rho_meets"] = all(lr[a & b] == lr[a] & lr[b]
                               for a in src.fi.members for b in src.fi.members)
    rec["ler_rho_into_psi"] = all(v in dst.psi for v in lr.values())
    imgs = {L: image(L) for L in src.psi}
    rec["psi_into_psi"] = all(v in dst.psi for v in imgs.values())
    ok = rec["psi_into_psi"]
    if ok and src.psi_frame is not None and dst.psi_frame is not None:
        F, G = src.psi_frame, dst.psi_frame
        pos = {k: i for i, k in enumerate(G.keys)}
        for a in range(F.n):
            for b in range(F.n):
                ia, ib = pos[imgs[F.keys[a]]], pos[imgs[F.keys[b]]]
                if imgs[F.keys[F.join(a, b)]] != G.keys[G.join(ia, ib)]:
                    ok = False
                if imgs[F.keys[F.meet(a, b)]] != G.keys[G.meet(ia, ib)]:
                    ok = False
        ok &= imgs[F.keys[F.top]] == G.keys[G.top] and imgs[F.keys[F.bottom]] == G.keys[G.bottom]
    else:
        ok = False
    rec["frame_morphism"] = ok
    return rec


def normal_space(an: ModuleAnalysis, name: str) -> bool:
    return is_normal_space(an.spaces[name])[0]


def nucleus_frame_normal(an: ModuleAnalysis, name: str) -> Tuple[bool, Optional[tuple]]:
    """B_τ with product τ(ab) and zero τ(0)."""
    return is_normal_lattice(an.fixed[name])


def frame_normal(F: FrameView) -> bool:
    """Normality of a frame, the product being the meet."""
    return is_normal_lattice(F, prod=F.meet, zero=F.bottom)[0]


def o_space_frame(an: ModuleAnalysis, name: str):
    return open_set_frame(an.spaces[name])
