"""Theorem audit: evaluate hypotheses, evaluate conclusions, label each claim.

Labels are PASS, HYPOTHESES-UNMET and VIOLATED.  A hypothesis that cannot be
decided exactly (projectivity in σ[M], being a self-progenerator) is replaced
by decidable necessary conditions and reported with status
``assumed-by-proxy``; a failed proxy means the hypothesis genuinely fails.
"""

from __future__ import annotations

from typing import Dict, List, Optional

from . import limits
from .errors import IdiomLabError, NoGreatestAnnihilator
from .finalg import (FiniteModule, direct_sum, enumerate_homs, iter_bits, map_image,
                     map_preimage, quotient_with_projection, submodule_as_module)
from .fintop import (find_retraction, frames_isomorphic, is_compact, is_hausdorff,
                     is_normal_space, open_set_frame)
from .ptfree import (check_nucleus_laws, cover_test, is_normal_lattice, p_condition,
                     star_condition)
from .sublat import (ann_right, check_left_distributive, eta, is_modular, product)
from .theory import (ModuleAnalysis, _separated, _separated_by_elements, eta_spectral_map,
                     frame_normal, gamma_retraction, induced_frame_morphism, ler_elements,
                     ler_sum_form, psi_regular, psi_spm_isomorphism, r_operator_regular,
                     theta_homeomorphism)

PASS = "PASS"
UNMET = "HYPOTHESES-UNMET"
VIOLATED = "VIOLATED"

VERIFIED = "verified"
FAILED = "failed"
PROXY = "assumed-by-proxy"


def _status(flag: bool, proxy: bool = False) -> str:
    if not flag:
        return FAILED
    return PROXY if proxy else VERIFIED


class Entry:
    def __init__(self, ident: str, tag: str, claim: str, hyps, conclusion: bool, detail=None):
        self.id = ident
        self.tag = tag
        self.claim = claim
        self.hypotheses = [(name, st) for name, st in hyps]
        self.conclusion = bool(conclusion)
        self.detail = detail
        if any(st == FAILED for _, st in self.hypotheses):
            self.label = UNMET
        elif not self.conclusion:
            self.label = VIOLATED
        else:
            self.label = PASS

    @property
    def proxies(self) -> List[str]:
        return [name for name, st in self.hypotheses if st == PROXY]

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "tag": self.tag,
            "claim": self.claim,
            "label": self.label,
            "hypotheses": [{"name": n, "status": s} for n, s in self.hypotheses],
            "conclusion": self.conclusion,
        }
        if self.proxies:
            out["assumed_by_proxy"] = self.proxies
        if self.detail is not None:
            out["detail"] = self.detail
        return out


class TheoremReport:
    def __init__(self, module_name: str, entries: List[Entry]):
        self.module = module_name
        self.entries = entries

    def counts(self) -> Dict[str, int]:
        out = {PASS: 0, UNMET: 0, VIOLATED: 0}
        for e in self.entries:
            out[e.label] += 1
        return out

    def violations(self) -> List[Entry]:
        return [e for e in self.entries if e.label == VIOLATED]

    def by_id(self, ident: str) -> List[Entry]:
        return [e for e in self.entries if e.id == ident or e.id.startswith(ident + "[")]

    def to_dict(self) -> dict:
        return {"module": self.module, "counts": self.counts(),
                "entries": [e.to_dict() for e in self.entries]}


# -- derived modules --------------------------------------------------------------

class Derived:
    """Quotients, summands and M^(2) of an analysed module, built on demand."""

    def __init__(self, an: ModuleAnalysis):
        self.an = an
        self._quot: Dict[int, tuple] = {}
        self._square = None

    def quotient(self, K: int):
        """(analysis, projection table); full analysis when K is fully invariant."""
        hit = self._quot.get(K)
        if hit is None:
            Q, pi = quotient_with_projection(self.an.M, K)
            Q.name = f"{self.an.M.name}/{self.an.label(K)}"
            light = K not in self.an.fi
            hit = (ModuleAnalysis(Q, light=light), list(pi.table))
            self._quot[K] = hit
        return hit

    def square(self):
        """(M^(2), light analysis) or (None, reason)."""
        if self._square is None:
            M = self.an.M
            try:
                M2 = direct_sum(M, 2)
                a2 = ModuleAnalysis(M2, light=True, cap=limits.CONSTRUCT_SIZE,
                                    member_cap=limits.LATTICE_MEMBERS)
                self._square = (M2, a2)
            except IdiomLabError as exc:
                self._square = (None, str(exc))
        return self._square

    def summand(self, A: int) -> ModuleAnalysis:
        S, _ = submodule_as_module(self.an.M, A)
        return ModuleAnalysis(S, light=True)


# -- lattice-level checks ---------------------------------------------------------

def _lemmap_checks(A, B, S, j) -> Dict[str, bool]:
    """Closed-set identities of a hull-kernel space S with nucleus j on B."""
    L = B.lattice
    glob = B.indices

    def V(x):
        return sum(1 << k for k, p in enumerate(S) if A.leq(glob[x], p))

    full = (1 << len(S)) - 1
    j0 = j(L.bottom)
    pcond = p_condition(A, B, S)[0]
    out = {"V_of_nucleus": all(V(x) == V(j(x)) for x in range(L.n))}
    out["product_vs_opens"] = all(
        L.leq(L.prod(x, y), j0) == (((full & ~V(x)) & (full & ~V(y))) == 0)
        for x in range(L.n) for y in range(L.n))
    chain = True
    equiv = True
    cover_disjoint = True
    for x in range(L.n):
        for y in range(L.n):
            a = L.join(x, y) == L.top
            b = L.join(j(x), j(y)) == L.top
            c = j(L.join(j(x), j(y))) == L.top
            d = V(j(x)) & V(j(y)) == 0
            e = V(x) & V(y) == 0
            chain &= (not a or b) and (not b or c) and (not c or d) and (not d or e)
            if pcond:
                equiv &= a == b == c == d == e
            cover_disjoint &= (not a) or e
            if pcond:
                cover_disjoint &= a == e
    out["join_top_vs_closed"] = cover_disjoint
    out["chain"] = chain
    out["equivalence_under_p_condition"] = equiv
    out["p_condition"] = pcond
    return out


def _nucleus_lemmas(L, j) -> Dict[str, object]:
    """Checks on coatomic L with a coatom-fixing multiplicative nucleus j."""
    from .ptfree import fixed_points

    laws = check_nucleus_laws(j)
    F = fixed_points(j)
    L_normal = is_normal_lattice(L)[0]
    F_normal = is_normal_lattice(F)[0]
    lema1 = all(L.join(x, y) == L.top for x in range(L.n) for y in range(L.n)
                if j(L.join(x, y)) == L.top)
    return {"laws": laws, "coatomic": L.is_coatomic(), "j0_is_zero": j(L.bottom) == L.bottom,
            "lattice_normal": L_normal, "fixed_normal": F_normal, "join_lifts": lema1}


# -- the audit -----------------------------------------------------------------------

def theorem_audit(an: ModuleAnalysis, recurse: bool = True) -> TheoremReport:
    if an.light:
        raise ValueError("the audit needs a full analysis")
    M = an.M
    E: List[Entry] = []
    add = lambda *a, **k: E.append(Entry(*a, **k))  # noqa: E731

    qp = an.quasi_projective[0]
    sig = an.sigma_projective_proxy
    prog = an.self_progenerator_proxy
    h_sig = ("M projective in σ[M]", _status(sig, proxy=True))
    h_prog = ("M self-progenerator in σ[M]", _status(prog, proxy=True))
    h_qp = ("M quasi-projective", _status(qp))
    h_cmp = ("Λ^fi(M) compact", VERIFIED)          # finite lattices are compact
    h_mxc = ("mx(M) compact", VERIFIED)
    sh = an.strongly_harmonic[0]
    gel = an.gelfand[0]
    qd = an.quasi_duo[0]
    h_sh = ("M strongly harmonic", _status(sh))
    h_gel = ("M Gelfand", _status(gel))
    fi = an.fi
    lat = an.lat
    zero, full = an.zero, an.full

    # structure --------------------------------------------------------------------
    mod_l, mod_f = is_modular(lat)[0], is_modular(fi)[0]
    add("lattices-modular", "idiom", "Λ(M) and Λ^fi(M) are modular", [], mod_l and mod_f,
        {"Lambda": mod_l, "Lambda_fi": mod_f})
    ok_star = star_condition(fi, an.fi_self)[0] and star_condition(lat, an.fi_view)[0]
    add("fi-star-condition", "star", "Λ^fi(M) satisfies (⋆) in itself and inside Λ(M)",
        [h_sig], ok_star)
    ld = check_left_distributive(lat)[0]
    frames_ok = all(F.is_frame() for F in (an.sp, an.spm))
    add("sp-spm-are-frames", "fixedframe",
        "SP(M) and SPm(M) are frames when the product distributes over joins",
        [("(N+K)L = NL+KL in Λ(M)", _status(ld))], frames_ok)

    # nuclei, hull-kernel spaces -----------------------------------------------------
    for name, (A, B, S) in an.subspaces.items():
        j = an.nuclei[name]
        laws = check_nucleus_laws(j)
        core = ("inflatory", "monotone", "idempotent", "meet_preserving", "multiplicative")
        add(f"nucleus-laws[{name}]", "adjunctionsb",
            f"τ for {name} is an inflatory, idempotent, meet-preserving multiplicative nucleus",
            [("(⋆) condition", VERIFIED)], all(laws[k] for k in core),
            {k: laws[k] for k in core})
        chk = _lemmap_checks(A, B, S, j)
        add(f"closed-set-identities[{name}]", "lemmap",
            "V(x) = V(τx); xy ≤ τ(0) iff U(x)∩U(y) = ∅; x∨y = 1 gives disjoint closed sets",
            [("(⋆) condition", VERIFIED), (f"{name} consists of relative primes", VERIFIED)],
            chk["V_of_nucleus"] and chk["product_vs_opens"] and chk["join_top_vs_closed"],
            {"p_condition": chk["p_condition"]})
        add(f"cover-chain[{name}]", "lemaV",
            "x∨y=1 ⇒ τx∨τy=1 ⇒ τ(τx∨τy)=1 ⇒ V(τx)∩V(τy)=∅ ⇒ V(x)∩V(y)=∅",
            [("(⋆) condition", VERIFIED)], chk["chain"])
        add(f"cover-chain-equivalence[{name}]", "lemaV",
            "the five covering conditions are equivalent under the p-condition",
            [("p-condition relative to the subspace", _status(chk["p_condition"]))],
            chk["equivalence_under_p_condition"])
        if name != "LgSpec":
            sp_norm = is_normal_space(an.spaces[name])[0]
            fr_norm = is_normal_lattice(an.fixed[name])[0]
            add(f"normal-space-vs-fixed-lattice[{name}]", "pronormal",
                f"{name} is a normal space iff its fixed-point lattice is normal",
                [("(⋆) condition", VERIFIED)], sp_norm == fr_norm,
                {"space_normal": sp_norm, "fixed_lattice_normal": fr_norm})
        if name in ("Spec", "mx_fi", "mx", "LgSpec"):
            L = j.domain
            info = _nucleus_lemmas(L, j)
            base = [("Λ^fi(M) coatomic", _status(info["coatomic"])),
                    ("nucleus fixes coatoms", _status(info["laws"]["fixes_coatoms"])),
                    ("product on Λ^fi(M) associative", _status(an.fi_associative[0]))]
            add(f"nucleus-join-lift[{name}]", "lema1", "τ(x∨y) = 1 implies x∨y = 1",
                base, info["join_lifts"])
            add(f"normality-descends[{name}]", "lema2",
                "Λ^fi(M) normal implies its fixed-point lattice normal", base,
                (not info["lattice_normal"]) or info["fixed_normal"],
                {"lattice_normal": info["lattice_normal"], "fixed_normal": info["fixed_normal"]})
            add(f"normality-ascends[{name}]", "mu",
                "fixed-point lattice normal and τ(0) = 0 imply Λ^fi(M) normal",
                base + [("τ(0) = 0", _status(info["j0_is_zero"]))],
                (not info["fixed_normal"]) or info["lattice_normal"])

    # spectra and compactness ------------------------------------------------------------
    spec_idx = an.subspaces["Spec"][2]
    lg_idx = an.subspaces["LgSpec"][2]
    for name, A, B, S in (("Spec", fi, an.fi_self, spec_idx), ("LgSpec", lat, an.fi_view, lg_idx)):
        pc = p_condition(A, B, S)[0]
        ct = cover_test(A, B, S)
        add(f"compact-spectrum[{name}]", "bcompspeccomp",
            "B compact with the p-condition iff the spectrum is compact",
            [("(⋆) condition", VERIFIED)], (pc == ct) and (pc == is_compact(an.spaces[name])),
            {"p_condition": pc, "cover_test": ct})
    add("p-condition-relative-to-fi", "casicoat",
        "Λ(M) satisfies the p-condition relative to Λ^fi(M)", [h_sig],
        p_condition(lat, an.fi_view, lg_idx)[0])
    add("max-fi-are-prime", "maxfiinspec", "every maximal fully invariant submodule is prime",
        [h_sig], all(m in an.spec for m in an.mx_fi), {"mx_fi": an.labels(an.mx_fi)})
    add("compact-fi-is-coatomic", "compatomic2", "Λ^fi(M) compact implies coatomic",
        [h_sig, h_cmp], fi.is_coatomic())
    mxfi_space = an.spaces["mx_fi"]
    add("fi-compact-iff", "compatomic",
        "Λ^fi(M) compact iff mx^fi(M) compact and Λ^fi(M) coatomic", [h_sig],
        is_compact(mxfi_space) and fi.is_coatomic())

    # strongly harmonic and Gelfand ------------------------------------------------------
    h_assoc = ("product on Λ(M) associative", _status(an.associative[0]))
    for kind, maxis, flag in (("strongly-harmonic", an.mx_fi, sh), ("gelfand", an.mx, gel)):
        b_form = _separated(M, maxis, lat.members)[0]
        c_sym = _separated_by_elements(M, maxis, symmetric=True)[0]
        c_one = _separated_by_elements(M, maxis, symmetric=False)[0]
        add(f"{kind}-equivalent-forms", "STRONGLY" if kind[0] == "s" else "Gelfand",
            "separation by fi submodules, by arbitrary submodules and by mutually annihilating elements agree",
            [h_assoc], flag == b_form == c_sym and (not flag or c_one),
            {"definition": flag, "submodule_form": b_form, "element_form_symmetric": c_sym,
             "element_form_one_sided": c_one})

    hd_fi = is_hausdorff(mxfi_space)[0]
    meet_fi_zero = an.meet_of(an.mx_fi) == zero
    add("sh-gives-hausdorff", "stmaxhausdorf", "strongly harmonic implies mx^fi(M) Hausdorff",
        [h_sig, h_sh], hd_fi)
    add("hausdorff-gives-sh", "stmaxhausdorf",
        "mx^fi(M) Hausdorff implies strongly harmonic when ∩mx^fi(M) = 0",
        [h_sig, ("∩mx^fi(M) = 0", _status(meet_fi_zero))], (not hd_fi) or sh)
    add("sh-gives-normal-mxfi", "kohmodules", "strongly harmonic implies mx^fi(M) normal",
        [h_sig, h_sh, ("mx^fi(M) compact", VERIFIED)], is_normal_space(mxfi_space)[0])
    fi_normal = is_normal_lattice(fi)[0]
    add("normal-fi-gives-sh", "norstr", "Λ^fi(M) normal implies strongly harmonic",
        [h_sig], (not fi_normal) or sh)
    add("normal-fi-iff-sh", "norstr", "Λ^fi(M) normal iff strongly harmonic", [h_sig, h_cmp],
        fi_normal == sh)
    mu_normal = is_normal_lattice(an.fixed["Spec"])[0]
    spec_normal = is_normal_space(an.spaces["Spec"])[0]
    add("sh-normality-chain", "theoremsth",
        "SH ⇒ Λ^fi normal ⇒ Λ^fi_μ normal ⇔ Spec(M) normal", [h_sig, h_cmp],
        (not sh or fi_normal) and (not fi_normal or mu_normal) and mu_normal == spec_normal,
        {"a": sh, "b": fi_normal, "c": mu_normal, "d": spec_normal})
    add("sh-normality-equivalence", "theoremsth",
        "the four normality conditions agree when ∩mx^fi(M) = 0",
        [h_sig, h_cmp, ("∩mx^fi(M) = 0", _status(meet_fi_zero))],
        sh == fi_normal == mu_normal == spec_normal)
    add("spec-normal-iff-sp-normal", "normaleq", "Spec(M) normal iff the frame SP(M) is normal",
        [h_sig], spec_normal == frame_normal(an.sp))
    mx_normal = is_normal_space(an.spaces["mx"])[0]
    add("mx-normal-iff-spm-normal", "NormaleqMax", "mx(M) normal iff the frame SPm(M) is normal",
        [h_sig], mx_normal == frame_normal(an.spm))

    # Gelfand family -------------------------------------------------------------------
    add("gelfand-iff-sh-and-quasi-duo", "SHDuoGelfand", "Gelfand iff strongly harmonic and quasi-duo",
        [h_sig], gel == (sh and qd))
    add("gelfand-is-quasi-duo", "MaxGelfand", "a Gelfand module is quasi-duo", [h_gel], qd)
    add("gelfand-fi-coatomic", "gelcoa", "Gelfand implies Λ^fi(M) coatomic", [h_sig, h_gel],
        fi.is_coatomic())
    add("quasi-duo-max-equal", "Glemma", "quasi-duo implies mx^fi(M) = mx(M)",
        [h_sig, ("M quasi-duo", _status(qd))], sorted(an.mx_fi) == sorted(an.mx))
    bad = [Q for Q in an.lgspec if sum(1 for m in an.mx if Q & ~m == 0) > 1]
    add("gelfand-unique-maximal", "Gispm",
        "in a Gelfand module every prime lies under at most one maximal submodule", [h_gel],
        not bad, {"offenders": an.labels(bad)} if bad else None)

    endos = None
    try:
        endos = enumerate_homs(M, M)
    except IdiomLabError:
        pass
    if endos is None:
        add("preimage-of-maximal", "Mf", "f^{-1}(𝓜) is maximal when f(M) ⊄ 𝓜",
            [("End(M) within enumeration cap", FAILED)], True)
    else:
        ok = True
        for m in an.mx:
            for f in endos:
                if map_image(f.table, full) & ~m:
                    ok &= map_preimage(f.table, m) in an.mx
        add("preimage-of-maximal", "Mf", "f^{-1}(𝓜) is maximal when f(M) ⊄ 𝓜", [], ok,
            {"endomorphisms": len(endos)})

    # η ------------------------------------------------------------------------------
    greatest = all(eta(M, N) == max((K for K in fi.members if K & ~N == 0), key=lambda b: bin(b).count("1"))
                   and all(K & ~eta(M, N) == 0 for K in fi.members if K & ~N == 0)
                   for N in lat.members)
    add("eta-largest-fi-below", "propertyeta", "η(N) is the largest fully invariant submodule in N",
        [], greatest)
    rec = eta_spectral_map(an)
    add("eta-spectral-map", "etacontinua",
        "η maps LgSpec(M) onto Spec(M), continuous and closed, with η^{-1}(V(N)) = V(N)", [],
        all(rec.get(k) for k in ("lands_in_spec", "surjective", "continuous", "closed",
                                 "preimage_of_V", "image_of_V")), rec)
    lg_normal = is_normal_space(an.spaces["LgSpec"])[0]
    add("lgspec-normal-gives-spec-normal", "etacontinua", "LgSpec(M) normal implies Spec(M) normal",
        [], (not lg_normal) or spec_normal)

    # retractions ------------------------------------------------------------------------
    g = gamma_retraction(an)
    mu0 = an.mu(fi.bottom) == fi.bottom
    add("gamma-retraction", "gamma",
        "γ(P) = Σ{N : N+P < M} is a retraction of Spec(M) onto a Hausdorff mx^fi(M)",
        [h_sig, h_cmp, ("Spec(M) normal", _status(spec_normal)), ("μ(0) = 0", _status(mu0))],
        g["sum_form_into_mx_fi"] and g["sum_form_fixes_mx_fi"] and g["sum_form_retraction"] and hd_fi,
        g)
    mx_in_spec = all(m in an.spec for m in an.mx)
    hd_mx = is_hausdorff(an.spaces["mx"])[0]
    retract = False
    if mx_in_spec:
        retract = find_retraction(an.spaces["Spec"], [an.spec.index(m) for m in an.mx]) is not None
    add("hausdorff-retract-gives-normal", "retractnormal",
        "mx(M) Hausdorff and a retract of Spec(M) implies Spec(M) normal",
        [h_mxc, ("mx(M) Hausdorff", _status(hd_mx)),
         ("mx(M) is a retract of Spec(M)", _status(retract))], spec_normal)
    pm = an.pm[0]
    a_, b_ = gel, qd and sh
    c_ = qd and pm and hd_mx
    d_ = qd and hd_mx and retract
    e_ = qd and spec_normal
    meet_mx_zero = an.meet_of(an.mx) == zero
    dos = {"a": a_, "b": b_, "c": c_, "d": d_, "e": e_}
    add("gelfand-chain", "DOS", "(a)⇔(b)⇒(c)⇒(d)⇒(e) for the Gelfand conditions",
        [h_sig, h_cmp, h_mxc],
        a_ == b_ and (not b_ or c_) and (not c_ or d_) and (not d_ or e_), dos)
    add("gelfand-chain-equivalence", "DOS", "the five Gelfand conditions agree when ∩mx(M) = 0",
        [h_sig, h_cmp, h_mxc, ("∩mx(M) = 0", _status(meet_mx_zero))],
        a_ == b_ == c_ == d_ == e_, dos)

    # Ler and Ψ ------------------------------------------------------------------------
    sums = {N: ler_sum_form(M, fi, N) for N in fi.members}
    elem = {N: ler_elements(M, N) for N in fi.members}
    add("ler-sum-form", "lersuma", "Ler(N) = Σ{K ∈ Λ^fi : N + Ann(K) = M}", [h_sig],
        all(sums[N] == elem[N] for N in fi.members))
    coat = fi.is_coatomic()
    h_coat = ("Λ^fi(M) coatomic", _status(coat))
    ok_a = all(N & ~m == 0 for m in an.mx_fi for N in fi.members
               if N != full and elem[m] & ~N == 0)
    add("ler-of-maximal", "ler1", "Ler(𝓜) ≤ N ≠ M implies N ≤ 𝓜", [h_sig, h_coat, h_sh], ok_a)
    ok_b, skipped = True, []
    for L in fi.members:
        try:
            ar = ann_right(M, L, lat)
        except NoGreatestAnnihilator:
            skipped.append(an.label(L))
            continue
        for N in fi.members:
            if M.sum(N, ar) == full:
                ok_b &= L & ~elem[N] == 0
    add("ler-right-annihilator", "ler1", "M = N + Ann^r(L) implies L ≤ Ler(N)",
        [h_sig, h_coat, h_sh], ok_b, {"no_right_annihilator": skipped} if skipped else None)
    idem = all(ler_elements(M, elem[N]) == elem[N] for N in fi.members if M.is_submodule(elem[N]))
    idem &= all(M.is_submodule(elem[N]) for N in fi.members)
    add("ler-idempotent", "ler2", "Ler is idempotent", [h_prog, h_sh, h_cmp], idem)
    fixed = sorted(N for N in fi.members if elem[N] == N)
    add("psi-is-ler-fixed", "psi", "Ψ(M) is the set of fixed points of Ler", [h_prog],
        fixed == sorted(an.psi) and all(elem[N] == N for N in an.psi))
    psi_frame_ok = an.psi_frame is not None and an.psi_frame.is_frame()
    add("psi-is-frame", "psi", "Ψ(M) is a frame", [h_prog], psi_frame_ok)

    lers_sub = all(M.is_submodule(elem[N]) for N in fi.members)
    c_ = all((elem[N] & ~m == 0) == (N & ~m == 0) for N in fi.members for m in an.mx_fi)
    d_ = lers_sub and elem[zero] == zero and all(
        elem[M.sum(N, L)] == M.sum(elem[N], elem[L]) for N in fi.members for L in fi.members)
    e_ = lers_sub and all(M.sum(elem[N], elem[L]) == full for N in fi.members for L in fi.members
                          if M.sum(N, L) == full)
    dream = {"a": sh, "b": fi_normal, "c": c_, "d": d_, "e": e_}
    add("ler-characterisations", "dreamtheo",
        "strongly harmonic, Λ^fi normal, Ler detects maximals, Ler preserves sums, Ler preserves covers",
        [h_prog, h_cmp], len(set(dream.values())) == 1, dream)

    th = theta_homeomorphism(an)
    add("points-of-psi", "homeo", "Θ(𝓜) = Ler(𝓜) is a homeomorphism mx^fi(M) → pt(Ψ(M))",
        [h_prog, h_cmp, h_sh], th["homeomorphism"], th)
    reg_a, _ = psi_regular(an)
    reg_b, _ = r_operator_regular(an)
    add("psi-regular", "dreamcon", "Ψ(M) is regular; pseudocomplement and r(N) tests agree",
        [h_prog, h_sh, h_cmp], bool(reg_a) and reg_a == reg_b,
        {"pseudocomplement": reg_a, "r_operator": reg_b})
    iso = False
    if an.psi_frame is not None:
        iso = frames_isomorphic(an.psi_frame, open_set_frame(mxfi_space))[0]
    add("psi-is-opens-of-mxfi", "corhomeo", "Ψ(M) ≅ O(mx^fi(M))", [h_prog, h_sh, h_cmp], iso)
    pr = psi_spm_isomorphism(an)
    h_dc = [h_prog, h_gel, h_mxc]
    add("ler-tau-adjunction", "adjunction", "Ler(N) ≤ L iff N ≤ τ(L)", h_dc, pr.get("galois", False))
    add("psi-is-spm", "DreamcomG", "Ψ(M) ≅ SPm(M) via Ler and τ", h_dc, pr["isomorphism"], pr)

    # identity morphism --------------------------------------------------------------
    ident = induced_frame_morphism(an, an, list(range(M.size)))
    add("identity-frame-morphism", "framemor", "the identity induces a frame morphism of Ψ(M)",
        [h_prog], ident["frame_morphism"] and ident["roler"])

    if recurse:
        E.extend(_derived_entries(an, h_sig, h_prog, h_qp, h_sh, h_gel))
    return TheoremReport(M.name, E)


def _derived_entries(an: ModuleAnalysis, h_sig, h_prog, h_qp, h_sh, h_gel) -> List[Entry]:
    M, fi, lat = an.M, an.fi, an.lat
    D = Derived(an)
    E: List[Entry] = []
    add = lambda *a, **k: E.append(Entry(*a, **k))  # noqa: E731
    proper = [K for K in lat.members if K != an.zero and K != an.full]
    proper_fi = [K for K in proper if K in fi]

    # preimages and images of fully invariant submodules
    pre_ok, img_ok = True, True
    for K in proper:
        qa, pi = D.quotient(K)
        if K in fi:
            for N2 in qa.fi.members:
                pre_ok &= map_preimage(pi, N2) in fi
        for N1 in fi.members:
            img_ok &= map_image(pi, N1) in qa.fi
    add("fi-preimage-under-projection", "lemmapp",
        "preimages of fi submodules along M → M/K with K fi are fi", [], pre_ok)
    add("fi-image-under-projection", "lemmapp",
        "images of fi submodules along M → M/K are fi", [h_qp], img_ok)

    ok = True
    for N in fi.members:
        if N == an.full:
            continue
        if N == an.zero:
            simple = fi.n == 2
        else:
            simple = D.quotient(N)[0].fi.n == 2
        ok &= (N in an.mx_fi) == simple
    add("max-fi-iff-fi-simple-quotient", "maxFI", "N ∈ mx^fi(M) iff M/N is FI-simple", [h_qp], ok)

    bad = [an.label(K) for K in proper_fi if not D.quotient(K)[0].strongly_harmonic[0]]
    add("sh-quotients", "summandfa", "quotients by fi submodules stay strongly harmonic",
        [h_qp, h_sh], not bad, {"failing": bad} if bad else None)
    bad = [an.label(K) for K in proper if not D.quotient(K)[0].gelfand[0]]
    add("gelfand-quotients", "summandgel", "all quotients stay Gelfand", [h_qp, h_gel], not bad,
        {"failing": bad} if bad else None)

    # projections M → M/K, K fully invariant
    ro, idm, fm = True, True, True
    hyp_targets = []
    for K in proper_fi:
        qa, pi = D.quotient(K)
        rec = induced_frame_morphism(an, qa, pi)
        ro &= rec["roler"]
        tgt_ok = qa.strongly_harmonic[0] and qa.self_progenerator_proxy
        hyp_targets.append(tgt_ok)
        if tgt_ok:
            idm &= rec["ler_rho_sums"] and rec["ler_rho_meets"] and rec["ler_rho_into_psi"]
            fm &= rec["frame_morphism"]
    all_targets = all(hyp_targets)
    h_tgt = ("every quotient M/K strongly harmonic self-progenerator",
             _status(all_targets, proxy=True))
    add("ler-under-projection", "roler", "ρ Ler(L) ≤ Ler ρ(L) for ρ: M → M/K", [h_sig], ro)
    add("ler-projection-idiom-morphism", "idmorf", "Ler∘ρ preserves sums and intersections",
        [h_qp, h_tgt], idm)
    add("psi-projection-frame-morphism", "framemor", "ρ restricts to a frame morphism Ψ(M) → Ψ(M/K)",
        [h_prog, h_tgt], fm)

    # fully invariant direct summands
    pairs = [(A, B) for A in proper_fi for B in proper_fi
             if A < B and A & B == an.zero and M.sum(A, B) == an.full]
    ok, seen = True, []
    for A, B in pairs:
        sa, sb = D.summand(A).strongly_harmonic[0], D.summand(B).strongly_harmonic[0]
        ok &= an.strongly_harmonic[0] == (sa and sb)
        seen.append([an.label(A), an.label(B), sa, sb])
    add("sh-fi-summands", "shdirsum", "M strongly harmonic iff its fi summands are", [h_qp], ok,
        {"decompositions": seen})

    # M^(2)
    M2, a2 = D.square()
    cap_ok = M2 is not None
    h_cap = ("derived module within size cap", _status(cap_ok))
    if not cap_ok:
        for ident, tag in (("sh-square", "dirsumfa"), ("fi-lattice-of-square", "isosumafi"),
                           ("max-fi-of-square", "isosumafi")):
            add(ident, tag, "statement about M^(2)", [h_cap], True, {"reason": a2})
        return E
    n = M.size

    def square_of(N):
        return sum(1 << (a * n + b) for a in iter_bits(N) for b in iter_bits(N))

    add("sh-square", "dirsumfa", "M^(2) is strongly harmonic", [h_qp, h_sh, h_cap],
        a2.strongly_harmonic[0])
    images = [square_of(N) for N in fi.members]
    iso_ok = sorted(images) == sorted(a2.fi.members) and all(
        (a & ~b == 0) == (images[i] & ~images[j] == 0)
        for i, a in enumerate(fi.members) for j, b in enumerate(fi.members))
    add("fi-lattice-of-square", "isosumafi", "N ↦ N^(2) is a lattice isomorphism Λ^fi(M) → Λ^fi(M^(2))",
        [h_cap], iso_ok)
    add("max-fi-of-square", "isosumafi", "N ↦ N^(2) restricts to mx^fi(M) → mx^fi(M^(2))",
        [h_qp, h_cap], sorted(square_of(m) for m in an.mx_fi) == sorted(a2.mx_fi),
        {"square_quasi_duo": a2.quasi_duo[0], "square_gelfand": a2.gelfand[0]})
    return E


def audit_summary(report: TheoremReport) -> str:
    c = report.counts()
    return f"{report.module}: {c[PASS]} PASS, {c[UNMET]} HYPOTHESES-UNMET, {c[VIOLATED]} VIOLATED"
