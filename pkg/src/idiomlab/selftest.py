"""The acceptance criteria as a runnable self-check (used by ``idiomlab selftest``)."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Tuple

from . import limits
from .audit import VIOLATED, theorem_audit
from .catalog import build_instance, catalog_get, catalog_names
from .finalg import iter_bits
from .ptfree import is_normal_lattice
from .report import build_report, dumps
from .sublat import check_star_condition, product
from .theory import (ModuleAnalysis, psi_regular, psi_spm_isomorphism, r_operator_regular,
                     ler_oracles, sp_oracles, spm_oracles, theta_homeomorphism)
from .fintop import frames_isomorphic, open_set_frame


def _analysis(name: str) -> ModuleAnalysis:
    return ModuleAnalysis(build_instance(catalog_get(name))[1])


def _subset(M, pred) -> int:
    return sum(1 << x for x in range(M.size) if pred(M.labels[x]))


def criterion_triangular() -> Tuple[bool, str]:
    an = _analysis("triangular-Z2")
    M = an.M
    J1 = _subset(M, lambda s: s.endswith(",0]]"))
    J2 = _subset(M, lambda s: s.startswith("[[0,"))
    sh, w = an.strongly_harmonic
    rep = theorem_audit(an)
    ok = (not sh and w == (J1, J2) and an.fi.n == 5 and len(an.mx_fi) == 2
          and is_normal_lattice(an.fi)[0] is False and not rep.violations()
          and an.psi_frame is not None and an.spm.n > 0)
    return ok, f"witness={an.labels(w) if w else None}, |Λ^fi|={an.fi.n}"


def criterion_star() -> Tuple[bool, str]:
    an = _analysis("Z2xZ2-over-F2")
    M = an.M
    ok, w = check_star_condition(an.lat, an.lat)
    target = _subset(M, lambda s: s in ("(0,0)", "(1,0)"))
    good = (not ok) and w == target and product(M, w, M.full) == M.full
    return good, f"witness={an.label(w) if w is not None else None}"


def criterion_gelfand_pair() -> Tuple[bool, str]:
    a = _analysis("Z2+Z3")
    b = _analysis("(Z2+Z3)^2")
    qd_b, w = b.quasi_duo
    rep = theorem_audit(b, recurse=False)
    shduo = [e for e in rep.entries if e.id == "gelfand-iff-sh-and-quasi-duo"]
    ok = (a.gelfand[0] and a.quasi_duo[0] and not qd_b and w in b.mx and not b.gelfand[0]
          and shduo and shduo[0].label != VIOLATED)
    return ok, f"square maximal witness={b.label(w) if w else None}"


def criterion_z12() -> Tuple[bool, str]:
    an = _analysis("Z12")
    M = an.M

    def mult(d):
        return sum(1 << x for x in range(12) if x % d == 0)

    spec = sorted(an.spec) == sorted([mult(2), mult(3)])
    sp = sp_oracles(an)[0] == sorted([mult(6), mult(2), mult(3), mult(1)])
    spm = spm_oracles(an)[0] == sp_oracles(an)[0]
    psi = sorted(an.psi) == sorted([mult(12), mult(3), mult(4), mult(1)])
    th = theta_homeomorphism(an)["homeomorphism"]
    o_mx = open_set_frame(an.spaces["mx"])
    iso = frames_isomorphic(an.psi_frame, o_mx)[0] and frames_isomorphic(an.psi_frame, an.spm)[0]
    iso = iso and psi_spm_isomorphism(an)["isomorphism"]
    cls = (an.strongly_harmonic[0] and an.gelfand[0] and an.pm[0] and an.quasi_duo[0])
    ok = spec and sp and spm and psi and th and iso and cls
    return ok, f"Spec={an.labels(an.spec)} Ψ={an.labels(an.psi)}"


def _report_text(name: str) -> str:
    spec = catalog_get(name)
    an = ModuleAnalysis(build_instance(spec)[1])
    return dumps(build_report(spec, an, theorem_audit(an)))


def all_instances() -> List[str]:
    return catalog_names(include_quotients=True)


def run_reports(names: List[str], jobs: int = 1) -> List[str]:
    if jobs <= 1:
        return [_report_text(n) for n in names]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_report_text, names))


def criterion_closure(jobs: int = 8) -> Tuple[bool, str]:
    import json

    names = all_instances()
    one = run_reports(names, 1)
    many = run_reports(names, jobs)
    bad = []
    for n, text in zip(names, one):
        entries = json.loads(text)["audit"]["entries"]
        bad += [f"{n}:{e['id']}" for e in entries if e["label"] == VIOLATED]
    same = one == many
    return (not bad) and same, f"{len(names)} instances, violations={bad}, identical={same}"


def criterion_oracles() -> Tuple[bool, str]:
    fails = []
    for n in all_instances():
        an = _analysis(n)
        if sp_oracles(an)[0] != sp_oracles(an)[1]:
            fails.append(f"{n}:SP")
        if spm_oracles(an)[0] != spm_oracles(an)[1]:
            fails.append(f"{n}:SPm")
        if an.quasi_projective[0] and any(a != b for a, b in ler_oracles(an).values()):
            fails.append(f"{n}:Ler")
        if an.strongly_harmonic[0] and psi_regular(an)[0] != r_operator_regular(an)[0]:
            fails.append(f"{n}:regular")
    return not fails, f"failures={fails}"


STRUCTURAL = ("lattices-modular", "nucleus-laws", "closed-set-identities", "cover-chain[",
              "normal-space-vs-fixed-lattice")


def criterion_structural() -> Tuple[bool, str]:
    fails = []
    for n in all_instances():
        rep = theorem_audit(_analysis(n), recurse=False)
        for e in rep.entries:
            if any(e.id.startswith(p) for p in STRUCTURAL) and e.label != "PASS":
                fails.append(f"{n}:{e.id}")
    return not fails, f"failures={fails}"


CRITERIA: List[Tuple[int, str, float, Callable]] = [
    (1, "triangular ring counterexample", 5, criterion_triangular),
    (2, "(⋆) failure on Z2xZ2", 2, criterion_star),
    (3, "Gelfand positive/negative pair", 10, criterion_gelfand_pair),
    (4, "Z12 golden values", 5, criterion_z12),
    (5, "theorem audit closure", 300, criterion_closure),
    (6, "two-oracle agreement", 300, criterion_oracles),
    (7, "structural invariants", 300, criterion_structural),
]


def run(jobs: int = 8, emit=print) -> bool:
    all_ok = True
    for num, title, budget, fn in CRITERIA:
        t0 = time.perf_counter()
        ok, info = fn(jobs) if fn is criterion_closure else fn()
        dt = time.perf_counter() - t0
        ok = ok and dt < budget
        all_ok &= ok
        emit(f"{'PASS' if ok else 'FAIL'} criterion {num}: {title} ({dt:.2f}s) {info}")
    return all_ok
