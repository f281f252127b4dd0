"""Report assembly (JSON) and Graphviz DOT export."""

from __future__ import annotations

import json
from typing import Dict, List, Optional

from .audit import TheoremReport, theorem_audit
from .catalog import SCHEMA_VERSION
from .ptfree import FiniteLattice, _members
from .sublat import check_star_condition, product
from .theory import (ModuleAnalysis, eta_spectral_map, gamma_retraction, ler_oracles,
                     psi_regular, psi_spm_isomorphism, r_operator_regular, sp_oracles,
                     spm_oracles, theta_homeomorphism)


def _flag(pair, an: Optional[ModuleAnalysis] = None) -> dict:
    ok, w = pair
    out = {"value": bool(ok)}
    if not ok and w is not None:
        out["witness"] = _render(w, an)
    return out


def _render(w, an: Optional[ModuleAnalysis]):
    if an is None:
        return w
    if isinstance(w, tuple):
        return [_render(x, an) for x in w]
    if isinstance(w, int):
        return an.label(w)
    return str(w)


def build_report(spec: dict, an: ModuleAnalysis, audit: Optional[TheoremReport]) -> dict:
    M = an.M
    lat, fi = an.lat, an.fi
    star_lat = check_star_condition(lat, lat)
    star = {"value": star_lat[0]}
    if not star_lat[0]:
        w = star_lat[1]
        star["witness"] = an.label(w)
        star["witness_times_M"] = an.label(product(M, w, M.full))
    qp_ok, qp_w = an.quasi_projective
    qp = {"value": qp_ok}
    if not qp_ok:
        qp["witness"] = {"submodule": an.label(qp_w[0]), "map": list(qp_w[1].table)}
    sp_mu, sp_direct = sp_oracles(an)
    spm_tau, spm_meets = spm_oracles(an)
    lo = ler_oracles(an)
    reg_a, reg_w = psi_regular(an)
    reg_b, _ = r_operator_regular(an)
    report = {
        "schema_version": SCHEMA_VERSION,
        "instance": spec.get("name") or M.name,
        "spec": spec,
        "module": {"size": M.size, "ring": M.ring.name, "ring_size": M.ring.size},
        "hypotheses": {
            "quasi_projective": qp,
            "product_associative": _flag(an.associative, an),
            "self_generator": _flag(an.self_generator, an),
            "star_condition_Lambda": star,
            "star_condition_Lambda_fi": {"value": True},
            "sigma_projective_proxy": an.sigma_projective_proxy,
            "self_progenerator_proxy": an.self_progenerator_proxy,
        },
        "lattices": {
            "Lambda": {"size": lat.n, "coatoms": an.labels(an.mx)},
            "Lambda_fi": {"size": fi.n, "members": an.labels(fi.members),
                          "coatoms": an.labels(an.mx_fi)},
        },
        "spectra": {name: {"points": len(an.subspaces[name][2]),
                           "members": an.spaces[name].labels}
                    for name in ("Spec", "LgSpec", "mx", "mx_fi")},
        "frames": {
            "SP": an.labels(sp_mu),
            "SPm": an.labels(spm_tau),
            "Psi": an.labels(an.psi),
        },
        "ler": {an.label(N): (an.label(v) if v is not None else None)
                for N, v in an.ler_table.items()},
        "classifiers": {
            "strongly_harmonic": _flag(an.strongly_harmonic, an),
            "gelfand": _flag(an.gelfand, an),
            "quasi_duo": _flag(an.quasi_duo, an),
            "pm": _flag(an.pm, an),
        },
        "oracles": {
            "SP_mu_vs_semiprime": sp_mu == sp_direct,
            "SPm_tau_vs_maximal_meets": spm_tau == spm_meets,
            "Ler_elementwise_vs_sum_form": all(a == b for a, b in lo.values()),
            "Psi_regular_pseudocomplement": reg_a,
            "Psi_regular_r_operator": reg_b,
        },
        "records": {
            "theta_homeomorphism": theta_homeomorphism(an),
            "psi_spm_isomorphism": psi_spm_isomorphism(an),
            "gamma_retraction": gamma_retraction(an),
            "eta_spectral_map": eta_spectral_map(an),
        },
    }
    if audit is not None:
        report["audit"] = audit.to_dict()
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- DOT --------------------------------------------------------------------------

def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(L: FiniteLattice, title: str, highlight: Optional[List[int]] = None) -> str:
    """Cover relations of L, bottom to top."""
    hl = set(highlight or [])
    lines = [f"digraph {_q(title)} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(L.n):
        style = ", style=filled, fillcolor=lightgrey" if i in hl else ""
        lines.append(f"  n{i} [label={_q(L.labels[i])}{style}];")
    for i in range(L.n):
        above = [j for j in _members(L.up[i]) if j != i]
        for j in above:
            if not any(k != i and k != j and L.leq(k, j) for k in above):
                lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def space_dot(S, title: str) -> str:
    """Specialisation order of a finite space; each node lists its minimal open set."""
    lines = [f"digraph {_q(title)} {{", "  rankdir=BT;", "  node [shape=ellipse];"]
    for i in range(S.n):
        nb = ",".join(S.describe(S.minimal_open(i)))
        lines.append(f"  p{i} [label={_q(S.labels[i] + chr(10) + 'U=' + '{' + nb + '}')}];")
    for i in range(S.n):
        for j in range(S.n):
            # i in the closure of j: every open around i meets j
            if i != j and (S.minimal_open(i) >> j) & 1:
                lines.append(f"  p{j} -> p{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(an: ModuleAnalysis) -> Dict[str, str]:
    out = {"Lambda_fi.dot": hasse_dot(an.fi, "Lambda_fi", [an.fi.index[m] for m in an.mx_fi]),
           "SP.dot": hasse_dot(an.sp, "SP"),
           "SPm.dot": hasse_dot(an.spm, "SPm")}
    if an.psi_frame is not None:
        out["Psi.dot"] = hasse_dot(an.psi_frame, "Psi")
    for name in ("Spec", "LgSpec", "mx", "mx_fi"):
        out[f"{name}.dot"] = space_dot(an.spaces[name], name)
    return out


def run_analysis(spec: dict, audit: str = "all") -> dict:
    """Build the module, analyse it, audit it and assemble the report."""
    from .catalog import build_instance

    name, M = build_instance(spec)
    an = ModuleAnalysis(M)
    rep = theorem_audit(an, recurse=(audit == "all"))
    return build_report(spec, an, rep)
