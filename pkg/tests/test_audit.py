import pytest

from conftest import analysis
from idiomlab.audit import (FAILED, PASS, PROXY, UNMET, VERIFIED, VIOLATED, Entry,
                            audit_summary, theorem_audit)


def test_entry_labels():
    assert Entry("a", "t", "c", [("h", VERIFIED)], True).label == PASS
    assert Entry("a", "t", "c", [("h", VERIFIED)], False).label == VIOLATED
    assert Entry("a", "t", "c", [("h", FAILED)], False).label == UNMET
    assert Entry("a", "t", "c", [("h", FAILED)], True).label == UNMET
    e = Entry("a", "t", "c", [("h", PROXY)], True)
    assert e.label == PASS and e.to_dict()["assumed_by_proxy"] == ["h"]


@pytest.fixture(scope="module")
def z12():
    return theorem_audit(analysis("Z12"))


@pytest.fixture(scope="module")
def tri():
    return theorem_audit(analysis("triangular-Z2"))


def test_z12_applicable_all_pass(z12):
    assert not z12.violations()
    for e in z12.entries:
        if all(st != FAILED for _, st in e.hypotheses):
            assert e.label == PASS, e.id


def test_z12_core_entries_pass(z12):
    for ident in ("ler-idempotent", "psi-is-spm", "points-of-psi", "psi-regular",
                  "gelfand-iff-sh-and-quasi-duo", "sh-gives-hausdorff", "gelfand-chain"):
        assert [e.label for e in z12.by_id(ident)] == [PASS], ident


def test_triangular_labels(tri):
    assert not tri.violations()
    # the strongly harmonic theorems cannot fire
    for ident in ("sh-gives-hausdorff", "sh-gives-normal-mxfi", "psi-is-spm", "ler-idempotent"):
        assert [e.label for e in tri.by_id(ident)] == [UNMET], ident
    # hypothesis-free structure still passes
    for ident in ("max-fi-are-prime", "p-condition-relative-to-fi", "normal-space-vs-fixed-lattice"):
        labels = [e.label for e in tri.by_id(ident)]
        assert labels and set(labels) == {PASS}, ident


def test_gelfand_example_and_square():
    rep = theorem_audit(analysis("Z2+Z3"))
    assert rep.counts()[VIOLATED] == 0 and rep.counts()[UNMET] == 0
    (sq,) = rep.by_id("max-fi-of-square")
    assert sq.detail["square_quasi_duo"] is False and sq.detail["square_gelfand"] is False
    (chain,) = rep.by_id("gelfand-chain")
    assert chain.label == PASS and all(chain.detail.values())


def test_basic_audit_skips_derived():
    full = theorem_audit(analysis("Z6"))
    basic = theorem_audit(analysis("Z6"), recurse=False)
    ids_full = {e.id for e in full.entries}
    ids_basic = {e.id for e in basic.entries}
    assert ids_basic < ids_full
    assert "sh-square" in ids_full and "sh-square" not in ids_basic


def test_entries_are_serialisable(z12):
    import json

    json.dumps(z12.to_dict())
    assert audit_summary(z12).startswith("Z12: ")


def test_star_failure_module_audit_clean():
    rep = theorem_audit(analysis("Z2xZ2-over-F2"))
    assert not rep.violations()
