import pytest

from hypersym import checks as C
from hypersym.catalog import READINGS, lookup
from hypersym.checks import DEFAULT_EP


def statuses(rows):
    return {r.name: r.status for r in rows}


def test_elliptic_params_cycle():
    kinds = [C.elliptic_params(j).bracket.variant for j in range(6)]
    assert kinds[:3] == [DEFAULT_EP.bracket.variant, "trigonometric", "rational"]
    assert kinds[3:] == kinds[:3]


def test_composition_rows():
    rows = C.verify_composition_consistency(0, 5)
    assert all(r.passed for r in rows), [r for r in rows if not r.passed]
    names = {r.name for r in rows}
    assert "mn1EBDT1.h.mn1EBDT1" in names
    first = next(r for r in rows if r.name == "mn1EBDT1.h.mn1EBDT1")
    assert first.detail["target"] == "EBaileyT1" and first.detail["h"] == {"c3": "c4", "c4": "c3"}


def test_symbolic_compose_of_involution_is_identity():
    t = lookup("EBaileyT1")
    img = C.compose([t, t], "E10")
    assert img.key() == C.identity_image("E10").key()


def test_composition_detects_wrong_target():
    seq = [lookup("LMN"), lookup("LKN")]
    row = C.certify_sequence("LKN.LMN", seq, lookup("LMN"), samples=3)
    assert not row.passed


@pytest.mark.parametrize("shape,word,target", C.COSET_WORDS)
def test_coset_word_replays(shape, word, target):
    row = C.certify_sequence(word, C.word_sequence(word, shape), lookup(target), samples=5)
    assert row.passed, row.detail


def test_invariants():
    rows = C.check_invariants(0, 5)
    assert rows and all(r.passed for r in rows), [r for r in rows if not r.passed]


def test_invariant_with_printed_denominator_fails():
    from dataclasses import replace
    from hypersym.prefactor import Prefactor
    base = C.INVARIANT_FORMS["Hardy10E9"]
    bad = replace(base, normalizer=Prefactor(base.normalizer.num, Prefactor.parse(["[[s]]_N"]).num),
                  generators=("b",))
    assert not C.check_invariants(0, 5, forms=[bad])[0].passed


@pytest.mark.parametrize("src,dst", C.DEGENERATIONS)
def test_degenerations(src, dst):
    row = C.check_degeneration(src, dst, 0, 5)
    assert row.passed, row.detail


def test_canonicalization():
    rows = C.check_canonicalization(0, 3)
    assert len(rows) == 30 and all(r.passed for r in rows)
    assert all(r.detail["idempotent"] for r in rows)


def test_hardy_s5():
    row = C.check_hardy_s5(points=3, perms=5)
    assert row.passed and row.detail["worst_deviation"] < 1e-10


def test_typos_small():
    res = C.resolve_typos(0, 8)
    rows = res["ambiguities"] + res["corrections"]
    assert [r["identity"] for r in res["ambiguities"]] == ["ias2", "iars2", "iars3", "las1"]
    for r in rows:
        assert r["status"] == "UNIQUE", r
        if r["identity"] in READINGS:
            assert r["winner"] == {k: READINGS[r["identity"]][k] for k in r["winner"]}


def test_single_point_cannot_separate():
    # one sample is not enough to rule out the wrong LMNKN reading: the row stays OPEN
    res = C.resolve_typos(0, 1, include_corrections=True)
    row = next(r for r in res["corrections"] if r["identity"] == "LMNKN")
    assert row["status"] == "OPEN" and row["winner"] is None
    assert sum(c["valid"] for c in row["candidates"]) == 2
