"""Chow-Kunneth decompositions: cellular construction, the lift, batteries."""

import pytest

from chowkit import (
    CKDecomposition,
    build_lift_plan,
    cellular_ck,
    ck_battery,
    compare_lift_to_cellular,
    diagonal,
    grassmannian,
    hirzebruch,
    lift_base_correspondence,
    lift_ck,
    point,
    product_model,
    projective_space,
    verify_action_window,
    verify_block_diagonality,
    verify_ck,
    zero_correspondence,
)
from chowkit.correspondences import act
from chowkit.murre import LiftPlan


def test_cellular_ck_point_is_the_diagonal():
    pt = point()
    ck = cellular_ck(pt)
    assert ck.top_degree == 0
    assert ck.projector(0) == diagonal(pt)
    assert ck.report is not None and ck.report.passed


def test_cellular_ck_p2():
    p2 = projective_space(2)
    ck = cellular_ck(p2)
    assert ck.name == "cellular CK of P^2"
    assert set(ck.projectors) == {0, 1, 2, 3, 4}
    for k in (1, 3):
        assert ck.projector(k).is_zero()
    # even projector 2i acts as the identity on codim i and kills the rest
    for i in range(3):
        proj = ck.projector(2 * i)
        for cell in p2.cells:
            want = p2.basis_cycle(cell) if cell.codim == i else p2.zero()
            assert act(proj, p2.basis_cycle(cell)) == want


def test_cellular_ck_sums_to_diagonal():
    g = grassmannian(2, 4)
    ck = cellular_ck(g)
    total = zero_correspondence(g, g, 0)
    for p in ck.projectors.values():
        total = total + p
    assert total == diagonal(g)


def test_decomposition_container_validation():
    p1 = projective_space(1)
    ck = cellular_ck(p1)
    with pytest.raises(ValueError, match="unknown projector kind"):
        CKDecomposition(p1, dict(ck.projectors), kind="matrix")
    missing = {k: v for k, v in ck.projectors.items() if k != 2}
    with pytest.raises(ValueError, match="every degree"):
        CKDecomposition(p1, missing, kind="cycle")
    p2 = projective_space(2)
    alien = dict(ck.projectors)
    alien[0] = diagonal(p2)
    with pytest.raises(ValueError, match="self-correspondence"):
        CKDecomposition(p1, alien, kind="cycle")


def test_verify_ck_reports_conditions():
    report = verify_ck(cellular_ck(projective_space(2), validate=False))
    assert report.passed
    names = [n for n, _, _ in report.conditions]
    assert "(a) idempotence" in names
    assert "(a) orthogonality" in names
    assert "(a) completeness (sum = diagonal)" in names
    assert any(n.startswith("(b) action window") for n in names)
    # condition (c) is declared, never evaluated
    assert ("condition (c)", "not checked - out of scope", []) in report.conditions
    d = report.to_dict()
    assert d["check"] == "chow-kunneth" and d["passed"]
    assert d["action"]["check"] == "action-window"


def test_verify_ck_catches_a_duplicated_projector():
    p1 = projective_space(1)
    ck = cellular_ck(p1)
    projs = dict(ck.projectors)
    projs[2] = projs[0]  # still idempotent, no longer orthogonal or complete
    broken = CKDecomposition(p1, projs, kind="cycle", name="broken")
    report = verify_ck(broken)
    assert not report.passed
    status = {n: s for n, s, _ in report.conditions}
    assert status["(a) idempotence"] == "pass"
    assert status["(a) orthogonality"] == "FAIL"
    assert status["(a) completeness (sum = diagonal)"] == "FAIL"
    with pytest.raises(ValueError, match="base decomposition fails"):
        lift_ck(hirzebruch(1), base_ck=broken)


def test_action_window_cellular():
    rep = verify_action_window(cellular_ck(projective_space(2)))
    assert rep.passed
    support = sorted((k, j, r) for (k, j), r in rep.table.items() if r)
    assert support == [(0, 0, 1), (2, 1, 1), (4, 2, 1)]
    assert rep.projector_rank(2) == 1 and rep.projector_rank(3) == 0
    assert rep.lines()[0].startswith("action support of cellular CK of P^2")
    assert rep.lines()[-1] == "  window violations: none"


def test_action_window_flags_out_of_window_rank():
    # swap the P^1 projectors: degree 0 now acts on codim 1 and vice versa,
    # both outside j <= k <= 2j
    p1 = projective_space(1)
    ck = cellular_ck(p1)
    projs = dict(ck.projectors)
    projs[0], projs[2] = projs[2], projs[0]
    swapped = CKDecomposition(p1, projs, kind="cycle", name="swapped")
    rep = verify_action_window(swapped)
    assert not rep.passed
    assert (0, 1, 1) in rep.violations and (2, 0, 1) in rep.violations
    assert any(line.strip() == "window violations:" for line in rep.lines())
    assert not verify_ck(swapped).passed


def test_lift_base_correspondence_odd_degree_is_zero():
    m = hirzebruch(1)
    d = diagonal(m.base)
    op = lift_base_correspondence(m, d, 1)
    y = m.cycle({(0, 1): m.base.cycle({"1": 2, "h": 3})})
    assert op(y).is_zero()
    with pytest.raises(ValueError, match="self-correspondence of the base"):
        lift_base_correspondence(m, diagonal(projective_space(2)), 0)


def test_lift_base_correspondence_even_degree_peels():
    m = hirzebruch(1)
    d = diagonal(m.base)
    y = m.cycle({(0, 1): m.base.cycle({"1": 2, "h": 3}), (1, 1): m.base.cycle({"1": 5})})
    # degree 0 keeps the T[1] slice, degree 2 the T[h] slice
    assert lift_base_correspondence(m, d, 0)(y) == m.cycle({(0, 1): m.base.cycle({"1": 2, "h": 3})})
    assert lift_base_correspondence(m, d, 2)(y) == m.cycle({(1, 1): m.base.cycle({"1": 5})})


def test_lift_plan_partitions_the_grid():
    plan = build_lift_plan(hirzebruch(1))
    assert plan.top == 4
    assert plan.index_set(2) == ((0, 2), (1, 1), (2, 0))
    assert plan.index_set(0) == ((0, 0),)
    assert plan.verify() == []
    assert plan.lines()[0] == "lift plan for hirzebruch(1): degrees 0..4"
    with pytest.raises(ValueError, match="model's base"):
        LiftPlan(hirzebruch(1), cellular_ck(projective_space(2)))


def test_lift_ck_hirzebruch():
    ck = lift_ck(hirzebruch(1))
    assert ck.kind == "operator"
    assert ck.name == "lifted CK of hirzebruch(1)"
    assert ck.report.passed
    rep = verify_action_window(ck)
    assert [rep.projector_rank(k) for k in range(5)] == [1, 0, 2, 0, 1]
    assert rep.passed


def test_lift_ck_product_ranks():
    m = product_model(projective_space(2), projective_space(1))
    rep = verify_action_window(lift_ck(m))
    assert [rep.projector_rank(k) for k in range(7)] == [1, 0, 2, 0, 2, 0, 1]


def test_block_diagonality():
    report = verify_block_diagonality(hirzebruch(1), samples=5, seed=3)
    assert report.passed
    assert report.lines()[0] == "projector system on block diagonality on hirzebruch(1): pass"


def test_ck_battery_reverifies_ambient_extensions():
    report = ck_battery(hirzebruch(1), battery=(point(), projective_space(1)))
    assert report.passed
    names = [name for name, _ in report.entries]
    assert names == ["hirzebruch(1)", "point x hirzebruch(1)", "P^1 x hirzebruch(1)"]


def test_compare_lift_to_cellular_on_trivial_models():
    m = product_model(projective_space(1), projective_space(1))
    report = compare_lift_to_cellular(m)
    assert report.passed
    with pytest.raises(ValueError, match="trivial"):
        compare_lift_to_cellular(hirzebruch(1))
