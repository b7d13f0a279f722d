"""Motives: cell projectors, rank-one decompositions, the tensor identity."""

import pytest

from chowkit import (
    Motive,
    decompose_model,
    decompose_motive,
    diagonal,
    fiber_projectors,
    grassmannian,
    hirzebruch,
    multiplication_correspondence,
    point,
    product_model,
    projective_space,
    tensor_identity_check,
    unit_motive,
    verify_projector_system,
    zero_correspondence,
)
from chowkit.correspondences import act


def test_fiber_projectors_are_rank_one():
    p2 = projective_space(2)
    ps = fiber_projectors(p2)
    assert len(ps) == len(p2.cells)
    for cell, proj in zip(p2.cells, ps):
        for other in p2.cells:
            got = act(proj, p2.basis_cycle(other))
            want = p2.basis_cycle(cell) if other is cell else p2.zero()
            assert got == want


def test_projector_system_verifies():
    for ring in (point(), projective_space(1), grassmannian(2, 4)):
        report = verify_projector_system(fiber_projectors(ring))
        assert report.passed
        labels = [label for label, _, _ in report.checks]
        assert labels == ["idempotence", "pairwise orthogonality", "completeness (sum = diagonal)"]
        d = report.to_dict()
        assert d["check"] == "projector-system" and d["passed"]


def test_duplicated_projector_breaks_the_system():
    p1 = projective_space(1)
    ps = fiber_projectors(p1)
    report = verify_projector_system([ps[0], ps[0], ps[1]])
    assert not report.passed
    failed = {label for label, ok, _ in report.checks if not ok}
    # each projector is still idempotent; the duplicate wrecks the other two
    assert failed == {"pairwise orthogonality", "completeness (sum = diagonal)"}
    assert any("FAIL" in line for line in report.lines())


def test_projector_system_input_validation():
    with pytest.raises(ValueError, match="empty"):
        verify_projector_system([])
    p1, p2 = projective_space(1), projective_space(2)
    with pytest.raises(ValueError, match="single ring"):
        verify_projector_system([diagonal(p1), diagonal(p2)])


def test_motive_rejects_bad_projectors():
    p2 = projective_space(2)
    # multiplication by h is degree 1 and not idempotent
    mult = multiplication_correspondence(p2, p2.basis_cycle("h"))
    with pytest.raises(ValueError, match="degree 0"):
        Motive(p2, mult)
    # degree 0 but not idempotent: 2 * diagonal
    with pytest.raises(ValueError, match="idempotent"):
        Motive(p2, diagonal(p2) + diagonal(p2))
    p1 = projective_space(1)
    with pytest.raises(ValueError, match="self-correspondence"):
        Motive(p2, diagonal(p1))
    # the zero projector is allowed, whatever its nominal offset
    z = Motive(p2, zero_correspondence(p2, p2, 1), name="zero piece")
    assert z.piece_rank(0) == 0


def test_unit_motive_ranks():
    g = grassmannian(2, 4)
    h = unit_motive(g)
    assert h.name == "h(Gr(2,4))"
    assert tuple(h.piece_rank(p) for p in range(5)) == g.ranks
    assert "Motive" in repr(h)


def test_decompose_p2():
    dec = decompose_motive(projective_space(2))
    assert dec.piece_count == 3
    assert dec.codim_profile() == (0, 1, 2)
    assert [p.name for p in dec.pieces] == ["(P^2, 1)", "(P^2, h)", "(P^2, h^2)"]
    assert dec.report.passed
    assert dec.lines()[0] == "motive decomposition of P^2: 3 piece(s)"
    assert dec.lines()[-1] == "  per-codim rank totals: CH^0=1, CH^1=1, CH^2=1"
    d = dec.to_dict()
    assert d["codim_profile"] == [0, 1, 2]
    assert d["rank_table"]["1"] == [0, 1, 0]


def test_decompose_point():
    dec = decompose_motive(point())
    assert dec.piece_count == 1
    assert dec.codim_profile() == (0,)


def test_decompose_grassmannian():
    dec = decompose_motive(grassmannian(2, 4))
    assert dec.piece_count == 6
    # two middle cells: s[2] and s[1,1]
    assert dec.codim_profile() == (0, 1, 2, 2, 3, 4)
    assert dec.pieces[4].name == "(Gr(2,4), s[2,1])"
    for piece in dec.pieces:
        assert sum(piece.piece_rank(p) for p in range(5)) == 1


def test_decompose_model_hirzebruch():
    dec = decompose_model(hirzebruch(2))
    assert dec.piece_count == 4
    assert dec.rank_profile() == (1, 2, 1)
    assert [(label, codim) for label, codim, _ in dec.pieces] == [
        ("(T[1], 1)", 0),
        ("(T[1], h)", 1),
        ("(T[h], 1)", 1),
        ("(T[h], h)", 2),
    ]
    assert dec.lines()[0] == "motive decomposition of hirzebruch(2): 4 piece(s)"
    d = dec.to_dict()
    assert d["rank_profile"] == [1, 2, 1] and d["passed"]


def test_decompose_model_pieces_act_as_projections():
    m = hirzebruch(1)
    dec = decompose_model(m)
    ops = {label: op for label, _, op in dec.pieces}
    y = m.cycle({(0, 1): m.base.cycle({"1": 3, "h": 5}), (1, 1): m.base.cycle({"1": 7, "h": 2})})
    total = m.zero()
    for op in ops.values():
        total = total + op(y)
    assert total == y
    piece = ops["(T[h], 1)"](y)
    assert piece == m.cycle({(1, 1): 7 * m.base.unit()})


def test_decompose_model_product():
    dec = decompose_model(product_model(projective_space(1), projective_space(2)))
    assert dec.piece_count == 6
    assert dec.rank_profile() == (1, 2, 2, 1)


def test_tensor_identity_small_pairs():
    p1, p2 = projective_space(1), projective_space(2)
    for left, right in ((p1, p1), (p2, p1), (p1, p2)):
        report = tensor_identity_check(left, right)
        assert report.passed, "\n".join(report.lines())
    report = tensor_identity_check(p1, p1)
    assert report.name == "P^1 x P^1 tensor identity"
    # one group of checks per product basis cell
    assert len(report.checks) == 4
