"""Ring layer: cells, exact cycles, products, pairing, Kunneth."""

from fractions import Fraction

import pytest

from chowkit import (
    BasisCell,
    ChowRing,
    Cycle,
    external_product,
    is_delta_normalized,
    kunneth_product,
    verify_pairing,
)
from chowkit.catalog import grassmannian, point, projective_space


def simple_p2():
    cells = [BasisCell(0, 1, "1"), BasisCell(1, 1, "h"), BasisCell(2, 1, "h^2")]
    products = {((1, 1), (1, 1)): {(2, 1): 1}}
    return ChowRing(2, cells, products, name="P2-by-hand")


def test_ring_construction_basics():
    r = simple_p2()
    assert r.dimension == 2
    assert r.ranks == (1, 1, 1)
    assert r.unit_cell.label == "1"
    assert r.point_cell.label == "h^2"
    assert r.cells_of_codim(1)[0].key == (1, 1)


def test_cell_lookup_by_label_key_and_cell():
    r = simple_p2()
    c = r.cell("h")
    assert r.cell((1, 1)) is c
    assert r.cell(c) is c
    with pytest.raises(ValueError):
        r.cell("nope")
    with pytest.raises(ValueError):
        r.cell((3, 1))


def test_unit_products_implied():
    r = simple_p2()
    h = r.basis_cycle("h")
    assert r.multiply(r.unit(), h) == h
    assert r.multiply(h, r.unit()) == h


def test_products_symmetrized_from_one_order():
    r = simple_p2()
    h = r.basis_cycle("h")
    pt = r.basis_cycle("h^2")
    assert h * h == pt
    assert r.degree(h * h) == 1
    assert (h * pt).is_zero()  # codim 3 truncates


def test_construction_rejects_bad_tables():
    cells = [BasisCell(0, 1, "1"), BasisCell(1, 1, "h"), BasisCell(2, 1, "pt")]
    with pytest.raises(ValueError, match="grading violation"):
        ChowRing(2, cells, {((1, 1), (1, 1)): {(1, 1): 1}})
    with pytest.raises(ValueError, match="unknown cell"):
        ChowRing(2, cells, {((1, 1), (9, 9)): {}})
    with pytest.raises(ValueError, match="unit law"):
        ChowRing(2, cells, {((0, 1), (1, 1)): {(1, 1): 2}})


def test_conflicting_symmetrized_orders_rejected():
    cells = [
        BasisCell(0, 1, "1"),
        BasisCell(1, 1, "a"),
        BasisCell(1, 2, "b"),
        BasisCell(2, 1, "pt"),
    ]
    with pytest.raises(ValueError, match="conflicting"):
        ChowRing(
            2,
            cells,
            {
                ((1, 1), (1, 2)): {(2, 1): 1},
                ((1, 2), (1, 1)): {(2, 1): 2},
            },
        )


def test_missing_unit_or_point_cell_rejected():
    with pytest.raises(ValueError, match="codim 0"):
        ChowRing(1, [BasisCell(1, 1, "h")], {})
    with pytest.raises(ValueError, match="contiguous"):
        ChowRing(
            1,
            [BasisCell(0, 1, "1"), BasisCell(1, 2, "h")],
            {},
        )


def test_associativity_validated():
    cells = [
        BasisCell(0, 1, "1"),
        BasisCell(1, 1, "a"),
        BasisCell(1, 2, "b"),
        BasisCell(2, 1, "u"),
        BasisCell(3, 1, "pt"),
    ]
    # (a*a)*b = u*b = pt but a*(a*b) = a*0 = 0
    bad = {
        ((1, 1), (1, 1)): {(2, 1): 1},
        ((1, 1), (1, 2)): {},
        ((1, 2), (1, 2)): {},
        ((1, 1), (2, 1)): {(3, 1): 1},
        ((1, 2), (2, 1)): {(3, 1): 1},
    }
    with pytest.raises(ValueError, match="associativity"):
        ChowRing(3, cells, bad)
    assert ChowRing(3, cells, bad, validate=False).rank(1) == 2


def test_cycle_arithmetic_exact():
    r = simple_p2()
    h = r.basis_cycle("h")
    x = 3 * h - h
    assert x == 2 * h
    assert x.coefficient("h") == 2
    assert (x - x).is_zero()
    assert (-x).coefficient((1, 1)) == -2


def test_cycle_rejects_float_and_bool_coefficients():
    r = simple_p2()
    with pytest.raises(TypeError):
        Cycle(r, {(1, 1): 0.5})
    with pytest.raises(TypeError):
        Cycle(r, {(1, 1): True})


def test_rational_mode_and_demotion():
    r = simple_p2()
    x = r.basis_cycle("h", mode="rational") * Fraction(1, 2)
    assert x.mode == "rational"
    assert x.coefficient("h") == Fraction(1, 2)
    with pytest.raises(ValueError):
        x.to_integer()
    y = x + x
    assert y.to_integer() == r.basis_cycle("h")
    # integer-mode construction refuses genuine fractions
    with pytest.raises(ValueError):
        Cycle(r, {(1, 1): Fraction(1, 3)})


def test_cross_mode_equality_and_mixing():
    r = simple_p2()
    h = r.basis_cycle("h")
    assert h.to_rational() == h
    assert (h.to_rational() + h).mode == "rational"


def test_homogeneity_helpers():
    r = simple_p2()
    x = r.unit() + r.basis_cycle("h")
    assert not x.is_homogeneous()
    assert x.codims() == [0, 1]
    assert x.component(1) == r.basis_cycle("h")
    with pytest.raises(ValueError):
        x.codim()


def test_degree_reads_point_coefficient():
    r = simple_p2()
    assert r.degree(r.basis_cycle("h^2") * 7) == 7
    assert r.degree(r.basis_cycle("h")) == 0


def test_pairing_matrices_and_report():
    r = simple_p2()
    rep = verify_pairing(r)
    assert rep.passed
    assert rep.matrices[1] == ((1,),)
    assert is_delta_normalized(r)
    text = "\n".join(rep.lines())
    assert "pass" in text
    doc = rep.to_dict()
    assert doc["passed"] is True and doc["check"] == "pairing"


def test_pairing_violation_reported_with_location():
    cells = [BasisCell(0, 1, "1"), BasisCell(1, 1, "h"), BasisCell(2, 1, "pt")]
    r = ChowRing(2, cells, {((1, 1), (1, 1)): {(2, 1): 2}}, name="doubled")
    rep = verify_pairing(r)
    assert not rep.passed
    assert (1, 1, 1, 2) in rep.violations
    assert not is_delta_normalized(r)


def test_dual_cell_same_index_convention():
    g = grassmannian(2, 4)
    assert g.dual_cell("s[1]").label == "s[2,1]"
    assert g.dual_cell("s[2]").label == "s[2]"  # middle cells self-dual here
    assert g.dual_cell("s[1,1]").label == "s[1,1]"
    p2 = projective_space(2)
    assert p2.dual_cell("1").label == "h^2"


def test_kunneth_product_structure():
    p1 = projective_space(1)
    ring = kunneth_product(p1, p1)
    assert ring.dimension == 2
    assert ring.ranks == (1, 2, 1)
    hx = ring.basis_cycle(ring.pair_cell("h", "1"))
    hy = ring.basis_cycle(ring.pair_cell("1", "h"))
    pt = ring.basis_cycle(ring.pair_cell("h", "h"))
    assert hx * hy == pt
    assert (hx * hx).is_zero()
    assert ring.degree(pt) == 1


def test_kunneth_pairing_delta_except_middle():
    # product bases can be ordered delta-normalized everywhere except the
    # middle degree of an even-dimensional product, where the Gram matrix
    # contains a hyperbolic block no basis change removes; the violations
    # must be confined there and form a symmetric permutation matrix
    p1, p2 = projective_space(1), projective_space(2)
    odd = kunneth_product(p1, p2)
    assert is_delta_normalized(odd)
    even = kunneth_product(p1, p1)
    rep = verify_pairing(even)
    assert not rep.passed
    assert {v[0] for v in rep.violations} == {1}
    assert rep.matrices[1] == ((0, 1), (1, 0))
    bigger = kunneth_product(p2, grassmannian(2, 4))
    rep = verify_pairing(bigger)
    assert {v[0] for v in rep.violations} == {3}
    mid = rep.matrices[3]
    n = len(mid)
    assert all(sum(mid[i]) == 1 for i in range(n))
    assert all(mid[i][j] == mid[j][i] for i in range(n) for j in range(n))


def test_kunneth_is_memoized_and_splits():
    p1, p2 = projective_space(1), projective_space(2)
    r1 = kunneth_product(p1, p2)
    assert kunneth_product(p1, p2) is r1
    cell = r1.pair_cell("h", "h^2")
    a, b = r1.split_cell(cell)
    assert p1.cell(a).label == "h" and p2.cell(b).label == "h^2"


def test_external_product_bilinear():
    p1, p2 = projective_space(1), projective_space(2)
    ring = kunneth_product(p1, p2)
    x = 2 * p1.basis_cycle("h")
    y = 3 * p2.basis_cycle("h")
    z = external_product(x, y)
    assert z.ring is ring
    assert z.coefficient(ring.pair_cell("h", "h")) == 6


def test_point_ring_is_degenerate_ring():
    pt = point()
    assert pt.dimension == 0
    assert pt.unit_cell is pt.point_cell
    assert pt.degree(pt.unit()) == 1
    assert is_delta_normalized(pt)


def test_ring_mismatch_raises():
    r1, r2 = projective_space(1), projective_space(2)
    with pytest.raises(ValueError, match="mismatch"):
        r1.basis_cycle("h") + r2.basis_cycle("h")
    with pytest.raises(ValueError):
        r1.multiply(r1.basis_cycle("h"), r2.basis_cycle("h"))
