"""Algebraic laws on randomized data, via hypothesis.

The seeded batteries already cover these identities at fixed sample counts;
here the inputs are adversarial (shrinking included) rather than uniform.
"""

from hypothesis import given, settings, strategies as st

from chowkit import (
    act,
    compose,
    external_product,
    from_kunneth,
    kunneth_product,
    projective_space,
    grassmannian,
    point,
    hirzebruch,
    to_kunneth,
    transpose,
    trivial_fibration,
    Correspondence,
)

P1 = projective_space(1)
P2 = projective_space(2)
GR = grassmannian(2, 4)
RINGS = (point(), P1, P2, GR)

coeffs = st.integers(min_value=-9, max_value=9)


def cycles(ring):
    keys = [c.key for c in ring.cells]
    return st.dictionaries(st.sampled_from(keys), coeffs).map(ring.cycle)


def correspondences(source, target):
    # inhomogeneous allowed: offset=None
    ring2 = kunneth_product(source, target)
    keys = [c.key for c in ring2.cells]
    return st.dictionaries(st.sampled_from(keys), coeffs).map(
        lambda d: Correspondence(source, target, ring2.cycle(d), None)
    )


@given(st.sampled_from(RINGS).flatmap(
    lambda r: st.tuples(st.just(r), cycles(r), cycles(r), cycles(r))))
def test_ring_laws(data):
    ring, a, b, c = data
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert ring.unit() * a == a


@given(st.sampled_from(RINGS).flatmap(
    lambda r: st.tuples(st.just(r), cycles(r), cycles(r))))
def test_degree_is_linear(data):
    ring, a, b = data
    assert ring.degree(a + b) == ring.degree(a) + ring.degree(b)
    assert ring.degree(3 * a) == 3 * ring.degree(a)


@settings(max_examples=40)
@given(correspondences(P1, P2), correspondences(P2, P1), correspondences(P1, P2))
def test_compose_associative(f, g, h):
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@settings(max_examples=40)
@given(correspondences(P1, P2), correspondences(P2, P1))
def test_transpose_antihomomorphism(f, g):
    assert transpose(compose(g, f)) == compose(transpose(f), transpose(g))
    assert transpose(transpose(f)) == f


@settings(max_examples=40)
@given(correspondences(P1, P2), correspondences(P2, P1), cycles(P1))
def test_act_is_functorial(f, g, alpha):
    assert act(compose(g, f), alpha) == act(g, act(f, alpha))


@given(cycles(P1), cycles(P2), cycles(P1), cycles(P2))
def test_external_product_multiplicative(a, b, c, d):
    lhs = external_product(a, b) * external_product(c, d)
    assert lhs == external_product(a * c, b * d)


@given(st.sampled_from((P1, P2)).flatmap(
    lambda r: st.tuples(st.just(r), cycles(kunneth_product(r, P1)))))
def test_kunneth_coordinates_roundtrip(data):
    ring, cyc = data
    model = trivial_fibration(ring, P1)
    assert to_kunneth(model, from_kunneth(model, cyc)) == cyc


@given(cycles(P1), cycles(P1))
def test_projection_formula_on_hirzebruch(beta, gamma):
    m = hirzebruch(1)
    y = m.pullback(beta) * m.generator((1, 1))
    # push(pull(gamma) * y) = gamma * push(y)
    assert m.pushforward(m.pullback(gamma) * y) == gamma * m.pushforward(y)
