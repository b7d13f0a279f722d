"""Composition identities between correspondences, multiplication operators
and morphism graphs, checked exactly on seeded random data.

Composing with a multiplication operator is multiplication of the
underlying cycle by an external factor; composing with a morphism graph is
pullback or pushforward of the underlying cycle along a product morphism.
run_identity_battery checks all six shapes of this statement, plus graph
functoriality over an ambient factor and associativity of composition.
compose_oracle recomputes a composition the long way round, on the triple
product, and the oracle battery plays it against the direct contraction and
against matrix composition.
"""

from __future__ import annotations

from .correspondences import (
    Correspondence,
    _demote,
    _external_into,
    action_matrix,
    act,
    compose,
    diagonal,
    graph_from_morphism,
    identity_morphism,
    multiplication_correspondence,
    MorphismData,
    product_morphism,
    tensor,
)
from .linalg import mat_mul
from .motives import SystemReport
from .rings import kunneth_product
from .sampling import random_correspondence, random_cycle, seeded_rng


def collapse_morphism():
    """The plane collapsed onto a line through a point: the pullback kills
    the hyperplane class, the pushforward keeps only the point class."""
    from .catalog import projective_space

    p1, p2 = projective_space(1), projective_space(2)
    pull = {"1": p2.unit(), "h": p2.zero()}
    push = {"1": p1.zero(), "h": p1.zero(), "h^2": p1.basis_cycle((1, 1))}
    return MorphismData(p2, p1, pull, push, name="P^2 -> P^1 collapse")


def standard_morphisms():
    """Validated morphism data over the pair (P^1, P^2): identities,
    product projections, constants, a linear embedding and a collapse."""
    from .catalog import linear_embedding, projective_space
    from .correspondences import projection_morphism

    p1, p2 = projective_space(1), projective_space(2)
    prod = kunneth_product(p1, p2)
    return (
        identity_morphism(p1),
        identity_morphism(p2),
        projection_morphism(prod, "left"),
        projection_morphism(prod, "right"),
        constant_to_point(p1),
        constant_to_point(p2),
        linear_embedding(1, 2),
        collapse_morphism(),
    )


def constant_to_point(ring):
    from .catalog import point
    from .correspondences import constant_morphism

    return constant_morphism(ring, point())


def _random_offset(rng, source, target):
    return rng.randint(-source.dimension, target.dimension)


def run_identity_battery(left=None, right=None, samples=100, seed=0, bound=10):
    """Check the six composition identities, graph functoriality over an
    ambient line, and associativity; every instance is an exact cycle
    comparison."""
    from .catalog import projective_space

    X = left if left is not None else projective_space(1)
    Z = right if right is not None else projective_space(2)
    ring = kunneth_product(X, Z)
    rng = seeded_rng(seed)
    report = SystemReport(f"composition identities over ({X.name}, {Z.name})")

    morphisms = standard_morphisms()
    into_Z = [m for m in morphisms if m.target is Z]
    from_Z = [m for m in morphisms if m.source is Z]
    into_X = [m for m in morphisms if m.target is X]
    graphs = {m.name: graph_from_morphism(m) for m in morphisms}

    fails = []
    for s in range(samples):
        alpha = random_cycle(rng, Z, bound=bound, codim=rng.randint(0, Z.dimension))
        phi = random_correspondence(rng, X, Z, offset=_random_offset(rng, X, Z), bound=bound)
        want = phi.cycle * _external_into(ring, X.unit(), alpha)
        if compose(multiplication_correspondence(Z, alpha), phi).cycle != want:
            fails.append(f"sample {s}: alpha {alpha!r}")
    report.add(f"c_alpha o phi = (1 x alpha) . phi ({samples} instances)", fails)

    fails = []
    for s in range(samples):
        alpha = random_cycle(rng, X, bound=bound, codim=rng.randint(0, X.dimension))
        psi = random_correspondence(rng, X, Z, offset=_random_offset(rng, X, Z), bound=bound)
        want = _external_into(ring, alpha, Z.unit()) * psi.cycle
        if compose(psi, multiplication_correspondence(X, alpha)).cycle != want:
            fails.append(f"sample {s}: alpha {alpha!r}")
    report.add(f"psi o c_alpha = (alpha x 1) . psi ({samples} instances)", fails)

    # graphs composed on the left: pullback and pushforward of the cycle
    prods_3 = {m.name: product_morphism(identity_morphism(X), m) for m in into_Z}
    fails = []
    for s in range(samples):
        f = into_Z[s % len(into_Z)]
        c, _ = graphs[f.name]
        phi = random_correspondence(rng, X, Z, offset=_random_offset(rng, X, Z), bound=bound)
        if compose(c, phi).cycle != prods_3[f.name].pullback(phi.cycle):
            fails.append(f"sample {s}: morphism {f.name}")
    report.add(f"c(f) o phi = (id x f)^* phi ({samples} instances)", fails)

    prods_4 = {m.name: product_morphism(identity_morphism(X), m) for m in from_Z}
    fails = []
    for s in range(samples):
        g = from_Z[s % len(from_Z)]
        _, c_t = graphs[g.name]
        phi = random_correspondence(rng, X, Z, offset=_random_offset(rng, X, Z), bound=bound)
        if compose(c_t, phi).cycle != prods_4[g.name].pushforward(phi.cycle):
            fails.append(f"sample {s}: morphism {g.name}")
    report.add(f"c(g)^t o phi = (id x g)_* phi ({samples} instances)", fails)

    prods_56 = {m.name: product_morphism(m, identity_morphism(Z)) for m in into_X}
    fails = []
    for s in range(samples):
        f = into_X[s % len(into_X)]
        c, _ = graphs[f.name]
        tau = random_correspondence(
            rng, f.source, Z, offset=_random_offset(rng, f.source, Z), bound=bound
        )
        if compose(tau, c).cycle != prods_56[f.name].pushforward(tau.cycle):
            fails.append(f"sample {s}: morphism {f.name}")
    report.add(f"tau o c(f) = (f x id)_* tau ({samples} instances)", fails)

    fails = []
    for s in range(samples):
        f = into_X[s % len(into_X)]
        _, c_t = graphs[f.name]
        psi = random_correspondence(rng, X, Z, offset=_random_offset(rng, X, Z), bound=bound)
        if compose(psi, c_t).cycle != prods_56[f.name].pullback(psi.cycle):
            fails.append(f"sample {s}: morphism {f.name}")
    report.add(f"psi o c(f)^t = (f x id)^* psi ({samples} instances)", fails)

    _graph_functoriality(report, morphisms)
    _associativity(report, rng, X, Z, samples, bound)
    return report


def _graph_functoriality(report, morphisms, ambient=None):
    """Tensoring a graph with a diagonal acts as the product morphism."""
    from .catalog import projective_space

    T = ambient if ambient is not None else projective_space(1)
    d = diagonal(T)
    fails = []
    count = 0
    for m in morphisms:
        c, c_t = graph_from_morphism(m)
        pm = product_morphism(identity_morphism(T), m)
        big_target = kunneth_product(T, m.target)
        big_source = kunneth_product(T, m.source)
        tc, tct = tensor(d, c), tensor(d, c_t)
        for cell in big_target.cells:
            count += 1
            cyc = big_target.basis_cycle(cell)
            if act(tc, cyc) != pm.pullback(cyc):
                fails.append(f"pullback of {cell.label} along id x {m.name}")
        for cell in big_source.cells:
            count += 1
            cyc = big_source.basis_cycle(cell)
            if act(tct, cyc) != pm.pushforward(cyc):
                fails.append(f"pushforward of {cell.label} along id x {m.name}")
    report.add(f"graphs extend over an ambient factor ({count} instances)", fails)


def _associativity(report, rng, X, Z, samples, bound):
    fails = []
    for s in range(samples):
        f = random_correspondence(rng, X, Z, offset=_random_offset(rng, X, Z), bound=bound)
        g = random_correspondence(rng, Z, X, offset=_random_offset(rng, Z, X), bound=bound)
        h = random_correspondence(rng, X, Z, offset=_random_offset(rng, X, Z), bound=bound)
        if compose(h, compose(g, f)) != compose(compose(h, g), f):
            fails.append(f"sample {s}")
    report.add(f"composition is associative ({samples} instances)", fails)


# -- triple-product oracle ----------------------------------------------------


def compose_oracle(g, f):
    """Composition computed the long way round.

    Both cycles are pulled up to the triple product (A x B) x C, multiplied
    there, and the middle factor is integrated out; returns the resulting
    cycle on A x C."""
    if f.target is not g.source:
        raise ValueError("composition mismatch: f must land where g starts")
    A, B, C = f.source, f.target, g.target
    AB = kunneth_product(A, B)
    AC = kunneth_product(A, C)
    triple = kunneth_product(AB, C)

    lift_f = _external_into(triple, f.cycle, C.unit())
    unit_a = A.cells_of_codim(0)[0]
    data = {}
    for key, coeff in g.cycle.coeffs.items():
        b_key, c_key = g.cycle.ring.split_cell(key)
        ab = AB.pair_cell(unit_a, b_key)
        data[triple.pair_cell(ab, c_key).key] = coeff
    lift_g = triple.cycle(data, mode=g.cycle.mode)

    prod = lift_f * lift_g
    out = AC.zero(mode=prod.mode)
    for key, coeff in prod.coeffs.items():
        ab_key, c_key = triple.split_cell(key)
        a_key, b_key = AB.split_cell(ab_key)
        weight = B.degree(B.basis_cycle(b_key, mode=prod.mode))
        if weight:
            out = out + AC.cycle({AC.pair_cell(a_key, c_key).key: coeff * weight}, mode=prod.mode)
    return _demote(out)


def compose_oracle_battery(rings=None, samples=100, seed=0, bound=10):
    """Direct contraction vs triple-product oracle vs matrix composition,
    on random degree-0 correspondences for every ordered ring pair."""
    from .catalog import grassmannian, projective_space

    if rings is None:
        rings = (projective_space(1), projective_space(2), grassmannian(2, 4))
    report = SystemReport("composition oracle")
    for na, A in enumerate(rings):
        for nb, B in enumerate(rings):
            rng = seeded_rng(seed * 997 + 31 * na + nb)
            fails = []
            for s in range(samples):
                f = random_correspondence(rng, A, B, offset=0, bound=bound)
                g = random_correspondence(rng, B, A, offset=0, bound=bound)
                comp = compose(g, f)
                if comp.cycle != compose_oracle(g, f):
                    fails.append(f"sample {s}: contraction differs from the oracle")
                    continue
                for p in range(A.dimension + 1):
                    direct = action_matrix(comp, p)
                    if B.rank(p):
                        chained = mat_mul(action_matrix(g, p), action_matrix(f, p))
                    else:
                        # factoring through an empty group: must be zero
                        chained = tuple((0,) * A.rank(p) for _ in range(A.rank(p)))
                    if direct != chained:
                        fails.append(f"sample {s}: matrices differ on codim {p}")
                        break
            report.add(f"{A.name} => {B.name} => {A.name} ({samples} instances)", fails)
    return report
