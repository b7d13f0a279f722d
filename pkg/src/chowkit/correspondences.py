"""Correspondences between cellular rings, and validated morphism data.

A correspondence from A to B is a cycle class on the product ring A x B.  It
acts on cycles of A by pulling back to the product, multiplying, and pushing
down to B; in cell coordinates both the action and composition are pairing
contractions, with degree bookkeeping codim = dim A + r for a correspondence
of degree r.

Morphisms enter as MorphismData: explicit pullback and pushforward tables
validated against the ring axioms (unit, grading, multiplicativity, the
projection formula, adjointness).  graph_from_morphism turns such data into
the correspondence pair acting as pullback and pushforward.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import invert
from .rings import (
    INTEGER,
    RATIONAL,
    BasisCell,
    Cycle,
    kunneth_product,
)

_AUTO = object()


def dual_basis_cycles(ring, p):
    """Cycles e_1..e_m in CH^{n-p} with deg(e_j * tau_{p,k}) = delta_{jk}.

    Exists iff the pairing between CH^{n-p} and CH^p is perfect; for a
    delta-normalized ring e_j is just the same-index cell tau_{n-p,j}.
    """
    n = ring.dimension
    rows = ring.cells_of_codim(n - p)
    cols = ring.cells_of_codim(p)
    if len(rows) != len(cols):
        raise ValueError(
            f"{ring.name}: CH^{n - p} and CH^{p} have different ranks, pairing cannot be perfect"
        )
    try:
        dual = invert(ring.pairing_matrix(n - p))
    except ValueError:
        raise ValueError(f"{ring.name}: pairing at codim {p} is degenerate") from None
    return tuple(
        _demote(Cycle(ring, {rows[i].key: dual[j][i] for i in range(len(rows))}, RATIONAL))
        for j in range(len(cols))
    )


def _demote(cycle):
    try:
        return cycle.to_integer()
    except ValueError:
        return cycle


class Correspondence:
    """A cycle on source x target acting on cycles of the source ring.

    ``offset`` is the degree r with every component of codimension
    dim(source) + r, or None for an inhomogeneous correspondence.  The
    default derives it from the cycle.
    """

    __slots__ = ("source", "target", "ring", "cycle", "offset")

    def __init__(self, source, target, cycle, offset=_AUTO):
        ring = kunneth_product(source, target)
        if cycle.ring is not ring:
            raise ValueError(
                f"correspondence cycle must live on {ring.name}, got {cycle.ring.name}"
            )
        if offset is _AUTO:
            cs = cycle.codims()
            offset = cs[0] - source.dimension if len(cs) == 1 else None
        elif offset is not None:
            want = source.dimension + offset
            if any(p != want for p in cycle.codims()):
                raise ValueError(f"cycle is not homogeneous of codim {want}")
        self.source = source
        self.target = target
        self.ring = ring
        self.cycle = cycle
        self.offset = offset

    # -- algebra -------------------------------------------------------------

    def _require_parallel(self, other):
        if self.source is not other.source or self.target is not other.target:
            raise ValueError("correspondences connect different ring pairs")

    def __add__(self, other):
        if not isinstance(other, Correspondence):
            return NotImplemented
        self._require_parallel(other)
        return Correspondence(self.source, self.target, self.cycle + other.cycle)

    def __sub__(self, other):
        if not isinstance(other, Correspondence):
            return NotImplemented
        self._require_parallel(other)
        return Correspondence(self.source, self.target, self.cycle - other.cycle)

    def __neg__(self):
        return Correspondence(self.source, self.target, -self.cycle, self.offset)

    def __mul__(self, scalar):
        if isinstance(scalar, Correspondence):
            return NotImplemented
        return Correspondence(self.source, self.target, self.cycle * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Correspondence):
            return NotImplemented
        return (
            self.source is other.source
            and self.target is other.target
            and self.cycle == other.cycle
        )

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.cycle))

    def is_zero(self):
        return self.cycle.is_zero()

    def act(self, x):
        return act(self, x)

    def matrix(self, p):
        return action_matrix(self, p)

    def __repr__(self):
        r = "mixed" if self.offset is None else self.offset
        return f"<Correspondence {self.source.name} -> {self.target.name} deg={r} {self.cycle!r}>"


def zero_correspondence(source, target, offset=None):
    ring = kunneth_product(source, target)
    return Correspondence(source, target, ring.zero(), offset)


def act(f, x):
    """Apply a correspondence to a cycle of its source ring.

    Pull back, multiply, push forward; in coordinates the left factor is
    contracted against x through the source ring's degree map.
    """
    if x.ring is not f.source:
        raise ValueError(f"act: cycle lives in {x.ring.name}, not {f.source.name}")
    src = f.source
    coeffs = {}
    for key, c in f.cycle.coeffs.items():
        a, b = f.ring._key_to_pair[key]
        d = src.degree(src.multiply(x, src.basis_cycle(a)))
        if d:
            coeffs[b.key] = coeffs.get(b.key, 0) + c * d
    mode = RATIONAL if (x.mode == RATIONAL or f.cycle.mode == RATIONAL) else INTEGER
    return Cycle(f.target, coeffs, mode)


def compose(g, f):
    """g after f: contract the middle factor through its degree pairing."""
    if f.target is not g.source:
        raise ValueError(
            f"compose: {f.target.name} (target of f) differs from {g.source.name} (source of g)"
        )
    mid = f.target
    ring = kunneth_product(f.source, g.target)
    # cache middle pairings: deg(b * b') for the cells that actually occur
    gsplit = [(g.ring._key_to_pair[k], c) for k, c in g.cycle.coeffs.items()]
    coeffs = {}
    for kf, cf in f.cycle.coeffs.items():
        a, b = f.ring._key_to_pair[kf]
        xb = mid.basis_cycle(b)
        for (b2, c2), cg in gsplit:
            d = mid.degree(mid.multiply(xb, mid.basis_cycle(b2)))
            if d:
                key = ring._pair_to_key[(a.key, c2.key)]
                coeffs[key] = coeffs.get(key, 0) + cf * cg * d
    mode = RATIONAL if RATIONAL in (f.cycle.mode, g.cycle.mode) else INTEGER
    offset = None if f.offset is None or g.offset is None else f.offset + g.offset
    return Correspondence(f.source, g.target, Cycle(ring, coeffs, mode), offset)


def transpose(f):
    """The same cycle viewed on target x source; degree r + dim A - dim B."""
    ring = kunneth_product(f.target, f.source)
    coeffs = {}
    for key, c in f.cycle.coeffs.items():
        a, b = f.ring._key_to_pair[key]
        coeffs[ring._pair_to_key[(b.key, a.key)]] = c
    offset = None
    if f.offset is not None:
        offset = f.offset + f.source.dimension - f.target.dimension
    return Correspondence(f.target, f.source, Cycle(ring, coeffs, f.cycle.mode), offset)


def tensor(f, g):
    """The product correspondence A x C -> B x D of f: A -> B and g: C -> D.

    The factors of the two product rings are reshuffled so the result lives
    on (A x C) x (B x D).
    """
    src = kunneth_product(f.source, g.source)
    tgt = kunneth_product(f.target, g.target)
    big = kunneth_product(src, tgt)
    coeffs = {}
    for kf, cf in f.cycle.coeffs.items():
        a, b = f.ring._key_to_pair[kf]
        for kg, cg in g.cycle.coeffs.items():
            c, d = g.ring._key_to_pair[kg]
            key = big._pair_to_key[
                (src._pair_to_key[(a.key, c.key)], tgt._pair_to_key[(b.key, d.key)])
            ]
            coeffs[key] = cf * cg
    mode = RATIONAL if RATIONAL in (f.cycle.mode, g.cycle.mode) else INTEGER
    offset = None if f.offset is None or g.offset is None else f.offset + g.offset
    return Correspondence(src, tgt, Cycle(big, coeffs, mode), offset)


def correspondence_from_action(source, target, action, offset=0):
    """The unique correspondence of degree ``offset`` with the given action.

    ``action`` maps each basis cell of the source to a cycle on the target
    (callable or mapping; missing entries are zero).  Built by contracting
    the dual basis: u = sum_j e_j x action(tau_{p,j}).
    """
    if callable(action):
        lookup = action
    else:
        table = {source.cell(k).key: v for k, v in action.items()}

        def lookup(cell):
            return table.get(cell.key, target.zero())

    ring = kunneth_product(source, target)
    total = ring.zero()
    for p in range(source.dimension + 1):
        duals = dual_basis_cycles(source, p)
        for cell, e in zip(source.cells_of_codim(p), duals):
            image = lookup(cell)
            if image.is_zero():
                continue
            if image.ring is not target:
                raise ValueError("action must produce cycles on the target ring")
            want = p + offset
            if any(q != want for q in image.codims()):
                raise ValueError(
                    f"action of {cell.label} has codim {image.codims()}, expected {want}"
                )
            total = total + _external_into(ring, e, image)
    return Correspondence(source, target, _demote(total), offset)


def _external_into(ring, a, b):
    """External product a x b landing in the given registered product ring."""
    coeffs = {}
    for ka, ca in a.coeffs.items():
        for kb, cb in b.coeffs.items():
            coeffs[ring._pair_to_key[(ka, kb)]] = ca * cb
    mode = RATIONAL if RATIONAL in (a.mode, b.mode) else INTEGER
    return Cycle(ring, coeffs, mode)


def diagonal(ring):
    """The identity correspondence of a ring with perfect pairings.

    For a delta-normalized basis this is the classical sum of cells paired
    with their same-index duals.
    """
    return correspondence_from_action(ring, ring, ring.basis_cycle, offset=0)


def multiplication_correspondence(ring, alpha):
    """The correspondence acting on CH(ring) as multiplication by alpha."""
    if alpha.ring is not ring:
        raise ValueError("alpha must live in the ring being acted on")
    offset = None
    cs = alpha.codims()
    if len(cs) <= 1:
        offset = cs[0] if cs else 0
        return correspondence_from_action(
            ring, ring, lambda cell: ring.multiply(alpha, ring.basis_cycle(cell)), offset
        )
    # inhomogeneous multiplier: sum the homogeneous pieces
    total = zero_correspondence(ring, ring)
    for p in cs:
        total = total + multiplication_correspondence(ring, alpha.component(p))
    return total


def action_matrix(f, p):
    """Matrix of act(f, -): CH^p(source) -> CH^{p+r}(target) in the cell bases.

    Column j is the image of the j-th codim-p source cell; entry [i][j] is
    its coefficient on the i-th target cell.
    """
    if f.offset is None:
        raise ValueError("action_matrix needs a homogeneous correspondence")
    src_cells = f.source.cells_of_codim(p)
    tgt_cells = f.target.cells_of_codim(p + f.offset)
    images = [act(f, f.source.basis_cycle(c)) for c in src_cells]
    return tuple(
        tuple(images[j].coefficient(tgt_cells[i]) for j in range(len(src_cells)))
        for i in range(len(tgt_cells))
    )


def ambient_act(f, ambient, c):
    """Action of id_ambient x f on a cycle of ambient x source."""
    return act(tensor(diagonal(ambient), f), c)


# -- morphism data -------------------------------------------------------------


class MorphismData:
    """Pullback and pushforward tables of a morphism source -> target.

    ``pullback`` maps target cells to cycles on the source (codim preserved),
    ``pushforward`` maps source cells to cycles on the target (codim shifted
    by dim target - dim source); missing entries are zero.  Construction
    validates the ring axioms these tables must satisfy: unit and
    multiplicativity of the pullback, degree preservation of the pushforward
    on zero-cycles, the projection formula, and adjointness under the degree
    pairings.
    """

    def __init__(self, source, target, pullback, pushforward, name=None, validate=True):
        self.source = source
        self.target = target
        self.name = name or f"{source.name} -> {target.name}"
        self.shift = target.dimension - source.dimension
        self._pull = {}
        for spec, cyc in pullback.items():
            cell = target.cell(spec)
            if cyc.ring is not source:
                raise ValueError(f"pullback of {cell.label} must live on {source.name}")
            if not cyc.is_zero() and cyc.codims() != [cell.codim]:
                raise ValueError(f"pullback of {cell.label} must preserve codim {cell.codim}")
            self._pull[cell.key] = cyc
        self._push = {}
        for spec, cyc in pushforward.items():
            cell = source.cell(spec)
            if cyc.ring is not target:
                raise ValueError(f"pushforward of {cell.label} must live on {target.name}")
            want = cell.codim + self.shift
            if not cyc.is_zero():
                if not 0 <= want <= target.dimension:
                    raise ValueError(f"pushforward of {cell.label} must vanish (codim {want})")
                if cyc.codims() != [want]:
                    raise ValueError(f"pushforward of {cell.label} must have codim {want}")
            self._push[cell.key] = cyc
        if validate:
            self._validate()

    def pullback(self, y):
        """Linear extension of the pullback table to any cycle on the target."""
        if y.ring is not self.target:
            raise ValueError(f"pullback: cycle lives in {y.ring.name}, not {self.target.name}")
        out = self.source.zero(y.mode)
        for key, c in y.coeffs.items():
            entry = self._pull.get(key)
            if entry is not None:
                out = out + entry * c
        return out

    def pushforward(self, x):
        if x.ring is not self.source:
            raise ValueError(f"pushforward: cycle lives in {x.ring.name}, not {self.source.name}")
        out = self.target.zero(x.mode)
        for key, c in x.coeffs.items():
            entry = self._push.get(key)
            if entry is not None:
                out = out + entry * c
        return out

    def _validate(self):
        src, tgt = self.source, self.target
        if self.pullback(tgt.unit()) != src.unit():
            raise ValueError(f"{self.name}: pullback does not send unit to unit")
        for y1 in tgt.cells:
            py1 = self.pullback(tgt.basis_cycle(y1))
            for y2 in tgt.cells:
                if y2.key < y1.key:
                    continue
                lhs = self.pullback(tgt.multiply(tgt.basis_cycle(y1), tgt.basis_cycle(y2)))
                rhs = src.multiply(py1, self.pullback(tgt.basis_cycle(y2)))
                if lhs != rhs:
                    raise ValueError(
                        f"{self.name}: pullback not multiplicative at ({y1.label}, {y2.label})"
                    )
        for x in src.cells:
            cyc = src.basis_cycle(x)
            if tgt.degree(self.pushforward(cyc)) != src.degree(cyc):
                raise ValueError(f"{self.name}: pushforward changes the degree of {x.label}")
            for y in tgt.cells:
                yc = tgt.basis_cycle(y)
                lhs = self.pushforward(src.multiply(cyc, self.pullback(yc)))
                rhs = tgt.multiply(self.pushforward(cyc), yc)
                if lhs != rhs:
                    raise ValueError(
                        f"{self.name}: projection formula fails at ({x.label}, {y.label})"
                    )
                if tgt.degree(rhs) != src.degree(src.multiply(cyc, self.pullback(yc))):
                    raise ValueError(
                        f"{self.name}: adjointness fails at ({x.label}, {y.label})"
                    )

    def __repr__(self):
        return f"<MorphismData {self.name}>"


def identity_morphism(ring):
    table = {c.key: ring.basis_cycle(c) for c in ring.cells}
    return MorphismData(ring, ring, table, dict(table), name=f"id_{ring.name}", validate=False)


def projection_morphism(product, factor="left"):
    """The projection of a registered product ring onto one factor.

    Pullback is external product with the other factor's unit; pushforward
    integrates the other factor (only its top cells survive).
    """
    keep = product.left if factor == "left" else product.right
    drop = product.right if factor == "left" else product.left
    pull = {}
    for c in keep.cells:
        pair = (c, drop.unit_cell) if factor == "left" else (drop.unit_cell, c)
        pull[c.key] = product.basis_cycle(product.pair_cell(pair[0], pair[1]))
    push = {}
    for cell in product.cells:
        a, b = product.split_cell(cell)
        kept, dropped = (a, b) if factor == "left" else (b, a)
        d = drop.degree(drop.basis_cycle(dropped))
        if d:
            push[cell.key] = keep.basis_cycle(kept) * d
    return MorphismData(
        product, keep, pull, push, name=f"pr_{factor}({product.name})", validate=False
    )


def constant_morphism(ring, point_ring):
    """The collapse of a ring to a zero-dimensional one."""
    if point_ring.dimension != 0:
        raise ValueError("constant morphism needs a zero-dimensional target")
    pull = {point_ring.unit_cell.key: ring.unit()}
    push = {ring.point_cell.key: point_ring.unit()}
    return MorphismData(ring, point_ring, pull, push, name=f"{ring.name} -> point")


def product_morphism(m1, m2):
    """m1 x m2 on the product rings (used for id x f extensions)."""
    src = kunneth_product(m1.source, m2.source)
    tgt = kunneth_product(m1.target, m2.target)
    pull = {}
    for cell in tgt.cells:
        a, b = tgt.split_cell(cell)
        pa, pb = m1.pullback(m1.target.basis_cycle(a)), m2.pullback(m2.target.basis_cycle(b))
        pull[cell.key] = _external_into(src, pa, pb)
    push = {}
    for cell in src.cells:
        a, b = src.split_cell(cell)
        qa, qb = m1.pushforward(m1.source.basis_cycle(a)), m2.pushforward(m2.source.basis_cycle(b))
        push[cell.key] = _external_into(tgt, qa, qb)
    return MorphismData(src, tgt, pull, push, name=f"{m1.name} x {m2.name}", validate=False)


def graph_from_morphism(m):
    """The correspondence pair (c, c_t) of a morphism f: A -> B.

    c lives on B x A and acts as the pullback; its transpose c_t lives on
    A x B and acts as the pushforward.  Both are checked against the tables.
    """
    c = correspondence_from_action(m.target, m.source, lambda cell: m.pullback(m.target.basis_cycle(cell)), 0)
    c_t = transpose(c)
    for cell in m.target.cells:
        if act(c, m.target.basis_cycle(cell)) != m.pullback(m.target.basis_cycle(cell)):
            raise ValueError(f"{m.name}: graph does not act as the pullback at {cell.label}")
    for cell in m.source.cells:
        if act(c_t, m.source.basis_cycle(cell)) != m.pushforward(m.source.basis_cycle(cell)):
            raise ValueError(f"{m.name}: transposed graph does not act as the pushforward at {cell.label}")
    return c, c_t
