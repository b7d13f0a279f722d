"""Chow motives as (ring, projector) pairs and their cellular decomposition.

A cellular ring with perfect degree pairings splits into rank-one motives,
one per cell: the projector of a cell is its dual basis element crossed with
the cell itself.  For a product ring these fiber projectors, tensored with
the diagonal of the other factor, realize the same operators the fibration
module builds by peeling; tensor_identity_check verifies that identity
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .correspondences import (
    Correspondence,
    _demote,
    _external_into,
    act,
    compose,
    diagonal,
    dual_basis_cycles,
    tensor,
)
from .fibrations import (
    YOperator,
    build_projector_family,
    from_kunneth,
    to_kunneth,
    trivial_fibration,
)
from .linalg import rank as matrix_rank
from .rings import kunneth_product


@dataclass
class Motive:
    """A cellular ring with an idempotent degree-0 correspondence on it."""

    ring: object
    projector: Correspondence
    name: str = ""

    def __post_init__(self):
        p = self.projector
        if p.source is not self.ring or p.target is not self.ring:
            raise ValueError("motive projector must be a self-correspondence of the ring")
        if not p.is_zero() and p.offset != 0:
            raise ValueError("motive projector must have degree 0")
        if compose(p, p) != p:
            raise ValueError(f"projector of {self.name or self.ring.name} is not idempotent")
        if not self.name:
            self.name = f"({self.ring.name}, p)"

    def piece_rank(self, p):
        return matrix_rank(self.projector.matrix(p))

    def __repr__(self):
        return f"<Motive {self.name}>"


def unit_motive(ring):
    """h(X): the ring with its diagonal."""
    return Motive(ring, diagonal(ring), name=f"h({ring.name})")


def fiber_projectors(ring):
    """One rank-one projector per cell: the cell's dual crossed with the cell.

    For a delta-normalized basis the dual is the same-index complementary
    cell; in general the honest dual basis is used (pairings must be
    perfect).  Returned in the ring's cell order.
    """
    ring2 = kunneth_product(ring, ring)
    duals = {p: dual_basis_cycles(ring, p) for p in range(ring.dimension + 1)}
    out = []
    for cell in ring.cells:
        e = duals[cell.codim][cell.index - 1]
        cyc = _external_into(ring2, e, ring.basis_cycle(cell))
        out.append(Correspondence(ring, ring, _demote(cyc), 0))
    return out


@dataclass
class SystemReport:
    """Exact-identity verification of a projector system."""

    name: str
    checks: list = field(default_factory=list)

    def add(self, label, failures):
        self.checks.append((label, not failures, list(failures)))

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def lines(self):
        out = [f"projector system on {self.name}: {'pass' if self.passed else 'FAIL'}"]
        for label, ok, details in self.checks:
            out.append(f"  {label}: {'pass' if ok else 'FAIL'}")
            out.extend(f"    {d}" for d in details[:20])
        return out

    def to_dict(self):
        return {
            "check": "projector-system",
            "name": self.name,
            "passed": self.passed,
            "checks": [
                {"name": n, "passed": ok, "details": list(d)} for n, ok, d in self.checks
            ],
        }


def verify_projector_system(projectors):
    """Idempotence, pairwise orthogonality, and completeness (sum equals the
    diagonal), all as exact cycle identities."""
    ps = list(projectors)
    if not ps:
        raise ValueError("empty projector system")
    ring = ps[0].source
    for p in ps:
        if p.source is not ring or p.target is not ring:
            raise ValueError("projector system must live on a single ring")
    report = SystemReport(ring.name)

    idem = []
    for k, p in enumerate(ps):
        if compose(p, p) != p:
            idem.append(f"projector {k} is not idempotent")
    report.add("idempotence", idem)

    orth = []
    for k, p in enumerate(ps):
        for l, q in enumerate(ps):
            if k != l and not compose(p, q).is_zero():
                orth.append(f"projectors {k} and {l} do not compose to zero")
    report.add("pairwise orthogonality", orth)

    total = ps[0]
    for p in ps[1:]:
        total = total + p
    complete = []
    if total != diagonal(ring):
        complete.append("projector sum differs from the diagonal")
    report.add("completeness (sum = diagonal)", complete)
    return report


@dataclass
class MotiveDecomposition:
    """The rank-one motives of a cellular ring, with their rank bookkeeping."""

    parent: Motive
    pieces: tuple
    rank_table: dict  # codim -> tuple of per-piece ranks
    report: SystemReport

    @property
    def piece_count(self):
        return len(self.pieces)

    def codim_profile(self):
        """For each piece, the codimension where its image sits."""
        out = []
        for k in range(len(self.pieces)):
            support = [p for p, ranks in sorted(self.rank_table.items()) if ranks[k]]
            out.append(support[0] if support else None)
        return tuple(out)

    def lines(self):
        ring = self.parent.ring
        out = [f"motive decomposition of {ring.name}: {self.piece_count} piece(s)"]
        for k, piece in enumerate(self.pieces):
            codim = self.codim_profile()[k]
            out.append(f"  {piece.name}: rank 1 in codim {codim}")
        totals = {p: sum(ranks) for p, ranks in sorted(self.rank_table.items())}
        out.append("  per-codim rank totals: " + ", ".join(
            f"CH^{p}={r}" for p, r in totals.items()
        ))
        return out

    def to_dict(self):
        return {
            "check": "motive-decomposition",
            "ring": self.parent.ring.name,
            "pieces": [p.name for p in self.pieces],
            "codim_profile": list(self.codim_profile()),
            "rank_table": {str(p): list(r) for p, r in self.rank_table.items()},
            "passed": self.report.passed,
        }


def decompose_motive(ring):
    """Split h(ring) into one rank-one motive per cell.

    The projector system is verified first and failure raises; each piece's
    action is additionally checked to be the expected rank-one projection
    onto its cell's span.
    """
    ps = fiber_projectors(ring)
    report = verify_projector_system(ps)

    image = []
    for cell, p in zip(ring.cells, ps):
        for other in ring.cells:
            got = act(p, ring.basis_cycle(other))
            want = ring.basis_cycle(cell) if other is cell else ring.zero()
            if got != want:
                image.append(
                    f"projector of {cell.label} sends {other.label} to {got!r}"
                )
    report.add("rank-one images", image)

    rank_table = {}
    for p in range(ring.dimension + 1):
        ranks = tuple(matrix_rank(proj.matrix(p)) for proj in ps)
        rank_table[p] = ranks
        if sum(ranks) != ring.rank(p):
            report.add(
                f"rank reconciliation at codim {p}",
                [f"piece ranks sum to {sum(ranks)}, ring rank is {ring.rank(p)}"],
            )
    if not report.passed:
        raise ValueError("\n".join(report.lines()))

    pieces = tuple(
        Motive(ring, p, name=f"({ring.name}, {cell.label})")
        for cell, p in zip(ring.cells, ps)
    )
    return MotiveDecomposition(unit_motive(ring), pieces, rank_table, report)


@dataclass
class ModelMotiveDecomposition:
    """Rank-one operator pieces of a fibration model, one per pair of a
    fiber generator and a base cell."""

    model: object
    pieces: tuple  # (label, codim, YOperator)
    rank_table: dict  # codim -> piece count
    report: SystemReport

    @property
    def piece_count(self):
        return len(self.pieces)

    def rank_profile(self):
        return tuple(self.rank_table.get(p, 0) for p in range(self.model.dimension + 1))

    def lines(self):
        out = [f"motive decomposition of {self.model.name}: {self.piece_count} piece(s)"]
        for label, codim, _ in self.pieces:
            out.append(f"  {label}: rank 1 in codim {codim}")
        out.append("  per-codim rank totals: " + ", ".join(
            f"CH^{p}={r}" for p, r in sorted(self.rank_table.items())
        ))
        return out

    def to_dict(self):
        return {
            "check": "motive-decomposition",
            "model": self.model.name,
            "pieces": [
                {"name": label, "codim": codim} for label, codim, _ in self.pieces
            ],
            "rank_profile": list(self.rank_profile()),
            "passed": self.report.passed,
        }


def _model_operator_rank(model, op, p):
    basis = model.module_basis(p)
    cols = [model.coordinates(op(b), p) for b in basis]
    n = len(basis)
    return matrix_rank(tuple(tuple(Fraction(cols[c][r]) for c in range(n)) for r in range(n)))


def decompose_model(model, family=None):
    """Split the cycles of a fibration model into rank-one pieces.

    Each piece keeps one fiber generator and one base cell: the peeled
    coefficient is projected onto the cell's span and reassembled.  The
    system is verified exactly on the module basis before returning.
    """
    fam = family if family is not None else build_projector_family(model)
    base_ps = fiber_projectors(model.base)

    def make(gkey, proj):
        def run(y):
            alpha = fam.apply_all_with_coefficients(y)[gkey][0]
            return model.multiply(model.generator(gkey), model.pullback(act(proj, alpha)))

        return run

    pieces = []
    for g in model.generators:
        gen_label = model.fiber.cell(g).label
        for cell, bp in zip(model.base.cells, base_ps):
            label = f"(T[{gen_label}], {cell.label})"
            op = YOperator(model, make(g, bp), label)
            pieces.append((label, g[0] + cell.codim, op))

    report = SystemReport(model.name)
    basis = model.module_basis()
    idem, orth, complete = [], [], []
    images = {label: [op(b) for b in basis] for label, _, op in pieces}
    for label, _, op in pieces:
        for b, img in zip(basis, images[label]):
            if op(img) != img:
                idem.append(f"piece {label} is not idempotent on {b!r}")
    report.add("idempotence", idem)
    for label, _, op in pieces:
        for other, _, _ in pieces:
            if other == label:
                continue
            for img in images[other]:
                if not op(img).is_zero():
                    orth.append(f"pieces {label} and {other} do not compose to zero")
    report.add("pairwise orthogonality", orth)
    for i, b in enumerate(basis):
        total = model.zero()
        for label, _, _ in pieces:
            total = total + images[label][i]
        if total != b:
            complete.append(f"piece sum differs from the identity on {b!r}")
    report.add("completeness (sum = identity)", complete)

    ranks = []
    for label, codim, op in pieces:
        for p in range(model.dimension + 1):
            want = 1 if p == codim else 0
            if _model_operator_rank(model, op, p) != want:
                ranks.append(f"piece {label} has unexpected rank on codim {p}")
    report.add("rank-one images", ranks)
    if not report.passed:
        raise ValueError("\n".join(report.lines()))

    rank_table = {}
    for _, codim, _ in pieces:
        rank_table[codim] = rank_table.get(codim, 0) + 1
    for p, r in rank_table.items():
        if r != model.rank(p):
            raise ValueError(f"piece count {r} at codim {p} differs from module rank {model.rank(p)}")
    return ModelMotiveDecomposition(model, tuple(pieces), rank_table, report)


def tensor_identity_check(left, right):
    """Operator projectors of the trivial fibration vs diagonal-tensor cycles.

    For each fiber cell (i,j), the peeling projector of trivial_fibration
    (left, right) and the correspondence diagonal(left) x p_{i,j} must act
    identically on every basis cell of the product ring; that is checked
    exactly, codimension by codimension.
    """
    model = trivial_fibration(left, right)
    family = build_projector_family(model)
    ring = kunneth_product(left, right)
    ps = fiber_projectors(right)
    d_left = diagonal(left)
    report = SystemReport(f"{left.name} x {right.name} tensor identity")
    cycles = {cell.key: tensor(d_left, p) for cell, p in zip(right.cells, ps)}
    for b in ring.cells:
        cyc = ring.basis_cycle(b)
        pieces = family.apply_all(from_kunneth(model, cyc))
        fails = []
        for gkey, q in cycles.items():
            lhs = act(q, cyc)
            rhs = to_kunneth(model, pieces[gkey])
            if lhs != rhs:
                fails.append(
                    f"operator and cycle projections differ at generator {gkey} on {b.label}"
                )
        report.add(f"actions on {b.label}", fails)
    return report
