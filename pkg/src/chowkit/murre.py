"""Chow-Kunneth decompositions and their lift along a fibration.

A cellular ring has an explicit decomposition of the diagonal into
orthogonal idempotents, one per even degree, acting as projection onto a
single codimension.  Over a fibration whose fiber is cellular, a
decomposition of the base lifts degree by degree: the fiber projector
family peels a cycle into base coefficients, each base projector is applied
to its slice, and the pieces are reassembled.  Everything here is verified
as exact identities, cycle-level where the projectors are cycles and on the
full module basis where they are operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .correspondences import (
    Correspondence,
    _demote,
    _external_into,
    act,
    action_matrix,
    compose,
    diagonal,
    dual_basis_cycles,
    zero_correspondence,
)
from .fibrations import (
    BatteryReport,
    YOperator,
    ambient_extend,
    build_projector_family,
    from_kunneth,
    to_kunneth,
    zero_operator,
)
from .linalg import identity_matrix, mat_mul, rank as matrix_rank
from .motives import SystemReport
from .rings import kunneth_product
from .sampling import random_fibered_cycle, seeded_rng


# -- decomposition container ---------------------------------------------------


@dataclass
class CKDecomposition:
    """Projectors indexed by degree 0..2*dim, as cycles or as operators.

    kind "cycle": each projector is a degree-0 self-correspondence of the
    ring.  kind "operator": each is a YOperator on a fibration model.
    """

    space: object
    projectors: dict
    kind: str
    name: str = ""
    report: object = None

    def __post_init__(self):
        if self.kind not in ("cycle", "operator"):
            raise ValueError(f"unknown projector kind {self.kind!r}")
        expected = set(range(2 * self.space.dimension + 1))
        if set(self.projectors) != expected:
            raise ValueError("projectors must cover every degree 0..2*dim exactly once")
        for k, p in self.projectors.items():
            if self.kind == "cycle":
                if p.source is not self.space or p.target is not self.space:
                    raise ValueError(f"projector {k} is not a self-correspondence")
                if not p.is_zero() and p.offset != 0:
                    raise ValueError(f"projector {k} has nonzero degree")
            else:
                if p.model is not self.space:
                    raise ValueError(f"projector {k} lives on the wrong model")
        if not self.name:
            self.name = f"CK({self.space.name})"

    @property
    def top_degree(self):
        return 2 * self.space.dimension

    def projector(self, k):
        return self.projectors[k]


# -- action-window report ------------------------------------------------------


@dataclass
class ActionReport:
    """Rank of each projector's action in each codimension.

    table maps (projector degree k, codimension j) to the rank of the
    induced map on the codim-j group.  A nonzero rank outside the window
    j <= k <= 2j is a violation.
    """

    name: str
    table: dict
    violations: list

    @property
    def passed(self):
        return not self.violations

    def projector_rank(self, k):
        return sum(r for (k_, _), r in self.table.items() if k_ == k)

    def lines(self):
        degrees = sorted({k for k, _ in self.table})
        codims = sorted({j for _, j in self.table})
        out = [f"action support of {self.name} (rows: degree, columns: codim, entries: rank)"]
        header = "   k\\j |" + "".join(f"{j:>3}" for j in codims)
        out.append(header)
        out.append("  " + "-" * (len(header) - 2))
        for k in degrees:
            row = "".join(
                f"{self.table[(k, j)]:>3}" if self.table[(k, j)] else "  ." for j in codims
            )
            out.append(f"  {k:>4} |{row}")
        out.append(
            "  projector ranks: "
            + ", ".join(f"deg {k}: {self.projector_rank(k)}" for k in degrees)
        )
        if self.violations:
            out.append("  window violations:")
            out.extend(
                f"    degree {k} acts with rank {r} on codim {j}"
                for k, j, r in self.violations
            )
        else:
            out.append("  window violations: none")
        return out

    def to_dict(self):
        return {
            "check": "action-window",
            "name": self.name,
            "passed": self.passed,
            "table": [
                {"degree": k, "codim": j, "rank": r}
                for (k, j), r in sorted(self.table.items())
            ],
            "violations": [
                {"degree": k, "codim": j, "rank": r} for k, j, r in self.violations
            ],
        }


def operator_matrix(model, op, p):
    """Matrix of a codim-preserving operator on module_basis(p), one column
    per basis cycle."""
    basis = model.module_basis(p)
    cols = [model.coordinates(op(b), p) for b in basis]
    n = len(basis)
    return tuple(tuple(Fraction(cols[c][r]) for c in range(n)) for r in range(n))


def _window_entry(table, violations, k, j, r):
    table[(k, j)] = r
    if r and not (j <= k <= 2 * j):
        violations.append((k, j, r))


def verify_action_window(ck):
    """Rank table of every projector in every codimension, with violations
    of the support window j <= k <= 2j."""
    table, violations = {}, []
    if ck.kind == "cycle":
        ring = ck.space
        for k, proj in ck.projectors.items():
            for j in range(ring.dimension + 1):
                _window_entry(table, violations, k, j, matrix_rank(action_matrix(proj, j)))
    else:
        model = ck.space
        for k, op in ck.projectors.items():
            for j in range(model.dimension + 1):
                _window_entry(table, violations, k, j, matrix_rank(operator_matrix(model, op, j)))
    return ActionReport(ck.name, table, violations)


# -- verification --------------------------------------------------------------


@dataclass
class CKReport:
    """Pass/fail per Chow-Kunneth condition, plus the action-window table."""

    name: str
    conditions: list = field(default_factory=list)
    action: ActionReport = None

    def add(self, label, failures):
        self.conditions.append((label, "pass" if not failures else "FAIL", list(failures)))

    @property
    def passed(self):
        return all(status != "FAIL" for _, status, _ in self.conditions)

    def lines(self):
        out = [f"Chow-Kunneth conditions for {self.name}: {'pass' if self.passed else 'FAIL'}"]
        for label, status, details in self.conditions:
            out.append(f"  {label}: {status}")
            out.extend(f"    {d}" for d in details[:20])
        if self.action is not None:
            out.extend(self.action.lines())
        return out

    def to_dict(self):
        return {
            "check": "chow-kunneth",
            "name": self.name,
            "passed": self.passed,
            "conditions": [
                {"name": n, "status": s, "details": list(d)}
                for n, s, d in self.conditions
            ],
            "action": self.action.to_dict() if self.action is not None else None,
        }


def _verify_cycle_ck(ck, report):
    ring = ck.space
    projs = ck.projectors

    idem = []
    for k, p in projs.items():
        if compose(p, p) != p:
            idem.append(f"projector {k} is not idempotent")
    report.add("(a) idempotence", idem)

    orth = []
    for k, p in projs.items():
        for l, q in projs.items():
            if k != l and not compose(q, p).is_zero():
                orth.append(f"projectors {l} and {k} do not compose to zero")
    report.add("(a) orthogonality", orth)

    total = zero_correspondence(ring, ring, 0)
    for p in projs.values():
        total = total + p
    report.add(
        "(a) completeness (sum = diagonal)",
        [] if total == diagonal(ring) else ["projector sum differs from the diagonal"],
    )


def _verify_operator_ck(ck, report):
    model = ck.space
    grading = []
    mats = {}
    for j in range(model.dimension + 1):
        basis = model.module_basis(j)
        n = len(basis)
        for k, op in ck.projectors.items():
            cols = []
            for b in basis:
                img = op(b)
                stray = set(img.codims()) - {j}
                if stray:
                    grading.append(
                        f"projector {k} moves codim {j} into codims {sorted(stray)}"
                    )
                cols.append(model.coordinates(img, j))
            mats[(k, j)] = tuple(
                tuple(Fraction(cols[c][r]) for c in range(n)) for r in range(n)
            )
    report.add("grading (projectors preserve codimension)", grading)

    degrees = sorted(ck.projectors)
    idem = []
    for k in degrees:
        for j in range(model.dimension + 1):
            m = mats[(k, j)]
            if mat_mul(m, m) != m:
                idem.append(f"projector {k} is not idempotent on codim {j}")
    report.add("(a) idempotence", idem)

    orth = []
    for k in degrees:
        for l in degrees:
            if k == l:
                continue
            for j in range(model.dimension + 1):
                prod = mat_mul(mats[(l, j)], mats[(k, j)])
                if any(entry for row in prod for entry in row):
                    orth.append(f"projectors {l} and {k} do not compose to zero on codim {j}")
    report.add("(a) orthogonality", orth)

    complete = []
    for j in range(model.dimension + 1):
        n = len(model.module_basis(j))
        total = [[Fraction(0)] * n for _ in range(n)]
        for k in degrees:
            m = mats[(k, j)]
            total = [[total[r][c] + m[r][c] for c in range(n)] for r in range(n)]
        if tuple(tuple(row) for row in total) != identity_matrix(n):
            complete.append(f"projector sum is not the identity on codim {j}")
    report.add("(a) completeness (sum = identity)", complete)

    return mats


def verify_ck(ck):
    """Check (a) idempotence/orthogonality/completeness and (b) the action
    window, exactly.  Condition (c) is reported but never checked."""
    report = CKReport(ck.name)
    if ck.kind == "cycle":
        _verify_cycle_ck(ck, report)
        action = verify_action_window(ck)
    else:
        mats = _verify_operator_ck(ck, report)
        table, violations = {}, []
        for (k, j), m in mats.items():
            _window_entry(table, violations, k, j, matrix_rank(m))
        action = ActionReport(ck.name, table, violations)
    report.action = action
    report.add(
        "(b) action window (degree k acts only on codims j with j <= k <= 2j)",
        [f"degree {k} acts with rank {r} on codim {j}" for k, j, r in action.violations],
    )
    report.conditions.append(("condition (c)", "not checked - out of scope", []))
    return report


# -- cellular construction -----------------------------------------------------


def cellular_ck(ring, validate=True):
    """The diagonal split by codimension: the even projector 2i sums each
    codim-i cell crossed with its dual, odd projectors vanish.

    Self-verifies on construction and raises when any condition fails.
    """
    d = ring.dimension
    ring2 = kunneth_product(ring, ring)
    projs = {}
    for k in range(2 * d + 1):
        if k % 2:
            projs[k] = zero_correspondence(ring, ring, 0)
            continue
        i = k // 2
        duals = dual_basis_cycles(ring, i)
        cyc = ring2.zero()
        for cell in ring.cells_of_codim(i):
            cyc = cyc + _external_into(ring2, duals[cell.index - 1], ring.basis_cycle(cell))
        projs[k] = Correspondence(ring, ring, _demote(cyc), 0)
    ck = CKDecomposition(ring, projs, kind="cycle", name=f"cellular CK of {ring.name}")
    if validate:
        report = verify_ck(ck)
        ck.report = report
        if not report.passed:
            raise ValueError("\n".join(report.lines()))
    return ck


# -- the lift ------------------------------------------------------------------


def lift_base_correspondence(model, phi, j, family=None):
    """The degree-j lift of a base self-correspondence to the fibered module.

    Odd j gives zero: the fiber basis sits in even degrees only.  For even
    j the operator peels a cycle into base coefficients, applies phi to the
    coefficient of every fiber generator of codim j/2, and reassembles.
    """
    if phi.source is not model.base or phi.target is not model.base:
        raise ValueError("can only lift a self-correspondence of the base")
    if j % 2 or phi.is_zero():
        return zero_operator(model)
    i = j // 2
    slots = tuple(g for g in model.generators if g[0] == i)
    if not slots:
        return zero_operator(model)
    fam = family if family is not None else build_projector_family(model)

    def run(y):
        coeffs = fam.apply_all_with_coefficients(y)
        out = model.zero()
        for g in slots:
            alpha = coeffs[g][0]
            out = out + model.multiply(model.generator(g), model.pullback(act(phi, alpha)))
        return out

    return YOperator(model, run, f"lift_{j}")


@dataclass
class LiftPlan:
    """Bookkeeping for assembling lifted projectors.

    The degree-k lifted projector sums the blocks (i, j) with i + j = k,
    base degree i in 0..2*dim(base), fiber degree j in 0..2*dim(fiber).
    """

    model: object
    base_ck: CKDecomposition
    family: object = None

    def __post_init__(self):
        if self.base_ck.space is not self.model.base:
            raise ValueError("base decomposition must live on the model's base")
        if self.family is None:
            self.family = build_projector_family(self.model)
        self.base_top = 2 * self.model.base.dimension
        self.fiber_top = 2 * self.model.fiber.dimension
        self.top = self.base_top + self.fiber_top

    def index_set(self, k):
        return tuple(
            (i, k - i) for i in range(self.base_top + 1) if 0 <= k - i <= self.fiber_top
        )

    def index_sets(self):
        return {k: self.index_set(k) for k in range(self.top + 1)}

    def verify(self):
        """Index sets must partition the block grid, degree by degree."""
        failures = []
        seen = {}
        for k, pairs in self.index_sets().items():
            for i, j in pairs:
                if i + j != k:
                    failures.append(f"block ({i}, {j}) filed under degree {k}")
                if (i, j) in seen:
                    failures.append(f"block ({i}, {j}) appears in degrees {seen[(i, j)]} and {k}")
                seen[(i, j)] = k
        expected = (self.base_top + 1) * (self.fiber_top + 1)
        if len(seen) != expected:
            failures.append(f"{len(seen)} blocks filed, grid has {expected}")
        return failures

    def block(self, i, j):
        return lift_base_correspondence(self.model, self.base_ck.projectors[i], j, self.family)

    def operator(self, k):
        op = zero_operator(self.model)
        for i, j in self.index_set(k):
            op = op + self.block(i, j)
        op.name = f"Pi_{k}"
        return op

    def lines(self):
        out = [f"lift plan for {self.model.name}: degrees 0..{self.top}"]
        for k, pairs in self.index_sets().items():
            shown = ", ".join(f"({i},{j})" for i, j in pairs)
            out.append(f"  degree {k}: {shown}")
        return out


def build_lift_plan(model, base_ck=None, family=None):
    if base_ck is None:
        base_ck = cellular_ck(model.base)
    return LiftPlan(model, base_ck, family)


def lift_ck(model, base_ck=None, validate=True):
    """Lift a Chow-Kunneth decomposition of the base across the fibration.

    The base decomposition is verified first, the lifted one after
    assembly; failure of either raises with the full report.
    """
    if base_ck is None:
        base_ck = cellular_ck(model.base)
    pre = verify_ck(base_ck)
    if not pre.passed:
        raise ValueError("base decomposition fails:\n" + "\n".join(pre.lines()))
    plan = build_lift_plan(model, base_ck)
    bad = plan.verify()
    if bad:
        raise ValueError("degenerate lift plan:\n" + "\n".join(bad))
    projs = {k: plan.operator(k) for k in range(plan.top + 1)}
    ck = CKDecomposition(model, projs, kind="operator", name=f"lifted CK of {model.name}")
    if validate:
        report = verify_ck(ck)
        ck.report = report
        if not report.passed:
            raise ValueError("\n".join(report.lines()))
    return ck


def verify_block_diagonality(model, base_ck=None, samples=20, seed=0, bound=10):
    """Blocks compose like matrix units: a block followed by another is the
    first block again when the indices match and zero otherwise.  Checked on
    random cycles."""
    if base_ck is None:
        base_ck = cellular_ck(model.base)
    plan = build_lift_plan(model, base_ck)
    blocks = {
        (i, j): plan.block(i, j)
        for i in range(plan.base_top + 1)
        for j in range(plan.fiber_top + 1)
    }
    rng = seeded_rng(seed)
    failures = []
    for s in range(samples):
        y = random_fibered_cycle(rng, model, bound=bound)
        images = {key: op(y) for key, op in blocks.items()}
        for key2, op2 in blocks.items():
            for key, img in images.items():
                want = img if key2 == key else model.zero()
                if op2(img) != want:
                    failures.append(
                        f"sample {s}: block {key2} after block {key} is not "
                        f"{'the block itself' if key2 == key else 'zero'}"
                    )
    report = SystemReport(f"block diagonality on {model.name}")
    report.add(f"{samples} random cycles, {len(blocks)} blocks", failures)
    return report


# -- batteries and cross-checks ------------------------------------------------


def ck_battery(model, battery=None, base_ck=None):
    """Lift over the model itself and over its extension by each ambient
    factor, re-verifying every decomposition from scratch."""
    if battery is None:
        from .catalog import point, projective_space

        battery = (point(), projective_space(1), projective_space(2))
    entries = []
    lifted = lift_ck(model, base_ck)
    entries.append((model.name, lifted.report))
    for ambient in battery:
        extended = ambient_extend(model, ambient)
        base2 = cellular_ck(kunneth_product(ambient, model.base))
        lifted2 = lift_ck(extended, base2)
        entries.append((extended.name, lifted2.report))
    return BatteryReport(f"Chow-Kunneth battery for {model.name}", entries)


def compare_lift_to_cellular(model, lifted=None):
    """On a trivial model the lifted operators must match the cellular
    decomposition of the product ring, cell by cell."""
    if not model.is_trivial:
        raise ValueError("comparison only makes sense for a trivial model")
    ring = kunneth_product(model.base, model.fiber)
    cellular = cellular_ck(ring)
    if lifted is None:
        lifted = lift_ck(model)
    failures = []
    for k in range(2 * model.dimension + 1):
        proj = cellular.projectors[k]
        op = lifted.projectors[k]
        for cell in ring.cells:
            cyc = ring.basis_cycle(cell)
            want = act(proj, cyc)
            got = to_kunneth(model, op(from_kunneth(model, cyc)))
            if got != want:
                failures.append(f"degree {k} differs on {cell.label}")
    report = SystemReport(f"lift vs cellular on {model.name}")
    report.add("operator agreement on every basis cell", failures)
    return report
