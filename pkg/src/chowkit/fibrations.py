"""Locally trivial fibration models and their projector families.

A model presents CH(Y) for a fibration Y -> X with fiber Z as a free module
over CH(X): one generator T_{p,i} per fiber cell, restricting fiberwise to
that cell, with products

    T_{p,i} * T_{q,j} = sum_{(r,s)} pi^*(alpha_{r,s}) * T_{r,s}

recorded as a table of base cycles alpha.  The fiber ring must carry a
delta-normalized basis; the base only needs to be a valid cellular ring.
Elements of CH(Y) are FiberedCycles: mappings from generator keys to base
cycles.

The projector family attached to a model peels a cycle from the top
generator downward: each projector multiplies by the dual generator, pushes
to the base, pulls back, multiplies by the generator itself, after first
subtracting the lexicographically greater projectors.  A single descending
sweep evaluates the whole family at linear cost.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .rings import (
    INTEGER,
    RATIONAL,
    Cycle,
    external_product,
    kunneth_product,
    verify_pairing,
)


class FiberedCycle:
    """An element of CH(Y): base-cycle coefficients indexed by generator key."""

    __slots__ = ("model", "parts")

    def __init__(self, model, parts):
        clean = {}
        for gkey, cyc in parts.items():
            gkey = tuple(gkey)
            if gkey not in model._gen_cells:
                raise ValueError(f"unknown generator key {gkey!r} in {model.name}")
            if cyc.ring is not model.base:
                raise ValueError(f"coefficient of T{gkey} must live on {model.base.name}")
            if not cyc.is_zero():
                clean[gkey] = cyc
        self.model = model
        self.parts = clean

    def is_zero(self):
        return not self.parts

    def fiber_component(self, gkey):
        """Base-cycle coefficient of one generator."""
        gkey = tuple(gkey)
        return self.parts.get(gkey, self.model.base.zero())

    def codims(self):
        out = set()
        for gkey, cyc in self.parts.items():
            out.update(gkey[0] + p for p in cyc.codims())
        return sorted(out)

    def is_homogeneous(self):
        return len(self.codims()) <= 1

    def codim(self):
        cs = self.codims()
        if len(cs) != 1:
            raise ValueError(f"fibered cycle is not homogeneous nonzero: {self!r}")
        return cs[0]

    def component(self, p):
        """Total-codimension-p part."""
        parts = {g: cyc.component(p - g[0]) for g, cyc in self.parts.items()}
        return FiberedCycle(self.model, parts)

    def _require_same_model(self, other):
        if self.model is not other.model:
            raise ValueError(f"model mismatch: {self.model.name} vs {other.model.name}")

    def __add__(self, other):
        if not isinstance(other, FiberedCycle):
            return NotImplemented
        self._require_same_model(other)
        parts = dict(self.parts)
        for g, cyc in other.parts.items():
            parts[g] = parts[g] + cyc if g in parts else cyc
        return FiberedCycle(self.model, parts)

    def __neg__(self):
        return FiberedCycle(self.model, {g: -c for g, c in self.parts.items()})

    def __sub__(self, other):
        if not isinstance(other, FiberedCycle):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FiberedCycle):
            return self.model.multiply(self, other)
        return FiberedCycle(self.model, {g: c * other for g, c in self.parts.items()})

    def __rmul__(self, other):
        if isinstance(other, FiberedCycle):
            return NotImplemented
        return self * other

    def __eq__(self, other):
        if not isinstance(other, FiberedCycle):
            return NotImplemented
        return self.model is other.model and self.parts == other.parts

    def __repr__(self):
        if not self.parts:
            return "0"
        terms = []
        for g in sorted(self.parts):
            label = self.model._gen_cells[g].label
            terms.append(f"pi*({self.parts[g]!r})*T[{label}]")
        return " + ".join(terms)


class FibrationModel:
    """CH(Y) of a locally trivial fibration, presented over its base ring.

    ``t_table`` maps pairs of generator keys to {generator key: base cycle};
    one order of each pair suffices, products with the unit generator are
    implied, omitted entries are zero.  Structural problems (unknown keys,
    conflicting symmetric entries) raise immediately; the mathematical laws
    are checked by ``validate_fibration``, which returns a report.
    """

    def __init__(self, base, fiber, t_table, name=None, is_trivial=False):
        self.base = base
        self.fiber = fiber
        self.name = name or f"fibration({fiber.name} over {base.name})"
        self.dimension = base.dimension + fiber.dimension
        self.is_trivial = is_trivial
        self._gen_cells = {c.key: c for c in fiber.cells}
        self.generators = tuple(sorted(self._gen_cells))
        table = {}

        def put(g1, g2, entry):
            if g1 in table and g2 in table[g1]:
                if table[g1][g2] != entry:
                    raise ValueError(f"conflicting fibration products for T{g1} * T{g2}")
                return
            table.setdefault(g1, {})[g2] = entry

        for (g1, g2), raw in t_table.items():
            g1, g2 = tuple(g1), tuple(g2)
            for g in (g1, g2):
                if g not in self._gen_cells:
                    raise ValueError(f"fibration table mentions unknown generator {g!r}")
            entry = {}
            for gkey, cyc in raw.items():
                gkey = tuple(gkey)
                if gkey not in self._gen_cells:
                    raise ValueError(f"product T{g1} * T{g2} hits unknown generator {gkey!r}")
                if cyc.ring is not base:
                    raise ValueError(f"coefficients in the fibration table must live on {base.name}")
                if not cyc.is_zero():
                    entry[gkey] = cyc
            put(g1, g2, entry)
            put(g2, g1, entry)
        unit = fiber.unit_cell.key
        for g in self.generators:
            expected = {g: base.unit()}
            if unit in table and g in table[unit] and table[unit][g] != expected:
                raise ValueError(f"unit generator law violated at T{g}")
            table.setdefault(unit, {})[g] = expected
            table.setdefault(g, {})[unit] = expected
        self._table = table

    # -- module structure ----------------------------------------------------

    def t_entry(self, g1, g2):
        """Components of T_{g1} * T_{g2} as {generator key: base cycle}."""
        return self._table.get(tuple(g1), {}).get(tuple(g2), {})

    def zero(self):
        return FiberedCycle(self, {})

    def generator(self, gkey):
        return FiberedCycle(self, {tuple(gkey): self.base.unit()})

    def unit(self):
        return self.generator(self.fiber.unit_cell.key)

    def cycle(self, parts):
        return FiberedCycle(self, parts)

    def pullback(self, a):
        """pi^*: a base cycle times the unit generator."""
        if a.ring is not self.base:
            raise ValueError(f"pullback: cycle lives in {a.ring.name}, not {self.base.name}")
        return FiberedCycle(self, {self.fiber.unit_cell.key: a})

    def pushforward(self, y):
        """pi_*: the coefficient of the top fiber generator."""
        return y.fiber_component(self.fiber.point_cell.key)

    def degree(self, y):
        return self.base.degree(self.pushforward(y))

    def multiply(self, y1, y2):
        if y1.model is not self or y2.model is not self:
            raise ValueError("multiply: cycles must live in this model")
        parts = {}
        for g, a in y1.parts.items():
            for h, b in y2.parts.items():
                ab = self.base.multiply(a, b)
                if ab.is_zero():
                    continue
                for k, alpha in self.t_entry(g, h).items():
                    term = self.base.multiply(ab, alpha)
                    if term.is_zero():
                        continue
                    parts[k] = parts[k] + term if k in parts else term
        return FiberedCycle(self, parts)

    def rank(self, p):
        return sum(self.base.rank(p - g[0]) for g in self.generators)

    def module_basis(self, p=None):
        """The basis cycles pi^*(x) * T_g, all of them or those of codim p."""
        out = []
        for g in self.generators:
            for cell in self.base.cells:
                if p is not None and cell.codim + g[0] != p:
                    continue
                out.append(FiberedCycle(self, {g: self.base.basis_cycle(cell)}))
        return out

    def coordinates(self, y, p):
        """Coefficients of the codim-p part of y along module_basis(p)."""
        out = []
        for g in self.generators:
            for cell in self.base.cells:
                if cell.codim + g[0] != p:
                    continue
                out.append(y.fiber_component(g).coefficient(cell))
        return tuple(out)

    def __repr__(self):
        return f"<FibrationModel {self.name} dim={self.dimension}>"


# -- module-level operation surface -------------------------------------------


def pullback(model, a):
    return model.pullback(a)


def pushforward(model, y):
    return model.pushforward(y)


def trivial_fibration(base, fiber, name=None):
    """The product fibration: structure constants are the fiber's own."""
    table = {}
    for c1 in fiber.cells:
        for c2 in fiber.cells:
            if c2.key < c1.key:
                continue
            prod = fiber.multiply(fiber.basis_cycle(c1), fiber.basis_cycle(c2))
            table[(c1.key, c2.key)] = {
                k: base.unit() * v for k, v in prod.coeffs.items()
            }
    return FibrationModel(
        base, fiber, table,
        name=name or f"{base.name} x {fiber.name} (trivial)",
        is_trivial=True,
    )


def duality_triple(model, alpha, left, right):
    """pi_*(pi^*(alpha) * T_left * T_right).

    For fiber codimensions p + q <= n this follows the delta pattern: alpha
    back when the generators are same-index duals, zero otherwise.  Beyond
    the middle the value is still computed, but no pattern is guaranteed, so
    a warning is issued.
    """
    lkey = model.fiber.cell(left).key
    rkey = model.fiber.cell(right).key
    if lkey[0] + rkey[0] > model.fiber.dimension:
        warnings.warn(
            f"duality pattern is only guaranteed for fiber codims summing to at most "
            f"{model.fiber.dimension}; got {lkey[0]} + {rkey[0]}",
            stacklevel=2,
        )
    y = model.multiply(model.pullback(alpha), model.generator(lkey))
    y = model.multiply(y, model.generator(rkey))
    return model.pushforward(y)


def duality_report(model, samples=20, seed=0, bound=10):
    """The delta pattern of the duality triple over every admissible
    generator pair.

    Checks pi_*(pi^*(alpha) T T') = alpha for same-index dual pairs and 0
    for every other pair with fiber codims summing to at most the fiber
    dimension, first for each base basis class, then for seeded random
    alphas."""
    from . import sampling

    n = model.fiber.dimension
    rng = sampling.seeded_rng(seed)
    alphas = [("basis " + c.label, model.base.basis_cycle(c)) for c in model.base.cells]
    alphas += [
        (f"random {s}", sampling.random_cycle(rng, model.base, bound=bound))
        for s in range(samples)
    ]
    report = FamilyReport(model.name)
    fails = []
    count = 0
    for g1 in model.generators:
        for g2 in model.generators:
            if g1[0] + g2[0] > n:
                continue
            is_dual = model.fiber.dual_cell(g1).key == g2
            for label, alpha in alphas:
                count += 1
                got = duality_triple(model, alpha, g1, g2)
                want = alpha if g1[0] + g2[0] == n and is_dual else model.base.zero()
                if got != want:
                    fails.append(f"pair {g1} * {g2} on {label}")
    report.add("duality delta pattern", fails, count)
    return report


# -- validation ----------------------------------------------------------------


@dataclass
class ValidationReport:
    """Outcome of the fibration model laws, one entry per check."""

    model_name: str
    checks: list = field(default_factory=list)  # (name, passed, [detail lines])

    def add(self, name, failures):
        self.checks.append((name, not failures, list(failures)))

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def lines(self):
        out = [f"fibration model {self.model_name}: {'pass' if self.passed else 'FAIL'}"]
        for name, ok, details in self.checks:
            out.append(f"  {name}: {'pass' if ok else 'FAIL'}")
            out.extend(f"    {d}" for d in details)
        return out

    def to_dict(self):
        return {
            "check": "fibration-model",
            "model": self.model_name,
            "passed": self.passed,
            "checks": [
                {"name": n, "passed": ok, "details": list(d)} for n, ok, d in self.checks
            ],
        }


def validate_fibration(model):
    """Check the model laws: fiber normalization, grading, unit,
    commutativity, associativity on generators, and fiberwise duality."""
    report = ValidationReport(model.name)
    base, fiber = model.base, model.fiber
    n = fiber.dimension

    pairing = verify_pairing(fiber)
    report.add(
        "fiber delta-normalization",
        [] if pairing.passed else pairing.lines()[1:],
    )

    grading = []
    for g1, row in model._table.items():
        for g2, entry in row.items():
            for gkey, cyc in entry.items():
                want = g1[0] + g2[0] - gkey[0]
                if cyc.is_zero():
                    continue
                if want < 0 or cyc.codims() != [want]:
                    grading.append(
                        f"T{g1}*T{g2} component at T{gkey} has base codims "
                        f"{cyc.codims()}, expected [{want}]"
                    )
    report.add("grading", grading)

    unit_failures = []
    ukey = fiber.unit_cell.key
    for g in model.generators:
        if model.t_entry(ukey, g) != {g: base.unit()}:
            unit_failures.append(f"unit * T{g} != T{g}")
    report.add("unit", unit_failures)

    comm = []
    for g1 in model.generators:
        for g2 in model.generators:
            if model.t_entry(g1, g2) != model.t_entry(g2, g1):
                comm.append(f"T{g1}*T{g2} != T{g2}*T{g1}")
    report.add("commutativity", comm)

    assoc = []
    gens = [model.generator(g) for g in model.generators]
    for i, ta in enumerate(gens):
        for j, tb in enumerate(gens):
            ab = model.multiply(ta, tb)
            for k, tc in enumerate(gens):
                bc = model.multiply(tb, tc)
                if model.multiply(ab, tc) != model.multiply(ta, bc):
                    assoc.append(
                        f"associativity fails at generators "
                        f"{model.generators[i]}, {model.generators[j]}, {model.generators[k]}"
                    )
    report.add("associativity on generators", assoc)

    duality = []
    for g1 in model.generators:
        for g2 in model.generators:
            if g1[0] + g2[0] != n:
                continue
            top = model.t_entry(g1, g2).get(fiber.point_cell.key, base.zero())
            want = base.unit() if g1[1] == g2[1] else base.zero()
            if top != want:
                duality.append(
                    f"top component of T{g1}*T{g2} is {top!r}, expected {want!r}"
                )
    report.add("fiberwise duality", duality)
    return report


# -- operators on a model's cycles ----------------------------------------------


class YOperator:
    """A linear operator on the cycles of one fibration model.

    Wraps the evaluation function; algebra is pointwise, composition chains
    evaluations.  Equality of operators is decidable on the module basis
    (they are linear), which ``equals`` checks exactly.
    """

    def __init__(self, model, fn, name="operator"):
        self.model = model
        self.fn = fn
        self.name = name

    def __call__(self, y):
        if y.model is not self.model:
            raise ValueError(f"operator on {self.model.name} applied to {y.model.name}")
        return self.fn(y)

    def __add__(self, other):
        if not isinstance(other, YOperator) or other.model is not self.model:
            return NotImplemented
        return YOperator(self.model, lambda y: self(y) + other(y), f"{self.name} + {other.name}")

    def __sub__(self, other):
        if not isinstance(other, YOperator) or other.model is not self.model:
            return NotImplemented
        return YOperator(self.model, lambda y: self(y) - other(y), f"{self.name} - {other.name}")

    def __matmul__(self, other):
        """Composition: (f @ g)(y) = f(g(y))."""
        if not isinstance(other, YOperator) or other.model is not self.model:
            return NotImplemented
        return YOperator(self.model, lambda y: self(other(y)), f"{self.name} o {other.name}")

    def equals(self, other, basis=None):
        if basis is None:
            basis = self.model.module_basis()
        return all(self(y) == other(y) for y in basis)

    def __repr__(self):
        return f"<YOperator {self.name} on {self.model.name}>"


def zero_operator(model):
    return YOperator(model, lambda y: model.zero(), "0")


def identity_operator(model):
    return YOperator(model, lambda y: y, "id")


# -- projector family ----------------------------------------------------------


@dataclass
class ProjectorFamily:
    """The peeling projectors of a model, in descending generator order.

    ``order`` lists generator keys lexicographically descending; ``w_sets``
    records, for each key, the strictly greater keys whose projectors are
    subtracted before its own pairing step.  ``apply_all`` performs the whole
    descending sweep once, which evaluates every projector honestly (each
    one sees exactly the residual its definition prescribes).
    """

    model: FibrationModel
    order: tuple = ()
    w_sets: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.order:
            self.order = tuple(sorted(self.model.generators, reverse=True))
            self.w_sets = {
                g: tuple(self.order[:k]) for k, g in enumerate(self.order)
            }

    def apply_all_with_coefficients(self, y):
        """{generator key: (base coefficient, projected piece)} for every projector."""
        model = self.model
        residual = y
        out = {}
        for g in self.order:
            dual = model.fiber.dual_cell(g).key
            alpha = model.pushforward(model.multiply(model.generator(dual), residual))
            piece = model.multiply(model.generator(g), model.pullback(alpha))
            out[g] = (alpha, piece)
            residual = residual - piece
        return out

    def apply_all(self, y):
        return {g: piece for g, (_, piece) in self.apply_all_with_coefficients(y).items()}

    def apply(self, gkey, y):
        return self.apply_all(y)[tuple(gkey)]

    def coefficient(self, gkey, y):
        """The base cycle alpha with apply(gkey, y) = pi^*(alpha) * T_gkey."""
        return self.apply_all_with_coefficients(y)[tuple(gkey)][0]

    def operator(self, gkey):
        gkey = tuple(gkey)
        return YOperator(self.model, lambda y: self.apply(gkey, y), f"rho{gkey}")


def build_projector_family(model):
    return ProjectorFamily(model)


@dataclass
class FamilyReport:
    """Exact verification of a projector family's operator identities."""

    model_name: str
    checks: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    def add(self, name, failures, count=None):
        self.checks.append((name, not failures, list(failures)))
        if count is not None:
            self.counts[name] = count

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def lines(self):
        out = [f"projector family on {self.model_name}: {'pass' if self.passed else 'FAIL'}"]
        for name, ok, details in self.checks:
            suffix = f" ({self.counts[name]} instances)" if name in self.counts else ""
            out.append(f"  {name}: {'pass' if ok else 'FAIL'}{suffix}")
            out.extend(f"    {d}" for d in details[:20])
        return out

    def to_dict(self):
        return {
            "check": "projector-family",
            "model": self.model_name,
            "passed": self.passed,
            "checks": [
                {"name": n, "passed": ok, "details": list(d), "count": self.counts.get(n)}
                for n, ok, d in self.checks
            ],
        }


def verify_projector_family(family, samples=100, seed=0, bound=10):
    """Exact check of degree preservation, idempotence, pairwise
    orthogonality, completeness, the coefficient-extraction action formula,
    section recovery, and the per-codim rank identity.

    The operator identities are verified on every module basis element
    (complete, by linearity) and on seeded random cycles besides.
    """
    from . import sampling

    model = family.model
    report = FamilyReport(model.name)
    basis = model.module_basis()

    degree_fail, idem_fail, orth_fail, complete_fail = [], [], [], []
    for y in basis:
        p = y.codim()
        pieces = family.apply_all(y)
        total = model.zero()
        for g, piece in pieces.items():
            total = total + piece
            if not piece.is_zero() and piece.codims() != [p]:
                degree_fail.append(f"rho{g} moved a codim-{p} cycle to {piece.codims()}")
            replay = family.apply_all(piece)
            for h, again in replay.items():
                want = piece if h == g else model.zero()
                if again != want:
                    (idem_fail if h == g else orth_fail).append(
                        f"rho{h} o rho{g} != {'rho' + str(g) if h == g else '0'} on {y!r}"
                    )
        if total != y:
            complete_fail.append(f"sum of projections differs from input on {y!r}")
    count = len(basis)
    report.add("degree preservation", degree_fail, count)
    report.add("idempotence", idem_fail, count)
    report.add("pairwise orthogonality", orth_fail, count)
    report.add("completeness", complete_fail, count)

    rng = sampling.seeded_rng(seed)
    action_fail = []
    for _ in range(samples):
        coeffs = {
            g: sampling.random_cycle(rng, model.base, bound=bound)
            for g in model.generators
        }
        y = model.zero()
        for g, a in coeffs.items():
            y = y + model.multiply(model.generator(g), model.pullback(a))
        got = family.apply_all_with_coefficients(y)
        for g in model.generators:
            alpha, piece = got[g]
            if alpha != coeffs[g]:
                action_fail.append(f"coefficient at T{g} came back {alpha!r}, fed {coeffs[g]!r}")
            want = model.multiply(model.generator(g), model.pullback(coeffs[g]))
            if piece != want:
                action_fail.append(f"projection at T{g} is not pi^*(alpha)*T{g}")
    report.add("coefficient extraction on random cycles", action_fail, samples)

    section_fail = []
    top = model.fiber.point_cell.key
    for cell in model.base.cells:
        a = model.base.basis_cycle(cell)
        back = model.pushforward(model.multiply(model.generator(top), model.pullback(a)))
        if back != a:
            section_fail.append(f"pi_*(T_top * pi^*({cell.label})) != {cell.label}")
    report.add("section recovery (pullback injectivity)", section_fail, len(model.base.cells))

    rank_fail = []
    for p in range(model.dimension + 1):
        direct = len(model.module_basis(p))
        formula = sum(
            model.base.rank(p - q) * model.fiber.rank(q)
            for q in range(model.fiber.dimension + 1)
        )
        if direct != model.rank(p) or direct != formula:
            rank_fail.append(f"rank CH^{p} mismatch: basis {direct}, formula {formula}")
    report.add("rank identity", rank_fail, model.dimension + 1)
    return report


# -- ambient extension and the identity-principle battery -----------------------


def ambient_extend(model, ambient):
    """The same fibration pulled back along the projection T x X -> X.

    The base becomes the product ring T x X and every structure coefficient
    alpha becomes the external product 1_T x alpha.
    """
    new_base = kunneth_product(ambient, model.base)
    unit = ambient.unit()
    table = {}
    for g1, row in model._table.items():
        for g2, entry in row.items():
            table[(g1, g2)] = {
                gkey: external_product(unit, cyc) for gkey, cyc in entry.items()
            }
    return FibrationModel(
        new_base, model.fiber, table,
        name=f"{ambient.name} x {model.name}",
        is_trivial=model.is_trivial,
    )


@dataclass
class BatteryReport:
    """Identity-principle surrogate: family re-verified over ambient factors."""

    model_name: str
    entries: list = field(default_factory=list)  # (ambient name, FamilyReport)

    @property
    def passed(self):
        return all(rep.passed for _, rep in self.entries)

    def lines(self):
        out = [f"ambient battery for {self.model_name}: {'pass' if self.passed else 'FAIL'}"]
        for name, rep in self.entries:
            out.append(f"  over {name}:")
            out.extend("  " + line for line in rep.lines())
        return out

    def to_dict(self):
        return {
            "check": "ambient-battery",
            "model": self.model_name,
            "passed": self.passed,
            "entries": [{"ambient": n, "report": r.to_dict()} for n, r in self.entries],
        }


def manin_battery(model, battery=None, samples=25, seed=0, bound=10):
    """Re-verify the projector family after extending by each battery ring.

    The default battery is {point, P^1, P^2}; extending by T and checking the
    operator identities exactly on CH(T x Y) is the finite surrogate for the
    identity principle's quantification over all T.
    """
    if battery is None:
        from .catalog import projective_space

        battery = [projective_space(0), projective_space(1), projective_space(2)]
    report = BatteryReport(model.name)
    for ambient in battery:
        extended = ambient_extend(model, ambient)
        family = build_projector_family(extended)
        report.entries.append((ambient.name, verify_projector_family(family, samples, seed, bound)))
    return report


# -- motive comparison between models with the same base and fiber ---------------


class MotiveIsoPair:
    """Mutually inverse piece maps between two models over one base and fiber.

    The forward map reads off the base coefficients of a cycle with the first
    model's projector family and rebuilds the cycle on the second model,
    generator by generator; the backward map goes the other way.  On each
    piece the two composites reproduce the corresponding projector.
    """

    def __init__(self, model1, model2):
        if model1.base is not model2.base:
            raise ValueError("motive comparison needs a common base ring")
        if model1.fiber is not model2.fiber:
            raise ValueError("motive comparison needs a common fiber ring")
        self.model1 = model1
        self.model2 = model2
        self.family1 = build_projector_family(model1)
        self.family2 = build_projector_family(model2)

    def _transport(self, source_family, target_model, y):
        coeffs = source_family.apply_all_with_coefficients(y)
        out = target_model.zero()
        for g, (alpha, _) in coeffs.items():
            out = out + target_model.multiply(
                target_model.generator(g), target_model.pullback(alpha)
            )
        return out

    def forward(self, y):
        return self._transport(self.family1, self.model2, y)

    def backward(self, y):
        return self._transport(self.family2, self.model1, y)

    def forward_piece(self, gkey, y):
        alpha = self.family1.coefficient(gkey, y)
        return self.model2.multiply(
            self.model2.generator(tuple(gkey)), self.model2.pullback(alpha)
        )

    def backward_piece(self, gkey, y):
        alpha = self.family2.coefficient(gkey, y)
        return self.model1.multiply(
            self.model1.generator(tuple(gkey)), self.model1.pullback(alpha)
        )

    def verify(self):
        """Check both composites piecewise against the projectors, on every
        module basis element of both models."""
        report = FamilyReport(f"{self.model1.name} ~ {self.model2.name}")
        piece_fail, full_fail = [], []
        count = 0
        for model, family, fwd, bwd in (
            (self.model1, self.family1, self.forward_piece, self.backward_piece),
            (self.model2, self.family2, self.backward_piece, self.forward_piece),
        ):
            for y in model.module_basis():
                count += 1
                pieces = family.apply_all(y)
                total = model.zero()
                for g, piece in pieces.items():
                    # fwd/bwd are already swapped per model by the loop tuple
                    roundtrip = bwd(g, fwd(g, y))
                    if roundtrip != piece:
                        piece_fail.append(
                            f"piece {g} roundtrip differs from projector on {y!r} of {model.name}"
                        )
                    total = total + roundtrip
                if total != y:
                    full_fail.append(f"roundtrip sum differs from input on {y!r} of {model.name}")
        report.add("piecewise roundtrip equals projector", piece_fail, count)
        report.add("roundtrip completeness", full_fail, count)
        return report


def motive_iso_pair(model1, model2):
    return MotiveIsoPair(model1, model2)


# -- bridges for trivial models --------------------------------------------------


def to_kunneth(model, y):
    """Coordinates of a trivial model's cycle on the product ring X x Z."""
    if not model.is_trivial:
        raise ValueError(f"{model.name} is not a trivial model")
    ring = kunneth_product(model.base, model.fiber)
    out = ring.zero()
    for g, cyc in y.parts.items():
        out = out + external_product(cyc, model.fiber.basis_cycle(g))
    return out


def from_kunneth(model, cycle):
    """Inverse of to_kunneth: split a product-ring cycle along the fiber."""
    if not model.is_trivial:
        raise ValueError(f"{model.name} is not a trivial model")
    ring = kunneth_product(model.base, model.fiber)
    if cycle.ring is not ring:
        raise ValueError(f"cycle lives in {cycle.ring.name}, not {ring.name}")
    parts = {}
    for key, c in cycle.coeffs.items():
        a, b = ring._key_to_pair[key]
        add = model.base.basis_cycle(a) * c
        parts[b.key] = parts[b.key] + add if b.key in parts else add
    return FiberedCycle(model, parts)
