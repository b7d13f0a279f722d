"""Graded Chow rings with finite cellular bases.

A ring of dimension n is a free module with one basis cell tau_{p,i} per
codimension p in 0..n and 1-based index i within that codimension.  There is
exactly one cell in codimension 0 (the unit) and one in codimension n (the
point class).  Multiplication is a table of exact integer structure constants,
required at construction to be graded, commutative, associative and unital.

The distinguished basis is expected to be delta-normalized: the product of
tau_{p,i} with tau_{n-p,j} is the point class when i = j and zero otherwise,
so that the dual of a cell is the complementary-codimension cell with the same
second index.  This is a property of the presentation, not of the ring
structure; ``verify_pairing`` reports on it rather than the constructor
enforcing it, because some rings one wants to compute in (notably Kunneth
products of even total dimension) provably admit no such basis.

Coefficients are exact everywhere: Python ints in integer mode, Fraction in
rational mode.  No floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

INTEGER = "integer"
RATIONAL = "rational"


@dataclass(frozen=True)
class BasisCell:
    """One basis element: codimension, 1-based index within it, display label."""

    codim: int
    index: int
    label: str

    @property
    def key(self):
        return (self.codim, self.index)


def _check_coeff(value):
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"exact integer or Fraction coefficient expected, got {value!r}")
    return value


def _join_mode(*modes):
    return RATIONAL if RATIONAL in modes else INTEGER


class Cycle:
    """A formal combination of basis cells of one ring.

    ``coeffs`` maps cell keys (codim, index) to nonzero exact coefficients;
    absent keys are zero.  Instances are immutable by convention: every
    operation returns a fresh cycle.
    """

    __slots__ = ("ring", "coeffs", "mode")

    def __init__(self, ring, coeffs, mode=INTEGER):
        if mode not in (INTEGER, RATIONAL):
            raise ValueError(f"unknown coefficient mode {mode!r}")
        clean = {}
        for key, value in coeffs.items():
            _check_coeff(value)
            if mode == INTEGER and isinstance(value, Fraction):
                if value.denominator != 1:
                    raise ValueError(f"non-integral coefficient {value} in integer mode")
                value = int(value)
            if value != 0:
                if key not in ring._by_key:
                    raise ValueError(f"unknown cell key {key!r} for {ring.name}")
                clean[key] = Fraction(value) if mode == RATIONAL else value
        self.ring = ring
        self.coeffs = clean
        self.mode = mode

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def codims(self):
        return sorted({p for p, _ in self.coeffs})

    def is_homogeneous(self):
        return len(self.codims()) <= 1

    def codim(self):
        """Codimension of a homogeneous nonzero cycle."""
        cs = self.codims()
        if len(cs) != 1:
            raise ValueError(f"cycle is not homogeneous nonzero: {self!r}")
        return cs[0]

    def component(self, p):
        return Cycle(self.ring, {k: v for k, v in self.coeffs.items() if k[0] == p}, self.mode)

    def coefficient(self, cell):
        key = cell.key if isinstance(cell, BasisCell) else self.ring.cell(cell).key
        return self.coeffs.get(key, Fraction(0) if self.mode == RATIONAL else 0)

    def to_rational(self):
        return Cycle(self.ring, self.coeffs, RATIONAL)

    def to_integer(self):
        for key, value in self.coeffs.items():
            if isinstance(value, Fraction) and value.denominator != 1:
                raise ValueError(f"coefficient {value} of {self.ring._by_key[key].label} is not integral")
        return Cycle(self.ring, {k: int(v) for k, v in self.coeffs.items()}, INTEGER)

    # -- arithmetic --------------------------------------------------------

    def _require_same_ring(self, other):
        if self.ring is not other.ring:
            raise ValueError(f"ring mismatch: {self.ring.name} vs {other.ring.name}")

    def __add__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        self._require_same_ring(other)
        coeffs = dict(self.coeffs)
        for key, value in other.coeffs.items():
            coeffs[key] = coeffs.get(key, 0) + value
        return Cycle(self.ring, coeffs, _join_mode(self.mode, other.mode))

    def __neg__(self):
        return Cycle(self.ring, {k: -v for k, v in self.coeffs.items()}, self.mode)

    def __sub__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Cycle):
            return self.ring.multiply(self, other)
        _check_coeff(other)
        mode = RATIONAL if isinstance(other, Fraction) else self.mode
        return Cycle(self.ring, {k: v * other for k, v in self.coeffs.items()}, mode)

    def __rmul__(self, other):
        if isinstance(other, Cycle):
            return NotImplemented
        return self * other

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ring), tuple(sorted((k, Fraction(v)) for k, v in self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for key in sorted(self.coeffs):
            label = self.ring._by_key[key].label
            value = self.coeffs[key]
            if value == 1:
                term = label
            elif value == -1:
                term = f"-{label}"
            else:
                term = f"{value}*{label}"
            parts.append(term)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


class ChowRing:
    """Cellular Chow ring: graded basis plus exact structure constants.

    ``products`` maps ordered pairs of cell keys to {cell key: int}; only one
    order of each pair is needed (the table is symmetrized), products with the
    unit are implied, and omitted entries are zero.
    """

    def __init__(self, dimension, cells, products, name=None, validate=True):
        if dimension < 0:
            raise ValueError("dimension must be nonnegative")
        self.dimension = dimension
        self.name = name or f"ring(dim={dimension})"
        self.cells = tuple(sorted(cells, key=lambda c: c.key))
        self._by_key = {c.key: c for c in self.cells}
        self._by_label = {}
        self._by_codim = {p: [] for p in range(dimension + 1)}
        for cell in self.cells:
            if not 0 <= cell.codim <= dimension:
                raise ValueError(f"cell {cell.label!r} has codim {cell.codim} outside 0..{dimension}")
            if cell.label in self._by_label:
                raise ValueError(f"duplicate cell label {cell.label!r}")
            self._by_label[cell.label] = cell
            self._by_codim[cell.codim].append(cell)
        for p, group in self._by_codim.items():
            if [c.index for c in group] != list(range(1, len(group) + 1)):
                raise ValueError(f"cell indices at codim {p} must be 1..m_p contiguous")
        if len(self._by_codim[0]) != 1 or len(self._by_codim[dimension]) != 1:
            raise ValueError("need exactly one cell in codim 0 and one in top codim")
        self.ranks = tuple(len(self._by_codim[p]) for p in range(dimension + 1))
        self.unit_cell = self._by_codim[0][0]
        self.point_cell = self._by_codim[dimension][0]
        self._table = self._build_table(products)
        if validate:
            self._validate_associativity()

    # -- construction helpers ----------------------------------------------

    def _build_table(self, products):
        table = {}

        def put(k1, k2, entry):
            if k1 in table and k2 in table[k1]:
                if table[k1][k2] != entry:
                    raise ValueError(f"conflicting products for {k1} * {k2}")
                return
            table.setdefault(k1, {})[k2] = entry

        for (k1, k2), raw in products.items():
            k1, k2 = tuple(k1), tuple(k2)
            for k in (k1, k2):
                if k not in self._by_key:
                    raise ValueError(f"product table mentions unknown cell {k!r}")
            total = k1[0] + k2[0]
            entry = {}
            for key, value in raw.items():
                key = tuple(key)
                _check_coeff(value)
                if isinstance(value, Fraction):
                    if value.denominator != 1:
                        raise ValueError("structure constants must be integers")
                    value = int(value)
                if value == 0:
                    continue
                if key not in self._by_key:
                    raise ValueError(f"product {k1} * {k2} hits unknown cell {key!r}")
                if key[0] != total:
                    raise ValueError(
                        f"grading violation: {k1} * {k2} has a codim-{key[0]} term, expected {total}"
                    )
                entry[key] = value
            if total > self.dimension and entry:
                raise ValueError(f"product {k1} * {k2} exceeds top codimension")
            put(k1, k2, entry)
            put(k2, k1, entry)

        unit = self.unit_cell.key
        for cell in self.cells:
            expected = {cell.key: 1}
            if unit in table and cell.key in table[unit]:
                if table[unit][cell.key] != expected:
                    raise ValueError(f"unit law violated at {cell.label!r}")
            table.setdefault(unit, {})[cell.key] = expected
            table.setdefault(cell.key, {})[unit] = expected
        return table

    def _validate_associativity(self):
        # all basis triples; desk-scale rings keep this cheap
        for a in self.cells:
            xa = self.basis_cycle(a)
            for b in self.cells:
                if b.codim + a.codim > self.dimension:
                    continue
                ab = self.multiply(xa, self.basis_cycle(b))
                for c in self.cells:
                    if a.codim + b.codim + c.codim > self.dimension:
                        continue
                    xc = self.basis_cycle(c)
                    bc = self.multiply(self.basis_cycle(b), xc)
                    if self.multiply(ab, xc) != self.multiply(xa, bc):
                        raise ValueError(
                            f"associativity fails at ({a.label}, {b.label}, {c.label})"
                        )

    # -- basis access --------------------------------------------------------

    def cell(self, spec):
        """Resolve a cell from a BasisCell, a (codim, index) key, or a label."""
        if isinstance(spec, BasisCell):
            if spec.key not in self._by_key or self._by_key[spec.key] != spec:
                raise ValueError(f"cell {spec!r} does not belong to {self.name}")
            return spec
        if isinstance(spec, str):
            if spec not in self._by_label:
                raise ValueError(f"no cell labeled {spec!r} in {self.name}")
            return self._by_label[spec]
        key = tuple(spec)
        if key not in self._by_key:
            raise ValueError(f"no cell {key!r} in {self.name}")
        return self._by_key[key]

    def cells_of_codim(self, p):
        return tuple(self._by_codim.get(p, ()))

    def rank(self, p):
        return len(self._by_codim.get(p, ()))

    def basis_cycle(self, spec, mode=INTEGER):
        return Cycle(self, {self.cell(spec).key: 1}, mode)

    def unit(self, mode=INTEGER):
        return self.basis_cycle(self.unit_cell, mode)

    def point(self, mode=INTEGER):
        return self.basis_cycle(self.point_cell, mode)

    def zero(self, mode=INTEGER):
        return Cycle(self, {}, mode)

    def cycle(self, data, mode=INTEGER):
        """Build a cycle from {label or key: coefficient}."""
        coeffs = {}
        for spec, value in data.items():
            key = self.cell(spec).key
            coeffs[key] = coeffs.get(key, 0) + value
        return Cycle(self, coeffs, mode)

    def dual_cell(self, spec):
        """Complementary-codimension cell with the same index (delta convention)."""
        cell = self.cell(spec)
        dual_key = (self.dimension - cell.codim, cell.index)
        if dual_key not in self._by_key:
            raise ValueError(f"no same-index dual for {cell.label!r} in {self.name}")
        return self._by_key[dual_key]

    # -- ring operations ----------------------------------------------------

    def multiply(self, a, b):
        if a.ring is not self or b.ring is not self:
            raise ValueError("multiply: cycles must live in this ring")
        coeffs = {}
        for k1, c1 in a.coeffs.items():
            row = self._table.get(k1, {})
            for k2, c2 in b.coeffs.items():
                entry = row.get(k2)
                if not entry:
                    continue
                scale = c1 * c2
                for key, value in entry.items():
                    coeffs[key] = coeffs.get(key, 0) + scale * value
        return Cycle(self, coeffs, _join_mode(a.mode, b.mode))

    def degree(self, a):
        """Coefficient of the point class (the top-codimension component)."""
        if a.ring is not self:
            raise ValueError("degree: cycle lives in a different ring")
        return a.coeffs.get(self.point_cell.key, Fraction(0) if a.mode == RATIONAL else 0)

    def pairing_matrix(self, p):
        """Matrix of degree(tau_{p,i} * tau_{n-p,j}) over the cell orderings."""
        rows = self.cells_of_codim(p)
        cols = self.cells_of_codim(self.dimension - p)
        return tuple(
            tuple(self.degree(self.multiply(self.basis_cycle(r), self.basis_cycle(c))) for c in cols)
            for r in rows
        )

    def __repr__(self):
        return f"<ChowRing {self.name} dim={self.dimension} ranks={self.ranks}>"


# -- module-level operation surface -----------------------------------------


def multiply(ring, a, b):
    return ring.multiply(a, b)


def degree(ring, a):
    return ring.degree(a)


@dataclass
class PairingReport:
    """Result of checking the delta-normalization of a ring's basis."""

    ring_name: str
    dimension: int
    matrices: dict
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def lines(self):
        out = [f"pairing delta-pattern on {self.ring_name}: {'pass' if self.passed else 'FAIL'}"]
        for p, i, j, value in self.violations:
            out.append(f"  P_{p}[{i},{j}] = {value} (expected {1 if i == j else 0})")
        return out

    def to_dict(self):
        return {
            "check": "pairing",
            "ring": self.ring_name,
            "passed": self.passed,
            "matrices": {str(p): [list(row) for row in m] for p, m in self.matrices.items()},
            "violations": [list(v) for v in self.violations],
        }


def verify_pairing(ring):
    """Check that every pairing matrix P_p is the identity.

    P_p[i][j] = degree(tau_{p,i} * tau_{n-p,j}).  Violations are reported as
    (p, i, j, value) with 1-based cell indices.
    """
    matrices = {}
    violations = []
    for p in range(ring.dimension + 1):
        matrix = ring.pairing_matrix(p)
        matrices[p] = matrix
        for i, row in enumerate(matrix, start=1):
            for j, value in enumerate(row, start=1):
                if value != (1 if i == j else 0):
                    violations.append((p, i, j, value))
    return PairingReport(ring.name, ring.dimension, matrices, violations)


def is_delta_normalized(ring):
    return verify_pairing(ring).passed


# -- Kunneth products ---------------------------------------------------------

_KUNNETH_CACHE = {}


class KunnethRing(ChowRing):
    """Product ring A x B whose cells are ordered pairs of factor cells.

    Codimensions add and multiplication is componentwise.  Cells at
    codimension q are ordered by ascending left-factor codimension for
    2q <= dim, and by descending left-factor codimension above, so that dual
    cells of delta-normalized factors share their index in every degree where
    that is possible.  (At the middle degree of an even-dimensional product
    the pairing matrix is the duality involution's permutation matrix, which
    is the identity only when every middle cell is self-dual; in general no
    basis fixes this, the middle intersection form being indefinite.)
    """

    def __init__(self, left, right):
        self.left = left
        self.right = right
        dimension = left.dimension + right.dimension
        self._pair_to_key = {}
        self._key_to_pair = {}
        cells = []
        for q in range(dimension + 1):
            pairs = [
                (a, b)
                for a in left.cells
                for b in right.cells
                if a.codim + b.codim == q
            ]
            reverse = 2 * q > dimension
            pairs.sort(key=lambda ab: (-ab[0].codim if reverse else ab[0].codim,
                                       ab[0].index, ab[1].index))
            for i, (a, b) in enumerate(pairs, start=1):
                cell = BasisCell(q, i, f"({a.label},{b.label})")
                cells.append(cell)
                self._pair_to_key[(a.key, b.key)] = cell.key
                self._key_to_pair[cell.key] = (a, b)
        products = {}
        for (ka, kb), key1 in self._pair_to_key.items():
            for (kc, kd), key2 in self._pair_to_key.items():
                if key1 > key2 or ka[0] + kb[0] + kc[0] + kd[0] > dimension:
                    continue
                pa = left.multiply(left.basis_cycle(ka), left.basis_cycle(kc))
                pb = right.multiply(right.basis_cycle(kb), right.basis_cycle(kd))
                entry = {}
                for k1, c1 in pa.coeffs.items():
                    for k2, c2 in pb.coeffs.items():
                        entry[self._pair_to_key[(k1, k2)]] = c1 * c2
                products[(key1, key2)] = entry
        # factor laws give associativity componentwise; skip the cubic re-check
        super().__init__(dimension, cells, products,
                         name=f"{left.name} x {right.name}", validate=False)

    def pair_cell(self, a_spec, b_spec):
        a = self.left.cell(a_spec)
        b = self.right.cell(b_spec)
        return self._by_key[self._pair_to_key[(a.key, b.key)]]

    def split_cell(self, spec):
        cell = self.cell(spec)
        return self._key_to_pair[cell.key]


def kunneth_product(left, right):
    """The product ring of two cellular rings, memoized per factor pair."""
    cache_key = (id(left), id(right))
    ring = _KUNNETH_CACHE.get(cache_key)
    if ring is None:
        ring = KunnethRing(left, right)
        _KUNNETH_CACHE[cache_key] = ring
    return ring


def registered_product(left, right):
    ring = _KUNNETH_CACHE.get((id(left), id(right)))
    if ring is None:
        raise ValueError(
            f"product ring not registered: call kunneth_product({left.name}, {right.name}) first"
        )
    return ring


def external_product(a, b):
    """a x b on the previously constructed product of the two carrier rings."""
    ring = registered_product(a.ring, b.ring)
    coeffs = {}
    for ka, ca in a.coeffs.items():
        for kb, cb in b.coeffs.items():
            coeffs[ring._pair_to_key[(ka, kb)]] = ca * cb
    return Cycle(ring, coeffs, _join_mode(a.mode, b.mode))
