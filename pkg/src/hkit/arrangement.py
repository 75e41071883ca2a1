"""Discriminant hyperplane arrangements: grouping parallel walls with
multiplicities, stabilizer ranks at points, multi-incidence flats, and the
simplicity conditions for affine slices.

Arrangements are central (all offsets 0) for the discriminant of a matrix B,
or affine for slices of a deformation family. All arithmetic is exact
(int normals, Fraction offsets); parallel walls are detected up to sign.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import DimensionMismatch, NonPrimitiveRow
from .intmat import (
    IntMatrix,
    canonical_sign,
    is_primitive,
    kernel_basis,
    rank,
    smith_normal_form,
)

SUBSET_ENUMERATION_LIMIT = 12


class Kind(Enum):
    FIRST_KIND = "first"
    SECOND_KIND = "second"
    UNKNOWN = "unknown"


@dataclass(frozen=True, order=True)
class Hyperplane:
    """The affine hyperplane <normal, eta> = offset, in canonical form:
    normal primitive with positive leading entry (offset flips with it)."""

    normal: tuple
    offset: Fraction = Fraction(0)

    @classmethod
    def canonical(cls, normal, offset=Fraction(0)):
        normal = tuple(int(x) for x in normal)
        if not is_primitive(normal):
            raise ValueError(f"normal {list(normal)} is not primitive")
        offset = Fraction(offset)
        flipped = canonical_sign(normal)
        if flipped != normal:
            offset = -offset
        return cls(normal=flipped, offset=offset)

    def contains(self, point):
        if len(point) != len(self.normal):
            raise DimensionMismatch(
                f"point has dimension {len(point)}, hyperplane {len(self.normal)}"
            )
        return sum(Fraction(x) * b for x, b in zip(point, self.normal)) == self.offset


@dataclass(frozen=True)
class ArrangementComponent:
    hyperplane: Hyperplane
    multiplicity: int
    kind: Kind


@dataclass(frozen=True)
class ArrangementSpec:
    """Distinct hyperplanes with multiplicities, sorted canonically."""

    n: int
    components: tuple

    def __post_init__(self):
        seen = set()
        for comp in self.components:
            if comp.multiplicity < 1:
                raise ValueError("multiplicity below 1")
            if len(comp.hyperplane.normal) != self.n:
                raise DimensionMismatch("component dimension differs from ambient n")
            if comp.hyperplane in seen:
                raise ValueError(f"duplicate hyperplane {comp.hyperplane}")
            seen.add(comp.hyperplane)

    def __len__(self):
        return len(self.components)

    def is_central(self):
        return all(c.hyperplane.offset == 0 for c in self.components)

    def wall_multiset(self):
        """Multiset view for equality checks: sorted (normal, offset, mult)."""
        return tuple(
            sorted(
                (c.hyperplane.normal, c.hyperplane.offset, c.multiplicity)
                for c in self.components
            )
        )


def _kind_from_multiplicity(mult):
    return Kind.FIRST_KIND if mult >= 2 else Kind.SECOND_KIND


def group_hyperplanes(n, pairs):
    """Build an ArrangementSpec from (normal, offset) pairs.

    Pairs with equal canonical hyperplane are merged into one component whose
    multiplicity is the group size. Kind is multiplicity >= 2 -> first kind.
    """
    counts = {}
    for normal, offset in pairs:
        h = Hyperplane.canonical(normal, offset)
        counts[h] = counts.get(h, 0) + 1
    comps = tuple(
        ArrangementComponent(h, m, _kind_from_multiplicity(m))
        for h, m in sorted(counts.items())
    )
    return ArrangementSpec(n=n, components=comps)


def build_discriminant(B: IntMatrix) -> ArrangementSpec:
    """Central discriminant arrangement of B: one wall per parallel class of
    rows (up to sign), multiplicity = class size."""
    for i in range(B.rows):
        if not is_primitive(B.row(i)):
            raise NonPrimitiveRow(i, B.row(i))
    return group_hyperplanes(B.cols, ((B.row(i), Fraction(0)) for i in range(B.rows)))


def stabilizer_rank(arr: ArrangementSpec, eta):
    """Rank of the lattice spanned by the normals of walls through eta.

    Each wall counts once regardless of multiplicity; the incident normals are
    returned in component order.
    """
    eta = tuple(Fraction(x) for x in eta)
    if len(eta) != arr.n:
        raise DimensionMismatch(f"point dimension {len(eta)} != ambient {arr.n}")
    incident = [c.hyperplane.normal for c in arr.components if c.hyperplane.contains(eta)]
    if not incident:
        return 0, []
    return rank(IntMatrix(incident, cols=arr.n)), incident


# -- exact affine solving ------------------------------------------------------


def _solve_affine(normals, offsets, n):
    """Solve <b_i, eta> = offset_i exactly over Q.

    Returns (consistent, particular point or None, rank).
    """
    rows = [[Fraction(x) for x in b] + [Fraction(o)] for b, o in zip(normals, offsets)]
    m = len(rows)
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if rows[i][n] != 0:
            return False, None, r
    point = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        point[c] = rows[i][n]
    return True, tuple(point), r


def _rref_key(normals, offsets, n):
    """Canonical key for the affine subspace cut out by the system: the RREF
    of the augmented matrix, as a tuple of pivot rows."""
    rows = [[Fraction(x) for x in b] + [Fraction(o)] for b, o in zip(normals, offsets)]
    m = len(rows)
    r = 0
    for c in range(n + 1):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return tuple(tuple(row) for row in rows[:r])


@dataclass(frozen=True)
class FlatDescriptor:
    """A multi-incidence flat: the common intersection of >= 2 walls."""

    members: frozenset
    direction: IntMatrix
    point: tuple
    codimension: int

    def sorted_members(self):
        return tuple(sorted(self.members))


class FlatList(list):
    """List of FlatDescriptor with a truncation marker (pairwise-only mode)."""

    truncated = False


def f_locus(arr: ArrangementSpec, subset_limit=SUBSET_ENUMERATION_LIMIT) -> FlatList:
    """All maximal flats spanned by >= 2 distinct walls, with exact codimension.

    Beyond subset_limit walls only pairwise flats are enumerated and the
    result carries truncated=True.
    """
    comps = arr.components
    result = FlatList()
    if len(comps) < 2:
        return result
    if len(comps) <= subset_limit:
        subsets = itertools.chain.from_iterable(
            itertools.combinations(range(len(comps)), k)
            for k in range(2, len(comps) + 1)
        )
    else:
        subsets = itertools.combinations(range(len(comps)), 2)
        result.truncated = True

    seen = {}
    for subset in subsets:
        normals = [comps[i].hyperplane.normal for i in subset]
        offsets = [comps[i].hyperplane.offset for i in subset]
        consistent, point, _ = _solve_affine(normals, offsets, arr.n)
        if not consistent:
            continue
        key = _rref_key(normals, offsets, arr.n)
        if key in seen:
            continue
        direction = kernel_basis(IntMatrix(normals, cols=arr.n))
        members = frozenset(
            i
            for i, c in enumerate(comps)
            if c.hyperplane.contains(point)
            and all(
                sum(b * v for b, v in zip(c.hyperplane.normal, direction.row(r))) == 0
                for r in range(direction.rows)
            )
        )
        codim = rank(IntMatrix([comps[i].hyperplane.normal for i in sorted(members)], cols=arr.n))
        seen[key] = FlatDescriptor(
            members=members, direction=direction, point=point, codimension=codim
        )
    result.extend(sorted(seen.values(), key=lambda f: f.sorted_members()))
    return result


@dataclass(frozen=True)
class SimplicityReport:
    """The two affine-slice conditions: (a) no n+1 walls meet, and (b) the
    normals of every meeting subset extend to a Z-basis."""

    no_excess_intersections: bool
    normals_extend_to_basis: bool
    violations_a: tuple = field(default_factory=tuple)
    violations_b: tuple = field(default_factory=tuple)

    @property
    def simple(self):
        return self.no_excess_intersections and self.normals_extend_to_basis


def check_simplicity(arr: ArrangementSpec) -> SimplicityReport:
    comps = arr.components
    n = arr.n
    violations_a = []
    for subset in itertools.combinations(range(len(comps)), n + 1):
        normals = [comps[i].hyperplane.normal for i in subset]
        offsets = [comps[i].hyperplane.offset for i in subset]
        consistent, _, _ = _solve_affine(normals, offsets, n)
        if consistent:
            violations_a.append(subset)

    violations_b = []
    if len(comps) <= SUBSET_ENUMERATION_LIMIT:
        max_size = len(comps)
    else:
        max_size = min(len(comps), n + 1)
    for k in range(1, max_size + 1):
        for subset in itertools.combinations(range(len(comps)), k):
            normals = [comps[i].hyperplane.normal for i in subset]
            offsets = [comps[i].hyperplane.offset for i in subset]
            consistent, _, _ = _solve_affine(normals, offsets, n)
            if not consistent:
                continue
            stacked = IntMatrix(normals, cols=n)
            snf = smith_normal_form(stacked)
            part_of_basis = snf.torsion_free and len(snf.invariant_factors) == k
            if not part_of_basis:
                violations_b.append(subset)

    return SimplicityReport(
        no_excess_intersections=not violations_a,
        normals_extend_to_basis=not violations_b,
        violations_a=tuple(violations_a),
        violations_b=tuple(violations_b),
    )


# -- deterministic generic sampling --------------------------------------------


def _primes():
    yield 2
    found = [2]
    candidate = 3
    while True:
        if all(candidate % p for p in found if p * p <= candidate):
            found.append(candidate)
            yield candidate
        candidate += 2


def _prime_window(window, n):
    gen = _primes()
    for _ in range(window * n):
        next(gen)
    return tuple(Fraction(next(gen)) for _ in range(n))


def generic_point_off(arr: ArrangementSpec, max_windows=1000):
    """Deterministic rational point lying on no wall of the arrangement.

    Coordinates come from consecutive prime windows; on accidental incidence
    the next window is tried.
    """
    for window in range(max_windows):
        p = _prime_window(window, arr.n)
        if all(not c.hyperplane.contains(p) for c in arr.components):
            return p
    raise RuntimeError("no generic point found within the window budget")


def generic_point_on(arr: ArrangementSpec, index, max_windows=1000):
    """Deterministic rational point on wall `index` and off all other walls."""
    target = arr.components[index].hyperplane
    b = target.normal
    bb = sum(x * x for x in b)
    for window in range(max_windows):
        p = _prime_window(window, arr.n)
        shift = (target.offset - sum(x * y for x, y in zip(b, p))) / bb
        eta = tuple(x + shift * y for x, y in zip(p, b))
        if all(
            not c.hyperplane.contains(eta)
            for i, c in enumerate(arr.components)
            if i != index
        ):
            return eta
    raise RuntimeError("no on-wall generic point found within the window budget")
