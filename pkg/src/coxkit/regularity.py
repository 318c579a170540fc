"""Regular elements, Coxeter elements, and the Galois action on their classes.

An element is zeta-regular when it has a zeta-eigenvector lying on none of the
reflecting hyperplanes.  The implementation quantifies over subspaces instead
of vectors: the full eigenspace must not be contained in any single hyperplane.
Over an infinite field this is equivalent (a subspace is never the union of
finitely many proper intersections), and it turns the definition into finitely
many exact containment checks.

Regularity is constant on conjugacy classes, so every scan here walks class
representatives; per-element questions reduce to a class lookup plus an order
filter.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .cyclotomic import CycloNum, root_of_unity
from .errors import IntegrityError, UsageError
from .groups import GroupTable
from .invariants import DegreeData, FieldData, _units, phi, phi_w
from .linalg import char_poly, eigenspace, subspace_contained_in

# groups larger than this use class-level scans instead of per-element scans
EXHAUSTIVE_LIMIT = 1200


@dataclass(frozen=True)
class RegEig:
    """A regular eigenvalue zeta_d^exponent together with its eigenspace size."""

    order: int
    exponent: int
    eigenspace_dim: int


@dataclass(frozen=True)
class RegularClassSet:
    """Conjugacy classes of the regular elements of one fixed order.

    ``classes`` pairs each class representative with the regular eigenvalues
    (primitive d-th roots) carried by that class.  The eigenvalue sets of
    distinct classes partition all phi(d) primitive d-th roots, each block of
    size phi_w(d).
    """

    order: int
    classes: tuple[tuple[int, tuple[RegEig, ...]], ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(rep for rep, _ in self.classes)


def _zeta(table: GroupTable, d: int, k: int) -> CycloNum:
    ambient = table.ambient_conductor
    if ambient % d != 0:
        raise UsageError(
            f"no root of order {d} in the ambient field Q(zeta_{ambient})"
        )
    return root_of_unity(ambient, (ambient // d) * k)


def is_zeta_regular(table: GroupTable, w: int, zeta: CycloNum) -> bool:
    """True iff w has a zeta-eigenvector off every reflecting hyperplane."""
    zeta = zeta.promote(table.ambient_conductor)
    memo = table._cache.setdefault("zeta_regular", {})
    key = (w, zeta)
    hit = memo.get(key)
    if hit is not None:
        return hit
    eig = eigenspace(table.promoted_matrix(w), zeta)
    if eig.dim == 0:
        memo[key] = False
        return False
    result = not any(
        subspace_contained_in(eig, h) for h in table.promoted_hyperplanes()
    )
    memo[key] = result
    return result


def regular_eigen_exponents(table: GroupTable, w: int, d: int) -> list[RegEig]:
    """The primitive d-th roots for which w is regular (possibly none)."""
    if table.ambient_conductor % d != 0:
        return []
    out = []
    for k in _units(d):
        zeta = _zeta(table, d, k)
        if is_zeta_regular(table, w, zeta):
            dim = eigenspace(table.promoted_matrix(w), zeta).dim
            out.append(RegEig(d, k, dim))
    return out


def regular_class_map(table: GroupTable, d: int) -> dict[int, int]:
    """Map each primitive d-th root exponent to the class id of its regular
    elements; empty when d is not a regular number."""
    memo = table._cache.setdefault("regular_class_map", {})
    if d in memo:
        return memo[d]
    result: dict[int, int] = {}
    if table.ambient_conductor % d == 0:
        candidates = [
            (rep, cid)
            for cid, rep in enumerate(table.class_reps)
            if table.order_of[rep] == d
        ]
        for k in _units(d):
            zeta = _zeta(table, d, k)
            owners = [
                cid for rep, cid in candidates if is_zeta_regular(table, rep, zeta)
            ]
            if len(owners) > 1:
                raise IntegrityError(
                    f"distinct classes both regular for one root of order {d}"
                )
            if owners:
                result[k] = owners[0]
    if result and len(result) != phi(d):
        raise IntegrityError(
            f"only part of the primitive roots of order {d} admit regular "
            "elements"
        )
    memo[d] = result
    return result


def regular_classes(table: GroupTable, degree_data: DegreeData, d: int) -> RegularClassSet:
    """Classes of regular elements of order d and their regular eigenvalues."""
    class_map = regular_class_map(table, d)
    if not class_map:
        raise UsageError(f"{d} is not a regular number for this group")
    by_class: dict[int, list[int]] = {}
    order_seen: list[int] = []
    for k in sorted(class_map):
        cid = class_map[k]
        if cid not in by_class:
            by_class[cid] = []
            order_seen.append(cid)
        by_class[cid].append(k)
    classes = []
    expected_block = phi_w(d, degree_data.exponents)
    for cid in order_seen:
        rep = table.class_reps[cid]
        eigs = tuple(
            RegEig(d, k, eigenspace(table.promoted_matrix(rep), _zeta(table, d, k)).dim)
            for k in by_class[cid]
        )
        if len(eigs) != expected_block:
            raise IntegrityError(
                f"class owns {len(eigs)} primitive roots of order {d}, "
                f"expected phi_w = {expected_block}"
            )
        classes.append((rep, eigs))
    return RegularClassSet(d, tuple(classes))


def is_coxeter_element(table: GroupTable, degree_data: DegreeData, w: int) -> bool:
    """Regular of order h (the largest degree)."""
    if not table.is_well_generated:
        raise UsageError("Coxeter elements are defined for well-generated groups")
    h = degree_data.coxeter_number
    if table.order_of[w] != h:
        return False
    cid = table.class_of[w]
    return cid in regular_class_map(table, h).values()


def eigenvalue_of_order_h(table: GroupTable, degree_data: DegreeData, w: int) -> bool:
    """Does w have an eigenvalue that is a primitive h-th root of unity?"""
    h = degree_data.coxeter_number
    if table.ambient_conductor % h != 0:
        return False
    if table.order_of[w] % h != 0:
        # an eigenvalue of order h forces h to divide the element order
        return False
    m = table.promoted_matrix(w)
    return any(
        eigenspace(m, _zeta(table, h, k)).dim > 0 for k in _units(h)
    )


def coxeter_class_reps(table: GroupTable, degree_data: DegreeData) -> list[int]:
    """Representatives of the Coxeter classes, in class order."""
    h = degree_data.coxeter_number
    cids = sorted(set(regular_class_map(table, h).values()))
    return [table.class_reps[cid] for cid in cids]


def eigenvalue_multiset(table: GroupTable, w: int) -> tuple[CycloNum, ...]:
    """All eigenvalues of w with multiplicity, via exact eigenspace dimensions.

    Elements have finite order, hence are diagonalizable with d-th root of
    unity eigenvalues for d the element order; dimensions must sum to n.
    """
    d = table.order_of[w]
    ambient = table.ambient_conductor
    m = table.promoted_matrix(w)
    values: list[CycloNum] = []
    total = 0
    for j in range(d):
        lam = root_of_unity(ambient, (ambient // d) * j)
        dim = eigenspace(m, lam).dim
        values.extend([lam] * dim)
        total += dim
        if total == table.n:
            break
    if total != table.n:
        raise IntegrityError("eigenspace dimensions do not sum to the rank")
    return tuple(values)


@dataclass(frozen=True)
class SpringerReport:
    conjugacy_ok: bool
    eigenvalues_ok: bool
    eigenvalues: tuple[CycloNum, ...]
    expected: tuple[CycloNum, ...]

    @property
    def ok(self) -> bool:
        return self.conjugacy_ok and self.eigenvalues_ok


def springer_checks(
    table: GroupTable,
    degree_data: DegreeData,
    w: int,
    zeta: CycloNum,
) -> SpringerReport:
    """Verify the two classical facts about a zeta-regular element w:
    every zeta-regular element is conjugate to w, and the eigenvalue multiset
    of w is {zeta^{-m_1}, ..., zeta^{-m_n}} over the exponents."""
    zeta = zeta.promote(table.ambient_conductor)
    if not is_zeta_regular(table, w, zeta):
        raise UsageError("element is not regular for the given eigenvalue")
    wcid = table.class_of[w]
    d = table.order_of[w]
    if table.order <= EXHAUSTIVE_LIMIT:
        scan = [x for x in range(table.order) if table.order_of[x] == d]
    else:
        scan = [r for r in table.class_reps if table.order_of[r] == d]
    conj_ok = all(
        table.class_of[x] == wcid
        for x in scan
        if is_zeta_regular(table, x, zeta)
    )
    expected = Counter(
        zeta ** ((-m) % d if d > 0 else 0) for m in degree_data.exponents
    )
    actual = Counter(eigenvalue_multiset(table, w))
    return SpringerReport(
        conjugacy_ok=conj_ok,
        eigenvalues_ok=actual == expected,
        eigenvalues=tuple(sorted(actual.elements(), key=lambda c: c.nums)),
        expected=tuple(sorted(expected.elements(), key=lambda c: c.nums)),
    )


def galois_action_on_classes(
    table: GroupTable, class_set: RegularClassSet, p: int
) -> tuple[int, ...]:
    """Permutation induced on the classes by c -> c^p, for p coprime to the
    order.  Position i maps to the position of the class containing rep_i^p."""
    d = class_set.order
    if math.gcd(p, d) != 1:
        raise UsageError(f"power {p} is not coprime to the order {d}")
    positions = {table.class_of[rep]: i for i, (rep, _) in enumerate(class_set.classes)}
    perm = []
    for rep, _ in class_set.classes:
        power = _power_index(table, rep, p % d)
        cid = table.class_of[power]
        if cid not in positions:
            raise IntegrityError("powering left the set of regular classes")
        perm.append(positions[cid])
    return tuple(perm)


def _power_index(table: GroupTable, w: int, k: int) -> int:
    x = table.identity
    base = w
    while k:
        if k & 1:
            x = table.mult(x, base)
        base = table.mult(base, base)
        k >>= 1
    return x


def check_simply_transitive(
    table: GroupTable,
    degree_data: DegreeData,
    field_data: FieldData,
    d: int | None = None,
) -> bool:
    """Is the powering action on the order-d regular classes simply
    transitive?  Transitive with as many classes as the field degree."""
    if d is None:
        d = degree_data.coxeter_number
    class_set = regular_classes(table, degree_data, d)
    k = len(class_set.classes)
    reached = {0}
    for p in _units(d):
        perm = galois_action_on_classes(table, class_set, p)
        reached.add(perm[0])
    return len(reached) == k and k == field_data.field_degree


def charpoly_field_check(table: GroupTable, field_data: FieldData, c: int) -> bool:
    """The coefficients of the characteristic polynomial of a Coxeter element
    must generate the field of definition: equal Galois stabilizers."""
    ambient = field_data.ambient_conductor
    coeffs = [x.promote(ambient) for x in char_poly(table.matrices[c])]
    stab = frozenset(
        k
        for k in _units(ambient)
        if all(x.galois(k) == x for x in coeffs)
    )
    return stab == field_data.trace_stabilizer
