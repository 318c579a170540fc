"""Numerical invariants of an enumerated reflection group.

Degrees are not read from tables: they are recovered from the group itself by
factoring the fixed-space generating polynomial

    P(t) = sum over w of t^(dim fixed space of w) = prod (t + m_i),

whose integer roots -m_i are the exponents.  Two classical identities,
sum(m_i) = number of reflections and prod(m_i + 1) = group order, are asserted
on every group, so a bad catalog entry cannot slip through.

The field of definition is computed as the fixed field of the subgroup of
(Z/L)^x fixing every element trace; traces are class functions, so class
representatives suffice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .cyclotomic import euler_phi
from .errors import IntegrityError, UsageError
from .groups import GroupTable


@dataclass(frozen=True)
class DegreeData:
    degrees: tuple[int, ...]
    exponents: tuple[int, ...]
    coxeter_number: int


@dataclass(frozen=True)
class FieldData:
    ambient_conductor: int
    trace_stabilizer: frozenset[int]
    field_degree: int


def phi(j: int) -> int:
    """Euler totient (count of 1 <= k <= j coprime to j)."""
    return euler_phi(j)


def phi_w(j: int, exponents: tuple[int, ...]) -> int:
    """Number of distinct residues mod j among the exponents coprime to j.

    Counting residues (rather than exponents with multiplicity) is what makes
    the class-counting identity |classes of regular elements of order d| =
    phi(d)/phi_w(d) hold below the Coxeter number: distinct exponents can
    collapse to one primitive d-th root.  At d = h the two readings agree,
    since exponents lie in [1, h-1].
    """
    if j < 1:
        raise UsageError(f"phi_w undefined for {j}")
    return len({m % j for m in exponents if math.gcd(m, j) == 1})


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def degrees_and_exponents(table: GroupTable) -> DegreeData:
    """Degrees, exponents and Coxeter number from the fixed-space polynomial."""
    if not table.is_reflection_group:
        raise UsageError("group is not generated by its reflections")
    n = table.n
    coeffs = [0] * (n + 1)
    for rep, cls in zip(table.class_reps, table.conj_classes):
        coeffs[table.fixed_space_dim[rep]] += len(cls)
    # factor P(t) = prod (t + m_i) by peeling integer roots in ascending order
    exponents = []
    poly = list(coeffs)
    m = 0
    bound = sum(abs(c) for c in coeffs)
    while len(poly) > 1:
        # synthetic division of poly by (t + m); exact iff -m is a root
        quotient = [0] * (len(poly) - 1)
        carry = poly[-1]
        for i in range(len(poly) - 2, -1, -1):
            quotient[i] = carry
            carry = poly[i] - m * carry
        if carry == 0:
            exponents.append(m)
            poly = quotient
        else:
            m += 1
            if m > bound:
                raise IntegrityError(
                    "fixed-space polynomial does not factor over the "
                    "nonnegative integers; not a reflection group?"
                )
    exponents.sort()
    degrees = tuple(m + 1 for m in exponents)
    data = DegreeData(degrees, tuple(exponents), degrees[-1])
    if sum(exponents) != len(table.reflections):
        raise IntegrityError("sum of exponents disagrees with reflection count")
    if math.prod(degrees) != table.order:
        raise IntegrityError("product of degrees disagrees with group order")
    return data


@lru_cache(maxsize=None)
def _units(modulus: int) -> tuple[int, ...]:
    return tuple(
        k for k in range(1, modulus + 1) if math.gcd(k, modulus) == 1
    )


def field_of_definition(table: GroupTable) -> FieldData:
    """Trace stabilizer inside (Z/L)^x and the degree of the trace field."""
    ambient = table.ambient_conductor
    traces = [
        table.matrices[rep].trace().promote(ambient) for rep in table.class_reps
    ]
    stabilizer = frozenset(
        k
        for k in _units(ambient)
        if all(t.galois(k) == t for t in traces)
    )
    # closure under multiplication is automatic for a stabilizer; assert anyway
    for a in stabilizer:
        for b in stabilizer:
            if (a * b) % ambient not in stabilizer and ambient > 1:
                raise IntegrityError("trace stabilizer is not a subgroup")
    degree = euler_phi(ambient) // len(stabilizer)
    return FieldData(ambient, stabilizer, degree)


def gw_stabilizer(exponents: tuple[int, ...], h: int) -> frozenset[int]:
    """Setwise stabilizer of {zeta_h^{m_i}} inside (Z/h)^x: all units k with
    {k*m_i mod h} = {m_i mod h} as sets."""
    if h < 1:
        raise UsageError(f"invalid order {h}")
    residues = {m % h for m in exponents}
    return frozenset(
        k for k in _units(h) if {(k * m) % h for m in residues} == residues
    )


def gw_matches_lemma(exponents: tuple[int, ...], h: int) -> bool:
    """Check the closed form of the exponent-set stabilizer: it must equal
    {-m_i mod h : gcd(m_i, h) = 1} and have exactly phi_w(h) elements."""
    expected = frozenset(
        (-m) % h for m in exponents if math.gcd(m, h) == 1
    )
    actual = gw_stabilizer(exponents, h)
    return actual == expected and len(actual) == phi_w(h, exponents)


def regular_numbers(table: GroupTable, degree_data: DegreeData) -> frozenset[int]:
    """All d >= 1 admitting a regular element of eigenvalue order d.

    Scans conjugacy-class representatives (regularity is a class property)
    over every divisor d of an element order and every primitive d-th root.
    """
    from . import regularity  # local import: regularity depends on this module

    candidates: set[int] = set()
    for rep in table.class_reps:
        o = table.order_of[rep]
        for d in range(1, o + 1):
            if o % d == 0:
                candidates.add(d)
    found = set()
    for d in sorted(candidates):
        if regularity.regular_class_map(table, d):
            found.add(d)
    return frozenset(found)
