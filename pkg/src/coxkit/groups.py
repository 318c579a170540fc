"""Construction and enumeration of finite matrix reflection groups.

A group is built by breadth-first closure of a generator list under matrix
multiplication, deduplicating via the canonical hashes of exact cyclotomic
matrices.  Discovery order is deterministic: the queue is FIFO and generators
are applied in the order given, so enumerating the same generators twice
yields identical index assignments.

The resulting GroupTable keeps the element matrices at the conductor of the
generator entries and exposes an ambient conductor
L = lcm(base conductor, group exponent); eigenvalue work promotes matrices
into Q(zeta_L) on demand (cached).  Group combinatorics (multiplication,
inverses, conjugacy, orders) run on integer index tables built from the
Cayley-graph edges, not on matrices, so they stay fast for groups in the
ten-thousands of elements.
"""

from __future__ import annotations

import math
from functools import cached_property
from typing import Optional, Sequence

from .cyclotomic import CycloNum, root_of_unity
from .errors import IntegrityError, ResourceCapError, UsageError
from .linalg import (
    Matrix,
    Subspace,
    kernel,
    mat_mul,
    mat_sub,
    rank,
)

DEFAULT_CAP = 100_000


def build_imprimitive(d: int, e: int, n: int) -> list[Matrix]:
    """Standard generator kit for the imprimitive group G(de, e, n).

    * G(1,1,n): the transposition matrices s_1, ..., s_{n-1} (symmetric group
      in its n-dimensional permutation realization; reducible).
    * G(m,1,n): t = diag(zeta_m, 1, ..., 1) followed by s_1, ..., s_{n-1}.
    * G(e,e,n): t with t(b_1) = w*b_2, t(b_2) = w^{-1}*b_1 for w = zeta_e,
      followed by s_1, ..., s_{n-1}.
    * G(de,e,n), d,e > 1: z = diag(zeta_de^e, 1, ..., 1), then t as above with
      w = zeta_de, then s_1, ..., s_{n-1}.  The kit is validated downstream by
      the order formula (de)^n * n!/e and the degree computation.
    """
    if d < 1 or e < 1 or n < 1:
        raise UsageError(f"invalid imprimitive parameters ({d}, {e}, {n})")
    if d * e == 1 and n == 1:
        raise UsageError("G(1,1,1) is empty of reflections; not a valid spec")
    m = d * e
    conductor = m if m > 1 else 1
    zero = CycloNum.zero(conductor)
    one = CycloNum.one(conductor)

    def transposition(i: int) -> Matrix:
        rows = [[one if r == c else zero for c in range(n)] for r in range(n)]
        rows[i][i] = zero
        rows[i + 1][i + 1] = zero
        rows[i][i + 1] = one
        rows[i + 1][i] = one
        return Matrix(rows)

    def twisted_transposition(w: CycloNum) -> Matrix:
        # sends b_1 -> w*b_2 and b_2 -> w^{-1}*b_1
        rows = [[one if r == c else zero for c in range(n)] for r in range(n)]
        rows[0][0] = zero
        rows[1][1] = zero
        rows[1][0] = w
        rows[0][1] = w.invert()
        return Matrix(rows)

    def diagonal_reflection(w: CycloNum) -> Matrix:
        rows = [[one if r == c else zero for c in range(n)] for r in range(n)]
        rows[0][0] = w
        return Matrix(rows)

    transpositions = [transposition(i) for i in range(n - 1)]
    if m == 1:
        if n < 2:
            raise UsageError("G(1,1,1) is trivial; nothing to generate")
        return transpositions
    if n == 1:
        # G(m,e,1): cyclic group generated by diag(zeta_m^e)
        return [diagonal_reflection(root_of_unity(conductor, e))]
    if e == 1:
        return [diagonal_reflection(root_of_unity(conductor, 1))] + transpositions
    if d == 1:
        return [twisted_transposition(root_of_unity(conductor, 1))] + transpositions
    return (
        [diagonal_reflection(root_of_unity(conductor, e))]
        + [twisted_transposition(root_of_unity(conductor, 1))]
        + transpositions
    )


class GroupTable:
    """A fully enumerated matrix group with index-level combinatorics.

    Elements are addressed by their discovery index; matrices, inverse and
    order tables, conjugacy classes, reflections and hyperplane data are all
    exposed on the instance.  The table is immutable after construction and
    safe to share.
    """

    def __init__(self, generators: Sequence[Matrix], cap: int = DEFAULT_CAP):
        if not generators:
            raise UsageError("at least one generator required")
        n = generators[0].n
        conductor = generators[0].conductor
        for g in generators:
            if g.n != n or g.conductor != conductor:
                raise UsageError("generators must share dimension and conductor")
            if rank(g) != n:
                raise UsageError("generators must be invertible")
        self.n = n
        self.base_conductor = conductor
        self._cache: dict = {}
        self._enumerate(list(generators), cap)
        self._build_index_tables()
        self._build_conjugacy()
        self._build_orders()
        self._build_reflections()
        self.ambient_conductor = math.lcm(self.base_conductor, self.exponent)
        self._promoted: dict[int, Matrix] = {}
        self._promoted_hyperplanes: Optional[list[Subspace]] = None

    # -- enumeration ---------------------------------------------------

    def _enumerate(self, generators: list[Matrix], cap: int) -> None:
        ident = Matrix.identity(self.n, self.base_conductor)
        mats: list[Matrix] = [ident]
        index: dict[Matrix, int] = {ident: 0}
        parent: list[tuple[int, int]] = [(-1, -1)]
        right: list[list[int]] = [[] for _ in generators]
        cache = self._cache
        i = 0
        while i < len(mats):
            a = mats[i]
            for g, gen in enumerate(generators):
                c = mat_mul(a, gen, cache)
                j = index.get(c)
                if j is None:
                    if len(mats) >= cap:
                        raise ResourceCapError(
                            f"group order exceeds enumeration cap {cap}"
                        )
                    j = len(mats)
                    mats.append(c)
                    index[c] = j
                    parent.append((i, g))
                right[g].append(j)
            i += 1
        self.order = len(mats)
        self.matrices = mats
        self.index_of = index
        self.identity = 0
        self._parent = parent
        self._right = right
        self.generators = [right[g][0] for g in range(len(generators))]
        self.generator_matrices = list(generators)
        self._words: list[Optional[tuple[int, ...]]] = [None] * self.order
        self._words[0] = ()

    def word(self, i: int) -> tuple[int, ...]:
        """Generator word (sequence of generator positions) reaching element i."""
        w = self._words[i]
        if w is None:
            chain = []
            j = i
            while self._words[j] is None:
                p, g = self._parent[j]
                chain.append((j, g))
                j = p
            base = self._words[j]
            for j2, g in reversed(chain):
                base = base + (g,)
                self._words[j2] = base
            w = self._words[i]
        return w

    def mult(self, i: int, j: int) -> int:
        """Index of element i * element j (left-to-right composition of the
        underlying matrices)."""
        x = i
        right = self._right
        for g in self.word(j):
            x = right[g][x]
        return x

    def _build_index_tables(self) -> None:
        ngens = len(self.generators)
        order = self.order
        # inverse permutations of the right-multiplication edges: x -> x * g^-1
        self._right_inv = []
        for g in range(ngens):
            inv_perm = [0] * order
            for x, y in enumerate(self._right[g]):
                inv_perm[y] = x
            self._right_inv.append(inv_perm)
        # left-multiplication tables for each generator, by the BFS recursion
        # g*(parent*a) = (g*parent)*a
        self._left = [self._left_table(self.generators[g]) for g in range(ngens)]
        # generator orders and inverses from the right edges
        gen_inv = []
        for g in range(ngens):
            x = self._right[g][0]
            prev = 0
            while x != 0:
                prev = x
                x = self._right[g][x]
            gen_inv.append(prev if prev != 0 else 0)
        # inverse table: (parent*a)^-1 = a^-1 * parent^-1
        left_gen_inv = [self._left_table(gi) for gi in gen_inv]
        inv = [0] * order
        for x in range(1, order):
            p, a = self._parent[x]
            inv[x] = left_gen_inv[a][inv[p]]
        self.inv = inv

    def _left_table(self, j: int) -> list[int]:
        table = [0] * self.order
        table[0] = j
        right = self._right
        parent = self._parent
        for x in range(1, self.order):
            p, a = parent[x]
            table[x] = right[a][table[p]]
        return table

    def conjugate_by_generator(self, g: int, x: int) -> int:
        """Index of gen_g * x * gen_g^{-1}."""
        return self._left[g][self._right_inv[g][x]]

    def conjugate(self, a: int, x: int) -> int:
        """Index of a * x * a^{-1}."""
        return self.mult(self.mult(a, x), self.inv[a])

    # -- conjugacy classes ----------------------------------------------

    def _build_conjugacy(self) -> None:
        order = self.order
        ngens = len(self.generators)
        class_of = [-1] * order
        classes: list[list[int]] = []
        for start in range(order):
            if class_of[start] != -1:
                continue
            cid = len(classes)
            orbit = [start]
            class_of[start] = cid
            frontier = [start]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in range(ngens):
                        y = self.conjugate_by_generator(g, x)
                        if class_of[y] == -1:
                            class_of[y] = cid
                            orbit.append(y)
                            nxt.append(y)
                frontier = nxt
            classes.append(sorted(orbit))
        self.class_of = class_of
        self.conj_classes = classes
        self.class_reps = [cls[0] for cls in classes]

    # -- element orders ---------------------------------------------------

    def _build_orders(self) -> None:
        order_of = [0] * self.order
        for rep, cls in zip(self.class_reps, self.conj_classes):
            m = 1
            x = rep
            while x != self.identity:
                x = self.mult(x, rep)
                m += 1
            for i in cls:
                order_of[i] = m
        self.order_of = order_of
        self.exponent = math.lcm(*order_of) if order_of else 1

    # -- reflections and hyperplanes ---------------------------------------

    def _build_reflections(self) -> None:
        # dim of the fixed space is a class function: rank(gwg^-1 - I) = rank(w - I)
        ident = Matrix.identity(self.n, self.base_conductor)
        fixed_dim = [0] * self.order
        fixed_of_rep: dict[int, Subspace] = {}
        for rep, cls in zip(self.class_reps, self.conj_classes):
            ker = kernel(mat_sub(self.matrices[rep], ident))
            fixed_of_rep[rep] = ker
            for i in cls:
                fixed_dim[i] = ker.dim
        self.fixed_space_dim = fixed_dim
        self._fixed_of_rep = fixed_of_rep
        self.reflections = [
            i for i in range(self.order) if fixed_dim[i] == self.n - 1
        ]
        # hyperplane classes, ordered by first reflection that fixes them
        hyperplane_of: dict[int, Subspace] = {}
        buckets: dict[Subspace, list[int]] = {}
        hyperplane_order: list[Subspace] = []
        for r in self.reflections:
            h = kernel(mat_sub(self.matrices[r], ident))
            hyperplane_of[r] = h
            if h not in buckets:
                buckets[h] = []
                hyperplane_order.append(h)
            buckets[h].append(r)
        self.hyperplane_of = hyperplane_of
        self.hyperplane_classes = [
            (h, 1 + len(buckets[h]), tuple(buckets[h])) for h in hyperplane_order
        ]
        for h, e_h, refs in self.hyperplane_classes:
            if e_h < 2:
                raise IntegrityError("hyperplane with trivial pointwise stabilizer")
            # the pointwise stabilizer must be cyclic of order e_H
            stab = {self.identity, *refs}
            cyclic = False
            for r in refs:
                if self.order_of[r] == e_h:
                    powers = {self.identity}
                    x = r
                    while x != self.identity:
                        powers.add(x)
                        x = self.mult(x, r)
                    cyclic = powers == stab
                    if cyclic:
                        break
            if not cyclic:
                raise IntegrityError("pointwise hyperplane stabilizer is not cyclic")
        if len(self.reflections) != sum(
            e - 1 for _, e, _ in self.hyperplane_classes
        ):
            raise IntegrityError("reflection count disagrees with hyperplane data")

    # -- class functions -----------------------------------------------------

    @cached_property
    def traces(self) -> list[CycloNum]:
        """Trace of every element (computed per conjugacy class)."""
        out: list[Optional[CycloNum]] = [None] * self.order
        for rep, cls in zip(self.class_reps, self.conj_classes):
            t = self.matrices[rep].trace()
            for i in cls:
                out[i] = t
        return out  # type: ignore[return-value]

    def is_irreducible(self) -> bool:
        """Exact character-norm criterion: (1/|W|) sum tr(w) conj(tr(w)) = 1."""
        total = CycloNum.zero(self.base_conductor)
        for rep, cls in zip(self.class_reps, self.conj_classes):
            t = self.matrices[rep].trace()
            total = total + CycloNum.rational(len(cls), self.base_conductor) * (
                t * t.conjugate()
            )
        return total == CycloNum.rational(self.order, self.base_conductor)

    @cached_property
    def is_reflection_group(self) -> bool:
        """True iff the reflections generate the whole group."""
        return len(self.subgroup_closure(self.reflections)) == self.order

    @cached_property
    def is_well_generated(self) -> bool:
        """Irreducible and generated by n reflections.

        Fast path: the given generator kit is n reflections.  Otherwise search
        n-subsets of the reflections (only feasible for small groups, which is
        exactly where the question arises in this catalog).
        """
        if not self.is_irreducible():
            return False
        refl = set(self.reflections)
        if len(self.generators) == self.n and all(
            g in refl for g in self.generators
        ):
            return True
        from itertools import combinations

        if math.comb(len(self.reflections), self.n) > 200_000:
            raise ResourceCapError(
                "well-generation search too large for this group"
            )
        for subset in combinations(self.reflections, self.n):
            if len(self.subgroup_closure(subset)) == self.order:
                return True
        return False

    def subgroup_closure(self, seeds: Sequence[int]) -> set[int]:
        """Indices of the subgroup generated by the given element indices."""
        closure = {self.identity}
        frontier = [self.identity]
        seeds = list(seeds)
        while frontier:
            nxt = []
            for x in frontier:
                for s in seeds:
                    y = self.mult(x, s)
                    if y not in closure:
                        closure.add(y)
                        nxt.append(y)
            frontier = nxt
        return closure

    def pointwise_stabilizer_order(self, h: Subspace) -> int:
        """Order of the pointwise stabilizer of a reflecting hyperplane."""
        for hyper, e_h, _ in self.hyperplane_classes:
            if hyper == h:
                return e_h
        raise UsageError("subspace is not a reflecting hyperplane of this group")

    # -- ambient-conductor views ------------------------------------------

    def promoted_matrix(self, i: int) -> Matrix:
        """Element matrix promoted into the ambient field Q(zeta_L), cached."""
        m = self._promoted.get(i)
        if m is None:
            m = self.matrices[i].promote(self.ambient_conductor)
            self._promoted[i] = m
        return m

    def promoted_hyperplanes(self) -> list[Subspace]:
        if self._promoted_hyperplanes is None:
            self._promoted_hyperplanes = [
                h.promote(self.ambient_conductor)
                for h, _, _ in self.hyperplane_classes
            ]
        return self._promoted_hyperplanes

    def sanity_check(self, sample: int = 64) -> None:
        """Group-axiom spot checks: identities exactly, associativity sampled."""
        for i in range(self.order):
            if self.mult(i, self.inv[i]) != self.identity:
                raise IntegrityError("inverse law failed")
            if self.mult(self.identity, i) != i or self.mult(i, self.identity) != i:
                raise IntegrityError("identity law failed")
        step = max(1, self.order // max(1, int(round(sample ** (1 / 3)))))
        picks = list(range(0, self.order, step))[:sample]
        for a in picks[: max(1, len(picks) // 4)]:
            for b in picks[: max(1, len(picks) // 4)]:
                for c in picks[: max(1, len(picks) // 4)]:
                    if self.mult(self.mult(a, b), c) != self.mult(a, self.mult(b, c)):
                        raise IntegrityError("associativity failed")


def enumerate_group(generators: Sequence[Matrix], cap: int = DEFAULT_CAP) -> GroupTable:
    """Breadth-first closure of the generators into a full GroupTable."""
    return GroupTable(generators, cap=cap)


def conjugacy_classes(table: GroupTable) -> list[list[int]]:
    """The conjugacy partition (each class sorted, representative = least index)."""
    return [list(cls) for cls in table.conj_classes]


def imprimitive_order(d: int, e: int, n: int) -> int:
    """|G(de,e,n)| = (de)^n * n! / e."""
    return (d * e) ** n * math.factorial(n) // e
