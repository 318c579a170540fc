"""Exact matrices and subspaces over a cyclotomic field.

Matrices are immutable and hashable so enumerated groups can deduplicate
elements by equality.  Subspaces are always stored in reduced row echelon form
with unit pivots, which makes subspace equality a plain tuple comparison and
keeps hyperplane bookkeeping cheap.

Elimination pivots on the first nonzero entry in row-major scan order; with
exact arithmetic there is nothing to gain from pivoting heuristics and the
fixed rule keeps every result deterministic.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .cyclotomic import CycloNum, euler_phi
from .errors import ResourceCapError, UsageError

Vector = tuple[CycloNum, ...]


class Matrix:
    """Square matrix over Q(zeta_N), all entries sharing the conductor N."""

    __slots__ = ("n", "conductor", "rows", "_hash")

    def __init__(self, rows: Sequence[Sequence[CycloNum]]):
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise UsageError("matrix must be square and nonempty")
        conductor = rows[0][0].conductor
        for r in rows:
            for x in r:
                if x.conductor != conductor:
                    raise UsageError("mixed conductors inside one matrix")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "_hash", hash(self.rows))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Matrix({[[str(x) for x in r] for r in self.rows]})"

    @classmethod
    def identity(cls, n: int, conductor: int = 1) -> "Matrix":
        one = CycloNum.one(conductor)
        zero = CycloNum.zero(conductor)
        return cls(
            [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    def entry(self, i: int, j: int) -> CycloNum:
        return self.rows[i][j]

    def trace(self) -> CycloNum:
        total = CycloNum.zero(self.conductor)
        for i in range(self.n):
            total = total + self.rows[i][i]
        return total

    def promote(self, m: int) -> "Matrix":
        if m == self.conductor:
            return self
        return Matrix([[x.promote(m) for x in r] for r in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)))

    def apply(self, v: Vector) -> Vector:
        zero = CycloNum.zero(self.conductor)
        out = []
        for row in self.rows:
            acc = zero
            for a, x in zip(row, v):
                if not (a.is_zero() or x.is_zero()):
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)


def mat_mul(a: Matrix, b: Matrix, cache: Optional[dict] = None) -> Matrix:
    """Exact matrix product.  An optional cache memoizes scalar products and
    sums; group enumeration passes one because its entries repeat heavily."""
    if a.n != b.n or a.conductor != b.conductor:
        raise UsageError("shape or conductor mismatch in matrix product")
    n = a.n
    zero = CycloNum.zero(a.conductor)
    cols = list(zip(*b.rows))
    if cache is None:
        rows = []
        for arow in a.rows:
            row = []
            for col in cols:
                acc = zero
                for x, y in zip(arow, col):
                    if not (x.is_zero() or y.is_zero()):
                        acc = acc + x * y
                row.append(acc)
            rows.append(row)
        return Matrix(rows)

    mul_cache, add_cache = cache.setdefault("mul", {}), cache.setdefault("add", {})
    rows = []
    for arow in a.rows:
        row = []
        for col in cols:
            acc = zero
            for x, y in zip(arow, col):
                if x.is_zero() or y.is_zero():
                    continue
                key = (x, y)
                prod = mul_cache.get(key)
                if prod is None:
                    prod = x * y
                    mul_cache[key] = prod
                if acc.is_zero():
                    acc = prod
                else:
                    skey = (acc, prod)
                    s = add_cache.get(skey)
                    if s is None:
                        s = acc + prod
                        add_cache[skey] = s
                    acc = s
            row.append(acc)
        rows.append(row)
    return Matrix(rows)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    if a.n != b.n or a.conductor != b.conductor:
        raise UsageError("shape or conductor mismatch in matrix difference")
    return Matrix(
        [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a.rows, b.rows)]
    )


def mat_scale(a: Matrix, s: CycloNum) -> Matrix:
    if s.conductor != a.conductor:
        raise UsageError("conductor mismatch in scalar multiple")
    return Matrix([[s * x for x in r] for r in a.rows])


def _rref(rows: list[list[CycloNum]], width: int) -> tuple[list[list[CycloNum]], list[int]]:
    # In-place reduced row echelon form; returns (nonzero rows, pivot columns).
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].invert()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


class Subspace:
    """A subspace of Q(zeta_N)^n with a canonical reduced-echelon basis."""

    __slots__ = ("ambient_dim", "conductor", "basis", "pivots", "_hash")

    def __init__(self, ambient_dim: int, conductor: int, vectors: Iterable[Vector]):
        rows = [list(v) for v in vectors]
        for row in rows:
            if len(row) != ambient_dim:
                raise UsageError("vector length does not match ambient dimension")
        reduced, pivots = _rref(rows, ambient_dim)
        basis = tuple(tuple(r) for r in reduced)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", tuple(pivots))
        object.__setattr__(self, "_hash", hash((ambient_dim, conductor, basis)))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.conductor == other.conductor
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce_vector(self, v: Vector) -> Vector:
        """Residual of v after elimination against the basis (zero iff v in span)."""
        work = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = work[p]
            if not c.is_zero():
                work = [x - c * y for x, y in zip(work, row)]
        return tuple(work)

    def contains_vector(self, v: Vector) -> bool:
        return all(x.is_zero() for x in self.reduce_vector(v))

    def promote(self, m: int) -> "Subspace":
        # a field embedding maps an echelon basis to an echelon basis
        if m == self.conductor:
            return self
        return Subspace(
            self.ambient_dim,
            m,
            [tuple(x.promote(m) for x in row) for row in self.basis],
        )

    @classmethod
    def full(cls, n: int, conductor: int = 1) -> "Subspace":
        return cls(n, conductor, Matrix.identity(n, conductor).rows)

    @classmethod
    def zero_space(cls, n: int, conductor: int = 1) -> "Subspace":
        return cls(n, conductor, [])


def subspace_contained_in(a: Subspace, b: Subspace) -> bool:
    """True iff every basis vector of a lies in the span of b (exact)."""
    if a.ambient_dim != b.ambient_dim:
        raise UsageError("ambient dimension mismatch")
    if a.conductor != b.conductor:
        raise UsageError("conductor mismatch (promote first)")
    return all(b.contains_vector(v) for v in a.basis)


def rank(a: Matrix) -> int:
    rows = [list(r) for r in a.rows]
    reduced, _ = _rref(rows, a.n)
    return len(reduced)


def kernel(a: Matrix) -> Subspace:
    """Canonical echelon basis of the null space; dim = n - rank."""
    n = a.n
    rows = [list(r) for r in a.rows]
    reduced, pivots = _rref(rows, n)
    zero = CycloNum.zero(a.conductor)
    one = CycloNum.one(a.conductor)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    vectors = []
    for c in free_cols:
        v = [zero] * n
        v[c] = one
        for row, p in zip(reduced, pivots):
            v[p] = -row[c]
        vectors.append(tuple(v))
    return Subspace(n, a.conductor, vectors)


def eigenspace(a: Matrix, lam: CycloNum) -> Subspace:
    """kernel(a - lam*I); lam is promoted into the matrix conductor if needed."""
    if lam.conductor != a.conductor:
        if a.conductor % lam.conductor == 0:
            lam = lam.promote(a.conductor)
        else:
            raise UsageError(
                "eigenvalue conductor does not divide the matrix conductor"
            )
    rows = [list(r) for r in a.rows]
    for i in range(a.n):
        rows[i][i] = rows[i][i] - lam
    return kernel(Matrix(rows))


def char_poly(a: Matrix) -> tuple[CycloNum, ...]:
    """Exact characteristic polynomial det(X*I - A), monic of degree n.

    Returned as ascending coefficients (c_0, ..., c_{n-1}, 1).  Computed by
    the Faddeev-LeVerrier recurrence, which only ever divides by integers.
    """
    n = a.n
    cond = a.conductor
    one = CycloNum.one(cond)
    coeffs = [CycloNum.zero(cond)] * (n + 1)
    coeffs[n] = one
    m = Matrix.identity(n, cond)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = m.trace() * CycloNum.rational(-1, cond) / CycloNum.rational(k, cond)
        coeffs[n - k] = c
        if k < n:
            rows = [list(r) for r in m.rows]
            for i in range(n):
                rows[i][i] = rows[i][i] + c
            m = Matrix(rows)
    return tuple(coeffs)


def eval_poly(coeffs: Sequence[CycloNum], x: CycloNum) -> CycloNum:
    total = CycloNum.zero(x.conductor)
    for c in reversed(coeffs):
        total = total * x + (c.promote(x.conductor) if c.conductor != x.conductor else c)
    return total


def matrix_order(a: Matrix, cap: int = 10_000) -> int:
    """Least m >= 1 with a^m = I, by repeated multiplication."""
    ident = Matrix.identity(a.n, a.conductor)
    power = a
    m = 1
    while power != ident:
        power = mat_mul(power, a)
        m += 1
        if m > cap:
            raise ResourceCapError(f"element order exceeds cap {cap}")
    return m


def is_root_of_unity_of_order(x: CycloNum, d: int) -> bool:
    return x.root_of_unity_order() == d
