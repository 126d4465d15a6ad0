"""Exact linear algebra over the rationals.

Vectors and matrices are immutable tuples with Fraction entries; every
routine here is pure and exact. Floating point never enters this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Scalar = Fraction
Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value: int | str | Fraction) -> Fraction:
    """Coerce an int, Fraction or 'p/q' string to an exact Fraction.

    Floats are rejected: exactness is a module invariant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def vector(values: Iterable[int | str | Fraction]) -> Vector:
    return tuple(as_fraction(v) for v in values)


def matrix(rows: Iterable[Iterable[int | str | Fraction]]) -> Matrix:
    out = tuple(vector(row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("ragged matrix")
    return out


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), ZERO)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(vec_add(r, s) for r, s in zip(a, b, strict=True))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(vec_sub(r, s) for r, s in zip(a, b, strict=True))


def mat_scale(c: Fraction, a: Matrix) -> Matrix:
    return tuple(vec_scale(c, row) for row in a)


def pairs(n: int) -> Iterator[tuple[int, int]]:
    """Ordered index pairs (i, j) with i < j, lexicographic."""
    for i in range(n):
        for j in range(i + 1, n):
            yield (i, j)


def pair_index(i: int, j: int, n: int) -> int:
    """Position of (i, j), i < j, in the lexicographic pair enumeration."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got ({i}, {j}) with n={n}")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def rref(rows: Iterable[Sequence[Fraction]]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns (nonzero rows, pivot columns). The output is the canonical
    representative of the row space: two inputs span the same subspace
    iff their rref outputs are identical tuples.
    """
    work = [list(row) for row in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = ONE / work[r][c]
        work[r] = [inv * x for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def rank(m: Iterable[Sequence[Fraction]]) -> int:
    return len(rref(m)[0])


def kernel(m: Matrix, ncols: int | None = None) -> Matrix:
    """Canonical (rref) basis of the right null space {x : m x = 0}."""
    if not m:
        if ncols is None:
            raise ValueError("kernel of an empty matrix needs an explicit width")
        return identity_matrix(ncols)
    ncols = len(m[0])
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(v)
    return rref(basis)[0]


def solve(a: Matrix, b: Sequence[Fraction]) -> Vector | None:
    """A particular solution of a x = b (free variables set to 0), or None."""
    if not a:
        return None if not is_zero_vector(b) else ()
    ncols = len(a[0])
    augmented = [list(row) + [bi] for row, bi in zip(a, b, strict=True)]
    reduced, pivots = rref(augmented)
    x = [ZERO] * ncols
    for row, p in zip(reduced, pivots):
        if p == ncols:
            return None  # pivot in the constant column: inconsistent
        x[p] = row[ncols]
    return tuple(x)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("inverse of a non-square matrix")
    augmented = [list(row) + list(ident) for row, ident in zip(a, identity_matrix(n))]
    reduced, pivots = rref(augmented)
    if tuple(pivots) != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)


def det(a: Matrix) -> Fraction:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    work = [list(row) for row in a]
    result = ONE
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            result = -result
        result *= work[c][c]
        inv = ONE / work[c][c]
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] * inv
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return result


def symmetric_signature(a: Matrix) -> tuple[int, int, int]:
    """Signature (positive, negative, zero) of a symmetric rational matrix.

    Exact congruence diagonalization; no eigenvalues are computed.
    """
    n = len(a)
    work = [list(row) for row in a]
    if any(len(row) != n for row in a):
        raise ValueError("signature of a non-square matrix")
    if any(work[i][j] != work[j][i] for i, j in pairs(n)):
        raise ValueError("signature of a non-symmetric matrix")
    pos = neg = zero = 0
    for s in range(n):
        if work[s][s] == 0:
            t = next((t for t in range(s + 1, n) if work[t][t] != 0), None)
            if t is not None:
                work[s], work[t] = work[t], work[s]
                for row in work:
                    row[s], row[t] = row[t], row[s]
            else:
                t = next((t for t in range(s + 1, n) if work[s][t] != 0), None)
                if t is None:
                    zero += 1
                    continue
                # both diagonal entries vanish: row/col addition makes
                # work[s][s] = 2 * work[s][t] != 0
                for c in range(n):
                    work[s][c] += work[t][c]
                for r in range(n):
                    work[r][s] += work[r][t]
        d = work[s][s]
        for t in range(s + 1, n):
            if work[t][s] != 0:
                f = work[t][s] / d
                for c in range(n):
                    work[t][c] -= f * work[s][c]
                for r in range(n):
                    work[r][t] -= f * work[r][s]
        if d > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg, zero


@dataclass(frozen=True)
class Subspace:
    """A rational subspace held by its canonical reduced-row-echelon basis.

    Equality of Subspace values is equality of subspaces: the rref basis is
    a unique representative of the span.
    """

    ambient_dim: int
    basis: Matrix

    def __post_init__(self) -> None:
        canonical, _ = rref(self.basis)
        if canonical != self.basis:
            raise ValueError("basis rows are not in canonical reduced echelon form")
        if any(len(row) != self.ambient_dim for row in self.basis):
            raise ValueError("basis row length does not match ambient dimension")

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[Fraction]], ambient_dim: int) -> "Subspace":
        rows = [vector(v) for v in vectors]
        if any(len(row) != ambient_dim for row in rows):
            raise ValueError("vector length does not match ambient dimension")
        return cls(ambient_dim, rref(rows)[0])

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, identity_matrix(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.coordinates_of(v) is not None

    def coordinates_of(self, v: Sequence[Fraction]) -> Vector | None:
        """Coefficients of v in the canonical basis, or None if v is outside."""
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        residue = list(v)
        coords = []
        for row in self.basis:
            p = next(c for c in range(self.ambient_dim) if row[c] != 0)
            coeff = residue[p]
            coords.append(coeff)
            if coeff != 0:
                residue = [x - coeff * y for x, y in zip(residue, row)]
        return tuple(coords) if is_zero_vector(residue) else None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def add(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_vectors(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        constraints = self.constraint_matrix() + other.constraint_matrix()
        return Subspace(self.ambient_dim, kernel(constraints, self.ambient_dim))

    def constraint_matrix(self) -> Matrix:
        """Rows y with y . v = 0 exactly characterizing membership in the span."""
        return kernel(self.basis, self.ambient_dim)

    def orthogonal_complement(self, gram: Matrix) -> "Subspace":
        """Complement with respect to the inner product given by gram."""
        if self.is_zero():
            return Subspace.full(self.ambient_dim)
        constraints = tuple(mat_vec(gram, row) for row in self.basis)
        return Subspace(self.ambient_dim, kernel(constraints, self.ambient_dim))

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("subspaces live in different ambient dimensions")
