"""Integer matrix normal forms and an invariant-splitting fixed-point test
with an explicit non-density certificate in the degenerate case.

All computations are over Python ints and Fractions; nothing here rounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .linalg import (
    Subspace,
    det,
    kernel,
    matrix,
)

IntMatrix = tuple[tuple[int, ...], ...]


def _check_int_matrix(rows: Sequence[Sequence[int]], square: bool = True) -> IntMatrix:
    out = []
    for row in rows:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValueError(f"matrix entries must be integers, got {x!r}")
        out.append(tuple(row))
    if not out:
        raise ValueError("matrix must be nonempty")
    width = len(out[0])
    if any(len(row) != width for row in out):
        raise ValueError("ragged matrix")
    if square and width != len(out):
        raise ValueError("matrix must be square")
    return tuple(out)


@dataclass(frozen=True)
class IntegerEndomorphism:
    matrix: IntMatrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", _check_int_matrix(self.matrix))

    @property
    def size(self) -> int:
        return len(self.matrix)

    def image(self, v: Sequence[int | Fraction]):
        return tuple(
            sum(a * x for a, x in zip(row, v, strict=True)) for row in self.matrix
        )


def det_integer(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    m = [list(row) for row in rows]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _identity_int(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(a: IntegerEndomorphism) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(U, D, V) with U a V = D diagonal, d_i | d_{i+1}, U and V unimodular.

    The factorization is re-verified before returning; a failure raises.
    """
    k = a.size
    d = [list(row) for row in a.matrix]
    u = _identity_int(k)
    v = _identity_int(k)

    def row_sub(i: int, j: int, q: int) -> None:
        if q:
            d[i] = [x - q * y for x, y in zip(d[i], d[j])]
            u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i: int, j: int, q: int) -> None:
        if q:
            for row in d:
                row[i] -= q * row[j]
            for row in v:
                row[i] -= q * row[j]

    for s in range(k):
        while True:
            best = None
            for r in range(s, k):
                for c in range(s, k):
                    if d[r][c] != 0 and (
                        best is None or abs(d[r][c]) < abs(d[best[0]][best[1]])
                    ):
                        best = (r, c)
            if best is None:
                break  # remaining block is zero
            r0, c0 = best
            if r0 != s:
                d[s], d[r0] = d[r0], d[s]
                u[s], u[r0] = u[r0], u[s]
            if c0 != s:
                for row in d:
                    row[s], row[c0] = row[c0], row[s]
                for row in v:
                    row[s], row[c0] = row[c0], row[s]
            if d[s][s] < 0:
                d[s] = [-x for x in d[s]]
                u[s] = [-x for x in u[s]]
            p = d[s][s]
            dirty = False
            for r in range(s + 1, k):
                if d[r][s] != 0:
                    row_sub(r, s, d[r][s] // p)
                    dirty = dirty or d[r][s] != 0
            for c in range(s + 1, k):
                if d[s][c] != 0:
                    col_sub(c, s, d[s][c] // p)
                    dirty = dirty or d[s][c] != 0
            if dirty:
                continue  # remainders shrank the pivot candidates; rescan
            offender = next(
                (
                    r
                    for r in range(s + 1, k)
                    if any(d[r][c] % p != 0 for c in range(s + 1, k))
                ),
                None,
            )
            if offender is None:
                break
            # pull the non-divisible row up so the next pivot divides everything
            d[s] = [x + y for x, y in zip(d[s], d[offender])]
            u[s] = [x + y for x, y in zip(u[s], u[offender])]
        if best is None:
            break

    uu = tuple(tuple(row) for row in u)
    dd = tuple(tuple(row) for row in d)
    vv = tuple(tuple(row) for row in v)
    _verify_snf(a.matrix, uu, dd, vv)
    return uu, dd, vv


def _verify_snf(a: IntMatrix, u: IntMatrix, d: IntMatrix, v: IntMatrix) -> None:
    k = len(a)
    av = [
        [sum(a[r][t] * v[t][c] for t in range(k)) for c in range(k)]
        for r in range(k)
    ]
    uav = [
        [sum(u[r][t] * av[t][c] for t in range(k)) for c in range(k)]
        for r in range(k)
    ]
    ok = all(
        uav[r][c] == (d[r][c] if r == c else 0) and (r == c or d[r][c] == 0)
        for r in range(k)
        for c in range(k)
    )
    diag = [d[i][i] for i in range(k)]
    for i in range(k - 1):
        if diag[i] == 0 and diag[i + 1] != 0:
            ok = False
        if diag[i] != 0 and diag[i + 1] % diag[i] != 0:
            ok = False
    ok = ok and all(x >= 0 for x in diag)
    ok = ok and abs(det_integer(u)) == 1 and abs(det_integer(v)) == 1
    if not ok:
        raise RuntimeError("normal form self-check failed")


def elementary_divisors(a: IntegerEndomorphism) -> tuple[int, ...]:
    _, d, _ = smith_normal_form(a)
    return tuple(d[i][i] for i in range(a.size))


def lattice_index(a: IntegerEndomorphism) -> int | None:
    """Index of the image lattice a(Z^k) in Z^k; None when a is singular.

    Computed as |det a| and independently cross-checked against the product
    of the elementary divisors.
    """
    d = det_integer(a.matrix)
    prod = 1
    for x in elementary_divisors(a):
        prod *= x
    if abs(d) != prod:
        raise RuntimeError("index cross-check failed: determinant and divisors disagree")
    return None if d == 0 else abs(d)


@dataclass(frozen=True)
class SplitDecomposition:
    """A direct-sum splitting of the ambient rational space."""

    e1: Subspace
    e2: Subspace

    def __post_init__(self) -> None:
        if self.e1.ambient_dim != self.e2.ambient_dim:
            raise ValueError("the two summands live in different ambient dimensions")
        if self.e1.dim + self.e2.dim != self.e1.ambient_dim:
            raise ValueError("summand dimensions do not fill the ambient space")
        if not self.e1.intersect(self.e2).is_zero():
            raise ValueError("summands overlap; not a direct sum")


@dataclass(frozen=True)
class NonDensityWitness:
    """Integer vector x with A^T x = x, gcd of entries 1, plus the hyperplane
    x-perp intersected with the second summand. Projections of lattice points
    onto the second summand land in hyperplane + Z * projection(x / |x|^2)."""

    vector: tuple[int, ...]
    hyperplane: Subspace


@dataclass(frozen=True)
class SplittingVerdict:
    integral: bool
    e1_invariant: bool
    e2_invariant: bool
    restriction_invertible: bool
    det_minus_identity: int
    index: int | None
    witness: NonDensityWitness | None

    @property
    def hypotheses_ok(self) -> bool:
        return self.integral and self.e1_invariant and self.e2_invariant and self.restriction_invertible

    @property
    def conclusion_holds(self) -> bool:
        return self.index is not None


def _integer_fixed_covector(a: IntegerEndomorphism) -> tuple[int, ...]:
    """First canonical kernel vector of (A^T - I), scaled to integers, gcd 1."""
    k = a.size
    rows = tuple(
        tuple(
            Fraction(a.matrix[r][c] - (1 if r == c else 0))
            for r in range(k)
        )
        for c in range(k)
    )
    basis = kernel(rows, k)
    if not basis:
        raise RuntimeError("no fixed covector although the determinant vanishes")
    first = basis[0]
    scale = lcm(*(f.denominator for f in first)) if len(first) > 1 else first[0].denominator
    ints = [int(f * scale) for f in first]
    g = gcd(*ints) if len(ints) > 1 else abs(ints[0])
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def check_splitting(a: IntegerEndomorphism, split: SplitDecomposition) -> SplittingVerdict:
    """Fixed-point test of an integer map against an invariant splitting.

    When the splitting is invariant and the map minus the identity is
    invertible on the first summand, a nonzero determinant of (A - I) gives
    the finite index |det(A - I)|; a zero determinant instead produces an
    integer fixed covector of the transpose, certifying that projections of
    lattice points onto the second summand stay inside countably many
    translates of a proper hyperplane. Density is never claimed; only its
    failure is ever certified.
    """
    k = a.size
    if split.e1.ambient_dim != k:
        raise ValueError("splitting dimension does not match the matrix")

    e1_invariant = all(split.e1.contains(a.image(row)) for row in split.e1.basis)
    e2_invariant = all(split.e2.contains(a.image(row)) for row in split.e2.basis)

    if split.e1.is_zero():
        restriction_invertible = True
    elif not e1_invariant:
        restriction_invertible = False
    else:
        cols = []
        for row in split.e1.basis:
            shifted = tuple(x - y for x, y in zip(a.image(row), row, strict=True))
            coords = split.e1.coordinates_of(shifted)
            assert coords is not None  # follows from invariance
            cols.append(coords)
        restriction_invertible = det(matrix(cols)) != 0

    ident_shift = tuple(
        tuple(a.matrix[r][c] - (1 if r == c else 0) for c in range(k)) for r in range(k)
    )
    dmi = det_integer(ident_shift)

    index: int | None = None
    witness: NonDensityWitness | None = None
    if dmi != 0:
        if e1_invariant and e2_invariant and restriction_invertible:
            index = abs(dmi)
    else:
        x = _integer_fixed_covector(a)
        at_x = tuple(
            sum(a.matrix[r][c] * x[r] for r in range(k)) for c in range(k)
        )
        if at_x != x:
            raise RuntimeError("fixed covector self-check failed")
        perp = Subspace(k, kernel((tuple(Fraction(v) for v in x),), k))
        witness = NonDensityWitness(x, perp.intersect(split.e2))
    return SplittingVerdict(
        integral=True,
        e1_invariant=e1_invariant,
        e2_invariant=e2_invariant,
        restriction_invertible=restriction_invertible,
        det_minus_identity=dmi,
        index=index,
        witness=witness,
    )
