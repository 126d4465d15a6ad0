"""Invariant metrics, the Levi-Civita connection, and its closed-form
conformal modification for a closed covector, all in exact arithmetic.

Conventions: a connection is a family of matrices nabla[i], one per basis
direction, acting on coordinate columns; nabla[i] applied to e_j is the
covariant derivative of e_j along e_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .liealg import Covector, LieAlgebra
from .linalg import (
    Matrix,
    Vector,
    as_fraction,
    dot,
    det,
    identity_matrix,
    inverse,
    is_zero_vector,
    mat_mul,
    mat_sub,
    mat_vec,
    pair_index,
    pairs,
    transpose,
    vec_add,
    vec_scale,
    vector,
    zero_vector,
)


@dataclass(frozen=True)
class InnerProduct:
    """A positive definite symmetric bilinear form on basis coordinates."""

    gram: Matrix

    def __post_init__(self) -> None:
        n = len(self.gram)
        if any(len(row) != n for row in self.gram):
            raise ValueError("gram matrix must be square")
        if any(self.gram[i][j] != self.gram[j][i] for i, j in pairs(n)):
            raise ValueError("gram matrix must be symmetric")
        for k in range(1, n + 1):
            minor = tuple(row[:k] for row in self.gram[:k])
            if det(minor) <= 0:
                raise ValueError(
                    f"gram matrix is not positive definite (leading {k}x{k} minor fails)"
                )

    @classmethod
    def identity(cls, n: int) -> "InnerProduct":
        return cls(identity_matrix(n))

    @classmethod
    def from_rows(cls, rows) -> "InnerProduct":
        return cls(tuple(vector(row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.gram)

    def value(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        return dot(x, mat_vec(self.gram, y))

    def sharp(self, theta: Covector) -> Vector:
        """The vector metrically dual to a covector."""
        return mat_vec(inverse(self.gram), theta.coefficients)

    def restrict(self, rows: Sequence[Vector]) -> Matrix:
        """Gram matrix of the form on the given spanning rows."""
        return tuple(tuple(self.value(r, s) for s in rows) for r in rows)


@dataclass(frozen=True)
class Connection:
    dim: int
    nabla: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        n = self.dim
        if len(self.nabla) != n or any(
            len(m) != n or any(len(row) != n for row in m) for m in self.nabla
        ):
            raise ValueError("connection needs one n x n matrix per basis direction")

    def directional(self, x: Sequence[Fraction]) -> Matrix:
        """Matrix of the derivative along the vector x."""
        out = tuple(zero_vector(self.dim) for _ in range(self.dim))
        for i, c in enumerate(x):
            if c != 0:
                out = tuple(
                    vec_add(r, vec_scale(c, m)) for r, m in zip(out, self.nabla[i])
                )
        return out

    def apply(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        return mat_vec(self.directional(x), y)


@dataclass(frozen=True)
class CurvatureTensor:
    """Curvature operators R[i][j] for i < j, pair-indexed; antisymmetric in (i, j)."""

    dim: int
    operators: tuple[Matrix, ...]

    def operator(self, i: int, j: int) -> Matrix:
        if i == j:
            return tuple(zero_vector(self.dim) for _ in range(self.dim))
        if i < j:
            return self.operators[pair_index(i, j, self.dim)]
        neg = self.operators[pair_index(j, i, self.dim)]
        return tuple(vec_scale(Fraction(-1), row) for row in neg)

    def evaluate(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Matrix:
        out = tuple(zero_vector(self.dim) for _ in range(self.dim))
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0 or i == j:
                    continue
                op = self.operator(i, j)
                out = tuple(
                    vec_add(r, vec_scale(xi * yj, m)) for r, m in zip(out, op)
                )
        return out

    def is_flat(self) -> bool:
        return all(
            is_zero_vector(row) for op in self.operators for row in op
        )


def is_closed(algebra: LieAlgebra, theta: Covector) -> bool:
    """A left-invariant covector is closed iff it kills all basis brackets."""
    if theta.dim != algebra.dim:
        raise ValueError("covector dimension does not match the algebra")
    return all(
        theta.value(algebra.basis_bracket(i, j)) == 0 for i, j in pairs(algebra.dim)
    )


def _koszul_rhs(algebra: LieAlgebra, metric: InnerProduct, i: int, j: int) -> Vector:
    """The covector z -> g(D_{e_i} e_j, z) of the metric connection."""
    half = Fraction(1, 2)
    values = []
    for k in range(algebra.dim):
        val = (
            metric.value(algebra.basis_bracket(i, j), algebra.basis_vector(k))
            - metric.value(algebra.basis_bracket(i, k), algebra.basis_vector(j))
            - metric.value(algebra.basis_bracket(j, k), algebra.basis_vector(i))
        )
        values.append(half * val)
    return tuple(values)


def levi_civita(algebra: LieAlgebra, metric: InnerProduct) -> Connection:
    """The torsion-free metric connection, from the Koszul formula."""
    if metric.dim != algebra.dim:
        raise ValueError("metric dimension does not match the algebra")
    gram_inv = inverse(metric.gram)
    n = algebra.dim
    nabla = []
    for i in range(n):
        cols = [mat_vec(gram_inv, _koszul_rhs(algebra, metric, i, j)) for j in range(n)]
        nabla.append(transpose(tuple(cols)))
    return Connection(n, tuple(nabla))


def weyl_connection(algebra: LieAlgebra, metric: InnerProduct, theta: Covector) -> Connection:
    """Conformal modification of the metric connection by a closed covector.

    Built from the closed-form correction of the Levi-Civita connection and
    cross-checked, entry by entry, against the independent inner-product
    route (the Koszul right-hand side plus the covector terms); a mismatch
    raises, signaling an internal inconsistency.
    """
    if theta.dim != algebra.dim:
        raise ValueError("covector dimension does not match the algebra")
    if not is_closed(algebra, theta):
        raise ValueError("covector is not closed; no conformal connection is defined")
    lc = levi_civita(algebra, metric)
    n = algebra.dim
    th = theta.coefficients
    sharp = metric.sharp(theta)
    nabla = []
    for i in range(n):
        m = [list(row) for row in lc.nabla[i]]
        for r in range(n):
            for j in range(n):
                m[r][j] += (
                    (th[i] if r == j else 0)
                    + (th[j] if r == i else 0)
                    - metric.gram[i][j] * sharp[r]
                )
        nabla.append(tuple(tuple(row) for row in m))
    conn = Connection(n, tuple(nabla))

    for i in range(n):
        for j in range(n):
            derivative = mat_vec(conn.nabla[i], algebra.basis_vector(j))
            rhs = _koszul_rhs(algebra, metric, i, j)
            for k in range(n):
                expected = (
                    rhs[k]
                    + th[i] * metric.gram[j][k]
                    + th[j] * metric.gram[i][k]
                    - th[k] * metric.gram[i][j]
                )
                got = metric.value(derivative, algebra.basis_vector(k))
                if got != expected:
                    raise RuntimeError(
                        "conformal connection cross-check failed at "
                        f"({i}, {j}, {k}): the two routes disagree"
                    )
    return conn


def torsion(algebra: LieAlgebra, connection: Connection) -> tuple[Vector, ...]:
    """Torsion vectors T(e_i, e_j) for i < j, pair-indexed."""
    n = algebra.dim
    out = []
    for i, j in pairs(n):
        t = vec_add(
            mat_vec(connection.nabla[i], algebra.basis_vector(j)),
            vec_scale(Fraction(-1), mat_vec(connection.nabla[j], algebra.basis_vector(i))),
        )
        out.append(vec_add(t, vec_scale(Fraction(-1), algebra.basis_bracket(i, j))))
    return tuple(out)


def is_torsion_free(algebra: LieAlgebra, connection: Connection) -> bool:
    return all(is_zero_vector(t) for t in torsion(algebra, connection))


def curvature(algebra: LieAlgebra, connection: Connection) -> CurvatureTensor:
    """R(e_i, e_j) = [nabla_i, nabla_j] - nabla_{[e_i, e_j]} for i < j."""
    n = algebra.dim
    ops = []
    for i, j in pairs(n):
        commutator = mat_sub(
            mat_mul(connection.nabla[i], connection.nabla[j]),
            mat_mul(connection.nabla[j], connection.nabla[i]),
        )
        ops.append(mat_sub(commutator, connection.directional(algebra.basis_bracket(i, j))))
    return CurvatureTensor(n, tuple(ops))
