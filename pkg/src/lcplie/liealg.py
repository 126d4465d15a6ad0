"""Finite-dimensional Lie algebras over Q with exact structure constants.

A LieAlgebra stores the bracket table [e_i, e_j] for i < j only; the rest
follows by antisymmetry. Construction validates the Jacobi identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import (
    Matrix,
    Subspace,
    Vector,
    as_fraction,
    dot,
    identity_matrix,
    is_zero_vector,
    kernel,
    mat_mul,
    mat_sub,
    pair_index,
    pairs,
    transpose,
    vec_add,
    vec_scale,
    vector,
    zero_vector,
)

BracketMap = Mapping[tuple[int, int], Mapping[int, int | str | Fraction]]


def _normalize_brackets(dim: int, brackets: BracketMap) -> tuple[Vector, ...]:
    if dim < 1:
        raise ValueError("dimension must be positive")
    table = [list(zero_vector(dim)) for _ in range(dim * (dim - 1) // 2)]
    seen: set[tuple[int, int]] = set()
    for (i, j), coeffs in brackets.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError(f"bracket indices ({i}, {j}) out of range for dim {dim}")
        if i == j:
            raise ValueError(f"bracket ({i}, {i}) is zero by antisymmetry; do not list it")
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        if (i, j) in seen:
            raise ValueError(f"bracket pair ({i}, {j}) given more than once")
        seen.add((i, j))
        row = table[pair_index(i, j, dim)]
        for k, value in coeffs.items():
            if not 0 <= int(k) < dim:
                raise ValueError(f"bracket coefficient index {k} out of range")
            row[int(k)] = sign * as_fraction(value)
    return tuple(tuple(row) for row in table)


def _table_bracket(dim: int, table: Sequence[Vector], i: int, j: int) -> Vector:
    if i == j:
        return zero_vector(dim)
    if i < j:
        return table[pair_index(i, j, dim)]
    return vec_scale(Fraction(-1), table[pair_index(j, i, dim)])


def _jacobi_defects(dim: int, table: Sequence[Vector]):
    """Yield ((i, j, k), defect vector) for each violated basis triple."""
    def braket(x: Vector, m: int) -> Vector:
        out = zero_vector(dim)
        for idx, c in enumerate(x):
            if c != 0:
                out = vec_add(out, vec_scale(c, _table_bracket(dim, table, idx, m)))
        return out

    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                acc = braket(_table_bracket(dim, table, i, j), k)
                acc = vec_add(acc, braket(_table_bracket(dim, table, j, k), i))
                acc = vec_add(acc, braket(_table_bracket(dim, table, k, i), j))
                if not is_zero_vector(acc):
                    yield (i, j, k), acc


def check_jacobi(dim: int, brackets: BracketMap) -> tuple[tuple[int, int, int], ...]:
    """Violated Jacobi triples of a candidate bracket table (empty = valid)."""
    table = _normalize_brackets(dim, brackets)
    return tuple(triple for triple, _ in _jacobi_defects(dim, table))


@dataclass(frozen=True)
class Covector:
    """A linear functional held by its coefficients on the basis."""

    coefficients: Vector

    @classmethod
    def from_values(cls, values: Iterable[int | str | Fraction]) -> "Covector":
        return cls(vector(values))

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def value(self, v: Sequence[Fraction]) -> Fraction:
        return dot(self.coefficients, v)

    def is_zero(self) -> bool:
        return is_zero_vector(self.coefficients)


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    labels: tuple[str, ...]
    table: tuple[Vector, ...]

    def __post_init__(self) -> None:
        n = self.dim
        if len(self.labels) != n:
            raise ValueError("label count does not match dimension")
        if len(set(self.labels)) != n:
            raise ValueError("basis labels must be distinct")
        if len(self.table) != n * (n - 1) // 2 or any(len(row) != n for row in self.table):
            raise ValueError("bracket table has the wrong shape")
        violations = tuple(t for t, _ in _jacobi_defects(n, self.table))
        if violations:
            raise ValueError(f"Jacobi identity fails at basis triples {violations}")

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: BracketMap,
        labels: Sequence[str] | None = None,
    ) -> "LieAlgebra":
        if labels is None:
            labels = tuple(f"e{i + 1}" for i in range(dim))
        return cls(dim, tuple(labels), _normalize_brackets(dim, brackets))

    @classmethod
    def abelian(cls, dim: int, labels: Sequence[str] | None = None) -> "LieAlgebra":
        return cls.from_brackets(dim, {}, labels)

    def basis_bracket(self, i: int, j: int) -> Vector:
        return _table_bracket(self.dim, self.table, i, j)

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        out = zero_vector(self.dim)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0 or i == j:
                    continue
                out = vec_add(out, vec_scale(xi * yj, self.basis_bracket(i, j)))
        return out

    def ad(self, x: Sequence[Fraction]) -> Matrix:
        """Matrix of ad_x = [x, .]; column j is the bracket with e_j."""
        cols = [self.bracket(x, row) for row in identity_matrix(self.dim)]
        return transpose(tuple(cols))

    def basis_vector(self, i: int) -> Vector:
        return identity_matrix(self.dim)[i]

    def full_space(self) -> Subspace:
        return Subspace.full(self.dim)


def bracket_span(algebra: LieAlgebra, left: Subspace, right: Subspace) -> Subspace:
    """Span of all brackets of the two subspaces."""
    vectors = [
        algebra.bracket(x, y) for x in left.basis for y in right.basis
    ]
    return Subspace.from_vectors(vectors, algebra.dim)


def derived_series(algebra: LieAlgebra) -> tuple[Subspace, ...]:
    """Chain starting at the derived algebra, repeated self-bracket, until stable."""
    current = bracket_span(algebra, algebra.full_space(), algebra.full_space())
    chain = [current]
    while True:
        nxt = bracket_span(algebra, current, current)
        if nxt == current:
            break
        chain.append(nxt)
        current = nxt
    return tuple(chain)


def lower_central_series(algebra: LieAlgebra) -> tuple[Subspace, ...]:
    """Chain starting at the derived algebra, repeated bracket with the whole algebra."""
    full = algebra.full_space()
    current = bracket_span(algebra, full, full)
    chain = [current]
    while True:
        nxt = bracket_span(algebra, full, current)
        if nxt == current:
            break
        chain.append(nxt)
        current = nxt
    return tuple(chain)


def derived_algebra(algebra: LieAlgebra) -> Subspace:
    return derived_series(algebra)[0]


def is_solvable(algebra: LieAlgebra) -> bool:
    return derived_series(algebra)[-1].is_zero()


def is_nilpotent(algebra: LieAlgebra) -> bool:
    return lower_central_series(algebra)[-1].is_zero()


def is_abelian(algebra: LieAlgebra) -> bool:
    return all(is_zero_vector(row) for row in algebra.table)


def killing_form(algebra: LieAlgebra) -> Matrix:
    """Matrix K[i][j] = trace(ad_i ad_j) on the basis."""
    ads = [algebra.ad(row) for row in identity_matrix(algebra.dim)]
    n = algebra.dim
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            prod = mat_mul(ads[i], ads[j])
            tr = sum((prod[k][k] for k in range(n)), Fraction(0))
            out[i][j] = tr
            out[j][i] = tr
    return tuple(tuple(row) for row in out)


def trace_form(algebra: LieAlgebra) -> Covector:
    """Covector x -> trace(ad_x); zero exactly for unimodular algebras."""
    n = algebra.dim
    values = []
    for i in range(n):
        tr = sum((algebra.basis_bracket(i, j)[j] for j in range(n) if j != i), Fraction(0))
        values.append(tr)
    return Covector(tuple(values))


def is_unimodular(algebra: LieAlgebra) -> bool:
    return trace_form(algebra).is_zero()


def center(algebra: LieAlgebra) -> Subspace:
    n = algebra.dim
    constraints = []
    for j in range(n):
        # rows of the map x -> [x, e_j] in basis coordinates
        cols = [algebra.basis_bracket(i, j) for i in range(n)]
        constraints.extend(transpose(tuple(cols)))
    return Subspace(n, kernel(tuple(constraints), n))


def is_ideal(algebra: LieAlgebra, s: Subspace) -> bool:
    return all(
        s.contains(algebra.bracket(e, row))
        for e in identity_matrix(algebra.dim)
        for row in s.basis
    )


def is_abelian_subspace(algebra: LieAlgebra, s: Subspace) -> bool:
    rows = s.basis
    return all(
        is_zero_vector(algebra.bracket(rows[i], rows[j]))
        for i, j in pairs(len(rows))
    )


def _is_solvable_subalgebra(algebra: LieAlgebra, s: Subspace) -> bool:
    current = s
    while True:
        nxt = bracket_span(algebra, current, current)
        if not current.contains_subspace(nxt):
            return False  # not closed under the bracket
        if nxt == current:
            return current.is_zero()
        if nxt.is_zero():
            return True
        current = nxt


def radical(algebra: LieAlgebra) -> Subspace:
    """Maximal solvable ideal, via the Killing-orthogonal of the derived algebra.

    The result is re-checked to be a solvable ideal; failure of that check
    signals an internal inconsistency.
    """
    killing = killing_form(algebra)
    commutator = derived_algebra(algebra)
    if commutator.is_zero():
        return algebra.full_space()
    constraints = tuple(
        tuple(dot(row, col) for col in transpose(killing)) for row in commutator.basis
    )
    rad = Subspace(algebra.dim, kernel(constraints, algebra.dim))
    if not is_ideal(algebra, rad) or not _is_solvable_subalgebra(algebra, rad):
        raise RuntimeError("radical self-check failed: computed subspace is not a solvable ideal")
    return rad


def is_semisimple(algebra: LieAlgebra) -> bool:
    return radical(algebra).is_zero()


def semidirect_sum(
    q: int,
    h: LieAlgebra,
    alpha: Sequence[Matrix],
    u_labels: Sequence[str] | None = None,
) -> LieAlgebra:
    """Abelian R^q extended by h acting through alpha.

    The new basis is u_1.. u_q followed by the basis of h; brackets are
    [x, u] = alpha(x) u for x in h, with matrices acting on coordinate
    columns (entry [r][c] is the e_r-coefficient of the image of e_c).
    alpha must be a Lie algebra homomorphism into gl(q).
    """
    if q < 1:
        raise ValueError("the abelian factor must have positive dimension")
    if len(alpha) != h.dim:
        raise ValueError("need one action matrix per basis vector of the acting algebra")
    mats = [tuple(vector(row) for row in m) for m in alpha]
    if any(len(m) != q or any(len(r) != q for r in m) for m in mats):
        raise ValueError(f"action matrices must be {q}x{q}")

    def alpha_of(x: Sequence[Fraction]) -> Matrix:
        out = tuple(zero_vector(q) for _ in range(q))
        for d, c in enumerate(x):
            if c != 0:
                out = tuple(vec_add(r, vec_scale(c, m)) for r, m in zip(out, mats[d]))
        return out

    for i, j in pairs(h.dim):
        lhs = alpha_of(h.basis_bracket(i, j))
        rhs = mat_sub(mat_mul(mats[i], mats[j]), mat_mul(mats[j], mats[i]))
        if lhs != rhs:
            raise ValueError(
                f"action is not a Lie algebra homomorphism: fails on basis pair ({i}, {j})"
            )

    if u_labels is None:
        u_labels = ("u",) if q == 1 else tuple(f"u{t + 1}" for t in range(q))
    labels = tuple(u_labels) + h.labels
    n = q + h.dim
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(q):
        for j in range(h.dim):
            # [u_i, x_j] = -alpha_j u_i: column i of -alpha_j in the u block
            col = {r: -mats[j][r][i] for r in range(q) if mats[j][r][i] != 0}
            if col:
                brackets[(i, q + j)] = col
    for i, j in pairs(h.dim):
        row = h.basis_bracket(i, j)
        coeffs = {q + k: c for k, c in enumerate(row) if c != 0}
        if coeffs:
            brackets[(q + i, q + j)] = coeffs
    return LieAlgebra.from_brackets(n, brackets, labels)
