"""Detection, construction and obstruction analysis of locally conformally
product structures: a closed nonzero covector together with a proper nonzero
subspace that is parallel and curvature-annihilated for the conformal
connection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .connections import (
    Connection,
    CurvatureTensor,
    InnerProduct,
    curvature,
    is_closed,
    weyl_connection,
)
from .liealg import (
    Covector,
    LieAlgebra,
    derived_algebra,
    is_abelian_subspace,
    is_ideal,
    is_unimodular,
    radical,
    semidirect_sum,
    trace_form,
)
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    identity_matrix,
    is_zero_vector,
    kernel,
    mat_mul,
    mat_vec,
    transpose,
    vec_add,
    vec_scale,
    zero_vector,
)

CLASS_LCP = "lcp"
CLASS_CONFORMALLY_FLAT = "conformally-flat"
CLASS_NONE = "none"


class LCPValidationError(ValueError):
    """Carries every individual invariant violation found by the validator."""

    def __init__(self, violations: Sequence[str]):
        self.violations = tuple(violations)
        super().__init__("; ".join(violations))


@dataclass(frozen=True)
class LCPStructure:
    algebra: LieAlgebra
    metric: InnerProduct
    lee_form: Covector
    flat_factor: Subspace
    adapted: bool
    maximal: bool | None

    def __post_init__(self) -> None:
        problems = lcp_violations(self.algebra, self.metric, self.lee_form, self.flat_factor)
        if problems:
            raise LCPValidationError(problems)
        really_adapted = all(
            self.lee_form.value(row) == 0 for row in self.flat_factor.basis
        )
        if self.adapted != really_adapted:
            raise ValueError("adapted flag does not match the structure")

    def connection(self) -> Connection:
        return weyl_connection(self.algebra, self.metric, self.lee_form)

    def orthocomplement(self) -> Subspace:
        """The metric complement of the flat factor."""
        return self.flat_factor.orthogonal_complement(self.metric.gram)


@dataclass(frozen=True)
class FlatFactorResult:
    subspace: Subspace
    classification: str  # CLASS_LCP, CLASS_CONFORMALLY_FLAT or CLASS_NONE
    adapted: bool


@dataclass(frozen=True)
class ConstraintReport:
    candidate: Subspace
    theta_vanishes: bool
    action_trivial: bool
    is_abelian: bool
    in_radical: bool
    in_commutator: bool
    linear_bound: Subspace


def is_parallel(algebra: LieAlgebra, connection: Connection, s: Subspace) -> bool:
    """Whether the subspace is preserved by every covariant basis derivative."""
    return all(
        s.contains(mat_vec(connection.nabla[i], row))
        for i in range(algebra.dim)
        for row in s.basis
    )


def is_flat_subspace(
    algebra: LieAlgebra,
    connection: Connection,
    curv: CurvatureTensor,
    s: Subspace,
) -> bool:
    """Parallel and annihilated by every curvature operator."""
    if not is_parallel(algebra, connection, s):
        return False
    return all(
        is_zero_vector(mat_vec(op, row)) for op in curv.operators for row in s.basis
    )


def _largest_invariant_subspace(start: Subspace, operators: Sequence[Matrix]) -> Subspace:
    """Largest subspace of `start` mapped into itself by all operators.

    Fixed point of W -> {w in W : op w in W for all op}; the dimension drops
    strictly until stable, so this terminates.
    """
    current = start
    while not current.is_zero():
        constraints = current.constraint_matrix()
        basis_cols = transpose(current.basis)
        stacked = [
            row
            for op in operators
            for row in mat_mul(constraints, mat_mul(op, basis_cols))
        ]
        coeff_kernel = kernel(tuple(stacked), current.dim)
        if len(coeff_kernel) == current.dim:
            break
        vectors = [mat_vec(basis_cols, c) for c in coeff_kernel]
        current = Subspace.from_vectors(vectors, current.ambient_dim)
    return current


def maximal_flat_factor(
    algebra: LieAlgebra, metric: InnerProduct, theta: Covector
) -> FlatFactorResult:
    """The sum of all flat subspaces of the conformal connection.

    Computed as the largest parallel subspace inside the joint kernel of the
    curvature operators. Requires a unimodular algebra and a nonzero closed
    covector; with those hypotheses a proper nonzero result is provably an
    abelian ideal, and that is re-checked here.
    """
    if theta.is_zero():
        raise ValueError("covector must be nonzero")
    if not is_closed(algebra, theta):
        raise ValueError("covector must be closed")
    if not is_unimodular(algebra):
        raise ValueError("the flat-factor construction requires a unimodular algebra")
    conn = weyl_connection(algebra, metric, theta)
    curv = curvature(algebra, conn)
    stacked = tuple(row for op in curv.operators for row in op)
    joint_kernel = Subspace(algebra.dim, kernel(stacked, algebra.dim))
    w = _largest_invariant_subspace(joint_kernel, conn.nabla)
    if w.is_full():
        classification = CLASS_CONFORMALLY_FLAT
    elif w.is_zero():
        classification = CLASS_NONE
    else:
        classification = CLASS_LCP
        if not is_ideal(algebra, w) or not is_abelian_subspace(algebra, w):
            raise RuntimeError(
                "flat factor self-check failed: proper nonzero result is not an abelian ideal"
            )
    adapted = all(theta.value(row) == 0 for row in w.basis)
    return FlatFactorResult(w, classification, adapted)


def lcp_violations(
    algebra: LieAlgebra,
    metric: InnerProduct,
    theta: Covector,
    u: Subspace,
) -> tuple[str, ...]:
    """Every violated requirement of the candidate structure, by message."""
    if metric.dim != algebra.dim or theta.dim != algebra.dim or u.ambient_dim != algebra.dim:
        raise ValueError("algebra, metric, covector and subspace dimensions must agree")
    problems = []
    if theta.is_zero():
        problems.append("lee covector is zero")
    elif not is_closed(algebra, theta):
        problems.append("lee covector is not closed")
    if u.is_zero():
        problems.append("flat factor is the zero subspace")
    if u.is_full():
        problems.append("flat factor is the whole algebra")
    if not problems:
        conn = weyl_connection(algebra, metric, theta)
        if not is_parallel(algebra, conn, u):
            problems.append("flat factor is not parallel for the conformal connection")
        else:
            curv = curvature(algebra, conn)
            if not all(
                is_zero_vector(mat_vec(op, row))
                for op in curv.operators
                for row in u.basis
            ):
                problems.append(
                    "conformal curvature does not annihilate the flat factor"
                )
        adapted = all(theta.value(row) == 0 for row in u.basis)
        if is_unimodular(algebra) and not adapted:
            problems.append(
                "algebra is unimodular but the lee covector does not vanish on the flat factor"
            )
    return tuple(problems)


def validate_lcp(
    algebra: LieAlgebra,
    metric: InnerProduct,
    theta: Covector,
    u: Subspace,
) -> LCPStructure:
    """Validated structure, or LCPValidationError carrying every violation."""
    problems = lcp_violations(algebra, metric, theta, u)
    if problems:
        raise LCPValidationError(problems)
    adapted = all(theta.value(row) == 0 for row in u.basis)
    maximal: bool | None = None
    if is_unimodular(algebra):
        maximal = maximal_flat_factor(algebra, metric, theta).subspace == u
    return LCPStructure(algebra, metric, theta, u, adapted, maximal)


@dataclass(frozen=True)
class LCPTriple:
    """A non-unimodular metric algebra acting orthogonally on an abelian R^q.

    The action matrices are one q x q matrix per basis vector of the acting
    algebra, skew-symmetric for the standard inner product on R^q.
    """

    h_algebra: LieAlgebra
    h_metric: InnerProduct
    q: int
    beta: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        h, q = self.h_algebra, self.q
        if self.h_metric.dim != h.dim:
            raise ValueError("metric dimension does not match the acting algebra")
        if q < 1:
            raise ValueError("the abelian factor must have positive dimension")
        if len(self.beta) != h.dim:
            raise ValueError("need one action matrix per basis vector")
        for idx, b in enumerate(self.beta):
            if len(b) != q or any(len(row) != q for row in b):
                raise ValueError(f"action matrix {idx} is not {q}x{q}")
            if any(b[r][c] != -b[c][r] for r in range(q) for c in range(q)):
                raise ValueError(f"action matrix {idx} is not skew-symmetric")
        for i in range(h.dim):
            for j in range(i + 1, h.dim):
                lhs = _combine(self.beta, h.basis_bracket(i, j), q)
                rhs = _mat_commutator(self.beta[i], self.beta[j])
                if lhs != rhs:
                    raise ValueError(
                        f"action is not a Lie algebra homomorphism on basis pair ({i}, {j})"
                    )
        if trace_form(h).is_zero():
            raise ValueError("acting algebra must be non-unimodular")


def _combine(mats: Sequence[Matrix], coeffs: Sequence[Fraction], q: int) -> Matrix:
    out = tuple(zero_vector(q) for _ in range(q))
    for m, c in zip(mats, coeffs, strict=True):
        if c != 0:
            out = tuple(vec_add(r, vec_scale(c, s)) for r, s in zip(out, m))
    return out


def _mat_commutator(a: Matrix, b: Matrix) -> Matrix:
    ab = mat_mul(a, b)
    ba = mat_mul(b, a)
    return tuple(
        tuple(x - y for x, y in zip(r, s)) for r, s in zip(ab, ba)
    )


def build_from_triple(triple: LCPTriple) -> LCPStructure:
    """Semidirect extension of the triple, carrying its canonical structure.

    The trace character of the acting algebra, scaled by -1/q, extends by
    zero to the lee covector; the action is that conformal weight times the
    identity plus the orthogonal part. The result is validated, and is
    always unimodular and adapted.
    """
    h, q = triple.h_algebra, triple.q
    character = trace_form(h)
    weight = [Fraction(-1, q) * c for c in character.coefficients]
    alpha = []
    for i in range(h.dim):
        ident = identity_matrix(q)
        alpha.append(
            tuple(
                tuple(weight[i] * ident[r][c] + triple.beta[i][r][c] for c in range(q))
                for r in range(q)
            )
        )
    algebra = semidirect_sum(q, h, alpha)
    n = q + h.dim
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(q):
        gram[i][i] = Fraction(1)
    for r in range(h.dim):
        for c in range(h.dim):
            gram[q + r][q + c] = triple.h_metric.gram[r][c]
    metric = InnerProduct(tuple(tuple(row) for row in gram))
    theta = Covector(tuple([Fraction(0)] * q + weight))
    u = Subspace.from_vectors(identity_matrix(n)[:q], n)
    structure = validate_lcp(algebra, metric, theta, u)
    if not is_unimodular(algebra) or not structure.adapted:
        raise RuntimeError("triple extension self-check failed")
    return structure


def triple_from_lcp(structure: LCPStructure) -> LCPTriple:
    """Recover the acting triple from an adapted structure on a unimodular algebra.

    The acting algebra is the metric complement of the flat factor; the
    action matrices subtract the conformal weight from the bracket action on
    the flat factor. The flat factor's canonical basis must be orthonormal
    (over the rationals no orthonormalization is available in general).
    """
    algebra = structure.algebra
    if not is_unimodular(algebra):
        raise ValueError("triple extraction requires a unimodular algebra")
    if not structure.adapted:
        raise ValueError("triple extraction requires an adapted structure")
    u = structure.flat_factor
    q = u.dim
    gram_u = structure.metric.restrict(u.basis)
    if gram_u != identity_matrix(q):
        raise ValueError(
            "flat factor basis is not orthonormal; the orthogonal part of the "
            "action cannot be expressed over the rationals"
        )
    hperp = structure.orthocomplement()
    m = hperp.dim
    h_brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(m):
        for j in range(i + 1, m):
            w = algebra.bracket(hperp.basis[i], hperp.basis[j])
            coords = hperp.coordinates_of(w)
            if coords is None:
                raise ValueError(
                    "metric complement of the flat factor is not a subalgebra; "
                    "the structure does not split"
                )
            coeffs = {k: c for k, c in enumerate(coords) if c != 0}
            if coeffs:
                h_brackets[(i, j)] = coeffs
    labels = []
    for row in hperp.basis:
        pivot = next(c for c in range(len(row)) if row[c] != 0)
        labels.append(algebra.labels[pivot])
    h_algebra = LieAlgebra.from_brackets(m, h_brackets, labels)
    h_metric = InnerProduct(structure.metric.restrict(hperp.basis))
    beta = []
    for i in range(m):
        weight = structure.lee_form.value(hperp.basis[i])
        cols = []
        for urow in u.basis:
            w = algebra.bracket(hperp.basis[i], urow)
            w = vec_add(w, vec_scale(-weight, urow))
            coords = u.coordinates_of(w)
            if coords is None:
                raise ValueError(
                    "flat factor is not invariant under the complement; "
                    "the structure does not split"
                )
            cols.append(coords)
        beta.append(transpose(tuple(cols)))
    return LCPTriple(h_algebra, h_metric, q, tuple(beta))


def characteristic_constraint_space(structure: LCPStructure) -> Subspace:
    """Linear upper bound for directions with trivial conformal character
    and trivial flat-factor action.

    Intersection, inside the metric complement of the flat factor, of: the
    kernel of the lee covector, the annihilator of the flat factor under the
    bracket, the radical, and the derived algebra. These are necessary
    conditions only.
    """
    algebra = structure.algebra
    n = algebra.dim
    hperp = structure.orthocomplement()
    theta_kernel = Subspace(
        n, kernel((structure.lee_form.coefficients,), n)
    )
    constraints = []
    for urow in structure.flat_factor.basis:
        cols = [algebra.bracket(e, urow) for e in identity_matrix(n)]
        constraints.extend(transpose(tuple(cols)))
    action_kernel = Subspace(n, kernel(tuple(constraints), n))
    out = hperp.intersect(theta_kernel).intersect(action_kernel)
    out = out.intersect(radical(algebra))
    return out.intersect(derived_algebra(algebra))


def check_candidate(structure: LCPStructure, candidate: Subspace) -> ConstraintReport:
    """Per-condition breakdown for a candidate subspace of the complement."""
    algebra = structure.algebra
    hperp = structure.orthocomplement()
    if candidate.ambient_dim != algebra.dim:
        raise ValueError("candidate lives in the wrong ambient dimension")
    if not hperp.contains_subspace(candidate):
        raise ValueError(
            "candidate must lie in the metric complement of the flat factor"
        )
    theta_vanishes = all(
        structure.lee_form.value(row) == 0 for row in candidate.basis
    )
    action_trivial = all(
        is_zero_vector(algebra.bracket(row, urow))
        for row in candidate.basis
        for urow in structure.flat_factor.basis
    )
    return ConstraintReport(
        candidate=candidate,
        theta_vanishes=theta_vanishes,
        action_trivial=action_trivial,
        is_abelian=is_abelian_subspace(algebra, candidate),
        in_radical=radical(algebra).contains_subspace(candidate),
        in_commutator=derived_algebra(algebra).contains_subspace(candidate),
        linear_bound=characteristic_constraint_space(structure),
    )


def flat_factor_action(structure: LCPStructure, x: Sequence[Fraction]) -> Matrix:
    """Rational matrix of the bracket action of x on the flat factor basis."""
    u = structure.flat_factor
    cols = []
    for row in u.basis:
        w = structure.algebra.bracket(x, row)
        coords = u.coordinates_of(w)
        if coords is None:
            raise ValueError("flat factor is not invariant under this element")
        cols.append(coords)
    return transpose(tuple(cols))


def conformal_exponential_residual(
    gram_u: Matrix,
    action: Matrix,
    lee_value: Fraction | float,
    t: float,
) -> float:
    """Max-norm defect of E^T G E = exp(2 t w) G for E = exp(t * action).

    The one floating-point computation in the package: the matrix
    exponential uses scaling-and-squaring (scipy).
    """
    import numpy
    from scipy.linalg import expm

    a = numpy.array([[float(x) for x in row] for row in action], dtype=float)
    g = numpy.array([[float(x) for x in row] for row in gram_u], dtype=float)
    e = expm(t * a)
    target = math.exp(2.0 * t * float(lee_value)) * g
    return float(numpy.max(numpy.abs(e.T @ g @ e - target)))


def verify_conformal_exponential(
    structure: LCPStructure,
    x: Sequence[Fraction],
    t: float,
    tol: float,
) -> bool:
    """Whether the one-parameter group of x acts conformally on the flat
    factor to within tol, with conformal factor exp(2 t theta(x))."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    hperp = structure.orthocomplement()
    if not hperp.contains(x):
        raise ValueError(
            "element must lie in the metric complement of the flat factor"
        )
    action = flat_factor_action(structure, x)
    gram_u = structure.metric.restrict(structure.flat_factor.basis)
    residual = conformal_exponential_residual(
        gram_u, action, structure.lee_form.value(x), t
    )
    return residual <= tol
