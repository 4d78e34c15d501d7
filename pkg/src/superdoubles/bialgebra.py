"""Lie super-bialgebras: compatibility identities and cocommutators.

A ``SuperBialgebra`` is a pair of Lie superalgebras of equal graded
dimension: the algebra ``left`` carries the brackets ``f^k_{ij}``, while
``dual`` carries the dual brackets with the upper index pair, i.e. the
plain algebra tensor of ``dual`` stores ``ft^{ij}_k`` as ``f[k][i][j]``.

The compatibility between the two tensors is checked in two independent
ways: directly as the mixed graded Jacobi identity, and via the
one-cocycle condition on the induced cocommutator.  Both checks must
agree on every input; the test suite enforces this.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DimensionMismatch, NotAutomorphism
from .linalg import MINUS_ONE, ONE, ZERO, Scalar, Supermatrix, mat_inv
from .superalgebra import (
    CheckResult,
    LieSuperalgebra,
    ValidationReport,
    check_automorphism,
    stripped_tensor,
    validate,
)


@dataclass(frozen=True)
class SuperBialgebra:
    """A Lie superalgebra together with a compatible dual structure."""

    name: str
    left: LieSuperalgebra
    dual: LieSuperalgebra

    def __post_init__(self):
        if self.left.graded_dim != self.dual.graded_dim:
            raise DimensionMismatch("algebra and dual must share graded dimension")

    @property
    def graded_dim(self) -> tuple[int, int]:
        return self.left.graded_dim

    @property
    def dim(self) -> int:
        return self.left.dim

    def grade(self, i: int) -> int:
        return self.left.grade(i)

    def ft(self, i: int, j: int, k: int) -> Scalar:
        """Dual structure constant with upper pair (i, j) and lower k."""
        return self.dual.f[k][i][j]

    def swap(self) -> "SuperBialgebra":
        """The decomposition with the two sides exchanged."""
        return SuperBialgebra(
            f"swap({self.name})",
            self.dual.renamed(self.dual.name),
            self.left.renamed(self.left.name),
        )


def swap(b: SuperBialgebra) -> SuperBialgebra:
    return b.swap()


def _stripped_pair(b: SuperBialgebra):
    """Real-form tensors of the two sides, or ``None`` on a reality
    violation.  The returned dual tensor is indexed ``ft[i][j][k]`` with
    the upper pair first."""
    f_r = stripped_tensor(b.left)
    dual_planes = stripped_tensor(b.dual)
    if f_r is None or dual_planes is None:
        return None
    dim = b.dim
    ft_r = [
        [[dual_planes[k][i][j] for k in range(dim)] for j in range(dim)]
        for i in range(dim)
    ]
    return f_r, ft_r


def check_mixed_jacobi(b: SuperBialgebra) -> ValidationReport:
    """Mixed graded Jacobi identity between the two structure tensors.

    The identity lives in the real form: the imaginary unit carried by
    fermion-fermion constants is dropped on both sides first (a tensor
    violating that reality convention fails the check outright).  For
    every index tuple (i, j, k, l), with an internal sum over m,

        f^m_{jk} ft^{il}_m  =  f^i_{mk} ft^{ml}_j + f^l_{jm} ft^{im}_k
            + (-1)^{|j||l|} f^i_{jm} ft^{ml}_k
            + (-1)^{|i||k|} f^l_{mk} ft^{im}_j
    """
    g = b.left
    dim = g.dim
    pair = _stripped_pair(b)
    if pair is None:
        return ValidationReport(
            (CheckResult("mixed_jacobi", False, "reality convention violated"),)
        )
    f_r, ft_r = pair
    for i, j, k, l in itertools.product(range(dim), repeat=4):
        sign_jl = MINUS_ONE if (g.grade(j) * g.grade(l)) % 2 else ONE
        sign_ik = MINUS_ONE if (g.grade(i) * g.grade(k)) % 2 else ONE
        total = ZERO
        for m in range(dim):
            total = total - f_r[m][j][k] * ft_r[i][l][m]
            total = total + f_r[i][m][k] * ft_r[m][l][j]
            total = total + f_r[l][j][m] * ft_r[i][m][k]
            total = total + sign_jl * (f_r[i][j][m] * ft_r[m][l][k])
            total = total + sign_ik * (f_r[l][m][k] * ft_r[i][m][j])
        if not total.is_zero:
            return ValidationReport(
                (
                    CheckResult(
                        "mixed_jacobi",
                        False,
                        f"(i,j,k,l)=({i + 1},{j + 1},{k + 1},{l + 1})",
                    ),
                )
            )
    return ValidationReport((CheckResult("mixed_jacobi", True),))


@dataclass(frozen=True)
class Cocommutator:
    """Cocommutator tensor: ``tensor[i][j][k]`` is the coefficient of
    X_j (x) X_k in the image of X_i."""

    m: int
    n: int
    tensor: tuple

    def grade(self, i: int) -> int:
        return 0 if i < self.m else 1

    @property
    def dim(self) -> int:
        return self.m + self.n


def cocommutator(b: SuperBialgebra) -> Cocommutator:
    """Cocommutator induced by the dual brackets.

    The tensor-square pairing convention inserts a sign on fermion-fermion
    legs: the coefficient of X_j (x) X_k in the image of X_i is
    ``(-1)^{|j||k|} ft^{jk}_i``.
    """
    g = b.left
    dim = g.dim
    tensor = tuple(
        tuple(
            tuple(
                (MINUS_ONE if (g.grade(j) * g.grade(k)) % 2 else ONE)
                * b.ft(j, k, i)
                for k in range(dim)
            )
            for j in range(dim)
        )
        for i in range(dim)
    )
    return Cocommutator(g.m, g.n, tensor)


def dual_tensor_of(delta: Cocommutator) -> tuple:
    """Recover ``ft[i][j][k] = ft^{ij}_k`` from a cocommutator tensor."""
    dim = delta.dim
    return tuple(
        tuple(
            tuple(
                (MINUS_ONE if (delta.grade(i) * delta.grade(j)) % 2 else ONE)
                * delta.tensor[k][i][j]
                for k in range(dim)
            )
            for j in range(dim)
        )
        for i in range(dim)
    )


def check_cocycle(b: SuperBialgebra) -> ValidationReport:
    """One-cocycle condition for the cocommutator, on all basis pairs.

    For basis vectors X_a, X_b the image of [X_a, X_b] must equal the
    graded adjoint action of X_a on the image of X_b minus, with the sign
    (-1)^{|a||b|}, that of X_b on the image of X_a.  The second tensor leg
    picks up the usual graded sign when the acting element moves past the
    first leg.  Like the mixed Jacobi identity, the condition lives in
    the real form, so both tensors are stripped of the imaginary unit on
    their fermion-fermion entries first.
    """
    g = b.left
    dim = g.dim
    pair = _stripped_pair(b)
    if pair is None:
        return ValidationReport(
            (CheckResult("cocycle", False, "reality convention violated"),)
        )
    f_r, ft_r = pair
    delta = tuple(
        tuple(
            tuple(
                (MINUS_ONE if (g.grade(j) * g.grade(k)) % 2 else ONE)
                * ft_r[j][k][i_]
                for k in range(dim)
            )
            for j in range(dim)
        )
        for i_ in range(dim)
    )

    def action(a: int, src: int, p: int, q: int) -> Scalar:
        total = ZERO
        for j in range(dim):
            c = f_r[p][a][j]
            if not c.is_zero:
                total = total + c * delta[src][j][q]
        sign = MINUS_ONE if (g.grade(a) * g.grade(p)) % 2 else ONE
        for k in range(dim):
            c = f_r[q][a][k]
            if not c.is_zero:
                total = total + sign * c * delta[src][p][k]
        return total

    for a, b_ in itertools.product(range(dim), repeat=2):
        sign_ab = MINUS_ONE if (g.grade(a) * g.grade(b_)) % 2 else ONE
        for p, q in itertools.product(range(dim), repeat=2):
            lhs = ZERO
            for l in range(dim):
                c = f_r[l][a][b_]
                if not c.is_zero:
                    lhs = lhs + c * delta[l][p][q]
            rhs = action(a, b_, p, q) - sign_ab * action(b_, a, p, q)
            if lhs != rhs:
                return ValidationReport(
                    (
                        CheckResult(
                            "cocycle",
                            False,
                            f"(a,b)=({a + 1},{b_ + 1}), leg=({p + 1},{q + 1})",
                        ),
                    )
                )
    return ValidationReport((CheckResult("cocycle", True),))


def validate_bialgebra(b: SuperBialgebra) -> ValidationReport:
    """Both sides individually valid plus the mixed Jacobi identity."""
    checks: list[CheckResult] = []
    left_report = validate(b.left)
    checks.append(
        CheckResult(
            "algebra",
            left_report.ok,
            "" if left_report.ok else str(left_report.first_failure()),
        )
    )
    dual_report = validate(b.dual)
    checks.append(
        CheckResult(
            "dual",
            dual_report.ok,
            "" if dual_report.ok else str(dual_report.first_failure()),
        )
    )
    checks.extend(check_mixed_jacobi(b).checks)
    return ValidationReport(tuple(checks))


def transform_cocommutator(delta: Cocommutator, a: Supermatrix) -> Cocommutator:
    """Push a cocommutator through a grading-preserving map.

    Rows of ``a`` express the images of the basis vectors; the new tensor
    is the composite (map (x) map) o delta o inverse(map).  No extra signs
    appear because the map is even.
    """
    rows = a.rows
    inv = mat_inv(rows)
    dim = delta.dim
    new = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for src in range(dim):
        for l in range(dim):
            c0 = inv[src][l]
            if c0.is_zero:
                continue
            for mm in range(dim):
                for nn in range(dim):
                    val = delta.tensor[l][mm][nn]
                    if val.is_zero:
                        continue
                    coeff = c0 * val
                    for j in range(dim):
                        cj = rows[mm][j]
                        if cj.is_zero:
                            continue
                        for k in range(dim):
                            ck = rows[nn][k]
                            if not ck.is_zero:
                                new[src][j][k] = new[src][j][k] + coeff * cj * ck
    tensor = tuple(tuple(tuple(row) for row in plane) for plane in new)
    return Cocommutator(delta.m, delta.n, tensor)


def equivalent_cocycles(
    g: LieSuperalgebra,
    delta1: Cocommutator,
    delta2: Cocommutator,
    a: Supermatrix,
) -> bool:
    """Whether the map carries the first cocommutator onto the second."""
    if not check_automorphism(g, a):
        raise NotAutomorphism("matrix does not preserve the brackets")
    return transform_cocommutator(delta1, a).tensor == delta2.tensor
