"""Lie superalgebras over Q(i): validation, adjoint maps, invariants.

A ``LieSuperalgebra`` is a graded dimension ``(m | n)`` plus the dense
structure-constant tensor ``f[k][i][j]`` (0-based) of the brackets

    [X_i, X_j] = sum_k f[k][i][j] X_k

in the standard basis: positions ``0..m-1`` bosonic, ``m..m+n-1``
fermionic.  The grading convention used throughout: boson-boson and
boson-fermion constants are real, fermion-fermion constants are purely
imaginary.

Validation is split into four independent checks (graded antisymmetry,
the grading selection rule, the reality convention and the graded Jacobi
identity) so that a report can point at the first offending index triple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NotGradingPreserving, SingularError
from .linalg import (
    I,
    MINUS_ONE,
    ONE,
    ZERO,
    Matrix,
    Scalar,
    Supermatrix,
    mat_det,
    mat_inv,
    nullspace,
    rank,
    row_reduce,
)

Tensor = tuple  # tuple[tuple[tuple[Scalar, ...], ...], ...], indexed [k][i][j]


def _sign(exponent: int) -> Scalar:
    return MINUS_ONE if exponent % 2 else ONE


@dataclass(frozen=True)
class LieSuperalgebra:
    """Finite-dimensional Lie superalgebra in a standard graded basis."""

    name: str
    m: int
    n: int
    f: Tensor

    @property
    def dim(self) -> int:
        return self.m + self.n

    @property
    def graded_dim(self) -> tuple[int, int]:
        return (self.m, self.n)

    def grade(self, i: int) -> int:
        """Grade of the 0-based basis position ``i``."""
        return 0 if i < self.m else 1

    def constant(self, k: int, i: int, j: int) -> Scalar:
        return self.f[k][i][j]

    def bracket_basis(self, i: int, j: int) -> tuple[Scalar, ...]:
        """Coefficient vector of [X_i, X_j]."""
        return tuple(self.f[k][i][j] for k in range(self.dim))

    def bracket(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> tuple[Scalar, ...]:
        """Bilinear extension of the bracket to coefficient vectors."""
        dim = self.dim
        out = [ZERO] * dim
        for i in range(dim):
            if x[i].is_zero:
                continue
            for j in range(dim):
                if y[j].is_zero:
                    continue
                coeff = x[i] * y[j]
                for k in range(dim):
                    c = self.f[k][i][j]
                    if not c.is_zero:
                        out[k] = out[k] + coeff * c
        return tuple(out)

    def is_zero_tensor(self) -> bool:
        return all(c.is_zero for plane in self.f for row in plane for c in row)

    def renamed(self, name: str) -> "LieSuperalgebra":
        return LieSuperalgebra(name, self.m, self.n, self.f)

    @staticmethod
    def abelian(name: str, m: int, n: int) -> "LieSuperalgebra":
        dim = m + n
        zero_plane = tuple(tuple(ZERO for _ in range(dim)) for _ in range(dim))
        return LieSuperalgebra(name, m, n, tuple(zero_plane for _ in range(dim)))

    @staticmethod
    def from_brackets(
        name: str,
        m: int,
        n: int,
        brackets: Mapping[tuple[int, int], Mapping[int, Scalar]],
    ) -> "LieSuperalgebra":
        """Build from 1-based brackets, completing by graded antisymmetry.

        ``brackets[(i, j)][k]`` is the coefficient of X_k in [X_i, X_j];
        only one of (i, j) / (j, i) may be given for i != j.
        """
        dim = m + n
        f = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i1, j1), terms in brackets.items():
            i, j = i1 - 1, j1 - 1
            gi = 0 if i < m else 1
            gj = 0 if j < m else 1
            for k1, coeff in terms.items():
                k = k1 - 1
                coeff = Scalar.of(coeff)
                f[k][i][j] = f[k][i][j] + coeff
                if i != j:
                    mirrored = _sign(gi * gj + 1) * coeff
                    f[k][j][i] = f[k][j][i] + mirrored
        tensor = tuple(tuple(tuple(row) for row in plane) for plane in f)
        return LieSuperalgebra(name, m, n, tensor)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if not c.passed), None)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


def _check_antisymmetry(g: LieSuperalgebra) -> CheckResult:
    for k, i, j in itertools.product(range(g.dim), repeat=3):
        expected = _sign(g.grade(i) * g.grade(j) + 1) * g.f[k][j][i]
        if g.f[k][i][j] != expected:
            return CheckResult(
                "antisymmetry",
                False,
                f"(k,i,j)=({k + 1},{i + 1},{j + 1})",
            )
    return CheckResult("antisymmetry", True)


def _check_grading(g: LieSuperalgebra) -> CheckResult:
    for k, i, j in itertools.product(range(g.dim), repeat=3):
        if (g.grade(i) + g.grade(j) - g.grade(k)) % 2 and not g.f[k][i][j].is_zero:
            return CheckResult(
                "grading",
                False,
                f"(k,i,j)=({k + 1},{i + 1},{j + 1})",
            )
    return CheckResult("grading", True)


def _check_reality(g: LieSuperalgebra) -> CheckResult:
    for k, i, j in itertools.product(range(g.dim), repeat=3):
        c = g.f[k][i][j]
        if c.is_zero:
            continue
        fermionic_pair = g.grade(i) == 1 and g.grade(j) == 1
        if fermionic_pair and not c.is_imaginary:
            return CheckResult(
                "reality",
                False,
                f"(k,i,j)=({k + 1},{i + 1},{j + 1}) not purely imaginary",
            )
        if not fermionic_pair and not c.is_real:
            return CheckResult(
                "reality",
                False,
                f"(k,i,j)=({k + 1},{i + 1},{j + 1}) not real",
            )
    return CheckResult("reality", True)


def _check_jacobi(g: LieSuperalgebra) -> CheckResult:
    # Accumulate over pairs of nonzero constants instead of the dense
    # index product; the tensors here are very sparse.
    dim = g.dim
    gr = g.grade
    nonzero = [
        (m, a, l, g.f[m][a][l])
        for m in range(dim)
        for a in range(dim)
        for l in range(dim)
        if not g.f[m][a][l].is_zero
    ]
    by_upper: dict[int, list[tuple[int, int, Scalar]]] = {}
    for m, a, l, c in nonzero:
        by_upper.setdefault(m, []).append((a, l, c))
    totals: dict[tuple[int, int, int, int], Scalar] = {}

    def add(key: tuple[int, int, int, int], value: Scalar) -> None:
        totals[key] = totals.get(key, ZERO) + value

    for m, a, l, c1 in nonzero:
        for y, z, c2 in by_upper.get(l, ()):
            prod = c1 * c2
            # as f^m_{jl} f^l_{ki} with (i, j, k) = (z, a, y)
            s1 = _sign(gr(z) * (gr(a) + gr(y)))
            add((z, a, y, m), s1 * prod)
            # as f^m_{il} f^l_{jk} with (i, j, k) = (a, y, z)
            add((a, y, z, m), prod)
            # as f^m_{kl} f^l_{ij} with (i, j, k) = (y, z, a)
            s3 = _sign(gr(a) * (gr(y) + gr(z)))
            add((y, z, a, m), s3 * prod)
    failures = sorted(key for key, value in totals.items() if not value.is_zero)
    if failures:
        i, j, k, m = failures[0]
        return CheckResult(
            "super_jacobi",
            False,
            f"(i,j,k)=({i + 1},{j + 1},{k + 1}), target={m + 1}",
        )
    return CheckResult("super_jacobi", True)


def validate(g: LieSuperalgebra) -> ValidationReport:
    """Run all structural checks; failures are report entries, not errors."""
    return ValidationReport(
        (
            _check_antisymmetry(g),
            _check_grading(g),
            _check_reality(g),
            _check_jacobi(g),
        )
    )


def adjoint(g: LieSuperalgebra) -> tuple[Matrix, ...]:
    """Adjoint matrices, one per basis index: entry (K, L) of the M-th
    matrix is minus the structure constant with upper index M."""
    dim = g.dim
    return tuple(
        tuple(tuple(-g.f[m][k_][l] for l in range(dim)) for k_ in range(dim))
        for m in range(dim)
    )


def stripped_tensor(g: LieSuperalgebra) -> list[list[list[Scalar]]] | None:
    """Structure constants with the imaginary unit dropped from the
    fermion-fermion entries, or ``None`` when the tensor violates the
    reality convention (real elsewhere, purely imaginary there)."""
    dim = g.dim
    out = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for k, i, j in itertools.product(range(dim), repeat=3):
        c = g.f[k][i][j]
        if c.is_zero:
            continue
        if g.grade(i) == 1 and g.grade(j) == 1:
            if not c.is_imaginary:
                return None
            out[k][i][j] = Scalar(c.im)
        else:
            if not c.is_real:
                return None
            out[k][i][j] = c
    return out


# ---------------------------------------------------------------------------
# Subspace machinery and basis-independent invariants
# ---------------------------------------------------------------------------


def graded_dims(
    basis: Sequence[Sequence[Scalar]], m: int, n: int
) -> tuple[int, int]:
    """Graded dimension of a graded subspace given any spanning set."""
    vectors = row_reduce(basis)
    total = len(vectors)
    if total == 0:
        return (0, 0)
    ferm_proj = [v[m:] for v in vectors]
    bos_proj = [v[:m] for v in vectors]
    dim_bos = total - rank(ferm_proj)
    dim_ferm = total - rank(bos_proj)
    if dim_bos + dim_ferm != total:
        raise ValueError("subspace is not graded")
    return (dim_bos, dim_ferm)


def _bracket_span(
    g: LieSuperalgebra,
    left: Sequence[Sequence[Scalar]],
    right: Sequence[Sequence[Scalar]],
) -> list[tuple[Scalar, ...]]:
    products = [g.bracket(x, y) for x in left for y in right]
    return row_reduce(products)


def _basis_vectors(dim: int) -> list[tuple[Scalar, ...]]:
    return [
        tuple(ONE if c == r else ZERO for c in range(dim)) for r in range(dim)
    ]


@dataclass(frozen=True)
class AlgebraInvariants:
    """Basis-independent profile used to certify non-isomorphism.

    All fields are invariant under grading-preserving isomorphisms:
    graded dimensions of the derived and lower central series, of the
    center and of the span of fermion-fermion brackets, the usual
    abelian/nilpotent/solvable flags, a coarse profile of the
    fermion-fermion quadratic form (dimension of its coefficient space;
    rank and absolute signature when that space is a line), and the
    scale-robust similarity profile of the boson action on the fermions
    when that action factors through a line (see ``_odd_action_profile``).
    """

    derived_series: tuple[tuple[int, int], ...]
    lower_central_series: tuple[tuple[int, int], ...]
    center: tuple[int, int]
    fermion_pair_span: tuple[int, int]
    fermion_form_space_dim: int
    fermion_form_profile: tuple[int, int] | None
    odd_action: tuple
    is_abelian: bool
    is_nilpotent: bool
    is_solvable: bool

    def as_dict(self) -> dict:
        return {
            "derived_series": list(map(list, self.derived_series)),
            "lower_central_series": list(map(list, self.lower_central_series)),
            "center": list(self.center),
            "fermion_pair_span": list(self.fermion_pair_span),
            "fermion_form_space_dim": self.fermion_form_space_dim,
            "fermion_form_profile": (
                list(self.fermion_form_profile)
                if self.fermion_form_profile is not None
                else None
            ),
            "odd_action": repr(self.odd_action),
            "is_abelian": self.is_abelian,
            "is_nilpotent": self.is_nilpotent,
            "is_solvable": self.is_solvable,
        }


def _symmetric_form_profile(q: list[list[Fraction]]) -> tuple[int, int]:
    """(rank, |signature|) of a rational symmetric matrix, exactly.

    Diagonalizes by congruence: split off nonzero diagonal entries,
    create one when only off-diagonal entries remain (characteristic 0).
    """
    size = len(q)
    work = [row[:] for row in q]
    plus = minus = 0
    active = list(range(size))
    while active:
        pivot = next((a for a in active if work[a][a] != 0), None)
        if pivot is None:
            pair = None
            for a in active:
                for b in active:
                    if a != b and work[a][b] != 0:
                        pair = (a, b)
                        break
                if pair:
                    break
            if pair is None:
                break
            a, b = pair
            for c in range(size):
                work[a][c] += work[b][c]
            for r in range(size):
                work[r][a] += work[r][b]
            pivot = a
        d = work[pivot][pivot]
        if d > 0:
            plus += 1
        else:
            minus += 1
        active.remove(pivot)
        prow = list(work[pivot])
        for r in active:
            factor = work[r][pivot] / d
            if factor == 0:
                continue
            for c in active:
                work[r][c] -= factor * prow[c]
            work[r][pivot] = Fraction(0)
            work[pivot][r] = Fraction(0)
    return (plus + minus, abs(plus - minus))


def _char_coefficients(a: list[list[Fraction]]) -> list[Fraction]:
    """Characteristic polynomial coefficients [c_1 .. c_n] with
    char(x) = x^n + c_1 x^(n-1) + ... + c_n (Faddeev-LeVerrier)."""
    size = len(a)
    coeffs: list[Fraction] = []
    work = [row[:] for row in a]
    m_prev = [[Fraction(1) if r == c else Fraction(0) for c in range(size)] for r in range(size)]
    for k in range(1, size + 1):
        mk = [
            [sum(a[r][t] * m_prev[t][c] for t in range(size)) for c in range(size)]
            for r in range(size)
        ] if k > 1 else [row[:] for row in a]
        trace = sum(mk[r][r] for r in range(size))
        ck = -trace / k
        coeffs.append(ck)
        m_prev = [
            [mk[r][c] + (ck if r == c else Fraction(0)) for c in range(size)]
            for r in range(size)
        ]
    return coeffs


def _odd_action_profile(g: LieSuperalgebra) -> tuple:
    """Similarity profile of the boson action on the fermions, provided
    that action factors through a line of the bosonic part.

    The acting element is then canonical up to rescaling and the matrix
    up to conjugation, so the recorded data is chosen invariant under
    both: the zero pattern of the characteristic coefficients, the signs
    of the even-weight ones, weight-matched coefficient ratios, the
    minimal-polynomial degree and the ranks of the matrix powers.
    """
    m, n, dim = g.m, g.n, g.dim
    if m == 0 or n == 0:
        return ("trivial",)
    # kernel of the action of the bosonic part on the fermions
    rows = []
    for w in range(m, dim):
        for v in range(m, dim):
            rows.append(tuple(g.f[w][b][v] for b in range(m)))
    kernel = nullspace(rows, m)
    acting = m - len(kernel)
    if acting == 0:
        return ("trivial",)
    if acting > 1:
        return ("wide", acting)
    kernel_matrix = row_reduce(kernel)
    pivots = {
        next(c for c in range(m) if not vec[c].is_zero) for vec in kernel_matrix
    }
    generator = next(b for b in range(m) if b not in pivots)
    entries = [
        [g.f[w][generator][v] for w in range(m, dim)] for v in range(m, dim)
    ]
    if any(not x.is_real for row in entries for x in row):
        return ("nonreal",)
    # entries[v][w] holds the w-component of the image of fermion v; the
    # profile below only uses similarity invariants, so orientation is
    # immaterial.
    action = [[x.re for x in row] for row in entries]
    coeffs = _char_coefficients(action)
    pattern = tuple(c == 0 for c in coeffs)
    even_signs = tuple(
        (k, 1 if coeffs[k - 1] > 0 else -1)
        for k in range(2, n + 1, 2)
        if coeffs[k - 1] != 0
    )
    ratios = []
    nonzero = [k for k in range(1, n + 1) if coeffs[k - 1] != 0]
    for pos, k in enumerate(nonzero):
        for l in nonzero[pos + 1 :]:
            g_ = gcd(k, l)
            value = coeffs[k - 1] ** (l // g_) / coeffs[l - 1] ** (k // g_)
            ratios.append((k, l, value))
    powers = []
    current = [row[:] for row in action]
    for _ in range(n):
        powers.append(rank([tuple(Scalar(x) for x in row) for row in current]))
        current = [
            [sum(current[r][t] * action[t][c] for t in range(n)) for c in range(n)]
            for r in range(n)
        ]
    identity_flat = tuple(
        Scalar(Fraction(1) if r == c else Fraction(0))
        for r in range(n)
        for c in range(n)
    )
    flats: list[tuple] = []
    mat_power = [
        [Fraction(1) if r == c else Fraction(0) for c in range(n)] for r in range(n)
    ]
    degree = n
    for d in range(1, n + 1):
        mat_power = [
            [sum(mat_power[r][t] * action[t][c] for t in range(n)) for c in range(n)]
            for r in range(n)
        ]
        flats.append(tuple(Scalar(x) for row in mat_power for x in row))
        basis = [identity_flat] + flats[:-1]
        if rank(basis + [flats[-1]]) == rank(basis):
            degree = d
            break
    return ("line", pattern, even_signs, tuple(ratios), degree, tuple(powers))


def invariants(g: LieSuperalgebra) -> AlgebraInvariants:
    dim, m, n = g.dim, g.m, g.n
    full = _basis_vectors(dim)

    derived: list[tuple[int, int]] = []
    current = full
    for _ in range(dim + 1):
        nxt = _bracket_span(g, current, current)
        dims = graded_dims(nxt, m, n)
        derived.append(dims)
        if len(nxt) == len(current) or not nxt:
            break
        current = nxt
    solvable = derived[-1] == (0, 0)

    lower: list[tuple[int, int]] = []
    current = full
    for _ in range(dim + 1):
        nxt = _bracket_span(g, full, current)
        dims = graded_dims(nxt, m, n)
        lower.append(dims)
        if len(nxt) == len(current) or not nxt:
            break
        current = nxt
    nilpotent = lower[-1] == (0, 0)

    center_rows = []
    for j in range(dim):
        for k in range(dim):
            center_rows.append(tuple(g.f[k][i][j] for i in range(dim)))
    center_basis = nullspace(center_rows, dim)
    center_dims = graded_dims(center_basis, m, n)

    fermion_products = [
        g.bracket_basis(i, j)
        for i in range(m, dim)
        for j in range(m, dim)
    ]
    ff_span = graded_dims(fermion_products, m, n)

    forms = []
    for b in range(m):
        flat = tuple(g.f[b][i][j] for i in range(m, dim) for j in range(m, dim))
        if any(not c.is_zero for c in flat):
            forms.append(flat)
    form_space = row_reduce(forms)
    profile = None
    if len(form_space) == 1:
        flat = form_space[0]
        # row_reduce normalizes the leading entry to 1, so a tensor obeying
        # the reality convention yields a real symmetric matrix here.
        if all(c.is_real for c in flat):
            q = [[flat[r * n + c].re for c in range(n)] for r in range(n)]
            if all(q[r][c] == q[c][r] for r in range(n) for c in range(n)):
                profile = _symmetric_form_profile(q)

    return AlgebraInvariants(
        derived_series=tuple(derived),
        lower_central_series=tuple(lower),
        center=center_dims,
        fermion_pair_span=ff_span,
        fermion_form_space_dim=len(form_space),
        fermion_form_profile=profile,
        odd_action=_odd_action_profile(g),
        is_abelian=g.is_zero_tensor(),
        is_nilpotent=nilpotent,
        is_solvable=solvable,
    )


# ---------------------------------------------------------------------------
# Maps between algebras
# ---------------------------------------------------------------------------


def is_bracket_map(
    rows: Matrix, src: LieSuperalgebra, dst: LieSuperalgebra
) -> bool:
    """Whether the row-convention linear map preserves brackets.

    Row ``i`` of ``rows`` holds the coordinates of the image of the
    ``i``-th basis vector of ``src`` in the basis of ``dst``.
    """
    if src.dim != dst.dim or len(rows) != src.dim:
        raise DimensionMismatch("map shape does not match algebra dimensions")
    images = [tuple(row) for row in rows]
    for i in range(src.dim):
        for j in range(src.dim):
            lhs_coeffs = src.bracket_basis(i, j)
            lhs = [ZERO] * dst.dim
            for k in range(src.dim):
                if lhs_coeffs[k].is_zero:
                    continue
                for c in range(dst.dim):
                    lhs[c] = lhs[c] + lhs_coeffs[k] * images[k][c]
            rhs = dst.bracket(images[i], images[j])
            if tuple(lhs) != tuple(rhs):
                return False
    return True


def _require_grading_preserving(g: LieSuperalgebra, a: Supermatrix) -> None:
    if (a.m, a.n) != (g.m, g.n):
        raise DimensionMismatch("matrix graded dimension does not match algebra")
    if not a.is_grading_preserving():
        raise NotGradingPreserving("off-diagonal blocks must vanish")


def check_automorphism(g: LieSuperalgebra, a: Supermatrix) -> bool:
    """True iff the grading-preserving invertible map preserves brackets."""
    _require_grading_preserving(g, a)
    if a.sdet().is_zero or mat_det(a.rows).is_zero:
        raise SingularError("automorphism candidate must be invertible")
    return is_bracket_map(a.rows, g, g)


def transform_tensor(g: LieSuperalgebra, p: Supermatrix) -> LieSuperalgebra:
    """Structure constants in the new basis ``Y_i = sum_j P[i][j] X_j``."""
    _require_grading_preserving(g, p)
    inv = mat_inv(p.rows)
    dim = g.dim
    rows = p.rows
    h = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            acc = [ZERO] * dim
            for p_ in range(dim):
                if rows[i][p_].is_zero:
                    continue
                for q_ in range(dim):
                    if rows[j][q_].is_zero:
                        continue
                    coeff = rows[i][p_] * rows[j][q_]
                    for r_ in range(dim):
                        c = g.f[r_][p_][q_]
                        if not c.is_zero:
                            acc[r_] = acc[r_] + coeff * c
            for s_ in range(dim):
                total = ZERO
                for r_ in range(dim):
                    if not acc[r_].is_zero:
                        total = total + acc[r_] * inv[r_][s_]
                h[s_][i][j] = total
    tensor = tuple(tuple(tuple(row) for row in plane) for plane in h)
    return LieSuperalgebra(g.name, g.m, g.n, tensor)
