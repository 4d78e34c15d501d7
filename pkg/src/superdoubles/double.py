"""Drinfel'd superdouble construction and Manin-triple verification.

Given a super-bialgebra on ``(g, gt)`` of graded dimension ``(m | n)``,
the double is the superalgebra on ``2(m+n)`` generators assembled from
the two bracket tensors plus the mixed bracket forced by invariance of
the canonical pairing.  The generators are ordered in the standard way:

    T_1 .. T_m        bosons of g
    T_{m+1} .. T_2m   bosons of gt
    then the n fermions of g, then the n fermions of gt.

Structure constants follow the convention of the rest of the package:
real except on fermion-fermion brackets, which are purely imaginary.  To
get there the assembly first drops the imaginary unit from the
fermion-fermion constants of the two inputs, builds all brackets over the
rationals, and finally restores the unit on the fermion-fermion brackets
of the double.

The canonical pairing in this normalization is ``+1`` on bosonic pairs in
both orders and ``-i`` / ``+i`` on fermionic pairs (g fermion paired with
gt fermion, resp. the reverse); with these values the form is
supersymmetric and ad-invariant for every double built here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bialgebra import SuperBialgebra, check_mixed_jacobi
from .errors import InvalidBialgebra
from .linalg import (
    I,
    MINUS_ONE,
    ONE,
    ZERO,
    Matrix,
    Scalar,
    Supermatrix,
)
from .superalgebra import (
    CheckResult,
    LieSuperalgebra,
    ValidationReport,
    is_bracket_map,
    stripped_tensor,
    validate,
)


@dataclass(frozen=True)
class DrinfeldDouble:
    """A superdouble: the assembled algebra plus the canonical pairing."""

    source: SuperBialgebra
    algebra: LieSuperalgebra
    form: Matrix

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def left_positions(self) -> tuple[int, ...]:
        """0-based double positions spanned by the first factor."""
        m, n = self.source.graded_dim
        return tuple(range(m)) + tuple(range(2 * m, 2 * m + n))

    def dual_positions(self) -> tuple[int, ...]:
        m, n = self.source.graded_dim
        return tuple(range(m, 2 * m)) + tuple(range(2 * m + n, 2 * (m + n)))


def _strip_imaginary_unit(g: LieSuperalgebra) -> list[list[list[Scalar]]]:
    """Drop the imaginary unit from fermion-fermion constants."""
    stripped = stripped_tensor(g)
    if stripped is None:
        raise InvalidBialgebra(f"{g.name}: tensor violates the reality convention")
    return stripped


def build_double(b: SuperBialgebra, check: bool = True) -> DrinfeldDouble:
    """Assemble the superdouble of a bialgebra.

    With ``check=True`` (the default) the mixed Jacobi identity is
    verified first and its failure raises ``InvalidBialgebra``.
    """
    if check and not check_mixed_jacobi(b).ok:
        raise InvalidBialgebra(f"{b.name}: mixed Jacobi identity fails")

    m, n = b.graded_dim
    small = m + n
    dim = 2 * small
    big_m, big_n = 2 * m, 2 * n

    f_r = _strip_imaginary_unit(b.left)
    # dual tensor with the unit dropped: ft[i][j][k], from the dual algebra
    dual_planes = _strip_imaginary_unit(b.dual)
    ft_r = [
        [[dual_planes[k][i][j] for k in range(small)] for j in range(small)]
        for i in range(small)
    ]

    def pos_left(i: int) -> int:
        return i if i < m else 2 * m + (i - m)

    def pos_dual(i: int) -> int:
        return m + i if i < m else 2 * m + n + (i - m)

    def grade(i: int) -> int:
        return 0 if i < m else 1

    f = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]

    def add(k: int, i: int, j: int, c: Scalar) -> None:
        if not c.is_zero:
            f[k][i][j] = f[k][i][j] + c

    for i, j, k in itertools.product(range(small), repeat=3):
        add(pos_left(k), pos_left(i), pos_left(j), f_r[k][i][j])
        add(pos_dual(k), pos_dual(i), pos_dual(j), ft_r[i][j][k])

    # mixed bracket of X_i with the j-th dual generator, then its mirror
    for i, j in itertools.product(range(small), repeat=2):
        sign_j = MINUS_ONE if grade(j) else ONE
        sign_i = MINUS_ONE if grade(i) else ONE
        mirror = (
            MINUS_ONE if (grade(i) * grade(j)) % 2 == 0 else ONE
        )  # -(-1)^{|i||j|}
        for k in range(small):
            c1 = sign_j * ft_r[j][k][i]
            if not c1.is_zero:
                add(pos_left(k), pos_left(i), pos_dual(j), c1)
                add(pos_left(k), pos_dual(j), pos_left(i), mirror * c1)
            c2 = sign_i * f_r[j][k][i]
            if not c2.is_zero:
                add(pos_dual(k), pos_left(i), pos_dual(j), c2)
                add(pos_dual(k), pos_dual(j), pos_left(i), mirror * c2)

    # restore the imaginary unit on fermion-fermion brackets of the double
    def big_grade(p: int) -> int:
        return 0 if p < big_m else 1

    for k, i, j in itertools.product(range(dim), repeat=3):
        if big_grade(i) and big_grade(j) and not f[k][i][j].is_zero:
            f[k][i][j] = f[k][i][j] * I

    tensor = tuple(tuple(tuple(row) for row in plane) for plane in f)
    algebra = LieSuperalgebra(f"double({b.name})", big_m, big_n, tensor)

    form = [[ZERO] * dim for _ in range(dim)]
    for i in range(small):
        a_pos, d_pos = pos_left(i), pos_dual(i)
        if grade(i) == 0:
            form[a_pos][d_pos] = ONE
            form[d_pos][a_pos] = ONE
        else:
            form[a_pos][d_pos] = -I
            form[d_pos][a_pos] = I
    return DrinfeldDouble(b, algebra, tuple(tuple(row) for row in form))


def check_manin_triple(d: DrinfeldDouble) -> ValidationReport:
    """Verify the triple axioms for the assembled double."""
    alg = d.algebra
    dim = alg.dim
    left = set(d.left_positions())
    dual = set(d.dual_positions())
    checks: list[CheckResult] = []

    def closed(span: set[int], label: str) -> CheckResult:
        for i in span:
            for j in span:
                for k in range(dim):
                    if k not in span and not alg.f[k][i][j].is_zero:
                        return CheckResult(
                            label, False, f"bracket ({i + 1},{j + 1}) leaves the span"
                        )
        return CheckResult(label, True)

    checks.append(closed(left, "subalgebra_left"))
    checks.append(closed(dual, "subalgebra_dual"))
    checks.append(
        CheckResult(
            "decomposition",
            left | dual == set(range(dim)) and not (left & dual),
        )
    )

    iso_ok = all(
        d.form[i][j].is_zero
        for span in (left, dual)
        for i in span
        for j in span
    )
    checks.append(CheckResult("isotropy", iso_ok))

    m, n = d.source.graded_dim
    pairing_ok = True
    detail = ""
    for i in range(m + n):
        a_pos = i if i < m else 2 * m + (i - m)
        d_pos = m + i if i < m else 2 * m + n + (i - m)
        want_ad = ONE if i < m else -I
        want_da = ONE if i < m else I
        if d.form[a_pos][d_pos] != want_ad or d.form[d_pos][a_pos] != want_da:
            pairing_ok = False
            detail = f"pair index {i + 1}"
            break
    checks.append(CheckResult("pairing", pairing_ok, detail))

    inv_ok = True
    detail = ""
    for z, x, y in itertools.product(range(dim), repeat=3):
        sign = MINUS_ONE if (alg.grade(z) * alg.grade(x)) % 2 else ONE
        total = ZERO
        for k in range(dim):
            if not alg.f[k][z][x].is_zero:
                total = total + alg.f[k][z][x] * d.form[k][y]
            if not alg.f[k][z][y].is_zero:
                total = total + sign * d.form[x][k] * alg.f[k][z][y]
        if not total.is_zero:
            inv_ok = False
            detail = f"(z,x,y)=({z + 1},{x + 1},{y + 1})"
            break
    checks.append(CheckResult("ad_invariance", inv_ok, detail))

    checks.extend(validate(alg).checks)
    return ValidationReport(tuple(checks))


def restrict(d: DrinfeldDouble, which: str) -> LieSuperalgebra:
    """Sub-superalgebra on one of the two spans, in the factor's own basis.

    ``which`` is ``"left"`` or ``"dual"``.  The result carries the same
    tensor as the corresponding input factor; tests assert that equality
    independently of the construction.
    """
    if which not in ("left", "dual"):
        raise ValueError("which must be 'left' or 'dual'")
    positions = d.left_positions() if which == "left" else d.dual_positions()
    src = d.source.left if which == "left" else d.source.dual
    index = {p: q for q, p in enumerate(positions)}
    small = len(positions)
    f = [[[ZERO] * small for _ in range(small)] for _ in range(small)]
    for i in positions:
        for j in positions:
            for k in positions:
                f[index[k]][index[i]][index[j]] = d.algebra.f[k][i][j]
    tensor = tuple(tuple(tuple(row) for row in plane) for plane in f)
    return LieSuperalgebra(src.name, src.m, src.n, tensor)


def span_swap_certificate(
    d1: DrinfeldDouble, d2: DrinfeldDouble
) -> Supermatrix:
    """Certificate between the doubles of a bialgebra and of its swap.

    Returns a grading-preserving matrix whose rows express the basis of
    ``d2`` (the swapped double) inside ``d1``; the bracket-preservation
    property is verified before returning.  The exchange of the two spans
    needs one fermionic sign, determined here by trying both choices.
    """
    m, n = d1.source.graded_dim
    dim = 2 * (m + n)

    def build(sign_left: Scalar, sign_dual: Scalar) -> Supermatrix:
        rows = [[ZERO] * dim for _ in range(dim)]
        for i in range(m):
            rows[i][m + i] = ONE  # swapped boson -> dual boson of d1
            rows[m + i][i] = ONE
        for i in range(n):
            rows[2 * m + i][2 * m + n + i] = sign_left
            rows[2 * m + n + i][2 * m + i] = sign_dual
        return Supermatrix(2 * m, 2 * n, tuple(tuple(r) for r in rows))

    for sign_left, sign_dual in ((MINUS_ONE, ONE), (ONE, MINUS_ONE)):
        cand = build(sign_left, sign_dual)
        if is_bracket_map(cand.rows, d2.algebra, d1.algebra):
            return cand
    raise InvalidBialgebra(
        f"no span-exchange certificate found for {d1.source.name}"
    )
