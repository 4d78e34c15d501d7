"""Brute-force oracle for dual structures on a fixed Lie superalgebra.

For a given algebra the admissible dual-tensor slots (the index triples
allowed by graded antisymmetry, the grading selection rule and the
reality convention) are enumerated over a finite rational grid;
candidates surviving the structural checks and the mixed Jacobi identity
are the dual structures on that grid.  A finite sample of the
automorphism family then reduces the solution list to equivalence
classes.  Because the automorphism family is sampled, the reduction can
only under-merge: classes may split, never fuse wrongly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bialgebra import SuperBialgebra, check_mixed_jacobi
from .linalg import I, ONE, ZERO, Scalar, Supermatrix, mat_inv
from .superalgebra import (
    LieSuperalgebra,
    check_automorphism,
    is_bracket_map,
    validate,
)


@dataclass(frozen=True)
class DualSearchSpec:
    """Search space: the algebra, the value grid, automorphism samples."""

    algebra: LieSuperalgebra
    grid: tuple[Fraction, ...]
    automorphisms: tuple[Supermatrix, ...] = ()


def admissible_slots(g: LieSuperalgebra) -> list[tuple[int, int, int]]:
    """Independent dual-tensor slots (0-based ``(i, j, k)`` with i <= j).

    Slot (i, j, k) carries the coefficient of the k-th generator in the
    bracket of the i-th and j-th dual generators; the diagonal i == j is
    admissible only for fermionic indices.
    """
    slots = []
    dim = g.dim
    for i in range(dim):
        for j in range(i, dim):
            if i == j and g.grade(i) == 0:
                continue
            for k in range(dim):
                if (g.grade(i) + g.grade(j) - g.grade(k)) % 2 == 0:
                    slots.append((i, j, k))
    return slots


def dual_from_slots(
    g: LieSuperalgebra,
    slots: Sequence[tuple[int, int, int]],
    values: Sequence[Scalar],
    name: str = "dual-candidate",
) -> LieSuperalgebra:
    """Dual algebra tensor from slot values, completed by antisymmetry."""
    brackets: dict[tuple[int, int], dict[int, Scalar]] = {}
    for (i, j, k), value in zip(slots, values):
        if value.is_zero:
            continue
        brackets.setdefault((i + 1, j + 1), {})[k + 1] = value
    return LieSuperalgebra.from_brackets(name, g.m, g.n, brackets)


def enumerate_duals(spec: DualSearchSpec) -> list[LieSuperalgebra]:
    """All dual tensors on the grid passing the structural checks and the
    mixed Jacobi identity, in deterministic order."""
    g = spec.algebra
    slots = admissible_slots(g)
    grid = sorted(spec.grid)
    found: list[LieSuperalgebra] = []
    pools = []
    for i, j, _ in slots:
        if g.grade(i) == 1 and g.grade(j) == 1:
            pools.append([Scalar(Fraction(0), q) for q in grid])
        else:
            pools.append([Scalar(q) for q in grid])
    for values in itertools.product(*pools):
        dual = dual_from_slots(g, slots, values)
        if not validate(dual).ok:
            continue
        pair = SuperBialgebra("candidate", g, dual)
        if check_mixed_jacobi(pair).ok:
            found.append(dual)
    return found


def transform_dual_algebra(dual: LieSuperalgebra, rows) -> LieSuperalgebra:
    """Push a dual tensor through an invertible map given by its rows.

    The cocommutator transport under an even map has no residual signs,
    so the tensor transforms with one matrix factor per upper index and
    an inverse factor on the lower index.
    """
    inv = mat_inv(rows)
    dim = dual.dim
    new = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for l in range(dim):
        for m in range(dim):
            for n_ in range(dim):
                c = dual.f[l][m][n_]
                if c.is_zero:
                    continue
                for up1 in range(dim):
                    r1 = rows[m][up1]
                    if r1.is_zero:
                        continue
                    for up2 in range(dim):
                        r2 = rows[n_][up2]
                        if r2.is_zero:
                            continue
                        coeff = c * r1 * r2
                        for low in range(dim):
                            factor = inv[low][l]
                            if not factor.is_zero:
                                new[low][up1][up2] = (
                                    new[low][up1][up2] + coeff * factor
                                )
    tensor = tuple(tuple(tuple(row) for row in plane) for plane in new)
    return LieSuperalgebra(dual.name, dual.m, dual.n, tensor)


def _tensor_key(dual: LieSuperalgebra) -> tuple:
    return tuple(
        c.sort_key() for plane in dual.f for row in plane for c in row
    )


@dataclass(frozen=True)
class DualClass:
    representative: LieSuperalgebra
    members: tuple[LieSuperalgebra, ...]


def reduce_by_automorphisms(
    duals: Sequence[LieSuperalgebra], spec: DualSearchSpec
) -> list[DualClass]:
    """Partition dual tensors by equivalence under the sampled
    automorphisms; representatives are the lexicographically smallest
    tensors and classes come out in representative order."""
    index = {_tensor_key(d): pos for pos, d in enumerate(duals)}
    parent = list(range(len(duals)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for pos, dual in enumerate(duals):
        for auto in spec.automorphisms:
            image = transform_dual_algebra(dual, auto.rows)
            other = index.get(_tensor_key(image))
            if other is not None:
                union(pos, other)
    groups: dict[int, list[int]] = {}
    for pos in range(len(duals)):
        groups.setdefault(find(pos), []).append(pos)
    classes = []
    for members in groups.values():
        ordered = sorted(members, key=lambda p: _tensor_key(duals[p]))
        classes.append(
            DualClass(duals[ordered[0]], tuple(duals[p] for p in ordered))
        )
    classes.sort(key=lambda cls: _tensor_key(cls.representative))
    return classes


def automorphism_samples(
    g: LieSuperalgebra, matrices: Iterable[Supermatrix]
) -> tuple[Supermatrix, ...]:
    """Filter candidate matrices down to verified automorphisms."""
    kept = []
    for cand in matrices:
        try:
            if check_automorphism(g, cand):
                kept.append(cand)
        except Exception:
            continue
    return tuple(kept)


def bounded_dual_iso_search(
    source: LieSuperalgebra,
    target: LieSuperalgebra,
    grid: Sequence[Fraction] = (Fraction(-1), Fraction(0), Fraction(1)),
) -> Supermatrix | None:
    """Exhaustive search for a grading-preserving bracket map sending the
    source basis into the target (rows convention), over a small grid.

    Intended for the three-dimensional dual algebras, where the slot
    count stays tiny.  ``None`` only means not-found-within-grid.
    """
    if source.graded_dim != target.graded_dim:
        return None
    m, n = source.graded_dim
    values = [Scalar(q) for q in sorted(grid)]
    slots = m * m + n * n
    if len(values) ** slots > 500_000:
        raise ValueError("dual iso search grid too large")
    from .linalg import mat_det

    for combo in itertools.product(values, repeat=slots):
        a = [list(combo[r * m : (r + 1) * m]) for r in range(m)]
        off = m * m
        b = [list(combo[off + r * n : off + (r + 1) * n]) for r in range(n)]
        if mat_det(tuple(map(tuple, a))).is_zero:
            continue
        if mat_det(tuple(map(tuple, b))).is_zero:
            continue
        cand = Supermatrix.from_blocks(a, b, [[ZERO] * n] * m, [[ZERO] * m] * n)
        if is_bracket_map(cand.rows, source, target):
            return cand
    return None


# ---------------------------------------------------------------------------
# Solution-family verification and the table oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class FamilyReport:
    name: str
    checks: tuple[FamilyCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


def _family_param_names(entry) -> list[str]:
    from . import expressions

    names: set[str] = set()
    for line in entry.duals:
        for coeff, _ in line.terms():
            names |= expressions.free_names(coeff)
    if entry.algebra is not None:
        for _, expr in entry.algebra.bindings:
            names |= expressions.free_names(expr)
    return [spec.name for spec in entry.params if spec.name in names]


def check_appendix_family(catalog, name: str, sample_count: int = 3) -> FamilyReport:
    """Verify one dual-structure solution family.

    At a handful of family samples: the pair passes the structural checks
    and the mixed Jacobi identity; where a reduction matrix is recorded it
    maps the named target algebra onto the solution's dual algebra with
    nonzero superdeterminant; where the family is marked negative (or a
    sample violates the family's reduction condition) a bounded search
    confirms that no grading-preserving invertible bracket map onto the
    named target exists on the small grid, with an invariant separation
    recorded when one exists.
    """
    from . import expressions
    from .catalog import (
        check_sample,
        dualfamily_bialgebra,
        instantiate_algebra,
        instantiate_matrix,
        matrix_samples,
    )
    from .isoclass import separate
    from .superalgebra import invariants

    entry = catalog.get(name)
    fam_names = _family_param_names(entry)
    fam_specs = [entry.param(n) for n in fam_names]
    pools = []
    for spec in fam_specs:
        pool = spec.domain.sample_pool()
        picks = sorted({0, len(pool) // 2, len(pool) - 1})
        pools.append([Scalar(pool[i]) for i in picks])
    fam_samples = []
    for combo in itertools.product(*pools):
        sample = dict(zip(fam_names, combo))
        gate = True
        for text in entry.constraints:
            names = expressions.constraint_names(text)
            if names <= set(sample) and not expressions.check_constraint(
                text, sample
            ):
                gate = False
                break
        if gate:
            fam_samples.append(sample)
        if len(fam_samples) >= max(sample_count, 1):
            break
    if not fam_samples:
        fam_samples = [{}]

    checks: list[FamilyCheck] = []
    for fam in fam_samples:
        label = ", ".join(f"{k}={v}" for k, v in fam.items()) or "-"
        pair = dualfamily_bialgebra(entry, fam, catalog)
        structural = validate(pair.dual).ok and check_mixed_jacobi(pair).ok
        checks.append(FamilyCheck(f"structure[{label}]", structural))
        if not structural:
            continue

        iso_gate = all(
            expressions.check_constraint(text, fam)
            for text in entry.iso_constraints
        )
        if entry.rows and entry.target is not None and iso_gate:
            target = instantiate_algebra(
                catalog.get(entry.target.name),
                entry.target.resolve_bindings(fam),
                catalog,
                enforce=False,
            )
            verified = 0
            for mat_sample in matrix_samples(entry, overrides=fam)[:sample_count]:
                mat = instantiate_matrix(entry, mat_sample, enforce=False)
                if mat.sdet().is_zero:
                    continue
                if is_bracket_map(mat.rows, target, pair.dual):
                    verified += 1
            checks.append(
                FamilyCheck(
                    f"reduction[{label}]",
                    verified > 0,
                    f"{verified} matrix sample(s) verified",
                )
            )
        negative_target = None
        if entry.negative:
            negative_target = entry.negative
        elif entry.rows and entry.target is not None and not iso_gate:
            negative_target = entry.target.name
        if negative_target:
            bindings = {}
            if entry.algebra is not None and entry.algebra.name == negative_target:
                bindings = entry.algebra.resolve_bindings(fam)
            target = instantiate_algebra(
                catalog.get(negative_target), bindings, catalog, enforce=False
            )
            found = bounded_dual_iso_search(target, pair.dual)
            sep = separate(target, pair.dual)
            detail = (
                f"separated by {sep.invariant}"
                if sep.separated
                else "not found within grid"
            )
            checks.append(
                FamilyCheck(f"negative[{label}]", found is None, detail)
            )
    return FamilyReport(entry.name, tuple(checks))


def on_grid(dual: LieSuperalgebra, grid: Sequence[Fraction]) -> bool:
    """Whether every tensor entry lies on the grid (times the imaginary
    unit for fermion-fermion entries)."""
    values = set(grid)
    for plane in dual.f:
        for row in plane:
            for c in row:
                if c.is_zero:
                    continue
                if c.is_real and c.re in values:
                    continue
                if c.is_imaginary and c.im in values:
                    continue
                return False
    return True


def expected_table_duals(
    g: LieSuperalgebra, grid: Sequence[Fraction], catalog
) -> list[LieSuperalgebra]:
    """Dual tensors the catalog rows predict for the algebra, on the grid.

    Collects the dual side of every catalog pair whose first factor is
    tensor-identical to ``g``, together with the swapped pairs whose first
    factor is isomorphic to ``g`` (transported through a small-grid
    isomorphism).  Deduplicates tensor-exactly.
    """
    from .catalog import default_samples, instantiate_bialgebra
    from .linalg import mat_inv

    iso_cache: dict = {}

    def iso_onto(left: LieSuperalgebra):
        key = (left.graded_dim, _tensor_key(left))
        if key not in iso_cache:
            if left.graded_dim != g.graded_dim:
                iso_cache[key] = None
            elif left.f == g.f:
                iso_cache[key] = Supermatrix.identity(g.m, g.n).rows
            else:
                found = bounded_dual_iso_search(g, left)
                iso_cache[key] = found.rows if found is not None else None
        return iso_cache[key]

    expected: dict = {}
    for entry in catalog.by_kind("bialgebra"):
        for sample in default_samples(entry):
            pair = instantiate_bialgebra(entry, sample, catalog)
            for cand in (pair, pair.swap()):
                rows = iso_onto(cand.left)
                if rows is None:
                    continue
                dual = cand.dual
                if rows != Supermatrix.identity(g.m, g.n).rows:
                    dual = transform_dual_algebra(dual, mat_inv(rows))
                if not on_grid(dual, grid):
                    continue
                key = _tensor_key(dual)
                if key not in expected:
                    expected[key] = dual.renamed(f"{entry.name}")
    return list(expected.values())


@dataclass(frozen=True)
class OracleReport:
    """Comparison of enumerated grid duals against the catalog rows."""

    algebra: str
    enumerated: int
    classes: int
    expected: int
    matched: bool
    unmatched_enumerated: tuple[str, ...]
    unmatched_expected: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.matched

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "enumerated": self.enumerated,
            "classes": self.classes,
            "expected": self.expected,
            "matched": self.matched,
            "unmatched_enumerated": list(self.unmatched_enumerated),
            "unmatched_expected": list(self.unmatched_expected),
        }


def _describe(dual: LieSuperalgebra) -> str:
    parts = []
    dim = dual.dim
    for i in range(dim):
        for j in range(i, dim):
            for k in range(dim):
                c = dual.f[k][i][j]
                if not c.is_zero:
                    parts.append(f"ft^{{{i + 1}{j + 1}}}_{k + 1}={c}")
    return "; ".join(parts) if parts else "zero"


def compare_with_tables(
    spec: DualSearchSpec, catalog
) -> OracleReport:
    """One-to-one matching of enumerated dual classes with table rows.

    Both the enumerated solutions and the instantiated table rows are
    thrown into one automorphism reduction; the match succeeds when every
    class contains tensors from both sides.
    """
    enumerated = enumerate_duals(spec)
    expected = expected_table_duals(spec.algebra, spec.grid, catalog)
    enum_keys = {_tensor_key(d) for d in enumerated}
    exp_keys = {_tensor_key(d) for d in expected}
    merged: dict = {}
    for d in enumerated + expected:
        merged.setdefault(_tensor_key(d), d)
    classes = reduce_by_automorphisms(list(merged.values()), spec)
    bad_enum: list[str] = []
    bad_exp: list[str] = []
    enum_classes = 0
    for cls in classes:
        keys = {_tensor_key(d) for d in cls.members}
        has_enum = bool(keys & enum_keys)
        has_exp = bool(keys & exp_keys)
        if has_enum:
            enum_classes += 1
        if has_enum and not has_exp:
            bad_enum.append(_describe(cls.representative))
        if has_exp and not has_enum:
            bad_exp.append(_describe(cls.representative))
    return OracleReport(
        spec.algebra.name,
        len(enumerated),
        enum_classes,
        len(expected),
        not bad_enum and not bad_exp,
        tuple(bad_enum),
        tuple(bad_exp),
    )


def automorphism_grid(catalog, g: LieSuperalgebra) -> tuple[Supermatrix, ...]:
    """Verified automorphism samples of ``g`` from the catalog families,
    instantiated on the full cartesian sweep of their parameter pools."""
    from .catalog import instantiate_algebra, instantiate_matrix

    matrices: list[Supermatrix] = []
    for entry in catalog.by_kind("automorphism"):
        base = instantiate_algebra(
            catalog.get(entry.algebra.name),
            entry.algebra.resolve_bindings({}),
            catalog,
            enforce=False,
        )
        if base.graded_dim != g.graded_dim or base.f != g.f:
            continue
        pools = [
            [Scalar(q) for q in spec.domain.sample_pool()] for spec in entry.params
        ]
        names = [spec.name for spec in entry.params]
        for combo in itertools.product(*pools):
            sample = dict(zip(names, combo))
            cand = instantiate_matrix(entry, sample)
            if check_automorphism(g, cand):
                matrices.append(cand)
    return tuple(matrices)


def build_search_spec(
    catalog,
    g: LieSuperalgebra,
    grid: Sequence[Fraction] = (Fraction(-1), Fraction(0), Fraction(1)),
) -> DualSearchSpec:
    return DualSearchSpec(g, tuple(sorted(grid)), automorphism_grid(catalog, g))
