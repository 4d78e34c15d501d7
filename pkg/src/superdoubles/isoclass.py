"""Isomorphism verification between superdoubles.

Two routes are implemented and cross-checked everywhere:

* ``check_homomorphism`` -- direct bracket preservation.  A certificate
  matrix is read the way the classification tables print it: row ``i``
  holds the coordinates of the *target* algebra's ``i``-th generator
  inside the *source* algebra.  Certificates compose contravariantly
  (``C23 @ C12`` certifies source1 vs source3) and invert.

* ``check_adjoint_identity`` -- the same condition rewritten through the
  adjoint matrices ``(Y^M)_{KL} = -f^M_{KL}``: for every M, K, L

      (-1)^{|K||L|} sum_{I,J} (-1)^{|M||J| + |J||L|}
          C[K][I] (Y^M)[I][J] C[L][J]
        = sum_N (Y'^N)[K][L] C[N][M]

  with Y from the source and Y' from the target.  The sign placement is
  the unique reading that agrees with bracket preservation for every
  grading-preserving invertible matrix; the test suite enforces that
  agreement on certificates and on random matrices alike.

Bounded certificate search and invariant-based separation complete the
toolkit: a failed search is never evidence of non-isomorphism, only
``separate`` can certify distinctness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotGradingPreserving, SingularError
from .linalg import (
    MINUS_ONE,
    ONE,
    ZERO,
    Scalar,
    Supermatrix,
    mat_det,
)
from .superalgebra import (
    AlgebraInvariants,
    LieSuperalgebra,
    adjoint,
    invariants,
    is_bracket_map,
)


def _require_certificate_shape(
    c: Supermatrix, source: LieSuperalgebra, target: LieSuperalgebra
) -> None:
    if source.graded_dim != target.graded_dim:
        raise DimensionMismatch("the two algebras have different graded dimensions")
    if (c.m, c.n) != source.graded_dim:
        raise DimensionMismatch("matrix graded dimension does not match the algebras")
    if not c.is_grading_preserving():
        raise NotGradingPreserving("certificate must have zero off-diagonal blocks")


def check_homomorphism(
    c: Supermatrix, source: LieSuperalgebra, target: LieSuperalgebra
) -> bool:
    """Bracket preservation for a tabulated certificate matrix."""
    _require_certificate_shape(c, source, target)
    if c.sdet().is_zero:
        raise SingularError("certificate must have nonzero superdeterminant")
    return is_bracket_map(c.rows, target, source)


def check_adjoint_identity(
    c: Supermatrix, source: LieSuperalgebra, target: LieSuperalgebra
) -> bool:
    """Adjoint-matrix form of the isomorphism condition (see module doc)."""
    _require_certificate_shape(c, source, target)
    if c.sdet().is_zero:
        raise SingularError("certificate must have nonzero superdeterminant")
    dim = source.dim
    y_src = adjoint(source)
    y_tgt = adjoint(target)
    rows = c.rows
    gr = source.grade
    for m in range(dim):
        for k in range(dim):
            for l in range(dim):
                lhs = ZERO
                for i_ in range(dim):
                    cki = rows[k][i_]
                    if cki.is_zero:
                        continue
                    for j_ in range(dim):
                        clj = rows[l][j_]
                        if clj.is_zero:
                            continue
                        y = y_src[m][i_][j_]
                        if y.is_zero:
                            continue
                        sign = (gr(m) * gr(j_) + gr(j_) * gr(l)) % 2
                        term = cki * y * clj
                        lhs = lhs + (-term if sign else term)
                if (gr(k) * gr(l)) % 2:
                    lhs = -lhs
                rhs = ZERO
                for n_ in range(dim):
                    y = y_tgt[n_][k][l]
                    if not y.is_zero:
                        rhs = rhs + y * rows[n_][m]
                if lhs != rhs:
                    return False
    return True


@dataclass(frozen=True)
class IsoCertificate:
    """A verified isomorphism certificate between two named doubles."""

    source_name: str
    target_name: str
    matrix: Supermatrix

    def sdet(self) -> Scalar:
        return self.matrix.sdet()


@dataclass(frozen=True)
class SeparationReport:
    separated: bool
    invariant: str = ""
    left_value: str = ""
    right_value: str = ""

    def as_dict(self) -> dict:
        return {
            "separated": self.separated,
            "invariant": self.invariant,
            "left": self.left_value,
            "right": self.right_value,
        }


_SEPARATION_FIELDS = (
    "is_abelian",
    "is_nilpotent",
    "is_solvable",
    "derived_series",
    "lower_central_series",
    "center",
    "fermion_pair_span",
    "fermion_form_space_dim",
    "fermion_form_profile",
    "odd_action",
)


def separate(
    left: LieSuperalgebra,
    right: LieSuperalgebra,
    left_inv: AlgebraInvariants | None = None,
    right_inv: AlgebraInvariants | None = None,
) -> SeparationReport:
    """First implemented invariant distinguishing the two algebras."""
    if left.graded_dim != right.graded_dim:
        return SeparationReport(
            True, "graded_dimension", str(left.graded_dim), str(right.graded_dim)
        )
    a = left_inv if left_inv is not None else invariants(left)
    b = right_inv if right_inv is not None else invariants(right)
    for field in _SEPARATION_FIELDS:
        va, vb = getattr(a, field), getattr(b, field)
        if va != vb:
            return SeparationReport(True, field, str(va), str(vb))
    return SeparationReport(False)


def grid_values(bound: int) -> list[Scalar]:
    """Rationals with numerator and denominator bounded by ``bound``,
    ordered deterministically with 0 first."""
    values = {Fraction(0)}
    for num in range(-bound, bound + 1):
        for den in range(1, bound + 1):
            values.add(Fraction(num, den))
    ordered = sorted(values)
    ordered.remove(Fraction(0))
    return [Scalar(Fraction(0))] + [Scalar(q) for q in ordered]


def _grading_preserving_candidates(
    m: int, n: int, values: Sequence[Scalar], cap: int
) -> Iterable[Supermatrix]:
    slots = m * m + n * n
    total = len(values) ** slots
    if total > cap:
        return
    for combo in itertools.product(values, repeat=slots):
        a = [list(combo[r * m : (r + 1) * m]) for r in range(m)]
        off = m * m
        b = [list(combo[off + r * n : off + (r + 1) * n]) for r in range(n)]
        if mat_det(tuple(map(tuple, a))).is_zero:
            continue
        if mat_det(tuple(map(tuple, b))).is_zero:
            continue
        yield Supermatrix.from_blocks(a, b, [[ZERO] * n] * m, [[ZERO] * m] * n)


def find_certificate(
    source: LieSuperalgebra,
    target: LieSuperalgebra,
    bound: int = 1,
    templates: Sequence[Supermatrix] = (),
    cap: int = 200_000,
) -> IsoCertificate | None:
    """Bounded search for an isomorphism certificate.

    Tries the identity, then any supplied template matrices, then an
    exhaustive sweep of grading-preserving matrices with entries in the
    bounded rational grid (skipped when the grid would exceed ``cap``
    candidates).  ``None`` is a bounded-search failure marker, never a
    proof of non-isomorphism.
    """
    if source.graded_dim != target.graded_dim:
        raise DimensionMismatch("graded dimensions differ")
    if separate(source, target).separated:
        return None
    m, n = source.graded_dim

    def verified(cand: Supermatrix) -> bool:
        try:
            if cand.sdet().is_zero:
                return False
        except SingularError:
            return False
        return is_bracket_map(cand.rows, target, source)

    identity = Supermatrix.identity(m, n)
    if verified(identity):
        return IsoCertificate(source.name, target.name, identity)
    for cand in templates:
        if (cand.m, cand.n) == (m, n) and cand.is_grading_preserving():
            if verified(cand):
                return IsoCertificate(source.name, target.name, cand)
    for cand in _grading_preserving_candidates(m, n, grid_values(bound), cap):
        if verified(cand):
            return IsoCertificate(source.name, target.name, cand)
    return None


# ---------------------------------------------------------------------------
# Classification re-verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassInstance:
    member_name: str
    bindings: tuple  # sorted (name, Scalar) pairs

    def label(self) -> str:
        if not self.bindings:
            return self.member_name
        body = ", ".join(f"{k}={v}" for k, v in self.bindings)
        return f"{self.member_name}[{body}]"


@dataclass(frozen=True)
class ClassReport:
    name: str
    family_values: tuple
    instances: tuple[ClassInstance, ...]
    certified: bool
    uncertified: tuple[str, ...]
    swaps_ok: bool
    edges: int

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "family_values": [f"{k}={v}" for k, v in self.family_values],
            "instances": [inst.label() for inst in self.instances],
            "certified": self.certified,
            "uncertified": list(self.uncertified),
            "swaps_ok": self.swaps_ok,
            "edges": self.edges,
        }


@dataclass(frozen=True)
class SeparationPair:
    left: str
    right: str
    report: SeparationReport

    def as_dict(self) -> dict:
        return {"left": self.left, "right": self.right, **self.report.as_dict()}


@dataclass(frozen=True)
class TheoremReport:
    dtype: tuple[int, int]
    classes: tuple[ClassReport, ...]
    separations: tuple[SeparationPair, ...]
    family_notes: tuple[str, ...]

    @property
    def unresolved(self) -> tuple[SeparationPair, ...]:
        return tuple(p for p in self.separations if not p.report.separated)

    @property
    def ok(self) -> bool:
        return all(c.certified and c.swaps_ok for c in self.classes)

    def as_dict(self) -> dict:
        return {
            "dtype": list(self.dtype),
            "class_count": len(self.classes),
            "classes": [c.as_dict() for c in self.classes],
            "separations": [p.as_dict() for p in self.separations],
            "unresolved": [p.as_dict() for p in self.unresolved],
            "family_notes": list(self.family_notes),
            "ok": self.ok,
        }


def _unify_ref(ref, bindings: dict) -> dict | None:
    """Match a certificate endpoint against an instance binding.

    Returns assignments for the certificate's own parameters, or None
    when a constant in the endpoint disagrees with the instance.
    """
    from . import expressions

    if set(name for name, _ in ref.bindings) != set(bindings):
        return None
    out: dict = {}
    for pname, expr in ref.bindings:
        value = bindings[pname]
        node = expressions.parse(expr)
        if node[0] == "name":
            key, val = node[1], value
        elif node[0] == "neg" and node[1][0] == "name":
            key, val = node[1][1], -value
        else:
            if expressions.evaluate(expr, {}) != value:
                return None
            continue
        if key in out and out[key] != val:
            return None
        out[key] = val
    return out


def _family_samples(entry, fam_specs) -> list[dict]:
    if not fam_specs:
        return [{}]
    pools = []
    for spec in fam_specs:
        pool = spec.domain.sample_pool()
        picks = sorted({0, len(pool) // 2, len(pool) - 1})
        pools.append((spec.name, [Scalar(pool[i]) for i in picks]))
    out = []
    for combo in itertools.product(*(vals for _, vals in pools)):
        out.append({name: val for (name, _), val in zip(pools, combo)})
    return out


def verify_theorems(catalog, dtype: tuple[int, int], max_local: int = 12):
    """Re-verify one classification type.

    For every class: instantiate the listed decompositions at default
    samples, verify certificate edges between them (bracket preservation
    with nonzero superdeterminant), check connectivity to the
    representative, and verify the swapped decomposition of every
    instance through the span-exchange certificate.  Then separate all
    class representatives pairwise by invariants; pairs no implemented
    invariant distinguishes are reported, never hidden.
    """
    from . import expressions
    from .catalog import (
        instantiate_bialgebra,
        instantiate_matrix,
        matrix_samples,
    )
    from .double import build_double, span_swap_certificate

    classes = [e for e in catalog.by_kind("theoremclass") if e.dtype == dtype]
    certs = catalog.by_kind("isomatrix")
    reports: list[ClassReport] = []
    rep_invariants: list[tuple[str, AlgebraInvariants]] = []
    family_notes: list[str] = []

    for entry in classes:
        member_names = {ref.name for ref in entry.members}
        fam_specs = [
            spec
            for spec in entry.params
            if all(
                spec.name
                in set().union(
                    *(expressions.free_names(expr) for _, expr in ref.bindings)
                )
                if ref.bindings
                else False
                for ref in entry.members
            )
        ]
        fam_done = False
        for fam_idx, fam in enumerate(_family_samples(entry, fam_specs)):
            instances: list[ClassInstance] = []
            doubles: dict[ClassInstance, object] = {}
            for ref in entry.members:
                local_names = sorted(
                    set().union(
                        *(expressions.free_names(expr) for _, expr in ref.bindings)
                    )
                    - set(fam)
                ) if ref.bindings else []
                pools = []
                for name in local_names:
                    pool = entry.param(name).domain.sample_pool()
                    pools.append([Scalar(q) for q in pool])
                combos = list(itertools.product(*pools))[:max_local] if pools else [()]
                for combo in combos:
                    sample = dict(fam)
                    sample.update(dict(zip(local_names, combo)))
                    bindings = ref.resolve_bindings(sample)
                    inst = ClassInstance(
                        ref.name, tuple(sorted((k, v) for k, v in bindings.items()))
                    )
                    if inst in doubles:
                        continue
                    bial = instantiate_bialgebra(
                        catalog.get(ref.name), bindings, catalog
                    )
                    doubles[inst] = build_double(bial)
                    instances.append(inst)

            parent = {inst: inst for inst in instances}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            def union(x, y):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[ry] = rx

            edges = 0
            for cert in certs:
                if (
                    cert.source.name not in member_names
                    or cert.target.name not in member_names
                ):
                    continue
                sources = [i for i in instances if i.member_name == cert.source.name]
                targets = [i for i in instances if i.member_name == cert.target.name]
                for src in sources:
                    for tgt in targets:
                        if src == tgt:
                            continue
                        over_s = _unify_ref(cert.source, dict(src.bindings))
                        if over_s is None:
                            continue
                        over_t = _unify_ref(cert.target, dict(tgt.bindings))
                        if over_t is None:
                            continue
                        overrides = dict(over_s)
                        clash = False
                        for key, val in over_t.items():
                            if key in overrides and overrides[key] != val:
                                clash = True
                                break
                            overrides[key] = val
                        if clash:
                            continue
                        try:
                            samples = matrix_samples(cert, overrides=overrides)
                        except Exception:
                            continue
                        for sample in samples[:2]:
                            matrix = instantiate_matrix(cert, sample)
                            try:
                                if matrix.sdet().is_zero:
                                    continue
                                if check_homomorphism(
                                    matrix,
                                    doubles[src].algebra,
                                    doubles[tgt].algebra,
                                ):
                                    union(src, tgt)
                                    edges += 1
                                    break
                            except (SingularError, NotGradingPreserving):
                                continue

            components = {find(inst) for inst in instances}
            uncertified: list[str] = []
            if len(components) > 1:
                root = find(instances[0])
                # last resort at desk scale: bounded search on small doubles
                for inst in instances[1:]:
                    if find(inst) == root:
                        continue
                    if doubles[inst].algebra.dim <= 4:
                        found = find_certificate(
                            doubles[instances[0]].algebra, doubles[inst].algebra
                        )
                        if found is not None:
                            union(instances[0], inst)
                for inst in instances:
                    if find(inst) != find(instances[0]):
                        uncertified.append(inst.label())

            swaps_ok = True
            for inst in instances:
                d1 = doubles[inst]
                d2 = build_double(d1.source.swap())
                try:
                    span_swap_certificate(d1, d2)
                except Exception:
                    swaps_ok = False
                    break

            reports.append(
                ClassReport(
                    entry.name,
                    tuple(sorted(fam.items())),
                    tuple(instances),
                    not uncertified,
                    tuple(uncertified),
                    swaps_ok,
                    edges,
                )
            )
            if not fam_done:
                rep = instances[0]
                rep_invariants.append(
                    (entry.name, invariants(doubles[rep].algebra))
                )
                fam_done = True
            else:
                base_name, base_inv = next(
                    (n, v) for n, v in rep_invariants if n == entry.name
                )
                if invariants(doubles[instances[0]].algebra) == base_inv:
                    family_notes.append(
                        f"{entry.name}: representatives at distinct family "
                        f"parameters share all implemented invariants; "
                        f"cross-parameter distinctness is reported, not certified"
                    )

    separations: list[SeparationPair] = []
    seen_notes: list[str] = []
    for (name_a, inv_a), (name_b, inv_b) in itertools.combinations(
        rep_invariants, 2
    ):
        dummy_a = catalog.get(name_a)
        report = None
        for field in _SEPARATION_FIELDS:
            va, vb = getattr(inv_a, field), getattr(inv_b, field)
            if va != vb:
                report = SeparationReport(True, field, str(va), str(vb))
                break
        if report is None:
            report = SeparationReport(False)
        separations.append(SeparationPair(name_a, name_b, report))

    for note in family_notes:
        if note not in seen_notes:
            seen_notes.append(note)

    return TheoremReport(
        dtype, tuple(reports), tuple(separations), tuple(seen_notes)
    )
