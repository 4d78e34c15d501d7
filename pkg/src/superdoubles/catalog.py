"""Machine-readable catalog: algebra tables, bialgebras, doubles,
isomorphism matrices, dual-structure solution families and the
classification class lists.

Entries live in a line-oriented text format (one block per entry), ship
compiled-in as package data, and can also be loaded from a user file so
corrections never require touching code.  All numeric payloads are kept
as raw expression strings and evaluated lazily at exact rational
parameter bindings, which makes ``load -> dump -> load`` the identity.

Format
------
A file is a sequence of blocks::

    entry <kind> <name>
    grading 2|1
    param p nonzero
    constraint a*b != 0
    bracket [1,2] = X2
    dual [3,3] = i*k*Xt1
    tbracket [1,4] = -T4
    row 1, a, 0
    left Table1/C1_p (p=p)
    source Table5/B__I11 ()
    target Table5/B__A11A ()
    member Table5/B__I11 ()
    algebra Table2/BA11 ()
    bialgebra Table5/B__I11 ()
    double AppD/B__I11 ()
    negative Table2/C1_0
    dtype 2,2
    isoconstraint mu == 0
    provenance Table 4
    disputed false
    note free text
    end

``#`` starts a comment line.  Kinds: ``algebra``, ``automorphism``,
``bialgebra``, ``double``, ``isomatrix``, ``dualfamily``,
``theoremclass``.  Bracket right-hand sides are sums of
``<expr>*<basis>`` terms with basis tokens ``X<k>`` (algebra), ``Xt<k>``
(dual generators) or ``T<k>`` (double generators); a bare basis token
means coefficient one and a literal ``0`` means no terms.  Parameter
domains are conjunctions of the atoms ``any``, ``nonzero``, ``pm1``,
``gt(q)``, ``ge(q)``, ``lt(q)``, ``le(q)``, ``ne(q)``, ``absle(q)``.

Matrix semantics: ``row`` lines of an ``isomatrix`` entry give, row by
row, the coordinates of the *target* double's generators inside the
*source* double (the arrow orientation used by the homomorphism checker);
for an ``automorphism`` entry row ``i`` holds the image of the ``i``-th
generator, and for a ``dualfamily`` entry the rows express the named
target algebra's generators inside the solution's dual algebra.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

from . import expressions
from .errors import (
    ConstraintError,
    ConstraintViolation,
    ParseError,
    UnknownEntry,
)
from .linalg import Scalar, Supermatrix
from .superalgebra import LieSuperalgebra
from .bialgebra import SuperBialgebra

ParameterSample = dict  # dict[str, Scalar]

_BASE_POOL = [
    Fraction(-2),
    Fraction(-1),
    Fraction(-1, 2),
    Fraction(0),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
]
_MATRIX_POOL = [
    Fraction(1),
    Fraction(2),
    Fraction(1, 2),
    Fraction(-1),
    Fraction(3),
    Fraction(-2),
]


@dataclass(frozen=True)
class Domain:
    """Conjunction of domain atoms for one parameter."""

    atoms: tuple[str, ...]

    def contains(self, value: Scalar) -> bool:
        if not value.is_real:
            return False
        x = value.re
        for atom in self.atoms:
            name, arg = _split_atom(atom)
            if name == "any":
                continue
            if name == "nonzero" and x == 0:
                return False
            if name == "pm1" and x not in (1, -1):
                return False
            if name == "gt" and not x > arg:
                return False
            if name == "ge" and not x >= arg:
                return False
            if name == "lt" and not x < arg:
                return False
            if name == "le" and not x <= arg:
                return False
            if name == "ne" and x == arg:
                return False
            if name == "absle" and not abs(x) <= arg:
                return False
        return True

    def sample_pool(self) -> list[Fraction]:
        if any(_split_atom(a)[0] == "pm1" for a in self.atoms):
            return [Fraction(-1), Fraction(1)]
        return [q for q in _BASE_POOL if self.contains(Scalar(q))]

    def matrix_pool(self) -> list[Fraction]:
        if any(_split_atom(a)[0] == "pm1" for a in self.atoms):
            return [Fraction(-1), Fraction(1)]
        return [q for q in _MATRIX_POOL if self.contains(Scalar(q))]


def _split_atom(atom: str) -> tuple[str, Fraction | None]:
    match = re.fullmatch(r"([a-z0-9]+)(?:\(([-0-9/]+)\))?", atom)
    if not match:
        raise ParseError(f"bad domain atom {atom!r}")
    name = match.group(1)
    arg = Fraction(match.group(2)) if match.group(2) is not None else None
    return name, arg


@dataclass(frozen=True)
class ParamSpec:
    name: str
    domain: Domain


@dataclass(frozen=True)
class Ref:
    """Reference to another entry plus parameter bindings (raw strings)."""

    name: str
    bindings: tuple[tuple[str, str], ...]

    def resolve_bindings(self, sample: Mapping[str, Scalar]) -> dict[str, Scalar]:
        return {
            pname: expressions.evaluate(expr, sample)
            for pname, expr in self.bindings
        }


@dataclass(frozen=True)
class BracketLine:
    i: int
    j: int
    rhs: str  # raw right-hand side

    def terms(self) -> tuple[tuple[str, int], ...]:
        return _parse_combo(self.rhs)


@dataclass(frozen=True)
class CatalogEntry:
    kind: str
    name: str
    grading: tuple[int, int] | None = None
    params: tuple[ParamSpec, ...] = ()
    constraints: tuple[str, ...] = ()
    iso_constraints: tuple[str, ...] = ()
    brackets: tuple[BracketLine, ...] = ()
    duals: tuple[BracketLine, ...] = ()
    tbrackets: tuple[BracketLine, ...] = ()
    rows: tuple[str, ...] = ()
    left: Ref | None = None
    source: Ref | None = None
    target: Ref | None = None
    members: tuple[Ref, ...] = ()
    algebra: Ref | None = None
    bialgebra: Ref | None = None
    double: Ref | None = None
    negative: str | None = None
    dtype: tuple[int, int] | None = None
    provenance: str = ""
    disputed: bool = False
    notes: tuple[str, ...] = ()

    def param(self, name: str) -> ParamSpec:
        for spec in self.params:
            if spec.name == name:
                return spec
        raise ConstraintError(f"{self.name}: no parameter {name!r}")

    def param_names(self) -> tuple[str, ...]:
        return tuple(spec.name for spec in self.params)


class Catalog:
    """Immutable ordered collection of entries, keyed by name."""

    def __init__(self, entries: Sequence[CatalogEntry]):
        self._entries: dict[str, CatalogEntry] = {}
        for entry in entries:
            if entry.name in self._entries:
                raise ParseError(f"duplicate entry name {entry.name!r}")
            self._entries[entry.name] = entry

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, name: str) -> CatalogEntry:
        try:
            return self._entries[name]
        except KeyError:
            raise UnknownEntry(f"no catalog entry named {name!r}") from None

    def has(self, name: str) -> bool:
        return name in self._entries

    def by_kind(self, kind: str) -> list[CatalogEntry]:
        return [e for e in self._entries.values() if e.kind == kind]

    def names(self) -> list[str]:
        return list(self._entries.keys())


# ---------------------------------------------------------------------------
# Parsing and dumping
# ---------------------------------------------------------------------------

_KINDS = (
    "algebra",
    "automorphism",
    "bialgebra",
    "double",
    "isomatrix",
    "dualfamily",
    "theoremclass",
)

_BRACKET_RE = re.compile(r"\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*=\s*(.+)")
_REF_RE = re.compile(r"(\S+)\s*(?:\(([^()]*)\))?\s*$")


def _parse_ref(text: str, context: str) -> Ref:
    match = _REF_RE.fullmatch(text.strip())
    if not match:
        raise ParseError(f"{context}: bad reference {text!r}")
    bindings = []
    body = match.group(2)
    if body:
        for piece in body.split(","):
            if "=" not in piece:
                raise ParseError(f"{context}: bad binding {piece!r}")
            pname, expr = piece.split("=", 1)
            bindings.append((pname.strip(), expr.strip()))
    return Ref(match.group(1), tuple(bindings))


def _parse_bracket(text: str, context: str) -> BracketLine:
    match = _BRACKET_RE.fullmatch(text.strip())
    if not match:
        raise ParseError(f"{context}: bad bracket line {text!r}")
    line = BracketLine(int(match.group(1)), int(match.group(2)), match.group(3).strip())
    line.terms()  # validate eagerly
    return line


_TERM_RE = re.compile(r"(?:(.*?)\*)?(?:X|Xt|T)(\d+)$")


@lru_cache(maxsize=None)
def _parse_combo(rhs: str) -> tuple[tuple[str, int], ...]:
    """Split an RHS like ``-a*T3 + (1/2)*T4`` into (coeff expr, index) terms."""
    text = rhs.strip()
    if text == "0":
        return ()
    pieces: list[tuple[int, str]] = []
    depth = 0
    start = 0
    sign = 1
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and pos > start:
            prev = text[pos - 1]
            if prev in "*/^(+-" or prev.isspace() and text[:pos].rstrip()[-1:] in "*/^(+-":
                continue
            pieces.append((sign, text[start:pos].strip()))
            sign = 1 if ch == "+" else -1
            start = pos + 1
    pieces.append((sign, text[start:].strip()))
    terms: list[tuple[str, int]] = []
    for sgn, piece in pieces:
        if piece.startswith("-"):
            sgn, piece = -sgn, piece[1:].strip()
        match = _TERM_RE.fullmatch(piece)
        if not match:
            raise ParseError(f"bad term {piece!r} in combination {rhs!r}")
        coeff = match.group(1)
        if coeff is None or coeff == "":
            coeff = "1"
        if sgn < 0:
            coeff = f"-({coeff})"
        expressions.parse(coeff)
        terms.append((coeff, int(match.group(2))))
    return tuple(terms)


def loads(text: str) -> Catalog:
    entries: list[CatalogEntry] = []
    current: dict | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        where = f"line {lineno}"
        if key == "entry":
            if current is not None:
                raise ParseError(f"{where}: nested entry")
            kind, _, name = rest.partition(" ")
            if kind not in _KINDS:
                raise ParseError(f"{where}: unknown kind {kind!r}")
            if not name.strip():
                raise ParseError(f"{where}: entry needs a name")
            current = {
                "kind": kind,
                "name": name.strip(),
                "params": [],
                "constraints": [],
                "iso_constraints": [],
                "brackets": [],
                "duals": [],
                "tbrackets": [],
                "rows": [],
                "members": [],
                "notes": [],
            }
            continue
        if current is None:
            raise ParseError(f"{where}: content outside an entry block")
        if key == "end":
            entries.append(_finish_entry(current, where))
            current = None
        elif key == "grading":
            m_str, _, n_str = rest.partition("|")
            try:
                current["grading"] = (int(m_str), int(n_str))
            except ValueError:
                raise ParseError(f"{where}: bad grading {rest!r}") from None
        elif key == "param":
            pname, _, atoms = rest.partition(" ")
            atom_list = atoms.split() or ["any"]
            for atom in atom_list:
                _split_atom(atom)
            current["params"].append(ParamSpec(pname, Domain(tuple(atom_list))))
        elif key == "constraint":
            expressions.constraint_names(rest)
            current["constraints"].append(rest)
        elif key == "isoconstraint":
            expressions.constraint_names(rest)
            current["iso_constraints"].append(rest)
        elif key == "bracket":
            current["brackets"].append(_parse_bracket(rest, where))
        elif key == "dual":
            current["duals"].append(_parse_bracket(rest, where))
        elif key == "tbracket":
            current["tbrackets"].append(_parse_bracket(rest, where))
        elif key == "row":
            for cell in rest.split(","):
                expressions.parse(cell.strip())
            current["rows"].append(rest)
        elif key in ("left", "source", "target", "algebra", "bialgebra", "double"):
            current[key] = _parse_ref(rest, where)
        elif key == "member":
            current["members"].append(_parse_ref(rest, where))
        elif key == "negative":
            current["negative"] = rest
        elif key == "dtype":
            m_str, _, n_str = rest.partition(",")
            current["dtype"] = (int(m_str), int(n_str))
        elif key == "provenance":
            current["provenance"] = rest
        elif key == "disputed":
            current["disputed"] = rest.lower() == "true"
        elif key == "note":
            current["notes"].append(rest)
        else:
            raise ParseError(f"{where}: unknown field {key!r}")
    if current is not None:
        raise ParseError("unterminated entry block at end of file")
    return Catalog(entries)


def _finish_entry(data: dict, where: str) -> CatalogEntry:
    entry = CatalogEntry(
        kind=data["kind"],
        name=data["name"],
        grading=data.get("grading"),
        params=tuple(data["params"]),
        constraints=tuple(data["constraints"]),
        iso_constraints=tuple(data["iso_constraints"]),
        brackets=tuple(data["brackets"]),
        duals=tuple(data["duals"]),
        tbrackets=tuple(data["tbrackets"]),
        rows=tuple(data["rows"]),
        left=data.get("left"),
        source=data.get("source"),
        target=data.get("target"),
        members=tuple(data["members"]),
        algebra=data.get("algebra"),
        bialgebra=data.get("bialgebra"),
        double=data.get("double"),
        negative=data.get("negative"),
        dtype=data.get("dtype"),
        provenance=data.get("provenance", ""),
        disputed=data.get("disputed", False),
        notes=tuple(data["notes"]),
    )
    declared = set(entry.param_names())
    used: set[str] = set()
    for line in entry.brackets + entry.duals + entry.tbrackets:
        for coeff, _ in line.terms():
            used |= expressions.free_names(coeff)
    for row in entry.rows:
        for cell in row.split(","):
            used |= expressions.free_names(cell.strip())
    for text in entry.constraints + entry.iso_constraints:
        used |= expressions.constraint_names(text)
    undeclared = used - declared
    if undeclared:
        raise ConstraintError(
            f"{where}: entry {entry.name} uses undeclared parameters "
            f"{sorted(undeclared)}"
        )
    return entry


def dump(catalog: Catalog) -> str:
    out: list[str] = []
    for e in catalog:
        out.append(f"entry {e.kind} {e.name}")
        if e.grading:
            out.append(f"grading {e.grading[0]}|{e.grading[1]}")
        if e.dtype:
            out.append(f"dtype {e.dtype[0]},{e.dtype[1]}")
        for spec in e.params:
            out.append(f"param {spec.name} {' '.join(spec.domain.atoms)}")
        for text in e.constraints:
            out.append(f"constraint {text}")
        for text in e.iso_constraints:
            out.append(f"isoconstraint {text}")
        for label, ref in (
            ("left", e.left),
            ("algebra", e.algebra),
            ("bialgebra", e.bialgebra),
            ("double", e.double),
            ("source", e.source),
            ("target", e.target),
        ):
            if ref is not None:
                body = ", ".join(f"{k}={v}" for k, v in ref.bindings)
                out.append(f"{label} {ref.name} ({body})")
        for line in e.brackets:
            out.append(f"bracket [{line.i},{line.j}] = {line.rhs}")
        for line in e.duals:
            out.append(f"dual [{line.i},{line.j}] = {line.rhs}")
        for line in e.tbrackets:
            out.append(f"tbracket [{line.i},{line.j}] = {line.rhs}")
        for row in e.rows:
            out.append(f"row {row}")
        for ref in e.members:
            body = ", ".join(f"{k}={v}" for k, v in ref.bindings)
            out.append(f"member {ref.name} ({body})")
        if e.negative:
            out.append(f"negative {e.negative}")
        if e.provenance:
            out.append(f"provenance {e.provenance}")
        if e.disputed:
            out.append("disputed true")
        for text in e.notes:
            out.append(f"note {text}")
        out.append("end")
        out.append("")
    return "\n".join(out)


def load(path) -> Catalog:
    with open(path, "r", encoding="utf-8") as handle:
        return loads(handle.read())


_BUILTIN: Catalog | None = None


def builtin() -> Catalog:
    """The compiled-in catalog (parsed once, cached)."""
    global _BUILTIN
    if _BUILTIN is None:
        text = (
            resources.files("superdoubles")
            .joinpath("data/builtin_catalog.txt")
            .read_text(encoding="utf-8")
        )
        _BUILTIN = loads(text)
    return _BUILTIN


# ---------------------------------------------------------------------------
# Instantiation
# ---------------------------------------------------------------------------


def check_sample(
    entry: CatalogEntry, sample: Mapping[str, Scalar], partial: bool = False
) -> None:
    """Raise ConstraintViolation unless the sample fits the entry.

    With ``partial=True`` only the parameters present in the sample are
    checked, and only the constraints all of whose names are bound.
    """
    for spec in entry.params:
        if spec.name not in sample:
            if partial:
                continue
            raise ConstraintError(
                f"{entry.name}: parameter {spec.name!r} is unbound"
            )
        if not spec.domain.contains(Scalar.of(sample[spec.name])):
            raise ConstraintViolation(
                f"{entry.name}: {spec.name}={sample[spec.name]} outside domain "
                f"{' '.join(spec.domain.atoms)}"
            )
    for text in entry.constraints:
        if partial and not expressions.constraint_names(text) <= set(sample):
            continue
        if not expressions.check_constraint(text, sample):
            raise ConstraintViolation(f"{entry.name}: constraint {text!r} fails")


def _brackets_to_terms(
    lines: Iterable[BracketLine], sample: Mapping[str, Scalar]
) -> dict[tuple[int, int], dict[int, Scalar]]:
    out: dict[tuple[int, int], dict[int, Scalar]] = {}
    for line in lines:
        terms = out.setdefault((line.i, line.j), {})
        for coeff, k in line.terms():
            value = expressions.evaluate(coeff, sample)
            terms[k] = terms.get(k, Scalar()) + value
    return out


def instantiate_algebra(
    entry: CatalogEntry,
    sample: Mapping[str, Scalar],
    catalog: Catalog | None = None,
    enforce: bool = True,
) -> LieSuperalgebra:
    if entry.kind != "algebra":
        raise UnknownEntry(f"{entry.name} is not an algebra entry")
    if enforce:
        check_sample(entry, sample)
    m, n = entry.grading
    return LieSuperalgebra.from_brackets(
        entry.name, m, n, _brackets_to_terms(entry.brackets, sample)
    )


def _resolve_algebra(
    ref: Ref, sample: Mapping[str, Scalar], catalog: Catalog
) -> LieSuperalgebra:
    target = catalog.get(ref.name)
    inner = ref.resolve_bindings(sample)
    # Referenced templates may be instantiated outside their own table-row
    # domain (e.g. the generic one-parameter family at the decomposable
    # point), so domain enforcement stays with the referring entry.
    return instantiate_algebra(target, inner, catalog, enforce=False)


def instantiate_bialgebra(
    entry: CatalogEntry, sample: Mapping[str, Scalar], catalog: Catalog
) -> SuperBialgebra:
    if entry.kind != "bialgebra":
        raise UnknownEntry(f"{entry.name} is not a bialgebra entry")
    check_sample(entry, sample)
    left = _resolve_algebra(entry.left, sample, catalog)
    m, n = left.graded_dim
    dual = LieSuperalgebra.from_brackets(
        f"dual({entry.name})", m, n, _brackets_to_terms(entry.duals, sample)
    )
    return SuperBialgebra(entry.name, left, dual)


def instantiate_double_listing(
    entry: CatalogEntry, sample: Mapping[str, Scalar]
) -> LieSuperalgebra:
    """The recorded double bracket listing as a superalgebra tensor."""
    if entry.kind != "double":
        raise UnknownEntry(f"{entry.name} is not a double entry")
    check_sample(entry, sample)
    m, n = entry.grading
    return LieSuperalgebra.from_brackets(
        entry.name, m, n, _brackets_to_terms(entry.tbrackets, sample)
    )


def instantiate_matrix(
    entry: CatalogEntry, sample: Mapping[str, Scalar], enforce: bool = True
) -> Supermatrix:
    if not entry.rows:
        raise UnknownEntry(f"{entry.name} carries no matrix")
    if enforce:
        check_sample(entry, sample)
    m, n = entry.grading
    rows = []
    for row in entry.rows:
        rows.append(
            [expressions.evaluate(cell.strip(), sample) for cell in row.split(",")]
        )
    if len(rows) != m + n or any(len(r) != m + n for r in rows):
        raise ParseError(f"{entry.name}: matrix shape does not match grading")
    return Supermatrix.from_rows(m, n, rows)


def instantiate(entry: CatalogEntry, sample: Mapping[str, Scalar], catalog: Catalog):
    """Kind-dispatching instantiation (the generic entry point)."""
    if entry.kind == "algebra":
        return instantiate_algebra(entry, sample, catalog)
    if entry.kind == "bialgebra":
        return instantiate_bialgebra(entry, sample, catalog)
    if entry.kind == "double":
        return instantiate_double_listing(entry, sample)
    if entry.kind in ("automorphism", "isomatrix"):
        return instantiate_matrix(entry, sample)
    if entry.kind == "dualfamily":
        return dualfamily_bialgebra(entry, sample, catalog)
    raise UnknownEntry(f"cannot instantiate entries of kind {entry.kind!r}")


def dualfamily_bialgebra(
    entry: CatalogEntry, sample: Mapping[str, Scalar], catalog: Catalog
) -> SuperBialgebra:
    """The (algebra, solution-tensor) pair of a dual-search family.

    Only the family parameters (those the bracket data mentions) need to
    be bound; the reduction-matrix entries are sampled separately.
    """
    if entry.kind != "dualfamily":
        raise UnknownEntry(f"{entry.name} is not a dualfamily entry")
    check_sample(entry, sample, partial=True)
    left = _resolve_algebra(entry.algebra, sample, catalog)
    m, n = left.graded_dim
    dual = LieSuperalgebra.from_brackets(
        f"dual({entry.name})", m, n, _brackets_to_terms(entry.duals, sample)
    )
    return SuperBialgebra(entry.name, left, dual)


# ---------------------------------------------------------------------------
# Deterministic parameter samples
# ---------------------------------------------------------------------------


def default_samples(
    entry: CatalogEntry, overrides: Mapping[str, Scalar] | None = None
) -> list[ParameterSample]:
    """Deterministic sample set for an entry's parameters.

    Sign parameters contribute both signs, continuous parameters a sorted
    sweep of small rationals filtered by their domain; entry constraints
    prune the cartesian product.  Overrides pin individual parameters.
    """
    if entry.kind in ("isomatrix", "automorphism"):
        return matrix_samples(entry, overrides)
    overrides = overrides or {}
    pools: list[tuple[str, list[Scalar]]] = []
    for spec in entry.params:
        if spec.name in overrides:
            value = Scalar.of(overrides[spec.name])
            if not spec.domain.contains(value):
                raise ConstraintViolation(
                    f"{entry.name}: {spec.name}={value} outside domain"
                )
            pools.append((spec.name, [value]))
        else:
            pool = [Scalar(q) for q in spec.domain.sample_pool()]
            if not pool:
                raise ConstraintViolation(
                    f"{entry.name}: empty sample pool for {spec.name}"
                )
            pools.append((spec.name, pool))
    names = [name for name, _ in pools]
    samples = []
    for combo in itertools.product(*(values for _, values in pools)):
        sample = dict(zip(names, combo))
        if all(
            expressions.check_constraint(text, sample) for text in entry.constraints
        ):
            samples.append(sample)
    return samples


def matrix_samples(
    entry: CatalogEntry,
    overrides: Mapping[str, Scalar] | None = None,
    count: int = 3,
) -> list[ParameterSample]:
    """Samples for matrix entries: sign combinations crossed with a few
    deterministic assignments of the free entries, repaired until the
    nonvanishing constraints hold."""
    overrides = overrides or {}
    for spec in entry.params:
        if spec.name in overrides and not spec.domain.contains(
            Scalar.of(overrides[spec.name])
        ):
            raise ConstraintViolation(
                f"{entry.name}: override {spec.name}={overrides[spec.name]} "
                f"outside domain"
            )
    sign_params = [
        spec
        for spec in entry.params
        if any(_split_atom(a)[0] == "pm1" for a in spec.domain.atoms)
        and spec.name not in overrides
    ]
    free_params = [
        spec
        for spec in entry.params
        if spec not in sign_params and spec.name not in overrides
    ]
    sign_choices = list(
        itertools.product(
            *([Scalar(Fraction(-1)), Scalar(Fraction(1))] for _ in sign_params)
        )
    ) or [()]
    samples: list[ParameterSample] = []
    for signs in sign_choices:
        base = {spec.name: value for spec, value in zip(sign_params, signs)}
        base.update({k: Scalar.of(v) for k, v in overrides.items()})
        for trial in range(count):
            indices = {
                spec.name: (trial + idx) % max(len(spec.domain.matrix_pool()), 1)
                for idx, spec in enumerate(free_params)
            }
            for _ in range(64):
                sample = dict(base)
                ok = True
                for spec in free_params:
                    pool = spec.domain.matrix_pool()
                    if not pool:
                        ok = False
                        break
                    sample[spec.name] = Scalar(pool[indices[spec.name]])
                if not ok:
                    break
                failed = next(
                    (
                        text
                        for text in entry.constraints
                        if not expressions.check_constraint(text, sample)
                    ),
                    None,
                )
                if failed is None:
                    if sample not in samples:
                        samples.append(sample)
                    break
                bumped = False
                for spec in free_params:
                    if spec.name in expressions.constraint_names(failed):
                        pool_len = len(spec.domain.matrix_pool())
                        indices[spec.name] = (indices[spec.name] + 1) % pool_len
                        bumped = True
                        break
                if not bumped:
                    break
    return samples


def parse_sample(pairs: Iterable[str]) -> ParameterSample:
    """Parse CLI-style ``name=exact-rational`` bindings."""
    sample: ParameterSample = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConstraintViolation(f"bad parameter binding {pair!r}")
        name, text = pair.split("=", 1)
        sample[name.strip()] = expressions.evaluate(text.strip(), {})
    return sample
