"""Class bases, IHX relation rows, dimensions, and certificates.

The quotient space is presented on canonical generator classes.  An IHX
row is produced by regrouping the four darts around a non-loop edge; all
three regroupings keep every vertex label, every edge label, and every
edge direction, and enter the relation with coefficient +1 (see the
module test suite for the invariance properties pinning this down).
Terms that are disconnected, carry a tadpole under policy Exclude, or lie
in a Zero class are dropped as 0 and recorded in the row provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import LoopEdge, ResourceLimit, WrongSize
from .exactla import (
    SparseIntMatrix,
    default_primes,
    left_nullspace,
    modular_rank,
    rank,
    solve_combination,
)
from .errors import NoSolution
from .multigraph import (
    DartGraph,
    Isomorphism,
    TadpolePolicy,
    automorphisms,
    canonical_form,
    enumerate_trivalent,
)
from .orientation import (
    ClassStatus,
    Convention,
    GraphClass,
    OrientedLabelling,
    classify,
    perm_sign,
    reference_labelling,
)


class ClassTable:
    """Cache of classify() results keyed by canonical code and convention."""

    def __init__(self, convention: Convention):
        self.convention = convention
        self._cache: dict[tuple[int, ...], GraphClass] = {}

    def get(self, canon: DartGraph) -> GraphClass:
        cls = self._cache.get(canon.partner)
        if cls is None:
            cls = classify(canon, self.convention)
            self._cache[canon.partner] = cls
        return cls


@dataclass(frozen=True)
class Expressed:
    """Image of a labelled graph in the class space: 0 or ±(generator)."""

    coefficient: int
    cls: GraphClass | None
    zero_reason: str | None = None

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0


def transported_sign(
    canon: DartGraph,
    iso: Isomorphism,
    labelling: OrientedLabelling,
    source: DartGraph,
    convention: Convention,
) -> int:
    """Sign relating (source, labelling) pushed through iso to the canonical
    reference labelling of canon."""
    dp = iso.dart_perm
    nv = canon.num_vertices
    sigma_v = [0] * nv
    for v in range(nv):
        sigma_v[iso.vertex_perm[v]] = labelling.vertex_labels[v] - 1
    sigma_e = [0] * canon.num_edges
    reversals = 0
    for i, (a, b) in enumerate(source.edges):
        j = canon.edge_of_dart(dp[a])
        sigma_e[j] = labelling.edge_labels[i] - 1
        t, h = labelling.directions[i]
        if (dp[t], dp[h]) != canon.edges[j]:
            reversals += 1
    if convention is Convention.EVEN:
        return perm_sign(sigma_e)
    return (-1) ** reversals * perm_sign(sigma_v)


def signed_class(
    g: DartGraph,
    labelling: OrientedLabelling,
    convention: Convention,
    policy: TadpolePolicy,
    table: ClassTable,
) -> Expressed:
    """Express a labelled graph as 0 or ±1 times a canonical generator."""
    if not g.connected:
        return Expressed(0, None, "disconnected")
    if policy is TadpolePolicy.EXCLUDE and g.has_loop:
        return Expressed(0, None, "tadpole")
    canon, iso = canonical_form(g)
    cls = table.get(canon)
    if cls.status is ClassStatus.ZERO:
        return Expressed(0, cls, "zero-class")
    return Expressed(transported_sign(canon, iso, labelling, g, convention), cls)


def _conjugate_term(
    g: DartGraph, labelling: OrientedLabelling, swap: tuple[int, int]
) -> tuple[DartGraph, OrientedLabelling]:
    """Regroup by the dart transposition `swap`, transporting labels and
    directions along the induced edge correspondence."""
    a, b = swap

    def tau(d: int) -> int:
        if d == a:
            return b
        if d == b:
            return a
        return d

    partner = [0] * g.num_darts
    for d in range(g.num_darts):
        partner[tau(d)] = tau(g.partner[d])
    from .multigraph import _connected  # local: validation already done upstream

    term = DartGraph(g.num_vertices, partner, _connected(g.num_vertices, partner))
    edge_labels = [0] * term.num_edges
    directions: list[tuple[int, int]] = [(0, 0)] * term.num_edges
    for i, (x, y) in enumerate(g.edges):
        j = term.edge_of_dart(tau(x))
        edge_labels[j] = labelling.edge_labels[i]
        t, h = labelling.directions[i]
        directions[j] = (tau(t), tau(h))
    lab = OrientedLabelling(
        labelling.vertex_labels, tuple(edge_labels), tuple(directions)
    )
    return term, lab


def ihx_expand(
    g: DartGraph, labelling: OrientedLabelling, edge_index: int
) -> list[tuple[DartGraph, OrientedLabelling, str]]:
    """The three regroupings around a non-loop edge, tagged I/H/X.

    With labels and directions transported identically, each term enters
    the relation row with coefficient +1.
    """
    a, b = g.edges[edge_index]
    u, v = a // 3, b // 3
    if u == v:
        raise LoopEdge(f"edge {edge_index} is a self-loop")
    du = sorted(d for d in g.darts_of(u) if d != a)
    dv = sorted(d for d in g.darts_of(v) if d != b)
    (_, q), (r, s) = (du[0], du[1]), (dv[0], dv[1])
    ident = (0, 0)  # no-op swap
    out = []
    for tag, swap in (("I", ident), ("H", (q, r)), ("X", (q, s))):
        if swap == ident:
            out.append((g, labelling, tag))
        else:
            term, lab = _conjugate_term(g, labelling, swap)
            out.append((term, lab, tag))
    return out


@dataclass
class ClassBasis:
    """All classes at (k, convention, policy); generators carry column ids."""

    k: int
    convention: Convention
    policy: TadpolePolicy
    classes: list[GraphClass]
    table: ClassTable

    @property
    def generators(self) -> list[GraphClass]:
        return [c for c in self.classes if c.status is ClassStatus.GENERATOR]

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def column_of(self, cls: GraphClass) -> int:
        return self._columns[cls.rep.partner]

    def __post_init__(self):
        self._columns = {}
        col = 0
        for c in self.classes:
            if c.status is ClassStatus.GENERATOR:
                self._columns[c.rep.partner] = col
                col += 1


def class_basis(
    k: int,
    convention: Convention,
    policy: TadpolePolicy = TadpolePolicy.EXCLUDE,
    max_classes: int | None = None,
) -> ClassBasis:
    table = ClassTable(convention)
    classes = []
    for i, g in enumerate(enumerate_trivalent(k, policy, max_classes=max_classes)):
        classes.append(table.get(g).with_id(i))
    return ClassBasis(k, convention, policy, classes, table)


@dataclass
class RelationRow:
    """Sparse integer row over generator columns, with provenance."""

    entries: tuple[tuple[int, int], ...]
    source_class: int
    edge: int
    term_notes: tuple[str, ...]


@dataclass
class RelationData:
    matrix: SparseIntMatrix
    rows: list[RelationRow]
    zero_rows: list[RelationRow]
    duplicates: int


def expand_row(
    basis: ClassBasis, g: DartGraph, labelling: OrientedLabelling, edge_index: int
) -> tuple[dict[int, int], tuple[str, ...]]:
    """One IHX row over generator columns, plus per-term notes."""
    acc: dict[int, int] = {}
    notes = []
    for term, lab, tag in ihx_expand(g, labelling, edge_index):
        res = signed_class(term, lab, basis.convention, basis.policy, basis.table)
        if res.is_zero:
            notes.append(f"{tag}:0({res.zero_reason})")
            continue
        col = basis.column_of(res.cls)
        notes.append(f"{tag}:{'+' if res.coefficient > 0 else '-'}g{col}")
        acc[col] = acc.get(col, 0) + res.coefficient
    return {c: v for c, v in acc.items() if v != 0}, tuple(notes)


def relation_matrix(basis: ClassBasis) -> RelationData:
    """Deduplicated IHX rows from every non-loop edge of every generator."""
    seen: set[tuple[tuple[int, int], ...]] = set()
    rows: list[RelationRow] = []
    zero_rows: list[RelationRow] = []
    duplicates = 0
    for src_idx, cls in enumerate(basis.classes):
        if cls.status is not ClassStatus.GENERATOR:
            continue
        rep = cls.rep
        labelling = cls.labelling
        for e in range(rep.num_edges):
            if rep.is_loop(e):
                continue
            acc, notes = expand_row(basis, rep, labelling, e)
            row = RelationRow(
                tuple(sorted(acc.items())), cls.class_id, e, notes
            )
            if not acc:
                zero_rows.append(row)
                continue
            first = row.entries[0][1]
            if first < 0:
                row = RelationRow(
                    tuple((c, -v) for c, v in row.entries),
                    cls.class_id, e, notes,
                )
            if row.entries in seen:
                duplicates += 1
                continue
            seen.add(row.entries)
            rows.append(row)
    matrix = SparseIntMatrix(
        len(rows), basis.num_generators, [list(r.entries) for r in rows]
    )
    return RelationData(matrix, rows, zero_rows, duplicates)


@dataclass
class DimensionReport:
    k: int
    convention: Convention
    policy: TadpolePolicy
    num_classes: int
    num_rows: int
    rank: int
    dimension: int
    basis: ClassBasis
    relations: RelationData
    oracle_checked: bool = False

    def to_json(self) -> dict:
        classes = []
        for c in self.basis.classes:
            classes.append(
                {
                    "id": c.class_id,
                    "code": " ".join(str(x) for x in c.rep.partner),
                    "status": c.status.value,
                }
            )
        return {
            "k": self.k,
            "convention": self.convention.value,
            "tadpoles": self.policy.value,
            "num_classes": self.num_classes,
            "num_rows": self.num_rows,
            "rank": self.rank,
            "dimension": self.dimension,
            "classes": classes,
            "certificates": [],
        }


def dimension(
    k: int,
    convention: Convention,
    policy: TadpolePolicy = TadpolePolicy.EXCLUDE,
    modular_check: bool = True,
    max_classes: int | None = None,
) -> DimensionReport:
    """Exact dimension of the quotient at (k, convention, policy)."""
    basis = class_basis(k, convention, policy, max_classes=max_classes)
    rel = relation_matrix(basis)
    r = rank(rel.matrix)
    if modular_check and rel.matrix.num_rows:
        rm = modular_rank(rel.matrix, default_primes(rel.matrix))
        if rm != r:
            raise AssertionError(
                "modular rank disagrees with fraction-free rank: "
                f"{rm} != {r}; matrix dump:\n{rel.matrix.to_matrixmarket()}"
            )
    n = basis.num_generators
    return DimensionReport(
        k, convention, policy, n, rel.matrix.num_rows, r, n - r, basis, rel
    )


def express(
    g: DartGraph,
    basis: ClassBasis,
    labelling: OrientedLabelling | None = None,
) -> dict[int, Fraction]:
    """Sparse vector over generator columns: ±1 on one column, or empty."""
    if g.num_vertices != 2 * basis.k:
        raise WrongSize(
            f"graph has {g.num_vertices} vertices, basis expects {2 * basis.k}"
        )
    if labelling is None:
        labelling = reference_labelling(g)
    res = signed_class(g, labelling, basis.convention, basis.policy, basis.table)
    if res.is_zero:
        return {}
    return {basis.column_of(res.cls): Fraction(res.coefficient)}


@dataclass
class ZeroCertificate:
    """Replayable evidence that a class or labelled graph vanishes."""

    kind: str  # "sign-witness" | "excluded" | "relation-combination"
    class_id: int | None = None
    witness_dart_perm: tuple[int, ...] | None = None
    witness_sign: int | None = None
    combination: list[tuple[int, Fraction]] = field(default_factory=list)
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "type": "zero",
            "kind": self.kind,
            "class_id": self.class_id,
            "witness_dart_perm": list(self.witness_dart_perm)
            if self.witness_dart_perm
            else None,
            "reason": self.reason,
            "combination": [
                [rid, c.numerator, c.denominator] for rid, c in self.combination
            ],
        }


@dataclass
class NonzeroCertificate:
    """Functional over generator columns annihilating every relation row."""

    class_id: int
    functional: list[tuple[int, Fraction]]

    def to_json(self) -> dict:
        return {
            "type": "nonzero",
            "class_id": self.class_id,
            "functional": [
                [cid, f.numerator, f.denominator] for cid, f in self.functional
            ],
        }


def _replay_zero(
    cert: ZeroCertificate, report: DimensionReport
) -> bool:
    if cert.kind == "excluded":
        return True
    if cert.kind == "sign-witness":
        from .orientation import total_sign

        cls = report.basis.classes[cert.class_id]
        iso = Isomorphism.from_dart_map(cert.witness_dart_perm)
        return (
            total_sign(
                report.convention, cls.rep, cls.labelling.directions, iso
            )
            == -1
        )
    if cert.kind == "relation-combination":
        target_col = None
        for c in report.basis.classes:
            if c.class_id == cert.class_id:
                target_col = report.basis.column_of(c)
        acc: dict[int, Fraction] = {}
        for rid, coeff in cert.combination:
            for col, v in report.relations.matrix.rows[rid]:
                acc[col] = acc.get(col, Fraction(0)) + coeff * v
        acc = {c: v for c, v in acc.items() if v}
        return acc == {target_col: Fraction(1)}
    return False


def _replay_nonzero(cert: NonzeroCertificate, report: DimensionReport) -> bool:
    func: dict[int, Fraction] = {}
    for cid, v in cert.functional:
        col = report.basis.column_of(report.basis.classes[cid])
        func[col] = v
    target_col = report.basis.column_of(report.basis.classes[cert.class_id])
    if not func.get(target_col):
        return False
    for row in report.relations.matrix.rows:
        if sum((func.get(c, Fraction(0)) * v for c, v in row), Fraction(0)):
            return False
    return True


def certify(
    target: int | DartGraph | tuple[DartGraph, OrientedLabelling],
    report: DimensionReport,
) -> ZeroCertificate | NonzeroCertificate:
    """Zero or nonzero certificate for a class id or labelled graph,
    replay-checked before return."""
    basis = report.basis
    if isinstance(target, tuple):
        g, labelling = target
    elif isinstance(target, DartGraph):
        g, labelling = target, reference_labelling(target)
    else:
        cls = basis.classes[target]
        if cls.status is ClassStatus.ZERO:
            cert: ZeroCertificate | NonzeroCertificate = ZeroCertificate(
                kind="sign-witness",
                class_id=cls.class_id,
                witness_dart_perm=cls.witness.dart_perm,
                witness_sign=-1,
            )
            assert _replay_zero(cert, report)
            return cert
        return _certify_generator(cls, report)
    if g.num_vertices != 2 * basis.k:
        raise WrongSize("target graph size does not match the basis")
    res = signed_class(g, labelling, basis.convention, basis.policy, basis.table)
    if res.is_zero:
        if res.zero_reason == "zero-class":
            cert = ZeroCertificate(
                kind="sign-witness",
                class_id=res.cls.class_id
                if res.cls.class_id is not None
                else _find_class_id(basis, res.cls),
                witness_dart_perm=res.cls.witness.dart_perm,
                witness_sign=-1,
            )
        else:
            cert = ZeroCertificate(kind="excluded", reason=res.zero_reason)
        assert _replay_zero(cert, report)
        return cert
    return _certify_generator(res.cls, report)


def _find_class_id(basis: ClassBasis, cls: GraphClass) -> int:
    for c in basis.classes:
        if c.rep.partner == cls.rep.partner:
            return c.class_id
    raise KeyError("class not in basis")


def _certify_generator(
    cls: GraphClass, report: DimensionReport
) -> ZeroCertificate | NonzeroCertificate:
    basis = report.basis
    class_id = cls.class_id if cls.class_id is not None else _find_class_id(basis, cls)
    col = basis.column_of(basis.classes[class_id])
    unit = [0] * basis.num_generators
    unit[col] = 1
    try:
        coeffs = solve_combination(report.relations.matrix, unit)
        cert: ZeroCertificate | NonzeroCertificate = ZeroCertificate(
            kind="relation-combination",
            class_id=class_id,
            combination=[(i, c) for i, c in enumerate(coeffs) if c],
        )
        assert _replay_zero(cert, report)
        return cert
    except NoSolution:
        pass
    gen_ids = [c.class_id for c in basis.classes if c.status is ClassStatus.GENERATOR]
    for vec in left_nullspace(report.relations.matrix.transpose()):
        if vec[col]:
            cert = NonzeroCertificate(
                class_id=class_id,
                functional=[
                    (gen_ids[i], v) for i, v in enumerate(vec) if v
                ],
            )
            assert _replay_nonzero(cert, report)
            return cert
    raise AssertionError("linear algebra inconsistency: neither certificate exists")
