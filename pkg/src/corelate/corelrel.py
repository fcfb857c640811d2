"""Corelations and relations with decidable canonical forms.

A corelation n -> m is an equivalence class of cospans; its canonical
representative is the jointly-epi cospan obtained by factorising the
copairing and renaming the apex.  Dually a relation is represented by the
jointly-mono span whose pairing is in canonical echelon form.  Equality is
decided on canonical forms, not by searching the witness closure; the
closure is kept as an independent test oracle in the verification module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAbelian, NotInA, TypeMismatch
from .finfn import Partition
from .spancospan import (
    Ambient,
    Cospan,
    MatrixAmbient,
    Span,
    cospan_compose,
    cospan_identity,
    cospan_tensor,
    embed_fwd_cospan,
    span_compose,
    span_identity,
    span_tensor,
)


@dataclass(frozen=True)
class Corelation:
    """Canonical jointly-epi cospan; build via :func:`gamma` or :func:`pi`."""

    ambient: Ambient
    cospan: Cospan

    @property
    def dom(self) -> int:
        return self.ambient.dom(self.cospan.left)

    @property
    def cod(self) -> int:
        return self.ambient.dom(self.cospan.right)

    @property
    def apex(self) -> int:
        return self.ambient.cod(self.cospan.left)


@dataclass(frozen=True)
class Relation:
    """Canonical jointly-mono span; build via :func:`rel_canonical`."""

    ambient: Ambient
    span: Span

    @property
    def dom(self) -> int:
        return self.ambient.cod(self.span.left)

    @property
    def cod(self) -> int:
        return self.ambient.cod(self.span.right)

    @property
    def apex(self) -> int:
        return self.ambient.dom(self.span.left)


# ---------------------------------------------------------------------------
# corelations


def gamma(c: Cospan, amb: Ambient) -> Corelation:
    """Quotient a cospan to the corelation it represents.

    Factorises the copairing, keeps the epi part, and canonicalises the apex.
    Every corelation arises this way.
    """
    n, m = amb.dom(c.left), amb.dom(c.right)
    e, _ = amb.factorize(amb.copair(c.left, c.right))
    left, right = amb.split_copair(e, n, m)
    return Corelation(amb, amb.canonical_cospan(Cospan(left, right)))


def pi(s: Span, amb: Ambient) -> Corelation:
    """Pushout a span with legs in the distinguished subcategory, then quotient."""
    for leg in (s.left, s.right):
        if not amb.in_a(leg):
            raise NotInA(f"span leg fails the {amb.a_name} membership test")
    q1, q2 = amb.pushout(s.left, s.right)
    return gamma(Cospan(q1, q2), amb)


def corel_identity(n: int, amb: Ambient) -> Corelation:
    return gamma(cospan_identity(n, amb), amb)


def corel_symmetry(n: int, m: int, amb: Ambient) -> Corelation:
    return gamma(embed_fwd_cospan(amb.symmetry(n, m), amb), amb)


def _require_same_ambient(a, b) -> None:
    if a.ambient != b.ambient:
        raise TypeMismatch(f"ambients differ: {a.ambient} vs {b.ambient}")


def corel_compose(a: Corelation, b: Corelation) -> Corelation:
    _require_same_ambient(a, b)
    if a.cod != b.dom:
        raise TypeMismatch(f"feet disagree: {a.cod} vs {b.dom}")
    return gamma(cospan_compose(a.cospan, b.cospan, a.ambient), a.ambient)


def corel_tensor(a: Corelation, b: Corelation) -> Corelation:
    _require_same_ambient(a, b)
    return gamma(cospan_tensor(a.cospan, b.cospan, a.ambient), a.ambient)


def corel_equal(a: Corelation, b: Corelation) -> bool:
    _require_same_ambient(a, b)
    if (a.dom, a.cod) != (b.dom, b.cod):
        raise TypeMismatch("feet differ")
    return a.cospan == b.cospan


def corel_from_morphism(f, amb: Ambient) -> Corelation:
    """Corelation named by a morphism of the ambient (graph-style embedding)."""
    return gamma(embed_fwd_cospan(f, amb), amb)


# ---------------------------------------------------------------------------
# relations (matrix ambients over a field)


def _require_products(amb: Ambient) -> MatrixAmbient:
    if not isinstance(amb, MatrixAmbient) or not amb.ring.is_field:
        raise NotAbelian(f"relations need a matrix ambient over a field, got {amb}")
    return amb


def rel_canonical(s: Span, amb: Ambient) -> Relation:
    """Keep the mono part of the pairing; canonicalise the apex basis."""
    amb = _require_products(amb)
    n, m = amb.cod(s.left), amb.cod(s.right)
    _, mono = amb.factorize(amb.pair(s.left, s.right))
    left, right = amb.split_pair(mono, n, m)
    return Relation(amb, amb.canonical_span(Span(left, right)))


def rel_identity(n: int, amb: Ambient) -> Relation:
    return rel_canonical(span_identity(n, amb), amb)


def rel_symmetry(n: int, m: int, amb: Ambient) -> Relation:
    return rel_canonical(Span(amb.identity(n + m), amb.symmetry(n, m)), amb)


def rel_compose(a: Relation, b: Relation) -> Relation:
    _require_same_ambient(a, b)
    if a.cod != b.dom:
        raise TypeMismatch(f"feet disagree: {a.cod} vs {b.dom}")
    return rel_canonical(span_compose(a.span, b.span, a.ambient), a.ambient)


def rel_tensor(a: Relation, b: Relation) -> Relation:
    _require_same_ambient(a, b)
    return rel_canonical(span_tensor(a.span, b.span, a.ambient), a.ambient)


def rel_equal(a: Relation, b: Relation) -> bool:
    _require_same_ambient(a, b)
    if (a.dom, a.cod) != (b.dom, b.cod):
        raise TypeMismatch("feet differ")
    return a.span == b.span


def rel_from_morphism(f, amb: Ambient) -> Relation:
    """The graph of a linear map as a relation."""
    amb = _require_products(amb)
    return rel_canonical(Span(amb.identity(amb.dom(f)), f), amb)


# ---------------------------------------------------------------------------
# the abelian isomorphism between relations and corelations


def rel_to_corel(r: Relation) -> Corelation:
    """Jointly-epi part of the pushout cospan of the underlying span."""
    amb = _require_products(r.ambient)
    q1, q2 = amb.pushout(r.span.left, r.span.right)
    return gamma(Cospan(q1, q2), amb)


def corel_to_rel(c: Corelation) -> Relation:
    """Jointly-mono part of the pullback span of the underlying cospan."""
    amb = _require_products(c.ambient)
    p1, p2 = amb.pullback(c.cospan.left, c.cospan.right)
    return rel_canonical(Span(p1, p2), amb)


def rel_corel_iso(x):
    """Swap between the two canonical presentations over an abelian ambient."""
    if isinstance(x, Relation):
        return rel_to_corel(x)
    if isinstance(x, Corelation):
        return corel_to_rel(x)
    raise TypeError(f"expected a Relation or Corelation, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# partitions and partial partitions as instance semantics


@dataclass(frozen=True)
class PartialPartition:
    """Disjoint nonempty sorted blocks covering a subset of the ground set."""

    ground: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for block in self.blocks:
            if not block or list(block) != sorted(block):
                raise ValueError(f"block {block} not sorted and nonempty")
            if seen & set(block):
                raise ValueError("blocks overlap")
            seen |= set(block)
        if seen - set(range(self.ground)):
            raise ValueError("block elements outside the ground set")
        if [b[0] for b in self.blocks] != sorted(b[0] for b in self.blocks):
            raise ValueError("blocks not ordered by minimum")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(e for b in self.blocks for e in b)


def er_from_corelation(c: Corelation) -> Partition:
    """Read off the apex fibers of a total-function corelation."""
    if c.ambient.name != "f":
        raise TypeMismatch(f"expected the total-function ambient, got {c.ambient}")
    n, m = c.dom, c.cod
    fibers: dict[int, list[int]] = {}
    for i, v in enumerate(c.cospan.left.table):
        fibers.setdefault(v, []).append(i)
    for j, v in enumerate(c.cospan.right.table):
        fibers.setdefault(v, []).append(n + j)
    blocks = sorted((tuple(b) for b in fibers.values()), key=lambda b: b[0])
    return Partition(n + m, tuple(blocks))


def corelation_from_er(p: Partition, n: int, m: int, amb: Ambient) -> Corelation:
    """Cospan with one apex point per block; inverse of er_from_corelation."""
    if p.ground != n + m:
        raise TypeMismatch(f"partition ground {p.ground} != {n}+{m}")
    index: dict[int, int] = {}
    for k, block in enumerate(p.blocks):
        for e in block:
            index[e] = k
    apex = len(p.blocks)
    from .finfn import FinMap

    left = FinMap(n, apex, tuple(index[i] for i in range(n)))
    right = FinMap(m, apex, tuple(index[n + j] for j in range(m)))
    return gamma(Cospan(left, right), amb)


def per_from_corelation(c: Corelation) -> PartialPartition:
    """Defined apex fibers of a partial-function corelation; undefined points
    are simply missing from the blocks."""
    if c.ambient.name != "pf":
        raise TypeMismatch(f"expected the partial-function ambient, got {c.ambient}")
    n, m = c.dom, c.cod
    fibers: dict[int, list[int]] = {}
    for i, v in enumerate(c.cospan.left.table):
        if v is not None:
            fibers.setdefault(v, []).append(i)
    for j, v in enumerate(c.cospan.right.table):
        if v is not None:
            fibers.setdefault(v, []).append(n + j)
    blocks = sorted((tuple(b) for b in fibers.values()), key=lambda b: b[0])
    return PartialPartition(n + m, tuple(blocks))


def corelation_from_per(p: PartialPartition, n: int, m: int, amb: Ambient) -> Corelation:
    if p.ground != n + m:
        raise TypeMismatch(f"ground {p.ground} != {n}+{m}")
    index: dict[int, int] = {}
    for k, block in enumerate(p.blocks):
        for e in block:
            index[e] = k
    apex = len(p.blocks)
    from .finfn import ParMap

    left = ParMap(n, apex, tuple(index.get(i) for i in range(n)))
    right = ParMap(m, apex, tuple(index.get(n + j) for j in range(m)))
    return gamma(Cospan(left, right), amb)


def enumerate_partial_partitions(ground: int):
    """All partial partitions of {0, ..., ground-1}."""

    def rec(i: int, blocks: list[list[int]]):
        if i == ground:
            yield PartialPartition(ground, tuple(tuple(b) for b in blocks))
            return
        yield from rec(i + 1, blocks)  # i left out
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


# ---------------------------------------------------------------------------
# subspace view of matrix relations


def rel_subspace_rows(r: Relation) -> tuple[tuple, ...]:
    """The subspace of k^(dom+cod) underlying a relation, as canonical
    reduced-echelon basis rows."""
    amb = _require_products(r.ambient)
    from .linmap import mat_transpose, mat_vcat, rref

    stacked = mat_vcat(r.span.left, r.span.right)
    reduced, pivots = rref(mat_transpose(stacked))
    return reduced.entries[: len(pivots)]


def rel_from_subspace_rows(rows, n: int, m: int, amb: Ambient) -> Relation:
    """Relation n -> m spanned by the given vectors of k^(n+m)."""
    amb = _require_products(amb)
    from .linmap import ExactMatrix, mat_transpose

    rows = tuple(tuple(amb.ring.coerce(v) for v in row) for row in rows)
    if any(len(row) != n + m for row in rows):
        raise TypeMismatch(f"vectors must live in dimension {n + m}")
    basis = mat_transpose(ExactMatrix(amb.ring, len(rows), n + m, rows))
    left = ExactMatrix(amb.ring, n, basis.cols, basis.entries[:n])
    right = ExactMatrix(amb.ring, m, basis.cols, basis.entries[n:])
    return rel_canonical(Span(left, right), amb)
