"""Spans and cospans over a pluggable ambient prop.

An :class:`Ambient` bundles the categorical operations of one concrete prop
(finite functions, partial functions, or matrices over a ring) together with
its factorisation system and a distinguished subcategory used when mapping
spans to corelations.  Everything downstream (composition, canonical forms,
corelations, the verification harness) is written once against this
interface.

Iso-class representatives: a cospan is canonicalised by renaming its apex
only, which is exactly the isomorphism-class quotient.  Pullbacks for spans
over a subcategory are always computed in the full ambient prop.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .errors import TypeMismatch
from .exactnum import ZZ, Ring, parse_ring
from . import finfn
from .finfn import FinMap, ParMap
from . import linmap
from .linmap import ExactMatrix


class Span(NamedTuple):
    """Two morphisms out of a shared apex: X <- apex -> Y."""

    left: object
    right: object


class Cospan(NamedTuple):
    """Two morphisms into a shared apex: X -> apex <- Y."""

    left: object
    right: object


class Ambient:
    """Operations of one concrete prop; subclasses fix the morphism type.

    ``a_name`` selects the distinguished subcategory tested by :meth:`in_a`
    (e.g. injections inside total functions, split monos inside integer
    matrices).
    """

    name: str
    a_name: str

    def __eq__(self, other):
        return (
            isinstance(other, Ambient)
            and self.name == other.name
            and self.a_name == other.a_name
        )

    def __hash__(self):
        return hash((self.name, self.a_name))

    def __repr__(self):
        return f"Ambient({self.name}, A={self.a_name})"

    def with_a(self, a_name: str) -> "Ambient":
        raise NotImplementedError

    # morphism protocol
    def dom(self, f) -> int:
        raise NotImplementedError

    def cod(self, f) -> int:
        raise NotImplementedError

    def identity(self, n: int):
        raise NotImplementedError

    def compose(self, f, g):
        """Diagrammatic order: first f, then g."""
        raise NotImplementedError

    def tensor(self, f, g):
        raise NotImplementedError

    def symmetry(self, n: int, m: int):
        raise NotImplementedError

    def pullback(self, f, g):
        raise NotImplementedError

    def pushout(self, f, g):
        raise NotImplementedError

    def factorize(self, f):
        raise NotImplementedError

    def in_e(self, f) -> bool:
        raise NotImplementedError

    def in_m(self, f) -> bool:
        raise NotImplementedError

    def in_a(self, f) -> bool:
        raise NotImplementedError

    # copairing with the coproduct (tensor) as source
    def copair(self, f, g):
        raise NotImplementedError

    def split_copair(self, h, n: int, m: int):
        raise NotImplementedError

    # mediators (used by the verification harness)
    def pushout_mediator(self, q1, q2, f, g):
        """Unique u with q1;u = f and q2;u = g, for a cocone (f, g)."""
        raise NotImplementedError

    def pullback_mediator(self, p1, p2, f, g):
        """Unique u with u;p1 = f and u;p2 = g, for a cone (f, g)."""
        raise NotImplementedError

    def solve_postcompose(self, m, f):
        """Some x with x;m = f, or None; m is assumed mono."""
        raise NotImplementedError

    # canonical forms
    def canonical_cospan(self, c: Cospan) -> Cospan:
        raise NotImplementedError

    def canonical_span(self, s: Span) -> Span:
        raise NotImplementedError

    # enumeration / sampling (verification harness)
    def enumerate_morphisms(self, dom: int, cod: int, entry_bound: Optional[int] = None):
        raise NotImplementedError

    def enumerate_a_morphisms(self, dom: int, cod: int, entry_bound: Optional[int] = None):
        for f in self.enumerate_morphisms(dom, cod, entry_bound):
            if self.in_a(f):
                yield f

    def random_morphism(self, rng, dom: int, cod: int, entry_bound: Optional[int] = None):
        raise NotImplementedError

    def random_a_morphism(self, rng, dom: int, cod: int, entry_bound: Optional[int] = None):
        raise NotImplementedError


class FinFnAmbient(Ambient):
    """Total functions on finite ordinals; (surjections, injections)."""

    name = "f"

    def __init__(self, a_name: str = "inj"):
        if a_name not in ("inj", "all"):
            raise ValueError(f"unknown subcategory {a_name!r} for f")
        self.a_name = a_name

    def with_a(self, a_name):
        return FinFnAmbient(a_name)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, n):
        return finfn.fn_identity(n)

    def compose(self, f, g):
        return finfn.fn_compose(f, g)

    def tensor(self, f, g):
        return finfn.fn_tensor(f, g)

    def symmetry(self, n, m):
        return finfn.fn_symmetry(n, m)

    def pullback(self, f, g):
        return finfn.fn_pullback(f, g)

    def pushout(self, f, g):
        return finfn.fn_pushout(f, g)

    def factorize(self, f):
        return finfn.fn_factorize(f)

    def in_e(self, f):
        return finfn.fn_is_surjective(f)

    def in_m(self, f):
        return finfn.fn_is_injective(f)

    def in_a(self, f):
        return True if self.a_name == "all" else finfn.fn_is_injective(f)

    def copair(self, f, g):
        if f.cod != g.cod:
            raise TypeMismatch("copairing needs a common codomain")
        return FinMap(f.dom + g.dom, f.cod, f.table + g.table)

    def split_copair(self, h, n, m):
        return FinMap(n, h.cod, h.table[:n]), FinMap(m, h.cod, h.table[n:])

    def pushout_mediator(self, q1, q2, f, g):
        apex = q1.cod
        table: list[Optional[int]] = [None] * apex
        for x in range(q1.dom):
            table[q1.table[x]] = f.table[x]
        for y in range(q2.dom):
            v = g.table[y]
            prev = table[q2.table[y]]
            if prev is not None and prev != v:
                raise TypeMismatch("not a cocone")
            table[q2.table[y]] = v
        if any(v is None for v in table):
            raise TypeMismatch("pushout legs not jointly surjective")
        return FinMap(apex, f.cod, tuple(table))

    def pullback_mediator(self, p1, p2, f, g):
        index = {(p1.table[i], p2.table[i]): i for i in range(p1.dom)}
        table = tuple(index[(f.table[z], g.table[z])] for z in range(f.dom))
        return FinMap(f.dom, p1.dom, table)

    def solve_postcompose(self, m, f):
        if m.cod != f.cod:
            raise TypeMismatch("codomains differ")
        inverse = {v: i for i, v in enumerate(m.table)}
        table = []
        for v in f.table:
            if v not in inverse:
                return None
            table.append(inverse[v])
        return FinMap(f.dom, m.dom, tuple(table))

    def canonical_cospan(self, c):
        lt, rt = c.left.table, c.right.table
        apex = c.left.cod
        relabel: dict[int, int] = {}
        for v in lt + rt:
            if v not in relabel:
                relabel[v] = len(relabel)
        for v in range(apex):
            if v not in relabel:
                relabel[v] = len(relabel)
        return Cospan(
            FinMap(len(lt), apex, tuple(relabel[v] for v in lt)),
            FinMap(len(rt), apex, tuple(relabel[v] for v in rt)),
        )

    def canonical_span(self, s):
        pairs = sorted(zip(s.left.table, s.right.table))
        return Span(
            FinMap(len(pairs), s.left.cod, tuple(x for x, _ in pairs)),
            FinMap(len(pairs), s.right.cod, tuple(y for _, y in pairs)),
        )

    def enumerate_morphisms(self, dom, cod, entry_bound=None):
        return finfn.enumerate_finmaps(dom, cod)

    def random_morphism(self, rng, dom, cod, entry_bound=None):
        if cod == 0 and dom > 0:
            raise ValueError("no maps into the empty set")
        return FinMap(dom, cod, tuple(rng.randrange(cod) for _ in range(dom)))

    def random_a_morphism(self, rng, dom, cod, entry_bound=None):
        if self.a_name == "all":
            return self.random_morphism(rng, dom, cod)
        if dom > cod:
            raise ValueError(f"no injections {dom} -> {cod}")
        return FinMap(dom, cod, tuple(rng.sample(range(cod), dom)))


class ParFnAmbient(Ambient):
    """Partial functions; (partial surjections, total injections)."""

    name = "pf"

    def __init__(self, a_name: str = "inj"):
        if a_name not in ("inj", "all"):
            raise ValueError(f"unknown subcategory {a_name!r} for pf")
        self.a_name = a_name

    def with_a(self, a_name):
        return ParFnAmbient(a_name)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, n):
        return finfn.par_identity(n)

    def compose(self, f, g):
        return finfn.par_compose(f, g)

    def tensor(self, f, g):
        return finfn.par_tensor(f, g)

    def symmetry(self, n, m):
        return finfn.par_symmetry(n, m)

    def pullback(self, f, g):
        return finfn.par_pullback(f, g)

    def pushout(self, f, g):
        return finfn.par_pushout(f, g)

    def factorize(self, f):
        return finfn.par_factorize(f)

    def in_e(self, f):
        return finfn.par_is_surjection(f)

    def in_m(self, f):
        return finfn.par_is_injection(f)

    def in_a(self, f):
        return True if self.a_name == "all" else finfn.par_is_injection(f)

    def copair(self, f, g):
        if f.cod != g.cod:
            raise TypeMismatch("copairing needs a common codomain")
        return ParMap(f.dom + g.dom, f.cod, f.table + g.table)

    def split_copair(self, h, n, m):
        return ParMap(n, h.cod, h.table[:n]), ParMap(m, h.cod, h.table[n:])

    def pushout_mediator(self, q1, q2, f, g):
        apex = q1.cod
        table: list = [()] * apex  # sentinel: () means "not yet set"
        for x in range(q1.dom):
            a = q1.table[x]
            if a is not None:
                table[a] = f.table[x]
        for y in range(q2.dom):
            a = q2.table[y]
            if a is not None:
                v = g.table[y]
                if table[a] != () and table[a] != v:
                    raise TypeMismatch("not a cocone")
                table[a] = v
        if any(v == () for v in table):
            raise TypeMismatch("pushout legs not jointly surjective")
        return ParMap(apex, f.cod, tuple(table))

    def pullback_mediator(self, p1, p2, f, g):
        index = {(p1.table[i], p2.table[i]): i for i in range(p1.dom)}
        table = []
        for z in range(f.dom):
            key = (f.table[z], g.table[z])
            table.append(None if key == (None, None) else index[key])
        return ParMap(f.dom, p1.dom, tuple(table))

    def solve_postcompose(self, m, f):
        if m.cod != f.cod:
            raise TypeMismatch("codomains differ")
        inverse = {v: i for i, v in enumerate(m.table) if v is not None}
        table = []
        for v in f.table:
            if v is None:
                table.append(None)
            elif v in inverse:
                table.append(inverse[v])
            else:
                return None
        return ParMap(f.dom, m.dom, tuple(table))

    def canonical_cospan(self, c):
        lt, rt = c.left.table, c.right.table
        apex = c.left.cod
        relabel: dict[int, int] = {}
        for v in lt + rt:
            if v is not None and v not in relabel:
                relabel[v] = len(relabel)
        for v in range(apex):
            if v not in relabel:
                relabel[v] = len(relabel)
        remap = lambda v: None if v is None else relabel[v]
        return Cospan(
            ParMap(len(lt), apex, tuple(remap(v) for v in lt)),
            ParMap(len(rt), apex, tuple(remap(v) for v in rt)),
        )

    def canonical_span(self, s):
        key = lambda p: tuple(-1 if v is None else v for v in p)
        pairs = sorted(zip(s.left.table, s.right.table), key=key)
        return Span(
            ParMap(len(pairs), s.left.cod, tuple(x for x, _ in pairs)),
            ParMap(len(pairs), s.right.cod, tuple(y for _, y in pairs)),
        )

    def enumerate_morphisms(self, dom, cod, entry_bound=None):
        return finfn.enumerate_parmaps(dom, cod)

    def random_morphism(self, rng, dom, cod, entry_bound=None):
        values = [None] + list(range(cod))
        return ParMap(dom, cod, tuple(rng.choice(values) for _ in range(dom)))

    def random_a_morphism(self, rng, dom, cod, entry_bound=None):
        if self.a_name == "all":
            return self.random_morphism(rng, dom, cod)
        if dom > cod:
            raise ValueError(f"no injections {dom} -> {cod}")
        return ParMap(dom, cod, tuple(rng.sample(range(cod), dom)))


class MatrixAmbient(Ambient):
    """Matrices over a field or the integers.

    Fields carry the (epi, mono) system; the integers carry (rank-dense
    epis, split monos), with pushouts taken through the free reflection.
    """

    def __init__(self, ring: Ring, a_name: Optional[str] = None):
        self.ring = ring
        self.name = ring.name
        if a_name is None:
            a_name = "split" if ring == ZZ else "all"
        if a_name not in ("all", "split"):
            raise ValueError(f"unknown subcategory {a_name!r} for {ring.name}")
        if a_name == "split" and ring != ZZ:
            raise ValueError("split-mono subcategory is specific to the integers")
        self.a_name = a_name

    def with_a(self, a_name):
        return MatrixAmbient(self.ring, a_name)

    def dom(self, f):
        return f.cols

    def cod(self, f):
        return f.rows

    def identity(self, n):
        return linmap.mat_identity(self.ring, n)

    def compose(self, f, g):
        return linmap.mat_compose(f, g)

    def tensor(self, f, g):
        return linmap.mat_tensor(f, g)

    def symmetry(self, n, m):
        return linmap.mat_symmetry(self.ring, n, m)

    def pullback(self, f, g):
        return linmap.mat_pullback(f, g)

    def pushout(self, f, g):
        return linmap.mat_pushout(f, g)

    def factorize(self, f):
        if self.ring.is_field:
            return linmap.field_factorize(f)
        return linmap.pid_factorize(f)

    def in_e(self, f):
        return linmap.mat_rank(f) == f.rows

    def in_m(self, f):
        if self.ring.is_field:
            return linmap.mat_rank(f) == f.cols
        return linmap.is_split_mono(f)

    def in_a(self, f):
        if self.a_name == "all":
            return True
        return linmap.is_split_mono(f)

    def copair(self, f, g):
        return linmap.mat_hcat(f, g)

    def split_copair(self, h, n, m):
        return (
            ExactMatrix(h.ring, h.rows, n, tuple(row[:n] for row in h.entries)),
            ExactMatrix(h.ring, h.rows, m, tuple(row[n:] for row in h.entries)),
        )

    # pairing into the biproduct (relations need products)
    def pair(self, f, g):
        return linmap.mat_vcat(f, g)

    def split_pair(self, h, n, m):
        return (
            ExactMatrix(h.ring, n, h.cols, h.entries[:n]),
            ExactMatrix(h.ring, m, h.cols, h.entries[n:]),
        )

    def pushout_mediator(self, q1, q2, f, g):
        lhs = linmap.mat_transpose(linmap.mat_hcat(q1, q2))
        rhs = linmap.mat_transpose(linmap.mat_hcat(f, g))
        sol = linmap.mat_solve(lhs, rhs)
        if sol is None:
            raise TypeMismatch("not a cocone of the pushout")
        return linmap.mat_transpose(sol)

    def pullback_mediator(self, p1, p2, f, g):
        sol = linmap.mat_solve(linmap.mat_vcat(p1, p2), linmap.mat_vcat(f, g))
        if sol is None:
            raise TypeMismatch("not a cone of the pullback")
        return sol

    def solve_postcompose(self, m, f):
        return linmap.mat_solve(m, f)

    def canonical_cospan(self, c):
        stacked = linmap.mat_hcat(c.left, c.right)
        if self.ring.is_field:
            reduced, _ = linmap.rref(stacked)
        else:
            reduced = linmap.hnf_row(stacked)
        left, right = self.split_copair(reduced, c.left.cols, c.right.cols)
        return Cospan(left, right)

    def canonical_span(self, s):
        stacked = linmap.mat_vcat(s.left, s.right)
        if self.ring.is_field:
            reduced, _ = linmap.rcef(stacked)
        else:
            reduced = linmap.hnf_col(stacked)
        left, right = self.split_pair(reduced, s.left.rows, s.right.rows)
        return Span(left, right)

    def enumerate_morphisms(self, dom, cod, entry_bound=None):
        if entry_bound is None:
            entry_bound = 1
        return linmap.enumerate_matrices(self.ring, cod, dom, entry_bound)

    def random_morphism(self, rng, dom, cod, entry_bound=None):
        if entry_bound is None:
            entry_bound = 2
        if hasattr(self.ring, "p"):
            values = list(range(self.ring.p))
        else:
            values = list(range(-entry_bound, entry_bound + 1))
        coerce = self.ring.coerce
        return ExactMatrix(
            self.ring,
            cod,
            dom,
            tuple(tuple(coerce(rng.choice(values)) for _ in range(dom)) for _ in range(cod)),
        )

    def random_a_morphism(self, rng, dom, cod, entry_bound=None):
        if self.a_name == "all":
            return self.random_morphism(rng, dom, cod, entry_bound)
        if dom > cod:
            raise ValueError(f"no split monos {dom} -> {cod}")
        while True:  # rejection sampling; dense enough at desk scale
            f = self.random_morphism(rng, dom, cod, entry_bound)
            if linmap.is_split_mono(f):
                return f


_DEFAULT_A = {"f": "inj", "pf": "inj", "z": "split"}


def get_ambient(name: str, a_name: Optional[str] = None) -> Ambient:
    """Ambient registry: ``f``, ``pf``, ``q``, ``z`` or ``gf<p>``.

    ``a_name`` picks the distinguished subcategory (default: injections for
    function props, split monos over the integers, everything over fields).
    """
    name = name.strip().lower()
    if a_name is not None:
        a_name = a_name.strip().lower()
        if a_name == name:  # "--A f" with "--C f" means A = C itself
            a_name = "all"
    if name == "f":
        return FinFnAmbient(a_name or "inj")
    if name == "pf":
        return ParFnAmbient(a_name or "inj")
    if name in ("q", "z") or name.startswith("gf"):
        ring = parse_ring(name)
        return MatrixAmbient(ring, a_name)
    raise ValueError(f"unknown ambient {name!r}")


# ---------------------------------------------------------------------------
# span/cospan operations


def cospan_feet(c: Cospan, amb: Ambient) -> tuple[int, int]:
    return amb.dom(c.left), amb.dom(c.right)


def cospan_apex(c: Cospan, amb: Ambient) -> int:
    return amb.cod(c.left)


def span_feet(s: Span, amb: Ambient) -> tuple[int, int]:
    return amb.cod(s.left), amb.cod(s.right)


def span_apex(s: Span, amb: Ambient) -> int:
    return amb.dom(s.left)


def make_cospan(left, right, amb: Ambient) -> Cospan:
    if amb.cod(left) != amb.cod(right):
        raise TypeMismatch("cospan legs need a common apex")
    return Cospan(left, right)


def make_span(left, right, amb: Ambient) -> Span:
    if amb.dom(left) != amb.dom(right):
        raise TypeMismatch("span legs need a common apex")
    return Span(left, right)


def cospan_identity(n: int, amb: Ambient) -> Cospan:
    i = amb.identity(n)
    return Cospan(i, i)


def span_identity(n: int, amb: Ambient) -> Span:
    i = amb.identity(n)
    return Span(i, i)


def cospan_compose(c1: Cospan, c2: Cospan, amb: Ambient) -> Cospan:
    if amb.dom(c1.right) != amb.dom(c2.left):
        raise TypeMismatch(
            f"feet disagree: {amb.dom(c1.right)} vs {amb.dom(c2.left)}"
        )
    q1, q2 = amb.pushout(c1.right, c2.left)
    return Cospan(amb.compose(c1.left, q1), amb.compose(c2.right, q2))


def span_compose(s1: Span, s2: Span, amb: Ambient) -> Span:
    if amb.cod(s1.right) != amb.cod(s2.left):
        raise TypeMismatch(
            f"feet disagree: {amb.cod(s1.right)} vs {amb.cod(s2.left)}"
        )
    p1, p2 = amb.pullback(s1.right, s2.left)
    return Span(amb.compose(p1, s1.left), amb.compose(p2, s2.right))


def cospan_tensor(c1: Cospan, c2: Cospan, amb: Ambient) -> Cospan:
    return Cospan(amb.tensor(c1.left, c2.left), amb.tensor(c1.right, c2.right))


def span_tensor(s1: Span, s2: Span, amb: Ambient) -> Span:
    return Span(amb.tensor(s1.left, s2.left), amb.tensor(s1.right, s2.right))


def cospan_canonical(c: Cospan, amb: Ambient) -> Cospan:
    return amb.canonical_cospan(c)


def span_canonical(s: Span, amb: Ambient) -> Span:
    return amb.canonical_span(s)


def embed_fwd_cospan(f, amb: Ambient) -> Cospan:
    return Cospan(f, amb.identity(amb.cod(f)))


def embed_bwd_cospan(f, amb: Ambient) -> Cospan:
    return Cospan(amb.identity(amb.cod(f)), f)


def embed_fwd_span(f, amb: Ambient) -> Span:
    return Span(amb.identity(amb.dom(f)), f)


def embed_bwd_span(f, amb: Ambient) -> Span:
    return Span(f, amb.identity(amb.dom(f)))
