"""Textual literals for morphisms, (co)spans, and canonical forms.

Grammar:
  morphism  ::=  "fn" nat "->" nat ":" "[" nat,* "]"
             |   "par" nat "->" nat ":" "[" (nat | "_"),* "]"
             |   "mat" ringtag natxnat ":" "[" row,* "]"
  cospan    ::=  "cospan" "{" "left" "=" morphism "," "right" "=" morphism "}"
  span      ::=  "span"   "{" "left" "=" morphism "," "right" "=" morphism "}"

Scalars follow the ring: optional-sign decimals, rationals as n/d, GF(p)
residues as decimals.
"""

from __future__ import annotations

import re

from .errors import TypeMismatch
from .exactnum import parse_ring
from .finfn import FinMap, ParMap, fn, par
from .linmap import ExactMatrix, mat
from .spancospan import Cospan, Span, make_cospan, make_span


def format_morphism(f) -> str:
    if isinstance(f, FinMap):
        body = ",".join(str(v) for v in f.table)
        return f"fn {f.dom} -> {f.cod} : [{body}]"
    if isinstance(f, ParMap):
        body = ",".join("_" if v is None else str(v) for v in f.table)
        return f"par {f.dom} -> {f.cod} : [{body}]"
    if isinstance(f, ExactMatrix):
        ring = f.ring
        rows = ",".join("[" + ",".join(ring.format(v) for v in row) + "]" for row in f.entries)
        return f"mat {ring.name} {f.rows}x{f.cols} : [{rows}]"
    raise TypeError(f"not a morphism: {f!r}")


_FN = re.compile(r"^fn\s+(\d+)\s*->\s*(\d+)\s*:\s*\[(.*)\]$")
_PAR = re.compile(r"^par\s+(\d+)\s*->\s*(\d+)\s*:\s*\[(.*)\]$")
_MAT = re.compile(r"^mat\s+([A-Za-z0-9]+)\s+(\d+)x(\d+)\s*:\s*\[(.*)\]$")


def _split_commas(body: str) -> list[str]:
    return [piece.strip() for piece in body.split(",")] if body.strip() else []


def parse_morphism(text: str):
    text = text.strip()
    m = _FN.match(text)
    if m:
        dom, cod, body = int(m.group(1)), int(m.group(2)), m.group(3)
        return fn(dom, cod, [int(v) for v in _split_commas(body)])
    m = _PAR.match(text)
    if m:
        dom, cod, body = int(m.group(1)), int(m.group(2)), m.group(3)
        return par(dom, cod, [None if v == "_" else int(v) for v in _split_commas(body)])
    m = _MAT.match(text)
    if m:
        ring = parse_ring(m.group(1))
        rows, cols = int(m.group(2)), int(m.group(3))
        body = m.group(4).strip()
        entries = _parse_rows(body, rows, cols, ring)
        return mat(ring, rows, cols, entries)
    raise TypeMismatch(f"unparseable morphism literal: {text!r}")


def _parse_rows(body: str, rows: int, cols: int, ring):
    out = []
    rest = body
    while rest:
        rest = rest.lstrip(", ")
        if not rest:
            break
        if not rest.startswith("["):
            raise TypeMismatch(f"expected a row, found {rest!r}")
        end = rest.index("]")
        inner = rest[1:end]
        out.append([ring.parse(v) for v in _split_commas(inner)])
        rest = rest[end + 1 :]
    if len(out) != rows or any(len(r) != cols for r in out):
        raise TypeMismatch(f"rows do not form a {rows}x{cols} matrix")
    return out


def format_cospan(c: Cospan) -> str:
    return f"cospan {{ left = {format_morphism(c.left)}, right = {format_morphism(c.right)} }}"


def format_span(s: Span) -> str:
    return f"span {{ left = {format_morphism(s.left)}, right = {format_morphism(s.right)} }}"


_PAIR = re.compile(r"^(cospan|span)\s*\{\s*left\s*=\s*(.*?)\s*,\s*right\s*=\s*(.*?)\s*\}$")


def parse_cospan(text: str, amb) -> Cospan:
    kind, left, right = _parse_pair(text)
    if kind != "cospan":
        raise TypeMismatch("expected a cospan literal")
    return make_cospan(left, right, amb)


def parse_span(text: str, amb) -> Span:
    kind, left, right = _parse_pair(text)
    if kind != "span":
        raise TypeMismatch("expected a span literal")
    return make_span(left, right, amb)


def parse_pair_literal(text: str, amb):
    """Either a span or a cospan literal; returns (kind, pair)."""
    kind, left, right = _parse_pair(text)
    if kind == "cospan":
        return kind, make_cospan(left, right, amb)
    return kind, make_span(left, right, amb)


def _parse_pair(text: str):
    m = _PAIR.match(text.strip())
    if not m:
        raise TypeMismatch(f"unparseable span/cospan literal: {text!r}")
    return m.group(1), parse_morphism(m.group(2)), parse_morphism(m.group(3))


# ---------------------------------------------------------------------------
# canonical-form printouts


def format_partition_blocks(blocks, n: int) -> str:
    """Feet-tagged block printout, e.g. {{x0,y0},{x1}}."""

    def name(e: int) -> str:
        return f"x{e}" if e < n else f"y{e - n}"

    inner = ",".join("{" + ",".join(name(e) for e in block) + "}" for block in blocks)
    return "{" + inner + "}"


def format_corelation(c) -> str:
    from .corelrel import er_from_corelation, per_from_corelation

    name = c.ambient.name
    if name == "f":
        p = er_from_corelation(c)
        return f"corel f {c.dom} -> {c.cod} : {format_partition_blocks(p.blocks, c.dom)}"
    if name == "pf":
        p = per_from_corelation(c)
        return f"corel pf {c.dom} -> {c.cod} : {format_partition_blocks(p.blocks, c.dom)}"
    return f"corel {name} {c.dom} -> {c.cod} : {format_cospan(c.cospan)}"


def format_relation(r) -> str:
    from .corelrel import rel_subspace_rows

    ring = r.ambient.ring
    rows = rel_subspace_rows(r)
    body = ",".join("[" + ",".join(ring.format(v) for v in row) + "]" for row in rows)
    return f"subspace {ring.name} {r.dom} -> {r.cod} : [{body}]"


def format_canonical(x) -> str:
    from .corelrel import Corelation, Relation

    if isinstance(x, Corelation):
        return format_corelation(x)
    if isinstance(x, Relation):
        return format_relation(x)
    return format_morphism(x)
