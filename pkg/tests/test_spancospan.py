import random

import pytest

from corelate.errors import TypeMismatch
from corelate.exactnum import GF, ZZ
from corelate.finfn import fn, fn_compose
from corelate.linmap import mat
from corelate.spancospan import (
    Cospan,
    Span,
    cospan_canonical,
    cospan_compose,
    cospan_identity,
    cospan_tensor,
    embed_bwd_cospan,
    embed_fwd_cospan,
    embed_fwd_span,
    get_ambient,
    make_cospan,
    span_canonical,
    span_compose,
    span_identity,
    span_tensor,
)

F = get_ambient("f")
INJ_ALL = get_ambient("f", "all")
PF = get_ambient("pf")
G2 = get_ambient("gf2")
Z = get_ambient("z")
AMBIENTS = (F, PF, G2, get_ambient("q"), Z)


def test_registry():
    assert get_ambient("f").a_name == "inj"
    assert get_ambient("f", "f").a_name == "all"
    assert get_ambient("z").a_name == "split"
    assert get_ambient("gf5").ring == GF(5)
    with pytest.raises(ValueError):
        get_ambient("nope")
    with pytest.raises(ValueError):
        get_ambient("q", "split")


def test_ambient_equality_by_name():
    assert get_ambient("f") == get_ambient("f", "inj")
    assert get_ambient("f") != get_ambient("f", "all")
    assert get_ambient("gf2") == get_ambient("gf2")


def test_make_cospan_validates_apex():
    with pytest.raises(TypeMismatch):
        make_cospan(fn(1, 2, [0]), fn(1, 3, [0]), F)


def test_cospan_compose_identity():
    c = Cospan(fn(2, 3, [0, 1]), fn(1, 3, [2]))
    lhs = cospan_canonical(cospan_compose(cospan_identity(2, F), c, F), F)
    assert lhs == cospan_canonical(c, F)
    rhs = cospan_canonical(cospan_compose(c, cospan_identity(1, F), F), F)
    assert rhs == cospan_canonical(c, F)


def test_cospan_compose_example():
    # multiplication then comultiplication glues everything to one point
    mult = Cospan(fn(2, 1, [0, 0]), fn(1, 1, [0]))
    comult = Cospan(fn(1, 1, [0]), fn(2, 1, [0, 0]))
    out = cospan_compose(mult, comult, F)
    assert out == Cospan(fn(2, 1, [0, 0]), fn(2, 1, [0, 0]))


def test_cospan_compose_foot_mismatch():
    with pytest.raises(TypeMismatch):
        cospan_compose(cospan_identity(1, F), cospan_identity(2, F), F)


def test_span_compose_identity_and_example():
    s = Span(fn(2, 1, [0, 0]), fn(2, 2, [0, 1]))
    assert span_canonical(span_compose(span_identity(1, F), s, F), F) == span_canonical(s, F)
    # composing with the reversed span yields a two-element apex
    rev = Span(fn(2, 2, [0, 1]), fn(2, 1, [0, 0]))
    out = span_compose(s, rev, F)
    assert out.left.dom == 2


def test_span_compose_empty_injections():
    s = Span(fn(0, 0, []), fn(0, 0, []))
    assert span_compose(s, s, F) == s


def test_cospan_canonical_relabels_by_first_occurrence():
    c = Cospan(fn(1, 2, [1]), fn(1, 2, [0]))
    assert cospan_canonical(c, F) == Cospan(fn(1, 2, [0]), fn(1, 2, [1]))
    ident = cospan_identity(2, F)
    assert cospan_canonical(ident, F) == ident
    unhit = Cospan(fn(0, 1, []), fn(0, 1, []))
    assert cospan_canonical(unhit, F) == unhit


def test_cospan_canonical_complete_invariant_f():
    # canonical forms agree exactly on iso classes (exhaustive, small)
    from itertools import permutations

    from corelate.finfn import enumerate_finmaps

    for n, m, apex in ((1, 1, 2), (2, 1, 2), (2, 2, 2)):
        cospans = [
            Cospan(f, g)
            for f in enumerate_finmaps(n, apex)
            for g in enumerate_finmaps(m, apex)
        ]
        for c1 in cospans:
            for c2 in cospans:
                iso = any(
                    fn_compose(c1.left, p) == c2.left and fn_compose(c1.right, p) == c2.right
                    for perm in permutations(range(apex))
                    for p in [fn(apex, apex, perm)]
                )
                assert iso == (cospan_canonical(c1, F) == cospan_canonical(c2, F))


def test_matrix_canonical_forms_invariant_under_apex_change():
    from corelate.linmap import mat_mul

    g = mat(ZZ, 2, 2, [[1, 1], [0, 1]])  # unimodular
    c = Cospan(mat(ZZ, 2, 1, [[2], [0]]), mat(ZZ, 2, 2, [[1, 0], [1, 3]]))
    moved = Cospan(mat_mul(g, c.left), mat_mul(g, c.right))
    assert cospan_canonical(c, Z) == cospan_canonical(moved, Z)


def test_embed_fwd_functorial():
    rng = random.Random(2)
    for amb in AMBIENTS:
        for _ in range(20):
            a, b, c = rng.randint(0, 3), rng.randint(1, 3), rng.randint(1, 3)
            f = amb.random_morphism(rng, a, b)
            g = amb.random_morphism(rng, b, c)
            fg = amb.compose(f, g)
            lhs = cospan_compose(embed_fwd_cospan(f, amb), embed_fwd_cospan(g, amb), amb)
            assert cospan_canonical(lhs, amb) == cospan_canonical(embed_fwd_cospan(fg, amb), amb)
            slhs = span_compose(embed_fwd_span(f, amb), embed_fwd_span(g, amb), amb)
            assert span_canonical(slhs, amb) == span_canonical(embed_fwd_span(fg, amb), amb)


def test_embed_bwd_contravariant():
    rng = random.Random(3)
    for amb in AMBIENTS:
        for _ in range(20):
            a, b, c = rng.randint(0, 3), rng.randint(1, 3), rng.randint(1, 3)
            g = amb.random_morphism(rng, a, b)
            h = amb.random_morphism(rng, b, c)
            hg = amb.compose(g, h)
            lhs = cospan_compose(embed_bwd_cospan(h, amb), embed_bwd_cospan(g, amb), amb)
            assert cospan_canonical(lhs, amb) == cospan_canonical(embed_bwd_cospan(hg, amb), amb)


def test_identity_cospan_neutral_all_ambients():
    rng = random.Random(4)
    for amb in AMBIENTS:
        for _ in range(15):
            n, m = rng.randint(0, 3), rng.randint(0, 3)
            apex = max(n, m, 1)
            c = Cospan(amb.random_morphism(rng, n, apex), amb.random_morphism(rng, m, apex))
            lhs = cospan_compose(cospan_identity(n, amb), c, amb)
            assert cospan_canonical(lhs, amb) == cospan_canonical(c, amb)


def test_tensor_with_empty_unit():
    for amb in AMBIENTS:
        c = cospan_identity(2, amb)
        unit = cospan_identity(0, amb)
        assert cospan_tensor(c, unit, amb) == c
        s = span_identity(2, amb)
        assert span_tensor(s, span_identity(0, amb), amb) == s


def test_pullbacks_of_a_spans_stay_in_a():
    # injections and split monos are stable under pullback
    rng = random.Random(5)
    for amb in (F, Z):
        for _ in range(30):
            b = rng.randint(0, 3) if amb is F else rng.randint(0, 2)
            f = amb.random_a_morphism(rng, rng.randint(0, b), b, 2)
            g = amb.random_a_morphism(rng, rng.randint(0, b), b, 2)
            p1, p2 = amb.pullback(f, g)
            assert amb.in_a(p1) and amb.in_a(p2)
