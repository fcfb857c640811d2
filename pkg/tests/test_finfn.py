import random

import pytest

from corelate.errors import TypeMismatch
from corelate.finfn import (
    FinMap,
    Partition,
    enumerate_finmaps,
    enumerate_partitions,
    fn,
    fn_classify,
    fn_compose,
    fn_factorize,
    fn_identity,
    fn_is_injective,
    fn_is_surjective,
    fn_pullback,
    fn_pushout,
    fn_symmetry,
    fn_tensor,
    par,
    par_compose,
    par_factorize,
    par_identity,
    par_is_injection,
    par_is_surjection,
    par_pullback,
    par_pushout,
    par_tensor,
    partition_from_pairs,
)


def all_maps(max_size):
    for dom in range(max_size + 1):
        for cod in range(max_size + 1):
            yield from enumerate_finmaps(dom, cod)


# --- composition, tensor, classification -----------------------------------


def test_compose_identity():
    f = fn(3, 2, [0, 1, 1])
    assert fn_compose(fn_identity(3), f) == f
    assert fn_compose(f, fn_identity(2)) == f


def test_compose_pointwise():
    assert fn_compose(fn(3, 2, [0, 1, 1]), fn(2, 2, [1, 0])) == fn(3, 2, [1, 0, 0])


def test_compose_arity_check():
    with pytest.raises(TypeMismatch):
        fn_compose(fn(1, 2, [0]), fn(3, 2, [0, 1, 1]))


def test_tensor():
    assert fn_tensor(fn_identity(1), fn_identity(1)) == fn_identity(2)
    assert fn_tensor(fn(2, 1, [0, 0]), fn(1, 1, [0])) == fn(3, 2, [0, 0, 1])
    f = fn(3, 2, [0, 1, 1])
    assert fn_tensor(f, fn_identity(0)) == f
    assert fn_tensor(fn_identity(0), f) == f


def test_classify():
    assert fn_classify(fn_identity(2)) == (True, True)
    assert fn_classify(fn(2, 1, [0, 0])) == (False, True)
    assert fn_classify(fn(1, 2, [1])) == (True, False)


def test_symmetry_involution():
    s = fn_symmetry(2, 3)
    assert fn_compose(s, fn_symmetry(3, 2)) == fn_identity(5)


# --- factorisation ----------------------------------------------------------


def test_factorize_bijection():
    b = fn(3, 3, [2, 0, 1])
    e, m = fn_factorize(b)
    assert e == b and m == fn_identity(3)


def test_factorize_examples():
    e, m = fn_factorize(fn(3, 3, [1, 1, 0]))
    assert e == fn(3, 2, [1, 1, 0]) and m == fn(2, 3, [0, 1])
    e, m = fn_factorize(fn(2, 3, [0, 0]))
    assert e == fn(2, 1, [0, 0]) and m == fn(1, 3, [0])


def test_factorize_invariants_exhaustive():
    for f in all_maps(4):
        e, m = fn_factorize(f)
        assert fn_compose(e, m) == f
        assert fn_is_surjective(e)
        assert fn_is_injective(m)


def bijections(n):
    from itertools import permutations

    for p in permutations(range(n)):
        yield FinMap(n, n, tuple(p))


def test_factorize_mono_part_invariant_under_bijections():
    # the image inclusion of f is unchanged by precomposing a bijection
    for f in all_maps(4):
        _, m = fn_factorize(f)
        for b in bijections(f.dom):
            _, m2 = fn_factorize(fn_compose(b, f))
            assert m2 == m


# --- pullbacks and pushouts -------------------------------------------------


def test_pullback_examples():
    p1, p2 = fn_pullback(fn(0, 1, []), fn(0, 1, []))
    assert p1.dom == 0 and p2.dom == 0
    p1, p2 = fn_pullback(fn_identity(1), fn_identity(1))
    assert p1 == fn_identity(1) and p2 == fn_identity(1)
    p1, p2 = fn_pullback(fn(2, 1, [0, 0]), fn(2, 1, [0, 0]))
    assert p1 == fn(4, 2, [0, 0, 1, 1]) and p2 == fn(4, 2, [0, 1, 0, 1])


def test_pushout_examples():
    q1, q2 = fn_pushout(fn_identity(2), fn_identity(2))
    assert q1 == fn_identity(2) and q2 == fn_identity(2)
    q1, q2 = fn_pushout(fn(0, 0, []), fn(0, 2, []))
    assert q1 == fn(0, 2, []) and q2 == fn_identity(2)
    q1, q2 = fn_pushout(fn(2, 1, [0, 0]), fn(2, 2, [0, 1]))
    assert q1 == fn(1, 1, [0]) and q2 == fn(2, 1, [0, 0])


def test_pullback_universal_property():
    # every competing cone admits exactly one mediating map
    rng = random.Random(1)
    cospans = [
        (fn(2, 2, [0, 0]), fn(2, 2, [0, 1])),
        (fn(3, 2, [0, 1, 1]), fn(2, 2, [1, 1])),
        (fn(2, 1, [0, 0]), fn(3, 1, [0, 0, 0])),
        (fn(0, 2, []), fn(2, 2, [0, 1])),
    ]
    for f, g in cospans:
        p1, p2 = fn_pullback(f, g)
        for z in range(3):
            for u in enumerate_finmaps(z, f.dom):
                for v in enumerate_finmaps(z, g.dom):
                    if fn_compose(u, f) != fn_compose(v, g):
                        continue
                    mediators = [
                        h
                        for h in enumerate_finmaps(z, p1.dom)
                        if fn_compose(h, p1) == u and fn_compose(h, p2) == v
                    ]
                    assert len(mediators) == 1


def test_pushout_universal_property():
    spans = [
        (fn(2, 2, [0, 0]), fn(2, 2, [0, 1])),
        (fn(1, 2, [0]), fn(1, 1, [0])),
        (fn(0, 2, []), fn(0, 1, [])),
        (fn(3, 2, [0, 0, 1]), fn(3, 2, [0, 1, 0])),
    ]
    for f, g in spans:
        q1, q2 = fn_pushout(f, g)
        for z in range(3):
            for u in enumerate_finmaps(f.cod, z):
                for v in enumerate_finmaps(g.cod, z):
                    if fn_compose(f, u) != fn_compose(g, v):
                        continue
                    mediators = [
                        h
                        for h in enumerate_finmaps(q1.cod, z)
                        if fn_compose(q1, h) == u and fn_compose(q2, h) == v
                    ]
                    assert len(mediators) == 1


def test_stability_exhaustive_size3():
    # pulling a surjection back along any map yields a surjection
    for a in range(4):
        for n in range(4):
            for m in range(4):
                for f in enumerate_finmaps(n, a):
                    for s in enumerate_finmaps(m, a):
                        if not fn_is_surjective(s):
                            continue
                        p1, _ = fn_pullback(f, s)
                        assert fn_is_surjective(p1)


def test_costability_exhaustive_size3():
    # pushing an injection out along any map yields an injection
    for a in range(4):
        for n in range(4):
            for m in range(4):
                for i in enumerate_finmaps(a, n):
                    if not fn_is_injective(i):
                        continue
                    for h in enumerate_finmaps(a, m):
                        _, q2 = fn_pushout(i, h)
                        assert fn_is_injective(q2)


def canonical_cospan_key(q1, q2):
    relabel = {}
    for v in q1.table + q2.table:
        if v not in relabel:
            relabel[v] = len(relabel)
    unhit = q1.cod - len(relabel)
    return (
        tuple(relabel[v] for v in q1.table),
        tuple(relabel[v] for v in q2.table),
        unhit,
    )


def test_tensor_preserves_pushouts_and_pullbacks():
    rng = random.Random(7)

    def rand_map(dom, cod):
        return FinMap(dom, cod, tuple(rng.randrange(cod) for _ in range(dom))) if cod else FinMap(0, 0, ())

    for _ in range(200):
        a, n, m = rng.randint(0, 3), rng.randint(1, 3), rng.randint(1, 3)
        a2, n2, m2 = rng.randint(0, 3), rng.randint(1, 3), rng.randint(1, 3)
        f, g = rand_map(a, n), rand_map(a, m)
        f2, g2 = rand_map(a2, n2), rand_map(a2, m2)
        q = fn_pushout(fn_tensor(f, f2), fn_tensor(g, g2))
        q1a, q2a = fn_pushout(f, g)
        q1b, q2b = fn_pushout(f2, g2)
        qt = (fn_tensor(q1a, q1b), fn_tensor(q2a, q2b))
        assert canonical_cospan_key(*q) == canonical_cospan_key(*qt)


def test_tensor_preserves_pullbacks():
    rng = random.Random(8)
    for _ in range(200):
        a, n, m = rng.randint(1, 3), rng.randint(0, 3), rng.randint(0, 3)
        a2, n2, m2 = rng.randint(1, 3), rng.randint(0, 3), rng.randint(0, 3)
        f = FinMap(n, a, tuple(rng.randrange(a) for _ in range(n)))
        g = FinMap(m, a, tuple(rng.randrange(a) for _ in range(m)))
        f2 = FinMap(n2, a2, tuple(rng.randrange(a2) for _ in range(n2)))
        g2 = FinMap(m2, a2, tuple(rng.randrange(a2) for _ in range(m2)))
        p1, p2 = fn_pullback(fn_tensor(f, f2), fn_tensor(g, g2))
        p1a, p2a = fn_pullback(f, g)
        p1b, p2b = fn_pullback(f2, g2)
        t1, t2 = fn_tensor(p1a, p1b), fn_tensor(p2a, p2b)
        # compare up to apex bijection: sort the (left, right) pair tables
        assert sorted(zip(p1.table, p2.table)) == sorted(zip(t1.table, t2.table))


# --- partial maps ------------------------------------------------------------


def test_par_compose_strictness():
    bot = par(2, 2, [None, None])
    g = par(2, 2, [0, 1])
    assert par_compose(bot, g) == bot
    assert par_compose(par(1, 2, [0]), par(2, 1, [None, 0])) == par(1, 1, [None])


def test_par_factorize_example():
    e, m = par_factorize(par(2, 2, [None, 0]))
    assert e == par(2, 1, [None, 0])
    assert m == par(1, 2, [0])
    assert par_compose(e, m) == par(2, 2, [None, 0])
    assert par_is_surjection(e) and par_is_injection(m)


def test_par_pushout_example():
    q1, q2 = par_pushout(par(1, 1, [None]), par_identity(1))
    assert q1 == par(1, 1, [0])
    assert q2 == par(1, 1, [None])


def test_par_pullback_restricts_to_total():
    f = par(2, 2, [0, 1])
    g = par(2, 2, [0, 0])
    p1, p2 = par_pullback(f, g)
    fp1, fp2 = fn_pullback(fn(2, 2, [0, 1]), fn(2, 2, [0, 0]))
    assert p1.table == fp1.table and p2.table == fp2.table


def test_par_tensor_shifts():
    assert par_tensor(par(1, 1, [None]), par(1, 2, [1])) == par(2, 3, [None, 2])


# --- partitions ---------------------------------------------------------------


def test_partition_validation():
    Partition(3, ((0, 2), (1,)))
    with pytest.raises(ValueError):
        Partition(3, ((0,), (0, 1), (2,)))
    with pytest.raises(ValueError):
        Partition(3, ((0,),))
    with pytest.raises(ValueError):
        Partition(2, ((1,), (0,)))


def test_partition_from_pairs():
    p = partition_from_pairs(4, [(0, 2), (2, 3)])
    assert p == Partition(4, ((0, 2, 3), (1,)))


def test_enumerate_partitions_bell_numbers():
    bell = [1, 1, 2, 5, 15, 52]
    for n, b in enumerate(bell):
        assert sum(1 for _ in enumerate_partitions(n)) == b
