"""Property suites and brute-force oracles for the (co)relation machinery.

Each check enumerates (or, above a case budget, samples with a fixed seed)
configurations at desk scale, recompiles the categorical construction from
scratch, and reports failures as replayable literals.  The oracles here are
deliberately independent of the canonical-form code paths they validate:
partition gluing runs on union-find, subspace composition on exhaustive
vector enumeration, and corelation equality on a bounded witness-closure
search.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .errors import TypeMismatch
from .exactnum import Ring
from .finfn import Partition
from .corelrel import (
    PartialPartition,
    corel_compose,
    corel_equal,
    corel_tensor,
    gamma,
    pi,
)
from .diagrams import get_theory, parse_term, term_equal
from .literals import format_cospan, format_morphism, format_span, parse_morphism
from .spancospan import (
    Ambient,
    Cospan,
    MatrixAmbient,
    Span,
    cospan_canonical,
    cospan_compose,
    cospan_identity,
    cospan_tensor,
    embed_bwd_cospan,
    embed_bwd_span,
    embed_fwd_cospan,
    embed_fwd_span,
    span_canonical,
    span_compose,
    span_identity,
    span_tensor,
)

CASE_BUDGET = 10**6  # exhaustive below this many cases, seeded sampling above


@dataclass
class CheckReport:
    """Outcome of one check; failing reports carry replayable literals."""

    name: str
    c_name: str
    a_name: str
    bound: int
    verdict: str
    entry_bound: Optional[int] = None
    seed: Optional[int] = None
    counterexamples: tuple = ()
    details: tuple = ()  # ((label, holds), ...) for per-law checks

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_record(self) -> dict:
        record = {
            "check": self.name,
            "C": self.c_name,
            "A": self.a_name,
            "bound": self.bound,
            "entry_bound": self.entry_bound,
            "seed": self.seed,
            "verdict": self.verdict,
            "counterexamples": [dict(c) for c in self.counterexamples],
        }
        if self.details:
            record["details"] = {label: holds for label, holds in self.details}
        return record


@dataclass(frozen=True)
class Zigzag:
    """Alternating forward/backward morphisms with matching endpoints.

    Steps are ("fwd", f) or ("bwd", f); a forward step runs dom(f) -> cod(f),
    a backward step runs cod(f) -> dom(f).
    """

    steps: tuple

    def validate(self, amb: Ambient) -> None:
        at = None
        for direction, f in self.steps:
            src, dst = (amb.dom(f), amb.cod(f)) if direction == "fwd" else (amb.cod(f), amb.dom(f))
            if at is not None and at != src:
                raise TypeMismatch(f"zigzag endpoints disagree: {at} vs {src}")
            at = dst

    def to_span(self, amb: Ambient) -> Span:
        self.validate(amb)
        out = None
        for direction, f in self.steps:
            s = embed_fwd_span(f, amb) if direction == "fwd" else embed_bwd_span(f, amb)
            out = s if out is None else span_compose(out, s, amb)
        return out

    def to_cospan(self, amb: Ambient) -> Cospan:
        self.validate(amb)
        out = None
        for direction, f in self.steps:
            c = embed_fwd_cospan(f, amb) if direction == "fwd" else embed_bwd_cospan(f, amb)
            out = c if out is None else cospan_compose(out, c, amb)
        return out


# ---------------------------------------------------------------------------
# single-case checkers (shared by sweeps and replay)


def assumption31_case(amb: Ambient, f, g):
    """Mediator from the pushout of the pullback of the cospan (f, g);
    returns (lies in M?, mediator)."""
    p1, p2 = amb.pullback(f, g)
    q1, q2 = amb.pushout(p1, p2)
    u = amb.pushout_mediator(q1, q2, f, g)
    return amb.in_m(u), u


def assumption33_case(amb: Ambient, f, g):
    """Mediator from the span (f, g) into the pullback of its pushout;
    returns (lies in E?, mediator)."""
    q1, q2 = amb.pushout(f, g)
    r1, r2 = amb.pullback(q1, q2)
    u = amb.pullback_mediator(r1, r2, f, g)
    return amb.in_e(u), u


def square_case(amb: Ambient, f) -> bool:
    """Both orientations of the square on a single morphism of A."""
    fwd = Zigzag((("fwd", f),))
    bwd = Zigzag((("bwd", f),))
    return pi(fwd.to_span(amb), amb) == gamma(fwd.to_cospan(amb), amb) and pi(
        bwd.to_span(amb), amb
    ) == gamma(bwd.to_cospan(amb), amb)


def pi_functorial_case(amb: Ambient, s1: Span, s2: Span) -> bool:
    lhs = pi(span_compose(s1, s2, amb), amb)
    rhs = corel_compose(pi(s1, amb), pi(s2, amb))
    return corel_equal(lhs, rhs)


# ---------------------------------------------------------------------------
# enumeration and sampling helpers


def _leg_lists(amb: Ambient, bound: int, entry_bound, into_apex: bool, a_only: bool):
    """Lists of candidate legs indexed by (foot, apex)."""
    out = {}
    for size in range(bound + 1):
        for apex in range(bound + 1):
            dom, cod = (size, apex) if into_apex else (apex, size)
            legs = (
                amb.enumerate_a_morphisms(dom, cod, entry_bound)
                if a_only
                else amb.enumerate_morphisms(dom, cod, entry_bound)
            )
            out[(size, apex)] = list(legs)
    return out


def _pairs(amb, bound, entry_bound, seed, into_apex, a_only):
    """All (or seeded-sampled) leg pairs sharing an apex."""
    legs = _leg_lists(amb, bound, entry_bound, into_apex, a_only)
    total = 0
    for apex in range(bound + 1):
        lefts = sum(len(legs[(n, apex)]) for n in range(bound + 1))
        total += lefts * lefts
    if total <= CASE_BUDGET:
        for apex in range(bound + 1):
            for n in range(bound + 1):
                for m in range(bound + 1):
                    for f in legs[(n, apex)]:
                        for g in legs[(m, apex)]:
                            yield f, g
        return
    rng = random.Random(seed)
    for _ in range(20_000):
        apex = rng.randint(0, bound)
        pool = [f for n in range(bound + 1) for f in legs[(n, apex)]]
        if pool:
            yield rng.choice(pool), rng.choice(pool)


def random_morphism_sizes(rng, bound: int, a_like: bool) -> tuple[int, int]:
    a = rng.randint(0, bound)
    b = rng.randint(a if a_like else 0, bound)
    return a, b


def random_span(amb: Ambient, rng, x: int, y: int, apex_bound: int, entry_bound=None) -> Span:
    if amb.name == "f" and (x == 0 or y == 0):
        apex = 0
    else:
        apex = rng.randint(0, apex_bound)
    return Span(
        amb.random_morphism(rng, apex, x, entry_bound),
        amb.random_morphism(rng, apex, y, entry_bound),
    )


def random_cospan(amb: Ambient, rng, x: int, y: int, apex_bound: int, entry_bound=None) -> Cospan:
    if amb.name == "f" and (x > 0 or y > 0):
        apex = rng.randint(1, max(1, apex_bound))
    else:
        apex = rng.randint(0, apex_bound)
    return Cospan(
        amb.random_morphism(rng, x, apex, entry_bound),
        amb.random_morphism(rng, y, apex, entry_bound),
    )


def random_a_span(amb: Ambient, rng, x: int, y: int, apex_bound: int, entry_bound=None) -> Span:
    """Span with both legs in the distinguished subcategory."""
    top = apex_bound if amb.a_name == "all" else min(x, y)
    if amb.name == "f" and (x == 0 or y == 0):
        top = 0
    apex = rng.randint(0, min(top, apex_bound))
    return Span(
        amb.random_a_morphism(rng, apex, x, entry_bound),
        amb.random_a_morphism(rng, apex, y, entry_bound),
    )


# ---------------------------------------------------------------------------
# assumption checks


def check_assumption31(amb: Ambient, bound: int, entry_bound: int = 3, seed: int = 0) -> CheckReport:
    """Pushout-of-pullback mediators of A-cospans must lie in M.

    Enumerates cospans with both legs in A and all three objects at most
    ``bound`` (matrix ambients additionally bound entry magnitude), deduped
    by apex isomorphism.
    """
    counterexamples = []
    seen = set()
    for f, g in _pairs(amb, bound, entry_bound, seed, into_apex=True, a_only=True):
        key = cospan_canonical(Cospan(f, g), amb)
        if key in seen:
            continue
        seen.add(key)
        holds, mediator = assumption31_case(amb, f, g)
        if not holds:
            counterexamples.append(
                (
                    ("left", format_morphism(f)),
                    ("right", format_morphism(g)),
                    ("mediator", format_morphism(mediator)),
                )
            )
    return CheckReport(
        name="assumption31",
        c_name=amb.name,
        a_name=amb.a_name,
        bound=bound,
        entry_bound=entry_bound,
        seed=seed,
        verdict="pass" if not counterexamples else "fail",
        counterexamples=tuple(counterexamples),
    )


def check_assumption33(amb: Ambient, bound: int, entry_bound: int = 3, seed: int = 0) -> CheckReport:
    """Dual check: pullback-of-pushout mediators of A-spans must lie in E."""
    counterexamples = []
    seen = set()
    for f, g in _pairs(amb, bound, entry_bound, seed, into_apex=False, a_only=True):
        key = span_canonical(Span(f, g), amb)
        if key in seen:
            continue
        seen.add(key)
        holds, mediator = assumption33_case(amb, f, g)
        if not holds:
            counterexamples.append(
                (
                    ("left", format_morphism(f)),
                    ("right", format_morphism(g)),
                    ("mediator", format_morphism(mediator)),
                )
            )
    return CheckReport(
        name="assumption33",
        c_name=amb.name,
        a_name=amb.a_name,
        bound=bound,
        entry_bound=entry_bound,
        seed=seed,
        verdict="pass" if not counterexamples else "fail",
        counterexamples=tuple(counterexamples),
    )


def check_square_commutes(amb: Ambient, bound: int, entry_bound: int = 3) -> CheckReport:
    """Mapping a morphism of A through spans or through cospans agrees."""
    counterexamples = []
    for a in range(bound + 1):
        for b in range(bound + 1):
            for f in amb.enumerate_a_morphisms(a, b, entry_bound):
                if not square_case(amb, f):
                    counterexamples.append((("morphism", format_morphism(f)),))
    return CheckReport(
        name="square",
        c_name=amb.name,
        a_name=amb.a_name,
        bound=bound,
        entry_bound=entry_bound,
        verdict="pass" if not counterexamples else "fail",
        counterexamples=tuple(counterexamples),
    )


_SHAPES = ("i", "ii", "iii", "iv")


def _random_shape_pair(amb: Ambient, rng, bound: int, entry_bound, shape: str):
    a_like = amb.a_name != "all"
    rand = lambda d, c: amb.random_a_morphism(rng, d, c, entry_bound)
    lo, mid, hi = sorted(rng.randint(0, bound) for _ in range(3))
    if shape == "i":
        f, g = rand(lo, mid), rand(mid, hi)
        return embed_fwd_span(f, amb), embed_fwd_span(g, amb)
    if shape == "ii":
        f, g = rand(mid, hi), rand(lo, mid)
        return embed_bwd_span(f, amb), embed_bwd_span(g, amb)
    if shape == "iii":
        f, g = rand(lo, mid), rand(lo, hi)
        return embed_bwd_span(f, amb), embed_fwd_span(g, amb)
    if shape == "iv":
        f, g = rand(lo, hi), rand(mid, hi)
        return embed_fwd_span(f, amb), embed_bwd_span(g, amb)
    raise ValueError(shape)


def _enumerate_shape_pairs(amb: Ambient, cap: int, entry_cap: int, shape: str, budget: int):
    """Exhaustive tiny instances of one generator shape."""
    emitted = 0
    for a, b, c in product(range(cap + 1), repeat=3):
        if shape == "i":
            pairs = product(
                amb.enumerate_a_morphisms(a, b, entry_cap),
                amb.enumerate_a_morphisms(b, c, entry_cap),
            )
            mk = lambda f, g: (embed_fwd_span(f, amb), embed_fwd_span(g, amb))
        elif shape == "ii":
            pairs = product(
                amb.enumerate_a_morphisms(a, b, entry_cap),
                amb.enumerate_a_morphisms(c, a, entry_cap),
            )
            mk = lambda f, g: (embed_bwd_span(f, amb), embed_bwd_span(g, amb))
        elif shape == "iii":
            pairs = product(
                amb.enumerate_a_morphisms(a, b, entry_cap),
                amb.enumerate_a_morphisms(a, c, entry_cap),
            )
            mk = lambda f, g: (embed_bwd_span(f, amb), embed_fwd_span(g, amb))
        else:
            pairs = product(
                amb.enumerate_a_morphisms(a, b, entry_cap),
                amb.enumerate_a_morphisms(c, b, entry_cap),
            )
            mk = lambda f, g: (embed_fwd_span(f, amb), embed_bwd_span(g, amb))
        for f, g in pairs:
            yield mk(f, g)
            emitted += 1
            if emitted >= budget:
                return


def check_pi_functorial(
    amb: Ambient, bound: int, entry_bound: int = 3, seed: int = 0, samples: int = 1000
) -> CheckReport:
    """Composition is preserved on all four generator shapes, including the
    pullback shape (iv) that needs the subcategory restriction.

    Runs a deterministic exhaustive sweep at tiny sizes first (so the verdict
    cannot depend on sampling luck) and then the seeded random samples.
    """
    rng = random.Random(seed)
    counterexamples = []

    def record(shape, s1, s2):
        counterexamples.append(
            (
                ("shape", shape),
                ("span1", format_span(s1)),
                ("span2", format_span(s2)),
            )
        )

    for shape in _SHAPES:
        for s1, s2 in _enumerate_shape_pairs(amb, min(bound, 2), 1, shape, budget=3000):
            if not pi_functorial_case(amb, s1, s2):
                record(shape, s1, s2)
    for k in range(samples):
        shape = _SHAPES[k % 4]
        s1, s2 = _random_shape_pair(amb, rng, bound, entry_bound, shape)
        if not pi_functorial_case(amb, s1, s2):
            record(shape, s1, s2)
    return CheckReport(
        name="pi-functorial",
        c_name=amb.name,
        a_name=amb.a_name,
        bound=bound,
        entry_bound=entry_bound,
        seed=seed,
        verdict="pass" if not counterexamples else "fail",
        counterexamples=tuple(counterexamples),
    )


def check_tensor_functorial(
    amb: Ambient, bound: int, entry_bound: int = 2, seed: int = 0, samples: int = 200
) -> CheckReport:
    """Interchange of the monoidal product with span, cospan, and corelation
    composition on random tuples.

    Spans take their legs in the distinguished subcategory: the monoidal
    product is only required to preserve pullbacks there, and indeed the
    pointed tensor of partial functions fails interchange on arbitrary legs.
    """
    rng = random.Random(seed)
    counterexamples = []
    for _ in range(samples):
        x, y, z = (rng.randint(0, bound) for _ in range(3))
        x2, y2, z2 = (rng.randint(0, bound) for _ in range(3))
        s1 = random_a_span(amb, rng, x, y, bound, entry_bound)
        s2 = random_a_span(amb, rng, y, z, bound, entry_bound)
        s1p = random_a_span(amb, rng, x2, y2, bound, entry_bound)
        s2p = random_a_span(amb, rng, y2, z2, bound, entry_bound)
        lhs = span_compose(span_tensor(s1, s1p, amb), span_tensor(s2, s2p, amb), amb)
        rhs = span_tensor(span_compose(s1, s2, amb), span_compose(s1p, s2p, amb), amb)
        ok_span = span_canonical(lhs, amb) == span_canonical(rhs, amb)

        c1 = random_cospan(amb, rng, x, y, bound, entry_bound)
        c2 = random_cospan(amb, rng, y, z, bound, entry_bound)
        c1p = random_cospan(amb, rng, x2, y2, bound, entry_bound)
        c2p = random_cospan(amb, rng, y2, z2, bound, entry_bound)
        clhs = cospan_compose(cospan_tensor(c1, c1p, amb), cospan_tensor(c2, c2p, amb), amb)
        crhs = cospan_tensor(cospan_compose(c1, c2, amb), cospan_compose(c1p, c2p, amb), amb)
        ok_cospan = cospan_canonical(clhs, amb) == cospan_canonical(crhs, amb)

        a1, a2 = gamma(c1, amb), gamma(c2, amb)
        b1, b2 = gamma(c1p, amb), gamma(c2p, amb)
        ok_corel = corel_equal(
            corel_compose(corel_tensor(a1, b1), corel_tensor(a2, b2)),
            corel_tensor(corel_compose(a1, a2), corel_compose(b1, b2)),
        )
        if not (ok_span and ok_cospan and ok_corel):
            counterexamples.append(
                (
                    ("span1", format_span(s1)),
                    ("span2", format_span(s2)),
                    ("cospan1", format_cospan(c1)),
                    ("cospan2", format_cospan(c2)),
                    ("failing", f"span={ok_span} cospan={ok_cospan} corel={ok_corel}"),
                )
            )
    return CheckReport(
        name="tensor-functorial",
        c_name=amb.name,
        a_name=amb.a_name,
        bound=bound,
        entry_bound=entry_bound,
        seed=seed,
        verdict="pass" if not counterexamples else "fail",
        counterexamples=tuple(counterexamples),
    )


def check_category_laws(
    amb: Ambient, bound: int, entry_bound: int = 2, seed: int = 0, samples: int = 500
) -> CheckReport:
    """Associativity and identity in the span, cospan, and corelation props."""
    rng = random.Random(seed)
    counterexamples = []
    for _ in range(samples):
        x, y, z, u = (rng.randint(0, bound) for _ in range(4))
        s1 = random_span(amb, rng, x, y, bound, entry_bound)
        s2 = random_span(amb, rng, y, z, bound, entry_bound)
        s3 = random_span(amb, rng, z, u, bound, entry_bound)
        assoc_span = span_canonical(
            span_compose(span_compose(s1, s2, amb), s3, amb), amb
        ) == span_canonical(span_compose(s1, span_compose(s2, s3, amb), amb), amb)
        ident_span = span_canonical(
            span_compose(span_identity(x, amb), s1, amb), amb
        ) == span_canonical(s1, amb) and span_canonical(
            span_compose(s1, span_identity(y, amb), amb), amb
        ) == span_canonical(s1, amb)

        c1 = random_cospan(amb, rng, x, y, bound, entry_bound)
        c2 = random_cospan(amb, rng, y, z, bound, entry_bound)
        c3 = random_cospan(amb, rng, z, u, bound, entry_bound)
        assoc_cospan = cospan_canonical(
            cospan_compose(cospan_compose(c1, c2, amb), c3, amb), amb
        ) == cospan_canonical(cospan_compose(c1, cospan_compose(c2, c3, amb), amb), amb)
        ident_cospan = cospan_canonical(
            cospan_compose(cospan_identity(x, amb), c1, amb), amb
        ) == cospan_canonical(c1, amb) and cospan_canonical(
            cospan_compose(c1, cospan_identity(y, amb), amb), amb
        ) == cospan_canonical(c1, amb)

        a1, a2, a3 = gamma(c1, amb), gamma(c2, amb), gamma(c3, amb)
        assoc_corel = corel_equal(
            corel_compose(corel_compose(a1, a2), a3),
            corel_compose(a1, corel_compose(a2, a3)),
        )
        if not (assoc_span and ident_span and assoc_cospan and ident_cospan and assoc_corel):
            counterexamples.append(
                (
                    ("span1", format_span(s1)),
                    ("span2", format_span(s2)),
                    ("span3", format_span(s3)),
                    ("cospan1", format_cospan(c1)),
                    ("cospan2", format_cospan(c2)),
                    ("cospan3", format_cospan(c3)),
                    (
                        "failing",
                        f"span_assoc={assoc_span} span_id={ident_span} "
                        f"cospan_assoc={assoc_cospan} cospan_id={ident_cospan} "
                        f"corel_assoc={assoc_corel}",
                    ),
                )
            )
    return CheckReport(
        name="laws",
        c_name=amb.name,
        a_name=amb.a_name,
        bound=bound,
        entry_bound=entry_bound,
        seed=seed,
        verdict="pass" if not counterexamples else "fail",
        counterexamples=tuple(counterexamples),
    )


# ---------------------------------------------------------------------------
# Frobenius-style law suites


_ONE_COLOR_LAWS = (
    ("assoc", "({m} @ id(1)) ; {m}", "(id(1) @ {m}) ; {m}"),
    ("unit_left", "({u} @ id(1)) ; {m}", "id(1)"),
    ("unit_right", "(id(1) @ {u}) ; {m}", "id(1)"),
    ("coassoc", "{c} ; ({c} @ id(1))", "{c} ; (id(1) @ {c})"),
    ("counit_left", "{c} ; ({cu} @ id(1))", "id(1)"),
    ("counit_right", "{c} ; (id(1) @ {cu})", "id(1)"),
    ("commutative", "sym(1,1) ; {m}", "{m}"),
    ("cocommutative", "{c} ; sym(1,1)", "{c}"),
    ("frobenius_left", "({c} @ id(1)) ; (id(1) @ {m})", "{m} ; {c}"),
    ("frobenius_right", "(id(1) @ {c}) ; ({m} @ id(1))", "{m} ; {c}"),
    ("special", "{c} ; {m}", "id(1)"),
    ("extra", "{u} ; {cu}", "id(0)"),
)


def _law_suite(theory_name: str, scalars) -> list[tuple[str, str, str]]:
    single_color = theory_name in ("er", "per")
    prefixes = ("",) if single_color else ("w.", "b.")
    laws = []
    for prefix in prefixes:
        names = {
            "m": f"{prefix}mult",
            "c": f"{prefix}comult",
            "u": f"{prefix}unit",
            "cu": f"{prefix}counit",
        }
        tag = prefix.rstrip(".")
        for label, lhs, rhs in _ONE_COLOR_LAWS:
            full = f"{tag}_{label}" if tag else label
            laws.append((full, lhs.format(**names), rhs.format(**names)))
    for r in scalars:
        r_text = str(Fraction(r)) if Fraction(r).denominator > 1 else str(Fraction(r).numerator)
        laws.append(
            (
                f"scalar_cancel({r_text})",
                f"scalar({r_text}) ; coscalar({r_text})",
                "id(1)",
            )
        )
    return laws


def _default_scalars(theory_name: str, th) -> tuple:
    if theory_name in ("er", "per"):
        return ()
    if theory_name == "z-corel":
        return (1, -1, 2)
    ring = th.ambient.ring
    if hasattr(ring, "p"):
        return tuple(range(1, min(ring.p, 4)))
    return (1, 2, 3, Fraction(1, 2))


def check_frobenius(theory_name: str, scalars=None) -> CheckReport:
    """Evaluate the Frobenius-monoid law suite in the named semantics.

    The report records which laws hold; a failing law is not an error of the
    artifact but a fact about the theory (e.g. non-unit scalars over the
    integers do not cancel).
    """
    th = get_theory(theory_name)
    if scalars is None:
        scalars = _default_scalars(theory_name, th)
    details = []
    counterexamples = []
    for label, lhs, rhs in _law_suite(theory_name, scalars):
        holds = term_equal(parse_term(lhs), parse_term(rhs), th)
        details.append((label, holds))
        if not holds:
            counterexamples.append((("law", label), ("lhs", lhs), ("rhs", rhs)))
    return CheckReport(
        name="frobenius",
        c_name=theory_name,
        a_name="-",
        bound=0,
        verdict="pass" if not counterexamples else "fail",
        counterexamples=tuple(counterexamples),
        details=tuple(details),
    )


# ---------------------------------------------------------------------------
# witness-closure oracle for corelation equality


def _witness_monos(amb: Ambient, dom: int, cod: int, entry_bound):
    return [m for m in amb.enumerate_morphisms(dom, cod, entry_bound) if amb.in_m(m)]


def _max_abs_entry(f) -> int:
    if hasattr(f, "entries"):
        return max((abs(v) for row in f.entries for v in row), default=0)
    return 0


def witness_reachable(
    c: Cospan,
    amb: Ambient,
    depth: int = 3,
    apex_bound: int = 3,
    entry_bound: int = 2,
    state_entry_cap: Optional[int] = None,
    witness_cache: Optional[dict] = None,
) -> frozenset:
    """Cospans reachable from c by at most ``depth`` M-witness moves.

    A forward move postcomposes both legs with a mono witness, a backward
    move strips one off when both legs factor through it exactly.  The apex
    size, search depth, and (for matrices) state entry magnitudes are
    capped; witness enumeration is bounded by ``entry_bound``.
    """
    if state_entry_cap is None:
        state_entry_cap = 4 * entry_bound
    witnesses = witness_cache if witness_cache is not None else {}

    def witness_list(dom, cod):
        if (dom, cod) not in witnesses:
            witnesses[(dom, cod)] = _witness_monos(amb, dom, cod, entry_bound)
        return witnesses[(dom, cod)]

    is_matrix = isinstance(amb, MatrixAmbient)

    def ok_state(cand: Cospan) -> bool:
        if not is_matrix:
            return True
        return max(_max_abs_entry(cand.left), _max_abs_entry(cand.right)) <= state_entry_cap

    frontier = {c}
    visited = {c}
    for _ in range(depth):
        next_frontier = set()
        for state in frontier:
            apex = amb.cod(state.left)
            for new_apex in range(apex_bound + 1):
                for m in witness_list(apex, new_apex):
                    cand = Cospan(amb.compose(state.left, m), amb.compose(state.right, m))
                    if cand not in visited and ok_state(cand):
                        visited.add(cand)
                        next_frontier.add(cand)
                for m in witness_list(new_apex, apex):
                    left = amb.solve_postcompose(m, state.left)
                    if left is None:
                        continue
                    right = amb.solve_postcompose(m, state.right)
                    if right is None:
                        continue
                    cand = Cospan(left, right)
                    if cand not in visited and ok_state(cand):
                        visited.add(cand)
                        next_frontier.add(cand)
        frontier = next_frontier
        if not frontier:
            break
    return frozenset(visited)


def witness_equal_oracle(
    c1: Cospan,
    c2: Cospan,
    amb: Ambient,
    depth: int = 3,
    apex_bound: int = 3,
    entry_bound: int = 2,
    state_entry_cap: Optional[int] = None,
    witness_cache: Optional[dict] = None,
) -> bool:
    """Decide corelation equality by bounded search over M-witness moves.

    Independent of the canonical-form code path it is used to validate:
    states are whole cospans compared verbatim, and apex isomorphisms count
    as witnesses like any other mono.
    """
    if (amb.dom(c1.left), amb.dom(c1.right)) != (amb.dom(c2.left), amb.dom(c2.right)):
        raise TypeMismatch("cospans have different feet")
    return c2 in witness_reachable(
        c1, amb, depth, apex_bound, entry_bound, state_entry_cap, witness_cache
    )


# ---------------------------------------------------------------------------
# gluing and vector-enumeration oracles


def oracle_er_compose(p1: Partition, p2: Partition, n: int, z: int, m: int) -> Partition:
    """Glue equivalence classes along shared middle witnesses, then restrict."""
    if p1.ground != n + z or p2.ground != z + m:
        raise TypeMismatch("partition grounds do not match the feet")
    from .finfn import UnionFind

    uf = UnionFind(n + z + m)
    for block in p1.blocks:
        for e in block[1:]:
            uf.union(block[0], e)
    for block in p2.blocks:
        shifted = [e + n for e in block]
        for e in shifted[1:]:
            uf.union(shifted[0], e)
    keep = list(range(n)) + list(range(n + z, n + z + m))
    groups: dict[int, list[int]] = {}
    for e in keep:
        groups.setdefault(uf.find(e), []).append(e)
    renum = lambda e: e if e < n else e - z
    blocks = sorted((tuple(renum(e) for e in g) for g in groups.values()), key=lambda b: b[0])
    return Partition(n + m, tuple(blocks))


def oracle_per_compose(
    p1: PartialPartition, p2: PartialPartition, n: int, z: int, m: int
) -> PartialPartition:
    """Pointed-set gluing: undefined elements join a basepoint class, and
    everything glued onto the basepoint is dropped from the result."""
    if p1.ground != n + z or p2.ground != z + m:
        raise TypeMismatch("grounds do not match the feet")
    from .finfn import UnionFind

    bot = n + z + m
    uf = UnionFind(n + z + m + 1)
    sup1, sup2 = p1.support, p2.support
    for block in p1.blocks:
        for e in block[1:]:
            uf.union(block[0], e)
    for e in range(n + z):
        if e not in sup1:
            uf.union(e, bot)
    for block in p2.blocks:
        shifted = [e + n for e in block]
        for e in shifted[1:]:
            uf.union(shifted[0], e)
    for e in range(z + m):
        if e not in sup2:
            uf.union(e + n, bot)
    bot_root = uf.find(bot)
    keep = list(range(n)) + list(range(n + z, n + z + m))
    groups: dict[int, list[int]] = {}
    for e in keep:
        root = uf.find(e)
        if root != bot_root:
            groups.setdefault(root, []).append(e)
    renum = lambda e: e if e < n else e - z
    blocks = sorted((tuple(renum(e) for e in g) for g in groups.values()), key=lambda b: b[0])
    return PartialPartition(n + m, tuple(blocks))


def _reduce_against(rows, vec, ring: Ring):
    vec = list(vec)
    for row in rows:
        pivot = next((j for j, v in enumerate(row) if v != ring.zero), None)
        if pivot is not None and vec[pivot] != ring.zero:
            c = ring.mul(vec[pivot], ring.inv(row[pivot]))
            vec = [ring.sub(v, ring.mul(c, w)) for v, w in zip(vec, row)]
    return vec


def subspace_contains(rows, vec, ring: Ring) -> bool:
    return all(v == ring.zero for v in _reduce_against(rows, vec, ring))


def span_rows(vectors, dim: int, ring: Ring) -> tuple[tuple, ...]:
    """Canonical reduced-echelon rows spanning the given vectors."""
    from .linmap import ExactMatrix, rref

    vectors = [tuple(ring.coerce(v) for v in vec) for vec in vectors]
    if not vectors:
        return ()
    matrix = ExactMatrix(ring, len(vectors), dim, tuple(vectors))
    reduced, pivots = rref(matrix)
    return reduced.entries[: len(pivots)]


def enumerate_vectors(dim: int, ring: Ring):
    """All vectors of GF(p)^dim."""
    p = ring.p  # only sensible for prime fields
    idx = [0] * dim
    if dim == 0:
        yield ()
        return
    while True:
        yield tuple(idx)
        i = dim - 1
        while i >= 0 and idx[i] == p - 1:
            idx[i] = 0
            i -= 1
        if i < 0:
            return
        idx[i] += 1


def oracle_subspace_compose(v_rows, w_rows, n: int, z: int, m: int, ring: Ring):
    """Relational composition by exhaustive vector enumeration over GF(p)."""
    found = []
    for vec in enumerate_vectors(n + z + m, ring):
        v, u, w = vec[:n], vec[n : n + z], vec[n + z :]
        if subspace_contains(v_rows, v + u, ring) and subspace_contains(w_rows, u + w, ring):
            found.append(v + w)
    return span_rows(found, n + m, ring)


def enumerate_subspaces(dim: int, ring: Ring):
    """All subspaces of GF(p)^dim as canonical echelon row tuples."""
    seen = set()
    vectors = [v for v in enumerate_vectors(dim, ring) if any(v)]
    yield span_rows([], dim, ring)

    def rec(basis, start):
        for i in range(start, len(vectors)):
            cand = basis + [vectors[i]]
            rows = span_rows(cand, dim, ring)
            if len(rows) == len(cand) and rows not in seen:
                seen.add(rows)
                yield rows
                yield from rec(cand, i + 1)

    yield from rec([], 0)


# ---------------------------------------------------------------------------
# replay


def replay(report: CheckReport) -> bool:
    """Re-run every recorded counterexample; True iff each still fails."""
    if not report.counterexamples:
        return True
    from .spancospan import get_ambient

    if report.name == "frobenius":
        th_name = report.c_name
        th = get_theory(th_name)
        for ce in report.counterexamples:
            data = dict(ce)
            if term_equal(parse_term(data["lhs"]), parse_term(data["rhs"]), th):
                return False
        return True
    amb = get_ambient(report.c_name, report.a_name)
    for ce in report.counterexamples:
        data = dict(ce)
        if report.name == "assumption31":
            f, g = parse_morphism(data["left"]), parse_morphism(data["right"])
            holds, _ = assumption31_case(amb, f, g)
            if holds:
                return False
        elif report.name == "assumption33":
            f, g = parse_morphism(data["left"]), parse_morphism(data["right"])
            holds, _ = assumption33_case(amb, f, g)
            if holds:
                return False
        elif report.name == "square":
            if square_case(amb, parse_morphism(data["morphism"])):
                return False
        else:
            return False  # sampled checks replay only through their seeds
    return True
