"""Expression typing, the rewriting relation, and its termination measure."""

import random

import pytest

from graypol import (
    EGen,
    EId,
    ELowL,
    ELowR,
    ETop,
    OpGen,
    TypingError,
    eval_cell,
    measure,
    normal_form_expr,
    normalize_expression,
    reducts,
    typecheck,
)
from graypol.expressions import size

from conftest import random_one_cell, random_two_cell, two_cell_to_expr


def test_unit_law(pseudomonoid, rng):
    sig = pseudomonoid.presentation.sig
    for _ in range(20):
        phi = random_two_cell(sig, rng, rows=2)
        t = two_cell_to_expr(sig, phi)
        padded = ETop(EId(sig.source(phi)), t)
        assert normalize_expression(sig, padded, 2) == phi
        padded = ETop(t, EId(sig.target(phi)))
        assert normalize_expression(sig, padded, 2) == phi


def test_right_bracketing(pseudomonoid, rng):
    sig = pseudomonoid.presentation.sig
    cells = []
    cur = None
    for _ in range(4):
        nxt = random_two_cell(sig, rng, rows=1, start_cell=cur)
        cells.append(nxt)
        cur = sig.target(nxt)
    t1, t2, t3, t4 = [two_cell_to_expr(sig, c) for c in cells]
    lhs = ETop(ETop(ETop(t1, t2), t3), t4)
    rhs = ETop(t1, ETop(t2, ETop(t3, t4)))
    assert normal_form_expr(sig, lhs, 2) == normal_form_expr(sig, rhs, 2)


def test_typing_error_cites_rule(pseudomonoid):
    sig = pseudomonoid.presentation.sig
    bad = ETop(EGen(2, "mu"), EGen(2, "mu"))
    with pytest.raises(TypingError) as err:
        typecheck(sig, bad, 2)
    assert err.value.rule == "comp-top"
    with pytest.raises(TypingError) as err:
        typecheck(sig, EGen(3, "mu"), 2)
    assert err.value.rule == "gen-intro"


def test_ill_typed_low_composition(pseudoadjunction):
    sig = pseudoadjunction.presentation.sig
    f = sig.make1("x", ("f",))
    with pytest.raises(TypingError) as err:
        typecheck(sig, ELowL(0, f, EGen(2, "eta")), 2)
    assert err.value.rule == "comp-left"
    with pytest.raises(TypingError) as err:
        typecheck(sig, ELowR(0, EGen(2, "eps"), sig.make1("x", ("f",))), 2)
    assert err.value.rule == "comp-right"


def random_expression(sig, rng, max_nodes, top=2):
    """Random well-typed expression built by combining compatible pieces."""
    pool = []
    for gen in sig.two:
        pool.append(EGen(top, gen))
    for _ in range(3):
        pool.append(EId(random_one_cell(sig, rng, 3)))
    expr = rng.choice(pool)
    while size(expr) < max_nodes:
        kind = rng.randrange(4)
        try:
            if kind == 0:
                src, tgt = typecheck(sig, expr, top)
                nxt = rng.choice(pool)
                s2, _ = typecheck(sig, nxt, top)
                if tgt == s2:
                    expr = ETop(expr, nxt)
                elif typecheck(sig, nxt, top)[1] == src:
                    expr = ETop(nxt, expr)
                else:
                    expr = ETop(expr, EId(tgt))
            elif kind == 1:
                src, _ = typecheck(sig, expr, top)
                u = random_one_cell(sig, rng, 2, start=rng.choice(sig.zero))
                if sig.end0(u) == src.start:
                    expr = ELowL(0, u, expr)
            elif kind == 2:
                src, _ = typecheck(sig, expr, top)
                v = random_one_cell(sig, rng, 2, start=sig.end0(src))
                expr = ELowR(0, expr, v)
            else:
                src, _ = typecheck(sig, expr, top)
                expr = ETop(EId(src), expr)
        except TypingError:
            continue
    return expr


def rewrite_with_strategy(sig, expr, top, pick):
    cur = expr
    trace = [cur]
    while True:
        options = reducts(sig, cur)
        if not options:
            return cur, trace
        cur = pick(options)
        trace.append(cur)


def closure(sig, expr, cap=200000):
    seen = {expr}
    stack = [expr]
    normals = set()
    while stack:
        cur = stack.pop()
        options = reducts(sig, cur)
        if not options:
            normals.add(cur)
            continue
        for nxt in options:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
                if len(seen) > cap:
                    raise AssertionError("closure blew past the cap")
    return normals


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_strategy_independence_sampled(pseudomonoid, seed):
    sig = pseudomonoid.presentation.sig
    rng = random.Random(seed)
    for _ in range(60):
        expr = random_expression(sig, rng, max_nodes=rng.randrange(3, 11))
        first, _ = rewrite_with_strategy(sig, expr, 2, lambda opts: opts[0])
        last, _ = rewrite_with_strategy(sig, expr, 2, lambda opts: opts[-1])
        rnd, _ = rewrite_with_strategy(sig, expr, 2, rng.choice)
        assert first == last == rnd
        assert eval_cell(sig, expr, 2) == eval_cell(sig, first, 2)


def test_closure_oracle_unique_normal_form(pseudomonoid):
    sig = pseudomonoid.presentation.sig
    rng = random.Random(7)
    for _ in range(40):
        expr = random_expression(sig, rng, max_nodes=rng.randrange(3, 8))
        normals = closure(sig, expr)
        assert len(normals) == 1
        assert normal_form_expr(sig, expr, 2) in normals


def test_measure_strictly_decreases(pseudomonoid):
    sig = pseudomonoid.presentation.sig
    rng = random.Random(11)
    for _ in range(60):
        expr = random_expression(sig, rng, max_nodes=rng.randrange(3, 10))
        cur = expr
        while True:
            options = reducts(sig, cur)
            if not options:
                break
            for nxt in options:
                assert measure(nxt, 2) < measure(cur, 2)
            cur = rng.choice(options)


def test_three_dimensional_expressions(pseudomonoid, rng):
    sig = pseudomonoid.presentation.sig
    base = sig.gen3_cell(OpGen("A"))
    expr = ETop(EGen(3, OpGen("A")), EId(sig.target(base)))
    assert normalize_expression(sig, expr, 3) == base
    m = measure(expr, 3)
    assert len(m) == 5
    padded = ELowL(0, sig.make1("x", ("a",)), expr)
    out = normalize_expression(sig, padded, 3)
    assert out == sig.compose(sig.make1("x", ("a",)), base, 0)


def test_identity_absorption_into_markers(pseudomonoid):
    sig = pseudomonoid.presentation.sig
    u = sig.make1("x", ("a",))
    expr = ELowL(0, u, EId(sig.make1("x", ("a",))))
    nf = normal_form_expr(sig, expr, 2)
    assert nf == EId(sig.make1("x", ("a", "a")))
