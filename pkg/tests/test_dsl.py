import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tqft2d import dsl
from tqft2d.cobordism import compose, evaluate, generator
from tqft2d.dsl import ArityError, ExprSyntaxError, Gen, Seq, Surf, Tensor, arity, parse, pretty
from tqft2d.linalg import max_norm

from conftest import random_algebra

CORPUS = [
    "id",
    "mul ; counit",
    "comul ; mul",
    "unit * unit ; mul",
    "(comul ; mul) ; (comul ; mul)",
    "comul ; (mul ; comul) ; mul",
    "swap ; mul ; comul ; id * id",
    "surf(2, 1, 3) ; mul * id ; mul",
    "unit * (id * swap)",
    "(unit * id) * swap",
    "  surf( 0 ,0, 0 )",
    "comul;\n  id * comul ;\nmul * id ; mul",
]


def test_seq_of_generators():
    e = parse("mul ; counit")
    assert e == Seq(Gen("mul"), Gen("counit"))
    assert arity(e) == (2, 0)


def test_handle_expression():
    e = parse("comul ; mul")
    assert arity(e) == (1, 1)
    assert dsl.to_cobordism(e) == compose(generator("comul"), generator("mul"))


def test_arity_error_names_both_sides():
    with pytest.raises(ArityError) as info:
        parse("counit ; mul")
    msg = str(info.value)
    assert "'counit'" in msg and "'mul'" in msg and "0 outputs" in msg and "2 inputs" in msg


def test_precedence():
    assert parse("mul * id ; mul") == Seq(Tensor(Gen("mul"), Gen("id")), Gen("mul"))
    assert parse("id ; id * id ; mul", check=False) == Seq(Seq(Gen("id"), Tensor(Gen("id"), Gen("id"))), Gen("mul"))


def test_spans():
    e = parse("comul ;\n  mul")
    assert e.span == ((1, 1), (2, 6))
    assert e.second.span == ((2, 3), (2, 6))
    s = parse("surf(1,2,3)")
    assert s == Surf(1, 2, 3) and s.span == ((1, 1), (1, 12))


@pytest.mark.parametrize(
    "src, line, col",
    [
        ("mul ;", 1, 6),
        ("mul ; ; id", 1, 7),
        ("foo", 1, 1),
        ("mul\n  ; $", 2, 5),
        ("surf(1, 2)", 1, 10),
        ("(id ; id", 1, 9),
        ("id id", 1, 4),
        ("surf(1,-2,3)", 1, 8),
    ],
)
def test_syntax_errors(src, line, col):
    with pytest.raises(ExprSyntaxError) as info:
        parse(src)
    assert (info.value.line, info.value.col) == (line, col)


@pytest.mark.parametrize("src", CORPUS)
def test_roundtrip_corpus(src):
    e = parse(src)
    assert parse(pretty(e)) == e


names = st.sampled_from(dsl.GENERATOR_NAMES)
small = st.integers(0, 3)
exprs = st.recursive(
    st.one_of(names.map(Gen), st.builds(Surf, small, small, small)),
    lambda kids: st.one_of(st.builds(Tensor, kids, kids), st.builds(Seq, kids, kids)),
    max_leaves=12,
)


@given(exprs)
def test_roundtrip_generated(e):
    # arity is irrelevant for the printer, so parse unchecked
    assert parse(pretty(e), check=False) == e


@pytest.mark.parametrize("g, m, n", [(0, 0, 0), (0, 0, 1), (1, 1, 1), (2, 2, 1), (0, 3, 2), (1, 0, 3), (3, 2, 0)])
def test_surf_matches_generator_word(rng, g, m, n):
    a = random_algebra(rng, max_dim=3).algebra
    word = dsl.surf_word(g, m, n)
    assert arity(word) == (m, n)
    z_surf = evaluate(a, dsl.to_cobordism(Surf(g, m, n)))
    z_word = dsl.evaluate_direct(a, word)
    assert max_norm(z_surf - z_word) <= 1e-9 * max(max_norm(z_word), 1)
    assert dsl.to_cobordism(word) == dsl.to_cobordism(Surf(g, m, n))


@pytest.mark.parametrize("src", CORPUS)
def test_two_evaluators_agree(rng, src):
    a = random_algebra(rng, max_dim=3).algebra
    z1 = dsl.evaluate_expr(a, src)
    z2 = dsl.evaluate_direct(a, parse(src))
    assert max_norm(z1 - z2) <= 1e-9 * max(max_norm(z2), 1)


def test_swap_matrix(rng):
    a = random_algebra(rng, max_dim=3).algebra
    assert np.allclose(dsl.generator_matrix(a, "swap"), evaluate(a, generator("swap")))
