"""Presentation grammar, cell notation, and renderer round-trips."""

import pytest

from graypol import (
    ParseError,
    parse_cell,
    parse_presentation,
    render_cell,
    serialize_presentation,
)
from graypol.textio import parse_two, parse_three, render_three

from conftest import random_two_cell


def test_empty_file_is_empty_presentation():
    pres = parse_presentation("")
    assert pres.sig.zero == ()
    assert not pres.sig.one and not pres.sig.two and not pres.sig.three
    assert not pres.tiles


def test_comments_and_blanks_ignored():
    pres = parse_presentation("# hello\n\npresentation t\n0 x  # a point\n")
    assert pres.name == "t"
    assert pres.sig.zero == ("x",)


def test_grammar_example_parses(pseudomonoid):
    text = (
        "presentation pseudomonoid\n"
        "0 x\n"
        "1 a : x -> x\n"
        "2 mu : a a => a\n"
        "2 eta : @x => a\n"
        "3 A : [.|mu|a];[.|mu|.] => [a|mu|.];[.|mu|.]\n"
        "3 L : [.|eta|a];[.|mu|.] => id(a)\n"
        "3 R : [a|eta|.];[.|mu|.] => id(a)\n"
    )
    pres = parse_presentation(text)
    assert pres.sig == pseudomonoid.presentation.sig


def test_mismatched_endpoints_name_the_generator():
    text = "presentation bad\n0 x\n0 y\n1 f : x -> y\n2 m : f f => f\n"
    with pytest.raises(ParseError) as err:
        parse_presentation(text)
    assert "m" in str(err.value)
    assert "line 5" in str(err.value)


def test_unknown_directive_reports_line():
    with pytest.raises(ParseError) as err:
        parse_presentation("presentation p\nbogus line here\n")
    assert "line 2" in str(err.value)


def test_linear_rendering_notation(pseudomonoid):
    sig = pseudomonoid.presentation.sig
    mu = sig.gen2_cell("mu")
    two = sig.make1("x", ("a", "a"))
    one = sig.make1("x", ("a",))
    cell = sig.compose(
        sig.compose(
            sig.whisker0(sig.id1("x"), mu, two), sig.whisker0(one, mu, sig.id1("x")), 1
        ),
        mu,
        1,
    )
    assert render_cell(sig, cell) == "(0|mu|2);(1|mu|0);(0|mu|0)"
    assert render_cell(sig, sig.id2(two)) == "id(a a)"
    assert parse_cell(sig, "(0|mu|2);(1|mu|0);(0|mu|0)") == cell


def test_round_trip_random_cells(pseudomonoid, pseudoadjunction, rng):
    for entry in (pseudomonoid, pseudoadjunction):
        sig = entry.presentation.sig
        for _ in range(500):
            cell = random_two_cell(sig, rng, rows=rng.randrange(5))
            assert parse_cell(sig, render_cell(sig, cell)) == cell


def test_three_cell_round_trip(pseudomonoid):
    pres = pseudomonoid.presentation
    sig = pres.sig
    for tile in pres.tiles:
        for side in (tile.lhs, tile.rhs):
            assert parse_three(sig, render_three(sig, side), None) == side


def test_one_cell_round_trip(pseudoadjunction):
    sig = pseudoadjunction.presentation.sig
    fg = sig.make1("x", ("f", "g"))
    assert parse_cell(sig, render_cell(sig, fg)) == fg
    empty = sig.id1("y")
    assert render_cell(sig, empty) == "@y"
    assert parse_cell(sig, "@y") == empty


def test_whisker_word_inference(pseudoadjunction):
    sig = pseudoadjunction.presentation.sig
    cell = parse_two(sig, "[.|eta|f]")
    assert cell.whiskers[0].left == sig.id1("x")
    assert cell.whiskers[0].right == sig.make1("x", ("f",))


def test_ascii_and_tikz_render(pseudomonoid):
    sig = pseudomonoid.presentation.sig
    cell = sig.gen3_source("A")
    art = render_cell(sig, cell, "ascii")
    assert "mu" in art
    tikz = render_cell(sig, cell, "tikz")
    assert tikz.startswith("\\begin{tikzpicture}")
    assert tikz.endswith("\\end{tikzpicture}")


def test_q_interchanger_round_trip(selfduality_q):
    pres = selfduality_q.presentation
    sig = pres.sig
    from graypol import QInterchanger

    inst = QInterchanger("eta", sig.make1("x", ("a",)), "eta", rev=True)
    cell = sig.gen3_cell(inst)
    text = render_three(sig, cell)
    assert "X'(" in text
    assert parse_three(sig, text, pres.qmode) == cell


def test_unbalanced_brackets_raise(pseudomonoid):
    sig = pseudomonoid.presentation.sig
    with pytest.raises(ParseError):
        parse_two(sig, "[.|mu|a];[.|mu|.")


def test_serialize_stable(pseudomonoid):
    text = serialize_presentation(pseudomonoid.presentation)
    assert text == serialize_presentation(parse_presentation(text))
