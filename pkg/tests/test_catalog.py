"""Built-in presentations: statistics, flags, rosters, shipped files."""

import pathlib

import pytest

from graypol import (
    BUILTIN_NAMES,
    get_builtin,
    length,
    list_builtins,
    parse_presentation,
    serialize_presentation,
    validate,
)

ROOT = pathlib.Path(__file__).resolve().parent.parent


def test_list_builtins():
    assert set(list_builtins()) == set(BUILTIN_NAMES)
    with pytest.raises(KeyError):
        get_builtin("nonsense")


def test_pseudomonoid_stats(pseudomonoid):
    sig = pseudomonoid.presentation.sig
    assert len(sig.two) == 2
    assert len(sig.three) == 3
    assert pseudomonoid.expected_critical == 5
    assert pseudomonoid.expected_strategy == "interp"


def test_frobenius_stats(frobenius):
    sig = frobenius.presentation.sig
    assert set(sig.two) == {"mu", "delta"}
    assert set(sig.three) == {"N", "N⁻", "A", "A°", "M", "M°"}
    assert frobenius.expected_critical == 19


def test_pseudoadjunction_stats(pseudoadjunction):
    sig = pseudoadjunction.presentation.sig
    assert set(sig.three) == {"N", "N⁻"}
    for name in sig.three:
        assert length(sig.gen3_source(name)) == 2
        assert length(sig.gen3_target(name)) == 0
    assert pseudoadjunction.expected_critical == 2


def test_validation_flags():
    assert validate(get_builtin("pseudomonoid").presentation).positive
    assert validate(get_builtin("frobenius").presentation).positive
    assert not validate(get_builtin("selfduality").presentation).positive
    for name in BUILTIN_NAMES:
        assert validate(get_builtin(name).presentation).ok


def test_tile_rosters(pseudomonoid, pseudoadjunction, selfduality, frobenius):
    assert pseudomonoid.tile_names == tuple(f"R{i}" for i in range(1, 6))
    assert pseudoadjunction.tile_names == ("R1", "R2")
    assert selfduality.tile_names == ("R1", "R2")
    assert frobenius.tile_names == tuple(f"R{i}" for i in range(1, 20))


def test_tiles_have_parallel_sides():
    for name in BUILTIN_NAMES:
        pres = get_builtin(name).presentation
        sig = pres.sig
        for tile in pres.tiles:
            sig.check3(tile.lhs)
            sig.check3(tile.rhs)
            assert sig.source(tile.lhs) == sig.source(tile.rhs)
            assert sig.target(tile.lhs) == sig.target(tile.rhs)


def test_tiles_match_computed_joins(pseudomonoid):
    from graypol import certify_termination, enumerate_critical, join_branching

    pres = pseudomonoid.presentation
    sig = pres.sig
    cert = certify_termination(pres, "interp", pseudomonoid.interpretation)
    for tile, cb in zip(pres.tiles, enumerate_critical(pres)):
        rec = join_branching(pres, cb.branching, cert)
        assert tile.lhs == sig.compose(sig.step_cell(cb.branching.s1), rec.f1, 2)
        assert tile.rhs == sig.compose(sig.step_cell(cb.branching.s2), rec.f2, 2)


def test_round_trip_is_identity():
    for name in BUILTIN_NAMES:
        entry = get_builtin(name)
        text = serialize_presentation(entry.presentation)
        again = parse_presentation(text)
        assert again == entry.presentation
        assert serialize_presentation(again) == text


def test_shipped_files_parse_to_catalog_entries():
    for name in BUILTIN_NAMES:
        path = ROOT / "presentations" / f"{name}.gray"
        text = path.read_text(encoding="utf-8")
        assert parse_presentation(text) == get_builtin(name).presentation


def test_qmode_entry(selfduality_q):
    pres = selfduality_q.presentation
    assert pres.qmode is not None
    assert pres.qmode.eta == "eta" and pres.qmode.eps == "eps"
    assert selfduality_q.expected_strategy == "selfdual"
