"""
Golden exponents for the motif atlas.

Each entry lists the pieces over (2, 3) as (a, b, c, log_power) for the
exponent a + b*tau + c/(tau-1), together with the interior breakpoints.
"""

from fractions import Fraction as F

import pytest

from src.models.variational_model import VariationMode, piecewise
from src.motifs.catalog import ATLAS, parse_motif

FREE = VariationMode.FREE_MOTIF
TYPICAL = VariationMode.TYPICAL_MOTIF
FREE_GRAPHLET = VariationMode.FREE_GRAPHLET
TYPICAL_GRAPHLET = VariationMode.TYPICAL_GRAPHLET


def _pieces(name, mode):
    pw = piecewise(parse_motif(name), mode)
    return [(p.exponent.a, p.exponent.b, p.exponent.c, p.exponent.log_power) for p in pw.pieces]


SINGLE_PIECE = [
    ("triangle", FREE, (F(9, 2), F(-3, 2), F(0), 0)),
    ("wedge", FREE, (F(4), F(-1), F(0), 0)),
    ("claw", FREE, (F(5), F(-1), F(0), 0)),
    ("k4", FREE, (F(6), F(-2), F(0), 0)),
    ("square", FREE, (F(6), F(-2), F(0), 1)),
    ("path5", FREE, (F(7), F(-2), F(0), 0)),
    ("claw", TYPICAL, (F(0), F(0), F(3), 0)),
    ("star4", TYPICAL, (F(0), F(0), F(4), 0)),
    ("path", TYPICAL, (F(4), F(-1), F(0), 1)),
    ("paw", TYPICAL, (F(7), F(-2), F(-1), 0)),
    ("k4", TYPICAL, (F(6), F(-2), F(0), 0)),
    ("diamond", TYPICAL, (F(6), F(-2), F(0), 1)),
    ("square", TYPICAL, (F(6), F(-2), F(0), 1)),
    ("dart", TYPICAL, (F(6), F(-2), F(1), 0)),
    ("path5", TYPICAL, (F(3), F(-1), F(2), 0)),
    ("square", FREE_GRAPHLET, (F(6), F(-2), F(0), 0)),
    ("square", TYPICAL_GRAPHLET, (F(6), F(-2), F(0), 0)),
]


@pytest.mark.parametrize("name,mode,expected", SINGLE_PIECE)
def test_single_piece_exponents(name, mode, expected):
    assert _pieces(name, mode) == [expected]


def test_bowtie_switches_from_sqrt_to_hub_at_seven_thirds():
    pw = piecewise(parse_motif("bowtie"), FREE)
    assert pw.breakpoints == (F(7, 3),)
    assert _pieces("bowtie", FREE) == [(F(15, 2), F(-5, 2), F(0), 0), (F(4), F(-1), F(0), 0)]


def test_tadpole_breakpoint():
    assert piecewise(parse_motif("tadpole"), FREE).breakpoints == (F(5, 2),)


def test_piece_at_breakpoint_returns_left_piece():
    pw = piecewise(parse_motif("bowtie"), FREE)
    assert pw.piece_at("7/3").exponent.key == (F(15, 2), F(-5, 2), F(0))
    assert pw.piece_at("12/5").exponent.key == (F(4), F(-1), F(0))


@pytest.mark.parametrize("mode", list(VariationMode))
def test_adjacent_pieces_differ_and_tile_the_interval(mode):
    for name in ATLAS:
        pieces = piecewise(parse_motif(name), mode).pieces
        assert pieces[0].lo == 2 and pieces[-1].hi == 3, name
        for left, right in zip(pieces, pieces[1:]):
            assert left.hi == right.lo, name
            assert left.exponent.key != right.exponent.key, name


def test_unique_pieces_have_no_log_factor():
    for mode in VariationMode:
        for name in ATLAS:
            for piece in piecewise(parse_motif(name), mode).pieces:
                assert piece.unique == (piece.exponent.log_power == 0)


SQRT_FIVE = (F(15, 2), F(-5, 2), F(0), 0)

FREE_ATLAS = {
    "triangle": [(F(9, 2), F(-3, 2), F(0), 0)],
    "wedge": [(F(4), F(-1), F(0), 0)],
    "k4": [(F(6), F(-2), F(0), 0)],
    "diamond": [(F(6), F(-2), F(0), 1)],
    "square": [(F(6), F(-2), F(0), 1)],
    "paw": [(F(4), F(-1), F(0), 0)],
    "claw": [(F(5), F(-1), F(0), 0)],
    "path": [(F(4), F(-1), F(0), 1)],
    "k5": [SQRT_FIVE],
    "k5e": [SQRT_FIVE],
    "k4_fan": [SQRT_FIVE],
    "wheel": [SQRT_FIVE],
    "k4_pendant": [(F(13, 2), F(-2), F(0), 0)],
    "wheel_spoke": [SQRT_FIVE],
    "gem": [SQRT_FIVE],
    "book3": [(F(7), F(-2), F(0), 0)],
    "bowtie": [SQRT_FIVE, (F(4), F(-1), F(0), 0)],
    "kite": [(F(13, 2), F(-2), F(0), 0)],
    "dart": [(F(7), F(-2), F(0), 0)],
    "house": [SQRT_FIVE],
    "k23": [(F(7), F(-2), F(0), 0)],
    "tadpole": [(F(13, 2), F(-2), F(0), 0), (F(4), F(-1), F(0), 0)],
    "c5": [SQRT_FIVE],
    "cricket": [(F(5), F(-1), F(0), 0)],
    "bull": [(F(7), F(-2), F(0), 0)],
    "banner": [(F(7), F(-2), F(0), 0)],
    "path5": [(F(7), F(-2), F(0), 0)],
    "fork": [(F(5), F(-1), F(0), 0)],
    "star4": [(F(6), F(-1), F(0), 0)],
}

TYPICAL_ATLAS = {
    "triangle": [(F(9, 2), F(-3, 2), F(0), 0)],
    "wedge": [(F(0), F(0), F(2), 0)],
    "k4": [(F(6), F(-2), F(0), 0)],
    "diamond": [(F(6), F(-2), F(0), 1)],
    "square": [(F(6), F(-2), F(0), 1)],
    "paw": [(F(7), F(-2), F(-1), 0)],
    "claw": [(F(0), F(0), F(3), 0)],
    "path": [(F(4), F(-1), F(0), 1)],
    "k5": [SQRT_FIVE],
    "k5e": [SQRT_FIVE],
    "k4_fan": [SQRT_FIVE],
    "wheel": [SQRT_FIVE],
    "k4_pendant": [(F(13, 2), F(-2), F(0), 0)],
    "wheel_spoke": [SQRT_FIVE],
    "gem": [SQRT_FIVE],
    "book3": [(F(9), F(-3), F(0), 0)],
    "bowtie": [SQRT_FIVE, (F(14), F(-4), F(-4), 0)],
    "kite": [(F(13, 2), F(-2), F(0), 0)],
    "dart": [(F(6), F(-2), F(1), 0)],
    "house": [SQRT_FIVE],
    "k23": [(F(9), F(-3), F(0), 0)],
    "tadpole": [(F(13, 2), F(-2), F(0), 0), (F(11), F(-3), F(-3), 0)],
    "c5": [SQRT_FIVE],
    "cricket": [(F(7), F(-2), F(0), 0)],
    "bull": [(F(3), F(-1), F(2), 0)],
    "banner": [(F(6), F(-2), F(1), 0)],
    "path5": [(F(3), F(-1), F(2), 0)],
    "fork": [(F(4), F(-1), F(1), 0)],
    "star4": [(F(0), F(0), F(4), 0)],
}

TYPICAL_GRAPHLET_SMALL = {
    "triangle": [(F(9, 2), F(-3, 2), F(0), 0)],
    "wedge": [(F(0), F(0), F(2), 0)],
    "k4": [(F(6), F(-2), F(0), 0)],
    "diamond": [(F(6), F(-2), F(0), 1)],
    "square": [(F(6), F(-2), F(0), 0)],
    "paw": [(F(7), F(-2), F(-1), 0)],
    "claw": [(F(0), F(0), F(3), 0)],
    "path": [(F(4), F(-1), F(0), 1)],
}

BREAKPOINTS = {
    ("bowtie", FREE): (F(7, 3),),
    ("tadpole", FREE): (F(5, 2),),
    ("bowtie", TYPICAL): (F(7, 3),),
    ("tadpole", TYPICAL): (F(5, 2),),
}


def test_golden_tables_cover_the_atlas():
    assert set(FREE_ATLAS) == set(ATLAS)
    assert set(TYPICAL_ATLAS) == set(ATLAS)


@pytest.mark.parametrize("name", ATLAS)
def test_free_atlas_exponents(name):
    assert _pieces(name, FREE) == FREE_ATLAS[name]
    assert piecewise(parse_motif(name), FREE).breakpoints == BREAKPOINTS.get((name, FREE), ())


@pytest.mark.parametrize("name", ATLAS)
def test_typical_atlas_exponents(name):
    assert _pieces(name, TYPICAL) == TYPICAL_ATLAS[name]
    assert piecewise(parse_motif(name), TYPICAL).breakpoints == BREAKPOINTS.get((name, TYPICAL), ())


@pytest.mark.parametrize("name", sorted(TYPICAL_GRAPHLET_SMALL))
def test_typical_graphlet_exponents_on_four_vertices(name):
    assert _pieces(name, TYPICAL_GRAPHLET) == TYPICAL_GRAPHLET_SMALL[name]
