from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from walkgen.benchmarks import BENCHMARKS
from walkgen.encoding import (
    CodecLayout,
    decode_input,
    encode_input,
    field_width,
    format_bits,
    gray_decode,
    gray_encode,
    hamming,
)
from walkgen.parser import parse_program
from walkgen.syntax import VariableDomain


def test_zero_is_a_fixed_point():
    assert format_bits(gray_encode(0, 8), 8) == "00000000"


def test_seven_and_eight_are_one_flip_apart():
    assert hamming(gray_encode(7, 8), gray_encode(8, 8)) == 1


def test_gray_of_seven():
    assert format_bits(gray_encode(7, 4), 4) == "0100"


def test_four_bit_gray_sequence_is_reflected():
    codes = [gray_encode(n, 4) for n in range(16)]
    assert len(set(codes)) == 16
    assert all(hamming(a, b) == 1 for a, b in zip(codes, codes[1:]))
    assert codes[:8] == [0b0000, 0b0001, 0b0011, 0b0010, 0b0110, 0b0111, 0b0101, 0b0100]


def test_out_of_range_encode_fails():
    with pytest.raises(ValueError):
        gray_encode(16, 4)
    with pytest.raises(ValueError):
        gray_encode(-1)


@given(st.integers(0, 2**70))
def test_gray_decode_inverts_encode(n):
    assert gray_decode(gray_encode(n)) == n


def test_real_field_width():
    d = VariableDomain("x", "real", Decimal(-100000), Decimal(100000), 3)
    assert field_width(d.raw_max - d.raw_min) == 28
    assert CodecLayout([d]).width == 28


def test_int32_layout_width(tri_int):
    layout = CodecLayout(tri_int.variables)
    assert layout.width == 96
    assert len(layout.neighbors(0)) == 96


def test_real_minimum_encodes_to_zero_field():
    m = parse_program("var a: real(-5, 5, 1)\nvar b: int32\nb = b;")
    layout = CodecLayout(m.variables)
    bits = encode_input(("-5.0", 0), m.variables)
    assert layout.split(bits)[0] == 0
    # int32 uses an offset of 2**31: zero sits in the middle of the field
    assert layout.split(bits)[1] == gray_encode(2**31)


def test_first_variable_occupies_the_leftmost_bits():
    m = parse_program("var a: real(0, 3, 0)\nvar b: real(0, 3, 0)\na = a;")
    layout = CodecLayout(m.variables)
    assert format_bits(encode_input((2, 0), m.variables), layout.width) == "1100"
    assert format_bits(encode_input((0, 1), m.variables), layout.width) == "0001"


def test_neighbors_of_zero_in_three_bits():
    m = parse_program("var a: real(0, 7, 0)\na = a;")
    layout = CodecLayout(m.variables)
    assert [format_bits(b, 3) for b in layout.neighbors(0)] == ["100", "010", "001"]


def test_decode_clamps_above_span():
    m = parse_program("var a: real(0, 4, 0)\na = a;")
    layout = CodecLayout(m.variables)
    assert layout.width == 3
    assert [layout.decode(gray_encode(n))[0] for n in range(8)] == [0, 1, 2, 3, 4, 4, 4, 4]
    with pytest.raises(ValueError):
        layout.decode(1 << 3)


def test_flip_positions_agree_with_neighbors(tri_int):
    layout = CodecLayout(tri_int.variables)
    bits = encode_input((5, -7, 123456), tri_int.variables)
    grays = layout.split(bits)
    for (field, mask), neighbor in zip(layout.flip_positions(), layout.neighbors(bits)):
        flipped = list(grays)
        flipped[field] ^= mask
        assert layout.join(flipped) == neighbor


@pytest.mark.parametrize("name", sorted(BENCHMARKS))
def test_benchmark_layouts_round_trip(name):
    model = BENCHMARKS[name].model()
    layout = CodecLayout(model.variables)

    @given(st.tuples(*[st.integers(v.raw_min, v.raw_max) for v in model.variables]))
    def check(raw):
        bits = layout.encode(raw)
        assert bits >> layout.width == 0
        assert layout.decode(bits) == raw
        neighbors = layout.neighbors(bits)
        assert len(set(neighbors)) == layout.width
        assert all(hamming(bits, n) == 1 for n in neighbors)

    check()


@given(st.integers(0, 2**12))
def test_public_values_round_trip(offset):
    m = parse_program("var a: real(-2, 3, 3)\nvar b: int32\na = a;")
    value = Decimal(offset - 2000).scaleb(-3)
    bits = encode_input((value, -offset), m.variables)
    assert decode_input(bits, m.variables) == (value, -offset)
