"""Gray-code encoding of input vectors.

Each variable becomes a fixed-width field holding the binary-reflected Gray
code of its offset from the domain minimum (``int32`` uses a ``2**31``
bias, reals their scaled offset).  Fields are concatenated in declaration
order, the first variable in the most significant bits, so bit ``0`` of a
bitstring is its leftmost bit.  Bitstrings are plain Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass


def gray_encode(n: int, width: int | None = None) -> int:
    if n < 0 or (width is not None and n >= 1 << width):
        raise ValueError(f"{n} does not fit in {width} bits")
    return n ^ (n >> 1)


def gray_decode(g: int) -> int:
    n = g
    shift = 1
    while g >> shift:
        n ^= g >> shift
        shift += 1
    return n


def _gray_decode_fast(g: int) -> int:
    g ^= g >> 32
    g ^= g >> 16
    g ^= g >> 8
    g ^= g >> 4
    g ^= g >> 2
    g ^= g >> 1
    return g


def field_width(span: int) -> int:
    """Bits needed for offsets ``0..span``, i.e. ``ceil(log2(span + 1))``."""
    return max(1, span.bit_length())


def format_bits(bits: int, width: int) -> str:
    return format(bits, f"0{width}b")


def hamming(a: int, b: int) -> int:
    return bin(a ^ b).count("1")


@dataclass(frozen=True)
class Field:
    name: str
    origin: int  # raw value encoded as offset 0
    span: int  # largest legal offset
    width: int
    shift: int  # position of the field's least significant bit


class CodecLayout:
    """Bijection between raw input vectors and ``width``-bit Gray strings."""

    def __init__(self, variables):
        fields = []
        for v in variables:
            origin = v.raw_min
            span = v.raw_max - v.raw_min
            fields.append([v.name, origin, span, field_width(span)])
        total = sum(f[3] for f in fields)
        shift = total
        self.fields = []
        for name, origin, span, width in fields:
            shift -= width
            self.fields.append(Field(name, origin, span, width, shift))
        self.width = total
        if self.width <= 0:
            raise ValueError("layout needs at least one variable")

    def __repr__(self):
        parts = ", ".join(f"{f.name}:{f.width}" for f in self.fields)
        return f"CodecLayout({parts}; W={self.width})"

    def encode_field(self, index: int, raw: int) -> int:
        f = self.fields[index]
        offset = raw - f.origin
        if not 0 <= offset <= f.span:
            raise ValueError(f"{f.name}: raw value {raw} outside domain")
        return offset ^ (offset >> 1)

    def decode_field(self, index: int, gray: int) -> int:
        f = self.fields[index]
        offset = _gray_decode_fast(gray) if f.width <= 64 else gray_decode(gray)
        if offset > f.span:
            offset = f.span
        return f.origin + offset

    def encode(self, raw_vector) -> int:
        bits = 0
        for i, raw in enumerate(raw_vector):
            bits |= self.encode_field(i, raw) << self.fields[i].shift
        return bits

    def split(self, bits: int) -> list[int]:
        return [(bits >> f.shift) & ((1 << f.width) - 1) for f in self.fields]

    def join(self, grays) -> int:
        bits = 0
        for f, g in zip(self.fields, grays):
            bits |= g << f.shift
        return bits

    def decode(self, bits: int) -> tuple:
        if bits < 0 or bits >> self.width:
            raise ValueError(f"bitstring wider than {self.width} bits")
        return tuple(self.decode_field(i, g) for i, g in enumerate(self.split(bits)))

    def neighbors(self, bits: int) -> list[int]:
        """All strings at Hamming distance 1; the i-th flips bit i from the left."""
        return [bits ^ (1 << (self.width - 1 - i)) for i in range(self.width)]

    def flip_positions(self):
        """``(field index, bit mask)`` per bit position, leftmost first."""
        out = []
        for index, f in enumerate(self.fields):
            for b in range(f.width - 1, -1, -1):
                out.append((index, 1 << b))
        return out


def encode_input(values, variables) -> int:
    layout = CodecLayout(variables)
    return layout.encode([d.to_raw(v) for d, v in zip(variables, values)])


def decode_input(bits: int, variables) -> tuple:
    layout = CodecLayout(variables)
    return tuple(d.from_raw(r) for d, r in zip(variables, layout.decode(bits)))
