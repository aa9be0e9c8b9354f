"""Bit-packed binary vectors.

Vectors live in Python integers: bit i of ``bits`` is coordinate i, so the
byte serialization is little-endian with LSB-first packing inside each byte.
Addition over GF(2) is integer XOR.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class BitVector:
    bits: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"vector length must be positive, got {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ParameterError("bits outside the declared length")

    def __len__(self):
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def xor(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ParameterError("length mismatch in xor")
        return BitVector(self.bits ^ other.bits, self.n)

    __xor__ = xor

    def rotl(self, s: int) -> "BitVector":
        """Cyclic left rotation: coordinate i moves to (i + s) mod n."""
        s %= self.n
        if s == 0:
            return self
        mask = (1 << self.n) - 1
        return BitVector(((self.bits << s) | (self.bits >> (self.n - s))) & mask, self.n)

    def flip(self, i: int) -> "BitVector":
        if not 0 <= i < self.n:
            raise IndexError(i)
        return BitVector(self.bits ^ (1 << i), self.n)

    def support(self) -> list[int]:
        """Positions of the set bits, ascending."""
        out = []
        b = self.bits
        while b:
            lsb = b & -b
            out.append(lsb.bit_length() - 1)
            b ^= lsb
        return out

    # --- construction -------------------------------------------------

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(0, n)

    @classmethod
    def from_support(cls, n: int, support) -> "BitVector":
        bits = 0
        for i in support:
            if not 0 <= i < n:
                raise ParameterError(f"support position {i} outside [0, {n})")
            bits |= 1 << i
        return cls(bits, n)

    @classmethod
    def random(cls, n: int, rng) -> "BitVector":
        return cls(rng.getrandbits(n), n)

    @classmethod
    def random_weight(cls, n: int, w: int, rng) -> "BitVector":
        """Uniform vector of exact weight w (partial Fisher-Yates draw)."""
        if not 0 <= w <= n:
            raise ParameterError(f"weight {w} outside [0, {n}]")
        if w == 0:
            return cls(0, n)
        return cls.from_support(n, rng.sample(range(n), w))

    # --- splitting / joining ------------------------------------------

    def split(self, width: int) -> list["BitVector"]:
        """Cut into n/width consecutive chunks (low bits first)."""
        if width < 1 or self.n % width:
            raise ParameterError(f"length {self.n} not a multiple of {width}")
        mask = (1 << width) - 1
        return [BitVector((self.bits >> (i * width)) & mask, width)
                for i in range(self.n // width)]

    def take(self, count: int) -> "BitVector":
        """The first `count` coordinates."""
        if not 1 <= count <= self.n:
            raise ParameterError(f"cannot take {count} of {self.n} bits")
        return BitVector(self.bits & ((1 << count) - 1), count)

    @classmethod
    def join(cls, parts) -> "BitVector":
        bits, n = 0, 0
        for part in parts:
            bits |= part.bits << n
            n += part.n
        return cls(bits, n)

    # --- conversions --------------------------------------------------

    def to_bytes(self) -> bytes:
        return self.bits.to_bytes((self.n + 7) // 8, "little")

    @classmethod
    def from_bytes(cls, data: bytes, n: int) -> "BitVector":
        if len(data) != (n + 7) // 8:
            raise ParameterError(f"expected {(n + 7) // 8} bytes for {n} bits, got {len(data)}")
        return cls(int.from_bytes(data, "little"), n)

    def to_array(self) -> np.ndarray:
        """One uint8 entry per coordinate."""
        raw = np.frombuffer(self.to_bytes(), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.n]

    @classmethod
    def from_array(cls, arr) -> "BitVector":
        arr = np.asarray(arr, dtype=np.uint8) & 1
        raw = np.packbits(arr, bitorder="little").tobytes()
        return cls(int.from_bytes(raw, "little"), len(arr))
