"""
BitString - immutable MSB-first bit sequence shared by every layer.
"""
from typing import Iterable, Iterator, Union

import numpy as np


class BitString:
    """
    Ordered, immutable sequence of bits.

    Bits are stored as a read-only uint8 numpy array. Conversion to and from
    bytes is MSB-first within each byte.
    """

    __slots__ = ('_bits',)

    def __init__(self, bits: Union[Iterable[int], np.ndarray] = ()):
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits)
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("bits must be 0 or 1")
        arr = arr.astype(np.uint8).reshape(-1).copy()
        arr.flags.writeable = False
        self._bits = arr

    @classmethod
    def from_bytes(cls, data: bytes) -> 'BitString':
        return cls(np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8)))

    @classmethod
    def from_str(cls, text: str) -> 'BitString':
        text = text.replace(' ', '').replace('_', '')
        if any(ch not in '01' for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls([int(ch) for ch in text])

    @classmethod
    def from_int(cls, value: int, width: int) -> 'BitString':
        if value < 0 or value >= (1 << width):
            raise ValueError(f"{value} does not fit in {width} bits")
        return cls([(value >> (width - 1 - i)) & 1 for i in range(width)])

    @classmethod
    def zeros(cls, n: int) -> 'BitString':
        return cls(np.zeros(n, dtype=np.uint8))

    def to_bytes(self) -> bytes:
        """Pack into bytes; a trailing partial byte is zero-filled."""
        return np.packbits(self._bits).tobytes()

    def to_int(self) -> int:
        value = 0
        for bit in self._bits:
            value = (value << 1) | int(bit)
        return value

    def to_str(self) -> str:
        return ''.join('1' if b else '0' for b in self._bits)

    def as_array(self) -> np.ndarray:
        return self._bits

    def flip(self, index: int) -> 'BitString':
        arr = self._bits.copy()
        arr[index] ^= 1
        return BitString(arr)

    def pad_to_multiple(self, k: int) -> 'BitString':
        extra = (-len(self)) % k
        return self + BitString.zeros(extra) if extra else self

    def __len__(self) -> int:
        return int(self._bits.size)

    def __iter__(self) -> Iterator[int]:
        return (int(b) for b in self._bits)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return BitString(self._bits[key])
        return int(self._bits[key])

    def __add__(self, other: 'BitString') -> 'BitString':
        return BitString(np.concatenate([self._bits, other._bits]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash(self._bits.tobytes())

    def __repr__(self) -> str:
        text = self.to_str()
        if len(text) > 40:
            text = text[:40] + '...'
        return f"BitString('{text}', n={len(self)})"

    @staticmethod
    def concat(parts: Iterable['BitString']) -> 'BitString':
        arrays = [p._bits for p in parts]
        if not arrays:
            return BitString()
        return BitString(np.concatenate(arrays))
