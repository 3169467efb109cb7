"""Bit-level helpers: Elias-delta codes, a bit writer and packed int arrays."""
import struct

import numpy as np

from ..errors import TruncatedError

# widest delta code for a value < 2**64 is 76 bits; a 12-byte window always covers it
_WINDOW = 12
_WINDOW_BITS = 8 * _WINDOW


def delta_length(v):
    """Number of bits in the Elias-delta code of ``v`` (``v >= 1``)."""
    nb = v.bit_length()
    lb = nb.bit_length()
    return 2 * lb - 1 + nb - 1


class BitWriter:
    """Append-only MSB-first bit sink."""

    def __init__(self):
        self._buf = bytearray()
        self._acc = 0
        self._nacc = 0
        self.nbits = 0

    def write(self, value, width):
        if width == 0:
            return
        self._acc = (self._acc << width) | value
        self._nacc += width
        self.nbits += width
        while self._nacc >= 8:
            self._nacc -= 8
            self._buf.append((self._acc >> self._nacc) & 0xFF)
        self._acc &= (1 << self._nacc) - 1

    def write_delta(self, v):
        if v < 1:
            raise ValueError("delta codes need positive integers, got %d" % v)
        nb = v.bit_length()
        lb = nb.bit_length()
        self.write(0, lb - 1)
        self.write(nb, lb)
        self.write(v & ((1 << (nb - 1)) - 1), nb - 1)

    def getvalue(self, pad=_WINDOW):
        """Finished byte string, zero padded so windowed reads never run short."""
        out = bytearray(self._buf)
        if self._nacc:
            out.append((self._acc << (8 - self._nacc)) & 0xFF)
        out.extend(bytes(pad))
        return bytes(out)


def read_delta(buf, off):
    """Decode one delta code at bit offset ``off``; returns (value, next offset)."""
    byte = off >> 3
    avail = _WINDOW_BITS - (off & 7)
    w = int.from_bytes(buf[byte:byte + _WINDOW], "big") & ((1 << avail) - 1)
    lz = avail - w.bit_length()
    lb = lz + 1
    rest = avail - lz - lb
    nb = (w >> rest) & ((1 << lb) - 1)
    rest -= nb - 1
    v = (1 << (nb - 1)) | ((w >> rest) & ((1 << (nb - 1)) - 1))
    return v, off + lz + lb + nb - 1


def width_for(max_value):
    """Bits needed to store values in [0, max_value]."""
    return max(1, int(max_value).bit_length())


def pack_ints(values, width=None):
    """Pack non-negative ints into a little-endian bit stream of fixed width.

    Returns ``(width, payload)``.
    """
    vals = np.asarray(values, dtype=np.uint64)
    if width is None:
        width = width_for(int(vals.max()) if vals.size else 0)
    if vals.size == 0:
        return width, b""
    shifts = np.arange(width, dtype=np.uint64)
    bits = ((vals[:, None] >> shifts) & np.uint64(1)).astype(np.uint8)
    return width, np.packbits(bits.ravel(), bitorder="little").tobytes()


def unpack_ints(payload, width, count):
    if count == 0:
        return []
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8), bitorder="little")
    if bits.size < count * width:
        raise TruncatedError("packed array shorter than declared")
    bits = bits[:count * width].reshape(count, width).astype(np.uint64)
    weights = np.uint64(1) << np.arange(width, dtype=np.uint64)
    return (bits * weights).sum(axis=1, dtype=np.uint64).tolist()


class Reader:
    """Sequential little-endian reader over a bytes-like object."""

    def __init__(self, data, offset=0):
        self.data = data
        self.pos = offset

    def take(self, size):
        end = self.pos + size
        if end > len(self.data):
            raise TruncatedError()
        chunk = self.data[self.pos:end]
        self.pos = end
        return bytes(chunk)

    def u64(self):
        return struct.unpack("<Q", self.take(8))[0]

    def u8(self):
        return self.take(1)[0]

    def blob(self):
        return self.take(self.u64())

    def ints(self):
        width = self.u8()
        count = self.u64()
        return unpack_ints(self.blob(), width, count)


def u64(v):
    return struct.pack("<Q", v)


def blob(data):
    return u64(len(data)) + data


def ints(values, width=None):
    values = list(values)
    width, payload = pack_ints(values, width)
    return bytes([width]) + u64(len(values)) + blob(payload)
