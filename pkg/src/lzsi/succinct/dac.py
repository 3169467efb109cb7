"""Directly addressable codes: chunked variable-length integers with random access."""
from ..errors import OutOfRangeError, ValidationError
from . import bits as _bits
from .plain import PlainBitmap


class DAC:
    """Values split into b-bit chunks, least significant first.

    Level k holds the k-th chunk of every value that has one; a bitmap per
    level flags the values that continue, and rank over it locates the
    next chunk.
    """

    __slots__ = ("chunk_width", "length", "chunks", "cont")

    def __init__(self, values=(), chunk_width=4):
        if chunk_width < 1:
            raise ValidationError("chunk width must be >= 1")
        vals = [int(v) for v in values]
        if any(v < 0 for v in vals):
            raise ValidationError("DAC stores non-negative integers only")
        self.chunk_width = chunk_width
        self.length = len(vals)
        mask = (1 << chunk_width) - 1
        self.chunks = []
        self.cont = []
        cur = vals
        while cur:
            self.chunks.append([v & mask for v in cur])
            rest = [v >> chunk_width for v in cur]
            flags = [r > 0 for r in rest]
            self.cont.append(PlainBitmap(flags))
            cur = [r for r in rest if r > 0]

    def __len__(self):
        return self.length

    @property
    def levels(self):
        return len(self.chunks)

    def access(self, i):
        if not 1 <= i <= self.length:
            raise OutOfRangeError("DAC index %d outside [1, %d]" % (i, self.length))
        idx = i - 1
        value = self.chunks[0][idx]
        shift = self.chunk_width
        level = 0
        while self.cont[level][idx + 1]:
            idx = self.cont[level].rank1(idx)
            level += 1
            value |= self.chunks[level][idx] << shift
            shift += self.chunk_width
        return value

    __getitem__ = access

    def to_list(self):
        return [self.access(i) for i in range(1, self.length + 1)]

    def to_bytes(self):
        out = [_bits.u64(self.chunk_width), _bits.u64(self.levels)]
        for chunk, cont in zip(self.chunks, self.cont):
            out.append(_bits.ints(chunk, self.chunk_width))
            out.append(cont.to_bytes())
        return b"".join(out)

    @classmethod
    def read(cls, reader):
        d = cls.__new__(cls)
        d.chunk_width = reader.u64()
        nlevels = reader.u64()
        d.chunks, d.cont = [], []
        for _ in range(nlevels):
            d.chunks.append(reader.ints())
            d.cont.append(PlainBitmap.read(reader))
        d.length = len(d.chunks[0]) if d.chunks else 0
        return d

    def __repr__(self):
        return "DAC(length=%d, chunk_width=%d, levels=%d)" % (self.length, self.chunk_width, self.levels)
