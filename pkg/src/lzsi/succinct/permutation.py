"""Permutation with O(1) forward access and O(l) inverse via cycle shortcuts."""
import numpy as np

from ..errors import OutOfRangeError, ValidationError
from . import bits as _bits
from .plain import PlainBitmap


class Permutation:
    """Bijection on [1, n] answering ``apply`` directly and ``inverse`` by
    walking forward along the cycle.

    Along every cycle longer than ``l`` every l-th element is flagged and
    keeps a back-pointer to the previous flagged element of its cycle.  An
    inverse query walks forward to the first flag (at most l steps), jumps
    back once, and walks forward again to the predecessor.
    """

    __slots__ = ("n", "period", "_fwd", "_flags", "_back")

    def __init__(self, forward, period=1):
        fwd = [int(v) for v in forward]
        n = len(fwd)
        if period < 1:
            raise ValidationError("shortcut period must be >= 1")
        arr = np.asarray(fwd, dtype=np.int64)
        if n and (arr.min() < 1 or arr.max() > n or np.unique(arr).size != n):
            raise ValidationError("forward array is not a bijection on [1, %d]" % n)
        self.n = n
        self.period = period
        self._fwd = fwd
        flags = [False] * n
        back_of = {}
        seen = [False] * n
        for start in range(1, n + 1):
            if seen[start - 1]:
                continue
            cycle = []
            x = start
            while not seen[x - 1]:
                seen[x - 1] = True
                cycle.append(x)
                x = fwd[x - 1]
            if len(cycle) <= period:
                continue
            marked = cycle[::period]
            for prev, cur in zip(marked[-1:] + marked[:-1], marked):
                flags[cur - 1] = True
                back_of[cur] = prev
        self._flags = PlainBitmap(flags)
        self._back = [back_of[x] for x in range(1, n + 1) if flags[x - 1]]

    def __len__(self):
        return self.n

    def apply(self, i):
        if not 1 <= i <= self.n:
            raise OutOfRangeError("permutation index %d outside [1, %d]" % (i, self.n))
        return self._fwd[i - 1]

    __getitem__ = apply

    def inverse(self, j):
        if not 1 <= j <= self.n:
            raise OutOfRangeError("permutation value %d outside [1, %d]" % (j, self.n))
        fwd = self._fwd
        flags = self._flags
        words = flags._words
        x = j
        jumped = False
        while True:
            nxt = fwd[x - 1]
            if nxt == j:
                return x
            if not jumped and (words[(x - 1) >> 6] >> ((x - 1) & 63)) & 1:
                x = self._back[flags.rank1(x) - 1]
                jumped = True
            else:
                x = nxt

    def forward(self):
        return list(self._fwd)

    def to_bytes(self):
        return (_bits.u64(self.period)
                + _bits.ints(self._fwd, _bits.width_for(self.n))
                + self._flags.to_bytes()
                + _bits.ints(self._back, _bits.width_for(self.n)))

    @classmethod
    def read(cls, reader):
        p = cls.__new__(cls)
        p.period = reader.u64()
        p._fwd = reader.ints()
        p.n = len(p._fwd)
        p._flags = PlainBitmap.read(reader)
        p._back = reader.ints()
        if p._flags.length != p.n or p._flags.ones != len(p._back):
            raise ValidationError("permutation shortcuts do not match forward array")
        return p

    def __repr__(self):
        return "Permutation(n=%d, period=%d, shortcuts=%d)" % (self.n, self.period, len(self._back))
