"""Uncompressed bitmap with a two-level rank directory."""
from bisect import bisect_right

import numpy as np

from ..errors import OutOfRangeError
from . import bits as _bits

WORD = 64
SUPER = 8  # words per superblock


class PlainBitmap:
    """Plain bit array over positions 1..length.

    Words hold 64 bits (bit ``p`` lives at index ``p - 1``).  The directory
    keeps absolute counts per superblock of 512 bits and counts relative to
    the superblock per word.
    """

    __slots__ = ("length", "ones", "_words", "_super", "_super0", "_block")

    def __init__(self, bits=()):
        arr = np.asarray(bits, dtype=bool).ravel()
        self.length = int(arr.size)
        nwords = (self.length + WORD - 1) // WORD
        padded = np.zeros(nwords * WORD, dtype=bool)
        padded[:self.length] = arr
        packed = np.packbits(padded, bitorder="little")
        self._set_words(np.frombuffer(packed.tobytes(), dtype="<u8"))

    @classmethod
    def from_positions(cls, positions, length):
        arr = np.zeros(length, dtype=bool)
        if len(positions):
            arr[np.asarray(positions, dtype=np.int64) - 1] = True
        return cls(arr)

    def _set_words(self, words):
        counts = np.unpackbits(words.view(np.uint8), bitorder="little")
        counts = counts.reshape(-1, WORD).sum(axis=1) if words.size else np.zeros(0, int)
        cum = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self.ones = int(cum[-1])
        sup = cum[:-1:SUPER] if words.size else np.zeros(0, np.int64)
        self._super = sup.tolist()
        # zeros before each superblock, for select0
        self._super0 = [i * SUPER * WORD - c for i, c in enumerate(self._super)]
        self._block = (cum[:-1] - np.repeat(sup, SUPER)[:words.size]).tolist()
        self._words = words.tolist()

    def __len__(self):
        return self.length

    def __getitem__(self, p):
        if not 1 <= p <= self.length:
            raise OutOfRangeError("bit %d outside [1, %d]" % (p, self.length))
        i = p - 1
        return (self._words[i >> 6] >> (i & 63)) & 1

    def rank1(self, i):
        """Number of ones in positions [1, i]."""
        if not 0 <= i <= self.length:
            raise OutOfRangeError("rank position %d outside [0, %d]" % (i, self.length))
        w = i >> 6
        r = i & 63
        if w == len(self._words):
            return self.ones
        base = self._super[w >> 3] + self._block[w]
        if r == 0:
            return base
        return base + (self._words[w] & ((1 << r) - 1)).bit_count()

    def rank0(self, i):
        return i - self.rank1(i)

    def rank(self, b, i):
        return self.rank1(i) if b else self.rank0(i)

    def bit_rank(self, p):
        """(bit p, ones in [1, p-1]) in one directory lookup."""
        i = p - 1
        w = i >> 6
        r = i & 63
        word = self._words[w]
        return ((word >> r) & 1,
                self._super[w >> 3] + self._block[w] + (word & ((1 << r) - 1)).bit_count())

    def select1(self, k):
        """Position of the k-th one."""
        if not 1 <= k <= self.ones:
            raise OutOfRangeError("select1(%d) with %d ones" % (k, self.ones))
        sb = bisect_right(self._super, k - 1) - 1
        w = sb * SUPER
        last = min(w + SUPER, len(self._words))
        base = self._super[sb]
        while w + 1 < last and base + self._block[w + 1] < k:
            w += 1
        need = k - base - self._block[w]
        word = self._words[w]
        for _ in range(need - 1):
            word &= word - 1
        return w * WORD + ((word & -word).bit_length())

    def select0(self, k):
        """Position of the k-th zero."""
        zeros = self.length - self.ones
        if not 1 <= k <= zeros:
            raise OutOfRangeError("select0(%d) with %d zeros" % (k, zeros))
        lo = bisect_right(self._super0, k - 1) - 1
        base0 = self._super0[lo]
        w = lo * SUPER
        last = min(w + SUPER, len(self._words))
        while w + 1 < last and base0 + (w + 1 - lo * SUPER) * WORD - self._block[w + 1] < k:
            w += 1
        need = k - (base0 + (w - lo * SUPER) * WORD - self._block[w])
        word = ~self._words[w] & ((1 << WORD) - 1)
        for _ in range(need - 1):
            word &= word - 1
        return w * WORD + ((word & -word).bit_length())

    def select(self, b, k):
        return self.select1(k) if b else self.select0(k)

    def to_bits(self):
        return [self[p] for p in range(1, self.length + 1)]

    def to_bytes(self):
        payload = np.asarray(self._words, dtype="<u8").tobytes()
        return _bits.u64(self.length) + _bits.blob(payload)

    @classmethod
    def read(cls, reader):
        bm = cls.__new__(cls)
        bm.length = reader.u64()
        payload = reader.blob()
        nwords = (bm.length + WORD - 1) // WORD
        if len(payload) != nwords * 8:
            raise _bits.TruncatedError("bitmap payload size mismatch")
        bm._set_words(np.frombuffer(payload, dtype="<u8"))
        return bm

    def __repr__(self):
        return "PlainBitmap(length=%d, ones=%d)" % (self.length, self.ones)
