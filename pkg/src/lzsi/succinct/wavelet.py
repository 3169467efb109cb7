"""Pointerless balanced wavelet tree over an integer alphabet [0, max_symbol].

Every level is one PlainBitmap of the full sequence length.  The node for
symbol range [lo, hi] occupies positions ``C[lo] .. C[hi+1]-1`` of its
level, where ``C[a]`` counts the symbols smaller than ``a``; nodes that
became leaves on an earlier level keep their slot filled with zero bits.
"""
import numpy as np

from ..errors import OutOfRangeError, ValidationError
from . import bits as _bits
from .plain import PlainBitmap


def _height(max_symbol):
    return max(0, int(max_symbol).bit_length()) if max_symbol > 0 else 0


class WaveletTree:

    __slots__ = ("length", "max_symbol", "height", "levels", "_counts")

    def __init__(self, seq=(), max_symbol=None):
        arr = np.asarray(seq, dtype=np.int64).ravel()
        if arr.size and arr.min() < 0:
            raise ValidationError("wavelet tree symbols must be non-negative")
        if max_symbol is None:
            max_symbol = int(arr.max()) if arr.size else 0
        elif arr.size and arr.max() > max_symbol:
            raise ValidationError("symbol above declared max_symbol")
        self.length = int(arr.size)
        self.max_symbol = int(max_symbol)
        # midpoint splits of [0, max] give depth ceil(log2(max + 1))
        self.height = _height(self.max_symbol)
        hist = np.bincount(arr, minlength=self.max_symbol + 1) if arr.size else np.zeros(self.max_symbol + 1, int)
        self._counts = np.concatenate(([0], np.cumsum(hist))).astype(np.int64).tolist()
        self.levels = self._build_levels(arr)

    def _build_levels(self, arr):
        # node (lo, hi) of every symbol at the current level
        lo = np.zeros(self.max_symbol + 1, dtype=np.int64)
        hi = np.full(self.max_symbol + 1, self.max_symbol, dtype=np.int64)
        sym = np.arange(self.max_symbol + 1, dtype=np.int64)
        cur = arr
        levels = []
        for _ in range(self.height):
            mid = (lo + hi) // 2
            internal = lo < hi
            goes_right = internal & (sym > mid)
            levels.append(PlainBitmap(goes_right[cur]))
            lo = np.where(goes_right, mid + 1, lo)
            hi = np.where(internal & ~goes_right, mid, hi)
            cur = cur[np.argsort(lo[cur], kind="stable")]
        return levels

    def __len__(self):
        return self.length

    def _check_pos(self, i):
        if not 1 <= i <= self.length:
            raise OutOfRangeError("position %d outside [1, %d]" % (i, self.length))

    def access(self, i):
        self._check_pos(i)
        C = self._counts
        lo, hi = 0, self.max_symbol
        idx = i - 1  # offset inside the current node
        for bm in self.levels:
            if lo == hi:
                break
            mid = (lo + hi) >> 1
            st = C[lo]
            r_st = bm.rank1(st)
            bit, r = bm.bit_rank(st + idx + 1)
            if bit:
                idx = r - r_st
                lo = mid + 1
            else:
                idx = idx - (r - r_st)
                hi = mid
        return lo

    def __getitem__(self, i):
        return self.access(i)

    def rank(self, c, i):
        """Occurrences of symbol ``c`` in positions [1, i]."""
        if not 0 <= i <= self.length:
            raise OutOfRangeError("rank position %d outside [0, %d]" % (i, self.length))
        if not 0 <= c <= self.max_symbol:
            return 0
        C = self._counts
        lo, hi = 0, self.max_symbol
        idx = i
        for bm in self.levels:
            if lo == hi:
                break
            mid = (lo + hi) >> 1
            st = C[lo]
            ones = bm.rank1(st + idx) - bm.rank1(st)
            if c > mid:
                idx = ones
                lo = mid + 1
            else:
                idx -= ones
                hi = mid
        return idx

    def _path(self, c):
        """Nodes (level bitmap, segment start, went right) from the root to leaf ``c``."""
        C = self._counts
        lo, hi = 0, self.max_symbol
        path = []
        for bm in self.levels:
            if lo == hi:
                break
            mid = (lo + hi) >> 1
            right = c > mid
            path.append((bm, C[lo], right))
            if right:
                lo = mid + 1
            else:
                hi = mid
        return path

    @staticmethod
    def _lift(path, p):
        """Map a 1-based offset inside the last node of ``path`` to a root position."""
        for bm, st, right in reversed(path):
            if right:
                p = bm.select1(bm.rank1(st) + p) - st
            else:
                p = bm.select0(bm.rank0(st) + p) - st
        return p

    def select(self, c, k):
        """Position of the k-th occurrence of ``c``."""
        total = self.rank(c, self.length) if 0 <= c <= self.max_symbol else 0
        if not 1 <= k <= total:
            raise OutOfRangeError("select(%d, %d): symbol occurs %d times" % (c, k, total))
        return self._lift(self._path(c), k)

    def range_report(self, i_lo, i_hi, j_lo, j_hi):
        """All (i, seq[i]) with i in [i_lo, i_hi] and seq[i] in [j_lo, j_hi], sorted by i."""
        i_lo = max(i_lo, 1)
        i_hi = min(i_hi, self.length)
        j_lo = max(j_lo, 0)
        j_hi = min(j_hi, self.max_symbol)
        if i_lo > i_hi or j_lo > j_hi:
            return []
        out = []
        self._report(0, 0, self.max_symbol, i_lo - 1, i_hi, j_lo, j_hi, [], out)
        out.sort()
        return out

    def _report(self, level, lo, hi, a, b, j_lo, j_hi, path, out):
        # a, b: half-open offsets [a, b) inside node [lo, hi]
        if a >= b or hi < j_lo or lo > j_hi:
            return
        if lo == hi:
            for p in range(a + 1, b + 1):
                out.append((self._lift(path, p), lo))
            return
        bm = self.levels[level]
        st = self._counts[lo]
        r_st = bm.rank1(st)
        ra = bm.rank1(st + a) - r_st
        rb = bm.rank1(st + b) - r_st
        mid = (lo + hi) >> 1
        path.append((bm, st, False))
        self._report(level + 1, lo, mid, a - ra, b - rb, j_lo, j_hi, path, out)
        path[-1] = (bm, st, True)
        self._report(level + 1, mid + 1, hi, ra, rb, j_lo, j_hi, path, out)
        path.pop()

    def prev_less(self, s, d):
        """Largest s' < s with seq[s'] < d, or None.

        Descends towards the leaf of d - 1; whenever the walk turns right,
        the last left-child element before s is a candidate.
        """
        if not 1 <= s <= self.length + 1:
            raise OutOfRangeError("prev_less position %d outside [1, %d]" % (s, self.length + 1))
        if d <= 0 or s == 1:
            return None
        if d - 1 >= self.max_symbol:
            return s - 1
        p = self._prev_less(0, 0, self.max_symbol, s - 1, d - 1)
        return p or None

    def _prev_less(self, level, lo, hi, idx, target):
        # idx: elements of this node lying before the query position
        if idx == 0:
            return 0
        if target >= hi:
            return idx
        bm = self.levels[level]
        st = self._counts[lo]
        r_st = bm.rank1(st)
        ones = bm.rank1(st + idx) - r_st
        zeros = idx - ones
        mid = (lo + hi) >> 1
        if target <= mid:
            p = self._prev_less(level + 1, lo, mid, zeros, target)
            return bm.select0(st - r_st + p) - st if p else 0
        v0 = bm.select0(st - r_st + zeros) - st if zeros else 0
        p = self._prev_less(level + 1, mid + 1, hi, ones, target)
        v1 = bm.select1(r_st + p) - st if p else 0
        return max(v0, v1)

    def to_list(self):
        return [self.access(i) for i in range(1, self.length + 1)]

    def to_bytes(self):
        # levels are rebuilt from the sequence on load; store it bit packed
        return _bits.u64(self.max_symbol) + _bits.ints(self.to_list(), _bits.width_for(self.max_symbol))

    @classmethod
    def read(cls, reader):
        max_symbol = reader.u64()
        return cls(reader.ints(), max_symbol)

    def __repr__(self):
        return "WaveletTree(length=%d, max_symbol=%d, height=%d)" % (
            self.length, self.max_symbol, self.height)
