"""Sparse bitmap: delta-coded gaps between ones plus periodic samples."""
from bisect import bisect_right
from functools import lru_cache

from ..errors import OutOfRangeError, ValidationError
from . import bits as _bits
from .bits import BitWriter, read_delta

DEFAULT_SAMPLE_RATE = 32
# decoded sample blocks kept per bitmap; 0 decodes on every access
DEFAULT_CACHE_BLOCKS = 1024


class SparseBitmap:
    """Bitmap over [1, universe] storing only its set positions.

    Every gap (first one: its position, then differences) is Elias-delta
    coded into one stream.  For ones number 1, s+1, 2s+1, ... we keep the
    absolute position and the stream offset of the following code, so
    ``select`` decodes at most ``s - 1`` codes and ``rank`` first binary
    searches the sampled positions.  Recently decoded blocks are kept in a
    small LRU cache.
    """

    __slots__ = ("universe", "ones", "sample_rate", "_stream", "_spos", "_soff", "_block")

    def __init__(self, positions, universe, sample_rate=DEFAULT_SAMPLE_RATE,
                 cache_blocks=DEFAULT_CACHE_BLOCKS):
        if sample_rate < 1:
            raise ValidationError("sample rate must be >= 1")
        if universe < 0:
            raise ValidationError("negative universe")
        self.universe = universe
        self.sample_rate = sample_rate
        w = BitWriter()
        spos, soff = [], []
        prev = 0
        count = 0
        for p in positions:
            if p <= prev or p > universe:
                raise ValidationError(
                    "positions must be strictly increasing within [1, %d]; got %d after %d"
                    % (universe, p, prev))
            w.write_delta(p - prev)
            if count % sample_rate == 0:
                spos.append(p)
                soff.append(w.nbits)
            prev = p
            count += 1
        self.ones = count
        self._stream = w.getvalue()
        self._spos = spos
        self._soff = soff
        if cache_blocks:
            self._block = lru_cache(maxsize=cache_blocks)(self._decode_block)
        else:
            self._block = self._decode_block

    def __len__(self):
        return self.universe

    # -- decoding -----------------------------------------------------------

    def _decode_block(self, q):
        """Positions of ones q*s+1 .. min(q*s+s, ones), decoded from sample q."""
        pos = self._spos[q]
        off = self._soff[q]
        buf = self._stream
        out = [pos]
        for _ in range(min(self.sample_rate, self.ones - q * self.sample_rate) - 1):
            g, off = read_delta(buf, off)
            pos += g
            out.append(pos)
        return out

    # -- ones ---------------------------------------------------------------

    def select1(self, k):
        if not 1 <= k <= self.ones:
            raise OutOfRangeError("select1(%d) with %d ones" % (k, self.ones))
        q, r = divmod(k - 1, self.sample_rate)
        return self._block(q)[r]

    def select_run(self, k, count):
        """Positions of ones k, k+1, ..., k+count-1."""
        if count <= 0:
            return []
        if k < 1 or k + count - 1 > self.ones:
            raise OutOfRangeError("select run [%d, %d] with %d ones" % (k, k + count - 1, self.ones))
        s = self.sample_rate
        q, r = divmod(k - 1, s)
        out = self._block(q)[r:r + count]
        while len(out) < count:
            q += 1
            out.extend(self._block(q)[:count - len(out)])
        return out

    def rank1(self, i):
        """Number of ones in [1, i]."""
        if not 0 <= i <= self.universe:
            raise OutOfRangeError("rank position %d outside [0, %d]" % (i, self.universe))
        q = bisect_right(self._spos, i) - 1
        if q < 0:
            return 0
        return q * self.sample_rate + bisect_right(self._block(q), i)

    # -- zeros --------------------------------------------------------------

    def rank0(self, i):
        return i - self.rank1(i)

    def select0(self, k):
        """Position of the k-th zero."""
        zeros = self.universe - self.ones
        if not 1 <= k <= zeros:
            raise OutOfRangeError("select0(%d) with %d zeros" % (k, zeros))
        s = self.sample_rate
        spos = self._spos
        # last sample whose one has fewer than k zeros before it
        lo, hi = -1, len(spos) - 1
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            if spos[mid] - mid * s - 1 < k:
                lo = mid
            else:
                hi = mid - 1
        if lo < 0:
            return k
        block = self._block(lo)
        j = 1
        while j < len(block) and block[j] - (lo * s + j + 1) < k:
            j += 1
        # j ones of this block precede the k-th zero
        return k + lo * s + j

    def rank(self, b, i):
        return self.rank1(i) if b else self.rank0(i)

    def select(self, b, k):
        return self.select1(k) if b else self.select0(k)

    def __getitem__(self, p):
        if not 1 <= p <= self.universe:
            raise OutOfRangeError("bit %d outside [1, %d]" % (p, self.universe))
        r = self.rank1(p)
        return int(r > 0 and self.select1(r) == p)

    def positions(self):
        return self.select_run(1, self.ones)

    def to_bits(self):
        out = [0] * self.universe
        for p in self.positions():
            out[p - 1] = 1
        return out

    # -- serialization ------------------------------------------------------

    def to_bytes(self):
        # samples are rebuilt on load: they are a pure function of the stream
        stream = self._stream[:len(self._stream) - _bits._WINDOW]
        return (_bits.u64(self.universe) + _bits.u64(self.ones)
                + _bits.u64(self.sample_rate) + _bits.blob(stream))

    @classmethod
    def read(cls, reader):
        universe = reader.u64()
        ones = reader.u64()
        rate = reader.u64()
        stream = reader.blob() + bytes(_bits._WINDOW)
        positions = []
        pos, off = 0, 0
        try:
            for _ in range(ones):
                g, off = read_delta(stream, off)
                pos += g
                positions.append(pos)
        except (ValueError, IndexError):
            raise _bits.TruncatedError("gap stream ends early")
        if off > 8 * (len(stream) - _bits._WINDOW):
            raise _bits.TruncatedError("gap stream ends early")
        return cls(positions, universe, rate)

    def size_in_bits(self):
        return 8 * (len(self._stream) - _bits._WINDOW) + 64 * 2 * len(self._spos)

    def __repr__(self):
        return "SparseBitmap(universe=%d, ones=%d, sample_rate=%d)" % (
            self.universe, self.ones, self.sample_rate)
