"""The LZ77 / LZ-End self-index: build, extract, exists, locate, stats."""
import functools
import math
from dataclasses import dataclass, field

from . import parsing as _parsing
from .errors import OutOfRangeError, ValidationError
from .occurrences import OccurrenceSet
from .parsing import Flavor, _common_prefix
from .patricia import EMPTY, PatriciaTree, SearchRange, binsearch_range
from .succinct import DEFAULT_SAMPLE_RATE, Permutation, SparseBitmap, WaveletTree

VARIANTS = {
    1: "suffix trie + reverse trie",
    2: "binary search on explicit id + reverse trie",
    3: "suffix trie + binary search on rev_id",
    4: "binary search on explicit id + binary search on rev_id",
    5: "binary search on implicit id + binary search on rev_id",
}


@dataclass
class IndexConfig:
    flavor: Flavor = Flavor.LZ77
    variant: int = 5
    sample_rate: int = DEFAULT_SAMPLE_RATE
    perm_period: int = 0  # 0 picks max(1, ceil(log2 n'))
    dac_width: int = 4

    def __post_init__(self):
        self.flavor = Flavor(self.flavor)
        if self.variant not in VARIANTS:
            raise ValidationError("variant must be one of 1..5, got %r" % (self.variant,))
        if self.sample_rate < 1:
            raise ValidationError("sample rate must be >= 1")
        if self.perm_period < 0 or self.dac_width < 1:
            raise ValidationError("bad permutation period or DAC width")

    @property
    def suffix_trie(self):
        return self.variant in (1, 3)

    @property
    def reverse_trie(self):
        return self.variant in (1, 2)

    @property
    def explicit_id(self):
        return self.variant in (2, 4)


@dataclass
class IndexStats:
    n: int
    n_phrases: int
    sigma: int
    h: int
    delta: int
    avg_c: float
    avg_depth: float
    lz_bits: int
    sizes: dict = field(default_factory=dict)

    @property
    def total_bytes(self):
        return sum(self.sizes.values())

    def as_dict(self):
        return {
            "n": self.n, "n_prime": self.n_phrases, "sigma": self.sigma,
            "h": self.h, "delta": self.delta, "avg_c": self.avg_c,
            "avg_depth": self.avg_depth, "lz_bits": self.lz_bits,
            "index_bytes": self.total_bytes, "sizes": dict(self.sizes),
        }


class ExtractTrace:
    """Counters filled by ``extract`` when passed in: deepest source chain
    followed and number of phrase visits."""

    def __init__(self):
        self.max_depth = 0
        self.steps = 0


def lz_bits(n, n_phrases, sigma):
    """Size of the plain LZ output, n'(2 ceil(log2 n) + ceil(log2 sigma)) bits."""
    lg = lambda x: math.ceil(math.log2(x)) if x > 1 else 0
    return n_phrases * (2 * lg(n) + lg(sigma))


class LZIndex:
    """Queryable self-index.  Build with :func:`build_index` or load with
    :func:`lzsi.container.load`."""

    def __init__(self):
        self.config = IndexConfig()
        self.n = 0
        self.n_phrases = 0
        self.sigma = 0
        self.h = 0
        self.delta = 0
        self.avg_c = 0.0
        self.avg_depth = 0.0
        self.L = b""
        self.B = None
        self.S = None
        self.P = None
        self.D = None
        self.R = None
        self.suffix_tree = None
        self.id = None
        self.reverse_tree = None
        self.rev_id = []
        self.last_rev_rank = 0  # leaf of the final phrase on the reverse side

    # -- extraction ---------------------------------------------------------

    def extract(self, s, e, trace=None):
        """Text positions [s, e] rebuilt from L, B, S and P only."""
        if not (1 <= s <= e <= self.n):
            raise OutOfRangeError("extract range [%d, %d] outside [1, %d]" % (s, e, self.n))
        B, S, P, L = self.B, self.S, self.P, self.L
        out = bytearray(e - s + 1)
        stack = [(s, e, 0, 1)]
        while stack:
            s, e, off, depth = stack.pop()
            k0 = B.rank1(s - 1) + 1
            k1 = B.rank1(e - 1) + 1
            if k0 > 1:
                ends = B.select_run(k0 - 1, k1 - k0 + 2)
            else:
                ends = [0] + B.select_run(1, k1)
            if trace is not None:
                trace.steps += k1 - k0 + 1
                if depth > trace.max_depth:
                    trace.max_depth = depth
            for k in range(k0, k1 + 1):
                a = ends[k - k0] + 1
                b = ends[k - k0 + 1]
                lo = a if a > s else s
                if b <= e:
                    out[off + b - s] = L[k - 1]
                    hi = b - 1
                else:
                    hi = e
                if lo <= hi:
                    r = P[k]
                    t = S.select1(r) - r
                    stack.append((t + lo - a, t + hi - a, off + lo - s, depth + 1))
        return bytes(out)

    def _phrase_span(self, k):
        """(start, end) text positions of phrase k."""
        if k == 1:
            return 1, self.B.select1(1)
        prev, end = self.B.select_run(k - 1, 2)
        return prev + 1, end

    # -- the two searches ---------------------------------------------------

    def _id(self, rank):
        if self.id is not None:
            return self.id[rank - 1]
        j = self.R[rank]
        return self.rev_id[j - 1] + 1 if j else 1

    def _suffix_fetch(self, rank, m):
        start, _ = self._phrase_span(self._id(rank))
        return self.extract(start, min(self.n, start + m - 1))

    def _reverse_fetch(self, rank, m):
        start, end = self._phrase_span(self.rev_id[rank - 1])
        return self.extract(max(start, end - m + 1), end)[::-1]

    def search_suffix(self, key):
        """Range of suffix-side leaves (phrase-start suffixes) starting with key."""
        if not key:
            return SearchRange(1, self.n_phrases, True)
        if self.suffix_tree is not None:
            return self.suffix_tree.search(key)
        return binsearch_range(self.n_phrases, self._suffix_fetch, key)

    def search_reverse(self, key):
        """Range of reverse-side leaves (reversed phrases) starting with key."""
        if self.reverse_tree is not None:
            return self.reverse_tree.search(key)
        return binsearch_range(self.n_phrases, self._reverse_fetch, key)

    # -- primary occurrences ------------------------------------------------

    def _split_candidates(self, p, i):
        """Primary occurrences of ``p`` whose first phrase boundary follows p[:i]."""
        jr = self.search_reverse(p[:i][::-1])
        if jr.empty:
            return []
        right = p[i:]
        ir = self.search_suffix(right)
        found = []
        if not ir.empty:
            for _, j in self.R.range_report(ir.lo, ir.hi, max(jr.lo, 1), jr.hi):
                k = self.rev_id[j - 1]
                found.append((self.B.select1(k) - i + 1, k, i))
        if not right and jr.lo <= self.last_rev_rank <= jr.hi:
            # the last phrase has no successor row in R
            found.append((self.n - i + 1, self.n_phrases, i))
        if found and not (jr.verified and ir.verified):
            pos = found[0][0]
            m = len(p)
            if pos + m - 1 > self.n or self.extract(pos, pos + m - 1) != p:
                return []
        return found

    def find_primary(self, p):
        """(position, phrase of the left part, split) for every primary occurrence."""
        p = _pattern(p)
        out = []
        for i in range(1, len(p) + 1):
            out.extend(self._split_candidates(p, i))
        out.sort()
        return out

    def exists(self, p):
        p = _pattern(p)
        return any(self._split_candidates(p, i) for i in range(1, len(p) + 1))

    # -- secondary occurrences ----------------------------------------------

    def chase_sources(self, i, m, sink):
        """Append to ``sink`` every occurrence copied, transitively, from T[i, i+m-1]."""
        S, B, P, D = self.S, self.B, self.P, self.D
        top = self.delta + 1
        stack = [i]
        while stack:
            x = stack.pop()
            last = x + m - 1
            # ones before the (x+1)-th zero: sources starting at or before x
            s = S.select0(x + 1) - x - 1
            d = top
            while s:
                t = S.select1(s) - s
                f = P.inverse(s)
                c, end = self._phrase_span(f)
                if t and t + (end - c) - 1 >= last:
                    y = c + x - t
                    sink.append(y)
                    stack.append(y)
                else:
                    d = D[s]
                s = D.prev_less(s, d) or 0
        return sink

    def locate(self, p):
        p = _pattern(p)
        primary = [pos for pos, _, _ in self.find_primary(p)]
        found = list(primary)
        for pos in primary:
            self.chase_sources(pos, len(p), found)
        found.sort()
        return OccurrenceSet(found, len(primary), len(found) - len(primary))

    def count(self, p):
        return len(self.locate(p))

    # -- reporting ----------------------------------------------------------

    def stats(self):
        from .container import section_sizes
        return IndexStats(self.n, self.n_phrases, self.sigma, self.h, self.delta,
                          self.avg_c, self.avg_depth,
                          lz_bits(self.n, self.n_phrases, self.sigma), section_sizes(self))

    def __len__(self):
        return self.n

    def __repr__(self):
        return "LZIndex(n=%d, n'=%d, flavor=%s, variant=%d)" % (
            self.n, self.n_phrases, self.config.flavor.value, self.config.variant)


def _pattern(p):
    if isinstance(p, str):
        p = p.encode("utf-8")
    p = bytes(p)
    if not p:
        raise ValidationError("empty pattern")
    return p


def _sort_suffixes(text, starts):
    """Phrase numbers ordered by the text suffix at each phrase start, with adjacent LCPs."""
    n = len(text)

    def cmp(a, b):
        sa, sb = starts[a - 1] - 1, starts[b - 1] - 1
        lim = min(n - sa, n - sb)
        l = _common_prefix(text, sa, sb, lim)
        if l == lim:
            return (n - sa) - (n - sb)
        return text[sa + l] - text[sb + l]

    ids = sorted(range(1, len(starts) + 1), key=functools.cmp_to_key(cmp))
    lcps = [0]
    for a, b in zip(ids, ids[1:]):
        sa, sb = starts[a - 1] - 1, starts[b - 1] - 1
        lcps.append(_common_prefix(text, sa, sb, min(n - sa, n - sb)))
    return ids, lcps


def _sort_reversed(text, starts, ends):
    rev = [text[s - 1:e][::-1] for s, e in zip(starts, ends)]
    ids = sorted(range(1, len(rev) + 1), key=lambda k: (rev[k - 1], k))
    lcps = [0]
    for a, b in zip(ids, ids[1:]):
        x, y = rev[a - 1], rev[b - 1]
        lcps.append(_common_prefix(x + y, 0, len(x), min(len(x), len(y))))
    return ids, lcps, rev


def build_index(text, config=None, parsing=None):
    """Parse ``text`` and assemble every structure the configured variant needs."""
    if isinstance(text, str):
        text = text.encode("utf-8")
    text = bytes(text)
    config = config or IndexConfig()
    if not text:
        raise ValidationError("empty input")
    if parsing is None:
        parsing = _parsing.parse(text, config.flavor)
    elif parsing.flavor is not config.flavor or parsing.text_len != len(text):
        raise ValidationError("parsing does not match text/flavor")
    n = len(text)
    nph = len(parsing)
    idx = LZIndex()
    idx.config = config
    idx.n = n
    idx.n_phrases = nph
    idx.sigma = len(set(text))

    starts = parsing.starts()
    ends = parsing.ends()
    idx.L = bytes(ph.explicit_char for ph in parsing.phrases)
    idx.B = SparseBitmap(ends, n, config.sample_rate)

    depth = _parsing.compute_source_depths(parsing)
    rank_of = [0] * (nph + 1)
    s_ones = []
    for r, k in enumerate(depth.order, 1):
        rank_of[k] = r
        # the r-th one is preceded by one zero per text position 0..start-1
        s_ones.append(r + parsing.phrases[k - 1].copy_start)
    idx.S = SparseBitmap(s_ones, n + nph + 1, config.sample_rate)
    period = config.perm_period or max(1, math.ceil(math.log2(nph)) if nph > 1 else 1)
    idx.P = Permutation(rank_of[1:], period)
    idx.D = WaveletTree(depth.depths, depth.delta)
    idx.delta = depth.delta
    idx.avg_depth = sum(depth.depths) / nph

    height = _parsing.compute_height(parsing)
    idx.h = height.h
    idx.avg_c = height.avg_c

    ids, suf_lcps = _sort_suffixes(text, starts)
    rev_ids, rev_lcps, rev = _sort_reversed(text, starts, ends)
    rev_rank = [0] * (nph + 1)
    for j, k in enumerate(rev_ids, 1):
        rev_rank[k] = j
    idx.rev_id = rev_ids
    idx.last_rev_rank = rev_rank[nph]
    idx.R = WaveletTree([rev_rank[k - 1] if k > 1 else 0 for k in ids], nph)

    if config.suffix_trie:
        idx.suffix_tree = PatriciaTree(
            [n - starts[k - 1] + 1 for k in ids], suf_lcps,
            lambda r, o: text[starts[ids[r - 1] - 1] - 1 + o], config.dac_width)
    elif config.explicit_id:
        idx.id = ids
    if config.reverse_trie:
        idx.reverse_tree = PatriciaTree(
            [len(rev[k - 1]) for k in rev_ids], rev_lcps,
            lambda r, o: rev[rev_ids[r - 1] - 1][o], config.dac_width)
    return idx
