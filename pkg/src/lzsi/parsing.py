"""LZ77 and LZ-End parsings, their validation, and nesting statistics.

Positions are 1-based.  A phrase copies ``copy_len`` characters from an
earlier occurrence starting at ``copy_start`` and ends with one explicit
character, so its length is ``copy_len + 1``.
"""
import enum
from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np


class Flavor(str, enum.Enum):
    LZ77 = "lz77"
    LZEND = "lzend"


@dataclass(frozen=True)
class Phrase:
    copy_start: int  # 0 when the source is empty
    copy_len: int
    explicit_char: int

    @property
    def length(self):
        return self.copy_len + 1


@dataclass
class Parsing:
    phrases: list
    text_len: int
    flavor: Flavor = Flavor.LZ77

    def __len__(self):
        return len(self.phrases)

    def starts(self):
        """1-based start position of every phrase."""
        out, pos = [], 1
        for ph in self.phrases:
            out.append(pos)
            pos += ph.length
        return out

    def ends(self):
        out, pos = [], 0
        for ph in self.phrases:
            pos += ph.length
            out.append(pos)
        return out

    def decode(self):
        out = bytearray()
        for ph in self.phrases:
            if ph.copy_len:
                s = ph.copy_start - 1
                out += out[s:s + ph.copy_len]
            out.append(ph.explicit_char)
        return bytes(out)


@dataclass
class HeightReport:
    h: int
    avg_c: float
    c_array: np.ndarray = field(repr=False)


@dataclass
class DepthAssignment:
    depths: list  # indexed by source rank (S-order), 0-based list
    delta: int
    order: list = field(repr=False)  # order[r] = phrase number holding source rank r + 1


@dataclass
class ValidationReport:
    ok: bool
    phrase: int = 0  # 1-based phrase number of the first violation
    kind: str = ""
    message: str = ""

    def __bool__(self):
        return self.ok


def _common_prefix(text, a, b, limit):
    """Length of the common prefix of text[a:] and text[b:], capped at ``limit``."""
    k = 0
    step = 16
    while k < limit:
        t = min(step, limit - k)
        if text[a + k:a + k + t] == text[b + k:b + k + t]:
            k += t
            step <<= 1
            continue
        lo, hi = 0, t  # text[a+k : a+k+lo] matches, lo < hi
        while hi - lo > 1:
            mid = (lo + hi) >> 1
            if text[a + k:a + k + mid] == text[b + k:b + k + mid]:
                lo = mid
            else:
                hi = mid
        return k + lo
    return limit


def _longest_prior_match(text, i, limit):
    """Longest prefix of text[i:] (at most ``limit`` long) occurring inside text[:i].

    Returns (length, leftmost 0-based start).
    """
    if limit <= 0 or i == 0:
        return 0, 0
    j = text.find(text[i:i + 1], 0, i)
    if j < 0:
        return 0, 0
    length = 1
    while True:
        cap = min(limit, i - j)
        length += _common_prefix(text, j + length, i + length, cap - length)
        if length >= limit:
            break
        j2 = text.find(text[i:i + length + 1], j + 1, i)
        if j2 < 0:
            break
        j = j2
        length += 1
    return length, j


def parse_lz77(text):
    """Greedy LZ77 parsing with non-overlapping, leftmost sources.

    The copied part of the last phrase is shortened when needed so every
    phrase keeps an explicit final character.
    """
    text = bytes(text)
    n = len(text)
    phrases = []
    i = 0
    while i < n:
        length, src = _longest_prior_match(text, i, n - 1 - i)
        phrases.append(Phrase(src + 1 if length else 0, length, text[i + length]))
        i += length + 1
    return Parsing(phrases, n, Flavor.LZ77)


# below this many candidates the LZ-End search switches to per-candidate extension
_FEW = 24


def parse_lzend(text):
    """Greedy LZ-End parsing: copies must end at an earlier phrase boundary."""
    text = bytes(text)
    n = len(text)
    arr = np.frombuffer(text, dtype=np.uint8)
    is_bound = np.zeros(n + 2, dtype=bool)
    bounds = []  # 0-based exclusive phrase ends, increasing
    phrases = []
    i = 0
    while i < n:
        limit = n - 1 - i
        best, src = 0, 0
        if limit > 0 and i > 0:
            starts = np.flatnonzero(arr[:i] == arr[i])
            length = 1
            while starts.size > _FEW:
                hit = starts[is_bound[starts + length]]
                if hit.size:
                    best, src = length, int(hit[0])
                if length == limit:
                    starts = starts[:0]
                    break
                starts = starts[starts + length < i]
                starts = starts[arr[starts + length] == arr[i + length]]
                length += 1
            for s in starts.tolist():
                # text[s:s+length] already matches; extend and take the furthest boundary
                reach = min(limit, i - s)
                reach = length + _common_prefix(text, s + length, i + length, reach - length)
                k = bisect_right(bounds, s + reach) - 1
                if k >= 0 and bounds[k] >= s + length:
                    cand = bounds[k] - s
                    if cand > best or (cand == best and s < src):
                        best, src = cand, s
        phrases.append(Phrase(src + 1 if best else 0, best, text[i + best]))
        i += best + 1
        is_bound[i] = True
        bounds.append(i)
    return Parsing(phrases, n, Flavor.LZEND)


def parse(text, flavor=Flavor.LZ77):
    flavor = Flavor(flavor)
    return parse_lz77(text) if flavor is Flavor.LZ77 else parse_lzend(text)


def validate_parsing(parsing, text):
    """Check reconstruction, source containment, greedy maximality and, for
    LZ-End, that sources end at phrase boundaries.  Returns the first
    violation found.
    """
    text = bytes(text)
    n = len(text)
    if parsing.text_len != n:
        return ValidationReport(False, 0, "length", "parsing covers %d bytes, text has %d"
                                % (parsing.text_len, n))
    total = sum(ph.length for ph in parsing.phrases)
    if total != n:
        return ValidationReport(False, 0, "length", "phrase lengths sum to %d, text has %d" % (total, n))
    bound_set = {0}
    i = 0
    for p, ph in enumerate(parsing.phrases, 1):
        L = ph.copy_len
        if L == 0 and ph.copy_start != 0:
            return ValidationReport(False, p, "containment", "empty source must have copy_start 0")
        if L:
            s = ph.copy_start - 1
            if s < 0 or s + L > i:
                return ValidationReport(False, p, "containment",
                                        "source [%d, %d] not inside [1, %d]" % (s + 1, s + L, i))
            if text[s:s + L] != text[i:i + L]:
                return ValidationReport(False, p, "reconstruction", "copied part differs from its source")
        if text[i + L] != ph.explicit_char:
            return ValidationReport(False, p, "reconstruction", "explicit character differs")
        cap = n - 1 - i
        if parsing.flavor is Flavor.LZEND:
            if L and (s + L) not in bound_set:
                return ValidationReport(False, p, "boundary", "source does not end at a phrase boundary")
            longer = _lzend_longer_copy(text, i, L, cap, bound_set)
            if longer:
                return ValidationReport(False, p, "maximality",
                                        "a copy of length %d ends at a phrase boundary" % longer)
        elif L < cap and text.find(text[i:i + L + 1], 0, i) >= 0:
            return ValidationReport(False, p, "maximality",
                                    "prefix of length %d occurs earlier" % (L + 1))
        i += L + 1
        bound_set.add(i)
    return ValidationReport(True)


def _lzend_longer_copy(text, i, L, cap, bound_set):
    for k in range(L + 1, cap + 1):
        probe = text[i:i + k]
        s = text.find(probe, 0, i)
        if s < 0:
            return 0
        while s >= 0:
            if s + k in bound_set:
                return k
            s = text.find(probe, s + 1, i)
    return 0


def compute_height(parsing):
    """C[b] = 1 at phrase ends, C[k] = C[k - a + c] + 1 inside copied parts."""
    n = parsing.text_len
    C = np.zeros(n + 1, dtype=np.int64)  # index 0 unused
    a = 1
    for ph in parsing.phrases:
        if ph.copy_len:
            c = ph.copy_start
            C[a:a + ph.copy_len] = C[c:c + ph.copy_len] + 1
        C[a + ph.copy_len] = 1
        a += ph.length
    body = C[1:]
    h = int(body.max()) if n else 0
    return HeightReport(h, float(body.mean()) if n else 0.0, body)


def source_order(parsing):
    """Phrase numbers sorted into S-order: empty sources first, then by
    start position, shorter first, ties by phrase number."""
    keyed = []
    for k, ph in enumerate(parsing.phrases, 1):
        if ph.copy_len == 0:
            keyed.append((0, 0, k))
        else:
            keyed.append((ph.copy_start, ph.copy_len, k))
    keyed.sort()
    return [k for _, _, k in keyed]


def compute_source_depths(parsing):
    """Nesting depth of each source under strict cover, listed in S-order.

    Sources are swept by start; a Fenwick tree over end positions answers
    "deepest earlier-starting source ending at or after r".
    """
    order = source_order(parsing)
    n = parsing.text_len
    depths = [0] * len(order)
    tree = [0] * (n + 2)  # prefix max over reversed end coordinate, stores depth + 1

    def query(r):
        best = 0
        x = n - r + 1
        while x > 0:
            if tree[x] > best:
                best = tree[x]
            x -= x & -x
        return best

    def update(r, v):
        x = n - r + 1
        while x <= n:
            if tree[x] < v:
                tree[x] = v
            x += x & -x

    group_start = None
    pending = []
    for rank, k in enumerate(order):
        ph = parsing.phrases[k - 1]
        if ph.copy_len == 0:
            continue
        l, r = ph.copy_start, ph.copy_start + ph.copy_len - 1
        if l != group_start:
            for rr, v in pending:
                update(rr, v)
            pending = []
            group_start = l
        best = query(r)
        depths[rank] = best  # best = 1 + deepest cover, or 0
        pending.append((r, best + 1))
    return DepthAssignment(depths, max(depths, default=0), order)
