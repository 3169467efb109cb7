"""Brute-force baselines.

Nothing here touches the succinct, patricia or index modules; every
function scans plain data directly so it can serve as ground truth.
"""
from bisect import bisect_left

from .errors import ValidationError
from .parsing import DepthAssignment


class NaiveText:
    """Plaintext wrapper exposing the same queries as the index."""

    def __init__(self, text):
        self.text = bytes(text)

    def __len__(self):
        return len(self.text)

    def locate(self, p):
        return naive_locate(self.text, p)

    def extract(self, s, e):
        return self.text[s - 1:e]


def naive_locate(text, p):
    """All 1-based start positions of ``p`` in ``text``, overlaps included."""
    if not p:
        raise ValidationError("empty pattern")
    text = bytes(text)
    p = bytes(p)
    out = []
    i = text.find(p)
    while i >= 0:
        out.append(i + 1)
        i = text.find(p, i + 1)
    return out


def naive_classify(text, parsing, p):
    """(primary, secondary) occurrence sets; primary iff the occurrence
    contains a phrase end."""
    ends = []
    pos = 0
    for ph in parsing.phrases:
        pos += ph.copy_len + 1
        ends.append(pos)
    m = len(p)
    primary, secondary = set(), set()
    for x in naive_locate(text, p):
        k = bisect_left(ends, x)
        if k < len(ends) and ends[k] <= x + m - 1:
            primary.add(x)
        else:
            secondary.add(x)
    return primary, secondary


def naive_depths(parsing):
    """Source depths by pairwise cover tests, in S-order."""
    keyed = []
    for k, ph in enumerate(parsing.phrases, 1):
        if ph.copy_len:
            keyed.append((ph.copy_start, ph.copy_len, k))
        else:
            keyed.append((0, 0, k))
    keyed.sort()
    spans = [(s, s + l - 1) if l else None for s, l, _ in keyed]
    memo = {}

    def depth(r):
        if r in memo:
            return memo[r]
        span = spans[r]
        best = 0
        if span is not None:
            l2, r2 = span
            for q, other in enumerate(spans):
                if other is not None and other[0] < l2 and other[1] >= r2:
                    best = max(best, 1 + depth(q))
        memo[r] = best
        return best

    # deeper covers start strictly earlier, so ascending order keeps recursion shallow
    depths = [depth(r) for r in range(len(spans))]
    return DepthAssignment(depths, max(depths, default=0), [k for _, _, k in keyed])


def naive_prev_less(D, s, d):
    """Largest 1-based s' < s with D[s'] < d, or None."""
    for q in range(s - 1, 0, -1):
        if D[q - 1] < d:
            return q
    return None
