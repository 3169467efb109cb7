"""Patricia tries in compact array form, plus the binary-search alternative.

Nodes are numbered breadth first so the children of a node are contiguous
and sorted by edge label; a label of -1 marks a leaf whose string ends at
its parent's depth.  Each node keeps the rank range of the leaves below it.
Skips (characters on the incoming edge after the branching one) live in a
DAC.  Searching consumes skips blindly, so a returned range may be a false
positive; every string in it shares the skipped characters, which lets the
caller check a single candidate.
"""
from bisect import bisect_left
from dataclasses import dataclass

from . import succinct
from .succinct import bits as _bits

END = -1


@dataclass(frozen=True)
class SearchRange:
    lo: int
    hi: int
    verified: bool = True

    @property
    def empty(self):
        return self.lo > self.hi

    def __len__(self):
        return max(0, self.hi - self.lo + 1)


EMPTY = SearchRange(1, 0, True)


class _Node:
    __slots__ = ("depth", "children", "lo", "hi", "leaf")

    def __init__(self, depth, lo, leaf=False):
        self.depth = depth
        self.children = []
        self.lo = lo
        self.hi = lo
        self.leaf = leaf


def _link(lengths, lcps):
    """Compact trie over sorted strings from their lengths and adjacent LCPs."""
    root = _Node(0, 1)
    root.hi = 0
    stack = [root]
    for r in range(1, len(lengths) + 1):
        length = lengths[r - 1]
        l = lcps[r - 1] if r > 1 else 0
        last = None
        while stack[-1].depth > l:
            last = stack.pop()
        top = stack[-1]
        if top.depth < l:
            # split the edge into `last` at depth l
            mid = _Node(l, last.lo)
            mid.hi = last.hi
            top.children[-1] = mid
            mid.children.append(last)
            stack.append(mid)
            top = mid
        elif top.leaf:
            if length == top.depth:
                # duplicate string: widen the leaf
                for node in stack:
                    node.hi = r
                continue
            # the previous string is a proper prefix of this one
            stack.pop()
            parent = stack[-1]
            if parent.depth == top.depth:
                # already an end marker (the empty string under the root)
                top = parent
                leaf = _Node(length, r, leaf=True)
                top.children.append(leaf)
                stack.append(leaf)
                for node in stack:
                    node.hi = r
                continue
            mid = _Node(top.depth, top.lo)
            mid.hi = top.hi
            parent.children[-1] = mid
            mid.children.append(top)
            stack.append(mid)
            top = mid
        leaf = _Node(length, r, leaf=True)
        top.children.append(leaf)
        stack.append(leaf)
        for node in stack:
            node.hi = r
    return root


class PatriciaTree:
    """Compact trie over ``leaf_count`` sorted strings."""

    def __init__(self, lengths, lcps, char_at, dac_width=4):
        """``char_at(rank, offset)`` returns byte ``offset`` of the string with
        leaf rank ``rank``; only used during construction."""
        self.leaf_count = len(lengths)
        root = _link(lengths, lcps)
        # breadth-first flattening
        order = [root]
        parent_depth = [0]
        child_lo, child_cnt, label, leaf_lo, leaf_hi, skips = [], [], [], [], [], []
        head = 0
        while head < len(order):
            node = order[head]
            pd = parent_depth[head]
            head += 1
            child_lo.append(len(order))
            child_cnt.append(len(node.children))
            leaf_lo.append(node.lo)
            leaf_hi.append(node.hi)
            if node is root:
                label.append(END)
                skips.append(0)
            elif node.leaf and node.depth == pd:
                label.append(END)
                skips.append(0)
            else:
                label.append(char_at(node.lo, pd))
                skips.append(node.depth - pd - 1)
            for ch in node.children:
                order.append(ch)
                parent_depth.append(node.depth)
        self.child_lo = child_lo
        self.child_cnt = child_cnt
        self.labels = label
        self.leaf_lo = leaf_lo
        self.leaf_hi = leaf_hi
        self.skips = succinct.DAC(skips, dac_width)

    @property
    def node_count(self):
        return len(self.labels)

    def _child(self, v, c):
        lo = self.child_lo[v]
        hi = lo + self.child_cnt[v]
        labels = self.labels
        k = bisect_left(labels, c, lo, hi)
        if k < hi and labels[k] == c:
            return k
        return -1

    def search(self, key):
        """Leaf range whose strings may start with ``key`` (unverified)."""
        if self.leaf_count == 0:
            return EMPTY
        v = 0
        pos = 0
        m = len(key)
        skips = self.skips
        while pos < m:
            u = self._child(v, key[pos])
            if u < 0:
                return EMPTY
            pos += 1 + skips[u + 1]
            v = u
        return SearchRange(self.leaf_lo[v], self.leaf_hi[v], False)

    def node_depths(self):
        """String depth of every node, from the stored skips."""
        depth = [0] * self.node_count
        for v in range(self.node_count):
            for u in range(self.child_lo[v], self.child_lo[v] + self.child_cnt[v]):
                if self.labels[u] == END:
                    depth[u] = depth[v]
                else:
                    depth[u] = depth[v] + 1 + self.skips[u + 1]
        return depth

    def to_bytes(self):
        w = _bits.width_for(max(self.node_count, self.leaf_count))
        return b"".join([
            _bits.u64(self.leaf_count),
            _bits.ints(self.child_lo, w),
            _bits.ints(self.child_cnt),
            _bits.ints([c + 1 for c in self.labels], 9),
            _bits.ints(self.leaf_lo, w),
            _bits.ints(self.leaf_hi, w),
            self.skips.to_bytes(),
        ])

    @classmethod
    def read(cls, reader):
        t = cls.__new__(cls)
        t.leaf_count = reader.u64()
        t.child_lo = reader.ints()
        t.child_cnt = reader.ints()
        t.labels = [c - 1 for c in reader.ints()]
        t.leaf_lo = reader.ints()
        t.leaf_hi = reader.ints()
        t.skips = succinct.DAC.read(reader)
        return t

    def __repr__(self):
        return "PatriciaTree(leaves=%d, nodes=%d)" % (self.leaf_count, self.node_count)


def compute_skips(tree, char_at):
    """Recompute every node's skip by comparing the leftmost and rightmost
    leaf strings below it one character at a time.

    ``char_at(rank, offset)`` returns a byte or None past the string end.
    """
    depth = [0] * tree.node_count
    skips = [0] * tree.node_count
    for v in range(tree.node_count):
        for u in range(tree.child_lo[v], tree.child_lo[v] + tree.child_cnt[v]):
            if tree.labels[u] == END:
                depth[u] = depth[v]
                continue
            lo, hi = tree.leaf_lo[u], tree.leaf_hi[u]
            d = depth[v] + 1
            while True:
                a = char_at(lo, d)
                if a is None or a != char_at(hi, d):
                    break
                d += 1
            depth[u] = d
            skips[u] = d - depth[v] - 1
    return skips


def binsearch_range(count, fetch, key):
    """Leaf range of sorted strings having ``key`` as prefix, by binary search.

    ``fetch(rank, m)`` returns the first ``m`` bytes of the string at leaf
    ``rank`` (fewer when the string is shorter).
    """
    m = len(key)
    if m == 0:
        return SearchRange(1, count, True)
    lo, hi = 1, count + 1
    while lo < hi:
        mid = (lo + hi) >> 1
        if fetch(mid, m) < key:
            lo = mid + 1
        else:
            hi = mid
    first = lo
    if first > count or fetch(first, m) != key:
        return EMPTY
    lo, hi = first, count + 1
    while lo < hi:
        mid = (lo + hi) >> 1
        if fetch(mid, m) == key:
            lo = mid + 1
        else:
            hi = mid
    return SearchRange(first, lo - 1, True)
