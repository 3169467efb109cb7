"""On-disk container for LZIndex.

Layout (little endian)::

    "LZSI"  u16 version  u8 flavor  u8 variant
    u32 section count
    per section: 4-byte tag, u64 offset, u64 length, u32 CRC32
    section payloads

Unknown section tags are ignored on load.
"""
import struct
import zlib

from . import succinct
from .succinct.bits import Reader, blob, ints, u64
from .errors import (BadMagicError, ChecksumError, FormatError, TruncatedError,
                     UnsupportedVersionError)
from .index import IndexConfig, LZIndex
from .parsing import Flavor
from .patricia import PatriciaTree

MAGIC = b"LZSI"
VERSION = 1
_FLAVORS = {Flavor.LZ77: 0, Flavor.LZEND: 1}
_HEADER = struct.Struct("<4sHBBI")
_ENTRY = struct.Struct("<4sQQI")

SECTIONS = (b"TMET", b"LCHR", b"BBMP", b"SBMP", b"PERM", b"DWT ", b"RWT ", b"SUFS", b"REVS")
SECTION_NAMES = {
    b"TMET": "TEXTMETA", b"LCHR": "LCHARS", b"BBMP": "BBITMAP", b"SBMP": "SBITMAP",
    b"PERM": "PERM", b"DWT ": "DWT", b"RWT ": "RWT", b"SUFS": "SUFSIDE", b"REVS": "REVSIDE",
}

_SIDE_NONE, _SIDE_IDS, _SIDE_TRIE = 0, 1, 2


def _fixed_point(x):
    return int(round(x * 1_000_000))


def _sections(idx):
    cfg = idx.config
    meta = b"".join(u64(v) for v in (
        idx.n, idx.n_phrases, idx.sigma, idx.h, idx.delta,
        cfg.sample_rate, idx.P.period, cfg.dac_width, idx.last_rev_rank,
        _fixed_point(idx.avg_c), _fixed_point(idx.avg_depth)))
    if idx.suffix_tree is not None:
        suf = bytes([_SIDE_TRIE]) + idx.suffix_tree.to_bytes()
    elif idx.id is not None:
        suf = bytes([_SIDE_IDS]) + ints(idx.id)
    else:
        suf = bytes([_SIDE_NONE])
    rev = ints(idx.rev_id)
    rev += bytes([_SIDE_TRIE]) + idx.reverse_tree.to_bytes() if idx.reverse_tree is not None \
        else bytes([_SIDE_NONE])
    return {
        b"TMET": meta,
        b"LCHR": _pack_chars(idx.L),
        b"BBMP": idx.B.to_bytes(),
        b"SBMP": idx.S.to_bytes(),
        b"PERM": idx.P.to_bytes(),
        b"DWT ": idx.D.to_bytes(),
        b"RWT ": idx.R.to_bytes(),
        b"SUFS": suf,
        b"REVS": rev,
    }


def _pack_chars(L):
    """Phrase last characters mapped to a dense alphabet and bit packed."""
    alphabet = sorted(set(L))
    code = {c: i for i, c in enumerate(alphabet)}
    width = max(1, (len(alphabet) - 1).bit_length())
    return blob(bytes(alphabet)) + ints([code[c] for c in L], width)


def _unpack_chars(reader):
    alphabet = reader.blob()
    return bytes(alphabet[c] for c in reader.ints())


def section_sizes(idx):
    """Payload bytes per section; HEADER covers the header and section table."""
    sections = _sections(idx)
    sizes = {"HEADER": _HEADER.size + _ENTRY.size * len(sections)}
    sizes.update((SECTION_NAMES[tag], len(data)) for tag, data in sections.items())
    return sizes


def dumps(idx, extra=None):
    """Serialize ``idx``; ``extra`` maps additional 4-byte tags to payloads."""
    sections = _sections(idx)
    if extra:
        sections.update(extra)
    header = _HEADER.pack(MAGIC, VERSION, _FLAVORS[idx.config.flavor], idx.config.variant,
                          len(sections))
    offset = len(header) + _ENTRY.size * len(sections)
    table = []
    for tag, data in sections.items():
        table.append(_ENTRY.pack(tag, offset, len(data), zlib.crc32(data)))
        offset += len(data)
    return header + b"".join(table) + b"".join(sections.values())


def dump(idx, path):
    with open(path, "wb") as fh:
        fh.write(dumps(idx))


def loads(data):
    data = memoryview(bytes(data))
    if len(data) < 4 or bytes(data[:4]) != MAGIC:
        raise BadMagicError()
    if len(data) < _HEADER.size:
        raise TruncatedError("header truncated")
    _, version, flavor, variant, count = _HEADER.unpack_from(data)
    if version != VERSION:
        raise UnsupportedVersionError("unsupported version %d" % version)
    if len(data) < _HEADER.size + count * _ENTRY.size:
        raise TruncatedError("section table truncated")
    sections = {}
    for e in range(count):
        tag, off, length, crc = _ENTRY.unpack_from(data, _HEADER.size + e * _ENTRY.size)
        if off + length > len(data):
            raise TruncatedError("section %r truncated" % tag.decode("latin-1"))
        payload = data[off:off + length]
        if zlib.crc32(payload) != crc:
            raise ChecksumError("checksum failure in section %r" % tag.decode("latin-1"))
        sections[tag] = payload
    missing = [t for t in SECTIONS if t not in sections]
    if missing:
        raise FormatError("missing sections: %s" % ", ".join(t.decode() for t in missing))
    flavors = {v: k for k, v in _FLAVORS.items()}
    if flavor not in flavors:
        raise FormatError("unknown flavor code %d" % flavor)
    try:
        return _assemble(sections, flavors[flavor], variant)
    except (ValueError, IndexError, struct.error) as exc:
        raise FormatError("malformed section data: %s" % exc) from exc


def _assemble(sec, flavor, variant):
    idx = LZIndex()
    r = Reader(sec[b"TMET"])
    (idx.n, idx.n_phrases, idx.sigma, idx.h, idx.delta, rate, period, dac_width,
     idx.last_rev_rank, avg_c, avg_depth) = (r.u64() for _ in range(11))
    idx.avg_c = avg_c / 1_000_000
    idx.avg_depth = avg_depth / 1_000_000
    idx.config = IndexConfig(flavor, variant, rate, period, dac_width)
    idx.L = _unpack_chars(Reader(sec[b"LCHR"]))
    idx.B = succinct.SparseBitmap.read(Reader(sec[b"BBMP"]))
    idx.S = succinct.SparseBitmap.read(Reader(sec[b"SBMP"]))
    idx.P = succinct.Permutation.read(Reader(sec[b"PERM"]))
    idx.D = succinct.WaveletTree.read(Reader(sec[b"DWT "]))
    idx.R = succinct.WaveletTree.read(Reader(sec[b"RWT "]))
    r = Reader(sec[b"SUFS"])
    kind = r.u8()
    if kind == _SIDE_TRIE:
        idx.suffix_tree = PatriciaTree.read(r)
    elif kind == _SIDE_IDS:
        idx.id = r.ints()
    r = Reader(sec[b"REVS"])
    idx.rev_id = r.ints()
    if r.u8() == _SIDE_TRIE:
        idx.reverse_tree = PatriciaTree.read(r)
    if len(idx.L) != idx.n_phrases or idx.B.ones != idx.n_phrases:
        raise FormatError("inconsistent phrase count")
    return idx


def load(path):
    with open(path, "rb") as fh:
        return loads(fh.read())
