import struct
import zlib

import pytest

from corpus import E
from lzsi import (BadMagicError, ChecksumError, Flavor, FormatError, IndexConfig,
                  TruncatedError, UnsupportedVersionError, build_index, container)


@pytest.mark.parametrize("flavor", list(Flavor))
@pytest.mark.parametrize("variant", range(1, 6))
def test_round_trip(flavor, variant, tmp_path):
    idx = build_index(E, IndexConfig(flavor, variant, sample_rate=3))
    path = tmp_path / "e.lzsi"
    container.dump(idx, path)
    again = container.load(path)
    # perm_period 0 means "auto"; the loaded config holds the resolved value
    assert (again.config.flavor, again.config.variant, again.config.sample_rate) == (flavor, variant, 3)
    assert again.config.perm_period == idx.P.period
    assert (again.n, again.n_phrases, again.h, again.delta) == (idx.n, idx.n_phrases, idx.h, idx.delta)
    assert again.extract(1, again.n) == E
    for p in (b"la", b"ala", b"a", b"$", b"bb", E):
        assert again.locate(p) == idx.locate(p)
    assert container.dumps(again) == path.read_bytes()


def data():
    return container.dumps(build_index(E))


def test_bad_magic():
    with pytest.raises(BadMagicError, match="bad magic"):
        container.loads(b"NOPE" + data()[4:])
    with pytest.raises(BadMagicError):
        container.loads(b"")


def test_unsupported_version():
    d = data()
    with pytest.raises(UnsupportedVersionError, match="unsupported version"):
        container.loads(d[:4] + struct.pack("<H", 2) + d[6:])


@pytest.mark.parametrize("cut", [8, 30, 200, 1])
def test_truncation(cut):
    d = data()
    with pytest.raises(TruncatedError):
        container.loads(d[:len(d) - cut])


def test_checksum():
    d = bytearray(data())
    d[-3] ^= 0xFF
    with pytest.raises(ChecksumError):
        container.loads(bytes(d))


def test_error_types_are_distinct_format_errors():
    kinds = {BadMagicError, UnsupportedVersionError, TruncatedError, ChecksumError}
    assert len(kinds) == 4 and all(issubclass(k, FormatError) for k in kinds)


def test_unknown_section_ignored():
    idx = build_index(E)
    again = container.loads(container.dumps(idx, extra={b"XTRA": b"hello"}))
    assert again.locate(b"la").positions == [2, 10, 14]


def test_missing_section_rejected():
    d = container.dumps(build_index(E))
    magic, version, flavor, variant, count = struct.unpack_from("<4sHBBI", d)
    entry = struct.Struct("<4sQQI")
    # rename the first section's tag so it is no longer recognised
    tag, off, length, crc = entry.unpack_from(d, 12)
    patched = d[:12] + entry.pack(b"ZZZZ", off, length, crc) + d[12 + entry.size:]
    with pytest.raises(FormatError, match="missing"):
        container.loads(patched)


def test_section_sizes_cover_file():
    idx = build_index(E)
    assert sum(container.section_sizes(idx).values()) == len(container.dumps(idx))
    assert zlib.crc32(b"") == 0
