"""Command-line front end.

Positions are 1-based everywhere.  Exit codes: 0 success, 1 usage,
2 I/O, 3 data or format error.
"""
import argparse
import json
import os
import random
import sys
import time

from . import container
from .checks import run_checks
from .errors import LZSIError, OutOfRangeError, ValidationError
from .index import VARIANTS, IndexConfig, build_index
from .parsing import Flavor, compute_height, compute_source_depths, parse
from .succinct import DEFAULT_SAMPLE_RATE

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_DATA = 0, 1, 2, 3
SELFTEST_LIMIT = 1 << 20


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("not an integer: %r" % text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1, got %d" % v)
    return v


def _non_negative(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("not an integer: %r" % text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0, got %d" % v)
    return v


def _default_sample_rate():
    env = os.environ.get("LZSI_SAMPLE_RATE")
    if env is None:
        return DEFAULT_SAMPLE_RATE
    try:
        return _positive(env)
    except argparse.ArgumentTypeError:
        raise UsageError("LZSI_SAMPLE_RATE must be a positive integer, got %r" % env)


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def _pattern(arg):
    if arg.startswith("@"):
        return _read(arg[1:])
    return arg.encode("utf-8")


def _out(line=""):
    sys.stdout.write(line + "\n")


def _emit_json(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


# -- verbs -------------------------------------------------------------------

def cmd_build(args):
    text = _read(args.input)
    if not text:
        raise ValidationError("empty input")
    rate = args.sample_rate or _default_sample_rate()
    idx = build_index(text, IndexConfig(args.flavor, args.variant, rate))
    data = container.dumps(idx)
    with open(args.output, "wb") as fh:
        fh.write(data)
    st = idx.stats()
    _out("n=%d n'=%d sigma=%d h=%d delta=%d" % (st.n, st.n_phrases, st.sigma, st.h, st.delta))
    _out("index_bytes=%d lz_bits=%d ratio=%.3f" % (len(data), st.lz_bits,
                                                    8 * len(data) / st.lz_bits if st.lz_bits else 0.0))
    for name, size in st.sizes.items():
        _out("  %-9s %d" % (name, size))
    return EXIT_OK


def cmd_locate(args):
    pattern = _pattern(args.pattern)
    idx = container.load(args.index)
    occ = idx.locate(pattern)
    if args.json:
        _emit_json(occ.positions)
    else:
        for pos in occ.positions:
            _out(str(pos))
    return EXIT_OK


def cmd_count(args):
    pattern = _pattern(args.pattern)
    idx = container.load(args.index)
    # no cheaper count exists in this index family: it is |locate|
    _out(str(idx.count(pattern)))
    return EXIT_OK


def cmd_exists(args):
    pattern = _pattern(args.pattern)
    idx = container.load(args.index)
    _out("true" if idx.exists(pattern) else "false")
    return EXIT_OK


def cmd_extract(args):
    idx = container.load(args.index)
    end = args.start + args.length - 1
    if end > idx.n:
        raise OutOfRangeError("range [%d, %d] outside text of length %d" % (args.start, end, idx.n))
    sys.stdout.buffer.write(idx.extract(args.start, end))
    sys.stdout.flush()
    return EXIT_OK


def cmd_parse(args):
    text = _read(args.input)
    parsing = parse(text, args.flavor)
    if args.json:
        _emit_json({
            "flavor": parsing.flavor.value, "n": parsing.text_len, "n_prime": len(parsing),
            "phrases": [[ph.copy_start, ph.copy_len, ph.explicit_char] for ph in parsing.phrases],
        })
        return EXIT_OK
    _out("# flavor=%s n=%d n'=%d" % (parsing.flavor.value, parsing.text_len, len(parsing)))
    _out("# phrase start length copy_start copy_len last_char")
    for k, (start, ph) in enumerate(zip(parsing.starts(), parsing.phrases), 1):
        _out("%d %d %d %d %d %r" % (k, start, ph.length, ph.copy_start, ph.copy_len,
                                    bytes([ph.explicit_char])))
    if text:
        _out("# h=%d delta=%d" % (compute_height(parsing).h, compute_source_depths(parsing).delta))
    return EXIT_OK


def cmd_stats(args):
    idx = container.load(args.index)
    st = idx.stats()
    info = st.as_dict()
    info.update(flavor=idx.config.flavor.value, variant=idx.config.variant)
    if args.json:
        _emit_json(info)
    else:
        for key in ("flavor", "variant", "n", "n_prime", "sigma", "h", "delta", "avg_c",
                    "avg_depth", "lz_bits", "index_bytes"):
            _out("%-11s %s" % (key, info[key]))
        for name, size in st.sizes.items():
            _out("  %-9s %d" % (name, size))
    return EXIT_OK


def bench(idx, pattern_len, queries, extract_len, seed=0):
    """Time random m-gram locates and random extractions on ``idx``."""
    rng = random.Random(seed)
    report = {"n": idx.n, "n_prime": idx.n_phrases, "variant": idx.config.variant,
              "flavor": idx.config.flavor.value, "queries": queries,
              "pattern_len": pattern_len, "extract_len": extract_len,
              "extract_chars_per_sec": None, "usec_per_occurrence": None}
    if queries == 0:
        return report
    starts = [rng.randint(1, idx.n - extract_len + 1) for _ in range(queries)]
    t0 = time.perf_counter()
    for s in starts:
        idx.extract(s, s + extract_len - 1)
    elapsed = time.perf_counter() - t0
    report["extract_chars_per_sec"] = queries * extract_len / elapsed if elapsed else None
    # patterns are sampled through the index itself
    pats = []
    for _ in range(queries):
        s = rng.randint(1, idx.n - pattern_len + 1)
        pats.append(idx.extract(s, s + pattern_len - 1))
    occs = 0
    t0 = time.perf_counter()
    for p in pats:
        occs += len(idx.locate(p))
    elapsed = time.perf_counter() - t0
    report["occurrences"] = occs
    report["usec_per_occurrence"] = 1e6 * elapsed / occs if occs else None
    return report


def cmd_bench(args):
    idx = container.load(args.index)
    if args.queries and args.pattern_len > idx.n:
        raise UsageError("pattern length %d exceeds text length %d" % (args.pattern_len, idx.n))
    if args.queries and args.extract_len > idx.n:
        raise UsageError("extract length %d exceeds text length %d" % (args.extract_len, idx.n))
    report = bench(idx, args.pattern_len, args.queries, args.extract_len, args.seed)
    if args.json:
        _emit_json(report)
    else:
        for key in ("flavor", "variant", "n", "n_prime", "queries", "extract_chars_per_sec",
                    "usec_per_occurrence"):
            _out("%-22s %s" % (key, report[key]))
    return EXIT_OK


def cmd_selftest(args):
    text = _read(args.input)[:SELFTEST_LIMIT]
    if not text:
        raise ValidationError("empty input")
    results = run_checks(text, seed=args.seed, ranges=args.ranges, patterns=args.patterns)
    for res in results:
        _out(res.line())
    failed = sum(not r.ok for r in results)
    _out("%d checks, %d failed" % (len(results), failed))
    return EXIT_OK if not failed else EXIT_DATA


# -- wiring ------------------------------------------------------------------

def make_parser():
    ap = _Parser(prog="lzsi", description="LZ77 / LZ-End self-index. Positions are 1-based.")
    sub = ap.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("build", help="build an index file from a text file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--flavor", choices=[f.value for f in Flavor], default=Flavor.LZ77.value)
    p.add_argument("--variant", type=int, choices=sorted(VARIANTS), default=5,
                   help="; ".join("%d: %s" % kv for kv in VARIANTS.items()))
    p.add_argument("--sample-rate", type=_positive, default=None,
                   help="sparse bitmap sampling (default %d or $LZSI_SAMPLE_RATE)" % DEFAULT_SAMPLE_RATE)
    p.set_defaults(func=cmd_build)

    for verb, func, doc in (("locate", cmd_locate, "print every occurrence position"),
                            ("count", cmd_count, "print the number of occurrences (= |locate|)"),
                            ("exists", cmd_exists, "print true/false")):
        p = sub.add_parser(verb, help=doc)
        p.add_argument("index")
        p.add_argument("pattern", help="UTF-8 pattern, or @FILE for raw bytes")
        if verb == "locate":
            p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("extract", help="write text[start, start+length-1] to stdout")
    p.add_argument("index")
    p.add_argument("start", type=_positive)
    p.add_argument("length", type=_positive)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("parse", help="dump the LZ parsing of a text file")
    p.add_argument("input")
    p.add_argument("--flavor", choices=[f.value for f in Flavor], default=Flavor.LZ77.value)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("stats", help="print index statistics and component sizes")
    p.add_argument("index")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="time extraction and locate on random queries")
    p.add_argument("index")
    p.add_argument("--pattern-len", type=_positive, default=10)
    p.add_argument("--queries", type=_non_negative, default=100)
    p.add_argument("--extract-len", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="check every flavor/variant against brute force")
    p.add_argument("input")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ranges", type=_non_negative, default=100)
    p.add_argument("--patterns", type=_non_negative, default=50)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None):
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write("lzsi: usage error: %s\n" % exc)
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write("lzsi: %s\n" % exc)
        return EXIT_IO
    except LZSIError as exc:
        sys.stderr.write("lzsi: %s\n" % exc)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
