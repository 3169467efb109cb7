"""Acceptance criteria 1-8.  Each test records one PASS/FAIL line, printed
at the end of the pytest run (see conftest.py).  Run directly with
``python tests/test_acceptance.py``."""
import random
import time
from dataclasses import dataclass, field

import pytest

from corpus import E, oracle_cases, patterns, ranges
from lzsi import (BadMagicError, ExtractTrace, Flavor, IndexConfig, TruncatedError,
                  UnsupportedVersionError, build_index, compute_height, compute_source_depths,
                  container, lz_bits, parse, validate_parsing)
from lzsi.cli import bench
from lzsi.oracle import naive_classify, naive_locate, naive_prev_less
from lzsi.succinct import DAC, Permutation, PlainBitmap, SparseBitmap, WaveletTree

CASES = 1000
REPORT = {}
TITLES = {
    1: "worked example",
    2: "oracle equivalence",
    3: "variant equivalence",
    4: "succinct axioms",
    5: "space bound",
    6: "structural bounds",
    7: "serialization",
    8: "throughput (reported)",
}


def record(number, ok, detail):
    REPORT[number] = "%s criterion %d %s: %s" % ("PASS" if ok else "FAIL", number,
                                                 TITLES[number], detail)
    assert ok, REPORT[number]


# -- 1 ------------------------------------------------------------------------

E_PHRASES = [(0, 0, "a"), (0, 0, "l"), (1, 1, "b"), (1, 1, "r"), (0, 0, "_"), (1, 1, "_"),
             (2, 2, "_"), (1, 6, "d"), (1, 1, "$")]


def worked_example(idx):
    """Observed values on E next to the expected ones."""
    checks = [
        ("B ones", idx.B.positions(), [1, 2, 4, 6, 7, 9, 12, 19, 21]),
        ("select0(S,3)", idx.S.select0(3), 12),
        ("id", [idx._id(r) for r in range(1, idx.n_phrases + 1)], [5, 9, 6, 3, 1, 8, 4, 7, 2]),
        ("suffix range la", (idx.search_suffix(b"la").lo, idx.search_suffix(b"la").hi), (8, 9)),
        ("reverse range a", (idx.search_reverse(b"a").lo, idx.search_reverse(b"a").hi), (5, 5)),
        ("R points [8,9]x[5,5]", len(idx.R.range_report(8, 9, 5, 5)), 1),
        ("locate la", idx.locate(b"la").positions, [2, 10, 14]),
        ("locate ala", idx.locate(b"ala").positions, [1, 13]),
        ("primary la", idx.locate(b"la").primary_count, 1),
        ("primary ala", idx.locate(b"ala").primary_count, 1),
        ("h", idx.h, 3),
        ("delta", idx.delta, 1),
    ]
    return [(name, got, want) for name, got, want in checks if got != want]


def test_criterion_1_worked_example():
    t0 = time.perf_counter()
    pa = parse(E, Flavor.LZ77)
    got = [(ph.copy_start, ph.copy_len, chr(ph.explicit_char)) for ph in pa.phrases]
    bad = [] if got == E_PHRASES else [("phrases", got, E_PHRASES)]
    if compute_height(pa).h != 3 or compute_source_depths(pa).delta != 1:
        bad.append(("parsing h/delta", None, None))
    for variant in range(1, 6):
        idx = build_index(E, IndexConfig(Flavor.LZ77, variant), pa)
        bad += [("v%d %s" % (variant, name), g, w) for name, g, w in worked_example(idx)]
    elapsed = time.perf_counter() - t0
    record(1, not bad and elapsed < 1.0, "%d mismatches, %.2fs (limit 1s)%s" % (
        len(bad), elapsed, " first %r" % (bad[0],) if bad else ""))


# -- 2 and the shared randomized suite ---------------------------------------

@dataclass
class Suite:
    cases: int = 0
    seconds: float = 0.0
    failures: list = field(default_factory=list)
    depth_violations: list = field(default_factory=list)
    phrase_count_violations: list = field(default_factory=list)
    queries: list = field(default_factory=list)  # (text, parsings, patterns, answers)
    extractions: int = 0
    locates: int = 0


@pytest.fixture(scope="module")
def suite():
    out = Suite()
    t0 = time.perf_counter()
    for case, text, seed in oracle_cases(CASES):
        rng = random.Random(seed)
        pats = patterns(text, rng)
        spans = ranges(len(text), rng)
        answers = [naive_locate(text, p) for p in pats]
        parsings = {}
        for flavor in Flavor:
            pa = parse(text, flavor)
            parsings[flavor] = pa
            rep = validate_parsing(pa, text)
            if not rep.ok:
                out.failures.append((case, flavor.value, "parsing", rep.message))
            idx = build_index(text, IndexConfig(flavor, case % 5 + 1), pa)
            for s, e in spans:
                tr = ExtractTrace()
                if idx.extract(s, e, tr) != text[s - 1:e]:
                    out.failures.append((case, flavor.value, "extract", (s, e)))
                if tr.max_depth > idx.h:
                    out.depth_violations.append((case, flavor.value, (s, e), tr.max_depth, idx.h))
            out.extractions += len(spans)
            for p, want in zip(pats, answers):
                occ = idx.locate(p)
                primary, secondary = naive_classify(text, pa, p)
                if occ.positions != want:
                    out.failures.append((case, flavor.value, "locate", p))
                elif (occ.primary_count, occ.secondary_count) != (len(primary), len(secondary)):
                    out.failures.append((case, flavor.value, "classify", p))
            out.locates += len(pats)
        if len(parsings[Flavor.LZEND]) < len(parsings[Flavor.LZ77]):
            out.phrase_count_violations.append(case)
        out.queries.append((text, parsings, pats, answers))
        out.cases += 1
    out.seconds = time.perf_counter() - t0
    return out


def test_criterion_2_oracle_equivalence(suite):
    ok = suite.cases >= 1000 and not suite.failures and suite.seconds < 300
    record(2, ok, "%d cases, %d extractions, %d locates, %d failures, %.0fs (limit 300s)%s" % (
        suite.cases, suite.extractions, suite.locates, len(suite.failures), suite.seconds,
        " first %r" % (suite.failures[0],) if suite.failures else ""))


# -- 3 ------------------------------------------------------------------------

@dataclass
class VariantRun:
    mismatches: list = field(default_factory=list)
    trie_violations: list = field(default_factory=list)
    tries: int = 0
    seconds: float = 0.0


@pytest.fixture(scope="module")
def variant_run(suite):
    out = VariantRun()
    t0 = time.perf_counter()
    for case, (text, parsings, pats, answers) in enumerate(suite.queries):
        for flavor, pa in parsings.items():
            for variant in range(1, 6):
                idx = build_index(text, IndexConfig(flavor, variant), pa)
                got = [idx.locate(p).positions for p in pats]
                if got != answers:
                    out.mismatches.append((case, flavor.value, variant))
                for tree in (idx.suffix_tree, idx.reverse_tree):
                    if tree is not None:
                        out.tries += 1
                        if tree.node_count > 2 * idx.n_phrases:
                            out.trie_violations.append((case, flavor.value, variant,
                                                        tree.node_count, idx.n_phrases))
    out.seconds = time.perf_counter() - t0
    return out


def test_criterion_3_variant_equivalence(suite, variant_run):
    record(3, not variant_run.mismatches,
           "%d texts x 2 flavors x 5 variants, %d disagreements, %.0fs%s" % (
               len(suite.queries), len(variant_run.mismatches), variant_run.seconds,
               " first %r" % (variant_run.mismatches[0],) if variant_run.mismatches else ""))


# -- 4 ------------------------------------------------------------------------

def _bitmap_errors(bm, bits):
    ones = [i + 1 for i, b in enumerate(bits) if b]
    zeros = [i + 1 for i, b in enumerate(bits) if not b]
    errs = 0
    r = 0
    for i in range(len(bits) + 1):
        if i:
            r += bits[i - 1]
            errs += bm[i] != bits[i - 1]
        errs += bm.rank1(i) != r or bm.rank0(i) != i - r
    errs += sum(bm.select1(k) != p for k, p in enumerate(ones, 1))
    errs += sum(bm.select0(k) != p for k, p in enumerate(zeros, 1))
    return errs


def _wavelet_errors(wt, seq, rng):
    errs = sum(wt[i] != v for i, v in enumerate(seq, 1))
    top = max(seq)
    for c in range(top + 2):
        where = [i for i, v in enumerate(seq, 1) if v == c]
        errs += sum(wt.rank(c, i) != sum(1 for w in where if w <= i) for i in range(0, len(seq) + 1, 3))
        errs += sum(wt.select(c, k) != p for k, p in enumerate(where, 1))
    for _ in range(20):
        a, b = sorted(rng.randint(1, len(seq)) for _ in range(2))
        lo, hi = sorted(rng.randint(0, top) for _ in range(2))
        want = [(i, v) for i, v in enumerate(seq, 1) if a <= i <= b and lo <= v <= hi]
        errs += wt.range_report(a, b, lo, hi) != want
    for s in range(1, len(seq) + 2):
        d = rng.randint(0, top + 1)
        errs += wt.prev_less(s, d) != naive_prev_less(seq, s, d)
    return errs


def test_criterion_4_succinct_axioms():
    rng = random.Random(4)
    instances = 100
    errors = {}
    for name in ("plain", "sparse", "wavelet", "permutation", "dac"):
        errors[name] = 0
    for _ in range(instances):
        n = rng.randint(0, 700)
        density = rng.random()
        bits = [int(rng.random() < density) for _ in range(n)]
        errors["plain"] += _bitmap_errors(PlainBitmap(bits), bits)
        positions = [i + 1 for i, b in enumerate(bits) if b]
        errors["sparse"] += _bitmap_errors(
            SparseBitmap(positions, n, sample_rate=rng.choice([1, 2, 5, 32])), bits)
        seq = [rng.randint(0, rng.choice([1, 3, 9, 40])) for _ in range(rng.randint(1, 150))]
        errors["wavelet"] += _wavelet_errors(WaveletTree(seq), seq, rng)
        fwd = list(range(1, rng.randint(1, 300) + 1))
        rng.shuffle(fwd)
        perm = Permutation(fwd, rng.randint(1, 8))
        errors["permutation"] += sum(fwd[perm.inverse(j) - 1] != j for j in range(1, len(fwd) + 1))
        errors["permutation"] += sum(perm[i] != v for i, v in enumerate(fwd, 1))
        vals = [rng.randint(0, 1 << rng.randint(0, 40)) for _ in range(rng.randint(0, 300))]
        dac = DAC(vals, rng.randint(1, 8))
        errors["dac"] += sum(dac[i] != v for i, v in enumerate(vals, 1))
    bad = {k: v for k, v in errors.items() if v}
    record(4, not bad, "%d instances per structure (%s), errors %s" % (
        instances, ", ".join(errors), bad or "none"))


# -- 5 and 8 ------------------------------------------------------------------

def mutated_copies(seed_len=20_000, copies=100, rate=0.001, seed=5):
    """``copies`` copies of one random seed, each with its own point mutations."""
    rng = random.Random(seed)
    base = bytes(rng.randrange(256) for _ in range(seed_len))
    out = bytearray()
    for _ in range(copies):
        cur = bytearray(base)
        for _ in range(round(seed_len * rate)):
            cur[rng.randrange(seed_len)] = rng.randrange(256)
        out += cur
    return bytes(out)


@pytest.fixture(scope="module")
def big_index():
    text = mutated_copies()
    t0 = time.perf_counter()
    idx = build_index(text, IndexConfig(Flavor.LZ77, 5))
    data = container.dumps(idx)
    return idx, data, time.perf_counter() - t0


def test_criterion_5_space_bound(big_index):
    idx, data, seconds = big_index
    lz = lz_bits(idx.n, idx.n_phrases, idx.sigma)
    ratio = 8 * len(data) / lz
    record(5, ratio <= 3.0 and seconds < 120,
           "n=%d n'=%d, %d bits = %.2f x |LZ| (limit 3.0), %.1fs (limit 120s)" % (
               idx.n, idx.n_phrases, 8 * len(data), ratio, seconds))


# -- 6 ------------------------------------------------------------------------

def test_criterion_6_structural_bounds(suite, variant_run):
    ok = not (suite.depth_violations or suite.phrase_count_violations or variant_run.trie_violations)
    record(6, ok, "depth>h %d of %d extractions, n'(LZ-End)<n'(LZ77) %d of %d texts, "
                  "Patricia nodes>2n' %d of %d tries" % (
                      len(suite.depth_violations), suite.extractions,
                      len(suite.phrase_count_violations), suite.cases,
                      len(variant_run.trie_violations), variant_run.tries))


# -- 7 ------------------------------------------------------------------------

def test_criterion_7_serialization():
    bad = []
    for variant in range(1, 6):
        idx = build_index(E, IndexConfig(Flavor.LZ77, variant))
        data = container.dumps(idx)
        again = container.loads(data)
        bad += [("v%d %s" % (variant, name), g, w) for name, g, w in worked_example(again)]
        if container.dumps(again) != data:
            bad.append(("v%d bytes differ" % variant, None, None))
    data = container.dumps(build_index(E))
    corrupt = {
        "magic": b"XXXX" + data[4:],
        "version": data[:4] + (2).to_bytes(2, "little") + data[6:],
        "truncation": data[:len(data) - 7],
    }
    raised = {}
    for name, blob in corrupt.items():
        try:
            container.loads(blob)
            raised[name] = None
        except Exception as exc:  # noqa: BLE001 - the type is what we check
            raised[name] = type(exc)
    expected = {"magic": BadMagicError, "version": UnsupportedVersionError,
                "truncation": TruncatedError}
    ok = not bad and raised == expected and len(set(raised.values())) == 3
    record(7, ok, "round trip on 5 variants %s; corruptions raise %s" % (
        "identical" if not bad else "differs %r" % (bad[0],),
        ", ".join("%s->%s" % (k, v.__name__ if v else "nothing") for k, v in raised.items())))


# -- 8 ------------------------------------------------------------------------

def test_criterion_8_throughput(big_index):
    idx = big_index[0]
    rep = bench(idx, pattern_len=10, queries=100, extract_len=1000, seed=8)
    ok = rep["extract_chars_per_sec"] is not None and rep["usec_per_occurrence"] is not None
    record(8, ok, "%.0f chars/s extraction, %.1f usec/occurrence on n=%d (not gated)" % (
        rep["extract_chars_per_sec"] or 0, rep["usec_per_occurrence"] or 0, idx.n))


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
