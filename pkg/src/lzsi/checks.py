"""Oracle-equivalence checks over one text, shared by ``lzsi selftest``."""
import random
from dataclasses import dataclass

from . import container
from .index import VARIANTS, ExtractTrace, IndexConfig, build_index
from .oracle import naive_classify, naive_locate
from .parsing import Flavor, parse, validate_parsing


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        return "%s %s%s" % ("PASS" if self.ok else "FAIL", self.name,
                            " (%s)" % self.detail if self.detail else "")


def sample_patterns(text, count, rng, max_len=20):
    """Patterns cut from the text plus random strings over its alphabet."""
    alphabet = sorted(set(text))
    out = []
    for q in range(count):
        m = rng.randint(1, max_len)
        if q % 2 == 0 and len(text) >= m:
            s = rng.randrange(len(text) - m + 1)
            out.append(text[s:s + m])
        else:
            out.append(bytes(rng.choice(alphabet) for _ in range(m)))
    return out


def run_checks(text, seed=0, ranges=100, patterns=50, variants=tuple(VARIANTS)):
    """Build every flavor x variant over ``text`` and compare against the oracles."""
    rng = random.Random(seed)
    text = bytes(text)
    n = len(text)
    pats = sample_patterns(text, patterns, rng)
    spans = []
    for _ in range(ranges):
        s = rng.randint(1, n)
        spans.append((s, rng.randint(s, min(n, s + 63))))
    results = []
    for flavor in Flavor:
        parsing = parse(text, flavor)
        rep = validate_parsing(parsing, text)
        results.append(CheckResult("%s parsing valid" % flavor.value, rep.ok, rep.message))
        answers = {}
        for v in variants:
            tag = "%s/v%d" % (flavor.value, v)
            idx = build_index(text, IndexConfig(flavor, v), parsing)
            bad = []
            for s, e in spans:
                tr = ExtractTrace()
                if idx.extract(s, e, tr) != text[s - 1:e] or tr.max_depth > idx.h:
                    bad.append((s, e))
            results.append(CheckResult("%s extract" % tag, not bad,
                                       "mismatch at %s" % (bad[:3],) if bad else ""))
            miss = []
            got = []
            for p in pats:
                occ = idx.locate(p)
                primary, _ = naive_classify(text, parsing, p)
                if occ.positions != naive_locate(text, p) or occ.primary_count != len(primary) \
                        or idx.exists(p) != bool(occ.positions):
                    miss.append(p)
                got.append(occ.positions)
            answers[v] = got
            results.append(CheckResult("%s locate" % tag, not miss,
                                       "mismatch for %r" % (miss[:3],) if miss else ""))
            again = container.loads(container.dumps(idx))
            same = all(again.locate(p).positions == g for p, g in zip(pats[:10], got))
            results.append(CheckResult("%s serialization" % tag, same))
        agree = all(a == answers[variants[0]] for a in answers.values())
        results.append(CheckResult("%s variants agree" % flavor.value, agree))
    return results
