"""Verification suites run over a corpus of rings.

Each suite visits the rings independently (optionally in a thread pool),
tallies checks, and records every failed statement with its witness.
Conditional statements are only checked on rings meeting their
hypotheses; the others are counted as vacuous.
"""

from __future__ import annotations

import math
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..classify import (
    CLOSURE_KINDS,
    EXCHANGE_CAP,
    closure_check,
    is_abelian,
    is_boolean,
    is_exchange,
    is_ni,
    is_nr,
    is_strongly_nil_clean,
    is_uu,
    one_plus_nil_closed,
    snc_idempotent,
)
from ..core.axioms import validate_axioms
from ..core.closure import quotient, subring_generated
from ..core.ring import ConsistencyError, RingTable, as_index, row_chunks
from ..nil import (
    koethe_sum_probe,
    koethe_z_construction,
    nil_report,
    nilpotent_indices,
    quasi_inverse_nilpotent,
)
from .corpus import CorpusSpec, generate_corpus, radical_rings

INDEX2_MAX_ORDER = 1024
KOETHE_SAMPLES = 1000
PATTERN_SAMPLES = 200
RADICAL_RINGS = 120


@dataclass
class SuiteResult:
    suite: str
    rings: int = 0
    checks: int = 0
    vacuous: int = 0
    violations: list = field(default_factory=list)
    ms: float = 0.0
    sampled: bool = False
    skipped: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        d = {"suite": self.suite, "rings": self.rings, "checks": self.checks,
             "vacuous": self.vacuous, "violations": self.violations,
             "ms": round(self.ms, 3)}
        if self.sampled:
            d["sampled"] = True
        if self.skipped:
            d["skipped"] = self.skipped
        if self.details:
            d["details"] = self.details
        return d


class Tally:
    """Per-ring accumulator merged into a SuiteResult."""

    def __init__(self, ring: RingTable):
        self.label = ring.label
        self.checks = 0
        self.vacuous = 0
        self.skipped = 0
        self.violations = []

    def check(self, ok, statement, witness=(), count=1):
        self.checks += count
        if not ok:
            self.fail(statement, witness)

    def fail(self, statement, witness=()):
        self.violations.append({"ring": self.label, "statement": statement,
                                "witness": [int(w) for w in witness]})

    def conditional(self, hypothesis, statement, conclusion, witness=()):
        """Check ``conclusion()`` only when ``hypothesis`` holds."""
        if hypothesis is None:
            self.skipped += 1
        elif not hypothesis:
            self.vacuous += 1
        else:
            ok, w = conclusion()
            self.check(ok, statement, w if w is not None else witness)


def _run(suite, rings, fn, jobs=1, sampled=False) -> SuiteResult:
    start = time.perf_counter()
    rings = list(rings)
    if jobs > 1 and len(rings) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            tallies = list(pool.map(fn, rings))
    else:
        tallies = [fn(r) for r in rings]
    res = SuiteResult(suite, sampled=sampled)
    for t in tallies:
        if t is None:
            res.skipped += 1
            continue
        res.rings += 1
        res.checks += t.checks
        res.vacuous += t.vacuous
        res.skipped += t.skipped
        res.violations.extend(t.violations)
    res.violations.sort(key=lambda v: (v["ring"], v["statement"]))
    res.ms = (time.perf_counter() - start) * 1000
    return res


def _ring_rng(seed, ring):
    return np.random.default_rng([seed, zlib.crc32(ring.label.encode())])


def _first_index(bad):
    return int(np.argmax(bad))


# -- independent recomputation --------------------------------------------

def lab_nil_mask(ring: RingTable) -> np.ndarray:
    """Nilpotents by repeated squaring: a nilpotent x has index at most
    |R|, so x is nilpotent iff x^(2^t) = 0 for 2^t >= |R|."""
    if "lab_nil" in ring._cache:
        return ring._cache["lab_nil"]
    p = np.arange(ring.order)
    for _ in range(max(1, math.ceil(math.log2(max(ring.order, 2))))):
        p = as_index(ring.times(p, p))
    mask = p == ring.zero
    ring._cache["lab_nil"] = mask
    return mask


def _lab_op(ring, kind, x, y):
    # written out separately from the classifier's combine()
    t, p, neg = ring.times, ring.plus, ring.negate
    if kind == "add":
        return p(y, x)
    if kind == "mul":
        return t(x, y)
    if kind == "circle":
        return p(x, p(y, neg(t(x, y))))
    if kind == "star":
        return p(t(x, y), p(y, x))
    if kind == "jordan":
        return p(t(y, x), t(x, y))
    if kind == "lie":
        return p(neg(t(y, x)), t(x, y))
    raise ValueError(kind)


def lab_closed(ring, kind, nil=None):
    """(closed, witness) for Nil(R) under the operation, all pairs."""
    nil = lab_nil_mask(ring) if nil is None else nil
    members = np.flatnonzero(nil)
    for rows in row_chunks(len(members), len(members)):
        bad = ~nil[as_index(_lab_op(ring, kind, members[rows][:, None], members[None, :]))]
        if bad.any():
            i, j = np.unravel_index(np.argmax(bad), bad.shape)
            return False, (int(members[rows][i]), int(members[j]))
    return True, None


def _nilstar_quotient(ring: RingTable) -> RingTable:
    if "nilstar_quotient" not in ring._cache:
        nstar = nil_report(ring).upper_nilradical
        if len(nstar) == 1:
            q = ring
        else:
            q = quotient(ring, nstar, label=f"{ring.label}/Nil*")
        ring._cache["nilstar_quotient"] = q
    return ring._cache["nilstar_quotient"]


# -- suites ---------------------------------------------------------------

def verify_axioms(corpus, jobs=1) -> SuiteResult:
    def one(ring):
        t = Tally(ring)
        bad = validate_axioms(ring)
        t.checks += 1
        for v in bad:
            t.fail(f"axiom:{v.axiom}", v.witness)
        return t
    return _run("axioms", corpus, one, jobs)


def verify_main_equivalences(corpus, jobs=1) -> SuiteResult:
    """Six closure properties of Nil(R) and NR agree; Köthe sum property holds."""
    def one(ring):
        t = Tally(ring)
        nil = lab_nil_mask(ring)
        t.check(np.array_equal(nil, nilpotent_indices(ring) > 0), "nil-set-agreement",
                (_first_index(nil != (nilpotent_indices(ring) > 0)),))
        verdicts = {}
        for kind in CLOSURE_KINDS:
            ok, w = lab_closed(ring, kind, nil)
            verdicts[kind] = ok
            cl = closure_check(ring, kind)
            t.check(cl.holds == ok, f"classifier-agreement:{kind}", w or cl.witness or ())
        members = np.flatnonzero(nil)
        verdicts["subring"] = subring_generated(ring, members).bits.sum() == len(members)
        t.check(bool(is_nr(ring).holds) == verdicts["subring"], "classifier-agreement:nr")
        t.check(len(set(map(bool, verdicts.values()))) == 1, "seven-verdicts-agree")
        kv = koethe_sum_probe(ring)
        t.check(kv.holds, "koethe-sum", kv.witness or ())
        return t

    return _run("main", corpus, one, jobs)


def verify_index2_lemmas(corpus, jobs=1, max_order=INDEX2_MAX_ORDER) -> SuiteResult:
    """x^2 = y^2 = 0 and op(x, y) nilpotent imply xy nilpotent, op in
    {+, ∘, Jordan, Lie}; every pair, every ring up to ``max_order``."""
    def one(ring):
        if ring.order > max_order:
            return None
        t = Tally(ring)
        nil = nilpotent_indices(ring) > 0
        s = np.flatnonzero(nilpotent_indices(ring) == 2)
        if not len(s):
            return t
        for rows in row_chunks(len(s), 4 * len(s)):
            x, y = s[rows][:, None], s[None, :]
            concl = nil[as_index(ring.times(x, y))]
            for kind in ("add", "circle", "jordan", "lie"):
                hyp = nil[as_index(_lab_op(ring, kind, x, y))]
                t.vacuous += int((~hyp).sum())
                bad = hyp & ~concl
                t.checks += int(hyp.sum())
                if bad.any():
                    i, j = np.unravel_index(np.argmax(bad), bad.shape)
                    t.fail(f"index2:{kind}", (s[rows][i], s[j]))
        return t
    return _run("index2", corpus, one, jobs)


def _power(ring, x, k):
    if k == 0:
        return None
    return as_index(ring.power(x, k))


def _times_chain(ring, factors):
    out = factors[0]
    for f in factors[1:]:
        out = as_index(ring.times(out, f))
    return out


def verify_semiprime_lemmas(corpus, jobs=1, seed=0) -> SuiteResult:
    """Statements about rings with Nil*(R) = 0; other rings are vacuous."""
    def one(ring):
        t = Tally(ring)
        rep = nil_report(ring)
        if len(rep.upper_nilradical) != 1:
            t.vacuous += 3
            return t
        rng = _ring_rng(seed, ring)
        idx = nilpotent_indices(ring)
        nil = idx > 0
        members = np.flatnonzero(nil)
        sq0 = np.flatnonzero((idx == 1) | (idx == 2))  # x^2 = 0
        x, y = sq0[:, None], members[None, :]

        # hypothesis: xy nilpotent whenever x^2 = 0 and y nilpotent
        h1 = bool(nil[as_index(ring.times(x, y))].all())
        if not h1:
            t.vacuous += 1
        else:
            for m in np.unique(idx[members]):
                xs = members[idx[members] == m][:, None]
                xy = as_index(ring.times(xs, y))
                tail = xs if m == 1 else as_index(ring.times(_power(ring, xy, m - 1), xs))
                bad = (tail != ring.zero) | (as_index(ring.power(xy, int(m))) != ring.zero)
                t.check(not bad.any(), "nil-product-index",
                        _pair(bad, xs[:, 0], members), count=bad.size)
            _exponent_patterns(ring, t, rng, idx, members)

        # hypothesis: xy nilpotent whenever x^2 = y^2 = 0
        sq = sq0[None, :]
        h2 = bool(nil[as_index(ring.times(x, sq))].all())
        if not h2:
            t.vacuous += 1
        else:
            for m in np.unique(idx[members]):
                n = max(1, math.ceil(math.log2(m))) if m > 1 else 1
                ys = members[idx[members] == m][None, :]
                xy = as_index(ring.times(x, ys))
                val = as_index(ring.times(_power(ring, xy, 2 ** (n - 1)), x))
                bad = val != ring.zero
                t.check(not bad.any(), "square-zero-times-nilpotent",
                        _pair(bad, sq0, ys[0]), count=bad.size)

        nr = is_nr(ring).holds
        if not nr:
            t.vacuous += 1
        else:
            _index2_products(ring, t, rng, idx)
        return t
    return _run("semiprime", corpus, one, jobs, sampled=True)


def _pair(bad, rows, cols):
    if not bad.any():
        return ()
    i, j = np.unravel_index(np.argmax(bad), bad.shape)
    return int(rows[i]), int(cols[j])


def _exponent_patterns(ring, t, rng, idx, members):
    """x1^n1 x2 x1^n2 ... xr x1^nr = 0 when x1^n = 0, sum n_i >= n (r <= 3)."""
    for _ in range(PATTERN_SAMPLES):
        r = int(rng.integers(2, 4))
        xs = [int(v) for v in rng.choice(members, size=r)]
        n = int(idx[xs[0]])
        exps = rng.integers(1, n + 1, size=r)
        while exps.sum() < n:
            exps[int(rng.integers(r))] += 1
        factors = [as_index(ring.power(xs[0], int(exps[0])))]
        for xi, ni in zip(xs[1:], exps[1:]):
            factors += [as_index(xi), as_index(ring.power(xs[0], int(ni)))]
        val = int(_times_chain(ring, factors))
        t.check(val == ring.zero, "exponent-pattern", xs + [int(e) for e in exps])


def _index2_products(ring, t, rng, idx):
    """NR with bounded index n: products of n index-2 nilpotents vanish."""
    n = int(idx.max())
    s = np.flatnonzero(idx == 2)
    if not len(s) or n < 1:
        t.vacuous += 1
        return
    if n <= 3 and len(s) ** n <= 1 << 24:
        grids = np.meshgrid(*([s] * n), indexing="ij")
        val = _times_chain(ring, [g.ravel() for g in grids])
        bad = val != ring.zero
        witness = [int(g.ravel()[np.argmax(bad)]) for g in grids] if bad.any() else ()
        t.check(not bad.any(), "index2-product", witness, count=bad.size)
    else:
        picks = rng.choice(s, size=(PATTERN_SAMPLES, n))
        val = _times_chain(ring, [picks[:, i] for i in range(n)])
        bad = val != ring.zero
        t.check(not bad.any(), "index2-product",
                picks[np.argmax(bad)] if bad.any() else (), count=bad.size)


def verify_quotient_theorems(corpus, jobs=1, exchange_cap=EXCHANGE_CAP) -> SuiteResult:
    def one(ring):
        t = Tally(ring)
        rep = nil_report(ring)
        nr = bool(is_nr(ring).holds)
        ex = is_exchange(ring, exchange_cap).holds
        ex_nr = None if ex is None else (ex and nr)
        q = _nilstar_quotient(ring)

        def abelian():
            v = is_abelian(q)
            return v.holds, v.witness
        t.conditional(nr, "nr-abelian-quotient", abelian)

        def reduced():
            nil = rep.nilpotents
            return len(nil) == 1, nil.tolist()[1:2]
        t.conditional(None if ex_nr is None else ex_nr and len(rep.upper_nilradical) == 1,
                      "exchange-nr-semiprime-reduced", reduced)

        def ni():
            v = is_ni(ring)
            return v.holds, v.witness
        t.conditional(ex_nr, "exchange-nr-ni", ni)

        def nil_in_j():
            bad = rep.nilpotents - rep.j_radical
            return not len(bad), bad.tolist()[:1]
        t.conditional(ex_nr, "exchange-nr-nil-in-j", nil_in_j)

        snc = bool(is_strongly_nil_clean(ring).holds)
        boolean = is_boolean(q)
        t.check(snc == bool(boolean.holds), "snc-iff-boolean-quotient", boolean.witness or ())
        return t
    return _run("quotient", corpus, one, jobs)


def verify_corollaries(corpus, jobs=1) -> SuiteResult:
    def one(ring):
        t = Tally(ring)
        rep = nil_report(ring)
        nil, q = rep.nilpotents, rep.q_set
        nr = bool(is_nr(ring).holds)
        t.check(nil <= q, "nil-inside-q", (nil - q).tolist()[:1])
        t.conditional(nil == q, "nil-equals-q-nr", lambda: (nr, None))
        if ring.one is not None:
            t.conditional(bool(is_uu(ring).holds), "uu-nr", lambda: (nr, None))
            v = one_plus_nil_closed(ring)
            t.check(bool(v.holds) == nr, "nr-iff-one-plus-nil-closed", v.witness or ())
        else:
            t.vacuous += 1
        closed, w = lab_closed(ring, "circle")
        inverses_ok, bad_q = True, ()
        for x in nil:
            r = quasi_inverse_nilpotent(ring, x)
            if r not in nil:
                inverses_ok, bad_q = False, (x, r)
                break
        t.check(inverses_ok, "quasi-inverse-in-nil", bad_q)
        t.check((closed and inverses_ok) == nr, "nr-iff-circle-subgroup", w or ())
        return t
    return _run("corollaries", corpus, one, jobs)


def verify_snc(corpus, jobs=1) -> SuiteResult:
    """Three strongly-nil-clean routes agree; e = (1-(1-a)^n)^n works for
    every a with (a - a^2)^n = 0."""
    def one(ring):
        t = Tally(ring)
        try:
            dec = is_strongly_nil_clean(ring)
        except ConsistencyError:
            t.fail("snc-routes-agree", ())
            return t
        t.checks += 1
        q = _nilstar_quotient(ring)
        t.check(bool(dec.holds) == bool(is_boolean(q).holds), "snc-iff-boolean-quotient",
                dec.witness or ())
        x = ring.elements()
        d = as_index(ring.minus(x, ring.times(x, x)))
        idx = nilpotent_indices(ring)[d]
        for n in np.unique(idx[idx > 0]):
            group = x[idx == n]
            try:
                snc_idempotent(ring, group, int(n))
                t.checks += len(group)
            except ConsistencyError as exc:
                t.fail(f"snc-idempotent:{exc}", (int(group[0]), int(n)))
        return t
    return _run("snc", corpus, one, jobs)


def verify_circle(corpus, jobs=1, seed=0, samples=KOETHE_SAMPLES) -> SuiteResult:
    def one(ring):
        t = Tally(ring)
        rep = nil_report(ring)
        nil = rep.nilpotents
        for q in nil:
            try:
                r = quasi_inverse_nilpotent(ring, q)
            except ConsistencyError:
                t.fail("quasi-inverse", (q,))
                continue
            t.check(r in nil, "quasi-inverse-nilpotent", (q, r))
        if ring.one is not None:
            shifted = np.zeros(ring.order, dtype=bool)
            shifted[as_index(ring.minus(ring.one, rep.q_set.indices()))] = True
            bad = shifted != rep.units.bits
            t.check(not bad.any(), "units-are-one-minus-q", (_first_index(bad),))
        members = nil.indices()
        rng = _ring_rng(seed, ring)
        xs = rng.integers(0, ring.order, size=samples)
        ys = rng.choice(members, size=samples)
        idx = nilpotent_indices(ring)
        for xv, yv in zip(xs.tolist(), ys.tolist()):
            try:
                z = koethe_z_construction(ring, xv, yv, int(idx[yv]))
            except ConsistencyError:
                t.fail("z-construction", (xv, yv))
                continue
            t.check(int(ring.circle(yv, z)) == int(ring.plus(xv, yv)), "z-construction",
                    (xv, yv))
        return t
    return _run("circle", corpus, one, jobs, sampled=True)


def probe_questions(spec: CorpusSpec | None = None, jobs=1, corpus=None,
                    radical_count=RADICAL_RINGS, exchange_cap=EXCHANGE_CAP) -> SuiteResult:
    """Search for (Q1) a ring whose nilpotents are multiplicatively closed
    but where a sum of nil principal left ideals is not nil, and (Q2) an
    exchange NR ring that is not NI.  Finite rings cannot produce either,
    so any finding points to a bug."""
    spec = spec or CorpusSpec()
    corpus = generate_corpus(spec) if corpus is None else list(corpus)
    extra = []
    if spec.families.get("radical", 0) > 0:
        extra = radical_rings(spec.seed, radical_count)
    radical_ids = {r.uid for r in extra}
    counts = {"q1_candidates": 0, "q2_candidates": 0, "radical_rings": 0,
              "radical_exchange": 0}

    def one(ring):
        t = Tally(ring)
        rep = nil_report(ring)
        is_radical = len(rep.j_radical) == ring.order
        ex = is_exchange(ring, exchange_cap)
        if closure_check(ring, "mul").holds:
            kv = koethe_sum_probe(ring)
            t.check(kv.holds, "q1-candidate", kv.witness or ())
        else:
            t.vacuous += 1
        nr = bool(is_nr(ring).holds)
        if ex.holds is None:
            t.skipped += 1
        elif ex.holds and nr:
            v = is_ni(ring)
            t.check(v.holds, "q2-candidate", v.witness or ())
        else:
            t.vacuous += 1
        if ring.uid in radical_ids:
            t.check(is_radical, "radical-family-is-radical")
        if is_radical:
            t.check(bool(ex.holds) or ex.holds is None, "radical-is-exchange")
        return t

    rings = corpus + extra
    res = _run("probe", rings, one, jobs)
    for v in res.violations:
        if v["statement"] == "q1-candidate":
            counts["q1_candidates"] += 1
        elif v["statement"] == "q2-candidate":
            counts["q2_candidates"] += 1
    for ring in rings:
        if len(nil_report(ring).j_radical) == ring.order:
            counts["radical_rings"] += 1
            counts["radical_exchange"] += bool(is_exchange(ring, exchange_cap).holds)
    counts["outcome"] = ("no counterexample found" if not counts["q1_candidates"]
                         and not counts["q2_candidates"] else "candidates found")
    res.details = counts
    return res


SUITES = ("axioms", "main", "index2", "semiprime", "quotient", "corollaries", "snc",
          "circle", "probe")


def run_suite(name: str, corpus, spec: CorpusSpec | None = None, jobs: int = 1,
              exchange_cap: int = EXCHANGE_CAP) -> SuiteResult:
    spec = spec or CorpusSpec()
    if name == "axioms":
        return verify_axioms(corpus, jobs)
    if name == "main":
        return verify_main_equivalences(corpus, jobs)
    if name == "index2":
        return verify_index2_lemmas(corpus, jobs)
    if name == "semiprime":
        return verify_semiprime_lemmas(corpus, jobs, seed=spec.seed)
    if name == "quotient":
        return verify_quotient_theorems(corpus, jobs, exchange_cap)
    if name == "corollaries":
        return verify_corollaries(corpus, jobs)
    if name == "snc":
        return verify_snc(corpus, jobs)
    if name == "circle":
        return verify_circle(corpus, jobs, seed=spec.seed)
    if name == "probe":
        return probe_questions(spec, jobs, corpus=corpus, exchange_cap=exchange_cap)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
