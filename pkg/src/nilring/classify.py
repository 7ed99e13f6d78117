"""Named ring properties with witnesses and decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core.constructions import DorrohOps
from .core.ring import ConsistencyError, NotUnitalError, RingTable, as_index, row_chunks
from .nil import nil_mask, nil_report, nilpotency_index

EXCHANGE_CAP = 4096

CLOSURE_KINDS = ("add", "mul", "circle", "star", "jordan", "lie")


def combine(ring: RingTable, kind: str, x, y):
    """x+y, xy, x∘y, x∗y = x+y+xy, xy+yx or xy-yx."""
    if kind == "add":
        return ring.plus(x, y)
    if kind == "mul":
        return ring.times(x, y)
    if kind == "circle":
        return ring.circle(x, y)
    if kind == "star":
        return ring.plus(ring.plus(x, y), ring.times(x, y))
    if kind == "jordan":
        return ring.plus(ring.times(x, y), ring.times(y, x))
    if kind == "lie":
        return ring.minus(ring.times(x, y), ring.times(y, x))
    raise ValueError(f"unknown operation {kind!r}")


@dataclass
class Verdict:
    holds: bool | None
    witness: tuple | None = None
    note: str | None = None
    details: dict = field(default_factory=dict, repr=False)

    def __bool__(self):
        return bool(self.holds)

    def to_dict(self):
        d = {"holds": self.holds,
             "witness": None if self.witness is None else [int(w) for w in self.witness]}
        if self.note:
            d["note"] = self.note
        return d


def _first_pair(bad, rows, cols):
    i, j = np.unravel_index(np.argmax(bad), bad.shape)
    return int(rows[i]), int(cols[j])


def closure_check(ring: RingTable, op_kind: str) -> Verdict:
    """Is Nil(R) closed under the given operation?  Witness: first (x, y)."""
    nil = nil_mask(ring)
    members = np.flatnonzero(nil)
    for rows in row_chunks(len(members), len(members)):
        vals = combine(ring, op_kind, members[rows][:, None], members[None, :])
        bad = ~nil[vals]
        if bad.any():
            return Verdict(False, _first_pair(bad, members[rows], members))
    return Verdict(True)


def is_nr(ring: RingTable) -> Verdict:
    """Nil(R) is a subring: closed under + and · (negation is automatic)."""
    add, mul = closure_check(ring, "add"), closure_check(ring, "mul")
    if add and mul:
        return Verdict(True)
    witnesses = [v.witness for v in (add, mul) if not v]
    return Verdict(False, min(witnesses))


def is_ni(ring: RingTable) -> Verdict:
    """Nil(R) is a two-sided ideal.  Absorption witness: (r, x)."""
    nr = is_nr(ring)
    if not nr:
        return Verdict(False, nr.witness, note="not NR")
    nil = nil_mask(ring)
    members = np.flatnonzero(nil)
    for rows in row_chunks(ring.order, 2 * len(members)):
        bad = ~nil[ring.times(rows[:, None], members[None, :])]
        bad |= ~nil[ring.times(members[None, :], rows[:, None])]
        if bad.any():
            return Verdict(False, _first_pair(bad, rows, members))
    return Verdict(True)


def is_abelian(ring: RingTable) -> Verdict:
    """Every idempotent is central.  Witness: (e, x)."""
    allx = ring.elements()
    for e in nil_report(ring).idempotents:
        bad = as_index(ring.times(e, allx)) != as_index(ring.times(allx, e))
        if bad.any():
            return Verdict(False, (e, int(np.argmax(bad))))
    return Verdict(True)


def is_boolean(ring: RingTable) -> Verdict:
    x = ring.elements()
    bad = as_index(ring.times(x, x)) != x
    if bad.any():
        return Verdict(False, (int(np.argmax(bad)),))
    return Verdict(True)


def _require_unit(ring, what):
    if ring.one is None:
        raise NotUnitalError(f"{what} needs a unital ring")


def is_uu(ring: RingTable) -> Verdict:
    """U(R) = 1 + Nil(R).  Witness: a unit outside 1 + Nil(R)."""
    _require_unit(ring, "UU")
    report = nil_report(ring)
    one_plus_nil = np.zeros(ring.order, dtype=bool)
    one_plus_nil[as_index(ring.plus(ring.one, report.nilpotents.indices()))] = True
    bad = report.units.bits != one_plus_nil
    if bad.any():
        return Verdict(False, (int(np.argmax(bad)),))
    return Verdict(True)


def _membership(ring, values):
    """Row-wise membership matrix: out[i, v] is True iff v occurs in values[i]."""
    out = np.zeros((values.shape[0], ring.order), dtype=bool)
    rows = np.repeat(np.arange(values.shape[0]), values.shape[1])
    out[rows, as_index(values).ravel()] = True
    return out


def is_exchange(ring: RingTable, cap: int = EXCHANGE_CAP) -> Verdict:
    """Every a has an idempotent e with e = ra and e = s∘a for some r, s in R.

    Details hold one witness (e, r, s) per element.  For unital rings the
    reformulation e ∈ Ra, 1 - e ∈ R(1 - a) is computed as well and must
    select exactly the same idempotents.
    """
    if ring.order > cap:
        return Verdict(None, note=f"not computed (order {ring.order} > exchange cap {cap})")
    if "exchange" not in ring._cache:
        ring._cache["exchange"] = _exchange(ring)
    return ring._cache["exchange"]


def _exchange(ring: RingTable) -> Verdict:
    allx = ring.elements()
    idem = nil_report(ring).idempotents.bits
    witnesses = {}
    for rows in row_chunks(ring.order, 4 * ring.order):
        ra = as_index(ring.times(allx[None, :], rows[:, None]))
        sa = as_index(ring.circle(allx[None, :], rows[:, None]))
        good = _membership(ring, ra) & _membership(ring, sa) & idem[None, :]
        if ring.one is not None:
            one_minus = as_index(ring.minus(ring.one, rows))
            alt = as_index(ring.times(allx[None, :], one_minus[:, None]))
            comp = as_index(ring.minus(ring.one, allx))
            alt_good = _membership(ring, ra) & _membership(ring, alt)[:, comp] & idem[None, :]
            if not np.array_equal(good, alt_good):
                i, _ = np.unravel_index(np.argmax(good != alt_good), good.shape)
                raise ConsistencyError(
                    f"exchange forms disagree at a={int(rows[i])} in {ring.label}")
        has = good.any(axis=1)
        if not has.all():
            return Verdict(False, (int(rows[np.argmin(has)]),))
        for i, a in enumerate(rows):
            e = int(np.argmax(good[i]))
            r = int(np.argmax(ra[i] == e))
            s = int(np.argmax(sa[i] == e))
            witnesses[int(a)] = (e, r, s)
    return Verdict(True, details={"witnesses": witnesses})


def _decompose(ring, summand_ok):
    """First idempotent e (by index) with summand_ok(a - e) for each a."""
    allx = ring.elements()
    choice = np.full(ring.order, -1, dtype=np.int64)
    for e in nil_report(ring).idempotents:
        rest = as_index(ring.minus(allx, e))
        ok = summand_ok(e, rest) & (choice < 0)
        choice[ok] = e
        if (choice >= 0).all():
            break
    return choice


def _decomposition_verdict(ring, choice):
    if (choice < 0).any():
        return Verdict(False, (int(np.argmin(choice >= 0)),))
    allx = ring.elements()
    rest = as_index(ring.minus(allx, choice))
    return Verdict(True, details={"decompositions": {
        int(a): (int(e), int(r)) for a, e, r in zip(allx, choice, rest)}})


def is_clean(ring: RingTable) -> Verdict:
    """Every element is idempotent + unit."""
    _require_unit(ring, "clean")
    u = nil_report(ring).units.bits
    return _decomposition_verdict(ring, _decompose(ring, lambda e, rest: u[rest]))


def is_nil_clean(ring: RingTable) -> Verdict:
    """Every element is idempotent + nilpotent."""
    _require_unit(ring, "nil clean")
    nil = nil_mask(ring)
    return _decomposition_verdict(ring, _decompose(ring, lambda e, rest: nil[rest]))


def strongly_nil_clean_elements(ring: RingTable):
    """Per-element verdicts of the two routes: (decomposition search, a - a^2 nilpotent)."""
    nil = nil_mask(ring)

    def commuting_nil(e, q):
        return nil[q] & (as_index(ring.times(e, q)) == as_index(ring.times(q, e)))

    choice = _decompose(ring, commuting_nil)
    x = ring.elements()
    criterion = nil[ring.minus(x, ring.times(x, x))]
    return choice, criterion


def is_strongly_nil_clean(ring: RingTable) -> Verdict:
    """Every a = e + q with e idempotent, q nilpotent and eq = qe.

    Computed both by searching decompositions and by testing a - a^2 for
    nilpotency; the two must agree element by element.
    """
    choice, criterion = strongly_nil_clean_elements(ring)
    found = choice >= 0
    if not np.array_equal(found, criterion):
        a = int(np.argmax(found != criterion))
        raise ConsistencyError(
            f"strongly nil clean routes disagree at a={a} in {ring.label}")
    return _decomposition_verdict(ring, choice)


def snc_idempotent(ring: RingTable, a, n: int):
    """e = (1 - (1 - a)^n)^n computed in the Dorroh unitalisation.

    Requires (a - a^2)^n = 0.  Checks that e lies in R, e^2 = e, ae = ea
    and (a - e)^n = 0, and returns e as element(s) of R.  ``a`` may be an
    array of elements sharing the same n.
    """
    a = as_index(a)
    if n < 1:
        raise ValueError("n must be positive")
    sq = as_index(ring.minus(a, ring.times(a, a)))
    if (as_index(ring.power(sq, n)) != ring.zero).any():
        raise ValueError(f"(a - a^2)^{n} != 0")
    m = ring.exponent
    ops = DorrohOps(ring, m)
    one = ops.join(1, ring.zero)
    big_a = ops.join(0, a)

    def pw(x, k):
        out = x
        for _ in range(k - 1):
            out = ops.mul(out, x)
        return out

    one_minus_a = ops.add(one, ops.neg(big_a, None))
    big_e = pw(ops.add(one, ops.neg(pw(one_minus_a, n), None)), n)
    k, e = ops.split(big_e)
    if (k != 0).any():
        raise ConsistencyError("e is not in the embedded copy of R")
    e = as_index(e)
    if (as_index(ring.times(e, e)) != e).any():
        raise ConsistencyError("e is not idempotent")
    if (as_index(ring.times(a, e)) != as_index(ring.times(e, a))).any():
        raise ConsistencyError("e does not commute with a")
    if (as_index(ring.power(ring.minus(a, e), n)) != ring.zero).any():
        raise ConsistencyError("(a - e)^n != 0")
    return e if e.ndim else int(e)


def bounded_index(ring: RingTable) -> int:
    return nil_report(ring).bound


def one_plus_nil_closed(ring: RingTable) -> Verdict:
    """Unital rings: is 1 + Nil(R) closed under multiplication?"""
    _require_unit(ring, "1 + Nil(R)")
    members = nil_report(ring).nilpotents.indices()
    shifted = as_index(ring.plus(ring.one, members))
    inside = np.zeros(ring.order, dtype=bool)
    inside[shifted] = True
    for rows in row_chunks(len(shifted), len(shifted)):
        bad = ~inside[ring.times(shifted[rows][:, None], shifted[None, :])]
        if bad.any():
            return Verdict(False, _first_pair(bad, shifted[rows], shifted))
    return Verdict(True)


@dataclass
class ClassificationReport:
    label: str
    order: int
    unital: bool
    nr: Verdict
    ni: Verdict
    abelian: Verdict
    boolean: Verdict
    uu: Verdict
    exchange: Verdict
    clean: Verdict
    nil_clean: Verdict
    strongly_nil_clean: Verdict
    bounded_index: int
    closure: dict

    PROPERTIES = ("nr", "ni", "abelian", "boolean", "uu", "exchange", "clean",
                  "nil_clean", "strongly_nil_clean")

    def to_dict(self) -> dict:
        d = {"label": self.label, "order": self.order, "unital": self.unital}
        for name in self.PROPERTIES:
            d[name] = getattr(self, name).to_dict()
        d["bounded_index"] = self.bounded_index
        d["closure"] = {k: v.to_dict() for k, v in self.closure.items()}
        return d


def _unital_only(ring, fn):
    if ring.one is None:
        return Verdict(None, note="requires a unit")
    return fn(ring)


def classify(ring: RingTable, exchange_cap: int = EXCHANGE_CAP) -> ClassificationReport:
    return ClassificationReport(
        label=ring.label,
        order=ring.order,
        unital=ring.one is not None,
        nr=is_nr(ring),
        ni=is_ni(ring),
        abelian=is_abelian(ring),
        boolean=is_boolean(ring),
        uu=_unital_only(ring, is_uu),
        exchange=is_exchange(ring, exchange_cap),
        clean=_unital_only(ring, is_clean),
        nil_clean=_unital_only(ring, is_nil_clean),
        strongly_nil_clean=is_strongly_nil_clean(ring),
        bounded_index=bounded_index(ring),
        closure={k: closure_check(ring, k) for k in CLOSURE_KINDS},
    )


def snc_index(ring: RingTable, a: int) -> int | None:
    """Index of a - a^2, if nilpotent."""
    return nilpotency_index(ring, int(ring.minus(a, ring.times(a, a))))
