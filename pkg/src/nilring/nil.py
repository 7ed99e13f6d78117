"""Nilpotents, quasi-regularity and radicals of a finite ring."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core.closure import ideal_generators
from .core.ring import ConsistencyError, RingTable, SubsetMask, as_index, extend_span, row_chunks


class NotNilpotentError(ValueError):
    pass


def nilpotency_index(ring: RingTable, x: int) -> int | None:
    """Least n with x**n = 0, or None when no power of x vanishes."""
    x = int(x)
    p = x
    seen = set()
    for k in range(1, ring.order + 1):
        if p == ring.zero:
            return k
        if p in seen:
            return None
        seen.add(p)
        p = int(ring.times(p, x))
    return None


def power_bound(order: int) -> int:
    """Upper bound for nilpotency indices in a ring with ``order`` elements.

    For x of index k the additive subgroups generated by {x^i, ..., x^(k-1)}
    form a strictly decreasing chain of length k - 1, so 2**(k-1) <= order.
    """
    return int(math.floor(math.log2(order))) + 1 if order > 1 else 1


def nilpotent_indices(ring: RingTable) -> np.ndarray:
    """Array of nilpotency indices (0 for elements that are not nilpotent)."""
    if "nil_idx" in ring._cache:
        return ring._cache["nil_idx"]
    x = np.arange(ring.order)
    idx = np.zeros(ring.order, dtype=np.int64)
    p = x
    for k in range(1, power_bound(ring.order) + 1):
        hit = (as_index(p) == ring.zero) & (idx == 0)
        idx[hit] = k
        p = ring.times(p, x)
    idx.flags.writeable = False
    ring._cache["nil_idx"] = idx
    return idx


def nil_mask(ring: RingTable) -> np.ndarray:
    return nilpotent_indices(ring) > 0


def circle(ring: RingTable, x, y):
    """x∘y = x + y - xy."""
    return ring.circle(x, y)


def quasi_regular(ring: RingTable) -> np.ndarray:
    """Elements q having some r with q∘r = r∘q = 0, by scanning every r."""
    if "q_set" in ring._cache:
        return ring._cache["q_set"]
    n, zero = ring.order, ring.zero
    allx = np.arange(n)
    q = np.zeros(n, dtype=bool)
    for rows in row_chunks(n, 2 * n):
        left = as_index(ring.circle(rows[:, None], allx[None, :])) == zero
        right = as_index(ring.circle(allx[None, :], rows[:, None])) == zero
        q[rows] = (left & right).any(axis=1)
    ring._cache["q_set"] = q
    return q


def units(ring: RingTable) -> np.ndarray | None:
    if ring.one is None:
        return None
    n, one = ring.order, ring.one
    allx = np.arange(n)
    u = np.zeros(n, dtype=bool)
    for rows in row_chunks(n, 2 * n):
        left = as_index(ring.times(rows[:, None], allx[None, :])) == one
        right = as_index(ring.times(allx[None, :], rows[:, None])) == one
        u[rows] = (left & right).any(axis=1)
    return u


def idempotents(ring: RingTable) -> np.ndarray:
    x = np.arange(ring.order)
    return as_index(ring.times(x, x)) == x


def _span_inside(ring, gens, allowed):
    """Additive span of ``gens`` if it stays inside ``allowed``, else None."""
    if not allowed[gens].all():
        return None
    span = np.zeros(ring.order, dtype=bool)
    span[ring.zero] = True
    for g in gens:
        if not span[g]:
            span = extend_span(ring, span, int(g))
            if (span & ~allowed).any():
                return None
    return span


def largest_ideal_inside(ring: RingTable, allowed: np.ndarray) -> np.ndarray:
    """{x : the ideal generated by x lies in ``allowed``}.

    Once I(x) is found inside, every element of I(x) qualifies too.
    """
    inside = np.zeros(ring.order, dtype=bool)
    for x in np.flatnonzero(allowed):
        if inside[x]:
            continue
        span = _span_inside(ring, ideal_generators(ring, int(x)), allowed)
        if span is not None:
            inside |= span
    return inside


@dataclass
class NilReport:
    order: int
    nilpotents: SubsetMask
    index_of: dict
    bound: int
    q_set: SubsetMask
    j_radical: SubsetMask
    upper_nilradical: SubsetMask
    idempotents: SubsetMask
    units: SubsetMask | None

    def to_dict(self) -> dict:
        nil = self.nilpotents.tolist()
        return {
            "order": self.order,
            "nilpotents": nil,
            "index_of": [self.index_of[x] for x in nil],
            "bound": self.bound,
            "q_set": self.q_set.tolist(),
            "j_radical": self.j_radical.tolist(),
            "upper_nilradical": self.upper_nilradical.tolist(),
            "idempotents": self.idempotents.tolist(),
            "units": None if self.units is None else self.units.tolist(),
        }


def nil_report(ring: RingTable) -> NilReport:
    if "nil_report" in ring._cache:
        return ring._cache["nil_report"]
    idx = nilpotent_indices(ring)
    nil = idx > 0
    q = quasi_regular(ring)
    u = units(ring)
    uid = ring.uid
    report = NilReport(
        order=ring.order,
        nilpotents=SubsetMask(uid, nil),
        index_of={int(x): int(idx[x]) for x in np.flatnonzero(nil)},
        bound=int(idx.max()),
        q_set=SubsetMask(uid, q),
        j_radical=SubsetMask(uid, largest_ideal_inside(ring, q)),
        upper_nilradical=SubsetMask(uid, largest_ideal_inside(ring, nil)),
        idempotents=SubsetMask(uid, idempotents(ring)),
        units=None if u is None else SubsetMask(uid, u),
    )
    ring._cache["nil_report"] = report
    return report


def quasi_inverse_nilpotent(ring: RingTable, q: int) -> int:
    """r = -(q + q^2 + ... + q^(n-1)) for q of index n; then q∘r = r∘q = 0."""
    n = nilpotency_index(ring, q)
    if n is None:
        raise NotNilpotentError(f"element {q} is not nilpotent")
    total = ring.zero
    p = int(q)
    for _ in range(1, n):
        total = int(ring.plus(total, p))
        p = int(ring.times(p, q))
    r = int(ring.negate(total))
    if int(ring.circle(q, r)) != ring.zero or int(ring.circle(r, q)) != ring.zero:
        raise ConsistencyError(f"quasi-inverse of {q} failed")
    return r


def koethe_z_construction(ring: RingTable, x: int, y: int, n: int) -> int:
    """z = x + yx + y^2 x + ... + y^(n-1) x, so that z - yz = x and y∘z = x + y."""
    if n < 1 or int(ring.power(y, n)) != ring.zero:
        raise NotNilpotentError(f"y^{n} != 0 for y = {y}")
    z = ring.zero
    term = int(x)
    for _ in range(n):
        z = int(ring.plus(z, term))
        term = int(ring.times(y, term))
    if int(ring.minus(z, ring.times(y, z))) != int(x):
        raise ConsistencyError(f"z - yz != x for x={x}, y={y}")
    if int(ring.circle(y, z)) != int(ring.plus(x, y)):
        raise ConsistencyError(f"y∘z != x + y for x={x}, y={y}")
    return z


@dataclass
class KotheVerdict:
    holds: bool
    witness: tuple | None
    nil_left_principal: int

    def to_dict(self):
        return {"holds": self.holds,
                "witness": None if self.witness is None else list(self.witness),
                "nil_left_principal": self.nil_left_principal}


def koethe_sum_probe(ring: RingTable) -> KotheVerdict:
    """Check that L(x) + L(y) is nil whenever the principal left ideals
    L(x) = Zx + Rx and L(y) are nil."""
    nil = nil_mask(ring)
    nil_left = np.zeros(ring.order, dtype=bool)
    for x in np.flatnonzero(nil):
        if nil_left[x]:
            continue
        span = _span_inside(ring, ideal_generators(ring, int(x), left=True), nil)
        if span is not None:
            # y in L(x) gives L(y) ⊆ L(x)
            nil_left |= span
    members = np.flatnonzero(nil_left)
    total = _span_inside(ring, ideal_generators(ring, members, left=True), nil)
    if total is not None:
        return KotheVerdict(True, None, len(members))
    # the sum of all of them is not nil: locate a failing pair
    spans = {x: ideal_generators(ring, x, left=True) for x in members.tolist()}
    for i, x in enumerate(members.tolist()):
        for y in members.tolist()[i:]:
            if _span_inside(ring, np.concatenate([spans[x], spans[y]]), nil) is None:
                return KotheVerdict(False, (x, y), len(members))
    return KotheVerdict(True, None, len(members))
