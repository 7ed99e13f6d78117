"""Generated substructures, quotients and unitalisation."""

from __future__ import annotations

import numpy as np

from .constructions import QuotOps, SubOps, dorroh_ring, find_unit
from .ring import (
    DEFAULT_CAP,
    MATERIALIZE_LIMIT,
    BuildError,
    RingError,
    RingTable,
    SubsetMask,
    additive_span,
    as_index,
    extend_span,
    row_chunks,
)


class IdealError(RingError):
    def __init__(self, kind, witness):
        self.kind = kind
        self.witness = tuple(int(w) for w in witness)
        super().__init__(f"not an ideal: {kind} fails at {self.witness}")


def _elements(x):
    if isinstance(x, SubsetMask):
        return x.indices()
    return np.atleast_1d(np.asarray(list(x) if isinstance(x, (set, frozenset)) else x,
                                    dtype=np.int64))


def subring_generated(ring: RingTable, gens) -> SubsetMask:
    """Smallest subset containing ``gens`` closed under +, - and ·."""
    span = np.zeros(ring.order, dtype=bool)
    span[ring.zero] = True
    basis = []

    def absorb(cands):
        nonlocal span
        for g in cands:
            g = int(g)
            if not span[g]:
                span = extend_span(ring, span, g)
                basis.append(g)

    absorb(_elements(gens))
    while basis:
        b = np.array(basis)
        prods = np.unique(as_index(ring.times(b[:, None], b[None, :])))
        fresh = prods[~span[prods]]
        if not fresh.size:
            break
        absorb(fresh)
    return SubsetMask(ring.uid, span)


def ideal_generators(ring: RingTable, xs, left: bool = False) -> np.ndarray:
    """Elements whose additive span is the (left) ideal generated by ``xs``.

    With G an additive generating set of R: Rx is spanned by Gx, xR by xG
    and RxR by GxG.
    """
    xs = _elements(xs)
    g = np.asarray(ring.additive_generators, dtype=np.int64)
    parts = [xs]
    if g.size:
        gx = as_index(ring.times(g[:, None], xs[None, :]))
        parts.append(gx.ravel())
        if not left:
            xg = as_index(ring.times(xs[:, None], g[None, :]))
            parts.append(xg.ravel())
            gxg = as_index(ring.times(gx[:, :, None], g[None, None, :]))
            parts.append(gxg.ravel())
    return np.unique(np.concatenate(parts))


def ideal_generated(ring: RingTable, x, left: bool = False) -> SubsetMask:
    """Two-sided ideal generated by ``x`` (an element or a set of elements);
    with ``left=True`` the left ideal Zx + Rx instead."""
    span = additive_span(ring, ideal_generators(ring, x, left=left))
    return SubsetMask(ring.uid, span)


def ideal_violation(ring: RingTable, ideal: SubsetMask):
    """First failure of the ideal axioms as ``(kind, a, b)``, or None."""
    bits = ideal.bits
    members = ideal.indices()
    if not bits[ring.zero]:
        return ("zero", ring.zero, ring.zero)
    neg = ring.negate(members)
    bad = ~bits[neg]
    if bad.any():
        a = members[np.argmax(bad)]
        return ("negation", a, a)
    for rows in row_chunks(len(members), len(members)):
        s = ring.plus(members[rows][:, None], members[None, :])
        bad = ~bits[s]
        if bad.any():
            i, j = np.unravel_index(np.argmax(bad), bad.shape)
            return ("addition", members[rows][i], members[j])
    allx = ring.elements()
    for rows in row_chunks(ring.order, len(members)):
        for kind, prod in (("left absorption", ring.times(rows[:, None], members[None, :])),
                           ("right absorption", ring.times(members[None, :], rows[:, None]))):
            bad = ~bits[prod]
            if bad.any():
                i, j = np.unravel_index(np.argmax(bad), bad.shape)
                return (kind, allx[rows][i], members[j])
    return None


def restrict(ring: RingTable, mask: SubsetMask, label=None,
             materialize_limit: int = MATERIALIZE_LIMIT) -> RingTable:
    """The subring on ``mask`` (assumed closed), reindexed in increasing order."""
    members = mask.indices()
    ops = SubOps(ring, members)
    sub = RingTable(len(members), int(ops.pos[ring.zero]), ops,
                    label=label or f"{ring.label}|sub", names=ops.name)
    sub.one = find_unit(sub)
    sub.parent_members = members
    if sub.order <= materialize_limit:
        sub.materialize()
    return sub


def quotient(ring: RingTable, ideal: SubsetMask, label=None,
             materialize_limit: int = MATERIALIZE_LIMIT) -> RingTable:
    """R/I with cosets ordered by their minimal representative."""
    if ideal.ring_id != ring.uid:
        raise ValueError("ideal mask belongs to another ring")
    bad = ideal_violation(ring, ideal)
    if bad is not None:
        raise IdealError(bad[0], bad[1:])
    members = ideal.indices()
    rep = np.empty(ring.order, dtype=np.int64)
    for rows in row_chunks(ring.order, len(members)):
        rep[rows] = as_index(ring.plus(rows[:, None], members[None, :])).min(axis=1)
    reps = np.unique(rep)
    coset_of = np.searchsorted(reps, rep)
    ops = QuotOps(ring, reps, coset_of)
    q = RingTable(len(reps), int(coset_of[ring.zero]), ops,
                  one=None if ring.one is None else int(coset_of[ring.one]),
                  label=label or f"{ring.label}/I", names=ops.name)
    if ring.one is None:
        q.one = find_unit(q)
    q.projection = coset_of
    if q.order <= materialize_limit:
        q.materialize()
    return q


def dorroh_unitalization(ring: RingTable, cap: int = DEFAULT_CAP, label=None,
                         materialize: bool = True) -> RingTable:
    """Unital ring Z/m × R with (k,r)(l,s) = (kl, ks + lr + rs), m the
    additive exponent of R.  ``embed`` maps r to (0, r)."""
    order = ring.exponent * ring.order
    if order > cap:
        raise BuildError(f"order {order} exceeds cap {cap}")
    d = dorroh_ring(ring, label=label)
    if materialize and d.order <= MATERIALIZE_LIMIT:
        d.materialize()
    return d


def embed(dorroh: RingTable, r):
    """Image of the inner element(s) ``r`` in a Dorroh unitalisation."""
    ops = dorroh.dorroh_ops
    return ops.join(0, r)
