"""Finite associative rings stored as operation tables.

Elements are the integers ``0 .. order-1``.  Small rings keep their addition
and multiplication as dense numpy tables; larger ones keep only a vectorised
backend that computes sums and products on demand, so that rings such as
``SUT(6, Z(2))`` (32768 elements) stay usable without a gigabyte table.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

DEFAULT_CAP = 65536
MATERIALIZE_LIMIT = 4096
TABLE_LIMIT = 8192

_uid = itertools.count(1)


class RingError(Exception):
    """Base class for errors raised while building or loading rings."""


class BuildError(RingError):
    pass


class SchemaError(RingError):
    pass


class NotUnitalError(RingError):
    pass


class ConsistencyError(RuntimeError):
    """Two independent computations that must agree did not."""


class AxiomError(RingError):
    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else None
        msg = f"{len(self.violations)} axiom violation(s)"
        if first is not None:
            msg += f"; first: {first}"
        super().__init__(msg)


def index_dtype(order: int):
    return np.uint16 if order <= 65536 else np.int32


def as_index(a):
    return np.asarray(a, dtype=np.int64)


class TableOps:
    """Backend for rings given by explicit tables."""

    def __init__(self, add, mul):
        self.add_table = add
        self.mul_table = mul

    def add(self, a, b):
        return self.add_table[a, b]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a, zero):
        return np.argmax(self.add_table[a] == zero, axis=-1)


class RingTable:
    """A finite, not necessarily unital, associative ring.

    Attributes:
        order: number of elements.
        zero: index of the additive identity.
        one: index of the multiplicative identity, or ``None``.
        label: provenance string (usually the constructor expression).
        neg: array of additive inverses.
    """

    def __init__(self, order, zero, ops, *, one=None, label="", names=None,
                 add=None, mul=None, exponent_hint=None):
        if order < 1:
            raise BuildError("empty ring (order 0) rejected")
        self.order = int(order)
        self.zero = int(zero)
        self.one = None if one is None else int(one)
        self.label = label
        self.uid = next(_uid)
        self._ops = ops
        self._add = add
        self._mul = mul
        self._names = names
        self._exponent_hint = exponent_hint
        self._cache = {}
        self.neg = np.asarray(ops.neg(np.arange(self.order), self.zero),
                              dtype=index_dtype(self.order))
        self.neg.flags.writeable = False

    @classmethod
    def from_tables(cls, add, mul, zero, one=None, label="", names=None):
        add = np.asarray(add)
        mul = np.asarray(mul)
        n = add.shape[0]
        dt = index_dtype(n)
        add = np.ascontiguousarray(add, dtype=dt)
        mul = np.ascontiguousarray(mul, dtype=dt)
        add.flags.writeable = False
        mul.flags.writeable = False
        return cls(n, zero, TableOps(add, mul), one=one, label=label,
                   names=names, add=add, mul=mul)

    def __repr__(self):
        return f"RingTable({self.label or '?'}, order={self.order})"

    # -- tables ---------------------------------------------------------

    @property
    def materialized(self) -> bool:
        return self._add is not None

    def materialize(self):
        """Compute dense add/mul tables from the backend (idempotent)."""
        if self._add is not None:
            return self
        n = self.order
        if n > TABLE_LIMIT:
            raise RingError(f"order {n} too large to materialize tables")
        dt = index_dtype(n)
        add = np.empty((n, n), dtype=dt)
        mul = np.empty((n, n), dtype=dt)
        allx = np.arange(n)
        for rows in row_chunks(n, n):
            add[rows] = self._ops.add(rows[:, None], allx[None, :])
            mul[rows] = self._ops.mul(rows[:, None], allx[None, :])
        add.flags.writeable = False
        mul.flags.writeable = False
        self._add, self._mul = add, mul
        self._ops = TableOps(add, mul)
        return self

    @property
    def add(self) -> np.ndarray:
        return self.materialize()._add

    @property
    def mul(self) -> np.ndarray:
        return self.materialize()._mul

    # -- arithmetic -----------------------------------------------------

    def plus(self, a, b):
        if self._add is not None:
            return self._add[a, b]
        return self._ops.add(as_index(a), as_index(b))

    def times(self, a, b):
        if self._mul is not None:
            return self._mul[a, b]
        return self._ops.mul(as_index(a), as_index(b))

    def negate(self, a):
        return self.neg[a]

    def minus(self, a, b):
        return self.plus(a, self.neg[b])

    def circle(self, a, b):
        """``a + b - ab``."""
        return self.minus(self.plus(a, b), self.times(a, b))

    def power(self, a, k: int):
        """``a**k`` for ``k >= 1`` by repeated squaring (vectorised)."""
        if k < 1:
            raise ValueError("power needs k >= 1")
        result = None
        base = a
        while k:
            if k & 1:
                result = base if result is None else self.times(result, base)
            k >>= 1
            if k:
                base = self.times(base, base)
        return result

    def multiple(self, k: int, a):
        """``k·a`` as an iterated sum, ``k >= 0``."""
        a = as_index(a)
        result = np.full(a.shape, self.zero, dtype=np.int64)
        base = a
        while k:
            if k & 1:
                result = as_index(self.plus(result, base))
            k >>= 1
            if k:
                base = as_index(self.plus(base, base))
        return result if result.ndim else int(result)

    def elements(self) -> np.ndarray:
        return np.arange(self.order)

    def name(self, i: int) -> str:
        if self._names is None:
            return str(i)
        if callable(self._names):
            return self._names(int(i))
        return self._names[int(i)]

    @property
    def element_names(self):
        if self._names is None:
            return None
        return [self.name(i) for i in range(self.order)]

    # -- derived invariants ---------------------------------------------

    @property
    def additive_orders(self) -> np.ndarray:
        if "add_orders" not in self._cache:
            self._cache["add_orders"] = _additive_orders(self)
        return self._cache["add_orders"]

    @property
    def exponent(self) -> int:
        if "exponent" not in self._cache:
            self._cache["exponent"] = int(self.additive_orders.max())
        return self._cache["exponent"]

    @property
    def additive_generators(self) -> list[int]:
        """A small generating set of (R, +), greedy by additive order."""
        if "add_gens" not in self._cache:
            self._cache["add_gens"] = _greedy_generators(self)
        return self._cache["add_gens"]

    def mask(self, elements=()) -> "SubsetMask":
        return SubsetMask.of(self, elements)

    def full_mask(self) -> "SubsetMask":
        return SubsetMask(self.uid, np.ones(self.order, dtype=bool))


def row_chunks(rows: int, width: int, budget: int = 1 << 22):
    """Yield index arrays splitting ``range(rows)`` so each block has about
    ``budget`` cells of the given row width."""
    step = max(1, budget // max(1, width))
    for start in range(0, rows, step):
        yield np.arange(start, min(rows, start + step))


def _additive_orders(ring: RingTable) -> np.ndarray:
    n = ring.order
    allx = np.arange(n)
    hint = ring._exponent_hint
    orders = np.zeros(n, dtype=np.int64)
    if hint is not None:
        for d in sorted(_divisors(hint)):
            hit = (as_index(ring.multiple(d, allx)) == ring.zero) & (orders == 0)
            orders[hit] = d
            if orders.all():
                break
        if orders.all():
            return orders
        orders[:] = 0
    p = allx.copy()
    k = 1
    while True:
        hit = (as_index(p) == ring.zero) & (orders == 0)
        orders[hit] = k
        if orders.all():
            return orders
        p = ring.plus(p, allx)
        k += 1
        if k > n:
            raise RingError("additive orders do not divide the group order")


def _divisors(m: int):
    out = set()
    for d in range(1, math.isqrt(m) + 1):
        if m % d == 0:
            out.add(d)
            out.add(m // d)
    return out


def extend_span(ring: RingTable, span: np.ndarray, g: int) -> np.ndarray:
    """Additive subgroup generated by the subgroup ``span`` (bool mask) and g."""
    if span[g]:
        return span
    base = np.flatnonzero(span)
    out = span.copy()
    shift = int(g)
    while not span[shift]:
        out[ring.plus(base, shift)] = True
        shift = int(ring.plus(shift, g))
    return out


def additive_span(ring: RingTable, elements, start=None) -> np.ndarray:
    """Bool mask of the additive subgroup generated by ``elements``
    (together with the subgroup ``start`` if given)."""
    if start is None:
        span = np.zeros(ring.order, dtype=bool)
        span[ring.zero] = True
    else:
        span = start
    for g in np.asarray(elements, dtype=np.int64).ravel():
        if not span[g]:
            span = extend_span(ring, span, int(g))
    return span


def _greedy_generators(ring: RingTable) -> list[int]:
    orders = ring.additive_orders
    candidates = np.lexsort((np.arange(ring.order), -orders))
    span = np.zeros(ring.order, dtype=bool)
    span[ring.zero] = True
    gens = []
    for c in candidates:
        if span.all():
            break
        if not span[c]:
            gens.append(int(c))
            span = extend_span(ring, span, int(c))
    return gens


class SubsetMask:
    """Membership bitset over the elements of one particular ring."""

    __slots__ = ("ring_id", "bits")

    def __init__(self, ring_id: int, bits):
        bits = np.array(bits, dtype=bool)
        bits.flags.writeable = False
        self.ring_id = ring_id
        self.bits = bits

    @classmethod
    def of(cls, ring: RingTable, elements=()):
        bits = np.zeros(ring.order, dtype=bool)
        idx = np.asarray(list(elements) if not isinstance(elements, np.ndarray)
                         else elements, dtype=np.int64)
        if idx.size:
            if idx.min() < 0 or idx.max() >= ring.order:
                raise IndexError("element index out of range")
            bits[idx] = True
        return cls(ring.uid, bits)

    def _check(self, other):
        if not isinstance(other, SubsetMask):
            return NotImplemented
        if other.ring_id != self.ring_id or other.bits.shape != self.bits.shape:
            raise ValueError("masks belong to different rings")

    def __or__(self, other):
        self._check(other)
        return SubsetMask(self.ring_id, self.bits | other.bits)

    def __and__(self, other):
        self._check(other)
        return SubsetMask(self.ring_id, self.bits & other.bits)

    def __sub__(self, other):
        self._check(other)
        return SubsetMask(self.ring_id, self.bits & ~other.bits)

    def __invert__(self):
        return SubsetMask(self.ring_id, ~self.bits)

    def __le__(self, other):
        self._check(other)
        return not (self.bits & ~other.bits).any()

    def __eq__(self, other):
        if not isinstance(other, SubsetMask):
            return NotImplemented
        return self.ring_id == other.ring_id and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.ring_id, self.bits.tobytes()))

    def __len__(self):
        return int(self.bits.sum())

    def __contains__(self, i):
        return bool(self.bits[int(i)])

    def __iter__(self):
        return (int(i) for i in np.flatnonzero(self.bits))

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def tolist(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.bits)]

    def __repr__(self):
        items = self.tolist()
        shown = items if len(items) <= 12 else items[:12] + ["..."]
        return f"SubsetMask({shown})"
