"""Vectorised arithmetic backends for the ring constructors."""

from __future__ import annotations

import math

import numpy as np

from .ring import RingTable, as_index


class ZmodOps:
    def __init__(self, n: int):
        self.n = n

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a, zero):
        return (-a) % self.n


def zmod(n: int, label=None) -> RingTable:
    return RingTable(n, 0, ZmodOps(n), one=1 % n, label=label or f"Z({n})",
                     names=str, exponent_hint=n)


def matrix_positions(kind: str, k: int) -> list[tuple[int, int]]:
    if kind == "M":
        return [(i, j) for i in range(k) for j in range(k)]
    if kind == "UT":
        return [(i, j) for i in range(k) for j in range(i, k)]
    if kind == "SUT":
        return [(i, j) for i in range(k) for j in range(i + 1, k)]
    raise ValueError(f"unknown matrix shape {kind!r}")


class MatrixOps:
    """k×k matrices over an inner ring with a fixed support pattern.

    An element is a mixed-radix number whose p-th digit (least significant
    first) is the inner element at ``positions[p]``.
    """

    def __init__(self, inner: RingTable, k: int, positions):
        self.inner = inner
        self.k = k
        self.positions = list(positions)
        self.q = inner.order
        self.weights = np.array([self.q ** p for p in range(len(self.positions))],
                                dtype=np.int64)
        support = set(self.positions)
        # inner summation indices that can contribute to entry (i, j)
        self.terms = {
            (i, j): [l for l in range(k) if (i, l) in support and (l, j) in support]
            for (i, j) in self.positions
        }

    def digits(self, a):
        a = as_index(a)
        return (a[..., None] // self.weights) % self.q

    def encode(self, digits):
        return (as_index(digits) * self.weights).sum(axis=-1)

    def add(self, a, b):
        da, db = np.broadcast_arrays(self.digits(a), self.digits(b))
        return self.encode(self.inner.plus(da, db))

    def neg(self, a, zero):
        return self.encode(self.inner.negate(self.digits(a)))

    def mul(self, a, b):
        da, db = self.digits(a), self.digits(b)
        slot = {pos: p for p, pos in enumerate(self.positions)}
        shape = np.broadcast_shapes(da.shape[:-1], db.shape[:-1])
        out = np.zeros(shape, dtype=np.int64)
        inner = self.inner
        for p, (i, j) in enumerate(self.positions):
            acc = None
            for l in self.terms[(i, j)]:
                term = inner.times(da[..., slot[(i, l)]], db[..., slot[(l, j)]])
                acc = term if acc is None else inner.plus(acc, term)
            if acc is None:
                acc = np.full(shape, inner.zero)
            out += as_index(np.broadcast_to(acc, shape)) * self.weights[p]
        return out

    def to_matrix(self, a: int) -> list[list[int]]:
        """Inner-element matrix of element ``a`` (absent entries are zero)."""
        d = self.digits(a)
        m = [[self.inner.zero] * self.k for _ in range(self.k)]
        for p, (i, j) in enumerate(self.positions):
            m[i][j] = int(d[p])
        return m

    def from_matrix(self, m) -> int:
        total = 0
        for p, (i, j) in enumerate(self.positions):
            total += int(m[i][j]) * int(self.weights[p])
        for i in range(self.k):
            for j in range(self.k):
                if (i, j) not in set(self.positions) and int(m[i][j]) != self.inner.zero:
                    raise ValueError(f"entry ({i},{j}) must be zero for this shape")
        return total

    def name(self, a: int) -> str:
        m = self.to_matrix(a)
        rows = ",".join("[" + ",".join(self.inner.name(x) for x in row) + "]"
                        for row in m)
        return "[" + rows + "]"


def matrix_ring(kind: str, k: int, inner: RingTable, label=None) -> RingTable:
    ops = MatrixOps(inner, k, matrix_positions(kind, k))
    order = inner.order ** len(ops.positions)
    one = None
    if kind != "SUT" and inner.one is not None:
        one = ops.from_matrix([[inner.one if i == j else inner.zero
                                for j in range(k)] for i in range(k)])
    exp_hint = inner.exponent if ops.positions else 1
    ring = RingTable(order, ops.from_matrix([[inner.zero] * k for _ in range(k)]),
                     ops, one=one, label=label or f"{kind}({k},{inner.label})",
                     names=ops.name, exponent_hint=exp_hint)
    ring.matrix_ops = ops
    return ring


class ProductOps:
    def __init__(self, left: RingTable, right: RingTable):
        self.left = left
        self.right = right
        self.m = left.order

    def split(self, a):
        a = as_index(a)
        return a % self.m, a // self.m

    def join(self, l, r):
        return as_index(l) + self.m * as_index(r)

    def add(self, a, b):
        (al, ar), (bl, br) = self.split(a), self.split(b)
        return self.join(self.left.plus(al, bl), self.right.plus(ar, br))

    def mul(self, a, b):
        (al, ar), (bl, br) = self.split(a), self.split(b)
        return self.join(self.left.times(al, bl), self.right.times(ar, br))

    def neg(self, a, zero):
        al, ar = self.split(a)
        return self.join(self.left.negate(al), self.right.negate(ar))

    def name(self, a: int) -> str:
        l, r = self.split(a)
        return f"({self.left.name(int(l))},{self.right.name(int(r))})"


def product_ring(left: RingTable, right: RingTable, label=None) -> RingTable:
    ops = ProductOps(left, right)
    one = None
    if left.one is not None and right.one is not None:
        one = int(ops.join(left.one, right.one))
    exp_hint = math.lcm(left.exponent, right.exponent)
    ring = RingTable(left.order * right.order, int(ops.join(left.zero, right.zero)),
                     ops, one=one, label=label or f"PROD({left.label},{right.label})",
                     names=ops.name, exponent_hint=exp_hint)
    ring.product_ops = ops
    return ring


class DorrohOps:
    """Pairs (k, r) with k in Z/m, r in R; index = k + m·r."""

    def __init__(self, inner: RingTable, m: int):
        self.inner = inner
        self.m = m
        self._multiples = None

    @property
    def multiples(self) -> np.ndarray:
        # multiples[k, r] = k·r in the inner ring
        if self._multiples is None:
            n = self.inner.order
            table = np.empty((self.m, n), dtype=np.int64)
            table[0] = self.inner.zero
            allr = np.arange(n)
            for k in range(1, self.m):
                table[k] = self.inner.plus(table[k - 1], allr)
            self._multiples = table
        return self._multiples

    def split(self, a):
        a = as_index(a)
        return a % self.m, a // self.m

    def join(self, k, r):
        return as_index(k) % self.m + self.m * as_index(r)

    def add(self, a, b):
        (ka, ra), (kb, rb) = self.split(a), self.split(b)
        return self.join(ka + kb, self.inner.plus(ra, rb))

    def mul(self, a, b):
        (ka, ra), (kb, rb) = self.split(a), self.split(b)
        inner = self.inner
        mult = self.multiples
        r = inner.plus(inner.plus(mult[ka, rb], mult[kb, ra]), inner.times(ra, rb))
        return self.join(ka * kb, r)

    def neg(self, a, zero):
        k, r = self.split(a)
        return self.join(-k, self.inner.negate(r))

    def name(self, a: int) -> str:
        k, r = self.split(a)
        return f"({int(k)};{self.inner.name(int(r))})"


def dorroh_ring(inner: RingTable, label=None) -> RingTable:
    m = inner.exponent
    ops = DorrohOps(inner, m)
    ring = RingTable(m * inner.order, int(ops.join(0, inner.zero)), ops,
                     one=int(ops.join(1, inner.zero)),
                     label=label or f"DORROH({inner.label})", names=ops.name,
                     exponent_hint=m)
    ring.dorroh_ops = ops
    return ring


class SubOps:
    """Subring given by a sorted array of parent elements."""

    def __init__(self, parent: RingTable, members: np.ndarray):
        self.parent = parent
        self.members = np.asarray(members, dtype=np.int64)
        self.pos = np.full(parent.order, -1, dtype=np.int64)
        self.pos[self.members] = np.arange(len(self.members))

    def _back(self, x):
        out = self.pos[as_index(x)]
        if (out < 0).any():
            raise ValueError("operation left the subring")
        return out

    def add(self, a, b):
        return self._back(self.parent.plus(self.members[a], self.members[b]))

    def mul(self, a, b):
        return self._back(self.parent.times(self.members[a], self.members[b]))

    def neg(self, a, zero):
        return self._back(self.parent.negate(self.members[a]))

    def name(self, a: int) -> str:
        return self.parent.name(int(self.members[a]))


class QuotOps:
    """Quotient by an ideal; element i is the coset with ``reps[i]``."""

    def __init__(self, parent: RingTable, reps: np.ndarray, coset_of: np.ndarray):
        self.parent = parent
        self.reps = np.asarray(reps, dtype=np.int64)
        self.coset_of = np.asarray(coset_of, dtype=np.int64)

    def add(self, a, b):
        return self.coset_of[as_index(self.parent.plus(self.reps[a], self.reps[b]))]

    def mul(self, a, b):
        return self.coset_of[as_index(self.parent.times(self.reps[a], self.reps[b]))]

    def neg(self, a, zero):
        return self.coset_of[as_index(self.parent.negate(self.reps[a]))]

    def name(self, a: int) -> str:
        return "[" + self.parent.name(int(self.reps[a])) + "]"


def find_unit(ring: RingTable):
    """Multiplicative identity, or None.

    Checking e·g = g·e = g on additive generators suffices by distributivity.
    """
    cand = np.ones(ring.order, dtype=bool)
    allx = np.arange(ring.order)
    gens = ring.additive_generators or [ring.zero]
    for g in gens:
        cand &= as_index(ring.times(allx, g)) == g
        cand &= as_index(ring.times(g, allx)) == g
    hits = np.flatnonzero(cand)
    return int(hits[0]) if hits.size else None
