"""Exhaustive checks of the ring axioms on a table.

Small rings are checked on every triple.  Larger ones use reductions that
are still complete: Light's test for associativity of + on an additive
generating set G, additivity of a ↦ xa on G, and associativity of · on
G×G×G once both distributive laws are known.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ring import RingError, RingTable, as_index, row_chunks

EXHAUSTIVE_LIMIT = 64


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.axiom} at {self.witness}" + (f" ({self.detail})" if self.detail else "")

    def to_dict(self):
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}


def _first(bad, *coords):
    idx = np.unravel_index(np.argmax(bad), bad.shape)
    return tuple(int(c[i]) for c, i in zip(coords, idx))


def validate_axioms(ring: RingTable, exhaustive: bool | None = None) -> list[Violation]:
    """All violated ring axioms, one violation (first witness) per axiom."""
    n = ring.order
    out: list[Violation] = []
    if ring.materialized:
        for name, table in (("add", ring.add), ("mul", ring.mul)):
            if table.shape != (n, n):
                return [Violation("table_shape", (), f"{name} has shape {table.shape}")]
            if n and int(table.max()) >= n:
                bad = table >= n
                out.append(Violation("table_range", _first(bad, range(n), range(n)), name))
        if out:
            return out
    if not 0 <= ring.zero < n or (ring.one is not None and not 0 <= ring.one < n):
        return [Violation("table_range", (ring.zero, ring.one), "zero/one index")]

    x = np.arange(n)
    zero = ring.zero

    bad = (as_index(ring.plus(zero, x)) != x) | (as_index(ring.plus(x, zero)) != x)
    if bad.any():
        out.append(Violation("add_identity", (int(np.argmax(bad)),)))
    neg = as_index(ring.neg)
    bad = (neg < 0) | (neg >= n)
    if not bad.any():
        bad = as_index(ring.plus(x, neg)) != zero
    if bad.any():
        out.append(Violation("add_inverse", (int(np.argmax(bad)),)))
    for rows in row_chunks(n, n):
        bad = as_index(ring.plus(rows[:, None], x)) != as_index(ring.plus(x, rows[:, None]))
        if bad.any():
            out.append(Violation("add_commutative", _first(bad, rows, x)))
            break

    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_LIMIT
    gens = None if exhaustive else _generating_set(ring)
    if gens is None:
        out.extend(_exhaustive_checks(ring))
    else:
        out.extend(_reduced_checks(ring, gens))

    if ring.one is not None:
        one = ring.one
        bad = (as_index(ring.times(one, x)) != x) | (as_index(ring.times(x, one)) != x)
        if bad.any():
            out.append(Violation("unit", (int(np.argmax(bad)),)))
    if not out:
        out.extend(_exponent_check(ring))
    return out


def _generating_set(ring: RingTable):
    """Additive generators verified to reach every element, else None."""
    try:
        gens = np.asarray(ring.additive_generators, dtype=np.int64)
    except RingError:
        return None
    n = ring.order
    if n == 1:
        return gens
    if not gens.size:
        return None
    reached = np.zeros(n, dtype=bool)
    frontier = np.unique(gens)
    reached[frontier] = True
    while frontier.size:
        nxt = np.unique(as_index(ring.plus(frontier[:, None], gens[None, :])))
        frontier = nxt[~reached[nxt]]
        reached[frontier] = True
    return gens if reached.all() else None


def _exhaustive_checks(ring: RingTable) -> list[Violation]:
    n = ring.order
    x = np.arange(n)
    found = {}
    p, t = ring.plus, ring.times
    for rows in row_chunks(n, n * n):
        a = rows[:, None, None]
        b = x[None, :, None]
        c = x[None, None, :]
        ab = p(a, b)
        bc = p(b, c)
        checks = {
            "add_associative": lambda: as_index(p(ab, c)) != as_index(p(a, bc)),
            "mul_left_distributive": lambda: as_index(t(a, bc)) != as_index(p(t(a, b), t(a, c))),
            "mul_right_distributive": lambda: as_index(t(ab, c)) != as_index(p(t(a, c), t(b, c))),
            "mul_associative": lambda: as_index(t(t(a, b), c)) != as_index(t(a, t(b, c))),
        }
        for name, fn in checks.items():
            if name in found:
                continue
            bad = fn()
            if bad.any():
                found[name] = _first(bad, rows, x, x)
    order = ["add_associative", "mul_left_distributive", "mul_right_distributive",
             "mul_associative"]
    return [Violation(k, found[k]) for k in order if k in found]


def _dense_pairs(ring: RingTable):
    A, M = ring.add, ring.mul
    return (
        ("add_associative", lambda g: (A[A[:, g], :], A[:, A[g, :]])),
        ("mul_left_distributive", lambda g: (M[:, A[:, g]],
                                             np.take_along_axis(A[M[:, g]], M, axis=1))),
        ("mul_right_distributive", lambda g: (M[A[:, g], :].T,
                                              A[M, M[g][None, :]].T)),
    )


def _reduced_checks(ring: RingTable, gens: np.ndarray) -> list[Violation]:
    n = ring.order
    x = np.arange(n)
    p, t = ring.plus, ring.times
    out = []
    if ring.materialized:
        for name, fn in _dense_pairs(ring):
            for g in gens:
                lhs, rhs = fn(int(g))
                bad = lhs != rhs
                if bad.any():
                    a, b = _first(bad, x, x)
                    hit = (a, int(g), b) if name == "add_associative" else (a, b, int(g))
                    out.append(Violation(name, hit))
                    break
        return out or _generator_associativity(ring, gens)
    for name, fn in (
        ("add_associative", lambda a, g: (as_index(p(p(a, g), x[None, :])),
                                          as_index(p(a, p(g, x[None, :]))))),
        ("mul_left_distributive", lambda a, g: (as_index(t(a, p(x[None, :], g))),
                                                as_index(p(t(a, x[None, :]), t(a, g))))),
        ("mul_right_distributive", lambda a, g: (as_index(t(p(x[None, :], g), a)),
                                                 as_index(p(t(x[None, :], a), t(g, a))))),
    ):
        hit = None
        for g in gens:
            for rows in row_chunks(n, n):
                lhs, rhs = fn(rows[:, None], int(g))
                bad = lhs != rhs
                if bad.any():
                    a, b = _first(bad, rows, x)
                    hit = (a, int(g), b) if name == "add_associative" else (a, b, int(g))
                    break
            if hit:
                break
        if hit:
            out.append(Violation(name, hit))
    return out or _generator_associativity(ring, gens)


def _generator_associativity(ring: RingTable, gens: np.ndarray) -> list[Violation]:
    # valid only once both distributive laws hold
    t = ring.times
    out = []
    g = gens
    a, b, c = g[:, None, None], g[None, :, None], g[None, None, :]
    bad = as_index(t(t(a, b), c)) != as_index(t(a, t(b, c)))
    if bad.any():
        out.append(Violation("mul_associative", _first(bad, g, g, g)))
    return out


def _exponent_check(ring: RingTable) -> list[Violation]:
    e = ring.exponent
    x = np.arange(ring.order)
    bad = as_index(ring.multiple(e, x)) != ring.zero
    if bad.any():
        return [Violation("exponent", (int(np.argmax(bad)),), f"{e}·x != 0")]
    for prime in _prime_factors(e):
        if not (as_index(ring.multiple(e // prime, x)) != ring.zero).any():
            return [Violation("exponent", (), f"{e} is not minimal")]
    return []


def _prime_factors(m: int):
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out
