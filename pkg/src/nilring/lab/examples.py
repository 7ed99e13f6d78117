"""Reproductions of two matrix examples.

* In M_3(F): pairs of nilpotents whose sum, product or circle product
  is nilpotent while another of these combinations is not.
* In M_2(T), T the strictly upper triangular 2n×2n matrices: x, y of
  index 2 with xy of index n, inside a ring nilpotent of index 2n.

Arithmetic is done with plain numpy matrices mod p; for M_3(Z/2) the
verdicts are also read off the ring table.
"""

from __future__ import annotations

import time

import numpy as np

from ..core.dsl import build
from ..nil import nil_mask
from .suites import SuiteResult

M3_MATRICES = {
    "x": [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
    "y": [[0, 0, 0], [1, 0, 0], [0, -1, 0]],
    "z": [[0, 0, 0], [0, 0, 0], [1, 0, 0]],
    "w": [[1, 1, 0], [-1, -1, 0], [0, 1, 0]],
}

# (expression, expected nilpotent)
M3_CLAIMS = [
    ("x", True), ("y", True), ("x+y", True), ("xy", False), ("x∘y", False),
    ("z", True), ("xz", True), ("x+z", False), ("x∘z", False),
    ("w", True), ("x∘w", True), ("x+w", False), ("xw", False),
]


def _mat_nilpotent(m, p):
    """A k×k matrix over a field is nilpotent iff its k-th power is zero."""
    k = m.shape[0]
    out = np.eye(k, dtype=np.int64)
    for _ in range(k):
        out = (out @ m) % p
    return not out.any()


def _m3_values(p):
    mats = {k: np.array(v, dtype=np.int64) % p for k, v in M3_MATRICES.items()}
    x = mats["x"]
    vals = dict(mats)
    for name in ("y", "z", "w"):
        o = mats[name]
        vals[f"x+{name}"] = (x + o) % p
        vals[f"x{name}"] = (x @ o) % p
        vals[f"x∘{name}"] = (x + o - x @ o) % p
    return vals


def m3_claims(p: int) -> dict:
    """Nilpotency of every expression in the claims, over Z/p."""
    vals = _m3_values(p)
    return {expr: _mat_nilpotent(vals[expr], p) for expr, _ in M3_CLAIMS}


def reproduce_example_m3() -> SuiteResult:
    """Assert the claims over Z/2 (matrices and ring table agree); record
    the outcome over Z/3 and Z/5 without asserting it."""
    start = time.perf_counter()
    res = SuiteResult("example-m3", rings=1)
    ring = build("M(3,Z(2))")
    ops = ring.matrix_ops
    nil = nil_mask(ring)
    got = m3_claims(2)
    vals = _m3_values(2)
    for expr, expected in M3_CLAIMS:
        in_table = bool(nil[ops.from_matrix(vals[expr].tolist())])
        res.checks += 2
        if got[expr] != expected:
            res.violations.append({"ring": ring.label, "statement": f"{expr} nilpotent",
                                   "witness": [ops.from_matrix(vals[expr].tolist())]})
        if in_table != got[expr]:
            res.violations.append({"ring": ring.label,
                                   "statement": f"{expr} table/matrix agreement",
                                   "witness": [ops.from_matrix(vals[expr].tolist())]})
    res.details = {
        "claims": {expr: {"expected": e, "z2": got[expr]} for expr, e in M3_CLAIMS},
        "other_fields": {str(p): {expr: v for expr, v in m3_claims(p).items()
                                  if v != dict(M3_CLAIMS)[expr]}
                         for p in (3, 5)},
    }
    res.ms = (time.perf_counter() - start) * 1000
    return res


# -- M_2(T) ---------------------------------------------------------------

def superdiagonal(k: int) -> np.ndarray:
    return np.eye(k, k, 1, dtype=np.int64)


def blocks(a, b, c, d) -> np.ndarray:
    return np.block([[a, b], [c, d]]) % 2


def mat_index(m: np.ndarray) -> int | None:
    """Nilpotency index over Z/2, or None."""
    p = m.copy()
    for k in range(1, m.shape[0] + 1):
        if not p.any():
            return k
        p = (p @ m) % 2
    return None if p.any() else m.shape[0] + 1


def block_degree(m: np.ndarray, size: int) -> int:
    """Least j - i over nonzero entries of the size×size blocks of m
    (large when m = 0).  For strictly upper triangular blocks it is at
    least 1 and adds up under multiplication."""
    best = 2 * size + 1
    for bi in range(2):
        for bj in range(2):
            blk = m[bi * size:(bi + 1) * size, bj * size:(bj + 1) * size]
            i, j = np.nonzero(blk)
            if len(i):
                best = min(best, int((j - i).min()))
    return best


def random_element(rng, size: int) -> np.ndarray:
    upper = np.triu(np.ones((size, size), dtype=np.int64), 1)
    parts = [rng.integers(0, 2, size=(size, size)) * upper for _ in range(4)]
    return blocks(*parts)


def reproduce_example_m2t(n: int = 3, samples: int = 1000, seed: int = 0) -> SuiteResult:
    if n < 3:
        raise ValueError("the example needs n >= 3")
    start = time.perf_counter()
    size = 2 * n
    res = SuiteResult(f"example-m2t-{n}", rings=1, sampled=True)
    label = f"M(2,SUT({size},Z(2)))"

    def check(ok, statement, witness=()):
        res.checks += 1
        if not ok:
            res.violations.append({"ring": label, "statement": statement,
                                   "witness": list(witness)})

    A = superdiagonal(size)
    zero = np.zeros_like(A)
    x = blocks(zero, A, zero, zero)
    y = blocks(zero, zero, A, zero)
    xy = (x @ y) % 2
    found = {"A": mat_index(A), "x": mat_index(x), "y": mat_index(y), "xy": mat_index(xy)}
    check(found["A"] == size, "index(A) = 2n", [found["A"] or 0])
    check(found["x"] == 2, "index(x) = 2", [found["x"] or 0])
    check(found["y"] == 2, "index(y) = 2", [found["y"] or 0])
    check(found["xy"] == n, "index(xy) = n", [found["xy"] or 0])
    check(np.array_equal(xy, blocks((A @ A) % 2, zero, zero, zero)), "xy = diag(A^2, 0)")

    alt = x.copy()
    for k in range(1, size - 1):
        alt = (alt @ (y if k % 2 else x)) % 2
    check(bool(alt.any()), "alternating product of length 2n-1 is nonzero")

    rng = np.random.default_rng(seed)
    pool = [x, y, (x + y) % 2, xy]
    zero_products = 0
    for s in range(samples):
        prod = None
        short = 0
        for k in range(1, size + 1):
            if rng.random() < 0.25:
                factor = pool[int(rng.integers(len(pool)))]
            else:
                factor = random_element(rng, size)
            prod = factor if prod is None else (prod @ factor) % 2
            if not short and block_degree(prod, size) < k:
                short = k
        check(not short, "block degree of a length-k product is at least k", [s, short])
        zero_products += not prod.any()
    check(zero_products == samples, "sampled length-2n products vanish",
          [samples - zero_products])
    res.details = {"n": n, "indices": found, "samples": samples}
    res.ms = (time.perf_counter() - start) * 1000
    return res
