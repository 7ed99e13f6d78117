"""Deterministic corpora of finite rings built from constructor expressions."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..core.closure import ideal_generated
from ..core.dsl import build
from ..core.ring import BuildError, RingTable

log = logging.getLogger(__name__)

ANCHORS = ["Z(2)", "Z(4)", "M(2,Z(2))", "UT(2,Z(2))", "SUT(3,Z(2))", "PROD(Z(2),Z(4))"]

FIXED_FAMILIES = {
    "zmod": ["Z(3)", "Z(5)", "Z(6)", "Z(8)", "Z(9)", "Z(12)", "Z(16)", "Z(27)"],
    "matrix": ["M(2,Z(3))", "M(2,Z(4))", "M(3,Z(2))", "M(2,Z(5))", "M(2,Z(6))",
               "M(2,Z(8))"],
    "triangular": ["UT(2,Z(3))", "UT(2,Z(4))", "UT(3,Z(2))", "SUT(4,Z(2))",
                   "SUT(3,Z(3))", "SUT(3,Z(4))", "UT(2,Z(5))", "UT(3,Z(3))",
                   "SUT(5,Z(2))", "UT(2,UT(2,Z(2)))", "SUT(4,Z(4))"],
    "product": ["PROD(Z(2),Z(2))", "PROD(Z(2),Z(3))", "PROD(Z(3),Z(4))",
                "PROD(UT(2,Z(2)),Z(3))", "PROD(M(2,Z(2)),Z(2))",
                "PROD(SUT(3,Z(2)),Z(4))", "PROD(M(2,Z(2)),SUT(3,Z(2)))"],
    "dorroh": ["DORROH(SUT(2,Z(2)))", "DORROH(SUT(3,Z(2)))", "DORROH(SUB(Z(4),[2]))",
               "DORROH(M(2,Z(2)))", "DORROH(SUT(4,Z(2)))", "DORROH(SUT(3,Z(4)))"],
}

SUBRING_BASES = ["M(2,Z(2))", "M(3,Z(2))", "M(2,Z(3))", "M(2,Z(4))", "UT(3,Z(2))"]
QUOTIENT_BASES = ["Z(8)", "UT(3,Z(2))", "UT(2,Z(4))", "SUT(4,Z(2))", "M(2,Z(4))",
                  "DORROH(SUT(3,Z(2)))", "PROD(UT(2,Z(2)),Z(4))"]
RADICAL_BASES = ["SUT(3,Z(2))", "SUT(4,Z(2))", "SUT(3,Z(3))", "SUT(3,Z(4))",
                 "SUT(3,Z(5))", "SUT(5,Z(2))"]

RANDOM_FAMILIES = ("subring", "quotient", "radical")

DEFAULT_COUNTS = {
    "anchors": len(ANCHORS),
    "zmod": 8,
    "matrix": 6,
    "triangular": 11,
    "product": 7,
    "dorroh": 6,
    "subring": 8,
    "quotient": 6,
    "radical": 6,
}


@dataclass
class CorpusSpec:
    seed: int = 0
    max_order: int = 4096
    families: dict = field(default_factory=lambda: dict(DEFAULT_COUNTS))

    def __post_init__(self):
        unknown = set(self.families) - set(DEFAULT_COUNTS)
        if unknown:
            raise ValueError(f"unknown corpus families: {sorted(unknown)}")
        if self.max_order < 1:
            raise ValueError("max_order must be positive")


def _base_orders(bases, max_order):
    out = []
    for expr in bases:
        try:
            out.append((expr, build(expr, cap=max_order)))
        except BuildError:
            continue
    return out


def random_subring_exprs(rng, bases, count, max_gens=2, max_order=4096):
    """``SUB(base,[g...])`` expressions with random generators."""
    pool = _base_orders(bases, max_order)
    exprs = []
    if not pool:
        return exprs
    for _ in range(count):
        expr, ring = pool[int(rng.integers(len(pool)))]
        k = int(rng.integers(1, max_gens + 1))
        gens = sorted({int(g) for g in rng.integers(1, ring.order, size=k)})
        exprs.append(f"SUB({expr},[{','.join(map(str, gens))}])")
    return exprs


def random_quotient_exprs(rng, bases, count, max_order=4096, tries=200):
    """``QUOT(base,[x])`` by proper principal ideals (redrawn when I(x) = R)."""
    pool = _base_orders(bases, max_order)
    exprs = []
    if not pool:
        return exprs
    for _ in range(count):
        expr, ring = pool[int(rng.integers(len(pool)))]
        for _ in range(tries):
            x = int(rng.integers(1, ring.order))
            if len(ideal_generated(ring, x)) < ring.order:
                exprs.append(f"QUOT({expr},[{x}])")
                break
    return exprs


def corpus_expressions(spec: CorpusSpec) -> list[str]:
    rng = np.random.default_rng(spec.seed)
    fam = spec.families
    exprs = list(ANCHORS[:fam.get("anchors", 0)])
    for name, items in FIXED_FAMILIES.items():
        exprs += items[:fam.get(name, 0)]
    exprs += random_subring_exprs(rng, SUBRING_BASES, fam.get("subring", 0),
                                  max_order=spec.max_order)
    exprs += random_quotient_exprs(rng, QUOTIENT_BASES, fam.get("quotient", 0),
                                   max_order=spec.max_order)
    exprs += random_subring_exprs(rng, RADICAL_BASES, fam.get("radical", 0), max_gens=3,
                                  max_order=spec.max_order)
    return exprs


def build_all(exprs, max_order, notices=None) -> list[RingTable]:
    rings = []
    for expr in exprs:
        try:
            ring = build(expr, cap=max_order)
        except BuildError as exc:
            msg = f"skipped {expr}: {exc}"
            log.info(msg)
            if notices is not None:
                notices.append(msg)
            continue
        rings.append(ring)
    return rings


def generate_corpus(spec: CorpusSpec | None = None, notices=None) -> list[RingTable]:
    """Rings for the verification suites, deterministic under ``spec.seed``.

    Expressions whose order would exceed ``spec.max_order`` are skipped and
    reported through ``notices`` (a list) when given.
    """
    spec = spec or CorpusSpec()
    return build_all(corpus_expressions(spec), spec.max_order, notices)


def radical_rings(seed: int, count: int, max_order: int = 1024) -> list[RingTable]:
    """Random nil (hence radical) rings: subrings of strictly upper
    triangular matrix rings generated by 1-3 random elements."""
    rng = np.random.default_rng([seed, 7])
    exprs = random_subring_exprs(rng, RADICAL_BASES, count, max_gens=3, max_order=max_order)
    return build_all(exprs, max_order)
