import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilring.core import build, ideal_violation
from nilring.core.ring import ConsistencyError
from nilring.nil import (
    NotNilpotentError,
    circle,
    koethe_sum_probe,
    koethe_z_construction,
    nil_report,
    nilpotency_index,
    nilpotent_indices,
    power_bound,
    quasi_inverse_nilpotent,
)

from . import oracles
from .test_ring_core import SMALL

small_exprs = st.sampled_from(SMALL)


def m3_elem(ring, rows):
    return ring.matrix_ops.from_matrix(rows)


def test_nilpotency_index_examples():
    z4 = build("Z(4)")
    assert nilpotency_index(z4, 2) == 2
    assert nilpotency_index(z4, 0) == 1
    assert nilpotency_index(z4, 1) is None
    m3 = build("M(3,Z(2))")
    x = m3_elem(m3, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert nilpotency_index(m3, x) == 3


def test_report_z4():
    rep = nil_report(build("Z(4)"))
    assert rep.nilpotents.tolist() == [0, 2]
    assert rep.bound == 2
    assert rep.q_set.tolist() == [0, 2]
    assert rep.j_radical.tolist() == [0, 2]
    assert rep.upper_nilradical.tolist() == [0, 2]
    assert rep.idempotents.tolist() == [0, 1]
    assert rep.units.tolist() == [1, 3]
    d = rep.to_dict()
    assert d["nilpotents"] == [0, 2] and d["index_of"] == [1, 2]


def test_report_m2z2():
    rep = nil_report(build("M(2,Z(2))"))
    assert len(rep.nilpotents) == 4
    assert rep.upper_nilradical.tolist() == [0]
    assert rep.j_radical.tolist() == [0]
    assert len(rep.units) == 6


def test_report_ut2z2():
    ring = build("UT(2,Z(2))")
    rep = nil_report(ring)
    e12 = ring.matrix_ops.from_matrix([[0, 1], [0, 0]])
    assert rep.nilpotents.tolist() == rep.upper_nilradical.tolist() == \
        rep.j_radical.tolist() == [0, e12]


@settings(max_examples=40, deadline=None)
@given(small_exprs)
def test_report_matches_oracles(expr):
    ring = build(expr)
    p = oracles.Plain(ring)
    rep = nil_report(ring)
    nil = oracles.nilpotents(p)
    q = oracles.quasi_regular(p)
    assert set(rep.nilpotents.tolist()) == nil
    assert set(rep.q_set.tolist()) == q
    assert set(rep.j_radical.tolist()) == oracles.largest_ideal_in(p, q)
    assert set(rep.upper_nilradical.tolist()) == oracles.largest_ideal_in(p, nil)
    assert set(rep.idempotents.tolist()) == oracles.idempotents(p)
    u = oracles.units(p)
    assert (rep.units is None) == (u is None)
    if u is not None:
        assert set(rep.units.tolist()) == u
    for x, k in rep.index_of.items():
        assert oracles.powers_index(p, x) == k


@settings(max_examples=40, deadline=None)
@given(small_exprs)
def test_report_invariants(expr):
    ring = build(expr)
    rep = nil_report(ring)
    assert rep.upper_nilradical <= rep.j_radical <= rep.q_set
    assert rep.upper_nilradical <= rep.nilpotents <= rep.q_set
    # J of a finite ring is nil, so it equals Nil*
    assert rep.j_radical == rep.upper_nilradical
    assert ideal_violation(ring, rep.j_radical) is None
    assert ideal_violation(ring, rep.upper_nilradical) is None
    if ring.one is not None:
        one_minus_q = {int(ring.minus(ring.one, q)) for q in rep.q_set}
        assert one_minus_q == set(rep.units.tolist())


@settings(max_examples=40, deadline=None)
@given(small_exprs)
def test_q_is_a_group_under_circle(expr):
    ring = build(expr)
    q = nil_report(ring).q_set.indices()
    prod = ring.circle(q[:, None], q[None, :])
    assert nil_report(ring).q_set.bits[prod].all()


@pytest.mark.parametrize("order", [1, 2, 3, 4, 7, 8, 64, 4096, 32768])
def test_power_bound(order):
    # x of index k needs a strictly decreasing chain of k-1 nonzero subgroups
    assert 2 ** (power_bound(order) - 1) <= max(order, 1)
    assert power_bound(order) >= 1


def test_power_bound_is_reached():
    ring = build("SUT(5,Z(2))")
    assert nilpotent_indices(ring).max() == 5 <= power_bound(ring.order)


def test_circle_examples():
    z4 = build("Z(4)")
    assert int(circle(z4, 2, 2)) == 0
    assert int(circle(z4, 3, 3)) == 1
    for x in range(4):
        assert int(circle(z4, x, 0)) == x == int(circle(z4, 0, x))


def test_quasi_inverse_examples():
    z4 = build("Z(4)")
    assert quasi_inverse_nilpotent(z4, 0) == 0
    assert quasi_inverse_nilpotent(z4, 2) == 2
    m3 = build("M(3,Z(2))")
    q = m3_elem(m3, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    r = quasi_inverse_nilpotent(m3, q)
    assert r == int(m3.plus(q, m3.times(q, q)))
    with pytest.raises(NotNilpotentError):
        quasi_inverse_nilpotent(z4, 1)


@settings(max_examples=30, deadline=None)
@given(small_exprs)
def test_quasi_inverse_all_nilpotents(expr):
    ring = build(expr)
    rep = nil_report(ring)
    for q in rep.nilpotents:
        r = quasi_inverse_nilpotent(ring, q)
        assert int(ring.circle(q, r)) == ring.zero == int(ring.circle(r, q))
        assert r in rep.nilpotents


def test_koethe_z_examples():
    z4 = build("Z(4)")
    assert koethe_z_construction(z4, 1, 2, 2) == 3
    assert koethe_z_construction(z4, 3, 0, 1) == 3
    ut = build("UT(2,Z(2))")
    e11 = ut.matrix_ops.from_matrix([[1, 0], [0, 0]])
    e12 = ut.matrix_ops.from_matrix([[0, 1], [0, 0]])
    z = koethe_z_construction(ut, e11, e12, 2)
    assert z == e11
    assert int(ut.circle(e12, e11)) == int(ut.plus(e11, e12))
    with pytest.raises(NotNilpotentError):
        koethe_z_construction(z4, 1, 1, 3)


def test_consistency_error_is_runtime_error():
    assert issubclass(ConsistencyError, RuntimeError)


@pytest.mark.parametrize("expr", ["Z(4)", "M(2,Z(2))", "SUT(3,Z(2))", "UT(3,Z(2))",
                                  "DORROH(SUT(3,Z(2)))", "M(2,Z(4))"])
def test_koethe_probe_holds(expr):
    v = koethe_sum_probe(build(expr))
    assert v.holds and v.witness is None


def test_koethe_probe_m2_only_zero_left_ideal():
    assert koethe_sum_probe(build("M(2,Z(2))")).nil_left_principal == 1


def test_nilpotent_indices_vectorised_matches_scalar():
    ring = build("SUT(4,Z(3))")
    idx = nilpotent_indices(ring)
    rng = np.random.default_rng(0)
    for x in rng.integers(0, ring.order, 50):
        assert (nilpotency_index(ring, int(x)) or 0) == idx[x]
