import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilring.core import (
    AxiomError,
    BuildError,
    IdealError,
    ParseError,
    RingTable,
    SchemaError,
    build,
    dorroh_unitalization,
    embed,
    ideal_generated,
    load,
    load_file,
    parse_ring_expr,
    pretty,
    quotient,
    save_file,
    serialize,
    subring_generated,
    validate_axioms,
)
from nilring.core.dsl import SUT, Mat, Prod, Zmod
from nilring.core.ring import SubsetMask

from . import oracles

SMALL = [
    "Z(1)", "Z(2)", "Z(3)", "Z(4)", "Z(6)", "Z(8)", "M(1,Z(5))", "M(2,Z(2))",
    "UT(2,Z(2))", "UT(2,Z(3))", "SUT(2,Z(3))", "SUT(3,Z(2))", "SUT(3,Z(3))",
    "PROD(Z(2),Z(4))", "PROD(Z(2),Z(3))", "DORROH(SUT(2,Z(2)))", "DORROH(SUT(3,Z(2)))",
    "SUB(Z(4),[2])", "SUB(M(2,Z(2)),[2])", "SUB(UT(3,Z(2)),[3,17])",
    "QUOT(Z(8),[4])", "QUOT(UT(2,Z(2)),[2])", "UT(2,SUT(2,Z(2)))",
]

small_exprs = st.sampled_from(SMALL)


# -- parsing ---------------------------------------------------------------

def test_parse_literals():
    assert parse_ring_expr("Z(4)") == Zmod(4)
    assert parse_ring_expr("M(2,Z(2))") == Mat(2, Zmod(2))
    assert parse_ring_expr("SUT(6,Z(2))") == SUT(6, Zmod(2))
    assert parse_ring_expr(" PROD( Z(2) , Z(4) ) ") == Prod(Zmod(2), Zmod(4))


@pytest.mark.parametrize("text", ["Z(", "Z(x)", "Q(3)", "M(2)", "Z(4))",
                                  "M(0,Z(2))", "", "Z(-1)"])
def test_parse_errors(text):
    with pytest.raises(ParseError) as info:
        parse_ring_expr(text)
    assert info.value.position >= 0


def test_unknown_constructor_is_named():
    with pytest.raises(ParseError, match="FOO"):
        parse_ring_expr("FOO(2)")


exprs = st.recursive(
    st.integers(1, 9).map(Zmod),
    lambda inner: st.one_of(
        st.builds(Mat, st.integers(1, 3), inner),
        st.builds(SUT, st.integers(1, 3), inner),
        st.builds(Prod, inner, inner),
    ),
    max_leaves=4,
)


@given(exprs)
def test_pretty_round_trip(expr):
    assert parse_ring_expr(pretty(expr)) == expr
    assert pretty(parse_ring_expr(pretty(expr))) == pretty(expr)


# -- building ----------------------------------------------------------------

@pytest.mark.parametrize("expr,order,unital", [
    ("Z(4)", 4, True), ("M(2,Z(2))", 16, True), ("UT(2,Z(2))", 8, True),
    ("SUT(3,Z(2))", 8, False), ("PROD(Z(2),Z(4))", 8, True),
    ("PROD(Z(2),SUT(2,Z(2)))", 4, False), ("DORROH(SUT(2,Z(2)))", 4, True),
    ("QUOT(Z(4),[2])", 2, True), ("QUOT(UT(2,Z(2)),[2])", 4, True),
    ("M(2,Z(3))", 81, True), ("UT(3,Z(2))", 64, True), ("SUT(4,Z(3))", 729, False),
])
def test_orders_and_units(expr, order, unital):
    ring = build(expr)
    assert ring.order == order
    assert (ring.one is not None) == unital
    assert validate_axioms(ring) == []


def test_zmod_unit_index():
    assert build("Z(4)").one == 1
    assert build("Z(1)").one == build("Z(1)").zero == 0


def test_large_lazy_ring():
    ring = build("SUT(6,Z(2))")
    assert ring.order == 32768
    assert ring.one is None
    assert not ring.materialized
    x = np.arange(0, 32768, 97)
    assert np.all(ring.power(x, 6) == ring.zero)


def test_cap_overflow():
    with pytest.raises(BuildError):
        build("M(3,Z(4))", cap=1000)
    with pytest.raises(BuildError):
        build("SUB(Z(4),[7])")
    with pytest.raises(BuildError):
        build("SUB(Z(4),[])")


@pytest.mark.parametrize("m,k", [(2, 2), (3, 2), (4, 2), (2, 3)])
def test_matrix_ring_matches_numpy(m, k):
    ring = build(f"M({k},Z({m}))")
    ops = ring.matrix_ops
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, ring.order, size=(200, 2)):
        ma, mb = np.array(ops.to_matrix(int(a))), np.array(ops.to_matrix(int(b)))
        assert ops.from_matrix(((ma @ mb) % m).tolist()) == int(ring.times(a, b))
        assert ops.from_matrix(((ma + mb) % m).tolist()) == int(ring.plus(a, b))


def test_matrix_unit_encoding():
    ring = build("M(2,Z(2))")
    assert ring.matrix_ops.to_matrix(ring.one) == [[1, 0], [0, 1]]
    assert ring.matrix_ops.to_matrix(2) == [[0, 1], [0, 0]]
    assert ring.matrix_ops.to_matrix(4) == [[0, 0], [1, 0]]


@pytest.mark.parametrize("k,inner", [(2, 3), (3, 2), (2, 4)])
def test_matrix_order_formulas(k, inner):
    q = inner
    assert build(f"M({k},Z({q}))", cap=1 << 20).order == q ** (k * k)
    assert build(f"UT({k},Z({q}))").order == q ** (k * (k + 1) // 2)
    assert build(f"SUT({k},Z({q}))").order == q ** (k * (k - 1) // 2)


@settings(max_examples=40, deadline=None)
@given(small_exprs)
def test_reduced_and_exhaustive_axiom_checks_agree(expr):
    ring = build(expr)
    assert validate_axioms(ring, exhaustive=True) == []
    assert validate_axioms(ring, exhaustive=False) == []


def _corrupted(expr, a, b, value):
    ring = build(expr)
    mul = ring.mul.copy()
    mul[a, b] = value
    return RingTable.from_tables(ring.add.copy(), mul, ring.zero, ring.one)


@pytest.mark.parametrize("exhaustive", [True, False])
def test_corrupted_mul_is_reported(exhaustive):
    bad = _corrupted("Z(6)", 2, 3, 1)
    names = {v.axiom for v in validate_axioms(bad, exhaustive=exhaustive)}
    assert names & {"mul_associative", "mul_left_distributive", "mul_right_distributive"}


def _skew_table():
    # additive group Z/2 x Z/2 (xor), product bilinear but not associative
    add = [[a ^ b for b in range(4)] for a in range(4)]

    def m(x, y):
        a, c, d = x & 1, y & 1, y >> 1
        return (a * d) | ((a * c) << 1)
    return add, [[m(x, y) for y in range(4)] for x in range(4)]


def test_associativity_witness_is_real():
    add, mul = _skew_table()
    found = validate_axioms(RingTable.from_tables(add, mul, 0))
    assert [v.axiom for v in found] == ["mul_associative"]
    a, b, c = found[0].witness
    assert mul[mul[a][b]][c] != mul[a][mul[b][c]]


def test_bad_unit_reported():
    ring = build("Z(4)")
    broken = RingTable.from_tables(ring.add, ring.mul, ring.zero, one=3)
    assert [v.axiom for v in validate_axioms(broken)] == ["unit"]


# -- substructures -------------------------------------------------------------

def test_subring_examples():
    m2 = build("M(2,Z(2))")
    assert subring_generated(m2, [2]).tolist() == [0, 2]
    assert subring_generated(m2, [0]).tolist() == [0]
    assert subring_generated(build("Z(4)"), [2]).tolist() == [0, 2]


def test_ideal_examples():
    ut = build("UT(2,Z(2))")
    assert ideal_generated(ut, 0).tolist() == [0]
    assert ideal_generated(ut, 2).tolist() == [0, 2]
    assert ideal_generated(build("Z(4)"), 2).tolist() == [0, 2]


@settings(max_examples=60, deadline=None)
@given(small_exprs, st.data())
def test_closures_match_saturation(expr, data):
    ring = build(expr)
    p = oracles.Plain(ring)
    x = data.draw(st.integers(0, ring.order - 1))
    y = data.draw(st.integers(0, ring.order - 1))
    assert set(ideal_generated(ring, x).tolist()) == oracles.ideal(p, x)
    assert set(ideal_generated(ring, x, left=True).tolist()) == oracles.ideal(p, x, True)
    sub = subring_generated(ring, [x, y])
    assert set(sub.tolist()) == oracles.subring(p, {x, y})
    # closing again changes nothing
    assert subring_generated(ring, sub) == sub
    i = ideal_generated(ring, x)
    assert ideal_generated(ring, i) == i


@settings(max_examples=40, deadline=None)
@given(small_exprs, st.data())
def test_quotient_projection_is_homomorphism(expr, data):
    ring = build(expr)
    x = data.draw(st.integers(0, ring.order - 1))
    i = ideal_generated(ring, x)
    q = quotient(ring, i)
    assert q.order * len(i) == ring.order
    assert validate_axioms(q) == []
    pi = q.projection
    a = np.arange(ring.order)
    assert np.array_equal(pi[ring.add], q.add[pi[:, None], pi[None, :]])
    assert np.array_equal(pi[ring.mul], q.mul[pi[:, None], pi[None, :]])
    if ring.one is not None:
        assert q.one == pi[ring.one]
    assert pi[ring.zero] == q.zero and len(set(pi[a].tolist())) == q.order


def test_quotient_examples():
    z4 = build("Z(4)")
    q = quotient(z4, ideal_generated(z4, 2))
    assert q.order == 2 and q.mul[q.one, q.one] == q.one
    same = quotient(z4, z4.mask([0]))
    assert np.array_equal(same.add, z4.add) and np.array_equal(same.mul, z4.mul)
    ut = build("UT(2,Z(2))")
    q = quotient(ut, ideal_generated(ut, 2))
    assert q.order == 4 and np.array_equal(q.mul, q.mul.T)


def test_quotient_rejects_non_ideal():
    m2 = build("M(2,Z(2))")
    with pytest.raises(IdealError) as info:
        quotient(m2, m2.mask([0, 2]))
    assert "absorption" in info.value.kind


@pytest.mark.parametrize("expr,order", [("SUB(Z(4),[2])", 4), ("Z(2)", 4),
                                        ("SUT(2,Z(2))", 4), ("SUT(3,Z(4))", 256)])
def test_dorroh_embedding(expr, order):
    ring = build(expr)
    d = dorroh_unitalization(ring)
    assert d.order == order == ring.exponent * ring.order
    assert d.one is not None and validate_axioms(d) == []
    e = embed(d, np.arange(ring.order))
    assert len(set(e.tolist())) == ring.order
    assert np.array_equal(d.add[e[:, None], e[None, :]], e[ring.add])
    assert np.array_equal(d.mul[e[:, None], e[None, :]], e[ring.mul])
    image = d.mask(e)
    assert ideal_generated(d, image) == image


def test_dorroh_of_sut2_has_square_zero():
    ring = build("SUT(2,Z(2))")
    d = dorroh_unitalization(ring)
    x = int(embed(d, 1))
    assert x != d.zero and d.mul[x, x] == d.zero


def test_subset_masks_need_same_ring():
    a, b = build("Z(4)"), build("Z(4)")
    m = a.mask([0, 2])
    assert (m | a.mask([1])).tolist() == [0, 1, 2]
    assert (~m).tolist() == [1, 3]
    assert (m & a.mask([2, 3])).tolist() == [2]
    with pytest.raises(ValueError):
        m | b.mask([1])
    with pytest.raises(IndexError):
        a.mask([4])
    assert isinstance(m, SubsetMask) and 2 in m and len(m) == 2


# -- files -------------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(small_exprs)
def test_serialize_round_trip(expr):
    ring = build(expr)
    back = load(serialize(ring))
    assert back.order == ring.order and back.zero == ring.zero and back.one == ring.one
    assert np.array_equal(back.add, ring.add) and np.array_equal(back.mul, ring.mul)
    assert back.label == ring.label


def test_file_round_trip_and_table_expr(tmp_path):
    path = tmp_path / "z4.json"
    save_file(build("Z(4)"), path)
    assert load_file(path).order == 4
    ring = build(f"PROD(TABLE({path}),Z(2))")
    assert ring.order == 8 and validate_axioms(ring) == []


def test_truncated_file_is_schema_error():
    data = serialize(build("Z(4)"))
    with pytest.raises(SchemaError):
        load(data[: len(data) // 2])
    with pytest.raises(SchemaError):
        load(json.dumps({"order": 2, "zero": 0, "add": [[0, 1]], "mul": [[0, 0]]}))


def test_non_associative_file_is_axiom_error():
    add, mul = _skew_table()
    text = json.dumps({"order": 4, "zero": 0, "one": None, "add": add, "mul": mul,
                       "label": "bad"})
    with pytest.raises(AxiomError) as info:
        load(text)
    assert info.value.violations[0].axiom == "mul_associative"
    assert len(info.value.violations[0].witness) == 3
