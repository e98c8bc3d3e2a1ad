"""Mod-2 quotient rings: normal forms, ring axioms, SW classes, obstruction."""

import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallspan.f2cohomology import (
    GradedF2Poly,
    RingPresentation,
    cpn_presentation,
    dold_presentation,
    fiber_restriction,
    make_presentation,
    sw_upper_bound,
    total_sw_cpn,
    total_sw_wall,
    unit_inverse,
    virtual_sw_rules_out,
    wall_presentation,
)
from wallspan.invariants import WallParams


# -- independent expansion oracle for the Wall ring ---------------------------
#
# Expands products in the free ring with integer coefficients (Counter), then
# reduces each free monomial x^e c^i d^j by hand: d^j dies for j > n, each
# excess c beyond c^m trades for an x, and x^2 dies.  Shares no code with the
# rewrite engine.


def reduce_wall_by_hand(mono, m, n):
    e, i, j = mono
    if j > n:
        return None
    while i > m:
        i -= 1
        e += 1
    if e > 1:
        return None
    return (e, i, j)


def expand_wall_by_hand(factors, m, n):
    acc = Counter({(0, 0, 0): 1})
    for factor in factors:
        nxt = Counter()
        for mono, coeff in acc.items():
            for g in factor:
                nxt[tuple(a + b for a, b in zip(mono, g))] += coeff
        acc = nxt
    out = set()
    for mono, coeff in acc.items():
        if coeff % 2 == 0:
            continue
        reduced = reduce_wall_by_hand(mono, m, n)
        if reduced is not None:
            out ^= {reduced}
    return frozenset(out)


def total_sw_by_hand(m, n):
    one, x, c, d = (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)
    factors = [[one, c, x]] + [[one, c]] * (m - 1) + [[one, c, d]] * (n + 1)
    return expand_wall_by_hand(factors, m, n)


# -- presentations -------------------------------------------------------------


def test_wall_degree_one_basis():
    pres = wall_presentation(1, 1)
    assert len(pres.basis(1)) == 2
    assert {pres.render_monomial(mo) for mo in pres.basis(1)} == {"x", "c"}


def test_wall_c_cubed_normalizes():
    # m = 2: c^3 -> c^2 x directly
    assert wall_presentation(2, 1).element([(0, 3, 0)]).render() == "x*c^2"
    # m = 1: c^3 -> c^2 x -> (c x) x -> c x^2 -> 0
    assert wall_presentation(1, 1).element([(0, 3, 0)]).is_zero()


def test_wall_rejects_m_zero():
    with pytest.raises(ValueError):
        wall_presentation(0, 2)


def test_make_presentation_dispatch():
    assert make_presentation("wall", 2, 1) is wall_presentation(2, 1)
    assert make_presentation("dold", 2, 1) is dold_presentation(2, 1)
    assert make_presentation("cpn", n=3) is cpn_presentation(3)
    with pytest.raises(ValueError):
        make_presentation("lens", 2, 1)
    with pytest.raises(ValueError):
        make_presentation("cpn")


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_wall_graded_dimensions(m, n):
    # closed count of basis monomials x^eps c^i d^j with eps+i+2j = q
    pres = wall_presentation(m, n)
    for q in range(pres.top_degree + 1):
        expected = sum(
            1
            for eps in (0, 1)
            for i in range(m + 1)
            for j in range(n + 1)
            if eps + i + 2 * j == q
        )
        assert len(pres.basis(q)) == expected


def test_dold_and_cpn_presentations():
    dold = dold_presentation(2, 1)
    assert dold.element([(3, 0)]).is_zero()  # c^3 = 0
    assert dold.element([(0, 2)]).is_zero()  # d^2 = 0
    cpn = cpn_presentation(3)
    assert cpn.element([(4,)]).is_zero()
    assert not cpn.element([(3,)]).is_zero()


def test_non_confluent_rules_rejected():
    # x^2 -> 0 vs xy -> y^2: x^2 y reduces to 0 or to y^3
    with pytest.raises(ValueError, match="not confluent"):
        RingPresentation(
            [("x", 1), ("y", 1)],
            [((2, 0), []), ((1, 1), [(0, 2)])],
            top_degree=4,
        )


def test_non_terminating_rules_rejected():
    with pytest.raises(ValueError, match="terminate"):
        RingPresentation(
            [("x", 1), ("y", 1)],
            [((1, 0), [(0, 1)]), ((0, 1), [(1, 0)])],
            top_degree=2,
        )


def test_inhomogeneous_rule_rejected():
    with pytest.raises(ValueError, match="homogeneous"):
        RingPresentation([("x", 1)], [((2,), [(1,)])], top_degree=3)


# -- ring arithmetic -----------------------------------------------------------


def test_mul_examples():
    pres = wall_presentation(3, 1)
    one, c = pres.one(), pres.gen("c")
    assert (one + c) * (one + c) == one + c * c

    pres2 = wall_presentation(2, 3)
    x, d = pres2.gen("x"), pres2.gen("d")
    assert (x * x).is_zero()
    assert (d**3 * d).is_zero()
    assert not (d**3).is_zero()


def test_mul_rejects_mixed_presentations():
    a = wall_presentation(1, 1).gen("c")
    b = wall_presentation(2, 1).gen("c")
    with pytest.raises(ValueError, match="mixed"):
        a * b
    with pytest.raises(ValueError, match="mixed"):
        a + b


def test_pow_rejects_negative():
    with pytest.raises(ValueError):
        wall_presentation(1, 1).gen("c") ** -1


_PRES = wall_presentation(2, 2)
_BASIS = [mo for q in range(_PRES.top_degree + 1) for mo in _PRES.basis(q)]
_polys = st.frozensets(st.sampled_from(_BASIS), max_size=10).map(
    lambda monos: _PRES.element(monos)
)


@settings(max_examples=60, deadline=None)
@given(_polys, _polys, _polys)
def test_ring_axioms(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + p).is_zero()
    assert (p + q) * (p + q) == p * p + q * q  # Frobenius in characteristic 2


@settings(max_examples=60, deadline=None)
@given(_polys)
def test_normal_form_idempotent(p):
    assert _PRES.element(p.monos) == p
    assert GradedF2Poly(_PRES, p.monos) == p


@settings(max_examples=40, deadline=None)
@given(_polys)
def test_unit_inverse_round_trip(p):
    unit = p + p.component(0) + _PRES.one()  # force degree-0 part to 1
    assert (unit * unit_inverse(unit)) == _PRES.one()


def test_unit_inverse_examples():
    pres = wall_presentation(2, 1)
    one, x, c = pres.one(), pres.gen("x"), pres.gen("c")
    assert unit_inverse(one) == one
    assert unit_inverse(one + x) == one + x
    inv_c = unit_inverse(one + c)
    assert (one + c) * inv_c == one
    with pytest.raises(ValueError, match="unit"):
        unit_inverse(x)
    with pytest.raises(ValueError, match="unit"):
        unit_inverse(pres.zero())


def test_render():
    pres = wall_presentation(2, 2)
    assert pres.zero().render() == "0"
    assert pres.one().render() == "1"
    p = pres.one() + pres.gen("d") + pres.gen("x") * pres.gen("c") ** 2
    assert p.render() == "1 + d + x*c^2"


# -- Stiefel-Whitney classes ---------------------------------------------------


def test_total_sw_wall_degree_zero_is_one():
    w = total_sw_wall(WallParams(3, 2))
    assert w.component(0) == wall_presentation(3, 2).one()


def test_total_sw_wall_smallest_case():
    w = total_sw_wall(WallParams(1, 0))
    pres = wall_presentation(1, 0)
    assert w == pres.one() + pres.gen("x")


@pytest.mark.parametrize("m,n", [(1, 0), (2, 1), (2, 2), (3, 2), (1, 3), (4, 4)])
def test_total_sw_wall_matches_hand_expansion(m, n):
    assert total_sw_wall(WallParams(m, n)).monos == total_sw_by_hand(m, n)


@pytest.mark.parametrize("m,n", [(2, 2), (4, 2), (2, 4)])
def test_fiber_restriction_of_top_even_class(m, n):
    # for n even the degree-2n component restricts to a^n != 0
    w = total_sw_wall(WallParams(m, n))
    restricted = fiber_restriction(w.component(2 * n))
    assert restricted == cpn_presentation(n).element([(n,)])
    assert not restricted.is_zero()


def test_fiber_restriction_basics():
    pres = wall_presentation(2, 3)
    d = pres.gen("d")
    for k in range(1, 4):
        assert fiber_restriction(d**k) == cpn_presentation(3).element([(k,)])
    xcd = pres.gen("x") * pres.gen("c") * d
    assert fiber_restriction(xcd).is_zero()


def test_fiber_restriction_is_ring_hom():
    pres = wall_presentation(2, 2)
    rng = random.Random(19)
    basis = [mo for q in range(pres.top_degree + 1) for mo in pres.basis(q)]
    for _ in range(25):
        p = pres.element(rng.sample(basis, 5))
        q = pres.element(rng.sample(basis, 5))
        assert fiber_restriction(p * q) == fiber_restriction(p) * fiber_restriction(q)


def test_fiber_restriction_rejects_other_rings():
    with pytest.raises(ValueError):
        fiber_restriction(cpn_presentation(2).gen("a"))


def test_fiber_restriction_of_total_class_is_cpn_total_class():
    for m, n in [(1, 2), (3, 3), (2, 4)]:
        assert fiber_restriction(total_sw_wall(WallParams(m, n))) == total_sw_cpn(n)


# -- the obstruction search ------------------------------------------------------


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (3, 1), (4, 3)])
def test_rule_out_k1_always_admissible(m, n):
    # the all-zero multiset works at k = 1 since w has no top-degree part
    result = virtual_sw_rules_out(WallParams(m, n), 1)
    assert not result.ruled_out
    assert result.witnesses[-1].counts == (1, 0, 0, 0)
    assert result.witnesses[-1].failure_degree is None


def test_rule_out_2_2():
    p = WallParams(2, 2)
    assert virtual_sw_rules_out(p, 4).ruled_out
    result3 = virtual_sw_rules_out(p, 3)
    assert not result3.ruled_out

    # re-derive the recorded witness through the public ring operations
    admissible = result3.witnesses[-1]
    assert admissible.failure_degree is None
    pres = wall_presentation(2, 2)
    one, x, c = pres.one(), pres.gen("x"), pres.gen("c")
    k0, k1, k2, k3 = admissible.counts
    product = (one + x) ** k1 * (one + c) ** k2 * (one + x + c) ** k3
    u = total_sw_wall(p) * unit_inverse(product)
    assert u.max_degree() <= p.dim - 3


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [2, 4])
def test_rule_out_n_even_at_m_plus_2(m, n):
    p = WallParams(m, n)
    result = virtual_sw_rules_out(p, m + 2)
    assert result.ruled_out
    assert all(w.failure_degree is not None for w in result.witnesses)
    # every recorded failure lies in a forbidden degree
    assert all(w.failure_degree > result.max_allowed_degree for w in result.witnesses)

    # re-derive each failure through the public ring operations
    pres = wall_presentation(m, n)
    one, x, c = pres.one(), pres.gen("x"), pres.gen("c")
    w_total = total_sw_wall(p)
    for witness in result.witnesses:
        _, k1, k2, k3 = witness.counts
        product = (one + x) ** k1 * (one + c) ** k2 * (one + x + c) ** k3
        u = w_total * unit_inverse(product)
        assert not u.component(witness.failure_degree).is_zero()


def test_rule_out_range_errors():
    p = WallParams(2, 2)
    with pytest.raises(ValueError):
        virtual_sw_rules_out(p, 0)
    with pytest.raises(ValueError):
        virtual_sw_rules_out(p, p.dim + 1)


def test_sw_upper_bound_values():
    assert sw_upper_bound(WallParams(2, 2)) == 3
    assert sw_upper_bound(WallParams(4, 2)) == 5  # m + 1
    assert sw_upper_bound(WallParams(2, 4)) == 3  # m + 1
    assert sw_upper_bound(WallParams(1, 1)) == 4  # = dim, nothing ruled out
