from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from pinchcurve.exactalg import (DescriptorMismatch, PrimeField, Rationals,
                                 UnsupportedError, echelon_basis, finite_field, is_reduced,
                                 upoly_divmod, upoly_mul, upoly_trim)
from pinchcurve.pinching import (NotASubalgebraError, ParameterError, PinchDescriptor, a1mc,
                                 catalog, chart_data, chart_ring, conductor, conductor_of,
                                 conic_descent, conic_descent_prime, descent_check,
                                 is_seminormal, minimal_presentation, p1mncd, p1n, p1prime, pinch)
from pinchcurve.semigroups import NATURALS, TailSemigroup, enumerate_semigroups


def poly(k, *cs):
    return tuple(k.from_int(c) for c in cs)


def conductor_by_enumeration(r):
    """All f in k[x]/I with f * (k[x]/I) inside W, listed exhaustively (finite k)."""
    quo, W = r.quotient, r.z_sub
    k = quo.base
    elems = list(itertools.product(list(k.elements()), repeat=quo.dim))
    return {f for f in elems if all(W.contains(quo.multiply(f, g)) for g in elems)}


def ideal_elements(k, g, I, n):
    """Residues mod I of the multiples of g."""
    out = set()
    for h in itertools.product(list(k.elements()), repeat=n):
        _, rem = upoly_divmod(k, upoly_mul(k, g, h), I)
        rem = list(upoly_trim(k, rem)) + [k.zero()] * n
        out.add(tuple(rem[:n]))
    return out


def test_node_conductor():
    for q in (2, 3, 5, 7):
        k = finite_field(q)
        assert conductor_of(p1prime(k, NATURALS, NATURALS)) == upoly_trim(k, poly(k, 0, -1, 1))
    assert conductor_of(p1prime(Rationals(), NATURALS, NATURALS)) == (0, -1, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_cusp_conductor(n):
    for k in (PrimeField(2), PrimeField(3), Rationals()):
        g = conductor_of(p1n(k, n))
        assert g == tuple([k.zero()] * n + [k.one()])


@pytest.mark.parametrize("s", [s for s in enumerate_semigroups(5) if s.m])
def test_monomial_curve_conductor(s):
    for k in (PrimeField(2), PrimeField(3), Rationals()):
        assert conductor_of(a1mc(k, s)) == tuple([k.zero()] * s.m + [k.one()])


@pytest.mark.parametrize("name,build", [
    ("node", lambda k: p1prime(k, NATURALS, NATURALS)),
    ("cusp3", lambda k: p1n(k, 3)),
    ("a1mc", lambda k: a1mc(k, TailSemigroup(4, (0, 2)))),
    ("p1mncd", lambda k: p1mncd(k, TailSemigroup(2, (0,)), TailSemigroup(2, (0,)))),
    ("primed", lambda k: p1prime(k, TailSemigroup(2, (0,)), NATURALS)),
])
def test_conductor_matches_enumeration(name, build):
    k = PrimeField(2)
    d = build(k)
    r = chart_ring(d)
    g = conductor(r)
    assert ideal_elements(k, g, r.quotient.modulus, r.quotient.dim) == conductor_by_enumeration(r)


def test_conic_conductor_is_the_modulus():
    for q in (2, 3, 5):
        d = conic_descent_prime(q, NATURALS)
        L = d.ztilde.factors[0].residue
        assert conductor_of(d) == L.modulus


def test_pinch_api():
    k = PrimeField(3)
    r = chart_ring(p1prime(k, NATURALS, NATURALS))
    same = pinch(k, r.quotient.modulus, r.z_sub)
    assert conductor(same) == conductor(r)
    assert r.contains((1, 0)) and not r.contains((0, 1))


@pytest.mark.parametrize("q", [2, 3])
def test_chart_ring_identifies_the_algebras(q):
    k = finite_field(q)
    for d in (p1prime(k, TailSemigroup(2, (0,)), TailSemigroup(3, (0,))),
              conic_descent(q, TailSemigroup(2, (0,))), a1mc(k, TailSemigroup(3, (0,)))):
        I, xi = chart_data(d)
        assert len(I) - 1 == d.ztilde.dim
        assert chart_ring(d).z_sub.rank == d.z_sub.rank


def test_seminormality():
    k = PrimeField(3)
    assert is_seminormal(p1prime(k, NATURALS, NATURALS))
    assert is_seminormal(p1n(k, 0))
    assert is_seminormal(conic_descent_prime(3, NATURALS))
    for n in range(2, 6):
        assert not is_seminormal(p1n(k, n))
    # a needlessly large presentation of the node is still seminormal
    assert is_seminormal(p1prime(k, NATURALS, NATURALS, ambient=(3, 2)))
    assert not is_seminormal(p1n(k, 2, ambient=4))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(enumerate_semigroups(4)), st.sampled_from(enumerate_semigroups(4)),
       st.booleans(), st.sampled_from([2, 3]))
def test_seminormal_iff_minimal_ztilde_reduced(s, d, primed, q):
    k = finite_field(q)
    D = (p1prime if primed else p1mncd)(k, s, d)
    assert is_seminormal(D) == is_reduced(minimal_presentation(D).ztilde)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(enumerate_semigroups(4)), st.sampled_from(enumerate_semigroups(4)))
def test_two_point_conductor(s, d):
    k = PrimeField(3)
    D = p1mncd(k, s, d)
    g = conductor_of(D)
    expect = (k.one(),)
    for _ in range(s.m):
        expect = upoly_mul(k, expect, poly(k, 0, 1))
    for _ in range(d.m):
        expect = upoly_mul(k, expect, poly(k, -1, 1) if s.m else poly(k, 0, 1))
    assert g == upoly_trim(k, expect)


def test_descent_check():
    rep = descent_check(conic_descent(3, TailSemigroup(2, (0,))))
    assert rep == {"rank_over_extension": 2, "stable": True, "fixed_dim": 2, "dim_over_base": 2}
    rep = descent_check(conic_descent_prime(3, NATURALS))
    assert rep["fixed_dim"] == rep["rank_over_extension"] == 1 and rep["stable"]


def test_json_round_trip():
    k = PrimeField(3)
    for d in (p1prime(k, TailSemigroup(2, (0,)), NATURALS), p1n(Rationals(), 3),
              conic_descent_prime(5, NATURALS), a1mc(k, TailSemigroup(4, (0, 2)))):
        text = json.dumps(d.to_json(), sort_keys=True)
        back = PinchDescriptor.from_json(json.loads(text))
        assert back == d
        assert json.dumps(back.to_json(), sort_keys=True) == text


def test_validation_errors():
    k = PrimeField(2)
    d = p1n(k, 3)
    alg = d.ztilde
    with pytest.raises(NotASubalgebraError):
        PinchDescriptor("ProjectiveLine", alg, echelon_basis([alg.monomial(0, 1)], alg), ("inf",))
    with pytest.raises(ParameterError):
        PinchDescriptor("Torus", alg, d.z_sub, ("inf",))
    with pytest.raises(DescriptorMismatch):
        PinchDescriptor("ProjectiveLine", alg, d.z_sub, ())
    with pytest.raises(ParameterError):
        catalog("nonsense")
    obj = d.to_json()
    obj["version"] = 99
    with pytest.raises(UnsupportedError):
        PinchDescriptor.from_json(obj)


def test_minimal_presentation():
    k = PrimeField(2)
    assert minimal_presentation(p1n(k, 1)) == p1n(k, 0)
    big = a1mc(k, TailSemigroup(3, (0,)), ambient=5)
    assert minimal_presentation(big).ztilde.dim == 3
    assert conductor_of(big) == conductor_of(minimal_presentation(big))
    assert not p1mncd(k, NATURALS, NATURALS).is_pinched
    assert p1prime(k, NATURALS, NATURALS).is_pinched
