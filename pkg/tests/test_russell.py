from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pinchcurve.exactalg import (PrimeField, PurelyInseparableExt,
                                 UnsupportedError)
from pinchcurve.russell import (NotAdditiveError, RussellForm, additivity_defect,
                                defining_polynomial, example_field, example_form,
                                example_residue_field, make_form, pth_root, splitting_extension,
                                subextension_equality_matrix, subextension_family_distinct,
                                torsor_descriptor, verify_worked_example)

k = example_field()
a, b = k.gen("a"), k.gen("b")


def degree_by_enumeration(gens, nvars):
    """Size of the subgroup of (Q/Z)^n generated by exps(g)/e."""
    vecs = [(tuple(Fraction(x, e) for x in k.as_monomial(g)[1]), e) for g, e in gens]
    seen = set()
    for ks in itertools.product(*[range(e) for _, e in vecs]):
        v = tuple(sum(kk * vec[i] for kk, (vec, _) in zip(ks, vecs)) % 1 for i in range(nvars))
        seen.add(v)
    return len(seen)


def test_example_splitting_extension():
    rep = splitting_extension(example_form())
    assert rep.degree == 8
    assert rep.render(k) == "F2(a,b)((a)^(1/4), (b)^(1/2))"
    assert degree_by_enumeration(rep.generators, 2) == 8


@pytest.mark.parametrize("coeffs,n,degree", [
    ((a,), 1, 2), ((a,), 2, 4), ((a, 0, k.mul(b, b)), 2, 8), ((k.mul(a, a),), 1, 1),
    ((k.one(),), 2, 1), ((a, 0, a), 1, 2), ((k.mul(a, b), 0, k.mul(a, a)), 2, 8),
])
def test_splitting_degree_matches_enumeration(coeffs, n, degree):
    f = make_form(2, n, coeffs, k)
    rep = splitting_extension(f)
    assert rep.degree == degree
    if rep.generators:
        assert degree_by_enumeration(rep.generators, 2) == degree


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=3),
       st.integers(1, 2))
def test_splitting_degree_property(exps, n):
    # coefficients at x^2 and x^4 (p-power exponents), monomials in a, b
    cs = [k.monomial(e) for e in exps[:2]]
    coeffs = [cs[0]] + ([k.zero(), cs[1]] if len(cs) > 1 else [])
    rep = splitting_extension(make_form(2, n, coeffs, k))
    gens = rep.generators
    assert rep.degree == (degree_by_enumeration(gens, 2) if gens else 1)
    assert rep.degree <= 2 ** (n * len(cs))


def test_additivity_and_non_additive_rejection():
    for coeffs in ((a,), (a, 0, b), (0, 0, 0, 0, 0, 0, a)):
        f = make_form(2, 1, coeffs, k)
        R, defect = additivity_defect(f)
        assert not defect
    with pytest.raises(NotAdditiveError):
        make_form(2, 1, (a, b), k)
    with pytest.raises(NotAdditiveError):
        make_form(3, 1, (0, 1), PrimeField(3))


def test_form_equation_and_json():
    f = example_form()
    assert f.equation() == "y^4 = x + (a)*x^2 + (b^2)*x^4"
    assert RussellForm.from_json(f.to_json()) == f
    R, F = defining_polynomial(f)
    assert F


def test_finite_field_forms_are_trivial():
    f = make_form(3, 1, (0, 0, 0, 0, 0, 0, 1), PrimeField(3))
    assert splitting_extension(f).degree == 1


def test_pth_root():
    K = PurelyInseparableExt(k, [(a, 2), (b, 2)])
    assert pth_root(K, K.from_base(a)) == K.root(0)
    assert pth_root(K, K.from_base(k.add(a, b))) == K.add(K.root(0), K.root(1))
    rng = random.Random(3)
    for _ in range(20):
        x = K.random_element(rng)
        assert pth_root(K, K.mul(x, x)) == x
    assert pth_root(K, K.root(0)) is None
    with pytest.raises(UnsupportedError):
        pth_root(PurelyInseparableExt(k, [(a, 4)]), K.one())


def test_worked_example():
    rep = verify_worked_example()
    names = [c["name"] for c in rep["checks"]]
    assert names == ["morphism", "integral", "fraction_field", "residue_dimension",
                     "residue_field"]
    assert all(c["passed"] for c in rep["checks"])
    integral = rep["checks"][1]
    assert integral["witness"] == "w^2 = z + a" and integral["residual"] == "0"
    # the relabelled witness fails with a nonzero residual
    assert integral["alternative"] == {"witness": "w^2 = z + b", "residual": "a + b",
                                       "holds": False}
    assert rep["checks"][3]["dimension"] == 4
    assert rep["checks"][4]["alternative"]["holds"] is False


def test_subextension_family():
    cs = [k.zero(), k.one(), a, b, k.add(a, b)]
    assert subextension_family_distinct(cs) == 5
    M = subextension_equality_matrix(cs)
    assert all(M[i][j] == (i == j) for i in range(5) for j in range(5))
    assert subextension_family_distinct([a, a]) == 1
    assert subextension_family_distinct([1, a]) == 2


def test_torsor_descriptor():
    rec = torsor_descriptor(example_form())
    assert rec.residue_field == example_residue_field()
    other = torsor_descriptor(make_form(2, 1, (a,), k))
    assert other.residue_field is None
