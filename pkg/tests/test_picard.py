from __future__ import annotations

import pytest

from pinchcurve.classify import (GroupDescriptor, HomogeneousCurve, classify,
                                 enumerate_classified, norm_torus)
from pinchcurve.exactalg import (AbelianGroupDescription, PrimeField, Rationals,
                                 UnsupportedError, finite_field)
from pinchcurve.picard import (equivariant_pic, equivariant_sequence_check_3b,
                               equivariant_units_pic, pic_torsion_oracle, resolve_tokens,
                               units_pic_sequence, units_quotient_token)
from pinchcurve.pinching import PinchDescriptor, a1mc, conic_descent_prime, p1n, p1prime
from pinchcurve.semigroups import NATURALS, TailSemigroup

Z = AbelianGroupDescription


def test_nodal_over_f3():
    rep = units_pic_sequence(p1prime(PrimeField(3), NATURALS, NATURALS))
    assert [t["order"] for t in rep.terms] == [2, 4, 4]
    assert all(e["exact"] for e in rep.exact)
    assert rep.pic_torsion == Z(0, (2,))
    assert rep.pic == Z(1, (2,))
    assert len(rep.coset_representatives) == 2
    assert len(rep.maps[1]["table"]) == 4


def test_cusp_over_f2():
    rep = units_pic_sequence(p1n(PrimeField(2), 2))
    assert rep.terms[2]["order"] == 2
    assert rep.pic_torsion.torsion_order == 2
    assert pic_torsion_oracle(p1n(PrimeField(2), 2)).torsion_order == 2


def test_trivial_pinch():
    rep = units_pic_sequence(p1n(PrimeField(3), 0))
    assert rep.pic_torsion.is_trivial and rep.pic == Z(1)
    assert pic_torsion_oracle(p1n(PrimeField(3), 0)).is_trivial


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_closed_forms(q):
    k = finite_field(q)
    assert units_pic_sequence(p1prime(k, NATURALS, NATURALS)).pic_torsion.torsion_order == q - 1
    for n in (2, 3):
        assert units_pic_sequence(p1n(k, n)).pic_torsion.torsion_order == q ** (n - 1)


@pytest.mark.parametrize("q", [2, 3])
def test_sequence_matches_gluing_count(q):
    for r in enumerate_classified(str(q), 5):
        d = r.curve
        if not isinstance(d, PinchDescriptor) or d.ztilde.dim > 6:
            continue
        rep = units_pic_sequence(d)
        assert all(e["exact"] for e in rep.exact), r.detail
        assert rep.pic_torsion == pic_torsion_oracle(d), r.detail


def test_affine_curves_have_no_degree_part():
    rep = units_pic_sequence(a1mc(PrimeField(2), TailSemigroup(3, (0,))))
    assert rep.pic.free_rank == 0 and rep.pic_torsion.torsion_order == 4


def test_infinite_fields_stay_symbolic():
    rep = units_pic_sequence(p1n(Rationals(), 2))
    assert rep.pic_torsion.symbolic == ("UnitsQuotient(O(Z~),O(Z))",)
    with pytest.raises(UnsupportedError):
        pic_torsion_oracle(p1n(Rationals(), 2))


def test_token_resolution():
    g = resolve_tokens(Z(1, (), (units_quotient_token("F9", "F3"), "CharacterGroup(T)")))
    assert g == Z(1, (4,), ("CharacterGroup(T)",))
    with pytest.raises(ValueError):
        resolve_tokens(Z(0, (), (units_quotient_token("F8", "F4"),)))


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_case_3c_two_routes(q):
    rec = classify(conic_descent_prime(q, NATURALS), norm_torus(q))
    assert rec.case_label == "3c"
    by_token = equivariant_pic(rec)
    by_units = equivariant_units_pic(rec).quotient
    assert by_token.torsion_order == by_units.torsion_order == q + 1


def test_case_3c_over_f5_terms():
    rec = classify(conic_descent_prime(5, NATURALS), norm_torus(5))
    rep = equivariant_units_pic(rec)
    assert [t["order"] for t in rep.terms] == [4, 24]
    assert rep.quotient == Z(0, (6,))


def test_case_3b():
    out = equivariant_sequence_check_3b(3)
    assert out["kernel"] == [[0, 1], 1]
    assert out["matrix"] == [[1, 1, -1], [0, 1, -1]]
    assert out["smith"] == [1, 1]
    assert Z.from_json(out["pic"]) == Z(1, (2,))
    for q in (2, 3, 4, 5):
        rec = classify(p1prime(finite_field(q), NATURALS, NATURALS),
                       GroupDescriptor("Gm", finite_field(q)))
        assert equivariant_pic(rec) == Z(1, (q - 1,))
        assert equivariant_units_pic(rec).quotient.torsion_order == q - 1


def test_case_3a_is_symbolic():
    rec = [r for r in enumerate_classified("F2(a,b)", 1, "russell") if r.case_label == "3a"][0]
    g = equivariant_pic(rec)
    assert g.free_rank == 1 and g.symbolic == ("UnitsQuotient(kappa(P~),kappa(P))",)
    rep = equivariant_units_pic(rec)
    assert rep.quotient.symbolic == g.symbolic


@pytest.mark.parametrize("kind,group,expected", [
    ("A1", "Ga", Z()), ("A1minus0", "Gm", Z()), ("GenusOne", "GenusOneNeutral", Z()),
    ("P1", "GaSemidirectGm", Z(2)), ("P1", "Ga", Z(1)), ("P1", "ConicAut", Z(1)),
    ("A1", "GaSemidirectGm", Z(1)), ("A1", "Gm", Z(1)), ("P1", "Gm", Z(2)),
])
def test_table(kind, group, expected):
    k = Rationals()
    rec = classify(HomogeneousCurve(kind, k), GroupDescriptor(group, k))
    assert equivariant_pic(rec) == expected


def test_table_conic_and_errors():
    T = norm_torus(3)
    assert equivariant_pic(classify(HomogeneousCurve("Conic", T.field), T)) == Z(1)
    rec = classify(p1n(PrimeField(2), 3), GroupDescriptor("Ga", PrimeField(2)))
    with pytest.raises(ValueError):
        equivariant_pic(rec)
    with pytest.raises(UnsupportedError):
        equivariant_units_pic(rec)


def test_report_json_shape():
    obj = units_pic_sequence(p1prime(PrimeField(3), NATURALS, NATURALS)).to_json()
    assert {"terms", "maps", "exact", "pic_torsion"} <= set(obj)
    assert obj["pic_torsion"] == {"free_rank": 0, "cyclic_orders": [2], "symbolic": []}
