"""Acceptance suite: one test per criterion, each logged for the terminal summary.

Every test records its verdict in conftest.ACCEPTANCE before asserting, so the
summary lists a PASS or FAIL line per criterion even when an assertion trips.
"""
from __future__ import annotations

import itertools
import random
import time

import pytest

from conftest import ACCEPTANCE
from pinchcurve.classify import (SEMINORMAL_LABELS, SHAPE_LABELS, GroupDescriptor,
                                 HomogeneousCurve, NotAlmostHomogeneous, classify,
                                 enumerate_classified, norm_torus)
from pinchcurve.exactalg import AbelianGroupDescription as Z
from pinchcurve.exactalg import (PrimeField, Rationals, finite_field, is_reduced, upoly_divmod,
                                 upoly_mul, upoly_trim)
from pinchcurve.picard import (equivariant_pic, equivariant_sequence_check_3b,
                               equivariant_units_pic, pic_torsion_oracle, resolve_tokens,
                               units_pic_sequence)
from pinchcurve.pinching import (PinchDescriptor, a1mc, chart_ring, conductor_of,
                                 conic_descent_prime, is_seminormal, minimal_presentation,
                                 p1n, p1prime)
from pinchcurve.russell import (example_field, example_form, splitting_extension,
                                subextension_family_distinct, verify_worked_example)
from pinchcurve.semigroups import NATURALS, canonicalize, contains, enumerate_semigroups
from pinchcurve.stability import (classify_ga_stable_char0, classify_gm_stable,
                                  is_ga_stable_char0, monomial_subalgebra)


ALL_LABELS = tuple(SEMINORMAL_LABELS) + tuple(SHAPE_LABELS)


def record(n: int, ok: bool, msg: str) -> None:
    ACCEPTANCE[n] = (bool(ok), msg)


# -- independent oracles ----------------------------------------------------

def all_subspaces(k, dim):
    """Every subspace of k^dim as a frozenset of its vectors (finite k only)."""
    elems = list(k.elements())
    vectors = list(itertools.product(elems, repeat=dim))
    zero = tuple([k.zero()] * dim)
    seen = set()
    # grow spans one vector at a time; dim <= 4 over F2/F3 keeps this tiny
    frontier = {frozenset([zero])}
    while frontier:
        nxt = set()
        for span in frontier:
            if span in seen:
                continue
            seen.add(span)
            for v in vectors:
                if v in span:
                    continue
                grown = {tuple(k.add(a, k.mul(c, b)) for a, b in zip(u, v))
                         for u in span for c in elems}
                # closure under sums of the grown set
                while True:
                    more = {tuple(k.add(a, b) for a, b in zip(x, y)) for x in grown for y in grown}
                    if more <= grown:
                        break
                    grown |= more
                nxt.add(frozenset(grown))
        frontier = nxt
    return seen


def gm_stable_subalgebras_by_brute_force(k, m):
    """Subalgebras of k[t]/(t^m) containing 1, stable under t -> lam t for a generic lam."""

    def mul(x, y):
        out = [k.zero()] * m
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                if i + j < m:
                    out[i + j] = k.add(out[i + j], k.mul(a, b))
        return tuple(out)

    one = tuple([k.one()] + [k.zero()] * (m - 1))
    found = set()
    for span in all_subspaces(k, m):
        if one not in span or any(mul(x, y) not in span for x in span for y in span):
            continue
        # the weights 0..m-1 are distinct, so stability under a generic lam means
        # the subspace contains the monomial part of each of its vectors
        monomial_parts = {tuple(x[i] if j == i else k.zero() for j in range(m))
                          for x in span for i in range(m)}
        if all(p in span for p in monomial_parts):
            found.add(span)
    return found


def span_of_basis(k, v):
    elems = list(k.elements())
    rows = [tuple(r) for r in v.rows]
    dim = v.ambient.dim
    out = set()
    for cs in itertools.product(elems, repeat=len(rows)):
        vec = [k.zero()] * dim
        for c, r in zip(cs, rows):
            vec = [k.add(a, k.mul(c, b)) for a, b in zip(vec, r)]
        out.add(tuple(vec))
    return frozenset(out)


def semigroups_by_subset_filtering(m_max):
    out = {(0, ())}
    for m in range(1, m_max + 1):
        for mask in range(1 << (m - 1)):
            members = {0} | {i for i in range(1, m) if mask >> (i - 1) & 1}
            if m - 1 in members:
                continue  # tail would start earlier
            if all((x + y) >= m or (x + y) in members for x in members for y in members):
                out.add((m, tuple(sorted(members))))
    return out


def conductor_by_enumeration(d):
    """Elements f of k[x]/I with f * (k[x]/I) inside the pinched subspace."""
    r = chart_ring(d)
    quo, W = r.quotient, r.z_sub
    elems = list(itertools.product(list(quo.base.elements()), repeat=quo.dim))
    return {f for f in elems if all(W.contains(quo.multiply(f, g)) for g in elems)}


def multiples(k, g, modulus):
    """Residues of the multiples of g in k[x]/(modulus)."""
    n = len(modulus) - 1
    out = set()
    for h in itertools.product(list(k.elements()), repeat=n):
        _, rem = upoly_divmod(k, upoly_mul(k, g, h), modulus)
        rem = list(upoly_trim(k, rem)) + [k.zero()] * n
        out.add(tuple(rem[:n]))
    return out


HOMOGENEOUS_LABELS = {
    ("A1", "Ga"): "1c", ("A1", "GaSemidirectGm"): "1b", ("A1minus0", "Gm"): "1d",
    ("P1", "ConicAut"): "1a", ("P1", "GaSemidirectGm"): "2a", ("P1", "Ga"): "2b",
    ("GenusOne", "GenusOneNeutral"): "1e", ("ConicMinusPoint", "GmNormTorus"): "1d",
    ("Conic", "GmNormTorus"): "2d", ("RussellTorsor", "GaForm"): "1c",
}


def expected_label(curve, group):
    """The label a catalog pair must get, read off from how it was built."""
    if isinstance(curve, HomogeneousCurve):
        return HOMOGENEOUS_LABELS[(curve.kind, group.kind)]
    p = curve.parameters
    fam = curve.family
    if fam == "russell_pinch":
        return "2b" if curve.z_sub.rank == curve.ztilde.dim else "3a"
    if fam == "p1n":
        return "2b" if p["n"] == 0 else "P1_n"
    if fam == "a1mc":
        return "2c" if p["s"]["m"] == 0 else "A1_m(c)"
    if fam in ("p1mncd", "p1prime"):
        trivial = p["s"]["m"] == 0 and p["d"]["m"] == 0
        if fam == "p1mncd":
            return "2c" if trivial else "P1_mn(c,d)"
        return "3b" if trivial else "P1_mn(c,d)'"
    if fam == "conic_descent":
        return "2d" if p["s"]["m"] == 0 else "Cm(P,c)"
    if fam == "conic_descent_prime":
        return "3c" if p["s"]["m"] == 0 else "Cm(P,c)'"
    raise AssertionError(f"unexpected family {fam}")


# -- criteria ------------------------------------------------------------------

def test_criterion_1_gm_stable_subalgebras_match_exhaustive_search():
    start = time.perf_counter()
    bad = []
    for q, m_top in ((2, 4), (3, 3)):
        k = finite_field(q)
        for m in range(1, m_top + 1):
            fast = {span_of_basis(k, r.basis) for r in classify_gm_stable(k, m)}
            brute = gm_stable_subalgebras_by_brute_force(k, m)
            if fast != brute or len(fast) != len(classify_gm_stable(k, m)):
                bad.append((q, m))
    took = time.perf_counter() - start
    ok = not bad and took < 60
    record(1, ok, f"F2 m<=4 and F3 m<=3 equal exhaustive search in {took:.1f}s"
           if ok else f"mismatch at {bad}, {took:.1f}s")
    assert ok


def test_criterion_2_semigroup_round_trip_and_enumeration():
    round_trip = all(canonicalize([r for r in range(s.m) if contains(s, r)], s.m) == s
                     for s in enumerate_semigroups(10))
    enum_ok = all({(s.m, s.c) for s in enumerate_semigroups(m)} == semigroups_by_subset_filtering(m)
                  for m in range(0, 9))
    ok = round_trip and enum_ok
    record(2, ok, f"round trip for m<=10 ({len(enumerate_semigroups(10))} semigroups),"
                  f" enumeration equals subset filtering for m_max<=8"
           if ok else f"round_trip={round_trip} enumeration={enum_ok}")
    assert ok


def test_criterion_3_conductors():
    failures = []

    def expect(d, g, k):
        got = conductor_of(d)
        if got != g:
            failures.append((d.family, d.parameters, got, g))
        if k.is_finite and chart_ring(d).quotient.dim <= 6:
            r = chart_ring(d)
            if multiples(k, got, r.quotient.modulus) != conductor_by_enumeration(d):
                failures.append(("enumeration", d.family, d.parameters))

    for k in (PrimeField(2), PrimeField(3), Rationals()):
        zero, one = k.zero(), k.one()
        expect(p1prime(k, NATURALS, NATURALS), (zero, k.neg(one), one), k)
        for n in (2, 3):
            expect(p1n(k, n), tuple([zero] * n + [one]), k)
        for s in enumerate_semigroups(5):
            expect(a1mc(k, s), tuple([zero] * s.m + [one]), k)
    ok = not failures
    record(3, ok, "node x^2-x, cusps x^n, monomial curves t^m (m<=5) over F2, F3, Q;"
                  " finite cases also match ideal enumeration" if ok else str(failures[:3]))
    assert ok


def _catalog_descriptors(q):
    seen = []
    for r in enumerate_classified(str(q), 6):
        d = r.curve
        if isinstance(d, PinchDescriptor) and d.ztilde.dim <= 6 and d not in seen:
            seen.append(d)
    return seen


def test_criterion_4_units_pic_exactness_and_oracle():
    failures = []
    checked = 0
    for q in (2, 3, 5):
        k = finite_field(q)
        for d in _catalog_descriptors(q):
            rep = units_pic_sequence(d)
            checked += 1
            if not all(e["exact"] for e in rep.exact):
                failures.append(("exactness", q, d.family, d.parameters))
            if rep.pic_torsion != pic_torsion_oracle(d):
                failures.append(("oracle", q, d.family, d.parameters))
        if units_pic_sequence(p1prime(k, NATURALS, NATURALS)).pic_torsion.torsion_order != q - 1:
            failures.append(("nodal", q))
        for n in (2, 3):
            if units_pic_sequence(p1n(k, n)).pic_torsion.torsion_order != q ** (n - 1):
                failures.append(("cusp", q, n))
    ok = not failures
    record(4, ok, f"{checked} descriptors over F2, F3, F5 exact and oracle-equal;"
                  " nodal q-1 and cusp q^(n-1)" if ok else str(failures[:3]))
    assert ok


def test_criterion_5_equivariant_pic_table():
    failures = []
    for q in (2, 3, 5, 7):
        rec = classify(conic_descent_prime(q, NATURALS), norm_torus(q))
        token = resolve_tokens(equivariant_pic(rec))
        quotient = equivariant_units_pic(rec).quotient
        if rec.case_label != "3c" or not (token.torsion_order == quotient.torsion_order == q + 1):
            failures.append(("3c", q))
    check = equivariant_sequence_check_3b(3)
    if check["kernel"] != [[0, 1], 1]:
        failures.append(("3b kernel", check["kernel"]))
    for q in (2, 3, 4, 5, 7):
        k = finite_field(q)
        rec = classify(p1prime(k, NATURALS, NATURALS), GroupDescriptor("Gm", k))
        if rec.case_label != "3b" or equivariant_pic(rec) != Z(1, (q - 1,) if q > 2 else ()):
            failures.append(("3b", q))
        if Z.from_json(equivariant_sequence_check_3b(q)["pic"]) != equivariant_pic(rec):
            failures.append(("3b assembled", q))
    k = Rationals()
    for kind, group, want in (("A1", "Ga", Z()), ("A1minus0", "Gm", Z()),
                              ("P1", "GaSemidirectGm", Z(2)), ("P1", "Ga", Z(1))):
        rec = classify(HomogeneousCurve(kind, k), GroupDescriptor(group, k))
        if equivariant_pic(rec) != want:
            failures.append((rec.case_label, kind, group))
    ok = not failures
    record(5, ok, "3c order q+1 (q=2,3,5,7) by token and unit quotient; 3b kernel ((0,1),1),"
                  " Z + Z/(q-1); 1c, 1d trivial; 2a Z^2; 2b Z" if ok else str(failures))
    assert ok


def test_criterion_6_russell_worked_example():
    rep = verify_worked_example()
    checks = {c["name"]: c for c in rep["checks"]}
    first_four = all(checks[n]["passed"] for n in
                     ("morphism", "integral", "fraction_field", "residue_dimension"))
    k = example_field()
    a, b = k.gen("a"), k.gen("b")
    split = splitting_extension(example_form())
    split_ok = split.degree == 8 and sorted(split.generators, key=lambda g: g[1]) == [(b, 2), (a, 4)]
    family = subextension_family_distinct([k.zero(), k.one(), a, b, k.add(a, b)])
    fifth = checks["residue_field"]
    definite = isinstance(fifth["passed"], bool) and bool(fifth["witness"])
    dim4 = checks["residue_dimension"]["dimension"] == 4
    # the integrality witness holds as w^2 = z + a; the relabelled z + b is refuted
    literal = checks["integral"]["alternative"]
    ok = first_four and split_ok and family == 5 and definite and dim4
    record(6, ok, f"checks 1-4 pass (witness {checks['integral']['witness']};"
                  f" literal {literal['witness']} leaves residual {literal['residual']}),"
                  f" splitting degree 8, 5 distinct subextensions,"
                  f" residue field check {fifth['passed']}: {fifth['witness']}"
           if ok else f"checks={[(n, c['passed']) for n, c in checks.items()]}"
                      f" split={split.degree} family={family}")
    assert ok


def test_criterion_7_seminormality():
    failures = []
    for spec in ("2", "3", "4", "Q", "F2(a,b)"):
        for r in enumerate_classified(spec, 4 if spec != "F2(a,b)" else 1):
            d = r.curve
            if not isinstance(d, PinchDescriptor):
                continue
            sn = is_seminormal(d)
            if sn != is_reduced(minimal_presentation(d).ztilde):
                failures.append(("reduced", spec, d.family, d.parameters))
            if r.case_label in ("3a", "3b", "3c") and not sn:
                failures.append(("label", spec, r.case_label))
            if d.family == "p1n" and d.parameters["n"] >= 2 and sn:
                failures.append(("cusp", spec, d.parameters["n"]))
    ok = not failures
    record(7, ok, "seminormal exactly on reduced minimal Z~; 3a/3b/3c seminormal;"
                  " P1_n (n>=2) not seminormal" if ok else str(failures[:3]))
    assert ok


def _non_tail_monomial_subalgebras(rng, count):
    """Monomial subalgebras of Q[u]/(u^N) that are not of the form span(1, u^n1..u^(N-1))."""
    k = Rationals()
    out = []
    pool = [s for s in enumerate_semigroups(6) if len(s.c) > 1]
    while len(out) < count:
        s = rng.choice(pool)
        N = rng.randint(s.m, 7)
        out.append(monomial_subalgebra(k, N, s).basis)
    return out


def test_criterion_8_ga_tails_substance():
    """The tails n1 = 1..N are produced, distinct and stable; non-tails fail."""
    rng = random.Random(20260)
    counts = {}
    ok = True
    for N in range(1, 7):
        recs = classify_ga_stable_char0(N)
        counts[N] = len(recs)
        ok &= [r.tail for r in recs] == list(range(1, N + 1))
        ok &= len({r.basis for r in recs}) == N
        ok &= all(is_ga_stable_char0(r.basis) for r in recs)
    negatives = _non_tail_monomial_subalgebras(rng, 100)
    ok &= not any(is_ga_stable_char0(v) for v in negatives)
    literal = all(counts[N] == N + 1 for N in counts)
    record(8, literal,
           "N+1 records per N is not attainable: the tails n1 = 1..N (n1 = N is k itself)"
           f" number exactly N, e.g. N=3 gives 3; counts {counts}. All tails stable,"
           f" 100 non-tail subalgebras fail ({'ok' if ok else 'BROKEN'})")
    assert ok


@pytest.mark.xfail(strict=True, reason="the distinct tails of k[u]/(u^N) number N, not N+1")
def test_criterion_8_literal_record_count():
    assert all(len(classify_ga_stable_char0(N)) == N + 1 for N in range(1, 7))


def test_criterion_9_classification_totality():
    failures = []
    total = 0
    specs = ["2", "3", "4", "5", "7", "8", "9", "Q"]
    for spec in specs:
        for m_max in (0, 6):
            for r in enumerate_classified(spec, m_max):
                total += 1
                labels = [x for x in ALL_LABELS if x == r.case_label]
                if len(labels) != 1 or labels[0] != expected_label(r.curve, r.group):
                    failures.append((spec, labels, expected_label(r.curve, r.group)))
                again = classify(r.curve, r.group)
                if isinstance(again, NotAlmostHomogeneous) or again.to_json() != r.to_json():
                    failures.append((spec, "unstable", labels))
    russell = enumerate_classified("F2(a,b)", 1, "russell")
    for r in russell:
        total += 1
        if r.case_label != expected_label(r.curve, r.group):
            failures.append(("F2(a,b)", r.case_label))
    pinched = [r.curve for r in russell if r.case_label == "3a"]
    distinct = all(x != y for x, y in itertools.combinations(pinched, 2))
    ok = not failures and distinct and len(pinched) == 5
    record(9, ok, f"{total} records over F2..F9, Q and F2(a,b) each carry one label matching"
                  f" their construction; {len(pinched)} russell subfield pinches pairwise distinct"
           if ok else f"{failures[:3]} distinct={distinct}")
    assert ok
