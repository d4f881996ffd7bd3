"""Labels for (curve, group) pairs.

Seminormal pairs get the homogeneous / regular / seminormal case labels
1a-1e, 2a-2d, 3a-3c.  Pinched curves that are not seminormal get the label
of their catalog shape: "P1_n", "A1_m(c)", "P1_mn(c,d)", "P1_mn(c,d)'",
"Cm(P,c)" and "Cm(P,c)'".  Shapes are read off the descriptor itself (weight
pieces of O(Z)), not off the catalog family that produced it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .exactalg import (DescriptorMismatch, Field, PrimeField, Rationals,
                       UnsupportedError, check_guard, echelon_basis, field_from_json,
                       finite_field)
from .pinching import (PinchDescriptor, a1mc, conic_descent, conic_descent_prime, is_seminormal,
                       p1mncd, p1n, p1prime, russell_pinch)
from .russell import (RussellForm, example_form, example_field, example_residue_field,
                      splitting_extension)
from .semigroups import NATURALS, NotASemigroupError, TailSemigroup, canonicalize, enumerate_semigroups
from .stability import is_ga_stable_char0, is_gm_stable

GROUP_KINDS = ("Ga", "GaForm", "Gm", "GmNormTorus", "GaSemidirectGm", "ConicAut", "GenusOneNeutral")
CURVE_KINDS = ("A1", "P1", "A1minus0", "Conic", "ConicMinusPoint", "RussellTorsor", "GenusOne")
SEMINORMAL_LABELS = ("1a", "1b", "1c", "1d", "1e", "2a", "2b", "2c", "2d", "3a", "3b", "3c")
SHAPE_LABELS = ("P1_n", "A1_m(c)", "P1_mn(c,d)", "P1_mn(c,d)'", "Cm(P,c)", "Cm(P,c)'")
M_MAX_GUARD = 6
Q_GUARD = 9


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str
    field: Field
    form: RussellForm | None = None
    q: int | None = None

    def __post_init__(self):
        if self.kind not in GROUP_KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == "GaForm" and self.form is None:
            raise ValueError("a Ga form needs its Russell equation")
        if self.kind == "GmNormTorus":
            if self.q is None or self.field.order != self.q:
                raise DescriptorMismatch("the norm torus is defined over F_q with q = |field|")

    @property
    def is_nontrivial_form(self) -> bool:
        return self.kind == "GaForm" and splitting_extension(self.form).degree > 1

    @property
    def additive(self) -> bool:
        return self.kind == "Ga" or (self.kind == "GaForm" and not self.is_nontrivial_form)

    def to_json(self):
        out = {"kind": self.kind, "field": self.field.to_json()}
        if self.form is not None:
            out["form"] = self.form.to_json()
        if self.q is not None:
            out["q"] = self.q
        return out

    @classmethod
    def from_json(cls, obj):
        form = RussellForm.from_json(obj["form"]) if "form" in obj else None
        return cls(obj["kind"], field_from_json(obj["field"]), form, obj.get("q"))

    def render(self) -> str:
        if self.kind == "GaForm":
            return f"form of Ga: {self.form.equation()}"
        if self.kind == "GmNormTorus":
            return f"norm-one torus of F_{self.q}^2/F_{self.q}"
        return self.kind


def norm_torus(q: int) -> GroupDescriptor:
    return GroupDescriptor("GmNormTorus", finite_field(q), q=q)


@dataclass(frozen=True)
class HomogeneousCurve:
    """Curves handled by label only (no pinching data)."""

    kind: str
    field: Field
    form: RussellForm | None = None

    def __post_init__(self):
        if self.kind not in CURVE_KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")

    def to_json(self):
        out = {"kind": self.kind, "field": self.field.to_json()}
        if self.form is not None:
            out["form"] = self.form.to_json()
        return out

    @classmethod
    def from_json(cls, obj):
        form = RussellForm.from_json(obj["form"]) if "form" in obj else None
        return cls(obj["kind"], field_from_json(obj["field"]), form)


@dataclass(frozen=True)
class CurveCaseRecord:
    curve: object
    group: GroupDescriptor
    case_label: str
    detail: str = ""
    shape: str = ""
    params: str = "{}"

    def to_json(self):
        return {"case_label": self.case_label, "detail": self.detail, "shape": self.shape,
                "params": json.loads(self.params),
                "pinch" if isinstance(self.curve, PinchDescriptor) else "curve": self.curve.to_json(),
                "group": self.group.to_json()}


@dataclass(frozen=True)
class NotAlmostHomogeneous:
    reason: str

    def to_json(self):
        return {"case_label": None, "rejected": self.reason}


def _record(curve, group, label, detail="", shape="", **params):
    return CurveCaseRecord(curve, group, label, detail, shape, json.dumps(params, sort_keys=True))


# ---------------------------------------------------------------------------
# shape analysis

def _semigroup_of(alg, sub, j) -> TailSemigroup:
    """Exponents i with the pure monomial on factor j inside sub (0 always counts)."""
    f = alg.factors[j]
    exps = [0] + [i for i in range(1, f.order) if sub.contains(alg.monomial(j, i))]
    try:
        return canonicalize(exps, f.order)
    except NotASemigroupError:
        raise AssertionError("a subalgebra must give a semigroup") from None


def _fmt(s: TailSemigroup) -> str:
    return "(" + ",".join(map(str, s.positive_sporadic)) + ")"


def gm_shape(d: PinchDescriptor):
    """(shape label, semigroups by point) for a Gm-stable line descriptor, else None."""
    alg, sub = d.ztilde, d.z_sub
    if d.normalization not in ("AffineLine", "ProjectiveLine"):
        return None
    if not set(d.support) <= {"0", "inf"}:
        return None
    if d.normalization == "AffineLine" and "inf" in d.support:
        return None
    if alg.factors and not is_gm_stable(sub):
        return None
    sg = {"0": NATURALS, "inf": NATURALS}
    for j, pt in enumerate(d.support):
        sg[pt] = _semigroup_of(alg, sub, j)
    primed = False
    if len(alg.factors) == 2:
        split = echelon_basis([alg.monomial(0, 0), alg.monomial(1, 0)], alg)
        weight_zero = sum(1 for r in split.rows if sub.contains(r))
        primed = weight_zero < 2
    if d.normalization == "AffineLine":
        return "A1_m(c)", sg
    return ("P1_mn(c,d)'" if primed else "P1_mn(c,d)"), sg


def conic_shape(d: PinchDescriptor):
    """(shape, semigroup) for a pinched conic stable under the norm torus, else None.

    On the branch L[s]/(s^M) the torus acts through s -> lambda*s with
    lambda of norm one, so O(Z) must be graded with every positive piece 0
    or L*s^c; the constant piece is L (unprimed) or F_q (primed).
    """
    alg, sub = d.ztilde, d.z_sub
    if d.normalization != "Conic" or not alg.factors:
        return None
    k = d.field
    M = alg.factors[0].order
    pieces = []
    for c in range(M):
        block = [alg.monomial(0, c, r) for r in range(2)]
        # graded: the projection of every row to this block stays in sub
        for row in sub.rows:
            proj = tuple(x if alg.coordinate_label(i)[1] == c else k.zero()
                         for i, x in enumerate(row))
            if not sub.contains(proj):
                return None
        pieces.append(_piece_rank(alg, sub, block))
    if any(r == 1 for r in pieces[1:]):
        return None
    exps = [0] + [c for c in range(1, M) if pieces[c] == 2]
    s = canonicalize(exps, M)
    return ("Cm(P,c)'" if pieces[0] == 1 else "Cm(P,c)"), s


def _piece_rank(alg, sub, block) -> int:
    from .exactalg import subspace_intersection
    return subspace_intersection(sub, echelon_basis(block, alg)).rank


def ga_shape(d: PinchDescriptor):
    """n for P1_n when the descriptor is a Ga-stable pinch at oo, else None."""
    if d.normalization != "ProjectiveLine" or d.support not in ((), ("inf",)):
        return None
    alg, sub = d.ztilde, d.z_sub
    if not alg.factors:
        return 0
    k = d.field
    if k.characteristic == 0:
        if not is_ga_stable_char0(sub):
            return None
        return _semigroup_of(alg, sub, 0).m
    # characteristic p: only the pinch onto a single rational point is handled
    if sub.rank == 1:
        return alg.factors[0].order if alg.factors[0].order > 1 else 0
    if sub.rank == alg.dim:
        return 0
    raise UnsupportedError("Ga-stable subalgebras in positive characteristic are not classified")


# ---------------------------------------------------------------------------
# classification

def classify(curve, group: GroupDescriptor):
    """One label for the pair, or NotAlmostHomogeneous."""
    if curve.field != group.field:
        raise DescriptorMismatch("curve and group are defined over different fields")
    if isinstance(curve, HomogeneousCurve):
        return _classify_homogeneous(curve, group)
    if not isinstance(curve, PinchDescriptor):
        raise TypeError("expected a PinchDescriptor or a HomogeneousCurve")
    d = curve
    g = group.kind
    if not d.is_pinched:
        return _classify_unpinched(d, group)
    if d.normalization == "RussellCompletion":
        if not group.is_nontrivial_form:
            return NotAlmostHomogeneous("a Russell completion carries the action of its form")
        if not is_seminormal(d):
            raise AssertionError("a pinch along a field extension is seminormal")
        K = d.ztilde.factors[0].residue
        return _record(d, group, "3a", f"point at infinity pinched to a degree "
                       f"{d.z_sub.rank} subfield of a degree {K.degree} residue field",
                       subfield_degree=d.z_sub.rank, residue_degree=K.degree)
    if d.normalization == "Conic":
        if g != "GmNormTorus":
            return NotAlmostHomogeneous(f"{g} does not fix the degree-2 point")
        shape = conic_shape(d)
        if shape is None:
            return NotAlmostHomogeneous("O(Z) is not stable under the norm-one torus")
        label, s = shape
        if label == "Cm(P,c)'" and s.m == 0 and is_seminormal(d):
            return _record(d, group, "3c", f"degree-2 point of the conic over F_{group.q} "
                           "pinched to a rational point", label, s=s.to_json())
        prime = "'" if label.endswith("'") else ""
        return _record(d, group, label, f"C_{s.m}(P~,{_fmt(s)}){prime}", label, s=s.to_json())
    if g in ("Gm",):
        shape = gm_shape(d)
        if shape is None:
            return NotAlmostHomogeneous("O(Z) is not Gm-stable at the fixed points 0, oo")
        label, sg = shape
        s0, sinf = sg["0"], sg["inf"]
        if label == "P1_mn(c,d)'" and s0.m == 0 and sinf.m == 0 and is_seminormal(d):
            return _record(d, group, "3b", "two rational points of P1 pinched to one",
                           label, s=s0.to_json(), d=sinf.to_json())
        return _record(d, group, label, _gm_detail(d, label, s0, sinf), label,
                       s=s0.to_json(), d=sinf.to_json())
    if g in ("Ga", "GaSemidirectGm") or group.additive:
        n = ga_shape(d)
        if n is None:
            return NotAlmostHomogeneous("O(Z) is not a Ga-stable subalgebra at oo")
        if g == "GaSemidirectGm" and not is_gm_stable(d.z_sub):
            return NotAlmostHomogeneous("O(Z) is not Gm-stable")
        if n == 0:
            return _classify_unpinched(d, group)
        return _record(d, group, "P1_n", f"P1_{{{d.field.name()},{n}}}", "P1_n", n=n)
    return NotAlmostHomogeneous(f"{g} has no fixed point to pinch")


def _gm_detail(d, label, s0, sinf) -> str:
    k = d.field.name()
    if label == "A1_m(c)":
        return f"A1_{{{k},{s0.m}}}{_fmt(s0)}"
    prime = "'" if label.endswith("'") else ""
    return f"P1_{{{k},{s0.m},{sinf.m}}}({_fmt(s0)},{_fmt(sinf)}){prime}"


def _classify_unpinched(d: PinchDescriptor, group: GroupDescriptor):
    if d.normalization == "AffineLine":
        return _classify_homogeneous(HomogeneousCurve("A1", d.field), group, d)
    if d.normalization == "RussellCompletion":
        if group.kind == "GaForm":
            return _record(d, group, "2b", "regular completion of a torsor under a form of Ga")
        return NotAlmostHomogeneous("a Russell completion carries the action of its form")
    kind = "Conic" if d.normalization == "Conic" else "P1"
    return _classify_homogeneous(HomogeneousCurve(kind, d.field), group, d)


def _classify_homogeneous(c: HomogeneousCurve, group: GroupDescriptor, curve=None):
    curve = curve or c
    g = group.kind
    additive = group.additive or g == "Ga"
    table = {
        ("A1", "GaSemidirectGm"): ("1b", "A1 with affine transformations"),
        ("A1", "Gm"): ("2c", "A1 with Gm fixing 0"),
        ("A1minus0", "Gm"): ("1d", "Gm acting on itself"),
        ("P1", "GaSemidirectGm"): ("2a", "P1 with affine transformations"),
        ("P1", "Gm"): ("2c", "P1 with Gm fixing 0 and oo"),
        ("P1", "ConicAut"): ("1a", "P1 with its automorphism group"),
        ("Conic", "ConicAut"): ("1a", "conic with its automorphism group"),
        ("P1", "GmNormTorus"): ("2d", "centralizer of a degree-2 point"),
        ("Conic", "GmNormTorus"): ("2d", "centralizer of a degree-2 point"),
        ("Conic", "Gm"): ("2c", "conic realized as P1 with Gm fixing 0 and oo"),
        ("Conic", "GaSemidirectGm"): ("2a", "conic realized as P1 with affine transformations"),
        ("ConicMinusPoint", "GmNormTorus"): ("1d", "torsor under the norm-one torus"),
        ("GenusOne", "GenusOneNeutral"): ("1e", "genus one curve with its neutral component"),
    }
    if (c.kind, g) in table:
        label, detail = table[(c.kind, g)]
        return _record(curve, group, label, detail)
    if additive or g == "GaForm":
        if c.kind in ("A1", "RussellTorsor"):
            return _record(curve, group, "1c", "torsor under a form of Ga")
        if c.kind in ("P1", "Conic"):
            return _record(curve, group, "2b", "regular completion of a Ga-torsor")
    return NotAlmostHomogeneous(f"{g} does not act faithfully with a dense orbit on {c.kind}")


def classify_ga_char0(d: PinchDescriptor):
    """P1_n (n >= 0) or A1 for Ga in characteristic 0, else NotAlmostHomogeneous."""
    if d.field.characteristic != 0:
        raise UnsupportedError("the Ga classification in positive characteristic is open")
    group = GroupDescriptor("Ga", d.field)
    if d.normalization == "AffineLine" and not d.is_pinched:
        return _record(d, group, "A1", "A1 as a Ga-torsor", "A1")
    n = ga_shape(d)
    if n is None:
        return NotAlmostHomogeneous("O(Z) is not a Ga-stable tail algebra at oo")
    return _record(d, group, "P1_n", f"P1_{{{d.field.name()},{n}}}", "P1_n", n=n)


def classify_gm_curve(d):
    """A1minus0, A1_m(c), P1_mn(c,d) or P1_mn(c,d)' for Gm, else NotAlmostHomogeneous."""
    group = GroupDescriptor("Gm", d.field)
    if isinstance(d, HomogeneousCurve):
        if d.kind == "A1minus0":
            return _record(d, group, "A1minus0", "Gm acting on itself", "A1minus0")
        return NotAlmostHomogeneous(f"{d.kind} is not in the Gm catalog")
    shape = gm_shape(d)
    if shape is None:
        return NotAlmostHomogeneous("O(Z) is not Gm-stable")
    label, sg = shape
    return _record(d, group, label, _gm_detail(d, label, sg["0"], sg["inf"]), label,
                   s=sg["0"].to_json(), d=sg["inf"].to_json())


# ---------------------------------------------------------------------------
# enumeration

def parse_field(spec) -> Field:
    """'Q', a prime power like '9', or 'Fp(a,b)' such as 'F2(a,b)'."""
    if isinstance(spec, Field):
        return spec
    s = str(spec).strip()
    if s in ("Q", "QQ"):
        return Rationals()
    if s.startswith("F") and "(" in s:
        from .exactalg import RationalFunctionField
        p = int(s[1:s.index("(")])
        names = tuple(v.strip() for v in s[s.index("(") + 1:s.rindex(")")].split(","))
        return RationalFunctionField(PrimeField(p), names)
    return finite_field(int(s.lstrip("F")))


def enumerate_classified(field_spec, m_max: int, family: str | None = None) -> list[CurveCaseRecord]:
    """All catalog pairs for the field with tail starts <= m_max, each labeled."""
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    check_guard(m_max, M_MAX_GUARD, "m_max")
    k = parse_field(field_spec)
    if k.is_finite:
        check_guard(k.order, Q_GUARD, "q")
    families = ("homogeneous", "Gm", "Ga", "conic", "russell") if family is None else (family,)
    sgs = enumerate_semigroups(m_max)
    pairs = []
    if "homogeneous" in families:
        pairs += [(HomogeneousCurve("A1", k), GroupDescriptor("Ga", k)),
                  (HomogeneousCurve("A1", k), GroupDescriptor("GaSemidirectGm", k)),
                  (HomogeneousCurve("A1minus0", k), GroupDescriptor("Gm", k)),
                  (HomogeneousCurve("P1", k), GroupDescriptor("ConicAut", k)),
                  (HomogeneousCurve("P1", k), GroupDescriptor("GaSemidirectGm", k)),
                  (HomogeneousCurve("P1", k), GroupDescriptor("Ga", k)),
                  (HomogeneousCurve("GenusOne", k), GroupDescriptor("GenusOneNeutral", k))]
        if k.is_finite:
            pairs += [(HomogeneousCurve("ConicMinusPoint", k), norm_torus(k.order)),
                      (HomogeneousCurve("Conic", k), norm_torus(k.order))]
    if "Gm" in families:
        gm = GroupDescriptor("Gm", k)
        for s in sgs:
            pairs.append((a1mc(k, s), gm))
        for s in sgs:
            for d in sgs:
                pairs.append((p1mncd(k, s, d), gm))
                pairs.append((p1prime(k, s, d), gm))
    if "Ga" in families:
        ga = GroupDescriptor("Ga", k)
        for n in range(m_max + 1):
            if n != 1:
                pairs.append((p1n(k, n), ga))
    if "conic" in families and k.is_finite:
        torus = norm_torus(k.order)
        for s in sgs:
            pairs.append((conic_descent(k.order, s), torus))
            pairs.append((conic_descent_prime(k.order, s), torus))
    if "russell" in families and k == example_field():
        form = example_form()
        gaf = GroupDescriptor("GaForm", k, form)
        pairs.append((HomogeneousCurve("RussellTorsor", k, form), gaf))
        K = example_residue_field()
        pairs.append((russell_pinch(form, [K.root(0), K.root(1)]), gaf))
        a, b = k.gen("a"), k.gen("b")
        for c in (k.zero(), k.one(), a, b, k.add(a, b)):
            gen = K.add(K.root(0), K.scale(c, K.root(1)))
            pairs.append((russell_pinch(form, [gen]), gaf))
    seen = []
    out = []
    for curve, group in pairs:
        key = (curve, group)
        if key in seen:
            continue
        seen.append(key)
        rec = classify(curve, group)
        if isinstance(rec, NotAlmostHomogeneous):
            raise AssertionError(f"catalog entry rejected: {rec.reason}")
        out.append(rec)
    return out
