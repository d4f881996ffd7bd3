"""Picard groups of pinched curves and equivariant Picard groups of the classified pairs.

For a pinching X of X~ along Z~ -> Z the sequence

    1 -> O(X)^x -> O(X~)^x x O(Z)^x -> O(Z~)^x -> Pic X -> Pic X~ x Pic Z

is assembled with explicit unit groups over F_q.  The normalizations in the
catalog are P1, a split conic or A1, so O(X~)^x = k^x and Pic X~ is Z (or 0
for A1); both facts are taken from the normalization label, not computed.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

import numpy as np

from .classify import CurveCaseRecord, HomogeneousCurve
from .exactalg import (AbelianGroupDescription, UnsupportedError, check_guard,
                       integer_kernel, invariant_factors_from_counts, prime_power, smith_diagonal)
from .fastunits import FiniteAlgebraTable
from .pinching import PinchDescriptor, is_seminormal

TABLE_LIMIT = 64
PIC_GUARD = 5 ** 8


@dataclass
class UnitsPicReport:
    terms: list
    maps: list
    exact: list
    pic_torsion: AbelianGroupDescription
    pic: AbelianGroupDescription | None = None
    coset_representatives: list = field(default_factory=list)
    quotient: AbelianGroupDescription | None = None

    def to_json(self):
        out = {"terms": self.terms, "maps": self.maps, "exact": self.exact,
               "pic_torsion": self.pic_torsion.to_json(),
               "coset_representatives": self.coset_representatives}
        if self.pic is not None:
            out["pic"] = self.pic.to_json()
        if self.quotient is not None:
            out["quotient"] = self.quotient.to_json()
        return out

    def render(self) -> str:
        lines = []
        for t in self.terms:
            lines.append(f"{t['name']}: {AbelianGroupDescription.from_json(t['group']).render()}"
                         + (f" (order {t['order']})" if t.get("order") is not None else ""))
        lines.append("exact: " + ", ".join(f"{e['at']}={'yes' if e['exact'] else 'no'}"
                                           for e in self.exact))
        lines.append(f"Pic torsion: {self.pic_torsion.render()}")
        if self.pic is not None:
            lines.append(f"Pic: {self.pic.render()}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# symbolic tokens

_TOKEN = re.compile(r"UnitsQuotient\(F(\d+),F(\d+)\)$")


def units_quotient_token(big: str, small: str) -> str:
    return f"UnitsQuotient({big},{small})"


def resolve_tokens(g: AbelianGroupDescription) -> AbelianGroupDescription:
    """Replace UnitsQuotient(F_Q, F_q) by the cyclic group of order (Q-1)/(q-1)."""
    orders = list(g.cyclic_orders)
    left = []
    for tok in g.symbolic:
        m = _TOKEN.match(tok)
        if not m:
            left.append(tok)
            continue
        Q, q = int(m.group(1)), int(m.group(2))
        p, e = prime_power(q)
        P, E = prime_power(Q)
        if p != P or E % e:
            raise ValueError(f"{tok}: F{q} is not a subfield of F{Q}")
        orders.append((Q - 1) // (q - 1))
    return AbelianGroupDescription(g.free_rank, tuple(orders), tuple(left))


# ---------------------------------------------------------------------------
# Units-Pic sequence

def _encode(alg, a):
    return [alg.base.encode(x) for x in a]


def _term(name, group, elements=None, alg=None):
    out = {"name": name, "group": group.to_json(),
           "order": len(elements) if elements is not None else None}
    if elements is not None and len(elements) <= TABLE_LIMIT:
        out["elements"] = [_encode(alg, a) if alg is not None else a for a in elements]
    return out


def _symbolic_report(d: PinchDescriptor) -> UnitsPicReport:
    k = d.field
    if d.normalization == "RussellCompletion":
        tok = units_quotient_token("kappa(P~)", "kappa(P)")
    else:
        tok = units_quotient_token("O(Z~)", "O(Z)")
    torsion = AbelianGroupDescription(0, (), (tok,))
    terms = [{"name": "O(X)^x", "group": AbelianGroupDescription(0, (), (f"{k.name()}^x",)).to_json(),
              "order": None},
             {"name": "O(X~)^x x O(Z)^x",
              "group": AbelianGroupDescription(0, (), (f"{k.name()}^x", "O(Z)^x")).to_json(),
              "order": None},
             {"name": "O(Z~)^x", "group": AbelianGroupDescription(0, (), ("O(Z~)^x",)).to_json(),
              "order": None}]
    pic = AbelianGroupDescription(1 if d.projective else 0, (), (tok,))
    return UnitsPicReport(terms, [], [], torsion, pic)


def _unit_arrays(d: PinchDescriptor, limit):
    """(table, units of Z~, units of Z, scalars k^x) as arrays over F_p."""
    alg = d.ztilde
    table = FiniteAlgebraTable(alg, limit=limit or PIC_GUARD)
    U = table.units()
    V = U[table.subspace_mask(U, d.z_sub)]
    scal = np.array([table.flatten(tuple(alg.base.mul(c, x) for x in alg.one()))
                     for c in alg.base.elements() if not alg.base.is_zero(c)], dtype=np.int64)
    scal = scal.reshape(-1, table.n)
    return table, U, V, scal


def units_pic_sequence(d: PinchDescriptor, limit: int | None = None) -> UnitsPicReport:
    """Assemble the Units-Pic sequence of a catalog descriptor over F_q."""
    k = d.field
    if not k.is_finite:
        return _symbolic_report(d)
    free = 1 if d.projective else 0
    kx = AbelianGroupDescription(0, (k.order - 1,))
    if not d.ztilde.factors:
        trivial = AbelianGroupDescription()
        terms = [_term("O(X)^x", kx), _term("O(X~)^x x O(Z)^x", kx), _term("O(Z~)^x", trivial)]
        exact = [{"at": "O(X)^x", "exact": True}, {"at": "O(X~)^x x O(Z)^x", "exact": True}]
        return UnitsPicReport(terms, [], exact, trivial, AbelianGroupDescription(free))
    table, U, V, scal = _unit_arrays(d, limit)
    alg = d.ztilde
    units_z = table.invariant_factors(V)
    units_zt = table.invariant_factors(U)
    middle = AbelianGroupDescription(0, (k.order - 1,) + units_z)
    # first map c -> (c, c*1); second (alpha, beta) -> alpha * beta^-1
    nV, nS = len(V), len(scal)
    Vinv = table.power(V, nV - 1)
    pairs_a = np.repeat(scal, nV, axis=0)
    pairs_b = np.tile(Vinv, (nS, 1))
    images = table.mul(pairs_a, pairs_b)
    is_one = (images == table.one).all(axis=1)
    kernel_size = int(is_one.sum())
    # the image of the first map is the diagonal {(c, c)}; it lies in the kernel
    diag_in_kernel = bool(np.isin(table.codes(scal), table.codes(V)).all())
    H = np.unique(images, axis=0)
    torsion = AbelianGroupDescription(0, table.invariant_factors(U, H))
    reps = table.coset_representatives(U, H)
    nonzero = [c for c in k.elements() if not k.is_zero(c)]
    terms = [_term("O(X)^x", kx, [k.encode(c) for c in nonzero] if nS <= TABLE_LIMIT else None),
             _term("O(X~)^x x O(Z)^x", middle),
             _term("O(Z~)^x", AbelianGroupDescription(0, units_zt), table.to_tuples(U), alg)]
    terms[1]["order"] = nS * nV
    terms[0]["order"] = nS
    maps = [{"from": "O(X)^x", "to": "O(X~)^x x O(Z)^x", "rule": "c -> (c, c)"},
            {"from": "O(X~)^x x O(Z)^x", "to": "O(Z~)^x", "rule": "(a, b) -> a * b^-1",
             "image_order": len(H)}]
    if nS * nV <= TABLE_LIMIT:
        maps[1]["table"] = [[k.encode(nonzero[i // nV]),
                             _encode(alg, table.unflatten(list(V[i % nV]))),
                             _encode(alg, table.unflatten(list(images[i])))]
                            for i in range(nS * nV)]
    injective = len(np.unique(table.codes(scal))) == nS
    exact = [{"at": "O(X)^x", "exact": injective},
             {"at": "O(X~)^x x O(Z)^x", "exact": diag_in_kernel and kernel_size == nS}]
    rep_list = [_encode(alg, a) for a in table.to_tuples(reps)]
    return UnitsPicReport(terms, maps, exact, torsion,
                          AbelianGroupDescription(free, torsion.cyclic_orders), rep_list)


def pic_torsion_oracle(d: PinchDescriptor, limit: int | None = None) -> AbelianGroupDescription:
    """Degree-zero classes counted as gluings: O(Z~)^x modulo O(Z)^x and scalars.

    Pure exact arithmetic: each coset is walked explicitly and the class
    orders give the group structure.
    """
    k = d.field
    if not k.is_finite:
        raise UnsupportedError("the gluing count needs a finite field")
    alg = d.ztilde
    if not alg.factors:
        return AbelianGroupDescription()
    check_guard(k.order ** alg.dim, limit or PIC_GUARD, "number of gluings")
    # an element is a unit iff its constant residue part is nonzero on each factor
    const_slots = [[i for i in range(alg.dim) if alg.coordinate_label(i)[:2] == (j, 0)]
                   for j in range(len(alg.factors))]

    def is_unit(a):
        return all(any(not k.is_zero(a[i]) for i in slots) for slots in const_slots)

    units = [a for a in alg.elements(limit=limit or PIC_GUARD) if is_unit(a)]
    sub_elems = set()
    for coeffs in itertools.product(k.elements(), repeat=d.z_sub.rank):
        v = alg.zero()
        for c, row in zip(coeffs, d.z_sub.rows):
            v = tuple(k.add(x, k.mul(c, y)) for x, y in zip(v, row))
        sub_elems.add(v)
    # scalars already lie in O(Z) since 1 is in z_sub
    H = [a for a in sub_elems if is_unit(a)]
    Hset = set(H)
    seen = set()
    class_orders = []
    for u in sorted(units):
        if u in seen:
            continue
        for h in H:
            seen.add(alg.multiply(u, h))
        n, x = 1, u
        while x not in Hset:
            x = alg.multiply(x, u)
            n += 1
        class_orders.append(n)
    count = len(class_orders)
    cyclic = invariant_factors_from_counts(
        count, lambda n: sum(1 for o in class_orders if n % o == 0))
    return AbelianGroupDescription(0, cyclic)


# ---------------------------------------------------------------------------
# equivariant Picard groups

def equivariant_pic(rec: CurveCaseRecord) -> AbelianGroupDescription:
    """Pic^G for a pair carrying one of the homogeneous/regular/seminormal labels."""
    if not isinstance(rec, CurveCaseRecord):
        raise ValueError("equivariant_pic needs a labeled record")
    label = rec.case_label
    k = rec.group.field
    curve = rec.curve
    Z = AbelianGroupDescription
    if label in ("1c", "1d", "1e"):
        return Z()
    if label in ("1a", "1b", "2b", "2d"):
        return Z(1)
    if label == "2a":
        return Z(2)
    if label == "2c":
        affine = (isinstance(curve, HomogeneousCurve) and curve.kind == "A1") or \
            (isinstance(curve, PinchDescriptor) and not curve.projective)
        return Z(1) if affine else Z(2)
    if label == "3a":
        return resolve_tokens(Z(1, (), (units_quotient_token("kappa(P~)", "kappa(P)"),)))
    if label == "3b":
        if k.is_finite:
            return Z(1, (k.order - 1,))
        return Z(1, (), (units_quotient_token(f"{k.name()}x{k.name()}", k.name()),))
    if label == "3c":
        q = rec.group.q
        return resolve_tokens(Z(0, (), (units_quotient_token(f"F{q * q}", f"F{q}"),)))
    raise ValueError(f"no equivariant Picard group recorded for label {label!r}")


def equivariant_sequence_check_3b(q: int | None = None) -> dict:
    """The map ((n, m), l) -> (n + m, m) - (l, l) on characters and its kernel."""
    matrix = [[1, 1, -1], [0, 1, -1]]
    kernel = integer_kernel(matrix, 3)
    if len(kernel) != 1:
        raise AssertionError("the character map should have rank-one kernel")
    gen = list(kernel[0])
    lead = next(x for x in gen if x)
    if lead < 0:
        gen = [-x for x in gen]
    out = {"matrix": matrix, "kernel": [[gen[0], gen[1]], gen[2]],
           "smith": smith_diagonal(matrix)}
    if q is not None:
        prime_power(q)
        out["finite_part"] = AbelianGroupDescription(0, (q - 1,)).to_json()
        out["pic"] = AbelianGroupDescription(1, (q - 1,)).to_json()
    return out


def equivariant_units_pic(rec: CurveCaseRecord, limit: int | None = None) -> UnitsPicReport:
    """Units part of the equivariant sequence for 3a, 3b and 3c.

    G acts trivially on the reduced Z~, so invariant units are all units and
    the kernel of Pic^G(C) -> Pic^G(C~) x Pic^G(Z) is O(Z~)^x / O(Z)^x.
    """
    if rec.case_label not in ("3a", "3b", "3c"):
        raise UnsupportedError(f"label {rec.case_label!r} is outside the seminormal cases")
    d = rec.curve
    if not is_seminormal(d):
        raise UnsupportedError("Z~ must be reduced")
    k = d.field
    if not k.is_finite:
        rep = _symbolic_report(d)
        rep.quotient = rep.pic_torsion
        rep.pic = None
        return rep
    table, U, V, _ = _unit_arrays(d, limit)
    quotient = AbelianGroupDescription(0, table.invariant_factors(U, V))
    terms = [_term("O(Z)^x", AbelianGroupDescription(0, table.invariant_factors(V)),
                   table.to_tuples(V), d.ztilde),
             _term("O(Z~)^x", AbelianGroupDescription(0, table.invariant_factors(U)),
                   table.to_tuples(U), d.ztilde)]
    maps = [{"from": "O(Z)^x", "to": "O(Z~)^x", "rule": "inclusion"}]
    # V is a subgroup of U: closed under products
    prods = table.codes(table.mul(np.repeat(V, len(V), axis=0), np.tile(V, (len(V), 1))))
    closed = bool(np.isin(prods, table.codes(V)).all())
    exact = [{"at": "O(Z)^x", "exact": closed}]
    reps = [_encode(d.ztilde, a) for a in table.to_tuples(table.coset_representatives(U, V))]
    pic = equivariant_pic(rec)
    return UnitsPicReport(terms, maps, exact, quotient, pic, reps, quotient)
