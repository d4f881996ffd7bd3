"""Pinched curves as fiber products of rings.

A pinched curve is stored as its normalization label together with the
finite algebra O(Z~) of the pinched subscheme and the subalgebra O(Z) it is
glued onto.  When the normalization has a polynomial chart k[x] containing
the support of Z~, the chart ring of the pinched curve is

    A = {f in k[x] : f mod I lies in O(Z)},   k[x]/I = O(Z~),

which is what `pinch` and `conductor` work with.

Chart conventions for the projective line with coordinate y:
  * only y = 0 pinched: x = y, so the branch parameter is t = x;
  * only y = oo pinched: x = 1/y, so u = x;
  * both: x = y/(1+y), so x = t/(1+t) near 0 and x = 1/(1+u) near oo,
    and I = x^M (x-1)^N.
For the conic over F_q the degree-2 point is the root pair alpha, alpha^q of
the modulus f of F_q^2, and one branch is parametrized by
s = (x - alpha)/(x - alpha^q), i.e. x = (alpha - alpha^q s)/(1 - s).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .exactalg import (SCHEMA_VERSION, ArtinianAlgebra, DescriptorMismatch, Factor, Field,
                       SimpleExtension, SubspaceBasis, UnsupportedError,
                       echelon_basis, field_from_json, finite_field, first_irreducible,
                       is_reduced, is_subalgebra, nullspace, prime_power, rank_over,
                       solve, subalgebra_generated, upoly_derivative, upoly_gcd, upoly_monic,
                       upoly_mul, upoly_divmod, upoly_trim)
from .semigroups import NATURALS, TailSemigroup, contains

NORMALIZATIONS = ("AffineLine", "ProjectiveLine", "Conic", "RussellCompletion")
CONIC_Q_GUARD = 9


class ParameterError(ValueError):
    """Catalog parameters that do not describe a curve."""


class NotASubalgebraError(ValueError):
    """The glued subspace is not a unital subalgebra."""


# ---------------------------------------------------------------------------
# descriptors

@dataclass(frozen=True)
class PinchDescriptor:
    normalization: str
    ztilde: ArtinianAlgebra
    z_sub: SubspaceBasis
    support: tuple = ()
    projective: bool = True
    realization: str | None = None
    family: str = dc_field(default="custom", compare=False)
    params: str = dc_field(default="{}", compare=False)

    def __post_init__(self):
        if self.normalization not in NORMALIZATIONS:
            raise ParameterError(f"unknown normalization {self.normalization!r}")
        if self.z_sub.ambient != self.ztilde:
            raise DescriptorMismatch("z_sub does not live in ztilde")
        if len(self.support) != len(self.ztilde.factors):
            raise DescriptorMismatch("one support point is needed per factor of ztilde")
        if not is_subalgebra(self.ztilde, self.z_sub):
            raise NotASubalgebraError("z_sub must contain 1 and be closed under products")

    @property
    def field(self) -> Field:
        return self.ztilde.base

    @property
    def is_pinched(self) -> bool:
        return self.z_sub.rank < self.ztilde.dim

    @property
    def parameters(self) -> dict:
        return json.loads(self.params)

    def to_json(self):
        k = self.field
        return {"version": SCHEMA_VERSION,
                "normalization": self.normalization,
                "projective": self.projective,
                "ztilde": self.ztilde.to_json(),
                "z_sub": [[k.encode(x) for x in r] for r in self.z_sub.rows],
                "support": list(self.support),
                "realization": self.realization,
                "family": self.family,
                "params": self.parameters}

    @classmethod
    def from_json(cls, obj):
        if obj.get("version") != SCHEMA_VERSION:
            raise UnsupportedError(f"unsupported schema version {obj.get('version')}")
        alg = ArtinianAlgebra.from_json(obj["ztilde"])
        k = alg.base
        rows = [tuple(k.decode(x) for x in r) for r in obj["z_sub"]]
        sub = echelon_basis(rows, alg) if rows else SubspaceBasis(alg, ())
        return cls(obj["normalization"], alg, sub, tuple(obj["support"]),
                   bool(obj["projective"]), obj.get("realization"),
                   obj.get("family", "custom"),
                   json.dumps(obj.get("params", {}), sort_keys=True))

    def describe(self) -> str:
        what = {"AffineLine": "A1", "ProjectiveLine": "P1", "Conic": "conic",
                "RussellCompletion": "Russell completion"}[self.normalization]
        if not self.is_pinched:
            return f"{what} over {self.field.name()} (not pinched)"
        return (f"{what} over {self.field.name()}: Z~ = {self.ztilde.describe()}, "
                f"dim Z = {self.z_sub.rank}")


def _descriptor(normalization, alg, rows, support, projective, family, params, realization=None):
    sub = echelon_basis(rows, alg) if alg.factors else SubspaceBasis(alg, ())
    return PinchDescriptor(normalization, alg, sub, tuple(support), projective, realization,
                           family, json.dumps(params, sort_keys=True))


# ---------------------------------------------------------------------------
# chart rings

@dataclass(frozen=True)
class ChartQuotient:
    """k[x]/(modulus) with coordinates x^0, ..., x^(d-1)."""

    base: Field
    modulus: tuple

    @property
    def field(self) -> Field:
        return self.base

    @property
    def dim(self) -> int:
        return len(self.modulus) - 1

    def reduce(self, f):
        k = self.base
        r = upoly_divmod(k, upoly_trim(k, f), self.modulus)[1]
        return tuple(r) + (k.zero(),) * (self.dim - len(r))

    def one(self):
        return self.reduce((self.base.one(),))

    def multiply(self, a, b):
        return self.reduce(upoly_mul(self.base, a, b))


@dataclass(frozen=True)
class PinchedChartRing:
    """A = {f in k[x] : f mod I in z_sub}."""

    quotient: ChartQuotient
    z_sub: SubspaceBasis

    @property
    def field(self) -> Field:
        return self.quotient.base

    @property
    def ideal(self) -> tuple:
        return self.quotient.modulus

    def contains(self, f) -> bool:
        return self.z_sub.contains(self.quotient.reduce(f))

    __contains__ = contains


def pinch(k: Field, ideal, z_sub) -> PinchedChartRing:
    """The chart ring of k[x] pinched along k[x]/(ideal) onto the subalgebra z_sub.

    `z_sub` is a SubspaceBasis of k[x]/(ideal) or a list of polynomials
    (coefficient tuples) whose residues span it.
    """
    modulus = upoly_monic(k, upoly_trim(k, ideal))
    if len(modulus) < 2:
        raise ParameterError("the pinching ideal must be proper and nonzero")
    quo = ChartQuotient(k, tuple(modulus))
    if not isinstance(z_sub, SubspaceBasis):
        z_sub = echelon_basis([quo.reduce(f) for f in z_sub], quo)
    if z_sub.ambient != quo:
        raise DescriptorMismatch("z_sub must be a subspace of k[x]/(ideal)")
    if not z_sub.contains(quo.one()) or not all(
            z_sub.contains(quo.multiply(a, b)) for a in z_sub.rows for b in z_sub.rows):
        raise NotASubalgebraError("z_sub is not a unital subalgebra of k[x]/(ideal)")
    return PinchedChartRing(quo, z_sub)


def conductor(r: PinchedChartRing) -> tuple:
    """Monic generator g of {f : f*k[x] is inside A}.

    Since I lies in A and I*k[x] = I, an element f belongs to the conductor
    iff f*x^i mod I lies in z_sub for i < deg I.  That is a finite linear
    condition on f mod I; the solutions form an ideal of k[x]/I whose
    preimage in k[x] is generated by gcd(I, lifts of the solutions).
    """
    k, quo = r.field, r.quotient
    d = quo.dim
    checks = nullspace(k, list(r.z_sub.rows), d) if r.z_sub.rows else [
        tuple(k.one() if j == i else k.zero() for j in range(d)) for i in range(d)]
    equations = []
    for i in range(d):
        xi = tuple(k.one() if j == i else k.zero() for j in range(d))
        # matrix of f -> f * x^i, columns are images of the basis
        cols = [quo.multiply(tuple(k.one() if j == c else k.zero() for j in range(d)), xi)
                for c in range(d)]
        for h in checks:
            equations.append([sum_dot(k, h, col) for col in cols])
    solutions = nullspace(k, equations, d) if equations else [
        tuple(k.one() if j == c else k.zero() for j in range(d)) for c in range(d)]
    g = quo.modulus
    for f in solutions:
        g = upoly_gcd(k, g, upoly_trim(k, f))
    return tuple(upoly_monic(k, g))


def sum_dot(k: Field, a, b):
    out = k.zero()
    for x, y in zip(a, b):
        out = k.add(out, k.mul(x, y))
    return out


def _series_inverse_one_plus(alg, j, sign):
    """1/(1 + sign*t) truncated, on factor j, as an algebra element."""
    k = alg.base
    f = alg.factors[j]
    coeffs = [k.pow(k.neg(k.from_int(sign)), i) for i in range(f.order)]
    return alg.factor_element(j, coeffs)


def chart_data(d: PinchDescriptor):
    """(I, xi): the chart ideal and the image of x in O(Z~)."""
    alg, k = d.ztilde, d.field
    one, zero = k.one(), k.zero()
    if not alg.factors:
        return (one,), alg.zero()
    if d.normalization == "RussellCompletion":
        raise UnsupportedError("the Russell completion has no polynomial chart here")
    if d.normalization == "Conic":
        L = alg.factors[0].residue
        M = alg.factors[0].order
        alpha = L.gen()
        conj = L.frobenius(alpha)
        # x = (alpha - conj*s) * (1 + s + s^2 + ...)
        num = alg.factor_element(0, [alpha, L.neg(conj)] + [L.zero()] * (M - 2)
                                 if M >= 2 else [alpha])
        geo = alg.factor_element(0, [L.one()] * M)
        xi = alg.multiply(num, geo)
        ideal = (one,)
        for _ in range(M):
            ideal = upoly_mul(k, ideal, L.modulus)
        return tuple(ideal), xi
    pts = set(d.support)
    xi = alg.zero()
    ideal = (one,)
    for j, (f, pt) in enumerate(zip(alg.factors, d.support)):
        if pts == {"0", "inf"}:
            if pt == "0":
                # t/(1+t)
                part = alg.multiply(alg.monomial(j, 1) if f.order > 1 else alg.zero(),
                                    _series_inverse_one_plus(alg, j, 1))
                factor_poly = (zero, one)
            else:
                part = _series_inverse_one_plus(alg, j, 1)
                factor_poly = (k.neg(one), one)
        elif pts in ({"0"}, {"inf"}):
            part = alg.monomial(j, 1) if f.order > 1 else alg.zero()
            factor_poly = (zero, one)
        else:
            raise UnsupportedError(f"no chart for support {d.support}")
        xi = alg.add(xi, part)
        for _ in range(f.order):
            ideal = upoly_mul(k, ideal, factor_poly)
    return tuple(ideal), xi


def chart_ring(d: PinchDescriptor) -> PinchedChartRing:
    """The pinched chart ring of a descriptor (z_sub pulled back to k[x]/I)."""
    k, alg = d.field, d.ztilde
    ideal, xi = chart_data(d)
    quo = ChartQuotient(k, tuple(ideal))
    n = quo.dim
    if n != alg.dim:
        raise AssertionError("chart quotient and ztilde have different dimensions")
    if n == 0:
        return PinchedChartRing(quo, SubspaceBasis(quo, ()))
    powers = [alg.one()]
    for _ in range(1, n + 1):
        powers.append(alg.multiply(powers[-1], xi))
    # I(xi) = 0 confirms the algebra map k[x]/I -> O(Z~) is well defined
    image_of_ideal = alg.zero()
    for c, p in zip(ideal, powers):
        image_of_ideal = alg.add(image_of_ideal, alg.scale(c, p))
    if any(not k.is_zero(x) for x in image_of_ideal):
        raise AssertionError("chart ideal does not vanish on the chart parameter")
    if rank_over(k, powers[:n], n) != n:
        raise AssertionError("chart map is not an isomorphism")
    matrix = [[powers[j][i] for j in range(n)] for i in range(n)]
    rows = [tuple(solve(k, matrix, r)) for r in d.z_sub.rows]
    return pinch(k, ideal, echelon_basis(rows, quo))


def conductor_of(d: PinchDescriptor) -> tuple:
    return conductor(chart_ring(d))


def is_seminormal(d: PinchDescriptor) -> bool:
    """Seminormal iff the Z~ of the conductor square is reduced.

    For a minimal presentation that Z~ is d.ztilde itself.  When a chart is
    available the conductor square is computed directly, so a presentation
    with a needlessly large Z~ gets the same answer as its minimal form.
    """
    if d.normalization != "RussellCompletion" and d.ztilde.factors:
        g = conductor_of(d)
        return is_squarefree(d.field, g)
    return is_reduced(d.ztilde) and is_reduced_subalgebra(d)


def is_squarefree(k: Field, g) -> bool:
    """gcd(g, g') = 1, valid over perfect fields (all chart fields here)."""
    g = upoly_trim(k, g)
    dg = upoly_trim(k, upoly_derivative(k, g))
    if len(g) <= 1:
        return True
    if not dg:
        return False
    return len(upoly_gcd(k, g, dg)) == 1


def is_reduced_subalgebra(d: PinchDescriptor) -> bool:
    """A subalgebra is reduced iff it meets the nilradical of Z~ trivially."""
    rad = d.ztilde.radical()
    if not rad.rows or not d.z_sub.rows:
        return True
    both = rank_over(d.field, list(rad.rows) + list(d.z_sub.rows), d.ztilde.dim)
    return both == rad.rank + d.z_sub.rank


# ---------------------------------------------------------------------------
# catalog

def _semigroup(s) -> TailSemigroup:
    if isinstance(s, TailSemigroup):
        return s
    try:
        m, c = s
        return TailSemigroup(int(m), tuple(c))
    except ValueError as exc:
        raise ParameterError(str(exc)) from None


def _ambient(s: TailSemigroup, ambient, minimum=0) -> int:
    M = max(s.m, minimum) if ambient is None else int(ambient)
    if M < max(s.m, minimum):
        raise ParameterError(f"ambient order {M} is below the tail start {s.m}")
    return M


def p1n(k: Field, n: int, ambient: int | None = None) -> PinchDescriptor:
    """P1 with the n-th neighbourhood of oo pinched to a rational point."""
    if n < 0:
        raise ParameterError("n must be >= 0")
    N = n if ambient is None else int(ambient)
    if N < n:
        raise ParameterError("ambient order is below n")
    params = {"field": k.to_json(), "n": n, "ambient": N}
    if N == 0:
        return _descriptor("ProjectiveLine", ArtinianAlgebra(k, ()), [], (), True, "p1n", params)
    alg = ArtinianAlgebra(k, (("u", N),))
    rows = [alg.one()] + [alg.monomial(0, i) for i in range(n, N)]
    return _descriptor("ProjectiveLine", alg, rows, ("inf",), True, "p1n", params)


def a1mc(k: Field, s, ambient: int | None = None) -> PinchDescriptor:
    """A1 with k[t]/(t^M) pinched onto its monomial subalgebra for s."""
    s = _semigroup(s)
    M = _ambient(s, ambient)
    params = {"field": k.to_json(), "s": s.to_json(), "ambient": M}
    if M == 0:
        return _descriptor("AffineLine", ArtinianAlgebra(k, ()), [], (), False, "a1mc", params)
    alg = ArtinianAlgebra(k, (("t", M),))
    rows = [alg.monomial(0, i) for i in range(M) if contains(s, i)]
    return _descriptor("AffineLine", alg, rows, ("0",), False, "a1mc", params)


def p1mncd(k: Field, s, d, ambient=None) -> PinchDescriptor:
    """P1 with the neighbourhoods of 0 and oo pinched separately."""
    s, d = _semigroup(s), _semigroup(d)
    M, N = (None, None) if ambient is None else ambient
    M, N = _ambient(s, M), _ambient(d, N)
    params = {"field": k.to_json(), "s": s.to_json(), "d": d.to_json(), "ambient": [M, N]}
    factors, support, exps = [], [], []
    if M:
        factors.append(("t", M)); support.append("0"); exps.append(s)
    if N:
        factors.append(("u", N)); support.append("inf"); exps.append(d)
    alg = ArtinianAlgebra(k, tuple(factors))
    rows = [alg.monomial(j, i) for j, (f, sg) in enumerate(zip(alg.factors, exps))
            for i in range(f.order) if contains(sg, i)]
    return _descriptor("ProjectiveLine", alg, rows, support, True, "p1mncd", params)


def p1prime(k: Field, s, d, ambient=None) -> PinchDescriptor:
    """P1 with the neighbourhoods of 0 and oo glued to one local scheme."""
    s, d = _semigroup(s), _semigroup(d)
    M, N = (None, None) if ambient is None else ambient
    M, N = _ambient(s, M, 1), _ambient(d, N, 1)
    params = {"field": k.to_json(), "s": s.to_json(), "d": d.to_json(), "ambient": [M, N]}
    alg = ArtinianAlgebra(k, (("t", M), ("u", N)))
    rows = [alg.one()]
    rows += [alg.monomial(0, i) for i in range(1, M) if contains(s, i)]
    rows += [alg.monomial(1, j) for j in range(1, N) if contains(d, j)]
    return _descriptor("ProjectiveLine", alg, rows, ("0", "inf"), True, "p1prime", params)


def quadratic_extension(k: Field) -> SimpleExtension:
    """F_q^2 as F_q[e]/(f) with f the first monic irreducible quadratic."""
    return SimpleExtension(k, first_irreducible(k, 2))


def _conic_field(q: int) -> Field:
    try:
        prime_power(q)
    except ValueError:
        raise ParameterError(f"q = {q} is not a prime power") from None
    if q > CONIC_Q_GUARD:
        from .exactalg import check_guard
        check_guard(q, CONIC_Q_GUARD, "q")
    return finite_field(q)


def _conic_realization(k: Field, L: SimpleExtension) -> str:
    from .exactalg import poly_string
    return (f"conic realized as P1 over {k.name()}; the degree-2 point is "
            f"{poly_string(k, L.modulus, 'x')} = 0 with residue field F_{k.order}^2")


def conic_descent(q: int, s, ambient: int | None = None) -> PinchDescriptor:
    """Neighbourhood of the degree-2 point pinched branchwise (residue stays F_q^2)."""
    k = _conic_field(q)
    L = quadratic_extension(k)
    s = _semigroup(s)
    M = _ambient(s, ambient)
    params = {"q": q, "s": s.to_json(), "ambient": M}
    if M == 0:
        return _descriptor("Conic", ArtinianAlgebra(k, ()), [], (), True, "conic_descent",
                           params, _conic_realization(k, L))
    alg = ArtinianAlgebra(k, (Factor("s", M, L),))
    rows = [alg.monomial(0, c, r) for c in range(M) if contains(s, c) for r in range(2)]
    return _descriptor("Conic", alg, rows, ("P~",), True, "conic_descent", params,
                       _conic_realization(k, L))


def conic_descent_prime(q: int, s, ambient: int | None = None) -> PinchDescriptor:
    """Neighbourhood of the degree-2 point pinched onto a rational point."""
    k = _conic_field(q)
    L = quadratic_extension(k)
    s = _semigroup(s)
    M = _ambient(s, ambient, 1)
    params = {"q": q, "s": s.to_json(), "ambient": M}
    alg = ArtinianAlgebra(k, (Factor("s", M, L),))
    rows = [alg.one()] + [alg.monomial(0, c, r) for c in range(1, M) if contains(s, c)
                          for r in range(2)]
    return _descriptor("Conic", alg, rows, ("P~",), True, "conic_descent_prime", params,
                       _conic_realization(k, L))


def russell_pinch(form, subfield, residue=None) -> PinchDescriptor:
    """Regular completion of a Russell form with the point at infinity pinched.

    `subfield` lists generators (elements of the residue field) of the
    intermediate field the point is pinched onto.  The residue field defaults
    to the one known for the form (see russell.torsor_descriptor).
    """
    from .russell import torsor_descriptor
    if residue is None:
        residue = torsor_descriptor(form).residue_field
        if residue is None:
            raise ParameterError("the residue field at infinity is unknown for this form; "
                                 "pass it explicitly")
    k = residue.base
    gens = [tuple(g) for g in subfield]
    for g in gens:
        if not residue.is_element(g):
            raise ParameterError("subfield generators must lie in the residue field")
    alg = ArtinianAlgebra(k, (Factor("s", 1, residue),))
    sub = subalgebra_generated(alg, gens)
    params = {"form": form.to_json(), "subfield": [residue.encode(g) for g in gens],
              "residue": residue.to_json()}
    return PinchDescriptor("RussellCompletion", alg, sub, ("P~",), True,
                           "regular completion of a Russell form; subfield stored by generators",
                           "russell_pinch", json.dumps(params, sort_keys=True))


CATALOG = {"p1n": p1n, "a1mc": a1mc, "p1mncd": p1mncd, "p1prime": p1prime,
           "conic_descent": conic_descent, "conic_descent_prime": conic_descent_prime,
           "russell_pinch": russell_pinch}

ALIASES = {"nodal": ("p1prime", (NATURALS, NATURALS)),
           "node": ("p1prime", (NATURALS, NATURALS)),
           "cusp": ("p1n", (2,)),
           "p1": ("p1n", (0,))}


def catalog(name: str, *params, **kwargs) -> PinchDescriptor:
    if name not in CATALOG:
        raise ParameterError(f"unknown catalog entry {name!r}")
    return CATALOG[name](*params, **kwargs)


def minimal_presentation(d: PinchDescriptor) -> PinchDescriptor:
    """Rebuild a catalog descriptor with every factor cut at its tail start."""
    p = d.parameters
    if d.family == "p1n":
        n = p["n"]
        return p1n(field_from_json(p["field"]), 0 if n == 1 else n)
    if d.family == "a1mc":
        return a1mc(field_from_json(p["field"]), TailSemigroup.from_json(p["s"]))
    if d.family in ("p1mncd", "p1prime"):
        build = p1mncd if d.family == "p1mncd" else p1prime
        return build(field_from_json(p["field"]), TailSemigroup.from_json(p["s"]),
                     TailSemigroup.from_json(p["d"]))
    if d.family in ("conic_descent", "conic_descent_prime"):
        return CATALOG[d.family](p["q"], TailSemigroup.from_json(p["s"]))
    return d


# ---------------------------------------------------------------------------
# Galois descent for the conic variants

def descent_check(d: PinchDescriptor) -> dict:
    """Base change Z~ to F_q^2, where it splits into two conjugate branches.

    Returns the F_q^2-dimension of the base-changed O(Z), whether it is
    stable under the semilinear involution (a, b) -> (b^q, a^q), and the
    F_q-dimension of its fixed points.
    """
    if d.normalization != "Conic" or not d.ztilde.factors:
        raise UnsupportedError("descent data only exists for pinched conics")
    k = d.field
    L = d.ztilde.factors[0].residue
    M = d.ztilde.factors[0].order
    split = ArtinianAlgebra(L, (("s", M), ("sbar", M)))

    def branch(v):
        return [tuple(v[2 * i: 2 * i + 2]) for i in range(M)]

    def image(v):
        b = branch(v)
        return tuple(b) + tuple(L.frobenius(c) for c in b)

    def involution(w):
        return tuple(L.frobenius(c) for c in w[M:]) + tuple(L.frobenius(c) for c in w[:M])

    rows = [image(v) for v in d.z_sub.rows]
    sub_L = echelon_basis(rows, split)
    stable = all(sub_L.contains(involution(r)) for r in sub_L.rows)
    # the fixed points form an F_q-space; write everything over F_q
    flat = lambda w: tuple(x for c in w for x in c)
    kspan = [flat(r) for r in sub_L.rows] + [flat(tuple(L.mul(L.gen(), c) for c in r))
                                             for r in sub_L.rows]
    n = 2 * split.dim
    sub_k = echelon_basis(kspan, _FlatSpace(k, n))
    # fixed points inside sub_k: solve sum x_i (g_i - tau g_i) = 0
    diffs = []
    for g in sub_k.rows:
        w = tuple(tuple(g[2 * i: 2 * i + 2]) for i in range(split.dim))
        tw = flat(involution(w))
        diffs.append(tuple(k.sub(a, b) for a, b in zip(g, tw)))
    transposed = [[row[c] for row in diffs] for c in range(n)]
    fixed_dim = len(nullspace(k, transposed, len(diffs))) if diffs else 0
    return {"rank_over_extension": sub_L.rank, "stable": stable, "fixed_dim": fixed_dim,
            "dim_over_base": d.z_sub.rank}


@dataclass(frozen=True)
class _FlatSpace:
    field: Field
    dim: int
