"""Exact arithmetic: fields, polynomials, truncated algebras, linear algebra.

Every field keeps its elements in a canonical Python form (ints, Fractions,
tuples), so two elements are equal exactly when their representations are
equal.  Nothing here ever touches floating point.
"""
from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce

SCHEMA_VERSION = 1
DEFAULT_GUARD = 4096
GENERIC_PARAMETERS = ("lam", "mu")


class DescriptorMismatch(ValueError):
    """Operands live over different fields, dimensions or ambients."""


class UnsupportedError(ValueError):
    """The request is outside what this library computes."""


class GuardError(ValueError):
    """An enumeration would exceed the configured size guard."""


def guard_limit(default: int = DEFAULT_GUARD) -> int:
    """Guard value, overridden by the PINCHCURVE_GUARD_LIMIT environment variable."""
    raw = os.environ.get("PINCHCURVE_GUARD_LIMIT")
    if raw:
        return int(raw)
    return default


def check_guard(value: int, default: int, what: str) -> None:
    limit = guard_limit(default)
    if value > limit:
        raise GuardError(f"{what} = {value} exceeds guard limit {limit}")


# ---------------------------------------------------------------------------
# integers

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, r) with q = p**r, or raise ValueError."""
    f = factorize(q) if q > 1 else {}
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, r), = f.items()
    return p, r


# ---------------------------------------------------------------------------
# fields

class Field:
    """Base class.  Elements are plain canonical values handled by the field."""

    kind = "Field"
    characteristic = 0

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def is_element(self, a) -> bool:
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def from_int(self, n: int):
        n0 = abs(n)
        acc, base = self.zero(), self.one()
        while n0:
            if n0 & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n0 >>= 1
        return self.neg(acc) if n < 0 else acc

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    @property
    def order(self) -> int | None:
        return None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def elements(self):
        raise UnsupportedError(f"{self.kind} is infinite; cannot enumerate")

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def params(self) -> dict:
        return {}

    def to_json(self) -> dict:
        return {"version": SCHEMA_VERSION, "kind": self.kind, "params": self.params()}

    def encode(self, a):
        return a

    def decode(self, obj):
        return obj

    def format(self, a) -> str:
        return str(a)

    @cached_property
    def _key(self):
        import json
        return json.dumps(self.to_json(), sort_keys=True)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return self.name()

    def name(self) -> str:
        return self.kind


class Rationals(Field):
    kind = "Rationals"
    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def from_int(self, n):
        return Fraction(n)

    def is_element(self, a):
        return isinstance(a, Fraction)

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def encode(self, a):
        return str(a)

    def decode(self, obj):
        return Fraction(str(obj))

    def name(self):
        return "Q"


class PrimeField(Field):
    kind = "PrimeField"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        return pow(a, e, self.p)

    def is_element(self, a):
        return isinstance(a, int) and 0 <= a < self.p

    @property
    def order(self):
        return self.p

    def elements(self):
        return list(range(self.p))

    def random_element(self, rng):
        return rng.randrange(self.p)

    def params(self):
        return {"p": self.p}

    def name(self):
        return f"F{self.p}"


# univariate polynomials over a field: tuples of coefficients, low degree first

def upoly_trim(k: Field, f) -> tuple:
    f = list(f)
    while f and k.is_zero(f[-1]):
        f.pop()
    return tuple(f)


def upoly_add(k, f, g):
    n = max(len(f), len(g))
    z = k.zero()
    return upoly_trim(k, [k.add(f[i] if i < len(f) else z, g[i] if i < len(g) else z)
                          for i in range(n)])


def upoly_sub(k, f, g):
    return upoly_add(k, f, [k.neg(c) for c in g])


def upoly_mul(k, f, g):
    if not f or not g:
        return ()
    out = [k.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if k.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = k.add(out[i + j], k.mul(a, b))
    return upoly_trim(k, out)


def upoly_divmod(k, f, g):
    g = upoly_trim(k, g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(upoly_trim(k, f))
    q = [k.zero()] * max(len(r) - len(g) + 1, 0)
    lead_inv = k.inv(g[-1])
    while len(r) >= len(g):
        c = k.mul(r[-1], lead_inv)
        shift = len(r) - len(g)
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = k.sub(r[shift + i], k.mul(c, b))
        r = list(upoly_trim(k, r))
    return upoly_trim(k, q), tuple(r)


def upoly_monic(k, f):
    f = upoly_trim(k, f)
    if not f:
        return f
    c = k.inv(f[-1])
    return tuple(k.mul(c, a) for a in f)


def upoly_gcd(k, f, g):
    f, g = upoly_trim(k, f), upoly_trim(k, g)
    while g:
        f, g = g, upoly_divmod(k, f, g)[1]
    return upoly_monic(k, f)


def upoly_xgcd(k, f, g):
    """Return (d, s, t) with s*f + t*g = d monic."""
    r0, r1 = upoly_trim(k, f), upoly_trim(k, g)
    s0, s1 = (k.one(),), ()
    t0, t1 = (), (k.one(),)
    while r1:
        q, r = upoly_divmod(k, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, upoly_sub(k, s0, upoly_mul(k, q, s1))
        t0, t1 = t1, upoly_sub(k, t0, upoly_mul(k, q, t1))
    c = k.inv(r0[-1])
    scale = lambda p: tuple(k.mul(c, a) for a in p)
    return scale(r0), scale(s0), scale(t0)


def upoly_derivative(k, f):
    return upoly_trim(k, [k.mul(k.from_int(i), f[i]) for i in range(1, len(f))])


def monic_polys(k: Field, degree: int):
    for tail in itertools.product(k.elements(), repeat=degree):
        yield tuple(tail) + (k.one(),)


def upoly_is_irreducible(k: Field, f) -> bool:
    """Trial division by every monic polynomial of degree at most deg(f)/2."""
    f = upoly_trim(k, f)
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in monic_polys(k, d):
            if not upoly_divmod(k, f, g)[1]:
                return False
    return True


def first_irreducible(k: Field, degree: int) -> tuple:
    for f in monic_polys(k, degree):
        if upoly_is_irreducible(k, f):
            return f
    raise ValueError(f"no irreducible polynomial of degree {degree}")


class SimpleExtension(Field):
    """k[e]/(f) for a monic irreducible f over a finite field k.

    Elements are coordinate tuples in the basis 1, e, ..., e^(n-1).
    """

    kind = "SimpleExtension"

    def __init__(self, base: Field, modulus):
        if not base.is_finite:
            raise UnsupportedError("simple extensions are only built over finite fields")
        modulus = upoly_trim(base, modulus)
        if len(modulus) < 2 or modulus[-1] != base.one():
            raise ValueError("modulus must be monic of degree >= 1")
        if not upoly_is_irreducible(base, modulus):
            raise ValueError("modulus is not irreducible")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.characteristic = base.characteristic

    def _pad(self, f):
        f = tuple(f)
        return f + (self.base.zero(),) * (self.degree - len(f))

    def zero(self):
        return (self.base.zero(),) * self.degree

    def one(self):
        return self._pad((self.base.one(),))

    def gen(self):
        if self.degree == 1:
            return (self.base.neg(self.modulus[0]),)
        return self._pad((self.base.zero(), self.base.one()))

    def from_base(self, c):
        return self._pad((c,))

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        prod = upoly_mul(self.base, upoly_trim(self.base, a), upoly_trim(self.base, b))
        return self._pad(upoly_divmod(self.base, prod, self.modulus)[1])

    def inv(self, a):
        a = upoly_trim(self.base, a)
        if not a:
            raise ZeroDivisionError("inverse of zero")
        d, s, _ = upoly_xgcd(self.base, a, self.modulus)
        return self._pad(upoly_divmod(self.base, s, self.modulus)[1])

    def is_element(self, a):
        return (isinstance(a, tuple) and len(a) == self.degree
                and all(self.base.is_element(x) for x in a))

    @property
    def order(self):
        return self.base.order ** self.degree

    def elements(self):
        return [tuple(v) for v in itertools.product(self.base.elements(), repeat=self.degree)]

    def random_element(self, rng):
        return tuple(self.base.random_element(rng) for _ in range(self.degree))

    def frobenius(self, a):
        """The k-linear automorphism x -> x^|k|."""
        return self.pow(a, self.base.order)

    def encode(self, a):
        return [self.base.encode(x) for x in a]

    def decode(self, obj):
        return tuple(self.base.decode(x) for x in obj)

    def params(self):
        return {"base": self.base.to_json(),
                "modulus": [self.base.encode(c) for c in self.modulus]}

    def name(self):
        return f"{self.base.name()}[e]/({poly_string(self.base, self.modulus, 'e')})"


class GaloisField(SimpleExtension):
    """GF(p^n) as F_p[e]/(modulus)."""

    kind = "GaloisField"

    def __init__(self, p: int, n: int, modulus=None):
        base = PrimeField(p)
        if modulus is None:
            modulus = first_irreducible(base, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1:
            raise ValueError("modulus degree does not match n")
        super().__init__(base, modulus)
        self.p = p
        self.n = n

    def params(self):
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    def name(self):
        return f"GF({self.p}^{self.n})"


def finite_field(q: int) -> Field:
    """The field with q elements (prime field when q is prime)."""
    p, r = prime_power(q)
    return PrimeField(p) if r == 1 else GaloisField(p, r)


def poly_string(k: Field, f, var: str) -> str:
    terms = []
    for i, c in enumerate(f):
        if k.is_zero(c):
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = k.format(c)
        if not mono:
            terms.append(cs)
        elif c == k.one():
            terms.append(mono)
        else:
            terms.append(f"({cs})*{mono}")
    return " + ".join(reversed(terms)) or "0"


# ---------------------------------------------------------------------------
# multivariate polynomials: dicts {exponent tuple: nonzero coefficient}

class PolyRing:
    """k[x_1, ..., x_n] with lexicographic order x_1 > x_2 > ... ."""

    def __init__(self, k: Field, nvars: int):
        self.k = k
        self.n = nvars
        self.zero_exp = (0,) * nvars

    def const(self, c):
        return {} if self.k.is_zero(c) else {self.zero_exp: c}

    def one(self):
        return {self.zero_exp: self.k.one()}

    def var(self, i, power=1):
        e = [0] * self.n
        e[i] = power
        return {tuple(e): self.k.one()}

    def add(self, f, g):
        k = self.k
        out = dict(f)
        for e, c in g.items():
            s = k.add(out[e], c) if e in out else c
            if k.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return out

    def neg(self, f):
        return {e: self.k.neg(c) for e, c in f.items()}

    def sub(self, f, g):
        return self.add(f, self.neg(g))

    def scale(self, f, c):
        if self.k.is_zero(c):
            return {}
        return {e: self.k.mul(c, a) for e, a in f.items()}

    def mul(self, f, g):
        k = self.k
        out: dict = {}
        for e1, c1 in f.items():
            for e2, c2 in g.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = k.mul(c1, c2)
                if e in out:
                    s = k.add(out[e], prod)
                    if k.is_zero(s):
                        del out[e]
                    else:
                        out[e] = s
                elif not k.is_zero(prod):
                    out[e] = prod
        return out

    def pow(self, f, e: int):
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, f)
            f = self.mul(f, f)
            e >>= 1
        return result

    def lead(self, f):
        e = max(f)
        return e, f[e]

    def monic(self, f):
        if not f:
            return f
        return self.scale(f, self.k.inv(self.lead(f)[1]))

    def divexact(self, f, g):
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        ge, gc = self.lead(g)
        gci = self.k.inv(gc)
        q: dict = {}
        r = dict(f)
        while r:
            e, c = self.lead(r)
            d = tuple(a - b for a, b in zip(e, ge))
            if min(d) < 0:
                raise ArithmeticError("inexact polynomial division")
            t = {d: self.k.mul(c, gci)}
            q = self.add(q, t)
            r = self.sub(r, self.mul(t, g))
        return q

    def freeze(self, f) -> tuple:
        return tuple(sorted(f.items()))

    # gcd by primitive pseudo-remainder sequences, recursing on variables

    def _deg(self, f, v):
        return max(e[v] for e in f)

    def _coeff(self, f, v, d):
        return {e[:v] + (0,) + e[v + 1:]: c for e, c in f.items() if e[v] == d}

    def _coeffs(self, f, v):
        out: dict = {}
        for e, c in f.items():
            out.setdefault(e[v], {})[e[:v] + (0,) + e[v + 1:]] = c
        return out

    def _content(self, f, v):
        return reduce(lambda a, b: self._gcd(a, b, v + 1), self._coeffs(f, v).values(), {})

    def _prem(self, a, b, v):
        db = self._deg(b, v)
        lb = self._coeff(b, v, db)
        r = a
        while r and self._deg(r, v) >= db:
            dr = self._deg(r, v)
            lr = self._coeff(r, v, dr)
            r = self.sub(self.mul(lb, r), self.mul(self.mul(lr, self.var(v, dr - db)), b))
        return r

    def _gcd(self, f, g, v):
        if not f:
            return self.monic(g)
        if not g:
            return self.monic(f)
        if v >= self.n:
            return self.one()
        cf, cg = self._content(f, v), self._content(g, v)
        c = self._gcd(cf, cg, v + 1)
        a, b = self.divexact(f, cf), self.divexact(g, cg)
        if self._deg(a, v) < self._deg(b, v):
            a, b = b, a
        while b:
            r = self._prem(a, b, v)
            a, b = b, (self.divexact(r, self._content(r, v)) if r else {})
        a = self.divexact(a, self._content(a, v))
        return self.monic(self.mul(c, a))

    def gcd(self, f, g):
        return self._gcd(f, g, 0)

    def evaluate(self, f, values):
        k = self.k
        acc = k.zero()
        for e, c in f.items():
            term = c
            for x, d in zip(values, e):
                term = k.mul(term, k.pow(x, d))
            acc = k.add(acc, term)
        return acc

    def format(self, f, names) -> str:
        if not f:
            return "0"
        k = self.k
        terms = []
        for e, c in sorted(f.items(), reverse=True):
            mono = "*".join(n if d == 1 else f"{n}^{d}" for n, d in zip(names, e) if d)
            if not mono:
                terms.append(k.format(c))
            elif c == k.one():
                terms.append(mono)
            else:
                terms.append(f"{k.format(c)}*{mono}")
        return " + ".join(terms)


class RationalFunctionField(Field):
    """base(vars): reduced fractions num/den with den monic in lex order."""

    kind = "RationalFunctionField"

    def __init__(self, base: Field, vars):
        if isinstance(base, int):
            base = PrimeField(base)
        if isinstance(base, RationalFunctionField):
            base, vars = base.base, tuple(base.vars) + tuple(vars)
        vars = tuple(vars)
        if not vars or len(set(vars)) != len(vars):
            raise ValueError("variable names must be distinct and non-empty")
        self.base = base
        self.vars = vars
        self.ring = PolyRing(base, len(vars))
        self.characteristic = base.characteristic

    def _make(self, num: dict, den: dict):
        R = self.ring
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return ((), R.freeze(R.one()))
        g = R.gcd(num, den)
        if g != R.one():
            num, den = R.divexact(num, g), R.divexact(den, g)
        c = self.base.inv(R.lead(den)[1])
        return (R.freeze(R.scale(num, c)), R.freeze(R.scale(den, c)))

    def zero(self):
        return ((), self.ring.freeze(self.ring.one()))

    def one(self):
        one = self.ring.freeze(self.ring.one())
        return (one, one)

    def from_base(self, c):
        return self._make(self.ring.const(c), self.ring.one())

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def from_poly(self, num: dict, den: dict | None = None):
        return self._make(num, den if den is not None else self.ring.one())

    def gen(self, name):
        i = self.vars.index(name) if isinstance(name, str) else name
        return self.from_poly(self.ring.var(i))

    def gens(self):
        return tuple(self.gen(i) for i in range(len(self.vars)))

    def monomial(self, exps, coeff=None):
        """coeff * prod vars^exps, exponents may be negative."""
        c = self.base.one() if coeff is None else coeff
        num = tuple(max(e, 0) for e in exps)
        den = tuple(max(-e, 0) for e in exps)
        return self._make({num: c}, {den: self.base.one()})

    def add(self, a, b):
        R = self.ring
        an, ad = dict(a[0]), dict(a[1])
        bn, bd = dict(b[0]), dict(b[1])
        if ad == bd:
            return self._make(R.add(an, bn), ad)
        return self._make(R.add(R.mul(an, bd), R.mul(bn, ad)), R.mul(ad, bd))

    def neg(self, a):
        return (self.ring.freeze(self.ring.neg(dict(a[0]))), a[1])

    def mul(self, a, b):
        R = self.ring
        if not a[0] or not b[0]:
            return self.zero()
        return self._make(R.mul(dict(a[0]), dict(b[0])), R.mul(dict(a[1]), dict(b[1])))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of zero")
        return self._make(dict(a[1]), dict(a[0]))

    def is_zero(self, a):
        return not a[0]

    def is_element(self, a):
        return isinstance(a, tuple) and len(a) == 2 and bool(a[1])

    def numerator(self, a) -> dict:
        return dict(a[0])

    def denominator(self, a) -> dict:
        return dict(a[1])

    def as_monomial(self, a):
        """Return (coeff, exps) if a is coeff * Laurent monomial, else None."""
        if not a[0] or len(a[0]) != 1 or len(a[1]) != 1:
            return None
        (ne, c), = a[0]
        (de, _), = a[1]
        return c, tuple(x - y for x, y in zip(ne, de))

    def constant_value(self, a):
        """The base element a equals, or None when a is not constant."""
        if not a[0]:
            return self.base.zero()
        z = self.ring.zero_exp
        if len(a[0]) == 1 and a[0][0][0] == z and a[1] == ((z, self.base.one()),):
            return a[0][0][1]
        return None

    def random_element(self, rng, max_deg=2, terms=3):
        def rand_poly(nonzero):
            while True:
                f = {}
                for _ in range(rng.randint(1, terms)):
                    e = tuple(rng.randint(0, max_deg) for _ in range(self.ring.n))
                    c = self.base.random_element(rng)
                    if not self.base.is_zero(c):
                        f = self.ring.add(f, {e: c})
                if f or not nonzero:
                    return f
        return self._make(rand_poly(False), rand_poly(True))

    def encode(self, a):
        enc = lambda p: [[list(e), self.base.encode(c)] for e, c in p]
        return {"num": enc(a[0]), "den": enc(a[1])}

    def decode(self, obj):
        dec = lambda p: {tuple(e): self.base.decode(c) for e, c in p}
        return self._make(dec(obj["num"]), dec(obj["den"]))

    def format(self, a):
        R = self.ring
        num = R.format(dict(a[0]), self.vars)
        if a[1] == R.freeze(R.one()):
            return num
        return f"({num})/({R.format(dict(a[1]), self.vars)})"

    def params(self):
        return {"base": self.base.to_json(), "vars": list(self.vars)}

    def name(self):
        return f"{self.base.name()}({','.join(self.vars)})"


# ---------------------------------------------------------------------------
# integer lattices

def hermite_normal_form(rows):
    """Row-style Hermite normal form of an integer matrix (zero rows dropped)."""
    A = [list(r) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    r0 = 0
    for c in range(ncols):
        # gcd-reduce column c among rows r0..
        while True:
            nz = [i for i in range(r0, len(A)) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r0], A[piv] = A[piv], A[r0]
            done = True
            for i in range(r0 + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r0][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r0])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r0 < len(A) and A[r0][c] != 0:
            if A[r0][c] < 0:
                A[r0] = [-x for x in A[r0]]
            for i in range(r0):
                q = A[i][c] // A[r0][c]
                A[i] = [x - q * y for x, y in zip(A[i], A[r0])]
            r0 += 1
    return [tuple(r) for r in A[:r0]]


def smith_diagonal(rows) -> list[int]:
    """Nonzero invariant factors of an integer matrix (Smith normal form diagonal)."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        changed = True
            if not changed:
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                       if A[i][j] % A[t][t]]
                if not bad:
                    break
                i, _ = bad[0]
                A[t] = [x + y for x, y in zip(A[t], A[i])]
                changed = True
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                  if A[i][j] and (i == t or j == t)]
            _, i, j = min(nz)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def integer_kernel(matrix, ncols: int | None = None):
    """Basis (Hermite form) of {x in Z^n : matrix x = 0}."""
    if ncols is None:
        ncols = len(matrix[0])
    m = len(matrix)
    # rows of [M^T | I]; unimodular row operations keep the right block a basis
    # of Z^n, and rows whose left block vanishes span the kernel
    A = [[matrix[i][j] for i in range(m)] + [1 if c == j else 0 for c in range(ncols)]
         for j in range(ncols)]
    r0 = 0
    for c in range(m):
        while True:
            nz = [i for i in range(r0, len(A)) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r0], A[piv] = A[piv], A[r0]
            clean = True
            for i in range(r0 + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r0][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r0])]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if r0 < len(A) and A[r0][c] != 0:
            r0 += 1
    kernel = [r[m:] for r in A[r0:]]
    return hermite_normal_form(kernel)


def lattice_index_over_integers(generators, n: int) -> int:
    """[L : Z^n] for the lattice L = Z^n + sum Z*g with rational vectors g."""
    den = 1
    for g in generators:
        for x in g:
            den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    rows = [[den if i == j else 0 for j in range(n)] for i in range(n)]
    rows += [[int(Fraction(x) * den) for x in g] for g in generators]
    H = hermite_normal_form(rows)
    det = 1
    for i, r in enumerate(H):
        det *= r[i] if i < len(r) else 1
    # [Z^n : den*L] = det, and [L : Z^n] = den^n / det
    return den ** n // det


class PurelyInseparableExt(Field):
    """base(g_1^(1/e_1), ..., g_s^(1/e_s)) with e_i powers of p.

    Each g_i must be a constant times a Laurent monomial in the variables of
    the base rational function field.  Elements are coordinate tuples in the
    monomial basis r_1^k_1 ... r_s^k_s, 0 <= k_i < e_i, ordered as
    itertools.product.
    """

    kind = "PurelyInseparableExt"

    def __init__(self, base: RationalFunctionField, generators):
        if not isinstance(base, RationalFunctionField) or base.characteristic == 0:
            raise UnsupportedError("purely inseparable extensions need a function field in char p")
        p = base.characteristic
        gens = []
        for g, e in generators:
            e = int(e)
            if e < p or p ** round(math.log(e, p)) != e:
                raise ValueError(f"root exponent {e} is not a positive power of {p}")
            if base.as_monomial(g) is None:
                raise UnsupportedError("generators must be monomials in the base variables")
            gens.append((g, e))
        self.base = base
        self.generators = tuple(gens)
        self.characteristic = p
        self.radices = tuple(e for _, e in gens)
        self.degree = math.prod(self.radices)
        lattice = [tuple(Fraction(x, e) for x in base.as_monomial(g)[1]) for g, e in gens]
        if lattice_index_over_integers(lattice, len(base.vars)) != self.degree:
            raise ValueError("generators are not independent: recorded degree differs "
                             "from the dimension of the extension")
        self.basis = tuple(itertools.product(*[range(e) for e in self.radices]))
        self._index = {b: i for i, b in enumerate(self.basis)}

    def zero(self):
        return (self.base.zero(),) * self.degree

    def one(self):
        return self.from_base(self.base.one())

    def from_base(self, c):
        return (c,) + (self.base.zero(),) * (self.degree - 1)

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def root(self, i):
        exps = [0] * len(self.radices)
        exps[i] = 1
        v = [self.base.zero()] * self.degree
        v[self._index[tuple(exps)]] = self.base.one()
        return tuple(v)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def scale(self, c, a):
        return tuple(self.base.mul(c, x) for x in a)

    def mul(self, a, b):
        K = self.base
        out = [K.zero()] * self.degree
        for i, x in enumerate(a):
            if K.is_zero(x):
                continue
            for j, y in enumerate(b):
                if K.is_zero(y):
                    continue
                c = K.mul(x, y)
                exps = []
                for (g, e), u, v in zip(self.generators, self.basis[i], self.basis[j]):
                    s = u + v
                    if s >= e:
                        s -= e
                        c = K.mul(c, g)
                    exps.append(s)
                idx = self._index[tuple(exps)]
                out[idx] = K.add(out[idx], c)
        return tuple(out)

    def inv(self, a):
        if all(self.base.is_zero(x) for x in a):
            raise ZeroDivisionError("inverse of zero")
        # a^P lies in the base for P = max radix, so a^-1 = a^(P-1) / a^P
        K, P = self.base, max(self.radices)
        norm = K.zero()
        for c, b in zip(a, self.basis):
            if K.is_zero(c):
                continue
            term = K.pow(c, P)
            for (g, e), k in zip(self.generators, b):
                term = K.mul(term, K.pow(g, k * P // e))
            norm = K.add(norm, term)
        return self.scale(K.inv(norm), self.pow(a, P - 1))

    def is_element(self, a):
        return isinstance(a, tuple) and len(a) == self.degree

    def random_element(self, rng):
        # sparse coordinates keep the rational-function arithmetic small
        return tuple(self.base.random_element(rng, max_deg=1, terms=2) if rng.random() < 0.4
                     else self.base.zero() for _ in range(self.degree))

    def encode(self, a):
        return [self.base.encode(x) for x in a]

    def decode(self, obj):
        return tuple(self.base.decode(x) for x in obj)

    def format(self, a):
        parts = []
        for c, b in zip(a, self.basis):
            if self.base.is_zero(c):
                continue
            mono = "*".join(f"r{i + 1}" if k == 1 else f"r{i + 1}^{k}"
                            for i, k in enumerate(b) if k)
            cs = self.base.format(c)
            parts.append(cs if not mono else (mono if c == self.base.one() else f"({cs})*{mono}"))
        return " + ".join(parts) or "0"

    def params(self):
        return {"base": self.base.to_json(),
                "generators": [[self.base.encode(g), e] for g, e in self.generators]}

    def name(self):
        roots = ", ".join(f"({self.base.format(g)})^(1/{e})" for g, e in self.generators)
        return f"{self.base.name()}({roots})"


def adjoin_generic_parameter(k: Field) -> RationalFunctionField:
    """k(lam), or k(lam, mu) when k already carries one generic parameter."""
    if isinstance(k, RationalFunctionField):
        used = [v for v in k.vars if v in GENERIC_PARAMETERS]
        if len(used) >= len(GENERIC_PARAMETERS):
            raise UnsupportedError("at most two generic parameters are supported")
        return RationalFunctionField(k, (GENERIC_PARAMETERS[len(used)],))
    if isinstance(k, (Rationals, PrimeField, SimpleExtension)):
        return RationalFunctionField(k, (GENERIC_PARAMETERS[0],))
    raise UnsupportedError(f"cannot adjoin a generic parameter to {k.kind}")


def embed(big: Field, small: Field, a):
    """Canonical image of an element of `small` inside `big`."""
    if big == small:
        return a
    if isinstance(big, RationalFunctionField):
        if big.base == small:
            return big.from_base(a)
        if isinstance(small, RationalFunctionField) and big.base == small.base:
            idx = [big.vars.index(v) for v in small.vars]
            lift = lambda p: {tuple(e[idx.index(i)] if i in idx else 0 for i in range(len(big.vars))): c
                              for e, c in p}
            return big.from_poly(lift(a[0]), lift(a[1]))
    if isinstance(big, (SimpleExtension, PurelyInseparableExt)) and big.base == small:
        return big.from_base(a)
    raise DescriptorMismatch(f"no embedding of {small!r} into {big!r}")


def field_from_json(obj: dict) -> Field:
    if obj.get("version", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise UnsupportedError(f"unsupported schema version {obj.get('version')}")
    kind, params = obj["kind"], obj.get("params", {})
    if kind == "Rationals":
        return Rationals()
    if kind == "PrimeField":
        return PrimeField(int(params["p"]))
    if kind == "GaloisField":
        return GaloisField(int(params["p"]), int(params["n"]), params.get("modulus"))
    if kind == "SimpleExtension":
        base = field_from_json(params["base"])
        return SimpleExtension(base, [base.decode(c) for c in params["modulus"]])
    if kind == "RationalFunctionField":
        base = field_from_json(params["base"]) if "base" in params else PrimeField(int(params["p"]))
        return RationalFunctionField(base, params["vars"])
    if kind == "PurelyInseparableExt":
        base = field_from_json(params["base"])
        return PurelyInseparableExt(base, [(base.decode(g), e) for g, e in params["generators"]])
    raise UnsupportedError(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------
# linear algebra over any implemented field

def rref(k: Field, rows, ncols: int | None = None):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = [list(r) for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not k.is_zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = k.inv(A[r][c])
        A[r] = [k.mul(inv, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and not k.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [k.sub(x, k.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return tuple(tuple(row) for row in A[:r]), tuple(pivots)


def nullspace(k: Field, matrix, ncols: int):
    """Basis of {x : matrix x = 0}."""
    R, pivots = rref(k, matrix, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [k.zero()] * ncols
        x[f] = k.one()
        for row, p in zip(R, pivots):
            x[p] = k.neg(row[f])
        basis.append(tuple(x))
    return basis


def solve(k: Field, matrix, rhs):
    """One solution x of matrix x = rhs, or raise ValueError."""
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    R, pivots = rref(k, aug, ncols + 1)
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    x = [k.zero()] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


@dataclass(frozen=True)
class VectorSpace:
    """A plain coordinate space field^dim."""

    field: Field
    dim: int


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace stored by its unique reduced row echelon basis."""

    ambient: object
    rows: tuple

    @property
    def field(self) -> Field:
        return self.ambient.field

    @property
    def rank(self) -> int:
        return len(self.rows)

    @cached_property
    def pivots(self):
        k = self.field
        return tuple(next(i for i, x in enumerate(r) if not k.is_zero(x)) for r in self.rows)

    def contains(self, v) -> bool:
        k = self.field
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if not k.is_zero(v[p]):
                c = v[p]
                v = [k.sub(x, k.mul(c, y)) for x, y in zip(v, row)]
        return all(k.is_zero(x) for x in v)

    def coordinates(self, v):
        """Coefficients of v in the echelon rows (v must be a member)."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def contains_subspace(self, other: SubspaceBasis) -> bool:
        return all(self.contains(r) for r in other.rows)

    def to_json(self):
        k = self.field
        return [[k.encode(x) for x in r] for r in self.rows]


def echelon_basis(vectors, ambient) -> SubspaceBasis:
    """Canonical echelon basis of the span of `vectors` inside `ambient`.

    `ambient` is an ArtinianAlgebra, a VectorSpace, or a Field (in which case
    the dimension is read from the vectors).
    """
    vectors = [tuple(v) for v in vectors]
    if isinstance(ambient, Field):
        if not vectors:
            raise DescriptorMismatch("cannot infer the dimension of an empty family")
        ambient = VectorSpace(ambient, len(vectors[0]))
    k, dim = ambient.field, ambient.dim
    for v in vectors:
        if len(v) != dim:
            raise DescriptorMismatch(f"vector of length {len(v)} in a space of dimension {dim}")
        if not all(k.is_element(x) for x in v):
            raise DescriptorMismatch(f"vector entries are not elements of {k!r}")
    rows, _ = rref(k, vectors, dim)
    return SubspaceBasis(ambient, rows)


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if a.ambient != b.ambient:
        raise DescriptorMismatch("different ambients")
    return echelon_basis(list(a.rows) + list(b.rows), a.ambient)


def subspace_intersection(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if a.ambient != b.ambient:
        raise DescriptorMismatch("different ambients")
    k = a.field
    if not a.rows or not b.rows:
        return SubspaceBasis(a.ambient, ())
    # x*A = y*B  <=>  (x, -y) in the left kernel of [A; B]
    stacked = list(a.rows) + [tuple(k.neg(x) for x in r) for r in b.rows]
    dim = a.ambient.dim
    transposed = [[row[c] for row in stacked] for c in range(dim)]
    kernel = nullspace(k, transposed, len(stacked))
    vecs = []
    for coeffs in kernel:
        v = [k.zero()] * dim
        for c, row in zip(coeffs[:a.rank], a.rows):
            if not k.is_zero(c):
                v = [k.add(x, k.mul(c, y)) for x, y in zip(v, row)]
        vecs.append(v)
    return echelon_basis(vecs, a.ambient)


def extend_scalars(big: Field, small: Field, rows):
    return [tuple(embed(big, small, x) for x in r) for r in rows]


def rank_over(k: Field, rows, ncols) -> int:
    return len(rref(k, rows, ncols)[0])


# ---------------------------------------------------------------------------
# truncated algebras

@dataclass(frozen=True)
class Factor:
    """L[name]/(name^order) where L is the residue field (None means the base)."""

    name: str
    order: int
    residue: Field | None = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("truncation order must be >= 1")

    @property
    def residue_degree(self) -> int:
        return 1 if self.residue is None else self.residue.degree


@dataclass(frozen=True)
class ArtinianAlgebra:
    """A finite product of truncated polynomial algebras over a base field.

    Coordinates follow the monomial basis factor by factor; within a factor
    the blocks are t^0, t^1, ... and inside each block the residue-field
    basis over the base.
    """

    base: Field
    factors: tuple = ()

    def __post_init__(self):
        fs = tuple(f if isinstance(f, Factor) else Factor(*f) for f in self.factors)
        for f in fs:
            if f.residue is not None and f.residue.base != self.base:
                raise DescriptorMismatch("residue field must be an extension of the base")
        object.__setattr__(self, "factors", fs)

    @property
    def field(self) -> Field:
        return self.base

    @cached_property
    def offsets(self):
        out, pos = [], 0
        for f in self.factors:
            out.append(pos)
            pos += f.order * f.residue_degree
        return tuple(out)

    @property
    def dim(self) -> int:
        return sum(f.order * f.residue_degree for f in self.factors)

    def zero(self):
        return (self.base.zero(),) * self.dim

    def one(self):
        v = [self.base.zero()] * self.dim
        for off in self.offsets:
            v[off] = self.base.one()
        return tuple(v)

    def basis_vector(self, i):
        v = [self.base.zero()] * self.dim
        v[i] = self.base.one()
        return tuple(v)

    def monomial(self, factor: int, power: int, residue_index: int = 0):
        f = self.factors[factor]
        return self.basis_vector(self.offsets[factor] + power * f.residue_degree + residue_index)

    def factor_element(self, factor: int, coeffs):
        """Element supported on one factor, given residue elements per power."""
        v = list(self.zero())
        f = self.factors[factor]
        for i, c in enumerate(coeffs):
            block = (c,) if f.residue is None else c
            for r, x in enumerate(block):
                v[self.offsets[factor] + i * f.residue_degree + r] = x
        return tuple(v)

    def coordinate_label(self, i) -> tuple[int, int, int]:
        """(factor index, power, residue basis index) of coordinate i."""
        for j in reversed(range(len(self.factors))):
            if i >= self.offsets[j]:
                d = self.factors[j].residue_degree
                return j, (i - self.offsets[j]) // d, (i - self.offsets[j]) % d
        raise IndexError(i)

    def _blocks(self, a, j):
        f = self.factors[j]
        d, off = f.residue_degree, self.offsets[j]
        if f.residue is None:
            return [a[off + i] for i in range(f.order)]
        return [tuple(a[off + i * d: off + (i + 1) * d]) for i in range(f.order)]

    def multiply(self, a, b):
        if len(a) != self.dim or len(b) != self.dim:
            raise DescriptorMismatch("element does not belong to this algebra")
        out = []
        for j, f in enumerate(self.factors):
            L = f.residue or self.base
            A, B = self._blocks(a, j), self._blocks(b, j)
            C = [L.zero()] * f.order
            for i, x in enumerate(A):
                if L.is_zero(x):
                    continue
                for l in range(f.order - i):
                    if not L.is_zero(B[l]):
                        C[i + l] = L.add(C[i + l], L.mul(x, B[l]))
            for c in C:
                out.extend((c,) if f.residue is None else c)
        return tuple(out)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def scale(self, c, a):
        return tuple(self.base.mul(c, x) for x in a)

    def power(self, a, e: int):
        result = self.one()
        while e:
            if e & 1:
                result = self.multiply(result, a)
            a = self.multiply(a, a)
            e >>= 1
        return result

    def is_unit(self, a) -> bool:
        """Invertible iff the constant term of every factor is nonzero."""
        for j, f in enumerate(self.factors):
            L = f.residue or self.base
            if L.is_zero(self._blocks(a, j)[0]):
                return False
        return True

    def inverse(self, a):
        cols = [self.multiply(a, self.basis_vector(i)) for i in range(self.dim)]
        matrix = [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]
        try:
            return tuple(solve(self.base, matrix, self.one()))
        except ValueError:
            raise ZeroDivisionError("element is not invertible") from None

    def elements(self, limit: int | None = None):
        q = self.base.order
        if q is None:
            raise UnsupportedError("cannot enumerate an algebra over an infinite field")
        check_guard(q ** self.dim, limit or DEFAULT_GUARD, "number of algebra elements")
        return [tuple(v) for v in itertools.product(self.base.elements(), repeat=self.dim)]

    def radical(self) -> SubspaceBasis:
        """Span of the positive-degree monomials of every factor."""
        vecs = []
        for j, f in enumerate(self.factors):
            for i in range(1, f.order):
                for r in range(f.residue_degree):
                    vecs.append(self.monomial(j, i, r))
        return echelon_basis(vecs, self)

    def to_json(self):
        return {"version": SCHEMA_VERSION, "kind": "ArtinianAlgebra",
                "params": {"base": self.base.to_json(),
                           "factors": [{"name": f.name, "order": f.order,
                                        **({"residue": f.residue.to_json()} if f.residue else {})}
                                       for f in self.factors]}}

    @classmethod
    def from_json(cls, obj):
        if obj.get("version", SCHEMA_VERSION) != SCHEMA_VERSION:
            raise UnsupportedError(f"unsupported schema version {obj.get('version')}")
        p = obj["params"]
        base = field_from_json(p["base"])
        fs = [Factor(f["name"], int(f["order"]),
                     field_from_json(f["residue"]) if "residue" in f else None)
              for f in p["factors"]]
        return cls(base, tuple(fs))

    def describe(self) -> str:
        if not self.factors:
            return "0"
        parts = []
        for f in self.factors:
            L = (f.residue or self.base).name()
            parts.append(L if f.order == 1 else f"{L}[{f.name}]/({f.name}^{f.order})")
        return " x ".join(parts)


def algebra_multiply(alg: ArtinianAlgebra, a, b):
    return alg.multiply(a, b)


def subalgebra_generated(alg: ArtinianAlgebra, elements) -> SubspaceBasis:
    """Smallest unital subalgebra containing the given elements."""
    span = echelon_basis([alg.one()] + [tuple(e) for e in elements], alg)
    while True:
        prods = [alg.multiply(x, y) for x in span.rows for y in span.rows]
        new = echelon_basis(list(span.rows) + prods, alg)
        if new.rank == span.rank:
            return span
        span = new


def is_subalgebra(alg: ArtinianAlgebra, v: SubspaceBasis) -> bool:
    if not v.contains(alg.one()):
        return False
    return all(v.contains(alg.multiply(x, y)) for x in v.rows for y in v.rows)


def is_reduced(alg: ArtinianAlgebra, ideal: SubspaceBasis | None = None) -> bool:
    """True iff alg (or alg/ideal) has no nonzero nilpotent element.

    For a product of truncated algebras the nilradical is spanned by the
    positive-degree monomials; each of them is nilpotent and the quotient by
    their span is a product of fields, so reducedness is decided by whether
    that span is zero (modulo the ideal when one is given).
    """
    rad = alg.radical()
    for r in rad.rows:
        n = alg.power(r, alg.dim + 1)
        if any(not alg.base.is_zero(x) for x in n):
            raise AssertionError("radical element is not nilpotent")
    if ideal is None:
        return rad.rank == 0
    if ideal.ambient != alg:
        raise DescriptorMismatch("ideal lives in a different algebra")
    # alg/ideal is reduced iff its nilradical (rad + ideal)/ideal vanishes,
    # which for an ideal of a product of local rings means rad is inside ideal
    return ideal.contains_subspace(rad)


# ---------------------------------------------------------------------------
# finite abelian groups

@dataclass(frozen=True)
class AbelianGroupDescription:
    """free rank + invariant factors + symbolic tokens (infinite fields)."""

    free_rank: int = 0
    cyclic_orders: tuple = ()
    symbolic: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cyclic_orders",
                           invariant_factors([o for o in self.cyclic_orders if o != 1]))
        object.__setattr__(self, "symbolic", tuple(sorted(self.symbolic)))

    @property
    def torsion_order(self) -> int:
        return math.prod(self.cyclic_orders)

    @property
    def is_trivial(self) -> bool:
        return not self.free_rank and not self.cyclic_orders and not self.symbolic

    def direct_sum(self, other: AbelianGroupDescription) -> AbelianGroupDescription:
        return AbelianGroupDescription(self.free_rank + other.free_rank,
                                       self.cyclic_orders + other.cyclic_orders,
                                       self.symbolic + other.symbolic)

    def to_json(self):
        return {"free_rank": self.free_rank, "cyclic_orders": list(self.cyclic_orders),
                "symbolic": list(self.symbolic)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["free_rank"]), tuple(obj["cyclic_orders"]), tuple(obj["symbolic"]))

    def render(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{n}" for n in self.cyclic_orders]
        parts += list(self.symbolic)
        return " x ".join(parts) if parts else "0"


def invariant_factors(orders) -> tuple:
    """Invariant factors d_1 | d_2 | ... of a product of cyclic groups."""
    primary: dict[int, list[int]] = {}
    for n in orders:
        for p, e in factorize(int(n)).items():
            primary.setdefault(p, []).append(p ** e)
    for p in primary:
        primary[p].sort(reverse=True)
    length = max((len(v) for v in primary.values()), default=0)
    out = []
    for i in range(length):
        out.append(math.prod(v[i] for v in primary.values() if i < len(v)))
    return tuple(sorted(out))


def invariant_factors_from_counts(order: int, count_killed) -> tuple:
    """Invariant factors of an abelian group of the given order.

    count_killed(n) must return the number of elements x with x^n = 1.
    For a p-group with exponents e_i, #{x : x^(p^k) = 1} = p^(sum min(k, e_i)).
    """
    cyclic = []
    for p, e in factorize(order).items():
        logs = [0]
        for k in range(1, e + 1):
            c = count_killed(p ** k)
            logs.append(round(math.log(c, p)))
            if logs[-1] == e:
                break
        # number of cyclic factors with exponent >= k is logs[k] - logs[k-1]
        at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))] + [0]
        for k in range(1, len(at_least)):
            for _ in range(at_least[k - 1] - at_least[k]):
                cyclic.append(p ** k)
    return invariant_factors(cyclic)


@dataclass(frozen=True)
class UnitGroup:
    """Explicit unit group of a finite artinian algebra."""

    algebra: ArtinianAlgebra
    elements: tuple
    structure: AbelianGroupDescription

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def cyclic_orders(self):
        return self.structure.cyclic_orders


def unit_group(alg: ArtinianAlgebra, limit: int | None = None) -> UnitGroup:
    """All invertible elements (sorted) with their invariant factors."""
    if not alg.base.is_finite:
        raise UnsupportedError("unit groups are only enumerated over finite fields")
    from .fastunits import FiniteAlgebraTable
    table = FiniteAlgebraTable(alg, limit=limit)
    units = table.units()
    elements = tuple(sorted(table.to_tuples(units)))
    structure = AbelianGroupDescription(0, table.invariant_factors(units))
    return UnitGroup(alg, elements, structure)
